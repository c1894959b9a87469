//! Powers of equigenerated ideals: linear-powers verdicts, Betti tables of
//! powers, hyperplane sections, strongly stable ideals and local
//! cohomology in degree zero.

use crate::error::{Error, Result};
use crate::groebner::{minimalize_monomials, Ideal};
use crate::resolve::{betti_table, BettiTable};
use crate::ring::{random_linear_form, Mono, Poly, Ring, RingRef, Term};
use rayon::prelude::*;
use serde::ser::Serializer;
use serde::Serialize;
use std::collections::BTreeSet;

/// Outcome for one power `I^k`.
#[derive(Debug, Clone, Serialize)]
pub struct PowerRow {
    pub k: u32,
    pub reg: Option<i64>,
    pub expected: i64,
    pub linear: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<BettiTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Whether `error` is a resource cap.
    #[serde(skip)]
    pub capped: bool,
}

/// Verdict over the tested range `k = 1..=kmax` only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    LinearUpTo(u32),
    NotLinear(u32),
    Incomplete(u32),
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::LinearUpTo(k) => write!(f, "linear for k <= {k}"),
            Verdict::NotLinear(k) => write!(f, "not linear at k = {k}"),
            Verdict::Incomplete(k) => write!(f, "undecided: k = {k} did not finish"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LinearPowersReport {
    pub d: u32,
    pub kmax: u32,
    pub powers: Vec<PowerRow>,
    pub verdict: Verdict,
}

impl LinearPowersReport {
    pub fn all_linear(&self) -> bool {
        matches!(self.verdict, Verdict::LinearUpTo(_))
    }

    pub fn row(&self, k: u32) -> Option<&PowerRow> {
        self.powers.iter().find(|r| r.k == k)
    }
}

fn equigenerated(ideal: &Ideal) -> Result<(Ideal, u32)> {
    let gens = ideal.minimal_generators()?;
    let min = Ideal::new(ideal.ring(), gens)?.with_limits(ideal.limits().clone());
    let d = min.equigenerated_degree().ok_or(Error::NotEquigenerated)?;
    Ok((min, d))
}

/// Betti tables of `I^k` for `k = 1..=kmax`, each computed independently.
pub fn betti_powers(ideal: &Ideal, kmax: u32) -> Result<Vec<Result<BettiTable>>> {
    let (ideal, _) = equigenerated(ideal)?;
    if kmax == 0 {
        return Err(Error::InvalidArgument("kmax must be at least 1".into()));
    }
    Ok((1..=kmax)
        .into_par_iter()
        .map(|k| {
            let b = betti_table(&ideal.power(k)?)?;
            Ok(b.with_id(format!("I^{k}")))
        })
        .collect())
}

/// Computes `reg(I^k)` for `k ≤ kmax` and compares it with `dk`.
pub fn linear_powers_check(ideal: &Ideal, kmax: u32) -> Result<LinearPowersReport> {
    let (_, d) = equigenerated(ideal)?;
    let tables = betti_powers(ideal, kmax)?;
    let mut powers = Vec::with_capacity(tables.len());
    for (k, t) in (1..=kmax).zip(tables) {
        let expected = (d * k) as i64;
        let row = match t {
            Ok(b) => {
                let reg = b.regularity()?;
                let linear = reg == expected;
                debug_assert_eq!(linear, b.is_linear(expected));
                PowerRow {
                    k,
                    reg: Some(reg),
                    expected,
                    linear: Some(linear),
                    betti: Some(b),
                    error: None,
                    capped: false,
                }
            }
            Err(e) => PowerRow {
                k,
                reg: None,
                expected,
                linear: None,
                betti: None,
                error: Some(e.to_string()),
                capped: e.is_resource_cap(),
            },
        };
        powers.push(row);
    }
    let verdict = match powers.iter().find(|r| r.linear != Some(true)) {
        None => Verdict::LinearUpTo(kmax),
        Some(r) if r.linear == Some(false) => Verdict::NotLinear(r.k),
        Some(r) => Verdict::Incomplete(r.k),
    };
    Ok(LinearPowersReport {
        d,
        kmax,
        powers,
        verdict,
    })
}

/// A general hyperplane section `R = S/(z)` realised as a polynomial ring
/// in the variables other than `x_v`, where `x_v` is eliminated through `z`.
#[derive(Debug, Clone)]
pub struct HyperplaneSection {
    pub z: Poly,
    pub ring: RingRef,
    images: Vec<Poly>,
}

impl HyperplaneSection {
    pub fn new(s: &RingRef, z: Poly) -> Result<Self> {
        let v = (0..s.nvars())
            .rev()
            .find(|&i| z.terms().iter().any(|t| t.mono.exp(i) > 0))
            .ok_or_else(|| Error::GenericityFailure("the linear form is zero".into()))?;
        if z.total_degree() != 1 || !z.is_homogeneous() {
            return Err(Error::InvalidArgument("hyperplane sections need a linear form".into()));
        }
        let names: Vec<&str> = s
            .var_names()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != v)
            .map(|(_, n)| n.as_str())
            .collect();
        let r = Ring::standard(&names, s.characteristic() as u64)?;
        let f = s.field();
        let cv = z.terms().iter().find(|t| t.mono.exp(v) > 0).map(|t| t.coef).unwrap_or(0);
        let scale = f.neg(f.inv(cv));
        let mut sub_terms = Vec::new();
        for t in z.terms() {
            let i = t.mono.support().next().unwrap_or(v);
            if i != v {
                let j = if i < v { i } else { i - 1 };
                sub_terms.push(Term {
                    coef: f.mul(t.coef, scale),
                    mono: Mono::var(r.nvars(), j),
                });
            }
        }
        let xv = Poly::from_terms(&r, sub_terms);
        let images = (0..s.nvars())
            .map(|i| match i.cmp(&v) {
                std::cmp::Ordering::Less => Poly::var(&r, i),
                std::cmp::Ordering::Equal => xv.clone(),
                std::cmp::Ordering::Greater => Poly::var(&r, i - 1),
            })
            .collect();
        Ok(HyperplaneSection { z, ring: r, images })
    }

    pub fn image(&self, f: &Poly) -> Result<Poly> {
        f.substitute(&self.ring, &self.images)
    }

    pub fn image_ideal(&self, ideal: &Ideal) -> Result<Ideal> {
        let gens = ideal
            .generators()
            .iter()
            .map(|g| self.image(g))
            .filter(|g| !matches!(g, Ok(p) if p.is_zero()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(&self.ring, gens)?.with_limits(ideal.limits().clone()))
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationRow {
    pub k: u32,
    pub i: usize,
    pub beta_r: i64,
    pub beta_s: i64,
    pub predicted: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HyperplaneReport {
    pub seed: u64,
    pub z: String,
    pub rows: Vec<RelationRow>,
    pub holds: bool,
}

/// Compares `β_i(J^k)` over `R = S/(z)` with
/// `β_i(I^k) − C(n−1, i)·β_(n−1)(I^k)` over `S` for every `i` and `k ≤ kmax`,
/// using the ideal indexing `β_0 = μ`. Fails with a genericity error when
/// `(I^k : z)/I^k` does not have finite length.
pub fn hyperplane_betti_relation(ideal: &Ideal, kmax: u32, seed: u64) -> Result<HyperplaneReport> {
    let (ideal, _) = equigenerated(ideal)?;
    let s = ideal.ring().clone();
    let n = s.nvars();
    let z = random_linear_form(&s, seed);
    let section = HyperplaneSection::new(&s, z.clone())?;
    let per_k = (1..=kmax)
        .into_par_iter()
        .map(|k| -> Result<Vec<RelationRow>> {
            let ik = ideal.power(k)?;
            let colon = ik.colon_poly(&z)?;
            if !ik.saturate_maximal()?.contains_ideal(&colon)? {
                return Err(Error::GenericityFailure(format!(
                    "(I^{k} : z) / I^{k} is not of finite length"
                )));
            }
            let bs = betti_table(&ik)?;
            let br = betti_table(&section.image_ideal(&ik)?)?;
            let top = bs.total(n - 1) as i64;
            Ok((0..n)
                .map(|i| {
                    let beta_s = bs.total(i) as i64;
                    let beta_r = br.total(i) as i64;
                    let predicted = beta_s - binomial(n - 1, i) * top;
                    RelationRow {
                        k,
                        i,
                        beta_r,
                        beta_s,
                        predicted,
                        holds: beta_r == predicted,
                    }
                })
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<RelationRow> = per_k.into_iter().flatten().collect();
    let holds = rows.iter().all(|r| r.holds);
    Ok(HyperplaneReport {
        seed,
        z: z.to_string(),
        rows,
        holds,
    })
}

fn monomial_of(p: &Poly) -> Result<Mono> {
    match p.terms() {
        [t] => Ok(t.mono.clone()),
        _ => Err(Error::NotMonomial),
    }
}

/// The smallest strongly stable ideal containing the given monomials.
pub fn borel_closure(ring: &RingRef, monomials: &[Poly]) -> Result<Ideal> {
    let mut seen: BTreeSet<Vec<u16>> = BTreeSet::new();
    let mut stack: Vec<Mono> = monomials.iter().map(monomial_of).collect::<Result<_>>()?;
    while let Some(m) = stack.pop() {
        if !seen.insert(m.exponents().to_vec()) {
            continue;
        }
        for j in m.support().collect::<Vec<_>>() {
            for i in 0..j {
                let moved = m.div_unchecked(&Mono::var(m.nvars(), j)).mul(&Mono::var(m.nvars(), i));
                if !seen.contains(moved.exponents()) {
                    stack.push(moved);
                }
            }
        }
    }
    let mons = minimalize_monomials(seen.into_iter().map(|e| Mono::from_exponents(&e)).collect());
    let gens = mons.into_iter().map(|m| Poly::monomial(ring, 1, m)).collect();
    Ideal::new(ring, gens)
}

/// Whether a monomial ideal is closed under `x_j ↦ x_i` for `i < j`.
pub fn is_strongly_stable(ideal: &Ideal) -> Result<bool> {
    let gens: Vec<Mono> = ideal
        .generators()
        .iter()
        .filter(|g| !g.is_zero())
        .map(monomial_of)
        .collect::<Result<_>>()?;
    let member = |m: &Mono| gens.iter().any(|g| g.divides(m));
    Ok(gens.iter().all(|g| {
        g.support().all(|j| {
            (0..j).all(|i| member(&g.div_unchecked(&Mono::var(g.nvars(), j)).mul(&Mono::var(g.nvars(), i))))
        })
    }))
}

/// `a_0(S/I) = max{ j : H^0_m(S/I)_j ≠ 0 }`, or `None` when `I` is
/// saturated. `H^0_m(S/I) = I^sat / I`, whose Hilbert series is
/// `(K_I − K_sat) / (1 − t)^n`.
pub fn a0_top_degree(ideal: &Ideal) -> Result<Option<i64>> {
    if !ideal.ring().is_standard_graded() {
        return Err(Error::InvalidArgument("a_0 needs a standard graded ring".into()));
    }
    let sat = ideal.saturate_maximal()?;
    let diff = ideal.hilbert_numerator()?.sub(&sat.hilbert_numerator()?);
    let mut coeffs = diff.to_dense();
    for _ in 0..ideal.ring().nvars() {
        for j in 1..coeffs.len() {
            coeffs[j] += coeffs[j - 1];
        }
    }
    Ok(coeffs.iter().rposition(|&c| c != 0).map(|j| j as i64))
}

/// Dimension of `(I^sat / I)_j`, counted from Hilbert functions; an
/// independent route to [`a0_top_degree`].
pub fn local_cohomology_dims(ideal: &Ideal, up_to: usize) -> Result<Vec<i64>> {
    let sat = ideal.saturate_maximal()?;
    let hi = hilbert_function(&ideal.hilbert_numerator()?.to_dense(), ideal.ring().nvars(), up_to);
    let hs = hilbert_function(&sat.hilbert_numerator()?.to_dense(), ideal.ring().nvars(), up_to);
    Ok(hi.iter().zip(hs).map(|(a, b)| a - b).collect())
}

fn hilbert_function(num: &[i64], n: usize, up_to: usize) -> Vec<i64> {
    (0..=up_to)
        .map(|j| {
            num.iter()
                .enumerate()
                .take(j + 1)
                .map(|(a, &c)| c * binomial(j - a + n - 1, n - 1))
                .sum()
        })
        .collect()
}

/// Whether `I^k = (I^k)^sat ∩ m^c`.
pub fn saturation_identity_check(ideal: &Ideal, k: u32, c: u32) -> Result<bool> {
    let ik = ideal.power(k)?;
    let m = Ideal::maximal(ideal.ring()).power(c)?;
    let rhs = ik.saturate_maximal()?.intersect(&m)?;
    ik.equals(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(names: &[&str], gens: &[&str]) -> Ideal {
        let r = Ring::standard(names, 32003).unwrap();
        Ideal::parse(&r, gens).unwrap()
    }

    #[test]
    fn powers_of_the_maximal_ideal_are_linear() {
        let rep = linear_powers_check(&ideal(&["x", "y"], &["x", "y"]), 3).unwrap();
        assert_eq!(rep.verdict, Verdict::LinearUpTo(3));
        assert_eq!(rep.row(3).unwrap().reg, Some(3));
    }

    #[test]
    fn non_linear_square() {
        let rep = linear_powers_check(&ideal(&["x", "y", "z"], &["x^2", "y^2"]), 2).unwrap();
        assert_eq!(rep.d, 2);
        assert_eq!(rep.row(1).unwrap().reg, Some(3));
        assert_eq!(rep.verdict, Verdict::NotLinear(1));
    }

    #[test]
    fn borel_moves() {
        let r = Ring::standard(&["x1", "x2"], 32003).unwrap();
        let b = borel_closure(&r, &[Poly::parse("x2^2", &r).unwrap()]).unwrap();
        assert!(b.equals(&Ideal::parse(&r, &["x1^2", "x1*x2", "x2^2"]).unwrap()).unwrap());
        assert!(is_strongly_stable(&b).unwrap());
        assert!(!is_strongly_stable(&Ideal::parse(&r, &["x2"]).unwrap()).unwrap());
        assert_eq!(
            is_strongly_stable(&Ideal::parse(&r, &["x1+x2"]).unwrap()),
            Err(Error::NotMonomial)
        );
        let again = borel_closure(&r, b.generators()).unwrap();
        assert_eq!(again.generators(), b.generators());
    }

    #[test]
    fn a0_of_a_socle() {
        let i = ideal(&["x", "y"], &["x^2", "x*y"]);
        assert_eq!(a0_top_degree(&i).unwrap(), Some(1));
        assert_eq!(local_cohomology_dims(&i, 4).unwrap(), vec![0, 1, 0, 0, 0]);
        assert_eq!(a0_top_degree(&ideal(&["x", "y", "z"], &["x*z - y^2"])).unwrap(), None);
    }

    #[test]
    fn maximal_ideal_saturation_identity() {
        assert!(saturation_identity_check(&ideal(&["x", "y"], &["x", "y"]), 2, 2).unwrap());
        assert!(!saturation_identity_check(&ideal(&["x", "y"], &["x", "y"]), 2, 1).unwrap());
    }

    #[test]
    fn hyperplane_section_of_the_maximal_ideal() {
        let rep = hyperplane_betti_relation(&ideal(&["x", "y"], &["x", "y"]), 3, 7).unwrap();
        assert!(rep.holds);
        let r = rep.rows.iter().find(|r| r.k == 2 && r.i == 0).unwrap();
        assert_eq!((r.beta_s, r.beta_r), (3, 1));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(2, 3), 0);
    }
}
