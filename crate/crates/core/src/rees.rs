//! Presentations of Rees algebras.
//!
//! For an ideal `I = (f_1, …, f_m)` generated in one degree `d` of a
//! polynomial ring `S`, the Rees algebra `S[It]` is a quotient `A / P` of
//! the bigraded ring `A = S[y_1, …, y_m]` (`deg x = (1,0)`, `deg y = (0,1)`).
//! Inside `P` sit the ideal `Q` of the symmetric algebra (spanned by the
//! linear syzygies `Σ a_i y_i`) and the fiber ideal `T = P ∩ K[y]`. The ideal
//! is of linear type when `P = Q` and of fiber type when `P = Q + T`.
//!
//! ```
//! use minorforge::groebner::Ideal;
//! use minorforge::rees::{classify, ReesOptions};
//! use minorforge::ring::Ring;
//!
//! let r = Ring::standard(&["x", "y"], 32003).unwrap();
//! let m = Ideal::parse(&r, &["x", "y"]).unwrap();
//! let p = classify(&m, &ReesOptions::default()).unwrap();
//! assert!(p.linear_type && p.fiber_type);
//! assert_eq!(p.reg10, Some(0));
//! ```

use crate::error::{Error, Result};
use crate::groebner::{ring_with_variable_order, Ideal};
use crate::resolve::{quotient_betti_table, syzygies};
use crate::ring::{Degree, Mono, MonomialOrder, Poly, Ring, RingRef, Term};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// The ring `A = S[y_1, …, y_m]` together with the minimal generators
/// `f_i` of `I` that the `y_i` stand for.
#[derive(Debug, Clone)]
pub struct ReesRing {
    pub source: RingRef,
    pub ring: RingRef,
    pub gens: Vec<Poly>,
    pub degree: u32,
}

impl ReesRing {
    /// Variables of `S` followed by `y1 … ym` (another letter if those
    /// names are taken), bigraded by `(1,0)` and `(0,1)`.
    pub fn new(ideal: &Ideal) -> Result<ReesRing> {
        let s = ideal.ring();
        if !s.is_standard_graded() {
            return Err(Error::InvalidArgument("Rees algebras need a standard graded ring".into()));
        }
        let gens = ideal.minimal_generators()?;
        let degree = ideal
            .derived(gens.clone())?
            .equigenerated_degree()
            .ok_or(Error::NotEquigenerated)?;
        let m = gens.len();
        let prefix = ["y", "Y", "z", "Z", "u", "U"]
            .into_iter()
            .find(|p| (1..=m).all(|i| s.var_index(&format!("{p}{i}")).is_none()))
            .ok_or_else(|| Error::InvalidArgument("no free variable names for the Rees ring".into()))?;
        let mut names: Vec<String> = s.var_names().to_vec();
        names.extend((1..=m).map(|i| format!("{prefix}{i}")));
        let mut grading = vec![vec![1, 0]; s.nvars()];
        grading.extend(vec![vec![0, 1]; m]);
        let ring = Arc::new(Ring::new(names, s.characteristic() as u64, grading, MonomialOrder::DegRevLex)?);
        Ok(ReesRing {
            source: s.clone(),
            ring,
            gens,
            degree,
        })
    }

    pub fn nx(&self) -> usize {
        self.source.nvars()
    }

    pub fn mu(&self) -> usize {
        self.gens.len()
    }

    pub fn x_names(&self) -> Vec<&str> {
        self.ring.var_names()[..self.nx()].iter().map(|s| s.as_str()).collect()
    }

    /// Image of `g ∈ A` under `y_i ↦ f_i`.
    pub fn evaluate(&self, g: &Poly) -> Result<Poly> {
        let s = &self.source;
        let mut images: Vec<Poly> = (0..self.nx()).map(|i| Poly::var(s, i)).collect();
        images.extend(self.gens.iter().cloned());
        g.substitute(s, &images)
    }
}

/// `P(I)`: eliminates `t` from `(y_i − t f_i)` in `A[t]`, weighting
/// `t` and `x` by 1 and `y` by `d + 1`.
pub fn rees_ideal(ideal: &Ideal) -> Result<(ReesRing, Ideal)> {
    let rr = ReesRing::new(ideal)?;
    let p = rees_ideal_in(&rr, ideal)?;
    Ok((rr, p))
}

fn rees_ideal_in(rr: &ReesRing, ideal: &Ideal) -> Result<Ideal> {
    let a = &rr.ring;
    let t = a.fresh_name("t");
    let mut names = vec![t.clone()];
    names.extend(a.var_names().iter().cloned());
    let mut grading = vec![vec![1]; 1 + rr.nx()];
    grading.extend(vec![vec![rr.degree as i32 + 1]; rr.mu()]);
    let at = Arc::new(Ring::new(names, a.characteristic() as u64, grading, MonomialOrder::DegRevLex)?);
    let tv = Poly::var(&at, 0);
    let gens = rr
        .gens
        .iter()
        .enumerate()
        .map(|(i, f)| Poly::var(&at, 1 + rr.nx() + i).sub(&tv.mul(&shift_into(f, &at, 1)?)?))
        .collect::<Result<Vec<_>>>()?;
    let elim = Ideal::new(&at, gens)?.with_limits(ideal.limits().clone()).eliminate(&[&t])?;
    let kept = elim
        .generators()
        .iter()
        .map(|g| {
            let terms = g
                .terms()
                .iter()
                .map(|tm| Term {
                    coef: tm.coef,
                    mono: Mono::from_exponents(&tm.mono.exponents()[1..]),
                })
                .collect();
            Poly::from_terms(a, terms)
        })
        .collect();
    let p = Ideal::new(a, kept)?.with_limits(ideal.limits().clone());
    let mins = p.minimal_generators()?;
    Ideal::new(a, mins).map(|i| i.with_limits(ideal.limits().clone()))
}

/// Places `f ∈ S` in `target`, whose variables from `offset` on start with
/// those of `S`.
fn shift_into(f: &Poly, target: &RingRef, offset: usize) -> Result<Poly> {
    let terms = f
        .terms()
        .iter()
        .map(|t| {
            let mut e = vec![0u16; target.nvars()];
            e[offset..offset + t.mono.nvars()].copy_from_slice(t.mono.exponents());
            Term {
                coef: t.coef,
                mono: Mono::from_exponents(&e),
            }
        })
        .collect();
    Ok(Poly::from_terms(target, terms))
}

/// `Q(I)`: the ideal of `A` spanned by `Σ a_i y_i` for the syzygies
/// `(a_1, …, a_m)` of the minimal generators.
pub fn symmetric_ideal(rr: &ReesRing) -> Result<Ideal> {
    let a = &rr.ring;
    if rr.mu() < 2 {
        return Ok(Ideal::zero(a));
    }
    let syz = syzygies(&rr.gens)?;
    let mut gens = Vec::with_capacity(syz.ncols());
    for c in 0..syz.ncols() {
        let mut acc = Poly::zero(a);
        for (i, coef) in syz.column(c) {
            let y = Poly::var(a, rr.nx() + i);
            acc = acc.add(&shift_into(coef, a, 0)?.mul(&y)?)?;
        }
        gens.push(acc);
    }
    Ideal::new(a, gens)
}

/// `T(I) = P ∩ K[y]`, as an ideal of `A`.
pub fn fiber_ideal(rr: &ReesRing, p: &Ideal) -> Result<Ideal> {
    if p.is_zero() {
        return Ok(Ideal::zero(&rr.ring));
    }
    let t = p.eliminate(&rr.x_names())?;
    let mins = t.minimal_generators()?;
    Ideal::new(&rr.ring, mins)
}

/// `reg_(1,0)` of a Rees algebra, or the reason it was not computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reg10 {
    Value(i64),
    Skipped,
}

impl Serialize for Reg10 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Reg10::Value(v) => s.serialize_i64(*v),
            Reg10::Skipped => s.serialize_str("skipped"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReesOptions {
    /// Extra orders (each applied to the variables `x…, y…`) for the
    /// quadratic Gröbner basis search.
    pub extra_orders: Vec<(String, MonomialOrder)>,
    /// Largest `#x + #y` for which `reg_(1,0)` is computed.
    pub reg10_budget: usize,
}

impl Default for ReesOptions {
    fn default() -> Self {
        ReesOptions {
            extra_orders: vec![],
            reg10_budget: 12,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReesPresentation {
    pub rees: ReesRing,
    pub p: Ideal,
    pub q: Ideal,
    pub t: Ideal,
    /// Bidegrees of the minimal generators of `P`, in generator order.
    pub bidegrees: Vec<(i32, i32)>,
    pub linear_type: bool,
    /// `P = Q + T`.
    pub fiber_type: bool,
    /// No minimal generator of bidegree `(a, b)` with `a > 0` and `b > 1`.
    pub fiber_type_by_bidegree: bool,
    /// Whether a quadratic Gröbner basis was found, per order.
    pub quadratic_gb: BTreeMap<String, bool>,
    pub reg10: Option<i64>,
}

impl ReesPresentation {
    pub fn report(&self) -> ReesReport {
        ReesReport {
            mu: self.rees.mu(),
            p_gens: self.p.generators().iter().map(|g| g.to_string()).collect(),
            bidegrees: self.bidegrees.iter().map(|&(a, b)| [a, b]).collect(),
            linear_type: self.linear_type,
            fiber_type: self.fiber_type,
            quadratic_gb: self.quadratic_gb.clone(),
            reg10: self.reg10.map_or(Reg10::Skipped, Reg10::Value),
        }
    }
}

/// JSON report of a classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesReport {
    pub mu: usize,
    pub p_gens: Vec<String>,
    pub bidegrees: Vec<[i32; 2]>,
    pub linear_type: bool,
    pub fiber_type: bool,
    pub quadratic_gb: BTreeMap<String, bool>,
    pub reg10: Reg10,
}

impl Serialize for ReesReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(7))?;
        m.serialize_entry("mu", &self.mu)?;
        m.serialize_entry("P_gens", &self.p_gens)?;
        m.serialize_entry("bidegrees", &self.bidegrees)?;
        m.serialize_entry("linear_type", &self.linear_type)?;
        m.serialize_entry("fiber_type", &self.fiber_type)?;
        m.serialize_entry("quadratic_gb", &self.quadratic_gb)?;
        m.serialize_entry("reg10", &self.reg10)?;
        m.end()
    }
}

fn bidegree(g: &Poly) -> Result<(i32, i32)> {
    let d: Degree = g.homogeneous_degree()?;
    Ok((d[0], d[1]))
}

/// `reg_(1,0)(A / P)` if `A` has at most `budget` variables.
pub fn rees_reg10(rr: &ReesRing, p: &Ideal, budget: usize) -> Result<Option<i64>> {
    if rr.ring.nvars() > budget {
        return Ok(None);
    }
    quotient_betti_table(p)?.reg_10().map(Some)
}

/// The orders tried for a quadratic Gröbner basis: degrevlex with the
/// `x` block first and with the `y` block first.
pub fn default_orders(rr: &ReesRing) -> Result<Vec<(String, RingRef)>> {
    let names = rr.ring.var_names();
    let (xs, ys) = names.split_at(rr.nx());
    let xy: Vec<String> = xs.iter().chain(ys).cloned().collect();
    let yx: Vec<String> = ys.iter().chain(xs).cloned().collect();
    Ok(vec![
        ("degrevlex_xy".into(), ring_with_variable_order(&rr.ring, &xy, MonomialOrder::DegRevLex)?),
        ("degrevlex_yx".into(), ring_with_variable_order(&rr.ring, &yx, MonomialOrder::DegRevLex)?),
    ])
}

/// Computes `P`, `Q`, `T`, the linear/fiber type flags, the quadratic
/// Gröbner basis search and (within budget) `reg_(1,0)`.
pub fn classify(ideal: &Ideal, opts: &ReesOptions) -> Result<ReesPresentation> {
    let (rr, p) = rees_ideal(ideal)?;
    let (q, t) = rayon::join(|| symmetric_ideal(&rr), || fiber_ideal(&rr, &p));
    let (q, t) = (q?, t?);
    let bidegrees = p.generators().iter().map(bidegree).collect::<Result<Vec<_>>>()?;
    let linear_type = p.equals(&q)?;
    let fiber_type = p.equals(&q.sum(&t)?)?;
    let fiber_type_by_bidegree = !bidegrees.iter().any(|&(a, b)| a > 0 && b > 1);
    let mut orders = default_orders(&rr)?;
    for (name, o) in &opts.extra_orders {
        orders.push((name.clone(), rr.ring.with_order(o.clone())?));
    }
    let mut quadratic_gb = BTreeMap::new();
    for (name, ring) in orders {
        quadratic_gb.insert(name, p.has_quadratic_gb_in(&ring)?);
    }
    let reg10 = rees_reg10(&rr, &p, opts.reg10_budget)?;
    Ok(ReesPresentation {
        rees: rr,
        p,
        q,
        t,
        bidegrees,
        linear_type,
        fiber_type,
        fiber_type_by_bidegree,
        quadratic_gb,
        reg10,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(names: &[&str], gens: &[&str]) -> Ideal {
        let r = Ring::standard(names, 32003).unwrap();
        Ideal::parse(&r, gens).unwrap()
    }

    #[test]
    fn maximal_ideal_of_the_plane() {
        let i = ideal(&["x", "y"], &["x", "y"]);
        let (rr, p) = rees_ideal(&i).unwrap();
        let expected = Ideal::parse(&rr.ring, &["x*y2 - y*y1"]).unwrap();
        assert!(p.equals(&expected).unwrap());
        assert!(symmetric_ideal(&rr).unwrap().equals(&p).unwrap());
        assert!(fiber_ideal(&rr, &p).unwrap().is_zero());
        for g in p.generators() {
            assert!(rr.evaluate(g).unwrap().is_zero());
        }
    }

    #[test]
    fn principal_ideal() {
        let i = ideal(&["x", "y"], &["x^2"]);
        let c = classify(&i, &ReesOptions::default()).unwrap();
        assert!(c.p.is_zero() && c.q.is_zero() && c.t.is_zero());
        assert!(c.linear_type && c.fiber_type);
        assert_eq!(c.reg10, Some(0));
    }

    #[test]
    fn veronese_fiber() {
        let i = ideal(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let c = classify(&i, &ReesOptions::default()).unwrap();
        let expected = Ideal::parse(&c.rees.ring, &["y1*y3 - y2^2"]).unwrap();
        assert!(c.t.equals(&expected).unwrap());
        assert!(c.fiber_type && c.fiber_type_by_bidegree && !c.linear_type);
        assert!(c.quadratic_gb.values().all(|&b| b));
        assert_eq!(c.reg10, Some(0));
        let json = serde_json::to_value(c.report()).unwrap();
        assert_eq!(json["mu"], 3);
        assert_eq!(json["reg10"], 0);
    }

    #[test]
    fn rejects_mixed_degrees() {
        let i = ideal(&["x", "y"], &["x", "y^2"]);
        assert!(matches!(rees_ideal(&i), Err(Error::NotEquigenerated)));
    }

    #[test]
    fn skipped_reg10_serializes_as_text() {
        assert_eq!(serde_json::to_string(&Reg10::Skipped).unwrap(), "\"skipped\"");
    }
}
