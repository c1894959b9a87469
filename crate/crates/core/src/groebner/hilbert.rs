//! Monomial ideals: minimal generators, multigraded Hilbert numerators and
//! Krull dimension.

use crate::ring::{Degree, Mono};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Numerator `K(t)` of the multigraded Hilbert series `K(t) / Π(1 - t^deg x_i)`
/// of `S/I`, stored as a map from exponent vectors to integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertNumerator {
    arity: usize,
    coeffs: BTreeMap<Vec<i32>, i64>,
}

impl HilbertNumerator {
    pub fn one(arity: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(vec![0; arity], 1);
        HilbertNumerator { arity, coeffs }
    }

    pub fn zero(arity: usize) -> Self {
        HilbertNumerator {
            arity,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coefficient(&self, deg: &[i32]) -> i64 {
        self.coeffs.get(deg).copied().unwrap_or(0)
    }

    /// Nonzero coefficients in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[i32], i64)> {
        self.coeffs.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn add_term(&mut self, deg: &[i32], c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(deg.to_vec()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(deg);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in other.terms() {
            out.add_term(k, v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in other.terms() {
            out.add_term(k, -v);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.arity);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                let d: Vec<i32> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(&d, x * y);
            }
        }
        out
    }

    /// Multiplies by `t^deg`.
    pub fn shift(&self, deg: &[i32]) -> Self {
        let mut out = Self::zero(self.arity);
        for (a, x) in self.terms() {
            let d: Vec<i32> = a.iter().zip(deg).map(|(p, q)| p + q).collect();
            out.add_term(&d, x);
        }
        out
    }

    /// `1 - t^deg`.
    pub fn one_minus(arity: usize, deg: &[i32]) -> Self {
        let mut out = Self::one(arity);
        out.add_term(deg, -1);
        out
    }

    /// Collapses a multigraded numerator to the total-degree grading.
    pub fn total(&self) -> Self {
        let mut out = Self::zero(1);
        for (a, x) in self.terms() {
            out.add_term(&[a.iter().sum()], x);
        }
        out
    }

    /// Univariate coefficients indexed by degree `0..=max` (arity 1 only).
    pub fn to_dense(&self) -> Vec<i64> {
        assert_eq!(self.arity, 1, "dense form needs a Z-grading");
        let top = self.coeffs.keys().map(|k| k[0]).max().unwrap_or(0).max(0) as usize;
        let mut v = vec![0; top + 1];
        for (k, c) in self.terms() {
            v[k[0] as usize] = c;
        }
        v
    }
}

impl fmt::Display for HilbertNumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let names = ["t", "s"];
        for (k, (deg, c)) in self.terms().enumerate() {
            let mono: Vec<String> = deg
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| {
                    let n = names.get(i).copied().unwrap_or("u");
                    if e == 1 {
                        n.to_string()
                    } else {
                        format!("{n}^{e}")
                    }
                })
                .collect();
            let a = c.unsigned_abs();
            let body = match (a, mono.is_empty()) {
                (_, true) => a.to_string(),
                (1, false) => mono.join("*"),
                _ => format!("{a}*{}", mono.join("*")),
            };
            match (k, c < 0) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// Minimal generators of the monomial ideal generated by `gens`, sorted by
/// degree and then exponent vector.
pub fn minimalize_monomials(mut gens: Vec<Mono>) -> Vec<Mono> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.exponents().cmp(b.exponents())));
    gens.dedup();
    let mut out: Vec<Mono> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn mono_degree(m: &Mono, grading: &[Degree], arity: usize) -> Vec<i32> {
    let mut d = vec![0; arity];
    for (i, &e) in m.exponents().iter().enumerate() {
        if e > 0 {
            for (acc, g) in d.iter_mut().zip(&grading[i]) {
                *acc += e as i32 * g;
            }
        }
    }
    d
}

/// Hilbert numerator of `S / (gens)` by pivot recursion:
/// `N(I) = N(I + (p)) + t^deg(p) N(I : p)` with `p` a pure power.
pub fn monomial_numerator(gens: &[Mono], grading: &[Degree], arity: usize) -> HilbertNumerator {
    let gens = minimalize_monomials(gens.to_vec());
    numerator_rec(gens, grading, arity)
}

fn numerator_rec(gens: Vec<Mono>, grading: &[Degree], arity: usize) -> HilbertNumerator {
    if gens.is_empty() {
        return HilbertNumerator::one(arity);
    }
    if gens.iter().any(|g| g.is_one()) {
        return HilbertNumerator::zero(arity);
    }
    let nvars = gens[0].nvars();
    let mut counts = vec![0usize; nvars];
    for g in &gens {
        for v in g.support() {
            counts[v] += 1;
        }
    }
    let (x, &best) = counts.iter().enumerate().max_by_key(|(i, &c)| (c, std::cmp::Reverse(*i))).unwrap();
    if best <= 1 {
        let mut out = HilbertNumerator::one(arity);
        for g in &gens {
            out = out.mul(&HilbertNumerator::one_minus(arity, &mono_degree(g, grading, arity)));
        }
        return out;
    }
    let mut exps: Vec<u16> = gens.iter().map(|g| g.exp(x)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let mut pexps = vec![0u16; nvars];
    pexps[x] = e;
    let pivot = Mono::from_exponents(&pexps);

    let mut sum: Vec<Mono> = gens.iter().filter(|g| g.exp(x) < e).cloned().collect();
    sum.push(pivot.clone());
    let sum = minimalize_monomials(sum);

    let colon: Vec<Mono> = gens.iter().map(|g| g.div_unchecked(&g.gcd(&pivot))).collect();
    let colon = minimalize_monomials(colon);

    let a = numerator_rec(sum, grading, arity);
    let b = numerator_rec(colon, grading, arity);
    a.add(&b.shift(&mono_degree(&pivot, grading, arity)))
}

/// Size of a smallest set of variables meeting every support in `gens`;
/// this is the height of the monomial ideal. Supports are bitmasks.
pub fn min_hitting_set(supports: &[u64]) -> usize {
    let mut sets: Vec<u64> = supports.to_vec();
    sets.sort_by_key(|s| s.count_ones());
    sets.dedup();
    let mut minimal: Vec<u64> = Vec::new();
    for s in sets {
        if !minimal.iter().any(|&m| m & s == m) {
            minimal.push(s);
        }
    }
    let mut best = usize::MAX;
    hitting_rec(&minimal, 0, &mut best);
    best
}

fn hitting_rec(sets: &[u64], chosen: usize, best: &mut usize) {
    if sets.is_empty() {
        *best = (*best).min(chosen);
        return;
    }
    let mut lower = 0;
    let mut used = 0u64;
    for &s in sets {
        if s & used == 0 {
            lower += 1;
            used |= s;
        }
    }
    if chosen + lower >= *best {
        return;
    }
    let pick = *sets.iter().min_by_key(|s| s.count_ones()).unwrap();
    let mut bits = pick;
    while bits != 0 {
        let b = bits & bits.wrapping_neg();
        bits &= bits - 1;
        let rest: Vec<u64> = sets.iter().copied().filter(|s| s & b == 0).collect();
        hitting_rec(&rest, chosen + 1, best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::smallvec;

    fn std_grading(n: usize) -> Vec<Degree> {
        vec![smallvec![1]; n]
    }

    fn m(e: &[u16]) -> Mono {
        Mono::from_exponents(e)
    }

    #[test]
    fn numerator_of_square_of_maximal_ideal() {
        let g = [m(&[2, 0]), m(&[1, 1]), m(&[0, 2])];
        let n = monomial_numerator(&g, &std_grading(2), 1);
        assert_eq!(n.to_dense(), vec![1, 0, -3, 2]);
        assert_eq!(n.to_string(), "1 - 3*t^2 + 2*t^3");
    }

    #[test]
    fn numerator_of_variable() {
        let n = monomial_numerator(&[m(&[1, 0])], &std_grading(2), 1);
        assert_eq!(n.to_dense(), vec![1, -1]);
    }

    #[test]
    fn bigraded_numerator() {
        let grading: Vec<Degree> = vec![smallvec![1, 0], smallvec![0, 1]];
        let n = monomial_numerator(&[m(&[1, 1])], &grading, 2);
        assert_eq!(n.coefficient(&[1, 1]), -1);
        assert_eq!(n.coefficient(&[0, 0]), 1);
    }

    #[test]
    fn hitting_sets() {
        assert_eq!(min_hitting_set(&[0b011, 0b110]), 1);
        assert_eq!(min_hitting_set(&[0b0011, 0b1100]), 2);
        assert_eq!(min_hitting_set(&[]), 0);
    }
}
