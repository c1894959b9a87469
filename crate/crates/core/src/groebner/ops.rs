//! Elimination, intersection, colon and saturation.

use super::engine::{self, Request};
use super::ideal::Ideal;
use crate::error::{Error, Result};
use crate::ring::poly::sub_mul_terms;
use crate::ring::{Mono, MonomialOrder, Poly, Ring, RingRef, Term};
use std::sync::Arc;

/// Ring over the same variables listed in `names` order.
pub(crate) fn reordered_ring(ring: &RingRef, names: &[String], order: MonomialOrder) -> Result<RingRef> {
    let grading = names
        .iter()
        .map(|n| {
            let i = ring.var_index(n).ok_or_else(|| Error::UnknownVariable(n.clone()))?;
            Ok(ring.var_degree(i).to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    Ring::new(names.to_vec(), ring.characteristic() as u64, grading, order).map(Arc::new)
}

/// Exact quotient `a / b`, or `None` if `b` does not divide `a`.
pub fn divide_exact(a: &Poly, b: &Poly) -> Option<Poly> {
    let ring = a.ring();
    let (order, f) = (ring.order(), ring.field());
    let bt = b.terms();
    let lead = bt.first()?;
    let inv = f.inv(lead.coef);
    let mut rem: Vec<Term> = a.terms().to_vec();
    let mut q: Vec<Term> = Vec::new();
    while let Some(t) = rem.first() {
        let m = t.mono.div(&lead.mono)?;
        let c = f.mul(t.coef, inv);
        rem = sub_mul_terms(&rem[1..], &bt[1..], c, &m, order, f);
        q.push(Term { coef: c, mono: m });
    }
    Some(Poly::from_terms(ring, q))
}

impl Ideal {
    /// `I ∩ K[remaining variables]`, computed with a two-block elimination
    /// order; the result lives in the same ring.
    pub fn eliminate(&self, vars: &[&str]) -> Result<Ideal> {
        if vars.is_empty() {
            return Ok(self.clone());
        }
        let ring = self.ring();
        let mut names: Vec<String> = Vec::new();
        for v in vars {
            ring.var_index(v).ok_or_else(|| Error::UnknownVariable(v.to_string()))?;
            if !names.iter().any(|n| n == v) {
                names.push(v.to_string());
            }
        }
        let k = names.len();
        for n in ring.var_names() {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
        let er = reordered_ring(ring, &names, MonomialOrder::Elimination { split: k })?;
        let gb = self.groebner_basis_in(&er)?;
        let kept = gb
            .iter()
            .filter(|g| g.leading_monomial().unwrap().exponents()[..k].iter().all(|&e| e == 0))
            .map(|g| g.to_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        self.derived(kept)
    }

    /// `I ∩ J` by eliminating `t` from `t·I + (1 − t)·J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        let ring = self.ring();
        if **other.ring() != **ring {
            return Err(Error::RingMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return self.derived(vec![]);
        }
        let t = ring.fresh_name("t");
        let mut names = vec![t];
        names.extend(ring.var_names().iter().cloned());
        let mut grading = vec![vec![1; ring.grading_arity()]];
        grading.extend(ring.grading().iter().map(|d| d.to_vec()));
        let er: RingRef = Arc::new(Ring::new(
            names,
            ring.characteristic() as u64,
            grading,
            MonomialOrder::Elimination { split: 1 },
        )?);
        let tvar = Poly::var(&er, 0);
        let one_minus_t = Poly::one(&er).sub(&tvar)?;
        let mut input: Vec<Vec<Term>> = Vec::new();
        for g in self.generators() {
            input.push(g.embed(&er)?.mul(&tvar)?.terms().to_vec());
        }
        for g in other.generators() {
            input.push(g.embed(&er)?.mul(&one_minus_t)?.terms().to_vec());
        }
        let mut req = Request::new(&er, self.limits());
        req.weights[0] = 0;
        let gb = engine::groebner(input, &req)?;
        let mut kept = Vec::new();
        for g in gb {
            if g[0].mono.exp(0) == 0 {
                let terms = g
                    .into_iter()
                    .map(|t| Term {
                        coef: t.coef,
                        mono: Mono::from_exponents(&t.mono.exponents()[1..]),
                    })
                    .collect();
                kept.push(Poly::from_terms(ring, terms));
            }
        }
        self.derived(kept)
    }

    /// `I : (g)` for a single homogeneous polynomial.
    pub fn colon_poly(&self, g: &Poly) -> Result<Ideal> {
        if g.is_zero() {
            return Err(Error::InvalidArgument("colon by the zero polynomial".into()));
        }
        let principal = self.derived(vec![g.clone()])?;
        let inter = self.intersect(&principal)?;
        let quotients = inter
            .generators()
            .iter()
            .map(|h| divide_exact(h, g).ok_or_else(|| Error::InvalidArgument("inexact division".into())))
            .collect::<Result<Vec<_>>>()?;
        self.derived(quotients)
    }

    /// `I : J = ∩_{g ∈ gens J} (I : g)`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        if **other.ring() != **self.ring() {
            return Err(Error::RingMismatch);
        }
        if other.is_zero() {
            return Err(Error::InvalidArgument("colon by the zero ideal".into()));
        }
        let mut acc: Option<Ideal> = None;
        for g in other.generators() {
            let c = self.colon_poly(g)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// `I : g^∞`, iterating the colon until it stabilizes.
    pub fn saturate_poly(&self, g: &Poly) -> Result<Ideal> {
        if let Some(i) = single_variable(g) {
            if self.is_standard_homogeneous() {
                return self.saturate_variable(i);
            }
        }
        let mut cur = self.clone();
        loop {
            let next = cur.colon_poly(g)?;
            if next.equals(&cur)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `I : J^∞ = ∩_{g ∈ gens J} (I : g^∞)`.
    pub fn saturate(&self, other: &Ideal) -> Result<Ideal> {
        if **other.ring() != **self.ring() {
            return Err(Error::RingMismatch);
        }
        if other.is_zero() {
            return Err(Error::InvalidArgument("saturation by the zero ideal".into()));
        }
        let mut acc: Option<Ideal> = None;
        for g in other.generators() {
            let s = self.saturate_poly(g)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s)?,
            });
        }
        acc.unwrap().interreduced()
    }

    /// `I : m^∞` for the homogeneous maximal ideal.
    pub fn saturate_maximal(&self) -> Result<Ideal> {
        self.saturate(&Ideal::maximal(self.ring()))
    }

    fn is_standard_homogeneous(&self) -> bool {
        self.generators().iter().all(|g| {
            let d = g.terms()[0].mono.degree();
            g.terms().iter().all(|t| t.mono.degree() == d)
        })
    }

    /// `I : x_i^∞` from a degrevlex basis with `x_i` last: divide each basis
    /// element by the largest power of `x_i` dividing it.
    fn saturate_variable(&self, i: usize) -> Result<Ideal> {
        let ring = self.ring();
        let mut names: Vec<String> = ring.var_names().to_vec();
        let x = names.remove(i);
        names.push(x);
        let rr = reordered_ring(ring, &names, MonomialOrder::DegRevLex)?;
        let gb = self.groebner_basis_in(&rr)?;
        let last = rr.nvars() - 1;
        let gens = gb
            .iter()
            .map(|g| {
                let e = g.terms().iter().map(|t| t.mono.exp(last)).min().unwrap_or(0);
                let mut d = vec![0u16; rr.nvars()];
                d[last] = e;
                let dm = Mono::from_exponents(&d);
                let terms = g
                    .terms()
                    .iter()
                    .map(|t| Term {
                        coef: t.coef,
                        mono: t.mono.div_unchecked(&dm),
                    })
                    .collect();
                Poly::from_terms(&rr, terms).to_ring(ring)
            })
            .collect::<Result<Vec<_>>>()?;
        self.derived(gens)
    }
}

fn single_variable(g: &Poly) -> Option<usize> {
    match g.terms() {
        [t] if t.mono.degree() == 1 => t.mono.support().next(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(names: &[&str]) -> RingRef {
        Ring::standard(names, 32003).unwrap()
    }

    #[test]
    fn exact_division() {
        let r = ring(&["x", "y"]);
        let a = Poly::parse("x^2 - y^2", &r).unwrap();
        let b = Poly::parse("x + y", &r).unwrap();
        assert_eq!(divide_exact(&a, &b).unwrap(), Poly::parse("x - y", &r).unwrap());
        assert!(divide_exact(&Poly::parse("x^2 + y^2", &r).unwrap(), &b).is_none());
    }

    #[test]
    fn simple_colon_and_saturation() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x*y"]).unwrap();
        let j = Ideal::parse(&r, &["x"]).unwrap();
        assert!(i.colon(&j).unwrap().equals(&Ideal::parse(&r, &["y"]).unwrap()).unwrap());
        let thick = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
        let sat = thick.saturate_maximal().unwrap();
        assert!(sat.equals(&Ideal::parse(&r, &["x"]).unwrap()).unwrap());
    }

    #[test]
    fn intersection_of_coordinate_lines() {
        let r = ring(&["x", "y"]);
        let a = Ideal::parse(&r, &["x"]).unwrap();
        let b = Ideal::parse(&r, &["y"]).unwrap();
        assert!(a.intersect(&b).unwrap().equals(&Ideal::parse(&r, &["x*y"]).unwrap()).unwrap());
    }

    #[test]
    fn veronese_elimination() {
        let r = ring(&["t", "x", "y", "y1", "y2", "y3"]);
        let r = r
            .with_grading(&[vec![1], vec![1], vec![1], vec![3], vec![3], vec![3]])
            .unwrap();
        let i = Ideal::parse(&r, &["y1 - t*x^2", "y2 - t*x*y", "y3 - t*y^2"]).unwrap();
        let expected = Ideal::parse(&r, &["y2^2 - y1*y3"]).unwrap();
        assert!(i.eliminate(&["t", "x", "y"]).unwrap().equals(&expected).unwrap());
        let rees = i.eliminate(&["t"]).unwrap();
        assert!(rees.contains(&expected.generators()[0]).unwrap());
        assert!(rees.contains(&Poly::parse("y*y1 - x*y2", &r).unwrap()).unwrap());
    }
}
