//! Sparse polynomials in canonical form.

use super::field::PrimeField;
use super::mono::Mono;
use super::order::MonomialOrder;
use super::{Degree, RingRef};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coef: u32,
    pub mono: Mono,
}

/// A polynomial: nonzero coefficients, monomials strictly decreasing in the
/// ring's active order.
#[derive(Clone)]
pub struct Poly {
    ring: RingRef,
    terms: Vec<Term>,
}

/// Result of [`Poly::multidegree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultiDegree {
    Homogeneous(Degree),
    Inhomogeneous,
}

impl Poly {
    pub fn zero(ring: &RingRef) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: i64) -> Poly {
        let c = ring.field().from_i64(c);
        Poly::monomial(ring, c, Mono::one(ring.nvars()))
    }

    pub fn one(ring: &RingRef) -> Poly {
        Poly::constant(ring, 1)
    }

    pub fn var(ring: &RingRef, i: usize) -> Poly {
        Poly::monomial(ring, 1, Mono::var(ring.nvars(), i))
    }

    /// The variable with the given name.
    pub fn var_named(ring: &RingRef, name: &str) -> Result<Poly> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Poly::var(ring, i))
    }

    pub fn monomial(ring: &RingRef, coef: u32, mono: Mono) -> Poly {
        let terms = if coef % ring.characteristic() == 0 {
            vec![]
        } else {
            vec![Term {
                coef: coef % ring.characteristic(),
                mono,
            }]
        };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Canonicalizes an arbitrary list of terms.
    pub fn from_terms(ring: &RingRef, terms: Vec<Term>) -> Poly {
        let terms = normalize(terms, ring.order(), ring.field());
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Mono> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coef(&self) -> Option<u32> {
        self.terms.first().map(|t| t.coef)
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(Poly {
            ring: self.ring.clone(),
            terms: add_terms(&self.terms, &other.terms, self.ring.order(), self.ring.field()),
        })
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let f = self.ring.field();
        Ok(Poly {
            ring: self.ring.clone(),
            terms: sub_mul_terms(&self.terms, &other.terms, 1, &Mono::one(self.ring.nvars()), self.ring.order(), f),
        })
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(Poly {
            ring: self.ring.clone(),
            terms: mul_terms(&self.terms, &other.terms, self.ring.order(), self.ring.field()),
        })
    }

    /// Multiplies by an integer scalar (reduced mod p).
    pub fn scale(&self, c: i64) -> Poly {
        let f = self.ring.field();
        self.scale_fp(f.from_i64(c))
    }

    pub(crate) fn scale_fp(&self, c: u32) -> Poly {
        let f = self.ring.field();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coef: f.mul(t.coef, c),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    pub fn neg(&self) -> Poly {
        self.scale(-1)
    }

    /// Multiplies by `c * m`.
    pub fn mul_term(&self, c: u32, m: &Mono) -> Poly {
        let f = self.ring.field();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coef: f.mul(t.coef, c),
                    mono: t.mono.mul(m),
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Scales so that the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading_coef() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale_fp(self.ring.field().inv(c)),
        }
    }

    /// Common multidegree of all terms, or `Inhomogeneous`.
    pub fn multidegree(&self) -> Result<MultiDegree> {
        let first = self.terms.first().ok_or(Error::ZeroPolynomial)?;
        let d = self.ring.degree_of(&first.mono);
        for t in &self.terms[1..] {
            if self.ring.degree_of(&t.mono) != d {
                return Ok(MultiDegree::Inhomogeneous);
            }
        }
        Ok(MultiDegree::Homogeneous(d))
    }

    /// Multidegree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Result<Degree> {
        match self.multidegree()? {
            MultiDegree::Homogeneous(d) => Ok(d),
            MultiDegree::Inhomogeneous => Err(Error::Inhomogeneous(self.to_string())),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || matches!(self.multidegree(), Ok(MultiDegree::Homogeneous(_)))
    }

    /// Largest standard total degree of a term (0 for the zero polynomial).
    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0)
    }

    /// Ring homomorphism sending variable `i` to `images[i]`, all in `target`.
    pub fn substitute(&self, target: &RingRef, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::InvalidArgument(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        for img in images {
            if *img.ring != **target {
                return Err(Error::RingMismatch);
            }
        }
        let f = target.field();
        let mut powers: HashMap<(usize, u16), Poly> = HashMap::new();
        let mut acc: Vec<Term> = Vec::new();
        for t in &self.terms {
            let mut prod = Poly::monomial(target, t.coef, Mono::one(target.nvars()));
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e as u32))
                    .clone();
                prod = prod.mul(&p)?;
                if prod.is_zero() {
                    break;
                }
            }
            acc.extend(prod.terms);
        }
        let terms = normalize(acc, target.order(), f);
        Ok(Poly {
            ring: target.clone(),
            terms,
        })
    }

    /// Substitution by variable name. Unassigned variables map to the
    /// same-named variable of `target` unless `strict` is set.
    pub fn substitute_named(
        &self,
        target: &RingRef,
        assignments: &HashMap<String, Poly>,
        strict: bool,
    ) -> Result<Poly> {
        let occurring: Vec<bool> = (0..self.ring.nvars())
            .map(|i| self.terms.iter().any(|t| t.mono.exp(i) > 0))
            .collect();
        let mut images = Vec::with_capacity(self.ring.nvars());
        for (i, name) in self.ring.var_names().iter().enumerate() {
            let img = match assignments.get(name) {
                Some(p) => p.clone(),
                None if strict && occurring[i] => return Err(Error::MissingAssignment(name.clone())),
                None => match target.var_index(name) {
                    Some(j) => Poly::var(target, j),
                    None if !occurring[i] => Poly::zero(target),
                    None => return Err(Error::UnknownVariable(name.clone())),
                },
            };
            images.push(img);
        }
        self.substitute(target, &images)
    }

    /// Moves the polynomial into a ring with the same variable names
    /// (possibly permuted, possibly a different order or grading).
    pub fn to_ring(&self, target: &RingRef) -> Result<Poly> {
        if Arc::ptr_eq(&self.ring, target) {
            return Ok(self.clone());
        }
        let perm: Vec<usize> = target
            .var_names()
            .iter()
            .map(|n| self.ring.var_index(n).ok_or_else(|| Error::UnknownVariable(n.clone())))
            .collect::<Result<_>>()?;
        if target.nvars() != self.ring.nvars() || target.characteristic() != self.ring.characteristic() {
            return Err(Error::RingMismatch);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coef: t.coef,
                mono: t.mono.permuted(&perm),
            })
            .collect();
        Ok(Poly::from_terms(target, terms))
    }

    /// Embeds into a ring whose variables include all variables of `self`.
    pub fn embed(&self, target: &RingRef) -> Result<Poly> {
        let map: Vec<usize> = self
            .ring
            .var_names()
            .iter()
            .map(|n| target.var_index(n).ok_or_else(|| Error::UnknownVariable(n.clone())))
            .collect::<Result<_>>()?;
        if target.characteristic() != self.ring.characteristic() {
            return Err(Error::RingMismatch);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut e = vec![0u16; target.nvars()];
                for (i, &x) in t.mono.exponents().iter().enumerate() {
                    e[map[i]] = x;
                }
                Term {
                    coef: t.coef,
                    mono: Mono::from_exponents(&e),
                }
            })
            .collect();
        Ok(Poly::from_terms(target, terms))
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// A homogeneous linear form with coefficients drawn uniformly from F_p by
/// a ChaCha generator seeded with `seed`.
pub fn random_linear_form(ring: &RingRef, seed: u64) -> Poly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = ring.characteristic();
    let terms = (0..ring.nvars())
        .map(|i| Term {
            coef: rng.gen_range(0..p),
            mono: Mono::var(ring.nvars(), i),
        })
        .filter(|t| t.coef != 0)
        .collect();
    Poly::from_terms(ring, terms)
}

/// Sorts descending, merges equal monomials and drops zeros.
pub(crate) fn normalize(mut terms: Vec<Term>, order: &MonomialOrder, f: PrimeField) -> Vec<Term> {
    terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.mono == t.mono => last.coef = f.add(last.coef, t.coef % f.characteristic()),
            _ => out.push(Term {
                coef: t.coef % f.characteristic(),
                mono: t.mono,
            }),
        }
    }
    out.retain(|t| t.coef != 0);
    out
}

pub(crate) fn add_terms(a: &[Term], b: &[Term], order: &MonomialOrder, f: PrimeField) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].mono, &b[j].mono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let c = f.add(a[i].coef, b[j].coef);
                if c != 0 {
                    out.push(Term {
                        coef: c,
                        mono: a[i].mono.clone(),
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `a - c * m * b`.
pub(crate) fn sub_mul_terms(
    a: &[Term],
    b: &[Term],
    c: u32,
    m: &Mono,
    order: &MonomialOrder,
    f: PrimeField,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let nc = f.neg(c);
    let mut i = 0;
    let mut bj = b.iter().map(|t| Term {
        coef: f.mul(t.coef, nc),
        mono: t.mono.mul(m),
    });
    let mut cur = bj.next();
    while let Some(bt) = cur.take() {
        if i >= a.len() {
            out.push(bt);
            out.extend(bj);
            return out;
        }
        match order.cmp(&a[i].mono, &bt.mono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
                cur = Some(bt);
            }
            Ordering::Less => {
                out.push(bt);
                cur = bj.next();
            }
            Ordering::Equal => {
                let s = f.add(a[i].coef, bt.coef);
                if s != 0 {
                    out.push(Term { coef: s, mono: bt.mono });
                }
                i += 1;
                cur = bj.next();
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out
}

pub(crate) fn mul_terms(a: &[Term], b: &[Term], order: &MonomialOrder, f: PrimeField) -> Vec<Term> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    if a.len() == 1 || b.len() == 1 {
        let (s, l) = if a.len() == 1 { (&a[0], b) } else { (&b[0], a) };
        return l
            .iter()
            .map(|t| Term {
                coef: f.mul(t.coef, s.coef),
                mono: t.mono.mul(&s.mono),
            })
            .collect();
    }
    let mut acc: FxHashMap<Mono, u32> = FxHashMap::default();
    for x in a {
        for y in b {
            let m = x.mono.mul(&y.mono);
            let c = f.mul(x.coef, y.coef);
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, c);
        }
    }
    let mut out: Vec<Term> = acc
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(mono, coef)| Term { coef, mono })
        .collect();
    out.sort_by(|x, y| order.cmp(&y.mono, &x.mono));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn ring() -> RingRef {
        Ring::standard(&["x", "y", "z"], 32003).unwrap()
    }

    fn p(r: &RingRef, s: &str) -> Poly {
        Poly::parse(s, r).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let prod = p(&r, "x+y").mul(&p(&r, "x-y")).unwrap();
        assert_eq!(prod, p(&r, "x^2-y^2"));
        assert!(p(&r, "x^2+3*y").mul(&Poly::zero(&r)).unwrap().is_zero());
    }

    #[test]
    fn ring_mismatch() {
        let r = ring();
        let s = Ring::standard(&["u", "v"], 32003).unwrap();
        assert!(matches!(p(&r, "x").add(&p(&s, "u")), Err(Error::RingMismatch)));
    }

    #[test]
    fn multidegree_cases() {
        let r = ring();
        assert_eq!(
            p(&r, "x^2*y").multidegree().unwrap(),
            MultiDegree::Homogeneous(Degree::from_slice(&[3]))
        );
        assert_eq!(p(&r, "x + x^2").multidegree().unwrap(), MultiDegree::Inhomogeneous);
        assert!(matches!(Poly::zero(&r).multidegree(), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn substitution_and_identity() {
        let r = ring();
        let f = p(&r, "x^2*y - 3*z^3 + y*z");
        let id: Vec<Poly> = (0..3).map(|i| Poly::var(&r, i)).collect();
        assert_eq!(f.substitute(&r, &id).unwrap(), f);
        let s = Ring::standard(&["x", "y"], 32003).unwrap();
        let mut m = HashMap::new();
        m.insert("z".to_string(), Poly::zero(&s));
        let g = f.substitute_named(&s, &m, false).unwrap();
        assert_eq!(g, p(&s, "x^2*y"));
        assert!(matches!(
            f.substitute_named(&s, &HashMap::new(), true),
            Err(Error::MissingAssignment(_))
        ));
    }

    #[test]
    fn random_linear_forms_are_deterministic() {
        let r = ring();
        assert_eq!(random_linear_form(&r, 1), random_linear_form(&r, 1));
        assert_ne!(random_linear_form(&r, 1), random_linear_form(&r, 2));
        assert_eq!(random_linear_form(&r, 5).total_degree(), 1);
    }
}
