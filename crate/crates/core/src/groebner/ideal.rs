use super::engine::{self, Limits, Request};
use super::hilbert::{self, HilbertNumerator};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::ring::{Degree, Mono, MonomialOrder, Poly, Ring, RingDescriptor, RingRef, Term};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

/// A homogeneous ideal given by generators, with reduced Gröbner bases
/// cached per (variable order, monomial order).
#[derive(Clone)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Poly>,
    limits: Limits,
    cache: Arc<Mutex<FxHashMap<Ring, Arc<Vec<Poly>>>>>,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.gens.iter().map(|g| g.to_string())).finish()
    }
}

/// JSON form `{"ring": {...}, "gens": ["...", ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdealJson {
    pub ring: RingDescriptor,
    pub gens: Vec<String>,
}

impl Ideal {
    /// Builds an ideal; zero generators are dropped, inhomogeneous ones rejected.
    pub fn new(ring: &RingRef, gens: Vec<Poly>) -> Result<Ideal> {
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if **g.ring() != **ring {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() {
                continue;
            }
            g.homogeneous_degree()?;
            kept.push(g);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: kept,
            limits: Limits::default(),
            cache: Default::default(),
        })
    }

    pub fn parse(ring: &RingRef, gens: &[&str]) -> Result<Ideal> {
        let polys = gens.iter().map(|s| Poly::parse(s, ring)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        Ideal::new(ring, vec![]).expect("empty ideal")
    }

    /// The homogeneous maximal ideal generated by all variables.
    pub fn maximal(ring: &RingRef) -> Ideal {
        let gens = (0..ring.nvars()).map(|i| Poly::var(ring, i)).collect();
        Ideal::new(ring, gens).expect("variables are homogeneous")
    }

    pub fn from_json(text: &str) -> Result<Ideal> {
        let j: IdealJson = serde_json::from_str(text)?;
        let ring = j.ring.build()?;
        let refs: Vec<&str> = j.gens.iter().map(|s| s.as_str()).collect();
        Ideal::parse(&ring, &refs)
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            ring: self.ring.descriptor(),
            gens: self.gens.iter().map(|g| g.to_string()).collect(),
        }
    }

    /// Same generators, different resource caps (the cache is not shared).
    pub fn with_limits(&self, limits: Limits) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            limits,
            cache: Default::default(),
        }
    }

    pub(crate) fn derived(&self, gens: Vec<Poly>) -> Result<Ideal> {
        Ok(Ideal::new(&self.ring, gens)?.with_limits(self.limits.clone()))
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// The common degree of all generators, if there is one.
    pub fn generator_degree(&self) -> Option<Degree> {
        let mut it = self.gens.iter().map(|g| g.homogeneous_degree().expect("homogeneous"));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Degree `d` when all generators have standard total degree `d`.
    pub fn equigenerated_degree(&self) -> Option<u32> {
        let d = self.gens.first()?.total_degree();
        self.gens.iter().all(|g| g.total_degree() == d).then_some(d)
    }

    /// Reduced Gröbner basis in the ring's own order.
    pub fn groebner_basis(&self) -> Result<Arc<Vec<Poly>>> {
        self.groebner_basis_in(&self.ring.clone())
    }

    /// Reduced Gröbner basis for a different monomial order.
    pub fn groebner_basis_for(&self, order: MonomialOrder) -> Result<Arc<Vec<Poly>>> {
        self.groebner_basis_in(&self.ring.with_order(order)?)
    }

    /// Reduced Gröbner basis in `target`, a ring over the same variables
    /// (possibly permuted, with any order). Results are cached.
    pub fn groebner_basis_in(&self, target: &RingRef) -> Result<Arc<Vec<Poly>>> {
        if let Some(g) = self.cache.lock().unwrap().get(&**target) {
            return Ok(g.clone());
        }
        let input = self
            .gens
            .iter()
            .map(|g| g.to_ring(target).map(|p| p.terms().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        let gb = engine::groebner(input, &Request::new(target, &self.limits))?;
        let gb: Arc<Vec<Poly>> = Arc::new(gb.into_iter().map(|t| Poly::from_terms(target, t)).collect());
        self.cache.lock().unwrap().insert((**target).clone(), gb.clone());
        Ok(gb)
    }

    /// Gröbner basis truncated after all pairs of degree `<= bound` (not
    /// cached). Normal forms of polynomials of degree `<= bound` against it
    /// are exact.
    pub fn truncated_groebner_basis(&self, bound: u64) -> Result<Vec<Poly>> {
        let input = self.gens.iter().map(|g| g.terms().to_vec()).collect();
        let mut req = Request::new(&self.ring, &self.limits);
        req.degree_bound = Some(bound);
        Ok(engine::groebner(input, &req)?
            .into_iter()
            .map(|t| Poly::from_terms(&self.ring, t))
            .collect())
    }

    fn check_ring(&self, f: &Poly) -> Result<()> {
        if **f.ring() != *self.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        self.check_ring(f)?;
        let gb = self.groebner_basis()?;
        Ok(normal_form(f, &gb))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        if *other.ring != *self.ring {
            return Err(Error::RingMismatch);
        }
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality via identical reduced Gröbner bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        if *other.ring != *self.ring {
            return Err(Error::RingMismatch);
        }
        Ok(*self.groebner_basis()? == *other.groebner_basis()?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        let gb = self.groebner_basis()?;
        Ok(gb.len() == 1 && gb[0].is_constant())
    }

    /// Leading monomials of the reduced Gröbner basis.
    pub fn initial_monomials(&self) -> Result<Vec<Mono>> {
        Ok(self
            .groebner_basis()?
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if *other.ring != *self.ring {
            return Err(Error::RingMismatch);
        }
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        self.derived(g)
    }

    /// Product ideal, reduced to a canonical minimal generating set.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if *other.ring != *self.ring {
            return Err(Error::RingMismatch);
        }
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul(b)?);
            }
        }
        self.derived(g)?.interreduced()
    }

    /// `I^k`, interreducing after every multiplication.
    pub fn power(&self, k: u32) -> Result<Ideal> {
        if k == 0 {
            return self.derived(vec![Poly::one(&self.ring)]);
        }
        let base = self.interreduced()?;
        let mut acc = base.clone();
        for _ in 1..k {
            acc = acc.product(&base)?;
        }
        Ok(acc)
    }

    /// Subset of the generators, chosen degree by degree in input order,
    /// keeping a generator iff it is not in the ideal of those kept before.
    pub fn minimal_generators(&self) -> Result<Vec<Poly>> {
        self.minimalize(false)
    }

    /// A canonical minimal generating set: per degree, the reduced echelon
    /// basis of the generators modulo the lower-degree part.
    pub fn interreduced(&self) -> Result<Ideal> {
        let g = self.minimalize(true)?;
        self.derived(g)
    }

    /// `μ(I)`, the minimal number of generators.
    pub fn minimal_generator_count(&self) -> Result<usize> {
        Ok(self.minimal_generators()?.len())
    }

    fn minimalize(&self, canonical: bool) -> Result<Vec<Poly>> {
        let w = self.ring.total_weights();
        let mut by_degree: BTreeMap<u64, Vec<&Poly>> = BTreeMap::new();
        for g in &self.gens {
            let d = g.leading_monomial().unwrap().weighted_degree(&w);
            by_degree.entry(d).or_default().push(g);
        }
        let order = self.ring.order();
        let field = self.ring.field();
        let mut kept: Vec<Poly> = Vec::new();
        for (d, cands) in by_degree {
            let lower: Vec<Vec<Term>> = if kept.is_empty() {
                vec![]
            } else {
                self.derived(kept.clone())?
                    .truncated_groebner_basis(d)?
                    .into_iter()
                    .map(|p| p.terms().to_vec())
                    .collect()
            };
            let nfs: Vec<Vec<Term>> = cands
                .iter()
                .map(|c| engine::normal_form_terms(c.terms().to_vec(), &lower, order, field))
                .collect();
            let mut monos: Vec<&Mono> = nfs.iter().flatten().map(|t| &t.mono).collect();
            monos.sort_by(|a, b| order.cmp(b, a));
            monos.dedup();
            let index: FxHashMap<&Mono, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
            let mut ech = Echelon::new(field, monos.len());
            for (c, nf) in cands.iter().zip(&nfs) {
                let mut row = vec![0u32; monos.len()];
                for t in nf {
                    row[index[&t.mono]] = t.coef;
                }
                if ech.insert(row) && !canonical {
                    kept.push((*c).clone());
                }
            }
            if canonical {
                for row in ech.into_rref() {
                    let terms = row
                        .iter()
                        .zip(&monos)
                        .filter(|(c, _)| **c != 0)
                        .map(|(c, m)| Term {
                            coef: *c,
                            mono: (*m).clone(),
                        })
                        .collect();
                    kept.push(Poly::from_terms(&self.ring, terms));
                }
            }
        }
        Ok(kept)
    }

    /// `(dim S/I, height I)` from the initial ideal.
    pub fn dim_and_height(&self) -> Result<(usize, usize)> {
        let n = self.ring.nvars();
        if n > 64 {
            return Err(Error::InvalidArgument("dimension needs at most 64 variables".into()));
        }
        if self.is_unit()? {
            return Err(Error::UnitIdeal);
        }
        let supports: Vec<u64> = self.initial_monomials()?.iter().map(|m| m.support_mask()).collect();
        let h = hilbert::min_hitting_set(&supports);
        Ok((n - h, h))
    }

    pub fn height(&self) -> Result<usize> {
        Ok(self.dim_and_height()?.1)
    }

    /// Numerator of the (multi)graded Hilbert series of `S/I`.
    pub fn hilbert_numerator(&self) -> Result<HilbertNumerator> {
        let lead = self.initial_monomials()?;
        Ok(hilbert::monomial_numerator(&lead, self.ring.grading(), self.ring.grading_arity()))
    }

    /// Whether the reduced Gröbner basis in `target` (same variables, any
    /// variable order and monomial order) has only elements of standard
    /// total degree at most 2.
    pub fn has_quadratic_gb_in(&self, target: &RingRef) -> Result<bool> {
        Ok(self.groebner_basis_in(target)?.iter().all(|g| g.total_degree() <= 2))
    }

    /// Moves the ideal to a ring with the same variable names.
    pub fn to_ring(&self, target: &RingRef) -> Result<Ideal> {
        let g = self.gens.iter().map(|p| p.to_ring(target)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(target, g)?.with_limits(self.limits.clone()))
    }

    /// Embeds into a ring containing all variables of this one.
    pub fn embed(&self, target: &RingRef) -> Result<Ideal> {
        let g = self.gens.iter().map(|p| p.embed(target)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(target, g)?.with_limits(self.limits.clone()))
    }
}

/// Normal form of `f` modulo `basis` by the division algorithm.
pub fn normal_form(f: &Poly, basis: &[Poly]) -> Poly {
    let ring = f.ring();
    let b: Vec<Vec<Term>> = basis.iter().map(|g| g.terms().to_vec()).collect();
    let r = engine::normal_form_terms(f.terms().to_vec(), &b, ring.order(), ring.field());
    Poly::from_terms(ring, r)
}
