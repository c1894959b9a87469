//! Buchberger's algorithm with Gebauer–Möller pair elimination and sugar
//! selection.

use crate::error::{Error, Result};
use crate::ring::{Mono, MonomialOrder, PrimeField, RingRef, Term};
use crate::ring::poly::sub_mul_terms;
use std::cmp::Ordering;
use std::time::{Duration, Instant};

/// Resource caps for a single Gröbner computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of S-pairs reduced.
    pub max_pairs: u64,
    /// Wall-clock budget; `None` disables the check.
    pub timeout: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_pairs: 2_000_000,
            timeout: Some(Duration::from_secs(600)),
        }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits {
            max_pairs: u64::MAX,
            timeout: None,
        }
    }
}

/// Tracks the caps while a computation runs.
pub(crate) struct Budget<'a> {
    limits: &'a Limits,
    start: Instant,
    pairs: u64,
}

impl<'a> Budget<'a> {
    pub(crate) fn new(limits: &'a Limits) -> Self {
        Budget {
            limits,
            start: Instant::now(),
            pairs: 0,
        }
    }

    pub(crate) fn tick(&mut self) -> Result<()> {
        self.pairs += 1;
        if self.pairs > self.limits.max_pairs {
            return Err(Error::PairCap {
                limit: self.limits.max_pairs,
            });
        }
        self.check_time()
    }

    pub(crate) fn check_time(&self) -> Result<()> {
        if let Some(t) = self.limits.timeout {
            if self.start.elapsed() > t {
                return Err(Error::Timeout { seconds: t.as_secs() });
            }
        }
        Ok(())
    }
}

/// A monic polynomial with cached leading data.
struct Elem {
    terms: Vec<Term>,
    mask: u64,
    sugar: u64,
    active: bool,
}

impl Elem {
    fn lead(&self) -> &Mono {
        &self.terms[0].mono
    }
}

/// Either an S-pair or a pending input polynomial (`j == INPUT`).
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u64,
}

const INPUT: usize = usize::MAX;

pub(crate) struct Request<'a> {
    pub ring: &'a RingRef,
    pub weights: Vec<u32>,
    /// Stop after all pairs of sugar `<= bound` (exact for input homogeneous
    /// with respect to `weights`).
    pub degree_bound: Option<u64>,
    pub limits: &'a Limits,
}

impl<'a> Request<'a> {
    pub(crate) fn new(ring: &'a RingRef, limits: &'a Limits) -> Self {
        Request {
            ring,
            weights: ring.total_weights(),
            degree_bound: None,
            limits,
        }
    }
}

struct Engine<'a> {
    order: &'a MonomialOrder,
    field: PrimeField,
    weights: &'a [u32],
    elems: Vec<Elem>,
    inputs: Vec<Vec<Term>>,
    pairs: Vec<Pair>,
}

fn sugar_of(terms: &[Term], w: &[u32]) -> u64 {
    terms.iter().map(|t| t.mono.weighted_degree(w)).max().unwrap_or(0)
}

pub(crate) fn make_monic(mut terms: Vec<Term>, f: PrimeField) -> Vec<Term> {
    if let Some(c) = terms.first().map(|t| t.coef) {
        if c != 1 {
            let ci = f.inv(c);
            for t in &mut terms {
                t.coef = f.mul(t.coef, ci);
            }
        }
    }
    terms
}

/// Full normal form of `p`; `reducers` returns a monic polynomial whose
/// leading monomial divides the given monomial (with its support mask).
pub(crate) fn reduce_with<'b, I>(
    mut p: Vec<Term>,
    reducers: I,
    order: &MonomialOrder,
    f: PrimeField,
) -> Vec<Term>
where
    I: Fn(&Mono, u64) -> Option<&'b [Term]>,
{
    let mut out: Vec<Term> = Vec::new();
    let mut pos = 0;
    while pos < p.len() {
        let lt = &p[pos];
        let mask = lt.mono.support_mask();
        match reducers(&lt.mono, mask) {
            Some(g) => {
                let m = lt.mono.div_unchecked(&g[0].mono);
                let c = lt.coef;
                p = sub_mul_terms(&p[pos + 1..], &g[1..], c, &m, order, f);
                pos = 0;
            }
            None => {
                out.push(p[pos].clone());
                pos += 1;
            }
        }
    }
    out
}

impl<'a> Engine<'a> {
    fn find_reducer(&self, m: &Mono, mask: u64) -> Option<&[Term]> {
        self.elems
            .iter()
            .find(|e| e.active && e.mask & !mask == 0 && e.lead().divides(m))
            .map(|e| e.terms.as_slice())
    }

    fn reduce(&self, p: Vec<Term>) -> Vec<Term> {
        reduce_with(p, |m, mask| self.find_reducer(m, mask), self.order, self.field)
    }

    fn pair_cmp(&self, a: &Pair, b: &Pair) -> Ordering {
        a.sugar
            .cmp(&b.sugar)
            .then_with(|| self.order.cmp(&a.lcm, &b.lcm))
            .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
    }

    /// Keeps `pairs` sorted with the next pair to process last.
    fn sort_pairs(&mut self) {
        let mut pairs = std::mem::take(&mut self.pairs);
        pairs.sort_by(|a, b| self.pair_cmp(b, a));
        self.pairs = pairs;
    }

    fn spoly(&self, p: &Pair) -> Vec<Term> {
        if p.j == INPUT {
            return self.inputs[p.i].clone();
        }
        let (a, b) = (&self.elems[p.i], &self.elems[p.j]);
        let ma = p.lcm.div_unchecked(a.lead());
        let mb = p.lcm.div_unchecked(b.lead());
        let left: Vec<Term> = a.terms[1..]
            .iter()
            .map(|t| Term {
                coef: t.coef,
                mono: t.mono.mul(&ma),
            })
            .collect();
        sub_mul_terms(&left, &b.terms[1..], 1, &mb, self.order, self.field)
    }

    /// Gebauer–Möller update after appending the element `h`.
    fn update(&mut self, h: usize) {
        let hl = self.elems[h].lead().clone();
        let cands: Vec<(usize, Mono, bool)> = (0..h)
            .filter(|&g| self.elems[g].active)
            .map(|g| {
                let gl = self.elems[g].lead();
                (g, hl.lcm(gl), hl.is_coprime(gl))
            })
            .collect();
        let mut kept: Vec<(usize, Mono, bool)> = Vec::new();
        for (idx, (g, l, coprime)) in cands.iter().enumerate() {
            let redundant = !coprime
                && (cands[idx + 1..].iter().any(|(_, l2, _)| l2.divides(l))
                    || kept.iter().any(|(_, l2, _)| l2.divides(l)));
            if !redundant {
                kept.push((*g, l.clone(), *coprime));
            }
        }
        let elems = &self.elems;
        self.pairs.retain(|p| {
            if p.j == INPUT || !hl.divides(&p.lcm) {
                return true;
            }
            let li = elems[p.i].lead().lcm(&hl);
            let lj = elems[p.j].lead().lcm(&hl);
            li == p.lcm || lj == p.lcm
        });
        let hs = self.elems[h].sugar;
        for (g, l, coprime) in kept {
            if coprime {
                continue;
            }
            let e = &self.elems[g];
            let sh = hs + l.div_unchecked(&hl).weighted_degree(self.weights);
            let sg = e.sugar + l.div_unchecked(e.lead()).weighted_degree(self.weights);
            self.pairs.push(Pair {
                i: g,
                j: h,
                lcm: l,
                sugar: sh.max(sg),
            });
        }
        for g in 0..h {
            if self.elems[g].active && hl.divides(self.elems[g].lead()) {
                self.elems[g].active = false;
            }
        }
        self.sort_pairs();
    }
}

/// Reduced Gröbner basis of the input polynomials (each canonical in
/// `req.ring`), monic and sorted ascending by leading monomial.
pub(crate) fn groebner(input: Vec<Vec<Term>>, req: &Request<'_>) -> Result<Vec<Vec<Term>>> {
    let order = req.ring.order();
    let field = req.ring.field();
    let mut eng = Engine {
        order,
        field,
        weights: &req.weights,
        elems: Vec::new(),
        inputs: Vec::new(),
        pairs: Vec::new(),
    };
    for (i, p) in input.into_iter().filter(|p| !p.is_empty()).enumerate() {
        eng.pairs.push(Pair {
            i,
            j: INPUT,
            lcm: p[0].mono.clone(),
            sugar: sugar_of(&p, &req.weights),
        });
        eng.inputs.push(p);
    }
    eng.sort_pairs();
    let mut budget = Budget::new(req.limits);
    while let Some(pair) = eng.pairs.pop() {
        if req.degree_bound.is_some_and(|b| pair.sugar > b) {
            break;
        }
        budget.tick()?;
        let s = eng.spoly(&pair);
        let h = eng.reduce(s);
        if h.is_empty() {
            continue;
        }
        let h = make_monic(h, field);
        if h[0].mono.is_one() {
            return Ok(vec![h]);
        }
        eng.elems.push(Elem {
            mask: h[0].mono.support_mask(),
            sugar: pair.sugar.max(sugar_of(&h, &req.weights)),
            terms: h,
            active: true,
        });
        let idx = eng.elems.len() - 1;
        eng.update(idx);
    }
    Ok(interreduce_minimal(eng.elems.into_iter().filter(|e| e.active).map(|e| e.terms).collect(), order, field))
}

/// Tail-reduces a monic basis whose leading monomials are pairwise
/// non-dividing and sorts it ascending.
fn interreduce_minimal(basis: Vec<Vec<Term>>, order: &MonomialOrder, f: PrimeField) -> Vec<Vec<Term>> {
    let masks: Vec<u64> = basis.iter().map(|g| g[0].mono.support_mask()).collect();
    let mut out: Vec<Vec<Term>> = basis
        .iter()
        .map(|g| {
            let lookup = |m: &Mono, mask: u64| {
                basis
                    .iter()
                    .zip(&masks)
                    .find(|(b, bm)| *bm & !mask == 0 && b[0].mono.divides(m))
                    .map(|(b, _)| b.as_slice())
            };
            let mut r = vec![g[0].clone()];
            r.extend(reduce_with(g[1..].to_vec(), lookup, order, f));
            r
        })
        .collect();
    out.sort_by(|a, b| order.cmp(&a[0].mono, &b[0].mono));
    out
}

/// Normal form modulo an arbitrary list of (not necessarily monic) polynomials.
pub(crate) fn normal_form_terms(
    p: Vec<Term>,
    basis: &[Vec<Term>],
    order: &MonomialOrder,
    f: PrimeField,
) -> Vec<Term> {
    let monic: Vec<Vec<Term>> = basis
        .iter()
        .filter(|g| !g.is_empty())
        .map(|g| make_monic(g.clone(), f))
        .collect();
    let masks: Vec<u64> = monic.iter().map(|g| g[0].mono.support_mask()).collect();
    let lookup = |m: &Mono, mask: u64| {
        monic
            .iter()
            .zip(&masks)
            .find(|(b, bm)| *bm & !mask == 0 && b[0].mono.divides(m))
            .map(|(b, _)| b.as_slice())
    };
    reduce_with(p, lookup, order, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Poly, Ring};

    fn gb(ring: &RingRef, gens: &[&str]) -> Vec<String> {
        let input = gens
            .iter()
            .map(|s| Poly::parse(s, ring).unwrap().terms().to_vec())
            .collect();
        let limits = Limits::default();
        groebner(input, &Request::new(ring, &limits))
            .unwrap()
            .into_iter()
            .map(|t| Poly::from_terms(ring, t).to_string())
            .collect()
    }

    #[test]
    fn linear_change_of_basis() {
        let r = Ring::standard(&["x", "y"], 32003).unwrap();
        assert_eq!(gb(&r, &["x + y", "y"]), vec!["y", "x"]);
    }

    #[test]
    fn twisted_cubic_minors_are_a_basis() {
        let r = Ring::standard(&["x0", "x1", "x2", "x3"], 32003).unwrap();
        let g = gb(&r, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
        assert_eq!(g.len(), 3);
        assert_eq!(g, vec!["x2^2 - x1*x3", "x1*x2 - x0*x3", "x1^2 - x0*x2"]);
    }

    #[test]
    fn unit_ideal() {
        let r = Ring::standard(&["x", "y"], 32003).unwrap();
        assert_eq!(gb(&r, &["x*y - 1", "x"]), vec!["1"]);
    }

    #[test]
    fn pair_cap_is_reported() {
        let r = Ring::standard(&["x", "y", "z"], 32003).unwrap();
        let input = ["x^2 - y*z", "y^2 - x*z", "z^2 - x*y", "x*y*z - x^3"]
            .iter()
            .map(|s| Poly::parse(s, &r).unwrap().terms().to_vec())
            .collect();
        let limits = Limits {
            max_pairs: 2,
            timeout: None,
        };
        assert_eq!(
            groebner(input, &Request::new(&r, &limits)),
            Err(Error::PairCap { limit: 2 })
        );
    }
}
