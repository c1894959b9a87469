//! Schreyer frames: a (usually non-minimal) free resolution whose first
//! differential is a Gröbner basis and whose higher differentials are the
//! syzygies of S-pairs, with leading terms read off combinatorially.
//!
//! Every basis element `E` of `F_l` carries its *total monomial*
//! `M(E) = m * M(c)` where `m * e_c` is its leading term in `F_{l-1}`.
//! A term `m * e_c` is stored by its total `m * M(c)`, so the induced
//! Schreyer order compares totals in degrevlex and breaks ties by the
//! index of the component. Elements of a level are sorted by leading
//! component and then ascending lex order of their totals; the leading
//! term of the syzygy of a pair sits on the lex-larger element, which
//! bounds the length of the frame by the number of variables.

use super::packed::PMono;
use crate::error::{Error, Result};
use crate::groebner::{Budget, Limits};
use crate::ring::PrimeField;
use rustc_hash::FxHashMap;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct FTerm {
    pub mono: PMono,
    pub coef: u32,
    pub comp: u32,
}

/// One homological level `F_l` of a frame.
#[derive(Clone, Debug, Default)]
pub(crate) struct Level {
    pub lead_comp: Vec<u32>,
    pub total: Vec<PMono>,
    /// `d(E)` as terms of `F_{l-1}`, in decreasing Schreyer order.
    pub vecs: Vec<Vec<FTerm>>,
    /// Elements with leading component `c` are `group[c]..group[c + 1]`.
    pub group: Vec<u32>,
}

impl Level {
    pub fn len(&self) -> usize {
        self.total.len()
    }

    fn group_range(&self, c: u32) -> std::ops::Range<usize> {
        self.group[c as usize] as usize..self.group[c as usize + 1] as usize
    }
}

pub(crate) struct Frame {
    pub field: PrimeField,
    pub levels: Vec<Level>,
    /// For level-1 elements: index of the originating input polynomial.
    pub origin: Vec<usize>,
    /// Whether the frame stopped at the length bound with more to compute.
    pub truncated: bool,
}

fn cmp_term(a: &FTerm, b: &FTerm) -> Ordering {
    a.mono.cmp_grevlex(&b.mono).then_with(|| a.comp.cmp(&b.comp))
}

fn sort_desc(v: &mut [FTerm]) {
    v.sort_unstable_by(|a, b| cmp_term(b, a));
}

fn groups_for(lead_comp: &[u32], ncomps: usize) -> Vec<u32> {
    let mut g = vec![0u32; ncomps + 1];
    for &c in lead_comp {
        g[c as usize + 1] += 1;
    }
    for i in 0..ncomps {
        g[i + 1] += g[i];
    }
    g
}

pub(crate) fn too_large() -> Error {
    Error::InvalidArgument("resolutions support at most 16 variables and degree 127".into())
}

/// A pending element of the next level: the pair `(a, b)` with multiplier
/// `q` on `b`.
struct Spair {
    b: u32,
    a: u32,
    total: PMono,
}

impl Frame {
    /// Levels 0 and 1 of the frame resolving the cokernel of `elems`, a
    /// list of vectors in a free module of rank `rank0` (terms with `comp`
    /// set) that contains a Gröbner basis of the submodule they generate
    /// for the position-breaking degrevlex order. `origin` records each
    /// level-1 element's index in `elems`.
    pub(crate) fn from_elements(nvars: usize, field: PrimeField, rank0: usize, elems: Vec<Vec<FTerm>>) -> Result<Frame> {
        if nvars > super::packed::MAX_VARS {
            return Err(too_large());
        }
        let level0 = Level {
            lead_comp: vec![],
            total: vec![PMono::ONE; rank0],
            vecs: vec![vec![]; rank0],
            group: vec![],
        };
        let mut items: Vec<(Vec<FTerm>, usize)> = Vec::new();
        for (idx, mut v) in elems.into_iter().enumerate() {
            if v.is_empty() {
                continue;
            }
            sort_desc(&mut v);
            items.push((v, idx));
        }
        items.sort_by(|a, b| {
            (a.0[0].comp.cmp(&b.0[0].comp))
                .then_with(|| a.0[0].mono.cmp_lex(&b.0[0].mono))
                .then_with(|| a.1.cmp(&b.1))
        });
        let lead_comp: Vec<u32> = items.iter().map(|i| i.0[0].comp).collect();
        let level1 = Level {
            group: groups_for(&lead_comp, rank0),
            lead_comp,
            total: items.iter().map(|i| i.0[0].mono).collect(),
            vecs: items.iter().map(|i| i.0.clone()).collect(),
        };
        Ok(Frame {
            field,
            origin: items.iter().map(|i| i.1).collect(),
            levels: vec![level0, level1],
            truncated: false,
        })
    }

    #[cfg(test)]
    /// Frame of `S / (polys)` for polynomials (canonical in degrevlex)
    /// containing a Gröbner basis of the ideal they generate.
    pub(crate) fn from_basis(nvars: usize, field: PrimeField, polys: &[Vec<crate::ring::Term>]) -> Result<Frame> {
        let elems = polys
            .iter()
            .map(|p| {
                p.iter()
                    .map(|t| {
                        let mono = PMono::pack(&t.mono).ok_or_else(too_large)?;
                        Ok(FTerm {
                            mono,
                            coef: t.coef,
                            comp: 0,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Frame::from_elements(nvars, field, 1, elems)
    }

    /// Computes levels until one is empty or `max_level` is reached.
    pub(crate) fn build(&mut self, max_level: usize, limits: &Limits) -> Result<()> {
        let mut budget = Budget::new(limits);
        while self.levels.last().map_or(false, |l| l.len() > 0) {
            if self.levels.len() > max_level {
                self.truncated = true;
                break;
            }
            let next = self.next_level(&mut budget)?;
            self.levels.push(next);
        }
        while self.levels.len() > 1 && self.levels.last().unwrap().len() == 0 {
            self.levels.pop();
        }
        Ok(())
    }

    #[cfg(test)]
    /// Index of the last level (the length of the frame).
    pub(crate) fn length(&self) -> usize {
        self.levels.len() - 1
    }

    fn next_level(&self, budget: &mut Budget<'_>) -> Result<Level> {
        let cur = self.levels.last().unwrap();
        let mut pairs: Vec<Spair> = Vec::new();
        let mut cands: Vec<(PMono, u32)> = Vec::new();
        let mut kept: Vec<PMono> = Vec::new();
        let mut start = pairs.len();
        for b in 0..cur.len() {
            let range = cur.group_range(cur.lead_comp[b]);
            cands.clear();
            for a in range.start..b {
                let q = cur.total[a].lcm(&cur.total[b]).div(&cur.total[b]);
                cands.push((q, a as u32));
            }
            cands.sort_by(|x, y| x.0.degree().cmp(&y.0.degree()).then_with(|| x.1.cmp(&y.1)));
            kept.clear();
            for &(q, a) in &cands {
                if kept.iter().any(|k| k.divides(&q)) {
                    continue;
                }
                kept.push(q);
                let total = q.mul_checked(&cur.total[b]).ok_or_else(too_large)?;
                pairs.push(Spair { b: b as u32, a, total });
            }
            pairs[start..].sort_by(|x, y| x.total.cmp_lex(&y.total));
            start = pairs.len();
        }
        let mut vecs = Vec::with_capacity(pairs.len());
        for p in &pairs {
            budget.tick()?;
            vecs.push(self.syzygy(cur, p)?);
        }
        let lead_comp: Vec<u32> = pairs.iter().map(|p| p.b).collect();
        Ok(Level {
            group: groups_for(&lead_comp, cur.len()),
            lead_comp,
            total: pairs.iter().map(|p| p.total).collect(),
            vecs,
        })
    }

    /// The syzygy on `cur` whose leading term is `q * e_b`, obtained by
    /// reducing the S-vector of the pair and recording each reduction step.
    fn syzygy(&self, cur: &Level, p: &Spair) -> Result<Vec<FTerm>> {
        let f = self.field;
        let (a, b) = (p.a as usize, p.b as usize);
        let qb = p.total.div(&cur.total[b]);
        let qa = p.total.div(&cur.total[a]);
        let ratio = f.div(cur.vecs[b][0].coef, cur.vecs[a][0].coef);
        let mut red = Reduction::default();
        for t in &cur.vecs[b][1..] {
            red.add(qb.mul(&t.mono), t.comp, t.coef, f);
        }
        let neg = f.neg(ratio);
        for t in &cur.vecs[a][1..] {
            red.add(qa.mul(&t.mono), t.comp, f.mul(neg, t.coef), f);
        }
        let mut out = vec![
            FTerm {
                mono: p.total,
                coef: 1,
                comp: p.b,
            },
            FTerm {
                mono: p.total,
                coef: neg,
                comp: p.a,
            },
        ];
        while let Some((mono, comp, c)) = red.pop() {
            let k = cur
                .group_range(comp)
                .find(|&k| cur.total[k].divides(&mono))
                .ok_or_else(|| Error::InvalidArgument("frame input is not a Gröbner basis".into()))?;
            let lead = &cur.vecs[k];
            let s = f.div(c, lead[0].coef);
            let m = mono.div(&cur.total[k]);
            let ns = f.neg(s);
            for t in &lead[1..] {
                red.add(m.mul(&t.mono), t.comp, f.mul(ns, t.coef), f);
            }
            out.push(FTerm {
                mono,
                coef: ns,
                comp: k as u32,
            });
        }
        sort_desc(&mut out);
        debug_assert_eq!((out[0].mono, out[0].comp), (p.total, p.b));
        Ok(out)
    }
}

/// Sparse accumulator: a max-heap of term keys plus a coefficient table.
#[derive(Default)]
struct Reduction {
    heap: BinaryHeap<(u16, u128, u32)>,
    coefs: FxHashMap<(PMono, u32), u32>,
}

impl Reduction {
    fn add(&mut self, mono: PMono, comp: u32, c: u32, f: PrimeField) {
        if c == 0 {
            return;
        }
        match self.coefs.entry((mono, comp)) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let v = f.add(*e.get(), c);
                *e.get_mut() = v;
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
                let (d, l) = mono.grevlex_key();
                self.heap.push((d, l, comp));
            }
        }
    }

    /// Largest term with nonzero coefficient, removed from the accumulator.
    fn pop(&mut self) -> Option<(PMono, u32, u32)> {
        while let Some((d, l, comp)) = self.heap.pop() {
            let mono = PMono::from_key(d, l);
            let c = self.coefs.remove(&(mono, comp)).unwrap_or(0);
            if c != 0 {
                return Some((mono, comp, c));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Poly, Ring};

    /// Applies `d_l` to every column of `d_{l+1}` and checks the result vanishes.
    pub(crate) fn assert_complex(fr: &Frame) {
        let f = fr.field;
        for l in 1..fr.levels.len().saturating_sub(1) {
            let (lo, hi) = (&fr.levels[l], &fr.levels[l + 1]);
            for v in &hi.vecs {
                let mut acc: FxHashMap<(PMono, u32), u32> = FxHashMap::default();
                for t in v {
                    let m = t.mono.div(&lo.total[t.comp as usize]);
                    for s in &lo.vecs[t.comp as usize] {
                        let e = acc.entry((m.mul(&s.mono), s.comp)).or_insert(0);
                        *e = f.add(*e, f.mul(t.coef, s.coef));
                    }
                }
                assert!(acc.values().all(|&c| c == 0), "d^2 != 0 at level {l}");
            }
        }
    }

    fn frame_of(names: &[&str], gens: &[&str]) -> Frame {
        let r = Ring::standard(names, 32003).unwrap();
        let i = crate::groebner::Ideal::parse(&r, gens).unwrap();
        let gb: Vec<Vec<crate::ring::Term>> = i.groebner_basis().unwrap().iter().map(|p: &Poly| p.terms().to_vec()).collect();
        let mut fr = Frame::from_basis(r.nvars(), r.field(), &gb).unwrap();
        fr.build(r.nvars(), &Limits::default()).unwrap();
        fr
    }

    #[test]
    fn koszul_frame_of_variables() {
        let fr = frame_of(&["x", "y", "z"], &["x", "y", "z"]);
        let ranks: Vec<usize> = fr.levels.iter().map(|l| l.len()).collect();
        assert_eq!(ranks, vec![1, 3, 3, 1]);
        assert_complex(&fr);
    }

    #[test]
    fn twisted_cubic_frame_is_a_complex() {
        let fr = frame_of(&["a", "b", "c", "d"], &["a*c - b^2", "b*d - c^2", "a*d - b*c"]);
        assert!(fr.length() <= 4);
        assert_complex(&fr);
    }

    #[test]
    fn frame_length_bounded_by_variables() {
        let fr = frame_of(&["x", "y", "z", "w"], &["x^2", "x*y", "y^2 + z*w", "z^3", "x*w^2"]);
        assert!(fr.length() <= 4);
        assert_complex(&fr);
    }
}
