//! Syzygies, minimal free resolutions and Betti tables.
//!
//! Resolutions are computed in two steps. A Schreyer frame is built from a
//! degrevlex Gröbner basis; its differentials are the syzygies found while
//! reducing S-pairs, and its leading terms are determined combinatorially.
//! The frame is then pruned to the minimal resolution by cancelling unit
//! entries. Graded Betti numbers are available on both routes: directly
//! from the pruned frame, and from the ranks of the scalar parts of the
//! frame differentials, `β_{i,d} = #F_i(d) − rank C_i(d) − rank C_{i+1}(d)`,
//! which avoids pruning altogether.
//!
//! Betti tables of an ideal `I` follow the ideal convention: `β_0(I)`
//! counts minimal generators, and `β_i(I) = β_{i+1}(S/I)`. Regularity is
//! likewise that of the ideal, `reg I = reg S/I + 1`.
//!
//! ```
//! use minorforge::groebner::Ideal;
//! use minorforge::resolve::{betti_table, free_resolution};
//! use minorforge::ring::Ring;
//!
//! let r = Ring::standard(&["x", "y"], 32003).unwrap();
//! let i = Ideal::parse(&r, &["x^2", "x*y", "y^2"]).unwrap();
//! let t = betti_table(&i).unwrap();
//! assert_eq!(t.get(0, &[2]), 3);
//! assert_eq!(t.get(1, &[3]), 2);
//! let res = free_resolution(&i, None).unwrap();
//! assert_eq!(res.ranks(), vec![3, 2]);
//! assert!(res.is_complex().unwrap());
//! ```

mod betti;
mod frame;
mod minimize;
mod module;
mod packed;

pub use betti::BettiTable;
pub use module::{FreeModule, ModuleMap};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, Ideal, Limits, Request};
use crate::linalg::sparse_rank;
use crate::ring::{Degree, Mono, MonomialOrder, Poly, RingRef, Term};
use frame::{too_large, FTerm, Frame};
use minimize::Pruned;
use packed::PMono;
use std::collections::BTreeMap;

/// A frame with element degrees and, once pruned, the minimal resolution.
struct Computed {
    ring: RingRef,
    frame: Frame,
    /// `degs[l][e]`: multidegree of basis element `e` of `F_l`.
    degs: Vec<Vec<Degree>>,
    pruned: Option<Pruned>,
    /// Level-1 elements that came from the caller's generators.
    inputs: usize,
}

fn mono_degree(ring: &RingRef, m: &PMono) -> Degree {
    ring.degree_of(&m.unpack(ring.nvars()))
}

impl Computed {
    fn new(ring: &RingRef, frame: Frame, shifts: &[Degree], inputs: usize) -> Computed {
        let mut degs: Vec<Vec<Degree>> = vec![shifts.to_vec()];
        for l in 1..frame.levels.len() {
            let (lo, hi) = (&frame.levels[l - 1], &frame.levels[l]);
            let d = (0..hi.len())
                .map(|e| {
                    let c = hi.lead_comp[e] as usize;
                    let m = hi.total[e].div(&lo.total[c]);
                    let dm = mono_degree(ring, &m);
                    dm.iter().zip(&degs[l - 1][c]).map(|(a, b)| a + b).collect()
                })
                .collect();
            degs.push(d);
        }
        Computed {
            ring: ring.clone(),
            frame,
            degs,
            pruned: None,
            inputs,
        }
    }

    /// Number of levels whose Betti numbers are determined.
    fn reliable_levels(&self) -> usize {
        let n = self.frame.levels.len();
        if self.frame.truncated {
            n - 1
        } else {
            n
        }
    }

    /// Betti numbers of the cokernel from the scalar parts of the frame.
    fn tor_betti(&self) -> BettiTable {
        let f = self.frame.field;
        let levels = &self.frame.levels;
        let n = levels.len();
        let mut ranks: Vec<BTreeMap<Degree, usize>> = vec![BTreeMap::new(); n + 1];
        for l in 1..n {
            let lo = &levels[l - 1];
            let mut blocks: BTreeMap<Degree, Vec<Vec<(u32, u32)>>> = BTreeMap::new();
            for (e, v) in levels[l].vecs.iter().enumerate() {
                let row: Vec<(u32, u32)> = v
                    .iter()
                    .filter(|t| t.mono == lo.total[t.comp as usize])
                    .map(|t| (t.comp, t.coef))
                    .collect();
                if !row.is_empty() {
                    blocks.entry(self.degs[l][e].clone()).or_default().push(row);
                }
            }
            for (d, rows) in blocks {
                ranks[l].insert(d, sparse_rank(f, rows));
            }
        }
        let mut t = BettiTable::new("", self.ring.grading_arity());
        for l in 0..self.reliable_levels() {
            let mut count: BTreeMap<&Degree, usize> = BTreeMap::new();
            for d in &self.degs[l] {
                *count.entry(d).or_insert(0) += 1;
            }
            for (d, c) in count {
                let r = ranks[l].get(d).unwrap_or(&0) + ranks[l + 1].get(d).unwrap_or(&0);
                t.add(l, d, (c - r) as u64);
            }
        }
        t
    }

    fn prune(&mut self) {
        if self.pruned.is_some() {
            return;
        }
        let mut p = Pruned::from_frame(&self.frame);
        let weight: Vec<Vec<i64>> = self
            .degs
            .iter()
            .map(|ds| ds.iter().map(|d| d.iter().map(|&x| x as i64).sum()).collect())
            .collect();
        let origin = &self.frame.origin;
        let inputs = self.inputs;
        p.minimize(self.frame.field, &weight, |l, r| u8::from(l == 1 && origin[r] >= inputs));
        self.pruned = Some(p);
    }

    /// Betti numbers of the cokernel counted on the pruned frame.
    fn pruned_betti(&mut self) -> BettiTable {
        self.prune();
        let p = self.pruned.as_ref().unwrap();
        let mut t = BettiTable::new("", self.ring.grading_arity());
        for l in 0..self.reliable_levels() {
            for (e, d) in self.degs[l].iter().enumerate() {
                if p.alive[l][e] {
                    t.add(l, d, 1);
                }
            }
        }
        t
    }

    /// Surviving basis of `F_l` as frame indices.
    fn survivors(&self, l: usize) -> Vec<usize> {
        let p = self.pruned.as_ref().unwrap();
        (0..p.alive[l].len()).filter(|&e| p.alive[l][e]).collect()
    }

    fn free_module(&self, l: usize) -> FreeModule {
        let shifts = self.survivors(l).iter().map(|&e| self.degs[l][e].clone()).collect();
        FreeModule::new(&self.ring, shifts).expect("degrees have the ring's arity")
    }

    /// The pruned `d_l` between surviving elements, as a map of the ring.
    fn pruned_map(&self, l: usize) -> ModuleMap {
        let p = self.pruned.as_ref().unwrap();
        let nvars = self.ring.nvars();
        let rows = self.survivors(l - 1);
        let mut index = vec![usize::MAX; p.alive[l - 1].len()];
        for (k, &r) in rows.iter().enumerate() {
            index[r] = k;
        }
        let cols = self
            .survivors(l)
            .iter()
            .map(|&c| {
                p.cols[l][c]
                    .iter()
                    .filter(|(r, _)| p.alive[l - 1][*r as usize])
                    .map(|(r, sp)| {
                        let terms = sp
                            .iter()
                            .map(|(m, c)| Term {
                                coef: *c,
                                mono: m.unpack(nvars),
                            })
                            .collect();
                        (index[*r as usize], Poly::from_terms(&self.ring, terms))
                    })
                    .collect()
            })
            .collect();
        ModuleMap::from_sparse(self.free_module(l), self.free_module(l - 1), cols)
    }
}

fn pack_terms(terms: &[Term], comp: u32) -> Result<Vec<FTerm>> {
    terms
        .iter()
        .map(|t| {
            Ok(FTerm {
                mono: PMono::pack(&t.mono).ok_or_else(too_large)?,
                coef: t.coef,
                comp,
            })
        })
        .collect()
}

fn check_size(ring: &RingRef) -> Result<()> {
    if ring.nvars() > packed::MAX_VARS {
        return Err(too_large());
    }
    Ok(())
}

/// Frame of `S / I` from the degrevlex basis of `I`; with `gens`, those
/// polynomials are placed before the basis and preferred as survivors.
fn quotient_frame(ideal: &Ideal, gens: &[Poly], max_level: usize) -> Result<Computed> {
    let ring = ideal.ring();
    check_size(ring)?;
    let gb = ideal.groebner_basis_for(MonomialOrder::DegRevLex)?;
    let grevlex = ring.with_order(MonomialOrder::DegRevLex)?;
    let mut elems: Vec<Vec<FTerm>> = Vec::new();
    let mut seen: Vec<Poly> = Vec::new();
    for g in gens {
        let g = g.to_ring(&grevlex)?;
        elems.push(pack_terms(g.terms(), 0)?);
        seen.push(g.monic());
    }
    for g in gb.iter() {
        if !seen.contains(g) {
            elems.push(pack_terms(g.terms(), 0)?);
        }
    }
    let mut frame = Frame::from_elements(ring.nvars(), ring.field(), 1, elems)?;
    frame.build(max_level, ideal.limits())?;
    Ok(Computed::new(ring, frame, &[ring.zero_degree()], gens.len()))
}

/// Frame of `coker(map)`: the columns of `map` followed by a Gröbner basis of
/// the submodule they span (computed with one auxiliary variable per row).
fn cokernel_frame(map: &ModuleMap, max_level: usize, limits: &Limits) -> Result<Computed> {
    let ring = map.ring();
    check_size(ring)?;
    let nx = ring.nvars();
    let rank = map.nrows();
    let arity = ring.grading_arity();
    let shifts = map.target().shifts();
    let low: Vec<i32> = (0..arity)
        .map(|k| shifts.iter().map(|d| d[k]).min().unwrap_or(0))
        .collect();
    let mut names: Vec<String> = Vec::new();
    let mut degrees: Vec<Degree> = Vec::new();
    // Auxiliary variable `k` marks row `rank - 1 - k`, so higher rows compare larger.
    for k in 0..rank {
        let mut name = format!("e{k}");
        while ring.var_index(&name).is_some() || names.contains(&name) {
            name.push('_');
        }
        names.push(name);
        let s = &shifts[rank - 1 - k];
        let mut d: Degree = s.iter().zip(&low).map(|(a, b)| a - b).collect();
        d[0] += 1;
        degrees.push(d);
    }
    let ext = ring.extended(&names, &degrees, MonomialOrder::Elimination { split: nx })?;
    let row_var = |r: usize| nx + rank - 1 - r;
    let mut input: Vec<Vec<Term>> = Vec::new();
    let mut elems: Vec<Vec<FTerm>> = Vec::new();
    for c in 0..map.ncols() {
        let mut terms = Vec::new();
        let mut packed = Vec::new();
        for (r, p) in map.column(c) {
            for t in p.terms() {
                let mut e = t.mono.exponents().to_vec();
                e.resize(nx + rank, 0);
                e[row_var(*r)] = 1;
                terms.push(Term {
                    coef: t.coef,
                    mono: Mono::from_exponents(&e),
                });
            }
            packed.extend(pack_terms(p.terms(), *r as u32)?);
        }
        input.push(Poly::from_terms(&ext, terms).terms().to_vec());
        elems.push(packed);
    }
    let inputs = elems.len();
    for a in 0..rank {
        for b in a..rank {
            let mut e = vec![0u16; nx + rank];
            e[row_var(a)] += 1;
            e[row_var(b)] += 1;
            input.push(vec![Term {
                coef: 1,
                mono: Mono::from_exponents(&e),
            }]);
        }
    }
    let gb = buchberger(input, &Request::new(&ext, limits))?;
    for g in gb {
        let edeg: u32 = g[0].mono.exponents()[nx..].iter().map(|&x| x as u32).sum();
        if edeg != 1 {
            continue;
        }
        let mut packed = Vec::with_capacity(g.len());
        for t in &g {
            let ex = t.mono.exponents();
            let k = (nx..nx + rank).find(|&i| ex[i] == 1).unwrap();
            let x = Mono::from_exponents(&ex[..nx]);
            packed.push(FTerm {
                mono: PMono::pack(&x).ok_or_else(too_large)?,
                coef: t.coef,
                comp: (rank - 1 - (k - nx)) as u32,
            });
        }
        elems.push(packed);
    }
    let mut frame = Frame::from_elements(nx, ring.field(), rank, elems)?;
    frame.build(max_level, limits)?;
    Ok(Computed::new(ring, frame, shifts, inputs))
}

/// A minimal graded free resolution `F_0 ← F_1 ← … ← F_p`.
#[derive(Debug, Clone)]
pub struct Resolution {
    ring: RingRef,
    modules: Vec<FreeModule>,
    maps: Vec<ModuleMap>,
    augmentation: Option<ModuleMap>,
    minimal: bool,
    complete: bool,
}

impl Resolution {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// `F_i`.
    pub fn module(&self, i: usize) -> &FreeModule {
        &self.modules[i]
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    /// The differentials; `maps()[i]` is `F_{i+1} → F_i`.
    pub fn maps(&self) -> &[ModuleMap] {
        &self.maps
    }

    /// For an ideal, the map `F_0 → S` onto its minimal generators.
    pub fn augmentation(&self) -> Option<&ModuleMap> {
        self.augmentation.as_ref()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }

    /// Index of the last nonzero module.
    pub fn length(&self) -> usize {
        self.ranks().iter().rposition(|&r| r > 0).unwrap_or(0)
    }

    /// Whether the resolution stopped at the requested length bound before
    /// reaching the end.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn minimality_flag(&self) -> bool {
        self.minimal
    }

    /// Whether consecutive composites (including the augmentation) vanish.
    pub fn is_complex(&self) -> Result<bool> {
        if let (Some(a), Some(d)) = (&self.augmentation, self.maps.first()) {
            if !a.compose(d)?.is_zero() {
                return Ok(false);
            }
        }
        for w in self.maps.windows(2) {
            if !w[0].compose(&w[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether no differential has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| !m.has_unit_entry())
    }

    pub fn betti(&self) -> BettiTable {
        let mut t = BettiTable::new("", self.ring.grading_arity());
        for (i, m) in self.modules.iter().enumerate() {
            for d in m.shifts() {
                t.add(i, d, 1);
            }
        }
        t
    }
}

fn resolution_from(c: &mut Computed, first: usize, augmentation: bool) -> Resolution {
    c.prune();
    let top = c.reliable_levels();
    let modules = (first..top).map(|l| c.free_module(l)).collect();
    let maps = (first + 1..top).map(|l| c.pruned_map(l)).collect();
    let augmentation = (augmentation && top > first).then(|| c.pruned_map(first));
    let minimal = !c.pruned.as_ref().unwrap().has_unit_entry();
    Resolution {
        ring: c.ring.clone(),
        modules,
        maps,
        augmentation,
        minimal,
        complete: !c.frame.truncated,
    }
}

/// Minimal free resolution of the ideal `I` (so `F_0` maps onto minimal
/// generators of `I`), of length at most `length_bound` (default: the
/// number of variables minus one, which always suffices).
pub fn free_resolution(ideal: &Ideal, length_bound: Option<usize>) -> Result<Resolution> {
    let n = ideal.ring().nvars();
    let bound = length_bound.unwrap_or(n.saturating_sub(1));
    let mut c = quotient_frame(ideal, &[], bound + 2)?;
    Ok(resolution_from(&mut c, 1, true))
}

/// Minimal free resolution of `S / I`.
pub fn resolve_quotient(ideal: &Ideal, length_bound: Option<usize>) -> Result<Resolution> {
    let bound = length_bound.unwrap_or(ideal.ring().nvars());
    let mut c = quotient_frame(ideal, &[], bound + 1)?;
    Ok(resolution_from(&mut c, 0, false))
}

/// Minimal free resolution of the cokernel of a homogeneous map.
pub fn resolve_cokernel(map: &ModuleMap, length_bound: Option<usize>, limits: &Limits) -> Result<Resolution> {
    let bound = length_bound.unwrap_or(map.ring().nvars() + 1);
    let mut c = cokernel_frame(map, bound + 1, limits)?;
    Ok(resolution_from(&mut c, 0, false))
}

/// Columns of the pruned `d_2` re-indexed by the caller's `n` inputs.
fn input_syzygies(c: &mut Computed, n: usize, target: FreeModule) -> Result<ModuleMap> {
    c.prune();
    if c.frame.levels.len() < 3 {
        let source = FreeModule::new(&c.ring, vec![])?;
        return Ok(ModuleMap::from_sparse(source, target, vec![]));
    }
    let p = c.pruned.as_ref().unwrap();
    let origin = &c.frame.origin;
    let mut survivors_rank = vec![usize::MAX; origin.len()];
    for (k, e) in c.survivors(1).into_iter().enumerate() {
        survivors_rank[e] = k;
    }
    let mut inverse = vec![usize::MAX; n];
    for (e, &o) in origin.iter().enumerate() {
        if o < n && !p.alive[1][e] {
            return Err(Error::InvalidArgument(
                "generators are not minimal; syzygies need a minimal generating set".into(),
            ));
        }
        if o < n {
            inverse[survivors_rank[e]] = o;
        } else if p.alive[1][e] {
            return Err(Error::InvalidArgument("syzygy computation left basis rows uncancelled".into()));
        }
    }
    let d2 = c.pruned_map(2);
    let cols = (0..d2.ncols())
        .map(|col| {
            let mut v: Vec<(usize, Poly)> = d2.column(col).iter().map(|(r, q)| (inverse[*r], q.clone())).collect();
            v.sort_by_key(|e| e.0);
            v
        })
        .collect();
    Ok(ModuleMap::from_sparse(d2.source().clone(), target, cols))
}

/// Generators of the syzygy module of `gens`, as a map into the free module
/// with basis `gens`. The list must be a minimal generating set of the
/// ideal it spans; the returned columns then minimally generate all
/// syzygies.
pub fn syzygies(gens: &[Poly]) -> Result<ModuleMap> {
    let ring = gens
        .first()
        .map(|g| g.ring().clone())
        .ok_or_else(|| Error::InvalidArgument("no generators".into()))?;
    if gens.iter().any(|g| g.is_zero()) {
        return Err(Error::ZeroPolynomial);
    }
    let ideal = Ideal::new(&ring, gens.to_vec())?;
    let target = ModuleMap::row(&ring, gens)?.source().clone();
    let mut c = quotient_frame(&ideal, gens, 3)?;
    input_syzygies(&mut c, gens.len(), target)
}

/// Generators of the kernel of a homogeneous map whose columns minimally
/// generate their span.
pub fn module_syzygies(map: &ModuleMap, limits: &Limits) -> Result<ModuleMap> {
    let mut c = cokernel_frame(map, 3, limits)?;
    input_syzygies(&mut c, map.ncols(), map.source().clone())
}

/// Betti table of `S / I` from the scalar ranks of the frame.
pub fn quotient_betti_table(ideal: &Ideal) -> Result<BettiTable> {
    if ideal.is_zero() {
        let mut t = BettiTable::new("", ideal.ring().grading_arity());
        t.add(0, &ideal.ring().zero_degree(), 1);
        return Ok(t);
    }
    let n = ideal.ring().nvars();
    Ok(quotient_frame(ideal, &[], n + 1)?.tor_betti())
}

/// Betti table of the ideal `I` (`β_0` = minimal generators).
pub fn betti_table(ideal: &Ideal) -> Result<BettiTable> {
    Ok(quotient_betti_table(ideal)?.shifted(-1))
}

/// Betti tables of `S / I` by both routes: scalar ranks of the frame and
/// explicit pruning. They agree whenever the implementation is correct.
pub fn betti_table_both_routes(ideal: &Ideal) -> Result<(BettiTable, BettiTable)> {
    let n = ideal.ring().nvars();
    let mut c = quotient_frame(ideal, &[], n + 1)?;
    let a = c.tor_betti();
    let b = c.pruned_betti();
    Ok((a, b))
}

/// Projective dimension of the ideal `I`.
pub fn projdim(ideal: &Ideal) -> Result<usize> {
    betti_table(ideal)?
        .projdim()
        .ok_or_else(|| Error::InvalidArgument("the zero ideal has no resolution".into()))
}

/// Castelnuovo–Mumford regularity of the ideal `I` (Z-graded rings).
pub fn regularity(ideal: &Ideal) -> Result<i64> {
    betti_table(ideal)?.regularity()
}

/// `reg_(1,0)` of `S / P` for a Z²-graded ring, e.g. a Rees algebra
/// presented as a quotient of `K[x, y]`.
pub fn reg_10(ideal: &Ideal) -> Result<i64> {
    quotient_betti_table(ideal)?.reg_10()
}

/// Outcome of [`linearity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Linearity {
    pub linear: bool,
    pub reason: Option<String>,
}

/// Whether the equigenerated ideal `I` has a linear resolution, with the
/// reason when it does not.
pub fn linearity(ideal: &Ideal) -> Result<Linearity> {
    let Some(d) = ideal.equigenerated_degree() else {
        return Ok(Linearity {
            linear: false,
            reason: Some("not equigenerated".into()),
        });
    };
    let t = betti_table(ideal)?;
    if t.is_linear(d as i64) {
        Ok(Linearity {
            linear: true,
            reason: None,
        })
    } else {
        let reg = t.regularity()?;
        Ok(Linearity {
            linear: false,
            reason: Some(format!("regularity {reg} exceeds generator degree {d}")),
        })
    }
}

pub fn is_linear_resolution(ideal: &Ideal) -> Result<bool> {
    Ok(linearity(ideal)?.linear)
}

#[cfg(test)]
mod tests;
