//! Pruning a frame to a minimal resolution by cancelling unit entries.
//!
//! Differentials are processed from `d_1` upwards and, inside `d_l`, by
//! increasing degree of the column. A unit entry `u` at `(r, c)` is cleared
//! from row `r` by column operations, after which the summand `e_c → e_r`
//! splits off: column `c` and row `r` of `d_l`, row `c` of `d_{l+1}` and
//! column `r` of `d_{l-1}` are dropped.

use super::frame::Frame;
use super::packed::PMono;
use crate::ring::PrimeField;

/// A polynomial as `(monomial, coefficient)` in decreasing degrevlex order.
pub(crate) type SPoly = Vec<(PMono, u32)>;

fn is_unit(p: &SPoly) -> Option<u32> {
    match p.as_slice() {
        [(m, c)] if *m == PMono::ONE => Some(*c),
        _ => None,
    }
}

fn sort_combine(mut v: SPoly, f: PrimeField) -> SPoly {
    v.sort_unstable_by(|a, b| b.0.grevlex_key().cmp(&a.0.grevlex_key()));
    let mut out: SPoly = Vec::with_capacity(v.len());
    for (m, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == m => last.1 = f.add(last.1, c),
            _ => out.push((m, c)),
        }
        if out.last().map_or(false, |l| l.1 == 0) {
            out.pop();
        }
    }
    out
}

/// `a + s * b`.
fn add_mul(a: &SPoly, s: &SPoly, b: &SPoly, f: PrimeField) -> SPoly {
    let mut v = a.clone();
    for (ms, cs) in s {
        for (mb, cb) in b {
            v.push((ms.mul(mb), f.mul(*cs, *cb)));
        }
    }
    sort_combine(v, f)
}

/// The differentials of a frame as sparse columns, pruned in place.
pub(crate) struct Pruned {
    /// `alive[l][e]`: whether basis element `e` of `F_l` survives.
    pub alive: Vec<Vec<bool>>,
    /// `cols[l][e]` for `l ≥ 1`: the entries `(row, poly)` of column `e` of
    /// `d_l`, sorted by row. Entries in dead rows are stale.
    pub cols: Vec<Vec<Vec<(u32, SPoly)>>>,
}

impl Pruned {
    pub(crate) fn from_frame(frame: &Frame) -> Pruned {
        let f = frame.field;
        let mut cols = vec![vec![]];
        for l in 1..frame.levels.len() {
            let (lo, hi) = (&frame.levels[l - 1], &frame.levels[l]);
            let level: Vec<Vec<(u32, SPoly)>> = hi
                .vecs
                .iter()
                .map(|v| {
                    let mut by_row: Vec<(u32, PMono, u32)> = v
                        .iter()
                        .map(|t| (t.comp, t.mono.div(&lo.total[t.comp as usize]), t.coef))
                        .collect();
                    by_row.sort_unstable_by_key(|e| e.0);
                    let mut out: Vec<(u32, SPoly)> = Vec::new();
                    for (r, m, c) in by_row {
                        match out.last_mut() {
                            Some(last) if last.0 == r => last.1.push((m, c)),
                            _ => out.push((r, vec![(m, c)])),
                        }
                    }
                    for e in &mut out {
                        e.1 = sort_combine(std::mem::take(&mut e.1), f);
                    }
                    out
                })
                .collect();
            cols.push(level);
        }
        Pruned {
            alive: frame.levels.iter().map(|l| vec![true; l.len()]).collect(),
            cols,
        }
    }

    /// Cancels unit entries until none remain. `weight[l][e]` orders the
    /// columns of each differential (any degree with positive weights);
    /// `prefer(l, r)` ranks candidate pivot rows, higher first.
    pub(crate) fn minimize(&mut self, f: PrimeField, weight: &[Vec<i64>], prefer: impl Fn(usize, usize) -> u8) {
        for l in 1..self.cols.len() {
            let mut rows_cols: Vec<Vec<u32>> = vec![vec![]; self.alive[l - 1].len()];
            for (c, col) in self.cols[l].iter().enumerate() {
                for (r, _) in col {
                    rows_cols[*r as usize].push(c as u32);
                }
            }
            let mut order: Vec<usize> = (0..self.cols[l].len()).collect();
            order.sort_by_key(|&c| weight[l][c]);
            for c in order {
                if !self.alive[l][c] {
                    continue;
                }
                let pivot = self.cols[l][c]
                    .iter()
                    .filter(|(r, _)| self.alive[l - 1][*r as usize])
                    .filter_map(|(r, p)| is_unit(p).map(|u| (*r as usize, u)))
                    .max_by_key(|&(r, _)| (prefer(l - 1, r), std::cmp::Reverse(r)));
                let Some((r, u)) = pivot else { continue };
                self.cancel(l, c, r, u, f, &mut rows_cols);
            }
        }
    }

    fn cancel(&mut self, l: usize, c: usize, r: usize, u: u32, f: PrimeField, rows_cols: &mut [Vec<u32>]) {
        let alive_rows = &self.alive[l - 1];
        let pivot_col: Vec<(u32, SPoly)> = self.cols[l][c]
            .iter()
            .filter(|(r2, _)| alive_rows[*r2 as usize])
            .cloned()
            .collect();
        let ninv = f.neg(f.inv(u));
        let mut targets = std::mem::take(&mut rows_cols[r]);
        targets.sort_unstable();
        targets.dedup();
        for &c2 in &targets {
            let c2 = c2 as usize;
            if c2 == c || !self.alive[l][c2] {
                continue;
            }
            let col = &mut self.cols[l][c2];
            let Ok(pos) = col.binary_search_by_key(&(r as u32), |e| e.0) else {
                continue;
            };
            let s: SPoly = col[pos].1.iter().map(|&(m, a)| (m, f.mul(a, ninv))).collect();
            col.remove(pos);
            for (r2, q) in &pivot_col {
                if *r2 as usize == r {
                    continue;
                }
                match col.binary_search_by_key(r2, |e| e.0) {
                    Ok(p) => {
                        let v = add_mul(&col[p].1, &s, q, f);
                        if v.is_empty() {
                            col.remove(p);
                        } else {
                            col[p].1 = v;
                        }
                    }
                    Err(p) => {
                        col.insert(p, (*r2, add_mul(&vec![], &s, q, f)));
                        rows_cols[*r2 as usize].push(c2 as u32);
                    }
                }
            }
        }
        rows_cols[r] = targets;
        self.alive[l][c] = false;
        self.alive[l - 1][r] = false;
    }

    /// Whether some surviving entry between surviving elements is a unit.
    pub(crate) fn has_unit_entry(&self) -> bool {
        (1..self.cols.len()).any(|l| {
            self.cols[l].iter().enumerate().any(|(c, col)| {
                self.alive[l][c]
                    && col
                        .iter()
                        .any(|(r, p)| self.alive[l - 1][*r as usize] && is_unit(p).is_some())
            })
        })
    }
}
