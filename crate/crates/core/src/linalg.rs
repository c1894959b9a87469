//! Gaussian elimination over F_p, dense and sparse.

use crate::ring::PrimeField;

/// Row echelon form maintained incrementally. Rows are reduced against the
/// stored pivots on insertion, so membership tests are cheap.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: PrimeField,
    ncols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` by the stored rows; returns the remainder.
    pub fn reduce(&self, mut row: Vec<u32>) -> Vec<u32> {
        debug_assert_eq!(row.len(), self.ncols);
        let f = self.field;
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let c = row[p];
            if c != 0 {
                let nc = f.neg(c);
                for (x, &y) in row[p..].iter_mut().zip(&r[p..]) {
                    if y != 0 {
                        *x = f.add(*x, f.mul(nc, y));
                    }
                }
            }
        }
        row
    }

    /// Inserts `row`; returns whether it was independent of the stored rows.
    pub fn insert(&mut self, row: Vec<u32>) -> bool {
        let row = self.reduce(row);
        let Some(p) = row.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(row[p]);
        let row: Vec<u32> = row.into_iter().map(|x| f.mul(x, inv)).collect();
        self.rows.push(row);
        self.pivots.push(p);
        true
    }

    /// Reduced row echelon basis, rows sorted by pivot column.
    pub fn into_rref(self) -> Vec<Vec<u32>> {
        let f = self.field;
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        let mut rows: Vec<Vec<u32>> = idx.iter().map(|&i| self.rows[i].clone()).collect();
        let pivots: Vec<usize> = idx.iter().map(|&i| self.pivots[i]).collect();
        for k in (0..rows.len()).rev() {
            let p = pivots[k];
            let (upper, lower) = rows.split_at_mut(k);
            let pr = &lower[0];
            for r in upper.iter_mut() {
                let c = r[p];
                if c != 0 {
                    let nc = f.neg(c);
                    for (x, &y) in r[p..].iter_mut().zip(&pr[p..]) {
                        if y != 0 {
                            *x = f.add(*x, f.mul(nc, y));
                        }
                    }
                }
            }
        }
        rows
    }
}

/// Rank of a dense matrix.
pub fn rank(field: PrimeField, ncols: usize, rows: impl IntoIterator<Item = Vec<u32>>) -> usize {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Rank of a sparse matrix given as rows of `(column, value)` pairs with
/// distinct columns.
pub fn sparse_rank(field: PrimeField, rows: Vec<Vec<(u32, u32)>>) -> usize {
    let f = field;
    let mut pivots: rustc_hash::FxHashMap<u32, Vec<(u32, u32)>> = Default::default();
    for mut row in rows {
        row.retain(|e| e.1 != 0);
        row.sort_unstable();
        loop {
            let Some(&(c, v)) = row.first() else { break };
            let Some(p) = pivots.get(&c) else {
                let inv = f.inv(v);
                for e in row.iter_mut() {
                    e.1 = f.mul(e.1, inv);
                }
                pivots.insert(c, row);
                break;
            };
            let nv = f.neg(v);
            let mut out = Vec::with_capacity(row.len() + p.len());
            let (mut i, mut j) = (1, 1);
            while i < row.len() || j < p.len() {
                if j == p.len() || (i < row.len() && row[i].0 < p[j].0) {
                    out.push(row[i]);
                    i += 1;
                } else if i == row.len() || p[j].0 < row[i].0 {
                    out.push((p[j].0, f.mul(nv, p[j].1)));
                    j += 1;
                } else {
                    let x = f.add(row[i].1, f.mul(nv, p[j].1));
                    if x != 0 {
                        out.push((row[i].0, x));
                    }
                    i += 1;
                    j += 1;
                }
            }
            row = out;
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_rank() {
        let f = PrimeField::new(7).unwrap();
        let mut e = Echelon::new(f, 3);
        assert!(e.insert(vec![0, 1, 2]));
        assert!(e.insert(vec![1, 1, 1]));
        assert!(!e.insert(vec![1, 2, 3]));
        let rref = e.into_rref();
        assert_eq!(rref, vec![vec![1, 0, 6], vec![0, 1, 2]]);
        assert_eq!(rank(f, 2, vec![vec![1, 2], vec![2, 4]]), 1);
    }

    proptest::proptest! {
        #[test]
        fn sparse_rank_matches_dense(m in proptest::collection::vec(proptest::collection::vec(0u32..3, 5), 0..7)) {
            let f = PrimeField::new(3).unwrap();
            let sparse = m
                .iter()
                .map(|r| r.iter().enumerate().map(|(c, &v)| (c as u32, v)).collect())
                .collect();
            proptest::prop_assert_eq!(sparse_rank(f, sparse), rank(f, 5, m.clone()));
        }
    }
}
