//! Graded free modules and homogeneous maps between them.

use crate::error::{Error, Result};
use crate::ring::{Degree, Poly, RingRef};
use std::fmt;

/// `⊕ S(−a_i)`, recorded by its shifts `a_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    ring: RingRef,
    shifts: Vec<Degree>,
}

impl FreeModule {
    pub fn new(ring: &RingRef, shifts: Vec<Degree>) -> Result<Self> {
        let g = ring.grading_arity();
        if let Some(d) = shifts.iter().find(|d| d.len() != g) {
            return Err(Error::GradingArity {
                expected: g,
                found: d.len(),
            });
        }
        Ok(FreeModule {
            ring: ring.clone(),
            shifts,
        })
    }

    /// `S^rank` with all shifts zero.
    pub fn free(ring: &RingRef, rank: usize) -> Self {
        FreeModule {
            ring: ring.clone(),
            shifts: vec![ring.zero_degree(); rank],
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[Degree] {
        &self.shifts
    }
}

/// A homogeneous map `source → target`, stored as sparse columns: column
/// `c` is the image of the `c`-th basis element of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    source: FreeModule,
    target: FreeModule,
    cols: Vec<Vec<(usize, Poly)>>,
}

fn sub_deg(a: &Degree, b: &Degree) -> Degree {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl ModuleMap {
    /// Map with the given dense columns (each of length `target.rank()`);
    /// every nonzero entry `(r, c)` must be homogeneous of degree
    /// `shift(c) − shift(r)`.
    pub fn new(source: FreeModule, target: FreeModule, columns: Vec<Vec<Poly>>) -> Result<Self> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch);
        }
        if columns.len() != source.rank() || columns.iter().any(|c| c.len() != target.rank()) {
            return Err(Error::InvalidArgument("matrix shape does not match the modules".into()));
        }
        let mut cols = Vec::with_capacity(columns.len());
        for (c, col) in columns.into_iter().enumerate() {
            let mut sparse = Vec::new();
            for (r, p) in col.into_iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                if **p.ring() != *source.ring {
                    return Err(Error::RingMismatch);
                }
                let want = sub_deg(&source.shifts[c], &target.shifts[r]);
                match p.homogeneous_degree() {
                    Ok(d) if d == want => sparse.push((r, p)),
                    _ => {
                        return Err(Error::Inhomogeneous(format!(
                            "entry ({r}, {c}) is not homogeneous of degree {want:?}"
                        )))
                    }
                }
            }
            cols.push(sparse);
        }
        Ok(ModuleMap { source, target, cols })
    }

    pub(crate) fn from_sparse(source: FreeModule, target: FreeModule, cols: Vec<Vec<(usize, Poly)>>) -> Self {
        ModuleMap { source, target, cols }
    }

    /// The `1 × r` map `S(−deg g_1) ⊕ … ⊕ S(−deg g_r) → S` sending the basis
    /// to the given polynomials.
    pub fn row(ring: &RingRef, gens: &[Poly]) -> Result<Self> {
        let shifts = gens
            .iter()
            .map(|g| g.homogeneous_degree())
            .collect::<Result<Vec<_>>>()?;
        let source = FreeModule::new(ring, shifts)?;
        let cols = gens.iter().map(|g| vec![g.clone()]).collect();
        ModuleMap::new(source, FreeModule::free(ring, 1), cols)
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn ring(&self) -> &RingRef {
        &self.source.ring
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    /// Nonzero entries of column `c` as `(row, entry)`.
    pub fn column(&self, c: usize) -> &[(usize, Poly)] {
        &self.cols[c]
    }

    pub fn entry(&self, r: usize, c: usize) -> Poly {
        self.cols[c]
            .iter()
            .find(|e| e.0 == r)
            .map(|e| e.1.clone())
            .unwrap_or_else(|| Poly::zero(self.ring()))
    }

    /// Dense columns.
    pub fn columns(&self) -> Vec<Vec<Poly>> {
        (0..self.ncols())
            .map(|c| (0..self.nrows()).map(|r| self.entry(r, c)).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// Whether some nonzero entry is a constant.
    pub fn has_unit_entry(&self) -> bool {
        self.cols.iter().flatten().any(|(_, p)| p.is_constant())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if other.target.rank() != self.source.rank() || other.ring() != self.ring() {
            return Err(Error::InvalidArgument("maps are not composable".into()));
        }
        let ring = self.ring().clone();
        let mut cols = Vec::with_capacity(other.ncols());
        for col in &other.cols {
            let mut acc: Vec<Poly> = vec![Poly::zero(&ring); self.nrows()];
            for (k, a) in col {
                for (r, b) in &self.cols[*k] {
                    acc[*r] = acc[*r].add(&b.mul(a)?)?;
                }
            }
            cols.push(acc.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).collect());
        }
        Ok(ModuleMap::from_sparse(other.source.clone(), self.target.clone(), cols))
    }
}

impl fmt::Display for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dense = self.columns();
        for r in 0..self.nrows() {
            let row: Vec<String> = dense.iter().map(|c| c[r].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn koszul_composite_vanishes() {
        let r = Ring::standard(&["x", "y"], 32003).unwrap();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let d1 = ModuleMap::row(&r, &[x.clone(), y.clone()]).unwrap();
        let src = FreeModule::new(&r, vec![[2].into_iter().collect()]).unwrap();
        let d2 = ModuleMap::new(src, d1.source().clone(), vec![vec![y.clone(), x.neg()]]).unwrap();
        assert!(d1.compose(&d2).unwrap().is_zero());
        assert!(!d2.has_unit_entry());
        let bad = FreeModule::new(&r, vec![[3].into_iter().collect()]).unwrap();
        assert!(ModuleMap::new(bad, d1.source().clone(), vec![vec![y, x.neg()]]).is_err());
    }
}
