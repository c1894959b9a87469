//! Exponent vectors.

use smallvec::SmallVec;
use std::fmt;

pub(crate) const INLINE_VARS: usize = 16;

/// A monomial, stored as one `u16` exponent per ring variable together with
/// its standard (unweighted) total degree.
///
/// Exponents overflow at `2^16`; arithmetic that would exceed this panics
/// from the internal kernels, and [`Mono::checked_mul`] reports it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mono {
    exps: SmallVec<[u16; INLINE_VARS]>,
    deg: u32,
}

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Self {
            exps: SmallVec::from_elem(0, nvars),
            deg: 0,
        }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Self {
            deg: exps.iter().map(|&e| e as u32).sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    /// Standard total degree (sum of exponents).
    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn checked_mul(&self, other: &Mono) -> Option<Mono> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b)?);
        }
        Some(Mono {
            exps,
            deg: self.deg + other.deg,
        })
    }

    #[inline]
    pub fn mul(&self, other: &Mono) -> Mono {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow (2^16)"))
            .collect();
        Mono {
            exps,
            deg: self.deg + other.deg,
        }
    }

    /// `self / other`, assuming `other` divides `self`.
    #[inline]
    pub fn div_unchecked(&self, other: &Mono) -> Mono {
        debug_assert!(other.divides(self));
        Mono {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
            deg: self.deg - other.deg,
        }
    }

    pub fn div(&self, other: &Mono) -> Option<Mono> {
        if other.divides(self) {
            Some(self.div_unchecked(other))
        } else {
            None
        }
    }

    #[inline]
    pub fn divides(&self, other: &Mono) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        let exps: SmallVec<[u16; INLINE_VARS]> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Mono {
            deg: exps.iter().map(|&e| e as u32).sum(),
            exps,
        }
    }

    pub fn gcd(&self, other: &Mono) -> Mono {
        let exps: SmallVec<[u16; INLINE_VARS]> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.min(b))
            .collect();
        Mono {
            deg: exps.iter().map(|&e| e as u32).sum(),
            exps,
        }
    }

    pub fn is_coprime(&self, other: &Mono) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u32) -> Option<Mono> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for &e in &self.exps {
            let v = (e as u32).checked_mul(k)?;
            exps.push(u16::try_from(v).ok()?);
        }
        Some(Mono {
            exps,
            deg: self.deg * k,
        })
    }

    /// Weighted degree with one integer weight per variable.
    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    /// Bitmask of variables (mod 64) with positive exponent.
    #[inline]
    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << (i & 63);
            }
        }
        m
    }

    /// Variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Reorders exponents: entry `i` of the result is `self[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> Mono {
        Mono {
            exps: perm.iter().map(|&j| self.exps[j]).collect(),
            deg: self.deg,
        }
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.exps[..])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcm_gcd_divides() {
        let a = Mono::from_exponents(&[2, 0, 1]);
        let b = Mono::from_exponents(&[1, 3, 0]);
        assert_eq!(a.lcm(&b).exponents(), &[2, 3, 1]);
        assert_eq!(a.gcd(&b).exponents(), &[1, 0, 0]);
        assert!(a.gcd(&b).divides(&a));
        assert!(!a.divides(&b));
        assert_eq!(a.lcm(&b).div(&a).unwrap().exponents(), &[0, 3, 0]);
        assert_eq!(a.lcm(&b).degree(), 6);
    }

    #[test]
    fn overflow_is_detected() {
        let a = Mono::from_exponents(&[u16::MAX]);
        assert!(a.checked_mul(&Mono::var(1, 0)).is_none());
        assert!(a.pow(2).is_none());
    }
}
