//! Monomials packed into a `u128`: one byte per variable, variable `i` in
//! byte `i`, each exponent below 128 so the top bit of every byte is a
//! guard for carry-free subtraction.

use crate::ring::Mono;
use std::cmp::Ordering;

pub(crate) const MAX_VARS: usize = 16;
pub(crate) const MAX_EXP: u32 = 127;

const GUARD: u128 = 0x8080_8080_8080_8080_8080_8080_8080_8080;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub(crate) struct PMono {
    lanes: u128,
    deg: u16,
}

impl PMono {
    pub(crate) const ONE: PMono = PMono { lanes: 0, deg: 0 };

    /// Packs `m`; `None` if it has too many variables or a large exponent.
    pub(crate) fn pack(m: &Mono) -> Option<PMono> {
        if m.nvars() > MAX_VARS || m.degree() > MAX_EXP {
            return None;
        }
        let mut lanes = 0u128;
        for (i, &e) in m.exponents().iter().enumerate() {
            lanes |= (e as u128) << (8 * i);
        }
        Some(PMono {
            lanes,
            deg: m.degree() as u16,
        })
    }

    pub(crate) fn unpack(&self, nvars: usize) -> Mono {
        let bytes = self.lanes.to_le_bytes();
        let exps: Vec<u16> = bytes[..nvars].iter().map(|&b| b as u16).collect();
        Mono::from_exponents(&exps)
    }

    #[inline]
    pub(crate) fn degree(&self) -> u32 {
        self.deg as u32
    }

    #[inline]
    pub(crate) fn divides(&self, other: &PMono) -> bool {
        self.deg <= other.deg && ((other.lanes | GUARD) - self.lanes) & GUARD == GUARD
    }

    /// Product; the caller guarantees the result stays below the exponent cap.
    #[inline]
    pub(crate) fn mul(&self, other: &PMono) -> PMono {
        let lanes = self.lanes + other.lanes;
        debug_assert_eq!(lanes & GUARD, 0);
        PMono {
            lanes,
            deg: self.deg + other.deg,
        }
    }

    /// Product, or `None` if an exponent would exceed [`MAX_EXP`].
    #[inline]
    pub(crate) fn mul_checked(&self, other: &PMono) -> Option<PMono> {
        let lanes = self.lanes + other.lanes;
        (lanes & GUARD == 0).then_some(PMono {
            lanes,
            deg: self.deg + other.deg,
        })
    }

    /// Quotient `self / other`, assuming `other` divides `self`.
    #[inline]
    pub(crate) fn div(&self, other: &PMono) -> PMono {
        debug_assert!(other.divides(self));
        PMono {
            lanes: self.lanes - other.lanes,
            deg: self.deg - other.deg,
        }
    }

    pub(crate) fn lcm(&self, other: &PMono) -> PMono {
        let a = self.lanes.to_le_bytes();
        let b = other.lanes.to_le_bytes();
        let mut out = [0u8; 16];
        let mut deg = 0u16;
        for i in 0..16 {
            out[i] = a[i].max(b[i]);
            deg += out[i] as u16;
        }
        PMono {
            lanes: u128::from_le_bytes(out),
            deg,
        }
    }

    /// Degree reverse lexicographic comparison (variable 0 largest).
    #[inline]
    pub(crate) fn cmp_grevlex(&self, other: &PMono) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| other.lanes.cmp(&self.lanes))
    }

    /// Pure lexicographic comparison (variable 0 largest).
    #[inline]
    pub(crate) fn cmp_lex(&self, other: &PMono) -> Ordering {
        self.lanes.swap_bytes().cmp(&other.lanes.swap_bytes())
    }

    /// Key whose natural order is the degrevlex order.
    #[inline]
    pub(crate) fn grevlex_key(&self) -> (u16, u128) {
        (self.deg, !self.lanes)
    }

    /// Inverse of [`PMono::grevlex_key`].
    #[inline]
    pub(crate) fn from_key(deg: u16, key: u128) -> PMono {
        PMono { lanes: !key, deg }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::MonomialOrder;

    fn p(e: &[u16]) -> PMono {
        PMono::pack(&Mono::from_exponents(e)).unwrap()
    }

    #[test]
    fn agrees_with_mono() {
        let ms = [
            vec![2, 0, 1],
            vec![1, 1, 1],
            vec![0, 3, 0],
            vec![0, 0, 3],
            vec![1, 2, 0],
            vec![3, 0, 0],
        ];
        for a in &ms {
            for b in &ms {
                let (ma, mb) = (Mono::from_exponents(a), Mono::from_exponents(b));
                let (pa, pb) = (p(a), p(b));
                assert_eq!(pa.cmp_grevlex(&pb), MonomialOrder::DegRevLex.cmp(&ma, &mb));
                assert_eq!(pa.cmp_lex(&pb), MonomialOrder::Lex.cmp(&ma, &mb));
                assert_eq!(pa.grevlex_key().cmp(&pb.grevlex_key()), pa.cmp_grevlex(&pb));
                assert_eq!(pa.divides(&pb), ma.divides(&mb));
                assert_eq!(pa.lcm(&pb).unpack(3), ma.lcm(&mb));
                assert_eq!(pa.mul(&pb).unpack(3), ma.mul(&mb));
            }
        }
        assert!(PMono::pack(&Mono::from_exponents(&[128])).is_none());
    }
}
