//! Gröbner bases and the ideal-theoretic toolbox built on them.
//!
//! The engine is Buchberger's algorithm with the Gebauer–Möller criteria;
//! pairs are processed by sugar degree, ties broken by the order on their
//! lcm, so homogeneous input is handled degree by degree. Every
//! computation is bounded by [`Limits`] and reports [`Error::PairCap`] or
//! [`Error::Timeout`] instead of returning a partial answer.
//!
//! [`Error::PairCap`]: crate::Error::PairCap
//! [`Error::Timeout`]: crate::Error::Timeout

mod engine;
mod hilbert;
mod ideal;
mod ops;

pub use engine::Limits;
pub use hilbert::{min_hitting_set, minimalize_monomials, monomial_numerator, HilbertNumerator};
pub use ideal::{normal_form, Ideal, IdealJson};

pub(crate) use engine::{groebner as buchberger, Budget, Request};
pub(crate) use ops::reordered_ring;
pub use ops::divide_exact;

use crate::error::Result;
use crate::ring::{MonomialOrder, Poly, RingRef};
use std::sync::Arc;

/// Reduced Gröbner basis of `ideal` for `order` (cached on the ideal).
pub fn groebner_basis(ideal: &Ideal, order: MonomialOrder) -> Result<Arc<Vec<Poly>>> {
    ideal.groebner_basis_for(order)
}

pub fn ideal_membership(f: &Poly, ideal: &Ideal) -> Result<bool> {
    ideal.contains(f)
}

pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    a.equals(b)
}

pub fn eliminate(ideal: &Ideal, vars: &[&str]) -> Result<Ideal> {
    ideal.eliminate(vars)
}

pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.intersect(b)
}

pub fn colon(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.colon(b)
}

pub fn saturate(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.saturate(b)
}

pub fn dim_and_height(ideal: &Ideal) -> Result<(usize, usize)> {
    ideal.dim_and_height()
}

pub fn ideal_power(ideal: &Ideal, k: u32) -> Result<Ideal> {
    ideal.power(k)
}

pub fn minimal_generators(ideal: &Ideal) -> Result<Vec<Poly>> {
    ideal.minimal_generators()
}

pub fn hilbert_numerator(ideal: &Ideal) -> Result<HilbertNumerator> {
    ideal.hilbert_numerator()
}

/// For each order, whether the reduced Gröbner basis is quadratic.
pub fn is_quadratic_gb(ideal: &Ideal, orders: &[MonomialOrder]) -> Result<Vec<bool>> {
    orders
        .iter()
        .map(|o| ideal.has_quadratic_gb_in(&ideal.ring().with_order(o.clone())?))
        .collect()
}

/// Ring with the same variables, listed in `names` order, and `order`.
pub fn ring_with_variable_order(ring: &RingRef, names: &[String], order: MonomialOrder) -> Result<RingRef> {
    reordered_ring(ring, names, order)
}
