//! Computational commutative algebra for ideals of minors of matrices of
//! linear forms: Gröbner bases, minimal free resolutions, Castelnuovo–Mumford
//! regularity and Rees algebra presentations over prime fields.
//!
//! ```
//! use minorforge::ring::{Poly, Ring};
//! use minorforge::groebner::Ideal;
//!
//! let r = Ring::standard(&["x", "y"], 32003).unwrap();
//! let m = Ideal::parse(&r, &["x", "y"]).unwrap();
//! assert_eq!(m.power(2).unwrap().generators().len(), 3);
//! # let _ = Poly::zero(&r);
//! ```

pub mod cli;
pub mod detideal;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod powers;
pub mod rees;
pub mod resolve;
pub mod ring;

pub use error::{Error, Result};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
pub struct Readme;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/intro.md")]
pub struct BookIntro;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/rings.md")]
pub struct BookRings;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/resolutions.md")]
pub struct BookResolutions;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/minors.md")]
pub struct BookMinors;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/rees.md")]
pub struct BookRees;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/powers.md")]
pub struct BookPowers;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub struct BookCli;
