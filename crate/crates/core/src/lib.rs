//! Exact multigraded generating functions for plane partitions with two rows.
//!
//! A plane partition `(lambda | mu)` of width `k` is weighted by
//! `x^lambda y^mu`. The generating function is computed three ways: a
//! rational recursion ([`recursion`]), a half-open triangulation of the order
//! cone ([`conegeom`]), and MacMahon's `Ω≥` elimination ([`omega`]).
//! [`enumerate`] supplies the brute-force ground truth.
//!
//! ```
//! use ppgf::recursion::{numerator, Variant};
//!
//! let n = numerator(2, Variant::Tilde).unwrap();
//! assert_eq!(n.to_text(), "-x1^2*y1*x2 + 1");
//! ```

pub mod cli;
pub mod conegeom;
pub mod enumerate;
pub mod error;
pub mod multipoly;
pub mod omega;
pub mod ratgf;
pub mod recursion;

pub use error::{Error, Result};
pub use multipoly::{Ctx, Monomial, Polynomial, Substitution, VariableContext};
pub use ratgf::{FactoredDenominator, FactoredGF};
