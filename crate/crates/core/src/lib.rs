//! Exact and numerical tools for hypergeometric polynomials and their amoebas.

pub mod amoeba;
pub mod error;
pub mod families;
pub mod hypergeometric;
pub mod io;
pub mod lattice;
pub mod moment;
pub mod poly;
pub mod roots;

pub use error::{Error, Result};
pub use lattice::{Facet, IntegerPolytope, LatticeSupport};
pub use poly::{ComplexPolynomial, Exponent, LaurentPolynomial, Rational};
