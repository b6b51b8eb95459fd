//! Exact De Rham–Hodge calculus.
//!
//! Two layers share one exact rational core:
//!
//! - [`exterior`] and [`integrate`]: symbolic differential forms on ℝⁿ with
//!   polynomial coefficients, the operators `∧, d, ⋆, δ, Δ`, the cone
//!   homotopy, and exact integration over affine simplicial chains.
//! - [`complex`] and [`cochain`]: oriented simplicial complexes, chains,
//!   cochains, Betti numbers and the combinatorial Hodge decomposition.
//!
//! [`cli`] holds the expression language, file formats and the `hodgelab`
//! command dispatcher.

pub mod cli;
pub mod cochain;
pub mod complex;
pub mod error;
pub mod exterior;
pub mod integrate;
pub mod linalg;
pub mod poly;

pub use error::{Error, Result};
pub use exterior::DifferentialForm;
pub use poly::{Polynomial, Rational};
