//! Numerics for partial-fraction sums `Σ a_n/(n^s + z)` and the power series
//! `Σ (-1)^k f(ks + s) z^k` they expand into, where `f(s) = Σ a_n n^(-s)`.
//!
//! - [`specialfns`]: ζ, its derivatives, Hurwitz ζ, Dirichlet L-functions.
//! - [`arith`]: Möbius, von Mangoldt and totient sieves; Dirichlet characters.
//! - [`summation`]: Cesàro and Abel means for the boundary `|z| = 1`.
//! - [`series`]: both sides of each identity family, with error estimates.
//! - [`poles`]: pole locations `-n^s` and numerically measured residues.
//! - [`catalog`], [`corpus`], [`report`], [`cli`]: the `zs` command line and
//!   its verification corpus.
//!
//! ```
//! use zeta_series::series::{self, DirichletSpec};
//! use zeta_series::summation::SummationMethod;
//! use zeta_series::{Complex64, EvalConfig};
//!
//! let cfg = EvalConfig::default();
//! let (s, z) = (Complex64::new(2.0, 0.0), Complex64::new(-0.25, 0.0));
//! let lhs = series::lhs_partial_fraction(&DirichletSpec::ones(), s, z, &cfg).unwrap();
//! let rhs = series::rhs_zeta_series(&DirichletSpec::ones(), s, z, SummationMethod::Direct, &cfg).unwrap();
//! assert!((lhs.value - 2.0).norm() < 1e-12 && (rhs.value - 2.0).norm() < 1e-12);
//! ```

pub mod arith;
pub mod catalog;
pub mod cli;
pub mod config;
pub mod corpus;
pub mod error;
pub mod poles;
pub mod report;
pub mod result;
pub mod series;
pub mod specialfns;
pub mod summation;
mod util;

pub use config::EvalConfig;
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use result::{Method, SumResult};

/// The scalar used throughout: a double-precision complex number.
pub type ComplexValue = Complex64;
