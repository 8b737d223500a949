//! Exact and numerical machinery for iterated variance refinements of
//! one-dimensional log-concave measures.
//!
//! The crate builds the refinement sequence `E_1 = V''`,
//! `E_{n+1} = E_n (1 + A(E_n^{-1}))` in exact rational-function arithmetic,
//! certifies positivity of each element with Sturm chains, evaluates the
//! alternating variance-bound series by weighted quadrature, and locates
//! the parameter thresholds where positivity first fails.
//!
//! Modules follow the pipeline:
//!
//! * [`algebra`] - big rationals, polynomials, canonical rational
//!   functions, root counting, positivity certificates;
//! * [`potential`] - the supported potential class and its derivatives;
//! * [`refine`] - the refinement operator, sequence, commutation checks,
//!   and the square-root-free term cascade;
//! * [`quad`] - weighted quadrature (adaptive Gauss-Kronrod and tanh-sinh)
//!   with explicit tail bounds;
//! * [`hermite`] - the Gaussian spectral oracle for the resolvent remainder;
//! * [`bounds`] - the sandwich verifier and the Gaussian identities;
//! * [`threshold`] - certified bisection on family parameters;
//! * [`verify`] - the runnable claim suite behind `verify-paper`.
//!
//! With the default `parallel` feature, batch work (quadrature panels,
//! sweeps, suites) fans out over rayon; reductions are always performed in
//! a fixed order, so results are bit-identical with or without it.

pub mod algebra;
pub mod bounds;
pub mod error;
pub mod hermite;
mod par;
pub mod potential;
pub mod quad;
pub mod refine;
pub mod threshold;
pub mod verify;

pub use algebra::{Domain, Polynomial, PositivityCertificate, Rat, RationalFunction};
pub use error::{Error, Result};
pub use potential::Potential;
pub use refine::{RefinementSequence, TermSeries, Truncation};
