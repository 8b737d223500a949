//! Exact univariate algebra: big rationals, polynomials, canonical rational
//! functions, Sturm root counting, and positivity certificates.

pub mod intpoly;
pub mod poly;
pub mod positivity;
pub mod ratfunc;
pub mod rational;
pub mod sturm;

pub use poly::Polynomial;
pub use positivity::{certify_positive, certify_positive_rf, CertificateMethod, Domain, PositivityCertificate};
pub use ratfunc::RationalFunction;
pub use rational::{format_rational, parse_rational, rat, rat_int, rat_to_f64, Rat};
pub use sturm::{count_all_real_roots, count_real_roots, Bound};
