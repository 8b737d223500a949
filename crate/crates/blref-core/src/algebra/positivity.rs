//! Strict-positivity certificates backed by exact root counting.
//!
//! A polynomial is certified positive on a domain exactly when its
//! square-free part has no real roots there and a sample value is positive.
//! Negative certificates carry a witness point at which the polynomial
//! evaluates to a non-positive value; the paper-style counterexamples all
//! sit near the origin, so the witness scan starts there.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::poly::Polynomial;
use super::rational::{rat, rat_int, rat_to_f64, Rat};
use super::sturm;
use crate::error::{Error, Result};

/// Where positivity is asserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    AllReals,
    RealsMinusOrigin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateMethod {
    Sturm,
}

/// Outcome of a strict-positivity test.
///
/// `real_root_count` counts the distinct real roots of the tested
/// polynomial inside the domain; `witness` is present iff `positive` is
/// false and satisfies `p(witness) <= 0` (exactly, when the witness is the
/// result of the rational scan; to isolation accuracy otherwise).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PositivityCertificate {
    pub positive: bool,
    pub domain: Domain,
    pub real_root_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<f64>,
    pub method: CertificateMethod,
}

/// Certifies `p(x) > 0` for all `x` in `domain`.
///
/// For the punctured line, powers of `x` are divided out first (an odd
/// power can never be one-signed there) and the cofactor is tested on the
/// whole line.
pub fn certify_positive(p: &Polynomial, domain: Domain) -> Result<PositivityCertificate> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (xpow, cofactor) = p.strip_x_power();
    match domain {
        Domain::AllReals => {
            let roots = sturm::count_all_real_roots(p)?;
            let positive = roots == 0 && p.eval_rat(&rat_int(0)).is_positive();
            let witness = if positive { None } else { Some(find_witness(p, domain)) };
            Ok(PositivityCertificate {
                positive,
                domain,
                real_root_count: roots,
                witness,
                method: CertificateMethod::Sturm,
            })
        }
        Domain::RealsMinusOrigin => {
            let roots = sturm::count_all_real_roots(&cofactor)?;
            let positive = xpow % 2 == 0 && roots == 0 && cofactor.eval_rat(&rat_int(0)).is_positive();
            let witness = if positive { None } else { Some(find_witness(p, domain)) };
            Ok(PositivityCertificate {
                positive,
                domain,
                real_root_count: roots,
                witness,
                method: CertificateMethod::Sturm,
            })
        }
    }
}

/// A point with `p <= 0`, searched on a logarithmic grid around the origin
/// and, failing that, by Sturm bisection around a real root.
fn find_witness(p: &Polynomial, domain: Domain) -> f64 {
    let mut grid: Vec<Rat> = Vec::new();
    if domain == Domain::AllReals {
        grid.push(rat_int(0));
    }
    for e in 0..=3 {
        let steps = [rat(1, 10i64.pow(e)), rat_int(10i64.pow(e))];
        for s in steps {
            grid.push(s.clone());
            grid.push(-s);
        }
    }
    for x in &grid {
        if !p.eval_rat(x).is_positive() {
            return rat_to_f64(x);
        }
    }
    // No grid point works, so close in on a sign change or a touching root.
    if let Ok(Some((lo, hi))) = sturm::isolate_some_root(p, &rat(1, 1_000_000_000)) {
        for cand in [&lo, &hi] {
            if !p.eval_rat(cand).is_positive() {
                return rat_to_f64(cand);
            }
        }
        // Even-multiplicity root: the polynomial only touches zero; report
        // the isolated location.
        return rat_to_f64(&((&lo + &hi) / rat_int(2)));
    }
    f64::NAN
}

/// Positivity of a rational function via its sign polynomial `num * den`:
/// `r(x)` is defined and positive at `x` exactly when `num(x) * den(x) > 0`.
pub fn certify_positive_rf(
    r: &super::ratfunc::RationalFunction,
    domain: Domain,
) -> Result<PositivityCertificate> {
    certify_positive(&r.sign_polynomial(), domain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_integers(coeffs)
    }

    #[test]
    fn positive_definite_quadratic() {
        let cert = certify_positive(&p(&[1, 0, 1]), Domain::AllReals).unwrap();
        assert!(cert.positive);
        assert_eq!(cert.real_root_count, 0);
        assert!(cert.witness.is_none());
    }

    #[test]
    fn sextic_family_flips_with_parameter() {
        // 2a^3 - 3ab + (15a^2 b + 18b^2)x^2 + 42ab^2 x^4 + 45b^3 x^6
        // at a = 1, b = 1/2: constant term 1/2 > 0, all coefficients positive
        let good = Polynomial::from_literals(&["1/2", "0", "12", "0", "21/2", "0", "45/8"]).unwrap();
        assert!(certify_positive(&good, Domain::AllReals).unwrap().positive);

        // at a = 1, b = 1: constant term -1 < 0, witness near the origin
        let bad = p(&[-1, 0, 33, 0, 42, 0, 45]);
        let cert = certify_positive(&bad, Domain::AllReals).unwrap();
        assert!(!cert.positive);
        let w = cert.witness.unwrap();
        assert!(w.abs() < 0.2, "witness {w} should sit near 0");
        assert!(bad.eval_f64(w) <= 0.0);
    }

    #[test]
    fn punctured_line_strips_even_x_powers() {
        // x^2 (x^2 + 2) is positive off the origin but vanishes at 0
        let q = &p(&[0, 0, 1]) * &p(&[2, 0, 1]);
        assert!(certify_positive(&q, Domain::RealsMinusOrigin).unwrap().positive);
        let on_line = certify_positive(&q, Domain::AllReals).unwrap();
        assert!(!on_line.positive);
        assert_eq!(on_line.witness, Some(0.0));
    }

    #[test]
    fn odd_x_power_cannot_be_positive_off_origin() {
        let q = p(&[0, 1]); // x
        let cert = certify_positive(&q, Domain::RealsMinusOrigin).unwrap();
        assert!(!cert.positive);
        assert!(q.eval_f64(cert.witness.unwrap()) <= 0.0);
    }

    #[test]
    fn log_family_condition_positive_above_threshold() {
        // 4a^3 - 3a x^2 + 12a^2 x^2 + 7a x^4 + x^6 at a = 1/2, tested on the
        // full line; a dense sign scan on [-10, 10] is the independent check.
        let q = Polynomial::from_literals(&["1/2", "0", "3/2", "0", "7/2", "0", "1"]).unwrap();
        let cert = certify_positive(&q, Domain::AllReals).unwrap();
        assert!(cert.positive);
        for i in 0..=2000 {
            let x = -10.0 + i as f64 * 0.01;
            assert!(q.eval_f64(x) > 0.0, "sign scan failed at {x}");
        }
    }

    #[test]
    fn touching_root_is_not_strictly_positive() {
        // (x-1)^2 >= 0 with equality at 1
        let q = &p(&[-1, 1]) * &p(&[-1, 1]);
        let cert = certify_positive(&q, Domain::AllReals).unwrap();
        assert!(!cert.positive);
        assert_eq!(cert.real_root_count, 1);
        let w = cert.witness.unwrap();
        assert!((w - 1.0).abs() < 1e-6);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(certify_positive(&Polynomial::zero(), Domain::AllReals).is_err());
    }
}
