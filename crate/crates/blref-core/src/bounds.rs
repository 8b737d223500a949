//! Assembles the alternating variance series and checks the sandwich:
//! odd partial sums upper-bound the variance, even partial sums lower-bound
//! it, with the variance always computed by the independent direct route.

use serde::Serialize;

use crate::algebra::{Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::hermite;
use crate::par;
use crate::potential::Potential;
use crate::quad;
use crate::refine::{self, RefinementSequence};

/// One term `T_k` with its quadrature error estimate.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TermEstimate {
    pub value: f64,
    #[serde(rename = "err")]
    pub abs_error: f64,
}

/// `T_k = integral of g_k d(mu)` for `k = 1..depth`, computed against a
/// sequence that must be certified positive through `depth`.
pub fn compute_terms(
    f: &Polynomial,
    pot: &Potential,
    depth: usize,
    tol: f64,
) -> Result<Vec<TermEstimate>> {
    let seq = refine::build_sequence(pot, depth)?;
    compute_terms_with_sequence(f, &seq, depth, tol)
}

/// Same as [`compute_terms`] but reusing an already-built sequence (the
/// batch suites build each sequence once and sweep many test functions).
pub fn compute_terms_with_sequence(
    f: &Polynomial,
    seq: &RefinementSequence,
    depth: usize,
    tol: f64,
) -> Result<Vec<TermEstimate>> {
    if seq.certified_depth() < depth {
        return Err(Error::SequenceExhausted);
    }
    let series = refine::build_term_series(f, seq, depth)?;
    let z = quad::normalizer(&seq.potential, tol)?;
    let results = par::map_slice(&series.integrands, |g| quad::integrate(g, &seq.potential, tol));
    let mut terms = Vec::with_capacity(depth);
    for r in results {
        let r = r?;
        terms.push(TermEstimate {
            value: r.value / z,
            abs_error: r.abs_error_estimate / z,
        });
    }
    Ok(terms)
}

/// Alternating partial sums `S_n = sum_{k<=n} (-1)^{k-1} T_k`.
pub fn partial_sums(terms: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    terms
        .iter()
        .enumerate()
        .map(|(i, t)| {
            acc += if i % 2 == 0 { *t } else { -*t };
            acc
        })
        .collect()
}

/// Per-depth verdict: odd sums must sit above the variance, even sums below.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    LowerOk,
    UpperOk,
    Violated(f64),
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub potential: Potential,
    pub f: Polynomial,
    pub depth: usize,
    pub terms: Vec<TermEstimate>,
    pub partial_sums: Vec<f64>,
    pub variance: f64,
    pub tol: f64,
    pub verdicts: Vec<Verdict>,
    pub pass: bool,
}

/// Builds the full report: terms, partial sums, direct variance, and the
/// sandwich verdicts. The effective tolerance is
/// `max(1e-7, 10 * accumulated quadrature error)` so the inequality checks
/// cannot fail on quadrature noise.
pub fn sandwich_check(f: &Polynomial, pot: &Potential, depth: usize, tol: f64) -> Result<BoundReport> {
    let seq = refine::build_sequence(pot, depth)?;
    sandwich_check_with_sequence(f, &seq, depth, tol)
}

pub fn sandwich_check_with_sequence(
    f: &Polynomial,
    seq: &RefinementSequence,
    depth: usize,
    tol: f64,
) -> Result<BoundReport> {
    let pot = &seq.potential;
    let terms = compute_terms_with_sequence(f, seq, depth, tol)?;
    let (variance, var_err) = quad::variance_with_error(f, pot, tol)?;
    let sums = partial_sums(&terms.iter().map(|t| t.value).collect::<Vec<_>>());
    let total_err: f64 = terms.iter().map(|t| t.abs_error).sum::<f64>() + var_err;
    let eff_tol = (10.0 * total_err).max(1e-7);
    let mut pass = true;
    let verdicts: Vec<Verdict> = sums
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let n = i + 1;
            if n % 2 == 1 {
                // odd: upper bound
                if *s >= variance - eff_tol {
                    Verdict::UpperOk
                } else {
                    pass = false;
                    Verdict::Violated(variance - eff_tol - s)
                }
            } else if *s <= variance + eff_tol {
                Verdict::LowerOk
            } else {
                pass = false;
                Verdict::Violated(s - variance - eff_tol)
            }
        })
        .collect();
    Ok(BoundReport {
        potential: pot.clone(),
        f: f.clone(),
        depth,
        terms,
        partial_sums: sums,
        variance,
        tol: eff_tol,
        verdicts,
        pass,
    })
}

/// Equality-direction check for `f = V'` (polynomial potentials only):
/// `Var(V') = T_1 = integral of V'' d(mu)`, and the second reduced term of
/// the cascade vanishes identically.
#[derive(Clone, Debug, Serialize)]
pub struct EqualityCaseReport {
    pub variance: f64,
    pub first_term: f64,
    pub difference: f64,
    pub tol: f64,
    pub rho2_is_zero: bool,
    pub pass: bool,
}

pub fn equality_case_check(pot: &Potential, tol: f64) -> Result<EqualityCaseReport> {
    if !num_traits::Zero::is_zero(pot.log_coeff()) {
        return Err(Error::UnsupportedPotentialClass);
    }
    let v_prime = pot.derivative(1);
    let f = v_prime
        .as_polynomial()
        .expect("polynomial potential has polynomial V'")
        .clone();
    let (variance, var_err) = quad::variance_with_error(&f, pot, tol)?;
    let seq = refine::build_sequence(pot, 1)?;
    let terms = compute_terms_with_sequence(&f, &seq, 1, tol)?;
    let first_term = terms[0].value;
    // rho_2 = rho_1' - rho_1 E_1'/E_1 with rho_1 = f' = E_1: exact zero.
    let e1 = &seq.elements[0];
    let rho1 = RationalFunction::from_poly(f.derivative());
    let rho2 = &rho1.derivative() - &(&rho1 * &e1.derivative().div(e1)?);
    let difference = (variance - first_term).abs();
    let eff_tol = tol.max(10.0 * (var_err + terms[0].abs_error));
    Ok(EqualityCaseReport {
        variance,
        first_term,
        difference,
        tol: eff_tol,
        rho2_is_zero: rho2.is_zero(),
        pass: difference <= eff_tol && rho2.is_zero(),
    })
}

/// Gaussian identity at order `n` for polynomial `f`:
///
/// `Var(f) = sum_{k<n} (-1)^{k-1} ||f^(k)||^2 / k!
///           + (-1)^{n-1} / (n-1)! * <(n+L)^{-1} f^(n), f^(n)>`
///
/// with the resolvent evaluated spectrally in the Hermite basis, plus the
/// check that the generic term pipeline reproduces `T_k = ||f^(k)||^2 / k!`.
#[derive(Clone, Debug, Serialize)]
pub struct GaussianIdentityReport {
    pub n: usize,
    pub variance: f64,
    pub series_value: f64,
    pub resolvent: f64,
    pub identity_defect: f64,
    pub max_term_defect: f64,
    pub tol: f64,
    pub pass: bool,
}

pub fn gaussian_identity_check(f: &Polynomial, n: usize, tol: f64) -> Result<GaussianIdentityReport> {
    let deg = f.degree().unwrap_or(0);
    assert!(n >= 1 && n <= deg + 1, "order out of range");
    let pot = Potential::gaussian();
    let z = quad::normalizer(&pot, tol)?;
    let variance = quad::variance_direct(f, &pot, tol)?;

    // ||f^(k)||^2 by quadrature, k = 1..n-1
    let mut norms = Vec::new();
    let mut d = f.clone();
    for _ in 1..=n {
        d = d.derivative();
        norms.push(d.clone());
    }
    // after the loop d = f^(n); norms[k-1] = f^(k)
    let mut series_value = 0.0;
    let mut factorial = 1.0f64;
    for (idx, fk) in norms[..n - 1].iter().enumerate() {
        let k = idx + 1;
        factorial *= k as f64;
        let sq = RationalFunction::from_poly(fk * fk);
        let norm2 = quad::integrate(&sq, &pot, tol)?.value / z;
        series_value += if k % 2 == 1 { 1.0 } else { -1.0 } * norm2 / factorial;
    }
    let f_n = norms[n - 1].clone();
    let resolvent = hermite::resolvent_quadratic_form(&hermite::expand(&f_n), n);
    let fact_n_minus_1 = (1..n).map(|k| k as f64).product::<f64>();
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let with_remainder = series_value + sign * resolvent / fact_n_minus_1;
    let identity_defect = (variance - with_remainder).abs();

    // generic pipeline reproduces T_k = ||f^(k)||^2 / k!
    let depth = deg.min(6).max(1);
    let terms = compute_terms(f, &pot, depth, tol)?;
    let mut max_term_defect = 0.0f64;
    let mut factorial = 1.0f64;
    for (idx, term) in terms.iter().enumerate() {
        let k = idx + 1;
        factorial *= k as f64;
        let fk = norms.get(k - 1).cloned().unwrap_or_else(|| {
            let mut d = f.clone();
            for _ in 0..k {
                d = d.derivative();
            }
            d
        });
        let sq = RationalFunction::from_poly(&fk * &fk);
        let norm2 = quad::integrate(&sq, &pot, tol)?.value / z;
        max_term_defect = max_term_defect.max((term.value - norm2 / factorial).abs());
    }
    let eff_tol = tol.max(1e-8);
    Ok(GaussianIdentityReport {
        n,
        variance,
        series_value: with_remainder,
        resolvent,
        identity_defect,
        max_term_defect,
        tol: eff_tol,
        pass: identity_defect <= eff_tol && max_term_defect <= eff_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rat_int};

    fn gaussian() -> Potential {
        Potential::gaussian()
    }

    fn quartic(a: (i64, i64), b: (i64, i64)) -> Potential {
        Potential::new(
            Polynomial::new(vec![
                rat_int(0),
                rat_int(0),
                rat(a.0, 2 * a.1),
                rat_int(0),
                rat(b.0, 4 * b.1),
            ]),
            rat_int(0),
        )
        .unwrap()
    }

    #[test]
    fn gaussian_cubic_terms() {
        // frozen from the Gaussian moment oracle: E x^4 = 3, E x^2 = 1:
        // T_1 = 9 E x^4 = 27, T_2 = 36 E x^2 / 2 = 18, T_3 = 36 / 6 = 6
        let f = Polynomial::from_integers(&[0, 0, 0, 1]);
        let terms = compute_terms(&f, &gaussian(), 3, 1e-9).unwrap();
        let expect = [27.0, 18.0, 6.0];
        for (t, e) in terms.iter().zip(expect) {
            assert!((t.value - e).abs() < 1e-8, "{} vs {e}", t.value);
        }
    }

    #[test]
    fn trivial_terms() {
        let terms = compute_terms(&Polynomial::from_integers(&[0, 1]), &gaussian(), 1, 1e-9).unwrap();
        assert!((terms[0].value - 1.0).abs() < 1e-9);
        let zeros = compute_terms(&Polynomial::one(), &quartic((1, 1), (1, 2)), 2, 1e-9).unwrap();
        assert!(zeros.iter().all(|t| t.value.abs() < 1e-12));
    }

    #[test]
    fn terms_error_when_sequence_exhausted() {
        // quartic(1, 1/2): E_3 is not positive
        let f = Polynomial::from_integers(&[0, 0, 1]);
        assert!(matches!(
            compute_terms(&f, &quartic((1, 1), (1, 2)), 3, 1e-8),
            Err(Error::SequenceExhausted)
        ));
    }

    #[test]
    fn partial_sum_arithmetic() {
        assert_eq!(partial_sums(&[27.0, 18.0, 6.0]), vec![27.0, 9.0, 15.0]);
        assert!(partial_sums(&[]).is_empty());
        assert_eq!(partial_sums(&[5.0]), vec![5.0]);
    }

    #[test]
    fn gaussian_cubic_sandwich_terminates_at_variance() {
        let f = Polynomial::from_integers(&[0, 0, 0, 1]);
        let report = sandwich_check(&f, &gaussian(), 3, 1e-9).unwrap();
        assert!(report.pass);
        assert!((report.variance - 15.0).abs() < 1e-8);
        assert_eq!(report.verdicts[0], Verdict::UpperOk);
        assert_eq!(report.verdicts[1], Verdict::LowerOk);
        assert_eq!(report.verdicts[2], Verdict::UpperOk);
        // S_3 = Var exactly (the series terminates for cubic f)
        assert!((report.partial_sums[2] - report.variance).abs() < 1e-8);
    }

    #[test]
    fn quartic_sandwich_is_strict() {
        let f = Polynomial::from_integers(&[0, 0, 0, 1]);
        let report = sandwich_check(&f, &quartic((1, 1), (1, 10)), 2, 1e-8).unwrap();
        assert!(report.pass);
        assert!(report.partial_sums[0] > report.variance);
        assert!(report.partial_sums[1] < report.variance);
    }

    #[test]
    fn constant_f_passes_trivially() {
        let report = sandwich_check(&Polynomial::one(), &gaussian(), 2, 1e-8).unwrap();
        assert!(report.pass);
        assert!(report.variance.abs() < 1e-9);
        assert!(report.partial_sums.iter().all(|s| s.abs() < 1e-12));
    }

    #[test]
    fn equality_case_quartic() {
        for pot in [quartic((1, 1), (1, 1)), quartic((2, 1), (1, 2))] {
            let report = equality_case_check(&pot, 1e-8).unwrap();
            assert!(report.pass, "report: {report:?}");
            assert!(report.rho2_is_zero);
            assert!(report.difference < 1e-7);
        }
        // independent integration-by-parts oracle: E (V')^2 = E V''
        let pot = quartic((1, 1), (1, 1));
        let z = quad::normalizer(&pot, 1e-10).unwrap();
        let vp = pot.derivative(1);
        let vp2 = &vp * &vp;
        let lhs = quad::integrate(&vp2, &pot, 1e-10).unwrap().value / z;
        let rhs = quad::integrate(&pot.derivative(2), &pot, 1e-10).unwrap().value / z;
        assert!((lhs - rhs).abs() < 1e-8);
    }

    #[test]
    fn equality_case_rejects_log_potentials() {
        let xlog = Potential::new(
            Polynomial::from_literals(&["0", "0", "1/2"]).unwrap(),
            rat(1, 2),
        )
        .unwrap();
        assert!(matches!(
            equality_case_check(&xlog, 1e-8),
            Err(Error::UnsupportedPotentialClass)
        ));
    }

    #[test]
    fn gaussian_identity_examples() {
        // f = x^3, n = 2: 27 - 12 = 15
        let f = Polynomial::from_integers(&[0, 0, 0, 1]);
        let r = gaussian_identity_check(&f, 2, 1e-9).unwrap();
        assert!(r.pass, "{r:?}");
        assert!((r.resolvent - 12.0).abs() < 1e-9);
        assert!((r.variance - 15.0).abs() < 1e-8);

        // f = x^2, n = 2: 4 - 2 = 2
        let f = Polynomial::from_integers(&[0, 0, 1]);
        let r = gaussian_identity_check(&f, 2, 1e-9).unwrap();
        assert!(r.pass);
        assert!((r.resolvent - 2.0).abs() < 1e-9);

        // f = x, n = 2: resolvent vanishes
        let f = Polynomial::from_integers(&[0, 1]);
        let r = gaussian_identity_check(&f, 2, 1e-9).unwrap();
        assert!(r.pass);
        assert!(r.resolvent.abs() < 1e-12);
    }

    #[test]
    fn report_serializes_to_schema() {
        let f = Polynomial::from_integers(&[0, 0, 0, 1]);
        let report = sandwich_check(&f, &gaussian(), 2, 1e-9).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert!(json["terms"][0]["value"].is_number());
        assert!(json["terms"][0]["err"].is_number());
        assert!(json["partial_sums"].is_array());
        assert!(json["pass"].is_boolean());
        assert_eq!(json["verdicts"][0], "upper-ok");
    }
}
