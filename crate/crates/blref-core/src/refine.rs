//! The refinement calculus: the operator
//! `A(E) = (2E'' + 2V'E' - E'^2/E + 4EV'')/4`, the sequence
//! `E_1 = V''`, `E_{n+1} = E_n (1 + A(E_n^{-1}))` with positivity tracking,
//! the reverse-form condition, exact commutation checks, and the
//! square-root-free term series behind the alternating variance bounds.

use serde::ser::SerializeMap;
use serde::Serialize;

use crate::algebra::{
    certify_positive_rf, rat, rat_int, Polynomial, PositivityCertificate, Rat, RationalFunction,
};
use crate::error::{Error, Result};
use crate::potential::Potential;

/// Coefficients of the four terms of `A` and the common scale. The defaults
/// encode `(2E'' + 2V'E' - E'^2/E + 4EV'') / 4`; tests perturb individual
/// entries to prove the identity checks are sensitive to each one.
#[derive(Clone, Debug)]
pub struct OperatorCoefficients {
    pub second_derivative: Rat,
    pub drift: Rat,
    pub log_square: Rat,
    pub mass: Rat,
    pub scale: Rat,
}

impl Default for OperatorCoefficients {
    fn default() -> Self {
        Self {
            second_derivative: rat_int(2),
            drift: rat_int(2),
            log_square: rat_int(-1),
            mass: rat_int(4),
            scale: rat(1, 4),
        }
    }
}

/// `A(E)` with explicit coefficients (the mutation hook).
pub fn refinement_operator_with(
    coeffs: &OperatorCoefficients,
    e: &RationalFunction,
    pot: &Potential,
) -> Result<RationalFunction> {
    if e.is_zero() {
        return Err(Error::DivisionByZeroRationalFunction);
    }
    let e1 = e.derivative();
    let e2 = e1.derivative();
    let v1 = pot.derivative(1);
    let v2 = pot.derivative(2);
    let sq = (&e1 * &e1).div(e)?;
    let mut acc = e2.scale(&coeffs.second_derivative);
    acc = &acc + &(&v1 * &e1).scale(&coeffs.drift);
    acc = &acc + &sq.scale(&coeffs.log_square);
    acc = &acc + &(e * &v2).scale(&coeffs.mass);
    Ok(acc.scale(&coeffs.scale))
}

/// The operator `A` applied to a nonzero rational function.
pub fn refinement_operator(e: &RationalFunction, pot: &Potential) -> Result<RationalFunction> {
    refinement_operator_with(&OperatorCoefficients::default(), e, pot)
}

/// One refinement step: `E_{n+1} = E_n (1 + A(E_n^{-1}))`.
pub fn next_element(e: &RationalFunction, pot: &Potential) -> Result<RationalFunction> {
    next_element_with(&OperatorCoefficients::default(), e, pot)
}

pub fn next_element_with(
    coeffs: &OperatorCoefficients,
    e: &RationalFunction,
    pot: &Potential,
) -> Result<RationalFunction> {
    let a = refinement_operator_with(coeffs, &e.reciprocal()?, pot)?;
    Ok(e * &(&RationalFunction::one() + &a))
}

/// Why a refinement sequence stopped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Truncation {
    /// All requested elements were built and certified positive.
    Completed,
    /// Element `index` (1-based) failed its positivity certificate; it is
    /// retained together with the negative certificate.
    PositivityFailedAt(usize),
    /// The internal degree guard tripped before the requested depth.
    DepthReached,
}

/// Numerator-degree guard: beyond this the Sturm certificates stop being
/// interactive-time and the builder reports `DepthReached` instead.
const MAX_NUMERATOR_DEGREE: usize = 2048;

/// The sequence `E_1 .. E_m` with per-element positivity certificates.
#[derive(Clone, Debug)]
pub struct RefinementSequence {
    pub potential: Potential,
    pub elements: Vec<RationalFunction>,
    pub certificates: Vec<PositivityCertificate>,
    pub truncation: Truncation,
}

impl RefinementSequence {
    /// Number of leading elements with a positive certificate.
    pub fn certified_depth(&self) -> usize {
        self.certificates
            .iter()
            .take_while(|c| c.positive)
            .count()
    }
}

impl Serialize for RefinementSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Element<'a> {
            num: &'a Polynomial,
            den: &'a Polynomial,
            positive: bool,
            #[serde(skip_serializing_if = "Option::is_none")]
            witness: Option<f64>,
        }
        let elements: Vec<Element<'_>> = self
            .elements
            .iter()
            .zip(&self.certificates)
            .map(|(e, c)| Element {
                num: e.num(),
                den: e.den(),
                positive: c.positive,
                witness: c.witness,
            })
            .collect();
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("potential", &self.potential)?;
        map.serialize_entry("elements", &elements)?;
        map.serialize_entry("truncation", &self.truncation)?;
        map.end()
    }
}

/// Iterates the refinement step from `E_1 = V''`, certifying positivity on
/// the potential's domain after every step. Stops at the requested depth, at
/// the first non-positive element (retained with its certificate), or at the
/// degree guard. Errors if the potential is not convex to begin with.
pub fn build_sequence(pot: &Potential, depth: usize) -> Result<RefinementSequence> {
    build_sequence_with(&OperatorCoefficients::default(), pot, depth)
}

pub fn build_sequence_with(
    coeffs: &OperatorCoefficients,
    pot: &Potential,
    depth: usize,
) -> Result<RefinementSequence> {
    assert!(depth >= 1, "depth must be at least 1");
    let first_cert = pot.convexity_certificate()?;
    if !first_cert.positive {
        return Err(Error::NonConvexPotential);
    }
    let mut elements = vec![pot.derivative(2)];
    let mut certificates = vec![first_cert];
    let mut truncation = Truncation::Completed;
    while elements.len() < depth {
        let prev = elements.last().expect("nonempty");
        if prev.num().degree().unwrap_or(0) > MAX_NUMERATOR_DEGREE {
            truncation = Truncation::DepthReached;
            break;
        }
        let next = next_element_with(coeffs, prev, pot)?;
        let cert = certify_positive_rf(&next, pot.domain())?;
        let positive = cert.positive;
        elements.push(next);
        certificates.push(cert);
        if !positive {
            truncation = Truncation::PositivityFailedAt(elements.len());
            break;
        }
    }
    Ok(RefinementSequence {
        potential: pot.clone(),
        elements,
        certificates,
        truncation,
    })
}

/// The expression `3(V''')^2 + 8(V'')^3 - 2 V'''' V'' - 2 V''' V'' V'`,
/// whose strict positivity is the reverse-form condition; returned together
/// with its certificate on the potential's domain.
pub fn reverse_bl_condition(
    pot: &Potential,
) -> Result<(RationalFunction, PositivityCertificate)> {
    let v1 = pot.derivative(1);
    let v2 = pot.derivative(2);
    let v3 = pot.derivative(3);
    let v4 = pot.derivative(4);
    let positive_part = &(&v3 * &v3).scale(&rat_int(3)) + &(&(&v2 * &v2) * &v2).scale(&rat_int(8));
    let negative_part = &(&v4 * &v2).scale(&rat_int(2)) + &(&(&v3 * &v2) * &v1).scale(&rat_int(2));
    let expr = &positive_part - &negative_part;
    let cert = certify_positive_rf(&expr, pot.domain())?;
    Ok((expr, cert))
}

/// Result of the exact commutation checks: the conjugation identity
/// `D E D* = A(E) + E^{1/2} D* D E^{1/2}` (square roots cleared) and the
/// intertwining identity `D L = (L + V'') D`, both applied to a polynomial
/// test function.
#[derive(Clone, Debug)]
pub struct CommutationCheck {
    pub conjugation_defect: RationalFunction,
    pub intertwining_defect: RationalFunction,
}

impl CommutationCheck {
    pub fn passed(&self) -> bool {
        self.conjugation_defect.is_zero() && self.intertwining_defect.is_zero()
    }
}

pub fn commutation_check(
    e: &RationalFunction,
    pot: &Potential,
    phi: &Polynomial,
) -> Result<CommutationCheck> {
    commutation_check_with(&OperatorCoefficients::default(), e, pot, phi)
}

/// Both sides are expanded through independent routes. The left side applies
/// the operators literally; the right side uses `A` plus the expansion of
/// `E^{1/2} D* D E^{1/2}` in which the half powers cancel, leaving only
/// `E`, `E'`, `E''`, and `E'^2/E`:
///
/// `E^{1/2} D* D (E^{1/2} phi) = -E phi'' - E' phi' - E'' phi / 2
///      + (E'^2/E) phi / 4 + V' E phi' + V' E' phi / 2`.
pub fn commutation_check_with(
    coeffs: &OperatorCoefficients,
    e: &RationalFunction,
    pot: &Potential,
    phi: &Polynomial,
) -> Result<CommutationCheck> {
    if e.is_zero() {
        return Err(Error::DivisionByZeroRationalFunction);
    }
    let v1 = pot.derivative(1);
    let v2 = pot.derivative(2);
    let phi_rf = RationalFunction::from_poly(phi.clone());
    let phi1 = RationalFunction::from_poly(phi.derivative());
    let phi2 = RationalFunction::from_poly(phi.derivative().derivative());

    // Left: D(E * (-phi' + V' phi)), the operators applied literally.
    let dstar_phi = &(-&phi1) + &(&v1 * &phi_rf);
    let lhs = (e * &dstar_phi).derivative();

    // Right: A(E) phi + cleared conjugation term.
    let e1 = e.derivative();
    let e2 = e1.derivative();
    let sq = (&e1 * &e1).div(e)?;
    let half = rat(1, 2);
    let quarter = rat(1, 4);
    let conj = &(&(&(-&(e * &phi2)) - &(&e1 * &phi1)) - &(&e2 * &phi_rf).scale(&half))
        + &(&(&sq * &phi_rf).scale(&quarter)
            + &(&(&(&v1 * e) * &phi1) + &(&(&v1 * &e1) * &phi_rf).scale(&half)));
    let rhs = &(&refinement_operator_with(coeffs, e, pot)? * &phi_rf) + &conj;
    let conjugation_defect = &lhs - &rhs;

    // D L phi vs (L + V'') D phi with L phi = -phi'' + V' phi'.
    let l_phi = &(-&phi2) + &(&v1 * &phi1);
    let dl = l_phi.derivative();
    let dphi = phi1.clone();
    let l_dphi = &(-&dphi.derivative().derivative()) + &(&v1 * &dphi.derivative());
    let rhs2 = &l_dphi + &(&v2 * &dphi);
    let intertwining_defect = &dl - &rhs2;

    Ok(CommutationCheck {
        conjugation_defect,
        intertwining_defect,
    })
}

/// The square-root-free factorization of the gradient cascade. Seeding with
/// `u_1 = f'` and iterating `u_{n+1} = E_n^{1/2} D[E_n^{-1} u_n]` gives
/// `u_n = rho_n * prod_{k<n} E_k^{-1/2}` with
///
/// `rho_1 = f'`,
/// `rho_{n+1} = rho_n' - rho_n (E_n'/E_n + (1/2) sum_{k<n} E_k'/E_k)`,
///
/// so every `rho_n` is an exact rational function and the n-th term of the
/// variance expansion is `T_n = integral of g_n d(mu)` with
/// `g_n = rho_n^2 / (E_n prod_{k<n} E_k)`.
#[derive(Clone, Debug)]
pub struct TermSeries {
    pub rho: Vec<RationalFunction>,
    pub integrands: Vec<RationalFunction>,
}

impl TermSeries {
    /// `g_n`, 1-indexed.
    pub fn integrand(&self, n: usize) -> Result<&RationalFunction> {
        if n == 0 || n > self.integrands.len() {
            return Err(Error::IndexOutOfRange(n));
        }
        Ok(&self.integrands[n - 1])
    }
}

/// Builds `rho_1 .. rho_depth` and the term integrands against a certified
/// refinement sequence. `depth` must not exceed the certified prefix.
pub fn build_term_series(
    f: &Polynomial,
    seq: &RefinementSequence,
    depth: usize,
) -> Result<TermSeries> {
    if depth > seq.certified_depth() {
        return Err(Error::SequenceExhausted);
    }
    let half = rat(1, 2);
    let mut rho = Vec::with_capacity(depth);
    let mut integrands = Vec::with_capacity(depth);
    let mut log_deriv_sum = RationalFunction::zero(); // sum_{k<n} E_k'/E_k
    let mut product = RationalFunction::one(); // prod_{k<n} E_k
    let mut current = RationalFunction::from_poly(f.derivative());
    for n in 1..=depth {
        let e_n = &seq.elements[n - 1];
        rho.push(current.clone());
        let denom = e_n * &product;
        integrands.push((&current * &current).div(&denom)?);
        if n == depth {
            break;
        }
        let log_e_n = e_n.derivative().div(e_n)?;
        let drift = &log_e_n + &log_deriv_sum.scale(&half);
        current = &current.derivative() - &(&current * &drift);
        log_deriv_sum = &log_deriv_sum + &log_e_n;
        product = &product * e_n;
    }
    Ok(TermSeries { rho, integrands })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn quartic(a: (i64, i64), b: (i64, i64)) -> Potential {
        let half_a = rat(a.0, 2 * a.1);
        let quarter_b = rat(b.0, 4 * b.1);
        Potential::new(
            Polynomial::new(vec![rat_int(0), rat_int(0), half_a, rat_int(0), quarter_b]),
            rat_int(0),
        )
        .unwrap()
    }

    fn constant_rf(n: i64, d: i64) -> RationalFunction {
        RationalFunction::constant(rat(n, d))
    }

    #[test]
    fn operator_on_constants_is_mass_term() {
        let g = Potential::gaussian();
        // A(1) = V'' = 1 and A(c) = c V'' for constant c
        assert_eq!(refinement_operator(&RationalFunction::one(), &g).unwrap(), RationalFunction::one());
        assert_eq!(
            refinement_operator(&constant_rf(1, 2), &g).unwrap(),
            constant_rf(1, 2)
        );
    }

    #[test]
    fn gaussian_steps_count_upward() {
        let g = Potential::gaussian();
        assert_eq!(next_element(&RationalFunction::one(), &g).unwrap(), constant_rf(2, 1));
        assert_eq!(next_element(&constant_rf(2, 1), &g).unwrap(), constant_rf(3, 1));
    }

    #[test]
    fn gaussian_sequence_is_the_integers() {
        let g = Potential::gaussian();
        let seq = build_sequence(&g, 8).unwrap();
        assert_eq!(seq.truncation, Truncation::Completed);
        assert_eq!(seq.certified_depth(), 8);
        for (i, e) in seq.elements.iter().enumerate() {
            assert_eq!(e, &constant_rf(i as i64 + 1, 1), "element {}", i + 1);
        }
    }

    #[test]
    fn quartic_second_element_sign_depends_on_parameters() {
        // E_2(0) = (2a^3 - 3ab)/a^2: negative at a = b = 1
        let e1 = RationalFunction::from_poly(Polynomial::from_integers(&[1, 0, 3]));
        let e2 = next_element(&e1, &quartic((1, 1), (1, 1))).unwrap();
        assert!(e2.eval_rat(&rat_int(0)).unwrap() < Rat::zero());

        // 3b < 2a^2 holds for b = 1/2, a = 1: two certified elements
        let seq = build_sequence(&quartic((1, 1), (1, 2)), 2).unwrap();
        assert_eq!(seq.truncation, Truncation::Completed);

        // but the next threshold (sqrt(3)-1)/3 ~ 0.244 < 1/2 kills E_3
        let seq3 = build_sequence(&quartic((1, 1), (1, 2)), 3).unwrap();
        assert_eq!(seq3.truncation, Truncation::PositivityFailedAt(3));
        assert_eq!(seq3.certified_depth(), 2);
        assert!(!seq3.certificates[2].positive);
    }

    #[test]
    fn non_convex_potential_is_rejected() {
        let double_well = Potential::new(
            Polynomial::from_literals(&["0", "0", "-1/2", "0", "1/4"]).unwrap(),
            rat_int(0),
        )
        .unwrap();
        assert!(matches!(
            build_sequence(&double_well, 3),
            Err(Error::NonConvexPotential)
        ));
    }

    #[test]
    fn quartic_e2_numerator_matches_sextic_family() {
        // num(E_2) is proportional (positive rational factor) to
        // 2a^3 - 3ab + (15a^2 b + 18 b^2) x^2 + 42 a b^2 x^4 + 45 b^3 x^6.
        // The coefficients are polynomials in (a, b) of degree <= 3 in each
        // variable; exact agreement on a 5x5 rational grid pins down the
        // identity symbolically.
        for (an, ad) in [(1i64, 1i64), (2, 1), (3, 1), (1, 2), (5, 3)] {
            for (bn, bd) in [(1i64, 1i64), (1, 2), (1, 3), (2, 1), (3, 4)] {
                let a = rat(an, ad);
                let b = rat(bn, bd);
                let pot = Potential::new(
                    Polynomial::new(vec![
                        rat_int(0),
                        rat_int(0),
                        &a / rat_int(2),
                        rat_int(0),
                        &b / rat_int(4),
                    ]),
                    rat_int(0),
                )
                .unwrap();
                let seq = build_sequence(&pot, 2).unwrap();
                let e2 = &seq.elements[1];
                let sextic = Polynomial::new(vec![
                    &(&a * &a * &a) * rat_int(2) - &(&a * &b) * rat_int(3),
                    rat_int(0),
                    &(&a * &a * &b) * rat_int(15) + &(&b * &b) * rat_int(18),
                    rat_int(0),
                    &(&a * &b * &b) * rat_int(42),
                    rat_int(0),
                    &(&b * &b * &b) * rat_int(45),
                ]);
                // proportionality with a positive factor
                let lead_num = e2.num().leading_coeff().unwrap().clone();
                let lead_sex = sextic.leading_coeff().unwrap().clone();
                let factor = &lead_num / &lead_sex;
                assert!(factor > Rat::zero(), "factor must be positive");
                assert_eq!(e2.num(), &sextic.scale(&factor), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn reverse_condition_examples() {
        // Gaussian: only 8 (V'')^3 survives
        let (expr, cert) = reverse_bl_condition(&Potential::gaussian()).unwrap();
        assert_eq!(expr, constant_rf(8, 1));
        assert!(cert.positive);

        // quartic(1,1): fails at the origin
        let (_, cert) = reverse_bl_condition(&quartic((1, 1), (1, 1))).unwrap();
        assert!(!cert.positive);

        // xlog(a): numerator proportional to 4a^3 - 3a x^2 + 12a^2 x^2 + 7a x^4 + x^6
        let a = rat(1, 2);
        let pot = Potential::new(
            Polynomial::from_literals(&["0", "0", "1/2"]).unwrap(),
            a.clone(),
        )
        .unwrap();
        let (expr, cert) = reverse_bl_condition(&pot).unwrap();
        let target = Polynomial::new(vec![
            &(&a * &a * &a) * rat_int(4),
            rat_int(0),
            &(&a * &a) * rat_int(12) - &a * rat_int(3),
            rat_int(0),
            &a * rat_int(7),
            rat_int(0),
            rat_int(1),
        ]);
        let factor = expr.num().leading_coeff().unwrap() / target.leading_coeff().unwrap();
        assert!(factor > Rat::zero());
        assert_eq!(expr.num(), &target.scale(&factor));
        // a = 1/2 is above the positivity threshold ~0.1299
        assert!(cert.positive);
    }

    #[test]
    fn reverse_condition_equals_scaled_refinement_step() {
        // 4 (V'')^3 (1 + A((V'')^-1)) equals the displayed expression exactly.
        let potentials = vec![
            Potential::gaussian(),
            quartic((1, 1), (1, 1)),
            quartic((2, 1), (1, 2)),
            quartic((3, 2), (2, 3)),
            Potential::new(
                Polynomial::from_literals(&["0", "0", "1/2"]).unwrap(),
                rat(1, 2),
            )
            .unwrap(),
        ];
        for pot in potentials {
            let v2 = pot.derivative(2);
            let cube = &(&v2 * &v2) * &v2;
            let step = &RationalFunction::one()
                + &refinement_operator(&v2.reciprocal().unwrap(), &pot).unwrap();
            let lhs = (&cube * &step).scale(&rat_int(4));
            let (rhs, _) = reverse_bl_condition(&pot).unwrap();
            assert_eq!(lhs, rhs, "potential {pot}");
        }
    }

    #[test]
    fn commutation_identities_hold_exactly() {
        let e = RationalFunction::new(
            Polynomial::from_integers(&[1, 2, 3]),
            Polynomial::from_integers(&[2, 0, 1]),
        )
        .unwrap();
        let pot = quartic((2, 1), (1, 1));
        let phi = Polynomial::from_integers(&[0, 1, -2, 0, 1]);
        let check = commutation_check(&e, &pot, &phi).unwrap();
        assert!(check.passed(), "defect: {:?}", check.conjugation_defect);

        // trivial case E = 1 reduces to A(1) = V''
        let check = commutation_check(&RationalFunction::one(), &Potential::gaussian(), &Polynomial::from_integers(&[0, 0, 1])).unwrap();
        assert!(check.passed());
    }

    #[test]
    fn perturbed_operator_breaks_commutation() {
        let e = RationalFunction::from_poly(Polynomial::from_integers(&[1, 0, 2]));
        let pot = quartic((1, 1), (1, 2));
        let phi = Polynomial::from_integers(&[0, 0, 1]);
        for field in 0..5 {
            let mut coeffs = OperatorCoefficients::default();
            match field {
                0 => coeffs.second_derivative = rat_int(3),
                1 => coeffs.drift = rat_int(3),
                2 => coeffs.log_square = rat_int(-2),
                3 => coeffs.mass = rat_int(3),
                _ => coeffs.scale = rat(1, 3),
            }
            let check = commutation_check_with(&coeffs, &e, &pot, &phi).unwrap();
            assert!(!check.passed(), "perturbation {field} went undetected");
        }
    }

    #[test]
    fn term_series_gaussian_derivatives() {
        // With all E_k constant the recursion reduces to rho_n = f^(n).
        let g = Potential::gaussian();
        let seq = build_sequence(&g, 3).unwrap();
        let f = Polynomial::from_integers(&[0, 0, 0, 1]); // x^3
        let series = build_term_series(&f, &seq, 3).unwrap();
        assert_eq!(series.rho[0], RationalFunction::from_poly(Polynomial::from_integers(&[0, 0, 3])));
        assert_eq!(series.rho[1], RationalFunction::from_poly(Polynomial::from_integers(&[0, 6])));
        assert_eq!(series.rho[2], RationalFunction::from_poly(Polynomial::from_integers(&[6])));
        // g_1 = 9x^4, g_2 = 36x^2/2 = 18x^2, g_3 = 36/6 = 6
        assert_eq!(series.integrand(1).unwrap(), &RationalFunction::from_poly(Polynomial::from_integers(&[0, 0, 0, 0, 9])));
        assert_eq!(series.integrand(2).unwrap(), &RationalFunction::from_poly(Polynomial::from_integers(&[0, 0, 18])));
        assert_eq!(series.integrand(3).unwrap(), &constant_rf(6, 1));
        assert!(series.integrand(0).is_err());
        assert!(series.integrand(4).is_err());
    }

    #[test]
    fn term_series_constant_f_vanishes() {
        let seq = build_sequence(&quartic((1, 1), (1, 2)), 2).unwrap();
        let series = build_term_series(&Polynomial::from_integers(&[7]), &seq, 2).unwrap();
        assert!(series.rho.iter().all(|r| r.is_zero()));
    }

    #[test]
    fn term_series_depth_is_guarded() {
        let seq = build_sequence(&quartic((1, 1), (1, 2)), 3).unwrap(); // E_3 fails
        let f = Polynomial::from_integers(&[0, 1]);
        assert!(build_term_series(&f, &seq, 2).is_ok());
        assert!(matches!(
            build_term_series(&f, &seq, 3),
            Err(Error::SequenceExhausted)
        ));
    }

    #[test]
    fn quartic_rho2_closed_form() {
        // quartic(1, 1/10), f = x^2:
        // rho_2 = 2 - 2x * (6x/10) / (1 + 3x^2/10), and the recursion agrees
        // with a finite-difference evaluation of u_2 = E_1^{1/2} D[E_1^{-1} u_1].
        let pot = quartic((1, 1), (1, 10));
        let seq = build_sequence(&pot, 2).unwrap();
        let f = Polynomial::from_integers(&[0, 0, 1]);
        let series = build_term_series(&f, &seq, 2).unwrap();
        let e1 = &seq.elements[0];
        let expected = &(&RationalFunction::constant(rat_int(2))
            - &(&RationalFunction::from_poly(Polynomial::from_integers(&[0, 2])) * &e1.derivative().div(e1).unwrap()));
        assert_eq!(&series.rho[1], expected);

        let h = 1e-6;
        let e1f = |x: f64| e1.eval_f64(x).unwrap();
        let u1 = |x: f64| 2.0 * x;
        let u2 = |x: f64| {
            e1f(x).sqrt() * (u1(x + h) / e1f(x + h) - u1(x - h) / e1f(x - h)) / (2.0 * h)
        };
        for &x in &[0.3, 1.1, 2.7] {
            // u_2 = rho_2 * E_1^{-1/2}
            let exact = series.rho[1].eval_f64(x).unwrap() / e1f(x).sqrt();
            let fd = u2(x);
            assert!(
                (fd - exact).abs() <= 1e-6 * exact.abs().max(1.0),
                "x={x}: {fd} vs {exact}"
            );
        }
    }

    #[test]
    fn equality_direction_rho2_vanishes_for_f_eq_v_prime() {
        // f = V' makes rho_2 = E_1' - E_1 (E_1'/E_1) = 0 exactly.
        let pot = quartic((1, 1), (1, 1));
        let seq = build_sequence(&pot, 1).unwrap();
        let f = Polynomial::from_integers(&[0, 1, 0, 1]); // x + x^3 = V'
        // build rho_2 by hand: one extra step beyond the certified sequence
        let series = build_term_series(&f, &seq, 1).unwrap();
        let e1 = &seq.elements[0];
        let rho2 = &series.rho[0].derivative()
            - &(&series.rho[0] * &e1.derivative().div(e1).unwrap());
        assert!(rho2.is_zero());
    }

    #[test]
    fn sequence_serialization_shape() {
        let seq = build_sequence(&Potential::gaussian(), 2).unwrap();
        let json = serde_json::to_value(&seq).unwrap();
        assert_eq!(json["truncation"], "completed");
        assert_eq!(json["elements"][0]["num"], serde_json::json!(["1"]));
        assert_eq!(json["elements"][1]["num"], serde_json::json!(["2"]));
        assert_eq!(json["elements"][0]["positive"], true);
    }
}
