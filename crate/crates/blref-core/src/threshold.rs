//! Parameter thresholds for the two example families: locates the boundary
//! where the next refinement element stops being positive, certifying both
//! flanks with Sturm certificates. Probes use exact rational parameters
//! (bisection keeps them dyadic), so the only approximation is the bracket
//! width.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::{rat, rat_int, rat_to_f64, Polynomial, PositivityCertificate, Rat};
use crate::error::{Error, Result};
use crate::par;
use crate::potential::Potential;
use crate::refine::{self, Truncation};

/// The two parameterized families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `V = a x^2/2 + b x^4/4` at `a = 1`, parameter `t = b`;
    /// positivity holds BELOW the threshold.
    QuarticT,
    /// `V = x^2/2 - a log(x^2)`, parameter `a`;
    /// positivity holds ABOVE the threshold.
    XlogA,
}

impl Family {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "quartic" | "quartic-t" => Ok(Family::QuarticT),
            "xlog" | "xlog-a" => Ok(Family::XlogA),
            other => Err(Error::InvalidConfig(format!("unknown family {other:?}"))),
        }
    }

    fn potential(&self, param: &Rat) -> Result<Potential> {
        match self {
            Family::QuarticT => quartic_potential(&rat_int(1), param),
            Family::XlogA => xlog_potential(param),
        }
    }
}

/// `V = a x^2/2 + b x^4/4` with `a > 0`, `b >= 0`.
pub fn quartic_potential(a: &Rat, b: &Rat) -> Result<Potential> {
    if !a.is_positive() || b.is_negative() {
        return Err(Error::UnsupportedPotentialClass);
    }
    Potential::new(
        Polynomial::new(vec![
            Rat::zero(),
            Rat::zero(),
            a / rat_int(2),
            Rat::zero(),
            b / rat_int(4),
        ]),
        Rat::zero(),
    )
}

/// `V = x^2/2 - a log(x^2)` with `a > 0`.
pub fn xlog_potential(a: &Rat) -> Result<Potential> {
    if !a.is_positive() {
        return Err(Error::UnsupportedPotentialClass);
    }
    Potential::new(
        Polynomial::new(vec![Rat::zero(), Rat::zero(), rat(1, 2)]),
        a.clone(),
    )
}

/// Probe outcome at one parameter value: is `E_{n+1}` certified positive
/// (with `E_1..E_n` positive before it), and the certificate that decides it.
fn probe(family: Family, n: usize, param: &Rat) -> Result<(bool, PositivityCertificate)> {
    let pot = family.potential(param)?;
    let seq = refine::build_sequence(&pot, n + 1)?;
    match seq.truncation {
        Truncation::Completed => Ok((true, seq.certificates.last().expect("nonempty").clone())),
        Truncation::PositivityFailedAt(_) => {
            Ok((false, seq.certificates.last().expect("nonempty").clone()))
        }
        Truncation::DepthReached => Err(Error::InvalidConfig(
            "refinement degree guard hit during threshold probe".into(),
        )),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdResult {
    pub family: Family,
    pub n: usize,
    pub bracket: (f64, f64),
    pub t_star: f64,
    pub iterations: u32,
    pub cert_below: PositivityCertificate,
    pub cert_above: PositivityCertificate,
}

/// Bisection on the family parameter over certified positivity. The bracket
/// endpoints must have different positivity status; each probe is exact, so
/// the returned `t_star` is within `tol` of the true threshold. The final
/// flank certificates are reported for both sides.
pub fn positivity_threshold(
    family: Family,
    n: usize,
    bracket: (Rat, Rat),
    tol: f64,
) -> Result<ThresholdResult> {
    assert!(tol > 0.0);
    let (mut lo, mut hi) = bracket;
    if lo >= hi {
        return Err(Error::InvalidBracket);
    }
    let (status_lo, mut cert_lo) = probe(family, n, &lo)?;
    let (status_hi, mut cert_hi) = probe(family, n, &hi)?;
    if status_lo == status_hi {
        return Err(Error::InvalidBracket);
    }
    let two = rat_int(2);
    let mut iterations = 0u32;
    while rat_to_f64(&(&hi - &lo)) > tol {
        let mid = (&lo + &hi) / &two;
        let (status_mid, cert_mid) = probe(family, n, &mid)?;
        if status_mid == status_lo {
            lo = mid;
            cert_lo = cert_mid;
        } else {
            hi = mid;
            cert_hi = cert_mid;
        }
        iterations += 1;
        if iterations > 200 {
            break;
        }
    }
    let t_star = (rat_to_f64(&lo) + rat_to_f64(&hi)) / 2.0;
    Ok(ThresholdResult {
        family,
        n,
        bracket: (rat_to_f64(&lo), rat_to_f64(&hi)),
        t_star,
        iterations,
        cert_below: cert_lo,
        cert_above: cert_hi,
    })
}

/// Default brackets per family and order.
pub fn default_bracket(family: Family, n: usize) -> (Rat, Rat) {
    match family {
        Family::QuarticT => (rat(1, 1000), rat_int(1)),
        Family::XlogA => {
            if n <= 1 {
                (rat(1, 100), rat_int(1))
            } else {
                (rat(1, 10), rat_int(1))
            }
        }
    }
}

/// The unique root in `(0, 1)` of `272 a^3 + 144 a^2 - 855 a + 108`,
/// located by bisection with exact rational sign evaluation.
pub fn log_family_cubic_root(tol: f64) -> f64 {
    let cubic = Polynomial::from_integers(&[108, -855, 144, 272]);
    let mut lo = rat_int(0);
    let mut hi = rat_int(1);
    debug_assert!(cubic.eval_rat(&lo).is_positive());
    debug_assert!(cubic.eval_rat(&hi).is_negative());
    let two = rat_int(2);
    while rat_to_f64(&(&hi - &lo)) > tol {
        let mid = (&lo + &hi) / &two;
        if cubic.eval_rat(&mid).is_positive() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (rat_to_f64(&lo) + rat_to_f64(&hi)) / 2.0
}

/// One cell of a parameter sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepCell {
    pub param: String,
    pub positive: bool,
}

/// Positivity bit per grid parameter; cells are independent and evaluated
/// in parallel, output order follows the grid.
pub fn positivity_sweep(family: Family, n: usize, grid: &[Rat]) -> Result<Vec<SweepCell>> {
    let outcomes = par::map_slice(grid, |param| probe(family, n, param));
    grid.iter()
        .zip(outcomes)
        .map(|(param, outcome)| {
            let (positive, _) = outcome?;
            Ok(SweepCell {
                param: crate::algebra::format_rational(param),
                positive,
            })
        })
        .collect()
}
