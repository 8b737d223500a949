//! Potentials `V(x) = poly(x) - a log(x^2)` with rational-function
//! derivatives, driving the weight `e^{-V}`.
//!
//! The class is restricted so that every derivative `V^(k)` is an exact
//! rational function: a polynomial part (even degree >= 2, positive leading
//! coefficient, so the measure is finite) plus an optional `-a log(x^2)`
//! term with `a >= 0`. For `a > 0` the weight behaves like `x^{2a}` near the
//! origin and the natural domain is the punctured line.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{
    certify_positive_rf, format_rational, rat_int, rat_to_f64, Domain, Polynomial,
    PositivityCertificate, Rat, RationalFunction,
};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Potential {
    poly_part: Polynomial,
    log_coeff: Rat,
    domain: Domain,
    // ln Z, filled once by the quadrature layer; shared across clones.
    log_norm: Arc<OnceLock<f64>>,
}

impl Potential {
    /// Validates and builds a potential. Rejects non-integrable polynomial
    /// parts (odd degree, degree < 2, non-positive leading coefficient) and
    /// negative log coefficients.
    pub fn new(poly_part: Polynomial, log_coeff: Rat) -> Result<Self> {
        if log_coeff.is_negative() {
            return Err(Error::UnsupportedPotentialClass);
        }
        let Some(deg) = poly_part.degree() else {
            return Err(Error::MeasureNotFinite);
        };
        let lead = poly_part.leading_coeff().expect("nonzero by degree check");
        if deg < 2 || deg % 2 != 0 || !lead.is_positive() {
            return Err(Error::MeasureNotFinite);
        }
        let domain = if log_coeff.is_zero() {
            Domain::AllReals
        } else {
            Domain::RealsMinusOrigin
        };
        Ok(Self {
            poly_part,
            log_coeff,
            domain,
            log_norm: Arc::new(OnceLock::new()),
        })
    }

    /// `V(x) = x^2/2`, the reference Gaussian potential (normalization is
    /// handled numerically, not as a constant in `V`).
    pub fn gaussian() -> Self {
        Self::new(
            Polynomial::from_literals(&["0", "0", "1/2"]).expect("static literals"),
            rat_int(0),
        )
        .expect("gaussian is valid")
    }

    pub fn poly_part(&self) -> &Polynomial {
        &self.poly_part
    }

    pub fn log_coeff(&self) -> &Rat {
        &self.log_coeff
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub(crate) fn log_norm_cell(&self) -> &OnceLock<f64> {
        &self.log_norm
    }

    /// Cached `ln Z` when the normalizer has already been computed.
    pub fn cached_log_norm(&self) -> Option<f64> {
        self.log_norm.get().copied()
    }

    /// Exact k-th derivative of `V` as a rational function (`k >= 1`).
    /// With `a > 0`, `V' = poly' - 2a/x` and higher derivatives follow by
    /// exact differentiation.
    pub fn derivative(&self, k: usize) -> RationalFunction {
        assert!(k >= 1, "derivative order must be at least 1");
        let mut d = if self.log_coeff.is_zero() {
            RationalFunction::from_poly(self.poly_part.derivative())
        } else {
            // poly' - 2a/x = (x poly' - 2a) / x
            let two_a = Polynomial::constant(&self.log_coeff * rat_int(2));
            let num = &self.poly_part.derivative().shift_up(1) - &two_a;
            RationalFunction::new(num, Polynomial::from_integers(&[0, 1]))
                .expect("x is a nonzero denominator")
        };
        for _ in 1..k {
            d = d.derivative();
        }
        d
    }

    /// Certificate that `V'' > 0` on the potential's domain.
    pub fn convexity_certificate(&self) -> Result<PositivityCertificate> {
        certify_positive_rf(&self.derivative(2), self.domain)
    }

    /// `log` of the unnormalized weight: `-poly(x) + a log(x^2)`.
    /// At the origin with `a > 0` this is `-inf` (the weight vanishes).
    pub fn log_weight(&self, x: f64) -> f64 {
        let mut v = -self.poly_part.eval_f64(x);
        if !self.log_coeff.is_zero() {
            v += rat_to_f64(&self.log_coeff) * (x * x).ln();
        }
        v
    }

    /// Compact identifier used in reports: the JSON config form.
    pub fn id(&self) -> String {
        serde_json::to_string(self).expect("potential serializes")
    }
}

impl PartialEq for Potential {
    fn eq(&self, other: &Self) -> bool {
        self.poly_part == other.poly_part && self.log_coeff == other.log_coeff
    }
}

impl Eq for Potential {}

impl fmt::Debug for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Potential[{}]", self)
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V(x) = {}", self.poly_part)?;
        if !self.log_coeff.is_zero() {
            write!(f, " - {} log(x^2)", format_rational(&self.log_coeff))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PotentialRepr {
    poly: Polynomial,
    log_coeff: String,
}

impl Serialize for Potential {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PotentialRepr {
            poly: self.poly_part.clone(),
            log_coeff: format_rational(&self.log_coeff),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Potential {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PotentialRepr::deserialize(d)?;
        let a = crate::algebra::parse_rational(&repr.log_coeff).map_err(D::Error::custom)?;
        Potential::new(repr.poly, a).map_err(D::Error::custom)
    }
}
