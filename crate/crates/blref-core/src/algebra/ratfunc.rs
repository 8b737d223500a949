//! Rational functions in canonical form.
//!
//! Invariants: the denominator is nonzero and monic, numerator and
//! denominator are coprime, and zero is `0/1`. Canonical form makes
//! coefficient-wise equality a sound equality test, which the exact
//! identity checks in this crate rely on throughout.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::Polynomial;
use super::rational::{rat_to_f64, Rat};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Canonicalizes `num/den`; errors on a zero denominator.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            let (n, _) = num.div_rem(&g).expect("gcd divides numerator");
            let (d, _) = den.div_rem(&g).expect("gcd divides denominator");
            (n, d)
        };
        let lead = den.leading_coeff().expect("nonzero denominator").clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(p)` if the denominator is 1.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn reciprocal(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroRationalFunction);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZeroRationalFunction);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Exact quotient-rule derivative, canonical form.
    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let den = &self.den * &self.den;
        Self::new(num, den).expect("denominator square is nonzero")
    }

    /// Exact evaluation; errors with the pole location if `den(x) = 0`.
    pub fn eval_rat(&self, x: &Rat) -> Result<Rat> {
        let d = self.den.eval_rat(x);
        if d.is_zero() {
            return Err(Error::PoleAt(super::rational::format_rational(x)));
        }
        Ok(self.num.eval_rat(x) / d)
    }

    /// Floating evaluation; errors only when the denominator is exactly zero
    /// in `f64` arithmetic.
    pub fn eval_f64(&self, x: f64) -> Result<f64> {
        let d = self.den.eval_f64(x);
        if d == 0.0 {
            return Err(Error::PoleAt(format!("{x}")));
        }
        Ok(self.num.eval_f64(x) / d)
    }

    /// Order of vanishing at the origin: positive for zeros, negative for
    /// poles. Zero input gives 0.
    pub fn valuation_at_zero(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        let (vn, _) = self.num.strip_x_power();
        let (vd, _) = self.den.strip_x_power();
        vn as i64 - vd as i64
    }

    /// The polynomial `num * den`, which carries the sign of the rational
    /// function wherever it is defined (and vanishes on its zeros and poles).
    pub fn sign_polynomial(&self) -> Polynomial {
        &self.num * &self.den
    }

    /// Scalar multiple. Scaling the numerator keeps the form canonical.
    pub fn scale(&self, c: &Rat) -> Self {
        use num_traits::Zero as _;
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RationalFunction::new(num, den).expect("product of nonzero denominators")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RationalFunction::new(num, den).expect("product of nonzero denominators")
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        // Cross-cancel before multiplying to keep intermediate degrees down.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (n1, d2) = if g1.degree() == Some(0) {
            (self.num.clone(), rhs.den.clone())
        } else {
            (
                self.num.div_rem(&g1).expect("gcd divides").0,
                rhs.den.div_rem(&g1).expect("gcd divides").0,
            )
        };
        let (n2, d1) = if g2.degree() == Some(0) {
            (rhs.num.clone(), self.den.clone())
        } else {
            (
                rhs.num.div_rem(&g2).expect("gcd divides").0,
                self.den.div_rem(&g2).expect("gcd divides").0,
            )
        };
        RationalFunction::new(&n1 * &n2, &d1 * &d2).expect("nonzero denominator")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction[{}]", self)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RfRepr {
    num: Polynomial,
    den: Polynomial,
}

impl Serialize for RationalFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RfRepr {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = RfRepr::deserialize(d)?;
        RationalFunction::new(repr.num, repr.den).map_err(serde::de::Error::custom)
    }
}

/// Floating-point conversion used by the quadrature layer: `num`, `den`
/// coefficients as `f64`, ascending.
pub fn to_f64_parts(r: &RationalFunction) -> (Vec<f64>, Vec<f64>) {
    (
        r.num().coeffs().iter().map(rat_to_f64).collect(),
        r.den().coeffs().iter().map(rat_to_f64).collect(),
    )
}
