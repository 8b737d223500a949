//! Dense univariate polynomials over arbitrary-precision rationals.
//!
//! Coefficients are stored in ascending degree with trailing zeros stripped;
//! the empty coefficient list is the zero polynomial. Degrees stay modest in
//! this crate (a few hundred at the deepest refinement level), so the dense
//! representation with schoolbook multiplication is the right trade-off.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::intpoly;
use super::rational::{format_rational, parse_rational, rat_to_f64, Rat};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, stripping trailing
    /// zeros.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c x^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// Convenience constructor from integer coefficients (ascending).
    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rat::from_integer(BigInt::from(c))).collect())
    }

    /// Parses ascending coefficients given as exact literals (`"p/q"`).
    pub fn from_literals(coeffs: &[&str]) -> Result<Self> {
        let parsed: Result<Vec<Rat>> = coeffs.iter().map(|s| parse_rational(s)).collect();
        Ok(Self::new(parsed?))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Coefficient of `x^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Floating evaluation; coefficients are converted individually so huge
    /// exact values degrade gracefully.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    /// Ascending coefficients converted to `f64`.
    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rat_to_f64).collect()
    }

    /// Euclidean division: returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        let dd = divisor.coeffs.len();
        if self.coeffs.len() < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len() - dd + 1];
        let lead = divisor.coeffs.last().expect("nonzero divisor");
        for i in (0..quot.len()).rev() {
            let top = rem[i + dd - 1].clone();
            if top.is_zero() {
                continue;
            }
            let q = top / lead;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let t = dc * &q;
                rem[i + j] -= t;
            }
            quot[i] = q;
        }
        rem.truncate(dd - 1);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic gcd. Fast modular coprimality screen first, exact primitive
    /// remainder sequence when a common factor is plausible.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return Self::one();
        }
        let (a, _) = intpoly::clear_denominators(self);
        let (b, _) = intpoly::clear_denominators(other);
        if intpoly::coprime_mod_p(&a, &b) {
            return Self::one();
        }
        let g = intpoly::gcd(&a, &b);
        intpoly::to_rational(&g).monic()
    }

    /// Scales so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    /// The square-free part `p / gcd(p, p')`: same distinct roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() || self.degree() == Some(0) {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.monic();
        }
        let (q, _) = self.div_rem(&g).expect("gcd divides");
        q.monic()
    }

    /// Splits off the power of `x` dividing the polynomial:
    /// `p = x^k * cofactor` with `cofactor(0) != 0`.
    pub fn strip_x_power(&self) -> (usize, Self) {
        if self.is_zero() {
            return (0, Self::zero());
        }
        let k = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero polynomial");
        (k, Self::new(self.coeffs[k..].to_vec()))
    }

    /// Cauchy bound: every real root lies in `[-B, B]`.
    pub fn root_bound(&self) -> Rat {
        match self.leading_coeff() {
            None => Rat::one(),
            Some(lead) => {
                let mut m = Rat::zero();
                for c in &self.coeffs[..self.coeffs.len() - 1] {
                    let q = (c / lead).abs();
                    if q > m {
                        m = q;
                    }
                }
                m + Rat::one()
            }
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Polynomial::new(out)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        Polynomial::new(out)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", format_rational(&mag))?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { " " } else { "" })?,
                _ => write!(f, "{}x^{}", if show_coeff { " " } else { "" }, i)?,
            }
        }
        Ok(())
    }
}

/// JSON form mandated by the report schema: an array of exact coefficient
/// strings in ascending degree, e.g. `["0","-3/2","0","1"]`.
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let strings: Vec<String> = Vec::deserialize(deserializer)?;
        let coeffs: Result<Vec<Rat>> = strings.iter().map(|s| parse_rational(s)).collect();
        Ok(Polynomial::new(coeffs.map_err(|e| D::Error::custom(e.to_string()))?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn p(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_integers(coeffs)
    }

    #[test]
    fn trailing_zeros_are_stripped() {
        let q = Polynomial::new(vec![rat(1, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(q.degree(), Some(0));
        assert!(Polynomial::new(vec![rat(0, 1)]).is_zero());
    }

    #[test]
    fn arithmetic_and_eval() {
        let a = p(&[1, 2]); // 1 + 2x
        let b = p(&[-1, 1]); // -1 + x
        assert_eq!(&a * &b, p(&[-1, -1, 2]));
        assert_eq!(&a + &b, p(&[0, 3]));
        assert_eq!((&a * &b).eval_rat(&rat(2, 1)), rat(5, 1));
    }

    #[test]
    fn division() {
        // x^3 + 1 = (x + 1)(x^2 - x + 1)
        let n = p(&[1, 0, 0, 1]);
        let d = p(&[1, 1]);
        let (q, r) = n.div_rem(&d).unwrap();
        assert_eq!(q, p(&[1, -1, 1]));
        assert!(r.is_zero());
        assert!(n.div_rem(&Polynomial::zero()).is_err());
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+2) vs (x-1)(x+3)
        let a = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(a.squarefree_part(), (&p(&[-1, 1]) * &p(&[2, 1])).monic());
        // coprime pair short-circuits through the modular screen
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[-1, 1])), Polynomial::one());
    }

    #[test]
    fn strip_x_power_splits() {
        let q = p(&[0, 0, 3, 1]); // x^2 (3 + x)
        let (k, cof) = q.strip_x_power();
        assert_eq!(k, 2);
        assert_eq!(cof, p(&[3, 1]));
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(p(&[1, -2, 1]).to_string(), "x^2 - 2 x + 1");
        assert_eq!(Polynomial::from_literals(&["0", "-3/2"]).unwrap().to_string(), "-3/2 x");
    }
}
