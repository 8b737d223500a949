//! Exact real-root counting via Sturm chains.

use super::intpoly::{self, SamplePoint};
use super::poly::Polynomial;
use super::rational::Rat;
use crate::error::{Error, Result};

/// Interval endpoint for root counting.
#[derive(Clone, Debug)]
pub enum Bound {
    NegInfinity,
    Finite(Rat),
    PosInfinity,
}

impl Bound {
    fn sample(&self) -> SamplePoint<'_> {
        match self {
            Bound::NegInfinity => SamplePoint::NegInfinity,
            Bound::Finite(x) => SamplePoint::Finite(x),
            Bound::PosInfinity => SamplePoint::PosInfinity,
        }
    }
}

/// Number of distinct real roots of `p` in the half-open interval `(lo, hi]`
/// (multiplicities ignored: the square-free part is counted).
pub fn count_real_roots(p: &Polynomial, lo: &Bound, hi: &Bound) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(0);
    }
    let sf = p.squarefree_part();
    let (ip, _) = intpoly::clear_denominators(&sf);
    let chain = intpoly::sturm_chain(&ip);
    let v_lo = intpoly::sign_variations(&chain, lo.sample());
    let v_hi = intpoly::sign_variations(&chain, hi.sample());
    Ok(v_lo.saturating_sub(v_hi))
}

/// All distinct real roots on the whole line.
pub fn count_all_real_roots(p: &Polynomial) -> Result<usize> {
    count_real_roots(p, &Bound::NegInfinity, &Bound::PosInfinity)
}

/// Narrows down one real root of (the square-free part of) `p` to an
/// interval of width at most `width`, starting from the Cauchy bound.
/// Returns `None` when `p` has no real roots.
pub fn isolate_some_root(p: &Polynomial, width: &Rat) -> Result<Option<(Rat, Rat)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = p.squarefree_part();
    let (ip, _) = intpoly::clear_denominators(&sf);
    let chain = intpoly::sturm_chain(&ip);
    let count = |a: &Rat, b: &Rat| {
        intpoly::sign_variations(&chain, SamplePoint::Finite(a))
            .saturating_sub(intpoly::sign_variations(&chain, SamplePoint::Finite(b)))
    };
    let bound = p.root_bound();
    let mut lo = -bound.clone() - Rat::from_integer(1.into());
    let mut hi = bound + Rat::from_integer(1.into());
    if count(&lo, &hi) == 0 {
        return Ok(None);
    }
    let two = Rat::from_integer(2.into());
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        if count(&lo, &mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some((lo, hi)))
}
