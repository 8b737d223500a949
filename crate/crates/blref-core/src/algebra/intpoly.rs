//! Integer-polynomial workhorse behind gcd and Sturm chains.
//!
//! Rational polynomials are cleared to primitive integer form, after which
//! all heavy lifting (pseudo-division, primitive remainder sequences, sign
//! evaluation) runs in `BigInt` with contents removed at every step. A
//! single-prime modular gcd screen lets the common coprime case skip the
//! remainder sequence entirely.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Polynomial;
use super::rational::Rat;

/// Ascending coefficients, trailing zeros stripped; empty = zero.
pub type IntPoly = Vec<BigInt>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn degree(p: &IntPoly) -> Option<usize> {
    p.len().checked_sub(1)
}

/// Clears denominators and removes the content; returns the primitive
/// integer polynomial together with the positive rational `s` such that
/// `input = primitive / s` ... i.e. `primitive = s * input`.
pub fn clear_denominators(p: &Polynomial) -> (IntPoly, Rat) {
    if p.is_zero() {
        return (Vec::new(), Rat::one());
    }
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if content.is_zero() {
        content = BigInt::one();
    }
    let prim: IntPoly = ints.iter().map(|c| c / &content).collect();
    (trim(prim), Rat::new(lcm, content))
}

pub fn to_rational(p: &IntPoly) -> Polynomial {
    Polynomial::new(p.iter().map(|c| Rat::from_integer(c.clone())).collect())
}

fn content(p: &IntPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}

pub fn primitive_part(p: &IntPoly) -> IntPoly {
    let c = content(p);
    if c.is_one() {
        return p.clone();
    }
    p.iter().map(|x| x / &c).collect()
}

pub fn derivative(p: &IntPoly) -> IntPoly {
    if p.len() <= 1 {
        return Vec::new();
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// Lazy pseudo-remainder of `f` by `g`: returns `(r, m)` where
/// `r = lc(g)^m * f  mod  g` and `m` counts how many times the working
/// remainder was scaled by `lc(g)` (at most `deg f - deg g + 1`).
/// Panics if `g` is zero.
fn pseudo_rem(f: &IntPoly, g: &IntPoly) -> (IntPoly, u32) {
    let dg = degree(g).expect("pseudo_rem by zero");
    let lead = g.last().expect("nonzero").clone();
    let mut rem = f.clone();
    let mut scaled = 0u32;
    while let Some(dr) = degree(&rem) {
        if dr < dg {
            break;
        }
        let top = rem.last().expect("nonzero").clone();
        // rem = lead * rem - top * x^(dr-dg) * g; leading terms cancel.
        for c in rem.iter_mut() {
            *c *= &lead;
        }
        scaled += 1;
        let shift = dr - dg;
        for (j, gc) in g.iter().enumerate() {
            rem[shift + j] -= &top * gc;
        }
        rem = trim(rem);
    }
    (rem, scaled)
}

/// Primitive-PRS gcd of two integer polynomials; result is primitive with a
/// positive leading coefficient.
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut f = primitive_part(a);
    let mut g = primitive_part(b);
    if degree(&f) < degree(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let (r, _) = pseudo_rem(&f, &g);
        f = g;
        g = primitive_part(&r);
    }
    if f.last().is_some_and(|c| c.is_negative()) {
        f.iter_mut().for_each(|c| *c = -&*c);
    }
    f
}

/// Sturm-style chain for a square-free polynomial: each element is a
/// positive-rational multiple of the classical `p_{k+1} = -rem(p_{k-1}, p_k)`
/// sequence, so sign-variation counts are preserved exactly.
pub fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![primitive_part(p), primitive_part(&derivative(p))];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        if degree(&chain[n - 1]) == Some(0) {
            break;
        }
        let f = &chain[n - 2];
        let g = &chain[n - 1];
        // pseudo_rem returns lc(g)^m * rem; an odd power of a negative
        // leading coefficient flips the sign of the true remainder, which
        // must be undone so each element stays a positive multiple of the
        // classical -rem.
        let (raw, m) = pseudo_rem(f, g);
        let flipped = g.last().expect("nonzero").is_negative() && m % 2 == 1;
        let mut r = primitive_part(&raw);
        if r.is_empty() {
            break;
        }
        if !flipped {
            r.iter_mut().for_each(|c| *c = -&*c);
        }
        chain.push(r);
    }
    chain
}

/// Where the sign of a chain element is needed.
#[derive(Clone, Copy, Debug)]
pub enum SamplePoint<'a> {
    NegInfinity,
    Finite(&'a Rat),
    PosInfinity,
}

/// Exact sign of `p` at a sample point. Finite rational points are evaluated
/// homogeneously in integers, so no rounding is involved.
pub fn sign_at(p: &IntPoly, at: SamplePoint<'_>) -> i32 {
    let Some(d) = degree(p) else { return 0 };
    match at {
        SamplePoint::PosInfinity => sign_of(&p[d]),
        SamplePoint::NegInfinity => {
            let s = sign_of(&p[d]);
            if d % 2 == 0 {
                s
            } else {
                -s
            }
        }
        SamplePoint::Finite(x) => {
            // Homogenized Horner: sign(p(a/b)) = sign(sum c_i a^i b^(d-i)).
            let a = x.numer();
            let b = x.denom();
            let mut acc = p[d].clone();
            let mut bpow = BigInt::one();
            for i in (0..d).rev() {
                bpow *= b;
                acc = acc * a + &p[i] * &bpow;
            }
            sign_of(&acc)
        }
    }
}

fn sign_of(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

/// Number of sign variations of the chain at a point, zeros skipped.
pub fn sign_variations(chain: &[IntPoly], at: SamplePoint<'_>) -> usize {
    let mut last = 0i32;
    let mut changes = 0usize;
    for p in chain {
        let s = sign_at(p, at);
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

const SCREEN_PRIMES: [u64; 3] = [2_147_483_629, 2_147_483_587, 2_147_483_563];

/// Modular coprimality screen: if the images mod `p` (with non-vanishing
/// leading coefficients) have gcd 1, the rational gcd is 1. Returns `false`
/// when inconclusive.
pub fn coprime_mod_p(a: &IntPoly, b: &IntPoly) -> bool {
    for p in SCREEN_PRIMES {
        let (Some(am), Some(bm)) = (reduce_mod(a, p), reduce_mod(b, p)) else {
            continue;
        };
        if let Some(g) = gcd_mod(am, bm, p) {
            return g == 0;
        }
    }
    false
}

/// Reduces mod `p`; `None` if the leading coefficient vanishes (degree drop
/// would make the screen unsound).
fn reduce_mod(a: &IntPoly, p: u64) -> Option<Vec<u64>> {
    let pb = BigInt::from(p);
    let out: Vec<u64> = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(&pb);
            r.to_u64().expect("residue fits")
        })
        .collect();
    if out.last().is_some_and(|&c| c == 0) && !a.is_empty() {
        return None;
    }
    Some(out)
}

/// Degree of gcd mod p via Euclid in Z_p; `None` on an unexpected degenerate.
fn gcd_mod(mut f: Vec<u64>, mut g: Vec<u64>, p: u64) -> Option<usize> {
    let trim_u = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim_u(&mut f);
    trim_u(&mut g);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let lead = *g.last()?;
        let inv = mod_inv(lead, p)?;
        while f.len() >= g.len() && !f.is_empty() {
            let top = *f.last().expect("nonzero");
            if top == 0 {
                f.pop();
                continue;
            }
            let q = mulmod(top, inv, p);
            let shift = f.len() - g.len();
            for (j, &gc) in g.iter().enumerate() {
                let sub = mulmod(q, gc, p);
                let idx = shift + j;
                f[idx] = (f[idx] + p - sub) % p;
            }
            trim_u(&mut f);
        }
        std::mem::swap(&mut f, &mut g);
        trim_u(&mut g);
    }
    Some(f.len().saturating_sub(1))
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inv(a: u64, p: u64) -> Option<u64> {
    // extended Euclid; p prime
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(((t % p as i128 + p as i128) % p as i128) as u64)
}
