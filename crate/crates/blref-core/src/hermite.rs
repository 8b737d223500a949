//! Probabilists' Hermite expansion under the standard Gaussian measure.
//!
//! With `H_0 = 1`, `H_1 = x`, `H_{k+1} = x H_k - k H_{k-1}`, the `H_k` are
//! orthogonal with `||H_k||^2 = k!` and diagonalize the drift Laplacian
//! `L = -D^2 + x D` with eigenvalue `k`. That turns the resolvent quadratic
//! form `<(n + L)^{-1} g, g>` into the exact finite sum
//! `sum_k c_k^2 k! / (n + k)` for polynomial `g`.

use num_traits::Zero;

use crate::algebra::{rat_int, rat_to_f64, Polynomial, Rat};

/// Coefficients of a polynomial in the probabilists' Hermite basis.
#[derive(Clone, Debug)]
pub struct HermiteCoeffs {
    pub coeffs: Vec<f64>,
}

/// Expands `p` exactly in the Hermite basis (rational arithmetic inside,
/// floats out).
pub fn expand(p: &Polynomial) -> HermiteCoeffs {
    HermiteCoeffs {
        coeffs: expand_exact(p).iter().map(rat_to_f64).collect(),
    }
}

/// Exact expansion: `p = sum_k c_k H_k`.
pub fn expand_exact(p: &Polynomial) -> Vec<Rat> {
    if p.is_zero() {
        return Vec::new();
    }
    let deg = p.degree().expect("nonzero");
    // monomial[m][k] = coefficient of H_k in x^m, built from
    // x H_k = H_{k+1} + k H_{k-1}
    let mut monomial: Vec<Vec<Rat>> = vec![vec![rat_int(1)]];
    for m in 1..=deg {
        let prev = &monomial[m - 1];
        let mut next = vec![Rat::zero(); m + 1];
        for (k, c) in prev.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            next[k + 1] += c;
            if k > 0 {
                next[k - 1] += c * rat_int(k as i64);
            }
        }
        monomial.push(next);
    }
    let mut out = vec![Rat::zero(); deg + 1];
    for (m, coeff) in p.coeffs().iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        for (k, c) in monomial[m].iter().enumerate() {
            out[k] += coeff * c;
        }
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// `<(n + L)^{-1} g, g> = sum_k c_k^2 k! / (n + k)` for `g = sum c_k H_k`.
pub fn resolvent_quadratic_form(g: &HermiteCoeffs, n: usize) -> f64 {
    assert!(n >= 1, "resolvent shift must be at least 1");
    let mut factorial = 1.0f64;
    let mut acc = 0.0f64;
    for (k, c) in g.coeffs.iter().enumerate() {
        if k > 0 {
            factorial *= k as f64;
        }
        acc += c * c * factorial / (n as f64 + k as f64);
    }
    acc
}

/// `H_k(x)` by the three-term recurrence (for reconstruction checks).
pub fn hermite_value(k: usize, x: f64) -> f64 {
    let mut h0 = 1.0;
    if k == 0 {
        return h0;
    }
    let mut h1 = x;
    for j in 1..k {
        let h2 = x * h1 - j as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}
