//! Simultaneous univariate root finding (Aberth–Ehrlich).
//!
//! Initial approximations are spread over circles whose radii come from the
//! upper convex hull of `(k, log|c_k|)`, capped by the Fujiwara bound. Fibers
//! of hypergeometric polynomials often have coefficients spanning thirty
//! orders of magnitude, and a single starting circle converges far too slowly
//! there.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 200;
const STEP_TOLERANCE: f64 = 1e-13;
const ANGLE_OFFSET: f64 = 0.4;

/// All complex roots, with multiplicity, of `c[0] + c[1] z + ... + c[d] z^d`.
///
/// Trailing (highest-degree) zero coefficients are trimmed first. A constant
/// polynomial has no roots and yields an empty list; the all-zero polynomial
/// is an error.
pub fn univariate_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let Some(top) = coeffs.iter().rposition(|c| *c != Complex64::new(0.0, 0.0)) else {
        return Err(Error::Domain("all-zero polynomial has no finite root set".into()));
    };
    if coeffs[..=top].iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::RootFinding("non-finite coefficient".into()));
    }
    let low = coeffs.iter().position(|c| *c != Complex64::new(0.0, 0.0)).unwrap_or(0);
    let mut roots = vec![Complex64::new(0.0, 0.0); low];
    let poly = &coeffs[low..=top];
    match poly.len() {
        1 => {}
        2 => roots.push(-poly[0] / poly[1]),
        _ => roots.extend(aberth(poly)?),
    }
    Ok(roots)
}

/// Residual scale `sum |c_k| |z|^k` used to judge root quality.
pub fn residual_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// Newton correction `p(z)/p'(z)`, evaluated through the reversed polynomial
/// when `|z| > 1` to avoid overflow.
fn newton_ratio(coeffs: &[Complex64], z: Complex64) -> Option<Complex64> {
    let d = coeffs.len() - 1;
    let zero = Complex64::new(0.0, 0.0);
    if z.norm() <= 1.0 {
        let mut p = zero;
        let mut dp = zero;
        for c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        if p == zero {
            return None;
        }
        Some(p / dp)
    } else {
        let w = z.inv();
        let mut q = zero;
        let mut dq = zero;
        for c in coeffs.iter() {
            dq = dq * w + q;
            q = q * w + c;
        }
        if q == zero {
            return None;
        }
        Some(z * q / (q * d as f64 - w * dq))
    }
}

fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let logs: Vec<f64> = coeffs
        .iter()
        .map(|c| if c.norm() > 0.0 { c.norm().ln() } else { f64::NEG_INFINITY })
        .collect();

    // upper hull of (k, log|c_k|)
    let mut hull: Vec<usize> = Vec::with_capacity(d + 1);
    for k in 0..=d {
        if logs[k] == f64::NEG_INFINITY {
            continue;
        }
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b - a) as f64 * (logs[k] - logs[a]) - (k - a) as f64 * (logs[b] - logs[a]);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(k);
    }

    let fujiwara = fujiwara_bound(coeffs);
    let mut guesses = Vec::with_capacity(d);
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        let m = b - a;
        let radius = ((logs[a] - logs[b]) / m as f64).exp().min(fujiwara);
        for j in 0..m {
            let angle = TAU * j as f64 / m as f64 + TAU * a as f64 / d as f64 + ANGLE_OFFSET;
            guesses.push(Complex64::from_polar(radius, angle));
        }
    }
    guesses
}

fn fujiwara_bound(coeffs: &[Complex64]) -> f64 {
    let d = coeffs.len() - 1;
    let lead = coeffs[d].norm();
    let mut bound: f64 = 0.0;
    for k in 1..=d {
        let mut term = (coeffs[d - k].norm() / lead).powf(1.0 / k as f64);
        if k == d {
            term *= 0.5f64.powf(1.0 / d as f64);
        }
        bound = bound.max(term);
    }
    2.0 * bound
}

fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut z = initial_guesses(coeffs);
    let d = z.len();
    let mut done = vec![false; d];
    for _ in 0..MAX_ITERATIONS {
        let mut all_done = true;
        for i in 0..d {
            if done[i] {
                continue;
            }
            let Some(ratio) = newton_ratio(coeffs, z[i]) else {
                done[i] = true;
                continue;
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        repulsion += diff.inv();
                    }
                }
            }
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                return Err(Error::RootFinding("non-finite Aberth step".into()));
            }
            z[i] -= step;
            if step.norm() <= STEP_TOLERANCE * z[i].norm() {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    Ok(z)
}
