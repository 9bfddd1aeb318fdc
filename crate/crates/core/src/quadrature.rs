//! Adaptive Gauss-Legendre quadrature on intervals and on the triangle
//! {0 <= x <= beta, 0 <= y <= beta - x}.
//!
//! Each panel is integrated with a 15-point Gauss-Legendre rule and compared
//! with the sum of the rule over its two halves. A panel is accepted when the
//! difference is below its share of the absolute tolerance, otherwise it is
//! bisected. The integrands are vector valued so that whole tables can be
//! computed from one set of function evaluations.

use crate::error::{Error, Result};
use std::sync::OnceLock;

const ORDER: usize = 15;
const MAX_DEPTH: usize = 40;

/// Nodes and weights of the 15-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre_15() -> &'static ([f64; ORDER], [f64; ORDER]) {
    static RULE: OnceLock<([f64; ORDER], [f64; ORDER])> = OnceLock::new();
    RULE.get_or_init(legendre_rule::<ORDER>)
}

/// Gauss-Legendre nodes via Newton iteration on P_n.
fn legendre_rule<const N: usize>() -> ([f64; N], [f64; N]) {
    let mut x = [0.0; N];
    let mut w = [0.0; N];
    let n = N as f64;
    for i in 0..N {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=N {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

fn panel<const M: usize, F>(f: &mut F, a: f64, b: f64) -> Result<[f64; M]>
where
    F: FnMut(f64) -> Result<[f64; M]>,
{
    let (x, w) = gauss_legendre_15();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = [0.0; M];
    for i in 0..ORDER {
        let v = f(mid + half * x[i])?;
        for m in 0..M {
            acc[m] += w[i] * v[m];
        }
    }
    for m in acc.iter_mut() {
        *m *= half;
    }
    Ok(acc)
}

/// Integrate a fallible vector-valued function over [a, b] to absolute error `tol`.
pub fn try_integrate<const M: usize, F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<[f64; M]>
where
    F: FnMut(f64) -> Result<[f64; M]>,
{
    let mut total = [0.0; M];
    if a == b {
        return Ok(total);
    }
    let whole = panel(&mut f, a, b)?;
    // Work list of (a, b, estimate on [a, b], tolerance share, depth).
    let mut stack = vec![(a, b, whole, tol, 0usize)];
    while let Some((lo, hi, est, tl, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = panel(&mut f, lo, mid)?;
        let right = panel(&mut f, mid, hi)?;
        let mut err: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for m in 0..M {
            let refined = left[m] + right[m];
            err = err.max((refined - est[m]).abs());
            scale = scale.max(refined.abs());
        }
        // Differences at the level of rounding cannot be reduced by bisection.
        let floor = 64.0 * f64::EPSILON * scale;
        if err <= tl || err <= floor {
            for m in 0..M {
                total[m] += left[m] + right[m];
            }
        } else if depth >= MAX_DEPTH {
            return Err(Error::QuadratureNonConvergence { a, b, tol });
        } else {
            stack.push((lo, mid, left, 0.5 * tl, depth + 1));
            stack.push((mid, hi, right, 0.5 * tl, depth + 1));
        }
    }
    Ok(total)
}

/// Integrate a vector-valued function over [a, b] to absolute error `tol`.
pub fn integrate<const M: usize, F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<[f64; M]>
where
    F: FnMut(f64) -> [f64; M],
{
    try_integrate(|x| Ok(f(x)), a, b, tol)
}

/// Integrate f(x, y) over 0 <= x <= beta, 0 <= y <= beta - x as nested
/// one-dimensional adaptive rules (inner variable y).
pub fn integrate_triangle<const M: usize, F>(mut f: F, beta: f64, tol: f64) -> Result<[f64; M]>
where
    F: FnMut(f64, f64) -> [f64; M],
{
    let inner_tol = 0.5 * tol / beta.max(1e-300);
    try_integrate(
        |x| integrate(|y| f(x, y), 0.0, (beta - x).max(0.0), inner_tol),
        0.0,
        beta,
        0.5 * tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rule_is_exact_for_degree_29() {
        let (x, w) = gauss_legendre_15();
        let s: f64 = w.iter().sum();
        assert_relative_eq!(s, 2.0, epsilon = 1e-14);
        let m28: f64 = x.iter().zip(w).map(|(x, w)| w * x.powi(28)).sum();
        assert_relative_eq!(m28, 2.0 / 29.0, epsilon = 1e-14);
    }

    #[test]
    fn smooth_and_oscillatory_integrals() {
        let r = integrate(|x: f64| [x.sin(), (20.0 * x).cos()], 0.0, 3.0, 1e-13).unwrap();
        assert_relative_eq!(r[0], 1.0 - 3f64.cos(), epsilon = 1e-13);
        assert_relative_eq!(r[1], (60f64).sin() / 20.0, epsilon = 1e-13);
    }

    #[test]
    fn peaked_integrand_needs_subdivision() {
        let r = integrate(|x: f64| [1.0 / (1e-4 + x * x)], -1.0, 1.0, 1e-10).unwrap();
        let exact = 2.0 * (1.0 / 1e-2) * (1.0f64 / 1e-2).atan();
        assert_relative_eq!(r[0], exact, max_relative = 1e-10);
    }

    #[test]
    fn non_integrable_singularity_is_reported() {
        let r = integrate(|x: f64| [1.0 / x.abs().max(1e-300)], -1.0, 1.0, 1e-12);
        assert!(matches!(r, Err(Error::QuadratureNonConvergence { .. })));
    }

    #[test]
    fn triangle_moments() {
        let beta = 1.7;
        let r = integrate_triangle(|x, y| [1.0, x * y, (x + 2.0 * y).sin()], beta, 1e-13).unwrap();
        assert_relative_eq!(r[0], beta * beta / 2.0, epsilon = 1e-13);
        assert_relative_eq!(r[1], beta.powi(4) / 24.0, epsilon = 1e-13);
        // Closed form of the last moment.
        let exact = integrate(
            |x: f64| [((x).cos() - (2.0 * beta - x).cos()) / 2.0],
            0.0,
            beta,
            1e-14,
        )
        .unwrap()[0];
        assert_relative_eq!(r[2], exact, epsilon = 1e-13);
    }
}
