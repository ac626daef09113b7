//! Real-coefficient polynomial root finding: balanced companion-matrix
//! eigenvalues as starting points, then simultaneous Aberth–Ehrlich
//! refinement in the requested floating-point type.
//!
//! Coefficient slices are stored lowest power first throughout.

use nalgebra::DMatrix;
use num_complex::{Complex, Complex64};

use crate::error::{Error, Result};

/// Floating-point types the refinement can run in. `Float::epsilon` is not
/// usable for double-double types (some report the smallest normal), so the
/// unit roundoff is supplied explicitly.
pub trait Real: num_traits::Float {
    fn roundoff() -> Self;
}

impl Real for f64 {
    fn roundoff() -> Self {
        f64::EPSILON
    }
}

impl Real for twofloat::TwoFloat {
    fn roundoff() -> Self {
        // 2^-104
        twofloat::TwoFloat::from(4.930380657631324e-32)
    }
}

pub fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

pub fn horner_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    let mut p = zero;
    let mut dp = zero;
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Eigenvalues of the balanced Frobenius companion matrix of the polynomial.
pub fn companion_eigenvalues(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    if lead == 0.0 {
        return Err(Error::DegenerateDegree { degree: n });
    }
    if n == 1 {
        return Ok(vec![Complex64::new(-coeffs[0] / lead, 0.0)]);
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i] / lead;
    }
    nalgebra::linalg::balancing::balance_parlett_reinsch(&mut m);
    let schur = nalgebra::linalg::Schur::try_new(m, f64::EPSILON, 100 * n.max(30))
        .ok_or(Error::EigenFailure)?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

/// Evenly spaced starting points on a circle whose radius is the geometric
/// mean of the root moduli. Used when the companion eigenvalues fail.
pub fn circle_start(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let r = (coeffs[0] / coeffs[n]).abs().powf(1.0 / n as f64);
    let r = if r.is_finite() && r > 0.0 { r } else { 1.0 };
    (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(r, theta)
        })
        .collect()
}

/// Newton ratio `p(z)/p′(z)` and whether `|p(z)|` is already below the
/// rounding-error level of its own evaluation. Outside the unit disk the
/// reversed polynomial is used so that large `|z|` cannot overflow.
pub fn newton_ratio<T: Real>(coeffs: &[T], z: Complex<T>) -> (Complex<T>, bool) {
    let n = coeffs.len() - 1;
    let zero = Complex::new(T::zero(), T::zero());
    let slack = T::from(8.0 * (n as f64 + 1.0)).unwrap() * T::roundoff();
    if z.norm_sqr() <= T::one() {
        let az = z.norm();
        let (mut p, mut dp, mut bound) = (zero, zero, T::zero());
        for &c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
            bound = bound * az + c.abs();
        }
        (p / dp, p.norm() <= slack * bound)
    } else {
        let w = z.inv();
        let aw = w.norm();
        let (mut q, mut dq, mut bound) = (zero, zero, T::zero());
        for &c in coeffs.iter() {
            dq = dq * w + q;
            q = q * w + c;
            bound = bound * aw + c.abs();
        }
        let nn = T::from(n).unwrap();
        let denom = w * (q * nn - w * dq);
        (q / denom, q.norm() <= slack * bound)
    }
}

/// Simultaneous Aberth–Ehrlich iteration on a coefficient vector, updating
/// `roots` in place. Returns the number of sweeps performed.
pub fn aberth_refine<T: Real>(coeffs: &[T], roots: &mut [Complex<T>], max_sweeps: usize) -> usize {
    aberth_refine_with(|z| newton_ratio(coeffs, z), roots, max_sweeps)
}

/// Aberth–Ehrlich iteration driven by an arbitrary evaluator returning the
/// Newton ratio `p/p′` at a point and whether `p` is already at its rounding
/// noise level there.
pub fn aberth_refine_with<T, F>(ratio_at: F, roots: &mut [Complex<T>], max_sweeps: usize) -> usize
where
    T: Real,
    F: Fn(Complex<T>) -> (Complex<T>, bool),
{
    let n = roots.len();
    if n == 0 {
        return 0;
    }
    let mut done = vec![false; n];
    let mut last_step = vec![T::infinity(); n];
    let tol = T::from(4.0).unwrap() * T::roundoff();
    let settle = T::roundoff().sqrt();
    let stall = T::from(0.9).unwrap();
    for sweep in 1..=max_sweeps {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let zi = roots[i];
            let (ratio, small) = ratio_at(zi);
            if small || !(ratio.re.is_finite() && ratio.im.is_finite()) {
                done[i] = true;
                continue;
            }
            let mut repulsion = Complex::new(T::zero(), T::zero());
            for (j, &zj) in roots.iter().enumerate() {
                let d = zi - zj;
                if j != i && (d.re != T::zero() || d.im != T::zero()) {
                    repulsion = repulsion + d.inv();
                }
            }
            let step = ratio / (Complex::new(T::one(), T::zero()) - ratio * repulsion);
            if !(step.re.is_finite() && step.im.is_finite()) {
                done[i] = true;
                continue;
            }
            let size = step.norm();
            let scale = zi.norm().max(T::min_positive_value());
            // once in the asymptotic regime, a step that fails to shrink means
            // the iteration has reached the evaluation noise floor
            if size <= tol * scale || (size < settle * scale && size >= stall * last_step[i]) {
                done[i] = true;
            }
            if size < last_step[i] || !done[i] {
                roots[i] = zi - step;
            }
            last_step[i] = size;
        }
        if done.iter().all(|&d| d) {
            return sweep;
        }
    }
    max_sweeps
}

/// Plain Newton polish of a single root; stops as soon as the residual
/// stops decreasing.
pub fn newton_polish<T, F>(ratio_at: F, z: Complex<T>, max_iter: usize) -> Complex<T>
where
    T: Real,
    F: Fn(Complex<T>) -> (Complex<T>, bool),
{
    let mut z = z;
    let mut last = T::infinity();
    for _ in 0..max_iter {
        let (ratio, small) = ratio_at(z);
        let step = ratio.norm();
        if small || !step.is_finite() || step.partial_cmp(&last) != Some(std::cmp::Ordering::Less) {
            break;
        }
        z = z - ratio;
        last = step;
    }
    z
}
