//! Potential families with a prescribed bound-state count, and the inverse
//! problems for supports of length two and three.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::config::NumericConfig;
use crate::error::{Error, Result};
use crate::jost::{jost_coefficients, rouche_margin};
use crate::laws::small_coefficient_hypothesis;
use crate::potential::{validate_potential, Potential};
use crate::spectrum::ledger_for;
use crate::Complex64;

/// `V_n = (−1)^n A` on `{1, …, b}`.
pub fn alternating_potential(b: usize, amplitude: f64) -> Result<Potential> {
    if b == 0 || amplitude == 0.0 || !amplitude.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "alternating family needs b >= 1 and a finite nonzero amplitude, got b={b}, A={amplitude}"
        )));
    }
    validate_potential(
        (1..=b)
            .map(|n| if n % 2 == 0 { amplitude } else { -amplitude })
            .collect(),
    )
}

/// Halves `t` from 1 until every nonconstant coefficient of `f₀` for `t·V`
/// drops below `1/(2b)`. The scaled potential then has no bound states.
pub fn shrink_to_no_bound(v: &Potential) -> Result<(f64, Potential)> {
    if v.is_trivial() {
        return Err(Error::InvalidArgument(
            "cannot shrink the trivial potential".into(),
        ));
    }
    let mut t = 1.0;
    for _ in 0..1100 {
        let scaled = v.scaled(t)?;
        if small_coefficient_hypothesis(&jost_coefficients(&scaled)) {
            return Ok((t, scaled));
        }
        t *= 0.5;
    }
    Err(Error::NoConvergence {
        what: "shrink_to_no_bound",
        iterations: 1100,
    })
}

/// `V_j = signs[j]·A`, doubling `A` from 2 until the dominant monomial
/// beats the rest of `f₀` on the unit circle, which forces `N = b`.
pub fn amplify_to_full_bound(signs: &[f64]) -> Result<(f64, Potential)> {
    if signs.is_empty() || signs.iter().any(|s| s.abs() != 1.0) {
        return Err(Error::InvalidArgument(
            "signs must be a nonempty list of ±1".into(),
        ));
    }
    let mut a = 2.0;
    for _ in 0..1000 {
        let v = validate_potential(signs.iter().map(|s| s * a).collect())?;
        if rouche_margin(&v) > 0.0 {
            return Ok((a, v));
        }
        a *= 2.0;
        if !a.is_finite() {
            break;
        }
    }
    Err(Error::NoConvergence {
        what: "amplify_to_full_bound",
        iterations: 1000,
    })
}

/// Appends `ε` on the sites `k+1, …, b`.
pub fn extend_with_epsilon(v: &Potential, b: usize, epsilon: f64) -> Result<Potential> {
    if b <= v.b() {
        return Err(Error::InvalidArgument(format!(
            "target support {b} must exceed the current support {}",
            v.b()
        )));
    }
    if epsilon == 0.0 {
        return Err(Error::InvalidArgument("epsilon must be nonzero".into()));
    }
    let mut values = v.values().to_vec();
    values.resize(b, epsilon);
    validate_potential(values)
}

/// Halves `ε` from 0.1 until the extension keeps the bound-state count of
/// `v` and `f̃₀(±1)` stays farther than `tau_edge` from zero.
pub fn choose_epsilon(v: &Potential, b: usize, cfg: &NumericConfig) -> Result<(f64, Potential)> {
    let target = ledger_for(v, cfg)?.1.n;
    let mut eps: f64 = 0.1;
    let mut iterations = 0;
    while eps > f64::EPSILON {
        let ext = extend_with_epsilon(v, b, eps)?;
        let (p, ledger) = ledger_for(&ext, cfg)?;
        let edges_clear =
            p.eval_real(1.0).abs() > cfg.tau_edge && p.eval_real(-1.0).abs() > cfg.tau_edge;
        if ledger.n == target && edges_clear {
            return Ok((eps, ext));
        }
        eps *= 0.5;
        iterations += 1;
    }
    Err(Error::NoConvergence {
        what: "choose_epsilon",
        iterations,
    })
}

fn elementary_symmetric(xs: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); xs.len() + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for (i, &x) in xs.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            e[k] = e[k] + e[k - 1] * x;
        }
    }
    e
}

fn check_roots(roots: &[Complex64]) -> Result<()> {
    if roots.iter().any(|z| z.norm() == 0.0) {
        return Err(Error::ZeroArgument);
    }
    if roots.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidArgument("roots must be finite".into()));
    }
    let closed = roots.iter().all(|z| {
        let want = roots
            .iter()
            .filter(|w| (**w - z.conj()).norm() <= 1e-9 * z.norm().max(1.0))
            .count();
        let have = roots
            .iter()
            .filter(|w| (**w - *z).norm() <= 1e-9 * z.norm().max(1.0))
            .count();
        want == have
    });
    if !closed {
        return Err(Error::InvalidArgument(
            "roots are not closed under conjugation".into(),
        ));
    }
    Ok(())
}

/// `e₁e₃ − e₂` for three zeros; equals −1 for every real two-site potential.
pub fn consistency_relation(roots: &[Complex64; 3]) -> f64 {
    let e = elementary_symmetric(roots);
    (e[1] * e[3] - e[2]).re
}

/// [`consistency_relation`] in double-double. With large zeros the two terms
/// nearly cancel, so double-precision zeros cannot resolve the constant.
pub fn consistency_relation_extended(roots: &[Complex<TwoFloat>; 3]) -> f64 {
    let [a, b, c] = roots;
    let e1 = a + b + c;
    let e2 = a * b + a * c + b * c;
    let e3 = a * b * c;
    let v = e1 * e3 - e2;
    v.re.hi() + v.re.lo()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InverseB2Result {
    pub v1: f64,
    pub v2: f64,
    /// `|V1·V2 − Σ 1/(αᵢαⱼ)|`.
    pub middle_residual: f64,
    /// `|e₁e₃ − e₂ + 1|`.
    pub consistency_residual: f64,
}

/// Middle-line residual above which a root triple is rejected.
pub const B2_MAX_RESIDUAL: f64 = 1e-8;

/// Two-site potential whose `f₀` has the three given zeros.
pub fn inverse_b2(roots: &[Complex64; 3]) -> Result<InverseB2Result> {
    inverse_b2_within(roots, B2_MAX_RESIDUAL)
}

/// [`inverse_b2`] with an explicit bound on the middle-line residual, for
/// zeros that are only known to a few digits.
pub fn inverse_b2_within(roots: &[Complex64; 3], max_residual: f64) -> Result<InverseB2Result> {
    check_roots(roots)?;
    let inv: Vec<Complex64> = roots.iter().map(|z| z.inv()).collect();
    let s = elementary_symmetric(&inv);
    let v2 = -s[3];
    let v1 = -s[1] - v2;
    let middle = (v1 * v2 - s[2]).norm();
    let consistency = (consistency_relation(roots) + 1.0).abs();
    if middle > max_residual {
        return Err(Error::Inconsistent { residual: middle });
    }
    Ok(InverseB2Result {
        v1: v1.re,
        v2: v2.re,
        middle_residual: middle,
        consistency_residual: consistency,
    })
}

/// `|K_k − (−1)^k σ_k|` for `k = 1..5`, where `K` are the coefficients of
/// `f₀` for a three-site `V` and `σ` the elementary symmetric functions of
/// the reciprocal zeros.
pub fn verify_b3(v: &Potential, roots: &[Complex64; 5]) -> Result<[f64; 5]> {
    if v.b() != 3 {
        return Err(Error::InvalidArgument(format!(
            "expected a three-site potential, got b={}",
            v.b()
        )));
    }
    if roots.iter().any(|z| z.norm() == 0.0) {
        return Err(Error::ZeroArgument);
    }
    let k = jost_coefficients(v).coeffs;
    let inv: Vec<Complex64> = roots.iter().map(|z| z.inv()).collect();
    let s = elementary_symmetric(&inv);
    let mut out = [0.0; 5];
    for j in 1..=5 {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        out[j - 1] = (k[j] - sign * s[j]).norm();
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InverseB3Result {
    pub v: [f64; 3],
    pub alpha5: Complex64,
    /// One residual per coefficient line, as returned by [`verify_b3`].
    pub residuals: [f64; 5],
    pub iterations: usize,
}

const B3_MAX_ITER: usize = 100;

/// Symmetric functions of the reciprocals of four conjugation-closed zeros.
fn reciprocal_symmetric(alphas: &[Complex64; 4]) -> Result<[f64; 5]> {
    check_roots(alphas)?;
    let inv: Vec<Complex64> = alphas.iter().map(|z| z.inv()).collect();
    let s = elementary_symmetric(&inv);
    Ok([s[0].re, s[1].re, s[2].re, s[3].re, s[4].re])
}

// unknowns (V1, V2, V3, w = 1/α5); lines 1, 2, 4, 5 of the coefficient match
fn b3_system(x: &Vector4<f64>, s: &[f64; 5]) -> (Vector4<f64>, Matrix4<f64>) {
    let (v1, v2, v3, w) = (x[0], x[1], x[2], x[3]);
    let f = Vector4::new(
        v1 + v2 + v3 + s[1] + w,
        v1 * v2 + (v1 + v2) * v3 - (s[2] + w * s[1]),
        (v1 + v2) * v3 - (s[4] + w * s[3]),
        v3 + w * s[4],
    );
    #[rustfmt::skip]
    let j = Matrix4::new(
        1.0, 1.0, 1.0, 1.0,
        v2 + v3, v1 + v3, v1 + v2, -s[1],
        v3, v3, v1 + v2, -s[3],
        0.0, 0.0, 1.0, s[4],
    );
    (f, j)
}

/// Starting points from eliminating `V3` and `V1 + V2`: `w = 1/α5` solves
/// `(s4 − s4²) w² + (s1 s4 − s3) w − s4 = 0`, and `V1, V2` are the roots of
/// `t² − (V1+V2) t + V1V2`. Returns `(V1, V2, V3, α5)` candidates with real
/// entries, best third-line residual first.
pub fn inverse_b3_guesses(alphas: &[Complex64; 4]) -> Result<Vec<[f64; 4]>> {
    let s = reciprocal_symmetric(alphas)?;
    let (qa, qb, qc) = (s[4] - s[4] * s[4], s[1] * s[4] - s[3], -s[4]);
    let mut ws = Vec::new();
    if qa.abs() < 1e-300 {
        if qb != 0.0 {
            ws.push(-qc / qb);
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc >= 0.0 {
            let r = disc.sqrt();
            let q = -0.5 * (qb + qb.signum() * r);
            ws.push(q / qa);
            if q != 0.0 {
                ws.push(qc / q);
            }
        }
    }
    let mut out = Vec::new();
    for w in ws.into_iter().filter(|w| *w != 0.0 && w.is_finite()) {
        let v3 = -w * s[4];
        if v3 == 0.0 {
            continue;
        }
        let sum = (s[4] + w * s[3]) / v3;
        let prod = s[2] + w * s[1] - sum * v3;
        let disc = sum * sum - 4.0 * prod;
        if disc < 0.0 {
            continue;
        }
        let r = disc.sqrt();
        for (v1, v2) in [
            ((sum + r) / 2.0, (sum - r) / 2.0),
            ((sum - r) / 2.0, (sum + r) / 2.0),
        ] {
            out.push([v1, v2, v3, 1.0 / w]);
        }
    }
    let third = |g: &[f64; 4]| {
        let w = 1.0 / g[3];
        (g[1] + g[2] * (1.0 + g[0] * g[1]) + s[3] + w * s[2]).abs()
    };
    out.sort_by(|a, b| third(a).total_cmp(&third(b)));
    Ok(out)
}

/// Solves for `(V1, V2, V3, α5)` given four zeros by damped Newton from
/// `guess = (V1, V2, V3, α5)`; the third coefficient line is left out of the
/// solve and reported as the consistency residual.
pub fn inverse_b3(alphas: &[Complex64; 4], guess: [f64; 4]) -> Result<InverseB3Result> {
    let s = reciprocal_symmetric(alphas)?;
    if guess[3] == 0.0 || guess.iter().any(|g| !g.is_finite()) {
        return Err(Error::InvalidArgument(
            "guess must be finite with alpha5 nonzero".into(),
        ));
    }
    let mut x = Vector4::new(guess[0], guess[1], guess[2], 1.0 / guess[3]);
    let scale = 1.0 + s.iter().map(|c| c.abs()).fold(0.0, f64::max);
    let mut iterations = 0;
    loop {
        let (f, j) = b3_system(&x, &s);
        let norm = f.amax();
        if norm <= 1e-14 * scale {
            break;
        }
        if iterations == B3_MAX_ITER {
            return Err(Error::NoConvergence {
                what: "inverse_b3",
                iterations,
            });
        }
        let step = j
            .lu()
            .solve(&f)
            .filter(|d| d.iter().all(|c| c.is_finite()))
            .ok_or(Error::SingularJacobian {
                iteration: iterations,
            })?;
        let mut t = 1.0;
        let mut next = x - step;
        while b3_system(&next, &s).0.amax() >= norm && t > 1e-6 {
            t *= 0.5;
            next = x - step * t;
        }
        iterations += 1;
        if (next - x).amax() <= 4.0 * f64::EPSILON * x.amax().max(1.0) {
            x = next;
            break;
        }
        x = next;
    }
    if x[3] == 0.0 {
        return Err(Error::SingularJacobian {
            iteration: iterations,
        });
    }
    let alpha5 = Complex64::new(1.0 / x[3], 0.0);
    let v = validate_potential(vec![x[0], x[1], x[2]])?;
    let all = [alphas[0], alphas[1], alphas[2], alphas[3], alpha5];
    Ok(InverseB3Result {
        v: [x[0], x[1], x[2]],
        alpha5,
        residuals: verify_b3(&v, &all)?,
        iterations,
    })
}
