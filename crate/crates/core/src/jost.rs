//! The Jost polynomial `f₀(z)` and its dominant-monomial split.
//!
//! For a potential supported on `{1, …, b}` the Jost solution is `fₙ = zⁿ`
//! for `n ≥ b`, and the lower values follow from the backward recursion
//!
//! ```text
//! f(n−1) = −f(n+1) + (z + 1/z + V(n)) f(n),   n = b, b−1, …, 1.
//! ```
//!
//! Each `fₙ` is `zⁿ` times a polynomial, so the division by `z` never
//! produces a negative power: the recursion runs on dense coefficient
//! vectors with a plain shift. `f₀` has degree `2b − 1`, constant term 1 and
//! leading coefficient `V(b)`.

use num_complex::{Complex, Complex64};
use num_traits::{Num, ToPrimitive};
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::poly::{self, Real};
use crate::potential::Potential;

/// Coefficients `K₀ⱼ` of `f₀(z) = Σ K₀ⱼ zʲ`, lowest power first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JostPolynomial {
    pub coeffs: Vec<f64>,
    /// Support length of the source potential.
    pub b: usize,
    #[serde(skip)]
    ext: Vec<TwoFloat>,
    #[serde(skip)]
    source: Option<Vec<f64>>,
}

impl JostPolynomial {
    /// Wraps an arbitrary real coefficient vector (lowest power first).
    /// `b` is inferred from the degree when it is odd.
    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        let ext = coeffs.iter().map(|&c| TwoFloat::from(c)).collect();
        let b = coeffs.len() / 2;
        JostPolynomial {
            coeffs,
            b,
            ext,
            source: None,
        }
    }

    fn from_potential(v: &Potential) -> Self {
        let values: Vec<TwoFloat> = v.values().iter().map(|&x| TwoFloat::from(x)).collect();
        let ext = recursion_coefficients(&values);
        let coeffs = ext.iter().map(|c| c.hi() + c.lo()).collect();
        JostPolynomial {
            coeffs,
            b: v.b(),
            ext,
            source: Some(v.values().to_vec()),
        }
    }

    /// The potential this polynomial was built from, when known. Root
    /// finding and residue evaluation then run through the recursion.
    pub fn source(&self) -> Option<&[f64]> {
        self.source.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficients carried in double-double precision.
    pub fn extended_coeffs(&self) -> &[TwoFloat] {
        &self.ext
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        poly::horner(&self.coeffs, z)
    }

    /// `(f₀(z), f₀′(z))`.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        poly::horner_with_derivative(&self.coeffs, z)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `f₀(x)` evaluated in double-double, rounded to `f64`.
    pub fn eval_real_extended(&self, x: f64) -> f64 {
        let x = TwoFloat::from(x);
        let v = self
            .ext
            .iter()
            .rev()
            .fold(TwoFloat::from(0.0), |acc, &c| acc * x + c);
        v.hi() + v.lo()
    }
}

/// Runs the backward recursion over any commutative ring of coefficients,
/// so it can be evaluated exactly over rationals as well as in floating
/// point. `values[n − 1]` is `V(n)`. Returns the coefficients of `f₀`,
/// lowest power first, of length `2b` (or `[1]` when `values` is empty).
pub fn recursion_coefficients<T: Clone + Num>(values: &[T]) -> Vec<T> {
    let b = values.len();
    if b == 0 {
        return vec![T::one()];
    }
    // powers 0..=2b are enough to hold f(b+1) = z^(b+1) and every f(n), n ≤ b
    let width = 2 * b + 1;
    let monomial = |k: usize| {
        let mut v = vec![T::zero(); width];
        v[k] = T::one();
        v
    };
    let mut upper = monomial(b + 1);
    let mut current = monomial(b);
    for n in (1..=b).rev() {
        let v = &values[n - 1];
        debug_assert!(current[0].is_zero(), "f({n}) must vanish at z = 0");
        let mut next = vec![T::zero(); width];
        for j in 0..width {
            let mut acc = T::zero() - upper[j].clone();
            if j > 0 {
                acc = acc + current[j - 1].clone();
            }
            if j + 1 < width {
                acc = acc + current[j + 1].clone();
            }
            acc = acc + v.clone() * current[j].clone();
            next[j] = acc;
        }
        upper = std::mem::replace(&mut current, next);
    }
    debug_assert!(current[2 * b].is_zero());
    current.truncate(2 * b);
    current
}

/// Builds `f₀` for a potential. The recursion is carried out in
/// double-double arithmetic; `coeffs` holds the values rounded to `f64`.
pub fn jost_coefficients(v: &Potential) -> JostPolynomial {
    JostPolynomial::from_potential(v)
}

/// `f₀` and `f₀′` at `z` run through the recursion rather than the expanded
/// coefficients.
///
/// The expanded coefficients of `f₀` grow geometrically with `b` while `f₀`
/// itself stays moderate inside the unit disk, so Horner's rule loses all
/// accuracy there for large `b`; the recursion does not. Values are carried
/// as `u(n) = f(n)/z^b` with periodic rescaling. The result `(u, u′, s)`
/// means `f₀(z) = z^b·u·eˢ` and `f₀′(z) = z^(b−1)·(b·u + z·u′)·eˢ`.
pub fn scaled_recursion<T: Real>(values: &[T], z: Complex<T>) -> (Complex<T>, Complex<T>, f64) {
    let b = values.len();
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let zinv = z.inv();
    let shift = z + zinv;
    let dshift = one - zinv * zinv;
    let huge = T::from(1e150).unwrap();
    let tiny = T::from(1e-150).unwrap();
    let mut log_scale = 0.0;

    let (mut u_up, mut u) = (z, one);
    let (mut du_up, mut du) = (one, zero);
    for n in (1..=b).rev() {
        let s = shift + values[n - 1];
        let u_next = s * u - u_up;
        let du_next = dshift * u + s * du - du_up;
        u_up = u;
        du_up = du;
        u = u_next;
        du = du_next;
        if u.norm_sqr() > huge || du.norm_sqr() > huge {
            u = u * tiny;
            u_up = u_up * tiny;
            du = du * tiny;
            du_up = du_up * tiny;
            log_scale -= 1e-150f64.ln();
        }
    }
    (u, du, log_scale)
}

/// Newton ratio `f₀(z)/f₀′(z)` from [`scaled_recursion`]. The second
/// component is always `false`: this path has no cheap a-priori noise
/// bound, so convergence is judged from the step sizes.
pub fn recursion_newton_ratio<T: Real>(values: &[T], z: Complex<T>) -> (Complex<T>, bool) {
    let (u, du, _) = scaled_recursion(values, z);
    let bt = T::from(values.len()).unwrap();
    (z * u / (z * du + u * bt), false)
}

/// `ln f₀(z)` and `ln f₀′(z)` (principal complex logarithms, up to multiples
/// of `2πi`), evaluated in double-double through the recursion. Stays finite
/// where `f₀` itself would overflow.
pub fn log_value_and_derivative(values: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let vt: Vec<TwoFloat> = values.iter().map(|&x| TwoFloat::from(x)).collect();
    let zt = Complex::new(TwoFloat::from(z.re), TwoFloat::from(z.im));
    let (u, du, s) = scaled_recursion(&vt, zt);
    let b = values.len() as f64;
    let to64 = |c: Complex<TwoFloat>| Complex64::new(c.re.hi() + c.re.lo(), c.im.hi() + c.im.lo());
    let lz = z.ln();
    let ln_value = b * lz + to64(u).ln() + s;
    let ln_deriv = (b - 1.0) * lz + to64(u * TwoFloat::from(b) + zt * du).ln() + s;
    (ln_value, ln_deriv)
}

/// Horner evaluation of `Σ K₀ⱼ zʲ`.
pub fn jost_eval(p: &JostPolynomial, z: Complex64) -> Complex64 {
    p.eval(z)
}

/// Values `f₀(z), f₁(z), …, f_b(z)` of the Jost solution (index `n` holds
/// `fₙ`), computed directly from the recursion at the given point.
pub fn jost_solution(v: &Potential, z: Complex64) -> Result<Vec<Complex64>> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroArgument);
    }
    let b = v.b();
    let mut f = vec![Complex64::new(0.0, 0.0); b + 2];
    f[b + 1] = z.powu(b as u32 + 1);
    f[b] = z.powu(b as u32);
    let shift = z + z.inv();
    for n in (1..=b).rev() {
        f[n - 1] = -f[n + 1] + (shift + v.at(n)) * f[n];
    }
    f.truncate(b + 1);
    Ok(f)
}

/// `f₀ = F + G` with `F(z) = (V(1)⋯V(b)) z^b`, the unique top-degree
/// monomial in the potential values, and `G` everything else.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FgDecomposition {
    /// `V(1)⋯V(b)`, the coefficient of `z^b` in `F`.
    pub f_coefficient: f64,
    /// Power carried by `F` (equals `b`).
    pub f_power: usize,
    /// Coefficients of `G`, lowest power first, same length as `f₀`.
    pub g: Vec<f64>,
}

impl FgDecomposition {
    /// `F + G` as a coefficient vector.
    pub fn recombine(&self) -> Vec<f64> {
        let mut out = self.g.clone();
        out[self.f_power] += self.f_coefficient;
        out
    }
}

pub fn fg_decompose(v: &Potential, p: &JostPolynomial) -> FgDecomposition {
    let product = v
        .values()
        .iter()
        .fold(TwoFloat::from(1.0), |acc, &x| acc * TwoFloat::from(x));
    let b = v.b();
    let mut g: Vec<f64> = if p.ext.len() == p.coeffs.len() {
        p.ext
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    } else {
        p.coeffs.clone()
    };
    let slot = if p.ext.len() == p.coeffs.len() {
        p.ext[b] - product
    } else {
        TwoFloat::from(p.coeffs[b]) - product
    };
    g[b] = slot.hi() + slot.lo();
    FgDecomposition {
        f_coefficient: product.hi() + product.lo(),
        f_power: b,
        g,
    }
}

/// `|V(1)⋯V(b)| − Σⱼ |Gⱼ|`.
///
/// On `|z| = 1` the monomial satisfies `|F| = |V(1)⋯V(b)|` while
/// `|G| ≤ Σ|Gⱼ|`, so a positive margin forces `f₀` to have exactly as many
/// zeros in the open unit disk as `F`, namely `b`.
pub fn rouche_margin(v: &Potential) -> f64 {
    let p = jost_coefficients(v);
    let fg = fg_decompose(v, &p);
    fg.f_coefficient.abs() - fg.g.iter().map(|g| g.abs()).sum::<f64>()
}
