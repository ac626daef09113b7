//! Zeros of the Jost polynomial: location, interval classification, and
//! the norming constants of the bound states.
//!
//! Real zeros are ordered increasingly and split by the four intervals
//! `(−∞, −1]`, `(−1, 0)`, `(0, 1)`, `[1, ∞)`; the cumulative counts through
//! those intervals are the ordering integers `p ≤ q ≤ r ≤ s`. Nonreal zeros
//! follow the real ones, one conjugate pair at a time.

use num_complex::{Complex, Complex64};
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::config::{NumericConfig, Precision};
use crate::error::{Error, Result};
use crate::jost::{self, JostPolynomial};
use crate::poly::{self, Real};
use crate::potential::z_to_lambda;

const MAX_SWEEPS: usize = 500;
const POLISH_STEPS: usize = 8;

/// A zero of `f₀` with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub z: Complex64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZeroClass {
    /// `z ∈ (−1, 0)`: bound state with `λ > 4`.
    BoundNeg,
    /// `z ∈ (0, 1)`: bound state with `λ < 0`.
    BoundPos,
    /// `z ∈ (−∞, −1)`: real resonance.
    ResonanceLeft,
    /// `z ∈ (1, ∞)`: real resonance.
    ResonanceRight,
    EdgeMinus,
    EdgePlus,
    /// Nonreal; always outside the unit circle.
    ComplexPair,
}

impl ZeroClass {
    pub fn is_bound_state(self) -> bool {
        matches!(self, ZeroClass::BoundNeg | ZeroClass::BoundPos)
    }

    pub fn is_real(self) -> bool {
        !matches!(self, ZeroClass::ComplexPair)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifiedZero {
    pub z: Complex64,
    pub multiplicity: usize,
    pub class: ZeroClass,
}

/// Classified zeros together with every count derived from them. All
/// counts include multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroLedger {
    pub b: usize,
    pub zeros: Vec<ClassifiedZero>,
    /// Zeros in `(−∞, −1]`, edge zero included.
    pub z_left: usize,
    pub z_m10: usize,
    pub z_01: usize,
    /// Zeros in `[1, ∞)`, edge zero included.
    pub z_right: usize,
    /// Nonreal zeros in the upper half plane.
    pub z_c: usize,
    pub mu_minus: usize,
    pub mu_plus: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub s: usize,
    /// Number of bound states, `z_m10 + z_01`.
    pub n: usize,
    /// Bound states with energy below the band (`λ < 0`, i.e. `z ∈ (0, 1)`).
    pub n_lambda_below: usize,
    /// Bound states with energy above the band (`λ > 4`, i.e. `z ∈ (−1, 0)`).
    pub n_lambda_above: usize,
}

impl ZeroLedger {
    /// All zeros in ledger order, each repeated by its multiplicity. The
    /// 1-based position in this list is the zero's index `k`.
    pub fn expanded(&self) -> Vec<Complex64> {
        self.zeros
            .iter()
            .flat_map(|z| std::iter::repeat_n(z.z, z.multiplicity))
            .collect()
    }

    /// `(k, zero)` for every bound state, `k` being the 1-based position in
    /// [`ZeroLedger::expanded`].
    pub fn bound_state_positions(&self) -> Vec<(usize, ClassifiedZero)> {
        let mut k = 1;
        let mut out = Vec::new();
        for z in &self.zeros {
            if z.class.is_bound_state() {
                out.push((k, *z));
            }
            k += z.multiplicity;
        }
        out
    }

    pub fn total_multiplicity(&self) -> usize {
        self.zeros.iter().map(|z| z.multiplicity).sum()
    }

    /// Smallest distance from a bound-state zero to `±1` (`None` without
    /// bound states).
    pub fn min_edge_distance(&self) -> Option<f64> {
        self.zeros
            .iter()
            .filter(|z| z.class.is_bound_state())
            .map(|z| 1.0 - z.z.re.abs())
            .reduce(f64::min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    /// 1-based position of the zero in the ledger ordering.
    pub k: usize,
    pub alpha: f64,
    pub lambda: f64,
    /// Norming constant from the product over all zeros.
    pub c2_product: f64,
    /// Norming constant from the residue `f₀(1/α) / (α f₀′(α))`.
    pub c2_residue: f64,
}

fn to_t<T: Real>(z: Complex64) -> Complex<T> {
    Complex::new(T::from(z.re).unwrap(), T::from(z.im).unwrap())
}

fn to_64<T: Real>(z: Complex<T>) -> Complex64 {
    Complex64::new(z.re.to_f64().unwrap(), z.im.to_f64().unwrap())
}

fn scale_of<T: Real>(z: Complex<T>) -> T {
    z.norm().max(T::one())
}

struct Cluster<T> {
    centroid: Complex<T>,
    multiplicity: usize,
}

fn cluster_roots<T: Real>(roots: &[Complex<T>], tau: f64) -> Vec<Cluster<T>> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let tau = T::from(tau).unwrap();
    for i in 0..n {
        for j in 0..i {
            let scale = scale_of(roots[i]).max(scale_of(roots[j]));
            if (roots[i] - roots[j]).norm() < tau * scale {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Complex<T>, usize)> = Vec::new();
    for (i, &z) in roots.iter().enumerate() {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 = g.1 + z;
                g.2 += 1;
            }
            None => groups.push((r, z, 1)),
        }
    }
    groups
        .into_iter()
        .map(|(_, sum, m)| Cluster {
            centroid: sum / T::from(m).unwrap(),
            multiplicity: m,
        })
        .collect()
}

fn refine_and_cluster<T: Real>(
    p: &JostPolynomial,
    start: &[Complex64],
    cfg: &NumericConfig,
) -> Result<Vec<(Complex<T>, usize)>> {
    let mut roots: Vec<Complex<T>> = start.iter().map(|&z| to_t(z)).collect();
    let source: Option<Vec<T>> = p
        .source()
        .map(|v| v.iter().map(|&x| T::from(x).unwrap()).collect());
    let coeffs: Vec<T> = p
        .extended_coeffs()
        .iter()
        .map(|c| T::from(c.hi()).unwrap() + T::from(c.lo()).unwrap())
        .collect();
    let ratio = |z: Complex<T>| match &source {
        Some(v) => jost::recursion_newton_ratio(v, z),
        None => poly::newton_ratio(&coeffs, z),
    };
    poly::aberth_refine_with(ratio, &mut roots, MAX_SWEEPS);

    let tau_real = T::from(cfg.tau_real).unwrap();
    let tau_cluster = T::from(cfg.tau_cluster).unwrap();
    let mut real = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for mut c in cluster_roots(&roots, cfg.tau_cluster) {
        // a multiple cluster this close to the axis contains its own conjugate
        let band = if c.multiplicity > 1 {
            tau_cluster
        } else {
            tau_real
        };
        if c.centroid.im.abs() <= band * scale_of(c.centroid) {
            c.centroid.im = T::zero();
            if c.multiplicity == 1 {
                c.centroid = poly::newton_polish(ratio, c.centroid, POLISH_STEPS);
                c.centroid.im = T::zero();
            }
            real.push(c);
        } else if c.centroid.im > T::zero() {
            upper.push(c);
        } else {
            lower.push(c);
        }
    }
    if upper.len() != lower.len() {
        return Err(Error::ConjugateMismatch);
    }
    let mut pairs = Vec::with_capacity(upper.len());
    for u in upper {
        let target = u.centroid.conj();
        let best = lower
            .iter()
            .enumerate()
            .filter(|(_, l)| l.multiplicity == u.multiplicity)
            .min_by(|a, b| {
                let da = (a.1.centroid - target).norm();
                let db = (b.1.centroid - target).norm();
                da.partial_cmp(&db).unwrap_or(std::cmp::Ordering::Equal)
            })
            .map(|(i, _)| i)
            .ok_or(Error::ConjugateMismatch)?;
        let l = lower.swap_remove(best);
        let mut z = (u.centroid + l.centroid.conj()) / T::from(2.0).unwrap();
        if u.multiplicity == 1 {
            z = poly::newton_polish(ratio, z, POLISH_STEPS);
        }
        pairs.push((z, u.multiplicity));
    }

    let mut out: Vec<(Complex<T>, usize)> = real
        .into_iter()
        .map(|c| (c.centroid, c.multiplicity))
        .collect();
    out.sort_by(|a, b| {
        a.0.re
            .partial_cmp(&b.0.re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    pairs.sort_by(|a, b| {
        let (za, zb) = (to_64(a.0), to_64(b.0));
        za.re.total_cmp(&zb.re).then(za.im.total_cmp(&zb.im))
    });
    for (z, m) in pairs {
        out.push((z, m));
        out.push((z.conj(), m));
    }
    Ok(out)
}

fn starting_points(p: &JostPolynomial) -> Result<Vec<Complex64>> {
    let n = p.degree();
    if n > 0 && p.coeffs[n] == 0.0 {
        return Err(Error::DegenerateDegree { degree: n });
    }
    Ok(poly::companion_eigenvalues(&p.coeffs).unwrap_or_else(|_| poly::circle_start(&p.coeffs)))
}

/// All `2b − 1` zeros of `f₀` with multiplicity.
///
/// Starting points are the eigenvalues of the balanced companion matrix;
/// they are refined simultaneously by Aberth–Ehrlich iteration in the
/// configured precision (evaluating `f₀` through the recursion when the
/// source potential is known), merged into clusters closer than
/// `tau_cluster` (relative to `max(1, |z|)`) and placed at the cluster mean,
/// snapped to the real axis when `|Im z| ≤ tau_real·max(1, |z|)`, and made
/// exactly conjugate-symmetric. Simple zeros get a final Newton polish.
pub fn find_zeros(p: &JostPolynomial, cfg: &NumericConfig) -> Result<Vec<Root>> {
    cfg.validate()?;
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    let start = starting_points(p)?;
    let roots: Vec<(Complex64, usize)> = match cfg.precision {
        Precision::Standard => refine_and_cluster::<f64>(p, &start, cfg)?,
        Precision::Extended => refine_and_cluster::<TwoFloat>(p, &start, cfg)?
            .into_iter()
            .map(|(z, m)| (to_64(z), m))
            .collect(),
    };
    Ok(roots
        .into_iter()
        .map(|(z, multiplicity)| Root { z, multiplicity })
        .collect())
}

/// [`find_zeros`] in double-double regardless of `cfg.precision`, keeping
/// the full precision of the result; same ordering.
pub fn find_zeros_extended(
    p: &JostPolynomial,
    cfg: &NumericConfig,
) -> Result<Vec<(Complex<TwoFloat>, usize)>> {
    cfg.validate()?;
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    let start = starting_points(p)?;
    refine_and_cluster::<TwoFloat>(p, &start, cfg)
}

/// Jost polynomial and classified ledger of a potential in one call.
pub fn ledger_for(
    v: &crate::potential::Potential,
    cfg: &NumericConfig,
) -> Result<(JostPolynomial, ZeroLedger)> {
    let p = jost::jost_coefficients(v);
    let roots = find_zeros(&p, cfg)?;
    let ledger = classify_zeros(&roots, cfg, p.b)?;
    Ok((p, ledger))
}

fn class_of_real(x: f64, cfg: &NumericConfig) -> ZeroClass {
    if (x + 1.0).abs() < cfg.tau_edge {
        ZeroClass::EdgeMinus
    } else if (x - 1.0).abs() < cfg.tau_edge {
        ZeroClass::EdgePlus
    } else if x < -1.0 {
        ZeroClass::ResonanceLeft
    } else if x < 0.0 {
        ZeroClass::BoundNeg
    } else if x < 1.0 {
        ZeroClass::BoundPos
    } else {
        ZeroClass::ResonanceRight
    }
}

/// Sorts zeros into the interval classes and computes the ledger counts.
pub fn classify_zeros(roots: &[Root], cfg: &NumericConfig, b: usize) -> Result<ZeroLedger> {
    let expected = (2 * b).saturating_sub(1);
    let found: usize = roots.iter().map(|r| r.multiplicity).sum();
    if found != expected {
        return Err(Error::CountMismatch { found, expected });
    }
    let mut real = Vec::new();
    let mut complex = Vec::new();
    for r in roots {
        if r.multiplicity == 0 {
            continue;
        }
        let z = r.z;
        if z.norm() == 0.0 {
            return Err(Error::InvalidArgument(
                "zero of f0 reported at z = 0".into(),
            ));
        }
        if z.im.abs() <= cfg.tau_real * z.norm().max(1.0) {
            let x = z.re;
            real.push(ClassifiedZero {
                z: Complex64::new(x, 0.0),
                multiplicity: r.multiplicity,
                class: class_of_real(x, cfg),
            });
        } else {
            if z.norm() <= 1.0 - cfg.tau_real {
                return Err(Error::UnitCircleViolation {
                    re: z.re,
                    im: z.im,
                    modulus: z.norm(),
                });
            }
            complex.push(ClassifiedZero {
                z,
                multiplicity: r.multiplicity,
                class: ZeroClass::ComplexPair,
            });
        }
    }
    real.sort_by(|a, b| a.z.re.total_cmp(&b.z.re));
    complex.sort_by(|a, b| {
        a.z.re
            .total_cmp(&b.z.re)
            .then(a.z.im.abs().total_cmp(&b.z.im.abs()))
            .then(b.z.im.total_cmp(&a.z.im))
    });

    let count = |classes: &[ZeroClass]| -> usize {
        real.iter()
            .filter(|z| classes.contains(&z.class))
            .map(|z| z.multiplicity)
            .sum()
    };
    let z_left = count(&[ZeroClass::ResonanceLeft, ZeroClass::EdgeMinus]);
    let z_m10 = count(&[ZeroClass::BoundNeg]);
    let z_01 = count(&[ZeroClass::BoundPos]);
    let z_right = count(&[ZeroClass::ResonanceRight, ZeroClass::EdgePlus]);
    let mu_minus = count(&[ZeroClass::EdgeMinus]);
    let mu_plus = count(&[ZeroClass::EdgePlus]);
    let z_c = complex
        .iter()
        .filter(|z| z.z.im > 0.0)
        .map(|z| z.multiplicity)
        .sum();
    let p = z_left;
    let q = p + z_m10;
    let r = q + z_01;
    let s = r + z_right;

    let mut zeros = real;
    zeros.extend(complex);
    Ok(ZeroLedger {
        b,
        zeros,
        z_left,
        z_m10,
        z_01,
        z_right,
        z_c,
        mu_minus,
        mu_plus,
        p,
        q,
        r,
        s,
        n: z_m10 + z_01,
        n_lambda_below: z_01,
        n_lambda_above: z_m10,
    })
}

/// Norming constant of the bound state at 1-based ledger position `k`.
pub fn norming_constant_at(
    ledger: &ZeroLedger,
    p: &JostPolynomial,
    k: usize,
) -> Result<BoundState> {
    let zero = ledger
        .bound_state_positions()
        .into_iter()
        .find(|(pos, _)| *pos == k)
        .map(|(_, z)| z)
        .ok_or(Error::NotABoundState { index: k })?;
    let alpha = zero.z.re;
    let a = Complex64::new(alpha, 0.0);
    let all = ledger.expanded();
    let b = ledger.b as f64;

    // products in log form: |α| can be small and b large
    let mut ln_product = -2.0 * b * a.ln();
    for (j, &aj) in all.iter().enumerate() {
        ln_product += (1.0 - a * aj).ln();
        if j + 1 != k {
            ln_product -= (a - aj).ln();
        }
    }
    let c2_product = ln_product.exp().re;

    let c2_residue = match p.source() {
        Some(values) => {
            let (ln_num, _) = jost::log_value_and_derivative(values, a.inv());
            let (_, ln_deriv) = jost::log_value_and_derivative(values, a);
            (ln_num - a.ln() - ln_deriv).exp().re
        }
        None => {
            let num = p.eval(a.inv());
            let (_, d) = p.eval_with_derivative(a);
            (num / (a * d)).re
        }
    };

    Ok(BoundState {
        k,
        alpha,
        lambda: z_to_lambda(a)?.re,
        c2_product,
        c2_residue,
    })
}

/// Norming constants of every bound state, both formulas recorded.
pub fn norming_constants(ledger: &ZeroLedger, p: &JostPolynomial) -> Result<Vec<BoundState>> {
    ledger
        .bound_state_positions()
        .into_iter()
        .map(|(k, _)| norming_constant_at(ledger, p, k))
        .collect()
}

/// Signs of the factors that make a norming constant positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignRecord {
    pub k: usize,
    /// Sign of `∏_{j ≤ p} (1 − αⱼ α_k)` over the zeros in `(−∞, −1]`.
    pub p_minus: i8,
    /// Sign of `∏_{r < j ≤ s} (1 − αⱼ α_k)` over the zeros in `[1, ∞)`.
    pub p_plus: i8,
    /// Sign of `∏_{j ≠ k} (α_k − αⱼ)`.
    pub denominator: i8,
    /// `(−1)^(k−1)`.
    pub expected: i8,
}

impl SignRecord {
    /// Denominator sign and the sign of the product relevant to the side
    /// of the bound state both equal `(−1)^(k−1)`.
    pub fn consistent(&self, class: ZeroClass) -> bool {
        let relevant = match class {
            ZeroClass::BoundNeg => self.p_minus,
            _ => self.p_plus,
        };
        self.denominator == self.expected && relevant == self.expected
    }
}

fn sign_of_product(factors: impl Iterator<Item = Complex64>) -> i8 {
    // nonreal factors come in conjugate pairs and contribute |·|² > 0
    let negatives = factors.filter(|f| f.im == 0.0 && f.re < 0.0).count();
    if negatives % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign diagnostics for every bound state of the ledger. Empty products
/// count as `+1`.
pub fn sign_diagnostics(ledger: &ZeroLedger) -> Vec<(SignRecord, ZeroClass)> {
    let all = ledger.expanded();
    ledger
        .bound_state_positions()
        .into_iter()
        .map(|(k, zero)| {
            let a = zero.z;
            let p_minus = sign_of_product(all[..ledger.p].iter().map(|&aj| 1.0 - aj * a));
            let p_plus = sign_of_product(all[ledger.r..ledger.s].iter().map(|&aj| 1.0 - aj * a));
            let denominator = sign_of_product(
                all.iter()
                    .enumerate()
                    .filter(|(j, _)| j + 1 != k)
                    .map(|(_, &aj)| a - aj),
            );
            let expected = if k % 2 == 1 { 1 } else { -1 };
            (
                SignRecord {
                    k,
                    p_minus,
                    p_plus,
                    denominator,
                    expected,
                },
                zero.class,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jost::jost_coefficients;
    use crate::potential::Potential;

    fn pot(v: &[f64]) -> Potential {
        crate::potential::validate_potential(v.to_vec()).unwrap()
    }

    fn ledger_of(v: &[f64]) -> (JostPolynomial, ZeroLedger) {
        let cfg = NumericConfig::standard();
        let p = jost_coefficients(&pot(v));
        let roots = find_zeros(&p, &cfg).unwrap();
        let ledger = classify_zeros(&roots, &cfg, p.b).unwrap();
        (p, ledger)
    }

    #[test]
    fn linear_root() {
        let p = JostPolynomial::from_coeffs(vec![1.0, 2.0]);
        let roots = find_zeros(&p, &NumericConfig::standard()).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 1);
        assert!((roots[0].z - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn degenerate_leading_coefficient() {
        let p = JostPolynomial::from_coeffs(vec![1.0, 0.0]);
        assert!(matches!(
            find_zeros(&p, &NumericConfig::standard()),
            Err(Error::DegenerateDegree { .. })
        ));
    }

    #[test]
    fn two_bound_states_and_resonance() {
        let s5 = 5f64.sqrt();
        let (_, l) = ledger_of(&[-s5, 4.0 / s5]);
        let xs: Vec<f64> = l.zeros.iter().map(|z| z.z.re).collect();
        for (x, want) in xs.iter().zip([-0.5, 0.5, s5]) {
            assert!((x - want).abs() < 1e-12, "{xs:?}");
        }
        assert_eq!(
            (l.n, l.z_m10, l.z_01, l.z_right, l.z_left, l.z_c),
            (2, 1, 1, 1, 0, 0)
        );
        assert_eq!((l.p, l.q, l.r, l.s), (0, 1, 2, 3));
    }

    #[test]
    fn double_resonance() {
        let s3 = 3f64.sqrt();
        let (_, l) = ledger_of(&[-2.5 - s3, -0.5 - 1.0 / s3]);
        assert_eq!(l.zeros.len(), 2);
        assert!((l.zeros[0].z.re - (-1.5 + s3)).abs() < 1e-8);
        assert_eq!(l.zeros[1].multiplicity, 2);
        assert!((l.zeros[1].z.re - 2.0).abs() < 1e-8);
        assert_eq!((l.n, l.z_right), (1, 2));

        // same double resonance, third zero moved out to a resonance
        let (_, l) = ledger_of(&[-2.5 + s3, -0.5 + 1.0 / s3]);
        assert!((l.zeros[0].z.re - (-1.5 - s3)).abs() < 1e-8);
        assert_eq!(l.zeros[1].multiplicity, 2);
        assert_eq!((l.n, l.z_left, l.z_right), (0, 1, 2));
    }

    #[test]
    fn classify_hand_sets() {
        let cfg = NumericConfig::standard();
        let r = |x: f64, m| Root {
            z: Complex64::new(x, 0.0),
            multiplicity: m,
        };
        let l = classify_zeros(&[r(-0.5, 1)], &cfg, 1).unwrap();
        assert_eq!(
            (l.n, l.z_m10, l.z_01, l.z_left, l.z_right, l.z_c),
            (1, 1, 0, 0, 0, 0)
        );

        let l = classify_zeros(&[r(2.0, 2), r(-1.5 + 3f64.sqrt(), 1)], &cfg, 2).unwrap();
        assert_eq!((l.n, l.z_right, l.s), (1, 2, 3));

        let l = classify_zeros(&[r(-1.0, 1), r(0.3, 1), r(1.0 + 1e-12, 1)], &cfg, 2).unwrap();
        assert_eq!(
            (l.mu_minus, l.mu_plus, l.z_left, l.z_right, l.n),
            (1, 1, 1, 1, 1)
        );
        assert_eq!(l.zeros[0].class, ZeroClass::EdgeMinus);

        assert!(matches!(
            classify_zeros(&[r(0.5, 1)], &cfg, 2),
            Err(Error::CountMismatch {
                found: 1,
                expected: 3
            })
        ));
        let inside = Root {
            z: Complex64::new(0.0, 0.5),
            multiplicity: 1,
        };
        assert!(matches!(
            classify_zeros(
                &[
                    inside,
                    Root {
                        z: inside.z.conj(),
                        multiplicity: 1
                    },
                    r(3.0, 1)
                ],
                &cfg,
                2
            ),
            Err(Error::UnitCircleViolation { .. })
        ));
    }

    #[test]
    fn trivial_potential_has_no_zeros() {
        let (p, l) = ledger_of(&[]);
        assert!(l.zeros.is_empty());
        assert_eq!(l.n, 0);
        assert!(norming_constants(&l, &p).unwrap().is_empty());
    }

    #[test]
    fn norming_constant_single_site() {
        let (p, l) = ledger_of(&[2.0]);
        let bs = norming_constants(&l, &p).unwrap();
        assert_eq!(bs.len(), 1);
        assert!((bs[0].c2_product - 3.0).abs() < 1e-12);
        assert!((bs[0].c2_residue - 3.0).abs() < 1e-12);
        assert!((bs[0].lambda - 4.5).abs() < 1e-12);
        assert_eq!(bs[0].k, 1);
    }

    #[test]
    fn norming_constants_agree() {
        let s5 = 5f64.sqrt();
        let (p, l) = ledger_of(&[-s5, 4.0 / s5]);
        let bs = norming_constants(&l, &p).unwrap();
        assert_eq!(bs.len(), 2);
        for b in bs {
            assert!(b.c2_product > 0.0 && b.c2_residue > 0.0);
            assert!((b.c2_product - b.c2_residue).abs() < 1e-10 * b.c2_product);
        }
        assert!(matches!(
            norming_constant_at(&l, &p, 3),
            Err(Error::NotABoundState { index: 3 })
        ));
    }

    #[test]
    fn sign_records() {
        let (_, l) = ledger_of(&[2.0]);
        let d = sign_diagnostics(&l);
        assert_eq!(d.len(), 1);
        let (rec, class) = d[0];
        assert_eq!(
            (rec.p_minus, rec.p_plus, rec.denominator, rec.expected),
            (1, 1, 1, 1)
        );
        assert!(rec.consistent(class));

        let s5 = 5f64.sqrt();
        let (_, l) = ledger_of(&[-s5, 4.0 / s5]);
        let d = sign_diagnostics(&l);
        assert_eq!(
            d.iter().map(|(r, _)| r.denominator).collect::<Vec<_>>(),
            vec![1, -1]
        );
        assert!(d.iter().all(|(r, c)| r.consistent(*c)));
    }

    #[test]
    fn extended_precision_agrees() {
        let v = [1.3, -0.7, 2.2, -1.9, 0.4];
        let p = jost_coefficients(&pot(&v));
        let a = find_zeros(&p, &NumericConfig::standard()).unwrap();
        let b = find_zeros(&p, &NumericConfig::extended()).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!((x.z - y.z).norm() < 1e-12);
        }
    }
}
