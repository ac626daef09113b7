//! Checkers for the counting laws every classified ledger must satisfy.
//!
//! The laws are theorems, so a failing verdict means the numerics went
//! wrong; [`LawVerdicts::diagnostics`] then names the offending quantities.

use serde::{Deserialize, Serialize};

use crate::config::NumericConfig;
use crate::error::Result;
use crate::jost::{rouche_margin, JostPolynomial};
use crate::potential::Potential;
use crate::spectrum::{find_zeros, ZeroLedger};
use crate::Complex64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawVerdicts {
    /// `Z_left + Z_m10 + Z_01 + Z_right + 2 Z_c = 2b − 1`.
    pub count_identity: bool,
    /// `0 ≤ N ≤ b`.
    pub bound_state_bound: bool,
    pub left_resonance_inequality: bool,
    /// `Z_left − Z_m10 + 1`.
    pub epsilon_minus: i64,
    pub right_resonance_inequality: bool,
    /// `Z_right − Z_01 + 1`.
    pub epsilon_plus: i64,
    /// `None` when some coefficient is too large for the criterion.
    pub small_coefficient_certificate: Option<bool>,
    /// `None` when the Rouché margin is not positive.
    pub rouche_certificate: Option<bool>,
    pub sign_flip_symmetry: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
}

impl LawVerdicts {
    /// True when every verdict that applies holds.
    pub fn all_hold(&self) -> bool {
        self.count_identity
            && self.bound_state_bound
            && self.left_resonance_inequality
            && self.right_resonance_inequality
            && self.sign_flip_symmetry
            && self.small_coefficient_certificate != Some(false)
            && self.rouche_certificate != Some(false)
    }
}

pub fn check_count_identity(ledger: &ZeroLedger, b: usize) -> bool {
    let total = ledger.z_left + ledger.z_m10 + ledger.z_01 + ledger.z_right + 2 * ledger.z_c;
    total == (2 * b).saturating_sub(1)
}

pub fn check_bound_state_bound(ledger: &ZeroLedger, b: usize) -> bool {
    ledger.n <= b
}

/// `(left holds, ε₋, right holds, ε₊)`. Each ε must be at least 1 when its
/// side has no bound state and at least 0 otherwise.
pub fn check_resonance_inequalities(ledger: &ZeroLedger) -> (bool, i64, bool, i64) {
    let eps_minus = ledger.z_left as i64 - ledger.z_m10 as i64 + 1;
    let eps_plus = ledger.z_right as i64 - ledger.z_01 as i64 + 1;
    let need = |bound: usize| if bound == 0 { 1 } else { 0 };
    (
        eps_minus >= need(ledger.z_m10),
        eps_minus,
        eps_plus >= need(ledger.z_01),
        eps_plus,
    )
}

/// Whether every nonconstant coefficient is below `1/(2b)` in magnitude,
/// which keeps `f₀` away from zero on `(−1, 1)`.
pub fn small_coefficient_hypothesis(p: &JostPolynomial) -> bool {
    let b = p.b;
    if b == 0 {
        return false;
    }
    let bound = 1.0 / (2 * b) as f64;
    p.coeffs[1..].iter().all(|c| c.abs() < bound)
}

pub fn check_small_coefficient_criterion(p: &JostPolynomial, ledger: &ZeroLedger) -> Option<bool> {
    small_coefficient_hypothesis(p).then_some(ledger.n == 0)
}

pub fn check_rouche_certificate(v: &Potential, ledger: &ZeroLedger) -> Option<bool> {
    (v.b() > 0 && rouche_margin(v) > 0.0).then_some(ledger.n == v.b())
}

fn expand(roots: &[crate::spectrum::Root]) -> Vec<Complex64> {
    roots
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.z, r.multiplicity))
        .collect()
}

/// Largest relative distance between a zero of `V` and the negated nearest
/// unused zero of `−V`; infinite when the multisets differ in size.
pub fn sign_flip_deviation(v: &Potential, cfg: &NumericConfig) -> Result<f64> {
    let plus = expand(&find_zeros(&crate::jost::jost_coefficients(v), cfg)?);
    let minus = expand(&find_zeros(
        &crate::jost::jost_coefficients(&v.negated()),
        cfg,
    )?);
    if plus.len() != minus.len() {
        return Ok(f64::INFINITY);
    }
    let mut used = vec![false; minus.len()];
    let mut worst: f64 = 0.0;
    for x in plus {
        let (j, d) = minus
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (y + x).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("equal lengths");
        used[j] = true;
        worst = worst.max(d / x.norm().max(1.0));
    }
    Ok(worst)
}

/// Zeros of `−V` are the negated zeros of `V`, within `tau_cluster`.
pub fn check_sign_flip_symmetry(v: &Potential, cfg: &NumericConfig) -> bool {
    check_sign_flip_symmetry_within(v, cfg, cfg.tau_cluster)
}

pub fn check_sign_flip_symmetry_within(v: &Potential, cfg: &NumericConfig, tol: f64) -> bool {
    v.is_trivial() || sign_flip_deviation(v, cfg).is_ok_and(|d| d <= tol)
}

/// Runs every checker on a classified ledger.
pub fn evaluate_laws(
    v: &Potential,
    p: &JostPolynomial,
    ledger: &ZeroLedger,
    cfg: &NumericConfig,
) -> LawVerdicts {
    let b = v.b();
    let (left, eps_minus, right, eps_plus) = check_resonance_inequalities(ledger);
    let mut verdicts = LawVerdicts {
        count_identity: check_count_identity(ledger, b),
        bound_state_bound: check_bound_state_bound(ledger, b),
        left_resonance_inequality: left,
        epsilon_minus: eps_minus,
        right_resonance_inequality: right,
        epsilon_plus: eps_plus,
        small_coefficient_certificate: check_small_coefficient_criterion(p, ledger),
        rouche_certificate: check_rouche_certificate(v, ledger),
        sign_flip_symmetry: check_sign_flip_symmetry(v, cfg),
        diagnostics: Vec::new(),
    };
    let counts = format!(
        "b={b} N={} Z_left={} Z_m10={} Z_01={} Z_right={} Z_c={}",
        ledger.n, ledger.z_left, ledger.z_m10, ledger.z_01, ledger.z_right, ledger.z_c
    );
    let d = &mut verdicts.diagnostics;
    if !verdicts.count_identity || !verdicts.bound_state_bound {
        d.push(format!("count law violated: {counts}"));
    }
    if !left || !right {
        d.push(format!(
            "resonance inequality violated: eps_minus={eps_minus} eps_plus={eps_plus} {counts}"
        ));
    }
    if verdicts.small_coefficient_certificate == Some(false) {
        d.push(format!("small coefficients but N={}", ledger.n));
    }
    if verdicts.rouche_certificate == Some(false) {
        d.push(format!(
            "positive Rouché margin {} but N={}",
            rouche_margin(v),
            ledger.n
        ));
    }
    if !verdicts.sign_flip_symmetry {
        let dev = sign_flip_deviation(v, cfg).map_or_else(|e| e.to_string(), |x| format!("{x:e}"));
        d.push(format!(
            "sign-flip deviation {dev} exceeds {:e}",
            cfg.tau_cluster
        ));
    }
    verdicts
}
