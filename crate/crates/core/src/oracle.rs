//! Bound-state energies from a finite section of the operator.
//!
//! The first `M` sites with a hard wall at `M + 1` give a symmetric
//! tridiagonal matrix (diagonal `2 + V_n`, off-diagonal `−1`). Its
//! eigenvalues outside `[0, 4]` approach the bound-state energies with an
//! error of order `|α|^(2M)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::NumericConfig;
use crate::error::{Error, Result};
use crate::potential::{lambda_to_z, Potential};
use crate::spectrum::ledger_for;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedOperator {
    pub m: usize,
    pub diagonal: Vec<f64>,
}

impl TruncatedOperator {
    pub fn new(v: &Potential, m: usize) -> Result<Self> {
        if m <= v.b() {
            return Err(Error::InvalidArgument(format!(
                "truncation size {m} must exceed the support {}",
                v.b()
            )));
        }
        Ok(Self {
            m,
            diagonal: (1..=m).map(|n| 2.0 + v.at(n)).collect(),
        })
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn sturm_count(&self, x: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for (i, &a) in self.diagonal.iter().enumerate() {
            d = if i == 0 { a - x } else { a - x - 1.0 / d };
            if d == 0.0 {
                d = -f64::EPSILON * (a.abs() + x.abs() + 2.0);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn bounds(&self) -> (f64, f64) {
        let lo = self.diagonal.iter().cloned().fold(f64::INFINITY, f64::min) - 2.0;
        let hi = self
            .diagonal
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max)
            + 2.0;
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.bounds();
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return mid;
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
}

/// All `M` eigenvalues, ascending.
pub fn truncated_eigenvalues(v: &Potential, m: usize) -> Result<Vec<f64>> {
    let op = TruncatedOperator::new(v, m)?;
    Ok((0..m).into_par_iter().map(|k| op.eigenvalue(k)).collect())
}

/// Eigenvalues below `−margin` or above `4 + margin`, ascending.
pub fn oracle_bound_states(v: &Potential, m: usize, margin: f64) -> Result<Vec<f64>> {
    if margin <= 0.0 || !margin.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "margin must be positive, got {margin}"
        )));
    }
    let op = TruncatedOperator::new(v, m)?;
    let below = op.sturm_count(-margin);
    let above_start = op.sturm_count(4.0 + margin);
    Ok((0..below)
        .chain(above_start..m)
        .map(|k| op.eigenvalue(k))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub alpha: f64,
    pub lambda_root: f64,
    pub lambda_oracle: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub m: usize,
    pub alpha_max: f64,
    /// Bound-state zeros with `|α| < alpha_max`.
    pub root_count: usize,
    /// Oracle eigenvalues whose `z` satisfies `|z| < alpha_max`.
    pub oracle_count: usize,
    pub rows: Vec<OracleRow>,
    pub max_delta: f64,
}

impl OracleComparison {
    pub fn counts_agree(&self) -> bool {
        self.root_count == self.oracle_count
    }
}

/// Pairs root-derived energies with oracle eigenvalues, both restricted to
/// bound states with `|α| < alpha_max`.
pub fn compare_with_roots(
    v: &Potential,
    m: usize,
    margin: f64,
    alpha_max: f64,
    cfg: &NumericConfig,
) -> Result<OracleComparison> {
    let (_, ledger) = ledger_for(v, cfg)?;
    let mut roots: Vec<(f64, f64)> = ledger
        .bound_state_positions()
        .into_iter()
        .map(|(_, z)| z.z.re)
        .filter(|a| a.abs() < alpha_max)
        .map(|a| (a, 2.0 - a - 1.0 / a))
        .collect();
    roots.sort_by(|a, b| a.1.total_cmp(&b.1));
    let oracle: Vec<f64> = oracle_bound_states(v, m, margin)?
        .into_iter()
        .filter(|&l| lambda_to_z(l).norm() < alpha_max)
        .collect();
    let rows: Vec<OracleRow> = roots
        .iter()
        .zip(&oracle)
        .map(|(&(alpha, lambda_root), &lambda_oracle)| OracleRow {
            alpha,
            lambda_root,
            lambda_oracle,
            delta: (lambda_root - lambda_oracle).abs(),
        })
        .collect();
    Ok(OracleComparison {
        m,
        alpha_max,
        root_count: roots.len(),
        oracle_count: oracle.len(),
        max_delta: rows.iter().map(|r| r.delta).fold(0.0, f64::max),
        rows,
    })
}
