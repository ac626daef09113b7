//! The full analysis pipeline and its serializable report.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::config::NumericConfig;
use crate::error::Result;
use crate::laws::{evaluate_laws, LawVerdicts};
use crate::potential::Potential;
use crate::spectrum::{ledger_for, norming_constants, BoundState, ZeroClass, ZeroLedger};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
    pub class: ZeroClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "Z_left")]
    pub z_left: usize,
    #[serde(rename = "Z_m10")]
    pub z_m10: usize,
    #[serde(rename = "Z_01")]
    pub z_01: usize,
    #[serde(rename = "Z_right")]
    pub z_right: usize,
    #[serde(rename = "Z_c")]
    pub z_c: usize,
    pub mu_minus: usize,
    pub mu_plus: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub s: usize,
}

impl From<&ZeroLedger> for Counts {
    fn from(l: &ZeroLedger) -> Self {
        Counts {
            n: l.n,
            z_left: l.z_left,
            z_m10: l.z_m10,
            z_01: l.z_01,
            z_right: l.z_right,
            z_c: l.z_c,
            mu_minus: l.mu_minus,
            mu_plus: l.mu_plus,
            p: l.p,
            q: l.q,
            r: l.r,
            s: l.s,
        }
    }
}

/// Wall-clock time of the pipeline; kept apart from the data so reports
/// compare equal across runs once it is stripped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub potential: Potential,
    pub b: usize,
    pub jost_coefficients: Vec<f64>,
    pub zeros: Vec<ZeroRecord>,
    pub counts: Counts,
    pub bound_states: Vec<BoundState>,
    pub verdicts: LawVerdicts,
    pub config: NumericConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl SpectralReport {
    pub fn without_timing(mut self) -> Self {
        self.timing = None;
        self
    }
}

/// Validate, build `f₀`, find and classify its zeros, compute norming
/// constants, and check every law.
pub fn analyze(v: &Potential, cfg: &NumericConfig) -> Result<SpectralReport> {
    let start = Instant::now();
    cfg.validate()?;
    let (p, ledger) = ledger_for(v, cfg)?;
    let bound_states = norming_constants(&ledger, &p)?;
    let verdicts = evaluate_laws(v, &p, &ledger, cfg);
    let zeros = ledger
        .zeros
        .iter()
        .map(|z| ZeroRecord {
            re: z.z.re,
            im: z.z.im,
            multiplicity: z.multiplicity,
            class: z.class,
        })
        .collect();
    Ok(SpectralReport {
        potential: v.clone(),
        b: v.b(),
        jost_coefficients: p.coeffs.clone(),
        zeros,
        counts: Counts::from(&ledger),
        bound_states,
        verdicts,
        config: *cfg,
        timing: Some(Timing {
            ms: start.elapsed().as_secs_f64() * 1e3,
        }),
    })
}
