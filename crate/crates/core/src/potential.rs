//! Potentials on the half-line lattice and the `λ ↔ z` change of variables.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A real potential `V(1), …, V(b)` with `V(b) ≠ 0`, or the trivial potential
/// (`b = 0`, no entries).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Potential {
    values: Vec<f64>,
}

impl Potential {
    pub fn trivial() -> Self {
        Potential { values: Vec::new() }
    }

    /// Support length `b`.
    pub fn b(&self) -> usize {
        self.values.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.values.is_empty()
    }

    /// Entries `V(1)..V(b)` (index 0 holds `V(1)`).
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `V(n)` with the lattice convention `V(n) = 0` for `n > b`.
    pub fn at(&self, n: usize) -> f64 {
        if n == 0 {
            return 0.0;
        }
        self.values.get(n - 1).copied().unwrap_or(0.0)
    }

    pub fn negated(&self) -> Potential {
        Potential {
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    pub fn scaled(&self, t: f64) -> Result<Potential> {
        validate_potential(self.values.iter().map(|v| t * v).collect())
    }

    /// Parses a potential file: either a JSON array of reals or plain text
    /// with one real per line. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Potential> {
        let trimmed = text.trim();
        let values: Vec<f64> = if trimmed.starts_with('[') {
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?
        } else {
            trimmed
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .filter(|l| !l.is_empty())
                .map(|l| {
                    l.parse::<f64>()
                        .map_err(|e| Error::Parse(format!("'{l}': {e}")))
                })
                .collect::<Result<_>>()?
        };
        validate_potential(values)
    }
}

impl TryFrom<Vec<f64>> for Potential {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        validate_potential(values)
    }
}

impl From<Potential> for Vec<f64> {
    fn from(p: Potential) -> Self {
        p.values
    }
}

/// Checks class membership: all entries finite and the last one nonzero.
/// Trailing zeros are rejected rather than trimmed.
pub fn validate_potential(values: Vec<f64>) -> Result<Potential> {
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index: index + 1 });
    }
    if let Some(&last) = values.last() {
        if last == 0.0 {
            return Err(Error::TrailingZero { b: values.len() });
        }
    }
    Ok(Potential { values })
}

/// A point of the spectral plane carrying both parametrizations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub z: Complex64,
    pub lambda: Complex64,
}

impl SpectralPoint {
    pub fn from_z(z: Complex64) -> Result<Self> {
        Ok(SpectralPoint {
            z,
            lambda: z_to_lambda(z)?,
        })
    }

    pub fn from_lambda(lambda: f64) -> Self {
        SpectralPoint {
            z: lambda_to_z(lambda),
            lambda: Complex64::new(lambda, 0.0),
        }
    }
}

/// `z = 1 − λ/2 + ½·√λ·√(λ−4)` with principal square roots taken factor by
/// factor. This sends `λ < 0` into `(0, 1)`, `(0, 4)` onto the upper unit
/// semicircle and `λ > 4` into `(−1, 0)`; `λ = 0` and `λ = 4` give exactly
/// `z = 1` and `z = −1`.
pub fn lambda_to_z(lambda: f64) -> Complex64 {
    if lambda < 0.0 {
        // the other root of z² − (2 − λ)z + 1 is > 1; invert it to avoid cancellation
        let big = 1.0 - 0.5 * lambda + 0.5 * (lambda * (lambda - 4.0)).sqrt();
        Complex64::new(1.0 / big, 0.0)
    } else if lambda > 4.0 {
        let big = 1.0 - 0.5 * lambda - 0.5 * (lambda * (lambda - 4.0)).sqrt();
        Complex64::new(1.0 / big, 0.0)
    } else {
        Complex64::new(1.0 - 0.5 * lambda, 0.5 * (lambda * (4.0 - lambda)).sqrt())
    }
}

/// `λ = 2 − z − 1/z`.
pub fn z_to_lambda(z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroArgument);
    }
    Ok(Complex64::new(2.0, 0.0) - z - z.inv())
}
