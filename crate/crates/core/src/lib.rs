//! Spectral analysis of the half-line discrete Schrödinger operator
//!
//! ```text
//! -ψ(n+1) + 2ψ(n) - ψ(n-1) + V(n)ψ(n) = λψ(n),   n ≥ 1,   ψ(0) = 0
//! ```
//!
//! for real potentials supported on `{1, …, b}` with `V(b) ≠ 0`.
//!
//! The Jost function `f₀(z)` of such a potential is a real polynomial of
//! degree `2b − 1` in the parameter `z` (with `λ = 2 − z − 1/z`). Its zeros in
//! `(−1, 0) ∪ (0, 1)` are exactly the bound states; real zeros outside the
//! closed unit disk are real resonances; nonreal zeros always lie outside the
//! unit circle. This crate builds `f₀`, finds and classifies its zeros,
//! computes norming constants, checks the counting laws those zeros must
//! obey (`0 ≤ N ≤ b` among them), constructs potentials with a prescribed
//! number of bound states, solves the `b = 2` and `b = 3` inverse problems,
//! and cross-checks bound-state energies against eigenvalues of a truncated
//! tridiagonal matrix.

pub mod config;
pub mod design;
pub mod error;
pub mod jost;
pub mod laws;
pub mod oracle;
pub mod poly;
pub mod potential;
pub mod report;
pub mod spectrum;

pub use config::{NumericConfig, Precision};
pub use error::{Error, Result};
pub use jost::{
    fg_decompose, jost_coefficients, jost_eval, jost_solution, rouche_margin, FgDecomposition,
    JostPolynomial,
};
pub use laws::LawVerdicts;
pub use potential::{lambda_to_z, validate_potential, z_to_lambda, Potential, SpectralPoint};
pub use report::{analyze, SpectralReport};
pub use spectrum::{
    classify_zeros, find_zeros, norming_constants, BoundState, ClassifiedZero, Root, ZeroClass,
    ZeroLedger,
};

pub use num_complex::Complex64;
