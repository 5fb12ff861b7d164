//! Straight-line fits that balance squared vertical and squared horizontal
//! errors.
//!
//! Ordinary least squares minimizes vertical errors only, which makes the
//! fitted line good for predicting `y` from `x` but poor for the inverse
//! question, "which `x` produces this `y`?". This crate minimizes
//!
//! ```text
//! SSE(β₀, β₁) = γ·Σ(yᵢ − β₀ − β₁xᵢ)² + (1 − γ)·Σ(xᵢ − (yᵢ − β₀)/β₁)²
//! ```
//!
//! for a weight `γ ∈ [0, 1]`. The optimal intercept is the usual
//! `ȳ − β₁x̄` for every γ, and the optimal slope is the unique positive root
//! of a quartic whose coefficients depend only on γ, the correlation and the
//! spread ratio `√(S_yy/S_xx)`.
//!
//! ```
//! use dualfit::{fit, Dataset, FitConfig};
//!
//! let data = Dataset::new(vec![(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (1.0, 1.0)])?;
//! let line = fit(&data, &FitConfig::new(0.9))?;
//! assert!((line.beta1 - 0.6612).abs() < 1e-4);
//! assert!((line.inverse_predict(0.25)? - 0.5).abs() < 1e-12);
//! # Ok::<(), dualfit::Error>(())
//! ```
//!
//! The [`oracle`] module re-derives every fit without the quartic, by
//! golden-section search on the profile objective and by finite differences.

mod data;
mod error;
mod fit;
mod objective;
pub mod oracle;
mod quartic;
mod stats;

pub use data::Dataset;
pub use error::{Error, Result};
pub use fit::{
    fit, fit_stats, select_slope, slope_bounds, FitConfig, FittedLine, NegativeCorrelationPolicy,
    SlopeChoice, ZERO_CORRELATION,
};
pub use objective::{intercept, sse, sse_gradient};
pub use quartic::{build_quartic, real_roots, Quartic};
pub use stats::{compute_stats, SufficientStats};
