//! The γ-weighted vertical/horizontal squared-error objective.
//!
//! For a line `y = β₀ + β₁x` the vertical residual of a point is
//! `yᵢ − β₀ − β₁xᵢ` and the horizontal residual is `xᵢ − (yᵢ − β₀)/β₁`,
//! which is the vertical residual divided by `−β₁`. Both sums therefore share
//! the same residual sum of squares
//!
//! ```text
//! R(β₀, β₁) = S_yy − 2β₁S_xy + β₁²S_xx + n(ȳ − β₀ − β₁x̄)²
//! ```
//!
//! and the objective factors as `R · (γ + (1 − γ)/β₁²)`.

use crate::error::{Error, Result};
use crate::stats::SufficientStats;

pub(crate) fn check_gamma(gamma: f64) -> Result<()> {
    if (0.0..=1.0).contains(&gamma) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "gamma must lie in [0, 1], got {gamma}"
        )))
    }
}

/// Offset of the centroid from the line, `ȳ − β₀ − β₁x̄`.
fn centroid_gap(stats: &SufficientStats, beta0: f64, beta1: f64) -> f64 {
    stats.y_bar - beta0 - beta1 * stats.x_bar
}

/// `R` written around the least-squares slope `b = S_xy/S_xx`:
/// `(S_yy − S_xy²/S_xx) + S_xx(β₁ − b)² + n·gap²`.
///
/// The expanded quadratic loses all relative precision near the minimum when
/// ρ is close to 1; here the cancellation is confined to a term that does not
/// depend on the line, so comparisons between slopes stay accurate.
fn residual_sum(stats: &SufficientStats, beta0: f64, beta1: f64) -> f64 {
    let gap = centroid_gap(stats, beta0, beta1);
    let ols = stats.s_xy / stats.s_xx;
    let unexplained = (stats.s_yy - stats.s_xy * ols).max(0.0);
    let d = beta1 - ols;
    unexplained + stats.s_xx * d * d + stats.n as f64 * gap * gap
}

/// Weighted sum of squared vertical and squared horizontal errors.
///
/// `gamma` weights the vertical part and `1 − gamma` the horizontal part.
/// The horizontal part is skipped entirely at `gamma = 1`, so a zero slope
/// is only rejected when it actually enters a denominator.
pub fn sse(stats: &SufficientStats, beta0: f64, beta1: f64, gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    if beta1 == 0.0 && gamma < 1.0 {
        return Err(Error::SingularSlope { slope: beta1 });
    }
    let r = residual_sum(stats, beta0, beta1);
    let vertical = gamma * r;
    if gamma == 1.0 {
        return Ok(vertical);
    }
    Ok(vertical + (1.0 - gamma) * r / (beta1 * beta1))
}

/// Partial derivatives `(∂SSE/∂β₀, ∂SSE/∂β₁)`.
pub fn sse_gradient(
    stats: &SufficientStats,
    beta0: f64,
    beta1: f64,
    gamma: f64,
) -> Result<(f64, f64)> {
    check_gamma(gamma)?;
    if beta1 == 0.0 {
        return Err(Error::SingularSlope { slope: beta1 });
    }
    let n = stats.n as f64;
    let gap = centroid_gap(stats, beta0, beta1);
    let r = residual_sum(stats, beta0, beta1);
    let b2 = beta1 * beta1;
    let weight = gamma + (1.0 - gamma) / b2;

    let dr_d0 = -2.0 * n * gap;
    let dr_d1 = 2.0 * stats.s_xx * (beta1 - stats.s_xy / stats.s_xx) - 2.0 * n * stats.x_bar * gap;

    let d0 = dr_d0 * weight;
    let d1 = dr_d1 * weight - 2.0 * (1.0 - gamma) * r / (b2 * beta1);
    Ok((d0, d1))
}

/// Optimal intercept for a given slope: the line through the centroid.
///
/// The same for every γ.
pub fn intercept(stats: &SufficientStats, beta1: f64) -> f64 {
    stats.y_bar - beta1 * stats.x_bar
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Dataset;
    use crate::stats::compute_stats;

    fn worked_points() -> Vec<(f64, f64)> {
        vec![(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (1.0, 1.0)]
    }

    fn stats_of(points: &[(f64, f64)]) -> SufficientStats {
        compute_stats(&Dataset::new(points.to_vec()).unwrap()).unwrap()
    }

    /// Direct per-point evaluation of the weighted objective.
    fn raw_sse(points: &[(f64, f64)], b0: f64, b1: f64, gamma: f64) -> f64 {
        let vertical: f64 = points.iter().map(|&(x, y)| (y - b0 - b1 * x).powi(2)).sum();
        let horizontal: f64 = points
            .iter()
            .map(|&(x, y)| (x - y / b1 + b0 / b1).powi(2))
            .sum();
        gamma * vertical + (1.0 - gamma) * horizontal
    }

    /// Per-point partial derivatives written term by term from the raw sums.
    fn raw_gradient(points: &[(f64, f64)], b0: f64, b1: f64, gamma: f64) -> (f64, f64) {
        let n = points.len() as f64;
        let sum_resid: f64 = points.iter().map(|&(x, y)| y - b1 * x).sum();
        let d0 = 2.0 * (n * b0 - sum_resid) * (gamma * b1 * b1 + 1.0 - gamma) / (b1 * b1);
        let vert: f64 = points
            .iter()
            .map(|&(x, y)| -2.0 * x * y + 2.0 * b0 * x + 2.0 * b1 * x * x)
            .sum();
        let horiz: f64 = -2.0 * n * b0 * b0 / b1.powi(3)
            + points
                .iter()
                .map(|&(x, y)| {
                    2.0 * x * y / (b1 * b1) - 2.0 * b0 * x / (b1 * b1) - 2.0 * y * y / b1.powi(3)
                        + 4.0 * b0 * y / b1.powi(3)
                })
                .sum::<f64>();
        (d0, gamma * vert + (1.0 - gamma) * horiz)
    }

    fn rel_err(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn perfect_fit_has_zero_sse() {
        let s = stats_of(&[(0.0, 0.0), (1.0, 1.0)]);
        for gamma in [0.0, 0.3, 0.7, 1.0] {
            assert_eq!(sse(&s, 0.0, 1.0, gamma).unwrap(), 0.0);
        }
    }

    #[test]
    fn sufficient_statistics_match_raw_sum() {
        let pts = worked_points();
        let s = stats_of(&pts);
        let fast = sse(&s, 0.0, 1.0, 0.5).unwrap();
        let raw = raw_sse(&pts, 0.0, 1.0, 0.5);
        assert!(rel_err(fast, raw) <= 1e-10, "{fast} vs {raw}");
        // (0,0),(0,0),(1,0),(1,1) against y = x: residuals 0,0,-1,0 both ways.
        assert!((raw - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reported_fit_is_a_profile_minimum() {
        let s = stats_of(&worked_points());
        let profile = |b1: f64| sse(&s, intercept(&s, b1), b1, 0.9).unwrap();
        let at = profile(0.6612);
        assert!(at <= profile(0.6612 + 1e-3));
        assert!(at <= profile(0.6612 - 1e-3));
    }

    #[test]
    fn zero_slope_is_singular_unless_purely_vertical() {
        let s = stats_of(&worked_points());
        assert!(matches!(
            sse(&s, 0.0, 0.0, 0.5),
            Err(Error::SingularSlope { .. })
        ));
        assert!(sse(&s, 0.25, 0.0, 1.0).is_ok());
        assert!(matches!(
            sse_gradient(&s, 0.0, 0.0, 1.0),
            Err(Error::SingularSlope { .. })
        ));
    }

    #[test]
    fn gamma_out_of_range() {
        let s = stats_of(&worked_points());
        assert!(matches!(
            sse(&s, 0.0, 1.0, 1.5),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            sse(&s, 0.0, 1.0, f64::NAN),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn gradient_vanishes_at_perfect_fit() {
        let s = stats_of(&[(0.0, 0.0), (1.0, 1.0)]);
        let (d0, d1) = sse_gradient(&s, 0.0, 1.0, 0.7).unwrap();
        assert_eq!((d0, d1), (0.0, 0.0));
    }

    #[test]
    fn gradient_near_zero_at_reported_fit() {
        let s = stats_of(&worked_points());
        let (d0, d1) = sse_gradient(&s, -0.0806, 0.6612, 0.9).unwrap();
        assert!(d0.abs() < 5e-3 && d1.abs() < 5e-3, "({d0}, {d1})");
    }

    #[test]
    fn gradient_matches_term_by_term_derivative() {
        let pts = worked_points();
        let s = stats_of(&pts);
        for &(b0, b1, g) in &[(0.1, 0.8, 0.5), (-0.3, 1.7, 0.2), (0.4, -0.6, 0.9)] {
            let (a0, a1) = sse_gradient(&s, b0, b1, g).unwrap();
            let (r0, r1) = raw_gradient(&pts, b0, b1, g);
            assert!(rel_err(a0, r0) < 1e-12, "{a0} vs {r0}");
            assert!(rel_err(a1, r1) < 1e-12, "{a1} vs {r1}");
        }
    }

    #[test]
    fn gradient_matches_central_differences() {
        let pts = worked_points();
        let s = stats_of(&pts);
        let (b0, b1, g): (f64, f64, f64) = (0.1, 0.8, 0.5);
        let f = |p0: f64, p1: f64| raw_sse(&pts, p0, p1, g);
        let h0 = 1e-6 * (1.0 + b0.abs());
        let h1 = 1e-6 * (1.0 + b1.abs());
        let fd0 = (f(b0 + h0, b1) - f(b0 - h0, b1)) / (2.0 * h0);
        let fd1 = (f(b0, b1 + h1) - f(b0, b1 - h1)) / (2.0 * h1);
        let (a0, a1) = sse_gradient(&s, b0, b1, g).unwrap();
        assert!((a0 - fd0).abs() / a0.abs().max(fd0.abs()) <= 1e-6);
        assert!((a1 - fd1).abs() / a1.abs().max(fd1.abs()) <= 1e-6);
    }

    #[test]
    fn intercept_passes_through_centroid() {
        let s = stats_of(&worked_points());
        assert!((intercept(&s, 0.6612) - (0.25 - 0.5 * 0.6612)).abs() < 1e-15);
        assert_eq!(intercept(&s, 0.0), s.y_bar);
        let line = stats_of(&[(0.0, 0.0), (1.0, 1.0)]);
        assert_eq!(intercept(&line, 1.0), 0.0);
    }
}
