//! The slope quartic and its real roots.
//!
//! Setting the derivative of the profile objective (intercept eliminated) to
//! zero and clearing the `β³` denominator leaves
//!
//! ```text
//! γ√(S_xx/S_yy)·β⁴ − γρ·β³ + (1 − γ)ρ·β − (1 − γ)√(S_yy/S_xx) = 0
//! ```
//!
//! Real roots are isolated by recursion on the derivative: the roots of `p'`
//! split the Cauchy interval of `p` into pieces on which `p` is monotone, so
//! each piece holds at most one root and a sign change brackets it exactly.

use crate::error::{Error, Result};
use crate::objective::check_gamma;
use crate::stats::SufficientStats;

/// `c4·β⁴ + c3·β³ + c2·β² + c1·β + c0`, coefficients in descending degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quartic {
    pub coeffs: [f64; 5],
}

impl Quartic {
    pub fn new(coeffs: [f64; 5]) -> Self {
        Self { coeffs }
    }

    pub fn eval(&self, x: f64) -> f64 {
        horner(&self.coeffs, x)
    }

    /// `max(1, max |cᵢ|)`; root residuals are measured against this.
    pub fn residual_scale(&self) -> f64 {
        self.coeffs.iter().fold(1.0_f64, |m, c| m.max(c.abs()))
    }
}

/// Builds the stationarity quartic of the profile objective.
pub fn build_quartic(stats: &SufficientStats, gamma: f64) -> Result<Quartic> {
    check_gamma(gamma)?;
    if stats.s_xx.is_nan() || stats.s_yy.is_nan() || stats.s_xx <= 0.0 || stats.s_yy <= 0.0 {
        return Err(Error::DegenerateData(format!(
            "quartic needs S_xx > 0 and S_yy > 0, got S_xx = {}, S_yy = {}",
            stats.s_xx, stats.s_yy
        )));
    }
    let ratio = stats.spread_ratio();
    let rho = stats.rho;
    Ok(Quartic::new([
        gamma / ratio,
        -gamma * rho,
        0.0,
        (1.0 - gamma) * rho,
        -(1.0 - gamma) * ratio,
    ]))
}

/// All real roots of `q`, ascending, each Newton-polished until
/// `|q(r)| ≤ residual_tol · q.residual_scale()`.
///
/// Roots of even multiplicity are reported once.
pub fn real_roots(q: &Quartic, residual_tol: f64) -> Result<Vec<f64>> {
    if q.coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "quartic coefficients must be finite: {:?}",
            q.coeffs
        )));
    }
    if q.coeffs[0] == 0.0 {
        return Err(Error::InvalidInput(
            "quartic leading coefficient is zero".into(),
        ));
    }
    if residual_tol.is_nan() || residual_tol <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "residual tolerance must be positive, got {residual_tol}"
        )));
    }

    let limit = residual_tol * q.residual_scale();
    let mut roots = Vec::new();
    for r in isolate(&q.coeffs) {
        let r = polish(&q.coeffs, r);
        let residual = q.eval(r).abs();
        if residual > limit {
            return Err(Error::SolverFailure(format!(
                "root {r} has residual {residual:e}, above {limit:e}"
            )));
        }
        roots.push(r);
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

fn horner(p: &[f64], x: f64) -> f64 {
    p.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// Running bound on the rounding error of `horner(p, x)`.
fn horner_error_bound(p: &[f64], x: f64) -> f64 {
    let ax = x.abs();
    let magnitude = p.iter().fold(0.0, |acc, &c| acc * ax + c.abs());
    2.0 * p.len() as f64 * f64::EPSILON * magnitude
}

fn derivative(p: &[f64]) -> Vec<f64> {
    let deg = p.len() - 1;
    p[..deg]
        .iter()
        .enumerate()
        .map(|(i, &c)| c * (deg - i) as f64)
        .collect()
}

fn eval_with_derivative(p: &[f64], x: f64) -> (f64, f64) {
    let mut value = 0.0;
    let mut slope = 0.0;
    for &c in p {
        slope = slope * x + value;
        value = value * x + c;
    }
    (value, slope)
}

/// Unpolished real roots of a polynomial with nonzero leading coefficient.
fn isolate(p: &[f64]) -> Vec<f64> {
    let deg = p.len() - 1;
    match deg {
        0 => return Vec::new(),
        1 => return vec![-p[1] / p[0]],
        _ => {}
    }

    let lead = p[0];
    let cauchy = 1.0 + p[1..].iter().fold(0.0_f64, |m, c| m.max((c / lead).abs()));

    let mut knots = vec![-cauchy];
    let mut critical = isolate(&derivative(p));
    critical.sort_by(f64::total_cmp);
    critical.dedup();
    knots.extend(critical.iter().copied().filter(|c| c.abs() < cauchy));
    knots.push(cauchy);

    let mut roots = Vec::new();
    // A critical point where p vanishes to rounding is a multiple root.
    for &c in &knots[1..knots.len() - 1] {
        if horner(p, c).abs() <= 4.0 * horner_error_bound(p, c) {
            roots.push(c);
        }
    }
    for pair in knots.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let (fa, fb) = (horner(p, a), horner(p, b));
        if fa == 0.0 || fb == 0.0 {
            continue;
        }
        if fa.signum() != fb.signum() {
            roots.push(bracketed_newton(p, a, b, fa));
        }
    }

    roots.sort_by(f64::total_cmp);
    collapse_clusters(p, roots)
}

/// Merges roots closer than the resolution of a double root, keeping the
/// member with the smallest residual.
fn collapse_clusters(p: &[f64], roots: Vec<f64>) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(roots.len());
    for r in roots {
        match out.last_mut() {
            Some(prev) if (r - *prev).abs() <= 1e-7 * (1.0 + r.abs()) => {
                if horner(p, r).abs() < horner(p, *prev).abs() {
                    *prev = r;
                }
            }
            _ => out.push(r),
        }
    }
    out
}

/// Safeguarded Newton iteration inside a sign-changing bracket.
fn bracketed_newton(p: &[f64], a: f64, b: f64, fa: f64) -> f64 {
    // Orient so that p(lo) < 0 < p(hi).
    let (mut lo, mut hi) = if fa < 0.0 { (a, b) } else { (b, a) };
    let mut x = 0.5 * (a + b);
    for _ in 0..200 {
        let (fx, dfx) = eval_with_derivative(p, x);
        if fx == 0.0 {
            return x;
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let width = (hi - lo).abs();
        if width <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            return x;
        }
        let newton = x - fx / dfx;
        let (left, right) = if lo < hi { (lo, hi) } else { (hi, lo) };
        let next = if newton.is_finite() && newton > left && newton < right {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if next == x {
            return x;
        }
        x = next;
    }
    x
}

/// A few unguarded Newton steps, keeping the best residual seen.
fn polish(p: &[f64], mut x: f64) -> f64 {
    let mut best = (horner(p, x).abs(), x);
    for _ in 0..8 {
        let (fx, dfx) = eval_with_derivative(p, x);
        if fx == 0.0 || dfx == 0.0 {
            break;
        }
        x -= fx / dfx;
        if !x.is_finite() {
            break;
        }
        let residual = horner(p, x).abs();
        if residual < best.0 {
            best = (residual, x);
        }
    }
    best.1
}
