use serde::Serialize;

use crate::copula::Copula;
use crate::error::{Error, Result};

/// Default decreasing steps for one-sided difference quotients.
pub const DEFAULT_STEPS: [f64; 4] = [1e-4, 1e-5, 1e-6, 1e-7];
/// Step of the central differences in [`kernel_derivative_consistency`].
pub const CENTRAL_STEP: f64 = 1e-5;
/// Default detection threshold for [`nondiff_scan`].
pub const DEFAULT_THRESHOLD: f64 = 1e-2;
/// Scan detections closer than this to an analytic location are merged into it.
const MERGE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

/// One-sided partial derivatives of `C` in the first argument at `(x, y)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivativeProbe {
    pub x: f64,
    pub y: f64,
    pub steps: Vec<f64>,
    /// Difference quotient at the smallest usable step.
    pub plus: Option<f64>,
    pub minus: Option<f64>,
}

impl DerivativeProbe {
    /// `∂₁⁻C - ∂₁⁺C`, clamped at 0, once both sides are known.
    pub fn gap(&self) -> Option<f64> {
        Some((self.minus? - self.plus?).max(0.0))
    }
}

fn quotient(c: &Copula, x: f64, y: f64, side: Side, steps: &[f64]) -> Result<f64> {
    let base = c.cdf(x, y);
    let mut last = None;
    for &h in steps {
        let q = match side {
            Side::Plus if x + h < 1.0 => (c.cdf(x + h, y) - base) / h,
            Side::Minus if x - h > 0.0 => (base - c.cdf(x - h, y)) / h,
            _ => continue,
        };
        last = Some(q);
    }
    last.ok_or(Error::StepUnderflow { x })
}

/// Difference quotient of `C(·, y)` at `x` on one side, over [`DEFAULT_STEPS`].
pub fn one_sided_partial(c: &Copula, x: f64, y: f64, side: Side) -> Result<DerivativeProbe> {
    one_sided_partial_with(c, x, y, side, &DEFAULT_STEPS)
}

pub fn one_sided_partial_with(
    c: &Copula,
    x: f64,
    y: f64,
    side: Side,
    steps: &[f64],
) -> Result<DerivativeProbe> {
    let q = quotient(c, x, y, side, steps)?;
    let (plus, minus) = match side {
        Side::Plus => (Some(q), None),
        Side::Minus => (None, Some(q)),
    };
    Ok(DerivativeProbe {
        x,
        y,
        steps: steps.to_vec(),
        plus,
        minus,
    })
}

/// Both one-sided partials at `(x, y)`.
pub fn partial_probe(c: &Copula, x: f64, y: f64) -> Result<DerivativeProbe> {
    Ok(DerivativeProbe {
        x,
        y,
        steps: DEFAULT_STEPS.to_vec(),
        plus: Some(quotient(c, x, y, Side::Plus, &DEFAULT_STEPS)?),
        minus: Some(quotient(c, x, y, Side::Minus, &DEFAULT_STEPS)?),
    })
}

/// A point where `∂₁C(x, ·)` fails to exist.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Nondifferentiability {
    pub y: f64,
    pub gap: f64,
    /// The location and gap come from the family's closed form.
    pub analytic: bool,
}

/// Points `y` where `∂₁⁻C(x,y) - ∂₁⁺C(x,y)` exceeds `threshold`.
///
/// Families with a known kernel point mass contribute their jump locations
/// with the exact gap; grid points `k/(y_grid_n+1)` are probed numerically and
/// added when they are not already covered. Output is sorted by `y`.
pub fn nondiff_scan(
    c: &Copula,
    x: f64,
    y_grid_n: usize,
    threshold: f64,
) -> Result<Vec<Nondifferentiability>> {
    let mut found: Vec<Nondifferentiability> = c
        .kernel_jumps(x)
        .into_iter()
        .filter(|&(y, size)| size > threshold && y > 0.0 && y < 1.0)
        .map(|(y, gap)| Nondifferentiability {
            y,
            gap,
            analytic: true,
        })
        .collect();
    let analytic = found.len();
    for k in 1..=y_grid_n {
        let y = k as f64 / (y_grid_n + 1) as f64;
        let gap = partial_probe(c, x, y)?.gap().unwrap_or(0.0);
        if gap > threshold
            && !found[..analytic]
                .iter()
                .any(|f| (f.y - y).abs() <= MERGE_TOL)
        {
            found.push(Nondifferentiability {
                y,
                gap,
                analytic: false,
            });
        }
    }
    found.sort_by(|a, b| a.y.total_cmp(&b.y));
    Ok(found)
}

/// `|(C(x+h,y) - C(x-h,y))/2h - K(x,[0,y])|` with `h = CENTRAL_STEP`.
pub fn kernel_derivative_residual(c: &Copula, x: f64, y: f64) -> f64 {
    let h = CENTRAL_STEP;
    let d = (c.cdf(x + h, y) - c.cdf(x - h, y)) / (2.0 * h);
    (d - c.kernel_cdf(x, y)).abs()
}

/// Largest [`kernel_derivative_residual`] over `y = k/(y_grid_n+1)`.
///
/// Small only when `K(·,[0,y])` is continuous at `x`; families with point
/// masses in the kernel show residuals of the order of the jump.
pub fn kernel_derivative_consistency(c: &Copula, x: f64, y_grid_n: usize) -> f64 {
    (1..=y_grid_n)
        .map(|k| kernel_derivative_residual(c, x, k as f64 / (y_grid_n + 1) as f64))
        .fold(0.0, f64::max)
}

/// Largest `|∂_y K_C(x,[0,y]) - ∂_x K_{Cᵗ}(y,[0,x])|` over the interior grid
/// `{k/(grid_n+1)}²`, both sides by central differences with step `h`.
///
/// Both sides estimate the density of an absolutely continuous copula.
pub fn schwarz_check(c: &Copula, grid_n: usize, h: f64) -> f64 {
    let t = c.transpose();
    let mut worst = 0.0f64;
    for i in 1..=grid_n {
        let x = i as f64 / (grid_n + 1) as f64;
        for j in 1..=grid_n {
            let y = j as f64 / (grid_n + 1) as f64;
            let lhs = (c.kernel_cdf(x, y + h) - c.kernel_cdf(x, y - h)) / (2.0 * h);
            let rhs = (t.kernel_cdf(y, x + h) - t.kernel_cdf(y, x - h)) / (2.0 * h);
            worst = worst.max((lhs - rhs).abs());
        }
    }
    worst
}
