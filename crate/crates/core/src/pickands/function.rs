use serde::Serialize;

use super::measure::PickandsMeasure;
use crate::error::{Error, Result};

/// A Pickands dependence function, convex on [0,1] with
/// `max(1-t, t) <= A(t) <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum PickandsFunction {
    /// `A(t) = 1 - t + 2∫₀ᵗ F(z) dz` for the distribution function `F` of the measure.
    Measure(PickandsMeasure),
    /// Gumbel family `A(t) = (t^θ + (1-t)^θ)^(1/θ)`.
    Gumbel { theta: f64 },
}

/// Worst violations of the Pickands-function constraints on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FunctionReport {
    pub grid_n: usize,
    /// `max(max(1-t,t) - A(t), A(t) - 1, 0)`.
    pub bounds: f64,
    /// `|A(0) - 1| + |A(1) - 1|`.
    pub endpoints: f64,
    /// Largest decrease of `D⁺A` between neighbouring grid points.
    pub convexity: f64,
    /// `max(|D⁺A| - 1, 0)`.
    pub slope_range: f64,
    /// `max(D⁻A - D⁺A, 0)`.
    pub one_sided_order: f64,
    pub lipschitz: f64,
}

impl FunctionReport {
    pub fn worst(&self) -> f64 {
        [
            self.bounds,
            self.endpoints,
            self.convexity,
            self.slope_range,
            self.one_sided_order,
            self.lipschitz,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Maps a Pickands dependence measure to its Pickands function.
pub fn upsilon(m: &PickandsMeasure) -> Result<PickandsFunction> {
    let report = m.validate();
    if !report.passed {
        return Err(Error::InvalidMeasure(format!(
            "mass residual {:e}, mean residual {:e}",
            report.mass_residual, report.mean_residual
        )));
    }
    Ok(PickandsFunction::Measure(m.clone()))
}

/// Gumbel terms `(r_a, r_b, ρ)` scaled by `max(t, 1-t)` so large θ does not underflow.
fn gumbel_parts(theta: f64, t: f64) -> (f64, f64, f64, f64) {
    let (a, b) = (t, 1.0 - t);
    let m = a.max(b);
    let (ra, rb) = (a / m, b / m);
    let rho = ra.powf(theta) + rb.powf(theta);
    (m, ra, rb, rho)
}

impl PickandsFunction {
    pub fn gumbel(theta: f64) -> Result<Self> {
        if !(theta >= 1.0 && theta.is_finite()) {
            return Err(Error::Domain(format!(
                "Gumbel theta must be >= 1, got {theta}"
            )));
        }
        Ok(Self::Gumbel { theta })
    }

    pub fn measure(&self) -> Option<&PickandsMeasure> {
        match self {
            Self::Measure(m) => Some(m),
            Self::Gumbel { .. } => None,
        }
    }

    /// Atoms of the underlying measure; closed-form families are atomless.
    pub fn atoms(&self) -> &[(f64, f64)] {
        match self {
            Self::Measure(m) => m.atoms(),
            Self::Gumbel { .. } => &[],
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, 1.0);
        match self {
            Self::Measure(m) => 1.0 - t + 2.0 * m.integrated_cdf(t),
            Self::Gumbel { theta } => {
                let (m, _, _, rho) = gumbel_parts(*theta, t);
                m * rho.powf(1.0 / theta)
            }
        }
    }

    fn gumbel_slope(theta: f64, t: f64) -> f64 {
        let (_, ra, rb, rho) = gumbel_parts(theta, t);
        (ra.powf(theta - 1.0) - rb.powf(theta - 1.0)) * rho.powf(1.0 / theta - 1.0)
    }

    /// Right derivative `D⁺A(t)`; at `t = 1` it is defined as `D⁻A(1)`.
    pub fn d_plus(&self, t: f64) -> f64 {
        match self {
            Self::Measure(m) => {
                if t >= 1.0 {
                    self.d_minus(1.0)
                } else {
                    2.0 * m.cdf(t.max(0.0)) - 1.0
                }
            }
            Self::Gumbel { theta } => Self::gumbel_slope(*theta, t.clamp(0.0, 1.0)),
        }
    }

    /// Left derivative `D⁻A(t)`; at `t = 0` it is `-1`.
    pub fn d_minus(&self, t: f64) -> f64 {
        match self {
            Self::Measure(m) => 2.0 * m.cdf_left(t.min(1.0)) - 1.0,
            Self::Gumbel { theta } => {
                if t <= 0.0 {
                    -1.0
                } else {
                    Self::gumbel_slope(*theta, t.min(1.0))
                }
            }
        }
    }

    /// `G_A(t) = A(t) + D⁺A(t)(1 - t)` on [0,1), with `G_A(1) = 1`.
    pub fn g(&self, t: f64) -> f64 {
        if t >= 1.0 {
            return 1.0;
        }
        let t = t.max(0.0);
        self.value(t) + self.d_plus(t) * (1.0 - t)
    }

    /// `(L, R)`: last point where `A(t) = 1 - t` and first point where `A(t) = t`.
    pub fn endpoints(&self) -> (f64, f64) {
        match self {
            Self::Measure(m) => m.endpoints(),
            Self::Gumbel { .. } => (0.0, 1.0),
        }
    }

    /// `t -> A(1 - t)`, the Pickands function of the transposed copula.
    pub fn reflect(&self) -> Self {
        match self {
            Self::Measure(m) => Self::Measure(m.reflect()),
            Self::Gumbel { theta } => Self::Gumbel { theta: *theta },
        }
    }

    pub fn check(&self, grid_n: usize) -> FunctionReport {
        let grid_n = grid_n.max(2);
        let ts: Vec<f64> = (0..grid_n)
            .map(|k| k as f64 / (grid_n - 1) as f64)
            .collect();
        let a: Vec<f64> = ts.iter().map(|&t| self.value(t)).collect();
        let dp: Vec<f64> = ts.iter().map(|&t| self.d_plus(t)).collect();
        let mut r = FunctionReport {
            grid_n,
            bounds: 0.0,
            endpoints: (a[0] - 1.0).abs() + (a[grid_n - 1] - 1.0).abs(),
            convexity: 0.0,
            slope_range: 0.0,
            one_sided_order: 0.0,
            lipschitz: 0.0,
        };
        for k in 0..grid_n {
            let t = ts[k];
            r.bounds = r.bounds.max((1.0 - t).max(t) - a[k]).max(a[k] - 1.0);
            r.slope_range = r.slope_range.max(dp[k].abs() - 1.0);
            if k > 0 {
                r.one_sided_order = r.one_sided_order.max(self.d_minus(t) - dp[k]);
                r.convexity = r.convexity.max(dp[k - 1] - dp[k]);
                r.lipschitz = r.lipschitz.max((a[k] - a[k - 1]).abs() - (t - ts[k - 1]));
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;

    const GRID: usize = 1001;

    fn grid() -> impl Iterator<Item = f64> {
        (0..GRID).map(|k| k as f64 / (GRID - 1) as f64)
    }

    #[test]
    fn upsilon_of_m_and_pi() {
        let am = upsilon(&PickandsMeasure::dirac(0.5).unwrap()).unwrap();
        let api = upsilon(&PickandsMeasure::discrete(&[(0.0, 0.5), (1.0, 0.5)]).unwrap()).unwrap();
        for t in grid() {
            assert!((am.value(t) - (1.0 - t).max(t)).abs() <= 1e-12);
            assert!((api.value(t) - 1.0).abs() <= 1e-12);
            assert_eq!(api.d_plus(t.min(0.999)), 0.0);
        }
        assert_eq!(am.d_plus(0.3), -1.0);
        assert_eq!(am.d_plus(0.5), 1.0);
        assert_eq!(am.d_minus(0.5), -1.0);
    }

    #[test]
    fn upsilon_rejects_invalid() {
        assert!(matches!(
            upsilon(&PickandsMeasure::dirac(1.0).unwrap()),
            Err(Error::InvalidMeasure(_))
        ));
    }

    #[test]
    fn mixed_measure_pieces() {
        let a = upsilon(&reference::mixed_measure()).unwrap();
        for t in grid() {
            let expect = if t < 0.5 {
                t * t - t + 1.0
            } else if t < 0.75 {
                t / 5.0 + 13.0 / 20.0
            } else {
                16.0 / 35.0 * t * t + 19.0 / 35.0
            };
            assert!((a.value(t) - expect).abs() <= 1e-12, "t={t}");
        }
        assert!(a.check(GRID).worst() <= 1e-12);
    }

    #[test]
    fn three_atom_derivatives_and_g() {
        let a = upsilon(&reference::three_atom_measure()).unwrap();
        assert!((a.value(0.5) - 0.6).abs() < 1e-15);
        assert!((a.d_plus(0.5) - 0.6).abs() < 1e-15);
        assert!((a.d_minus(0.5) + 0.6).abs() < 1e-15);
        assert!((a.g(0.5) - 0.9).abs() < 1e-15);
        assert_eq!(a.g(1.0), 1.0);
    }

    #[test]
    fn g_for_m_and_pi() {
        let am = upsilon(&PickandsMeasure::dirac(0.5).unwrap()).unwrap();
        assert!(am.g(0.3).abs() < 1e-15);
        assert!((am.g(0.7) - 1.0).abs() < 1e-15);
        let api = upsilon(&PickandsMeasure::discrete(&[(0.0, 0.5), (1.0, 0.5)]).unwrap()).unwrap();
        for t in grid() {
            assert!((api.g(t) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn gumbel_values() {
        assert!(PickandsFunction::gumbel(0.5).is_err());
        let g1 = PickandsFunction::gumbel(1.0).unwrap();
        let g2 = PickandsFunction::gumbel(2.0).unwrap();
        let big = PickandsFunction::gumbel(500.0).unwrap();
        for t in grid() {
            assert!((g1.value(t) - 1.0).abs() < 1e-15);
        }
        assert!((g2.value(0.5) - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((big.value(0.5) - 0.5).abs() < 1e-3);
        assert_eq!(g2.d_plus(0.0), -1.0);
        assert_eq!(g2.d_plus(1.0), 1.0);
        for theta in [1.0, 1.5, 2.0, 7.0, 500.0] {
            let a = PickandsFunction::gumbel(theta).unwrap();
            assert!(a.check(GRID).worst() <= 1e-12, "theta={theta}");
        }
    }

    #[test]
    fn gumbel_slope_matches_finite_differences() {
        let a = PickandsFunction::gumbel(2.0).unwrap();
        let h = 1e-6;
        for k in 1..20 {
            let t = k as f64 / 20.0;
            let fd = (a.value(t + h) - a.value(t - h)) / (2.0 * h);
            assert!((fd - a.d_plus(t)).abs() < 1e-8);
        }
    }

    #[test]
    fn cantor_backed_function_is_valid() {
        let m = PickandsMeasure::new(vec![(0.0, 0.25), (1.0, 0.25)], None, 0.5).unwrap();
        let a = upsilon(&m).unwrap();
        assert!(a.check(GRID).worst() <= 1e-12);
        assert!((a.value(1.0) - 1.0).abs() < 1e-15);
    }
}
