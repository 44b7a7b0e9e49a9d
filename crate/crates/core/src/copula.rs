//! The copula type, kernel evaluation and the family-independent operations:
//! validation, disintegration checks, conditional inverse sampling and the
//! empirical copula.

use std::fmt;

use serde::Serialize;

use crate::constructions::{Checkerboard, Mixture, RotationCopula, Shuffle};
use crate::error::{Error, Result};
use crate::evc::ExtremeValueCopula;
use crate::pickands::PickandsFunction;
use crate::rng::CounterRng;

/// Bracket width at which quantile bisection stops.
pub const QUANTILE_TOL: f64 = 1e-12;
/// Hard cap on bisection steps.
pub const QUANTILE_MAX_ITER: usize = 200;
/// Default number of midpoint panels for disintegration integrals.
pub const DEFAULT_QUAD_N: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Evc,
    Gumbel,
    Shuffle,
    Checkerboard,
    Rotation,
    Mix,
    M,
    W,
    Pi,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Evc => "evc",
            Family::Gumbel => "gumbel",
            Family::Shuffle => "shuffle",
            Family::Checkerboard => "checkerboard",
            Family::Rotation => "rotation",
            Family::Mix => "mix",
            Family::M => "M",
            Family::W => "W",
            Family::Pi => "Pi",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A bivariate copula together with a version of its Markov kernel.
///
/// Values are immutable; every evaluation is a pure function of its inputs.
#[derive(Debug, Clone, PartialEq)]
pub enum Copula {
    /// Upper Fréchet bound `min(x, y)`.
    M,
    /// Lower Fréchet bound `max(x + y - 1, 0)`.
    W,
    /// Independence `xy`.
    Pi,
    Evc(ExtremeValueCopula),
    Shuffle(Shuffle),
    Checkerboard(Checkerboard),
    Rotation(RotationCopula),
    Mix(Mixture),
}

impl Copula {
    pub fn family(&self) -> Family {
        match self {
            Copula::M => Family::M,
            Copula::W => Family::W,
            Copula::Pi => Family::Pi,
            Copula::Evc(e) => match e.pickands() {
                PickandsFunction::Gumbel { .. } => Family::Gumbel,
                PickandsFunction::Measure(_) => Family::Evc,
            },
            Copula::Shuffle(_) => Family::Shuffle,
            Copula::Checkerboard(_) => Family::Checkerboard,
            Copula::Rotation(_) => Family::Rotation,
            Copula::Mix(_) => Family::Mix,
        }
    }

    pub fn as_evc(&self) -> Result<&ExtremeValueCopula> {
        match self {
            Copula::Evc(e) => Ok(e),
            other => Err(Error::MeasureUnavailable(other.family().name())),
        }
    }

    /// `C(x, y)`; arguments are clamped to the unit square.
    pub fn cdf(&self, x: f64, y: f64) -> f64 {
        let (x, y) = (x.clamp(0.0, 1.0), y.clamp(0.0, 1.0));
        match self {
            Copula::M => x.min(y),
            Copula::W => (x + y - 1.0).max(0.0),
            Copula::Pi => x * y,
            Copula::Evc(c) => c.cdf(x, y),
            Copula::Shuffle(s) => s.cdf(x, y),
            Copula::Checkerboard(c) => c.cdf(x, y),
            Copula::Rotation(r) => r.cdf(x, y),
            Copula::Mix(m) => m.cdf(x, y),
        }
    }

    /// `K(x, [0, y])`.
    ///
    /// For `x ∈ {0, 1}` extreme value copulas return 1 and every other family
    /// the uniform distribution function; `K(x, [0, 1]) = 1` always.
    pub fn kernel_cdf(&self, x: f64, y: f64) -> f64 {
        if let Copula::Evc(c) = self {
            return c.kernel_cdf(x, y);
        }
        if y < 0.0 {
            return 0.0;
        }
        if y >= 1.0 {
            return 1.0;
        }
        if x <= 0.0 || x >= 1.0 {
            return y;
        }
        match self {
            Copula::M => step(x <= y),
            Copula::W => step(1.0 - x <= y),
            Copula::Pi => y,
            Copula::Evc(_) => unreachable!(),
            Copula::Shuffle(s) => s.kernel_cdf(x, y),
            Copula::Checkerboard(c) => c.kernel_cdf(x, y),
            Copula::Rotation(r) => r.kernel_cdf(x, y),
            Copula::Mix(m) => m.kernel_cdf(x, y),
        }
    }

    /// Point masses `(y, size)` of `K(x, ·)`, found analytically.
    pub fn kernel_jumps(&self, x: f64) -> Vec<(f64, f64)> {
        if let Copula::Evc(c) = self {
            return c.kernel_jumps(x);
        }
        if x <= 0.0 || x >= 1.0 {
            return Vec::new();
        }
        match self {
            Copula::M => vec![(x, 1.0)],
            Copula::W => vec![(1.0 - x, 1.0)],
            Copula::Pi => Vec::new(),
            Copula::Evc(_) => unreachable!(),
            Copula::Shuffle(s) => s.kernel_jumps(x),
            Copula::Checkerboard(c) => c.kernel_jumps(x),
            Copula::Rotation(r) => r.kernel_jumps(x),
            Copula::Mix(m) => m.kernel_jumps(x),
        }
    }

    /// The copula of `(Y, X)`.
    pub fn transpose(&self) -> Copula {
        match self {
            Copula::M | Copula::W | Copula::Pi => self.clone(),
            Copula::Evc(c) => Copula::Evc(c.transpose()),
            Copula::Shuffle(s) => Copula::Shuffle(s.transpose()),
            Copula::Checkerboard(c) => Copula::Checkerboard(c.transpose()),
            Copula::Rotation(r) => Copula::Rotation(r.transpose()),
            Copula::Mix(m) => Copula::Mix(m.transpose()),
        }
    }
}

fn step(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Worst violations of the copula axioms on a grid. Residuals are
/// non-negative; 0 means no violation was seen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidationReport {
    pub grid_n: usize,
    /// `max |C(x,0)|, |C(0,y)|, |C(x,1) - x|, |C(1,y) - y|`.
    pub boundary: f64,
    /// Most negative rectangle volume, negated.
    pub two_increasing: f64,
    /// Largest excess of `|ΔC|` over the coordinate distance.
    pub lipschitz: f64,
}

impl ValidationReport {
    pub fn worst(&self) -> f64 {
        self.boundary.max(self.two_increasing).max(self.lipschitz)
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.worst() <= tol
    }
}

/// Checks groundedness, uniform margins, 2-increasingness on all `grid_n²`
/// cells of the lattice `{k/grid_n}`, and the Lipschitz bound between
/// neighbouring lattice points (which implies it for all lattice pairs).
pub fn validate_copula(c: &Copula, grid_n: usize) -> ValidationReport {
    validate_cdf(|x, y| c.cdf(x, y), grid_n)
}

/// [`validate_copula`] for an arbitrary candidate function on the unit square.
pub fn validate_cdf(f: impl Fn(f64, f64) -> f64, grid_n: usize) -> ValidationReport {
    let n = grid_n.max(2);
    let pts: Vec<f64> = (0..=n).map(|k| k as f64 / n as f64).collect();
    let vals: Vec<Vec<f64>> = pts
        .iter()
        .map(|&x| pts.iter().map(|&y| f(x, y)).collect())
        .collect();
    let mut r = ValidationReport {
        grid_n: n,
        boundary: 0.0,
        two_increasing: 0.0,
        lipschitz: 0.0,
    };
    for k in 0..=n {
        let t = pts[k];
        r.boundary = r
            .boundary
            .max(vals[k][0].abs())
            .max(vals[0][k].abs())
            .max((vals[k][n] - t).abs())
            .max((vals[n][k] - t).abs());
    }
    for i in 0..=n {
        for j in 0..=n {
            if i < n && j < n {
                let vol = vals[i + 1][j + 1] - vals[i + 1][j] - vals[i][j + 1] + vals[i][j];
                r.two_increasing = r.two_increasing.max(-vol);
            }
            if i < n {
                let d = pts[i + 1] - pts[i];
                r.lipschitz = r.lipschitz.max((vals[i + 1][j] - vals[i][j]).abs() - d);
            }
            if j < n {
                let d = pts[j + 1] - pts[j];
                r.lipschitz = r.lipschitz.max((vals[i][j + 1] - vals[i][j]).abs() - d);
            }
        }
    }
    r
}

/// `|∫₀ˣ K(s,[0,y]) ds - C(x,y)|` with the midpoint rule on `quad_n` panels.
pub fn disintegration_residual(c: &Copula, x: f64, y: f64, quad_n: usize) -> f64 {
    let n = quad_n.max(1);
    let h = x / n as f64;
    let integral = (0..n)
        .map(|i| c.kernel_cdf((i as f64 + 0.5) * h, y))
        .sum::<f64>()
        * h;
    (integral - c.cdf(x, y)).abs()
}

/// `inf{y : K(x,[0,y]) >= u}` by bisection.
///
/// When `u` falls inside a jump of `K(x,·)` the exact jump location is
/// returned rather than a point of the final bracket.
pub fn kernel_quantile(c: &Copula, x: f64, u: f64) -> f64 {
    if u <= c.kernel_cdf(x, 0.0) {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..QUANTILE_MAX_ITER {
        if hi - lo <= QUANTILE_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if c.kernel_cdf(x, mid) >= u {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    c.kernel_jumps(x)
        .into_iter()
        .map(|j| j.0)
        .filter(|&loc| loc > lo && loc <= hi && c.kernel_cdf(x, loc) >= u)
        .fold(hi, f64::min)
}

/// Points drawn from a copula, with the seed that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub points: Vec<(f64, f64)>,
    pub seed: u64,
}

impl SampleSet {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// CSV with header `x,y`, numbers to 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(48 * self.points.len() + 4);
        out.push_str("x,y\n");
        for &(x, y) in &self.points {
            out.push_str(&crate::json::fmt17(x));
            out.push(',');
            out.push_str(&crate::json::fmt17(y));
            out.push('\n');
        }
        out
    }
}

/// Conditional inverse sampling: `x = u₁`, `y = kernel_quantile(x, u₂)`
/// with `(u₁, u₂)` consecutive draws of `rng`.
pub fn sample_with(c: &Copula, n: usize, rng: &mut CounterRng) -> SampleSet {
    let points = (0..n)
        .map(|_| {
            let x = rng.next_uniform();
            let u = rng.next_uniform();
            (x, kernel_quantile(c, x, u))
        })
        .collect();
    SampleSet {
        points,
        seed: rng.seed(),
    }
}

pub fn sample(c: &Copula, n: usize, seed: u64) -> SampleSet {
    sample_with(c, n, &mut CounterRng::new(seed))
}

/// Empirical copula of a sample, built on rank-normalized pseudo-observations
/// `(rank(xᵢ)/n, rank(yᵢ)/n)` with ties given their maximal rank.
#[derive(Debug, Clone)]
pub struct EmpiricalCopula {
    pseudo: Vec<(f64, f64)>,
}

fn normalized_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; n];
    let mut k = 0;
    while k < n {
        let mut end = k;
        while end + 1 < n && values[order[end + 1]] == values[order[k]] {
            end += 1;
        }
        for &idx in &order[k..=end] {
            ranks[idx] = (end + 1) as f64 / n as f64;
        }
        k = end + 1;
    }
    ranks
}

impl EmpiricalCopula {
    pub fn new(sample: &SampleSet) -> Result<Self> {
        if sample.points.is_empty() {
            return Err(Error::EmptySample);
        }
        let xs: Vec<f64> = sample.points.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = sample.points.iter().map(|p| p.1).collect();
        let rx = normalized_ranks(&xs);
        let ry = normalized_ranks(&ys);
        Ok(Self {
            pseudo: rx.into_iter().zip(ry).collect(),
        })
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let count = self
            .pseudo
            .iter()
            .filter(|&&(u, v)| u <= x && v <= y)
            .count();
        count as f64 / self.pseudo.len() as f64
    }
}

pub fn empirical_copula(sample: &SampleSet, x: f64, y: f64) -> Result<f64> {
    Ok(EmpiricalCopula::new(sample)?.eval(x, y))
}
