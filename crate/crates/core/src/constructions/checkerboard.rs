use crate::copula::Copula;
use crate::error::{Error, Result};

/// Row sums of `N·T` must equal 1 to this tolerance.
const STOCHASTIC_TOL: f64 = 1e-12;

/// `T`-checkerboard of a base copula `B`: cell `(i, j)` holds a copy of `B`
/// rescaled into `[i/N,(i+1)/N) × [j/N,(j+1)/N)` with total mass `T[i][j]`.
/// Row index `i` runs along x.
#[derive(Debug, Clone, PartialEq)]
pub struct Checkerboard {
    n: usize,
    weights: Vec<f64>,
    /// `(n+1)²` table, `prefix[i][j] = Σ_{i'<i, j'<j} T[i'][j']`.
    prefix: Vec<f64>,
    base: Box<Copula>,
}

fn stripe(x: f64, n: usize) -> (usize, f64) {
    let scaled = x * n as f64;
    let i = (scaled.floor().max(0.0) as usize).min(n - 1);
    (i, (scaled - i as f64).clamp(0.0, 1.0))
}

impl Checkerboard {
    pub fn new(weights: Vec<Vec<f64>>, base: Copula) -> Result<Self> {
        let n = weights.len();
        if n == 0 || weights.iter().any(|row| row.len() != n) {
            return Err(Error::Domain(
                "checkerboard weights must be a non-empty square matrix".into(),
            ));
        }
        let mut residual: f64 = 0.0;
        for i in 0..n {
            let row: f64 = weights[i].iter().sum();
            let col: f64 = weights.iter().map(|r| r[i]).sum();
            residual = residual
                .max((n as f64 * row - 1.0).abs())
                .max((n as f64 * col - 1.0).abs());
        }
        let negative = weights.iter().flatten().fold(0.0f64, |m, &t| m.max(-t));
        if residual.is_nan() || residual > STOCHASTIC_TOL || negative > 0.0 {
            return Err(Error::NotDoublyStochastic {
                residual: residual.max(negative),
            });
        }
        let flat: Vec<f64> = weights.into_iter().flatten().collect();
        let mut prefix = vec![0.0; (n + 1) * (n + 1)];
        for i in 0..n {
            for j in 0..n {
                prefix[(i + 1) * (n + 1) + j + 1] =
                    flat[i * n + j] + prefix[i * (n + 1) + j + 1] + prefix[(i + 1) * (n + 1) + j]
                        - prefix[i * (n + 1) + j];
            }
        }
        Ok(Self {
            n,
            weights: flat,
            prefix,
            base: Box::new(base),
        })
    }

    /// `N`-checkerboard approximation of `a` with base `base`: cell weights are
    /// the `a`-masses of the cells, by inclusion-exclusion on `a`'s CDF.
    pub fn approximate(a: &Copula, n: usize, base: Copula) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("checkerboard size N must be >= 1".into()));
        }
        let grid: Vec<Vec<f64>> = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| a.cdf(i as f64 / n as f64, j as f64 / n as f64))
                    .collect()
            })
            .collect();
        let weights = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = grid[i + 1][j + 1] - grid[i][j + 1] - grid[i + 1][j] + grid[i][j];
                        // rounding can leave -1e-17 on empty cells
                        v.max(0.0)
                    })
                    .collect()
            })
            .collect();
        Self::new(weights, base)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n + j]
    }

    pub fn weights(&self) -> Vec<Vec<f64>> {
        self.weights.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn base(&self) -> &Copula {
        &self.base
    }

    fn prefix(&self, i: usize, j: usize) -> f64 {
        self.prefix[i * (self.n + 1) + j]
    }

    pub fn cdf(&self, x: f64, y: f64) -> f64 {
        let (i, u) = stripe(x, self.n);
        let (j, v) = stripe(y, self.n);
        let full = self.prefix(i, j);
        let row = self.prefix(i + 1, j) - full;
        let col = self.prefix(i, j + 1) - full;
        full + u * row + v * col + self.weight(i, j) * self.base.cdf(u, v)
    }

    pub fn kernel_cdf(&self, x: f64, y: f64) -> f64 {
        if y >= 1.0 {
            return 1.0;
        }
        let (i, u) = stripe(x, self.n);
        let (j, v) = stripe(y, self.n);
        let before = self.prefix(i + 1, j) - self.prefix(i, j);
        let n = self.n as f64;
        (n * (before + self.weight(i, j) * self.base.kernel_cdf(u, v))).clamp(0.0, 1.0)
    }

    pub fn kernel_jumps(&self, x: f64) -> Vec<(f64, f64)> {
        let (i, u) = stripe(x, self.n);
        let base_jumps = self.base.kernel_jumps(u);
        let n = self.n as f64;
        (0..self.n)
            .filter(|&j| self.weight(i, j) > 0.0)
            .flat_map(|j| {
                let scale = n * self.weight(i, j);
                base_jumps
                    .iter()
                    .map(move |&(loc, size)| ((j as f64 + loc) / n, scale * size))
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let weights = (0..n)
            .map(|i| (0..n).map(|j| self.weight(j, i)).collect())
            .collect();
        Self::new(weights, self.base.transpose()).expect("transpose keeps double stochasticity")
    }
}
