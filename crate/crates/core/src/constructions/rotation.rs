use crate::error::{Error, Result};

/// Copula with kernel `Σₙ 2⁻ⁿ 1[R_{rₙ}(x) <= y] + 2⁻ᴺ y`, where
/// `R_r(x) = x + r mod 1`.
///
/// This is the dense-rotation kernel truncated after `N` terms; the leftover
/// weight `2⁻ᴺ` goes to the independence kernel so the result is still an
/// exact copula.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationCopula {
    offsets: Vec<f64>,
}

/// The first `n` rationals of [0,1) ordered by denominator, then numerator:
/// 0, 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, ...
pub fn rational_offsets(n: usize) -> Vec<f64> {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    out.push(0.0);
    let mut q = 2u64;
    while out.len() < n {
        for p in 1..q {
            if out.len() == n {
                break;
            }
            if gcd(p, q) == 1 {
                out.push(p as f64 / q as f64);
            }
        }
        q += 1;
    }
    out
}

/// `λ([0,x] ∩ {s : R_r(s) <= y})` in closed form.
pub fn overlap(x: f64, y: f64, r: f64) -> f64 {
    // s in [0, 1-r): s + r <= y
    let first = x.min(1.0 - r).min(y - r).max(0.0);
    // s in [1-r, 1]: s + r - 1 <= y
    let second = (x.min(y + 1.0 - r) - (1.0 - r)).max(0.0);
    first + second
}

fn rotate(x: f64, r: f64) -> f64 {
    let s = x + r;
    if s >= 1.0 {
        s - 1.0
    } else {
        s
    }
}

impl RotationCopula {
    pub fn new(offsets: Vec<f64>) -> Result<Self> {
        if offsets.is_empty() {
            return Err(Error::Domain(
                "rotation copula needs at least one term".into(),
            ));
        }
        for (k, &r) in offsets.iter().enumerate() {
            if !(0.0..1.0).contains(&r) {
                return Err(Error::Domain(format!("rotation offset {r} outside [0,1)")));
            }
            if offsets[..k].contains(&r) {
                return Err(Error::Domain(format!("rotation offset {r} repeated")));
            }
        }
        Ok(Self { offsets })
    }

    /// `terms` rotations with the default rational enumeration.
    pub fn with_terms(terms: usize) -> Result<Self> {
        Self::new(rational_offsets(terms))
    }

    pub fn terms(&self) -> usize {
        self.offsets.len()
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    /// Weight `2⁻ⁿ` of the n-th rotation (1-based).
    pub fn weight(n: usize) -> f64 {
        0.5f64.powi(n as i32)
    }

    pub fn tail_weight(&self) -> f64 {
        Self::weight(self.terms())
    }

    fn weighted(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.offsets
            .iter()
            .enumerate()
            .map(|(k, &r)| (Self::weight(k + 1), r))
    }

    pub fn cdf(&self, x: f64, y: f64) -> f64 {
        self.weighted()
            .map(|(w, r)| w * overlap(x, y, r))
            .sum::<f64>()
            + self.tail_weight() * x * y
    }

    pub fn kernel_cdf(&self, x: f64, y: f64) -> f64 {
        self.weighted()
            .filter(|&(_, r)| rotate(x, r) <= y)
            .map(|(w, _)| w)
            .sum::<f64>()
            + self.tail_weight() * y
    }

    /// Atoms of `K(x,·)`: `(R_{rₙ}(x), 2⁻ⁿ)`.
    pub fn kernel_jumps(&self, x: f64) -> Vec<(f64, f64)> {
        self.weighted().map(|(w, r)| (rotate(x, r), w)).collect()
    }

    /// Rotations are inverted by `r -> 1 - r (mod 1)`.
    pub fn transpose(&self) -> Self {
        Self {
            offsets: self
                .offsets
                .iter()
                .map(|&r| if r == 0.0 { 0.0 } else { 1.0 - r })
                .collect(),
        }
    }
}
