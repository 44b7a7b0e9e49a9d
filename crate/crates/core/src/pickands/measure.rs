use serde::{Deserialize, Serialize};

use super::cantor::{cantor_cdf, cantor_integral};
use crate::error::{Error, Result};

/// Tolerance on total mass and mean.
pub const MEASURE_TOL: f64 = 1e-12;

/// Histogram part of a measure: `values[k]` is the density on `[breaks[k], breaks[k+1])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Density {
    pub breaks: Vec<f64>,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Piece {
    lo: f64,
    hi: f64,
    value: f64,
}

impl Piece {
    fn mass(&self) -> f64 {
        self.value * (self.hi - self.lo)
    }

    fn mass_up_to(&self, t: f64) -> f64 {
        self.value * (t - self.lo).clamp(0.0, self.hi - self.lo)
    }

    /// `∫₀ᵗ (mass of the piece below z) dz`.
    fn integrated_mass_up_to(&self, t: f64) -> f64 {
        if t <= self.lo {
            return 0.0;
        }
        let len = self.hi - self.lo;
        if t <= self.hi {
            let d = t - self.lo;
            self.value * d * d / 2.0
        } else {
            self.value * (len * len / 2.0 + len * (t - self.hi))
        }
    }
}

/// A probability measure on [0,1] made of atoms, a piecewise-constant
/// density and a multiple of the Cantor measure.
///
/// Construction only checks structure (locations in range, ordering,
/// non-negativity). Mass and mean are checked by [`PickandsMeasure::validate`],
/// so that arbitrary probability measures can be held and normalized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasureSpec", into = "MeasureSpec")]
pub struct PickandsMeasure {
    atoms: Vec<(f64, f64)>,
    pieces: Vec<Piece>,
    singular_weight: f64,
}

/// JSON form: `{"atoms":[[t,w],...], "density":{"breaks":[...],"values":[...]}, "singular_weight": s}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSpec {
    #[serde(default)]
    pub atoms: Vec<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<Density>,
    #[serde(default)]
    pub singular_weight: f64,
}

impl TryFrom<MeasureSpec> for PickandsMeasure {
    type Error = Error;

    fn try_from(spec: MeasureSpec) -> Result<Self> {
        PickandsMeasure::new(spec.atoms, spec.density, spec.singular_weight)
    }
}

impl From<PickandsMeasure> for MeasureSpec {
    fn from(m: PickandsMeasure) -> Self {
        let density = m.density();
        MeasureSpec {
            atoms: m.atoms,
            density,
            singular_weight: m.singular_weight,
        }
    }
}

/// Mass and mean residuals of a measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureReport {
    pub total_mass: f64,
    pub mean: f64,
    pub mass_residual: f64,
    pub mean_residual: f64,
    pub passed: bool,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidMeasure(msg.into())
}

impl PickandsMeasure {
    pub fn new(
        atoms: Vec<(f64, f64)>,
        density: Option<Density>,
        singular_weight: f64,
    ) -> Result<Self> {
        for (k, &(t, w)) in atoms.iter().enumerate() {
            if !(0.0..=1.0).contains(&t) {
                return Err(bad(format!("atom location {t} outside [0,1]")));
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(bad(format!("atom weight {w} at {t} must be positive")));
            }
            if k > 0 && atoms[k - 1].0 >= t {
                return Err(bad("atom locations must be strictly increasing"));
            }
        }
        let mut pieces = Vec::new();
        if let Some(d) = density {
            if d.breaks.is_empty() && d.values.is_empty() {
                // empty histogram
            } else {
                if d.breaks.len() != d.values.len() + 1 {
                    return Err(bad("density needs exactly one more break than values"));
                }
                for w in d.breaks.windows(2) {
                    if w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less) {
                        return Err(bad("density breaks must be strictly increasing"));
                    }
                }
                if d.breaks[0] < 0.0 || d.breaks[d.breaks.len() - 1] > 1.0 {
                    return Err(bad("density breaks must lie in [0,1]"));
                }
                for (k, &v) in d.values.iter().enumerate() {
                    if !(v >= 0.0 && v.is_finite()) {
                        return Err(bad(format!("density value {v} must be non-negative")));
                    }
                    pieces.push(Piece {
                        lo: d.breaks[k],
                        hi: d.breaks[k + 1],
                        value: v,
                    });
                }
            }
        }
        if !(singular_weight >= 0.0 && singular_weight.is_finite()) {
            return Err(bad(format!(
                "singular weight {singular_weight} must be non-negative"
            )));
        }
        Ok(Self {
            atoms,
            pieces,
            singular_weight,
        })
    }

    /// Purely atomic measure; atoms may be given in any order and repeated
    /// locations are merged.
    pub fn discrete(atoms: &[(f64, f64)]) -> Result<Self> {
        let mut sorted = atoms.to_vec();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(sorted.len());
        for (t, w) in sorted {
            match merged.last_mut() {
                Some(last) if last.0 == t => last.1 += w,
                _ => merged.push((t, w)),
            }
        }
        Self::new(merged, None, 0.0)
    }

    /// Point mass at `t`.
    pub fn dirac(t: f64) -> Result<Self> {
        Self::new(vec![(t, 1.0)], None, 0.0)
    }

    /// The Cantor measure scaled by `weight`.
    pub fn cantor(weight: f64) -> Result<Self> {
        Self::new(Vec::new(), None, weight)
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn singular_weight(&self) -> f64 {
        self.singular_weight
    }

    pub fn density(&self) -> Option<Density> {
        if self.pieces.is_empty() {
            return None;
        }
        let mut breaks = vec![self.pieces[0].lo];
        breaks.extend(self.pieces.iter().map(|p| p.hi));
        Some(Density {
            breaks,
            values: self.pieces.iter().map(|p| p.value).collect(),
        })
    }

    /// Weight of the atom located exactly at `t`.
    pub fn atom_weight(&self, t: f64) -> Option<f64> {
        self.atoms
            .binary_search_by(|a| a.0.total_cmp(&t))
            .ok()
            .map(|k| self.atoms[k].1)
    }

    /// Atom location within `tol` of `t`, if any.
    pub fn atom_near(&self, t: f64, tol: f64) -> Option<f64> {
        let k = self.atoms.partition_point(|a| a.0 < t);
        [k.checked_sub(1), Some(k)]
            .into_iter()
            .flatten()
            .filter_map(|i| self.atoms.get(i))
            .map(|a| a.0)
            .find(|&loc| (loc - t).abs() <= tol)
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum::<f64>()
            + self.pieces.iter().map(Piece::mass).sum::<f64>()
            + self.singular_weight
    }

    pub fn mean(&self) -> f64 {
        self.atoms.iter().map(|&(t, w)| t * w).sum::<f64>()
            + self
                .pieces
                .iter()
                .map(|p| p.value * (p.hi * p.hi - p.lo * p.lo) / 2.0)
                .sum::<f64>()
            + self.singular_weight * 0.5
    }

    pub fn validate(&self) -> MeasureReport {
        let total_mass = self.total_mass();
        let mean = self.mean();
        let mass_residual = (total_mass - 1.0).abs();
        let mean_residual = (mean - 0.5).abs();
        MeasureReport {
            total_mass,
            mean,
            mass_residual,
            mean_residual,
            passed: mass_residual <= MEASURE_TOL && mean_residual <= MEASURE_TOL,
        }
    }

    fn continuous_cdf(&self, t: f64) -> f64 {
        self.pieces.iter().map(|p| p.mass_up_to(t)).sum::<f64>()
            + self.singular_weight * cantor_cdf(t)
    }

    /// `F(t) = m([0, t])`, right-continuous.
    pub fn cdf(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        let atoms: f64 = self
            .atoms
            .iter()
            .take_while(|a| a.0 <= t)
            .map(|a| a.1)
            .sum();
        atoms + self.continuous_cdf(t)
    }

    /// `F(t-) = m([0, t))`.
    pub fn cdf_left(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let atoms: f64 = self.atoms.iter().take_while(|a| a.0 < t).map(|a| a.1).sum();
        atoms + self.continuous_cdf(t)
    }

    /// `∫₀ᵗ F(z) dz` in closed form.
    pub fn integrated_cdf(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        self.atoms
            .iter()
            .take_while(|a| a.0 <= t)
            .map(|&(loc, w)| w * (t - loc))
            .sum::<f64>()
            + self
                .pieces
                .iter()
                .map(|p| p.integrated_mass_up_to(t))
                .sum::<f64>()
            + self.singular_weight * cantor_integral(t)
    }

    /// Smallest and largest points of the support:
    /// `L = sup{x : F(x) = 0}` (0 if F(0) > 0) and `R = inf{x : F(x) = 1}`.
    pub fn endpoints(&self) -> (f64, f64) {
        if self.singular_weight > 0.0 {
            // the Cantor measure charges every neighbourhood of 0 and of 1
            return (0.0, 1.0);
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        if let (Some(first), Some(last)) = (self.atoms.first(), self.atoms.last()) {
            lo = lo.min(first.0);
            hi = hi.max(last.0);
        }
        for p in self.pieces.iter().filter(|p| p.value > 0.0) {
            lo = lo.min(p.lo);
            hi = hi.max(p.hi);
        }
        if lo > hi {
            return (0.0, 1.0);
        }
        (lo, hi)
    }

    /// Image of the measure under `t -> 1 - t`.
    pub fn reflect(&self) -> Self {
        let atoms = self
            .atoms
            .iter()
            .rev()
            .map(|&(t, w)| (1.0 - t, w))
            .collect();
        let pieces = self
            .pieces
            .iter()
            .rev()
            .map(|p| Piece {
                lo: 1.0 - p.hi,
                hi: 1.0 - p.lo,
                value: p.value,
            })
            .collect();
        Self {
            atoms,
            pieces,
            singular_weight: self.singular_weight,
        }
    }

    /// Multiplies every component by `factor`.
    fn scaled(&self, factor: f64) -> Self {
        Self {
            atoms: self.atoms.iter().map(|&(t, w)| (t, w * factor)).collect(),
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece {
                    value: p.value * factor,
                    ..*p
                })
                .collect(),
            singular_weight: self.singular_weight * factor,
        }
    }

    fn with_atom(mut self, t: f64, w: f64) -> Self {
        if w <= 0.0 {
            return self;
        }
        let k = self.atoms.partition_point(|a| a.0 < t);
        match self.atoms.get_mut(k) {
            Some(a) if a.0 == t => a.1 += w,
            _ => self.atoms.insert(k, (t, w)),
        }
        self
    }

    /// Moves a probability measure into the Pickands class by mixing in a
    /// point mass at 0 (mean too large) or at 1 (mean too small).
    ///
    /// With mean `m > 1/2` the result is `(1-a)δ₀ + a·mu` with `a = 1/(2m)`;
    /// with `m < 1/2` it is `(1-b)δ₁ + b·mu` with `b = 1/(2(1-m))`.
    pub fn normalize(&self) -> Result<Self> {
        let mass = self.total_mass();
        if (mass - 1.0).abs() > MEASURE_TOL {
            return Err(bad(format!(
                "normalize needs a probability measure, mass is {mass}"
            )));
        }
        let mean = self.mean();
        if mean > 0.5 {
            let alpha = 1.0 / (2.0 * mean);
            Ok(self.scaled(alpha).with_atom(0.0, 1.0 - alpha))
        } else if mean < 0.5 {
            let beta = 1.0 / (2.0 * (1.0 - mean));
            Ok(self.scaled(beta).with_atom(1.0, 1.0 - beta))
        } else {
            Ok(self.clone())
        }
    }
}
