//! Extreme value copulas `C(x,y) = (xy)^{A(log x / log xy)}`.
//!
//! The conditional distribution of Y given X = x is
//! `K(x,[0,y]) = C(x,y)/x · G_A(log x / log xy)`. Every atom `t ∈ (0,1)` of
//! the Pickands measure puts a jump into `K(x,·)` at `y = f^t(x) = x^{1/t-1}`
//! of size `2ϑ({t})(1-t)·C(x, f^t(x))/x`, and the graph of `f^t` carries
//! mass `2t(1-t)ϑ({t})/A(t)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pickands::{upsilon, PickandsFunction, PickandsMeasure};

/// Arguments `log x / log xy` this close to an atom are treated as the atom,
/// which keeps `K(x,·)` right-continuous at the floating-point graph point.
const ATOM_SNAP: f64 = 1e-13;

/// `x -> x^{1/t - 1}`, the curve carrying the discrete mass of atom `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphFunction {
    t: f64,
}

impl GraphFunction {
    pub fn new(t: f64) -> Result<Self> {
        if t > 0.0 && t < 1.0 {
            Ok(Self { t })
        } else {
            Err(Error::Domain(format!(
                "graph index t must be in (0,1), got {t}"
            )))
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        graph(self.t, x)
    }
}

/// `f^t(x)` extended by `f^0 = 0` and `f^1 = 1`.
fn graph(t: f64, x: f64) -> f64 {
    if x <= 0.0 || t <= 0.0 {
        return 0.0;
    }
    if t >= 1.0 {
        return 1.0;
    }
    x.powf(1.0 / t - 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtomMass {
    pub t: f64,
    pub weight: f64,
    pub mass: f64,
}

/// Split of the copula's mass into the part on atom graphs and the rest.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MassDecomposition {
    pub per_atom: Vec<AtomMass>,
    pub discrete: f64,
    /// Absolutely continuous plus singular mass; not separated further.
    pub rest: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremeValueCopula {
    pickands: PickandsFunction,
    endpoints: (f64, f64),
}

impl ExtremeValueCopula {
    pub fn from_measure(m: &PickandsMeasure) -> Result<Self> {
        Ok(Self::from_function(upsilon(m)?))
    }

    pub fn from_function(pickands: PickandsFunction) -> Self {
        let endpoints = pickands.endpoints();
        Self {
            pickands,
            endpoints,
        }
    }

    pub fn gumbel(theta: f64) -> Result<Self> {
        Ok(Self::from_function(PickandsFunction::gumbel(theta)?))
    }

    pub fn pickands(&self) -> &PickandsFunction {
        &self.pickands
    }

    pub fn measure(&self) -> Option<&PickandsMeasure> {
        self.pickands.measure()
    }

    /// `(L, R)` of the Pickands measure.
    pub fn endpoints(&self) -> (f64, f64) {
        self.endpoints
    }

    fn interior_atoms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.pickands
            .atoms()
            .iter()
            .copied()
            .filter(|&(t, _)| t > 0.0 && t < 1.0)
    }

    fn snap(&self, phi: f64) -> f64 {
        match self.pickands.measure() {
            Some(m) => m.atom_near(phi, ATOM_SNAP).unwrap_or(phi),
            None => phi,
        }
    }

    pub fn cdf(&self, x: f64, y: f64) -> f64 {
        if x <= 0.0 || y <= 0.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return y.min(1.0);
        }
        if y >= 1.0 {
            return x;
        }
        let (lx, ly) = (x.ln(), y.ln());
        let lxy = lx + ly;
        (lxy * self.pickands.value(lx / lxy)).exp()
    }

    /// `K(x,[0,y])`; equal to 1 for `x ∈ {0,1}` and to `y` for `y ∈ {0,1}`.
    pub fn kernel_cdf(&self, x: f64, y: f64) -> f64 {
        if x <= 0.0 || x >= 1.0 {
            return 1.0;
        }
        if y <= 0.0 {
            return 0.0;
        }
        if y >= 1.0 {
            return 1.0;
        }
        let (lx, ly) = (x.ln(), y.ln());
        let lxy = lx + ly;
        let phi = self.snap(lx / lxy);
        let c_over_x = (lxy * self.pickands.value(phi) - lx).exp();
        (c_over_x * self.pickands.g(phi)).clamp(0.0, 1.0)
    }

    /// Point masses of `K(x,·)`: one per interior atom, at `f^t(x)`.
    pub fn kernel_jumps(&self, x: f64) -> Vec<(f64, f64)> {
        if x <= 0.0 || x >= 1.0 {
            return vec![(0.0, 1.0)];
        }
        self.interior_atoms()
            .map(|(t, w)| {
                let y = graph(t, x);
                (y, self.jump_at(x, y, t, w))
            })
            .filter(|&(_, size)| size > 0.0)
            .collect()
    }

    fn jump_at(&self, x: f64, y: f64, t: f64, w: f64) -> f64 {
        2.0 * w * (1.0 - t) * self.cdf(x, y) / x
    }

    /// Mass carried by the graph of `f^t`; zero unless `t` is an atom.
    pub fn graph_mass(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::Domain(format!("t must be in (0,1), got {t}")));
        }
        let w = self.pickands.measure().and_then(|m| m.atom_weight(t));
        Ok(w.map_or(0.0, |w| 2.0 * t * (1.0 - t) / self.pickands.value(t) * w))
    }

    pub fn component_masses(&self) -> MassDecomposition {
        let per_atom: Vec<AtomMass> = self
            .interior_atoms()
            .map(|(t, weight)| AtomMass {
                t,
                weight,
                mass: 2.0 * t * (1.0 - t) / self.pickands.value(t) * weight,
            })
            .collect();
        let discrete = per_atom.iter().map(|a| a.mass).sum::<f64>();
        MassDecomposition {
            per_atom,
            discrete,
            rest: 1.0 - discrete,
        }
    }

    /// Vertical extent `(f^L(x), f^R(x))` of the support at `x`.
    pub fn support_bounds(&self, x: f64) -> (f64, f64) {
        let (l, r) = self.endpoints;
        (graph(l, x), graph(r, x))
    }

    /// Gap `∂₁⁻C - ∂₁⁺C` of the one-sided partial derivatives at `(x, f^t(x))`.
    pub fn jump_size(&self, x: f64, t: f64) -> Result<f64> {
        let w = self
            .pickands
            .measure()
            .filter(|_| t > 0.0 && t < 1.0)
            .and_then(|m| m.atom_weight(t))
            .ok_or(Error::NotAnAtom(t))?;
        Ok(self.jump_at(x, graph(t, x), t, w))
    }

    /// Copula of `(Y, X)`: Pickands function `t -> A(1-t)`.
    pub fn transpose(&self) -> Self {
        Self::from_function(self.pickands.reflect())
    }
}
