use crate::copula::Copula;
use crate::error::{Error, Result};

const WEIGHT_TOL: f64 = 1e-12;

/// Convex combination `Σ wₖ Cₖ` of copulas.
#[derive(Debug, Clone, PartialEq)]
pub struct Mixture {
    parts: Vec<(f64, Copula)>,
}

impl Mixture {
    pub fn new(parts: Vec<(f64, Copula)>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::WeightsInvalid("no parts".into()));
        }
        if let Some((w, _)) = parts.iter().find(|(w, _)| !(*w > 0.0 && w.is_finite())) {
            return Err(Error::WeightsInvalid(format!("weight {w} is not positive")));
        }
        let total: f64 = parts.iter().map(|p| p.0).sum();
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::WeightsInvalid(format!("weights sum to {total}")));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[(f64, Copula)] {
        &self.parts
    }

    pub fn cdf(&self, x: f64, y: f64) -> f64 {
        self.parts.iter().map(|(w, c)| w * c.cdf(x, y)).sum()
    }

    pub fn kernel_cdf(&self, x: f64, y: f64) -> f64 {
        self.parts
            .iter()
            .map(|(w, c)| w * c.kernel_cdf(x, y))
            .sum::<f64>()
            .clamp(0.0, 1.0)
    }

    pub fn kernel_jumps(&self, x: f64) -> Vec<(f64, f64)> {
        self.parts
            .iter()
            .flat_map(|(w, c)| c.kernel_jumps(x).into_iter().map(move |(y, s)| (y, w * s)))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self {
            parts: self
                .parts
                .iter()
                .map(|(w, c)| (*w, c.transpose()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let one = Mixture::new(vec![(1.0, Copula::Pi)]).unwrap();
        assert!((one.cdf(0.3, 0.6) - 0.18).abs() < 1e-15);
        let mw = Mixture::new(vec![(0.5, Copula::M), (0.5, Copula::W)]).unwrap();
        assert!((mw.cdf(0.5, 0.5) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn invalid_weights() {
        assert!(Mixture::new(vec![]).is_err());
        assert!(Mixture::new(vec![(0.5, Copula::M)]).is_err());
        assert!(Mixture::new(vec![(1.5, Copula::M), (-0.5, Copula::W)]).is_err());
    }

    #[test]
    fn kernel_mixes_jumps() {
        let mw = Mixture::new(vec![(0.25, Copula::M), (0.75, Copula::W)]).unwrap();
        let jumps = mw.kernel_jumps(0.3);
        assert_eq!(jumps.len(), 2);
        assert!((jumps[0].0 - 0.3).abs() < 1e-15 && jumps[0].1 == 0.25);
        assert!((jumps[1].0 - 0.7).abs() < 1e-15 && jumps[1].1 == 0.75);
        assert_eq!(mw.kernel_cdf(0.3, 0.5), 0.25);
    }
}
