//! JSON copula spec files.
//!
//! ```json
//! {"family":"evc","measure":{"atoms":[[0.5,1.0]]}}
//! {"family":"gumbel","theta":2.0}
//! {"family":"shuffle","N":3,"sigma":[2,3,1]}
//! {"family":"checkerboard","N":2,"T":[[0.25,0.25],[0.25,0.25]],"base":{"family":"Pi"}}
//! {"family":"rotation","terms":6}
//! {"family":"mix","parts":[[0.5,{"family":"M"}],[0.5,{"family":"W"}]]}
//! {"family":"M"}  {"family":"W"}  {"family":"Pi"}
//! ```
//!
//! Specs nest through `base` and `parts`.

use serde::{Deserialize, Serialize};

use crate::constructions::{Checkerboard, Mixture, RotationCopula, Shuffle};
use crate::copula::Copula;
use crate::error::{Error, Result};
use crate::evc::ExtremeValueCopula;
use crate::pickands::{PickandsFunction, PickandsMeasure};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum CopulaSpec {
    #[serde(rename = "evc")]
    Evc {
        measure: PickandsMeasure,
    },
    #[serde(rename = "gumbel")]
    Gumbel {
        theta: f64,
    },
    #[serde(rename = "shuffle")]
    Shuffle {
        #[serde(rename = "N")]
        n: usize,
        sigma: Vec<usize>,
    },
    #[serde(rename = "checkerboard")]
    Checkerboard {
        #[serde(rename = "N")]
        n: usize,
        #[serde(rename = "T")]
        weights: Vec<Vec<f64>>,
        base: Box<CopulaSpec>,
    },
    #[serde(rename = "rotation")]
    Rotation {
        terms: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        offsets: Option<Vec<f64>>,
    },
    #[serde(rename = "mix")]
    Mix {
        parts: Vec<(f64, CopulaSpec)>,
    },
    M,
    W,
    Pi,
}

impl CopulaSpec {
    /// Parses a spec document.
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Built-in copula by name (`M`, `W`, `Pi`).
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "M" => Some(Self::M),
            "W" => Some(Self::W),
            "Pi" => Some(Self::Pi),
            _ => None,
        }
    }

    pub fn build(&self) -> Result<Copula> {
        Ok(match self {
            CopulaSpec::Evc { measure } => Copula::Evc(ExtremeValueCopula::from_measure(measure)?),
            CopulaSpec::Gumbel { theta } => Copula::Evc(ExtremeValueCopula::gumbel(*theta)?),
            CopulaSpec::Shuffle { n, sigma } => {
                if sigma.len() != *n {
                    return Err(Error::InvalidPermutation(*n));
                }
                Copula::Shuffle(Shuffle::new(sigma)?)
            }
            CopulaSpec::Checkerboard { n, weights, base } => {
                if weights.len() != *n {
                    return Err(Error::Domain(format!(
                        "checkerboard N = {n} but T has {} rows",
                        weights.len()
                    )));
                }
                Copula::Checkerboard(Checkerboard::new(weights.clone(), base.build()?)?)
            }
            CopulaSpec::Rotation { terms, offsets } => Copula::Rotation(match offsets {
                Some(r) if r.len() != *terms => {
                    return Err(Error::Domain(format!(
                        "rotation has {terms} terms but {} offsets",
                        r.len()
                    )))
                }
                Some(r) => RotationCopula::new(r.clone())?,
                None => RotationCopula::with_terms(*terms)?,
            }),
            CopulaSpec::Mix { parts } => Copula::Mix(Mixture::new(
                parts
                    .iter()
                    .map(|(w, s)| Ok((*w, s.build()?)))
                    .collect::<Result<Vec<_>>>()?,
            )?),
            CopulaSpec::M => Copula::M,
            CopulaSpec::W => Copula::W,
            CopulaSpec::Pi => Copula::Pi,
        })
    }
}

impl From<&Copula> for CopulaSpec {
    fn from(c: &Copula) -> Self {
        match c {
            Copula::M => CopulaSpec::M,
            Copula::W => CopulaSpec::W,
            Copula::Pi => CopulaSpec::Pi,
            Copula::Evc(e) => match e.pickands() {
                PickandsFunction::Measure(m) => CopulaSpec::Evc { measure: m.clone() },
                PickandsFunction::Gumbel { theta } => CopulaSpec::Gumbel { theta: *theta },
            },
            Copula::Shuffle(s) => CopulaSpec::Shuffle {
                n: s.stripes(),
                sigma: s.sigma(),
            },
            Copula::Checkerboard(cb) => CopulaSpec::Checkerboard {
                n: cb.size(),
                weights: cb.weights(),
                base: Box::new(cb.base().into()),
            },
            Copula::Rotation(r) => {
                let default = RotationCopula::with_terms(r.terms()).ok();
                CopulaSpec::Rotation {
                    terms: r.terms(),
                    offsets: (default.as_ref() != Some(r)).then(|| r.offsets().to_vec()),
                }
            }
            Copula::Mix(m) => CopulaSpec::Mix {
                parts: m.parts().iter().map(|(w, c)| (*w, c.into())).collect(),
            },
        }
    }
}
