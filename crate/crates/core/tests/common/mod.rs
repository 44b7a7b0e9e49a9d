#![allow(dead_code)]

use copulab::constructions::{Checkerboard, Mixture, RotationCopula, Shuffle};
use copulab::{reference, Copula, ExtremeValueCopula, PickandsMeasure};

pub fn shuffle3() -> Copula {
    Copula::Shuffle(Shuffle::new(&[2, 3, 1]).unwrap())
}

pub fn rotation6() -> Copula {
    Copula::Rotation(RotationCopula::with_terms(6).unwrap())
}

pub fn cantor_evc() -> Copula {
    Copula::Evc(ExtremeValueCopula::from_measure(&PickandsMeasure::cantor(1.0).unwrap()).unwrap())
}

/// Every family the library ships, with a representative parameter choice.
pub fn shipped_families() -> Vec<(&'static str, Copula)> {
    let evc = reference::three_atom_evc();
    vec![
        ("M", Copula::M),
        ("W", Copula::W),
        ("Pi", Copula::Pi),
        ("three-atom evc", evc.clone()),
        ("mixed evc", reference::mixed_evc()),
        ("cantor evc", cantor_evc()),
        ("gumbel 2", reference::gumbel(2.0)),
        ("shuffle 231", shuffle3()),
        (
            "checkerboard of evc, base Pi",
            Copula::Checkerboard(Checkerboard::approximate(&evc, 8, Copula::Pi).unwrap()),
        ),
        (
            "checkerboard of Pi, base M",
            Copula::Checkerboard(Checkerboard::approximate(&Copula::Pi, 5, Copula::M).unwrap()),
        ),
        ("rotation 6", rotation6()),
        (
            "mix",
            Copula::Mix(
                Mixture::new(vec![(0.5, evc), (0.3, shuffle3()), (0.2, rotation6())]).unwrap(),
            ),
        ),
    ]
}

/// `k/(n+1)` for `k = 1..=n`.
pub fn interior(n: usize) -> impl Iterator<Item = f64> + Clone {
    (1..=n).map(move |k| k as f64 / (n + 1) as f64)
}
