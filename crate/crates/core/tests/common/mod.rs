#![allow(dead_code)]

use detscheme_core::random::Sampler;
use detscheme_core::*;

pub const RANDOM_GOOD_SEED: u64 = 2024;

pub fn qq(nvars: usize) -> Ring {
    PolyRing::standard(nvars, Field::Rational, MonomialOrder::GrevLex).unwrap()
}

pub fn p3() -> Ring {
    qq(4)
}

pub fn poly(r: &Ring, s: &str) -> Polynomial {
    r.parse(s).unwrap()
}

pub fn ideal(r: &Ring, gens: &[&str]) -> IdealBasis {
    IdealBasis::parse(r, gens).unwrap()
}

pub fn pres(r: &Ring, rows: &[&[&str]]) -> DeterminantalPresentation {
    DeterminantalPresentation::parse(r, rows).unwrap()
}

/// Standard but not good: its minors generate the square of a point ideal.
pub fn point_square() -> DeterminantalPresentation {
    pres(&p3(), &[&["x1", "x2", "x3", "0"], &["0", "x1", "x2", "x3"]])
}

/// Good codim-2, non-reduced.
pub fn hilbert_burch() -> DeterminantalPresentation {
    pres(&p3(), &[&["x0", "x1", "x2"], &["0", "x0", "x3"]])
}

/// The three coordinate axes.
pub fn axes() -> DeterminantalPresentation {
    pres(&p3(), &[&["-x3", "x2", "0"], &["0", "-x2", "x1"]])
}

/// `1 × k` matrix of the first `k` variables.
pub fn ci(k: usize) -> DeterminantalPresentation {
    let r = p3();
    let names: Vec<String> = (0..k).map(|i| format!("x{i}")).collect();
    let row: Vec<&str> = names.iter().map(String::as_str).collect();
    pres(&r, &[&row])
}

/// A `2 × 4` matrix of random linear forms.
pub fn random_good() -> DeterminantalPresentation {
    let r = p3();
    let phi = Sampler::new(Field::Rational, RANDOM_GOOD_SEED)
        .matrix(&r, GradedFreeModule::uniform(2, 0), GradedFreeModule::uniform(4, 1))
        .unwrap();
    DeterminantalPresentation::new(phi).unwrap()
}

pub fn good_fixtures() -> Vec<(&'static str, DeterminantalPresentation)> {
    vec![
        ("hilbert_burch", hilbert_burch()),
        ("axes", axes()),
        ("ci2", ci(2)),
        ("ci3", ci(3)),
        ("random_good", random_good()),
    ]
}

pub fn all_fixtures() -> Vec<(&'static str, DeterminantalPresentation)> {
    let mut v = vec![("point_square", point_square())];
    v.extend(good_fixtures());
    v
}
