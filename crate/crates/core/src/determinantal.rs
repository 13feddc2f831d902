//! Standard and good determinantal schemes.
//!
//! A homogeneous `t × (t+r)` matrix `Φ` defines the scheme cut out by its
//! maximal minors. It is standard when that ideal has the expected height
//! `r + 1`, and good when moreover the submaximal minors have height at least
//! `r + 2`. This module decides both, searches for a generalized row whose
//! deletion exhibits goodness, adds general rows, builds flags of good
//! subschemes and checks the exact sequence tying a scheme to the scheme one
//! row up.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::complexes::eagon_northcott;
use crate::grading::{columns_of, quotient_ranker, PieceRanker};
use crate::groebner::{Height, IdealBasis};
use crate::linalg::ScalarMatrix;
use crate::matrix::HomogeneousMatrix;
use crate::minors::minors;
use crate::random::Sampler;
use crate::ring::{Polynomial, Ring};

/// Retries of the general-row augmentation before giving up.
pub const AUGMENT_RETRIES: usize = 8;

/// A homogeneous `t × (t+r)` matrix with `t ≥ 1` and `r ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminantalPresentation {
    phi: HomogeneousMatrix,
}

impl DeterminantalPresentation {
    pub fn new(phi: HomogeneousMatrix) -> Result<DeterminantalPresentation> {
        if phi.nrows() == 0 {
            return Err(Error::Shape("a determinantal presentation needs at least one row".into()));
        }
        if phi.ncols() < phi.nrows() {
            return Err(Error::Shape(format!("{} rows but only {} columns", phi.nrows(), phi.ncols())));
        }
        Ok(DeterminantalPresentation { phi })
    }

    pub fn parse(ring: &Ring, rows: &[&[&str]]) -> Result<DeterminantalPresentation> {
        DeterminantalPresentation::new(HomogeneousMatrix::parse(ring, rows)?)
    }

    pub fn matrix(&self) -> &HomogeneousMatrix {
        &self.phi
    }

    pub fn ring(&self) -> &Ring {
        self.phi.ring()
    }

    pub fn t(&self) -> usize {
        self.phi.nrows()
    }

    pub fn r(&self) -> usize {
        self.phi.ncols() - self.phi.nrows()
    }

    pub fn expected_codim(&self) -> usize {
        self.r() + 1
    }

    /// `I(Φ)`, the ideal of maximal minors.
    pub fn ideal(&self) -> IdealBasis {
        minors(&self.phi, self.t()).expect("t ≤ number of columns")
    }

    /// `I_{t-1}(Φ)`; the unit ideal when `t = 1`.
    pub fn submaximal_ideal(&self) -> IdealBasis {
        minors(&self.phi, self.t() - 1).expect("t - 1 ≤ number of columns")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub t: usize,
    pub r: usize,
    pub expected_codim: usize,
    pub actual_height: Height,
    pub submaximal_height: Height,
    pub is_standard: bool,
    pub is_good: bool,
    pub empty_scheme: bool,
    pub witness: Option<GeneralizedRowWitness>,
}

/// A generalized row whose deletion leaves maximal minors of height `r + 2`.
///
/// `row_combination` is the deleted row in terms of the given rows, and
/// `kept_rows` are the `t - 1` complementary rows in the same terms. Together
/// they form an invertible change of row basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedRowWitness {
    pub row_combination: Vec<FieldElement>,
    pub kept_rows: Vec<Vec<FieldElement>>,
    pub literal: bool,
    pub seed: u64,
    pub verified: bool,
}

impl GeneralizedRowWitness {
    /// The `(t-1) × (t+r)` matrix left after deleting the row.
    pub fn remaining(&self, phi: &HomogeneousMatrix) -> Result<HomogeneousMatrix> {
        phi.combine_rows(&self.kept_rows)
    }

    /// Degree of the deleted generator.
    pub fn twist(&self, phi: &HomogeneousMatrix) -> i64 {
        let i = self.row_combination.iter().position(|c| !c.is_zero()).expect("nonzero combination");
        phi.target().twist(i)
    }
}

pub fn classify(p: &DeterminantalPresentation) -> ClassificationReport {
    let (t, r) = (p.t(), p.r());
    let actual_height = p.ideal().height();
    let submaximal_height = if t == 1 { Height::Infinite } else { p.submaximal_ideal().height() };
    let is_standard = actual_height == Height::Finite(r + 1);
    let is_good = is_standard && (t == 1 || submaximal_height.at_least(r + 2));
    let empty_scheme = actual_height == Height::Finite(p.ring().nvars());
    ClassificationReport {
        t,
        r,
        expected_codim: r + 1,
        actual_height,
        submaximal_height,
        is_standard,
        is_good,
        empty_scheme,
        witness: None,
    }
}

/// Classification plus, for good input, a generalized-row witness.
pub fn classify_with_witness(p: &DeterminantalPresentation, seed: u64, trials: usize) -> ClassificationReport {
    let mut report = classify(p);
    if report.is_good {
        report.witness = find_generalized_row(p, seed, trials).ok().flatten();
    }
    report
}

fn unit_vector(len: usize, k: usize, p: &DeterminantalPresentation) -> Vec<FieldElement> {
    let f = p.ring().field();
    (0..len).map(|i| if i == k { f.one() } else { f.zero() }).collect()
}

fn deletion_works(p: &DeterminantalPresentation, kept: &[Vec<FieldElement>]) -> Result<bool> {
    let rest = p.matrix().combine_rows(kept)?;
    let ideal = minors(&rest, rest.nrows())?;
    Ok(ideal.height() == Height::Finite(p.r() + 2))
}

/// Searches for a generalized row whose deletion leaves maximal minors of
/// height `r + 2`: literal rows first, then `trials` seeded changes of basis
/// inside one twist class of rows. `Ok(None)` does not refute goodness.
pub fn find_generalized_row(
    p: &DeterminantalPresentation,
    seed: u64,
    trials: usize,
) -> Result<Option<GeneralizedRowWitness>> {
    if !classify(p).is_good {
        return Err(Error::Precondition("generalized rows are only sought for good presentations".into()));
    }
    let t = p.t();
    let field = p.ring().field();
    if t == 1 {
        return Ok(Some(GeneralizedRowWitness {
            row_combination: alloc::vec![field.one()],
            kept_rows: Vec::new(),
            literal: true,
            seed,
            verified: true,
        }));
    }
    for k in (0..t).rev() {
        let kept: Vec<Vec<FieldElement>> = (0..t).filter(|&i| i != k).map(|i| unit_vector(t, i, p)).collect();
        if deletion_works(p, &kept)? {
            return Ok(Some(GeneralizedRowWitness {
                row_combination: unit_vector(t, k, p),
                kept_rows: kept,
                literal: true,
                seed,
                verified: true,
            }));
        }
    }
    let twists = p.matrix().target().twists();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, a) in twists.iter().enumerate() {
        match classes.iter_mut().find(|c| twists[c[0]] == *a) {
            Some(c) => c.push(i),
            None => classes.push(alloc::vec![i]),
        }
    }
    classes.retain(|c| c.len() >= 2);
    if classes.is_empty() {
        return Ok(None);
    }
    let mut sampler = Sampler::new(field, seed);
    for trial in 0..trials {
        let class = &classes[trial % classes.len()];
        let c = class.len();
        // random invertible c × c block; its last row is the deleted combination
        let block: Vec<Vec<FieldElement>> = loop {
            let b: Vec<Vec<FieldElement>> = (0..c).map(|_| sampler.elements(c)).collect();
            let mut m = ScalarMatrix::zero(field, c, c);
            for (j, col) in m.columns.iter_mut().enumerate() {
                for (i, row) in b.iter().enumerate() {
                    if !row[j].is_zero() {
                        col.push((i, row[j].clone()));
                    }
                }
            }
            if m.rank() == c {
                break b;
            }
        };
        let embed = |row: &[FieldElement]| -> Vec<FieldElement> {
            let mut v: Vec<FieldElement> = (0..t).map(|_| field.zero()).collect();
            for (k, &i) in class.iter().enumerate() {
                v[i] = row[k].clone();
            }
            v
        };
        let mut kept: Vec<Vec<FieldElement>> =
            (0..t).filter(|i| !class.contains(i)).map(|i| unit_vector(t, i, p)).collect();
        kept.extend(block[..c - 1].iter().map(|row| embed(row)));
        if deletion_works(p, &kept)? {
            return Ok(Some(GeneralizedRowWitness {
                row_combination: embed(&block[c - 1]),
                kept_rows: kept,
                literal: false,
                seed,
                verified: true,
            }));
        }
    }
    Ok(None)
}

/// Result of adding one general row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmentation {
    pub presentation: DeterminantalPresentation,
    pub row_twist: i64,
    pub seed: u64,
    pub attempts: usize,
}

/// Appends a row of seeded random forms and checks that the `(t+1) × (t+r)`
/// result is good of codimension `r`. The default row twist is the smallest
/// existing row twist, which makes each new entry as large as the largest
/// entry degree of its column.
pub fn augment_general_row(p: &DeterminantalPresentation, row_twist: Option<i64>, seed: u64) -> Result<Augmentation> {
    if p.r() == 0 {
        return Err(Error::Precondition("a square matrix has no room for another row".into()));
    }
    let phi = p.matrix();
    let ring = p.ring();
    let a = row_twist.unwrap_or_else(|| phi.target().twists().iter().copied().min().unwrap_or(0));
    let degrees: Vec<i64> = phi.source().twists().iter().map(|b| b - a).collect();
    if let Some(j) = degrees.iter().position(|&d| d < 0) {
        return Err(Error::Infeasible(format!("row twist {} forces degree {} in column {}", a, degrees[j], j)));
    }
    let mut sampler = Sampler::new(ring.field(), seed);
    for attempt in 1..=AUGMENT_RETRIES {
        let row: Vec<Polynomial> = degrees.iter().map(|&d| sampler.form(ring, d as u32)).collect();
        let psi = DeterminantalPresentation::new(phi.with_row(a, row)?)?;
        let report = classify(&psi);
        if report.is_good && report.expected_codim == p.r() {
            return Ok(Augmentation { presentation: psi, row_twist: a, seed, attempts: attempt });
        }
    }
    Err(Error::Verification(format!("no good augmentation in {} attempts (seed {})", AUGMENT_RETRIES, seed)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagStage {
    pub presentation: DeterminantalPresentation,
    pub report: ClassificationReport,
    /// Seed of the augmentation that produced this stage (none for the input).
    pub seed: Option<u64>,
    /// `I(this stage) ⊆ I(previous stage)`, checked by membership.
    pub contained_in_previous: Option<bool>,
}

/// Chain `X = X_{r+1} ⊃ X_r ⊃ ... ⊃ X_1` of good determinantal schemes of
/// codimensions `r+1, r, ..., 1`, the input being the first stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagResult {
    pub stages: Vec<FlagStage>,
}

impl FlagResult {
    /// Number of augmentation steps.
    pub fn steps(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn codims(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.report.expected_codim).collect()
    }

    pub fn verified(&self) -> bool {
        self.stages.iter().all(|s| s.report.is_good && s.contained_in_previous != Some(false))
    }
}

pub fn build_flag(p: &DeterminantalPresentation, seed: u64) -> Result<FlagResult> {
    let report = classify(p);
    if !report.is_good {
        return Err(Error::Precondition("flags start from a good presentation".into()));
    }
    let mut stages =
        alloc::vec![FlagStage { presentation: p.clone(), report, seed: None, contained_in_previous: None }];
    let mut step = 0u64;
    while stages.last().expect("nonempty").presentation.r() > 0 {
        let prev = &stages.last().expect("nonempty").presentation;
        let stage_seed = seed.wrapping_add(step);
        let aug = augment_general_row(prev, None, stage_seed)?;
        let contained = prev.ideal().contains_ideal(&aug.presentation.ideal());
        let report = classify(&aug.presentation);
        stages.push(FlagStage {
            presentation: aug.presentation,
            report,
            seed: Some(stage_seed),
            contained_in_previous: Some(contained),
        });
        step += 1;
    }
    Ok(FlagResult { stages })
}

/// Which generalized row of `Ψ` to delete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowDeletion {
    Index(usize),
    Witness(GeneralizedRowWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionRecord {
    pub degree: i64,
    pub hf_ms: usize,
    pub hf_shifted_quotient: usize,
    pub hf_mx: usize,
}

impl SectionRecord {
    pub fn additive(&self) -> bool {
        self.hf_ms == self.hf_shifted_quotient + self.hf_mx
    }
}

/// Degreewise data of `0 → R/I_S(-a) → M_S → M_X → 0` with `M_S = coker Ψ`,
/// `M_X = coker Φ`, `Φ` being `Ψ` with a generalized row removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionSequence {
    pub i_s: IdealBasis,
    pub i_x: IdealBasis,
    pub phi: HomogeneousMatrix,
    pub twist: i64,
    pub records: Vec<SectionRecord>,
}

/// Ranker for `R/I(Φ)` as the cokernel of the first Eagon-Northcott map,
/// certified by the columns of the second. Falls back to the Koszul
/// certificates when the complex is not available.
pub fn minors_quotient_ranker(p: &DeterminantalPresentation) -> Result<PieceRanker> {
    match eagon_northcott(p) {
        Ok(en) => {
            let syz = if en.len() >= 2 { columns_of(en.differential(2)) } else { Vec::new() };
            PieceRanker::with_syzygies(en.differential(1), syz)
        }
        Err(Error::Characteristic { .. }) => quotient_ranker(&p.ideal()),
        Err(e) => Err(e),
    }
}

pub fn section_sequence(psi: &DeterminantalPresentation, deletion: &RowDeletion, d_max: i64) -> Result<SectionSequence> {
    let report = classify(psi);
    if !report.is_good {
        return Err(Error::Precondition("the larger presentation must be good".into()));
    }
    let m = psi.matrix();
    let t = psi.t();
    let (phi, twist) = match deletion {
        RowDeletion::Index(k) => {
            if *k >= t {
                return Err(Error::Shape(format!("row {} out of range for {} rows", k, t)));
            }
            let rows: Vec<usize> = (0..t).filter(|i| i != k).collect();
            (m.select_rows(&rows), m.target().twist(*k))
        }
        RowDeletion::Witness(w) => {
            if w.row_combination.len() != t || w.kept_rows.len() + 1 != t {
                return Err(Error::Shape("witness does not fit the matrix".into()));
            }
            (w.remaining(m)?, w.twist(m))
        }
    };
    let i_x = if phi.nrows() == 0 {
        IdealBasis::unit(psi.ring())
    } else {
        let x = DeterminantalPresentation::new(phi.clone())?;
        let rx = classify(&x);
        if !rx.is_standard {
            return Err(Error::Precondition(format!(
                "deleting the row leaves a non-standard presentation (height {} instead of {})",
                rx.actual_height, rx.expected_codim
            )));
        }
        x.ideal()
    };
    let i_s = psi.ideal();
    let ms = PieceRanker::new(m)?;
    let mx = if phi.nrows() == 0 { None } else { Some(PieceRanker::new(&phi)?) };
    let quotient = minors_quotient_ranker(psi)?;
    let mut records = Vec::new();
    for d in 0..=d_max {
        let hf_ms = ms.cokernel_dim(d);
        let hf_shifted_quotient = quotient.cokernel_dim(d - twist);
        let hf_mx = mx.as_ref().map_or(0, |r| r.cokernel_dim(d));
        let rec = SectionRecord { degree: d, hf_ms, hf_shifted_quotient, hf_mx };
        if !rec.additive() {
            return Err(Error::Verification(format!(
                "additivity fails in degree {}: {} != {} + {}",
                d, rec.hf_ms, rec.hf_shifted_quotient, rec.hf_mx
            )));
        }
        records.push(rec);
    }
    Ok(SectionSequence { i_s, i_x, phi, twist, records })
}

/// Truncation bound used when none is given: largest generator degree plus `n + 3`.
pub fn default_truncation(phi: &HomogeneousMatrix) -> i64 {
    let top = phi.source().twists().iter().chain(phi.target().twists()).copied().max().unwrap_or(0);
    top + phi.ring().projective_dim() as i64 + 3
}

impl core::fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "t={} r={} height={} (expected {}) submaximal={} (needs {}) standard={} good={}",
            self.t,
            self.r,
            self.actual_height,
            self.expected_codim,
            self.submaximal_height,
            self.r + 2,
            self.is_standard,
            self.is_good
        )?;
        if self.empty_scheme {
            write!(f, " empty")?;
        }
        Ok(())
    }
}

impl GeneralizedRowWitness {
    pub fn describe(&self) -> alloc::string::String {
        let parts: Vec<alloc::string::String> = self.row_combination.iter().map(ToString::to_string).collect();
        format!("({})", parts.join(", "))
    }
}
