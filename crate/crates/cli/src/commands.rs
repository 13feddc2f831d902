//! Subcommand dispatch: each command turns a [`Problem`] into a [`Report`].

use std::time::Instant;

use clap::{Subcommand, ValueEnum};
use detscheme_core::complexes::{
    betti_table, buchsbaum_eisenbud, buchsbaum_rim, canonical_module, cm_type, eagon_northcott, verify_annihilator,
    verify_complex, AnnihilatorDirection,
};
use detscheme_core::determinantal::{
    augment_general_row, build_flag, classify_with_witness, default_truncation, minors_quotient_ranker,
    section_sequence, RowDeletion,
};
use detscheme_core::grading::{graded_exactness_check, PieceRanker};
use detscheme_core::groebner::{minimal_generator_count, standard_monomial_count};
use detscheme_core::minors::minors;
use detscheme_core::{
    ClassificationReport, DeterminantalPresentation, Error, FreeComplex, GeneralizedRowWitness, Height,
    HomogeneousMatrix,
};

use crate::problem::{InputError, Problem};
use crate::report::*;

/// Number of seeded attempts when searching for a generalized row.
pub const WITNESS_TRIALS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    En,
    Br,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Standard/good classification with heights and, if good, a generalized-row witness.
    Classify,
    /// Ideal of s×s minors (default: maximal).
    Minors {
        #[arg(long)]
        size: Option<usize>,
    },
    /// Build a complex and certify it.
    Complex {
        #[arg(long, value_enum, default_value = "en")]
        kind: KindArg,
        #[arg(long)]
        max_degree: Option<i64>,
    },
    /// Graded Betti table of the Eagon-Northcott (or Buchsbaum-Rim) complex.
    Betti {
        #[arg(long, value_enum, default_value = "en")]
        kind: KindArg,
    },
    /// Cohen-Macaulay type.
    CmType,
    /// Check Ann(coker Φ) = I(Φ) degreewise.
    Annihilator {
        #[arg(long)]
        max_degree: Option<i64>,
    },
    /// Flag of good determinantal subschemes by repeated augmentation.
    Flag,
    /// Degreewise check of the section sequence. With `--row i` the input is Ψ and
    /// row i is deleted; with `--witness` a generalized row is deleted; otherwise
    /// the input is augmented by a general row, which is then deleted.
    Section {
        #[arg(long, conflicts_with = "witness")]
        row: Option<usize>,
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        max_degree: Option<i64>,
    },
    /// Canonical module of a codimension-two scheme.
    Canonical {
        #[arg(long)]
        max_degree: Option<i64>,
    },
    /// Hilbert functions of R/I_X (two routes) and of coker Φ.
    Hilbert {
        #[arg(long)]
        max_degree: Option<i64>,
    },
}

impl Command {
    /// Command echo used in reports and golden files.
    pub fn label(&self) -> String {
        fn md(d: &Option<i64>) -> String {
            d.map_or(String::new(), |d| format!(" --max-degree {d}"))
        }
        fn kind(k: KindArg) -> &'static str {
            match k {
                KindArg::En => "en",
                KindArg::Br => "br",
            }
        }
        match self {
            Command::Classify => "classify".into(),
            Command::Minors { size } => size.map_or("minors".into(), |s| format!("minors --size {s}")),
            Command::Complex { kind: k, max_degree } => format!("complex --kind {}{}", kind(*k), md(max_degree)),
            Command::Betti { kind: k } => format!("betti --kind {}", kind(*k)),
            Command::CmType => "cm-type".into(),
            Command::Annihilator { max_degree } => format!("annihilator{}", md(max_degree)),
            Command::Flag => "flag".into(),
            Command::Section { row, witness, max_degree } => {
                let del = match (row, witness) {
                    (Some(i), _) => format!(" --row {i}"),
                    (None, true) => " --witness".into(),
                    (None, false) => String::new(),
                };
                format!("section{del}{}", md(max_degree))
            }
            Command::Canonical { max_degree } => format!("canonical{}", md(max_degree)),
            Command::Hilbert { max_degree } => format!("hilbert{}", md(max_degree)),
        }
    }
}

/// Outcome of a command that did not hit an input error.
struct Outcome {
    body: Body,
    failed: Option<String>,
}

fn done(body: Body) -> Result<Outcome, Error> {
    Ok(Outcome { body, failed: None })
}

fn failed(body: Body, invariant: impl Into<String>) -> Result<Outcome, Error> {
    Ok(Outcome { body, failed: Some(invariant.into()) })
}

/// Core errors that mean "the input is unusable" rather than "a check failed".
fn is_input_error(e: &Error) -> bool {
    !matches!(
        e,
        Error::Precondition(_) | Error::Verification(_) | Error::NonMinimal { .. } | Error::NotGroebner | Error::InexactDivision
    )
}

/// Runs one command. `Err` means exit code 2.
pub fn run(cmd: &Command, problem: &Problem, seed: Option<u64>) -> Result<Report, InputError> {
    let seed = seed.or(problem.seed).unwrap_or(0);
    let p = problem.presentation()?;
    let start = Instant::now();
    let outcome = dispatch(cmd, problem, &p, seed);
    let elapsed = start.elapsed().as_micros() as u64;
    let (result, failed_invariant) = match outcome {
        Ok(Outcome { body, failed }) => (body, failed),
        Err(e) if is_input_error(&e) => return Err(e.into()),
        Err(e) => (Body::Error { message: e.to_string() }, Some(invariant_name(&e))),
    };
    Ok(Report {
        schema: REPORT_SCHEMA,
        command: cmd.label(),
        input: problem.name.clone(),
        seed,
        ok: failed_invariant.is_none(),
        failed_invariant,
        result,
        timing_us: Some(elapsed),
    })
}

fn invariant_name(e: &Error) -> String {
    match e {
        Error::Precondition(m) => format!("precondition: {m}"),
        Error::Verification(m) => format!("verification: {m}"),
        Error::NonMinimal { .. } => "minimality".into(),
        other => other.to_string(),
    }
}

fn height(h: Height) -> HeightValue {
    h.finite()
}

pub fn strings(m: &HomogeneousMatrix) -> Vec<Vec<String>> {
    m.entries().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn witness(w: &GeneralizedRowWitness) -> Witness {
    Witness {
        row_combination: w.row_combination.iter().map(ToString::to_string).collect(),
        kept_rows: w.kept_rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        literal: w.literal,
        seed: w.seed,
        verified: w.verified,
    }
}

pub fn classification(c: &ClassificationReport) -> Classification {
    Classification {
        t: c.t,
        r: c.r,
        expected_codim: c.expected_codim,
        required_submaximal_height: c.r + 2,
        actual_height: height(c.actual_height),
        submaximal_height: height(c.submaximal_height),
        is_standard: c.is_standard,
        is_good: c.is_good,
        empty_scheme: c.empty_scheme,
        witness: c.witness.as_ref().map(witness),
    }
}

/// Generators as strings, first occurrences only.
fn distinct(gens: &[detscheme_core::Polynomial]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for g in gens {
        let s = g.to_string();
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn build(p: &DeterminantalPresentation, kind: KindArg) -> Result<FreeComplex, Error> {
    match kind {
        KindArg::En => eagon_northcott(p),
        KindArg::Br => buchsbaum_rim(p),
    }
}

fn kind_name(kind: KindArg) -> String {
    match kind {
        KindArg::En => "eagon-northcott".into(),
        KindArg::Br => "buchsbaum-rim".into(),
    }
}

fn truncation(problem: &Problem, phi: &HomogeneousMatrix, flag: Option<i64>) -> i64 {
    flag.or(problem.d_max).unwrap_or_else(|| default_truncation(phi))
}

fn dispatch(cmd: &Command, problem: &Problem, p: &DeterminantalPresentation, seed: u64) -> Result<Outcome, Error> {
    let phi = p.matrix();
    match cmd {
        Command::Classify => done(Body::Classify(classification(&classify_with_witness(p, seed, WITNESS_TRIALS)))),
        Command::Minors { size } => {
            let s = size.unwrap_or(p.t());
            let ideal = minors(phi, s)?;
            let gens = minimal_generator_count(&ideal)?;
            done(Body::Minors {
                size: s,
                minors: distinct(ideal.generators()),
                height: height(ideal.height()),
                minimal_generators: gens.into_iter().map(|(d, c)| DegreeCount { degree: d as i64, count: c }).collect(),
            })
        }
        Command::Complex { kind, max_degree } => {
            let c = build(p, *kind)?;
            let is_complex = verify_complex(&c);
            let be = buchsbaum_eisenbud(&c, seed);
            let hi = truncation(problem, phi, *max_degree);
            let ex = graded_exactness_check(&c, 0..=hi);
            let exact = ex.all_exact();
            let body = Body::Complex {
                complex: kind_name(*kind),
                ranks: c.ranks(),
                twists: c.modules().iter().map(|m| m.twists().to_vec()).collect(),
                is_complex,
                acyclicity: be
                    .entries
                    .iter()
                    .map(|e| AcyclicityLine {
                        position: e.position,
                        expected_rank: e.expected_rank,
                        computed_rank: e.computed_rank,
                        minor_height: height(e.minor_height),
                        rank_ok: e.rank_ok,
                        height_ok: e.height_ok,
                    })
                    .collect(),
                acyclic: be.pass,
                degrees: (0, hi),
                exact,
                exactness_failures: ex
                    .failures()
                    .map(|f| ExactnessFailure { position: f.position, degree: f.degree })
                    .collect(),
            };
            if !is_complex {
                failed(body, "d∘d = 0")
            } else if be.pass && !exact {
                failed(body, "acyclic complex must be exact in every degree")
            } else {
                done(body)
            }
        }
        Command::Betti { kind } => {
            let c = build(p, *kind)?;
            let table = betti_table(&c)?;
            let rows = (0..c.modules().len())
                .map(|i| table.row(i).into_iter().map(|(degree, count)| DegreeCount { degree, count }).collect())
                .collect();
            done(Body::Betti { complex: kind_name(*kind), ranks: c.ranks(), table: rows })
        }
        Command::CmType => {
            let value = cm_type(p)?;
            done(Body::CmType { t: p.t(), r: p.r(), cm_type: value, binomial: binomial(p.r() + p.t() - 1, p.r()) })
        }
        Command::Annihilator { max_degree } => {
            let d_max = max_degree.or(problem.d_max).unwrap_or(8);
            let rep = verify_annihilator(p, d_max)?;
            let failure = rep.failure.map(|(d, dir)| {
                let what = match dir {
                    AnnihilatorDirection::MinorsAnnihilate => "a maximal minor does not annihilate the cokernel",
                    AnnihilatorDirection::AnnihilatorInMinors => "an annihilating form lies outside the minors",
                };
                format!("degree {d}: {what}")
            });
            let body = Body::Annihilator {
                d_max,
                minors_checked: rep.minors_checked,
                annihilator_dims: rep.annihilator_dims.iter().map(|&(degree, count)| DegreeCount { degree, count }).collect(),
                failure: failure.clone(),
            };
            match failure {
                Some(f) => failed(body, format!("Ann(coker Φ) = I(Φ): {f}")),
                None => done(body),
            }
        }
        Command::Flag => {
            let flag = build_flag(p, seed)?;
            let body = Body::Flag {
                stages: flag
                    .stages
                    .iter()
                    .map(|s| FlagLine {
                        t: s.report.t,
                        r: s.report.r,
                        codim: s.report.expected_codim,
                        is_good: s.report.is_good,
                        seed: s.seed,
                        contained_in_previous: s.contained_in_previous,
                        matrix: strings(s.presentation.matrix()),
                    })
                    .collect(),
                codims: flag.codims(),
                verified: flag.verified(),
            };
            if flag.verified() {
                done(body)
            } else {
                failed(body, "flag stages good and nested")
            }
        }
        Command::Section { row, witness: use_witness, max_degree } => {
            let (psi, deletion, deleted, augmented_seed) = match (row, use_witness) {
                (Some(i), _) => {
                    if *i >= p.t() {
                        return Err(Error::Shape(format!("row {i} out of range for {} rows", p.t())));
                    }
                    (p.clone(), RowDeletion::Index(*i), format!("row {i}"), None)
                }
                (None, true) => {
                    let rep = classify_with_witness(p, seed, WITNESS_TRIALS);
                    let w = rep.witness.ok_or_else(|| Error::Precondition("no generalized-row witness".into()))?;
                    let label = format!("generalized row {}", w.describe());
                    (p.clone(), RowDeletion::Witness(w), label, None)
                }
                (None, false) => {
                    let aug = augment_general_row(p, None, seed)?;
                    let t = aug.presentation.t();
                    (aug.presentation, RowDeletion::Index(t - 1), format!("row {}", t - 1), Some(aug.seed))
                }
            };
            let d_max = truncation(problem, psi.matrix(), *max_degree);
            let seq = section_sequence(&psi, &deletion, d_max)?;
            let body = Body::Section {
                deleted,
                augmented_seed,
                psi: strings(psi.matrix()),
                phi: strings(&seq.phi),
                twist: seq.twist,
                records: seq
                    .records
                    .iter()
                    .map(|r| SectionLine {
                        degree: r.degree,
                        hf_ms: r.hf_ms,
                        hf_shifted_quotient: r.hf_shifted_quotient,
                        hf_mx: r.hf_mx,
                        additive: r.additive(),
                    })
                    .collect(),
            };
            done(body)
        }
        Command::Canonical { max_degree } => {
            let d_max = truncation(problem, phi, *max_degree);
            let w = canonical_module(p, d_max)?;
            done(Body::Canonical {
                presentation: strings(&w.presentation),
                target_twists: w.presentation.target().twists().to_vec(),
                source_twists: w.presentation.source().twists().to_vec(),
                shift: w.shift,
                checked: (*w.checked.start(), *w.checked.end()),
                cyclic: w.cyclic,
            })
        }
        Command::Hilbert { max_degree } => {
            let d_max = truncation(problem, phi, *max_degree);
            let quotient = minors_quotient_ranker(p)?;
            let gb = p.ideal().groebner();
            let coker = PieceRanker::new(phi)?;
            let lines: Vec<HilbertLine> = (0..=d_max)
                .map(|d| HilbertLine {
                    degree: d,
                    quotient: quotient.cokernel_dim(d),
                    standard_monomials: standard_monomial_count(&gb, d as u32),
                    cokernel: coker.cokernel_dim(d),
                })
                .collect();
            let bad = lines.iter().find(|l| l.quotient != l.standard_monomials).map(|l| l.degree);
            let body = Body::Hilbert { lines };
            match bad {
                Some(d) => failed(body, format!("HF(R/I_X) routes disagree in degree {d}")),
                None => done(body),
            }
        }
    }
}
