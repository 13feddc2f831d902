//! One line per acceptance criterion. Every check is exact; the only
//! tolerances are the wall-clock budgets below.

use std::io::Write;
use std::time::{Duration, Instant};

use detscheme::fixtures::fixture;
use detscheme::{run, Body, Command, Problem};
use detscheme_core::complexes::*;
use detscheme_core::determinantal::*;
use detscheme_core::grading::{
    euler_characteristic, graded_exactness_check, hilbert_function, matrix_piece, HilbertSubject,
};
use detscheme_core::groebner::{dimension, minimal_generator_count, normal_form, standard_monomial_count};
use detscheme_core::minors::minors;
use detscheme_core::random::Sampler;
use detscheme_core::*;

const CLASSIFY_BUDGET: Duration = Duration::from_secs(1);
const COMPLEX_BUDGET: Duration = Duration::from_secs(5);
const ANNIHILATOR_BUDGET: Duration = Duration::from_secs(10);
const SECTION_BUDGET: Duration = Duration::from_secs(10);
const FLAG_BUDGET: Duration = Duration::from_secs(30);
const NO_BUDGET: Duration = Duration::MAX;

const CANONICAL_RANGE: (i64, i64) = (0, 10);
const EXACTNESS_DEGREES: (i64, i64) = (0, 10);
const ANNIHILATOR_DEGREE: i64 = 8;
const SECTION_DEGREE: i64 = 10;
const PROPERTY_CASES: u64 = 12;

type Outcome = Result<String, String>;

fn load(name: &str) -> Problem {
    fixture(name).expect("bundled").problem()
}

fn pres(name: &str) -> DeterminantalPresentation {
    load(name).presentation().unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn alternating(ranks: &[usize]) -> i64 {
    ranks.iter().enumerate().map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
}

const ALL: [&str; 6] = ["point_square", "hilbert_burch", "coordinate_axes", "ci_line", "ci_point", "random_good"];
const GOOD: [&str; 5] = ["hilbert_burch", "coordinate_axes", "ci_line", "ci_point", "random_good"];

fn classification(problem: &Problem) -> Result<detscheme::report::Classification, String> {
    let rep = run(&Command::Classify, problem, None).map_err(|e| e.to_string())?;
    match rep.result {
        Body::Classify(c) => Ok(c),
        other => Err(format!("unexpected body {other:?}")),
    }
}

fn criterion_1() -> Outcome {
    let problem = load("point_square");
    let c = classification(&problem)?;
    ensure(c.is_standard && !c.is_good, "expected standard, not good")?;
    ensure(c.actual_height == Some(3) && c.submaximal_height == Some(3), "heights should be 3/3")?;
    ensure(c.expected_codim == 3 && c.required_submaximal_height == 4, "expected 3/4")?;
    let rep = run(&Command::Minors { size: Some(2) }, &problem, None).map_err(|e| e.to_string())?;
    ensure(rep.ok, "minors report not ok")?;
    let ring = &problem.ring;
    let vars = ["x1", "x2", "x3"];
    let mut square = Vec::new();
    for (i, a) in vars.iter().enumerate() {
        for b in &vars[i..] {
            square.push(ring.parse(&format!("{a}*{b}")).unwrap());
        }
    }
    let square = IdealBasis::new(ring, square);
    let i2 = minors(&problem.matrix, 2).unwrap();
    ensure(i2.contains_ideal(&square) && square.contains_ideal(&i2), "I_2 != (x1,x2,x3)^2")?;
    let total: usize = minimal_generator_count(&i2).unwrap().values().sum();
    ensure(total == 6 && total == binomial(4, 2), format!("minimal generators {total}"))?;
    Ok("standard, not good; heights 3/3 vs 3/4; I_2 = (x1,x2,x3)^2 with 6 generators".into())
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let hb = classification(&load("hilbert_burch"))?;
    ensure(start.elapsed() <= CLASSIFY_BUDGET, "first matrix over budget")?;
    ensure(hb.is_good && hb.actual_height == Some(2) && hb.submaximal_height == Some(4), "first matrix: good, heights 2/4")?;
    let problem = load("coordinate_axes");
    let start = Instant::now();
    let axes = classification(&problem)?;
    ensure(start.elapsed() <= CLASSIFY_BUDGET, "coordinate axes over budget")?;
    ensure(axes.is_good, "coordinate axes should be good")?;
    let ring = &problem.ring;
    let want = IdealBasis::parse(ring, &["x1*x2", "x1*x3", "x2*x3"]).unwrap();
    let got = minors(&problem.matrix, 2).unwrap();
    ensure(got.same_ideal(&want), "axes minors != (x1x2, x1x3, x2x3)")?;
    for row in 0..2 {
        let rest = problem.matrix.select_rows(&[1 - row]);
        let h = minors(&rest, 1).unwrap().height();
        ensure(!h.at_least(3), format!("deleting literal row {row} should leave height < 3, got {h}"))?;
    }
    let w = axes.witness.ok_or("no witness")?;
    ensure(!w.literal && w.verified, "witness should be a verified non-literal combination")?;
    Ok(format!("heights 2/4; axes minors match; generalized row ({}) needed", w.row_combination.join(", ")))
}

fn criterion_3() -> Outcome {
    let cases = [("ci_line", 1, 1, 1), ("ci_point", 1, 2, 1), ("hilbert_burch", 2, 1, 2), ("point_square", 2, 2, 3)];
    for (name, t, r, want) in cases {
        let p = pres(name);
        ensure(p.t() == t && p.r() == r, format!("{name}: shape"))?;
        let got = cm_type(&p).map_err(|e| e.to_string())?;
        let en = eagon_northcott(&p).unwrap();
        let last = en.module(en.len()).rank();
        ensure(got == want && got == binomial(r + t - 1, r) && last == got, format!("{name}: type {got}, last rank {last}"))?;
    }
    for name in ["coordinate_axes", "random_good"] {
        let p = pres(name);
        ensure(cm_type(&p).unwrap() == binomial(p.r() + p.t() - 1, p.r()), format!("{name}: type"))?;
    }
    Ok("types 1, 1, 2, 3 = C(r+t-1, r)".into())
}

fn criterion_4() -> Outcome {
    for name in ALL {
        let p = pres(name);
        for c in [eagon_northcott(&p).unwrap(), buchsbaum_rim(&p).unwrap()] {
            ensure(verify_complex(&c), format!("{name} {:?}: d∘d != 0", c.kind()))?;
            ensure(buchsbaum_eisenbud(&c, 0).pass, format!("{name} {:?}: not acyclic", c.kind()))?;
            ensure(alternating(&c.ranks()) == 0, format!("{name} {:?}: alternating sum", c.kind()))?;
        }
    }
    let p = pres("point_square");
    let (en, br) = (eagon_northcott(&p).unwrap().ranks(), buchsbaum_rim(&p).unwrap().ranks());
    ensure(en == [1, 6, 8, 3] && br == [2, 4, 4, 2], format!("ranks {en:?} {br:?}"))?;
    Ok("EN and BR on 6 fixtures: d∘d = 0, acyclic, alternating sums 0; EN 1,6,8,3; BR 2,4,4,2".into())
}

fn criterion_5() -> Outcome {
    let (lo, hi) = EXACTNESS_DEGREES;
    for name in ALL {
        let p = pres(name);
        let en = eagon_northcott(&p).unwrap();
        for c in [&en, &buchsbaum_rim(&p).unwrap()] {
            let be = buchsbaum_eisenbud(c, 0).pass;
            let exact = graded_exactness_check(c, lo..=hi).all_exact();
            ensure(be == exact, format!("{name} {:?}: BE {be}, exactness {exact}", c.kind()))?;
        }
        let gb = p.ideal().groebner();
        for d in lo..=hi {
            let hf = standard_monomial_count(&gb, d as u32) as i64;
            ensure(hf == euler_characteristic(&en, d), format!("{name}: HF(R/I_X, {d})"))?;
        }
    }
    Ok(format!("degrees {lo}..={hi}: exactness = BE verdict; HF(R/I_X) = EN Euler characteristic"))
}

fn criterion_6() -> Outcome {
    for name in ["hilbert_burch", "coordinate_axes", "point_square"] {
        let rep = verify_annihilator(&pres(name), ANNIHILATOR_DEGREE).map_err(|e| e.to_string())?;
        ensure(rep.pass(), format!("{name}: {:?}", rep.failure))?;
    }
    Ok(format!("Ann(coker Φ) = I(Φ) to degree {ANNIHILATOR_DEGREE} on three fixtures"))
}

fn section_run(name: &str) -> Result<SectionSequence, String> {
    let problem = load(name);
    let p = problem.presentation().unwrap();
    let aug = augment_general_row(&p, None, problem.seed.unwrap_or(0)).map_err(|e| format!("{name}: {e}"))?;
    let rep = classify(&aug.presentation);
    ensure(rep.is_good && rep.expected_codim == p.r(), format!("{name}: augmented stage not good of codim r"))?;
    section_sequence(&aug.presentation, &RowDeletion::Index(p.t()), SECTION_DEGREE).map_err(|e| format!("{name}: {e}"))
}

fn criterion_7() -> Outcome {
    for name in GOOD {
        let seq = section_run(name)?;
        ensure(seq.records.len() as i64 > SECTION_DEGREE, format!("{name}: too few degrees"))?;
        ensure(seq.records.iter().all(SectionRecord::additive), format!("{name}: not additive"))?;
        ensure(section_run(name)?.records == seq.records, format!("{name}: not deterministic"))?;
    }
    Ok(format!("HF additivity through degree {SECTION_DEGREE} on {} good fixtures, reproducible", GOOD.len()))
}

fn criterion_8() -> Outcome {
    for name in ["hilbert_burch", "ci_point"] {
        let problem = load(name);
        let p = problem.presentation().unwrap();
        let flag = build_flag(&p, problem.seed.unwrap_or(0)).map_err(|e| e.to_string())?;
        let want: Vec<usize> = (1..=p.r() + 1).rev().collect();
        ensure(flag.codims() == want, format!("{name}: codims {:?}", flag.codims()))?;
        ensure(flag.stages.iter().all(|s| s.report.is_good), format!("{name}: a stage is not good"))?;
        for w in flag.stages.windows(2) {
            let (prev, next) = (w[0].presentation.ideal(), w[1].presentation.ideal());
            ensure(prev.contains_ideal(&next), format!("{name}: containment fails"))?;
            ensure(w[1].contained_in_previous == Some(true), format!("{name}: containment not recorded"))?;
        }
    }
    Ok("flags 2,1 and 3,2,1: all stages good and nested".into())
}

fn criterion_9() -> Outcome {
    let (lo, hi) = CANONICAL_RANGE;
    for name in ["hilbert_burch", "coordinate_axes", "ci_line"] {
        let p = pres(name);
        let w = canonical_module(&p, hi).map_err(|e| format!("{name}: {e}"))?;
        ensure(*w.checked.start() <= lo && *w.checked.end() >= hi, format!("{name}: checked {:?}", w.checked))?;
        for d in lo..=hi {
            let mx = hilbert_function(HilbertSubject::Cokernel(p.matrix()), d).unwrap();
            let om = hilbert_function(HilbertSubject::Cokernel(&w.presentation), d + w.shift).unwrap();
            ensure(mx == om, format!("{name}: HF differs in degree {d}"))?;
        }
        if name == "ci_line" {
            ensure(w.cyclic, "complete intersection: canonical module should be cyclic")?;
        }
    }
    Ok(format!("M_X = ω(e) on {lo}..={hi} for both codim-2 fixtures; cyclic for (x0, x1)"))
}

/// Degree of the Hilbert polynomial from finite differences of standard monomial counts; `-1` for zero.
fn hilbert_polynomial_degree(gb: &IdealBasis) -> i64 {
    let mut v: Vec<i64> = (12u32..=18).map(|d| standard_monomial_count(gb, d) as i64).collect();
    let mut k = 0;
    while v.iter().any(|&x| x != 0) {
        v = v.windows(2).map(|w| w[1] - w[0]).collect();
        k += 1;
    }
    k - 1
}

fn criterion_10() -> Outcome {
    let ring = PolyRing::standard(4, Field::Rational, MonomialOrder::GrevLex).unwrap();
    for seed in 0..PROPERTY_CASES {
        let mut s = Sampler::with_bound(Field::Rational, seed, 3);
        let gens: Vec<Polynomial> = (0..2 + seed as usize % 2).map(|i| s.form(&ring, 1 + (i as u32 + seed as u32) % 2)).collect();
        let ideal = IdealBasis::new(&ring, gens.clone());
        let gb = ideal.groebner();
        let f = s.form(&ring, 3);
        let nf = normal_form(&f, &gb).unwrap();
        ensure(normal_form(&nf, &gb).unwrap() == nf, format!("seed {seed}: NF not idempotent"))?;
        let mut combo = Polynomial::zero(&ring);
        for g in &gens {
            let a = s.form(&ring, 3 - g.total_degree().unwrap_or(0).min(3));
            combo = combo.checked_add(&a.checked_mul(g).unwrap()).unwrap();
        }
        ensure(gb.contains(&combo), format!("seed {seed}: membership"))?;
        let rep = dimension(&ideal);
        let dim = rep.krull_dim;
        ensure(rep.height.finite().map(|h| h as i64 + dim) == Some(4), format!("seed {seed}: height + dim"))?;
        ensure(hilbert_polynomial_degree(&gb) == dim - 1, format!("seed {seed}: Hilbert polynomial degree"))?;

        let a = s.matrix(&ring, GradedFreeModule::uniform(2, 0), GradedFreeModule::uniform(3, 1)).unwrap();
        let b = s.matrix(&ring, GradedFreeModule::uniform(3, 1), GradedFreeModule::uniform(2, 2)).unwrap();
        let ab = a.compose(&b).unwrap();
        for d in 1..4 {
            ensure(matrix_piece(&ab, d) == matrix_piece(&a, d).mul(&matrix_piece(&b, d)), format!("seed {seed}: pieces"))?;
        }
    }
    for name in ALL {
        let p = pres(name);
        for size in 2..=p.t() {
            let big = minors(p.matrix(), size).unwrap();
            ensure(minors(p.matrix(), size - 1).unwrap().contains_ideal(&big), format!("{name}: I_{size} ⊄ I_{}", size - 1))?;
        }
        ensure(br_entries_in_ideal(&p).unwrap(), format!("{name}: BR entries outside the minors"))?;
    }
    let p = pres("point_square");
    let before = betti_table(&eagon_northcott(&p).unwrap()).unwrap();
    let ring = p.ring().clone();
    let combos = [vec![ring.field().from_i64(1), ring.field().from_i64(0)], vec![ring.field().from_i64(3), ring.field().from_i64(1)]];
    let moved = DeterminantalPresentation::new(p.matrix().combine_rows(&combos).unwrap().select_cols(&[2, 0, 3, 1])).unwrap();
    ensure(betti_table(&eagon_northcott(&moved).unwrap()).unwrap() == before, "Betti table moved under row operations")?;

    let en = eagon_northcott(&p).unwrap();
    let d2 = en.differential(2);
    let (i, j) = (0..d2.nrows()).flat_map(|i| (0..d2.ncols()).map(move |j| (i, j))).find(|&(i, j)| !d2.entry(i, j).is_zero()).unwrap();
    let mut flipped = d2.entries().to_vec();
    flipped[i][j] = -&flipped[i][j];
    let flipped = HomogeneousMatrix::new(&ring, d2.target().clone(), d2.source().clone(), flipped).unwrap();
    ensure(!verify_complex(&en.with_differential(2, flipped).unwrap()), "sign flip not detected")?;
    let zeroed = en.with_differential(2, HomogeneousMatrix::zero(&ring, d2.target().clone(), d2.source().clone())).unwrap();
    ensure(!graded_exactness_check(&zeroed, 0..=6).all_exact(), "zeroed differential not detected")?;
    let deficient = DeterminantalPresentation::parse(&ring, &[&["x0", "x1", "0", "0"], &["0", "x0", "x1", "0"]]).unwrap();
    ensure(!classify(&deficient).is_standard, "height-deficient matrix classified standard")?;
    ensure(!buchsbaum_eisenbud(&eagon_northcott(&deficient).unwrap(), 0).pass, "height-deficient EN passed")?;
    Ok(format!("{PROPERTY_CASES} seeded cases per property; three mutations detected"))
}

#[test]
fn acceptance() {
    let criteria: [(u32, fn() -> Outcome, Duration); 10] = [
        (1, criterion_1, CLASSIFY_BUDGET),
        (2, criterion_2, NO_BUDGET),
        (3, criterion_3, NO_BUDGET),
        (4, criterion_4, COMPLEX_BUDGET),
        (5, criterion_5, NO_BUDGET),
        (6, criterion_6, ANNIHILATOR_BUDGET),
        (7, criterion_7, SECTION_BUDGET),
        (8, criterion_8, FLAG_BUDGET),
        (9, criterion_9, NO_BUDGET),
        (10, criterion_10, NO_BUDGET),
    ];
    let mut failures = Vec::new();
    for (n, check, budget) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let budget_note = if budget == NO_BUDGET { String::new() } else { format!(" / {:.0?}", budget) };
        let (verdict, detail) = match outcome {
            Ok(_) if elapsed > budget => ("FAIL", "over budget".to_string()),
            Ok(d) => ("PASS", d),
            Err(e) => ("FAIL", e),
        };
        let line = format!("criterion {n:>2}: {verdict}  {detail}  [{elapsed:.2?}{budget_note}]\n");
        std::io::stderr().write_all(line.as_bytes()).unwrap();
        if verdict == "FAIL" {
            failures.push(n);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
