use detscheme::fixtures::FIXTURES;
use detscheme::{run, Command, KindArg, Problem, Report};
use detscheme_core::random::Sampler;
use detscheme_core::{Field, GradedFreeModule, MonomialOrder, PolyRing};
use proptest::prelude::*;

fn round_trip(r: &Report) {
    let back: Report = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(&back, r);
}

#[test]
fn every_fixture_report_round_trips() {
    for f in FIXTURES {
        let problem = f.problem();
        for c in f.commands() {
            let r = run(&c, &problem, None).unwrap();
            assert!(r.timing_us.is_some());
            round_trip(&r);
            round_trip(&r.canonical());
            assert!(!r.render().is_empty());
        }
    }
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let f = detscheme::fixtures::fixture("coordinate_axes").unwrap();
    let problem = f.problem();
    for c in [Command::Classify, Command::Flag, Command::Section { row: None, witness: true, max_degree: Some(6) }] {
        let a = run(&c, &problem, Some(5)).unwrap();
        let b = run(&c, &problem, Some(5)).unwrap();
        assert_eq!(a.canonical_json(), b.canonical_json());
        assert!(!a.canonical_json().contains("timing"));
    }
}

fn random_problem(seed: u64, rows: usize, extra: usize) -> Problem {
    let ring = PolyRing::standard(4, Field::Rational, MonomialOrder::GrevLex).unwrap();
    let matrix = Sampler::with_bound(Field::Rational, seed, 3)
        .matrix(&ring, GradedFreeModule::uniform(rows, 0), GradedFreeModule::uniform(rows + extra, 1))
        .unwrap();
    Problem { name: format!("random-{seed}"), ring, matrix, seed: Some(seed), d_max: Some(5) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn random_reports_round_trip_and_repeat(seed in any::<u64>(), rows in 1usize..3, extra in 0usize..3) {
        let problem = random_problem(seed, rows, extra);
        for c in [Command::Classify, Command::Complex { kind: KindArg::En, max_degree: Some(4) }, Command::Betti { kind: KindArg::Br }] {
            let a = run(&c, &problem, None).unwrap();
            let back: Report = serde_json::from_str(&a.to_json()).unwrap();
            prop_assert_eq!(&back, &a);
            let b = run(&c, &problem, None).unwrap();
            prop_assert_eq!(a.canonical_json(), b.canonical_json());
        }
    }
}
