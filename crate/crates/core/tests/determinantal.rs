mod common;

use common::*;
use detscheme_core::determinantal::*;
use detscheme_core::grading::{hilbert_function, HilbertSubject};
use detscheme_core::groebner::minimal_generator_count;
use detscheme_core::minors::{minors, subsets};
use detscheme_core::*;
use proptest::prelude::*;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn point_square_minors() {
    let r = p3();
    let i = minors(point_square().matrix(), 2).unwrap();
    let six = ideal(&r, &["x1^2", "x1*x2", "x1*x3", "x2^2 - x1*x3", "x2*x3", "x3^2"]);
    assert_eq!(i.generators().len(), 6);
    // up to sign
    for g in i.generators() {
        assert!(six.generators().iter().any(|h| h == g || *h == -g), "{g}");
    }
    let square = ideal(&r, &["x1^2", "x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2"]);
    assert!(i.contains_ideal(&square) && square.contains_ideal(&i));
}

#[test]
fn axes_minors() {
    let r = p3();
    let i = minors(axes().matrix(), 2).unwrap();
    assert_eq!(i.generators().len(), 3);
    assert!(i.same_ideal(&ideal(&r, &["x2*x3", "x1*x3", "x1*x2"])));
}

#[test]
fn minors_of_size_one_and_out_of_range() {
    let r = p3();
    let p = hilbert_burch();
    assert!(minors(p.matrix(), 1).unwrap().same_ideal(&ideal(&r, &["x0", "x1", "x2", "x3"])));
    assert!(minors(p.matrix(), 0).unwrap().is_unit());
    assert!(matches!(minors(p.matrix(), 3), Err(Error::MinorSize { size: 3, rows: 2, cols: 3 })));
    assert_eq!(subsets(5, 2).len(), binomial(5, 2));
}

#[test]
fn classify_point_square() {
    let rep = classify(&point_square());
    assert_eq!((rep.t, rep.r, rep.expected_codim), (2, 2, 3));
    assert_eq!(rep.actual_height, Height::Finite(3));
    assert_eq!(rep.submaximal_height, Height::Finite(3));
    assert!(rep.is_standard);
    assert!(!rep.is_good);
    assert!(!rep.empty_scheme);
}

#[test]
fn classify_good_fixtures() {
    let rep = classify(&hilbert_burch());
    assert_eq!((rep.actual_height, rep.submaximal_height), (Height::Finite(2), Height::Finite(4)));
    assert!(rep.is_standard && rep.is_good);
    let rep = classify(&axes());
    assert_eq!((rep.actual_height, rep.submaximal_height), (Height::Finite(2), Height::Finite(3)));
    assert!(rep.is_good);
    let rep = classify(&ci(2));
    assert_eq!(rep.submaximal_height, Height::Infinite);
    assert!(rep.is_standard && rep.is_good);
    let rep = classify(&random_good());
    assert_eq!((rep.actual_height, rep.submaximal_height), (Height::Finite(3), Height::Finite(4)));
    assert!(rep.is_good);
}

#[test]
fn height_deficient_matrix_is_not_standard() {
    let r = p3();
    let p = pres(&r, &[&["x0", "x1", "0", "0"], &["0", "x0", "x1", "0"]]);
    let rep = classify(&p);
    assert_eq!(rep.actual_height, Height::Finite(2));
    assert!(!rep.is_standard && !rep.is_good);
}

#[test]
fn empty_scheme_is_flagged() {
    let rep = classify(&ci(4));
    assert_eq!(rep.actual_height, Height::Finite(4));
    assert!(rep.empty_scheme && rep.is_standard);
    assert!(!classify(&ci(3)).empty_scheme);
}

#[test]
fn presentation_shape_errors() {
    let r = p3();
    let tall = HomogeneousMatrix::parse(&r, &[&["x0"], &["x1"]]).unwrap();
    assert!(matches!(DeterminantalPresentation::new(tall), Err(Error::Shape(_))));
    let empty = HomogeneousMatrix::zero(&r, GradedFreeModule::new(vec![]), GradedFreeModule::uniform(2, 1));
    assert!(DeterminantalPresentation::new(empty).is_err());
}

#[test]
fn axes_need_a_generalized_row() {
    let p = axes();
    let m = p.matrix();
    for k in 0..2 {
        let rest = m.select_rows(&[1 - k]);
        assert_eq!(minors(&rest, 1).unwrap().height(), Height::Finite(2), "literal row {k}");
    }
    let w = find_generalized_row(&p, 7, 16).unwrap().expect("a combination works");
    assert!(!w.literal && w.verified);
    assert!(w.row_combination.iter().all(|c| !c.is_zero()));
    let rest = w.remaining(m).unwrap();
    assert_eq!(minors(&rest, 1).unwrap().height(), Height::Finite(3));
    let rep = classify_with_witness(&p, 7, 16);
    assert_eq!(rep.witness, Some(w));
}

#[test]
fn hilbert_burch_has_a_literal_row() {
    let p = hilbert_burch();
    let w = find_generalized_row(&p, 0, 4).unwrap().unwrap();
    assert!(w.literal);
    let f = Field::Rational;
    assert_eq!(w.row_combination, vec![f.zero(), f.one()]);
    let rest = w.remaining(p.matrix()).unwrap();
    assert_eq!(rest.entries()[0], p.matrix().entries()[0]);
}

#[test]
fn witness_conventions() {
    let w = find_generalized_row(&ci(3), 0, 1).unwrap().unwrap();
    assert!(w.verified && w.kept_rows.is_empty());
    assert!(matches!(find_generalized_row(&point_square(), 0, 4), Err(Error::Precondition(_))));
}

#[test]
fn augmenting_a_row_of_variables() {
    let a = augment_general_row(&ci(3), None, 5).unwrap();
    let psi = &a.presentation;
    assert_eq!((psi.t(), psi.r()), (2, 1));
    let rep = classify(psi);
    assert!(rep.is_good);
    assert_eq!(rep.actual_height, Height::Finite(2));
    assert!(a.attempts >= 1 && a.attempts <= AUGMENT_RETRIES);
}

#[test]
fn augmenting_point_square_shrinks_the_ideal() {
    let p = point_square();
    let a = augment_general_row(&p, None, 11).unwrap();
    let psi = &a.presentation;
    assert_eq!((psi.t(), psi.r()), (3, 1));
    assert!(classify(psi).is_good);
    assert!(p.ideal().contains_ideal(&psi.ideal()));
}

#[test]
fn augmentation_errors() {
    assert!(matches!(augment_general_row(&hilbert_burch(), Some(2), 0), Err(Error::Infeasible(_))));
    let r = p3();
    let square = pres(&r, &[&["x0", "x1"], &["x2", "x3"]]);
    assert!(matches!(augment_general_row(&square, None, 0), Err(Error::Precondition(_))));
}

#[test]
fn augmentation_is_seeded() {
    let a = augment_general_row(&hilbert_burch(), None, 3).unwrap();
    let b = augment_general_row(&hilbert_burch(), None, 3).unwrap();
    assert_eq!(a, b);
}

#[test]
fn flag_of_hilbert_burch() {
    let f = build_flag(&hilbert_burch(), 1).unwrap();
    assert_eq!(f.codims(), vec![2, 1]);
    assert_eq!(f.steps(), 1);
    assert!(f.verified());
    let last = &f.stages[1].presentation;
    assert_eq!((last.t(), last.r()), (3, 0));
}

#[test]
fn flag_of_complete_intersection() {
    let f = build_flag(&ci(3), 1).unwrap();
    assert_eq!(f.codims(), vec![3, 2, 1]);
    assert!(f.verified());
    for w in f.stages.windows(2) {
        assert!(w[0].presentation.ideal().contains_ideal(&w[1].presentation.ideal()));
    }
}

#[test]
fn flag_of_a_hypersurface_is_trivial() {
    let r = p3();
    let f = build_flag(&pres(&r, &[&["x0^2 + x1*x2"]]), 0).unwrap();
    assert_eq!(f.steps(), 0);
    assert_eq!(f.codims(), vec![1]);
    assert!(build_flag(&point_square(), 0).is_err());
}

#[test]
fn section_sequence_recovers_point_square() {
    let p = point_square();
    let a = augment_general_row(&p, None, 11).unwrap();
    let psi = &a.presentation;
    let s = section_sequence(psi, &RowDeletion::Index(2), 10).unwrap();
    assert_eq!(&s.phi, p.matrix());
    assert_eq!(s.records.len(), 11);
    assert!(s.records.iter().all(SectionRecord::additive));
    assert!(s.i_x.same_ideal(&p.ideal()));
}

#[test]
fn section_sequence_with_a_witness() {
    let p = hilbert_burch();
    let w = find_generalized_row(&p, 0, 4).unwrap().unwrap();
    let s = section_sequence(&p, &RowDeletion::Witness(w), 10).unwrap();
    assert!(s.records.iter().all(SectionRecord::additive));
    assert_eq!(s.twist, 0);
    let axes = axes();
    let w = find_generalized_row(&axes, 7, 16).unwrap().unwrap();
    let s = section_sequence(&axes, &RowDeletion::Witness(w), 10).unwrap();
    assert!(s.records.iter().all(SectionRecord::additive));
}

#[test]
fn zero_dimensional_scheme_agrees_eventually() {
    let x = random_good();
    let a = augment_general_row(&x, None, 4).unwrap();
    let s = section_sequence(&a.presentation, &RowDeletion::Index(2), 8).unwrap();
    assert!(s.records.iter().all(SectionRecord::additive));
    let q = minors_quotient_ranker(&x).unwrap();
    for d in 4..=8 {
        let mx = hilbert_function(HilbertSubject::Cokernel(x.matrix()), d).unwrap();
        let rx = q.cokernel_dim(d);
        assert_eq!((mx, rx), (4, 4), "degree {d}");
    }
}

#[test]
fn section_sequence_preconditions() {
    let p = point_square();
    assert!(matches!(section_sequence(&p, &RowDeletion::Index(0), 4), Err(Error::Precondition(_))));
    // deleting a literal row of the axes leaves a height-2 row, not standard of codim 3
    assert!(matches!(section_sequence(&axes(), &RowDeletion::Index(1), 4), Err(Error::Precondition(_))));
    assert!(matches!(section_sequence(&hilbert_burch(), &RowDeletion::Index(5), 4), Err(Error::Shape(_))));
}

#[test]
fn generator_counts_match_binomials() {
    for (name, p) in all_fixtures() {
        let total: usize = minimal_generator_count(&p.ideal()).unwrap().values().sum();
        assert_eq!(total, binomial(p.t() + p.r(), p.r()), "{name}");
    }
}

#[test]
fn default_truncation_bound() {
    assert_eq!(default_truncation(hilbert_burch().matrix()), 1 + 3 + 3);
}

fn permuted(p: &DeterminantalPresentation, rows: &[usize], cols: &[usize]) -> DeterminantalPresentation {
    DeterminantalPresentation::new(p.matrix().select_rows(rows).select_cols(cols)).unwrap()
}

fn verdict(rep: &ClassificationReport) -> (Height, Height, bool, bool) {
    (rep.actual_height, rep.submaximal_height, rep.is_standard, rep.is_good)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn classification_ignores_permutations(which in 0usize..6, rs in any::<prop::sample::Index>(), cs in any::<prop::sample::Index>()) {
        let (_, p) = all_fixtures().swap_remove(which);
        let rows = permutation(p.t(), rs);
        let cols = permutation(p.t() + p.r(), cs);
        prop_assert_eq!(verdict(&classify(&permuted(&p, &rows, &cols))), verdict(&classify(&p)));
    }

    #[test]
    fn classification_ignores_the_order(which in 0usize..6) {
        let (_, p) = all_fixtures().swap_remove(which);
        let lex = p.ring().with_order(MonomialOrder::Lex);
        let entries: Vec<Vec<Polynomial>> =
            p.matrix().entries().iter().map(|row| row.iter().map(|e| e.to_ring(&lex)).collect()).collect();
        let m = HomogeneousMatrix::new(&lex, p.matrix().target().clone(), p.matrix().source().clone(), entries).unwrap();
        let q = DeterminantalPresentation::new(m).unwrap();
        prop_assert_eq!(verdict(&classify(&q)), verdict(&classify(&p)));
    }

    #[test]
    fn minors_are_nested(which in 0usize..6) {
        let (_, p) = all_fixtures().swap_remove(which);
        for s in 1..=p.t() {
            let big = minors(p.matrix(), s).unwrap();
            let small = minors(p.matrix(), s - 1).unwrap();
            prop_assert!(small.contains_ideal(&big));
        }
    }

    #[test]
    fn witnesses_imply_goodness(which in 1usize..6, seed in any::<u64>()) {
        let (_, p) = all_fixtures().swap_remove(which);
        if let Some(w) = find_generalized_row(&p, seed, 8).unwrap() {
            prop_assert!(w.verified);
            prop_assert!(classify(&p).is_good);
        }
    }

    #[test]
    fn augmentation_contains(seed in 0u64..1000) {
        let p = hilbert_burch();
        let a = augment_general_row(&p, None, seed).unwrap();
        prop_assert!(p.ideal().contains_ideal(&a.presentation.ideal()));
    }
}

fn permutation(n: usize, idx: prop::sample::Index) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    let mut k = idx.index(usize::MAX);
    for i in (1..n).rev() {
        v.swap(i, k % (i + 1));
        k /= i + 1;
    }
    v
}
