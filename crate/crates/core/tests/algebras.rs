use quadri_core::fqsym::{fqsym_basis, Fqsym, ShuffleWords, words_over};
use quadri_core::quadri::{scan_axioms, scan_bialgebra, scan_coaxioms, scan_dual_axioms};
use quadri_core::wqsym::{wqsym_basis, Wqsym};

#[test]
fn fqsym_axioms_through_degree_six() {
    let s = scan_axioms(&Fqsym, &fqsym_basis, 6);
    assert!(s.passed(), "{s:?}");
    assert!(s.inputs > 0);
}

#[test]
fn fqsym_is_not_dual_quadri() {
    let s = scan_dual_axioms(&Fqsym, &fqsym_basis, 3);
    assert!(!s.passed());
}

#[test]
fn fqsym_coaxioms_through_degree_six() {
    let s = scan_coaxioms(&Fqsym, &fqsym_basis, 6);
    assert!(s.passed(), "{s:?}");
}

#[test]
fn fqsym_bialgebra_through_degree_five() {
    let s = scan_bialgebra(&Fqsym, &fqsym_basis, 5);
    assert!(s.passed(), "{s:?}");
}

#[test]
fn wqsym_axioms_through_degree_five() {
    let s = scan_axioms(&Wqsym, &wqsym_basis, 5);
    assert!(s.passed(), "{s:?}");
}

#[test]
fn wqsym_coaxioms_through_degree_five() {
    let s = scan_coaxioms(&Wqsym, &wqsym_basis, 5);
    assert!(s.passed(), "{s:?}");
}

#[test]
fn wqsym_bialgebra_through_degree_four() {
    let s = scan_bialgebra(&Wqsym, &wqsym_basis, 4);
    assert!(s.passed(), "{s:?}");
}

#[test]
fn shuffle_words_on_three_letters() {
    let basis = |n: usize| words_over(&['a', 'b', 'c'], n);
    assert!(scan_axioms(&ShuffleWords, &basis, 4).passed());
}

mod derived_structures {
    use quadri_core::exactlin::LinComb;
    use quadri_core::fqsym::{fqsym_basis, Fqsym};
    use quadri_core::models::{squares_basis, Squares};
    use quadri_core::quadri::{check_quadri_axioms, dendriform_defects, star_associator, graded_triples, Kind};
    use quadri_core::wqsym::{wqsym_basis, Wqsym};

    #[test]
    fn row_and_column_sums_are_dendriform() {
        for (x, y, z) in graded_triples(&fqsym_basis, 5) {
            for (prec, succ) in [(Kind::Left, Kind::Right), (Kind::Up, Kind::Down)] {
                assert!(dendriform_defects(&Fqsym, prec, succ, &x, &y, &z).iter().all(LinComb::is_zero));
            }
        }
        for (x, y, z) in graded_triples(&wqsym_basis, 4) {
            for (prec, succ) in [(Kind::Left, Kind::Right), (Kind::Up, Kind::Down)] {
                assert!(dendriform_defects(&Wqsym, prec, succ, &x, &y, &z).iter().all(LinComb::is_zero));
            }
        }
    }

    // Holds for any four products: the nine defects telescope to the ⋆
    // associator. Squares is not quadri, so the defects are nonzero.
    #[test]
    fn nine_defects_sum_to_the_star_associator() {
        let mut nonzero = 0;
        for (x, y, z) in graded_triples(&squares_basis, 4) {
            let defects = check_quadri_axioms(&Squares, &x, &y, &z);
            nonzero += defects.iter().filter(|d| !d.is_zero()).count();
            let sum = defects.into_iter().fold(LinComb::zero(), |a, d| a + d);
            assert_eq!(sum, star_associator(&Squares, &x, &y, &z));
        }
        assert!(nonzero > 0);
        for (x, y, z) in graded_triples(&fqsym_basis, 4) {
            let sum = check_quadri_axioms(&Fqsym, &x, &y, &z).into_iter().fold(LinComb::zero(), |a, d| a + d);
            assert_eq!(sum, star_associator(&Fqsym, &x, &y, &z));
        }
    }
}
