mod common;

use common::unimodular;
use minbr::corpus::{self, classified_tensor};
use minbr::exact::{rat, unit_vector, RatMatrix};
use minbr::normalform::*;
use minbr::tensor::{Factor, Tensor3};
use minbr::Error;
use proptest::prelude::*;

fn tensor(key: &str) -> Tensor3 {
    corpus::get(key).unwrap().tensor
}

#[test]
fn normal_form_round_trip_and_conditions() {
    for label in M5Label::ALL {
        let t = classified_tensor(label);
        let nf = atkinson_nf(&t).unwrap();
        assert_eq!(nf.basis_change.apply(&t).unwrap(), nf.tensor(), "{label}");
        assert!(nf.x[0].is_identity());
        let checks = check_nf_conditions(&nf);
        assert!(checks.all(), "{label}: {checks:?}");
        assert!(checks.stored_auxiliary_ok);
    }
}

#[test]
fn normal_form_of_example_data() {
    let t = tensor("example_111necessary");
    assert!(matches!(atkinson_nf(&t), Err(Error::Precondition(_))));
    let x = vec![
        RatMatrix::identity(4),
        RatMatrix::unit(4, 0, 3),
        RatMatrix::unit(4, 0, 2),
        RatMatrix::unit(4, 2, 3),
        RatMatrix::zeros(4, 4),
    ];
    let nf = CorankOneNF::from_blocks(x, unit_vector(4, 3), unit_vector(4, 0)).unwrap();
    assert_eq!(nf.tensor(), t);
    let checks = check_nf_conditions(&nf);
    // x_3 and x_4 do not commute.
    assert!(!checks.items[1]);
    assert!(checks.items[0] && checks.items[3]);
}

#[test]
fn normal_form_guards() {
    assert!(matches!(atkinson_nf(&Tensor3::unit(4)), Err(Error::NoCorankOne(_))));
    let degenerate = Tensor3::from_int_terms([3, 3, 3], &[(1, 1, 1, 1), (2, 2, 2, 1)]).unwrap();
    assert!(matches!(atkinson_nf(&degenerate), Err(Error::NotConcise(_))));
    assert!(CorankOneNF::from_blocks(vec![RatMatrix::identity(3)], vec![rat(0); 3], vec![rat(0); 3]).is_err());
}

#[test]
fn normalize_xm_zeroes_first_row_and_last_column() {
    let t = classified_tensor(M5Label::O58);
    let mut slices = t.slices(Factor::A);
    slices[4] = &slices[4] + &slices[0].scale(&rat(3));
    slices[4] = &slices[4] + &slices[2].scale(&rat(-2));
    let shifted = Tensor3::from_a_slices(&slices).unwrap();
    let nf = atkinson_nf(&shifted).unwrap();
    assert_eq!(nf.u_m, unit_vector(4, 3));
    assert_eq!(nf.w_m, unit_vector(4, 0));
    assert!(!nf.x[4].row(0).iter().all(num_traits::Zero::is_zero));

    let literal = normalize_xm(&nf, &unit_vector(4, 0), &unit_vector(4, 3));
    assert!(matches!(literal, Err(Error::Precondition(_))));

    let out = normalize_xm(&nf, &unit_vector(4, 3), &unit_vector(4, 0)).unwrap();
    let x5 = &out.x[4];
    assert!((0..4).all(|j| x5.get(0, j) == &rat(0)));
    assert!((0..4).all(|i| x5.get(i, 3) == &rat(0)));
    assert_eq!(out.basis_change.apply(&shifted).unwrap(), out.tensor());
    assert!(check_nf_conditions(&out).all());
}

#[test]
fn uppersquare_and_dichotomy() {
    let expected = [
        (M5Label::O58, M5Case::M2),
        (M5Label::O57, M5Case::M2),
        (M5Label::O56, M5Case::M1),
        (M5Label::O55, M5Case::M1),
        (M5Label::O54, M5Case::M1),
    ];
    for (label, case) in expected {
        let t = classified_tensor(label);
        let nf = uppersquare(&atkinson_nf(&t).unwrap()).unwrap();
        assert_eq!(nf.basis_change.apply(&t).unwrap(), nf.tensor());
        for x in &nf.x[1..4] {
            assert!(x.block(0..4, 0..2).is_zero() && x.block(2..4, 2..4).is_zero());
        }
        let (p, c) = m5_dichotomy(&nf).unwrap();
        assert_eq!(c, case, "{label}");
        assert_eq!(p.rank(), if case == M5Case::M1 { 1 } else { 2 });
    }
}

#[test]
fn p_matrix_cases() {
    let e = |i, j| RatMatrix::unit(2, i, j);
    let (p, case) = p_matrix(&[e(0, 1), e(1, 0), &e(0, 0) - &e(1, 1)]).unwrap();
    assert_eq!(case, M5Case::M2);
    assert!(p.is_identity() || p.rank() == 2);
    let (p, case) = p_matrix(&[e(0, 0), e(0, 1), e(1, 1)]).unwrap();
    assert_eq!(case, M5Case::M1);
    assert_eq!(p.get(1, 0), &rat(0));
    assert!(p_matrix(&[e(0, 0), e(0, 0), e(1, 1)]).is_err());
}

#[test]
fn classification_of_all_representatives() {
    let cases = [
        ("T_O58", M5Label::O58),
        ("T_O57", M5Label::O57),
        ("T_O56", M5Label::O56),
        ("T_O55", M5Label::O55),
        ("T_O54", M5Label::O54),
        ("T_O57_tilde", M5Label::O57),
        ("T_O56_tilde", M5Label::O56),
    ];
    for (key, label) in cases {
        let class = classify_m5(&tensor(key)).unwrap();
        assert_eq!(class.label, label, "{key}");
        assert_eq!(class.dims.full, label.full_symmetry_dim());
        assert!(!class.table_matches.is_empty(), "{key}");
    }
}

#[test]
fn classification_preconditions() {
    assert!(matches!(classify_m5(&Tensor3::unit(5)), Err(Error::Precondition(_))));
    assert!(matches!(classify_m5(&Tensor3::unit(4)), Err(Error::Precondition(_))));
    assert!(matches!(classify_m5(&tensor("example_111necessary")), Err(Error::Precondition(_))));
    let flat = Tensor3::from_int_terms([5, 5, 5], &[(1, 1, 1, 1)]).unwrap();
    assert!(matches!(classify_m5(&flat), Err(Error::NotConcise(_))));
}

#[test]
fn labels_display() {
    let names: Vec<String> = M5Label::ALL.iter().map(ToString::to_string).collect();
    assert_eq!(names, ["O58", "O57", "O56", "O55", "O54"]);
    let dims: Vec<usize> = M5Label::ALL.iter().map(|l| l.full_symmetry_dim()).collect();
    assert_eq!(dims, [16, 17, 18, 19, 20]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn normal_form_after_basis_change(x in unimodular(5), y in unimodular(5), z in unimodular(5)) {
        let t = classified_tensor(M5Label::O56).change_basis(&x, &y, &z).unwrap();
        let nf = atkinson_nf(&t).unwrap();
        prop_assert_eq!(nf.basis_change.apply(&t).unwrap(), nf.tensor());
        prop_assert!(check_nf_conditions(&nf).all());
    }

    #[test]
    fn classification_is_invariant(x in unimodular(5), y in unimodular(5), z in unimodular(5), rot in 0usize..3) {
        let t = classified_tensor(M5Label::O55)
            .change_basis(&x, &y, &z)
            .unwrap()
            .rotated(Factor::from_index(rot));
        prop_assert_eq!(classify_m5(&t).unwrap().label, M5Label::O55);
    }
}
