mod common;

use common::{rats, unimodular};
use minbr::algebra111::*;
use minbr::certify::diagonalizability_certificate;
use minbr::corpus;
use minbr::exact::{rat, RatMatrix, Rational};
use minbr::tensor::{Factor, Tensor3};
use minbr::Error;
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn structure_constant_families() {
    for sc in [
        StructureConstants::split(4),
        StructureConstants::truncated_polynomial(4),
        StructureConstants::square_zero(3),
        StructureConstants::quadratic(rat(2)),
    ] {
        assert!(sc.is_commutative() && sc.is_associative() && sc.is_unital());
    }
    let t = StructureConstants::truncated_polynomial(3);
    // x · x = x^2
    assert_eq!(t.mul(&rats(&[0, 1, 0]), &rats(&[0, 1, 0])), rats(&[0, 0, 1]));
    assert_eq!(t.mul(&rats(&[0, 0, 1]), &rats(&[0, 1, 0])), rats(&[0, 0, 0]));
    assert_eq!(StructureConstants::split(3).unit(), Some(rats(&[1, 1, 1])));
    assert_eq!(t.unit(), Some(rats(&[1, 0, 0])));
    let nilpotent = StructureConstants::from_fn(1, |_, _, _| rat(0));
    assert!(!nilpotent.is_unital());
    let q = StructureConstants::quadratic(rat(3));
    assert_eq!(q.mul(&rats(&[0, 1]), &rats(&[0, 1])), rats(&[3, 0]));
}

#[test]
fn algebra_of_unit_tensor_is_split() {
    for m in 1..=5 {
        let alg = compute_111_algebra(&Tensor3::unit(m)).unwrap();
        assert_eq!(alg.dim(), m);
        assert!(alg.commutative && alg.closed && alg.unital);
        assert!(alg.basis[0].x.is_identity() && alg.basis[0].y.is_identity() && alg.basis[0].z.is_identity());
        assert_eq!(alg.projections_injective(), [true; 3]);
        assert!(gorenstein_check(&alg.constants));
        let cert = diagonalizability_certificate(&alg.constants.structure_tensor()).unwrap();
        assert!(cert.rank_m(), "m = {m}");
    }
}

#[test]
fn algebra_of_symmetric_cubic_is_square_zero() {
    let t = corpus::get("symmetric_cubic").unwrap().tensor;
    let alg = compute_111_algebra(&t).unwrap();
    assert_eq!(alg.dim(), 5);
    assert!(alg.commutative && alg.unital);
    for i in 1..5 {
        for j in 1..5 {
            for k in 0..5 {
                assert!(alg.constants.get(i, j, k).is_zero(), "e{i} e{j}");
            }
        }
    }
    assert!(!gorenstein_check(&alg.constants));
    assert_eq!(alg.constants, StructureConstants::square_zero(4));
}

#[test]
fn algebra_triples_are_compatible() {
    let t = corpus::get("T_O57").unwrap().tensor;
    let alg = compute_111_algebra(&t).unwrap();
    assert_eq!(alg.dim(), 5);
    for b in &alg.basis {
        assert_eq!(t.act(&b.x, Factor::A).unwrap(), b.omega);
        assert_eq!(t.act(&b.y, Factor::B).unwrap(), b.omega);
        assert_eq!(t.act(&b.z, Factor::C).unwrap(), b.omega);
    }
}

#[test]
fn algebra_of_structure_tensors() {
    for sc in [StructureConstants::truncated_polynomial(4), StructureConstants::square_zero(3), StructureConstants::split(3)] {
        let alg = compute_111_algebra(&sc.structure_tensor()).unwrap();
        assert_eq!(alg.dim(), sc.dim());
        assert_eq!(gorenstein_check(&alg.constants), gorenstein_check(&sc));
    }
}

#[test]
fn algebra_needs_concise() {
    let t = Tensor3::from_int_terms([2, 2, 2], &[(1, 1, 1, 1)]).unwrap();
    assert!(matches!(compute_111_algebra(&t), Err(Error::NotConcise(_))));
}

#[test]
fn gorenstein_examples() {
    assert!(gorenstein_check(&StructureConstants::split(4)));
    assert!(gorenstein_check(&StructureConstants::truncated_polynomial(5)));
    assert!(gorenstein_check(&StructureConstants::square_zero(1)));
    assert!(!gorenstein_check(&StructureConstants::square_zero(2)));
    assert!(!gorenstein_check(&StructureConstants::square_zero(4)));
}

#[test]
fn symmetry_of_unit_tensor() {
    for m in 2..=4 {
        let d = symmetry_dims(&Tensor3::unit(m));
        assert_eq!(d, SymmetryDims { full: 2 * m, ab_part: m, bc_part: m, ca_part: m });
    }
}

#[test]
fn symmetry_table() {
    let keys = ["T_O58", "T_O57", "T_O57_tilde", "T_O56_tilde", "T_O56", "T_O55", "T_O54"];
    let expected = [(16, 5, 5, 5), (17, 5, 6, 5), (17, 5, 5, 6), (18, 5, 6, 6), (18, 6, 5, 6), (19, 6, 6, 6), (20, 6, 6, 6)];
    for (key, (full, ab, bc, ca)) in keys.iter().zip(expected) {
        let d = symmetry_dims(&corpus::get(key).unwrap().tensor);
        assert_eq!(d, SymmetryDims { full, ab_part: ab, bc_part: bc, ca_part: ca }, "{key}");
    }
}

#[test]
fn adhm_unit_is_nonlocal() {
    let m = adhm_module(&Tensor3::unit(3), Factor::A).unwrap();
    assert_eq!(m.locality, Locality::NonLocal);
    assert_eq!(m.action_matrices.len(), 2);
    assert!(m.hilbert_module.is_none());
    assert!(min_generators(&m).is_err());
    assert!(cyclicity_check(&Tensor3::unit(3), Factor::A).unwrap());
}

#[test]
fn adhm_local_algebras() {
    let t = StructureConstants::truncated_polynomial(4).structure_tensor();
    let m = adhm_module(&t, Factor::A).unwrap();
    assert_eq!(m.locality, Locality::Local);
    assert_eq!(m.hilbert_module, Some(vec![1, 1, 1, 1]));
    assert_eq!(m.hilbert_algebra, Some(vec![1, 1, 1, 1]));
    assert_eq!(min_generators(&m).unwrap(), 1);

    let t = StructureConstants::square_zero(4).structure_tensor();
    let m = adhm_module(&t, Factor::A).unwrap();
    assert_eq!(m.hilbert_module, Some(vec![1, 4]));
    assert_eq!(m.hilbert_algebra, Some(vec![1, 4]));
    assert!(cyclicity_check(&t, Factor::A).unwrap());
}

#[test]
fn adhm_non_cyclic_module() {
    let slices = [RatMatrix::identity(3), RatMatrix::unit(3, 2, 0), RatMatrix::unit(3, 2, 1)];
    let t = Tensor3::from_a_slices(&slices).unwrap();
    let m = adhm_module(&t, Factor::A).unwrap();
    assert_eq!(m.locality, Locality::Local);
    assert_eq!(m.hilbert_module, Some(vec![2, 1]));
    assert_eq!(min_generators(&m).unwrap(), 2);
    assert!(!cyclicity_check(&t, Factor::A).unwrap());

    let flipped = [RatMatrix::identity(3), RatMatrix::unit(3, 0, 2), RatMatrix::unit(3, 1, 2)];
    let t = Tensor3::from_a_slices(&flipped).unwrap();
    assert_eq!(min_generators(&adhm_module(&t, Factor::A).unwrap()).unwrap(), 1);
    assert!(cyclicity_check(&t, Factor::A).unwrap());
}

#[test]
fn adhm_needs_generic_factor() {
    let t = corpus::get("T_O58").unwrap().tensor;
    assert!(matches!(adhm_module(&t, Factor::A), Err(Error::Precondition(_))));
}

#[test]
fn t_phi_constructions() {
    for m in 1..=5 {
        let ones = vec![rat(1); m];
        let t = build_t_phi(&StructureConstants::split(m), &ones).unwrap();
        assert_eq!(t, Tensor3::unit(m));
        assert!(t.genericity_profile().is_one_generic());
    }
    let sc = StructureConstants::truncated_polynomial(4);
    let mut phi: Vec<Rational> = vec![rat(0); 4];
    phi[3] = rat(1);
    let t = build_t_phi(&sc, &phi).unwrap();
    assert!(t.genericity_profile().is_one_generic());
    assert!(build_t_phi(&sc, &[rat(1)]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn symmetry_dims_invariant(x in unimodular(4), y in unimodular(4), z in unimodular(4)) {
        let t = StructureConstants::truncated_polynomial(4).structure_tensor();
        let moved = t.change_basis(&x, &y, &z).unwrap();
        prop_assert_eq!(symmetry_dims(&moved), symmetry_dims(&t));
        prop_assert_eq!(compute_111_algebra(&moved).unwrap().dim(), 4);
    }
}
