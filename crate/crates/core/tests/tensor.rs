use minbr::exact::{rat, unit_vector, RatMatrix, Rational, Subspace};
use minbr::tensor::{inverse_permutation, max_rank, Factor, Tensor3};
use proptest::prelude::*;

fn ones(n: usize) -> Vec<Rational> {
    vec![rat(1); n]
}

fn w_state() -> Tensor3 {
    Tensor3::from_int_terms([2, 2, 2], &[(1, 1, 2, 1), (1, 2, 1, 1), (2, 1, 1, 1)]).unwrap()
}

// Q[x]/(x^2) with basis (1, x): T = Σ c_ij^k a_i⊗b_j⊗c_k.
fn dual_numbers() -> Tensor3 {
    Tensor3::from_int_terms([2, 2, 2], &[(1, 1, 1, 1), (1, 2, 2, 1), (2, 1, 2, 1)]).unwrap()
}

#[test]
fn slice_examples() {
    let u = Tensor3::unit(3);
    assert_eq!(u.slice(Factor::A, &ones(3)).unwrap(), RatMatrix::identity(3));
    let w = w_state();
    assert_eq!(w.slice(Factor::A, &unit_vector(2, 0)).unwrap(), RatMatrix::from_i64(&[&[0, 1], &[1, 0]]));
    assert!(w.slice(Factor::B, &[rat(0), rat(0)]).unwrap().is_zero());
    assert!(w.slice(Factor::A, &ones(3)).is_err());
}

#[test]
fn slices_follow_row_c_column_b_convention() {
    let t = Tensor3::from_int_terms([2, 3, 4], &[(2, 3, 4, 7)]).unwrap();
    let a = t.slice(Factor::A, &unit_vector(2, 1)).unwrap();
    assert_eq!((a.rows(), a.cols()), (4, 3));
    assert_eq!(a.get(3, 2), &rat(7));
    // Over B the rows are A and the columns C; over C the rows are B and the columns A.
    let b = t.slice(Factor::B, &unit_vector(3, 2)).unwrap();
    assert_eq!((b.rows(), b.cols()), (2, 4));
    assert_eq!(b.get(1, 3), &rat(7));
    let c = t.slice(Factor::C, &unit_vector(4, 3)).unwrap();
    assert_eq!((c.rows(), c.cols()), (3, 2));
    assert_eq!(c.get(2, 1), &rat(7));
}

#[test]
fn flattening_space_examples() {
    let u = Tensor3::unit(3);
    let diag: Vec<Vec<Rational>> = (0..3).map(|i| RatMatrix::unit(3, i, i).into_flat()).collect();
    assert_eq!(u.flattening_space(Factor::A), Subspace::from_vectors(9, &diag));
    let e = |i| unit_vector(2, i);
    let r1 = Tensor3::rank_one(&e(0), &e(1), &e(0));
    let s = r1.flattening_space(Factor::A);
    assert_eq!(s.dim(), 1);
    assert_eq!(s.basis().row(0), RatMatrix::unit(2, 0, 1).as_flat());
}

#[test]
fn conciseness_examples() {
    assert_eq!(Tensor3::unit(4).conciseness(), [true; 3]);
    let e = unit_vector(2, 0);
    assert_eq!(Tensor3::rank_one(&e, &e, &e).conciseness(), [false; 3]);
    assert!(w_state().is_concise());
}

#[test]
fn profile_examples() {
    let p = Tensor3::unit(5).genericity_profile();
    assert_eq!(p.max_rank, [5, 5, 5]);
    assert!(p.is_one_generic() && p.binding() && !p.one_degenerate());
    let p = dual_numbers().genericity_profile();
    assert!(p.is_one_generic());
    assert!(p.binding());
    let p = w_state().genericity_profile();
    assert!(p.is_one_generic());
    for f in Factor::ALL {
        let s = w_state().slice(f, &p.witness[f.index()]).unwrap();
        assert_eq!(s.rank(), p.max_rank[f.index()]);
    }
}

#[test]
fn profile_of_bounded_rank_space() {
    // The 3x3 skew-symmetric matrices have maximal rank 2 only.
    let t = Tensor3::from_int_terms(
        [3, 3, 3],
        &[(1, 2, 1, 1), (1, 1, 2, -1), (2, 3, 1, 1), (2, 1, 3, -1), (3, 3, 2, 1), (3, 2, 3, -1)],
    )
    .unwrap();
    let p = t.genericity_profile();
    assert_eq!(p.max_rank[0], 2);
    assert_eq!(p.corank[0], 1);
    assert!(!p.one_generic(Factor::A));
}

#[test]
fn act_examples() {
    let u = Tensor3::unit(3);
    assert_eq!(u.act(&RatMatrix::identity(3), Factor::B).unwrap(), u);
    assert!(u.act(&RatMatrix::zeros(3, 3), Factor::C).unwrap().is_zero());
    let x = RatMatrix::unit(3, 0, 1);
    let got = u.act(&x, Factor::A).unwrap();
    assert_eq!(got, Tensor3::from_int_terms([3, 3, 3], &[(1, 2, 2, 1)]).unwrap());
    assert!(u.act(&RatMatrix::identity(2), Factor::A).is_err());
}

#[test]
fn act_on_slices() {
    let t = w_state();
    let x = RatMatrix::from_i64(&[&[1, 2], &[3, 4]]);
    let ka = t.slices(Factor::A);
    let a = t.act(&x, Factor::A).unwrap().slices(Factor::A);
    assert_eq!(a[0], &ka[0].scale(&rat(1)) + &ka[1].scale(&rat(2)));
    let c = t.act(&x, Factor::C).unwrap().slices(Factor::A);
    assert_eq!(c[0], &x * &ka[0]);
    let b = t.act(&x, Factor::B).unwrap().slices(Factor::A);
    assert_eq!(b[1], &ka[1] * &x.transpose());
}

#[test]
fn permute_examples() {
    let t = w_state();
    assert_eq!(t.permute([Factor::A, Factor::B, Factor::C]), t);
    assert_eq!(t.permute([Factor::A, Factor::C, Factor::B]), t);
    let a = vec![rat(1), rat(2)];
    let b = vec![rat(3), rat(0), rat(1)];
    let c = vec![rat(5)];
    let swapped = Tensor3::rank_one(&a, &b, &c).permute([Factor::C, Factor::B, Factor::A]);
    assert_eq!(swapped, Tensor3::rank_one(&c, &b, &a));
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-3i64..=3).prop_map(rat)
}

fn tensor(a: usize, b: usize, c: usize) -> impl Strategy<Value = Tensor3> {
    prop::collection::vec(small_rat(), a * b * c).prop_map(move |v| Tensor3::from_flat([a, b, c], v))
}

fn square(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(small_rat(), n * n).prop_map(move |v| RatMatrix::from_flat(n, n, v))
}

fn factor() -> impl Strategy<Value = Factor> {
    prop::sample::select(Factor::ALL.to_vec())
}

proptest! {
    #[test]
    fn act_composes(t in tensor(2, 3, 2), x in square(3), y in square(3)) {
        let lhs = t.act(&y, Factor::B).unwrap().act(&x, Factor::B).unwrap();
        prop_assert_eq!(lhs, t.act(&(&x * &y), Factor::B).unwrap());
    }

    #[test]
    fn actions_on_different_factors_commute(t in tensor(2, 3, 2), x in square(2), y in square(3), z in square(2)) {
        let ab = t.act(&y, Factor::B).unwrap().act(&x, Factor::A).unwrap();
        let ba = t.act(&x, Factor::A).unwrap().act(&y, Factor::B).unwrap();
        prop_assert_eq!(ab, ba);
        let ac = t.act(&z, Factor::C).unwrap().act(&x, Factor::A).unwrap();
        let ca = t.act(&x, Factor::A).unwrap().act(&z, Factor::C).unwrap();
        prop_assert_eq!(ac, ca);
    }

    #[test]
    fn act_is_linear(s in tensor(2, 2, 2), t in tensor(2, 2, 2), x in square(2), y in square(2), f in factor()) {
        let sum = &s + &t;
        prop_assert_eq!(sum.act(&x, f).unwrap(), &s.act(&x, f).unwrap() + &t.act(&x, f).unwrap());
        let xy = &x + &y;
        prop_assert_eq!(s.act(&xy, f).unwrap(), &s.act(&x, f).unwrap() + &s.act(&y, f).unwrap());
    }

    #[test]
    fn action_is_determined_on_concise_tensors(t in tensor(3, 3, 3), x in square(3), y in square(3)) {
        prop_assume!(t.is_concise());
        let same = t.act(&x, Factor::A).unwrap() == t.act(&y, Factor::A).unwrap();
        prop_assert_eq!(same, x == y);
    }

    #[test]
    fn permute_round_trip(t in tensor(2, 3, 4), f in factor()) {
        let sigma = f.cyclic();
        let back = t.permute(sigma).permute(inverse_permutation(sigma));
        prop_assert_eq!(back, t.clone());
        let swap = [Factor::B, Factor::A, Factor::C];
        prop_assert_eq!(t.permute(swap).permute(swap), t);
    }

    #[test]
    fn witness_attains_max_rank(t in tensor(3, 3, 3), probes in prop::collection::vec(prop::collection::vec(small_rat(), 3), 6)) {
        let slices = t.slices(Factor::A);
        let (r, w) = max_rank(&slices);
        prop_assert_eq!(t.slice(Factor::A, &w).unwrap().rank(), r);
        for p in probes {
            prop_assert!(t.slice(Factor::A, &p).unwrap().rank() <= r);
        }
    }
}
