#![allow(dead_code)]

use minbr::exact::{rat, Rational};
use minbr::tensor::Tensor3;
use proptest::prelude::*;

pub fn rats(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

/// Sum of rank-one tensors `a ⊗ b ⊗ c` with integer coordinates.
pub fn sum_of_rank_ones(m: usize, points: &[[Vec<i64>; 3]]) -> Tensor3 {
    points.iter().fold(Tensor3::zeros(m, m, m), |acc, [a, b, c]| {
        &acc + &Tensor3::rank_one(&rats(a), &rats(b), &rats(c))
    })
}

/// `r` random integer points on the Segre variety in `(Q^m)^{⊗3}`.
pub fn segre_points(m: usize, r: usize) -> impl Strategy<Value = Vec<[Vec<i64>; 3]>> {
    let v = move || prop::collection::vec(-3i64..=3, m);
    prop::collection::vec((v(), v(), v()).prop_map(|(a, b, c)| [a, b, c]), r)
}

/// Random integer tensors of the given shape.
pub fn dense(m: usize, range: i64) -> impl Strategy<Value = Tensor3> {
    prop::collection::vec(-range..=range, m * m * m).prop_map(move |v| {
        let terms: Vec<(usize, usize, usize, i64)> = v
            .iter()
            .enumerate()
            .map(|(n, &x)| (n / (m * m) + 1, (n / m) % m + 1, n % m + 1, x))
            .collect();
        Tensor3::from_int_terms([m, m, m], &terms).unwrap()
    })
}

/// Strassen's equations `K_i adj(K(α)) K_j = K_j adj(K(α)) K_i` for the
/// slices of factor `f`, checked identically in `α`.
///
/// Each entry is homogeneous of degree `m-1` in `α`, so vanishing on
/// `{1} × {0..m-1}^{m-1}` proves the identity.
pub fn strassen_polynomial_holds(t: &Tensor3, f: minbr::tensor::Factor) -> bool {
    use minbr::exact::RatMatrix;
    let slices = t.slices(f);
    let m = slices.len();
    let mut point = vec![0usize; m - 1];
    loop {
        let mut k = slices[0].clone();
        for (s, &c) in point.iter().enumerate() {
            k = &k + &slices[s + 1].scale(&rat(c as i64));
        }
        let adj: RatMatrix = k.adjugate();
        for i in 0..m {
            for j in i + 1..m {
                if &(&slices[i] * &adj) * &slices[j] != &(&slices[j] * &adj) * &slices[i] {
                    return false;
                }
            }
        }
        let Some(pos) = point.iter().position(|&c| c + 1 < m) else { return true };
        point[pos] += 1;
        point[..pos].iter_mut().for_each(|c| *c = 0);
    }
}

/// Invertible integer matrices `L·U` with unit diagonals.
pub fn unimodular(n: usize) -> impl Strategy<Value = minbr::exact::RatMatrix> {
    prop::collection::vec(-2i64..=2, 2 * n * n).prop_map(move |v| {
        use minbr::exact::RatMatrix;
        let l = RatMatrix::from_fn(n, n, |i, j| if i == j { rat(1) } else if i > j { rat(v[i * n + j]) } else { rat(0) });
        let u = RatMatrix::from_fn(n, n, |i, j| {
            if i == j {
                rat(1)
            } else if i < j {
                rat(v[n * n + i * n + j])
            } else {
                rat(0)
            }
        });
        &l * &u
    })
}
