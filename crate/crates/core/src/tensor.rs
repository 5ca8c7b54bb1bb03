//! Order-3 tensors `T ∈ A⊗B⊗C`, their slices, flattening spaces, matrix
//! actions and genericity profiles.
//!
//! Public entry accessors are 1-based. A slice `T(α)` over factor `A` is the
//! matrix whose rows are indexed by `C` and whose columns are indexed by `B`,
//! so `T(α)[k][j] = Σ_i α_i T[i][j][k]`. Slices over `B` and `C` use the
//! cyclically rotated tensors `(B, C, A)` and `(C, A, B)`.

use std::fmt;
use std::ops::{Add, Sub};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{rat, unit_vector, Poly, PolyMatrix, RatMatrix, Rational, Subspace};

/// One of the three tensor factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    A,
    B,
    C,
}

impl Factor {
    pub const ALL: [Factor; 3] = [Factor::A, Factor::B, Factor::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Factor {
        Factor::ALL[i % 3]
    }

    /// Rotation putting this factor first while keeping the cyclic order.
    pub fn cyclic(self) -> [Factor; 3] {
        let i = self.index();
        [Factor::from_index(i), Factor::from_index(i + 1), Factor::from_index(i + 2)]
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Factor::A => "A",
            Factor::B => "B",
            Factor::C => "C",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Factor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Factor> {
        match s.trim() {
            "A" | "a" => Ok(Factor::A),
            "B" | "b" => Ok(Factor::B),
            "C" | "c" => Ok(Factor::C),
            other => Err(Error::Parse(other.to_string())),
        }
    }
}

/// Dense tensor with rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor3 {
    dims: [usize; 3],
    data: Vec<Rational>,
}

impl Tensor3 {
    pub fn zeros(a: usize, b: usize, c: usize) -> Self {
        Tensor3 { dims: [a, b, c], data: vec![Rational::zero(); a * b * c] }
    }

    /// Builds a tensor from 1-based `(i, j, k, value)` terms; repeated
    /// positions are summed.
    pub fn from_terms(dims: [usize; 3], terms: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let mut t = Self::zeros(dims[0], dims[1], dims[2]);
        for (i, j, k, v) in terms {
            t.check_one_based(*i, *j, *k)?;
            let idx = t.offset(i - 1, j - 1, k - 1);
            t.data[idx] += v;
        }
        Ok(t)
    }

    /// Integer-coefficient variant of [`Tensor3::from_terms`].
    pub fn from_int_terms(dims: [usize; 3], terms: &[(usize, usize, usize, i64)]) -> Result<Self> {
        let terms: Vec<_> = terms.iter().map(|&(i, j, k, v)| (i, j, k, rat(v))).collect();
        Self::from_terms(dims, &terms)
    }

    /// Tensor `Σ_i a_i ⊗ K_i` from its `A`-slices, each with rows indexed by
    /// `C` and columns by `B`.
    pub fn from_a_slices(slices: &[RatMatrix]) -> Result<Self> {
        let first = slices.first().ok_or_else(|| Error::DimensionMismatch("no slices".into()))?;
        let (c, b) = (first.rows(), first.cols());
        let mut t = Self::zeros(slices.len(), b, c);
        for (i, s) in slices.iter().enumerate() {
            if (s.rows(), s.cols()) != (c, b) {
                return Err(Error::DimensionMismatch(format!("slice {} has shape {}x{}", i + 1, s.rows(), s.cols())));
            }
            for k in 0..c {
                for j in 0..b {
                    t.set_at(i, j, k, s.get(k, j).clone());
                }
            }
        }
        Ok(t)
    }

    /// The unit tensor `Σ a_i⊗b_i⊗c_i`.
    pub fn unit(m: usize) -> Self {
        let mut t = Self::zeros(m, m, m);
        for i in 0..m {
            t.set_at(i, i, i, Rational::one());
        }
        t
    }

    /// The rank one tensor `a⊗b⊗c`.
    pub fn rank_one(a: &[Rational], b: &[Rational], c: &[Rational]) -> Self {
        let mut t = Self::zeros(a.len(), b.len(), c.len());
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                for (k, z) in c.iter().enumerate() {
                    t.set_at(i, j, k, x * y * z);
                }
            }
        }
        t
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn dim(&self, f: Factor) -> usize {
        self.dims[f.index()]
    }

    /// The common dimension when all three factors agree.
    pub fn cube_dim(&self) -> Option<usize> {
        let [a, b, c] = self.dims;
        (a == b && b == c).then_some(a)
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    fn check_one_based(&self, i: usize, j: usize, k: usize) -> Result<()> {
        let ok = (1..=self.dims[0]).contains(&i) && (1..=self.dims[1]).contains(&j) && (1..=self.dims[2]).contains(&k);
        if ok {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "index ({i},{j},{k}) outside {}x{}x{}",
                self.dims[0], self.dims[1], self.dims[2]
            )))
        }
    }

    /// Entry at 1-based position `(i, j, k)`.
    pub fn entry(&self, i: usize, j: usize, k: usize) -> &Rational {
        self.check_one_based(i, j, k).expect("tensor index in range");
        self.at(i - 1, j - 1, k - 1)
    }

    /// Sets the entry at 1-based position `(i, j, k)`.
    pub fn set_entry(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        self.check_one_based(i, j, k).expect("tensor index in range");
        self.set_at(i - 1, j - 1, k - 1, v);
    }

    pub(crate) fn at(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.data[self.offset(i, j, k)]
    }

    pub(crate) fn set_at(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let o = self.offset(i, j, k);
        self.data[o] = v;
    }

    /// Nonzero entries as 1-based `(i, j, k, value)`, in lexicographic order.
    pub fn terms(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.dims[0] {
            for j in 0..self.dims[1] {
                for k in 0..self.dims[2] {
                    let v = self.at(i, j, k);
                    if !v.is_zero() {
                        out.push((i + 1, j + 1, k + 1, v.clone()));
                    }
                }
            }
        }
        out
    }

    /// All entries, `k` fastest.
    pub fn as_flat(&self) -> &[Rational] {
        &self.data
    }

    pub fn from_flat(dims: [usize; 3], data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), dims[0] * dims[1] * dims[2], "flat data length mismatch");
        Tensor3 { dims, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Tensor3 { dims: self.dims, data: self.data.iter().map(|x| x * c).collect() }
    }

    /// Re-indexes factors: factor `p` of the result is factor `sigma[p]` of `self`.
    pub fn permute(&self, sigma: [Factor; 3]) -> Tensor3 {
        let idx = sigma.map(Factor::index);
        let mut seen = [false; 3];
        idx.iter().for_each(|&i| seen[i] = true);
        assert!(seen.iter().all(|&s| s), "not a permutation");
        let dims = idx.map(|i| self.dims[i]);
        let mut out = Tensor3::zeros(dims[0], dims[1], dims[2]);
        for i in 0..self.dims[0] {
            for j in 0..self.dims[1] {
                for k in 0..self.dims[2] {
                    let v = self.at(i, j, k);
                    if v.is_zero() {
                        continue;
                    }
                    let old = [i, j, k];
                    out.set_at(old[idx[0]], old[idx[1]], old[idx[2]], v.clone());
                }
            }
        }
        out
    }

    /// The tensor rotated so that `f` comes first.
    pub fn rotated(&self, f: Factor) -> Tensor3 {
        if f == Factor::A {
            self.clone()
        } else {
            self.permute(f.cyclic())
        }
    }

    /// The contraction `T(α)` over factor `f`.
    pub fn slice(&self, f: Factor, alpha: &[Rational]) -> Result<RatMatrix> {
        if alpha.len() != self.dim(f) {
            return Err(Error::DimensionMismatch(format!(
                "covector of length {} for factor {f} of dimension {}",
                alpha.len(),
                self.dim(f)
            )));
        }
        let r = self.rotated(f);
        let [a, b, c] = r.dims;
        let mut m = RatMatrix::zeros(c, b);
        for (i, x) in alpha.iter().enumerate().take(a) {
            if x.is_zero() {
                continue;
            }
            for j in 0..b {
                for k in 0..c {
                    let v = r.at(i, j, k);
                    if !v.is_zero() {
                        let cur = m.get(k, j) + x * v;
                        m.set(k, j, cur);
                    }
                }
            }
        }
        Ok(m)
    }

    /// Slices over the dual basis of factor `f`.
    pub fn slices(&self, f: Factor) -> Vec<RatMatrix> {
        let n = self.dim(f);
        (0..n).map(|i| self.slice(f, &unit_vector(n, i)).expect("basis covector")).collect()
    }

    /// `T(f^*)`, the span of the slices, as vectors in row-major order.
    pub fn flattening_space(&self, f: Factor) -> Subspace {
        let slices = self.slices(f);
        let ambient = slices.first().map_or(0, |s| s.rows() * s.cols());
        let vecs: Vec<Vec<Rational>> = slices.into_iter().map(RatMatrix::into_flat).collect();
        Subspace::from_vectors(ambient, &vecs)
    }

    /// Per-factor conciseness.
    pub fn conciseness(&self) -> [bool; 3] {
        Factor::ALL.map(|f| self.flattening_space(f).dim() == self.dim(f))
    }

    pub fn is_concise(&self) -> bool {
        self.conciseness().iter().all(|&c| c)
    }

    /// The action `X ∘_f T` of an endomorphism of factor `f`.
    pub fn act(&self, x: &RatMatrix, f: Factor) -> Result<Tensor3> {
        let n = self.dim(f);
        if x.rows() != n || x.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix acting on factor {f} of dimension {n}",
                x.rows(),
                x.cols()
            )));
        }
        let mut out = Tensor3::zeros(self.dims[0], self.dims[1], self.dims[2]);
        let p = f.index();
        for i in 0..self.dims[0] {
            for j in 0..self.dims[1] {
                for k in 0..self.dims[2] {
                    let v = self.at(i, j, k);
                    if v.is_zero() {
                        continue;
                    }
                    let old = [i, j, k];
                    for r in 0..n {
                        let c = x.get(r, old[p]);
                        if c.is_zero() {
                            continue;
                        }
                        let mut new = old;
                        new[p] = r;
                        let o = out.offset(new[0], new[1], new[2]);
                        out.data[o] += c * v;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies a basis change on all three factors.
    pub fn change_basis(&self, x: &RatMatrix, y: &RatMatrix, z: &RatMatrix) -> Result<Tensor3> {
        self.act(x, Factor::A)?.act(y, Factor::B)?.act(z, Factor::C)
    }

    pub fn genericity_profile(&self) -> GenericityProfile {
        let concise = self.conciseness();
        let mut ranks = [0; 3];
        let mut corank = [0; 3];
        let mut full = [false; 3];
        let mut witness: [Vec<Rational>; 3] = Default::default();
        for f in Factor::ALL {
            let slices = self.slices(f);
            let (r, w) = max_rank(&slices);
            let i = f.index();
            let size = slices.first().map_or(0, |s| s.rows().min(s.cols()));
            let square = slices.first().is_some_and(RatMatrix::is_square);
            ranks[i] = r;
            corank[i] = size - r;
            full[i] = square && r == size && size > 0;
            witness[i] = w;
        }
        GenericityProfile { concise, max_rank: ranks, corank, one_generic_in: full, witness }
    }
}

impl<'a> Add<&'a Tensor3> for &'a Tensor3 {
    type Output = Tensor3;

    fn add(self, rhs: &Tensor3) -> Tensor3 {
        assert_eq!(self.dims, rhs.dims, "tensor shape mismatch");
        Tensor3 { dims: self.dims, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a Tensor3> for &'a Tensor3 {
    type Output = Tensor3;

    fn sub(self, rhs: &Tensor3) -> Tensor3 {
        assert_eq!(self.dims, rhs.dims, "tensor shape mismatch");
        Tensor3 { dims: self.dims, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

/// The permutation `τ` with `T.permute(σ).permute(τ) == T`.
pub fn inverse_permutation(sigma: [Factor; 3]) -> [Factor; 3] {
    let mut out = [Factor::A; 3];
    for (p, f) in sigma.iter().enumerate() {
        out[f.index()] = Factor::from_index(p);
    }
    out
}

/// `X ∘_f T`.
pub fn act(x: &RatMatrix, f: Factor, t: &Tensor3) -> Result<Tensor3> {
    t.act(x, f)
}

/// Conciseness and genericity flags with rank witnesses per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityProfile {
    pub concise: [bool; 3],
    pub max_rank: [usize; 3],
    pub corank: [usize; 3],
    /// Whether `T(f^*)` contains a full rank square matrix.
    pub one_generic_in: [bool; 3],
    /// A covector attaining the maximal slice rank, per factor.
    pub witness: [Vec<Rational>; 3],
}

impl GenericityProfile {
    pub fn is_concise(&self) -> bool {
        self.concise.iter().all(|&c| c)
    }

    pub fn one_generic(&self, f: Factor) -> bool {
        self.one_generic_in[f.index()]
    }

    fn generic_count(&self) -> usize {
        self.one_generic_in.iter().filter(|&&g| g).count()
    }

    /// `1_*`-generic: generic in at least one factor.
    pub fn one_star_generic(&self) -> bool {
        self.generic_count() >= 1
    }

    pub fn binding(&self) -> bool {
        self.generic_count() >= 2
    }

    /// 1-generic: generic in every factor.
    pub fn is_one_generic(&self) -> bool {
        self.generic_count() == 3
    }

    pub fn one_degenerate(&self) -> bool {
        self.generic_count() == 0
    }
}

const PROBES: usize = 24;
const PROBE_SEED: u64 = 0x006d_696e_6272;

/// Maximal rank in the span of `mats`, with a covector attaining it.
///
/// The rank of `Σ t^(i-1) M_i` over `Q(t)` is attained on the moment curve
/// `(1, s, s², …)` at one of the first `r(n-1)+1` positive integers; basis
/// covectors are tried first. Seeded random probes then look for a larger
/// rank, since the curve only gives a lower bound for general spaces.
pub fn max_rank(mats: &[RatMatrix]) -> (usize, Vec<Rational>) {
    let n = mats.len();
    let Some(first) = mats.first() else {
        return (0, Vec::new());
    };
    let full = first.rows().min(first.cols());
    let combo = |c: &[Rational]| {
        mats.iter().zip(c).fold(RatMatrix::zeros(first.rows(), first.cols()), |acc, (m, x)| {
            if x.is_zero() {
                acc
            } else {
                &acc + &m.scale(x)
            }
        })
    };
    let mut best = (0, unit_vector(n, 0));
    let consider = |c: Vec<Rational>, best: &mut (usize, Vec<Rational>)| {
        let r = combo(&c).rank();
        if r > best.0 {
            *best = (r, c);
        }
    };
    for i in 0..n {
        consider(unit_vector(n, i), &mut best);
        if best.0 == full {
            return best;
        }
    }
    let symbolic = PolyMatrix::from_fn(first.rows(), first.cols(), |r, c| {
        let coeffs: Vec<Rational> = mats.iter().map(|m| m.get(r, c).clone()).collect();
        Poly::from_coeffs(coeffs)
    })
    .generic_rank();
    for s in 1..=(symbolic * (n - 1) + 1) as i64 {
        if best.0 >= symbolic {
            break;
        }
        let c: Vec<Rational> = (0..n as u32).map(|e| rat(s.pow(e))).collect();
        consider(c, &mut best);
    }
    if best.0 < full {
        let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
        for _ in 0..PROBES {
            let c: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-7..=7))).collect();
            consider(c, &mut best);
            if best.0 == full {
                break;
            }
        }
    }
    best
}
