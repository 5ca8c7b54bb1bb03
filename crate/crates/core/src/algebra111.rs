//! The 111-algebra of compatible endomorphism triples, abstract algebras
//! given by structure constants, symmetry Lie algebras, and the module
//! attached to a `1_A`-generic tensor.

use std::fmt;

use num_traits::{One, Zero};

use crate::equations::{e_alpha_in, EndoSpace};
use crate::error::{Error, Result};
use crate::exact::{rat, RatMatrix, Rational, Subspace};
use crate::tensor::{max_rank, Factor, Tensor3};

/// A finite-dimensional algebra with basis `e_0, …, e_{n-1}` and
/// `e_i e_j = Σ_k c[i][j][k] e_k`. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    n: usize,
    c: Vec<Rational>,
}

impl StructureConstants {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Self {
        let mut c = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c.push(f(i, j, k));
                }
            }
        }
        StructureConstants { n, c }
    }

    /// `Q^m` with idempotent basis.
    pub fn split(m: usize) -> Self {
        Self::from_fn(m, |i, j, k| if i == j && j == k { Rational::one() } else { Rational::zero() })
    }

    /// `Q[x]/(x^k)` with basis `1, x, …, x^{k-1}`.
    pub fn truncated_polynomial(k: usize) -> Self {
        Self::from_fn(k, |i, j, l| if i + j == l { Rational::one() } else { Rational::zero() })
    }

    /// `Q[ε_1, …, ε_r]/(ε)^2` with basis `1, ε_1, …, ε_r`.
    pub fn square_zero(r: usize) -> Self {
        Self::from_fn(r + 1, |i, j, k| {
            let hit = (i == 0 && j == k) || (j == 0 && i == k && i != 0);
            if hit {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// `Q[x]/(x² - d)` with basis `1, x`.
    pub fn quadratic(d: Rational) -> Self {
        Self::from_fn(2, |i, j, k| match (i + j, k) {
            (0, 0) | (1, 1) => Rational::one(),
            (2, 0) => d.clone(),
            _ => Rational::zero(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(i * self.n + j) * self.n + k]
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        *o += a * b * c;
                    }
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.get(i, j, k) == self.get(j, i, k))))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n;
        let e = |i| crate::exact::unit_vector(n, i);
        (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| self.mul(&self.mul(&e(i), &e(j)), &e(k)) == self.mul(&e(i), &self.mul(&e(j), &e(k)))))
        })
    }

    /// The two-sided unit, if there is one.
    pub fn unit(&self) -> Option<Vec<Rational>> {
        let n = self.n;
        let mut rows = Vec::with_capacity(2 * n * n);
        for j in 0..n {
            for k in 0..n {
                let d = if j == k { Rational::one() } else { Rational::zero() };
                let mut left: Vec<Rational> = (0..n).map(|i| self.get(i, j, k).clone()).collect();
                left.push(d.clone());
                let mut right: Vec<Rational> = (0..n).map(|i| self.get(j, i, k).clone()).collect();
                right.push(d);
                rows.push(left);
                rows.push(right);
            }
        }
        crate::normalform::solve_affine(&RatMatrix::from_rows(n + 1, &rows))
    }

    pub fn is_unital(&self) -> bool {
        self.unit().is_some()
    }

    /// The multiplication tensor `Σ c_ij^k a_i ⊗ b_j ⊗ c_k`.
    pub fn structure_tensor(&self) -> Tensor3 {
        let n = self.n;
        let mut t = Tensor3::zeros(n, n, n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    t.set_at(i, j, k, self.get(i, j, k).clone());
                }
            }
        }
        t
    }

    /// Left multiplication by `e_i` as a matrix acting on columns.
    pub fn left_mul(&self, i: usize) -> RatMatrix {
        RatMatrix::from_fn(self.n, self.n, |k, j| self.get(i, j, k).clone())
    }
}

/// A compatible triple with `X ∘_A T = Y ∘_B T = Z ∘_C T = Ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleEndo {
    pub x: RatMatrix,
    pub y: RatMatrix,
    pub z: RatMatrix,
    pub omega: Tensor3,
}

impl TripleEndo {
    fn coords(&self) -> Vec<Rational> {
        let mut v = self.x.as_flat().to_vec();
        v.extend(self.y.as_flat().iter().cloned());
        v.extend(self.z.as_flat().iter().cloned());
        v
    }
}

/// The 111-algebra with its structure constants in the triple basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra111 {
    /// Basis triples, the identity first.
    pub basis: Vec<TripleEndo>,
    pub constants: StructureConstants,
    pub commutative: bool,
    pub closed: bool,
    pub unital: bool,
}

impl Algebra111 {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether each projection to `End(A)`, `End(B)`, `End(C)` is injective.
    pub fn projections_injective(&self) -> [bool; 3] {
        let n = self.basis.first().map_or(0, |b| b.x.rows());
        let proj = |g: fn(&TripleEndo) -> &RatMatrix| {
            let vecs: Vec<Vec<Rational>> = self.basis.iter().map(|b| g(b).as_flat().to_vec()).collect();
            Subspace::from_vectors(n * n, &vecs).dim() == self.basis.len()
        };
        [proj(|b| &b.x), proj(|b| &b.y), proj(|b| &b.z)]
    }
}

fn cube(t: &Tensor3) -> Result<usize> {
    t.cube_dim().ok_or_else(|| Error::DimensionMismatch(format!("tensor of shape {:?} is not cubical", t.dims())))
}

/// Images of the unit matrices `E_rc` under the action on each factor.
fn action_columns(t: &Tensor3) -> [Vec<Vec<Rational>>; 3] {
    Factor::ALL.map(|f| {
        let n = t.dim(f);
        let mut cols = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                cols.push(t.act(&RatMatrix::unit(n, r, c), f).expect("unit matrix of factor size").as_flat().to_vec());
            }
        }
        cols
    })
}

fn columns_to_matrix(rows: usize, cols: &[&Vec<Rational>]) -> RatMatrix {
    RatMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
}

/// Computes the 111-algebra of a concise tensor.
pub fn compute_111_algebra(t: &Tensor3) -> Result<Algebra111> {
    let m = cube(t)?;
    if !t.is_concise() {
        return Err(Error::NotConcise("the 111-algebra is only guaranteed commutative for concise tensors".into()));
    }
    let n3 = m * m * m;
    let [ca, cb, cc] = action_columns(t);
    let zero = vec![Rational::zero(); n3];
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(3 * m * m);
    for v in &ca {
        cols.push(v.iter().chain(&zero).cloned().collect());
    }
    for v in &cb {
        cols.push(v.iter().map(|x| -x).chain(v.iter().cloned()).collect());
    }
    for v in &cc {
        cols.push(zero.iter().cloned().chain(v.iter().map(|x| -x)).collect());
    }
    let refs: Vec<&Vec<Rational>> = cols.iter().collect();
    let kernel = columns_to_matrix(2 * n3, &refs).kernel();
    let mm = m * m;
    let id = RatMatrix::identity(m);
    let id_coords: Vec<Rational> = [id.as_flat(), id.as_flat(), id.as_flat()].concat();
    let c = kernel
        .solve_membership(&id_coords)
        .ok_or_else(|| Error::Inconsistency("identity triple is not compatible".into()))?;
    let drop = c.iter().position(|x| !x.is_zero()).expect("identity is nonzero");
    let mut vecs = vec![id_coords];
    vecs.extend(kernel.basis_vectors().into_iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, v)| v));
    let basis: Vec<TripleEndo> = vecs
        .iter()
        .map(|v| {
            let x = RatMatrix::from_flat(m, m, v[..mm].to_vec());
            let y = RatMatrix::from_flat(m, m, v[mm..2 * mm].to_vec());
            let z = RatMatrix::from_flat(m, m, v[2 * mm..].to_vec());
            let omega = t.act(&x, Factor::A).expect("square");
            TripleEndo { x, y, z, omega }
        })
        .collect();
    let d = basis.len();
    let coords = RatMatrix::from_rows(3 * mm, &vecs);
    let pivots = kernel.pivots().to_vec();
    let square = RatMatrix::from_fn(d, d, |i, j| coords.get(i, pivots[j]).clone());
    let inv = square.inverse()?;
    let mut closed = true;
    let mut consts = vec![Rational::zero(); d * d * d];
    for i in 0..d {
        for j in 0..d {
            let prod = TripleEndo {
                x: &basis[i].x * &basis[j].x,
                y: &basis[i].y * &basis[j].y,
                z: &basis[i].z * &basis[j].z,
                omega: Tensor3::zeros(0, 0, 0),
            }
            .coords();
            let restricted: Vec<Rational> = pivots.iter().map(|&p| prod[p].clone()).collect();
            let coeff = inv.vec_mul(&restricted);
            if coords.vec_mul(&coeff) != prod {
                closed = false;
            }
            for (k, x) in coeff.into_iter().enumerate() {
                consts[(i * d + j) * d + k] = x;
            }
        }
    }
    let constants = StructureConstants { n: d, c: consts };
    Ok(Algebra111 {
        commutative: constants.is_commutative(),
        unital: constants.is_unital(),
        closed,
        basis,
        constants,
    })
}

/// Whether some functional `φ` makes `(r_1, r_2) ↦ φ(r_1 r_2)` nondegenerate.
pub fn gorenstein_check(sc: &StructureConstants) -> bool {
    let n = sc.dim();
    let forms: Vec<RatMatrix> =
        (0..n).map(|k| RatMatrix::from_fn(n, n, |i, j| sc.get(i, j, k).clone())).collect();
    max_rank(&forms).0 == n
}

/// Dimensions of the symmetry Lie algebra and of its two-factor parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymmetryDims {
    pub full: usize,
    pub ab_part: usize,
    pub bc_part: usize,
    pub ca_part: usize,
}

impl fmt::Display for SymmetryDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "full {}, AB {}, BC {}, CA {}", self.full, self.ab_part, self.bc_part, self.ca_part)
    }
}

/// The annihilator of `T` in `gl(A) × gl(B) × gl(C)` and its parts.
pub fn symmetry_dims(t: &Tensor3) -> SymmetryDims {
    let rows = t.as_flat().len();
    let blocks = action_columns(t);
    let kernel_dim = |which: &[usize]| {
        let cols: Vec<&Vec<Rational>> = which.iter().flat_map(|&b| blocks[b].iter()).collect();
        let mat = columns_to_matrix(rows, &cols);
        mat.cols() - mat.rank()
    };
    SymmetryDims {
        full: kernel_dim(&[0, 1, 2]),
        ab_part: kernel_dim(&[0, 1]),
        bc_part: kernel_dim(&[1, 2]),
        ca_part: kernel_dim(&[2, 0]),
    }
}

/// Whether the module is supported at a single point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Locality {
    /// Every action matrix is nilpotent.
    Local,
    /// Some traceless action matrix is not nilpotent.
    NonLocal,
}

impl fmt::Display for Locality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Locality::Local => "local",
            Locality::NonLocal => "nonlocal",
        })
    }
}

/// The module on `C` defined by the traceless part of `E_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdhmModule {
    pub dim: usize,
    pub action_matrices: Vec<RatMatrix>,
    pub locality: Locality,
    /// `H(k) = dim 𝔪^k C / 𝔪^{k+1} C`, when local.
    pub hilbert_module: Option<Vec<usize>>,
    /// Hilbert function of the algebra generated by the action, when local.
    pub hilbert_algebra: Option<Vec<usize>>,
}

fn matrices_span(n: usize, mats: &[RatMatrix]) -> Subspace {
    let vecs: Vec<Vec<Rational>> = mats.iter().map(|m| m.as_flat().to_vec()).collect();
    Subspace::from_vectors(n * n, &vecs)
}

fn abelian_e(t: &Tensor3, f: Factor) -> Result<EndoSpace> {
    let profile = t.genericity_profile();
    if !profile.one_generic(f) {
        return Err(Error::Precondition(format!("tensor is not 1_{f}-generic")));
    }
    let e = e_alpha_in(t, f, &profile.witness[f.index()])?;
    if !e.is_abelian() {
        return Err(Error::Precondition("E_α is not abelian".into()));
    }
    Ok(e)
}

/// Builds the module attached to `E_α` for a `1_f`-generic tensor.
pub fn adhm_module(t: &Tensor3, f: Factor) -> Result<AdhmModule> {
    let e = abelian_e(t, f)?;
    Ok(module_from_endos(&e))
}

/// Module attached to a commuting space of endomorphisms containing the
/// identity.
pub fn module_from_endos(e: &EndoSpace) -> AdhmModule {
    let n = e.n;
    let id = RatMatrix::identity(n);
    let traceless: Vec<RatMatrix> = e
        .basis
        .iter()
        .map(|x| &x.clone() - &id.scale(&(x.trace() / rat(n as i64))))
        .collect();
    let span = matrices_span(n, &traceless);
    let actions: Vec<RatMatrix> = span.basis_vectors().into_iter().map(|v| RatMatrix::from_flat(n, n, v)).collect();
    let local = actions.iter().all(|x| x.pow(n).is_zero());
    let (hilbert_module, hilbert_algebra) = if local {
        (Some(module_hilbert(n, &actions)), Some(algebra_hilbert(n, &actions)))
    } else {
        (None, None)
    };
    AdhmModule {
        dim: n,
        action_matrices: actions,
        locality: if local { Locality::Local } else { Locality::NonLocal },
        hilbert_module,
        hilbert_algebra,
    }
}

fn module_hilbert(n: usize, actions: &[RatMatrix]) -> Vec<usize> {
    let mut current = Subspace::full(n);
    let mut h = Vec::new();
    while !current.is_zero() {
        let images: Vec<Vec<Rational>> =
            actions.iter().flat_map(|x| current.basis_vectors().into_iter().map(move |v| x.mul_vec(&v))).collect();
        let next = Subspace::from_vectors(n, &images);
        h.push(current.dim() - next.dim());
        current = next;
    }
    h
}

fn algebra_hilbert(n: usize, actions: &[RatMatrix]) -> Vec<usize> {
    let mut powers: Vec<Subspace> = Vec::new();
    let mut level = matrices_span(n, actions);
    while !level.is_zero() {
        powers.push(level.clone());
        let words: Vec<RatMatrix> = level
            .basis_vectors()
            .into_iter()
            .flat_map(|v| {
                let p = RatMatrix::from_flat(n, n, v);
                actions.iter().map(move |x| x * &p).collect::<Vec<_>>()
            })
            .collect();
        level = matrices_span(n, &words);
    }
    let tails: Vec<usize> = (0..=powers.len())
        .map(|k| {
            powers[k..]
                .iter()
                .try_fold(Subspace::zero(n * n), |acc, p| acc.sum(p))
                .expect("same ambient")
                .dim()
        })
        .collect();
    let mut h = vec![1];
    h.extend(tails.windows(2).map(|w| w[0] - w[1]));
    h
}

/// Minimal number of generators of a local module, `H(0)`.
pub fn min_generators(module: &AdhmModule) -> Result<usize> {
    match (&module.locality, &module.hilbert_module) {
        (Locality::Local, Some(h)) => Ok(h.first().copied().unwrap_or(0)),
        _ => Err(Error::Precondition("generator count needs a local module".into())),
    }
}

/// Whether the module on `C` is cyclic, i.e. some `c` has `E_α c = C`.
pub fn cyclicity_check(t: &Tensor3, f: Factor) -> Result<bool> {
    let e = abelian_e(t, f)?;
    let n = e.n;
    let pencils: Vec<RatMatrix> = (0..n)
        .map(|l| RatMatrix::from_fn(n, e.dim(), |r, i| e.basis[i].get(r, l).clone()))
        .collect();
    Ok(max_rank(&pencils).0 == n)
}

/// The tensor of the trilinear form `(r_1, r_2, r_3) ↦ φ(r_1 r_2 r_3)`.
pub fn build_t_phi(sc: &StructureConstants, phi: &[Rational]) -> Result<Tensor3> {
    let n = sc.dim();
    if phi.len() != n {
        return Err(Error::DimensionMismatch(format!("functional of length {} on an algebra of dimension {n}", phi.len())));
    }
    let mut t = Tensor3::zeros(n, n, n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut v = Rational::zero();
                for l in 0..n {
                    let c = sc.get(i, j, l);
                    if c.is_zero() {
                        continue;
                    }
                    for q in 0..n {
                        let d = sc.get(l, k, q);
                        if !d.is_zero() && !phi[q].is_zero() {
                            v += c * d * &phi[q];
                        }
                    }
                }
                t.set_at(i, j, k, v);
            }
        }
    }
    Ok(t)
}
