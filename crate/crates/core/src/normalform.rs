//! The corank-one normal form: reduction of a corank-one space of slices to
//! `K_1 = [[Id, 0], [0, 0]]`, `K_s = [[x_s, 0], [0, 0]]` and
//! `K_m = [[x_m, w_m], [u_m, 0]]`, its defining conditions, the
//! normalization of `x_m`, and the classification for `m = 5`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra111::{symmetry_dims, SymmetryDims};
use crate::equations::triple_111;
use crate::error::{Error, Result};
use crate::exact::{dot, is_zero_vec, unit_vector, RatMatrix, Rational, Subspace};
use crate::tensor::{Factor, Tensor3};

/// Matrices `(X, Y, Z)` acting on `A`, `B`, `C` respectively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    pub a: RatMatrix,
    pub b: RatMatrix,
    pub c: RatMatrix,
}

impl BasisChange {
    pub fn identity(m: usize) -> Self {
        BasisChange { a: RatMatrix::identity(m), b: RatMatrix::identity(m), c: RatMatrix::identity(m) }
    }

    /// Applies `self` first and `next` afterwards.
    pub fn then(&self, next: &BasisChange) -> BasisChange {
        BasisChange { a: &next.a * &self.a, b: &next.b * &self.b, c: &next.c * &self.c }
    }

    pub fn apply(&self, t: &Tensor3) -> Result<Tensor3> {
        t.change_basis(&self.a, &self.b, &self.c)
    }
}

/// Slices after the reduction of `K_1` and of the border.
#[derive(Clone, Debug)]
pub(crate) struct AtkinsonForm {
    pub slices: Vec<RatMatrix>,
    pub change: BasisChange,
    /// Dimension of the span of the border vectors `[u_i, w_i^t]`.
    pub border_dim: usize,
}

fn border_vector(k: &RatMatrix) -> Vec<Rational> {
    let n = k.rows() - 1;
    let mut v: Vec<Rational> = k.row(n)[..n].to_vec();
    v.extend((0..n).map(|i| k.get(i, n).clone()));
    v
}

fn change_a(m: usize, x: RatMatrix) -> BasisChange {
    BasisChange { a: x, b: RatMatrix::identity(m), c: RatMatrix::identity(m) }
}

/// Brings a tensor with a corank-one `A`-slice into Atkinson form. When the
/// border data spans one dimension, the last slice is the only bordered one.
pub(crate) fn atkinson_form(t: &Tensor3) -> Result<AtkinsonForm> {
    let m = t.cube_dim().ok_or_else(|| Error::DimensionMismatch("tensor is not cubical".into()))?;
    let slices = t.slices(Factor::A);
    let p_basis = (0..m).find(|&i| slices[i].rank() + 1 == m);
    let alpha = match p_basis {
        Some(p) => unit_vector(m, p),
        None => {
            let w = t.genericity_profile().witness[0].clone();
            if t.slice(Factor::A, &w)?.rank() + 1 != m {
                return Err(Error::NoCorankOne("no slice of rank m-1 in T(A*)".into()));
            }
            w
        }
    };
    let p = alpha.iter().position(|x| !x.is_zero()).expect("witness is nonzero");
    let mut rows = vec![alpha.clone()];
    rows.extend((0..m).filter(|&j| j != p).map(|j| unit_vector(m, j)));
    let mut change = change_a(m, RatMatrix::from_rows(m, &rows));

    let k1 = t.slice(Factor::A, &alpha)?;
    let aug = k1.hstack(&RatMatrix::identity(m)).rref();
    let z = aug.matrix.block(0..m, m..2 * m);
    let r = aug.matrix.block(0..m, 0..m);
    let pivots: Vec<usize> = aug.pivots.iter().copied().filter(|&c| c < m).collect();
    let free = (0..m).find(|c| !pivots.contains(c)).expect("corank one leaves a free column");
    let mut q = RatMatrix::zeros(m, m);
    for (i, &pc) in pivots.iter().enumerate() {
        q.set(pc, i, Rational::one());
    }
    q.set(free, m - 1, Rational::one());
    for (i, &pc) in pivots.iter().enumerate() {
        q.set(pc, m - 1, -r.get(i, free));
    }
    change = change.then(&BasisChange { a: RatMatrix::identity(m), b: q.transpose(), c: z });

    let reduced = change.apply(t)?;
    let ks = reduced.slices(Factor::A);
    debug_assert!(ks[0] == diag_id(m));
    if ks.iter().any(|k| !k.get(m - 1, m - 1).is_zero()) {
        return Err(Error::Inconsistency("nonzero corner in a bounded rank space".into()));
    }
    let borders: Vec<Vec<Rational>> = ks[1..].iter().map(border_vector).collect();
    let border_dim = Subspace::from_vectors(2 * (m - 1), &borders).dim();
    if border_dim != 1 {
        return Ok(AtkinsonForm { slices: ks, change, border_dim });
    }
    let lead = borders.iter().position(|b| !is_zero_vec(b)).expect("one-dimensional border span");
    let piv = borders[lead].iter().position(|x| !x.is_zero()).expect("nonzero border");
    let mut x = RatMatrix::zeros(m, m);
    x.set(0, 0, Rational::one());
    let mut row = 1;
    for (i, b) in borders.iter().enumerate() {
        if i == lead {
            continue;
        }
        x.set(row, i + 1, Rational::one());
        let lambda = &b[piv] / &borders[lead][piv];
        if !lambda.is_zero() {
            x.set(row, lead + 1, -lambda);
        }
        row += 1;
    }
    x.set(m - 1, lead + 1, Rational::one());
    change = change.then(&change_a(m, x));
    let ks = change.apply(t)?.slices(Factor::A);
    Ok(AtkinsonForm { slices: ks, change, border_dim })
}

fn diag_id(m: usize) -> RatMatrix {
    let mut k = RatMatrix::identity(m);
    k.set(m - 1, m - 1, Rational::zero());
    k
}

/// The corank-one normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorankOneNF {
    pub m: usize,
    /// `x_1 = Id, x_2, …, x_m`, each of size `m-1`.
    pub x: Vec<RatMatrix>,
    /// Row covector of length `m-1`.
    pub u_m: Vec<Rational>,
    /// Column vector of length `m-1`.
    pub w_m: Vec<Rational>,
    /// `u_s` for `s = 2, …, m-1`.
    pub u: Vec<Vec<Rational>>,
    /// `w_s` for `s = 2, …, m-1`.
    pub w: Vec<Vec<Rational>>,
    /// Transformation taking the input tensor to the normal form.
    pub basis_change: BasisChange,
}

impl CorankOneNF {
    /// Normal form data from explicit blocks; `u_s`, `w_s` are solved for.
    pub fn from_blocks(x: Vec<RatMatrix>, u_m: Vec<Rational>, w_m: Vec<Rational>) -> Result<Self> {
        let m = x.len();
        if m < 2 || x.iter().any(|b| b.rows() != m - 1 || b.cols() != m - 1) || u_m.len() != m - 1 || w_m.len() != m - 1 {
            return Err(Error::DimensionMismatch("normal form blocks must be (m-1)x(m-1)".into()));
        }
        let mut nf = CorankOneNF {
            m,
            x,
            u_m,
            w_m,
            u: Vec::new(),
            w: Vec::new(),
            basis_change: BasisChange::identity(m),
        };
        nf.solve_auxiliary();
        Ok(nf)
    }

    fn from_slices(ks: &[RatMatrix], change: BasisChange) -> Self {
        let m = ks.len();
        let n = m - 1;
        let x: Vec<RatMatrix> = ks.iter().map(|k| k.block(0..n, 0..n)).collect();
        let u_m = ks[m - 1].row(n)[..n].to_vec();
        let w_m = (0..n).map(|i| ks[m - 1].get(i, n).clone()).collect();
        CorankOneNF { m, x, u_m, w_m, u: Vec::new(), w: Vec::new(), basis_change: change }
    }

    /// The slices `K_1, …, K_m`.
    pub fn slices(&self) -> Vec<RatMatrix> {
        let n = self.m - 1;
        self.x
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let mut k = RatMatrix::zeros(self.m, self.m);
                k.set_block(0, 0, x);
                if i + 1 == self.m {
                    for j in 0..n {
                        k.set(n, j, self.u_m[j].clone());
                        k.set(j, n, self.w_m[j].clone());
                    }
                }
                k
            })
            .collect()
    }

    pub fn tensor(&self) -> Tensor3 {
        Tensor3::from_a_slices(&self.slices()).expect("square slices")
    }

    fn x_m(&self) -> &RatMatrix {
        &self.x[self.m - 1]
    }

    fn middle(&self) -> &[RatMatrix] {
        &self.x[1..self.m - 1]
    }

    fn middle_span(&self) -> Subspace {
        span_of(self.m - 1, self.middle())
    }

    fn rank_one_border(&self) -> RatMatrix {
        &RatMatrix::column(&self.w_m) * &RatMatrix::row_matrix(&self.u_m)
    }

    /// Solves `x_s x_m + w_s u_m = x_m x_s + w_m u_s ∈ ⟨x_2..x_{m-1}⟩` for
    /// each `s`, fixing the gauge by `w* w_s = 0` where `w*` is the scaled
    /// first coordinate functional with `w* w_m = 1`. Unsolvable equations
    /// leave zero vectors.
    fn solve_auxiliary(&mut self) {
        let n = self.m - 1;
        let mut us = Vec::new();
        let mut ws = Vec::new();
        let gauge = self.w_m.iter().position(|x| !x.is_zero());
        for s in 1..self.m - 1 {
            let (mut u, mut w) = solve_item5(self, s).unwrap_or_else(|| (vec![Rational::zero(); n], vec![Rational::zero(); n]));
            if let Some(p) = gauge {
                let c = &w[p] / &self.w_m[p];
                if !c.is_zero() {
                    for i in 0..n {
                        u[i] -= &c * &self.u_m[i];
                        w[i] -= &c * &self.w_m[i];
                    }
                }
            }
            us.push(u);
            ws.push(w);
        }
        self.u = us;
        self.w = ws;
    }
}

fn span_of(n: usize, mats: &[RatMatrix]) -> Subspace {
    let vecs: Vec<Vec<Rational>> = mats.iter().map(|m| m.as_flat().to_vec()).collect();
    Subspace::from_vectors(n * n, &vecs)
}

/// Unknowns `(u_s, w_s, μ)` of the affine system
/// `w_s u_m - w_m u_s - Σ μ_t x_t = x_m x_s - x_s x_m`.
fn solve_item5(nf: &CorankOneNF, s: usize) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let n = nf.m - 1;
    let mids = nf.middle();
    let unknowns = 2 * n + mids.len();
    let xs = &nf.x[s];
    let rhs = nf.x_m() * xs;
    let rhs = &rhs - &(xs * nf.x_m());
    let mut rows = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut row = vec![Rational::zero(); unknowns + 1];
            // -(w_m u_s)[a][b] = -w_m[a] u_s[b]
            row[b] = -&nf.w_m[a];
            // (w_s u_m)[a][b] = w_s[a] u_m[b]
            row[n + a] = nf.u_m[b].clone();
            for (t, x) in mids.iter().enumerate() {
                row[2 * n + t] = -x.get(a, b);
            }
            row[unknowns] = rhs.get(a, b).clone();
            rows.push(row);
        }
    }
    let sol = solve_affine(&RatMatrix::from_rows(unknowns + 1, &rows))?;
    Some((sol[..n].to_vec(), sol[n..2 * n].to_vec()))
}

/// A particular solution (free variables zero) of the augmented system.
pub(crate) fn solve_affine(aug: &RatMatrix) -> Option<Vec<Rational>> {
    let cols = aug.cols() - 1;
    let r = aug.rref();
    if r.pivots.last() == Some(&cols) {
        return None;
    }
    let mut sol = vec![Rational::zero(); cols];
    for (i, &pc) in r.pivots.iter().enumerate() {
        sol[pc] = r.matrix.get(i, cols).clone();
    }
    Some(sol)
}

/// Computes the normal form of a concise, 111-abundant tensor whose
/// `A`-slices have maximal rank `m - 1`.
pub fn atkinson_nf(t: &Tensor3) -> Result<CorankOneNF> {
    let m = t.cube_dim().ok_or_else(|| Error::DimensionMismatch("tensor is not cubical".into()))?;
    if !t.is_concise() {
        return Err(Error::NotConcise("normal form needs a concise tensor".into()));
    }
    let profile = t.genericity_profile();
    if profile.one_generic(Factor::A) {
        return Err(Error::NoCorankOne("tensor is 1_A-generic".into()));
    }
    if profile.corank[0] != 1 {
        return Err(Error::NoCorankOne(format!("A-slices have corank {}", profile.corank[0])));
    }
    if !triple_111(t)?.abundant {
        return Err(Error::Precondition("tensor is not 111-abundant".into()));
    }
    let form = atkinson_form(t)?;
    if form.border_dim != 1 {
        return Err(Error::Inconsistency(format!("border data spans {} dimensions", form.border_dim)));
    }
    let nf = CorankOneNF::from_slices(&form.slices, form.change);
    let p = nf.w_m.iter().position(|x| !x.is_zero()).ok_or_else(|| Error::Inconsistency("w_m vanishes".into()))?;
    let mut shift = RatMatrix::identity(m);
    for s in 1..m - 1 {
        let xw = nf.x[s].mul_vec(&nf.w_m);
        let lambda = &xw[p] / &nf.w_m[p];
        let expected: Vec<Rational> = nf.w_m.iter().map(|x| x * &lambda).collect();
        let left = nf.x[s].vec_mul(&nf.u_m);
        let expected_left: Vec<Rational> = nf.u_m.iter().map(|x| x * &lambda).collect();
        if xw != expected || left != expected_left {
            return Err(Error::Inconsistency("w_m and u_m are not common eigenvectors".into()));
        }
        if !lambda.is_zero() {
            shift.set(s, 0, -lambda);
        }
    }
    let change = nf.basis_change.then(&change_a(m, shift));
    let ks = change.apply(t)?.slices(Factor::A);
    let mut nf = CorankOneNF::from_slices(&ks, change);
    nf.solve_auxiliary();
    Ok(nf)
}

/// Outcome of the six normal form conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NfChecks {
    /// Items (1) to (6), in order.
    pub items: [bool; 6],
    /// Whether the stored `u_s`, `w_s` satisfy item (5) themselves.
    pub stored_auxiliary_ok: bool,
}

impl NfChecks {
    pub fn all(&self) -> bool {
        self.items.iter().all(|&b| b)
    }
}

/// Checks `u_m x^j w_m = 0` for every `x` in `⟨x_1..x_m⟩` and `j ≥ 0`,
/// by expanding powers of a general element into words.
pub(crate) fn item1(x: &[RatMatrix], u: &[Rational], w: &[Rational]) -> bool {
    let n = u.len();
    let gens = &x[1..];
    let max_deg = n.saturating_sub(1);
    let mut level: HashMap<Vec<usize>, Vec<Rational>> = HashMap::new();
    level.insert(vec![0; gens.len()], w.to_vec());
    if !dot(u, w).is_zero() {
        return false;
    }
    for _ in 0..max_deg {
        let mut next: HashMap<Vec<usize>, Vec<Rational>> = HashMap::new();
        for (alpha, v) in &level {
            for (l, g) in gens.iter().enumerate() {
                let mut beta = alpha.clone();
                beta[l] += 1;
                let gv = g.mul_vec(v);
                let slot = next.entry(beta).or_insert_with(|| vec![Rational::zero(); n]);
                for (a, b) in slot.iter_mut().zip(gv) {
                    *a += b;
                }
            }
        }
        if next.values().any(|v| !dot(u, v).is_zero()) {
            return false;
        }
        level = next;
    }
    true
}

/// Checks item (6) for the given middle blocks.
pub(crate) fn item6(mids: &[RatMatrix], xm: &RatMatrix, u: &[Rational], w: &[Rational]) -> bool {
    let n = u.len();
    let mut right = w.to_vec();
    let mut left = u.to_vec();
    for _ in 1..=n {
        right = xm.mul_vec(&right);
        left = xm.vec_mul(&left);
        for x in mids {
            if !is_zero_vec(&x.mul_vec(&right)) || !is_zero_vec(&x.vec_mul(&left)) {
                return false;
            }
        }
    }
    true
}

/// Checks the six normal form conditions exactly.
pub fn check_nf_conditions(nf: &CorankOneNF) -> NfChecks {
    let n = nf.m - 1;
    let first = span_of(n, &nf.x[..nf.m - 1]);
    let mids = nf.middle();
    let abelian = nf.x[..nf.m - 1].iter().enumerate().all(|(i, a)| nf.x[i + 1..nf.m - 1].iter().all(|b| a.commutator(b).is_zero()));
    let closed = nf.x[..nf.m - 1].iter().all(|a| nf.x[..nf.m - 1].iter().all(|b| first.contains((a * b).as_flat())));
    let item2 = first.dim() == nf.m - 1 && abelian && closed;
    let middle = nf.middle_span();
    let item3 = middle.contains(nf.rank_one_border().as_flat());
    let item4 = mids.iter().all(|x| is_zero_vec(&x.vec_mul(&nf.u_m)) && is_zero_vec(&x.mul_vec(&nf.w_m)));
    let item5 = (1..nf.m - 1).all(|s| solve_item5(nf, s).is_some());
    let stored = nf.u.len() == mids.len()
        && (0..mids.len()).all(|i| {
            let s = i + 1;
            let lhs = &(&nf.x[s] * nf.x_m()) + &(&RatMatrix::column(&nf.w[i]) * &RatMatrix::row_matrix(&nf.u_m));
            let rhs = &(nf.x_m() * &nf.x[s]) + &(&RatMatrix::column(&nf.w_m) * &RatMatrix::row_matrix(&nf.u[i]));
            lhs == rhs && middle.contains(lhs.as_flat())
        });
    NfChecks {
        items: [
            item1(&nf.x, &nf.u_m, &nf.w_m),
            item2,
            item3,
            item4,
            item5,
            item6(mids, nf.x_m(), &nf.u_m, &nf.w_m),
        ],
        stored_auxiliary_ok: stored,
    }
}

/// Normalizes `x_m` so that `x_m u* = 0` and `w* x_m = 0`, then sets
/// `u_s = w* x_s x_m` and `w_s = x_m x_s u*`.
///
/// `u_star` is a column vector with `u_m u* = 1` and `w_star` a row covector
/// with `w* w_m = 1`.
pub fn normalize_xm(nf: &CorankOneNF, u_star: &[Rational], w_star: &[Rational]) -> Result<CorankOneNF> {
    let m = nf.m;
    let n = m - 1;
    if u_star.len() != n || w_star.len() != n {
        return Err(Error::DimensionMismatch("u* and w* must have length m-1".into()));
    }
    if !dot(&nf.u_m, u_star).is_one() || !dot(w_star, &nf.w_m).is_one() {
        return Err(Error::Precondition("pairings u_m u* = 1 and w* w_m = 1 are required".into()));
    }
    let xm = nf.x_m();
    let alpha = dot(w_star, &xm.mul_vec(u_star));
    let beta: Vec<Rational> = xm.vec_mul(w_star).iter().map(|x| -x).collect();
    let gamma: Vec<Rational> = xm.mul_vec(u_star).iter().map(|x| -x).collect();
    let mut z = RatMatrix::identity(m);
    let mut y = RatMatrix::identity(m);
    for i in 0..n {
        z.set(i, n, gamma[i].clone());
        y.set(i, n, beta[i].clone());
    }
    let mut x = RatMatrix::identity(m);
    if !alpha.is_zero() {
        let coeffs = middle_coefficients(nf, &nf.rank_one_border())
            .ok_or_else(|| Error::Precondition("w_m u_m is not in the span of x_2..x_{m-1}".into()))?;
        for (i, c) in coeffs.iter().enumerate() {
            x.set(m - 1, i + 1, &alpha * c);
        }
    }
    let step = BasisChange { a: x, b: y, c: z };
    let ks = step.apply(&nf.tensor())?.slices(Factor::A);
    let mut out = CorankOneNF::from_slices(&ks, nf.basis_change.then(&step));
    let xm = out.x_m().clone();
    out.u = out.x[1..m - 1].iter().map(|xs| (xs * &xm).vec_mul(w_star)).collect();
    out.w = out.x[1..m - 1].iter().map(|xs| (&xm * xs).mul_vec(u_star)).collect();
    Ok(out)
}

/// Coefficients of `target` against `x_2, …, x_{m-1}`.
fn middle_coefficients(nf: &CorankOneNF, target: &RatMatrix) -> Option<Vec<Rational>> {
    let mids = nf.middle();
    let n = nf.m - 1;
    let mut rows = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut row: Vec<Rational> = mids.iter().map(|x| x.get(a, b).clone()).collect();
            row.push(target.get(a, b).clone());
            rows.push(row);
        }
    }
    solve_affine(&RatMatrix::from_rows(mids.len() + 1, &rows))
}

/// Changes the basis of `C'` so that, for `m = 5`, every `x_s` with
/// `2 ≤ s ≤ 4` has the block shape `[[0, χ_s], [0, 0]]`.
pub fn uppersquare(nf: &CorankOneNF) -> Result<CorankOneNF> {
    if nf.m != 5 {
        return Err(Error::Precondition("the block reduction applies to m = 5".into()));
    }
    let n = 4;
    let mids = nf.middle();
    let stacked = mids.iter().skip(1).fold(mids[0].clone(), |acc, x| acc.vstack(x));
    let kernel = stacked.kernel();
    let images = Subspace::from_vectors(n, &mids.iter().flat_map(|x| x.transpose().row_vectors()).collect::<Vec<_>>());
    if kernel.dim() != 2 || !images.is_subspace_of(&kernel) {
        return Err(Error::Precondition("x_2, x_3, x_4 do not admit the 2x2 block shape".into()));
    }
    let mut cols = kernel.basis_vectors();
    cols.extend(kernel.complement_indices().into_iter().map(|i| unit_vector(n, i)));
    let q = RatMatrix::from_rows(n, &cols).transpose();
    let q_inv = q.inverse()?;
    let mut z = RatMatrix::identity(5);
    z.set_block(0, 0, &q_inv);
    let mut yt = RatMatrix::identity(5);
    yt.set_block(0, 0, &q);
    let step = BasisChange { a: RatMatrix::identity(5), b: yt.transpose(), c: z };
    let ks = step.apply(&nf.tensor())?.slices(Factor::A);
    let mut out = CorankOneNF::from_slices(&ks, nf.basis_change.then(&step));
    out.solve_auxiliary();
    Ok(out)
}

/// The two cases for `m = 5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum M5Case {
    M1,
    M2,
}

impl fmt::Display for M5Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            M5Case::M1 => "M1",
            M5Case::M2 => "M2",
        })
    }
}

/// The matrix `P` spanning `⟨χ_2, χ_3, χ_4⟩^⊥` under `(A, B) ↦ Tr(AB)` and the
/// resulting case.
pub fn p_matrix(chis: &[RatMatrix]) -> Result<(RatMatrix, M5Case)> {
    let rows: Vec<Vec<Rational>> = chis.iter().map(|c| c.transpose().into_flat()).collect();
    let span = Subspace::from_vectors(4, &rows);
    if span.dim() != 3 {
        return Err(Error::Precondition(format!("χ matrices span {} dimensions, expected 3", span.dim())));
    }
    let p = RatMatrix::from_flat(2, 2, span.annihilator().basis().row(0).to_vec());
    let case = if p.rank() == 1 { M5Case::M1 } else { M5Case::M2 };
    Ok((p, case))
}

/// The `P` matrix of an `m = 5` normal form in block shape.
pub fn m5_dichotomy(nf: &CorankOneNF) -> Result<(RatMatrix, M5Case)> {
    if nf.m != 5 {
        return Err(Error::Precondition("dichotomy applies to m = 5".into()));
    }
    let mut chis = Vec::new();
    for x in nf.middle() {
        let zero_rest = x.block(0..4, 0..2).is_zero() && x.block(2..4, 2..4).is_zero();
        if !zero_rest {
            return Err(Error::Precondition("x_s is not of the form [[0, χ], [0, 0]]".into()));
        }
        chis.push(x.block(0..2, 2..4));
    }
    p_matrix(&chis)
}

/// Isomorphism classes of concise 1-degenerate 111-abundant tensors for `m = 5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum M5Label {
    O54,
    O55,
    O56,
    O57,
    O58,
}

impl M5Label {
    pub const ALL: [M5Label; 5] = [M5Label::O58, M5Label::O57, M5Label::O56, M5Label::O55, M5Label::O54];

    /// Dimension of the symmetry Lie algebra for this class.
    pub fn full_symmetry_dim(self) -> usize {
        match self {
            M5Label::O58 => 16,
            M5Label::O57 => 17,
            M5Label::O56 => 18,
            M5Label::O55 => 19,
            M5Label::O54 => 20,
        }
    }
}

impl fmt::Display for M5Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O{}", 54 + *self as usize)
    }
}

/// Symmetry dimensions of the seven representatives, as
/// `(name, full, AB, BC, CA)`.
pub const SYMMETRY_TABLE: [(&str, usize, usize, usize, usize); 7] = [
    ("T_O58", 16, 5, 5, 5),
    ("T_O57", 17, 5, 6, 5),
    ("T~_O57", 17, 5, 5, 6),
    ("T~_O56", 18, 5, 6, 6),
    ("T_O56", 18, 6, 5, 6),
    ("T_O55", 19, 6, 6, 6),
    ("T_O54", 20, 6, 6, 6),
];

/// Result of [`classify_m5`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M5Class {
    pub label: M5Label,
    /// Rank of `P` in the orientation used for the normal form.
    pub p_rank: usize,
    pub case: M5Case,
    pub dims: SymmetryDims,
    /// Factor moved to the front before taking the normal form.
    pub factor: Factor,
    /// Table representatives whose part dimensions match exactly.
    pub table_matches: Vec<&'static str>,
}

/// Classifies a concise, 1-degenerate, 111-abundant tensor with `m = 5`.
pub fn classify_m5(t: &Tensor3) -> Result<M5Class> {
    if t.cube_dim() != Some(5) {
        return Err(Error::Precondition("classification needs m = 5".into()));
    }
    if !t.is_concise() {
        return Err(Error::NotConcise("classification needs a concise tensor".into()));
    }
    let profile = t.genericity_profile();
    if !profile.one_degenerate() {
        return Err(Error::Precondition("tensor is not 1-degenerate".into()));
    }
    if !triple_111(t)?.abundant {
        return Err(Error::Precondition("tensor is not 111-abundant".into()));
    }
    let factor = Factor::ALL
        .into_iter()
        .find(|f| profile.corank[f.index()] == 1)
        .ok_or_else(|| Error::NoCorankOne("no factor has corank one".into()))?;
    let nf = atkinson_nf(&t.rotated(factor))?;
    let (p, case) = m5_dichotomy(&uppersquare(&nf)?)?;
    let dims = symmetry_dims(t);
    let label = M5Label::ALL
        .into_iter()
        .find(|l| l.full_symmetry_dim() == dims.full)
        .ok_or_else(|| Error::Classification(format!("no class has symmetry dimension {}", dims.full)))?;
    let mut parts = [dims.ab_part, dims.bc_part, dims.ca_part];
    parts.sort_unstable();
    let rows: Vec<_> = SYMMETRY_TABLE.iter().filter(|r| r.1 == dims.full).collect();
    let consistent = rows.iter().any(|r| {
        let mut q = [r.2, r.3, r.4];
        q.sort_unstable();
        q == parts
    });
    if !consistent {
        return Err(Error::Classification(format!(
            "parts ({}, {}, {}) do not match the table for dimension {}",
            dims.ab_part, dims.bc_part, dims.ca_part, dims.full
        )));
    }
    let table_matches = rows
        .iter()
        .filter(|r| (r.2, r.3, r.4) == (dims.ab_part, dims.bc_part, dims.ca_part))
        .map(|r| r.0)
        .collect();
    Ok(M5Class { label, p_rank: p.rank(), case, dims, factor, table_matches })
}
