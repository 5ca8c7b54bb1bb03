//! Strassen, End-closed, p = 1 Koszul flattening and 111 tests.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{RatMatrix, Rational, Subspace};
use crate::normalform::{atkinson_form, item1};
use crate::tensor::{Factor, GenericityProfile, Tensor3};

/// A subspace of `End(C)` with a distinguished basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoSpace {
    pub n: usize,
    /// Matrices of the canonical basis of [`EndoSpace::space`].
    pub basis: Vec<RatMatrix>,
    pub space: Subspace,
}

impl EndoSpace {
    pub fn from_matrices(n: usize, mats: &[RatMatrix]) -> Self {
        let vecs: Vec<Vec<Rational>> = mats.iter().map(|m| m.as_flat().to_vec()).collect();
        let space = Subspace::from_vectors(n * n, &vecs);
        let basis = space.basis_vectors().into_iter().map(|v| RatMatrix::from_flat(n, n, v)).collect();
        EndoSpace { n, basis, space }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, m: &RatMatrix) -> bool {
        self.space.contains(m.as_flat())
    }

    /// First pair of basis elements that fail to commute.
    pub fn noncommuting_pair(&self) -> Option<(RatMatrix, RatMatrix)> {
        for (i, a) in self.basis.iter().enumerate() {
            for b in &self.basis[i + 1..] {
                if !a.commutator(b).is_zero() {
                    return Some((a.clone(), b.clone()));
                }
            }
        }
        None
    }

    /// First pair of basis elements whose product leaves the space.
    pub fn non_closed_pair(&self) -> Option<(RatMatrix, RatMatrix)> {
        for a in &self.basis {
            for b in &self.basis {
                if !self.contains(&(a * b)) {
                    return Some((a.clone(), b.clone()));
                }
            }
        }
        None
    }

    pub fn is_abelian(&self) -> bool {
        self.noncommuting_pair().is_none()
    }

    pub fn is_end_closed(&self) -> bool {
        self.non_closed_pair().is_none()
    }
}

/// `E_α(T) = T(A*) T(α)^{-1}`.
pub fn e_alpha(t: &Tensor3, alpha: &[Rational]) -> Result<EndoSpace> {
    e_alpha_in(t, Factor::A, alpha)
}

/// `E_α` for the factor `f`, using the slice convention of that factor.
pub fn e_alpha_in(t: &Tensor3, f: Factor, alpha: &[Rational]) -> Result<EndoSpace> {
    let inv = t.slice(f, alpha)?.inverse()?;
    let mats: Vec<RatMatrix> = t.slices(f).iter().map(|k| k * &inv).collect();
    Ok(EndoSpace::from_matrices(inv.rows(), &mats))
}

/// Result of an equation test on one factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail { reason: String, witness: Vec<RatMatrix> },
    /// Slices of corank at least two: the equations hold trivially.
    Trivial,
    NotConcise,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        matches!(self, Outcome::Pass | Outcome::Trivial)
    }

    fn fail(reason: impl Into<String>, witness: Vec<RatMatrix>) -> Self {
        Outcome::Fail { reason: reason.into(), witness }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Pass => f.write_str("pass"),
            Outcome::Fail { reason, .. } => write!(f, "fail ({reason})"),
            Outcome::Trivial => f.write_str("trivial"),
            Outcome::NotConcise => f.write_str("not concise"),
        }
    }
}

fn cube(t: &Tensor3) -> Result<usize> {
    t.cube_dim().ok_or_else(|| Error::DimensionMismatch(format!("tensor of shape {:?} is not cubical", t.dims())))
}

fn per_factor(
    t: &Tensor3,
    profile: &GenericityProfile,
    generic: impl Fn(&EndoSpace) -> Outcome,
    corank_one: impl Fn(&Tensor3, &GenericityProfile) -> Result<Outcome>,
) -> Result<[Outcome; 3]> {
    let mut out = [Outcome::Trivial, Outcome::Trivial, Outcome::Trivial];
    for f in Factor::ALL {
        let i = f.index();
        out[i] = if profile.one_generic(f) {
            generic(&e_alpha_in(t, f, &profile.witness[i])?)
        } else if profile.corank[i] == 1 {
            if !profile.is_concise() {
                Outcome::NotConcise
            } else {
                let r = t.rotated(f);
                corank_one(&r, &r.genericity_profile())?
            }
        } else {
            Outcome::Trivial
        };
    }
    Ok(out)
}

/// Strassen's equations per factor: commutativity of `E_α` when the factor is
/// generic, the corank-one normal form conditions when the slices have
/// corank one, and trivial otherwise.
pub fn strassen_check(t: &Tensor3) -> Result<[Outcome; 3]> {
    cube(t)?;
    let profile = t.genericity_profile();
    per_factor(
        t,
        &profile,
        |e| match e.noncommuting_pair() {
            None => Outcome::Pass,
            Some((a, b)) => Outcome::fail("E_α is not abelian", vec![a, b]),
        },
        |r, _| strassen_corank_one(r),
    )
}

fn strassen_corank_one(t: &Tensor3) -> Result<Outcome> {
    let form = atkinson_form(t)?;
    match form.border_dim {
        0 => return Ok(Outcome::NotConcise),
        1 => {}
        d => return Ok(Outcome::fail(format!("border data spans {d} dimensions"), Vec::new())),
    }
    let m = form.slices.len();
    let n = m - 1;
    let x: Vec<RatMatrix> = form.slices.iter().map(|k| k.block(0..n, 0..n)).collect();
    let u = form.slices[m - 1].row(n)[..n].to_vec();
    let w: Vec<Rational> = (0..n).map(|i| form.slices[m - 1].get(i, n).clone()).collect();
    if !item1(&x, &u, &w) {
        return Ok(Outcome::fail("u_m x^j w_m does not vanish", vec![form.slices[m - 1].clone()]));
    }
    for (s, xs) in x.iter().enumerate().take(m - 1).skip(1) {
        if !shifted_item6(xs, &x[m - 1], &u, &w) {
            return Ok(Outcome::fail(format!("x_{} x_m^j w_m condition fails", s + 1), vec![form.slices[s].clone()]));
        }
    }
    Ok(Outcome::Pass)
}

/// Whether some `c` makes `(x_s - c Id) x_m^j w_m = 0` and
/// `u_m x_m^j (x_s - c Id) = 0` for all `j ≥ 1`.
fn shifted_item6(xs: &RatMatrix, xm: &RatMatrix, u: &[Rational], w: &[Rational]) -> bool {
    let n = u.len();
    let mut right = w.to_vec();
    let mut left = u.to_vec();
    let mut pairs: Vec<(Vec<Rational>, Vec<Rational>)> = Vec::new();
    for _ in 1..=n {
        right = xm.mul_vec(&right);
        left = xm.vec_mul(&left);
        pairs.push((right.clone(), xs.mul_vec(&right)));
        pairs.push((left.clone(), xs.vec_mul(&left)));
    }
    let mut shift: Option<Rational> = None;
    for (v, image) in &pairs {
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            if image.iter().any(|x| !x.is_zero()) {
                return false;
            }
            continue;
        };
        let c = shift.get_or_insert_with(|| &image[p] / &v[p]).clone();
        if v.iter().zip(image).any(|(a, b)| &(a * &c) != b) {
            return false;
        }
    }
    true
}

/// End-closed equations per factor: closure of `E_α` under composition when
/// generic; for corank one, `T(α') adj(T(α)) T(α'') ∈ T(A*)` for the
/// corank-one witness `α`.
pub fn end_closed_check(t: &Tensor3) -> Result<[Outcome; 3]> {
    cube(t)?;
    let profile = t.genericity_profile();
    per_factor(
        t,
        &profile,
        |e| match e.non_closed_pair() {
            None => Outcome::Pass,
            Some((a, b)) => Outcome::fail("E_α is not closed under composition", vec![a, b]),
        },
        |r, p| {
            let adj = r.slice(Factor::A, &p.witness[0])?.adjugate();
            let slices = r.slices(Factor::A);
            let space = r.flattening_space(Factor::A);
            for a in &slices {
                for b in &slices {
                    if !space.contains((&(a * &adj) * b).as_flat()) {
                        return Ok(Outcome::fail("cofactor product leaves T(A*)", vec![a.clone(), b.clone()]));
                    }
                }
            }
            Ok(Outcome::Pass)
        },
    )
}

/// Which factors play the roles in `X ⊗ Y* → Λ²X ⊗ Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KoszulType {
    pub wedge: Factor,
    pub source: Factor,
    pub target: Factor,
}

impl KoszulType {
    /// All six assignments, labelled by their digit strings.
    pub const ALL: [KoszulType; 6] = [
        KoszulType { wedge: Factor::A, source: Factor::B, target: Factor::C },
        KoszulType { wedge: Factor::A, source: Factor::C, target: Factor::B },
        KoszulType { wedge: Factor::B, source: Factor::A, target: Factor::C },
        KoszulType { wedge: Factor::B, source: Factor::C, target: Factor::A },
        KoszulType { wedge: Factor::C, source: Factor::A, target: Factor::B },
        KoszulType { wedge: Factor::C, source: Factor::B, target: Factor::A },
    ];

    /// Digits for the factors `A, B, C`: 2 for the wedge factor, 1 for the
    /// dualized source and 0 for the target. `T_A^{∧1}` is `"210"`.
    pub fn label(&self) -> String {
        let mut d = ['0'; 3];
        d[self.wedge.index()] = '2';
        d[self.source.index()] = '1';
        d.iter().collect()
    }
}

impl fmt::Display for KoszulType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Result of [`koszul_p1`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulReport {
    pub kind: KoszulType,
    pub matrix: RatMatrix,
    pub rank: usize,
    /// The bound `(dim X - 1) · m` for border rank `m`.
    pub bound: usize,
    pub minimal_ok: bool,
}

/// The p = 1 Koszul flattening `a ⊗ β ↦ Σ T^{ijk} β(b_j) a ∧ a_i ⊗ c_k` with
/// the factors assigned by `kind`.
///
/// Rows are indexed by `(p, q, k)` with `p < q` lexicographic and `k`
/// fastest; columns by `(l, j)` with `j` fastest.
pub fn koszul_p1(t: &Tensor3, kind: KoszulType) -> Result<KoszulReport> {
    let m = cube(t)?;
    let r = t.permute([kind.wedge, kind.source, kind.target]);
    let [a, b, c] = r.dims();
    let pairs: Vec<(usize, usize)> = (0..a).flat_map(|p| (p + 1..a).map(move |q| (p, q))).collect();
    let pair_index = |p: usize, q: usize| pairs.iter().position(|&x| x == (p, q)).expect("pair");
    let mut mat = RatMatrix::zeros(pairs.len() * c, a * b);
    for l in 0..a {
        for i in 0..a {
            if i == l {
                continue;
            }
            let (row_pair, sign) = if l < i { (pair_index(l, i), 1) } else { (pair_index(i, l), -1) };
            for j in 0..b {
                for k in 0..c {
                    let v = r.at(i, j, k);
                    if v.is_zero() {
                        continue;
                    }
                    let (row, col) = (row_pair * c + k, l * b + j);
                    let cur = if sign > 0 { mat.get(row, col) + v } else { mat.get(row, col) - v };
                    mat.set(row, col, cur);
                }
            }
        }
    }
    let rank = mat.rank();
    let bound = (a - 1) * m;
    Ok(KoszulReport { kind, matrix: mat, rank, bound, minimal_ok: rank <= bound })
}

/// The 111 data of a tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report111 {
    /// `(T(A*)⊗A) ∩ (T(B*)⊗B) ∩ (T(C*)⊗C)` inside `A⊗B⊗C`, with coordinates
    /// ordered as in [`Tensor3::as_flat`].
    pub triple_intersection: Subspace,
    pub dim: usize,
    pub map_rank: usize,
    pub abundant: bool,
    pub sharp: bool,
}

fn tensored_space(t: &Tensor3, f: Factor) -> Subspace {
    let [a, b, c] = t.dims();
    let space = t.flattening_space(f);
    let mut vecs = Vec::new();
    for v in space.basis_vectors() {
        for l in 0..t.dim(f) {
            let mut e = Tensor3::zeros(a, b, c);
            for (idx, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let (i, j, k) = match f {
                    // slice rows C, columns B
                    Factor::A => (l, idx % b, idx / b),
                    // rows A, columns C
                    Factor::B => (idx / c, l, idx % c),
                    // rows B, columns A
                    Factor::C => (idx % a, idx / a, l),
                };
                e.set_at(i, j, k, x.clone());
            }
            vecs.push(e.as_flat().to_vec());
        }
    }
    Subspace::from_vectors(a * b * c, &vecs)
}

/// The triple intersection and the rank of the 111-map.
pub fn triple_111(t: &Tensor3) -> Result<Report111> {
    let m = cube(t)?;
    let spaces: Vec<Subspace> = Factor::ALL.iter().map(|&f| tensored_space(t, f)).collect();
    let triple = spaces[0].intersect(&spaces[1])?.intersect(&spaces[2])?;
    let domain: usize = spaces.iter().map(Subspace::dim).sum();
    let dim = triple.dim();
    Ok(Report111 { triple_intersection: triple, dim, map_rank: domain - dim, abundant: dim >= m, sharp: dim == m })
}

/// Rank of the 111-map assembled directly as a `(3m²) × (2m³)` matrix whose
/// rows are the images of `X ⊗ T(x_i)` for all basis vectors.
pub fn direct_111_map_rank(t: &Tensor3) -> Result<usize> {
    let m = cube(t)?;
    let n = m * m * m;
    let mut rows = Vec::with_capacity(3 * m * m);
    for (slot, f) in Factor::ALL.iter().enumerate() {
        for slice in t.slices(*f).iter() {
            for l in 0..m {
                let mut e = Tensor3::zeros(m, m, m);
                for r in 0..m {
                    for q in 0..m {
                        let x = slice.get(r, q);
                        if x.is_zero() {
                            continue;
                        }
                        let (i, j, k) = match f {
                            Factor::A => (l, q, r),
                            Factor::B => (r, l, q),
                            Factor::C => (q, r, l),
                        };
                        e.set_at(i, j, k, x.clone());
                    }
                }
                let mut row = vec![Rational::zero(); 2 * n];
                for (idx, x) in e.as_flat().iter().enumerate() {
                    match slot {
                        0 => row[idx] = x.clone(),
                        1 => {
                            row[idx] = -x;
                            row[n + idx] = x.clone();
                        }
                        _ => row[n + idx] = -x,
                    }
                }
                rows.push(row);
            }
        }
    }
    Ok(RatMatrix::from_rows(2 * n, &rows).rank())
}

/// Cross-checks of the implications between the equation families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicationAudit {
    pub report: Report111,
    pub strassen: [Outcome; 3],
    pub end_closed: [Outcome; 3],
    /// For each generic factor: `(dim E_α, abelian, End-closed)`.
    pub e_alpha: [Option<(usize, bool, bool)>; 3],
}

/// Verifies that 111-abundance forces Strassen's and the End-closed
/// equations, and the description of abundance for generic factors.
pub fn implication_audit(t: &Tensor3) -> Result<ImplicationAudit> {
    let m = cube(t)?;
    if !t.is_concise() {
        return Err(Error::NotConcise("implication audit needs a concise tensor".into()));
    }
    let report = triple_111(t)?;
    let strassen = strassen_check(t)?;
    let end_closed = end_closed_check(t)?;
    let profile = t.genericity_profile();
    let mut e_props: [Option<(usize, bool, bool)>; 3] = [None, None, None];
    for f in Factor::ALL {
        if profile.one_generic(f) {
            let e = e_alpha_in(t, f, &profile.witness[f.index()])?;
            e_props[f.index()] = Some((e.dim(), e.is_abelian(), e.is_end_closed()));
        }
    }
    if report.abundant {
        for (name, outcomes) in [("Strassen", &strassen), ("End-closed", &end_closed)] {
            if let Some(f) = outcomes.iter().position(|o| !o.passed()) {
                return Err(Error::Inconsistency(format!(
                    "111-abundant tensor fails the {name} equations in factor {}",
                    Factor::from_index(f)
                )));
            }
        }
        if e_props.iter().flatten().next().is_some() && !report.sharp {
            return Err(Error::Inconsistency("1_*-generic abundant tensor is not 111-sharp".into()));
        }
    }
    for props in e_props.iter().flatten() {
        let good = props.0 == m && props.1 && props.2;
        if good != report.abundant {
            return Err(Error::Inconsistency(format!(
                "abundance is {} but E_α (dim {}, abelian {}, End-closed {}) says otherwise",
                report.abundant, props.0, props.1, props.2
            )));
        }
    }
    Ok(ImplicationAudit { report, strassen, end_closed, e_alpha: e_props })
}
