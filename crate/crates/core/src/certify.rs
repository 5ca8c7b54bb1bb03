//! Verdicts on minimal border rank, minimal smoothable rank and wildness, and
//! explicit certificates of border rank.

use std::fmt;

use num_traits::Zero;

use crate::algebra111::{compute_111_algebra, gorenstein_check};
use crate::equations::{e_alpha_in, implication_audit, triple_111, ImplicationAudit, Report111};
use crate::error::{Error, Result};
use crate::exact::{rat, unit_vector, Poly, PolyMatrix, RatMatrix, Rational, Subspace};
use crate::normalform::{classify_m5, BasisChange, CorankOneNF, M5Label};
use crate::tensor::{Factor, GenericityProfile, Tensor3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Question {
    MinimalBorderRank,
    MinimalSmoothableRank,
    Wild,
}

impl fmt::Display for Question {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Question::MinimalBorderRank => "minimal_border_rank",
            Question::MinimalSmoothableRank => "minimal_smoothable_rank",
            Question::Wild => "wild",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        })
    }
}

impl From<bool> for Answer {
    fn from(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

/// Facts a verdict rests on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub dims: [usize; 3],
    pub concise: bool,
    pub profile: Option<GenericityProfile>,
    pub triple: Option<Report111>,
    /// Gorenstein audit of the 111-algebra, when it was computed.
    pub gorenstein: Option<bool>,
    /// Equation report attached to undecided cases.
    pub equations: Option<ImplicationAudit>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub question: Question,
    pub answer: Answer,
    /// The theorem applied.
    pub rule: String,
    pub evidence: Evidence,
}

pub const RULE_NOT_CONCISE: &str = "minimal border rank is defined for concise tensors in C^m⊗C^m⊗C^m";
pub const RULE_111_SMALL: &str = "for m <= 5 a concise tensor has minimal border rank iff it satisfies the 111-equations";
pub const RULE_111_SIX: &str =
    "for m = 6 a concise 1_*-generic tensor has minimal border rank iff it satisfies Strassen's and the End-closed equations, equivalently iff it is 111-abundant";
pub const RULE_NONE: &str = "no characterization of minimal border rank applies";
pub const RULE_WILD: &str = "a concise minimal border rank tensor is wild iff it is 1-degenerate";
pub const RULE_WILD_NONE: &str = "wildness is characterized only for concise minimal border rank tensors";
pub const RULE_SMOOTHABLE: &str =
    "for m <= 7 a concise tensor has minimal smoothable rank iff it is 1-generic and 111-abundant, since every algebra of dimension <= 7 is smoothable";
pub const RULE_SMOOTHABLE_NONE: &str = "smoothability of 111-algebras is only known for m <= 7";

fn base_evidence(t: &Tensor3) -> Evidence {
    let dims = t.dims();
    let cubic = dims[0] == dims[1] && dims[1] == dims[2];
    let concise = cubic && t.is_concise();
    Evidence {
        dims,
        concise,
        profile: concise.then(|| t.genericity_profile()),
        triple: None,
        gorenstein: None,
        equations: None,
        note: String::new(),
    }
}

fn verdict(question: Question, answer: Answer, rule: &str, evidence: Evidence) -> Verdict {
    Verdict { question, answer, rule: rule.to_string(), evidence }
}

/// Decides minimal border rank where a characterization applies.
pub fn minimal_br_verdict(t: &Tensor3) -> Verdict {
    let q = Question::MinimalBorderRank;
    let mut ev = base_evidence(t);
    if !ev.concise {
        ev.note = "not concise".into();
        return verdict(q, Answer::No, RULE_NOT_CONCISE, ev);
    }
    let m = ev.dims[0];
    let one_star = ev.profile.as_ref().is_some_and(GenericityProfile::one_star_generic);
    let rule = if m <= 5 {
        Some(RULE_111_SMALL)
    } else if m == 6 && one_star {
        Some(RULE_111_SIX)
    } else {
        None
    };
    match rule.map(|r| (r, triple_111(t))) {
        Some((rule, Ok(report))) => {
            let answer = report.abundant.into();
            ev.triple = Some(report);
            verdict(q, answer, rule, ev)
        }
        Some((_, Err(e))) => {
            ev.note = e.to_string();
            verdict(q, Answer::Unknown, RULE_NONE, ev)
        }
        None => {
            ev.note = if m == 6 {
                "m = 6 and 1-degenerate".into()
            } else {
                format!("m = {m} exceeds the range of the characterizations")
            };
            match implication_audit(t) {
                Ok(audit) => {
                    ev.triple = Some(audit.report.clone());
                    ev.equations = Some(audit);
                }
                Err(e) => ev.note = format!("{}; {e}", ev.note),
            }
            verdict(q, Answer::Unknown, RULE_NONE, ev)
        }
    }
}

/// Wildness of a concise minimal border rank tensor.
pub fn wildness(t: &Tensor3) -> Verdict {
    let br = minimal_br_verdict(t);
    let mut ev = br.evidence;
    if br.answer != Answer::Yes {
        ev.note = format!("minimal border rank verdict is {}", br.answer);
        return verdict(Question::Wild, Answer::Unknown, RULE_WILD_NONE, ev);
    }
    let degenerate = ev.profile.as_ref().is_some_and(GenericityProfile::one_degenerate);
    verdict(Question::Wild, degenerate.into(), RULE_WILD, ev)
}

/// Minimal smoothable rank, audited against the Gorenstein property of the
/// 111-algebra.
pub fn smoothable_rank_verdict(t: &Tensor3) -> Result<Verdict> {
    let q = Question::MinimalSmoothableRank;
    let mut ev = base_evidence(t);
    if !ev.concise {
        ev.note = "not concise".into();
        return Ok(verdict(q, Answer::No, RULE_NOT_CONCISE, ev));
    }
    let m = ev.dims[0];
    if m > 7 {
        ev.note = format!("m = {m}");
        return Ok(verdict(q, Answer::Unknown, RULE_SMOOTHABLE_NONE, ev));
    }
    let report = triple_111(t)?;
    let one_generic = ev.profile.as_ref().is_some_and(GenericityProfile::is_one_generic);
    if report.abundant {
        ev.gorenstein = Some(gorenstein_check(&compute_111_algebra(t)?.constants));
    }
    let yes = one_generic && report.abundant;
    ev.triple = Some(report);
    if yes && ev.gorenstein != Some(true) {
        return Err(Error::Inconsistency("minimal smoothable rank verdict with a non-Gorenstein 111-algebra".into()));
    }
    if !one_generic {
        ev.note = "not 1-generic".into();
    }
    Ok(verdict(q, yes.into(), RULE_SMOOTHABLE, ev))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diagonalizability {
    Diagonalizable,
    NotDiagonalizable,
    /// Some characteristic polynomial has an irreducible factor of degree > 1.
    NotCertifiedOverQ,
}

/// Outcome of [`diagonalizability_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalCertificate {
    pub status: Diagonalizability,
    pub factor: Factor,
    pub alpha: Vec<Rational>,
    /// Index of the first `T(α_i) T(α)^{-1}` that is not diagonalizable over Q.
    pub failing: Option<usize>,
    /// Joint eigenvectors as columns.
    pub eigenbasis: Option<RatMatrix>,
    /// Rank-one terms `(a, b, c)` summing to the tensor.
    pub decomposition: Option<Vec<[Vec<Rational>; 3]>>,
}

impl DiagonalCertificate {
    /// Whether the tensor has rank `m`.
    pub fn rank_m(&self) -> bool {
        self.status == Diagonalizability::Diagonalizable
    }
}

/// Certifies rank `m` by simultaneous diagonalization of `E_α` over Q.
pub fn diagonalizability_certificate(t: &Tensor3) -> Result<DiagonalCertificate> {
    let profile = t.genericity_profile();
    let f = Factor::ALL
        .into_iter()
        .find(|&f| profile.one_generic(f))
        .ok_or_else(|| Error::Precondition("tensor is not 1_*-generic".into()))?;
    let alpha = profile.witness[f.index()].clone();
    if !e_alpha_in(t, f, &alpha)?.is_abelian() {
        return Err(Error::Precondition(format!("E_α in factor {f} is not abelian")));
    }
    let k_alpha = t.slice(f, &alpha)?;
    let inv = k_alpha.inverse()?;
    let endos: Vec<RatMatrix> = t.slices(f).iter().map(|k| k * &inv).collect();
    let mut cert = DiagonalCertificate {
        status: Diagonalizability::Diagonalizable,
        factor: f,
        alpha,
        failing: None,
        eigenbasis: None,
        decomposition: None,
    };
    let mut spectra = Vec::with_capacity(endos.len());
    for (i, x) in endos.iter().enumerate() {
        let chi = Poly::characteristic(x);
        let radical = chi.div_rem(&chi.gcd(&chi.derivative())).0;
        if !radical.eval_matrix(x).is_zero() {
            cert.status = Diagonalizability::NotDiagonalizable;
            cert.failing = Some(i);
            return Ok(cert);
        }
        let (mut roots, rest) = radical.rational_roots();
        if rest.degree().is_some_and(|d| d > 0) {
            cert.status = Diagonalizability::NotCertifiedOverQ;
            cert.failing = Some(i);
        }
        roots.dedup();
        spectra.push(roots);
    }
    if cert.status != Diagonalizability::Diagonalizable {
        return Ok(cert);
    }
    let n = k_alpha.rows();
    let mut pieces = vec![Subspace::full(n)];
    for (x, roots) in endos.iter().zip(&spectra) {
        let mut next = Vec::new();
        for piece in &pieces {
            for r in roots {
                let shifted = x - &RatMatrix::identity(n).scale(r);
                let part = piece.intersect(&shifted.kernel())?;
                if !part.is_zero() {
                    next.push(part);
                }
            }
        }
        pieces = next;
    }
    let columns: Vec<Vec<Rational>> = pieces.iter().flat_map(Subspace::basis_vectors).collect();
    let p = RatMatrix::from_rows(n, &columns).transpose();
    let q = &p.inverse()? * &k_alpha;
    let mut terms = Vec::with_capacity(n);
    for (l, col) in columns.iter().enumerate() {
        let lead = col.iter().position(|c| !c.is_zero()).expect("nonzero eigenvector");
        let coeffs: Vec<Rational> = endos.iter().map(|x| x.mul_vec(col)[lead].clone() / &col[lead]).collect();
        let mut triple: [Vec<Rational>; 3] = Default::default();
        triple[f.index()] = coeffs;
        triple[(f.index() + 1) % 3] = q.row(l).to_vec();
        triple[(f.index() + 2) % 3] = col.clone();
        terms.push(triple);
    }
    let sum = terms
        .iter()
        .fold(Tensor3::zeros(t.dims()[0], t.dims()[1], t.dims()[2]), |acc, [a, b, c]| &acc + &Tensor3::rank_one(a, b, c));
    if &sum != t {
        return Err(Error::Inconsistency("eigen-decomposition does not reproduce the tensor".into()));
    }
    cert.eigenbasis = Some(p);
    cert.decomposition = Some(terms);
    Ok(cert)
}

/// The condition of a limit certificate that failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitCondition {
    /// A member does not have rank one over Q(t).
    MemberRank { index: usize, rank: usize },
    /// The Q(t)-span does not have the dimension of the target.
    SpanDimension { dim: usize, expected: usize },
    /// The flat limit differs from the target span.
    LimitMismatch,
}

impl fmt::Display for LimitCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitCondition::MemberRank { index, rank } => {
                write!(f, "(a) member {} has generic rank {rank}", index + 1)
            }
            LimitCondition::SpanDimension { dim, expected } => {
                write!(f, "(b) span has dimension {dim}, expected {expected}")
            }
            LimitCondition::LimitMismatch => f.write_str("(c) flat limit differs from the target span"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitCertificate {
    pub family: Vec<PolyMatrix>,
    pub target_span: Subspace,
    pub limit: Option<Subspace>,
    pub failure: Option<LimitCondition>,
    pub verified: bool,
}

/// Checks that a family of rank-one matrices over Q[t] degenerates to the
/// flattening space of `t` in factor `f`, after an optional basis change.
pub fn verify_limit_certificate(
    family: &[PolyMatrix],
    t: &Tensor3,
    f: Factor,
    change: Option<&BasisChange>,
) -> Result<LimitCertificate> {
    if !t.is_concise() {
        return Err(Error::NotConcise("limit certificates need a concise target".into()));
    }
    let target = match change {
        Some(c) => c.apply(t)?,
        None => t.clone(),
    };
    let target_span = target.flattening_space(f);
    let [_, b, c] = [f, f.cyclic()[1], f.cyclic()[2]].map(|g| t.dim(g));
    if family.iter().any(|p| p.rows() != c || p.cols() != b) {
        return Err(Error::DimensionMismatch(format!("family members must be {c}x{b}")));
    }
    let mut cert = LimitCertificate { family: family.to_vec(), target_span, limit: None, failure: None, verified: false };
    if let Some((index, rank)) =
        family.iter().map(PolyMatrix::generic_rank).enumerate().find(|&(_, r)| r != 1)
    {
        cert.failure = Some(LimitCondition::MemberRank { index, rank });
        return Ok(cert);
    }
    let stacked = PolyMatrix::stack_flattened(family);
    let dim = stacked.generic_rank();
    let expected = cert.target_span.dim();
    if dim != expected {
        cert.failure = Some(LimitCondition::SpanDimension { dim, expected });
        return Ok(cert);
    }
    let limit = stacked.flat_limit()?;
    if limit != cert.target_span {
        cert.failure = Some(LimitCondition::LimitMismatch);
    }
    cert.verified = cert.failure.is_none();
    cert.limit = Some(limit);
    Ok(cert)
}

fn poly_rows(rows: &[&[&[i64]]]) -> PolyMatrix {
    let cols = rows[0].len();
    PolyMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|c| Poly::from_i64(c)).collect()).collect())
}

/// The five rank-one matrices over Q[t] whose span degenerates to the
/// A-flattening space of `T_O58`.
pub fn b_family() -> Vec<PolyMatrix> {
    let z: &[i64] = &[];
    let one: &[i64] = &[1];
    let neg: &[i64] = &[-1];
    let t: &[i64] = &[0, 1];
    let nt: &[i64] = &[0, -1];
    let t2: &[i64] = &[0, 0, 1];
    let nt2: &[i64] = &[0, 0, -1];
    let t3: &[i64] = &[0, 0, 0, 1];
    let nt3: &[i64] = &[0, 0, 0, -1];
    let t4: &[i64] = &[0, 0, 0, 0, 1];
    let zero_row: &[&[i64]] = &[z, z, z, z, z];
    vec![
        poly_rows(&[&[z, z, one, one, z], &[z, z, neg, neg, z], zero_row, zero_row, zero_row]),
        poly_rows(&[&[z, z, neg, one, z], &[z, z, neg, one, z], zero_row, zero_row, zero_row]),
        poly_rows(&[zero_row, &[z, t, one, z, z], &[z, t2, t, z, z], zero_row, zero_row]),
        poly_rows(&[&[nt, z, z, one, z], zero_row, zero_row, &[t2, z, z, nt, z], zero_row]),
        poly_rows(&[
            &[nt, z, t, one, t2],
            &[t2, z, nt2, nt, nt3],
            zero_row,
            &[t2, z, nt2, nt, nt3],
            &[nt3, z, t3, t2, t4],
        ]),
    ]
}

/// Normal form of the case where the `x_2, x_3, x_4` span the traceless
/// part of a rank-two `P`, with `x_5` depending on `p3`, together with the
/// auxiliary vectors used by the deformation.
pub fn m2_case_nf(p3: &Rational) -> CorankOneNF {
    let e = |i, j| RatMatrix::unit(4, i, j);
    let mut x5 = RatMatrix::zeros(4, 4);
    x5.set(1, 0, p3.clone());
    x5.set(3, 2, -p3.clone());
    let zero = vec![Rational::zero(); 4];
    CorankOneNF {
        m: 5,
        x: vec![RatMatrix::identity(4), &e(0, 2) - &e(1, 3), e(0, 3), e(1, 2), x5],
        u_m: unit_vector(4, 3),
        w_m: unit_vector(4, 0),
        u: vec![zero.clone(), vec![Rational::zero(), Rational::zero(), -p3.clone(), Rational::zero()], zero.clone()],
        w: vec![zero.clone(), vec![Rational::zero(), p3.clone(), Rational::zero(), Rational::zero()], zero],
        basis_change: BasisChange::identity(5),
    }
}

/// Checks on the commuting deformation of a normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationReport {
    /// `Id, M_2, …, M_m` over Q[t].
    pub family: Vec<PolyMatrix>,
    pub commuting: bool,
    pub end_closed: bool,
    pub limit_matches: bool,
    pub failure: Option<String>,
}

impl DeformationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Builds `Id, [[x_s, w_s], [t u_s, 0]]` and `t·[[x_m, w_m/t], [u_m, 0]]`
/// from the normal form and its auxiliary vectors, and checks commutativity,
/// End-closure over Q(t) and the rescaled limit at `t = 0`.
pub fn deformation_quintuple(nf: &CorankOneNF) -> Result<DeformationReport> {
    let m = nf.m;
    let n = m - 1;
    if nf.u.len() != m - 2 || nf.w.len() != m - 2 {
        return Err(Error::Precondition("auxiliary vectors u_s, w_s are required".into()));
    }
    let t = Poly::t();
    let constant = |r: &Rational| Poly::constant(r.clone());
    let times_t = |r: &Rational| Poly::monomial(r.clone(), 1);
    let block = |x: &RatMatrix, w: &[Rational], u: &[Rational], scale_x: bool| {
        PolyMatrix::from_fn(m, m, |i, j| match (i < n, j < n) {
            (true, true) if scale_x => times_t(x.get(i, j)),
            (true, true) => constant(x.get(i, j)),
            (true, false) => constant(&w[i]),
            (false, true) => times_t(&u[j]),
            (false, false) => Poly::zero(),
        })
    };
    let mut family = vec![PolyMatrix::constant(&RatMatrix::identity(m))];
    for s in 1..m - 1 {
        family.push(block(&nf.x[s], &nf.w[s - 1], &nf.u[s - 1], false));
    }
    family.push(block(&nf.x[n], &nf.w_m, &nf.u_m, true));

    let mut report =
        DeformationReport { family: family.clone(), commuting: true, end_closed: true, limit_matches: true, failure: None };
    'pairs: for i in 0..m {
        for j in i + 1..m {
            if !(&(&family[i] * &family[j]) - &(&family[j] * &family[i])).is_zero() {
                report.commuting = false;
                report.failure = Some(format!("M_{} and M_{} do not commute", i + 1, j + 1));
                break 'pairs;
            }
        }
    }
    let span_rank = PolyMatrix::stack_flattened(&family).generic_rank();
    if span_rank != m {
        report.end_closed = false;
    } else {
        'closure: for i in 0..m {
            for j in i..m {
                let mut members = family.clone();
                members.push(&family[i] * &family[j]);
                if PolyMatrix::stack_flattened(&members).generic_rank() != m {
                    report.end_closed = false;
                    report.failure.get_or_insert_with(|| format!("M_{} M_{} leaves the span", i + 1, j + 1));
                    break 'closure;
                }
            }
        }
    }
    if !report.end_closed {
        report.failure.get_or_insert_with(|| format!("span has dimension {span_rank} over Q(t)"));
    }

    let d = PolyMatrix::from_fn(m, m, |i, j| match (i == j, i < n) {
        (true, true) => Poly::one(),
        (true, false) => t.clone(),
        _ => Poly::zero(),
    });
    let zero = rat(0);
    let mut limits: Vec<RatMatrix> = family[..m - 1].iter().map(|p| (p * &d).eval(&zero)).collect();
    let last = &family[n] * &d;
    if last.entries().iter().any(|p| p.valuation().is_some_and(|v| v < 1)) {
        report.limit_matches = false;
    } else {
        let lowered = PolyMatrix::from_fn(m, m, |i, j| {
            let p = last.get(i, j);
            if p.is_zero() {
                Poly::zero()
            } else {
                p.shift_down(1)
            }
        });
        limits.push(lowered.eval(&zero));
        report.limit_matches = limits == nf.slices();
    }
    if !report.limit_matches {
        report.failure.get_or_insert_with(|| "rescaled limit differs from the normal form slices".into());
    }
    Ok(report)
}

/// One degeneration `base + s·direction` whose isomorphism type is `from`
/// for `s ≠ 0` and `to` at `s = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationLink {
    pub from: M5Label,
    pub to: M5Label,
    pub base: Tensor3,
    pub direction: Tensor3,
    /// Labels at the sample parameters `s = 1, 2, -1`.
    pub generic_labels: Vec<M5Label>,
    pub limit_label: M5Label,
}

impl DegenerationLink {
    pub fn holds(&self) -> bool {
        self.generic_labels.iter().all(|&l| l == self.from) && self.limit_label == self.to
    }
}

/// The chain `O58 ⊵ O57 ⊵ O56 ⊵ O55 ⊵ O54` through explicit one-parameter
/// families.
pub fn degeneration_chain() -> Result<Vec<DegenerationLink>> {
    use crate::corpus::{t_m1, t_m2};
    let a5 = |ts: &[(usize, usize, i64)]| {
        let terms: Vec<(usize, usize, usize, i64)> = ts.iter().map(|&(j, k, v)| (5, j, k, v)).collect();
        Tensor3::from_int_terms([5, 5, 5], &terms)
    };
    let links = [
        (M5Label::O58, M5Label::O57, t_m2(), a5(&[(1, 2, 1), (3, 4, -1)])?),
        (M5Label::O57, M5Label::O56, &t_m1() + &a5(&[(5, 2, 1)])?, a5(&[(1, 2, -1), (3, 3, 1)])?),
        (M5Label::O56, M5Label::O55, &t_m1() + &a5(&[(3, 2, 1)])?, a5(&[(2, 2, 1)])?),
        (M5Label::O55, M5Label::O54, t_m1(), a5(&[(3, 2, 1)])?),
    ];
    links
        .into_iter()
        .map(|(from, to, base, direction)| {
            let generic_labels = [1, 2, -1]
                .into_iter()
                .map(|s| Ok(classify_m5(&(&base + &direction.scale(&rat(s))))?.label))
                .collect::<Result<Vec<_>>>()?;
            let limit_label = classify_m5(&base)?.label;
            Ok(DegenerationLink { from, to, base, direction, generic_labels, limit_label })
        })
        .collect()
}
