//! Tensors named in the literature on minimal border rank, with expected
//! invariants for each.

use std::fmt;

use crate::algebra111::{StructureConstants, SymmetryDims};
use crate::certify::Answer;
use crate::error::{Error, Result};
use crate::exact::{rat, RatMatrix, Rational};
use crate::normalform::{M5Label, SYMMETRY_TABLE};
use crate::tensor::Tensor3;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Stated in the literature.
    Paper,
    /// Immediate from the definitions.
    Trivial,
    /// Derived by an independent computation.
    Derived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Paper => "paper",
            Provenance::Trivial => "trivial",
            Provenance::Derived => "derived",
        })
    }
}

/// A value with its provenance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tagged<T> {
    pub value: T,
    pub provenance: Provenance,
}

fn paper<T>(value: T) -> Option<Tagged<T>> {
    Some(Tagged { value, provenance: Provenance::Paper })
}

fn trivial<T>(value: T) -> Option<Tagged<T>> {
    Some(Tagged { value, provenance: Provenance::Trivial })
}

fn derived<T>(value: T) -> Option<Tagged<T>> {
    Some(Tagged { value, provenance: Provenance::Derived })
}

/// Expected invariants; absent fields are not asserted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub concise: Option<Tagged<bool>>,
    pub one_degenerate: Option<Tagged<bool>>,
    pub triple_dim: Option<Tagged<usize>>,
    pub symmetry: Option<Tagged<SymmetryDims>>,
    pub minimal_border_rank: Option<Tagged<Answer>>,
    pub wild: Option<Tagged<Answer>>,
    pub m5_label: Option<Tagged<M5Label>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub key: String,
    pub description: String,
    pub tensor: Tensor3,
    pub expected: Expected,
}

const UNIT_RANGE: std::ops::RangeInclusive<usize> = 2..=7;
const ALGEBRA_RANGE: std::ops::RangeInclusive<usize> = 2..=6;

const CLASSIFIED: [(&str, M5Label); 5] = [
    ("T_O58", M5Label::O58),
    ("T_O57", M5Label::O57),
    ("T_O56", M5Label::O56),
    ("T_O55", M5Label::O55),
    ("T_O54", M5Label::O54),
];

/// All keys, in a fixed order.
pub fn keys() -> Vec<String> {
    let mut out: Vec<String> = UNIT_RANGE.map(|m| format!("unit_{m}")).collect();
    out.push("w_state".into());
    out.push("T_M1".into());
    out.push("T_M2".into());
    for (k, _) in CLASSIFIED {
        out.push(k.into());
        out.push(format!("{k}_matrix"));
    }
    out.push("T_O57_tilde".into());
    out.push("T_O56_tilde".into());
    out.push("example_111necessary".into());
    out.push("symmetric_cubic".into());
    out.extend(ALGEBRA_RANGE.map(|m| format!("algebra_split_{m}")));
    out.extend(ALGEBRA_RANGE.map(|k| format!("algebra_truncated_{k}")));
    out.push("algebra_square_zero_5".into());
    out
}

/// Looks up a corpus entry.
pub fn get(key: &str) -> Result<CorpusEntry> {
    let unknown = || Error::UnknownKey(key.to_string());
    let (description, tensor, expected) = if let Some(m) = key.strip_prefix("unit_") {
        let m: usize = m.parse().map_err(|_| unknown())?;
        if !UNIT_RANGE.contains(&m) {
            return Err(unknown());
        }
        (format!("unit tensor of dimension {m}"), Tensor3::unit(m), unit_expected(m))
    } else if let Some(m) = key.strip_prefix("algebra_split_") {
        let m = algebra_size(m).ok_or_else(unknown)?;
        (format!("multiplication tensor of Q^{m}"), StructureConstants::split(m).structure_tensor(), unit_expected(m))
    } else if let Some(k) = key.strip_prefix("algebra_truncated_") {
        let k = algebra_size(k).ok_or_else(unknown)?;
        (
            format!("multiplication tensor of Q[x]/(x^{k})"),
            StructureConstants::truncated_polynomial(k).structure_tensor(),
            algebra_expected(k),
        )
    } else if let Some(&(name, label)) = CLASSIFIED.iter().find(|(n, _)| *n == key) {
        (format!("{name} in tensor notation"), classified_tensor(label), classified_expected(name, Some(label)))
    } else if let Some(&(name, label)) = CLASSIFIED.iter().find(|(n, _)| format!("{n}_matrix") == key) {
        (format!("{name} from its space of matrices"), classified_matrix_form(label), classified_expected(name, Some(label)))
    } else {
        match key {
            "w_state" => (
                "W-state a1 b1 c2 + a1 b2 c1 + a2 b1 c1".into(),
                w_state(),
                Expected {
                    concise: trivial(true),
                    one_degenerate: derived(false),
                    triple_dim: derived(2),
                    minimal_border_rank: derived(Answer::Yes),
                    wild: derived(Answer::No),
                    ..Expected::default()
                },
            ),
            "T_M1" => ("T_M1 (equal to T_O54)".into(), t_m1(), classified_expected("T_O54", Some(M5Label::O54))),
            "T_M2" => ("T_M2 (equal to T_O57)".into(), t_m2(), classified_expected("T_O57", Some(M5Label::O57))),
            "T_O57_tilde" => (
                "T_M1 + a5(b5 c2 - b1 c2 + b3 c3), isomorphic to T_O57".into(),
                add(&t_m1(), &[(5, 5, 2, 1), (5, 1, 2, -1), (5, 3, 3, 1)]),
                classified_expected("T~_O57", Some(M5Label::O57)),
            ),
            "T_O56_tilde" => (
                "T_M1 + a5 b5 c2, isomorphic to T_O56".into(),
                add(&t_m1(), &[(5, 5, 2, 1)]),
                classified_expected("T~_O56", Some(M5Label::O56)),
            ),
            "example_111necessary" => (
                "normal form with x2 = E14, x3 = E13, x4 = E34, x5 = 0, u = e4, w = e1".into(),
                example_111necessary(),
                Expected {
                    triple_dim: None,
                    minimal_border_rank: paper(Answer::No),
                    ..Expected::default()
                },
            ),
            "symmetric_cubic" => (
                "symmetric tensor of x3 x1^2 + x4 x1 x2 + x5 x2^2".into(),
                symmetric_cubic(),
                Expected {
                    concise: derived(true),
                    triple_dim: paper(5),
                    minimal_border_rank: derived(Answer::Yes),
                    ..Expected::default()
                },
            ),
            "algebra_square_zero_5" => (
                "multiplication tensor of Q[e1..e4]/(e)^2".into(),
                StructureConstants::square_zero(4).structure_tensor(),
                Expected {
                    concise: derived(true),
                    one_degenerate: derived(false),
                    triple_dim: derived(5),
                    minimal_border_rank: derived(Answer::Yes),
                    ..Expected::default()
                },
            ),
            _ => return Err(unknown()),
        }
    };
    Ok(CorpusEntry { key: key.to_string(), description, tensor, expected })
}

fn algebra_size(s: &str) -> Option<usize> {
    s.parse().ok().filter(|m| ALGEBRA_RANGE.contains(m))
}

fn unit_expected(m: usize) -> Expected {
    Expected {
        concise: trivial(true),
        one_degenerate: trivial(false),
        triple_dim: derived(m),
        minimal_border_rank: if m <= 6 { trivial(Answer::Yes) } else { trivial(Answer::Unknown) },
        wild: if m <= 6 { trivial(Answer::No) } else { trivial(Answer::Unknown) },
        ..Expected::default()
    }
}

fn algebra_expected(m: usize) -> Expected {
    Expected {
        concise: derived(true),
        one_degenerate: derived(false),
        triple_dim: derived(m),
        minimal_border_rank: derived(Answer::Yes),
        ..Expected::default()
    }
}

fn classified_expected(table_name: &str, label: Option<M5Label>) -> Expected {
    let row = SYMMETRY_TABLE.iter().find(|r| r.0 == table_name).expect("table row");
    Expected {
        concise: paper(true),
        one_degenerate: paper(true),
        triple_dim: paper(5),
        symmetry: paper(SymmetryDims { full: row.1, ab_part: row.2, bc_part: row.3, ca_part: row.4 }),
        minimal_border_rank: paper(Answer::Yes),
        wild: paper(Answer::Yes),
        m5_label: label.and_then(paper),
    }
}

fn terms(dims: [usize; 3], ts: &[(usize, usize, usize, i64)]) -> Tensor3 {
    Tensor3::from_int_terms(dims, ts).expect("corpus indices in range")
}

fn add(t: &Tensor3, ts: &[(usize, usize, usize, i64)]) -> Tensor3 {
    t + &terms(t.dims(), ts)
}

fn w_state() -> Tensor3 {
    terms([2, 2, 2], &[(1, 1, 2, 1), (1, 2, 1, 1), (2, 1, 1, 1)])
}

const DIAGONAL_A1: [(usize, usize, usize, i64); 4] = [(1, 1, 1, 1), (1, 2, 2, 1), (1, 3, 3, 1), (1, 4, 4, 1)];

/// `a1⊗(b1c1+b2c2+b3c3+b4c4) + a2 b3 c1 + a3 b4 c1 + a4 b4 c2 + a5(b5 c1 + b4 c5)`.
pub fn t_m1() -> Tensor3 {
    let mut ts = DIAGONAL_A1.to_vec();
    ts.extend([(2, 3, 1, 1), (3, 4, 1, 1), (4, 4, 2, 1), (5, 5, 1, 1), (5, 4, 5, 1)]);
    terms([5, 5, 5], &ts)
}

/// `a1⊗(b1c1+b2c2+b3c3+b4c4) + a2(b3 c1 - b4 c2) + a3 b4 c1 + a4 b3 c2 + a5(b5 c1 + b4 c5)`.
pub fn t_m2() -> Tensor3 {
    let mut ts = DIAGONAL_A1.to_vec();
    ts.extend([(2, 3, 1, 1), (2, 4, 2, -1), (3, 4, 1, 1), (4, 3, 2, 1), (5, 5, 1, 1), (5, 4, 5, 1)]);
    terms([5, 5, 5], &ts)
}

/// The five classified tensors in tensor notation.
pub fn classified_tensor(label: M5Label) -> Tensor3 {
    match label {
        M5Label::O58 => add(&t_m2(), &[(5, 1, 2, 1), (5, 3, 4, -1)]),
        M5Label::O57 => t_m2(),
        M5Label::O56 => add(&t_m1(), &[(5, 2, 2, 1)]),
        M5Label::O55 => add(&t_m1(), &[(5, 3, 2, 1)]),
        M5Label::O54 => t_m1(),
    }
}

/// The five classified tensors rebuilt from their spaces of matrices
/// `Σ x_i K_i`, rows indexed by `C` and columns by `B`.
pub fn classified_matrix_form(label: M5Label) -> Tensor3 {
    let rows: [[&str; 5]; 5] = match label {
        M5Label::O58 => [
            ["x1", ".", "x2", "x3", "x5"],
            ["x5", "x1", "x4", "-x2", "."],
            [".", ".", "x1", ".", "."],
            [".", ".", "-x5", "x1", "."],
            [".", ".", ".", "x5", "."],
        ],
        M5Label::O57 => [
            ["x1", ".", "x2", "x3", "x5"],
            [".", "x1", "x4", "-x2", "."],
            [".", ".", "x1", ".", "."],
            [".", ".", ".", "x1", "."],
            [".", ".", ".", "x5", "."],
        ],
        M5Label::O56 => [
            ["x1", ".", "x2", "x3", "x5"],
            [".", "x1+x5", ".", "x4", "."],
            [".", ".", "x1", ".", "."],
            [".", ".", ".", "x1", "."],
            [".", ".", ".", "x5", "."],
        ],
        M5Label::O55 => [
            ["x1", ".", "x2", "x3", "x5"],
            [".", "x1", "x5", "x4", "."],
            [".", ".", "x1", ".", "."],
            [".", ".", ".", "x1", "."],
            [".", ".", ".", "x5", "."],
        ],
        M5Label::O54 => [
            ["x1", ".", "x2", "x3", "x5"],
            [".", "x1", ".", "x4", "."],
            [".", ".", "x1", ".", "."],
            [".", ".", ".", "x1", "."],
            [".", ".", ".", "x5", "."],
        ],
    };
    let mut t = Tensor3::zeros(5, 5, 5);
    for (r, row) in rows.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            for (coef, var) in parse_cell(cell) {
                let cur = t.entry(var, c + 1, r + 1) + rat(coef);
                t.set_entry(var, c + 1, r + 1, cur);
            }
        }
    }
    t
}

/// Parses cells such as `x1`, `-x2` or `x1+x5` into `(coefficient, variable)`.
fn parse_cell(cell: &str) -> Vec<(i64, usize)> {
    if cell == "." {
        return Vec::new();
    }
    cell.replace('-', "+-")
        .split('+')
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (sign, var) = s.strip_prefix('-').map_or((1, s), |v| (-1, v));
            (sign, var.trim_start_matches('x').parse().expect("corpus cell"))
        })
        .collect()
}

/// The tensor built from normal form data whose 111-algebra fails to be
/// abundant although the classical equations hold.
pub fn example_111necessary() -> Tensor3 {
    let n = 4;
    let xs = [
        RatMatrix::identity(n),
        RatMatrix::unit(n, 0, 3),
        RatMatrix::unit(n, 0, 2),
        RatMatrix::unit(n, 2, 3),
        RatMatrix::zeros(n, n),
    ];
    let mut slices: Vec<RatMatrix> = xs
        .iter()
        .map(|x| {
            let mut k = RatMatrix::zeros(5, 5);
            k.set_block(0, 0, x);
            k
        })
        .collect();
    slices[4].set(4, 3, rat(1));
    slices[4].set(0, 4, rat(1));
    Tensor3::from_a_slices(&slices).expect("square slices")
}

/// The symmetric tensor of `x3 x1² + x4 x1 x2 + x5 x2²`, where each monomial
/// contributes twice the sum over its distinct index permutations.
pub fn symmetric_cubic() -> Tensor3 {
    let monomials: [[usize; 3]; 3] = [[3, 1, 1], [4, 1, 2], [5, 2, 2]];
    let mut t = Tensor3::zeros(5, 5, 5);
    for mono in monomials {
        let mut perms: Vec<[usize; 3]> = PERMUTATIONS.iter().map(|p| [mono[p[0]], mono[p[1]], mono[p[2]]]).collect();
        perms.sort_unstable();
        perms.dedup();
        for [i, j, k] in perms {
            let cur: Rational = t.entry(i, j, k) + rat(2);
            t.set_entry(i, j, k, cur);
        }
    }
    t
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
