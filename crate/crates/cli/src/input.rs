//! Tensor and family files, and `corpus:KEY` references.

use std::collections::HashMap;
use std::ops::Range;
use std::path::Path;

use minbr::corpus;
use minbr::exact::{parse_rational, Poly, PolyMatrix, RatMatrix, Rational};
use minbr::tensor::{Factor, Tensor3};
use serde::Deserialize;
use toml::{Spanned, Value};

use crate::error::CliError;

/// A tensor together with a label naming where it came from.
pub struct Loaded {
    pub source: String,
    pub tensor: Tensor3,
}

/// Nested arrays of literals, outermost first.
type Grid = Vec<Vec<Vec<Spanned<Value>>>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorFile {
    dims: Spanned<[usize; 3]>,
    entries: Option<Vec<Spanned<Entry>>>,
    slices: Option<Spanned<Grid>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    i: usize,
    j: usize,
    k: usize,
    v: Spanned<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    factor: Option<String>,
    members: Grid,
}

/// Parsed limit family.
pub struct Family {
    pub factor: Factor,
    pub members: Vec<PolyMatrix>,
}

struct Source<'a> {
    name: &'a str,
    text: &'a str,
}

impl Source<'_> {
    fn line(&self, span: &Range<usize>) -> usize {
        self.text[..span.start.min(self.text.len())].matches('\n').count() + 1
    }

    fn error(&self, span: &Range<usize>, msg: impl std::fmt::Display) -> CliError {
        CliError::Input(format!("{}:{}: {msg}", self.name, self.line(span)))
    }

    fn parse<T: for<'de> Deserialize<'de>>(&self) -> Result<T, CliError> {
        toml::from_str(self.text).map_err(|e| match e.span() {
            Some(span) => self.error(&span, e.message()),
            None => CliError::Input(format!("{}: {}", self.name, e.message())),
        })
    }

    fn rational(&self, v: &Spanned<Value>) -> Result<Rational, CliError> {
        match v.get_ref() {
            Value::Integer(n) => Ok(Rational::from_integer((*n).into())),
            Value::String(s) => parse_rational(s).map_err(|e| self.error(&v.span(), e)),
            other => Err(self.error(&v.span(), format!("expected an integer or a rational string, found {}", other.type_str()))),
        }
    }

    fn poly(&self, v: &Spanned<Value>) -> Result<Poly, CliError> {
        match v.get_ref() {
            Value::Integer(n) => Ok(Poly::from_i64(&[*n])),
            Value::String(s) => s.parse().map_err(|e| self.error(&v.span(), e)),
            other => Err(self.error(&v.span(), format!("expected a polynomial in t, found {}", other.type_str()))),
        }
    }
}

/// Resolves `corpus:KEY` or reads a tensor file.
pub fn load(input: &str) -> Result<Loaded, CliError> {
    if let Some(key) = input.strip_prefix("corpus:") {
        let entry = corpus::get(key)?;
        return Ok(Loaded { source: input.to_string(), tensor: entry.tensor });
    }
    let text = read(Path::new(input))?;
    let tensor = parse_tensor(input, &text)?;
    Ok(Loaded { source: input.to_string(), tensor })
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Parses the text of a tensor file; `name` prefixes diagnostics.
pub fn parse_tensor(name: &str, text: &str) -> Result<Tensor3, CliError> {
    let src = Source { name, text };
    let file: TensorFile = src.parse()?;
    let dims = *file.dims.get_ref();
    if dims.contains(&0) {
        return Err(src.error(&file.dims.span(), "dimensions must be positive"));
    }
    match (file.entries, file.slices) {
        (Some(entries), None) => from_entries(&src, dims, &entries),
        (None, Some(slices)) => from_slices(&src, dims, &slices),
        (Some(_), Some(_)) => Err(CliError::Input(format!("{name}: give either `entries` or `slices`, not both"))),
        (None, None) => Err(CliError::Input(format!("{name}: missing `entries` or `slices`"))),
    }
}

fn from_entries(src: &Source, dims: [usize; 3], entries: &[Spanned<Entry>]) -> Result<Tensor3, CliError> {
    let mut seen: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut terms = Vec::with_capacity(entries.len());
    for spanned in entries {
        let span = spanned.span();
        let e = spanned.get_ref();
        for (name, idx, bound) in [("i", e.i, dims[0]), ("j", e.j, dims[1]), ("k", e.k, dims[2])] {
            if idx == 0 || idx > bound {
                return Err(src.error(&span, format!("index {name} = {idx} is outside 1..={bound}")));
            }
        }
        let line = src.line(&span);
        if let Some(first) = seen.insert((e.i, e.j, e.k), line) {
            return Err(src.error(&span, format!("duplicate entry ({}, {}, {}), first given on line {first}", e.i, e.j, e.k)));
        }
        terms.push((e.i, e.j, e.k, src.rational(&e.v)?));
    }
    Ok(Tensor3::from_terms(dims, &terms)?)
}

fn from_slices(src: &Source, dims: [usize; 3], slices: &Spanned<Grid>) -> Result<Tensor3, CliError> {
    let [a, b, c] = dims;
    let span = slices.span();
    let slices = slices.get_ref();
    if slices.len() != a {
        return Err(src.error(&span, format!("expected {a} slices, found {}", slices.len())));
    }
    let mut mats = Vec::with_capacity(a);
    for (s, rows) in slices.iter().enumerate() {
        if rows.len() != c || rows.iter().any(|r| r.len() != b) {
            return Err(src.error(&span, format!("slice {} must be {c} x {b} (rows C, columns B)", s + 1)));
        }
        let mut data = Vec::with_capacity(b * c);
        for cell in rows.iter().flatten() {
            data.push(src.rational(cell)?);
        }
        mats.push(RatMatrix::from_flat(c, b, data));
    }
    Ok(Tensor3::from_a_slices(&mats)?)
}

/// Reads a family of matrices over `Q[t]`.
pub fn load_family(path: &str) -> Result<Family, CliError> {
    let text = read(Path::new(path))?;
    parse_family(path, &text)
}

pub fn parse_family(name: &str, text: &str) -> Result<Family, CliError> {
    let src = Source { name, text };
    let file: FamilyFile = src.parse()?;
    let factor = match &file.factor {
        Some(f) => f.parse().map_err(|_| CliError::Input(format!("{name}: unknown factor `{f}`")))?,
        None => Factor::A,
    };
    let mut members = Vec::with_capacity(file.members.len());
    for (n, rows) in file.members.iter().enumerate() {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(CliError::Input(format!("{name}: member {} has rows of different lengths", n + 1)));
        }
        let mut parsed = Vec::with_capacity(rows.len());
        for row in rows {
            parsed.push(row.iter().map(|v| src.poly(v)).collect::<Result<Vec<_>, _>>()?);
        }
        members.push(PolyMatrix::from_rows(cols, parsed));
    }
    Ok(Family { factor, members })
}
