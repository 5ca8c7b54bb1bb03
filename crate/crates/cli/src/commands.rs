//! Report builders for each subcommand.

use minbr::algebra111::{adhm_module, compute_111_algebra, gorenstein_check, min_generators, symmetry_dims, AdhmModule};
use minbr::certify::{
    b_family, diagonalizability_certificate, minimal_br_verdict, smoothable_rank_verdict, verify_limit_certificate,
    wildness, Diagonalizability, Verdict,
};
use minbr::corpus::{self, Tagged};
use minbr::equations::{direct_111_map_rank, end_closed_check, koszul_p1, strassen_check, triple_111, KoszulType, Outcome};
use minbr::exact::Rational;
use minbr::normalform::{classify_m5, M5Label};
use minbr::tensor::{Factor, Tensor3};
use minbr::Error;
use num_traits::{One, Signed, Zero};

use crate::error::CliError;
use crate::input::{Family, Loaded};
use crate::report::{Fields, Node};

fn per_factor(mut f: impl FnMut(Factor) -> Node) -> Node {
    let mut out = Fields::new();
    for factor in Factor::ALL {
        out.push(&factor.to_string(), f(factor));
    }
    out.into()
}

fn unavailable(e: Error) -> Node {
    Node::text(format!("unavailable: {e}"))
}

/// `c_0 e0 + c_1 e1 + …` with unit coefficients dropped.
fn combination(coeffs: &[Rational]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        let abs = c.abs();
        let body = if abs.is_one() { format!("e{i}") } else { format!("{abs} e{i}") };
        if out.is_empty() {
            out = if c.is_negative() { format!("-{body}") } else { body };
        } else {
            out.push_str(&format!(" {sign} {body}"));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn outcome(o: &Outcome) -> Node {
    match o {
        Outcome::Fail { reason, .. } => Node::text(format!("fail: {reason}")),
        other => Node::text(other),
    }
}

fn verdict(v: &Verdict) -> Node {
    let mut f = Fields::new().add("answer", v.answer.to_string()).add("rule", v.rule.as_str());
    if !v.evidence.note.is_empty() {
        f.push("note", v.evidence.note.as_str());
    }
    f.into()
}

fn verdicts(t: &Tensor3) -> Node {
    let smoothable = match smoothable_rank_verdict(t) {
        Ok(v) => verdict(&v),
        Err(e) => unavailable(e),
    };
    Fields::new()
        .add("minimal_border_rank", verdict(&minimal_br_verdict(t)))
        .add("minimal_smoothable_rank", smoothable)
        .add("wild", verdict(&wildness(t)))
        .into()
}

fn profile(t: &Tensor3) -> Node {
    let p = t.genericity_profile();
    Fields::new()
        .add("concise", per_factor(|f| p.concise[f.index()].into()))
        .add("max_rank", per_factor(|f| p.max_rank[f.index()].into()))
        .add("corank", per_factor(|f| p.corank[f.index()].into()))
        .add("one_generic", per_factor(|f| p.one_generic_in[f.index()].into()))
        .add("binding", p.binding())
        .add("one_generic_all", p.is_one_generic())
        .add("one_degenerate", p.one_degenerate())
        .into()
}

fn equations(t: &Tensor3) -> Node {
    let strassen = match strassen_check(t) {
        Ok(o) => per_factor(|f| outcome(&o[f.index()])),
        Err(e) => unavailable(e),
    };
    let end_closed = match end_closed_check(t) {
        Ok(o) => per_factor(|f| outcome(&o[f.index()])),
        Err(e) => unavailable(e),
    };
    let mut koszul = Vec::new();
    for kind in KoszulType::ALL {
        koszul.push(match koszul_p1(t, kind) {
            Ok(k) => Fields::new()
                .add("type", kind.label())
                .add("rank", k.rank)
                .add("bound", k.bound)
                .add("within_bound", k.minimal_ok)
                .into(),
            Err(e) => unavailable(e),
        });
    }
    Fields::new().add("strassen", strassen).add("end_closed", end_closed).add("koszul_p1", koszul).into()
}

fn triple(t: &Tensor3, verify_direct: bool) -> Node {
    let r = match triple_111(t) {
        Ok(r) => r,
        Err(e) => return unavailable(e),
    };
    let mut f = Fields::new()
        .add("dim", r.dim)
        .add("map_rank", r.map_rank)
        .add("abundant", r.abundant)
        .add("sharp", r.sharp);
    if verify_direct {
        match direct_111_map_rank(t) {
            Ok(d) => {
                f.push("direct_map_rank", d);
                f.push("direct_agrees", d == r.map_rank);
            }
            Err(e) => f.push("direct_map_rank", unavailable(e)),
        }
    }
    f.into()
}

fn algebra(t: &Tensor3) -> Node {
    let alg = match compute_111_algebra(t) {
        Ok(a) => a,
        Err(e) => return unavailable(e),
    };
    let sc = &alg.constants;
    let n = alg.dim();
    let mut products = Vec::new();
    for i in 1..n {
        for j in i..n {
            let coeffs: Vec<Rational> = (0..n).map(|k| sc.get(i, j, k).clone()).collect();
            if coeffs.iter().any(|c| !c.is_zero()) {
                products.push(Node::text(format!("e{i} e{j} = {}", combination(&coeffs))));
            }
        }
    }
    let unit = sc.unit().map_or_else(|| Node::text("none"), |u| Node::text(combination(&u)));
    Fields::new()
        .add("dim", n)
        .add("commutative", alg.commutative)
        .add("associative", sc.is_associative())
        .add("unit", unit)
        .add("gorenstein", gorenstein_check(sc))
        .add("projections_injective", per_factor(|f| alg.projections_injective()[f.index()].into()))
        .add("nonzero_products", products)
        .into()
}

fn module(m: &AdhmModule) -> Node {
    let mut f = Fields::new().add("dim", m.dim).add("locality", m.locality.to_string());
    if let Some(h) = &m.hilbert_module {
        f.push("hilbert_module", h.clone());
    }
    if let Some(h) = &m.hilbert_algebra {
        f.push("hilbert_algebra", h.clone());
    }
    match min_generators(m) {
        Ok(g) => f.push("generators", g),
        Err(e) => f.push("generators", unavailable(e)),
    }
    f.into()
}

fn adhm(t: &Tensor3) -> Node {
    let mut f = Fields::new();
    for factor in Factor::ALL {
        let node = match adhm_module(t, factor) {
            Ok(m) => module(&m),
            Err(Error::Precondition(msg)) => Node::text(format!("not applicable: {msg}")),
            Err(e) => unavailable(e),
        };
        f.push(&factor.to_string(), node);
    }
    f.into()
}

fn header(input: &Loaded, t: &Tensor3) -> Fields {
    Fields::new().add("input", input.source.as_str()).add("dims", t.dims())
}

pub fn analyze(input: &Loaded, factor: Option<Factor>, verify_direct: bool) -> Node {
    let t = match factor {
        Some(f) => input.tensor.rotated(f),
        None => input.tensor.clone(),
    };
    let mut f = header(input, &t);
    if let Some(factor) = factor {
        f.push("first_factor", factor.to_string());
    }
    f.push("profile", profile(&t));
    if t.cube_dim().is_none() {
        f.push("verdicts", verdicts(&t));
        return f.into();
    }
    let sym = symmetry_dims(&t);
    f.push("equations", equations(&t));
    f.push("triple_111", triple(&t, verify_direct));
    f.push("algebra_111", algebra(&t));
    f.push(
        "symmetry",
        Fields::new().add("full", sym.full).add("AB", sym.ab_part).add("BC", sym.bc_part).add("CA", sym.ca_part),
    );
    f.push("adhm", adhm(&t));
    f.push("verdicts", verdicts(&t));
    f.into()
}

pub fn classify(input: &Loaded) -> Result<Node, CliError> {
    let class = classify_m5(&input.tensor).map_err(|e| match e {
        Error::Precondition(_) | Error::NotConcise(_) | Error::DimensionMismatch(_) => CliError::Precondition(e.to_string()),
        other => CliError::Library(other),
    })?;
    let d = class.dims;
    Ok(header(input, &input.tensor)
        .add("label", class.label.to_string())
        .add("case", class.case.to_string())
        .add("p_rank", class.p_rank)
        .add("normal_form_factor", class.factor.to_string())
        .add("symmetry", Fields::new().add("full", d.full).add("AB", d.ab_part).add("BC", d.bc_part).add("CA", d.ca_part))
        .add("table_matches", Node::texts(class.table_matches))
        .into())
}

fn diagonal(t: &Tensor3) -> Node {
    match diagonalizability_certificate(t) {
        Ok(c) => {
            let status = match c.status {
                Diagonalizability::Diagonalizable => "diagonalizable",
                Diagonalizability::NotDiagonalizable => "not diagonalizable",
                Diagonalizability::NotCertifiedOverQ => "not certified over Q",
            };
            let mut f = Fields::new().add("status", status).add("factor", c.factor.to_string()).add("alpha", Node::texts(&c.alpha));
            if let Some(i) = c.failing {
                f.push("failing_slice", i + 1);
            }
            if let Some(terms) = &c.decomposition {
                let rows: Vec<Node> = terms
                    .iter()
                    .map(|[a, b, c]| Node::from(Fields::new().add("a", Node::texts(a)).add("b", Node::texts(b)).add("c", Node::texts(c))))
                    .collect();
                f.push("rank_one_terms", rows);
            }
            f.into()
        }
        Err(Error::Precondition(msg)) => Node::text(format!("not applicable: {msg}")),
        Err(e) => unavailable(e),
    }
}

fn limit(t: &Tensor3, family: Option<Family>) -> Result<Node, CliError> {
    let (source, family) = match family {
        Some(f) => ("file", f),
        None if *t == corpus::classified_tensor(M5Label::O58) => ("built-in B1..B5", Family { factor: Factor::A, members: b_family() }),
        None => return Ok(Node::text("none: no family supplied")),
    };
    let cert = verify_limit_certificate(&family.members, t, family.factor, None)?;
    let mut f = Fields::new()
        .add("family", source)
        .add("factor", family.factor.to_string())
        .add("members", cert.family.len())
        .add("target_dim", cert.target_span.dim());
    if let Some(l) = &cert.limit {
        f.push("limit_dim", l.dim());
    }
    if let Some(fail) = &cert.failure {
        f.push("failure", fail.to_string());
    }
    f.push("verified", cert.verified);
    Ok(f.into())
}

pub fn certify(input: &Loaded, family: Option<Family>) -> Result<Node, CliError> {
    let t = &input.tensor;
    Ok(header(input, t)
        .add("verdicts", verdicts(t))
        .add("diagonalizability", diagonal(t))
        .add("limit_certificate", limit(t, family)?)
        .into())
}

pub fn corpus_list() -> Node {
    let mut f = Fields::new();
    for key in corpus::keys() {
        let entry = corpus::get(&key).expect("listed key resolves");
        f.push(&key, entry.description);
    }
    f.into()
}

fn tagged<T>(value: Option<Tagged<T>>, show: impl Fn(&T) -> String) -> Option<Node> {
    value.map(|v| Node::text(format!("{} ({})", show(&v.value), v.provenance)))
}

pub fn corpus_show(key: &str) -> Result<Node, CliError> {
    let entry = corpus::get(key)?;
    let e = &entry.expected;
    let mut expected = Fields::new();
    let fields = [
        ("concise", tagged(e.concise, bool::to_string)),
        ("one_degenerate", tagged(e.one_degenerate, bool::to_string)),
        ("triple_dim", tagged(e.triple_dim, usize::to_string)),
        ("symmetry", tagged(e.symmetry, ToString::to_string)),
        ("minimal_border_rank", tagged(e.minimal_border_rank, ToString::to_string)),
        ("wild", tagged(e.wild, ToString::to_string)),
        ("m5_label", tagged(e.m5_label, ToString::to_string)),
    ];
    for (name, node) in fields {
        if let Some(node) = node {
            expected.push(name, node);
        }
    }
    let terms: Vec<Node> = entry
        .tensor
        .terms()
        .into_iter()
        .map(|(i, j, k, v)| Node::text(format!("({i}, {j}, {k}) {v}")))
        .collect();
    Ok(Fields::new()
        .add("key", entry.key.as_str())
        .add("description", entry.description.as_str())
        .add("dims", entry.tensor.dims())
        .add("expected", expected)
        .add("terms", terms)
        .into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use minbr::exact::rat;

    #[test]
    fn combinations() {
        assert_eq!(combination(&[rat(0), rat(0)]), "0");
        assert_eq!(combination(&[rat(1), rat(-1), minbr::exact::ratio(3, 2)]), "e0 - e1 + 3/2 e2");
        assert_eq!(combination(&[rat(0), rat(-2)]), "-2 e1");
    }
}
