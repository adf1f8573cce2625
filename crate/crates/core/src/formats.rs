//! Text formats: functionals as JSON term lists, cone files, certificate
//! records and point lists. Coefficients travel as strings so values of any
//! size survive.

use serde::Deserialize;

use crate::apolarity::Functional;
use crate::cones::ConeSpec;
use crate::error::{Error, Result};
use crate::exactalg::{Field, Scalar};
use crate::model::{BigradedModel, Bidegree, ModelKind, Monomial, RingElement};
use crate::oracle::Point;
use crate::reconstruct::{DecompositionCertificate, TheoremParams};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawCoeff {
    Int(i64),
    Str(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    x: Vec<u32>,
    y: Vec<u32>,
    c: RawCoeff,
}

/// 1-based line of the `n`-th term object. Terms are flat objects, so the
/// `n`-th opening brace starts the `n`-th term.
fn line_of_term(text: &str, n: usize) -> usize {
    text.char_indices()
        .filter(|&(_, ch)| ch == '{')
        .nth(n)
        .map_or(1, |(pos, _)| text[..pos].matches('\n').count() + 1)
}

/// The bidegree a twisted-binary functional of total degree `deg` is read at
/// when none is given: `(deg − c, 1)` if that is nonnegative and `c ≥ 1`, else `(deg, 0)`.
pub fn default_twisted_bidegree(c: u32, deg: u32) -> Bidegree {
    if c >= 1 && deg >= c {
        Bidegree::new((deg - c) as i64, 1)
    } else {
        Bidegree::new(deg as i64, 0)
    }
}

fn term_bidegree(model: &BigradedModel, x: &[u32], y: &[u32]) -> std::result::Result<Bidegree, String> {
    let blocks = model.blocks();
    let sx: u32 = x.iter().sum();
    let sy: u32 = y.iter().sum();
    match model.kind {
        ModelKind::AmbientProduct { .. } => {
            if x.len() != blocks[0] || y.len() != blocks[1] {
                return Err(format!("expected {} x and {} y exponents", blocks[0], blocks[1]));
            }
            Ok(Bidegree::new(sx as i64, sy as i64))
        }
        ModelKind::SingleProjective { .. } | ModelKind::TwistedBinary { .. } => {
            if x.len() != blocks[0] || !y.is_empty() {
                return Err(format!("expected {} x exponents and an empty y list", blocks[0]));
            }
            Ok(Bidegree::new(sx as i64, 0))
        }
    }
}

/// Total degree of a monomial in piece `b`, as the exponent sums see it.
fn written_degree(model: &BigradedModel, b: Bidegree) -> Bidegree {
    match model.kind {
        ModelKind::TwistedBinary { c } => Bidegree::new(b.i + c as i64 * b.j, 0),
        _ => b,
    }
}

/// Parses a JSON term list `[{"x":[..],"y":[..],"c":"1"}, ...]` into a
/// nonzero functional. The bidegree is read off the exponents unless given;
/// for twisted-binary models see [`default_twisted_bidegree`].
pub fn parse_functional(text: &str, model: BigradedModel, bidegree: Option<Bidegree>) -> Result<Functional> {
    let raw: Vec<RawTerm> =
        serde_json::from_str(text).map_err(|e| parse_error(e.line().max(1), format!("malformed functional: {e}")))?;
    if raw.is_empty() {
        return Err(parse_error(1, "functional has no terms"));
    }
    let mut written: Option<Bidegree> = None;
    let mut terms: Vec<(Monomial, Scalar)> = Vec::with_capacity(raw.len());
    for (n, t) in raw.iter().enumerate() {
        let line = line_of_term(text, n);
        let b = term_bidegree(&model, &t.x, &t.y).map_err(|m| parse_error(line, m))?;
        match written {
            None => written = Some(b),
            Some(w) if w != b => {
                return Err(parse_error(line, format!("term has degree {b}, earlier terms have {w}")));
            }
            _ => {}
        }
        let c = match &t.c {
            RawCoeff::Int(v) => model.field.from_i64(*v),
            RawCoeff::Str(s) => model.field.parse_scalar(s).map_err(|e| parse_error(line, e.to_string()))?,
        };
        let mono: Monomial = t.x.iter().chain(&t.y).copied().collect();
        if terms.iter().any(|(m, _)| *m == mono) {
            return Err(parse_error(line, "repeated monomial"));
        }
        terms.push((mono, c));
    }
    let written = written.expect("at least one term");
    let target = match (bidegree, model.kind) {
        (Some(b), _) => b,
        (None, ModelKind::TwistedBinary { c }) => default_twisted_bidegree(c, written.i as u32),
        (None, _) => written,
    };
    if written_degree(&model, target) != written || !target.is_nonnegative() {
        return Err(parse_error(line_of_term(text, 0), format!("exponents do not match bidegree {target}")));
    }
    let f = Functional::from_terms(model, target, &terms).map_err(|e| parse_error(1, e.to_string()))?;
    if f.is_zero() {
        return Err(parse_error(1, "functional is zero"));
    }
    Ok(f)
}

/// Canonical JSON form: nonzero terms in basis order, one per line.
pub fn emit_functional(f: &Functional) -> String {
    let split = match f.model.kind {
        ModelKind::AmbientProduct { .. } => f.model.blocks()[0],
        _ => f.model.num_vars(),
    };
    let show = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    let lines: Vec<String> = f
        .terms()
        .iter()
        .map(|(m, c)| format!("  {{\"x\":[{}],\"y\":[{}],\"c\":\"{c}\"}}", show(&m[..split]), show(&m[split..])))
        .collect();
    if lines.is_empty() {
        return "[]\n".into();
    }
    format!("[\n{}\n]\n", lines.join(",\n"))
}

/// A cone file: `rho`, dual generator rows, the `H` row, then the `D0` row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeFile {
    pub cone: ConeSpec,
    pub d0: Vec<i64>,
}

fn int_row(line: usize, s: &str, len: usize) -> Result<Vec<i64>> {
    let row: Vec<i64> = s
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_error(line, format!("not an integer: {t:?}"))))
        .collect::<Result<_>>()?;
    if row.len() != len {
        return Err(parse_error(line, format!("expected {len} integers, found {}", row.len())));
    }
    Ok(row)
}

pub fn parse_cone(text: &str) -> Result<ConeFile> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let (first, rho) = lines.first().ok_or_else(|| parse_error(1, "empty cone file"))?;
    let rho: usize = rho.parse().map_err(|_| parse_error(*first, "first line must be rho"))?;
    if lines.len() < 4 {
        return Err(parse_error(lines.last().map_or(1, |l| l.0), "need rho, dual generators, H and D0"));
    }
    let rows = lines[1..]
        .iter()
        .map(|&(n, l)| int_row(n, l, rho))
        .collect::<Result<Vec<_>>>()?;
    let (gens, tail) = rows.split_at(rows.len() - 2);
    let cone = ConeSpec::new(rho, gens.to_vec(), tail[0].clone(), None)
        .map_err(|e| parse_error(lines[1].0, e.to_string()))?;
    Ok(ConeFile { cone, d0: tail[1].clone() })
}

pub fn emit_cone(file: &ConeFile) -> String {
    let row = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
    let mut s = format!("{}\n", file.cone.rho());
    for g in file.cone.dual_generators() {
        s.push_str(&row(g));
        s.push('\n');
    }
    s.push_str(&row(file.cone.h()));
    s.push('\n');
    s.push_str(&row(&file.d0));
    s.push('\n');
    s
}

/// Line-oriented record: `field`, `params`, `g` (coefficients in basis order),
/// `k0`, `r0`, `span_ok`.
pub fn emit_certificate(cert: &DecompositionCertificate) -> String {
    let g: Vec<String> = cert.g.coeffs.iter().map(Scalar::to_string).collect();
    format!(
        "field {}\nparams {}\ng {}\nk0 {}\nr0 {}\nspan_ok {}\n",
        cert.field,
        cert.params,
        g.join(" "),
        cert.k0,
        cert.r0,
        cert.span_ok
    )
}

fn keyed<'a>(lines: &[(usize, &'a str)], idx: usize, key: &str) -> Result<(usize, &'a str)> {
    let &(n, l) = lines.get(idx).ok_or_else(|| parse_error(idx + 1, format!("missing {key} line")))?;
    let rest = l
        .strip_prefix(key)
        .filter(|r| r.is_empty() || r.starts_with(' '))
        .ok_or_else(|| parse_error(n, format!("expected {key}")))?;
    Ok((n, rest.trim()))
}

fn parse_usize(line: usize, s: &str) -> Result<usize> {
    s.parse().map_err(|_| parse_error(line, format!("not a count: {s:?}")))
}

pub fn parse_certificate(text: &str) -> Result<DecompositionCertificate> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let (n, f) = keyed(&lines, 0, "field")?;
    let field: Field = f.parse().map_err(|e: Error| parse_error(n, e.to_string()))?;

    let (n, p) = keyed(&lines, 1, "params")?;
    let mut vals = [None; 4];
    for tok in p.split_whitespace() {
        let (k, v) = tok.split_once('=').ok_or_else(|| parse_error(n, format!("bad parameter {tok:?}")))?;
        let slot = ["r", "c", "d", "k"]
            .iter()
            .position(|&name| name == k)
            .ok_or_else(|| parse_error(n, format!("unknown parameter {k:?}")))?;
        vals[slot] = Some(parse_usize(n, v)?);
    }
    let [Some(r), Some(c), Some(d), Some(k)] = vals else {
        return Err(parse_error(n, "params needs r, c, d and k"));
    };
    let params = TheoremParams::new(r, c, d, k).map_err(|e| parse_error(n, e.to_string()))?;

    let (n, g) = keyed(&lines, 2, "g")?;
    let coeffs = g
        .split_whitespace()
        .map(|t| field.parse_scalar(t).map_err(|e| parse_error(n, e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    if coeffs.is_empty() {
        return Err(parse_error(n, "g has no coefficients"));
    }
    let model = params.model(field);
    let g = RingElement::new(model, Bidegree::new(coeffs.len() as i64 - 1, 0), coeffs)
        .map_err(|e| parse_error(n, e.to_string()))?;

    let (n, v) = keyed(&lines, 3, "k0")?;
    let k0 = parse_usize(n, v)?;
    let (n, v) = keyed(&lines, 4, "r0")?;
    let r0 = parse_usize(n, v)?;
    let (n, v) = keyed(&lines, 5, "span_ok")?;
    let span_ok = v.parse().map_err(|_| parse_error(n, "span_ok must be true or false"))?;
    if let Some(&(n, _)) = lines.get(6) {
        return Err(parse_error(n, "trailing content"));
    }
    Ok(DecompositionCertificate { field, params, g, k0, r0, span_ok })
}

/// One point per line, blocks separated by `|`, coordinates by whitespace.
pub fn parse_points(text: &str, model: &BigradedModel) -> Result<Vec<Point>> {
    let blocks = model.blocks();
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let n = i + 1;
        let point: Point = line
            .split('|')
            .map(|block| {
                block
                    .split_whitespace()
                    .map(|t| model.field.parse_scalar(t).map_err(|e| parse_error(n, e.to_string())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        crate::apolarity::validate_point(model, &point).map_err(|e| parse_error(n, format!("{e}; blocks {blocks:?}")))?;
        points.push(point);
    }
    Ok(points)
}

pub fn emit_points(points: &[Point]) -> String {
    points
        .iter()
        .map(|p| {
            let blocks: Vec<String> =
                p.iter().map(|b| b.iter().map(Scalar::to_string).collect::<Vec<_>>().join(" ")).collect();
            format!("{}\n", blocks.join(" | "))
        })
        .collect()
}
