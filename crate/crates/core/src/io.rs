//! JSON formats for schemas, paths, representations, morphisms and algebra elements.
//!
//! Rationals are `"p/q"` strings (bare integers are accepted on input).
//! Vertices are integers or `[i, j]`. Arrows are `[name, tail]` with names
//! `rho1`/`rho2` (`rho`/`rhobar` on cyclic and line quivers, `a<d>` on
//! type-A windows). Paths are arrow lists in the order they are applied; the
//! trivial path at `v` is `[["e", v]]`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::functors::{morphism_f, morphism_g, QuiverMorphism};
use crate::lie::{UElement, UMonomial};
use crate::linalg::Matrix;
use crate::quiver::{ArrowId, Path, PathSum, QuiverSchema, RelationSet, VertexId};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::rep::{RepMorphism, Representation};

fn perr<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn int(v: &Value) -> Result<i64> {
    v.as_i64().ok_or_else(|| Error::Parse(format!("expected an integer, got {v}")))
}

fn array(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("expected an array, got {v}")))
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn schema_to_json(s: &QuiverSchema) -> Value {
    match s {
        QuiverSchema::Qmn { m, n } => json!({"family": "Qmn", "m": m, "n": n}),
        QuiverSchema::QinfXinf => json!({"family": "QinfXinf"}),
        QuiverSchema::Qhat { s: 0 } => json!({"family": "Qinf"}),
        QuiverSchema::Qhat { s } => json!({"family": "Qhat", "s": s}),
        QuiverSchema::Awindow { lo, hi, steps } => json!({"family": "Awindow", "a": lo, "b": hi, "steps": steps}),
    }
}

pub fn schema_from_json(v: &Value) -> Result<QuiverSchema> {
    let family = field(v, "family")?.as_str().ok_or_else(|| Error::Parse("family must be a string".into()))?;
    match family {
        "Qmn" => QuiverSchema::qmn(int(field(v, "m")?)?, int(field(v, "n")?)?),
        "QinfXinf" => Ok(QuiverSchema::grid()),
        "Qinf" => Ok(QuiverSchema::qinf()),
        "Qhat" => {
            let s = int(field(v, "s")?)?;
            if s <= 0 {
                return Err(Error::Domain(format!("Qhat needs s > 0, got {s}")));
            }
            Ok(QuiverSchema::qhat(s as u64))
        }
        "Awindow" => {
            let steps = array(field(v, "steps")?)?.iter().map(int).collect::<Result<_>>()?;
            QuiverSchema::a_window(int(field(v, "a")?)?, int(field(v, "b")?)?, steps)
        }
        other => perr(format!("unknown quiver family {other:?}")),
    }
}

pub fn vertex_to_json(x: VertexId) -> Value {
    match x {
        VertexId::Int(k) => json!(k),
        VertexId::Pair(i, j) => json!([i, j]),
    }
}

pub fn vertex_from_json(v: &Value) -> Result<VertexId> {
    if let Some(k) = v.as_i64() {
        return Ok(VertexId::Int(k));
    }
    match v.as_array().map(|a| a.as_slice()) {
        Some([i, j]) => Ok(VertexId::Pair(int(i)?, int(j)?)),
        _ => perr(format!("not a vertex: {v}")),
    }
}

fn arrow_name(s: &QuiverSchema, family: u8) -> String {
    match (s, family) {
        (QuiverSchema::Awindow { .. }, d) => format!("a{d}"),
        (QuiverSchema::Qhat { .. }, 1) => "rho".into(),
        (QuiverSchema::Qhat { .. }, _) => "rhobar".into(),
        (_, d) => format!("rho{d}"),
    }
}

fn family_from_name(name: &str) -> Result<u8> {
    match name {
        "rho1" | "rho" => Ok(1),
        "rho2" | "rhobar" => Ok(2),
        _ => name
            .strip_prefix('a')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| Error::Parse(format!("unknown arrow name {name:?}"))),
    }
}

pub fn arrow_to_json(s: &QuiverSchema, a: ArrowId) -> Value {
    json!([arrow_name(s, a.family), vertex_to_json(a.tail)])
}

pub fn arrow_from_json(s: &QuiverSchema, v: &Value) -> Result<ArrowId> {
    let Some([name, tail]) = v.as_array().map(|a| a.as_slice()) else {
        return perr(format!("not an arrow: {v}"));
    };
    let name = name.as_str().ok_or_else(|| Error::Parse(format!("arrow name must be a string: {name}")))?;
    let a = ArrowId::new(family_from_name(name)?, vertex_from_json(tail)?);
    s.check_arrow(a)?;
    Ok(a)
}

pub fn rational_to_json(x: &Rational) -> Value {
    json!(format_rational(x))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => perr(format!("not a rational: {v}")),
    }
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(rational_to_json).collect())).collect())
}

/// Reads a matrix of the given shape.
pub fn matrix_from_json(v: &Value, rows: usize, cols: usize) -> Result<Matrix> {
    let rs = array(v)?;
    if rs.len() != rows {
        return Err(Error::Shape(format!("expected {rows} rows, got {}", rs.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for r in rs {
        let r = array(r)?;
        if r.len() != cols {
            return Err(Error::Shape(format!("expected {cols} columns, got {}", r.len())));
        }
        for x in r {
            data.push(rational_from_json(x)?);
        }
    }
    Matrix::from_vec(rows, cols, data)
}

pub fn path_to_json(s: &QuiverSchema, p: &Path) -> Value {
    if p.is_empty() {
        return json!([["e", vertex_to_json(p.tail())]]);
    }
    Value::Array(p.arrows().iter().map(|a| arrow_to_json(s, *a)).collect())
}

pub fn path_from_json(s: &QuiverSchema, v: &Value) -> Result<Path> {
    let items = array(v)?;
    if let [only] = items.as_slice() {
        if only.get(0).and_then(Value::as_str) == Some("e") {
            let x = vertex_from_json(&only[1])?;
            s.check_vertex(x)?;
            return Ok(Path::trivial(x));
        }
    }
    if items.is_empty() {
        return perr("empty arrow list; write the trivial path as [[\"e\", v]]");
    }
    let arrows = items.iter().map(|a| arrow_from_json(s, a)).collect::<Result<Vec<_>>>()?;
    Path::from_arrows(s, arrows)
}

/// `[[path, "p/q"], ...]`.
pub fn pathsum_to_json(p: &PathSum) -> Value {
    Value::Array(p.terms().map(|(path, c)| json!([path_to_json(p.schema(), path), rational_to_json(c)])).collect())
}

pub fn pathsum_from_json(s: &QuiverSchema, v: &Value) -> Result<PathSum> {
    let mut terms = Vec::new();
    for t in array(v)? {
        let Some([p, c]) = t.as_array().map(|a| a.as_slice()) else {
            return perr(format!("not a [path, coefficient] pair: {t}"));
        };
        terms.push((path_from_json(s, p)?, rational_from_json(c)?));
    }
    PathSum::from_terms(s, terms)
}

/// `{"schema": ..., "generators": [pathsum, ...]}`.
pub fn relations_from_json(v: &Value) -> Result<RelationSet> {
    let s = schema_from_json(field(v, "schema")?)?;
    let gens = array(field(v, "generators")?)?.iter().map(|g| pathsum_from_json(&s, g)).collect::<Result<_>>()?;
    RelationSet::new(&s, None, gens)
}

pub fn rep_to_json(v: &Representation) -> Value {
    let s = v.schema();
    json!({
        "schema": schema_to_json(s),
        "dims": v.dims().iter().map(|(x, d)| json!([vertex_to_json(*x), d])).collect::<Vec<_>>(),
        "mats": v.stored_arrows().map(|(a, m)| json!([arrow_to_json(s, *a), matrix_to_json(m)])).collect::<Vec<_>>(),
    })
}

pub fn rep_from_json(v: &Value) -> Result<Representation> {
    let s = schema_from_json(field(v, "schema")?)?;
    let mut dims = Vec::new();
    for d in array(field(v, "dims")?)? {
        let Some([x, n]) = d.as_array().map(|a| a.as_slice()) else {
            return perr(format!("not a [vertex, dim] pair: {d}"));
        };
        let n = n.as_u64().ok_or_else(|| Error::Parse(format!("bad dimension {n}")))?;
        dims.push((vertex_from_json(x)?, n as usize));
    }
    let dim = |x: VertexId| dims.iter().filter(|(y, _)| *y == x).map(|p| p.1).sum::<usize>();
    let mut mats = Vec::new();
    if let Some(ms) = v.get("mats") {
        for e in array(ms)? {
            let Some([a, m]) = e.as_array().map(|a| a.as_slice()) else {
                return perr(format!("not an [arrow, matrix] pair: {e}"));
            };
            let a = arrow_from_json(&s, a)?;
            let h = s.head(a)?;
            mats.push((a, matrix_from_json(m, dim(h), dim(a.tail))?));
        }
    }
    Representation::new(&s, dims, mats)
}

/// `{"source": rep, "target": rep, "comps": [[vertex, matrix], ...]}`.
pub fn morphism_to_json(f: &RepMorphism) -> Value {
    json!({
        "source": rep_to_json(f.source()),
        "target": rep_to_json(f.target()),
        "comps": f.comps().iter().map(|(x, m)| json!([vertex_to_json(*x), matrix_to_json(m)])).collect::<Vec<_>>(),
    })
}

pub fn morphism_from_json(v: &Value) -> Result<RepMorphism> {
    let src = std::sync::Arc::new(rep_from_json(field(v, "source")?)?);
    let tgt = std::sync::Arc::new(rep_from_json(field(v, "target")?)?);
    let mut comps = Vec::new();
    for e in array(field(v, "comps")?)? {
        let Some([x, m]) = e.as_array().map(|a| a.as_slice()) else {
            return perr(format!("not a [vertex, matrix] pair: {e}"));
        };
        let x = vertex_from_json(x)?;
        comps.push((x, matrix_from_json(m, tgt.dim(x), src.dim(x))?));
    }
    RepMorphism::new(src, tgt, comps)
}

/// `{"kind": "f"}`, `{"kind": "g", "m": 3, "n": 2}`, or
/// `{"kind": "table", "source": schema, "target": schema, "vertices": [[x, y], ...], "arrows": [[a, b], ...]}`.
pub fn quiver_morphism_from_json(v: &Value) -> Result<QuiverMorphism> {
    match field(v, "kind")?.as_str() {
        Some("f") => Ok(morphism_f()),
        Some("g") => morphism_g(int(field(v, "m")?)?, int(field(v, "n")?)?),
        Some("table") => {
            let src = schema_from_json(field(v, "source")?)?;
            let tgt = schema_from_json(field(v, "target")?)?;
            let pairs = |key: &str| -> Result<Vec<(Value, Value)>> {
                array(field(v, key)?)?
                    .iter()
                    .map(|p| match p.as_array().map(|a| a.as_slice()) {
                        Some([a, b]) => Ok((a.clone(), b.clone())),
                        _ => perr(format!("not a pair: {p}")),
                    })
                    .collect()
            };
            let vs = pairs("vertices")?
                .iter()
                .map(|(a, b)| Ok((vertex_from_json(a)?, vertex_from_json(b)?)))
                .collect::<Result<Vec<_>>>()?;
            let arrows = pairs("arrows")?
                .iter()
                .map(|(a, b)| Ok((arrow_from_json(&src, a)?, arrow_from_json(&tgt, b)?)))
                .collect::<Result<Vec<_>>>()?;
            QuiverMorphism::table(src, tgt, vs, arrows)
        }
        _ => perr(format!("unknown morphism kind in {v}")),
    }
}

pub fn quiver_morphism_to_json(phi: &QuiverMorphism) -> Value {
    if let Some((m, n)) = phi.g_params() {
        return json!({"kind": "g", "m": m, "n": n});
    }
    if let Some((vs, arrows)) = phi.table_entries() {
        return json!({
            "kind": "table",
            "source": schema_to_json(phi.source()),
            "target": schema_to_json(phi.target()),
            "vertices": vs.iter().map(|(a, b)| json!([vertex_to_json(*a), vertex_to_json(*b)])).collect::<Vec<_>>(),
            "arrows": arrows.iter().map(|(a, b)| json!([arrow_to_json(phi.source(), *a), arrow_to_json(phi.target(), *b)])).collect::<Vec<_>>(),
        });
    }
    json!({"kind": "f"})
}

/// `[[r, k or [i, j], s, "p/q"], ...]`.
pub fn uelement_to_json(u: &UElement) -> Value {
    Value::Array(u.terms().map(|(m, c)| json!([m.r, vertex_to_json(m.k), m.s, rational_to_json(c)])).collect())
}

pub fn uelement_from_json(v: &Value) -> Result<UElement> {
    let mut terms = Vec::new();
    for t in array(v)? {
        let Some([r, k, s, c]) = t.as_array().map(|a| a.as_slice()) else {
            return perr(format!("not an [r, k, s, coefficient] term: {t}"));
        };
        let exp = |x: &Value| x.as_u64().and_then(|e| u32::try_from(e).ok()).ok_or_else(|| Error::Parse(format!("bad exponent {x}")));
        terms.push((UMonomial::new(exp(r)?, vertex_from_json(k)?, exp(s)?), rational_from_json(c)?));
    }
    Ok(UElement::from_terms(terms))
}
