//! Canonical JSON documents: sorted keys, rationals as lowest-terms strings.

use serde_json::{json, Map, Value};

use crate::cones::{ConvexBody, MarkedCone, PolyCone};
use crate::error::{Error, Result};
use crate::linearizer::MultilinearObjective;
use crate::moments::{Measure, MomentPencil, PolyMap};
use crate::poly::Poly;
use crate::qlinalg::{format_rational, parse_rational, QMatrix, QVector, Rational};

pub fn q_json(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

pub fn vec_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(q_json).collect())
}

pub fn vecs_json(vs: &[QVector]) -> Value {
    Value::Array(vs.iter().map(|v| vec_json(v)).collect())
}

pub fn matrix_json(m: &QMatrix) -> Value {
    vecs_json(&m.row_vectors())
}

pub fn parse_q(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap_or_default().into())),
        Value::Number(n) if n.is_u64() => Ok(Rational::from_integer(n.as_u64().unwrap_or_default().into())),
        _ => Err(Error::Parse(format!("expected a rational string or integer, got {v}"))),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("{what} must be an array")))
}

pub fn parse_vec(v: &Value) -> Result<QVector> {
    array(v, "vector")?.iter().map(parse_q).collect()
}

pub fn parse_vecs(v: &Value) -> Result<Vec<QVector>> {
    array(v, "vector list")?.iter().map(parse_vec).collect()
}

fn parse_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse(format!("{what} must be a nonnegative integer")))
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Parse(format!("missing field \"{key}\"")))
}

fn parse_matrix(v: &Value) -> Result<QMatrix> {
    let rows = parse_vecs(v)?;
    if rows.is_empty() {
        return Ok(QMatrix::zeros(0, 0));
    }
    QMatrix::from_rows(&rows)
}

/// A document: `kind`, payload fields and an optional provenance block.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub kind: String,
    pub payload: Map<String, Value>,
    pub provenance: Option<Value>,
}

impl Document {
    pub fn new(kind: &str, payload: Value) -> Self {
        let payload = match payload {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        Document { kind: kind.into(), payload, provenance: None }
    }

    pub fn with_provenance(mut self, p: Value) -> Self {
        self.provenance = Some(p);
        self
    }

    pub fn to_value(&self) -> Value {
        let mut m = self.payload.clone();
        m.insert("kind".into(), Value::String(self.kind.clone()));
        if let Some(p) = &self.provenance {
            m.insert("provenance".into(), p.clone());
        }
        Value::Object(m)
    }

    /// Pretty-printed with sorted keys and a trailing newline.
    pub fn to_canonical_string(&self) -> String {
        canonical_string(&self.to_value())
    }

    pub fn from_value(v: Value) -> Result<Self> {
        let Value::Object(mut m) = v else {
            return Err(Error::Parse("document must be a JSON object".into()));
        };
        let kind = match m.remove("kind") {
            Some(Value::String(s)) => s,
            _ => return Err(Error::Parse("document has no string \"kind\" field".into())),
        };
        let provenance = m.remove("provenance");
        Ok(Document { kind, payload: m, provenance })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        Self::from_value(v)
    }

    pub fn payload_value(&self) -> Value {
        Value::Object(self.payload.clone())
    }

    fn expect_kind(&self, kind: &str) -> Result<()> {
        if self.kind != kind {
            return Err(Error::Input(format!("expected a {kind} document, got {}", self.kind)));
        }
        Ok(())
    }
}

pub fn canonical_string(v: &Value) -> String {
    // serde_json's default map is ordered by key.
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn cone_doc(c: &PolyCone) -> Document {
    Document::new("cone", json!({"dim": c.dim(), "rays": vecs_json(c.rays())}))
}

pub fn parse_cone(d: &Document) -> Result<PolyCone> {
    d.expect_kind("cone")?;
    let v = d.payload_value();
    let dim = parse_usize(field(&v, "dim")?, "dim")?;
    PolyCone::new(dim, &parse_vecs(field(&v, "rays")?)?)
}

pub fn body_doc(b: &ConvexBody) -> Document {
    Document::new("body", json!({"dim": b.dim(), "vertices": vecs_json(b.vertices())}))
}

pub fn parse_body(d: &Document) -> Result<ConvexBody> {
    d.expect_kind("body")?;
    let v = d.payload_value();
    let dim = parse_usize(field(&v, "dim")?, "dim")?;
    ConvexBody::hull_of(dim, &parse_vecs(field(&v, "vertices")?)?)
}

pub fn marked_cone_doc(m: &MarkedCone) -> Document {
    Document::new(
        "marked-cone",
        json!({
            "cone": {"dim": m.cone.dim(), "rays": vecs_json(m.cone.rays())},
            "grading": vec_json(&m.grading),
            "section": vec_json(&m.section),
        }),
    )
}

pub fn parse_marked_cone(d: &Document) -> Result<MarkedCone> {
    d.expect_kind("marked-cone")?;
    let v = d.payload_value();
    let c = field(&v, "cone")?;
    let cone = PolyCone::new(parse_usize(field(c, "dim")?, "dim")?, &parse_vecs(field(c, "rays")?)?)?;
    MarkedCone::new(cone, parse_vec(field(&v, "grading")?)?, parse_vec(field(&v, "section")?)?)
}

fn nest(coeffs: &[Rational], dims: &[usize]) -> Value {
    match dims {
        [] => q_json(&coeffs[0]),
        [_] => vec_json(coeffs),
        [_, rest @ ..] => {
            let stride: usize = rest.iter().product();
            Value::Array(coeffs.chunks(stride).map(|c| nest(c, rest)).collect())
        }
    }
}

fn flatten(v: &Value, dims: &[usize], out: &mut Vec<Rational>) -> Result<()> {
    match dims {
        [] => out.push(parse_q(v)?),
        [d, rest @ ..] => {
            let a = array(v, "coefficient tensor")?;
            if a.len() != *d {
                return Err(Error::Dimension(format!("coefficient array of length {} where {d} was expected", a.len())));
            }
            for x in a {
                flatten(x, rest, out)?;
            }
        }
    }
    Ok(())
}

pub fn objective_doc(t: &MultilinearObjective) -> Document {
    Document::new(
        "objective",
        json!({
            "order": t.order(),
            "lift_dims": t.lift_dims(),
            "coeffs": nest(t.coeffs(), t.lift_dims()),
            "symmetric": t.symmetric(),
        }),
    )
}

pub fn parse_objective(d: &Document) -> Result<MultilinearObjective> {
    d.expect_kind("objective")?;
    let v = d.payload_value();
    let dims: Vec<usize> =
        array(field(&v, "lift_dims")?, "lift_dims")?.iter().map(|x| parse_usize(x, "lift_dims entry")).collect::<Result<_>>()?;
    if let Some(order) = v.get("order") {
        if parse_usize(order, "order")? != dims.len() {
            return Err(Error::Dimension("order does not match the number of lift_dims".into()));
        }
    }
    let mut coeffs = Vec::new();
    flatten(field(&v, "coeffs")?, &dims, &mut coeffs)?;
    let symmetric = v.get("symmetric").and_then(Value::as_bool).unwrap_or(false);
    MultilinearObjective::new(dims, coeffs, symmetric)
}

fn exps_json(es: &[Vec<u32>]) -> Value {
    json!(es)
}

pub fn pencil_doc(p: &MomentPencil) -> Document {
    Document::new(
        "pencil",
        json!({
            "k": p.k,
            "monomials": exps_json(&p.monomials),
            "M": Value::Array(p.matrices.iter().map(matrix_json).collect()),
        }),
    )
}

fn parse_exponent(v: &Value) -> Result<Vec<u32>> {
    array(v, "exponent")?
        .iter()
        .map(|x| x.as_u64().map(|e| e as u32).ok_or_else(|| Error::Parse("exponents must be nonnegative integers".into())))
        .collect()
}

pub fn parse_pencil(d: &Document) -> Result<MomentPencil> {
    d.expect_kind("pencil")?;
    let v = d.payload_value();
    let k = parse_usize(field(&v, "k")?, "k")? as u32;
    let monomials = array(field(&v, "monomials")?, "monomials")?.iter().map(parse_exponent).collect::<Result<_>>()?;
    let mats = array(field(&v, "M")?, "M")?.iter().map(parse_matrix).collect::<Result<_>>()?;
    MomentPencil::new(k, monomials, mats)
}

pub fn measure_json(m: &Measure) -> Value {
    match m {
        Measure::FinitePoints { points, weights } => {
            json!({"type": "points", "points": vecs_json(points), "weights": vec_json(weights)})
        }
        Measure::BoxLebesgue { lower, upper } => json!({"type": "box", "lower": vec_json(lower), "upper": vec_json(upper)}),
        Measure::Product(fs) => json!({"type": "product", "factors": fs.iter().map(measure_json).collect::<Vec<_>>()}),
    }
}

/// `{"type": "points", "points", "weights"?}`, `{"type": "box", "lower", "upper"}`
/// or `{"type": "product", "factors"}`.
pub fn parse_measure(v: &Value) -> Result<Measure> {
    match field(v, "type")?.as_str() {
        Some("points") => {
            let pts = parse_vecs(field(v, "points")?)?;
            match v.get("weights") {
                Some(w) => Measure::finite(pts, parse_vec(w)?),
                None => Measure::counting(pts),
            }
        }
        Some("box") => Measure::lebesgue(parse_vec(field(v, "lower")?)?, parse_vec(field(v, "upper")?)?),
        Some("product") => Measure::product(array(field(v, "factors")?, "factors")?.iter().map(parse_measure).collect::<Result<_>>()?),
        _ => Err(Error::Parse("measure type must be \"points\", \"box\" or \"product\"".into())),
    }
}

/// Components as lists of `[exponent, coefficient]` terms.
pub fn map_json(t: &PolyMap) -> Value {
    let comps: Vec<Value> = t
        .components()
        .iter()
        .map(|c| Value::Array(c.terms().map(|(e, q)| json!([e, q_json(q)])).collect()))
        .collect();
    json!({"nvars": t.nvars(), "components": comps})
}

pub fn parse_map(v: &Value) -> Result<PolyMap> {
    let n = parse_usize(field(v, "nvars")?, "nvars")?;
    let comps = array(field(v, "components")?, "components")?
        .iter()
        .map(|c| {
            let terms = array(c, "component")?
                .iter()
                .map(|t| match t.as_array().map(Vec::as_slice) {
                    Some([e, q]) => Ok((parse_exponent(e)?, parse_q(q)?)),
                    _ => Err(Error::Parse("map terms must be [exponent, coefficient] pairs".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            Poly::from_terms(n, terms)
        })
        .collect::<Result<_>>()?;
    PolyMap::new(comps)
}

pub fn error_json(e: &Error) -> Value {
    json!({"error": {"code": e.code(), "message": e.to_string(), "exit_code": e.exit_code()}})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{qf, qvec};

    #[test]
    fn rationals_round_trip() {
        let v = vec![qf(-3, 4), qf(6, 3), qf(0, 1)];
        assert_eq!(vec_json(&v), json!(["-3/4", "2", "0"]));
        assert_eq!(parse_vec(&json!(["-3/4", 2, "0"])).unwrap(), v);
        assert!(parse_q(&json!(0.5)).is_err());
    }

    #[test]
    fn documents_round_trip_byte_exact() {
        let b = ConvexBody::cube(2);
        let s = body_doc(&b).with_provenance(json!({"tool": "cvxfun"})).to_canonical_string();
        let d = Document::parse(&s).unwrap();
        assert_eq!(d.to_canonical_string(), s);
        assert_eq!(parse_body(&d).unwrap(), b);
        assert!(parse_cone(&d).is_err());
    }

    #[test]
    fn objective_nesting() {
        let t = MultilinearObjective::new(vec![2, 3], qvec(&[1, 2, 3, 4, 5, 6]), false).unwrap();
        let d = objective_doc(&t);
        assert_eq!(d.payload["coeffs"], json!([["1", "2", "3"], ["4", "5", "6"]]));
        assert_eq!(parse_objective(&Document::parse(&d.to_canonical_string()).unwrap()).unwrap(), t);
    }

    #[test]
    fn measures_and_maps() {
        let m = parse_measure(&json!({"type": "points", "points": [[-1], [1]]})).unwrap();
        assert_eq!(m.nvars(), 1);
        let t = parse_map(&json!({"nvars": 2, "components": [[[[1, 1], "1"]], [[[1, 0], 1], [[0, 0], "-1/2"]]]})).unwrap();
        assert_eq!(t.target_dim(), 2);
        assert_eq!(parse_map(&map_json(&t)).unwrap(), t);
        assert_eq!(parse_measure(&measure_json(&m)).unwrap(), m);
    }
}
