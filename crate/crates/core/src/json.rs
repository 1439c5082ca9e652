//! JSON formats for presentations, monomial ideals and graded tables.
//!
//! ```json
//! {"field": "q", "vars": 2,
//!  "rows": [{"degree": [0, 0]}],
//!  "cols": [{"degree": [1, 0]}, {"degree": [0, 1]}],
//!  "coeffs": [["1", "1"]]}
//! ```
//!
//! or the shorthand `{"monomial_ideal": {"vars": 2, "gens": [[1, 0], [0, 1]]}}`
//! for a cyclic module `R/I`. Rational entries are strings `"p"` or `"p/q"`;
//! prime-field entries are decimal residues (integers are accepted too).

use serde_json::{json, Map, Value};

use crate::degree::DegreeVector;
use crate::duality::MonomialIdeal;
use crate::error::{Error, ParseError, Result};
use crate::field::{Field, FieldTag};
use crate::koszul::{BassTable, GradedTable};
use crate::linalg::ExactMatrix;
use crate::presentation::Presentation;

pub const FORMAT_VERSION: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(ParseError::Json(msg.into()))
}

fn field_of(v: Option<&Value>) -> Result<Field> {
    match v {
        None => Ok(Field::Rational),
        Some(v) => {
            let tag: FieldTag = serde_json::from_value(v.clone()).map_err(|e| bad(format!("field: {e}")))?;
            Ok(Field::try_from(&tag)?)
        }
    }
}

fn degree_list(v: &Value, what: &str) -> Result<Vec<DegreeVector>> {
    let items = v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))?;
    items
        .iter()
        .map(|item| {
            let deg = item.get("degree").unwrap_or(item);
            serde_json::from_value::<Vec<i64>>(deg.clone())
                .map(DegreeVector)
                .map_err(|e| bad(format!("{what}: {e}")))
        })
        .collect()
}

fn usize_field(obj: &Value, name: &str) -> Result<usize> {
    obj.get(name)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| bad(format!("missing or invalid \"{name}\"")))
}

/// Parses either a full presentation or the monomial-ideal shorthand. An
/// output envelope carrying a `"presentation"` member is unwrapped first.
pub fn presentation_from_value(v: &Value) -> Result<Presentation> {
    if let Some(inner) = v.get("presentation") {
        return presentation_from_value(inner);
    }
    if let Some(mi) = v.get("monomial_ideal") {
        let field = field_of(v.get("field").or_else(|| mi.get("field")))?;
        let vars = usize_field(mi, "vars")?;
        let gens = degree_list(mi.get("gens").ok_or_else(|| bad("missing \"gens\""))?, "gens")?;
        return Presentation::from_monomial_ideal(field, vars, &gens);
    }
    let field = field_of(v.get("field"))?;
    let vars = usize_field(v, "vars")?;
    let rows = degree_list(v.get("rows").ok_or_else(|| bad("missing \"rows\""))?, "rows")?;
    let cols = degree_list(v.get("cols").unwrap_or(&json!([])), "cols")?;
    let raw = match v.get("coeffs") {
        Some(c) => c.as_array().ok_or_else(|| bad("coeffs must be an array of rows"))?.clone(),
        None if cols.is_empty() => vec![json!([]); rows.len()],
        None => return Err(bad("missing \"coeffs\"")),
    };
    if raw.len() != rows.len() {
        return Err(Error::Invalid(vec![crate::error::Violation::DimensionMismatch(format!(
            "coeffs has {} rows, expected {}",
            raw.len(),
            rows.len()
        ))]));
    }
    let mut grid = Vec::with_capacity(raw.len());
    for (t, row) in raw.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| bad(format!("coeffs row {t} must be an array")))?;
        if row.len() != cols.len() {
            return Err(Error::Invalid(vec![crate::error::Violation::DimensionMismatch(format!(
                "coeffs row {t} has {} entries, expected {}",
                row.len(),
                cols.len()
            ))]));
        }
        let parsed = row
            .iter()
            .map(|e| match e {
                Value::String(s) => field.parse_scalar(s).map_err(Error::from),
                Value::Number(n) => field.parse_scalar(&n.to_string()).map_err(Error::from),
                other => Err(Error::Parse(ParseError::Scalar(other.to_string()))),
            })
            .collect::<Result<Vec<_>>>()?;
        grid.push(parsed);
    }
    let coeffs = ExactMatrix::from_rows(field, grid, cols.len());
    Presentation::new(field, vars, rows, cols, coeffs)
}

pub fn presentation_from_str(text: &str) -> Result<Presentation> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    presentation_from_value(&v)
}

pub fn presentation_to_value(p: &Presentation) -> Value {
    let degs = |ds: &[DegreeVector]| -> Value {
        ds.iter().map(|d| json!({ "degree": d.coords() })).collect()
    };
    let coeffs: Vec<Vec<String>> = (0..p.rows())
        .map(|t| p.coeffs().row(t).iter().map(|s| s.to_string()).collect())
        .collect();
    json!({
        "field": p.field().tag(),
        "vars": p.vars(),
        "rows": degs(p.row_degrees()),
        "cols": degs(p.col_degrees()),
        "coeffs": coeffs,
    })
}

/// `{"vars": m, "gens": [[..], ..]}`, also accepted inside a
/// `{"monomial_ideal": ..}` wrapper.
pub fn monomial_ideal_from_value(v: &Value) -> Result<MonomialIdeal> {
    let inner = v.get("monomial_ideal").unwrap_or(v);
    let vars = usize_field(inner, "vars")?;
    let gens = degree_list(inner.get("gens").ok_or_else(|| bad("missing \"gens\""))?, "gens")?;
    MonomialIdeal::new(vars, gens)
}

pub fn monomial_ideal_to_value(i: &MonomialIdeal) -> Value {
    let gens: Vec<&[i64]> = i.gens.iter().map(|g| g.coords()).collect();
    json!({ "vars": i.vars, "gens": gens })
}

pub fn graded_table_to_value(t: &GradedTable) -> Value {
    let by_index: Vec<Value> = t
        .by_index
        .iter()
        .map(|m| {
            let obj: Map<String, Value> = m.iter().map(|(d, v)| (d.key(), json!(v))).collect();
            Value::Object(obj)
        })
        .collect();
    json!({ "vars": t.vars, "by_index": by_index, "totals": t.totals() })
}

pub fn bass_table_to_value(t: &BassTable) -> Value {
    let mut v = graded_table_to_value(&t.table);
    v["prime"] = json!(t.prime);
    v
}

/// Wraps a payload with the version stamps carried by every JSON output.
/// The stamps take precedence over payload members of the same name.
pub fn envelope(kind: &str, payload: Value) -> Value {
    let mut out = Map::new();
    match payload {
        Value::Object(obj) => out.extend(obj),
        other => {
            out.insert("data".into(), other);
        }
    }
    out.insert("format_version".into(), json!(FORMAT_VERSION));
    out.insert("version".into(), json!(VERSION));
    out.insert("kind".into(), json!(kind));
    Value::Object(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_presentation() {
        let p = presentation_from_str(
            r#"{"field":"q","vars":2,"rows":[{"degree":[0,0]}],
                "cols":[{"degree":[1,0]},{"degree":[0,1]}],"coeffs":[["1","-2/3"]]}"#,
        )
        .unwrap();
        assert_eq!((p.rows(), p.cols()), (1, 2));
        assert_eq!(p.coeffs().get(0, 1).to_string(), "-2/3");
    }

    #[test]
    fn parses_prime_field_and_numbers() {
        let p = presentation_from_str(
            r#"{"field":{"fp":7},"vars":1,"rows":[{"degree":[0]}],"cols":[{"degree":[1]}],"coeffs":[[9]]}"#,
        )
        .unwrap();
        assert_eq!(p.field(), Field::Prime(7));
        assert_eq!(p.coeffs().get(0, 0).to_string(), "2");
        assert!(presentation_from_str(r#"{"field":{"fp":8},"vars":1,"rows":[]}"#).is_err());
    }

    #[test]
    fn parses_shorthand() {
        let p = presentation_from_str(r#"{"monomial_ideal":{"vars":2,"gens":[[2,0],[1,1],[0,2]]}}"#).unwrap();
        assert_eq!(p.cols(), 3);
        assert_eq!(p.field(), Field::Rational);
    }

    #[test]
    fn shape_errors() {
        let e = presentation_from_str(
            r#"{"vars":2,"rows":[{"degree":[0,0]}],"cols":[{"degree":[1,0]}],"coeffs":[["1","1"]]}"#,
        );
        assert!(matches!(e, Err(Error::Invalid(_))));
        assert!(matches!(presentation_from_str("{"), Err(Error::Parse(_))));
        let e = presentation_from_str(r#"{"vars":1,"rows":[{"degree":[0]}],"cols":[{"degree":[1]}],"coeffs":[["x"]]}"#);
        assert!(matches!(e, Err(Error::Parse(ParseError::Scalar(_)))));
    }

    #[test]
    fn round_trip() {
        let p = presentation_from_str(
            r#"{"field":{"fp":10007},"vars":2,"rows":[{"degree":[0,1]},{"degree":[1,0]}],
                "cols":[{"degree":[1,1]}],"coeffs":[["5"],["-1"]]}"#,
        )
        .unwrap();
        let back = presentation_from_value(&presentation_to_value(&p)).unwrap();
        assert_eq!(back, p);
        let wrapped = envelope("genex", json!({ "presentation": presentation_to_value(&p) }));
        assert_eq!(presentation_from_value(&wrapped).unwrap(), p);
    }

    #[test]
    fn envelope_stamps_versions() {
        let v = envelope("betti", json!({"totals": [1]}));
        assert_eq!(v["format_version"], 1);
        assert_eq!(v["kind"], "betti");
        assert_eq!(v["totals"], json!([1]));
    }
}
