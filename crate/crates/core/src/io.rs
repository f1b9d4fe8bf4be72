//! Polygon spec files and JSON output helpers.
//!
//! A spec is either `{"vertices": [[x, y], ...]}` or
//! `{"lengths": [...], "angles_pi": [...]}`; in the second form entries may be
//! numbers or exact rational strings such as `"1/2"`.

use std::f64::consts::PI;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::charpoly::TrigPoly;
use crate::exact::{parse_rational, q_to_f64, ExactBoundaryData, Q};
use crate::geometry::{
    extract_boundary_data, BoundaryData, ConvexPolygon, PartialBoundaryData, PlanarPoint,
};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("malformed JSON at line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
    #[error("{0}")]
    Shape(String),
    #[error("{0}")]
    Geometry(#[from] crate::geometry::GeometryError),
}

/// A parsed spec; `exact` is present for length/angle specs.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonSpec {
    pub data: BoundaryData,
    pub exact: Option<ExactBoundaryData>,
}

fn rational_entry(v: &Value, what: &str, i: usize) -> Result<Q, SpecError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(SpecError::Shape(format!("{what}[{i}] must be a number or a rational string"))),
    };
    parse_rational(&text).map_err(|e| SpecError::Shape(format!("{what}[{i}]: {e}")))
}

fn array<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Vec<Value>, SpecError> {
    obj.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| SpecError::Shape(format!("\"{key}\" must be an array")))
}

pub fn parse_polygon_spec(text: &str) -> Result<PolygonSpec, SpecError> {
    let v: Value = serde_json::from_str(text).map_err(|e| SpecError::Json {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    let obj = v
        .as_object()
        .ok_or_else(|| SpecError::Shape("top level must be an object".into()))?;
    if obj.contains_key("vertices") {
        let pts = array(obj, "vertices")?
            .iter()
            .enumerate()
            .map(|(i, p)| match p.as_array().map(|a| a.as_slice()) {
                Some([x, y]) => match (x.as_f64(), y.as_f64()) {
                    (Some(x), Some(y)) => Ok(PlanarPoint::new(x, y)),
                    _ => Err(SpecError::Shape(format!("vertices[{i}] must hold two numbers"))),
                },
                _ => Err(SpecError::Shape(format!("vertices[{i}] must be [x, y]"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let poly = ConvexPolygon::new_any_orientation(pts)?;
        return Ok(PolygonSpec {
            data: extract_boundary_data(&poly),
            exact: None,
        });
    }
    if obj.contains_key("lengths") {
        let lengths = array(obj, "lengths")?
            .iter()
            .enumerate()
            .map(|(i, x)| rational_entry(x, "lengths", i))
            .collect::<Result<Vec<_>, _>>()?;
        let angles_pi = array(obj, "angles_pi")?
            .iter()
            .enumerate()
            .map(|(i, x)| rational_entry(x, "angles_pi", i))
            .collect::<Result<Vec<_>, _>>()?;
        let exact = ExactBoundaryData { lengths, angles_pi };
        exact.validate().map_err(SpecError::Shape)?;
        let data = exact.to_float();
        return Ok(PolygonSpec { data, exact: Some(exact) });
    }
    Err(SpecError::Shape("expected \"vertices\" or \"lengths\" + \"angles_pi\"".into()))
}

/// Lengths with angles where `null` marks a blank to reconstruct.
pub fn parse_partial_spec(text: &str) -> Result<PartialBoundaryData, SpecError> {
    let v: Value = serde_json::from_str(text).map_err(|e| SpecError::Json {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    let obj = v
        .as_object()
        .ok_or_else(|| SpecError::Shape("top level must be an object".into()))?;
    let lengths = array(obj, "lengths")?
        .iter()
        .enumerate()
        .map(|(i, x)| rational_entry(x, "lengths", i).map(|q| q_to_f64(&q)))
        .collect::<Result<Vec<_>, _>>()?;
    let angles = array(obj, "angles_pi")?
        .iter()
        .enumerate()
        .map(|(i, x)| match x {
            Value::Null => Ok(None),
            _ => rational_entry(x, "angles_pi", i).map(|q| Some(q_to_f64(&q) * PI)),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PartialBoundaryData::new(lengths, angles))
}

/// Integral values print as integers, everything else as the shortest float.
pub fn number(x: f64) -> Value {
    let r = x.round();
    if (x - r).abs() <= 1e-12 * x.abs().max(1.0) && r.abs() < 9.0e15 {
        json!(r as i64)
    } else {
        json!(x)
    }
}

pub fn trig_poly_json(p: &TrigPoly) -> Value {
    json!({
        "terms": p.terms.iter().map(|(f, a)| json!([number(*f), number(*a)])).collect::<Vec<_>>(),
        "constant": number(p.constant),
    })
}

pub fn boundary_data_json(d: &BoundaryData) -> Value {
    json!({
        "lengths": d.lengths.iter().map(|x| number(*x)).collect::<Vec<_>>(),
        "angles_pi": d.angles.iter().map(|a| number(a / PI)).collect::<Vec<_>>(),
    })
}

pub fn exact_data_json(d: &ExactBoundaryData) -> Value {
    json!({
        "lengths": d.lengths.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        "angles_pi": d.angles_pi.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_spec() {
        let s = parse_polygon_spec(r#"{"lengths": [1, 1, 1, 1], "angles_pi": ["1/2", "1/2", 0.5, "1/2"]}"#).unwrap();
        assert_eq!(s.data.n(), 4);
        assert!(s.exact.is_some());
    }

    #[test]
    fn vertex_spec_any_orientation() {
        let s = parse_polygon_spec(r#"{"vertices": [[0,0],[0,3],[4,0]]}"#).unwrap();
        let mut l = s.data.lengths.clone();
        l.sort_by(f64::total_cmp);
        assert!((l[0] - 3.0).abs() < 1e-12 && (l[2] - 5.0).abs() < 1e-12);
    }

    #[test]
    fn malformed_reports_position() {
        match parse_polygon_spec("{\n \"lengths\": [1,,2]}") {
            Err(SpecError::Json { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn partial_spec_blanks() {
        let p = parse_partial_spec(r#"{"lengths": [3, 4, 5], "angles_pi": [null, "1/2", null]}"#).unwrap();
        assert_eq!(p.blank_count(), 2);
    }

    #[test]
    fn integral_numbers() {
        assert_eq!(number(3.0).to_string(), "3");
        assert_eq!(number(0.25).to_string(), "0.25");
    }
}
