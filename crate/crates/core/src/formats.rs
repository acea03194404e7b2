//! Text formats for paths, chains, tables and reports.

use std::fmt::Write;

use num_complex::Complex64;
use serde_json::Value;
use thiserror::Error;

use crate::conformal::QualityReport;
use crate::continuation::ContinuationChain;
use crate::monodromy::TruthTable;
use crate::path::{validate_path, LogLift, PathError, PathPolyline};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("malformed input at `{field}`: {message}")]
    Malformed { field: String, message: String },
    #[error(transparent)]
    InvalidPath(#[from] PathError),
}

fn malformed(field: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Malformed { field: field.into(), message: message.into() }
}

/// Parses `{"points": [[re, im], ...]}`.
pub fn parse_path_json(text: &str) -> Result<PathPolyline, FormatError> {
    let root: Value = serde_json::from_str(text).map_err(|e| malformed("points", format!("invalid JSON: {e}")))?;
    let list = root
        .get("points")
        .ok_or_else(|| malformed("points", "missing"))?
        .as_array()
        .ok_or_else(|| malformed("points", "expected an array of [re, im] pairs"))?;
    let mut pts = Vec::with_capacity(list.len());
    for (i, item) in list.iter().enumerate() {
        let field = format!("points[{i}]");
        let pair = item.as_array().filter(|a| a.len() == 2).ok_or_else(|| malformed(&field, "expected [re, im]"))?;
        let re = pair[0].as_f64().ok_or_else(|| malformed(format!("{field}[0]"), "expected a number"))?;
        let im = pair[1].as_f64().ok_or_else(|| malformed(format!("{field}[1]"), "expected a number"))?;
        pts.push(Complex64::new(re, im));
    }
    Ok(validate_path(pts)?)
}

pub fn path_json(path: &PathPolyline) -> String {
    let points: Vec<[f64; 2]> = path.points().iter().map(|z| [z.re, z.im]).collect();
    serde_json::json!({ "points": points }).to_string()
}

pub fn chain_csv(chain: &ContinuationChain) -> String {
    let mut out = String::from("t,center_re,center_im,radius_est\n");
    for (g, t) in chain.elements.iter().zip(&chain.breakpoints) {
        let c = g.center();
        writeln!(out, "{t},{},{},{}", c.re, c.im, g.radius_est()).unwrap();
    }
    out
}

pub fn table_csv(table: &TruthTable) -> String {
    let mut out = String::from("M,N,omega_re,omega_im,lift_re,lift_im,verdict\n");
    for r in &table.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.m, r.n, r.omega.re, r.omega.im, r.lift_end.re, r.lift_end.im, r.verdict
        )
        .unwrap();
    }
    writeln!(out, "theorem_b: {}", if table.theorem_b { "PASS" } else { "FAIL" }).unwrap();
    out
}

pub fn lift_csv(lift: &LogLift) -> String {
    points_csv(&lift.points)
}

/// `re,im` rows, e.g. lift samples or polygon corners.
pub fn points_csv(points: &[Complex64]) -> String {
    let mut out = String::from("re,im\n");
    for z in points {
        writeln!(out, "{},{}", z.re, z.im).unwrap();
    }
    out
}

pub fn map_report_json(report: &QualityReport) -> String {
    serde_json::to_string_pretty(report).expect("plain numeric struct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::circle_loop;

    #[test]
    fn path_round_trip() {
        let p = circle_loop(0.5, 1, 16);
        let q = parse_path_json(&path_json(&p)).unwrap();
        assert_eq!(p.points(), q.points());
    }

    #[test]
    fn malformed_inputs_name_the_field() {
        for (text, field) in [
            ("{", "points"),
            ("{}", "points"),
            (r#"{"points": 3}"#, "points"),
            (r#"{"points": [[1, 0], [2]]}"#, "points[1]"),
            (r#"{"points": [[1, "x"]]}"#, "points[0][1]"),
        ] {
            match parse_path_json(text) {
                Err(FormatError::Malformed { field: f, .. }) => assert_eq!(f, field, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(matches!(
            parse_path_json(r#"{"points": [[1, 0], [-1, 0]]}"#),
            Err(FormatError::InvalidPath(PathError::SegmentThroughOrigin { segment: 0 }))
        ));
    }
}
