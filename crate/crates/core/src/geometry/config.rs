//! Text format for point configurations: one point per line as four
//! whitespace-separated rationals (`p/q` or integers), `#` starts a comment.

use std::str::FromStr;

use super::linalg::Rational;
use super::{GeometryError, ProjPoint};

pub fn parse(text: &str) -> Result<Vec<ProjPoint>, GeometryError> {
    let mut points = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let coords = content
            .split_whitespace()
            .map(|tok| {
                Rational::from_str(tok).map_err(|_| GeometryError::Parse {
                    line,
                    message: format!("not a rational number: {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coords.len() != 4 {
            return Err(GeometryError::Parse {
                line,
                message: format!("expected 4 coordinates, got {}", coords.len()),
            });
        }
        let p = ProjPoint::from_rationals(&coords).map_err(|e| GeometryError::Parse {
            line,
            message: e.to_string(),
        })?;
        points.push(p);
    }
    Ok(points)
}

/// Parses and checks the number of points.
pub fn parse_exact(text: &str, expected: &[usize]) -> Result<Vec<ProjPoint>, GeometryError> {
    let points = parse(text)?;
    if !expected.contains(&points.len()) {
        return Err(GeometryError::BadInput(format!(
            "expected {} points, got {}",
            expected
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(" or "),
            points.len()
        )));
    }
    Ok(points)
}

pub fn write(points: &[ProjPoint], comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for l in c.lines() {
            out.push_str("# ");
            out.push_str(l);
            out.push('\n');
        }
    }
    for p in points {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}
