//! Plain-text polytope format.
//!
//! One polytope per line, vertices separated by `;` and coordinates by `,`:
//!
//! ```text
//! # S^3_2
//! 0,0,0; 2,0,0; 0,3,0; 0,0,18
//! ```
//!
//! Whitespace is ignored and `#` starts a comment that runs to the end of the
//! line. Blank lines are skipped.

use std::fmt::Write as _;

use crate::exact::LatticePoint;
use crate::{Error, Result};

use super::Polytope;

/// A polytope of either supported ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyPolytope {
    Two(Polytope<2>),
    Three(Polytope<3>),
}

/// Strips comments and whitespace; `None` for lines without content.
fn content(line: &str) -> Option<String> {
    let body = line.split('#').next().unwrap_or("");
    let s: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    (!s.is_empty()).then_some(s)
}

fn parse_rows(s: &str, line: usize) -> Result<Vec<Vec<i64>>> {
    let rows: Vec<Vec<i64>> = s
        .split(';')
        .filter(|v| !v.is_empty())
        .map(|v| {
            v.split(',')
                .map(|x| {
                    x.parse::<i64>().map_err(|e| Error::Parse {
                        line,
                        msg: format!("bad coordinate {x:?}: {e}"),
                    })
                })
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    let Some(first) = rows.first() else {
        return Err(Error::Parse {
            line,
            msg: "no vertices".into(),
        });
    };
    let d = first.len();
    if let Some(bad) = rows.iter().find(|r| r.len() != d) {
        return Err(Error::Parse {
            line,
            msg: format!("mixed dimensions {} and {}", d, bad.len()),
        });
    }
    Ok(rows)
}

fn to_points<const D: usize>(rows: &[Vec<i64>], line: usize) -> Result<Vec<LatticePoint<D>>> {
    rows.iter()
        .map(|r| {
            <[i64; D]>::try_from(r.as_slice())
                .map(LatticePoint)
                .map_err(|_| Error::Parse {
                    line,
                    msg: format!("expected {D} coordinates, found {}", r.len()),
                })
        })
        .collect()
}

/// Parses a single line into points; `Ok(None)` for blank or comment lines.
pub fn parse_points<const D: usize>(
    line: &str,
    line_no: usize,
) -> Result<Option<Vec<LatticePoint<D>>>> {
    match content(line) {
        None => Ok(None),
        Some(s) => to_points(&parse_rows(&s, line_no)?, line_no).map(Some),
    }
}

/// Parses every polytope in `text`, returning `(line number, polytope)` pairs.
pub fn parse_polytopes<const D: usize>(text: &str) -> Result<Vec<(usize, Polytope<D>)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(pts) = parse_points::<D>(line, i + 1)? {
            out.push((i + 1, Polytope::convex_hull(&pts)?));
        }
    }
    Ok(out)
}

/// Parses polytopes of mixed dimension, deciding by coordinate count.
pub fn parse_any(text: &str) -> Result<Vec<(usize, AnyPolytope)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let Some(s) = content(line) else { continue };
        let rows = parse_rows(&s, line_no)?;
        let p = match rows[0].len() {
            2 => AnyPolytope::Two(Polytope::convex_hull(&to_points::<2>(&rows, line_no)?)?),
            3 => AnyPolytope::Three(Polytope::convex_hull(&to_points::<3>(&rows, line_no)?)?),
            d => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("unsupported dimension {d}"),
                })
            }
        };
        out.push((line_no, p));
    }
    Ok(out)
}

pub fn format_points<const D: usize>(points: &[LatticePoint<D>]) -> String {
    let mut s = String::new();
    for (i, p) in points.iter().enumerate() {
        if i > 0 {
            s.push(';');
        }
        write!(s, "{p}").unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# header\n\n 0,0,0 ; 2,0,0;0,3,0; 0,0,18  # S\n";
        let ps = parse_polytopes::<3>(text).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].0, 3);
        assert_eq!(ps[0].1.to_string(), "0,0,0;0,0,18;0,3,0;2,0,0");
        let again = parse_polytopes::<3>(&ps[0].1.to_string()).unwrap();
        assert_eq!(again[0].1, ps[0].1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_polytopes::<3>("0,0,0;1,0,0;0,1,0;0,0,1\n0,0;1,x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_any("1,2;3,4,5").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn mixed_dimensions() {
        let ps = parse_any("0,0;3,0;0,3\n0,0,0;1,0,0;0,1,0;0,0,1").unwrap();
        assert!(matches!(ps[0].1, AnyPolytope::Two(_)));
        assert!(matches!(ps[1].1, AnyPolytope::Three(_)));
    }
}
