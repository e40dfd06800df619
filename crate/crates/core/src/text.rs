//! The repo-wide matrix text format.
//!
//! ```text
//! #code q2=4 n=3 m=2
//! 4 2 3
//! 1 1 1
//! 2 2 2
//! ```
//!
//! The first non-comment line is `<field order> <rows> <cols>`, followed by one
//! row per line of whitespace-separated element indices. Blank lines and `#`
//! comments are ignored by the matrix reader; comments of the form
//! `#tag key=value ...` are additionally collected as headers.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Header {
    pub tag: String,
    pub fields: BTreeMap<String, String>,
}

impl Header {
    pub fn new(tag: &str, fields: &[(&str, String)]) -> Self {
        Header {
            tag: tag.to_string(),
            fields: fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        }
    }

    pub fn get_usize(&self, key: &str) -> Option<usize> {
        self.fields.get(key).and_then(|v| v.parse().ok())
    }
}

#[derive(Debug, Clone)]
pub struct MatrixFile {
    pub matrix: Matrix,
    pub headers: Vec<Header>,
}

impl MatrixFile {
    pub fn header(&self, tag: &str) -> Option<&Header> {
        self.headers.iter().find(|h| h.tag == tag)
    }
}

fn parse_header(body: &str) -> Option<Header> {
    let mut tokens = body.split_whitespace();
    let tag = tokens.next()?;
    if !tag.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
        return None;
    }
    let mut fields = BTreeMap::new();
    for t in tokens {
        let (k, v) = t.split_once('=')?;
        fields.insert(k.to_string(), v.to_string());
    }
    if fields.is_empty() {
        return None;
    }
    Some(Header { tag: tag.to_string(), fields })
}

pub fn parse_matrix(src: &str) -> Result<MatrixFile> {
    let mut headers = Vec::new();
    let mut shape: Option<(FieldSpec, usize, usize)> = None;
    let mut data = Vec::new();
    let mut rows_seen = 0;
    for (lineno, raw) in src.lines().enumerate() {
        let line_no = lineno + 1;
        let (content, comment) = match raw.find('#') {
            Some(i) => (&raw[..i], Some(&raw[i + 1..])),
            None => (raw, None),
        };
        if let Some(h) = comment.and_then(parse_header) {
            headers.push(h);
        }
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let nums: Vec<u32> = content
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("expected a non-negative integer, found `{t}`"),
                })
            })
            .collect::<Result<_>>()?;
        match &shape {
            None => {
                let [order, rows, cols] = nums[..] else {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "first line must be `<order> <rows> <cols>`".into(),
                    });
                };
                let field = FieldSpec::of_order(order as usize)
                    .map_err(|e| Error::Parse { line: line_no, message: e.to_string() })?;
                shape = Some((field, rows as usize, cols as usize));
            }
            Some((field, rows, cols)) => {
                if rows_seen == *rows {
                    return Err(Error::Parse { line: line_no, message: "more rows than declared".into() });
                }
                if nums.len() != *cols {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected {cols} entries, found {}", nums.len()),
                    });
                }
                for &v in &nums {
                    data.push(field.check(v).map_err(|e| Error::Parse { line: line_no, message: e.to_string() })?);
                }
                rows_seen += 1;
            }
        }
    }
    let (field, rows, cols) = shape.ok_or(Error::Parse { line: 0, message: "missing size line".into() })?;
    if rows_seen != rows {
        return Err(Error::Parse {
            line: src.lines().count(),
            message: format!("declared {rows} rows, found {rows_seen}"),
        });
    }
    Ok(MatrixFile { matrix: Matrix::new(&field, rows, cols, data)?, headers })
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<MatrixFile> {
    let src = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_matrix(&src)
}

pub fn write_matrix(m: &Matrix, headers: &[Header]) -> String {
    let mut out = String::new();
    for h in headers {
        out.push('#');
        out.push_str(&h.tag);
        for (k, v) in &h.fields {
            let _ = write!(out, " {k}={v}");
        }
        out.push('\n');
    }
    let _ = writeln!(out, "{} {} {}", m.field().order(), m.rows(), m.cols());
    for row in m.iter_rows() {
        let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_with_comments_and_headers() {
        let src = "# a code\n#code q2=4 n=3 m=2\n\n4 2 3\n1 1 1  # first\n2 2 2\n";
        let f = parse_matrix(src).unwrap();
        assert_eq!(f.matrix.rows(), 2);
        assert_eq!(f.matrix.row(1), &[2, 2, 2]);
        let h = f.header("code").unwrap();
        assert_eq!(h.get_usize("q2"), Some(4));
        assert_eq!(h.get_usize("m"), Some(2));
        let again = parse_matrix(&write_matrix(&f.matrix, &f.headers)).unwrap();
        assert_eq!(again.matrix, f.matrix);
        assert_eq!(again.headers, f.headers);
    }

    #[test]
    fn empty_matrix() {
        let f = parse_matrix("9 0 4\n").unwrap();
        assert_eq!(f.matrix.rows(), 0);
        assert_eq!(f.matrix.cols(), 4);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_matrix("4 1 2\n1 4\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_matrix("4 2 2\n1 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix("6 1 1\n1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_matrix("4 1 2\n1 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_matrix("4 1 2\n1 1 1\n"), Err(Error::Parse { line: 2, .. })));
    }
}
