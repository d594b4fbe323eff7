//! Matrix file formats.
//!
//! Text: a header line `<ring> <rows> <cols>` with ring one of
//! `Z`, `Q`, `Fp:<p>`, `Zx`, `Fpx:<p>`, `Qx`, followed by `rows` lines of
//! whitespace-separated scalars in the shared grammar. Blank lines are
//! ignored, which also makes blank-line-separated streams of matrices easy
//! to produce and consume.
//!
//! JSON: `{"ring": ..., "rows": ..., "cols": ..., "entries": [...]}` with
//! the same ring tokens and canonical scalar strings, row-major.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{parse_scalar, Ring};
use serde_json::{json, Value};

/// Canonical text form. Zero-dimensional matrices have no text form
/// (they only arise as intermediate values).
pub fn to_text(m: &Matrix) -> Result<String> {
    if m.rows() == 0 || m.cols() == 0 {
        return Err(Error::InvalidArgument(
            "text format requires positive dimensions".into(),
        ));
    }
    let mut out = format!("{} {} {}\n", m.ring().token()?, m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|j| m.ring().format_scalar(m.entry(i, j)))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    Ok(out)
}

/// Parse one matrix in text form. Input may carry surrounding blank lines.
pub fn parse_text(s: &str) -> Result<Matrix> {
    let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse("line 1", "empty input; expected `<ring> <rows> <cols>`"))?;
    let m = parse_with_header(header_no, header, &mut lines)?;
    if let Some((n, _)) = lines.next() {
        return Err(Error::parse(
            format!("line {}", n + 1),
            "unexpected extra input after matrix",
        ));
    }
    Ok(m)
}

/// Parse a blank-line-friendly stream of matrices (used by commands that
/// accept several inputs on stdin).
pub fn parse_text_stream(s: &str) -> Result<Vec<Matrix>> {
    let mut lines = s
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .peekable();
    let mut out = Vec::new();
    while let Some((header_no, header)) = lines.next() {
        out.push(parse_with_header(header_no, header, &mut lines)?);
    }
    Ok(out)
}

fn parse_with_header<'a>(
    header_no: usize,
    header: &str,
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<Matrix> {
    let at = |n: usize| format!("line {}", n + 1);
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 {
        return Err(Error::parse(
            at(header_no),
            "expected header `<ring> <rows> <cols>`",
        ));
    }
    let ring = Ring::from_token(toks[0])?;
    let dim = |t: &str, name: &str| -> Result<usize> {
        t.parse::<usize>().ok().filter(|&d| d > 0).ok_or_else(|| {
            Error::parse(at(header_no), format!("{name} must be a positive integer"))
        })
    };
    let rows = dim(toks[1], "rows")?;
    let cols = dim(toks[2], "cols")?;

    let mut entries = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let (line_no, line) = lines.next().ok_or_else(|| {
            Error::parse(
                at(header_no),
                format!("expected {rows} rows, input ended after {i}"),
            )
        })?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != cols {
            return Err(Error::parse(
                at(line_no),
                format!("expected {cols} entries, got {}", toks.len()),
            ));
        }
        for (k, tok) in toks.iter().enumerate() {
            let scalar = parse_scalar(&ring, tok).map_err(|e| match e {
                Error::Parse { location, message } => Error::Parse {
                    location: format!("{}, entry {} ({location})", at(line_no), k + 1),
                    message,
                },
                other => other,
            })?;
            entries.push(scalar);
        }
    }
    Ok(Matrix::from_payloads(ring, rows, cols, entries))
}

/// JSON mirror of the text format.
pub fn to_json(m: &Matrix) -> Result<Value> {
    let entries: Vec<String> = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| m.ring().format_scalar(m.entry(i, j))))
        .collect();
    Ok(json!({
        "ring": m.ring().token()?,
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": entries,
    }))
}

pub fn from_json(v: &Value) -> Result<Matrix> {
    let bad = |msg: &str| Error::parse("json", msg);
    let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
    let ring_tok = obj
        .get("ring")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("missing string field `ring`"))?;
    let ring = Ring::from_token(ring_tok)?;
    let get_dim = |name: &str| -> Result<usize> {
        obj.get(name)
            .and_then(Value::as_u64)
            .map(|d| d as usize)
            .ok_or_else(|| bad(&format!("missing integer field `{name}`")))
    };
    let rows = get_dim("rows")?;
    let cols = get_dim("cols")?;
    let entries_json = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing array field `entries`"))?;
    if entries_json.len() != rows * cols {
        return Err(bad(&format!(
            "entries length {} does not match {rows}×{cols}",
            entries_json.len()
        )));
    }
    let mut entries = Vec::with_capacity(entries_json.len());
    for (k, e) in entries_json.iter().enumerate() {
        let text = e
            .as_str()
            .ok_or_else(|| bad(&format!("entry {} is not a string", k + 1)))?;
        let scalar = parse_scalar(&ring, text).map_err(|e| match e {
            Error::Parse { location, message } => Error::Parse {
                location: format!("json entry {} ({location})", k + 1),
                message,
            },
            other => other,
        })?;
        entries.push(scalar);
    }
    Ok(Matrix::from_payloads(ring, rows, cols, entries))
}

pub fn from_json_str(s: &str) -> Result<Matrix> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::parse("json", e.to_string()))?;
    from_json(&v)
}
