//! Text file formats for dualities and codes.
//!
//! Duality file: `p e` on the first line, then `e` rows of `e` integers in
//! `[0, p)`. Code file: `p e n k`, then `k` rows of `n` integers in
//! `[0, p^e)`, each the little-endian base-`p` encoding of one coordinate.
//! Blank lines are skipped; line numbers in errors count them.

use addhull_core::{AdditiveCode, Duality, FpMatrix, GfElement, PrimePowerParams};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: expected {expected} more row(s)")]
    Truncated { expected: usize },
    #[error(transparent)]
    Invalid(#[from] addhull_core::Error),
}

impl FormatError {
    fn at(line: usize, message: impl Into<String>) -> FormatError {
        FormatError::Syntax { line, message: message.into() }
    }

    /// Malformed text, as opposed to well-formed text describing an object
    /// that fails validation.
    pub fn is_syntax(&self) -> bool {
        !matches!(self, FormatError::Invalid(_))
    }
}

/// Non-blank lines with their 1-based line numbers.
fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty())
}

fn integers(line: usize, text: &str) -> Result<Vec<u64>, FormatError> {
    text.split_whitespace()
        .map(|tok| tok.parse::<u64>().map_err(|err| FormatError::at(line, format!("bad integer {tok:?}: {err}"))))
        .collect()
}

fn field_params(line: usize, p: u64, e: u64) -> Result<PrimePowerParams, FormatError> {
    let e = usize::try_from(e).map_err(|_| FormatError::at(line, "extension degree overflows"))?;
    PrimePowerParams::new(p, e).map_err(|err| FormatError::at(line, err.to_string()))
}

pub fn parse_duality(text: &str) -> Result<Duality, FormatError> {
    let mut lines = numbered_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| FormatError::at(1, "empty input"))?;
    let header = integers(hline, header)?;
    let [p, e] = header[..] else {
        return Err(FormatError::at(hline, format!("expected `p e`, found {} value(s)", header.len())));
    };
    let params = field_params(hline, p, e)?;
    let e = params.e();
    let mut data = Vec::with_capacity(e * e);
    for r in 0..e {
        let (line, text) = lines.next().ok_or(FormatError::Truncated { expected: e - r })?;
        let row = integers(line, text)?;
        if row.len() != e {
            return Err(FormatError::at(line, format!("expected {e} entries, found {}", row.len())));
        }
        for v in row {
            if v >= p {
                return Err(FormatError::at(line, format!("entry {v} is not below p = {p}")));
            }
            data.push(v as u32);
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(FormatError::at(line, "trailing content after the matrix"));
    }
    let matrix = FpMatrix::from_vec(params.field(), e, e, data)?;
    Ok(Duality::new(params, matrix)?)
}

pub fn write_duality(m: &Duality) -> String {
    let params = m.params();
    let mut out = format!("{} {}\n", params.p(), params.e());
    let d = m.matrix();
    for r in 0..d.rows() {
        push_row(&mut out, d.row(r).iter().map(|&v| v as u64));
    }
    out
}

/// A parsed code file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedCode {
    pub code: AdditiveCode,
    /// `k` as written in the header.
    pub declared_k: usize,
}

impl ParsedCode {
    /// Set when the rows were dependent and `k` dropped.
    pub fn warning(&self) -> Option<String> {
        (self.code.k() < self.declared_k).then(|| {
            format!("warning: rows are dependent, rank is {} (declared k = {})", self.code.k(), self.declared_k)
        })
    }
}

pub fn parse_code(text: &str) -> Result<ParsedCode, FormatError> {
    let mut lines = numbered_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| FormatError::at(1, "empty input"))?;
    let header = integers(hline, header)?;
    let [p, e, n, k] = header[..] else {
        return Err(FormatError::at(hline, format!("expected `p e n k`, found {} value(s)", header.len())));
    };
    let params = field_params(hline, p, e)?;
    let (n, k) = match (usize::try_from(n), usize::try_from(k)) {
        (Ok(n), Ok(k)) if n > 0 && k > 0 => (n, k),
        _ => return Err(FormatError::at(hline, "n and k must be positive")),
    };
    let q = params.order();
    let mut rows = Vec::with_capacity(k);
    for r in 0..k {
        let (line, text) = lines.next().ok_or(FormatError::Truncated { expected: k - r })?;
        let row = integers(line, text)?;
        if row.len() != n {
            return Err(FormatError::at(line, format!("expected {n} entries, found {}", row.len())));
        }
        if let Some(v) = row.iter().find(|&&v| v as u128 >= q) {
            return Err(FormatError::at(line, format!("entry {v} is not below p^e = {q}")));
        }
        rows.push(row);
    }
    if let Some((line, _)) = lines.next() {
        return Err(FormatError::at(line, format!("more than the declared {k} row(s)")));
    }
    let code = AdditiveCode::from_encoded(params, &rows)?;
    Ok(ParsedCode { code, declared_k: k })
}

pub fn write_code(c: &AdditiveCode) -> String {
    let params = c.params();
    let mut out = format!("{} {} {} {}\n", params.p(), params.e(), c.n(), c.k());
    for row in c.encoded_rows() {
        push_row(&mut out, row);
    }
    out
}

fn push_row(out: &mut String, row: impl IntoIterator<Item = u64>) {
    for (i, v) in row.into_iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{v}").unwrap();
    }
    out.push('\n');
}

/// A comma- or space-separated list of encoded elements.
pub fn parse_word(params: PrimePowerParams, text: &str) -> Result<Vec<GfElement>, FormatError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|tok| {
            let v = tok.parse::<u64>().map_err(|err| FormatError::at(1, format!("bad integer {tok:?}: {err}")))?;
            params.decode(v).map_err(|err| FormatError::at(1, err.to_string()))
        })
        .collect()
}
