//! Text formats for pools, Hamiltonians and F2 matrices.
//!
//! Pool files hold one Pauli string per line in dense (`XYZI`) or sparse
//! (`X1 Y2 Z3`) form, with `#` comments and an optional `n=<qubits>` header
//! that sparse lines require. Hamiltonian files use `<coefficient> <string>`
//! lines under the same conventions.

use thiserror::Error;

use crate::f2::{BitMatrix, F2Error};
use crate::gamma::{Pool, PoolError};
use crate::pauli::{PauliError, PauliString};
use crate::vqe::{PauliSum, VqeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("input contains no data")]
    Empty,
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("line {line}: sparse strings need an n=<qubits> header")]
    MissingHeader { line: usize },
    #[error("line {line}: coefficient {text:?} is not a real number")]
    NonReal { line: usize, text: String },
    #[error(transparent)]
    Pool(#[from] PoolError),
    #[error(transparent)]
    Matrix(#[from] F2Error),
}

/// Meaningful lines with 1-based numbers, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Parses `n=<k>` (spaces allowed around `=`).
fn header(line: &str) -> Option<Result<usize, String>> {
    let (key, value) = line.split_once('=')?;
    if key.trim() != "n" {
        return None;
    }
    Some(value.trim().parse::<usize>().map_err(|e| format!("bad qubit count: {e}")))
}

fn line_error(line: usize, e: impl ToString) -> IoError {
    IoError::Line {
        line,
        msg: e.to_string(),
    }
}

fn parse_string(line: usize, text: &str, n: Option<usize>) -> Result<PauliString, IoError> {
    PauliString::parse(text, n).map_err(|e| match e {
        PauliError::MissingQubitCount => IoError::MissingHeader { line },
        e => line_error(line, e),
    })
}

type Numbered<'a> = Vec<(usize, &'a str)>;

/// Header value (if any) and the remaining lines.
fn split_header(text: &str) -> Result<(Option<usize>, Numbered<'_>), IoError> {
    let mut n = None;
    let mut rest = Vec::new();
    for (no, l) in content_lines(text) {
        match header(l) {
            Some(Ok(k)) if n.is_none() && rest.is_empty() => n = Some(k),
            Some(Ok(_)) => return Err(line_error(no, "header must come first and only once")),
            Some(Err(e)) => return Err(line_error(no, e)),
            None => rest.push((no, l)),
        }
    }
    Ok((n, rest))
}

pub fn parse_pool(text: &str) -> Result<Pool, IoError> {
    let (header_n, lines) = split_header(text)?;
    if lines.is_empty() {
        return Err(IoError::Empty);
    }
    let strings = lines
        .iter()
        .map(|&(no, l)| parse_string(no, l, header_n))
        .collect::<Result<Vec<_>, _>>()?;
    let n = header_n.unwrap_or_else(|| strings[0].num_qubits());
    for (s, &(no, _)) in strings.iter().zip(&lines) {
        if s.num_qubits() != n {
            return Err(line_error(no, format!("string acts on {} qubits, expected {n}", s.num_qubits())));
        }
    }
    Ok(Pool::from_strings(n, strings)?)
}

/// `n=<k>` header followed by dense labels.
pub fn format_pool(pool: &Pool) -> String {
    let mut out = format!("n={}\n", pool.num_qubits());
    for p in pool {
        out.push_str(&p.label());
        out.push('\n');
    }
    out
}

fn parse_coefficient(line: usize, text: &str) -> Result<f64, IoError> {
    match text.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(_) => Err(line_error(line, format!("coefficient {text:?} is not finite"))),
        Err(_) if text.ends_with(['i', 'j']) || text.contains(['(', ')']) => Err(IoError::NonReal {
            line,
            text: text.to_string(),
        }),
        Err(e) => Err(line_error(line, format!("bad coefficient {text:?}: {e}"))),
    }
}

/// Parses a Hamiltonian; repeated strings are merged by adding coefficients.
pub fn parse_hamiltonian(text: &str) -> Result<PauliSum<f64>, IoError> {
    let (header_n, lines) = split_header(text)?;
    if lines.is_empty() {
        return Err(IoError::Empty);
    }
    let mut terms = Vec::with_capacity(lines.len());
    for &(no, l) in &lines {
        let (coef, rest) = l
            .split_once(char::is_whitespace)
            .ok_or_else(|| line_error(no, "expected <coefficient> <pauli string>"))?;
        let c = parse_coefficient(no, coef)?;
        let p = parse_string(no, rest.trim(), header_n)?;
        terms.push((no, c, p));
    }
    let n = header_n.unwrap_or_else(|| terms[0].2.num_qubits());
    let mut h = PauliSum::new(n);
    for (no, c, p) in terms {
        h.add_term(c, p).map_err(|e| match e {
            VqeError::QubitMismatch { expected, found } => {
                line_error(no, format!("string acts on {found} qubits, expected {expected}"))
            }
            e => line_error(no, e),
        })?;
    }
    Ok(h)
}

pub fn format_hamiltonian(h: &PauliSum<f64>) -> String {
    let mut out = format!("n={}\n", h.num_qubits());
    for (c, p) in h.terms() {
        out.push_str(&format!("{c} {}\n", p.label()));
    }
    out
}

/// Whether every content line is a run of `0`/`1` characters.
pub fn looks_like_matrix(text: &str) -> bool {
    let mut any = false;
    for (_, l) in content_lines(text) {
        if !l.chars().all(|c| c == '0' || c == '1' || c.is_whitespace()) {
            return false;
        }
        any = true;
    }
    any
}

pub fn parse_matrix(text: &str) -> Result<BitMatrix, IoError> {
    if content_lines(text).next().is_none() {
        return Err(IoError::Empty);
    }
    Ok(BitMatrix::parse_text(text)?)
}
