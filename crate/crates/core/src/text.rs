//! Line-oriented text formats.
//!
//! Every document starts with a header line holding the block order `n`,
//! followed by the rows of the matrix:
//!
//! - pair matrix: `n` rows of `n` tokens `a:b`, e.g. `3:1 2:1 1:2`; the
//!   text must end with a newline;
//! - S-permutation matrix: `n²` rows of `n²` digits `0`/`1`;
//! - Sudoku grid: `n²` rows of `n²` integers in `1..=n²`.
//!
//! Tokens are separated by whitespace. Blank lines are ignored, so several
//! documents may be concatenated (the writers separate them with one blank
//! line). Line numbers in errors are 1-based.

use std::str::{FromStr, Lines};

use crate::check_order;
use crate::error::{Error, Result};
use crate::pi::{Pair, PiMatrix};
use crate::sperm::SPermMatrix;
use crate::sudoku::SudokuMatrix;

struct Reader<'a> {
    lines: std::iter::Enumerate<Lines<'a>>,
    last: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        Reader {
            lines: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next non-blank line with its 1-based number.
    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        for (idx, line) in self.lines.by_ref() {
            self.last = idx + 1;
            if !line.trim().is_empty() {
                return Some((idx + 1, line));
            }
        }
        None
    }

    fn header(&mut self) -> Option<Result<usize>> {
        let (line, text) = self.next_line()?;
        let mut tokens = text.split_whitespace();
        let parsed = match (tokens.next(), tokens.next()) {
            (Some(tok), None) => tok.parse::<usize>().map_err(|_| {
                Error::parse(line, format!("bad header {tok:?}, expected the order n"))
            }),
            _ => Err(Error::parse(line, "header must be a single integer n")),
        };
        Some(parsed.and_then(|n| {
            check_order(n).map_err(|e| Error::parse(line, e.to_string()))?;
            Ok(n)
        }))
    }

    fn rows<T>(
        &mut self,
        count: usize,
        width: usize,
        token: impl Fn(&str) -> Option<T>,
    ) -> Result<Vec<Vec<T>>> {
        let mut rows = Vec::with_capacity(count);
        for row in 0..count {
            let Some((line, text)) = self.next_line() else {
                return Err(Error::parse(
                    self.last.max(1),
                    format!("unexpected end of input: expected {count} rows, found {row}"),
                ));
            };
            let tokens: Vec<&str> = text.split_whitespace().collect();
            if tokens.len() != width {
                return Err(Error::parse(
                    line,
                    format!("expected {width} tokens, found {}", tokens.len()),
                ));
            }
            let values = tokens
                .iter()
                .map(|t| token(t).ok_or_else(|| Error::parse(line, format!("bad token {t:?}"))))
                .collect::<Result<Vec<T>>>()?;
            rows.push(values);
        }
        Ok(rows)
    }
}

fn documents<T>(
    text: &str,
    mut body: impl FnMut(&mut Reader, usize) -> Result<T>,
) -> Result<Vec<T>> {
    let mut reader = Reader::new(text);
    let mut docs = Vec::new();
    while let Some(n) = reader.header() {
        docs.push(body(&mut reader, n?)?);
    }
    if docs.is_empty() {
        return Err(Error::parse(reader.last.max(1), "empty input"));
    }
    Ok(docs)
}

fn single<T>(mut docs: Vec<T>, what: &str) -> Result<T> {
    if docs.len() != 1 {
        return Err(Error::parse(
            1,
            format!("expected one {what} document, found {}", docs.len()),
        ));
    }
    Ok(docs.pop().unwrap())
}

fn parse_pair(token: &str) -> Option<Pair> {
    let (a, b) = token.split_once(':')?;
    Some(Pair::new(a.parse().ok()?, b.parse().ok()?))
}

fn parse_num<T: FromStr>(token: &str) -> Option<T> {
    token.parse().ok()
}

/// Unvalidated pair-matrix documents.
pub fn parse_pi_documents(text: &str) -> Result<Vec<Vec<Vec<Pair>>>> {
    if !text.is_empty() && !text.ends_with('\n') {
        return Err(Error::parse(
            text.lines().count(),
            "missing trailing newline",
        ));
    }
    documents(text, |r, n| r.rows(n, n, parse_pair))
}

/// Unvalidated S-permutation documents as `(n, dense grid)`.
pub fn parse_sperm_documents(text: &str) -> Result<Vec<(usize, Vec<Vec<u8>>)>> {
    documents(text, |r, n| Ok((n, r.rows(n * n, n * n, parse_num::<u8>)?)))
}

/// Unvalidated Sudoku grid documents as `(n, grid)`.
pub fn parse_grid_documents(text: &str) -> Result<Vec<(usize, Vec<Vec<u32>>)>> {
    documents(text, |r, n| {
        Ok((n, r.rows(n * n, n * n, parse_num::<u32>)?))
    })
}

pub fn parse_pi(text: &str) -> Result<PiMatrix> {
    PiMatrix::new(single(parse_pi_documents(text)?, "pair matrix")?)
}

pub fn parse_pi_list(text: &str) -> Result<Vec<PiMatrix>> {
    parse_pi_documents(text)?
        .into_iter()
        .map(PiMatrix::new)
        .collect()
}

pub fn parse_sperm(text: &str) -> Result<SPermMatrix> {
    let (n, grid) = single(parse_sperm_documents(text)?, "S-permutation")?;
    SPermMatrix::from_dense(&grid, n)
}

pub fn parse_sperm_list(text: &str) -> Result<Vec<SPermMatrix>> {
    parse_sperm_documents(text)?
        .into_iter()
        .map(|(n, grid)| SPermMatrix::from_dense(&grid, n))
        .collect()
}

pub fn parse_grid(text: &str) -> Result<SudokuMatrix> {
    let (n, grid) = single(parse_grid_documents(text)?, "Sudoku grid")?;
    SudokuMatrix::from_rows(&grid, n)
}

fn write_rows<T: ToString>(n: usize, rows: impl Iterator<Item = Vec<T>>) -> String {
    let mut out = format!("{n}\n");
    for row in rows {
        let tokens: Vec<String> = row.iter().map(T::to_string).collect();
        out.push_str(&tokens.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_pi(m: &PiMatrix) -> String {
    write_rows(m.order(), m.rows().map(<[Pair]>::to_vec))
}

pub fn write_sperm(s: &SPermMatrix) -> String {
    write_rows(s.order(), s.to_dense().into_iter())
}

pub fn write_grid(m: &SudokuMatrix) -> String {
    write_rows(m.order(), m.to_rows().into_iter())
}

/// Concatenates documents with one blank line between them.
pub fn join_documents<I: IntoIterator<Item = String>>(docs: I) -> String {
    docs.into_iter().collect::<Vec<_>>().join("\n")
}
