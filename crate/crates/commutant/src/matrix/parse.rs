//! Text format for matrix literals.
//!
//! ```text
//! matrix 3 over boolean
//! 0 0 1
//! 0 0 0
//! 1 1 0
//! ```
//!
//! The entry tokens are element names for finite semirings, and rationals
//! (`p/q` or integer) or `-inf` for `tropical`. `#` comments and blank lines
//! are allowed anywhere.

use super::{AnyMatrix, FinMatrix, TropMatrix};
use crate::error::Error;
use crate::semiring::SemiringKind;
use crate::tropical::TropicalScalar;
use crate::Result;

struct Tok<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokenize(src: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut col = 0;
        for piece in content.split_whitespace() {
            let offset = content[col..].find(piece).expect("piece comes from content") + col;
            out.push(Tok {
                text: piece,
                line: i + 1,
                column: offset + 1,
            });
            col = offset + piece.len();
        }
    }
    out
}

/// Reads just the header of a matrix literal: `(n, semiring name)`.
pub fn parse_matrix_file_name(src: &str) -> Result<(usize, String)> {
    let toks = tokenize(src);
    if toks.len() < 4 {
        return Err(Error::parse(1, 1, "matrix literal is missing its header"));
    }
    if toks[0].text != "matrix" || toks[2].text != "over" {
        return Err(Error::parse(
            toks[0].line,
            toks[0].column,
            "header must read: matrix <n> over <semiring>",
        ));
    }
    let n: usize = toks[1].text.parse().map_err(|_| {
        Error::parse(
            toks[1].line,
            toks[1].column,
            format!("invalid dimension {:?}", toks[1].text),
        )
    })?;
    Ok((n, toks[3].text.to_string()))
}

/// Parses a matrix literal over the given scalar domain. The header's
/// semiring name must match `kind`.
pub fn parse_matrix(src: &str, kind: &SemiringKind) -> Result<AnyMatrix> {
    let toks = tokenize(src);
    let (n, name) = parse_matrix_file_name(src)?;
    if name != kind.name() {
        return Err(Error::parse(
            toks[3].line,
            toks[3].column,
            format!(
                "matrix is declared over {name:?} but {:?} was requested",
                kind.name()
            ),
        ));
    }
    if n == 0 {
        return Err(Error::parse(
            toks[1].line,
            toks[1].column,
            "matrix dimension must be positive",
        ));
    }
    let body = &toks[4..];
    if body.len() != n * n {
        let at = body.first().unwrap_or(&toks[3]);
        return Err(Error::parse(
            at.line,
            at.column,
            format!("matrix body has {} entries, expected {}", body.len(), n * n),
        ));
    }
    match kind {
        SemiringKind::Finite(table) => {
            let mut entries = Vec::with_capacity(n * n);
            for tok in body {
                let id = table.element_id(tok.text).ok_or_else(|| {
                    Error::parse(
                        tok.line,
                        tok.column,
                        format!(
                            "unknown element {:?} in semiring {}",
                            tok.text,
                            table.name()
                        ),
                    )
                })?;
                entries.push(id);
            }
            Ok(AnyMatrix::Finite(FinMatrix::new(
                table.clone(),
                n,
                entries,
            )?))
        }
        SemiringKind::Tropical => {
            let mut entries = Vec::with_capacity(n * n);
            for tok in body {
                let v: TropicalScalar = tok.text.parse().map_err(|e| match e {
                    Error::Domain(msg) => Error::parse(tok.line, tok.column, msg),
                    other => other,
                })?;
                entries.push(v);
            }
            Ok(AnyMatrix::Tropical(TropMatrix::new(n, entries)?))
        }
    }
}
