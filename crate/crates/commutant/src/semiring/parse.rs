//! Text format for semiring tables.
//!
//! ```text
//! # comment
//! semiring z4 order 4
//! elements: 0 1 2 3
//! add:
//! 0 1 2 3
//! 1 2 3 0
//! 2 3 0 1
//! 3 0 1 2
//! mul:
//! 0 0 0 0
//! 0 1 2 3
//! 0 2 0 2
//! 0 3 2 1
//! ```
//!
//! `#` starts a comment, blank lines are ignored, tokens are whitespace
//! separated. The parser returns the table in file element order; callers
//! canonicalize before computing with it.

use super::{ElementId, SemiringTable};
use crate::error::Error;
use crate::Result;

/// One token with its 1-based source position.
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokenize(src: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut col = 0;
        for piece in content.split_whitespace() {
            // Locate the piece to report an accurate column.
            let offset = content[col..].find(piece).expect("piece comes from content") + col;
            tokens.push(Token {
                text: piece,
                line: i + 1,
                column: offset + 1,
            });
            col = offset + piece.len();
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

fn expect_len(tokens: &[Token<'_>], want: usize, what: &str) -> Result<()> {
    if tokens.len() != want {
        let t = &tokens[0];
        return Err(Error::parse(
            t.line,
            t.column,
            format!("{what}: expected {want} tokens, found {}", tokens.len()),
        ));
    }
    Ok(())
}

/// Parses the table text format. The result preserves the file's element
/// order and may violate semiring axioms; run
/// [`SemiringTable::canonicalize`] and [`SemiringTable::validate_axioms`]
/// afterwards.
pub fn parse_semiring_table(src: &str) -> Result<SemiringTable> {
    let lines = tokenize(src);
    if lines.is_empty() {
        return Err(Error::parse(1, 1, "empty semiring table file"));
    }
    let mut it = lines.into_iter();

    let header = it.next().expect("nonempty");
    expect_len(&header, 4, "header line")?;
    if header[0].text != "semiring" || header[2].text != "order" {
        return Err(Error::parse(
            header[0].line,
            header[0].column,
            "header must read: semiring <name> order <k>",
        ));
    }
    let name = header[1].text.to_string();
    let order: usize = header[3].text.parse().map_err(|_| {
        Error::parse(
            header[3].line,
            header[3].column,
            format!("invalid order {:?}", header[3].text),
        )
    })?;

    let elements_line = it
        .next()
        .ok_or_else(|| Error::parse(header[0].line, 1, "missing elements: line"))?;
    if elements_line[0].text != "elements:" {
        return Err(Error::parse(
            elements_line[0].line,
            elements_line[0].column,
            "expected elements: line after header",
        ));
    }
    if elements_line.len() != order + 1 {
        return Err(Error::parse(
            elements_line[0].line,
            elements_line[0].column,
            format!(
                "elements: line lists {} names, expected {order}",
                elements_line.len() - 1
            ),
        ));
    }
    let elements: Vec<String> = elements_line[1..]
        .iter()
        .map(|t| t.text.to_string())
        .collect();
    let lookup = |t: &Token<'_>| -> Result<ElementId> {
        elements
            .iter()
            .position(|e| e == t.text)
            .map(|i| i as ElementId)
            .ok_or_else(|| {
                Error::parse(t.line, t.column, format!("unknown element name {:?}", t.text))
            })
    };

    let read_table = |it: &mut std::vec::IntoIter<Vec<Token<'_>>>,
                          keyword: &str|
     -> Result<Vec<ElementId>> {
        let head = it
            .next()
            .ok_or_else(|| Error::parse(0, 0, format!("missing {keyword} section")))?;
        if head.len() != 1 || head[0].text != keyword {
            return Err(Error::parse(
                head[0].line,
                head[0].column,
                format!("expected {keyword} section header"),
            ));
        }
        let mut table = Vec::with_capacity(order * order);
        for _ in 0..order {
            let row = it.next().ok_or_else(|| {
                Error::parse(
                    head[0].line,
                    head[0].column,
                    format!("{keyword} section ends before {order} rows"),
                )
            })?;
            expect_len(&row, order, &format!("{keyword} row"))?;
            for tok in &row {
                table.push(lookup(tok)?);
            }
        }
        Ok(table)
    };

    let add = read_table(&mut it, "add:")?;
    let mul = read_table(&mut it, "mul:")?;
    if let Some(extra) = it.next() {
        return Err(Error::parse(
            extra[0].line,
            extra[0].column,
            format!("unexpected trailing content {:?}", extra[0].text),
        ));
    }

    SemiringTable::from_parts(name, elements, add, mul)
}

/// Renders a table in the text format; the output round-trips through
/// [`parse_semiring_table`].
pub fn serialize_semiring_table(table: &SemiringTable) -> String {
    let k = table.order();
    let mut out = String::new();
    out.push_str(&format!("semiring {} order {k}\n", table.name()));
    out.push_str("elements:");
    for e in table.element_names() {
        out.push(' ');
        out.push_str(e);
    }
    out.push('\n');
    for (keyword, cell) in [("add:", false), ("mul:", true)] {
        out.push_str(keyword);
        out.push('\n');
        for a in 0..k as ElementId {
            let row: Vec<&str> = (0..k as ElementId)
                .map(|b| {
                    let v = if cell { table.mul(a, b) } else { table.add(a, b) };
                    table.element_name(v)
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}
