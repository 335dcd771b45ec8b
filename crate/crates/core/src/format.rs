//! The `.nr` text format.
//!
//! ```text
//! NEARRING v1
//! order <n>
//! one <index>
//! add
//! <n rows of n space-separated indices>
//! mul
//! <n rows>
//! ```
//!
//! `#` starts a comment running to the end of the line; blank lines are
//! ignored. Rendering emits exactly one space between entries and LF line
//! endings, so `render(parse(render(n))) == render(n)`.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::error::{Table, Violation};
use crate::groups::FiniteGroup;
use crate::ring::{validate_tables, NearRing};

pub const HEADER: &str = "NEARRING v1";

/// A syntax or validation error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("line {line}, column {col}: {violation}")]
    Invalid { line: usize, col: usize, violation: Violation },
}

impl FormatError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            FormatError::Syntax { line, col, .. } | FormatError::Invalid { line, col, .. } => (*line, *col),
        }
    }
}

pub fn render(n: &NearRing) -> String {
    let order = n.order();
    let mut out = String::with_capacity(8 * order * order + 64);
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out, "order {order}");
    let _ = writeln!(out, "one {}", n.one());
    for (name, table) in [("add", n.additive().table()), ("mul", n.mul_table())] {
        let _ = writeln!(out, "{name}");
        for row in table.chunks(order) {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
    }
    out
}

/// A non-blank line with its comment removed.
struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    /// `(column, token)` pairs, columns 1-based.
    fn tokens(&self) -> Vec<(usize, &'a str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices() {
            if c == ' ' || c == '\t' {
                if let Some(s) = start.take() {
                    out.push((s + 1, &self.text[s..i]));
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            out.push((s + 1, &self.text[s..]));
        }
        out
    }
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        col,
        message: message.into(),
    }
}

struct Reader<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Reader<'a> {
    fn new(doc: &'a str) -> Result<Self, FormatError> {
        let mut lines = Vec::new();
        let mut last_line = 0;
        for (i, raw) in doc.split('\n').enumerate() {
            let no = i + 1;
            if let Some(col) = raw.find('\r') {
                return Err(syntax(no, col + 1, "carriage return; lines must end with LF"));
            }
            if let Some((col, c)) = raw.char_indices().find(|(_, c)| !c.is_ascii()) {
                return Err(syntax(no, col + 1, format!("non-ASCII character {c:?}")));
            }
            let text = raw.split('#').next().unwrap_or("");
            if !raw.is_empty() {
                last_line = no;
            }
            if !text.trim().is_empty() {
                lines.push(Line { no, text });
            }
        }
        Ok(Reader {
            lines,
            pos: 0,
            last_line,
        })
    }

    fn next(&mut self, expected: &str) -> Result<&Line<'a>, FormatError> {
        let line = self
            .lines
            .get(self.pos)
            .ok_or_else(|| syntax(self.last_line + 1, 1, format!("unexpected end of document, expected {expected}")))?;
        self.pos += 1;
        Ok(line)
    }

    fn keyword(&mut self, word: &str) -> Result<(), FormatError> {
        let line = self.next(&format!("`{word}`"))?;
        let toks = line.tokens();
        match toks.as_slice() {
            [(_, w)] if *w == word => Ok(()),
            [(c, w), ..] if *w != word => Err(syntax(line.no, *c, format!("expected `{word}`, found `{w}`"))),
            [_, (c, w), ..] => Err(syntax(line.no, *c, format!("unexpected `{w}` after `{word}`"))),
            _ => Err(syntax(line.no, 1, format!("expected `{word}`"))),
        }
    }

    fn keyed_number(&mut self, key: &str) -> Result<(usize, usize, usize), FormatError> {
        let line = self.next(&format!("`{key} <number>`"))?;
        let toks = line.tokens();
        match toks.as_slice() {
            [(_, k), (c, v)] if *k == key => {
                let v = number(line.no, *c, v)?;
                Ok((v, line.no, *c))
            }
            [(c, k), ..] if *k != key => Err(syntax(line.no, *c, format!("expected `{key}`, found `{k}`"))),
            [_, _, (c, w), ..] => Err(syntax(line.no, *c, format!("unexpected `{w}` after `{key}` value"))),
            _ => Err(syntax(line.no, line.text.len() + 1, format!("missing value after `{key}`"))),
        }
    }

    /// `n` rows of `n` entries; returns entries and their positions.
    fn table(&mut self, name: &str, n: usize) -> Result<(Vec<usize>, Vec<(usize, usize)>), FormatError> {
        self.keyword(name)?;
        let mut cells = Vec::with_capacity(n * n);
        let mut pos = Vec::with_capacity(n * n);
        for r in 0..n {
            let line = self.next(&format!("row {r} of the {name} table"))?;
            let toks = line.tokens();
            if toks.len() < n {
                let col = line.text.trim_end().len() + 1;
                return Err(syntax(
                    line.no,
                    col,
                    format!("row {r} of the {name} table has {} entries, expected {n}", toks.len()),
                ));
            }
            if toks.len() > n {
                let (c, w) = toks[n];
                return Err(syntax(line.no, c, format!("extra entry `{w}` in row {r} of the {name} table")));
            }
            for (c, t) in toks {
                let v = number(line.no, c, t)?;
                if v >= n {
                    return Err(syntax(line.no, c, format!("entry {v} out of range for order {n}")));
                }
                cells.push(v);
                pos.push((line.no, c));
            }
        }
        Ok((cells, pos))
    }
}

fn number(line: usize, col: usize, tok: &str) -> Result<usize, FormatError> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) || (tok.len() > 1 && tok.starts_with('0')) {
        return Err(syntax(line, col, format!("`{tok}` is not a canonical non-negative integer")));
    }
    tok.parse().map_err(|_| syntax(line, col, format!("`{tok}` is too large")))
}

/// Parses and validates a document. Axiom violations carry the position of
/// the table cell they implicate, or of the `one` line otherwise.
pub fn parse(doc: &str) -> Result<NearRing, FormatError> {
    let mut r = Reader::new(doc)?;
    let first = r.next("the header")?;
    if first.text.trim_end() != HEADER {
        let col = first.text.len() - first.text.trim_start().len() + 1;
        return Err(syntax(first.no, col, format!("expected header `{HEADER}`")));
    }
    let (n, n_line, n_col) = r.keyed_number("order")?;
    if n == 0 || n > crate::groups::MAX_GROUP_ORDER {
        return Err(syntax(n_line, n_col, format!("order {n} outside 1..={}", crate::groups::MAX_GROUP_ORDER)));
    }
    let (one, one_line, one_col) = r.keyed_number("one")?;
    if one >= n {
        return Err(syntax(one_line, one_col, format!("identity index {one} out of range for order {n}")));
    }
    let (add, add_pos) = r.table("add", n)?;
    let (mul, mul_pos) = r.table("mul", n)?;
    if let Some(extra) = r.lines.get(r.pos) {
        let col = extra.tokens().first().map(|t| t.0).unwrap_or(1);
        return Err(syntax(extra.no, col, "content after the mul table"));
    }
    if let Err(v) = validate_tables(n, &add, &mul, one) {
        let (line, col) = match v.cell {
            Some((Table::Add, a, b)) => add_pos[a * n + b],
            Some((Table::Mul, a, b)) => mul_pos[a * n + b],
            None => (one_line, one_col),
        };
        return Err(FormatError::Invalid { line, col, violation: v });
    }
    let group = FiniteGroup::from_flat("N", n, add).expect("validated additive table");
    Ok(NearRing::trusted(group, mul, one))
}

/// `key<TAB>value` records.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Manifest {
    pub records: Vec<(String, String)>,
}

impl Manifest {
    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        let key = key.into();
        debug_assert!(!key.contains('\t') && !key.contains('\n'));
        let value = value.to_string().replace(['\t', '\n'], " ");
        self.records.push((key, value));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.records.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn parse(doc: &str) -> Result<Self, FormatError> {
        let mut records = Vec::new();
        for (i, line) in doc.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('\t')
                .ok_or_else(|| syntax(i + 1, line.len() + 1, "manifest record without a tab"))?;
            records.push((k.to_string(), v.to_string()));
        }
        Ok(Manifest { records })
    }
}

impl fmt::Display for Manifest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.records {
            writeln!(f, "{k}\t{v}")?;
        }
        Ok(())
    }
}
