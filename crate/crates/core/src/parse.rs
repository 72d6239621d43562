//! Text syntax for shapes, families and partitions.
//!
//! Shapes are nested bracket lists such as `[[3,3,3],[3,3,3],[3,3,3]]`;
//! families may use the token `n` (`[[n,n],[n,1]]`). An item may be
//! repeated with `$` or `×`, so `[[10$10]$10]` is the 10×10×10 box.
//! Whitespace is ignored. Partitions are comma-separated parts: `3,2,2,1`.

use thiserror::Error;

use crate::shape::{FamilyCell, Partition, PlanePartition, ShapeError, ShapeFamily};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("expected a list of rows (depth 2), found {0}")]
    Depth(String),
    #[error("the parameter `n` is not allowed in a concrete shape")]
    UnexpectedParam,
    #[error(transparent)]
    Shape(#[from] ShapeError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Int(i64),
    Param,
    List(Vec<Node>),
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            src,
        }
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(o, _)| o)
            .unwrap_or_else(|| self.src.len())
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.err(format!("expected `{want}`, found `{c}`")),
            None => self.err(format!("expected `{want}`, found end of input")),
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        match text.parse::<i64>() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.err("expected an integer")
            }
        }
    }

    /// Parses one item and expands a trailing repetition.
    fn items(&mut self) -> Result<Vec<Node>, ParseError> {
        let node = match self.peek() {
            Some('[') => self.list()?,
            Some('n') => {
                self.pos += 1;
                Node::Param
            }
            Some(c) if c == '-' || c.is_ascii_digit() => Node::Int(self.integer()?),
            Some(c) => return self.err(format!("unexpected `{c}`")),
            None => return self.err("unexpected end of input"),
        };
        if matches!(self.peek(), Some('$') | Some('×')) {
            self.pos += 1;
            let times = self.integer()?;
            if times < 1 {
                return self.err("repetition count must be positive");
            }
            return Ok(vec![node; times as usize]);
        }
        Ok(vec![node])
    }

    fn list(&mut self) -> Result<Node, ParseError> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(Node::List(out));
        }
        loop {
            out.extend(self.items()?);
            match self.bump() {
                Some(',') => continue,
                Some(']') => break,
                Some(c) => {
                    self.pos -= 1;
                    return self.err(format!("expected `,` or `]`, found `{c}`"));
                }
                None => return self.err("unclosed `[`"),
            }
        }
        Ok(Node::List(out))
    }

    fn document(mut self) -> Result<Node, ParseError> {
        let node = self.list()?;
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(node)
    }
}

fn rows_of(node: Node) -> Result<Vec<Vec<Node>>, ParseError> {
    let Node::List(rows) = node else {
        return Err(ParseError::Depth("a scalar".into()));
    };
    rows.into_iter()
        .map(|row| match row {
            Node::List(cells) => {
                if cells.iter().any(|c| matches!(c, Node::List(_))) {
                    Err(ParseError::Depth("a list nested three deep".into()))
                } else {
                    Ok(cells)
                }
            }
            _ => Err(ParseError::Depth(
                "a scalar where a row was expected".into(),
            )),
        })
        .collect()
}

/// Parses and validates a concrete shape.
pub fn parse_shape(text: &str) -> Result<PlanePartition, ParseError> {
    let rows = rows_of(Parser::new(text).document()?)?;
    let ints = rows
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|c| match c {
                    Node::Int(v) => Ok(v),
                    _ => Err(ParseError::UnexpectedParam),
                })
                .collect::<Result<Vec<i64>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PlanePartition::validate(&ints)?)
}

/// Parses a family whose cells are `n` or positive constants.
pub fn parse_family(text: &str) -> Result<ShapeFamily, ParseError> {
    let rows = rows_of(Parser::new(text).document()?)?;
    let mut entries = Vec::with_capacity(rows.len());
    for (i, row) in rows.into_iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (j, c) in row.into_iter().enumerate() {
            out.push(match c {
                Node::Param => FamilyCell::Param,
                Node::Int(v) if v >= 1 && v <= u32::MAX as i64 => FamilyCell::Const(v as u32),
                Node::Int(_) => {
                    return Err(ShapeError::NonPositiveEntry {
                        row: i + 1,
                        col: j + 1,
                    }
                    .into())
                }
                Node::List(_) => unreachable!("rows_of rejects nested lists"),
            });
        }
        entries.push(out);
    }
    Ok(ShapeFamily::new(entries)?)
}

/// Parses `3,2,2,1` (also accepts surrounding parentheses or brackets).
pub fn parse_partition(text: &str) -> Result<Partition, ParseError> {
    let trimmed = text
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']']);
    if trimmed.trim().is_empty() {
        return Ok(Partition::empty());
    }
    let mut parts = Vec::new();
    let mut offset = 0;
    for piece in trimmed.split(',') {
        let v: i64 = piece.trim().parse().map_err(|_| ParseError::Syntax {
            offset,
            message: format!("`{}` is not an integer", piece.trim()),
        })?;
        offset += piece.len() + 1;
        parts.push(v);
    }
    if parts.iter().any(|&p| p < 1 || p > u32::MAX as i64) {
        return Err(ShapeError::InvalidPartition(parts).into());
    }
    let parts: Vec<u32> = parts.into_iter().map(|p| p as u32).collect();
    Ok(Partition::new(parts)?)
}
