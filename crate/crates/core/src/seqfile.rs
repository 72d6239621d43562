//! Sequence files: one decimal integer per line with an optional `# n0=<k>`
//! header, or OEIS b-file lines `index value` with contiguous indices.
//! Blank lines and other `#` lines are ignored.

use num_bigint::BigInt;
use thiserror::Error;

use crate::guess::Sequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqFileError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: index {found} breaks contiguity (expected {expected})")]
    NonContiguous {
        line: usize,
        expected: i64,
        found: i64,
    },
    #[error("line {line}: plain values and `index value` pairs are mixed")]
    MixedFormats { line: usize },
    #[error("no terms found")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Layout {
    Plain,
    Indexed,
}

fn int(token: &str, line: usize) -> Result<BigInt, SeqFileError> {
    token
        .parse::<BigInt>()
        .map_err(|_| SeqFileError::Malformed {
            line,
            message: format!("`{token}` is not an integer"),
        })
}

pub fn parse_sequence(text: &str) -> Result<Sequence, SeqFileError> {
    let mut start: Option<i64> = None;
    let mut header_start: Option<i64> = None;
    let mut layout: Option<Layout> = None;
    let mut terms = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix("n0=") {
                if !terms.is_empty() {
                    return Err(SeqFileError::Malformed {
                        line,
                        message: "`# n0=` header after the first term".into(),
                    });
                }
                header_start = Some(v.trim().parse().map_err(|_| SeqFileError::Malformed {
                    line,
                    message: format!("bad start index `{}`", v.trim()),
                })?);
            }
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let this = match tokens.len() {
            1 => Layout::Plain,
            2 => Layout::Indexed,
            _ => {
                return Err(SeqFileError::Malformed {
                    line,
                    message: "expected `value` or `index value`".into(),
                })
            }
        };
        if layout.is_some_and(|l| l != this) {
            return Err(SeqFileError::MixedFormats { line });
        }
        layout = Some(this);
        match this {
            Layout::Plain => terms.push(int(tokens[0], line)?),
            Layout::Indexed => {
                let index: i64 = tokens[0].parse().map_err(|_| SeqFileError::Malformed {
                    line,
                    message: format!("bad index `{}`", tokens[0]),
                })?;
                let expected = start.map(|s| s + terms.len() as i64).unwrap_or(index);
                if index != expected {
                    return Err(SeqFileError::NonContiguous {
                        line,
                        expected,
                        found: index,
                    });
                }
                start.get_or_insert(index);
                terms.push(int(tokens[1], line)?);
            }
        }
    }
    let start = start.or(header_start).unwrap_or(1);
    Sequence::new(start, terms).map_err(|_| SeqFileError::Empty)
}

/// Plain layout with a start header.
pub fn format_sequence(seq: &Sequence) -> String {
    let mut out = format!("# n0={}\n", seq.start());
    for t in seq.terms() {
        out.push_str(&t.to_string());
        out.push('\n');
    }
    out
}

/// b-file layout.
pub fn format_bfile(seq: &Sequence) -> String {
    let mut out = String::new();
    for (i, t) in seq.terms().iter().enumerate() {
        out.push_str(&format!("{} {}\n", seq.start() + i as i64, t));
    }
    out
}

/// First index in the overlap where the two sequences differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: i64,
    pub computed: BigInt,
    pub reference: BigInt,
}

/// Compares the overlapping indices; `Ok(count)` when all agree.
pub fn compare(computed: &Sequence, reference: &Sequence) -> Result<usize, Mismatch> {
    let lo = computed.start().max(reference.start());
    let hi = computed.last_index().min(reference.last_index());
    let mut count = 0;
    for n in lo..=hi {
        let (a, b) = (
            computed.at(n).expect("in range"),
            reference.at(n).expect("in range"),
        );
        if a != b {
            return Err(Mismatch {
                index: n,
                computed: a.clone(),
                reference: b.clone(),
            });
        }
        count += 1;
    }
    Ok(count)
}
