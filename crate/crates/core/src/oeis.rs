//! OEIS b-files: parsing, formatting and cross-checking against the
//! computed sequences.
//!
//! A b-file holds one `index value` pair per line; lines starting with `#`
//! and blank lines are ignored.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::seqcore::{sequence_range, SequenceKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OeisError {
    #[error("invalid OEIS identifier `{0}` (expected A followed by 6 digits)")]
    InvalidId(String),

    #[error("line {line}: expected two integer tokens, got `{content}`")]
    Malformed { line: usize, content: String },

    #[error("line {line}: index {index} does not increase (previous {previous})")]
    NonIncreasing {
        line: usize,
        index: i64,
        previous: i64,
    },

    #[error("b-file for {0} has no data rows")]
    Empty(String),

    #[error("fetching {id} failed: {message}")]
    Transport { id: String, message: String },
}

/// An OEIS A-number such as `A001644`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequenceId(String);

impl SequenceId {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Conventional b-file name, e.g. `b001644.txt`.
    pub fn bfile_name(&self) -> String {
        format!("b{}.txt", &self.0[1..])
    }
}

impl FromStr for SequenceId {
    type Err = OeisError;

    fn from_str(s: &str) -> std::result::Result<Self, OeisError> {
        let b = s.as_bytes();
        if b.len() == 7 && b[0] == b'A' && b[1..].iter().all(u8::is_ascii_digit) {
            Ok(SequenceId(s.to_string()))
        } else {
            Err(OeisError::InvalidId(s.to_string()))
        }
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    sequence_id: SequenceId,
    rows: Vec<(i64, BigInt)>,
}

impl BFile {
    /// Rows must be non-empty with strictly increasing indices.
    pub fn new(
        sequence_id: SequenceId,
        rows: Vec<(i64, BigInt)>,
    ) -> std::result::Result<Self, OeisError> {
        if rows.is_empty() {
            return Err(OeisError::Empty(sequence_id.0));
        }
        for (k, w) in rows.windows(2).enumerate() {
            if w[1].0 <= w[0].0 {
                return Err(OeisError::NonIncreasing {
                    line: k + 2,
                    index: w[1].0,
                    previous: w[0].0,
                });
            }
        }
        Ok(BFile { sequence_id, rows })
    }

    pub fn sequence_id(&self) -> &SequenceId {
        &self.sequence_id
    }

    pub fn rows(&self) -> &[(i64, BigInt)] {
        &self.rows
    }
}

pub fn parse_bfile(sequence_id: &str, text: &str) -> std::result::Result<BFile, OeisError> {
    let id: SequenceId = sequence_id.parse()?;
    let mut rows: Vec<(i64, BigInt)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = || OeisError::Malformed {
            line: line_no,
            content: raw.to_string(),
        };
        let mut tokens = line.split_whitespace();
        let (Some(i), Some(v), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(malformed());
        };
        let index: i64 = i.parse().map_err(|_| malformed())?;
        let value: BigInt = v.parse().map_err(|_| malformed())?;
        if let Some(&(previous, _)) = rows.last() {
            if index <= previous {
                return Err(OeisError::NonIncreasing {
                    line: line_no,
                    index,
                    previous,
                });
            }
        }
        rows.push((index, value));
    }
    if rows.is_empty() {
        return Err(OeisError::Empty(id.0));
    }
    Ok(BFile {
        sequence_id: id,
        rows,
    })
}

/// b-file text for `kind` over `[lo, hi]`, `lo ≥ 0`.
pub fn format_bfile(kind: SequenceKind, lo: i64, hi: i64) -> Result<String> {
    if lo < 0 {
        return Err(Error::NegativeIndex {
            op: "format_bfile",
            index: lo,
        });
    }
    let mut out = String::new();
    for (n, v) in sequence_range(kind, lo, hi)? {
        out.push_str(&format!("{n} {v}\n"));
    }
    Ok(out)
}

/// Shift from b-file index to local index for a known entry.
///
/// A000073 starts `0, 0, 1, 1, 2, ...`, one step behind `T_0, T_1, ...`.
pub fn index_offset(kind: SequenceKind, id: &SequenceId) -> i64 {
    match (kind, id.as_str()) {
        (SequenceKind::Tribonacci, "A000073") => -1,
        _ => 0,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// Index as written in the b-file.
    pub index: i64,
    pub local: BigInt,
    pub bfile: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub sequence_id: String,
    /// Local index = b-file index + `offset_used`.
    pub offset_used: i64,
    pub rows_compared: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CrosscheckReport {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the first `max_rows` rows of `bfile` with the computed sequence.
pub fn crosscheck(kind: SequenceKind, bfile: &BFile, max_rows: usize) -> CrosscheckReport {
    let offset = index_offset(kind, &bfile.sequence_id);
    let rows = &bfile.rows[..max_rows.min(bfile.rows.len())];
    let mismatches = match (rows.first(), rows.last()) {
        (Some(first), Some(last)) => {
            let lo = first.0 + offset;
            let local = sequence_range(kind, lo, last.0 + offset).expect("rows are increasing");
            rows.iter()
                .filter_map(|(i, v)| {
                    let l = &local[(i + offset - lo) as usize].1;
                    (l != v).then(|| Mismatch {
                        index: *i,
                        local: l.clone(),
                        bfile: v.clone(),
                    })
                })
                .collect()
        }
        _ => Vec::new(),
    };
    CrosscheckReport {
        sequence_id: bfile.sequence_id.0.clone(),
        offset_used: offset,
        rows_compared: rows.len(),
        mismatches,
    }
}

/// Source of b-file text for an identifier.
pub trait Transport {
    fn fetch(&self, id: &SequenceId) -> std::result::Result<String, String>;
}

impl<F> Transport for F
where
    F: Fn(&SequenceId) -> std::result::Result<String, String>,
{
    fn fetch(&self, id: &SequenceId) -> std::result::Result<String, String> {
        self(id)
    }
}

pub fn fetch_bfile(
    sequence_id: &str,
    transport: &dyn Transport,
) -> std::result::Result<BFile, OeisError> {
    let id: SequenceId = sequence_id.parse()?;
    let text = transport
        .fetch(&id)
        .map_err(|message| OeisError::Transport {
            id: id.0.clone(),
            message,
        })?;
    parse_bfile(id.as_str(), &text)
}
