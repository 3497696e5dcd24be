//! Sequences `s_1 .. s_n` with `1 <= s_i <= i` and the look-back rule: if
//! `s_i = j` then `s_{i-r} <= j - r` for `1 <= r <= j - 1`.
//!
//! Sequences are built right to left. [`GoverningState`] tracks, for every
//! position, the largest value that can still be placed there; the values
//! already set are kept alongside with unset slots holding 1.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Why a list of integers is not a valid sequence. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceViolation {
    /// `s_i` outside `1..=i`.
    Range { position: usize, value: u32 },
    /// `s_position = value` forces `s_{position - back} <= value - back`.
    LookBack {
        position: usize,
        value: u32,
        back: usize,
        found: u32,
    },
}

impl fmt::Display for SequenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SequenceViolation::Range { position, value } => write!(
                f,
                "condition (i): s_{position} = {value} is not in 1..={position}"
            ),
            SequenceViolation::LookBack {
                position,
                value,
                back,
                found,
            } => write!(
                f,
                "condition (ii): s_{position} = {value} requires s_{} <= {}, found {found}",
                position - back,
                value as usize - back
            ),
        }
    }
}

/// First violated condition, scanning positions left to right.
pub fn sequence_violation(entries: &[u32]) -> Option<SequenceViolation> {
    for (idx, &value) in entries.iter().enumerate() {
        let position = idx + 1;
        if value < 1 || value as usize > position {
            return Some(SequenceViolation::Range { position, value });
        }
        for back in 1..value as usize {
            let found = entries[idx - back];
            if found as usize > value as usize - back {
                return Some(SequenceViolation::LookBack {
                    position,
                    value,
                    back,
                    found,
                });
            }
        }
    }
    None
}

pub fn validate_sequence(entries: &[u32]) -> bool {
    sequence_violation(entries).is_none()
}

/// A validated sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CatSeq(Vec<u32>);

impl CatSeq {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        match sequence_violation(&entries) {
            None => Ok(Self(entries)),
            Some(v) => Err(Error::InvalidSequence(v)),
        }
    }

    /// All ones of length `n`.
    pub fn ones(n: usize) -> Self {
        Self(vec![1; n])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

impl fmt::Display for CatSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_entries(f, &self.0)
    }
}

pub(crate) fn write_entries(f: &mut impl fmt::Write, entries: &[u32]) -> fmt::Result {
    for (i, x) in entries.iter().enumerate() {
        if i > 0 {
            f.write_char(' ')?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Space-separated text form; the empty string is the empty sequence.
pub fn format_entries(entries: &[u32]) -> String {
    let mut out = String::new();
    write_entries(&mut out, entries).expect("writing to a String");
    out
}

/// Parses whitespace-separated decimal integers without validating them.
pub fn parse_entries(text: &str) -> Result<Vec<u32>> {
    text.split_whitespace()
        .map(|tok| {
            if !tok.bytes().all(|c| c.is_ascii_digit()) {
                return Err(Error::Parse(format!("bad sequence entry `{tok}`")));
            }
            tok.parse::<u32>()
                .map_err(|e| Error::Parse(format!("sequence entry `{tok}`: {e}")))
        })
        .collect()
}

impl FromStr for CatSeq {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        CatSeq::new(parse_entries(text)?)
    }
}

/// Values and per-position bounds while filling a sequence right to left.
///
/// Positions are 1-based in the accessors below; `cursor` is the next
/// position to fill, or `None` once every position is set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GoverningState {
    values: Vec<u32>,
    bounds: Vec<u32>,
    unset: usize,
}

impl GoverningState {
    /// Values all 1, bounds `1 2 .. n`, cursor at `n`.
    pub fn initial(n: usize) -> Self {
        Self {
            values: vec![1; n],
            bounds: (1..=n as u32).collect(),
            unset: n,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Current values; unset positions read 1.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// The governing sequence.
    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn cursor(&self) -> Option<usize> {
        (self.unset > 0).then_some(self.unset)
    }

    pub fn is_complete(&self) -> bool {
        self.unset == 0
    }

    /// Largest legal value at the cursor.
    pub fn next_bound(&self) -> Option<u32> {
        self.cursor().map(|q| self.bounds[q - 1])
    }

    /// Sets the cursor position to `m` and moves the cursor one step left.
    pub fn set_value(&self, m: u32) -> Result<Self> {
        let mut next = self.clone();
        next.set_in_place(m)?;
        Ok(next)
    }

    pub(crate) fn set_in_place(&mut self, m: u32) -> Result<()> {
        let q = self
            .cursor()
            .ok_or_else(|| Error::Index("every position is already set".into()))?;
        let bound = self.bounds[q - 1];
        if m < 1 || m > bound {
            return Err(Error::BoundExceeded {
                position: q,
                value: m,
                bound,
            });
        }
        self.values[q - 1] = m;
        self.bounds[q - 1] = m;
        // Only the positions m - 1 steps to the left feel the new value.
        for back in 1..m as usize {
            let slot = &mut self.bounds[q - 1 - back];
            *slot = (*slot).min(m - back as u32);
        }
        self.unset -= 1;
        Ok(())
    }

    /// The completed sequence, if every position is set.
    pub fn finish(&self) -> Option<CatSeq> {
        self.is_complete().then(|| CatSeq(self.values.clone()))
    }
}

/// Governing sequence computed directly from the values, with positions
/// `unset + 1 ..= n` set and the rest free.
///
/// A free position `q` is bounded by `q` and by `s_p - (p - q)` for every
/// set `p > q` where that quantity is at least 1; a set position is bounded
/// by its own value.
pub fn bounds_from_scratch(values: &[u32], unset: usize) -> Vec<u32> {
    let n = values.len();
    (1..=n)
        .map(|q| {
            if q > unset {
                return values[q - 1];
            }
            (unset + 1..=n)
                .filter_map(|p| {
                    let reach = values[p - 1] as i64 - (p - q) as i64;
                    (reach >= 1).then_some(reach as u32)
                })
                .fold(q as u32, u32::min)
        })
        .collect()
}

/// Depth-first stream of every valid sequence of length `n`.
///
/// Positions are chosen from `n` down to 1, trying smaller values first, so
/// the order is ascending in `(s_n, s_{n-1}, .., s_1)`.
pub fn generate_all(n: usize) -> SequenceIter {
    SequenceIter {
        stack: vec![GoverningState::initial(n)],
    }
}

pub struct SequenceIter {
    stack: Vec<GoverningState>,
}

impl Iterator for SequenceIter {
    type Item = CatSeq;

    fn next(&mut self) -> Option<CatSeq> {
        while let Some(state) = self.stack.pop() {
            let Some(bound) = state.next_bound() else {
                return state.finish();
            };
            for m in (1..=bound).rev() {
                let mut child = state.clone();
                child
                    .set_in_place(m)
                    .expect("values up to the bound are legal");
                self.stack.push(child);
            }
        }
        None
    }
}
