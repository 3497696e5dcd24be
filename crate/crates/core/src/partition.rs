//! Set partitions of `[m] = {1, ..., m}`, their arc (Puttenham) form, and the
//! structural pieces used throughout the crate.
//!
//! A [`Partition`] is always stored canonically: every block ascending, blocks
//! ordered by their minimum element. Equality is structural on that form, and
//! the canonical text is `1,5|2,4|3` (no whitespace).

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    ground_size: u32,
    blocks: Vec<Vec<u32>>,
}

impl Partition {
    /// Builds a partition from blocks given in any order.
    ///
    /// The ground set is `[max element]`; every integer in it must appear in
    /// exactly one block.
    pub fn new(mut blocks: Vec<Vec<u32>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no blocks".into()));
        }
        if blocks.iter().any(Vec::is_empty) {
            return Err(Error::InvalidPartition("empty block".into()));
        }
        for block in &mut blocks {
            block.sort_unstable();
        }
        let ground_size = blocks
            .iter()
            .filter_map(|b| b.last().copied())
            .max()
            .unwrap_or(0);
        if blocks.iter().any(|b| b[0] == 0) {
            return Err(Error::InvalidPartition(
                "elements are 1-based; found 0".into(),
            ));
        }
        let mut seen = vec![false; ground_size as usize + 1];
        for &x in blocks.iter().flatten() {
            if std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::InvalidPartition(format!("duplicate element {x}")));
            }
        }
        if let Some(missing) = (1..=ground_size).find(|&x| !seen[x as usize]) {
            return Err(Error::InvalidPartition(format!(
                "element {missing} of [{ground_size}] is missing"
            )));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self {
            ground_size,
            blocks,
        })
    }

    /// Builds a partition from a block label per element: `labels[i]` is the
    /// block of element `i + 1`. Labels may be arbitrary identifiers.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidPartition("empty ground set".into()));
        }
        let mut ids: Vec<usize> = Vec::new();
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        for (i, &label) in labels.iter().enumerate() {
            let slot = match ids.iter().position(|&id| id == label) {
                Some(slot) => slot,
                None => {
                    ids.push(label);
                    blocks.push(Vec::new());
                    ids.len() - 1
                }
            };
            blocks[slot].push(i as u32 + 1);
        }
        // First-appearance order already sorts blocks by minimum.
        Ok(Self {
            ground_size: labels.len() as u32,
            blocks,
        })
    }

    /// The partition of `[m]` into singletons.
    pub fn singletons(m: u32) -> Self {
        Self {
            ground_size: m,
            blocks: (1..=m).map(|x| vec![x]).collect(),
        }
    }

    pub fn ground_size(&self) -> u32 {
        self.ground_size
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Block index of every element; entry `x - 1` is the block holding `x`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.ground_size as usize];
        for (b, block) in self.blocks.iter().enumerate() {
            for &x in block {
                labels[x as usize - 1] = b;
            }
        }
        labels
    }

    /// Index of the block containing `x`.
    pub fn block_of(&self, x: u32) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&x).is_ok())
    }

    /// True iff there are no `a < b < c < d` with `a, c` in one block and
    /// `b, d` in another.
    pub fn is_noncrossing(&self) -> bool {
        // Scan left to right keeping open blocks on a stack; a repeat visit
        // to a block that is not on top means some later-opened block is
        // still waiting for an element beyond this point.
        let labels = self.labels();
        let mut remaining: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        let mut stack: Vec<usize> = Vec::new();
        let mut opened = vec![false; self.blocks.len()];
        for &b in &labels {
            if !opened[b] {
                opened[b] = true;
                stack.push(b);
            } else if stack.last() != Some(&b) {
                return false;
            }
            remaining[b] -= 1;
            if remaining[b] == 0 {
                stack.pop();
            }
        }
        true
    }

    /// Some pair of arcs between consecutive block elements that cross.
    pub fn crossing_witness(&self) -> Option<(Arc, Arc)> {
        let arcs = self.consecutive_arcs();
        for (i, a) in arcs.iter().enumerate() {
            for b in &arcs[i + 1..] {
                if a.crosses(b) {
                    return Some(if a.left < b.left { (*a, *b) } else { (*b, *a) });
                }
            }
        }
        None
    }

    /// Smallest `x` such that `x` and `x + 1` share a block.
    pub fn consecutive_pair(&self) -> Option<u32> {
        self.blocks
            .iter()
            .flat_map(|b| b.windows(2))
            .filter(|w| w[1] == w[0] + 1)
            .map(|w| w[0])
            .min()
    }

    /// Non-crossing with no block containing two consecutive integers.
    pub fn is_semi_special(&self) -> bool {
        self.consecutive_pair().is_none() && self.is_noncrossing()
    }

    /// The first condition a special partition would violate, if any.
    pub fn special_violation(&self) -> Option<SpecialViolation> {
        let m = self.ground_size;
        if m.is_multiple_of(2) {
            return Some(SpecialViolation::EvenGround { ground_size: m });
        }
        let expected = (m as usize - 1) / 2 + 1;
        if self.blocks.len() != expected {
            return Some(SpecialViolation::BlockCount {
                expected,
                found: self.blocks.len(),
            });
        }
        if !self.is_noncrossing() {
            let (first, second) = self
                .crossing_witness()
                .expect("a crossing partition has crossing arcs");
            return Some(SpecialViolation::Crossing { first, second });
        }
        self.consecutive_pair()
            .map(|value| SpecialViolation::Consecutive { value })
    }

    /// Non-crossing partition of `[2n+1]` into `n+1` blocks, no block holding
    /// two consecutive integers.
    pub fn is_special(&self) -> bool {
        self.special_violation().is_none()
    }

    /// `n` such that the ground set is `[2n+1]`; `None` for even ground sets.
    pub fn half_order(&self) -> Option<usize> {
        (self.ground_size % 2 == 1).then(|| (self.ground_size as usize - 1) / 2)
    }

    fn consecutive_arcs(&self) -> Vec<Arc> {
        self.blocks
            .iter()
            .flat_map(|b| b.windows(2).map(|w| Arc::new(w[0], w[1])))
            .collect()
    }

    /// The arc form: one arc per pair of consecutive elements in a block.
    pub fn to_arcs(&self) -> Result<ArcDiagram> {
        if !self.is_noncrossing() {
            return Err(Error::Crossing(self.to_string()));
        }
        let mut arcs = self.consecutive_arcs();
        arcs.sort_unstable();
        Ok(ArcDiagram {
            point_count: self.ground_size,
            arcs,
        })
    }

    /// Splits a non-crossing partition into pieces.
    ///
    /// A piece starts at the block holding the first element not yet
    /// covered and gathers every block lying inside that block's span. The
    /// next piece starts right after the span.
    pub fn decompose_pieces(&self) -> Result<PieceList> {
        if !self.is_noncrossing() {
            return Err(Error::Crossing(self.to_string()));
        }
        let labels = self.labels();
        let mut pieces = Vec::new();
        let mut start = 1u32;
        while start <= self.ground_size {
            let head = labels[start as usize - 1];
            let end = *self.blocks[head].last().unwrap();
            let mut members: Vec<usize> = Vec::new();
            for x in start..=end {
                let b = labels[x as usize - 1];
                if !members.contains(&b) {
                    members.push(b);
                }
            }
            pieces.push(Piece {
                support: start..=end,
                blocks: members
                    .into_iter()
                    .map(|b| self.blocks[b].clone())
                    .collect(),
            });
            start = end + 1;
        }
        Ok(PieceList { pieces })
    }

    /// The partition induced on the integers strictly between the
    /// `gap`-th and `gap + 1`-th elements of block `block`, shifted down so
    /// that it is a partition of `[1..=difference - 1]`. Both indices are
    /// 0-based.
    pub fn subpartition(&self, block: usize, gap: usize) -> Result<Partition> {
        if let Some(v) = self.special_violation() {
            return Err(Error::NotSpecial(v));
        }
        let b = self.blocks.get(block).ok_or_else(|| {
            Error::Index(format!("block {block} of {} blocks", self.blocks.len()))
        })?;
        if gap + 1 >= b.len() {
            return Err(Error::Index(format!(
                "gap {gap} in a block of size {}",
                b.len()
            )));
        }
        let (lo, hi) = (b[gap], b[gap + 1]);
        let inner: Vec<Vec<u32>> = self
            .blocks
            .iter()
            .filter(|other| other[0] > lo && other[0] < hi)
            .map(|other| other.iter().map(|&x| x - lo).collect())
            .collect();
        Partition::new(inner)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `block ("|" block)*` with `block = int ("," int)*`. Spaces
    /// around tokens are accepted.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty partition text".into()));
        }
        let blocks = text
            .split('|')
            .map(|block| {
                block
                    .split(',')
                    .map(|tok| {
                        let tok = tok.trim();
                        if tok.is_empty() || !tok.bytes().all(|c| c.is_ascii_digit()) {
                            return Err(Error::Parse(format!("bad element `{tok}` in `{text}`")));
                        }
                        tok.parse::<u32>()
                            .map_err(|e| Error::Parse(format!("element `{tok}`: {e}")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(blocks)
    }
}

/// Why a partition fails to be special.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecialViolation {
    EvenGround { ground_size: u32 },
    BlockCount { expected: usize, found: usize },
    Crossing { first: Arc, second: Arc },
    Consecutive { value: u32 },
}

impl fmt::Display for SpecialViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecialViolation::EvenGround { ground_size } => {
                write!(f, "ground set [{ground_size}] has even size")
            }
            SpecialViolation::BlockCount { expected, found } => {
                write!(f, "block count {found}, expected {expected}")
            }
            SpecialViolation::Crossing { first, second } => {
                write!(f, "crossing arcs {first} and {second}")
            }
            SpecialViolation::Consecutive { value } => {
                write!(
                    f,
                    "consecutive integers {value} and {} share a block",
                    value + 1
                )
            }
        }
    }
}

/// An arc `(left, right)` joining two consecutive elements of a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub left: u32,
    pub right: u32,
}

impl Arc {
    pub const fn new(left: u32, right: u32) -> Self {
        Self { left, right }
    }

    pub fn span(&self) -> u32 {
        self.right - self.left
    }

    /// Endpoints strictly interleave. Shared endpoints do not count.
    pub fn crosses(&self, other: &Arc) -> bool {
        (self.left < other.left && other.left < self.right && self.right < other.right)
            || (other.left < self.left && self.left < other.right && other.right < self.right)
    }

    /// `other` lies under `self` (distinct arcs only).
    pub fn contains(&self, other: &Arc) -> bool {
        self != other && self.left <= other.left && other.right <= self.right
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.left, self.right)
    }
}

/// Puttenham form of a non-crossing partition: points `1..=point_count` and
/// arcs sorted by left endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArcDiagram {
    point_count: u32,
    arcs: Vec<Arc>,
}

impl ArcDiagram {
    pub fn new(point_count: u32, mut arcs: Vec<Arc>) -> Result<Self> {
        if point_count == 0 {
            return Err(Error::InvalidDiagram("no points".into()));
        }
        for a in &arcs {
            if a.left < 1 || a.left >= a.right || a.right > point_count {
                return Err(Error::InvalidDiagram(format!(
                    "arc {a} outside 1..={point_count} or not left < right"
                )));
            }
        }
        arcs.sort_unstable();
        if let Some(w) = arcs.windows(2).find(|w| w[0].left == w[1].left) {
            return Err(Error::InvalidDiagram(format!(
                "arcs {} and {} share a left endpoint",
                w[0], w[1]
            )));
        }
        let mut rights: Vec<u32> = arcs.iter().map(|a| a.right).collect();
        rights.sort_unstable();
        if let Some(w) = rights.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidDiagram(format!(
                "two arcs share right endpoint {}",
                w[0]
            )));
        }
        for (i, a) in arcs.iter().enumerate() {
            if let Some(b) = arcs[i + 1..].iter().find(|b| a.crosses(b)) {
                return Err(Error::InvalidDiagram(format!("arcs {a} and {b} cross")));
            }
        }
        Ok(Self { point_count, arcs })
    }

    pub fn point_count(&self) -> u32 {
        self.point_count
    }

    /// Arcs in ascending left-endpoint order.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Blocks are the chains of arcs linked through shared endpoints.
    pub fn to_partition(&self) -> Partition {
        let m = self.point_count as usize;
        let mut next = vec![0u32; m + 1];
        let mut has_incoming = vec![false; m + 1];
        for a in &self.arcs {
            next[a.left as usize] = a.right;
            has_incoming[a.right as usize] = true;
        }
        let mut blocks = Vec::new();
        for (start, _) in has_incoming.iter().enumerate().skip(1).filter(|(_, &i)| !i) {
            let mut block = vec![start as u32];
            let mut x = start;
            while next[x] != 0 {
                x = next[x] as usize;
                block.push(x as u32);
            }
            blocks.push(block);
        }
        Partition {
            ground_size: self.point_count,
            blocks,
        }
    }

    /// Depth of the deepest chain of strictly nested arcs.
    pub fn nesting_depth(&self) -> usize {
        let mut order: Vec<&Arc> = self.arcs.iter().collect();
        order.sort_by_key(|a| a.span());
        let mut depth: Vec<usize> = Vec::with_capacity(order.len());
        for (i, a) in order.iter().enumerate() {
            let inner = (0..i)
                .filter(|&j| a.contains(order[j]))
                .map(|j| depth[j])
                .max()
                .unwrap_or(0);
            depth.push(inner + 1);
        }
        depth.into_iter().max().unwrap_or(0)
    }

    pub(crate) fn from_sorted_unchecked(point_count: u32, arcs: Vec<Arc>) -> Self {
        Self { point_count, arcs }
    }
}

/// Inverse of [`Partition::to_arcs`].
pub fn from_arcs(diagram: &ArcDiagram) -> Partition {
    diagram.to_partition()
}

/// One piece: a run of blocks whose union is the interval `support`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub support: RangeInclusive<u32>,
    pub blocks: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceList {
    pub pieces: Vec<Piece>,
}

impl PieceList {
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }
}
