//! The bijection between special partitions of `[2n+1]` and valid sequences
//! of length `n`.
//!
//! Forward: record for every element the distance to the next element of
//! its block (0 at block maxima), keep the `n` non-zero distances in
//! position order, reverse them and halve each one.
//!
//! Inverse: start from the chain `(1,3),(3,5),..,(2n-1,2n+1)` and, for step
//! `i = 1..n`, stretch the `i`-th arc (by left endpoint) to span `2 s_{n-i+1}`
//! while pulling the `s_{n-i+1} - 1` span-2 arcs that followed it one point
//! to the left, underneath the stretched arc.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{Arc, ArcDiagram, Partition};
use crate::registry::{Named, Registry};
use crate::sequence::{format_entries, CatSeq};

/// Distance from each element to the next element of its block, 0 at block
/// maxima. Index `i - 1` holds `d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiffSeq(Vec<u32>);

impl DiffSeq {
    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn zero_count(&self) -> usize {
        self.0.iter().filter(|&&d| d == 0).count()
    }

    /// Non-zero entries in position order.
    pub fn nonzero(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied().filter(|&d| d != 0)
    }

    /// First broken structural property, if any: `n + 1` zeros, every
    /// non-zero entry even, every arc ending inside the ground set.
    pub fn structure_violation(&self) -> Option<String> {
        let m = self.0.len();
        if m.is_multiple_of(2) {
            return Some(format!("length {m} is even"));
        }
        let n = (m - 1) / 2;
        if self.zero_count() != n + 1 {
            return Some(format!("{} zeros, expected {}", self.zero_count(), n + 1));
        }
        for (idx, &d) in self.0.iter().enumerate() {
            if d % 2 == 1 {
                return Some(format!("d_{} = {d} is odd", idx + 1));
            }
            if d > 0 && idx + 1 + d as usize > m {
                return Some(format!("d_{} = {d} runs past {m}", idx + 1));
            }
        }
        None
    }
}

impl fmt::Display for DiffSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::sequence::write_entries(f, &self.0)
    }
}

fn require_special(p: &Partition) -> Result<()> {
    match p.special_violation() {
        Some(v) => Err(Error::NotSpecial(v)),
        None => Ok(()),
    }
}

pub fn difference_sequence(p: &Partition) -> Result<DiffSeq> {
    require_special(p)?;
    Ok(DiffSeq(raw_differences(p)))
}

fn raw_differences(p: &Partition) -> Vec<u32> {
    let mut diffs = vec![0; p.ground_size() as usize];
    for block in p.blocks() {
        for w in block.windows(2) {
            diffs[w[0] as usize - 1] = w[1] - w[0];
        }
    }
    diffs
}

/// The forward image as plain integers, without checking that it is a valid
/// sequence. Verification code uses this to test well-definedness.
pub fn forward_entries(p: &Partition) -> Result<Vec<u32>> {
    let diffs = difference_sequence(p)?;
    Ok(diffs
        .nonzero()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|d| d / 2)
        .collect())
}

pub fn forward(p: &Partition) -> Result<CatSeq> {
    CatSeq::new(forward_entries(p)?)
}

/// The chain of span-2 arcs on `2n+1` points: the partition with all odd
/// numbers in one block and every even number alone.
pub fn initial_diagram(n: usize) -> ArcDiagram {
    let arcs = (0..n as u32)
        .map(|k| Arc::new(2 * k + 1, 2 * k + 3))
        .collect();
    ArcDiagram::from_sorted_unchecked(2 * n as u32 + 1, arcs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArcChange {
    pub before: Arc,
    pub after: Arc,
}

impl fmt::Display for ArcChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.before, self.after)
    }
}

/// Stretches arc `index` (0-based, ascending left endpoint) to span `2 * value`
/// and shifts the `value - 1` arcs after it one point left.
///
/// The arc must have span 2 and be followed by a contiguous chain of
/// `value - 1` span-2 arcs; anything else is reported as
/// [`Error::Structure`]. With `value == 1` the diagram is returned as is.
pub fn stretch_step(diagram: &ArcDiagram, index: usize, value: u32) -> Result<ArcDiagram> {
    stretch(diagram, index, value).map(|(d, _, _)| d)
}

fn stretch(
    diagram: &ArcDiagram,
    index: usize,
    value: u32,
) -> Result<(ArcDiagram, ArcChange, Vec<ArcChange>)> {
    let step = index + 1;
    let fail = |reason: String| Error::Structure { step, reason };
    let arcs = diagram.arcs();
    let head = *arcs
        .get(index)
        .ok_or_else(|| fail(format!("no arc {step}; diagram has {}", arcs.len())))?;
    if value == 0 {
        return Err(fail("stretch value must be at least 1".into()));
    }
    if value == 1 {
        let unchanged = ArcChange {
            before: head,
            after: head,
        };
        return Ok((diagram.clone(), unchanged, Vec::new()));
    }
    let p = head.left;
    if head.span() != 2 {
        return Err(fail(format!("arc {head} does not have span 2")));
    }
    let mut next = arcs.to_vec();
    let mut shifted = Vec::with_capacity(value as usize - 1);
    for k in 1..value {
        let expected = Arc::new(p + 2 * k, p + 2 * k + 2);
        match arcs.get(index + k as usize) {
            Some(&arc) if arc == expected => {
                let moved = Arc::new(arc.left - 1, arc.right - 1);
                next[index + k as usize] = moved;
                shifted.push(ArcChange {
                    before: arc,
                    after: moved,
                });
            }
            Some(&arc) => {
                return Err(fail(format!(
                    "value {value} needs arc {expected} after {head}, found {arc}"
                )))
            }
            None => {
                return Err(fail(format!(
                    "value {value} needs arc {expected} after {head}, found none"
                )))
            }
        }
    }
    let stretched = Arc::new(p, p + 2 * value);
    next[index] = stretched;
    let result = ArcDiagram::new(diagram.point_count(), next)
        .map_err(|e| fail(format!("result is not a diagram: {e}")))?;
    Ok((
        result,
        ArcChange {
            before: head,
            after: stretched,
        },
        shifted,
    ))
}

pub fn inverse(s: &CatSeq) -> Result<Partition> {
    let n = s.len();
    let mut diagram = initial_diagram(n);
    for i in 0..n {
        diagram = stretch_step(&diagram, i, s.entries()[n - 1 - i])?;
    }
    Ok(diagram.to_partition())
}

/// Validates raw entries first, then inverts.
pub fn inverse_entries(entries: &[u32]) -> Result<Partition> {
    inverse(&CatSeq::new(entries.to_vec())?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// 1-based step number; the diagram after step `i` is `D_{i+1}`.
    pub step: usize,
    pub value: u32,
    pub stretched: ArcChange,
    pub shifted: Vec<ArcChange>,
    pub diagram: ArcDiagram,
}

/// Every intermediate diagram of the inverse construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionTrace {
    pub sequence: CatSeq,
    pub initial: ArcDiagram,
    pub steps: Vec<TraceStep>,
}

/// A run of consecutive equal diagrams `D_first ..= D_last` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagramGroup<'a> {
    pub first: usize,
    pub last: usize,
    pub diagram: &'a ArcDiagram,
}

impl ConstructionTrace {
    /// `D_1 ..= D_{n+1}`.
    pub fn diagrams(&self) -> Vec<&ArcDiagram> {
        std::iter::once(&self.initial)
            .chain(self.steps.iter().map(|s| &s.diagram))
            .collect()
    }

    pub fn result(&self) -> Partition {
        self.steps
            .last()
            .map_or(&self.initial, |s| &s.diagram)
            .to_partition()
    }

    /// Consecutive equal diagrams merged.
    pub fn distinct_groups(&self) -> Vec<DiagramGroup<'_>> {
        let mut groups: Vec<DiagramGroup<'_>> = Vec::new();
        for (i, d) in self.diagrams().into_iter().enumerate() {
            match groups.last_mut() {
                Some(g) if g.diagram == d => g.last = i + 1,
                _ => groups.push(DiagramGroup {
                    first: i + 1,
                    last: i + 1,
                    diagram: d,
                }),
            }
        }
        groups
    }

    /// One line per step:
    /// `<step> <value> <before>-><after> <shifted|-> <partition>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let shifted = if s.shifted.is_empty() {
                "-".to_string()
            } else {
                s.shifted
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            };
            out.push_str(&format!(
                "{} {} {} {} {}\n",
                s.step,
                s.value,
                s.stretched,
                shifted,
                s.diagram.to_partition()
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Record<'a> {
            step: usize,
            value: u32,
            stretched: &'a ArcChange,
            shifted: &'a [ArcChange],
            partition: String,
        }
        let records: Vec<Record<'_>> = self
            .steps
            .iter()
            .map(|s| Record {
                step: s.step,
                value: s.value,
                stretched: &s.stretched,
                shifted: &s.shifted,
                partition: s.diagram.to_partition().to_string(),
            })
            .collect();
        serde_json::to_value(records).expect("trace records serialize")
    }
}

pub fn inverse_trace(s: &CatSeq) -> Result<ConstructionTrace> {
    let n = s.len();
    let initial = initial_diagram(n);
    let mut steps: Vec<TraceStep> = Vec::with_capacity(n);
    for i in 0..n {
        let value = s.entries()[n - 1 - i];
        let current = steps.last().map_or(&initial, |st| &st.diagram);
        let (diagram, stretched, shifted) = stretch(current, i, value)?;
        steps.push(TraceStep {
            step: i + 1,
            value,
            stretched,
            shifted,
            diagram,
        });
    }
    Ok(ConstructionTrace {
        sequence: s.clone(),
        initial,
        steps,
    })
}

/// Interchangeable implementations of the two directions of the map, so
/// verification can run against alternatives.
pub trait Bijection: Named + Send + Sync {
    fn forward(&self, p: &Partition) -> Result<Vec<u32>>;
    fn inverse(&self, s: &CatSeq) -> Result<Partition>;
}

/// Differences forward, arc stretching inverse.
pub struct ArcStretching;

impl Named for ArcStretching {
    fn name(&self) -> &'static str {
        "arc-stretching"
    }

    fn description(&self) -> &'static str {
        "difference sequence forward, arc stretching inverse"
    }
}

impl Bijection for ArcStretching {
    fn forward(&self, p: &Partition) -> Result<Vec<u32>> {
        forward_entries(p)
    }

    fn inverse(&self, s: &CatSeq) -> Result<Partition> {
        inverse(s)
    }
}

/// Deliberately broken forward map (skips the reversal). Used to prove the
/// verifier catches a faulty implementation.
#[doc(hidden)]
pub struct UnreversedForward;

impl Named for UnreversedForward {
    fn name(&self) -> &'static str {
        "mutant-unreversed"
    }

    fn hidden(&self) -> bool {
        true
    }
}

impl Bijection for UnreversedForward {
    fn forward(&self, p: &Partition) -> Result<Vec<u32>> {
        Ok(difference_sequence(p)?.nonzero().map(|d| d / 2).collect())
    }

    fn inverse(&self, s: &CatSeq) -> Result<Partition> {
        inverse(s)
    }
}

pub fn bijections() -> Registry<dyn Bijection> {
    let mut reg: Registry<dyn Bijection> = Registry::new("bijection");
    reg.register(Box::new(ArcStretching))
        .register(Box::new(UnreversedForward));
    reg
}

/// Renders a sequence's entries for diagnostics even when it is invalid.
pub fn describe_entries(entries: &[u32]) -> String {
    if entries.is_empty() {
        "(empty)".to_string()
    } else {
        format_entries(entries)
    }
}
