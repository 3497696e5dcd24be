//! Brute-force enumerators and direct checks of the structural facts about
//! special and semi-special partitions.
//!
//! Nothing here goes through the bijection: partitions are built one
//! element at a time by depth-first search, so these enumerators can be used
//! to check the bijection without sharing its code.

use std::ops::ControlFlow;
use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// `binom(2n, n) / (n + 1)`, exactly.
pub fn catalan(n: u32) -> BigUint {
    // After step k the accumulator holds binom(n + k, k).
    let mut acc = BigUint::from(1u32);
    for k in 1..=n {
        acc = acc * (n + k) / k;
    }
    acc / (n + 1)
}

/// Depth-first search over non-crossing partitions of `[m]` with no block
/// holding two consecutive integers, restricted to block counts in
/// `min_blocks..=max_blocks`.
///
/// The callback receives the block label of every element and the block
/// count, and may stop the search by returning `ControlFlow::Break`.
pub fn for_each_ssp<F>(
    m: usize,
    min_blocks: usize,
    max_blocks: usize,
    mut visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize], usize) -> ControlFlow<()>,
{
    if m == 0 {
        return ControlFlow::Continue(());
    }
    let mut search = SspSearch {
        m,
        min_blocks,
        max_blocks,
        labels: Vec::with_capacity(m),
        first: Vec::with_capacity(m),
        last: Vec::with_capacity(m),
    };
    search.extend(&mut visit)
}

struct SspSearch {
    m: usize,
    min_blocks: usize,
    max_blocks: usize,
    labels: Vec<usize>,
    first: Vec<usize>,
    last: Vec<usize>,
}

impl SspSearch {
    fn extend<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize], usize) -> ControlFlow<()>,
    {
        let k = self.labels.len() + 1;
        let blocks = self.first.len();
        if k > self.m {
            return visit(&self.labels, blocks);
        }
        // Every remaining element could open a new block at most.
        if blocks + (self.m - k + 1) < self.min_blocks {
            return ControlFlow::Continue(());
        }
        let previous = self.labels.last().copied();
        for b in 0..blocks {
            if Some(b) == previous {
                continue;
            }
            // Joining b is crossing iff some other block straddles b's last
            // element, i.e. opened before it and received an element after.
            let anchor = self.last[b];
            let straddled =
                (0..blocks).any(|c| c != b && self.first[c] < anchor && self.last[c] > anchor);
            if straddled {
                continue;
            }
            self.labels.push(b);
            self.last[b] = k;
            let flow = self.extend(visit);
            self.last[b] = anchor;
            self.labels.pop();
            flow?;
        }
        if blocks < self.max_blocks {
            self.labels.push(blocks);
            self.first.push(k);
            self.last.push(k);
            let flow = self.extend(visit);
            self.first.pop();
            self.last.pop();
            self.labels.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}

fn collect_ssp(m: usize, min_blocks: usize, max_blocks: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let _ = for_each_ssp(m, min_blocks, max_blocks, |labels, _| {
        out.push(Partition::from_labels(labels).expect("search yields a partition"));
        ControlFlow::Continue(())
    });
    out
}

/// Every semi-special partition of `[m]`, in search order.
pub fn enumerate_ssp(m: usize) -> Vec<Partition> {
    collect_ssp(m, 0, m)
}

/// Every special partition of `[2n+1]`, in ascending structural order
/// (blocks compared as integer lists, first block first).
pub fn enumerate_special(n: usize) -> Vec<Partition> {
    let mut out = collect_ssp(2 * n + 1, n + 1, n + 1);
    out.sort_unstable();
    out
}

/// Fewest blocks over all semi-special partitions of `[m]`.
pub fn min_ssp_blocks(m: usize) -> usize {
    let mut best = usize::MAX;
    let _ = for_each_ssp(m, 0, m, |_, blocks| {
        best = best.min(blocks);
        ControlFlow::Continue(())
    });
    best
}

fn ssp_exists(m: usize, min_blocks: usize, max_blocks: usize) -> bool {
    for_each_ssp(m, min_blocks, max_blocks, |_, _| ControlFlow::Break(())).is_break()
}

/// `[2b+1]` is the largest ground set with a semi-special partition into
/// `b + 1` blocks: one exists at `2b+1`, and none with at most `b + 1` blocks
/// exists at `2b+2` or `2b+3`.
pub fn check_max_ground(b: usize) -> bool {
    ssp_exists(2 * b + 1, b + 1, b + 1)
        && !ssp_exists(2 * b + 2, 0, b + 1)
        && !ssp_exists(2 * b + 3, 0, b + 1)
}

/// Positive parts summing to `total()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "composition parts must be positive and non-empty: {parts:?}"
            )));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }
}

/// All `2^(n-1)` compositions of `n >= 1`; bit `i` of the mask cuts after
/// position `i + 1`.
pub fn compositions(n: u32) -> impl Iterator<Item = Composition> {
    let cuts = n.saturating_sub(1);
    let count: u64 = if n == 0 { 0 } else { 1 << cuts };
    (0..count).map(move |mask| {
        let mut parts = Vec::new();
        let mut run = 1;
        for i in 0..cuts {
            if mask >> i & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        Composition { parts }
    })
}

/// `sum floor(x_j / 2) + k >= floor(n / 2) + 1`.
#[allow(clippy::int_plus_one)]
pub fn check_floor_lemma(c: &Composition) -> bool {
    let lhs: u32 = c.parts.iter().map(|x| x / 2).sum::<u32>() + c.parts.len() as u32;
    lhs >= c.total() / 2 + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of checking one claim over a range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub claim: String,
    pub range: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    pub count_checked: u64,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub counts_by_n: Vec<u64>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub(crate) fn build(
        claim: &str,
        range: String,
        started: Instant,
        count_checked: u64,
        counterexample: Option<String>,
    ) -> Self {
        Self {
            claim: claim.to_string(),
            range,
            status: if counterexample.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            counterexample,
            count_checked,
            elapsed_ms: started.elapsed().as_millis() as u64,
            counts_by_n: Vec::new(),
        }
    }
}

/// Runs `check` over `items` on the current rayon pool and returns the
/// failure with the smallest index.
pub(crate) fn first_failure<T, F>(items: &[T], check: F) -> Option<String>
where
    T: Sync,
    F: Fn(&T) -> Option<String> + Sync,
{
    items
        .par_iter()
        .enumerate()
        .filter_map(|(i, item)| check(item).map(|msg| (i, msg)))
        .min_by_key(|(i, _)| *i)
        .map(|(_, msg)| msg)
}

/// Why a special partition breaks one of its structural corollaries: the
/// ends `1` and `2n+1` share a block, every in-block gap is even, every
/// subpartition is special, and the partition is a single piece.
pub fn corollary_violation(p: &Partition) -> Option<String> {
    let m = p.ground_size();
    if p.block_of(1) != p.block_of(m) {
        return Some(format!("{p}: 1 and {m} in different blocks"));
    }
    for (bi, block) in p.blocks().iter().enumerate() {
        for (gap, w) in block.windows(2).enumerate() {
            if (w[1] - w[0]) % 2 == 1 {
                return Some(format!("{p}: odd gap {}..{}", w[0], w[1]));
            }
            match p.subpartition(bi, gap) {
                Ok(sub) if sub.is_special() => {}
                Ok(sub) => {
                    return Some(format!(
                        "{p}: subpartition {sub} between {} and {} not special",
                        w[0], w[1]
                    ))
                }
                Err(e) => {
                    return Some(format!(
                        "{p}: subpartition between {} and {}: {e}",
                        w[0], w[1]
                    ))
                }
            }
        }
    }
    match p.decompose_pieces() {
        Ok(pieces) if pieces.len() == 1 => None,
        Ok(pieces) => Some(format!("{p}: {} pieces", pieces.len())),
        Err(e) => Some(format!("{p}: {e}")),
    }
}

/// Checks every corollary over all special partitions of `[2n+1]`.
pub fn check_corollaries(n: usize) -> CheckReport {
    let started = Instant::now();
    let all = enumerate_special(n);
    let failure = first_failure(&all, corollary_violation);
    CheckReport::build(
        "corollaries",
        format!("n={n}"),
        started,
        all.len() as u64,
        failure,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;

    fn texts(ps: &[Partition]) -> Vec<String> {
        ps.iter().map(ToString::to_string).collect()
    }

    /// Every set partition of [m] via restricted growth strings.
    fn all_partitions(m: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut rgs = vec![0usize; m];
        fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if i == rgs.len() {
                out.push(Partition::from_labels(rgs).unwrap());
                return;
            }
            for b in 0..=max + 1 {
                rgs[i] = b;
                rec(i + 1, max.max(b), rgs, out);
            }
        }
        if m > 0 {
            rec(1, 0, &mut rgs, &mut out);
        }
        out
    }

    /// Literal four-index crossing test.
    fn brute_noncrossing(p: &Partition) -> bool {
        let lab = p.labels();
        let m = lab.len();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    for d in c + 1..m {
                        if lab[a] == lab[c] && lab[b] == lab[d] && lab[a] != lab[b] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), BigUint::from(1u32));
        assert_eq!(catalan(4), BigUint::from(14u32));
        assert_eq!(catalan(10), BigUint::from(16796u32));
        // binom(60,30)/31
        assert_eq!(catalan(30).to_string(), "3814986502092304");
    }

    #[test]
    fn bell_number_sanity() {
        let counts: Vec<usize> = (1..=7).map(|m| all_partitions(m).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52, 203, 877]);
    }

    #[test]
    fn special_examples() {
        assert_eq!(texts(&enumerate_special(0)), vec!["1"]);
        assert_eq!(texts(&enumerate_special(2)), vec!["1,3,5|2|4", "1,5|2,4|3"]);
        let six = enumerate_special(6);
        assert_eq!(six.len(), 132);
        assert!(six.contains(&"1,13|2,4,6,12|3|5|7,11|8,10|9".parse().unwrap()));
    }

    #[test]
    fn ssp_examples() {
        assert_eq!(texts(&enumerate_ssp(1)), vec!["1"]);
        assert_eq!(texts(&enumerate_ssp(2)), vec!["1|2"]);
        let mut three = texts(&enumerate_ssp(3));
        three.sort();
        assert_eq!(three, vec!["1,3|2", "1|2|3"]);
    }

    #[test]
    fn enumerators_match_filter_over_all_partitions() {
        for m in 1..=9 {
            let all = all_partitions(m);
            for p in &all {
                assert_eq!(p.is_noncrossing(), brute_noncrossing(p), "{p}");
            }
            let mut want: Vec<Partition> = all
                .iter()
                .filter(|p| p.is_semi_special())
                .cloned()
                .collect();
            let mut got = enumerate_ssp(m);
            want.sort();
            got.sort();
            assert_eq!(got, want, "m={m}");
            if m % 2 == 1 {
                let n = (m - 1) / 2;
                let want: Vec<Partition> = want.into_iter().filter(|p| p.is_special()).collect();
                assert_eq!(enumerate_special(n), want, "n={n}");
            }
        }
    }

    #[test]
    fn floor_lemma_examples() {
        assert!(check_floor_lemma(&Composition::new(vec![5]).unwrap()));
        assert!(check_floor_lemma(&Composition::new(vec![2, 3]).unwrap()));
        assert!(check_floor_lemma(
            &Composition::new(vec![1, 1, 1, 1]).unwrap()
        ));
        assert!(Composition::new(vec![]).is_err());
        assert!(Composition::new(vec![1, 0]).is_err());
    }

    #[test]
    fn compositions_are_complete() {
        for n in 1..=8u32 {
            let all: Vec<Composition> = compositions(n).collect();
            assert_eq!(all.len(), 1 << (n - 1));
            assert!(all.iter().all(|c| c.total() == n));
            let mut parts: Vec<Vec<u32>> = all.iter().map(|c| c.parts.clone()).collect();
            parts.sort();
            parts.dedup();
            assert_eq!(parts.len(), all.len());
        }
        assert_eq!(compositions(0).count(), 0);
    }

    #[test]
    fn min_blocks_examples() {
        assert_eq!(min_ssp_blocks(1), 1);
        assert_eq!(min_ssp_blocks(2), 2);
        assert_eq!(min_ssp_blocks(5), 3);
    }

    #[test]
    fn max_ground_examples() {
        assert!(check_max_ground(0));
        assert!(check_max_ground(1));
        assert!(check_max_ground(2));
    }

    #[test]
    fn corollary_examples() {
        let r = check_corollaries(6);
        assert!(r.passed());
        assert_eq!(r.count_checked, 132);
        let r = check_corollaries(1);
        assert!(r.passed());
        assert_eq!(r.count_checked, 1);
        assert!(check_corollaries(0).passed());
        assert!(corollary_violation(&"1,5|2,4|3".parse().unwrap()).is_none());
        assert!(corollary_violation(&"1,3|2|4|5".parse().unwrap()).is_some());
    }

    #[test]
    fn report_json_shape() {
        let r = check_corollaries(2);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["claim"], "corollaries");
        assert_eq!(v["status"], "pass");
        assert_eq!(v["count_checked"], 2);
        assert!(v.get("counterexample").is_none());
    }
}
