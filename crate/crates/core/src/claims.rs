//! Named, runnable checks. Each [`Claim`] interprets a single integer limit
//! in its own units (largest `n`, largest ground set, ...), and
//! [`verify_all`] maps one global `n_max` onto every claim's limit.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bijection::{inverse_trace, Bijection, DiffSeq};
use crate::oracles::{
    catalan, check_corollaries, check_floor_lemma, check_max_ground, compositions,
    enumerate_special, first_failure, min_ssp_blocks, CheckReport,
};
use crate::partition::Partition;
use crate::registry::{Named, Registry};
use crate::sequence::{format_entries, generate_all, validate_sequence, CatSeq};

pub struct CheckContext<'a> {
    pub limit: usize,
    pub bijection: &'a dyn Bijection,
}

pub trait Claim: Named + Send + Sync {
    /// This claim's limit when a whole verification run goes up to `n_max`.
    fn limit_for(&self, n_max: usize) -> usize {
        n_max
    }

    fn run(&self, ctx: &CheckContext<'_>) -> CheckReport;
}

fn sweep_n<F>(claim: &str, limit: usize, check: F) -> CheckReport
where
    F: Fn(usize) -> (u64, Option<String>) + Sync,
{
    let started = Instant::now();
    let mut checked = 0;
    let mut failure = None;
    for n in 0..=limit {
        let (count, fail) = check(n);
        checked += count;
        if fail.is_some() {
            failure = fail;
            break;
        }
    }
    CheckReport::build(claim, format!("n=0..={limit}"), started, checked, failure)
}

struct Cardinality;

impl Named for Cardinality {
    fn name(&self) -> &'static str {
        "cardinality"
    }
    fn description(&self) -> &'static str {
        "special partitions, generated sequences and the Catalan number agree in count"
    }
}

impl Claim for Cardinality {
    fn run(&self, ctx: &CheckContext<'_>) -> CheckReport {
        let started = Instant::now();
        let mut counts = Vec::new();
        let mut failure = None;
        for n in 0..=ctx.limit {
            let specials = enumerate_special(n);
            let distinct = specials.windows(2).all(|w| w[0] != w[1]);
            let sequences: BTreeSet<CatSeq> = generate_all(n).collect();
            let generated = generate_all(n).count();
            let expected = catalan(n as u32);
            if !distinct || sequences.len() != generated {
                failure = Some(format!("n={n}: duplicate objects enumerated"));
            } else if expected != specials.len().into() || expected != generated.into() {
                failure = Some(format!(
                    "n={n}: {} special partitions, {generated} sequences, catalan {expected}",
                    specials.len()
                ));
            }
            counts.push(specials.len() as u64);
            if failure.is_some() {
                break;
            }
        }
        let checked = counts.iter().sum();
        let mut report = CheckReport::build(
            self.name(),
            format!("n=0..={}", ctx.limit),
            started,
            checked,
            failure,
        );
        report.counts_by_n = counts;
        report
    }
}

struct RoundTrip;

impl Named for RoundTrip {
    fn name(&self) -> &'static str {
        "round-trip"
    }
    fn description(&self) -> &'static str {
        "inverse(forward(p)) = p on special partitions and forward(inverse(s)) = s on sequences"
    }
}

impl Claim for RoundTrip {
    fn run(&self, ctx: &CheckContext<'_>) -> CheckReport {
        let bij = ctx.bijection;
        sweep_n(self.name(), ctx.limit, |n| {
            let specials = enumerate_special(n);
            let fail = first_failure(&specials, |p| {
                let image = match bij.forward(p) {
                    Ok(image) => image,
                    Err(e) => return Some(format!("forward({p}): {e}")),
                };
                if !validate_sequence(&image) {
                    return Some(format!(
                        "forward({p}) = [{}] is not a valid sequence",
                        format_entries(&image)
                    ));
                }
                let seq = CatSeq::new(image).expect("validated above");
                match bij.inverse(&seq) {
                    Ok(back) if back == *p => None,
                    Ok(back) => Some(format!("{p} -> [{seq}] -> {back}")),
                    Err(e) => Some(format!("{p} -> [{seq}] -> error: {e}")),
                }
            });
            if fail.is_some() {
                return (specials.len() as u64, fail);
            }
            let sequences: Vec<CatSeq> = generate_all(n).collect();
            let fail = first_failure(&sequences, |s| match bij.inverse(s) {
                Err(e) => Some(format!("inverse([{s}]): {e}")),
                Ok(p) => match bij.forward(&p) {
                    Ok(image) if image == s.entries() => None,
                    Ok(image) => Some(format!("[{s}] -> {p} -> [{}]", format_entries(&image))),
                    Err(e) => Some(format!("[{s}] -> {p} -> error: {e}")),
                },
            });
            ((specials.len() + sequences.len()) as u64, fail)
        })
    }
}

struct ImageEquivalence;

impl Named for ImageEquivalence {
    fn name(&self) -> &'static str {
        "image"
    }
    fn description(&self) -> &'static str {
        "the brute-force special partitions are exactly the inverse images of all sequences"
    }
}

impl Claim for ImageEquivalence {
    fn run(&self, ctx: &CheckContext<'_>) -> CheckReport {
        let bij = ctx.bijection;
        sweep_n(self.name(), ctx.limit, |n| {
            let specials: BTreeSet<Partition> = enumerate_special(n).into_iter().collect();
            let sequences: Vec<CatSeq> = generate_all(n).collect();
            let images: Result<BTreeSet<Partition>, String> = sequences
                .par_iter()
                .map(|s| bij.inverse(s).map_err(|e| format!("inverse([{s}]): {e}")))
                .collect();
            let fail = match images {
                Err(e) => Some(e),
                Ok(images) => specials
                    .symmetric_difference(&images)
                    .next()
                    .map(|p| format!("n={n}: {p} appears on only one side")),
            };
            (specials.len() as u64, fail)
        })
    }
}

struct DifferenceStructure;

impl Named for DifferenceStructure {
    fn name(&self) -> &'static str {
        "differences"
    }
    fn description(&self) -> &'static str {
        "difference sequences have n+1 zeros, even entries, and forward images satisfy a_j <= j"
    }
}

impl Claim for DifferenceStructure {
    fn run(&self, ctx: &CheckContext<'_>) -> CheckReport {
        sweep_n(self.name(), ctx.limit, |n| {
            let specials = enumerate_special(n);
            let fail = first_failure(&specials, |p| {
                let diffs: DiffSeq = match crate::bijection::difference_sequence(p) {
                    Ok(d) => d,
                    Err(e) => return Some(format!("{p}: {e}")),
                };
                if let Some(why) = diffs.structure_violation() {
                    return Some(format!("{p}: differences [{diffs}]: {why}"));
                }
                let image = ctx.bijection.forward(p).ok()?;
                image
                    .iter()
                    .enumerate()
                    .find(|(j, &a)| a as usize > j + 1)
                    .map(|(j, a)| format!("{p}: a_{} = {a} exceeds {}", j + 1, j + 1))
            });
            (specials.len() as u64, fail)
        })
    }
}

struct TraceStructure;

impl Named for TraceStructure {
    fn name(&self) -> &'static str {
        "trace"
    }
    fn description(&self) -> &'static str {
        "every intermediate diagram of the inverse construction is special, one piece, n+1 blocks"
    }
}

impl Claim for TraceStructure {
    fn run(&self, ctx: &CheckContext<'_>) -> CheckReport {
        sweep_n(self.name(), ctx.limit, |n| {
            let sequences: Vec<CatSeq> = generate_all(n).collect();
            let fail = first_failure(&sequences, |s| {
                let trace = match inverse_trace(s) {
                    Ok(t) => t,
                    Err(e) => return Some(format!("[{s}]: {e}")),
                };
                for (i, d) in trace.diagrams().into_iter().enumerate() {
                    let p = d.to_partition();
                    if p.block_count() != n + 1 {
                        return Some(format!(
                            "[{s}] D_{}: {p} has {} blocks",
                            i + 1,
                            p.block_count()
                        ));
                    }
                    if let Some(v) = p.special_violation() {
                        return Some(format!("[{s}] D_{}: {p}: {v}", i + 1));
                    }
                    match p.decompose_pieces() {
                        Ok(pieces) if pieces.len() == 1 => {}
                        Ok(pieces) => {
                            return Some(format!(
                                "[{s}] D_{}: {p} has {} pieces",
                                i + 1,
                                pieces.len()
                            ))
                        }
                        Err(e) => return Some(format!("[{s}] D_{}: {e}", i + 1)),
                    }
                }
                let distinct = trace.distinct_groups().len();
                let non_unit = s.entries().iter().filter(|&&v| v != 1).count();
                (distinct != non_unit + 1).then(|| {
                    format!("[{s}]: {distinct} distinct diagrams but {non_unit} entries above 1")
                })
            });
            (sequences.len() as u64, fail)
        })
    }
}

struct Corollaries;

impl Named for Corollaries {
    fn name(&self) -> &'static str {
        "corollaries"
    }
    fn description(&self) -> &'static str {
        "1 and 2n+1 share a block, in-block gaps are even, subpartitions are special, one piece"
    }
}

impl Claim for Corollaries {
    fn run(&self, ctx: &CheckContext<'_>) -> CheckReport {
        sweep_n(self.name(), ctx.limit, |n| {
            let r = check_corollaries(n);
            (r.count_checked, r.counterexample)
        })
    }
}

struct RepeatedEntries;

impl Named for RepeatedEntries {
    fn name(&self) -> &'static str {
        "repeats"
    }
    fn description(&self) -> &'static str {
        "in a valid sequence, s_i = s_(i+1) only when both are 1"
    }
}

impl Claim for RepeatedEntries {
    fn limit_for(&self, n_max: usize) -> usize {
        n_max + 1
    }

    fn run(&self, ctx: &CheckContext<'_>) -> CheckReport {
        sweep_n(self.name(), ctx.limit, |n| {
            let sequences: Vec<CatSeq> = generate_all(n).collect();
            let fail = first_failure(&sequences, |s| {
                s.entries()
                    .windows(2)
                    .any(|w| w[0] == w[1] && w[0] != 1)
                    .then(|| format!("[{s}]"))
            });
            (sequences.len() as u64, fail)
        })
    }
}

struct Generation;

impl Named for Generation {
    fn name(&self) -> &'static str {
        "generation"
    }
    fn description(&self) -> &'static str {
        "the right-to-left generator emits exactly the vectors in 1..=i passing both conditions"
    }
}

impl Claim for Generation {
    fn run(&self, ctx: &CheckContext<'_>) -> CheckReport {
        sweep_n(self.name(), ctx.limit, |n| {
            let generated: BTreeSet<Vec<u32>> = generate_all(n).map(CatSeq::into_inner).collect();
            let mut checked = 0u64;
            let mut entries = vec![1u32; n];
            // Odometer over {1} x {1,2} x .. x {1..n}.
            loop {
                checked += 1;
                if validate_sequence(&entries) != generated.contains(&entries) {
                    return (
                        checked,
                        Some(format!(
                            "n={n}: [{}] generator disagrees with the conditions",
                            format_entries(&entries)
                        )),
                    );
                }
                let Some(i) = (0..n).rev().find(|&i| entries[i] < i as u32 + 1) else {
                    break;
                };
                entries[i] += 1;
                entries[i + 1..].fill(1);
            }
            (checked, None)
        })
    }
}

struct FloorLemma;

impl Named for FloorLemma {
    fn name(&self) -> &'static str {
        "floor-lemma"
    }
    fn description(&self) -> &'static str {
        "sum floor(x_j/2) + k >= floor(n/2) + 1 for every composition of n"
    }
}

impl Claim for FloorLemma {
    fn limit_for(&self, n_max: usize) -> usize {
        n_max + 3
    }

    fn run(&self, ctx: &CheckContext<'_>) -> CheckReport {
        let started = Instant::now();
        let mut checked = 0;
        let mut failure = None;
        for n in 1..=ctx.limit as u32 {
            for c in compositions(n) {
                checked += 1;
                if !check_floor_lemma(&c) {
                    failure = Some(format!("{:?}", c.parts()));
                    break;
                }
            }
            if failure.is_some() {
                break;
            }
        }
        CheckReport::build(
            self.name(),
            format!("n=1..={}", ctx.limit),
            started,
            checked,
            failure,
        )
    }
}

struct MinBlocks;

impl Named for MinBlocks {
    fn name(&self) -> &'static str {
        "min-blocks"
    }
    fn description(&self) -> &'static str {
        "the fewest blocks of a semi-special partition of [m] is floor(m/2) + 1"
    }
}

impl Claim for MinBlocks {
    fn limit_for(&self, n_max: usize) -> usize {
        n_max + 4
    }

    fn run(&self, ctx: &CheckContext<'_>) -> CheckReport {
        let started = Instant::now();
        let ms: Vec<usize> = (1..=ctx.limit).collect();
        let failure = first_failure(&ms, |&m| {
            let got = min_ssp_blocks(m);
            (got != m / 2 + 1).then(|| format!("m={m}: minimum {got}, expected {}", m / 2 + 1))
        });
        CheckReport::build(
            self.name(),
            format!("m=1..={}", ctx.limit),
            started,
            ms.len() as u64,
            failure,
        )
    }
}

struct MaxGround;

impl Named for MaxGround {
    fn name(&self) -> &'static str {
        "max-ground"
    }
    fn description(&self) -> &'static str {
        "[2b+1] is the largest ground set with a semi-special partition into b+1 blocks"
    }
}

impl Claim for MaxGround {
    fn limit_for(&self, n_max: usize) -> usize {
        n_max.saturating_sub(3)
    }

    fn run(&self, ctx: &CheckContext<'_>) -> CheckReport {
        let started = Instant::now();
        let bs: Vec<usize> = (0..=ctx.limit).collect();
        let failure = first_failure(&bs, |&b| (!check_max_ground(b)).then(|| format!("b={b}")));
        CheckReport::build(
            self.name(),
            format!("b=0..={}", ctx.limit),
            started,
            bs.len() as u64,
            failure,
        )
    }
}

/// Every built-in claim, in the order `verify` runs them.
pub fn claims() -> Registry<dyn Claim> {
    let mut reg: Registry<dyn Claim> = Registry::new("claim");
    reg.register(Box::new(Cardinality))
        .register(Box::new(Generation))
        .register(Box::new(RepeatedEntries))
        .register(Box::new(RoundTrip))
        .register(Box::new(ImageEquivalence))
        .register(Box::new(DifferenceStructure))
        .register(Box::new(TraceStructure))
        .register(Box::new(Corollaries))
        .register(Box::new(FloorLemma))
        .register(Box::new(MinBlocks))
        .register(Box::new(MaxGround));
    reg
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub n_max: usize,
    pub status: crate::oracles::Status,
    pub reports: Vec<CheckReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(CheckReport::passed)
    }
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool")
}

/// Runs one claim at its own limit on a pool of `threads` workers.
pub fn run_claim(
    claim: &dyn Claim,
    limit: usize,
    bijection: &dyn Bijection,
    threads: usize,
) -> CheckReport {
    pool(threads).install(|| claim.run(&CheckContext { limit, bijection }))
}

/// Runs every registered claim scaled to `n_max`. Claims run one after
/// another; each fans out over the pool internally.
pub fn verify_all(n_max: usize, bijection: &dyn Bijection, threads: usize) -> VerifyReport {
    let registry = claims();
    let pool = pool(threads);
    let reports: Vec<CheckReport> = pool.install(|| {
        registry
            .iter()
            .map(|c| {
                c.run(&CheckContext {
                    limit: c.limit_for(n_max),
                    bijection,
                })
            })
            .collect()
    });
    let status = if reports.iter().all(CheckReport::passed) {
        crate::oracles::Status::Pass
    } else {
        crate::oracles::Status::Fail
    };
    VerifyReport {
        schema: 1,
        n_max,
        status,
        reports,
    }
}
