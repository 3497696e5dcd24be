//! Acceptance criteria. Runs as a plain binary (`harness = false`) so every
//! criterion prints one PASS/FAIL line; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use puttenham::bijection::{forward, inverse, inverse_trace};
use puttenham::oracles::{
    catalan, check_corollaries, check_floor_lemma, check_max_ground, compositions,
    enumerate_special, min_ssp_blocks,
};
use puttenham::render::{render_svg, RenderSpec};
use puttenham::sequence::{generate_all, GoverningState};
use puttenham::{CatSeq, Partition};

const PI13: &str = "1,13|2,4,6,12|3|5|7,11|8,10|9";
const TRACE_SEQ: &str = "1 1 1 4 1 2 1 4";
const TRACE_PARTITION: &str = "1,9,17|2,4,8|3|5,7|6|10,12,14,16|11|13|15";

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(started: Instant, limit: Duration) -> Result<Duration, String> {
    let took = started.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(took)
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(f)
}

fn worked_example() -> Outcome {
    let p: Partition = PI13.parse().map_err(|e| format!("{e}"))?;
    let s = forward(&p).map_err(|e| format!("{e}"))?;
    ensure(s.entries() == [1, 2, 3, 1, 1, 6], || {
        format!("forward = {s}")
    })?;
    let back = inverse(&s).map_err(|e| format!("{e}"))?.to_string();
    ensure(back == PI13, || format!("inverse = {back}"))?;
    Ok(format!("{PI13} <-> {s}"))
}

fn governing_example() -> Outcome {
    let values: [[u32; 8]; 5] = [
        [1, 1, 1, 1, 1, 1, 1, 4],
        [1, 1, 1, 1, 1, 1, 1, 4],
        [1, 1, 1, 1, 1, 2, 1, 4],
        [1, 1, 1, 1, 1, 2, 1, 4],
        [1, 1, 1, 4, 1, 2, 1, 4],
    ];
    let bounds: [[u32; 8]; 5] = [
        [1, 2, 3, 4, 1, 2, 3, 4],
        [1, 2, 3, 4, 1, 2, 1, 4],
        [1, 2, 3, 4, 1, 2, 1, 4],
        [1, 2, 3, 4, 1, 2, 1, 4],
        [1, 2, 3, 4, 1, 2, 1, 4],
    ];
    let mut state = GoverningState::initial(8);
    ensure(
        state.values() == [1; 8] && state.bounds() == [1, 2, 3, 4, 5, 6, 7, 8],
        || "initial state".into(),
    )?;
    for (i, m) in [4, 1, 2, 1, 4].into_iter().enumerate() {
        state = state
            .set_value(m)
            .map_err(|e| format!("step {}: {e}", i + 1))?;
        ensure(state.values() == values[i], || {
            format!("T^{} = {:?}", i + 1, state.values())
        })?;
        ensure(state.bounds() == bounds[i], || {
            format!("g^{} = {:?}", i + 1, state.bounds())
        })?;
    }
    Ok("T^1..T^5 and g^1..g^5 match".into())
}

fn cardinality() -> Outcome {
    let started = Instant::now();
    let counts = single_threaded(|| -> Result<Vec<usize>, String> {
        let mut counts = Vec::new();
        for n in 0..=9usize {
            let specials = enumerate_special(n).len();
            let sequences = generate_all(n).count();
            let c = catalan(n as u32);
            ensure(
                BigUint::from(specials) == c && BigUint::from(sequences) == c,
                || format!("n={n}: {specials} partitions, {sequences} sequences, C_n = {c}"),
            )?;
            counts.push(specials);
        }
        Ok(counts)
    })?;
    ensure(counts[9] == 4862, || format!("n=9 count {}", counts[9]))?;
    let took = within(started, Duration::from_secs(60))?;
    Ok(format!("counts {counts:?} in {took:.2?}"))
}

fn round_trips() -> Outcome {
    let mut checked = 0usize;
    for n in 0..=9usize {
        for p in enumerate_special(n) {
            let s = forward(&p).map_err(|e| format!("forward({p}): {e}"))?;
            let back = inverse(&s).map_err(|e| format!("inverse({s}): {e}"))?;
            ensure(back == p, || format!("{p} -> {s} -> {back}"))?;
            checked += 1;
        }
        for s in generate_all(n) {
            let p = inverse(&s).map_err(|e| format!("inverse({s}): {e}"))?;
            let image = forward(&p).map_err(|e| format!("forward({p}): {e}"))?;
            ensure(image == s, || format!("{s} -> {p} -> {image}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} round trips, 0 failures"))
}

fn min_blocks_and_max_ground() -> Outcome {
    let started = Instant::now();
    single_threaded(|| -> Result<(), String> {
        for m in 1..=13usize {
            let got = min_ssp_blocks(m);
            ensure(got == m / 2 + 1, || format!("m={m}: min blocks {got}"))?;
        }
        for b in 0..=6usize {
            ensure(check_max_ground(b), || format!("max ground fails at b={b}"))?;
        }
        Ok(())
    })?;
    let took = within(started, Duration::from_secs(120))?;
    Ok(format!("m=1..=13, b=0..=6 in {took:.2?}"))
}

fn corollaries() -> Outcome {
    let mut total = 0;
    for n in 0..=9usize {
        let r = check_corollaries(n);
        ensure(r.passed(), || format!("n={n}: {:?}", r.counterexample))?;
        total += r.count_checked;
    }
    Ok(format!("{total} partitions, 0 counterexamples"))
}

fn floor_lemma() -> Outcome {
    let started = Instant::now();
    let mut last = 0;
    for n in 1..=12u32 {
        let mut count = 0u64;
        for c in compositions(n) {
            ensure(check_floor_lemma(&c), || {
                format!("fails on {:?}", c.parts())
            })?;
            count += 1;
        }
        ensure(count == 1 << (n - 1), || {
            format!("n={n}: {count} compositions")
        })?;
        last = count;
    }
    ensure(last == 2048, || format!("n=12: {last} compositions"))?;
    let took = within(started, Duration::from_secs(5))?;
    Ok(format!(
        "all compositions of n<=12 ({last} at n=12) in {took:.2?}"
    ))
}

fn construction_trace() -> Outcome {
    let s: CatSeq = TRACE_SEQ.parse().map_err(|e| format!("{e}"))?;
    let t = inverse_trace(&s).map_err(|e| format!("{e}"))?;
    let diagrams = t.diagrams();
    ensure(diagrams.len() == 9, || {
        format!("{} diagrams", diagrams.len())
    })?;
    let groups = t.distinct_groups();
    ensure(groups.len() == 4, || {
        format!("{} distinct diagrams", groups.len())
    })?;
    ensure(
        diagrams[5] == diagrams[6] && diagrams[6] == diagrams[7] && diagrams[7] == diagrams[8],
        || "D_6..D_9 differ".into(),
    )?;
    let result = t.result();
    let image = forward(&result).map_err(|e| format!("{e}"))?;
    ensure(image == s, || format!("forward(final) = {image}"))?;
    ensure(result.to_string() == TRACE_PARTITION, || {
        format!("final {result}")
    })?;
    Ok(format!("final {result}"))
}

fn render_determinism() -> Outcome {
    let p: Partition = PI13.parse().map_err(|e| format!("{e}"))?;
    let d = p.to_arcs().map_err(|e| format!("{e}"))?;
    let spec = RenderSpec::default();
    let first = render_svg(&d, &spec);
    let second = render_svg(&d, &spec);
    ensure(first.as_bytes() == second.as_bytes(), || {
        "outputs differ".into()
    })?;
    let doc = roxmltree::Document::parse(&first).map_err(|e| format!("xml: {e}"))?;
    let paths = doc.descendants().filter(|n| n.has_tag_name("path")).count();
    ensure(paths == 6, || format!("{paths} paths"))?;
    Ok(format!("{} bytes, {paths} paths, well-formed", first.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("AC1 worked example forward/inverse", worked_example),
        ("AC2 governing sequence trace n=8", governing_example),
        ("AC3 cardinality n=0..=9", cardinality),
        ("AC4 bijection round trips n<=9", round_trips),
        (
            "AC5 minimum blocks and maximal ground set",
            min_blocks_and_max_ground,
        ),
        ("AC6 corollaries n<=9", corollaries),
        ("AC7 floor-sum inequality n<=12", floor_lemma),
        (
            "AC8 construction trace of 1 1 1 4 1 2 1 4",
            construction_trace,
        ),
        ("AC9 SVG determinism", render_determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
