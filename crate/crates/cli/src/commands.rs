use std::fmt;
use std::fs;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use puttenham::bijection::{bijections, Bijection};
use puttenham::claims::{claims, run_claim, verify_all};
use puttenham::oracles::enumerate_special;
use puttenham::render::{renderers, RenderSpec};
use puttenham::sequence::{format_entries, generate_all, parse_entries};
use puttenham::{inverse_trace, CatSeq, Error, Partition};

use crate::{Command, InputKind, Kind, RunOptions};

pub const DEFAULT_CEILING: usize = 9;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(Error),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(e) if e.is_parse() => 2,
            CliError::Input(Error::UnknownName { .. }) => 2,
            CliError::Input(_) => 1,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage: {msg}"),
            CliError::Input(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Input(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T = ExitCode> = Result<T, CliError>;

pub fn run(command: Command) -> CliResult {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let strategies = bijections();
    let bijection = |name: &str| strategies.get(name);
    let code = match command {
        Command::Enumerate {
            kind,
            n,
            count_only,
        } => enumerate(&mut out, kind, n, count_only),
        Command::Map {
            partition,
            strategy,
        } => {
            let bij = bijection(&strategy.bijection)?;
            for_each_input(partition, |line| {
                let p: Partition = line.parse()?;
                if let Some(v) = p.special_violation() {
                    return Err(Error::NotSpecial(v).into());
                }
                let image = bij.forward(&p)?;
                writeln!(out, "{}", format_entries(&image))?;
                Ok(())
            })
        }
        Command::Invert {
            sequence,
            trace,
            json,
            strategy,
        } => {
            let bij = bijection(&strategy.bijection)?;
            let input = (!sequence.is_empty()).then(|| sequence.join(" "));
            for_each_input(input, |line| invert_line(&mut out, bij, line, trace, json))
        }
        Command::Verify { n_max, run } => {
            verify(&mut out, n_max, &run, bijection(&run.strategy.bijection)?)
        }
        Command::Check {
            claim,
            n_max,
            list,
            json,
            run,
        } => check(
            &mut out,
            claim,
            n_max,
            list,
            json,
            &run,
            bijection(&run.strategy.bijection)?,
        ),
        Command::Render {
            input,
            kind,
            format,
            out: path,
            trace,
            spacing,
        } => render(
            &mut out,
            &input,
            kind,
            &format,
            path.as_deref(),
            trace,
            spacing,
        ),
    }?;
    out.flush()?;
    Ok(code)
}

/// Runs `handle` on the argument, or on every stdin line when it is absent.
fn for_each_input<F>(arg: Option<String>, mut handle: F) -> CliResult
where
    F: FnMut(&str) -> CliResult<()>,
{
    match arg {
        Some(text) => handle(&text)?,
        None => {
            for line in io::stdin().lock().lines() {
                handle(&line?)?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn enumerate(out: &mut impl Write, kind: Kind, n: usize, count_only: bool) -> CliResult {
    match (kind, count_only) {
        (Kind::Special, true) => writeln!(out, "{}", enumerate_special(n).len())?,
        (Kind::Sequences, true) => writeln!(out, "{}", generate_all(n).count())?,
        (Kind::Special, false) => {
            for p in enumerate_special(n) {
                writeln!(out, "{p}")?;
            }
        }
        (Kind::Sequences, false) => {
            for s in generate_all(n) {
                writeln!(out, "{s}")?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn invert_line(
    out: &mut impl Write,
    bij: &dyn Bijection,
    line: &str,
    trace: bool,
    json: bool,
) -> CliResult<()> {
    let seq = CatSeq::new(parse_entries(line)?)?;
    let partition = bij.inverse(&seq)?;
    let steps = if trace {
        Some(inverse_trace(&seq)?)
    } else {
        None
    };
    if json {
        let mut value = serde_json::json!({
            "sequence": seq.to_string(),
            "partition": partition.to_string(),
        });
        if let Some(t) = &steps {
            value["trace"] = t.to_json();
        }
        writeln!(out, "{value}")?;
    } else {
        if let Some(t) = &steps {
            write!(out, "{}", t.to_text())?;
        }
        writeln!(out, "{partition}")?;
    }
    Ok(())
}

fn check_ceiling(n_max: usize, run: &RunOptions) -> CliResult<()> {
    if run.parallel == 0 {
        return Err(CliError::Usage("--parallel must be at least 1".into()));
    }
    if n_max > run.ceiling {
        return Err(CliError::Usage(format!(
            "n_max {n_max} is above the ceiling {}; pass --ceiling to raise it",
            run.ceiling
        )));
    }
    if run.ceiling > DEFAULT_CEILING {
        eprintln!(
            "warning: ceiling raised to {}; runs above n_max = {DEFAULT_CEILING} grow like 4^n",
            run.ceiling
        );
    }
    Ok(())
}

fn verify(out: &mut impl Write, n_max: usize, run: &RunOptions, bij: &dyn Bijection) -> CliResult {
    check_ceiling(n_max, run)?;
    let report = verify_all(n_max, bij, run.parallel);
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    writeln!(out, "{text}")?;
    for r in &report.reports {
        let tag = if r.passed() { "pass" } else { "FAIL" };
        eprintln!(
            "{tag} {:<12} {:<10} {:>8} checked",
            r.claim, r.range, r.count_checked
        );
        if let Some(c) = &r.counterexample {
            eprintln!("     counterexample: {c}");
        }
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn check(
    out: &mut impl Write,
    claim: Option<String>,
    n_max: Option<usize>,
    list: bool,
    json: bool,
    run: &RunOptions,
    bij: &dyn Bijection,
) -> CliResult {
    let registry = claims();
    if list {
        for c in registry.iter() {
            writeln!(out, "{:<12} {}", c.name(), c.description())?;
        }
        return Ok(ExitCode::SUCCESS);
    }
    let name = claim.ok_or_else(|| CliError::Usage("name a claim or pass --list".into()))?;
    let claim = registry.get(&name)?;
    let limit = n_max.unwrap_or_else(|| claim.limit_for(DEFAULT_CEILING));
    if run.parallel == 0 {
        return Err(CliError::Usage("--parallel must be at least 1".into()));
    }
    let report = run_claim(claim, limit, bij, run.parallel);
    if json {
        writeln!(
            out,
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        )?;
    } else {
        let tag = if report.passed() { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "{tag} {} {} ({} checked, {} ms)",
            report.claim, report.range, report.count_checked, report.elapsed_ms
        )?;
        if let Some(c) = &report.counterexample {
            writeln!(out, "counterexample: {c}")?;
        }
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Anything with `,` or `|` is a partition; several whitespace-separated
/// tokens make a sequence; a lone integer is read as a partition of `[1]`.
fn guess_kind(input: &str) -> InputKind {
    if input.contains([',', '|']) {
        InputKind::Partition
    } else if input.split_whitespace().count() > 1 {
        InputKind::Sequence
    } else {
        InputKind::Partition
    }
}

fn render(
    out: &mut impl Write,
    input: &str,
    kind: Option<InputKind>,
    format: &str,
    path: Option<&Path>,
    trace: bool,
    spacing: f64,
) -> CliResult {
    let registry = renderers();
    let renderer = registry.get(format)?;
    let spec = RenderSpec {
        spacing,
        ..RenderSpec::default()
    };
    spec.validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let text = match kind.unwrap_or_else(|| guess_kind(input)) {
        InputKind::Partition => {
            if trace {
                return Err(CliError::Usage("--trace needs a sequence input".into()));
            }
            let p: Partition = input.parse()?;
            if !p.is_noncrossing() {
                return Err(Error::Crossing(p.to_string()).into());
            }
            renderer.diagram(&p.to_arcs()?, &spec)
        }
        InputKind::Sequence => {
            let seq = CatSeq::new(parse_entries(input)?)?;
            let t = inverse_trace(&seq)?;
            if trace {
                renderer.trace(&t, &spec)
            } else {
                renderer.diagram(t.diagrams().last().expect("at least D_1"), &spec)
            }
        }
    };
    match path {
        Some(path) => fs::write(path, text).map_err(|e| {
            CliError::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display())))
        })?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}
