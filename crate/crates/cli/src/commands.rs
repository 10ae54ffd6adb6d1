use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graham_core::graham::{
    self, records_from, Analysis, ConjectureReport, DEFAULT_MAX_NULLITY,
};
use graham_core::parallel::try_map_range;
use graham_core::{oracle, SequenceCount, SpfSieve};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bfile::{self, Function};
use crate::cache::{self, CacheRecord};
use crate::CliError;

/// Violations at or below this bound make `conjectures` exit non-zero;
/// beyond it they are only reported.
const ASSERT_LIMIT: u64 = 10_000;

#[derive(Debug, Parser)]
#[command(name = "graham-lab", version, about = "Square-product sequences: g(n), T(n) and friends")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// One JSON object per line instead of tab-separated text
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for range scans (default: all cores)
    #[arg(long, global = true, value_name = "K")]
    pub jobs: Option<usize>,

    /// Refuse to enumerate more than 2^N sequences
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_MAX_NULLITY)]
    pub max_nullity: usize,

    /// CSV file of previously computed g, nullity and T values
    #[arg(long, global = true, value_name = "PATH", env = "GRAHAM_LAB_CACHE")]
    pub cache: Option<PathBuf>,
}

/// A single n, or the inclusive range `n..=to`.
#[derive(Debug, Clone, Copy, Args)]
pub struct Span {
    pub n: u64,
    pub to: Option<u64>,
}

impl Span {
    fn bounds(&self) -> Result<(u64, u64), CliError> {
        let to = self.to.unwrap_or(self.n);
        if to < self.n {
            return Err(CliError::Usage(format!("empty range {}..={to}", self.n)));
        }
        Ok((self.n, to))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Least g(n) with a square-product sequence n < ... <= g(n)
    G(Span),
    /// Greatest n with a square-product sequence ending at k (`-` for primes)
    Gbar(Span),
    /// Least k > n with nk square
    F(Span),
    /// Fewest terms in a sequence realising g(n)
    T(Span),
    /// Number of sequences realising g(n)
    Count(Span),
    /// Every sequence realising g(n), one per line
    Enumerate(Span),
    /// How many of those sequences are primitive
    Primitive(Span),
    /// Least n attaining each value of T(n) for n <= LIMIT
    Records { limit: u64 },
    /// Check g(n) = 2n and T(n) != 2 for n <= LIMIT
    Conjectures { limit: u64 },
    /// Compare an OEIS b-file against computed values
    Verify {
        bfile: PathBuf,
        /// Sequence id, e.g. A006255
        #[arg(long)]
        seq: String,
        /// First index to check
        #[arg(long)]
        from: Option<u64>,
        /// Last index to check
        #[arg(long)]
        to: Option<u64>,
    },
    /// Exhaustive search; exponential in the window size
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        n: u64,
        /// Largest k to try
        #[arg(long)]
        cap: Option<u64>,
        /// Power for the `gm` variant
        #[arg(long, default_value_t = 2)]
        power: u32,
        #[arg(long)]
        allow_expensive: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    G,
    T,
    Count,
    F,
    Gm,
    Lcm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Mismatch,
}

#[derive(Debug, Default, Serialize)]
struct Row {
    n: Option<u64>,
    g: Option<u64>,
    nullity: Option<usize>,
    t: Option<usize>,
    sequences: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    f: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    primitive: Option<u64>,
}

fn count_value(nullity: usize) -> Value {
    let c = SequenceCount { nullity };
    match c.exact() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

fn emit(out: &mut dyn Write, json_mode: bool, row: &Row, text: &str) -> Result<(), CliError> {
    if json_mode {
        let line = serde_json::to_string(row).map_err(anyhow::Error::from)?;
        writeln!(out, "{line}")?;
    } else {
        writeln!(out, "{text}")?;
    }
    Ok(())
}

fn sieve_for(max: u64) -> Result<SpfSieve, CliError> {
    Ok(SpfSieve::for_range(max)?)
}

#[derive(Debug, Clone, Copy)]
struct Known {
    n: u64,
    g: u64,
    nullity: usize,
    t: Option<usize>,
}

/// Results for `lo..=hi`, served from the cache where possible. New
/// results are appended to the cache file.
fn known_range(
    cli: &Cli,
    lo: u64,
    hi: u64,
    need_t: bool,
    sieve: &SpfSieve,
) -> Result<Vec<Known>, CliError> {
    let cached = match &cli.cache {
        Some(p) => cache::load(p)?,
        None => BTreeMap::new(),
    };
    let rows = try_map_range(lo..=hi, |n| -> graham_core::Result<(Known, bool)> {
        if let Some(r) = cached.get(&n) {
            if !need_t || r.t_min.is_some() {
                let k = Known { n, g: r.g, nullity: r.nullity, t: r.t_min };
                return Ok((k, false));
            }
        }
        let k = if need_t {
            let a = Analysis::compute(n, sieve)?;
            Known { n, g: a.g, nullity: a.nullity, t: Some(a.t) }
        } else {
            let r = graham::compute_g(n, sieve)?;
            Known { n, g: r.g, nullity: r.nullity, t: None }
        };
        Ok((k, true))
    })?;
    if let Some(p) = &cli.cache {
        let fresh: Vec<CacheRecord> = rows
            .iter()
            .filter(|(_, new)| *new)
            .map(|(k, _)| CacheRecord::now(k.n, k.g, k.nullity, k.t))
            .collect();
        if !fresh.is_empty() {
            cache::store(p, &fresh)?;
        }
    }
    Ok(rows.into_iter().map(|(k, _)| k).collect())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let json_mode = cli.json;
    match &cli.command {
        Command::G(span) | Command::T(span) | Command::Count(span) => {
            let (lo, hi) = span.bounds()?;
            let sieve = sieve_for(hi)?;
            let need_t = matches!(cli.command, Command::T(_));
            for k in known_range(cli, lo, hi, need_t, &sieve)? {
                let mut row = Row {
                    n: Some(k.n),
                    g: Some(k.g),
                    nullity: Some(k.nullity),
                    t: k.t,
                    ..Row::default()
                };
                let text = match cli.command {
                    Command::G(_) => format!("{}\t{}", k.n, k.g),
                    Command::T(_) => format!("{}\t{}", k.n, k.t.unwrap_or_default()),
                    _ => {
                        row.sequences = Some(count_value(k.nullity));
                        format!("{}\t{}", k.n, SequenceCount { nullity: k.nullity })
                    }
                };
                emit(out, json_mode, &row, &text)?;
            }
        }
        Command::Gbar(span) => {
            let (lo, hi) = span.bounds()?;
            let sieve = sieve_for(hi)?;
            let vals = try_map_range(lo..=hi, |k| graham::compute_gbar(k, &sieve))?;
            for (k, v) in (lo..=hi).zip(vals) {
                let row = Row { n: v, g: Some(k), ..Row::default() };
                let shown = v.map_or("-".to_string(), |v| v.to_string());
                emit(out, json_mode, &row, &format!("{k}\t{shown}"))?;
            }
        }
        Command::F(span) => {
            let (lo, hi) = span.bounds()?;
            let sieve = sieve_for(hi)?;
            let vals = try_map_range(lo..=hi, |n| graham::compute_f(n, &sieve))?;
            for (n, f) in (lo..=hi).zip(vals) {
                let row = Row { n: Some(n), f: Some(f), ..Row::default() };
                emit(out, json_mode, &row, &format!("{n}\t{f}"))?;
            }
        }
        Command::Enumerate(span) => {
            let (lo, hi) = span.bounds()?;
            let sieve = sieve_for(hi)?;
            for n in lo..=hi {
                let seqs = graham::enumerate_sequences(n, &sieve, cli.max_nullity)
                    .map_err(|e| capacity_hint(e, cli.max_nullity))?;
                if json_mode {
                    let terms: Vec<&[u64]> = seqs.iter().map(|s| s.terms()).collect();
                    let row = Row {
                        n: Some(n),
                        g: seqs.first().map(|s| s.last()),
                        nullity: Some(seqs.len().trailing_zeros() as usize),
                        sequences: Some(json!(terms)),
                        ..Row::default()
                    };
                    emit(out, true, &row, "")?;
                } else {
                    for s in &seqs {
                        writeln!(out, "{s}")?;
                    }
                }
            }
        }
        Command::Primitive(span) => {
            let (lo, hi) = span.bounds()?;
            let sieve = sieve_for(hi)?;
            let counts = try_map_range(lo..=hi, |n| {
                graham::count_primitive(n, &sieve, cli.max_nullity)
            })
            .map_err(|e| capacity_hint(e, cli.max_nullity))?;
            for (n, c) in (lo..=hi).zip(counts) {
                let row = Row { n: Some(n), primitive: Some(c), ..Row::default() };
                emit(out, json_mode, &row, &format!("{n}\t{c}"))?;
            }
        }
        Command::Records { limit } => {
            let rows = analyses(cli, *limit)?;
            let records = records_from(&rows);
            if !json_mode {
                writeln!(out, "{:>4}  {:>8}", "T", "n")?;
            }
            for (t, n) in records {
                if json_mode {
                    writeln!(out, "{}", json!({ "t": t, "n": n }))?;
                } else {
                    writeln!(out, "{t:>4}  {n:>8}")?;
                }
            }
        }
        Command::Conjectures { limit } => {
            let rows = analyses(cli, *limit)?;
            let sieve = sieve_for(*limit)?;
            let report = ConjectureReport::from_rows(*limit, &rows, &sieve);
            write_report(out, json_mode, &report)?;
            let asserted = report
                .counterexamples
                .iter()
                .chain(&report.t_equals_two)
                .any(|&n| n <= ASSERT_LIMIT);
            if asserted {
                return Ok(Outcome::Mismatch);
            }
        }
        Command::Verify { bfile, seq, from, to } => {
            return verify(out, json_mode, bfile, seq, *from, *to);
        }
        Command::Oracle { kind, n, cap, power, allow_expensive } => {
            if !allow_expensive {
                return Err(CliError::Usage(
                    "oracle searches are exponential in the window; pass --allow-expensive".into(),
                ));
            }
            run_oracle(out, json_mode, *kind, *n, *cap, *power)?;
        }
    }
    Ok(Outcome::Success)
}

fn capacity_hint(e: graham_core::Error, cap: usize) -> CliError {
    match e {
        graham_core::Error::CapacityExceeded { actual, .. } => CliError::Capacity(format!(
            "nullity {actual} exceeds --max-nullity {cap}; raise --max-nullity to enumerate 2^{actual} sequences"
        )),
        other => other.into(),
    }
}

fn analyses(cli: &Cli, limit: u64) -> Result<Vec<Analysis>, CliError> {
    if limit == 0 {
        return Ok(Vec::new());
    }
    let sieve = sieve_for(limit)?;
    Ok(known_range(cli, 1, limit, true, &sieve)?
        .into_iter()
        .map(|k| Analysis {
            n: k.n,
            g: k.g,
            nullity: k.nullity,
            t: k.t.expect("t requested"),
        })
        .collect())
}

fn list(ns: &[u64]) -> String {
    if ns.is_empty() {
        return "none".into();
    }
    ns.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn write_report(out: &mut dyn Write, json_mode: bool, r: &ConjectureReport) -> Result<(), CliError> {
    let doubling: Vec<u64> = r.doubling.iter().map(|d| d.n).collect();
    let all_prime_or_six = r.doubling.iter().all(|d| d.prime_or_six);
    if json_mode {
        let v = json!({
            "limit": r.limit,
            "doubling": doubling,
            "doubling_all_prime_or_six": all_prime_or_six,
            "max_t": r.max_t.map(|(t, n)| json!({ "t": t, "n": n })),
            "t_equals_two": r.t_equals_two,
            "counterexamples": r.counterexamples,
            "holds": r.holds(),
        });
        writeln!(out, "{v}")?;
        return Ok(());
    }
    writeln!(out, "range\t1..={}", r.limit)?;
    writeln!(out, "g(n) = 2n\t{}", list(&doubling))?;
    writeln!(out, "all prime or 6\t{}", if all_prime_or_six { "yes" } else { "no" })?;
    match r.max_t {
        Some((t, n)) => writeln!(out, "max T(n)\t{t} (first at n = {n})")?,
        None => writeln!(out, "max T(n)\tnone")?,
    }
    writeln!(out, "T(n) = 2\t{}", list(&r.t_equals_two))?;
    writeln!(out, "counterexamples\t{}", list(&r.counterexamples))?;
    Ok(())
}

fn verify(
    out: &mut dyn Write,
    json_mode: bool,
    path: &std::path::Path,
    seq: &str,
    from: Option<u64>,
    to: Option<u64>,
) -> Result<Outcome, CliError> {
    let def = bfile::lookup(seq)
        .ok_or_else(|| CliError::Usage(format!("unknown sequence id {seq:?}")))?;
    let entries: Vec<_> = bfile::load(path)?
        .into_iter()
        .filter(|e| from.is_none_or(|f| e.index >= f) && to.is_none_or(|t| e.index <= t))
        .collect();
    let mut args = Vec::with_capacity(entries.len());
    for e in &entries {
        let arg = def.argument(e.index).ok_or_else(|| {
            CliError::Usage(format!("{}: index {} is outside the domain", def.id, e.index))
        })?;
        args.push(arg);
    }
    let computed: Vec<String> = match args.iter().max() {
        None => Vec::new(),
        Some(&max) => {
            let sieve = sieve_for(max)?;
            try_map_range(0..=args.len() as u64 - 1, |i| {
                evaluate(def.function, args[i as usize], &sieve)
            })?
        }
    };
    let mismatches: Vec<(u64, u64, &String)> = entries
        .iter()
        .zip(&computed)
        .filter(|(e, c)| e.value.to_string() != **c)
        .map(|(e, c)| (e.index, e.value, c))
        .collect();
    if json_mode {
        let m: Vec<Value> = mismatches
            .iter()
            .map(|(i, exp, got)| json!({ "index": i, "expected": exp, "computed": got }))
            .collect();
        let v = json!({ "seq": def.id, "checked": entries.len(), "mismatches": m });
        writeln!(out, "{v}")?;
    } else {
        for (i, exp, got) in &mismatches {
            writeln!(out, "mismatch\t{i}\t{exp}\t{got}")?;
        }
        writeln!(
            out,
            "{}: {} terms checked, {} mismatches",
            def.id,
            entries.len(),
            mismatches.len()
        )?;
    }
    Ok(if mismatches.is_empty() { Outcome::Success } else { Outcome::Mismatch })
}

fn evaluate(function: Function, n: u64, sieve: &SpfSieve) -> graham_core::Result<String> {
    Ok(match function {
        Function::G => graham::compute_g(n, sieve)?.g.to_string(),
        Function::MinLength => graham::min_length(n, sieve)?.to_string(),
        // no sequence ends at a prime; tables record that as 0
        Function::GBar => graham::compute_gbar(n, sieve)?.unwrap_or(0).to_string(),
        Function::F => graham::compute_f(n, sieve)?.to_string(),
        Function::SequenceCount => graham::count_sequences(n, sieve)?.to_string(),
        Function::Nullity => graham::compute_g(n, sieve)?.nullity.to_string(),
    })
}

fn run_oracle(
    out: &mut dyn Write,
    json_mode: bool,
    kind: OracleKind,
    n: u64,
    cap: Option<u64>,
    power: u32,
) -> Result<(), CliError> {
    let mut row = Row { n: Some(n), ..Row::default() };
    let value = oracle_value(kind, n, cap, power, &mut row).map_err(|e| match e {
        graham_core::Error::CapacityExceeded { .. } => {
            CliError::Capacity(format!("{e}; choose a smaller --cap"))
        }
        other => other.into(),
    })?;
    emit(out, json_mode, &row, &format!("{n}\t{value}"))
}

fn oracle_value(
    kind: OracleKind,
    n: u64,
    cap: Option<u64>,
    power: u32,
    row: &mut Row,
) -> graham_core::Result<u64> {
    let window = n.saturating_add(oracle::MAX_WINDOW);
    Ok(match kind {
        OracleKind::G | OracleKind::T | OracleKind::Count => {
            let cap = cap.unwrap_or_else(|| graham::upper_bound(n).min(window));
            let s = oracle::brute_stats(n, cap)?;
            row.g = Some(s.g);
            match kind {
                OracleKind::G => s.g,
                OracleKind::T => {
                    row.t = Some(s.min_length);
                    s.min_length as u64
                }
                _ => {
                    row.sequences = Some(json!(s.count));
                    s.count
                }
            }
        }
        OracleKind::F => {
            let f = oracle::brute_f(n, cap.unwrap_or(4 * n + 4))?;
            row.f = Some(f);
            f
        }
        OracleKind::Gm => {
            // each value in the window can appear 0..power times
            let span = (oracle::MAX_WINDOW as f64 / (power.max(2) as f64).log2()).floor() as u64;
            let g = oracle::brute_g_m(n, power, cap.unwrap_or(n.saturating_add(span - 1)))?;
            row.g = Some(g);
            g
        }
        OracleKind::Lcm => {
            let g = oracle::brute_lcm_variant(n, cap.unwrap_or(window))?;
            row.g = Some(g);
            g
        }
    })
}

/// Apply `--jobs` to the global pool. Call once, before any scan.
#[cfg(feature = "parallel")]
pub fn configure_threads(jobs: Option<usize>) -> Result<(), CliError> {
    if let Some(k) = jobs {
        if k == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(anyhow::Error::from)?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
pub fn configure_threads(jobs: Option<usize>) -> Result<(), CliError> {
    if jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    Ok(())
}
