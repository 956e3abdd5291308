//! Command-line front end for the 3x+1 laboratory: exact orbits and
//! statistics, representation tools, family enumeration, record scans
//! with a file cache, and self-check suites.

mod render;
mod scan;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use collatz_lab::asymptotics::{RecordEntry, StatKind};
use collatz_lab::eolevels::{
    conjecture_c2_test, mixing_verify, primitive_seeds, zk, zk_evaluate, CornerFamily, EOError,
    PrimitiveSeed, DEFAULT_LEVEL_CAP,
};
use collatz_lab::repcore::{
    cycle_lower_bound_check, cycle_scan, prop1_witness, rep_evaluate, rep_from_trajectory,
    wirsching_encode, wirsching_eval, RepError, WirschingSeq,
};
use collatz_lab::trajectory::{
    gap_sequence, run_trajectory, stats, MapKind, TrajectoryError, DEFAULT_STEP_BUDGET,
};

use render::{csv_row, elide, float_human, float_text, join_space, visible_indices, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapArg {
    F,
    T,
}

impl MapArg {
    fn kind(self) -> MapKind {
        match self {
            MapArg::F => MapKind::F,
            MapArg::T => MapKind::T,
        }
    }

    fn name(self) -> &'static str {
        match self {
            MapArg::F => "f",
            MapArg::T => "t",
        }
    }
}

#[derive(Parser)]
#[command(
    name = "collatz-lab",
    version,
    about = "Exact 3x+1 orbit laboratory: trajectories, representations, seed families, record scans"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Step budget for orbit computations.
    #[arg(long, global = true, default_value_t = DEFAULT_STEP_BUDGET)]
    budget: u64,

    /// Worker threads (default: machine parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Highest level allowed for full seed enumeration.
    #[arg(long = "level-cap", global = true, default_value_t = DEFAULT_LEVEL_CAP)]
    level_cap: u32,

    /// Cache directory for scan shards.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one orbit and print its terms, gap sequence, and statistics.
    Traj {
        /// Start value (decimal, arbitrary size, ≥ 1).
        m: String,
        /// Which map to iterate: the plain map f or the accelerated map t.
        #[arg(long, value_enum, default_value_t = MapArg::F)]
        map: MapArg,
        /// Print every term (default elides long runs to first/last 5).
        #[arg(long)]
        full: bool,
        /// Skip the term listing; print statistics only.
        #[arg(long)]
        quiet: bool,
    },
    /// Least-terms representation of an odd start, with its witness split.
    Rep {
        /// Odd start value (decimal, arbitrary size).
        m: String,
    },
    /// Enumerate the primitive seeds of one level.
    Seeds {
        /// Level n ≥ 3 (n ≥ 1 with --count-only).
        level: u32,
        /// Print the closed-form seed count instead of enumerating.
        #[arg(long)]
        count_only: bool,
        /// Re-run each seed's orbit and confirm the level laws.
        #[arg(long)]
        verify: bool,
    },
    /// Corner-family members and their orbit statistics.
    Corner {
        /// Family: even or odd.
        family: String,
        /// Largest k (default 5 for even, 4 for odd; at most 8).
        #[arg(long)]
        k_max: Option<u32>,
    },
    /// The z_k top-exponent sequence, optionally with family orbits.
    Zk {
        /// Largest k (default 7).
        #[arg(long, default_value_t = 7)]
        k_max: u32,
        /// Also evaluate the family member at b = 0 and run its orbit.
        #[arg(long)]
        eval: bool,
    },
    /// Scan starts for record statistics, sharded and cacheable.
    Scan {
        /// Scan 2 ≤ m ≤ limit (limit ≥ 3).
        limit: u64,
        /// Statistic: completeness, gamma, or res.
        #[arg(long)]
        stat: String,
    },
    /// Classify seeds by mixing target and confirm by iteration.
    Mixing {
        /// Level n ≥ 3.
        level: u32,
        /// Check b_0 = 0..=this for every seed.
        #[arg(long, default_value_t = 0)]
        b0_max: u64,
    },
    /// Compare the two residue-class membership tests over odd starts.
    C2 {
        /// Check odd 3 ≤ m ≤ limit.
        limit: u64,
    },
    /// Run named self-check suites (default: all).
    Verify {
        /// Suite name, or "all".
        suite: Option<String>,
    },
    /// Encode an orbit as a halving-run sequence, or evaluate one.
    Wirsching {
        /// Odd start value to encode.
        m: Option<String>,
        /// Evaluate this comma-separated sequence instead (e.g. 0,0,3).
        #[arg(long, conflicts_with = "m")]
        alphas: Option<String>,
    },
    /// Search exponent profiles for cycle solutions q*.
    Cycle {
        /// Largest interior length k (at most 8).
        #[arg(long, default_value_t = 5)]
        k_max: u32,
        /// Largest top exponent (at most 40).
        #[arg(long, default_value_t = 30)]
        a_max: u64,
        /// Run the single-level lower-bound check for this k instead.
        #[arg(long)]
        bound: Option<u32>,
    },
}

enum CliError {
    Usage(String),
    Runtime(String),
    Budget(String),
    Verification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Runtime(_) => 1,
            CliError::Budget(_) => 2,
            CliError::Verification(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Runtime(m)
            | CliError::Budget(m)
            | CliError::Verification(m) => m,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<TrajectoryError> for CliError {
    fn from(e: TrajectoryError) -> Self {
        match e {
            TrajectoryError::StepBudget { .. } => CliError::Budget(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::Trajectory(t) => t.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<EOError> for CliError {
    fn from(e: EOError) -> Self {
        match e {
            EOError::Trajectory(t) => t.into(),
            EOError::Rep(r) => r.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<scan::ScanError> for CliError {
    fn from(e: scan::ScanError) -> Self {
        match e {
            scan::ScanError::Budget(t) => t.into(),
            scan::ScanError::Io(io) => io.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(1)
                }
            };
        }
    };
    let stdout = std::io::stdout().lock();
    let mut w = std::io::BufWriter::new(stdout);
    let result = run(cli, &mut w);
    if w.flush().is_err() {
        return ExitCode::from(1);
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn parse_big(text: &str) -> Result<BigUint, CliError> {
    text.trim()
        .parse::<BigUint>()
        .map_err(|_| CliError::Usage(format!("'{text}' is not a decimal natural number")))
}

fn threads_or_default(threads: Option<usize>) -> usize {
    threads
        .or_else(|| std::thread::available_parallelism().ok().map(|n| n.get()))
        .unwrap_or(1)
        .max(1)
}

fn run(cli: Cli, w: &mut impl Write) -> Result<(), CliError> {
    let fmt = cli.format;
    let budget = cli.budget;
    let threads = threads_or_default(cli.threads);
    match cli.command {
        Command::Traj { m, map, full, quiet } => cmd_traj(w, fmt, &m, map, full, quiet, budget),
        Command::Rep { m } => cmd_rep(w, fmt, &m, budget),
        Command::Seeds {
            level,
            count_only,
            verify,
        } => cmd_seeds(w, fmt, level, count_only, verify, cli.level_cap, threads, budget),
        Command::Corner { family, k_max } => cmd_corner(w, fmt, &family, k_max, budget),
        Command::Zk { k_max, eval } => cmd_zk(w, fmt, k_max, eval, budget),
        Command::Scan { limit, stat } => {
            cmd_scan(w, fmt, limit, &stat, budget, threads, cli.cache.as_deref())
        }
        Command::Mixing { level, b0_max } => {
            cmd_mixing(w, fmt, level, b0_max, cli.level_cap, threads, budget)
        }
        Command::C2 { limit } => cmd_c2(w, fmt, limit, budget),
        Command::Verify { suite } => cmd_verify(w, fmt, suite.as_deref(), budget),
        Command::Wirsching { m, alphas } => {
            cmd_wirsching(w, fmt, m.as_deref(), alphas.as_deref(), budget)
        }
        Command::Cycle {
            k_max,
            a_max,
            bound,
        } => cmd_cycle(w, fmt, k_max, a_max, bound),
    }
}

// ---------------------------------------------------------------- traj

#[allow(clippy::too_many_arguments)]
fn cmd_traj(
    w: &mut impl Write,
    fmt: Format,
    m_text: &str,
    map: MapArg,
    full: bool,
    quiet: bool,
    budget: u64,
) -> Result<(), CliError> {
    let m = parse_big(m_text)?;
    if m < BigUint::one() {
        return Err(CliError::Usage("start must be at least 1".into()));
    }
    let (traj, exceeded) = match run_trajectory(&m, map.kind(), budget) {
        Ok(t) => (t, false),
        Err(e) => (e.partial, true),
    };
    let terms = &traj.terms;
    let gaps = (!exceeded && map == MapArg::F && m.bit(0))
        .then(|| gap_sequence(&traj))
        .transpose()?;
    // orbit statistics: regular for m ≥ 2, fixed values for the start 1
    let one = BigUint::one();
    let stat = if exceeded || m == one {
        None
    } else {
        Some(stats(&m, budget)?)
    };
    match fmt {
        Format::Human => {
            writeln!(w, "start: {m}")?;
            writeln!(w, "map: {}", map.name())?;
            writeln!(w, "steps: {}", traj.steps())?;
            if !quiet {
                let idx = visible_indices(terms.len(), full);
                let mut line = String::new();
                let mut prev = None;
                for &i in &idx {
                    if let Some(p) = prev {
                        if i != p + 1 {
                            line.push_str("… ");
                        }
                    }
                    line.push_str(&terms[i].to_string());
                    line.push(' ');
                    prev = Some(i);
                }
                if elide(terms.len(), full) {
                    line.push_str(&format!("({} terms)", terms.len()));
                }
                writeln!(w, "terms: {}", line.trim_end())?;
                if let Some(g) = &gaps {
                    writeln!(w, "gaps: {g}")?;
                }
            }
            if exceeded {
                writeln!(w, "budget_exceeded: true")?;
            } else if m == one {
                writeln!(w, "o: 1")?;
                writeln!(w, "e: 2")?;
                writeln!(w, "sigma_inf: 2")?;
                writeln!(w, "completeness: 1/2 = 0.500000")?;
                writeln!(w, "ones_ratio: 1/2")?;
            } else if let Some(st) = &stat {
                writeln!(w, "o: {}", st.o)?;
                writeln!(w, "e: {}", st.e)?;
                writeln!(w, "sigma_inf: {}", st.sigma_inf)?;
                writeln!(
                    w,
                    "completeness: {} = {}",
                    st.completeness,
                    float_human(*st.completeness.numer() as f64 / *st.completeness.denom() as f64)
                )?;
                writeln!(w, "ones_ratio: {}", st.ones_ratio)?;
                writeln!(w, "gamma: {}", float_human(st.gamma))?;
                writeln!(w, "res: {}", float_human(st.res))?;
            }
        }
        Format::Json => {
            let idx = visible_indices(terms.len(), full);
            let shown: Vec<String> = if quiet {
                Vec::new()
            } else {
                idx.iter().map(|&i| terms[i].to_string()).collect()
            };
            let mut obj = serde_json::Map::new();
            obj.insert("start".into(), json!(m.to_string()));
            obj.insert("map".into(), json!(map.name()));
            obj.insert("steps".into(), json!(traj.steps()));
            obj.insert("terms_total".into(), json!(terms.len()));
            obj.insert("elided".into(), json!(!quiet && elide(terms.len(), full)));
            if !quiet {
                obj.insert("terms".into(), json!(shown));
                if let Some(g) = &gaps {
                    obj.insert("gaps".into(), json!(g.gaps));
                }
            }
            obj.insert("budget_exceeded".into(), json!(exceeded));
            if !exceeded {
                if m == one {
                    obj.insert("o".into(), json!(1));
                    obj.insert("e".into(), json!(2));
                    obj.insert("sigma_inf".into(), json!(2));
                    obj.insert("completeness".into(), json!("1/2"));
                    obj.insert("completeness_float".into(), json!(0.5));
                    obj.insert("ones_ratio".into(), json!("1/2"));
                } else if let Some(st) = &stat {
                    obj.insert("o".into(), json!(st.o));
                    obj.insert("e".into(), json!(st.e));
                    obj.insert("sigma_inf".into(), json!(st.sigma_inf));
                    obj.insert("completeness".into(), json!(st.completeness.to_string()));
                    obj.insert(
                        "completeness_float".into(),
                        json!(*st.completeness.numer() as f64 / *st.completeness.denom() as f64),
                    );
                    obj.insert("ones_ratio".into(), json!(st.ones_ratio.to_string()));
                    obj.insert("gamma".into(), json!(st.gamma));
                    obj.insert("res".into(), json!(st.res));
                }
            }
            writeln!(w, "{}", serde_json::Value::Object(obj))?;
        }
        Format::Csv => {
            writeln!(w, "index,term")?;
            for i in visible_indices(terms.len(), full) {
                writeln!(w, "{i},{}", terms[i])?;
            }
        }
    }
    if exceeded {
        return Err(CliError::Budget(format!(
            "orbit of {m} did not reach 1 within {budget} steps"
        )));
    }
    Ok(())
}

// ----------------------------------------------------------------- rep

fn cmd_rep(w: &mut impl Write, fmt: Format, m_text: &str, budget: u64) -> Result<(), CliError> {
    let m = parse_big(m_text)?;
    let rep = rep_from_trajectory(&m, budget)?;
    let check = rep_evaluate(&rep)?;
    let (we, wo, smooth) = prop1_witness(&m, budget)?;
    match fmt {
        Format::Human => {
            writeln!(w, "m: {m}")?;
            writeln!(w, "exponents: {rep}")?;
            writeln!(w, "k: {}", rep.k())?;
            writeln!(w, "check: {check}")?;
            writeln!(w, "witness_e: {we}")?;
            writeln!(w, "witness_o: {wo}")?;
            let joined = smooth
                .exponents
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",");
            writeln!(w, "witness_smooth: ({joined})")?;
        }
        Format::Json => {
            writeln!(
                w,
                "{}",
                json!({
                    "m": m.to_string(),
                    "exponents": rep.exponents,
                    "k": rep.k(),
                    "check": check.to_string(),
                    "witness": {
                        "e": we,
                        "o": wo,
                        "smooth": smooth.exponents,
                    },
                })
            )?;
        }
        Format::Csv => {
            writeln!(w, "m,k,exponents,witness_e,witness_o,witness_smooth")?;
            writeln!(
                w,
                "{}",
                csv_row(&[
                    m.to_string(),
                    rep.k().to_string(),
                    join_space(&rep.exponents),
                    we.to_string(),
                    wo.to_string(),
                    join_space(&smooth.exponents),
                ])
            )?;
        }
    }
    Ok(())
}

// --------------------------------------------------------------- seeds

fn seed_human(seed: &PrimitiveSeed) -> String {
    let dup = if seed.expansion_duplicate() {
        " (duplicate)"
    } else {
        ""
    };
    format!(
        "{} c={} υ=({}) value={} e={} o={}{dup}",
        seed.params.branch,
        seed.params.c,
        join_space(&seed.params.upsilon),
        seed.value,
        seed.e,
        seed.o,
    )
}

fn seed_json(seed: &PrimitiveSeed) -> serde_json::Value {
    json!({
        "level": seed.level(),
        "branch": seed.params.branch.to_string(),
        "c": seed.params.c,
        "upsilon": seed.params.upsilon,
        "value": seed.value.to_string(),
        "e": seed.e,
        "o": seed.o,
        "expansion_duplicate": seed.expansion_duplicate(),
    })
}

const SEED_CSV_HEADER: &str = "level,branch,c,upsilon,value,e,o,expansion_duplicate";

fn seed_csv(seed: &PrimitiveSeed) -> String {
    csv_row(&[
        seed.level().to_string(),
        seed.params.branch.to_string(),
        seed.params.c.to_string(),
        join_space(&seed.params.upsilon),
        seed.value.to_string(),
        seed.e.to_string(),
        seed.o.to_string(),
        seed.expansion_duplicate().to_string(),
    ])
}

#[allow(clippy::too_many_arguments)]
fn cmd_seeds(
    w: &mut impl Write,
    fmt: Format,
    level: u32,
    count_only: bool,
    verify: bool,
    level_cap: u32,
    threads: usize,
    budget: u64,
) -> Result<(), CliError> {
    if count_only {
        if !(1..=64).contains(&level) {
            return Err(CliError::Usage(
                "count-only level must be between 1 and 64".into(),
            ));
        }
        let count = collatz_lab::eolevels::level_count(level);
        match fmt {
            Format::Human => writeln!(w, "level {level}: {count} seeds")?,
            Format::Json => writeln!(
                w,
                "{}",
                json!({"level": level, "count": count.to_string()})
            )?,
            Format::Csv => {
                writeln!(w, "level,count")?;
                writeln!(w, "{level},{count}")?;
            }
        }
        return Ok(());
    }
    let seeds = primitive_seeds(level, level_cap, threads, budget)?;
    match fmt {
        Format::Human => {
            writeln!(w, "level {level}: {} seeds", seeds.len())?;
            for seed in &seeds {
                writeln!(w, "{}", seed_human(seed))?;
            }
        }
        Format::Json => {
            for seed in &seeds {
                writeln!(w, "{}", seed_json(seed))?;
            }
        }
        Format::Csv => {
            writeln!(w, "{SEED_CSV_HEADER}")?;
            for seed in &seeds {
                writeln!(w, "{}", seed_csv(seed))?;
            }
        }
    }
    if verify {
        let mut failures = Vec::new();
        for seed in &seeds {
            let (o, e) = orbit_counts(&seed.value, budget)?;
            let ok = e == seed.e
                && o == seed.o
                && (seed.params.c == 2 || seed.o == level as u64)
                && seed.value.bit(0);
            if !ok {
                failures.push(seed.value.to_string());
            }
        }
        let line = format!(
            "verified {} seeds, {} failures",
            seeds.len(),
            failures.len()
        );
        match fmt {
            Format::Human => writeln!(w, "{line}")?,
            Format::Json => writeln!(
                w,
                "{}",
                json!({"verified": seeds.len(), "failures": failures})
            )?,
            Format::Csv => writeln!(w, "# {line}")?,
        }
        if !failures.is_empty() {
            return Err(CliError::Verification(format!(
                "seed verification failed for {}",
                failures.join(", ")
            )));
        }
    }
    Ok(())
}

// -------------------------------------------------------------- corner

fn orbit_counts(value: &BigUint, budget: u64) -> Result<(u64, u64), CliError> {
    if *value == BigUint::one() {
        return Ok((1, 2));
    }
    let st = stats(value, budget)?;
    Ok((st.o, st.e))
}

fn cmd_corner(
    w: &mut impl Write,
    fmt: Format,
    family_text: &str,
    k_max: Option<u32>,
    budget: u64,
) -> Result<(), CliError> {
    let family: CornerFamily = family_text.parse().map_err(CliError::Usage)?;
    let k_max = k_max.unwrap_or(match family {
        CornerFamily::Even => 5,
        CornerFamily::Odd => 4,
    });
    if k_max > 8 {
        return Err(CliError::Usage("k-max is capped at 8".into()));
    }
    if fmt == Format::Csv {
        writeln!(w, "family,k,value,o,e,completeness")?;
    }
    for k in 0..=k_max {
        let value = family.evaluate(k, &vec![0u64; k as usize + 2])?;
        let (o, e) = orbit_counts(&value, budget)?;
        let c = o as f64 / e as f64;
        match fmt {
            Format::Human => writeln!(
                w,
                "k={k} value={value} o={o} e={e} C={}",
                float_human(c)
            )?,
            Format::Json => writeln!(
                w,
                "{}",
                json!({
                    "family": family.to_string(),
                    "k": k,
                    "value": value.to_string(),
                    "o": o,
                    "e": e,
                    "completeness": c,
                })
            )?,
            Format::Csv => writeln!(
                w,
                "{}",
                csv_row(&[
                    family.to_string(),
                    k.to_string(),
                    value.to_string(),
                    o.to_string(),
                    e.to_string(),
                    float_text(c),
                ])
            )?,
        }
    }
    Ok(())
}

// ------------------------------------------------------------------ zk

fn cmd_zk(
    w: &mut impl Write,
    fmt: Format,
    k_max: u32,
    eval: bool,
    budget: u64,
) -> Result<(), CliError> {
    if k_max > 38 {
        return Err(CliError::Usage("k-max is capped at 38".into()));
    }
    if eval && k_max > 8 {
        return Err(CliError::Usage("k-max with --eval is capped at 8".into()));
    }
    if fmt == Format::Csv {
        if eval {
            writeln!(w, "k,z,value,o,e")?;
        } else {
            writeln!(w, "k,z")?;
        }
    }
    for k in 0..=k_max {
        let z = zk(k);
        if eval {
            let value = zk_evaluate(k, &vec![0u64; k as usize + 2])?;
            let (o, e) = orbit_counts(&value, budget)?;
            match fmt {
                Format::Human => writeln!(w, "k={k} z={z} value={value} o={o} e={e}")?,
                Format::Json => writeln!(
                    w,
                    "{}",
                    json!({"k": k, "z": z, "value": value.to_string(), "o": o, "e": e})
                )?,
                Format::Csv => writeln!(w, "{k},{z},{value},{o},{e}")?,
            }
        } else {
            match fmt {
                Format::Human => writeln!(w, "k={k} z={z}")?,
                Format::Json => writeln!(w, "{}", json!({"k": k, "z": z}))?,
                Format::Csv => writeln!(w, "{k},{z}")?,
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- scan

fn record_human(r: &RecordEntry) -> String {
    format!(
        "m={} value={} o={} e={} g1={}",
        r.m,
        float_human(r.value),
        r.o,
        r.e,
        r.g1
    )
}

fn cmd_scan(
    w: &mut impl Write,
    fmt: Format,
    limit: u64,
    stat_text: &str,
    budget: u64,
    threads: usize,
    cache_dir: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let stat: StatKind = stat_text.parse().map_err(CliError::Usage)?;
    if limit < 3 {
        return Err(CliError::Usage("scan limit must be at least 3".into()));
    }
    let records = scan::run_scan(limit, stat, budget, threads, cache_dir)?;
    match fmt {
        Format::Human => {
            writeln!(w, "{stat} records for 2 ≤ m ≤ {limit}:")?;
            for r in &records {
                writeln!(w, "{}", record_human(r))?;
            }
            writeln!(w, "{} records", records.len())?;
        }
        Format::Json => {
            for r in &records {
                writeln!(
                    w,
                    "{}",
                    json!({
                        "m": r.m.to_string(),
                        "stat": stat.to_string(),
                        "value": r.value,
                        "o": r.o,
                        "e": r.e,
                        "g1": r.g1,
                    })
                )?;
            }
        }
        Format::Csv => {
            writeln!(w, "m,stat,value,o,e,g1")?;
            for r in &records {
                writeln!(
                    w,
                    "{}",
                    csv_row(&[
                        r.m.to_string(),
                        stat.to_string(),
                        float_text(r.value),
                        r.o.to_string(),
                        r.e.to_string(),
                        r.g1.to_string(),
                    ])
                )?;
            }
        }
    }
    Ok(())
}

// -------------------------------------------------------------- mixing

fn cmd_mixing(
    w: &mut impl Write,
    fmt: Format,
    level: u32,
    b0_max: u64,
    level_cap: u32,
    threads: usize,
    budget: u64,
) -> Result<(), CliError> {
    let seeds = primitive_seeds(level, level_cap, threads, budget)?;
    if fmt == Format::Csv {
        writeln!(w, "seed,upsilon1,b0,member,iterations,landed,predicted,observed,ok")?;
    }
    let mut failures = 0u64;
    for seed in &seeds {
        for b0 in 0..=b0_max {
            let check = mixing_verify(seed, b0)?;
            if !check.ok {
                failures += 1;
            }
            let u1 = seed.params.upsilon[0];
            match fmt {
                Format::Human => writeln!(
                    w,
                    "seed={} υ1={u1} b0={b0} member={} iters={} landed={} predicted={} observed={} {}",
                    seed.value,
                    check.member,
                    check.iterations,
                    check.landed,
                    check.predicted,
                    check.observed,
                    if check.ok { "ok" } else { "MISMATCH" }
                )?,
                Format::Json => writeln!(
                    w,
                    "{}",
                    json!({
                        "seed": seed.value.to_string(),
                        "upsilon1": u1,
                        "b0": b0,
                        "member": check.member.to_string(),
                        "iterations": check.iterations,
                        "landed": check.landed.to_string(),
                        "predicted": check.predicted.to_string(),
                        "observed": check.observed.to_string(),
                        "ok": check.ok,
                    })
                )?,
                Format::Csv => writeln!(
                    w,
                    "{}",
                    csv_row(&[
                        seed.value.to_string(),
                        u1.to_string(),
                        b0.to_string(),
                        check.member.to_string(),
                        check.iterations.to_string(),
                        check.landed.to_string(),
                        check.predicted.to_string(),
                        check.observed.to_string(),
                        check.ok.to_string(),
                    ])
                )?,
            }
        }
    }
    if failures > 0 {
        return Err(CliError::Verification(format!(
            "{failures} mixing checks disagreed"
        )));
    }
    Ok(())
}

// ------------------------------------------------------------------ c2

fn cmd_c2(w: &mut impl Write, fmt: Format, limit: u64, budget: u64) -> Result<(), CliError> {
    if limit < 3 {
        return Err(CliError::Usage("limit must be at least 3".into()));
    }
    let report = conjecture_c2_test(limit, budget)?;
    match fmt {
        Format::Human => {
            writeln!(w, "limit: {}", report.limit)?;
            writeln!(w, "checked: {}", report.checked)?;
            writeln!(w, "class_e: {}", report.class_e)?;
            writeln!(w, "class_o: {}", report.class_o)?;
            if report.disagreements.is_empty() {
                writeln!(w, "disagreements: none")?;
            } else {
                writeln!(w, "disagreements: {}", join_space(&report.disagreements))?;
            }
        }
        Format::Json => writeln!(
            w,
            "{}",
            json!({
                "limit": report.limit,
                "checked": report.checked,
                "class_e": report.class_e,
                "class_o": report.class_o,
                "disagreements": report.disagreements,
            })
        )?,
        Format::Csv => {
            writeln!(w, "limit,checked,class_e,class_o,disagreements")?;
            writeln!(
                w,
                "{}",
                csv_row(&[
                    report.limit.to_string(),
                    report.checked.to_string(),
                    report.class_e.to_string(),
                    report.class_o.to_string(),
                    join_space(&report.disagreements),
                ])
            )?;
        }
    }
    if !report.disagreements.is_empty() {
        return Err(CliError::Verification(format!(
            "{} classification disagreements",
            report.disagreements.len()
        )));
    }
    Ok(())
}

// -------------------------------------------------------------- verify

fn cmd_verify(
    w: &mut impl Write,
    fmt: Format,
    suite: Option<&str>,
    budget: u64,
) -> Result<(), CliError> {
    let chosen: Vec<&'static str> = match suite {
        None | Some("all") => verify::SUITE_NAMES.to_vec(),
        Some(name) => {
            let found = verify::SUITE_NAMES.iter().find(|&&s| s == name);
            match found {
                Some(&s) => vec![s],
                None => {
                    return Err(CliError::Usage(format!(
                        "unknown suite '{name}' (available: {}, all)",
                        verify::SUITE_NAMES.join(", ")
                    )))
                }
            }
        }
    };
    if fmt == Format::Csv {
        writeln!(w, "suite,pass,detail")?;
    }
    let mut failed = Vec::new();
    for name in chosen {
        let result = verify::run_suite(name, budget).expect("suite names are pre-validated");
        if !result.pass {
            failed.push(name);
        }
        match fmt {
            Format::Human => writeln!(
                w,
                "{}: {} — {}",
                result.name,
                if result.pass { "PASS" } else { "FAIL" },
                result.detail
            )?,
            Format::Json => writeln!(
                w,
                "{}",
                json!({"suite": result.name, "pass": result.pass, "detail": result.detail})
            )?,
            Format::Csv => writeln!(
                w,
                "{}",
                csv_row(&[
                    result.name.to_string(),
                    result.pass.to_string(),
                    result.detail.replace(',', ";"),
                ])
            )?,
        }
    }
    if !failed.is_empty() {
        return Err(CliError::Verification(format!(
            "suites failed: {}",
            failed.join(", ")
        )));
    }
    Ok(())
}

// ----------------------------------------------------------- wirsching

fn cmd_wirsching(
    w: &mut impl Write,
    fmt: Format,
    m_text: Option<&str>,
    alphas_text: Option<&str>,
    budget: u64,
) -> Result<(), CliError> {
    let (seq, m) = match (m_text, alphas_text) {
        (Some(text), None) => {
            let m = parse_big(text)?;
            let seq = wirsching_encode(&m, budget)?;
            (seq, Some(m))
        }
        (None, Some(text)) => {
            let alphas: Vec<u64> = text
                .split(',')
                .map(|p| p.trim().parse::<u64>())
                .collect::<Result<_, _>>()
                .map_err(|_| {
                    CliError::Usage(format!("'{text}' is not a comma-separated sequence"))
                })?;
            if alphas.is_empty() {
                return Err(CliError::Usage("the sequence needs at least α_0".into()));
            }
            (WirschingSeq::new(alphas), None)
        }
        _ => {
            return Err(CliError::Usage(
                "give either a start value or --alphas".into(),
            ))
        }
    };
    let zeta_one = wirsching_eval(&seq, &BigRational::one());
    if let Some(m) = &m {
        // the encoding must evaluate back to its start
        assert_eq!(zeta_one, BigRational::from_integer(m.clone().into()));
    }
    match fmt {
        Format::Human => {
            if let Some(m) = &m {
                writeln!(w, "m: {m}")?;
            }
            writeln!(w, "alphas: {seq}")?;
            writeln!(w, "ell: {}", seq.ell())?;
            writeln!(w, "abs: {}", seq.abs_value())?;
            writeln!(w, "norm: {}", seq.norm())?;
            writeln!(w, "small: {}", seq.is_small())?;
            writeln!(w, "zeta(1): {zeta_one}")?;
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            if let Some(m) = &m {
                obj.insert("m".into(), json!(m.to_string()));
            }
            obj.insert("alphas".into(), json!(seq.alphas));
            obj.insert("ell".into(), json!(seq.ell()));
            obj.insert("abs".into(), json!(seq.abs_value()));
            obj.insert("norm".into(), json!(seq.norm()));
            obj.insert("small".into(), json!(seq.is_small()));
            obj.insert("zeta_one".into(), json!(zeta_one.to_string()));
            writeln!(w, "{}", serde_json::Value::Object(obj))?;
        }
        Format::Csv => {
            writeln!(w, "m,alphas,ell,abs,norm,small,zeta_one")?;
            writeln!(
                w,
                "{}",
                csv_row(&[
                    m.map(|v| v.to_string()).unwrap_or_default(),
                    join_space(&seq.alphas),
                    seq.ell().to_string(),
                    seq.abs_value().to_string(),
                    seq.norm().to_string(),
                    seq.is_small().to_string(),
                    zeta_one.to_string().replace(',', ";"),
                ])
            )?;
        }
    }
    Ok(())
}

// --------------------------------------------------------------- cycle

fn cmd_cycle(
    w: &mut impl Write,
    fmt: Format,
    k_max: u32,
    a_max: u64,
    bound: Option<u32>,
) -> Result<(), CliError> {
    if a_max > 40 {
        return Err(CliError::Usage("a-max is capped at 40".into()));
    }
    if let Some(k) = bound {
        if !(1..=8).contains(&k) {
            return Err(CliError::Usage("bound level must be in 1..=8".into()));
        }
        let report = cycle_lower_bound_check(k, a_max);
        match fmt {
            Format::Human => {
                writeln!(w, "k: {}", report.k)?;
                writeln!(w, "a_max: {}", report.a_max)?;
                writeln!(w, "profiles: {}", report.profiles_searched)?;
                writeln!(w, "nontrivial: {}", report.nontrivial.len())?;
                writeln!(w, "all_above_lower_bound: {}", report.all_above_lower_bound)?;
            }
            Format::Json => writeln!(
                w,
                "{}",
                json!({
                    "k": report.k,
                    "a_max": report.a_max,
                    "profiles": report.profiles_searched,
                    "nontrivial": report.nontrivial.iter()
                        .map(|(t, q)| json!({"exponents": t, "q": q.to_string()}))
                        .collect::<Vec<_>>(),
                    "all_above_lower_bound": report.all_above_lower_bound,
                })
            )?,
            Format::Csv => {
                writeln!(w, "k,a_max,profiles,nontrivial,all_above_lower_bound")?;
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    report.k,
                    report.a_max,
                    report.profiles_searched,
                    report.nontrivial.len(),
                    report.all_above_lower_bound
                )?;
            }
        }
        if !report.all_above_lower_bound {
            return Err(CliError::Verification(
                "an integral solution at or below the lower bound appeared".into(),
            ));
        }
        return Ok(());
    }
    if k_max > 8 {
        return Err(CliError::Usage("k-max is capped at 8".into()));
    }
    let report = cycle_scan(k_max, a_max);
    match fmt {
        Format::Human => {
            writeln!(w, "k_max: {}", report.k_max)?;
            writeln!(w, "a_max: {}", report.a_max)?;
            writeln!(w, "profiles: {}", report.profiles_searched)?;
            let trivial: Vec<String> = report
                .trivial
                .iter()
                .map(|t| format!("({})", join_space(t)))
                .collect();
            writeln!(w, "trivial: {}", trivial.join(" "))?;
            if report.nontrivial.is_empty() {
                writeln!(w, "nontrivial: none")?;
            } else {
                for (t, q) in &report.nontrivial {
                    writeln!(w, "nontrivial: ({}) q={q}", join_space(t))?;
                }
            }
        }
        Format::Json => writeln!(
            w,
            "{}",
            json!({
                "k_max": report.k_max,
                "a_max": report.a_max,
                "profiles": report.profiles_searched,
                "trivial": report.trivial,
                "nontrivial": report.nontrivial.iter()
                    .map(|(t, q)| json!({"exponents": t, "q": q.to_string()}))
                    .collect::<Vec<_>>(),
            })
        )?,
        Format::Csv => {
            writeln!(w, "kind,exponents,q")?;
            for t in &report.trivial {
                writeln!(w, "trivial,{},1", join_space(t))?;
            }
            for (t, q) in &report.nontrivial {
                writeln!(w, "nontrivial,{},{q}", join_space(t))?;
            }
        }
    }
    if !report.nontrivial.is_empty() {
        return Err(CliError::Verification(format!(
            "{} integral q* > 1 found",
            report.nontrivial.len()
        )));
    }
    Ok(())
}
