//! `rado`: exact Rado-number search, bounds, verification and reproduction.
//!
//! Exit codes: 0 success or match, 1 refutation or mismatch, 2 usage error,
//! 3 timeout or inconclusive.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use rado_core::bounds::{bounds_report, BoundInputs};
use rado_core::coloring::is_excellent_coloring;
use rado_core::equation::parse_coeff_list;
use rado_core::output::ResultRecord;
use rado_core::repro::Verdict;
use rado_core::{
    is_good_coloring, max_excellent_length, rado_number, Certificate, CertificateStore, Coloring, Equation,
    ExcellenceStatus, RadoStatus, Registry, ReproOptions, Scope, SearchOptions,
};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "rado",
    version,
    about = "Exact Rado numbers for c1*x1 + ... + c(k-1)*x(k-1) = xk + b"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute r(E; t) by exhaustive search.
    Search(SearchArgs),
    /// Find the longest excellent coloring for a coefficient list.
    Excellence(ExcellenceArgs),
    /// Check whether a coloring is good (or excellent).
    Verify(VerifyArgs),
    /// Closed-form lower and upper bounds.
    Bounds(BoundsArgs),
    /// Compare the conjectured formula against search.
    Conjecture(ConjectureArgs),
    /// Re-run every published value against the engine.
    Reproduce(ReproduceArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Common {
    /// Worker threads for the search.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Depth at which the search tree is split between workers.
    #[arg(long, default_value_t = 12)]
    split_depth: usize,
    /// Wall-clock budget, e.g. `600s` or `10m`.
    #[arg(long, value_parser = humantime::parse_duration)]
    budget: Option<Duration>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn search_options(&self) -> SearchOptions {
        SearchOptions {
            threads: self.threads.max(1),
            split_depth: self.split_depth,
            budget: self.budget,
        }
    }
}

fn coeff_list(s: &str) -> Result<Vec<i64>, String> {
    parse_coeff_list(s).map_err(|e| e.to_string())
}

fn shift_list(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|v| v.trim().parse::<i64>().map_err(|_| format!("bad shift `{v}`")))
        .collect()
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Left-hand coefficients, e.g. `1,1`.
    #[arg(long, value_parser = coeff_list)]
    coeffs: ::std::vec::Vec<i64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    shift: i64,
    /// Number of colors t.
    #[arg(long)]
    colors: usize,
    /// Longest interval searched.
    #[arg(long, default_value_t = 100)]
    cap: usize,
    /// Certificate directory; exact witnesses are stored here.
    #[arg(long)]
    store: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ExcellenceArgs {
    #[arg(long, value_parser = coeff_list)]
    coeffs: ::std::vec::Vec<i64>,
    #[arg(long)]
    colors: usize,
    #[arg(long, default_value_t = 100)]
    cap: usize,
    #[arg(long)]
    store: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_parser = coeff_list)]
    coeffs: Option<::std::vec::Vec<i64>>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    shift: i64,
    #[arg(long)]
    colors: Option<usize>,
    /// Whitespace-separated colors, e.g. "1 2 2 1".
    #[arg(long, conflicts_with = "file")]
    coloring: Option<String>,
    /// A plain-text coloring or a JSON certificate.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Check the excellence condition instead of goodness.
    #[arg(long)]
    excellent: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long, value_parser = coeff_list)]
    coeffs: ::std::vec::Vec<i64>,
    #[arg(long, allow_hyphen_values = true)]
    shift: i64,
    #[arg(long, default_value_t = 2)]
    colors: usize,
    /// Homogeneous Rado number R; looked up in the registry if omitted.
    #[arg(long)]
    rc: Option<i64>,
    /// Length of a known excellent coloring.
    #[arg(long)]
    excellent_length: Option<i64>,
    /// Search for missing inputs up to this length.
    #[arg(long)]
    cap: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ConjectureArgs {
    #[arg(long, value_parser = coeff_list)]
    coeffs: ::std::vec::Vec<i64>,
    #[arg(long)]
    colors: usize,
    /// Comma-separated nonzero shifts, each divisible by s.
    #[arg(long, allow_hyphen_values = true, value_parser = shift_list)]
    shifts: ::std::vec::Vec<i64>,
    #[arg(long, default_value_t = 60)]
    cap: usize,
    #[arg(long)]
    store: Option<PathBuf>,
    #[arg(long)]
    force: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ReproduceArgs {
    #[arg(long, default_value = "all")]
    scope: String,
    #[arg(long)]
    store: Option<PathBuf>,
    /// Ignore cached certificates.
    #[arg(long)]
    force: bool,
    /// Also write the table as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

struct Outcome {
    text: String,
    json: serde_json::Value,
    code: u8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let (outcome, common) = match &cli.command {
        Command::Search(a) => (search(a)?, &a.common),
        Command::Excellence(a) => (excellence(a)?, &a.common),
        Command::Verify(a) => (verify(a)?, &a.common),
        Command::Bounds(a) => (bounds(a)?, &a.common),
        Command::Conjecture(a) => (conjecture(a)?, &a.common),
        Command::Reproduce(a) => (reproduce(a)?, &a.common),
    };
    let body = match common.format {
        Format::Text => outcome.text,
        Format::Json => serde_json::to_string_pretty(&outcome.json)? + "\n",
    };
    match &common.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
        None => io::stdout().write_all(body.as_bytes())?,
    }
    Ok(outcome.code)
}

fn open_store(path: &Option<PathBuf>) -> Result<Option<CertificateStore>> {
    path.as_ref()
        .map(|p| CertificateStore::open(p).with_context(|| format!("opening store {}", p.display())))
        .transpose()
}

fn check_colors(t: usize) -> Result<()> {
    if !(1..=255).contains(&t) {
        bail!("--colors must be between 1 and 255");
    }
    Ok(())
}

fn search(a: &SearchArgs) -> Result<Outcome> {
    check_colors(a.colors)?;
    if a.cap == 0 {
        bail!("--cap must be positive");
    }
    let eq = Equation::new(a.coeffs.clone(), a.shift)?;
    let store = open_store(&a.store)?;
    let res = rado_number(&eq, a.colors, a.cap, &a.common.search_options());
    let (line, code) = match res.status {
        RadoStatus::Exact(r) => (format!("Exact {r}"), 0),
        RadoStatus::ExceedsCap(c) => (format!("ExceedsCap {c}"), EXIT_INCONCLUSIVE),
        RadoStatus::Timeout { best_len } => (format!("Timeout (best good length {best_len})"), EXIT_INCONCLUSIVE),
    };
    if let (Some(store), RadoStatus::Exact(_)) = (&store, res.status) {
        store.store(&Certificate::good(&eq, &res.witness, true))?;
    }
    let text = format!(
        "{eq} colors={} cap={}\n{line}\nwitness: {}\nelapsed_ms: {}\n",
        a.colors,
        a.cap,
        res.witness,
        res.elapsed.as_millis()
    );
    Ok(Outcome {
        text,
        json: serde_json::to_value(ResultRecord::from_rado(&res, "search"))?,
        code,
    })
}

fn excellence(a: &ExcellenceArgs) -> Result<Outcome> {
    check_colors(a.colors)?;
    if a.cap == 0 {
        bail!("--cap must be positive");
    }
    rado_core::equation::validate_coeffs(&a.coeffs)?;
    let store = open_store(&a.store)?;
    let res = max_excellent_length(&a.coeffs, a.colors, a.cap, &a.common.search_options());
    let (line, code) = match res.status {
        ExcellenceStatus::Exact(n) => (format!("Exact {n}"), 0),
        ExcellenceStatus::ExceedsCap(c) => (format!("ExceedsCap {c}"), EXIT_INCONCLUSIVE),
        ExcellenceStatus::Timeout { best_len } => (format!("Timeout (best length {best_len})"), EXIT_INCONCLUSIVE),
    };
    if let (Some(store), ExcellenceStatus::Exact(_)) = (&store, res.status) {
        store.store(&Certificate::excellent(&a.coeffs, &res.witness, true))?;
    }
    let coeffs: Vec<String> = a.coeffs.iter().map(i64::to_string).collect();
    let text = format!(
        "coeffs={} colors={} cap={}\n{line}\nwitness: {}\nelapsed_ms: {}\n",
        coeffs.join(","),
        a.colors,
        a.cap,
        res.witness,
        res.elapsed.as_millis()
    );
    Ok(Outcome {
        text,
        json: serde_json::to_value(ResultRecord::from_excellence(&res, "excellence"))?,
        code,
    })
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let start = Instant::now();
    let (coeffs, shift, excellent, coloring) = match (&a.coloring, &a.file) {
        (Some(text), None) => {
            let coeffs = a.coeffs.clone().context("--coeffs is required with --coloring")?;
            (coeffs, a.shift, a.excellent, Coloring::parse(text, a.colors)?)
        }
        (None, Some(path)) => {
            let body = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            if body.trim_start().starts_with('{') {
                let cert: Certificate = serde_json::from_str(&body).context("parsing certificate")?;
                let coloring = cert.coloring()?;
                let (shift, excellent) = match cert.claim {
                    rado_core::store::Claim::Good { shift } => (shift, false),
                    rado_core::store::Claim::Excellent { .. } => (0, true),
                };
                (cert.coeffs.clone(), shift, excellent, coloring)
            } else {
                let coeffs = a
                    .coeffs
                    .clone()
                    .context("--coeffs is required for a plain-text coloring")?;
                (coeffs, a.shift, a.excellent, Coloring::parse(&body, a.colors)?)
            }
        }
        _ => bail!("give exactly one of --coloring or --file"),
    };
    let eq = Equation::new(coeffs.clone(), shift)?;
    let (label, ok) = if excellent {
        ("excellent", is_excellent_coloring(&coeffs, &coloring))
    } else {
        ("good", is_good_coloring(&eq, &coloring))
    };
    let witness = if excellent {
        None
    } else {
        coloring.find_monochromatic(&eq)
    };
    let mut text = format!("{label}={ok}\n");
    if let Some(xs) = &witness {
        text.push_str(&format!("monochromatic solution: {xs:?}\n"));
    }
    let record = ResultRecord {
        coeffs,
        shift: (!excellent).then_some(shift),
        colors: coloring.num_colors(),
        status: if ok { label.to_string() } else { format!("not_{label}") },
        value: Some(coloring.len() as i64),
        witness: Some(coloring.colors().to_vec()),
        method: "verify".into(),
        elapsed_ms: start.elapsed().as_millis() as u64,
        engine_version: rado_core::ENGINE_VERSION.into(),
        bounds: None,
    };
    Ok(Outcome {
        text,
        json: serde_json::to_value(record)?,
        code: if ok { 0 } else { EXIT_MISMATCH },
    })
}

fn bounds(a: &BoundsArgs) -> Result<Outcome> {
    check_colors(a.colors)?;
    let start = Instant::now();
    let eq = Equation::new(a.coeffs.clone(), a.shift)?;
    let opts = a.common.search_options();
    let mut inputs = BoundInputs {
        homogeneous_rado: a.rc,
        excellent_length: a.excellent_length,
    };
    if inputs.homogeneous_rado.is_none() {
        inputs.homogeneous_rado = Registry::builtin().known_r(&a.coeffs, a.colors).map(|k| k.value);
    }
    if let Some(cap) = a.cap {
        if inputs.homogeneous_rado.is_none() {
            let res = rado_number(&eq.with_shift(0), a.colors, cap, &opts);
            inputs.homogeneous_rado = res.exact().map(|r| r as i64);
        }
        if inputs.excellent_length.is_none() {
            let exc_cap = inputs.homogeneous_rado.map_or(cap, |r| r as usize);
            let res = max_excellent_length(&a.coeffs, a.colors, exc_cap.max(1), &opts);
            inputs.excellent_length = res.exact().map(|n| n as i64);
        }
    }
    let report = bounds_report(&eq, a.colors, &inputs)?;
    let mut text = format!("{eq} colors={}\n", a.colors);
    if a.shift > 0 {
        let (lo, hi) = rado_core::bounds::trivial_bounds(&a.coeffs, a.shift)?;
        text.push_str(&format!("trivial bounds ({lo},{hi})\n"));
    }
    let show = |b: Option<rado_core::bounds::Bound>| match b {
        Some(b) => format!("{} ({:?})", b.value, b.source),
        None => "unknown".into(),
    };
    text.push_str(&format!(
        "lower: {}\nupper: {}\n",
        show(report.lower),
        show(report.upper)
    ));
    let code = match report.exact() {
        Some(v) => {
            text.push_str(&format!("Exact {v}\n"));
            0
        }
        None => EXIT_INCONCLUSIVE,
    };
    let record = ResultRecord::from_bounds(&report, start.elapsed().as_millis() as u64);
    Ok(Outcome {
        text,
        json: serde_json::to_value(record)?,
        code,
    })
}

fn conjecture(a: &ConjectureArgs) -> Result<Outcome> {
    let opts = ReproOptions {
        search: a.common.search_options(),
        store: open_store(&a.store)?,
        force: a.force,
    };
    let report = rado_core::conjecture_check(&a.coeffs, a.colors, &a.shifts, a.cap, &opts)?;
    let mut text = format!(
        "R = {}; longest excellent = {} (R - 1: {})\n",
        report.homogeneous.map_or("?".into(), |v| v.to_string()),
        report.excellent_length.map_or("?".into(), |v| v.to_string()),
        report.excellence_matches.map_or("?".into(), |v| v.to_string()),
    );
    for row in &report.rows {
        let verdict = match row.verdict {
            Verdict::Confirmed => "agree",
            Verdict::Refuted => "disagree",
            _ => "inconclusive",
        };
        text.push_str(&format!(
            "shift {:>4}: conjectured {:>4} searched {:>4} {verdict}\n",
            row.shift,
            row.conjectured.map_or("?".into(), |v| v.to_string()),
            row.searched.map_or("?".into(), |v| v.to_string()),
        ));
    }
    let code = if report.any_disagreement() {
        EXIT_MISMATCH
    } else if report.any_inconclusive() || report.homogeneous.is_none() {
        EXIT_INCONCLUSIVE
    } else {
        0
    };
    Ok(Outcome {
        text,
        json: serde_json::to_value(&report)?,
        code,
    })
}

fn reproduce(a: &ReproduceArgs) -> Result<Outcome> {
    let scope: Scope = a.scope.parse()?;
    let opts = ReproOptions {
        search: a.common.search_options(),
        store: open_store(&a.store)?,
        force: a.force,
    };
    let report = rado_core::reproduce_report(scope, &opts)?;
    if let Some(path) = &a.csv {
        let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        report.write_csv(file)?;
    }
    let code = if !report.all_confirmed() {
        EXIT_MISMATCH
    } else if report.any_inconclusive() {
        EXIT_INCONCLUSIVE
    } else {
        0
    };
    Ok(Outcome {
        text: report.to_markdown(),
        json: serde_json::to_value(&report)?,
        code,
    })
}
