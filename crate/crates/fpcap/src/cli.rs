//! The `fpcap` command line.
//!
//! Exit codes: 0 on success, 1 when a computation fails or `verify` reports a
//! FAIL, 2 on usage errors (bad flags, malformed channel specs, a bad
//! `PARALLELISM` value). `--help` and `--version` exit with 0.
//!
//! Scans honour `PARALLELISM=<n>`, which runs them on an `n`-thread pool.
//! Output never depends on it.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fpcap_core::asymptotics::{convergence_report, ConvergenceRow, ModelId, NoiseOrder};
use fpcap_core::channels::GapKind;
use fpcap_core::optimize::{maximize_payoff, CapacityResult, DecoderKind, OptimizerOptions};

use crate::channel_spec::{parse_model, ChannelSpec};
use crate::report::{self, ConvergenceRecord};
use crate::scan::{self, Scaling, SweepRow};
use crate::{format_sig, Error};

/// Significant digits for probabilities and bits.
const PROB_DIGITS: usize = 12;
/// Significant digits for scaled quantities such as `c * C`.
const SCALED_DIGITS: usize = 6;

/// `verify` passes when the relative deviation at the largest `c` is within
/// this fraction of the prediction...
pub const VERIFY_REL_TOL: f64 = 0.03;
/// ...and scaled residuals never grow by more than this.
pub const VERIFY_MONOTONE_SLACK: f64 = 1e-6;

const DEFAULT_MODELS: &[&str] = &[
    "interleaving",
    "all1",
    "majority",
    "minority",
    "coinflip",
    "additive:r=0.05",
    "dilution:r=0.05",
    "threshold:u=5",
];

#[derive(Debug, Parser)]
#[command(name = "fpcap", version, about = "Simple and joint capacities of collusion channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Capacity, maximizing bias and scaled capacity of one channel.
    Capacity(SingleArgs),
    /// Maximizing bias and the full set of near-optimal biases.
    Optimum(SingleArgs),
    /// Compare numeric capacities with the closed-form predictions.
    Verify(VerifyArgs),
    /// Scaled capacity c*C of every threshold model with 0 <= l < u <= c.
    ScanThreshold(ScanArgs),
    /// Arcsine-averaged payoff for one or more channels over several c.
    Universal(UniversalArgs),
    /// Capacity of one channel over several c.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Decoder {
    Simple,
    Joint,
}

impl From<Decoder> for DecoderKind {
    fn from(d: Decoder) -> Self {
        match d {
            Decoder::Simple => DecoderKind::Simple,
            Decoder::Joint => DecoderKind::Joint,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Gap {
    Coin,
    Int,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Order {
    Leading,
    First,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScalingArg {
    C,
    C2,
    C32,
}

#[derive(Debug, Args)]
struct OptimizerArgs {
    /// Uniform grid samples before refinement.
    #[arg(long, default_value_t = 1024)]
    grid_points: usize,
    /// Final bracket width in p.
    #[arg(long, default_value_t = 1e-10)]
    refine_tol: f64,
    /// Maxima within this many bits of the best are reported as ties.
    #[arg(long, default_value_t = 1e-9)]
    band: f64,
    /// Skip the extra samples near p = k ln2 / (4c).
    #[arg(long)]
    no_augment: bool,
}

impl OptimizerArgs {
    fn options(&self) -> OptimizerOptions {
        OptimizerOptions {
            grid_points: self.grid_points,
            refine_tolerance_p: self.refine_tol,
            near_optimal_band: self.band,
            small_p_augmentation: !self.no_augment,
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output format [default: human for capacity/optimum/verify, csv otherwise].
    #[arg(long, value_enum)]
    output: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SingleArgs {
    /// Channel spec, e.g. all1, additive:r=0.05, custom:0,0.3,1.
    #[arg(long)]
    channel: ChannelSpec,
    /// Coalition size.
    #[arg(long)]
    c: Option<usize>,
    /// Take c from a custom spec (its length minus one).
    #[arg(long, conflicts_with = "c")]
    c_from_spec: bool,
    #[arg(long, value_enum, default_value = "simple")]
    decoder: Decoder,
    #[command(flatten)]
    optimizer: OptimizerArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Models to check (repeatable or comma separated) [default: all].
    #[arg(long, value_delimiter = ',')]
    model: Vec<String>,
    #[arg(long, value_enum, default_value = "simple")]
    decoder: Decoder,
    /// Coalition sizes, comma separated. Even sizes are bumped to the next
    /// odd one for majority and minority.
    #[arg(long, value_delimiter = ',', default_value = "100,1000")]
    c: Vec<usize>,
    /// Which prediction to compare against for the noisy models.
    #[arg(long, value_enum, default_value = "first")]
    order: Order,
    #[command(flatten)]
    optimizer: OptimizerArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long, default_value_t = 25)]
    c: usize,
    #[arg(long, value_enum, default_value = "coin")]
    gap: Gap,
    #[arg(long, value_enum, default_value = "simple")]
    decoder: Decoder,
    #[command(flatten)]
    optimizer: OptimizerArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct UniversalArgs {
    /// Channel spec; repeat for several channels.
    #[arg(long, required = true)]
    channel: Vec<ChannelSpec>,
    #[arg(long, value_enum, default_value = "simple")]
    decoder: Decoder,
    #[arg(long, value_delimiter = ',', required = true)]
    c: Vec<usize>,
    /// Quadrature nodes.
    #[arg(long, default_value_t = 256)]
    nodes: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    channel: ChannelSpec,
    #[arg(long, value_enum, default_value = "simple")]
    decoder: Decoder,
    #[arg(long, value_delimiter = ',', required = true)]
    c: Vec<usize>,
    #[arg(long, value_enum, default_value = "c")]
    scaling: ScalingArg,
    #[command(flatten)]
    optimizer: OptimizerArgs,
    #[command(flatten)]
    output: OutputArgs,
}

/// Why a command stopped.
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Spec(s) => Failure::Usage(s.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<fpcap_core::Error> for Failure {
    fn from(e: fpcap_core::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// What a command produced: the text for stdout (or `--out`), notes for
/// stderr, and whether `verify` saw a failure.
#[derive(Default)]
struct Outcome {
    text: String,
    notes: Vec<String>,
    failed: bool,
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };

    let result = match parallelism() {
        Ok(Some(threads)) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Failure::Domain(e.to_string()))
            .and_then(|pool| pool.install(|| execute(&cli.command))),
        Ok(None) => execute(&cli.command),
        Err(f) => Err(f),
    };

    match result {
        Ok(outcome) => {
            for note in &outcome.notes {
                let _ = writeln!(stderr, "warning: {note}");
            }
            if let Err(e) = emit(&cli.command, &outcome.text, stdout) {
                let _ = writeln!(stderr, "error: {e}");
                return 1;
            }
            i32::from(outcome.failed)
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}

fn parallelism() -> Result<Option<usize>, Failure> {
    match std::env::var("PARALLELISM") {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Failure::Usage(format!("PARALLELISM must be a positive integer, got `{v}`"))),
        },
        Err(_) => Err(Failure::Usage("PARALLELISM is not valid unicode".into())),
    }
}

fn output_args(command: &Command) -> &OutputArgs {
    match command {
        Command::Capacity(a) | Command::Optimum(a) => &a.output,
        Command::Verify(a) => &a.output,
        Command::ScanThreshold(a) => &a.output,
        Command::Universal(a) => &a.output,
        Command::Sweep(a) => &a.output,
    }
}

fn format_of(command: &Command) -> Format {
    output_args(command).output.unwrap_or(match command {
        Command::Capacity(_) | Command::Optimum(_) | Command::Verify(_) => Format::Human,
        _ => Format::Csv,
    })
}

fn emit(command: &Command, text: &str, stdout: &mut dyn Write) -> io::Result<()> {
    match &output_args(command).out {
        Some(path) => File::create(path)?.write_all(text.as_bytes()),
        None => stdout.write_all(text.as_bytes()),
    }
}

fn execute(command: &Command) -> Result<Outcome, Failure> {
    let format = format_of(command);
    match command {
        Command::Capacity(a) => capacity(a, format),
        Command::Optimum(a) => optimum(a, format),
        Command::Verify(a) => verify(a, format),
        Command::ScanThreshold(a) => scan_threshold(a, format),
        Command::Universal(a) => universal(a, format),
        Command::Sweep(a) => sweep(a, format),
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}

fn to_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(Error::from)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Domain(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Coalition size for a single-channel command.
fn resolve_c(a: &SingleArgs) -> Result<usize, Failure> {
    match (a.channel.intrinsic_size(), a.c, a.c_from_spec) {
        (Some(n), None, true) => Ok(n),
        (Some(n), Some(c), false) if c == n => Ok(c),
        (Some(n), Some(c), false) => Err(Failure::Usage(format!(
            "--c {c} does not match the custom spec, which has c = {n}"
        ))),
        (Some(_), None, false) => Err(Failure::Usage("custom channels need --c or --c-from-spec".into())),
        (None, _, true) => Err(Failure::Usage("--c-from-spec only applies to custom channels".into())),
        (None, Some(c), false) => Ok(c),
        (None, None, false) => Err(Failure::Usage("--c is required".into())),
        (_, Some(_), true) => unreachable!("clap rejects --c with --c-from-spec"),
    }
}

fn solve(a: &SingleArgs) -> Result<(usize, CapacityResult), Failure> {
    let c = resolve_c(a)?;
    let channel = a.channel.build(c)?;
    let result = maximize_payoff(&channel, a.decoder.into(), &a.optimizer.options())?;
    Ok((c, result))
}

fn degenerate_note(a: &SingleArgs, r: &CapacityResult) -> Vec<String> {
    if r.degenerate {
        vec![format!("payoff of `{}` is identically zero; p* is arbitrary", a.channel)]
    } else {
        Vec::new()
    }
}

#[derive(Serialize)]
struct CapacityRecord {
    channel: String,
    c: usize,
    decoder: String,
    capacity: f64,
    p_star: f64,
    c_capacity: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    c2_capacity: Option<f64>,
    degenerate: bool,
    evaluations: usize,
}

fn capacity(a: &SingleArgs, format: Format) -> Result<Outcome, Failure> {
    let (c, r) = solve(a)?;
    let cf = c as f64;
    let record = CapacityRecord {
        channel: a.channel.to_string(),
        c,
        decoder: DecoderKind::from(a.decoder).to_string(),
        capacity: r.capacity,
        p_star: r.p_star.get(),
        c_capacity: r.capacity * cf,
        c2_capacity: matches!(a.channel, ChannelSpec::Interleaving).then(|| r.capacity * cf * cf),
        degenerate: r.degenerate,
        evaluations: r.evaluations,
    };
    let text = match format {
        Format::Json => to_json(&record)?,
        Format::Csv => to_csv([&record])?,
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(s, "channel   {}", record.channel);
            let _ = writeln!(s, "c         {c}");
            let _ = writeln!(s, "decoder   {}", record.decoder);
            let _ = writeln!(s, "capacity  {} bits", format_sig(record.capacity, PROB_DIGITS));
            let _ = writeln!(s, "p*        {}", format_sig(record.p_star, PROB_DIGITS));
            let _ = writeln!(s, "c*C       {}", format_sig(record.c_capacity, SCALED_DIGITS));
            if let Some(v) = record.c2_capacity {
                let _ = writeln!(s, "c^2*C     {}", format_sig(v, SCALED_DIGITS));
            }
            s
        }
    };
    Ok(Outcome {
        text,
        notes: degenerate_note(a, &r),
        failed: false,
    })
}

#[derive(Serialize)]
struct TieRecord {
    p: f64,
    bits: f64,
}

#[derive(Serialize)]
struct OptimumRecord {
    channel: String,
    c: usize,
    decoder: String,
    capacity: f64,
    p_star: f64,
    ties: Vec<TieRecord>,
    degenerate: bool,
    evaluations: usize,
}

fn optimum(a: &SingleArgs, format: Format) -> Result<Outcome, Failure> {
    let (c, r) = solve(a)?;
    let record = OptimumRecord {
        channel: a.channel.to_string(),
        c,
        decoder: DecoderKind::from(a.decoder).to_string(),
        capacity: r.capacity,
        p_star: r.p_star.get(),
        ties: r
            .local_maxima
            .iter()
            .map(|m| TieRecord { p: m.p, bits: m.bits })
            .collect(),
        degenerate: r.degenerate,
        evaluations: r.evaluations,
    };
    let text = match format {
        Format::Json => to_json(&record)?,
        Format::Csv => to_csv(&record.ties)?,
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(s, "p*        {}", format_sig(record.p_star, PROB_DIGITS));
            let _ = writeln!(s, "capacity  {} bits", format_sig(record.capacity, PROB_DIGITS));
            let _ = writeln!(s, "ties      {}", record.ties.len());
            for t in &record.ties {
                let _ = writeln!(
                    s,
                    "  p = {}  payoff = {}",
                    format_sig(t.p, PROB_DIGITS),
                    format_sig(t.bits, PROB_DIGITS)
                );
            }
            s
        }
    };
    Ok(Outcome {
        text,
        notes: degenerate_note(a, &r),
        failed: false,
    })
}

/// Verdict for one model.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub model: String,
    pub decoder: String,
    pub rows: Vec<ConvergenceRecord>,
    /// `|numeric - predicted| / predicted` at the largest `c`.
    pub relative_deviation: f64,
    pub residuals_non_increasing: bool,
    pub pass: bool,
}

/// Runs the convergence report for `model` and applies the PASS rule.
pub fn verify_model(
    model: ModelId,
    decoder: DecoderKind,
    c_values: &[usize],
    options: &OptimizerOptions,
    order: NoiseOrder,
) -> fpcap_core::Result<Verdict> {
    let parity = matches!(model, ModelId::Majority | ModelId::Minority);
    let cs: Vec<usize> = c_values
        .iter()
        .map(|&c| if parity && c % 2 == 0 { c + 1 } else { c })
        .collect();
    let rows: Vec<ConvergenceRow> = convergence_report(model, decoder, &cs, options, order)?;
    let last = rows.last().ok_or(fpcap_core::Error::EmptyCoalition)?;
    let relative_deviation = (last.numeric_capacity - last.predicted_capacity).abs() / last.predicted_capacity;
    let residuals_non_increasing = rows
        .windows(2)
        .all(|w| w[1].scaled_residual <= w[0].scaled_residual + VERIFY_MONOTONE_SLACK);
    Ok(Verdict {
        model: model.to_string(),
        decoder: decoder.to_string(),
        rows: rows.iter().map(ConvergenceRecord::from).collect(),
        relative_deviation,
        residuals_non_increasing,
        pass: relative_deviation <= VERIFY_REL_TOL && residuals_non_increasing,
    })
}

#[derive(Serialize)]
struct VerifyCsvRow<'a> {
    model: &'a str,
    decoder: &'a str,
    c: usize,
    #[serde(rename = "numeric_C")]
    numeric_capacity: f64,
    #[serde(rename = "predicted_C")]
    predicted_capacity: f64,
    scaled_residual: f64,
    c_p_numeric: f64,
    c_p_predicted: Option<f64>,
}

fn verify(a: &VerifyArgs, format: Format) -> Result<Outcome, Failure> {
    if a.c.is_empty() {
        return Err(Failure::Usage("--c needs at least one value".into()));
    }
    let names: Vec<&str> = if a.model.is_empty() {
        DEFAULT_MODELS.to_vec()
    } else {
        a.model.iter().map(String::as_str).collect()
    };
    let models = names
        .iter()
        .map(|m| parse_model(m).map_err(|e| Failure::Usage(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let order = match a.order {
        Order::Leading => NoiseOrder::Leading,
        Order::First => NoiseOrder::FirstOrder,
    };
    let options = a.optimizer.options();
    let verdicts = models
        .iter()
        .map(|&m| verify_model(m, a.decoder.into(), &a.c, &options, order))
        .collect::<fpcap_core::Result<Vec<_>>>()?;

    let text = match format {
        Format::Json => to_json(&verdicts)?,
        Format::Csv => to_csv(verdicts.iter().flat_map(|v| {
            v.rows.iter().map(move |r| VerifyCsvRow {
                model: &v.model,
                decoder: &v.decoder,
                c: r.c,
                numeric_capacity: r.numeric_capacity,
                predicted_capacity: r.predicted_capacity,
                scaled_residual: r.scaled_residual,
                c_p_numeric: r.numeric_p_times_c,
                c_p_predicted: r.predicted_p_times_c,
            })
        }))?,
        Format::Human => {
            let mut s = String::new();
            for v in &verdicts {
                let _ = writeln!(s, "{} ({})", v.model, v.decoder);
                let _ = writeln!(
                    s,
                    "  {:>6}  {:>18}  {:>18}  {:>10}  {:>10}  {:>10}",
                    "c", "numeric_C", "predicted_C", "residual", "c*p", "c*p_pred"
                );
                for r in &v.rows {
                    let _ = writeln!(
                        s,
                        "  {:>6}  {:>18}  {:>18}  {:>10}  {:>10}  {:>10}",
                        r.c,
                        format_sig(r.numeric_capacity, PROB_DIGITS),
                        format_sig(r.predicted_capacity, PROB_DIGITS),
                        format_sig(r.scaled_residual, SCALED_DIGITS),
                        format_sig(r.numeric_p_times_c, SCALED_DIGITS),
                        r.predicted_p_times_c.map_or("-".into(), |x| format_sig(x, SCALED_DIGITS)),
                    );
                }
                let _ = writeln!(
                    s,
                    "{} {} {}: relative deviation {} at c={}, residuals {}",
                    if v.pass { "PASS" } else { "FAIL" },
                    v.model,
                    v.decoder,
                    format_sig(v.relative_deviation, SCALED_DIGITS),
                    v.rows.last().map_or(0, |r| r.c),
                    if v.residuals_non_increasing { "non-increasing" } else { "increasing" },
                );
            }
            s
        }
    };
    Ok(Outcome {
        text,
        notes: Vec::new(),
        failed: verdicts.iter().any(|v| !v.pass),
    })
}

fn scan_threshold(a: &ScanArgs, format: Format) -> Result<Outcome, Failure> {
    let gap = match a.gap {
        Gap::Coin => GapKind::Coin,
        Gap::Int => GapKind::Interleaving,
    };
    let grid = scan::threshold_grid(a.c, gap, a.decoder.into(), &a.optimizer.options())?;
    let mut buf = Vec::new();
    match format {
        Format::Csv => report::write_grid_csv(&grid, &mut buf)?,
        Format::Json => report::write_grid_json(&grid, &mut buf)?,
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(s, "c*C, c={}, {} decoder, {} gap (rows l, columns u)", grid.c, grid.decoder, grid.gap);
            let _ = write!(s, "{:>4}", "l\\u");
            for u in 1..=grid.c {
                let _ = write!(s, " {u:>8}");
            }
            s.push('\n');
            for l in 0..grid.c {
                let _ = write!(s, "{l:>4}");
                for u in 1..=grid.c {
                    match grid.get(l, u) {
                        Some(v) => {
                            let _ = write!(s, " {:>8}", format_sig(v, SCALED_DIGITS));
                        }
                        None => {
                            let _ = write!(s, " {:>8}", "");
                        }
                    }
                }
                s.push('\n');
            }
            buf = s.into_bytes();
        }
    }
    Ok(Outcome {
        text: String::from_utf8(buf).expect("report output is utf-8"),
        ..Outcome::default()
    })
}

fn sweep_text(rows: &[SweepRow], format: Format) -> Result<String, Failure> {
    let mut buf = Vec::new();
    match format {
        Format::Csv => report::write_sweep_csv(rows, &mut buf)?,
        Format::Json => report::write_sweep_json(rows, &mut buf)?,
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{:>7}  {:<24}  {:<7}  {:>18}  {:>18}  {:>10}",
                "c", "model", "decoder", "capacity", "p*", "scaled"
            );
            for r in rows {
                let _ = writeln!(
                    s,
                    "{:>7}  {:<24}  {:<7}  {:>18}  {:>18}  {:>10}",
                    r.c,
                    r.model,
                    r.decoder,
                    format_sig(r.capacity, PROB_DIGITS),
                    r.p_star.map_or("-".into(), |p| format_sig(p, PROB_DIGITS)),
                    format_sig(r.scaled_capacity, SCALED_DIGITS),
                );
            }
            buf = s.into_bytes();
        }
    }
    Ok(String::from_utf8(buf).expect("report output is utf-8"))
}

fn universal(a: &UniversalArgs, format: Format) -> Result<Outcome, Failure> {
    let rows = scan::universal_sweep(&a.channel, a.decoder.into(), &a.c, a.nodes)?;
    Ok(Outcome {
        text: sweep_text(&rows, format)?,
        ..Outcome::default()
    })
}

fn sweep(a: &SweepArgs, format: Format) -> Result<Outcome, Failure> {
    let scaling = match a.scaling {
        ScalingArg::C => Scaling::C,
        ScalingArg::C2 => Scaling::C2,
        ScalingArg::C32 => Scaling::C32,
    };
    let rows = scan::sweep_c(&a.channel, a.decoder.into(), &a.c, scaling, &a.optimizer.options())?;
    Ok(Outcome {
        text: sweep_text(&rows, format)?,
        ..Outcome::default()
    })
}
