//! Command implementations behind the `qchaos` binary.
//!
//! Every command validates its whole configuration before doing any work and
//! is deterministic given the seeds (`bench` timings excepted). Data files
//! are CSV with a header row, `.` decimal separator, LF line endings and 17
//! significant digits per value, so doubles round-trip exactly. Failures are
//! reported on standard error as one JSON object and map to exit code 2
//! (invalid arguments) or 3 (malformed or unusable data).

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::distribution::{ccdf, joint_pdf, support_bound, variance};
use crate::generator::{ChaoticGenerator, Gbmm, Provenance, QSpec, SampleBatch, Seeds};
use crate::maps::{z_map, MapConfig, DEFAULT_EPSILON};
use crate::stats::{
    autocorrelation, gof_test, lyapunov_trace, run_trial_table, with_jobs, GofKind, GofResult,
    SamplerKind, TrialOptions, TrialTable, DEFAULT_N_NULL, MIN_LYAPUNOV_STEPS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;

/// Samples below which a benchmark report is flagged unreliable.
pub const BENCH_WARMUP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Invalid arguments (exit 2).
    Usage(String),
    /// Malformed input or failed I/O (exit 3).
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) => m,
        }
    }

    fn to_json(&self) -> String {
        let kind = match self {
            CliError::Usage(_) => "argument",
            CliError::Data(_) => "data",
        };
        serde_json::json!({ "error": self.message(), "kind": kind, "exit_code": self.exit_code() })
            .to_string()
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn data_err(e: impl std::fmt::Display) -> CliError {
    CliError::Data(e.to_string())
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "qchaos", version, about = "q-Gaussian variates from chaotic map dynamics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate (xi, eta) samples as CSV plus a JSON provenance sidecar.
    Gen(GenArgs),
    /// KS/AD goodness-of-fit test of one generated trial or a sample file.
    Gof(GofArgs),
    /// Best-of-trials KS/AD p-values over a grid of q' values.
    Table(TableArgs),
    /// Diagnostic data series (return map, sample path, CCDF, ...).
    Diag(DiagArgs),
    /// Throughput of the chaotic and Box-Muller samplers.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Chaotic,
    Gbmm,
}

impl From<Method> for SamplerKind {
    fn from(m: Method) -> Self {
        match m {
            Method::Chaotic => SamplerKind::Chaotic,
            Method::Gbmm => SamplerKind::Gbmm,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Map configuration and seeds shared by the sampling commands.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Output q-Gaussian parameter q' (< 3).
    #[arg(long, short = 'q', default_value_t = 1.0, allow_negative_numbers = true)]
    pub q: f64,
    /// Chebyshev degree d (1..=8).
    #[arg(short = 'd', long = "degree", default_value_t = 8)]
    pub d: u32,
    /// Triangular map order l (>= 2).
    #[arg(short = 'l', long = "order", default_value_t = 2)]
    pub l: u32,
    /// Iterations c of the triangular map per step (>= 1).
    #[arg(short = 'c', long = "iterations", default_value_t = 1)]
    pub c: u32,
    /// Slope reduction epsilon of the triangular map.
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    pub epsilon: f64,
    /// Initial v0 in (0, 1).
    #[arg(long, default_value_t = 0.1)]
    pub v0: f64,
    /// Initial radius z0 (> 0, inside the support).
    #[arg(long, default_value_t = 1.0)]
    pub z0: f64,
    /// Sign of w0 = ±sqrt(1 - v0²).
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub w0_sign: i8,
    /// Seed of the uniform stream (Box-Muller sampler and null simulation).
    #[arg(long, default_value_t = 1)]
    pub uniform_seed: u64,
    /// Sampler.
    #[arg(long, value_enum, default_value_t = Method::Chaotic)]
    pub method: Method,
    /// Steps discarded before output.
    #[arg(long, default_value_t = 0)]
    pub burn_in: u64,
    /// Worker threads (0 = all available cores).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

impl RunConfig {
    pub fn spec(&self) -> CliResult<QSpec> {
        Ok(QSpec::new(self.q)?)
    }

    pub fn map_config(&self) -> CliResult<MapConfig> {
        Ok(MapConfig::new(self.d, self.l, self.c, self.epsilon)?)
    }

    pub fn seeds(&self) -> Seeds {
        Seeds { v0: self.v0, z0: self.z0, w0_sign: self.w0_sign }
    }

    /// Validates every field and returns a ready generator.
    pub fn chaotic(&self) -> CliResult<ChaoticGenerator> {
        let mut gen = ChaoticGenerator::from_seeds(self.spec()?, self.map_config()?, self.seeds())?;
        gen.burn_in(self.burn_in);
        Ok(gen)
    }

    fn validate(&self) -> CliResult<()> {
        self.chaotic().map(|_| ())
    }

    /// `count` samples from the configured sampler.
    pub fn sample(&self, count: usize) -> CliResult<SampleBatch> {
        self.validate()?;
        Ok(match self.method {
            Method::Chaotic => self.chaotic()?.batch(count),
            Method::Gbmm => Gbmm::seeded(self.spec()?, self.uniform_seed).batch(count),
        })
    }
}

fn check_count(m: usize) -> CliResult<()> {
    if m == 0 {
        return Err(CliError::Usage("count must be >= 1, got 0".into()));
    }
    Ok(())
}

fn check_n_null(n: usize) -> CliResult<()> {
    if n < 99 {
        return Err(CliError::Usage(format!("n_null must be >= 99, got {n}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub run: RunConfig,
    /// Number of (xi, eta) rows M.
    #[arg(long, short = 'm', default_value_t = 10_000)]
    pub count: usize,
    /// Output file (stdout if omitted); the sidecar goes to `<output>.json`.
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Ks,
    Ad,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Column {
    Xi,
    Eta,
}

#[derive(Debug, Clone, Args)]
pub struct GofArgs {
    #[command(flatten)]
    pub run: RunConfig,
    /// Sample size M of the generated trial (ignored with --input).
    #[arg(long, short = 'm', default_value_t = 10_000)]
    pub count: usize,
    /// CSV sample file with an `xi,eta` header instead of a fresh trial.
    #[arg(long, short = 'i')]
    pub input: Option<PathBuf>,
    /// Column tested.
    #[arg(long, value_enum, default_value_t = Column::Xi)]
    pub column: Column,
    #[arg(long, value_enum, default_value_t = KindArg::Both)]
    pub kind: KindArg,
    /// Null replications.
    #[arg(long, default_value_t = DEFAULT_N_NULL)]
    pub n_null: usize,
    /// Seed of the null simulation.
    #[arg(long, default_value_t = 20_240_601)]
    pub null_seed: u64,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub run: RunConfig,
    /// Samples per trial M.
    #[arg(long, short = 'm', default_value_t = 10_000)]
    pub count: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = DEFAULT_N_NULL)]
    pub n_null: usize,
    /// Master seed of the trial seeds and the null simulation.
    #[arg(long, default_value_t = 20_240_601)]
    pub seed: u64,
    /// Comma-separated q' values (default -1.0, -0.9, ..., 2.9).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub q_list: Option<Vec<f64>>,
    /// Also emit the mean p-value columns.
    #[arg(long)]
    pub with_mean: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Diagnostic {
    ReturnMap,
    SamplePath,
    CcdfCompare,
    Lyapunov,
    Autocorr,
    JointGrid,
}

#[derive(Debug, Clone, Args)]
pub struct DiagArgs {
    /// Which series to emit.
    pub what: Diagnostic,
    #[command(flatten)]
    pub run: RunConfig,
    /// Orbit length / sample count.
    #[arg(long, short = 'm', default_value_t = 10_000)]
    pub count: usize,
    /// Grid points of the analytic curve / lattice side of the joint grid.
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
    /// Largest lag of the autocorrelation series.
    #[arg(long, default_value_t = 10)]
    pub max_lag: usize,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, short = 'q', default_value_t = 1.5, allow_negative_numbers = true)]
    pub q: f64,
    /// Samples per timed repeat.
    #[arg(long, short = 'm', default_value_t = BENCH_WARMUP)]
    pub count: usize,
    #[arg(long, default_value_t = 5)]
    pub repeats: usize,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

/// Formats with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn open_output<'a>(path: &Option<PathBuf>, stdout: &'a mut dyn Write) -> CliResult<Box<dyn Write + 'a>> {
    match path {
        Some(p) => Ok(Box::new(BufWriter::new(File::create(p).map_err(|e| {
            CliError::Data(format!("cannot create {}: {e}", p.display()))
        })?))),
        None => Ok(Box::new(stdout)),
    }
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

/// Writes `rows` of pre-formatted fields under `header`.
fn write_csv<I>(out: &mut dyn Write, header: &[&str], rows: I) -> CliResult<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv_writer(out);
    w.write_record(header).map_err(data_err)?;
    for row in rows {
        w.write_record(&row).map_err(data_err)?;
    }
    w.flush().map_err(data_err)
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(data_err)?;
    writeln!(out).map_err(data_err)
}

/// Path of the provenance sidecar written next to a sample file.
pub fn sidecar_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

#[derive(Debug, Serialize)]
struct Sidecar<'a> {
    spec: &'a QSpec,
    provenance: &'a Provenance,
    count: usize,
    columns: [&'static str; 2],
    float_format: &'static str,
    crate_version: &'static str,
}

pub fn cmd_gen(args: &GenArgs, stdout: &mut dyn Write) -> CliResult<()> {
    check_count(args.count)?;
    let batch = args.run.sample(args.count)?;
    let mut out = open_output(&args.output, stdout)?;
    match args.format {
        Format::Csv => write_csv(
            &mut *out,
            &["xi", "eta"],
            batch.xi.iter().zip(&batch.eta).map(|(x, e)| vec![fmt17(*x), fmt17(*e)]),
        )?,
        Format::Json => write_json(&mut *out, &batch)?,
    }
    out.flush().map_err(data_err)?;
    if let Some(path) = &args.output {
        let sidecar = Sidecar {
            spec: &batch.spec,
            provenance: &batch.provenance,
            count: batch.count,
            columns: ["xi", "eta"],
            float_format: "17 significant digits",
            crate_version: env!("CARGO_PKG_VERSION"),
        };
        let mut f = File::create(sidecar_path(path)).map_err(data_err)?;
        write_json(&mut f, &sidecar)?;
    }
    Ok(())
}

/// Reads one column of an `xi,eta` CSV sample file.
pub fn read_samples(path: &Path, column: Column) -> CliResult<Vec<f64>> {
    let mut rdr = csv::Reader::from_path(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    let name = match column {
        Column::Xi => "xi",
        Column::Eta => "eta",
    };
    let headers = rdr.headers().map_err(data_err)?.clone();
    let idx = headers
        .iter()
        .position(|h| h.trim() == name)
        .ok_or_else(|| CliError::Data(format!("{}: missing `{name}` column", path.display())))?;
    let mut xs = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 2;
        let rec = rec.map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        for (j, field) in rec.iter().enumerate() {
            let x: f64 = field.trim().parse().map_err(|_| {
                CliError::Data(format!("{}: row {row}: `{field}` is not a number", path.display()))
            })?;
            if !x.is_finite() {
                return Err(CliError::Data(format!("{}: row {row}: non-finite value", path.display())));
            }
            if j == idx {
                xs.push(x);
            }
        }
    }
    if xs.is_empty() {
        return Err(CliError::Data(format!("{}: no samples", path.display())));
    }
    Ok(xs)
}

/// One reported goodness-of-fit result.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GofReport {
    pub kind: GofKind,
    pub statistic: f64,
    pub p_value: f64,
    pub n_samples: usize,
    pub n_null: usize,
    #[serde(rename = "pass_at_0.05")]
    pub pass_at_005: bool,
}

impl From<GofResult> for GofReport {
    fn from(r: GofResult) -> Self {
        GofReport {
            kind: r.kind,
            statistic: r.statistic,
            p_value: r.p_value,
            n_samples: r.n_samples,
            n_null: r.n_null,
            pass_at_005: r.passes(0.05),
        }
    }
}

/// The goodness-of-fit results `gof` would print for these arguments.
pub fn gof_reports(args: &GofArgs) -> CliResult<Vec<GofReport>> {
    let spec = args.run.spec()?;
    args.run.validate()?;
    check_n_null(args.n_null)?;
    let xs = match &args.input {
        Some(path) => read_samples(path, args.column)?,
        None => {
            check_count(args.count)?;
            let batch = args.run.sample(args.count)?;
            match args.column {
                Column::Xi => batch.xi,
                Column::Eta => batch.eta,
            }
        }
    };
    let (ks, ad) = gof_test(&xs, spec.q_out, args.n_null, args.null_seed).map_err(data_err)?;
    Ok(match args.kind {
        KindArg::Ks => vec![ks.into()],
        KindArg::Ad => vec![ad.into()],
        KindArg::Both => vec![ks.into(), ad.into()],
    })
}

pub fn cmd_gof(args: &GofArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let reports = gof_reports(args)?;
    let mut out = open_output(&args.output, stdout)?;
    write_json(&mut *out, &reports)
}

/// The default table grid `-1.0, -0.9, ..., 2.9`.
pub fn default_q_grid() -> Vec<f64> {
    (-10..=29).map(|i| i as f64 / 10.0).collect()
}

fn fmt_nu(nu: Option<f64>) -> String {
    nu.map_or_else(|| "inf".to_string(), |v| format!("{v:.6}"))
}

pub fn trial_table(args: &TableArgs) -> CliResult<TrialTable> {
    args.run.validate()?;
    check_count(args.count)?;
    check_n_null(args.n_null)?;
    if args.trials == 0 {
        return Err(CliError::Usage("trials must be >= 1, got 0".into()));
    }
    let q_list = args.q_list.clone().unwrap_or_else(default_q_grid);
    for &q in &q_list {
        QSpec::new(q)?;
    }
    let opts = TrialOptions {
        trials: args.trials,
        samples_per_trial: args.count,
        n_null: args.n_null,
        seed: args.seed,
        sampler: args.run.method.into(),
        jobs: 0,
    };
    Ok(run_trial_table(&q_list, &args.run.map_config()?, &opts)?)
}

pub fn cmd_table(args: &TableArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let table = trial_table(args)?;
    let mut out = open_output(&args.output, stdout)?;
    if args.format == Format::Json {
        return write_json(&mut *out, &table);
    }
    let mut header = vec!["q", "nu", "p_AD_best", "p_KS_best"];
    if args.with_mean {
        header.extend(["p_AD_mean", "p_KS_mean"]);
    }
    let rows = table.rows.iter().map(|r| {
        let mut row = vec![format!("{:.1}", r.q_out), fmt_nu(r.nu), format!("{:.6}", r.best_p_ad), format!("{:.6}", r.best_p_ks)];
        if args.with_mean {
            row.extend([format!("{:.6}", r.mean_p_ad), format!("{:.6}", r.mean_p_ks)]);
        }
        row
    });
    write_csv(&mut *out, &header, rows)
}

/// Header and rows of a diagnostic series.
pub type Series = (Vec<&'static str>, Vec<Vec<String>>);

pub fn diagnostic(args: &DiagArgs) -> CliResult<Series> {
    let run = &args.run;
    let spec = run.spec()?;
    let cfg = run.map_config()?;
    run.validate()?;
    check_count(args.count)?;
    let q = spec.q_int;
    Ok(match args.what {
        Diagnostic::ReturnMap => {
            let mut rows = Vec::new();
            let mut gen = run.chaotic()?;
            let mut z = gen.z();
            for _ in 0..args.count {
                gen.step();
                let next = gen.z();
                rows.push(vec!["orbit".to_string(), fmt17(z), fmt17(next)]);
                z = next;
            }
            let top = spec.z_bound().min(crate::distribution::quantile(spec.q_out, 1.0 - 1e-4)?.max(4.0));
            let n = args.grid.max(2);
            for i in 0..n {
                let zi = top * (i as f64 + 0.5) / n as f64;
                rows.push(vec!["curve".to_string(), fmt17(zi), fmt17(z_map(q, &cfg, zi)?)]);
            }
            (vec!["series", "z_n", "z_next"], rows)
        }
        Diagnostic::SamplePath => {
            let mut gen = run.chaotic()?;
            let rows = (1..=args.count)
                .map(|n| {
                    let (xi, eta) = gen.step();
                    let p = gen.point();
                    vec![n.to_string(), fmt17(p.w), fmt17(p.v), fmt17(gen.z()), fmt17(xi), fmt17(eta)]
                })
                .collect();
            (vec!["n", "w", "v", "z", "xi", "eta"], rows)
        }
        Diagnostic::CcdfCompare => {
            let mut xs = run.sample(args.count)?.xi;
            xs.sort_unstable_by(f64::total_cmp);
            let m = xs.len() as f64;
            let rows = xs
                .iter()
                .enumerate()
                .map(|(i, &x)| {
                    Ok(vec![fmt17(x), fmt17(1.0 - (i + 1) as f64 / m), fmt17(ccdf(spec.q_out, x)?)])
                })
                .collect::<crate::Result<Vec<_>>>()?;
            (vec!["x", "empirical_ccdf", "theoretical_ccdf"], rows)
        }
        Diagnostic::Lyapunov => {
            let t = (args.count as u64).max(MIN_LYAPUNOV_STEPS);
            let every = (t / 100).max(1);
            let trace = lyapunov_trace(q, &cfg, run.z0, t, every)?;
            let rows = trace.into_iter().map(|(n, l)| vec![n.to_string(), fmt17(l)]).collect();
            (vec!["step", "lambda"], rows)
        }
        Diagnostic::Autocorr => {
            let xs = run.sample(args.count)?.xi;
            let c0 = autocorrelation(&xs, 0)?;
            let finite_var = variance(spec.q_out).is_ok();
            let rows = (0..=args.max_lag)
                .map(|m| {
                    let c = autocorrelation(&xs, m)?;
                    let norm = if finite_var { fmt17(c / c0) } else { String::new() };
                    Ok(vec![m.to_string(), fmt17(c), norm])
                })
                .collect::<crate::Result<Vec<_>>>()?;
            (vec!["lag", "c", "c_normalized"], rows)
        }
        Diagnostic::JointGrid => {
            let half = support_bound(spec.q_out).min(4.0);
            let n = args.grid.max(2);
            let mut rows = Vec::with_capacity(n * n);
            for i in 0..n {
                let x = -half + 2.0 * half * i as f64 / (n - 1) as f64;
                for j in 0..n {
                    let y = -half + 2.0 * half * j as f64 / (n - 1) as f64;
                    rows.push(vec![fmt17(x), fmt17(y), fmt17(joint_pdf(spec.q_out, x, y)?)]);
                }
            }
            (vec!["xi", "eta", "pdf_joint"], rows)
        }
    })
}

pub fn cmd_diag(args: &DiagArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let (header, rows) = diagnostic(args)?;
    let mut out = open_output(&args.output, stdout)?;
    write_csv(&mut *out, &header, rows)
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub q_out: f64,
    pub samples: usize,
    pub repeats: usize,
    pub chaotic_samples_per_sec: f64,
    pub gbmm_samples_per_sec: f64,
    /// Set when `samples` is below the warm-up threshold.
    pub unreliable: bool,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_unstable_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn throughput(count: usize, repeats: usize, mut run: impl FnMut(&mut [f64])) -> f64 {
    let mut buf = vec![0.0; count];
    run(&mut buf[..count.min(10_000)]);
    let rates = (0..repeats)
        .map(|_| {
            let start = Instant::now();
            run(&mut buf);
            std::hint::black_box(&buf);
            count as f64 / start.elapsed().as_secs_f64().max(1e-9)
        })
        .collect();
    median(rates)
}

pub fn bench_report(args: &BenchArgs) -> CliResult<BenchReport> {
    let spec = QSpec::new(args.q)?;
    check_count(args.count)?;
    if args.repeats == 0 {
        return Err(CliError::Usage("repeats must be >= 1, got 0".into()));
    }
    let mut gen = ChaoticGenerator::from_seeds(spec, MapConfig::default(), Seeds::default())?;
    let chaotic = throughput(args.count, args.repeats, |buf| gen.fill_xi(buf));
    let mut gbmm = Gbmm::seeded(spec, 1);
    let gbmm_rate = throughput(args.count, args.repeats, |buf| {
        for x in buf.iter_mut() {
            *x = gbmm.next_pair().map_or(f64::NAN, |p| p.0);
        }
    });
    Ok(BenchReport {
        q_out: spec.q_out,
        samples: args.count,
        repeats: args.repeats,
        chaotic_samples_per_sec: chaotic,
        gbmm_samples_per_sec: gbmm_rate,
        unreliable: args.count < BENCH_WARMUP,
    })
}

pub fn cmd_bench(args: &BenchArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let report = bench_report(args)?;
    let mut out = open_output(&args.output, stdout)?;
    write_json(&mut *out, &report)
}

fn jobs_of(cmd: &Command) -> usize {
    match cmd {
        Command::Gen(a) => a.run.jobs,
        Command::Gof(a) => a.run.jobs,
        Command::Table(a) => a.run.jobs,
        Command::Diag(a) => a.run.jobs,
        Command::Bench(_) => 1,
    }
}

/// Executes a parsed command.
pub fn execute(cli: &Cli, stdout: &mut (dyn Write + Send)) -> CliResult<()> {
    let cmd = &cli.command;
    with_jobs(jobs_of(cmd), move || match cmd {
        Command::Gen(a) => cmd_gen(a, stdout),
        Command::Gof(a) => cmd_gof(a, stdout),
        Command::Table(a) => cmd_table(a, stdout),
        Command::Diag(a) => cmd_diag(a, stdout),
        Command::Bench(a) => cmd_bench(a, stdout),
    })
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Errors go to `stderr` as a JSON object.
pub fn run<I, T>(args: I, stdout: &mut (dyn Write + Send), stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            let err = CliError::Usage(e.to_string().trim().to_string());
            let _ = writeln!(stderr, "{}", err.to_json());
            return err.exit_code();
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.to_json());
            e.exit_code()
        }
    }
}

/// Entry point used by the binary.
pub fn main_with_env() -> i32 {
    let mut out = BufWriter::new(io::stdout());
    let code = run(std::env::args_os(), &mut out, &mut io::stderr());
    let _ = out.flush();
    code
}
