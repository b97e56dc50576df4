//! Command-line front end: argument parsing, validation and the six commands.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use yamabe_flag::bifurcation::{degeneracy_instants, first_instants, multiplicity_lower_bound, DegeneracyInstant, InstantSet};
use yamabe_flag::curvature::{scal_closed_form, scal_wz, ScalPoly};
use yamabe_flag::fibration::{build_fibration, FibrationData};
use yamabe_flag::parse::{parse_decimal, parse_family, parse_rational};
use yamabe_flag::rational::{fmt_q, from_f64, qi, to_f64};
use yamabe_flag::spectra::{base_spectrum, class_one_casimir, fiber_spectrum, Origin, SpectrumEntry};
use yamabe_flag::variation::{lambda1_bounds, normalized_scal};
use yamabe_flag::verify::{verify_fibration, LedgerEntry, VerifyReport};
use yamabe_flag::{Error, FibrationFamily, Q};

pub mod svg;

#[derive(Debug, Parser)]
#[command(name = "yamabe-flag", version, about = "Yamabe bifurcation data for canonical variations on flag manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandLine,
}

#[derive(Debug, Subcommand)]
pub enum CommandLine {
    /// Total, base and fiber eigenvalues up to --cutoff.
    Spectrum(Opts),
    /// Scalar curvature: direct computation against the closed form.
    Scal(Opts),
    /// Degeneracy instants in [--tmin, 1).
    Instants(Opts),
    /// Morse index over a grid of t.
    Morse(Opts),
    /// Plot data: normalised scalar curvature against the spectrum.
    Figure(Opts),
    /// Full audit with the ledger of printed-formula discrepancies.
    Verify(Opts),
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// su, so-odd, sp, so-even or g2 (a, b, c, d also accepted).
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub n: Option<usize>,
    /// Eigenvalue cutoff as p/q.
    #[arg(long, default_value = "2")]
    pub cutoff: String,
    #[arg(long)]
    pub tmin: Option<String>,
    #[arg(long, default_value = "1")]
    pub tmax: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Override of the first fiber eigenvalue, as p/q.
    #[arg(long)]
    pub phi1: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Grid size for `morse` and `figure`.
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// `figure`: also write the instants as CSV here.
    #[arg(long)]
    pub instants_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Scal,
    Instants,
    Morse,
    Figure,
    Verify,
}

/// Validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub family: FibrationFamily,
    pub cutoff: Q,
    pub t_min: Option<Q>,
    pub t_max: Q,
    pub format: Format,
    pub phi1: Option<Q>,
    pub points: usize,
    pub out: Option<PathBuf>,
    pub instants_out: Option<PathBuf>,
}

/// Default lower end of the t-range when --tmin is absent.
const DEFAULT_TMIN: f64 = 0.1;

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<RunConfig, Error> {
        let (command, o) = match cli.command {
            CommandLine::Spectrum(o) => (Command::Spectrum, o),
            CommandLine::Scal(o) => (Command::Scal, o),
            CommandLine::Instants(o) => (Command::Instants, o),
            CommandLine::Morse(o) => (Command::Morse, o),
            CommandLine::Figure(o) => (Command::Figure, o),
            CommandLine::Verify(o) => (Command::Verify, o),
        };
        let cfg = RunConfig {
            command,
            family: parse_family(&o.family, o.n)?,
            cutoff: parse_rational(&o.cutoff)?,
            t_min: o.tmin.as_deref().map(parse_decimal).transpose()?,
            t_max: parse_decimal(&o.tmax)?,
            format: o.format,
            phi1: o.phi1.as_deref().map(parse_rational).transpose()?,
            points: o.points,
            out: o.out,
            instants_out: o.instants_out,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Parses a full argument vector, program name first.
    pub fn from_args<I, T>(args: I) -> Result<RunConfig, Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        RunConfig::from_cli(cli)
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.cutoff <= qi(0) {
            return bad("cutoff must be positive".into());
        }
        if self.t_max <= qi(0) || self.t_max > qi(1) {
            return bad(format!("tmax must lie in (0, 1], got {}", fmt_q(&self.t_max)));
        }
        if let Some(t) = &self.t_min {
            if *t <= qi(0) || *t >= self.t_max {
                return bad(format!("tmin must satisfy 0 < tmin < tmax, got {}", fmt_q(t)));
            }
        }
        if let Some(p) = &self.phi1 {
            if *p <= qi(0) {
                return bad("phi1 must be positive".into());
            }
        }
        if self.points < 2 || self.points > 100_000 {
            return bad(format!("points must lie in [2, 100000], got {}", self.points));
        }
        if self.format == Format::Svg && self.command != Command::Figure {
            return bad("svg output is only available for `figure`".into());
        }
        Ok(())
    }

    fn fibration(&self) -> Result<FibrationData, Error> {
        let fib = build_fibration(self.family)?;
        Ok(match &self.phi1 {
            Some(p) => fib.with_phi1(p.clone()),
            None => fib,
        })
    }

    fn t_min_f64(&self) -> f64 {
        self.t_min.as_ref().map(to_f64).unwrap_or(DEFAULT_TMIN)
    }
}

/// Exit status of a completed command.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidConfig(_) | Error::InvalidFamily(_) | Error::Parse(_) | Error::InsufficientCoverage { .. } => {
            EXIT_USAGE
        }
        _ => EXIT_VERIFY_FAILED,
    }
}

fn ledger_json(ledger: &[LedgerEntry]) -> Value {
    ledger
        .iter()
        .map(|e| json!({"key": e.key, "printed": e.printed, "derived": e.derived, "note": e.note}))
        .collect()
}

fn header(cfg: &RunConfig, fib: &FibrationData) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("family".into(), json!(cfg.family.slug()));
    m.insert("n".into(), json!(cfg.family.n()));
    m.insert("m".into(), json!(fib.m_total));
    m
}

fn emit_json(out: &mut dyn Write, mut doc: serde_json::Map<String, Value>, ledger: &[LedgerEntry]) -> std::io::Result<()> {
    doc.insert("ledger".into(), ledger_json(ledger));
    serde_json::to_writer_pretty(&mut *out, &Value::Object(doc))?;
    writeln!(out)
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(out)
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::Inconsistent(format!("output error: {e}"))
}

/// Runs `cfg`, writing the primary output to `out`. Returns the exit status.
pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Error> {
    let fib = cfg.fibration()?;
    let report = verify_fibration(&fib)?;
    match cfg.command {
        Command::Spectrum => spectrum(cfg, &fib, &report, out),
        Command::Scal => scal(cfg, &fib, &report, out),
        Command::Instants => instants(cfg, &fib, &report, out),
        Command::Morse => morse(cfg, &fib, &report, out),
        Command::Figure => figure(cfg, &fib, &report, out),
        Command::Verify => verify(cfg, &fib, &report, out),
    }
}

fn spectrum(cfg: &RunConfig, fib: &FibrationData, report: &VerifyReport, out: &mut dyn Write) -> Result<i32, Error> {
    let mut entries: Vec<SpectrumEntry> = class_one_casimir(&fib.system, &fib.system.simple, &cfg.cutoff, Origin::Total)?;
    entries.extend(base_spectrum(cfg.family, &cfg.cutoff)?);
    entries.extend(fiber_spectrum(fib, &cfg.cutoff)?);
    let mult = |e: &SpectrumEntry| if e.mult_known { e.mult.to_string() } else { String::new() };
    match cfg.format {
        Format::Json => {
            let mut doc = header(cfg, fib);
            let rows: Vec<Value> = entries
                .iter()
                .map(|e| {
                    json!({
                        "origin": e.origin.to_string(),
                        "value": fmt_q(&e.value),
                        "value_f64": to_f64(&e.value),
                        "mult": if e.mult_known { Value::String(e.mult.to_string()) } else { Value::Null },
                        "labels": e.labels,
                    })
                })
                .collect();
            doc.insert("entries".into(), Value::Array(rows));
            emit_json(out, doc, &report.ledger).map_err(io)?;
        }
        _ => {
            let mut w = csv_writer(out);
            w.write_record(["origin", "value", "value_f64", "mult", "labels"]).map_err(io)?;
            for e in &entries {
                w.write_record([
                    e.origin.to_string(),
                    fmt_q(&e.value),
                    to_f64(&e.value).to_string(),
                    mult(e),
                    e.labels.join(" "),
                ])
                .map_err(io)?;
            }
            w.flush().map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn poly_json(p: &ScalPoly) -> Value {
    json!({"A": fmt_q(&p.a), "C": fmt_q(&p.c), "E": fmt_q(&p.e), "D": fmt_q(&p.d)})
}

fn scal(cfg: &RunConfig, fib: &FibrationData, report: &VerifyReport, out: &mut dyn Write) -> Result<i32, Error> {
    let wz = scal_wz(fib).normalized();
    let closed = scal_closed_form(cfg.family).normalized();
    let same = wz.identical(&closed);
    match cfg.format {
        Format::Json => {
            let mut doc = header(cfg, fib);
            doc.insert("direct".into(), poly_json(&wz));
            doc.insert("closed_form".into(), poly_json(&closed));
            doc.insert("identity".into(), json!(if same { "PASS" } else { "FAIL" }));
            emit_json(out, doc, &report.ledger).map_err(io)?;
        }
        _ => {
            let mut w = csv_writer(out);
            w.write_record(["source", "A", "C", "E", "D", "identity"]).map_err(io)?;
            let verdict = if same { "PASS" } else { "FAIL" };
            for (name, p) in [("direct", &wz), ("closed_form", &closed)] {
                w.write_record([name, &fmt_q(&p.a), &fmt_q(&p.c), &fmt_q(&p.e), &fmt_q(&p.d), verdict])
                    .map_err(io)?;
            }
            w.flush().map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn instant_set(cfg: &RunConfig, fib: &FibrationData) -> Result<InstantSet, Error> {
    degeneracy_instants(fib, &scal_wz(fib), cfg.t_min_f64())
}

const INSTANT_COLUMNS: [&str; 10] = ["index", "beta", "beta_f64", "mult", "u", "t", "t_lo", "t_hi", "is_bifurcation", "weights"];

fn instant_record(i: usize, d: &DegeneracyInstant) -> [String; 10] {
    [
        (i + 1).to_string(),
        fmt_q(&d.beta),
        to_f64(&d.beta).to_string(),
        d.mult.to_string(),
        d.u.to_string(),
        format!("{:.15}", d.t),
        format!("{:.15}", d.t_lo),
        format!("{:.15}", d.t_hi),
        d.is_bifurcation.to_string(),
        d.labels.join(" "),
    ]
}

fn instant_json(i: usize, d: &DegeneracyInstant) -> Value {
    json!({
        "index": i + 1,
        "beta": fmt_q(&d.beta),
        "beta_f64": to_f64(&d.beta),
        "mult": d.mult.to_string(),
        "u": d.u.to_string(),
        "t": d.t,
        "t_lo": d.t_lo,
        "t_hi": d.t_hi,
        "is_bifurcation": d.is_bifurcation,
        "weights": d.labels,
    })
}

/// Writes instants as CSV.
pub fn write_instants_csv(out: &mut dyn Write, instants: &[DegeneracyInstant]) -> Result<(), Error> {
    let mut w = csv_writer(out);
    w.write_record(INSTANT_COLUMNS).map_err(io)?;
    for (i, d) in instants.iter().enumerate() {
        w.write_record(instant_record(i, d)).map_err(io)?;
    }
    w.flush().map_err(io)
}

fn instants(cfg: &RunConfig, fib: &FibrationData, report: &VerifyReport, out: &mut dyn Write) -> Result<i32, Error> {
    let set = instant_set(cfg, fib)?;
    let shown: Vec<&DegeneracyInstant> = set.instants.iter().filter(|d| d.t <= to_f64(&cfg.t_max)).collect();
    match cfg.format {
        Format::Json => {
            let mut doc = header(cfg, fib);
            doc.insert("phi1".into(), json!(fmt_q(&set.phi1)));
            doc.insert("mu1".into(), json!(fmt_q(&set.mu1)));
            doc.insert(
                "instants".into(),
                shown.iter().enumerate().map(|(i, d)| instant_json(i, d)).collect(),
            );
            emit_json(out, doc, &report.ledger).map_err(io)?;
        }
        _ => {
            let owned: Vec<DegeneracyInstant> = shown.into_iter().cloned().collect();
            write_instants_csv(out, &owned)?;
        }
    }
    Ok(EXIT_OK)
}

/// `points` values from `hi` down to `lo`, endpoints included.
fn grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| match i {
            0 => hi,
            i if i == points - 1 => lo,
            i => hi - (hi - lo) * i as f64 / (points - 1) as f64,
        })
        .collect()
}

fn morse(cfg: &RunConfig, fib: &FibrationData, report: &VerifyReport, out: &mut dyn Write) -> Result<i32, Error> {
    let set = instant_set(cfg, fib)?;
    let ts = grid(cfg.t_min_f64(), to_f64(&cfg.t_max), cfg.points);
    let rows: Vec<(f64, Option<String>, u32)> = ts
        .iter()
        .map(|&t| {
            let idx = set.morse_index(t).ok().map(|v| v.to_string());
            (t, idx, multiplicity_lower_bound(fib, &set, t))
        })
        .collect();
    match cfg.format {
        Format::Json => {
            let mut doc = header(cfg, fib);
            let g: Vec<Value> = rows
                .iter()
                .map(|(t, idx, m)| json!({"t": t, "index": idx, "solutions_lower_bound": m}))
                .collect();
            doc.insert("grid".into(), Value::Array(g));
            emit_json(out, doc, &report.ledger).map_err(io)?;
        }
        _ => {
            let mut w = csv_writer(out);
            w.write_record(["t", "index", "solutions_lower_bound"]).map_err(io)?;
            for (t, idx, m) in &rows {
                w.write_record([t.to_string(), idx.clone().unwrap_or_default(), m.to_string()])
                    .map_err(io)?;
            }
            w.flush().map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

/// Number of instants a default figure range covers.
pub const FIGURE_INSTANTS: usize = 5;

/// Sampled curves for `figure`.
#[derive(Debug, Clone)]
pub struct FigureData {
    pub t: Vec<f64>,
    pub scal: Vec<f64>,
    /// `(label, value)` of each constant eigenvalue.
    pub constants: Vec<(String, f64)>,
    /// `(label, samples)` of each `lambda^{k,j}` curve.
    pub curves: Vec<(String, Vec<f64>)>,
    pub instants: Vec<DegeneracyInstant>,
}

pub fn figure_data(cfg: &RunConfig, fib: &FibrationData) -> Result<FigureData, Error> {
    let wz = scal_wz(fib);
    let t_min = match &cfg.t_min {
        Some(t) => to_f64(t),
        None => {
            let set = first_instants(fib, &wz, FIGURE_INSTANTS)?;
            0.9 * set.instants.last().map(|d| d.t).unwrap_or(DEFAULT_TMIN)
        }
    };
    let t_max = to_f64(&cfg.t_max);
    let set = degeneracy_instants(fib, &wz, t_min)?;
    let ns = normalized_scal(fib, &wz);
    let t: Vec<f64> = grid(t_min, t_max, cfg.points).into_iter().rev().collect();
    let exact: Vec<Q> = t
        .iter()
        .map(|&x| from_f64(x).ok_or_else(|| Error::InvalidConfig("non-finite grid point".into())))
        .collect::<Result<_, _>>()?;
    let scal = exact.iter().map(|x| to_f64(&ns.eval_t(x))).collect();
    let top = ns.eval_t(&exact[0]);
    let constants = base_spectrum(cfg.family, &top)?
        .iter()
        .map(|e| (format!("beta={}", fmt_q(&e.value)), to_f64(&e.value)))
        .collect();
    let mu1 = lambda1_bounds(fib).lower;
    let phi1 = fib.phi1.clone();
    let curve = exact
        .iter()
        .map(|x| to_f64(&(&mu1 + (qi(1) / (x * x) - qi(1)) * &phi1)))
        .collect();
    let instants = set.instants.into_iter().filter(|d| d.t <= t_max).collect();
    Ok(FigureData {
        t,
        scal,
        constants,
        curves: vec![("lambda_1_1".into(), curve)],
        instants,
    })
}

fn figure(cfg: &RunConfig, fib: &FibrationData, report: &VerifyReport, out: &mut dyn Write) -> Result<i32, Error> {
    let data = figure_data(cfg, fib)?;
    if let Some(path) = &cfg.instants_out {
        let mut f = std::fs::File::create(path).map_err(io)?;
        write_instants_csv(&mut f, &data.instants)?;
    }
    match cfg.format {
        Format::Svg => {
            out.write_all(svg::render(cfg.family, &data).as_bytes()).map_err(io)?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            let mut head = vec!["t".to_string(), "scal_normalized".to_string()];
            head.extend(data.constants.iter().map(|c| c.0.clone()));
            head.extend(data.curves.iter().map(|c| c.0.clone()));
            w.write_record(&head).map_err(io)?;
            for i in 0..data.t.len() {
                let mut row = vec![data.t[i].to_string(), data.scal[i].to_string()];
                row.extend(data.constants.iter().map(|c| c.1.to_string()));
                row.extend(data.curves.iter().map(|c| c.1[i].to_string()));
                w.write_record(&row).map_err(io)?;
            }
            w.flush().map_err(io)?;
        }
        Format::Json => {
            let mut doc = header(cfg, fib);
            let g: Vec<Value> = (0..data.t.len())
                .map(|i| {
                    let mut row = serde_json::Map::new();
                    row.insert("t".into(), json!(data.t[i]));
                    row.insert("scal_normalized".into(), json!(data.scal[i]));
                    for (name, v) in &data.curves {
                        row.insert(name.clone(), json!(v[i]));
                    }
                    Value::Object(row)
                })
                .collect();
            doc.insert("grid".into(), Value::Array(g));
            doc.insert(
                "constants".into(),
                data.constants.iter().map(|c| json!({"label": c.0, "value": c.1})).collect(),
            );
            doc.insert(
                "instants".into(),
                data.instants.iter().enumerate().map(|(i, d)| instant_json(i, d)).collect(),
            );
            emit_json(out, doc, &report.ledger).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn verify(cfg: &RunConfig, fib: &FibrationData, report: &VerifyReport, out: &mut dyn Write) -> Result<i32, Error> {
    match cfg.format {
        Format::Json => {
            let mut doc = header(cfg, fib);
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect();
            doc.insert("checks".into(), Value::Array(checks));
            doc.insert("ok".into(), json!(report.ok()));
            emit_json(out, doc, &report.ledger).map_err(io)?;
        }
        _ => {
            let mut w = csv_writer(out);
            w.write_record(["kind", "name", "status", "detail"]).map_err(io)?;
            for c in &report.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                w.write_record(["check", &c.name, status, &c.detail]).map_err(io)?;
            }
            for e in &report.ledger {
                let detail = format!("printed: {}; derived: {}; {}", e.printed, e.derived, e.note);
                w.write_record(["ledger", &e.key, "NOTE", &detail]).map_err(io)?;
            }
            w.flush().map_err(io)?;
        }
    }
    Ok(if report.ok() { EXIT_OK } else { EXIT_VERIFY_FAILED })
}
