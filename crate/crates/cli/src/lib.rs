//! Command-line front end for `hamming-spectra`.
//!
//! Every subcommand emits JSON lines of the form
//! `{"command", "inputs", "provenance", "results", "schema_version"}` with keys
//! sorted and exact integers rendered as decimal strings. `--format csv` gives a
//! flat table instead.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

mod commands;
pub mod verify;

pub const SCHEMA_VERSION: &str = "1";

/// Worker-count override for parallel scans; `0` or unset means one per core.
pub const THREADS_ENV: &str = "HAMMING_SPECTRA_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Hamming,
    Z4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Parser)]
#[command(name = "hamming-spectra", version, about = "Exact spectra of Hamming and Z4 Cayley graphs")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// K_j(x) for one x, or the whole column x = 0..=n.
    Krawtchouk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        x: Option<usize>,
    },
    /// Smallest eigenvalue of H(n, j) by exact scan.
    HammingMin {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
    },
    /// Coefficients of q_j, lowest degree first.
    Qpoly {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
        /// Also derive them from the 2-separated-set closed form and compare.
        #[arg(long)]
        closed_form: bool,
    },
    /// Eigenvalues of G(r, s) by type.
    Z4Spectrum {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long = "type", value_name = "T0,T1,T2,T3", value_delimiter = ',')]
        t: Option<Vec<usize>>,
    },
    /// Smallest eigenvalue of G(r, s) by exhaustive type scan.
    Z4Min {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
    },
    /// Bounds on the quantum chromatic number.
    Chiq {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
    },
    /// Bases l(alpha), u(alpha) of the exponential bounds, to 3 decimals.
    TableCompare {
        #[arg(long, value_delimiter = ',')]
        alphas: Option<Vec<f64>>,
    },
    /// Run the oracle cross-checks.
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
        /// Largest n for brute-force character and dual-code oracles.
        #[arg(long)]
        oracle_cap: Option<usize>,
    },
}

/// A failure that maps to a nonzero exit code.
#[derive(Debug)]
pub(crate) enum Failure {
    Usage(String),
    Compute(hamming_spectra::Error),
    Io(std::io::Error),
}

impl From<hamming_spectra::Error> for Failure {
    fn from(e: hamming_spectra::Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// What a subcommand produced: JSON payloads (one output record each) and the
/// CSV projection of the same data.
pub(crate) struct Output {
    pub inputs: Value,
    pub provenance: Vec<&'static str>,
    pub results: Vec<Value>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Exit with [`EXIT_VERIFY_FAILED`] after writing.
    pub failed: bool,
}

impl Output {
    pub fn new(inputs: Value, provenance: Vec<&'static str>) -> Self {
        Self {
            inputs,
            provenance,
            results: Vec::new(),
            header: Vec::new(),
            rows: Vec::new(),
            failed: false,
        }
    }

    /// CSV as a single row of the scalar fields of `results`.
    pub fn single_row(mut self, results: Value) -> Self {
        if let Value::Object(map) = &results {
            let mut row = Vec::new();
            for (k, v) in map {
                if let Some(cell) = scalar_cell(v) {
                    self.header.push(k.clone());
                    row.push(cell);
                }
            }
            self.rows.push(row);
        }
        self.results.push(results);
        self
    }
}

fn scalar_cell(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Null => Some(String::new()),
        _ => None,
    }
}

fn threads_from_env() -> Result<usize, Failure> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(0),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{THREADS_ENV} must be a non-negative integer, got {v:?}"))),
    }
}

/// Parses `argv` (program name first), runs the subcommand, and writes records
/// to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                hamming_spectra::Error::Inconsistent(_) => EXIT_VERIFY_FAILED,
                _ => EXIT_USAGE,
            }
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_VERIFY_FAILED
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let threads = threads_from_env()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start {threads} worker threads: {e}")))?;
    if let Cmd::Verify { oracle_cap: Some(cap), .. } = cli.command {
        if cap > verify::DEFAULT_Z4_ORACLE_CAP {
            writeln!(err, "warning: --oracle-cap {cap} exceeds the default; brute-force oracles grow as 4^n")?;
        }
    }
    let (name, output) = pool.install(|| dispatch(&cli.command))?;
    write_output(name, &output, cli.format, out)?;
    Ok(if output.failed { EXIT_VERIFY_FAILED } else { EXIT_OK })
}

fn dispatch(cmd: &Cmd) -> Result<(&'static str, Output), Failure> {
    Ok(match cmd {
        Cmd::Krawtchouk { n, j, x } => ("krawtchouk", commands::krawtchouk(*n, *j, *x)?),
        Cmd::HammingMin { n, j } => ("hamming-min", commands::hamming_min(*n, *j)?),
        Cmd::Qpoly { n, j, closed_form } => ("qpoly", commands::qpoly(*n, *j, *closed_form)?),
        Cmd::Z4Spectrum { r, s, t } => ("z4-spectrum", commands::z4_spectrum(*r, *s, t.as_deref())?),
        Cmd::Z4Min { r, s } => ("z4-min", commands::z4_min(*r, *s)?),
        Cmd::Chiq { family, n, j, r, s } => {
            let need = |v: &Option<usize>, flag: &str| {
                v.ok_or_else(|| Failure::Usage(format!("--{flag} is required for this --family")))
            };
            let out = match family {
                Family::Hamming => commands::chiq_hamming(need(n, "n")?, need(j, "j")?)?,
                Family::Z4 => commands::chiq_z4(need(r, "r")?, need(s, "s")?)?,
            };
            ("chiq", out)
        }
        Cmd::TableCompare { alphas } => ("table-compare", commands::table_compare(alphas.as_deref())?),
        Cmd::Verify { level, oracle_cap } => ("verify", verify::run_suite(*level, *oracle_cap)),
    })
}

fn write_output(command: &str, output: &Output, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    match format {
        Format::Json => {
            for results in &output.results {
                let mut record = Map::new();
                record.insert("schema_version".into(), json!(SCHEMA_VERSION));
                record.insert("command".into(), json!(command));
                record.insert("inputs".into(), output.inputs.clone());
                record.insert("results".into(), results.clone());
                record.insert("provenance".into(), json!(output.provenance));
                let line = serde_json::to_string(&Value::Object(record)).expect("JSON values serialize");
                writeln!(out, "{line}")?;
                out.flush()?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| Failure::Io(std::io::Error::other(e));
            w.write_record(&output.header).map_err(csv_err)?;
            for row in &output.rows {
                w.write_record(row).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| Failure::Io(std::io::Error::other(e.to_string())))?;
            out.write_all(&bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}
