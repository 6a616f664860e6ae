//! `hepta`: spectra, comparison reports and error tables for the banded
//! Toeplitz matrix generated by `(t - 2 + 1/t)^3`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hepta_core::report::{compare_report, render, reproduce_table, run_spectrum, Format, MethodChoice, RunConfig};
use hepta_core::solver::{Method, SolverOptions};
use hepta_core::Error;

#[derive(Parser)]
#[command(name = "hepta", version, about = "Eigenvalues of the heptadiagonal Toeplitz matrix T_n((t-2+1/t)^3)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the full spectrum for each requested n.
    Spectrum(RunArgs),
    /// Compare a method against the bisection oracle.
    Compare(RunArgs),
    /// Reproduce an error table (1, 2 or 3).
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        table: u8,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Matrix dimension(s), comma separated.
    #[arg(long = "n", value_delimiter = ',', required = true, allow_negative_numbers = true)]
    n: Vec<i64>,
    #[arg(long, value_enum, default_value = "fixed_point")]
    method: MethodArg,
    #[arg(long, default_value_t = SolverOptions::default().max_iters)]
    iters: usize,
    #[arg(long, default_value_t = SolverOptions::default().tol)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file. Several outputs get a `.n{n}.{method}` suffix.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Defaults to the output extension, else csv.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Omit the timestamp line and wall-clock timings.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum MethodArg {
    FixedPoint,
    Asymptotic,
    Oracle,
    All,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::FixedPoint => MethodChoice::FixedPoint,
            MethodArg::Asymptotic => MethodChoice::Asymptotic,
            MethodArg::Oracle => MethodChoice::Oracle,
            MethodArg::All => MethodChoice::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Numerical(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

fn format_of(output: &OutputArgs) -> Format {
    match output.format {
        Some(FormatArg::Csv) => Format::Csv,
        Some(FormatArg::Json) => Format::Json,
        None => match output.out.as_deref().and_then(Path::extension).and_then(|e| e.to_str()) {
            Some("json") => Format::Json,
            _ => Format::Csv,
        },
    }
}

fn suffixed(path: &Path, n: usize, method: Method) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}.n{n}.{}.{}", method.as_str(), ext.to_string_lossy()),
        None => format!("{stem}.n{n}.{}", method.as_str()),
    };
    path.with_file_name(name)
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => match io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(CliError::Usage(format!("cannot write stdout: {e}"))),
            _ => Ok(()),
        },
    }
}

fn config(args: &RunArgs) -> Result<RunConfig, CliError> {
    let n = args
        .n
        .iter()
        .map(|&n| match usize::try_from(n) {
            Ok(v) if v >= 1 => Ok(v),
            _ => Err(CliError::Usage(format!("n must be >= 1 (got {n})"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let cfg = RunConfig {
        n,
        method: args.method.into(),
        iters: args.iters,
        tol: args.tol,
        output_path: args.output.out.clone(),
        format: Some(format_of(&args.output)),
        table: None,
        timestamp: !args.output.no_timestamp,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn timestamp(cfg: &RunConfig) -> Option<String> {
    cfg.timestamp.then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum(args) => {
            let cfg = config(&args)?;
            let methods = cfg.method.methods();
            let many = cfg.n.len() * methods.len() > 1;
            for &n in &cfg.n {
                for &method in &methods {
                    let report = run_spectrum(&cfg, n, method)?;
                    let text = render(report.to_csv(timestamp(&cfg).as_deref()), report.to_json(), cfg.format.unwrap_or(Format::Csv));
                    let path = cfg.output_path.as_deref().map(|p| if many { suffixed(p, n, method) } else { p.to_path_buf() });
                    emit(&text, path.as_deref())?;
                }
            }
        }
        Command::Compare(args) => {
            let cfg = config(&args)?;
            let methods: Vec<Method> = cfg.method.methods().into_iter().filter(|&m| m != Method::Oracle).collect();
            if methods.is_empty() {
                return Err(CliError::Usage("compare needs a method other than oracle".into()));
            }
            let many = cfg.n.len() * methods.len() > 1;
            for &n in &cfg.n {
                for &method in &methods {
                    let report = compare_report(&cfg, n, method)?;
                    let s = &report.summary;
                    eprintln!(
                        "n={n} method={} reference={} max_rel_error={}",
                        method.as_str(),
                        s.reference,
                        s.max_rel_error.map(hepta_core::report::format_error).unwrap_or_else(|| "n/a".into())
                    );
                    let text = render(report.to_csv(timestamp(&cfg).as_deref()), report.to_json(), cfg.format.unwrap_or(Format::Csv));
                    let path = cfg.output_path.as_deref().map(|p| if many { suffixed(p, n, method) } else { p.to_path_buf() });
                    emit(&text, path.as_deref())?;
                }
            }
        }
        Command::Table { table, output } => {
            let cfg = RunConfig {
                table: Some(table),
                output_path: output.out.clone(),
                format: Some(format_of(&output)),
                timestamp: !output.no_timestamp,
                ..RunConfig::default()
            };
            cfg.validate()?;
            let report = reproduce_table(table, &cfg)?;
            let text = render(report.to_csv(timestamp(&cfg).as_deref()), report.to_json(), cfg.format.unwrap_or(Format::Csv));
            emit(&text, cfg.output_path.as_deref())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}
