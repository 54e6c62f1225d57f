use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use qdc_cli::{cmd_classify, cmd_pipeline, text_summary, CliError, GroupSource, IrrepSource, JobConfig, Selector};
use qdc_core::exterior::DEFAULT_MAX_DIM;

#[derive(Parser)]
#[command(
    name = "qdc",
    version,
    about = "Bicovariant calculi on D*(G): classification, exterior algebra, cohomology"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every nontrivial (class, irrep) calculus
    Classify(Common),
    /// Build, verify, exterior algebra, relations and cohomology
    Pipeline(Pipeline),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    /// Builtin name (S3, Z2, Z3, Z4, D4, trivial) or file:path
    #[arg(long, default_value = "S3")]
    group: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct Pipeline {
    #[command(flatten)]
    common: Common,
    /// Class representative (cycle notation, name or index) or "all"
    #[arg(long, default_value = "all")]
    class: String,
    /// Builtin family, file:path or "all"
    #[arg(long, default_value = "all")]
    irrep: String,
    /// Section as inline JSON or file:path
    #[arg(long)]
    section: Option<String>,
    #[arg(long, default_value_t = 3)]
    nmax: usize,
    /// Bound on mⁿ; QDC_MAX_DIM applies when the flag is absent
    #[arg(long)]
    max_matrix_dim: Option<usize>,
    /// Stop after the first-order gates and the braiding oracle
    #[arg(long)]
    verify_only: bool,
    /// Include the degree-2 relation basis
    #[arg(long)]
    relations: bool,
    /// Include ranks and representatives
    #[arg(long)]
    cohomology: bool,
}

fn emit(common: &Common, v: &Value) -> Result<(), CliError> {
    let text = match common.format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable") + "\n",
        Format::Text => text_summary(v),
    };
    match &common.out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn max_dim(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var("QDC_MAX_DIM") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("QDC_MAX_DIM is not a positive integer: {s}"))),
        Err(_) => Ok(DEFAULT_MAX_DIM),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Classify(c) => {
            let cfg = JobConfig {
                group: GroupSource::parse(&c.group),
                ..JobConfig::default()
            };
            let v = cmd_classify(&cfg)?;
            emit(&c, &v)
        }
        Command::Pipeline(p) => {
            let cfg = JobConfig {
                group: GroupSource::parse(&p.common.group),
                class: Selector::parse(&p.class),
                irrep: IrrepSource::parse(&p.irrep)?,
                section: p.section.clone(),
                n_max: p.nmax,
                max_dim: max_dim(p.max_matrix_dim)?,
                verify_only: p.verify_only,
                relations: p.relations,
                cohomology: p.cohomology,
            };
            let (v, failure) = cmd_pipeline(&cfg)?;
            emit(&p.common, &v)?;
            match failure {
                Some(e) => Err(e),
                None => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qdc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
