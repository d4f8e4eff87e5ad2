//! `densikit`: verify certificate files, emit catalog certificates, build
//! and check Gromov–Vaserstein fibrations, print exact flows.
//!
//! Exit codes: 0 verified, 1 refuted, 2 insufficient (or budget exceeded),
//! 3 input error.

/// `println!` through [`emit`].
macro_rules! outln {
    ($($arg:tt)*) => {
        $crate::emit(&(format!($($arg)*) + "\n"))
    };
}

mod catalog;
mod flow;
mod gv;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use densikit::Error;

pub const EXIT_INPUT: u8 = 3;
pub const EXIT_BUDGET: u8 = 2;

/// Failure that ends a command before a verdict exists.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget(_) => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult = Result<u8, CliError>;

#[derive(Parser, Debug)]
#[command(name = "densikit", version, about = "Exact verification of compatible tuples of complete vector fields")]
struct Cli {
    /// Seed for every sampled point.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify certificate files (text or JSON); several files run concurrently.
    Verify(verify::VerifyArgs),
    /// Build, verify and write a catalog certificate.
    Catalog(catalog::CatalogArgs),
    /// Gromov–Vaserstein fibrations.
    #[command(subcommand)]
    Gv(gv::GvCommand),
    /// Print the exact flow of a field of a certificate.
    Flow(flow::FlowArgs),
    /// Convert a certificate between the text and JSON formats.
    Convert(ConvertArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct ConvertArgs {
    file: PathBuf,
    /// Output format; defaults to the other one.
    #[arg(long)]
    to: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn read_certificate(path: &std::path::Path) -> Result<densikit::certificates::TupleCertificate, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    densikit::certfile::parse_any(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Writes to stdout; a closed pipe ends the process quietly.
pub fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(EXIT_INPUT as i32);
    }
}

pub fn write_output(out: Option<&std::path::Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            emit(text);
            Ok(())
        }
    }
}

fn convert(args: &ConvertArgs) -> CliResult {
    let text = std::fs::read_to_string(&args.file)?;
    let is_json = text.trim_start().starts_with('{');
    let cert =
        densikit::certfile::parse_any(&text).map_err(|e| CliError::Input(format!("{}: {e}", args.file.display())))?;
    let to = args.to.unwrap_or(if is_json { Format::Text } else { Format::Json });
    let rendered = match to {
        Format::Text => densikit::certfile::render_certificate(&cert),
        Format::Json => densikit::certfile::certificate_to_json(&cert) + "\n",
    };
    write_output(args.out.as_deref(), &rendered)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Verify(a) => verify::run(a, cli.seed),
        Command::Catalog(a) => catalog::run(a),
        Command::Gv(c) => gv::run(c, cli.seed),
        Command::Flow(a) => flow::run(a, cli.seed),
        Command::Convert(a) => convert(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let (CliError::Input(msg) | CliError::Budget(msg)) = &e;
            eprintln!("error: {msg}");
            ExitCode::from(e.code())
        }
    }
}
