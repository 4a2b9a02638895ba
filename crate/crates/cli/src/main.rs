//! `sutra`: list methods, print traces and comparisons, or run the HTTP service.
//!
//! Exit codes: 0 success, 1 internal or I/O failure, 2 invalid operands or
//! usage, 3 blocked by validation, 4 unknown method.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sutra_core::canonical::to_canonical_bytes;
use sutra_core::engine::DEFAULT_MAX_DIGITS;
use sutra_core::render::{render_comparison, render_trace};
use sutra_core::{
    build_comparison, build_trace, describe_method, list_methods, parse_operand, validate,
    BuildOptions, DigitString, EngineError, LatentDisplay, MethodDescriptor, Operation,
};
use sutra_service::ServiceConfig;

#[derive(Parser)]
#[command(name = "sutra", version, about = "Step traces for Vedic and traditional arithmetic methods")]
struct Cli {
    /// Longest operand accepted, in digits.
    #[arg(long, env = "SUTRA_MAX_DIGITS", global = true, default_value_t = DEFAULT_MAX_DIGITS)]
    max_digits: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the registered methods.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Describe one method.
    Info {
        id: String,
        #[arg(long)]
        json: bool,
    },
    /// Run one method and print its trace.
    Trace {
        #[arg(long)]
        method: String,
        /// Comma-separated operands, e.g. 12,34
        #[arg(long, allow_hyphen_values = true)]
        operands: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_enum)]
        latent: Option<Latent>,
    },
    /// Run the vedic and the traditional method side by side.
    Compare {
        #[arg(long)]
        operation: Operation,
        #[arg(long, allow_hyphen_values = true)]
        operands: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_enum)]
        latent: Option<Latent>,
    },
    /// Serve the HTTP API.
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Latent {
    Vedic,
    Both,
    None,
}

impl From<Latent> for LatentDisplay {
    fn from(l: Latent) -> Self {
        match l {
            Latent::Vedic => LatentDisplay::Vedic,
            Latent::Both => LatentDisplay::Both,
            Latent::None => LatentDisplay::None,
        }
    }
}

/// A failure and the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match &e {
            EngineError::UnknownMethod(_) => Failure::new(4, e.to_string()),
            EngineError::Applicability { report, .. } => {
                let mut message = e.to_string();
                for w in report.blocking() {
                    message.push_str(&format!("\n  suggestion: {}", w.suggestion));
                }
                Failure::new(3, message)
            }
            _ => Failure::new(1, e.to_string()),
        }
    }
}

fn parse_operands(list: &str) -> Result<Vec<DigitString>, Failure> {
    list.split(',')
        .enumerate()
        .map(|(i, text)| {
            parse_operand(text).map_err(|e| Failure::new(2, format!("operand {}: {e}", i + 1)))
        })
        .collect()
}

fn options(max_digits: usize, latent: Option<Latent>) -> BuildOptions {
    BuildOptions {
        max_digits: Some(max_digits),
        latent_display: latent.map(Into::into),
    }
}

fn method_table(methods: &[MethodDescriptor]) -> String {
    let width = methods.iter().map(|m| m.id.len()).max().unwrap_or(2);
    let mut out = format!("{:<width$}  {:<9} {:<12} {:>5}  NAME\n", "ID", "OPERATION", "FAMILY", "LEVEL");
    for m in methods {
        out.push_str(&format!(
            "{:<width$}  {:<9} {:<12} {:>5}  {}\n",
            m.id,
            m.operation.to_string(),
            m.family.to_string(),
            m.level,
            m.display_name
        ));
    }
    out
}

fn method_info(m: &MethodDescriptor) -> String {
    let arity = if m.operand_arity.min == m.operand_arity.max {
        m.operand_arity.min.to_string()
    } else {
        format!("{} to {}", m.operand_arity.min, m.operand_arity.max)
    };
    let mut out = format!(
        "{}\n  id:        {}\n  operation: {}\n  family:    {}\n  level:     {}\n  operands:  {arity}\n",
        m.display_name, m.id, m.operation, m.family, m.level
    );
    for c in &m.constraints {
        out.push_str(&format!("  - {c}\n"));
    }
    out.push_str(&format!("\n{}\n", m.info_text));
    out
}

/// Non-blocking notes go to stderr so JSON on stdout stays clean.
fn notes(id: &str, operands: &[DigitString], opts: &BuildOptions) -> String {
    validate(id, operands, opts)
        .map(|r| {
            r.warnings
                .iter()
                .filter(|w| !w.blocking)
                .map(|w| format!("note: {}: {}\n", w.code.as_str(), w.message))
                .collect()
        })
        .unwrap_or_default()
}

/// Output for stdout and stderr, produced in full before anything is written.
fn run(cli: Cli) -> Result<(Vec<u8>, String), Failure> {
    match cli.command {
        Command::List { json } => {
            let methods = list_methods();
            let out = if json {
                to_canonical_bytes(&methods)
            } else {
                method_table(&methods).into_bytes()
            };
            Ok((out, String::new()))
        }
        Command::Info { id, json } => {
            let m = describe_method(&id)?;
            let out = if json {
                to_canonical_bytes(&m)
            } else {
                method_info(&m).into_bytes()
            };
            Ok((out, String::new()))
        }
        Command::Trace {
            method,
            operands,
            format,
            latent,
        } => {
            describe_method(&method)?;
            let operands = parse_operands(&operands)?;
            let opts = options(cli.max_digits, latent);
            let trace = build_trace(&method, &operands, &opts)?;
            let out = match format {
                Format::Json => trace.to_canonical_bytes(),
                Format::Text => render_trace(&trace).into_bytes(),
            };
            Ok((out, notes(&method, &operands, &opts)))
        }
        Command::Compare {
            operation,
            operands,
            format,
            latent,
        } => {
            let operands = parse_operands(&operands)?;
            let opts = options(cli.max_digits, latent);
            let report = build_comparison(operation, &operands, &opts)?;
            let out = match format {
                Format::Json => report.to_canonical_bytes(),
                Format::Text => render_comparison(&report).into_bytes(),
            };
            Ok((out, notes(&report.vedic.method_id, &operands, &opts)))
        }
        Command::Serve { host, port } => {
            tracing_subscriber::fmt()
                .with_writer(std::io::stderr)
                .init();
            let config = ServiceConfig {
                max_digits: cli.max_digits,
            };
            let runtime = tokio::runtime::Runtime::new()
                .map_err(|e| Failure::new(1, format!("cannot start runtime: {e}")))?;
            runtime
                .block_on(sutra_service::serve(&host, port, config))
                .map_err(|e| Failure::new(1, format!("cannot serve on {host}:{port}: {e}")))?;
            Ok((Vec::new(), String::new()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, notes)) => {
            eprint!("{notes}");
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(&out).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
