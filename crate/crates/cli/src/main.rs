use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use gfc::commands::{self, Format};
use gfc::{write_atomic, CliError};

#[derive(Parser)]
#[command(name = "gfc", version, about = "Exact analysis of polynomial sets generated by F(xt - R(t))")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand the generating function into P_0..P_N.
    Expand {
        spec: PathBuf,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the polynomial set and emit the certificate.
    #[command(group(ArgGroup::new("format").args(["json", "csv"])))]
    Classify {
        spec: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        csv: bool,
        /// Append approximate decimal columns to the CSV table.
        #[arg(long, value_name = "K")]
        decimal: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run identity checks; exits 4 if any requested check fails.
    Verify {
        spec: PathBuf,
        /// Comma-separated: gf7,gf9,gf10,gf11,gf12,solricati,symmetry,r_quadratic,alphan,rescale
        #[arg(long)]
        checks: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify perturbed copies of a spec.
    Scan {
        spec: PathBuf,
        /// r<n> sets R_n, alpha<n> multiplies alpha_n
        #[arg(long)]
        knob: String,
        /// Comma-separated rationals (`double`, `half` also accepted)
        #[arg(long)]
        values: String,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Time expansion at orders N/4, N/2, N.
    Bench {
        #[arg(long, default_value_t = 32)]
        order: usize,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => write_atomic(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            let res = stdout.write_all(text.as_bytes()).and_then(|_| {
                if text.ends_with('\n') { Ok(()) } else { stdout.write_all(b"\n") }
            });
            match res {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => Ok(other?),
            }
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Expand { spec, order, out } => {
            let doc = commands::cmd_expand(&spec, order)?;
            emit(&doc.to_json(), out.as_deref())?;
            Ok(gfc::EXIT_OK)
        }
        Command::Classify { spec, json: _, csv, decimal, out } => {
            let format = if csv { Format::Csv } else { Format::Json };
            let doc = commands::cmd_classify(&spec)?;
            let text = match format {
                Format::Json => doc.to_json(),
                Format::Csv => commands::table_csv(doc.table.as_deref().unwrap_or_default(), decimal),
            };
            emit(&text, out.as_deref())?;
            Ok(gfc::EXIT_OK)
        }
        Command::Verify { spec, checks, out } => {
            let checks = match checks {
                Some(list) => commands::parse_checks(&list)?,
                None => commands::DEFAULT_CHECKS.to_vec(),
            };
            let (doc, code) = commands::cmd_verify(&spec, &checks)?;
            for line in &doc.diagnostics {
                eprintln!("{line}");
            }
            emit(&doc.to_json(), out.as_deref())?;
            Ok(code)
        }
        Command::Scan { spec, knob, values, csv } => {
            let knob = commands::parse_knob(&knob)?;
            let values = commands::parse_values(&values)?;
            let text = commands::cmd_scan(&spec, knob, &values)?;
            emit(&text, csv.as_deref())?;
            Ok(gfc::EXIT_OK)
        }
        Command::Bench { order, reps, out } => {
            let (text, code) = commands::cmd_bench(order, reps)?;
            emit(&text, out.as_deref())?;
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { gfc::EXIT_PARSE as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
