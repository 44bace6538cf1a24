//! Certification harness for the local equivalence of maximally symmetric
//! rank-two distributions on five-manifolds.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use g2core::catalog::RunMode;
use g2core::catfile;
use g2core::checks::{self, Status};

#[derive(Parser)]
#[command(
    name = "g2cert",
    about = "Symbolic certification of (2,3,5)-distribution identities and split g2 bracket generation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in checks.
    List {
        /// Only show checks whose id, title, or anchor contains the pattern.
        #[arg(long)]
        grep: Option<String>,
    },
    /// Run checks and report.
    Run {
        /// Check ids (C1..C19); all when omitted.
        ids: Vec<String>,
        /// Restrict multi-mode checks to one parameter mode.
        #[arg(long)]
        mode: Option<String>,
        /// Worker threads (defaults to the number of cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Report format.
        #[arg(long, default_value = "text")]
        report: String,
        /// Write the report to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the built-in catalog as a .g2cat document.
    Export {
        /// Parameter mode of the exported catalog.
        #[arg(long, default_value = "generic")]
        mode: String,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::List { grep } => {
            let defs = checks::all_checks();
            for def in defs {
                let line = format!(
                    "{:<4} {:<55} [{}] {}",
                    def.id,
                    def.title,
                    def.modes
                        .iter()
                        .map(|m| m.to_string())
                        .collect::<Vec<_>>()
                        .join(", "),
                    def.anchor
                );
                if let Some(pat) = &grep {
                    if !line.contains(pat.as_str()) {
                        continue;
                    }
                }
                println!("{}", line);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Run {
            ids,
            mode,
            jobs,
            report,
            out,
        } => {
            let mode: Option<RunMode> = match mode {
                None => None,
                Some(m) => Some(m.parse()?),
            };
            if let Some(n) = jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .ok();
            }
            let seed: u64 = std::env::var("G2CERT_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
                .unwrap_or(0);
            let explicit = !ids.is_empty();
            let ids: Vec<String> = if ids.is_empty() {
                checks::all_checks()
                    .iter()
                    .map(|c| c.id.to_string())
                    .collect()
            } else {
                ids
            };
            let reports = if let Some(m) = mode {
                let mut filtered = Vec::new();
                for id in &ids {
                    let def = checks::find_check(id)?;
                    if def.modes.contains(&m) {
                        filtered.push(id.clone());
                    } else if explicit {
                        return Err(Box::new(g2core::error::Error::ModeMismatch {
                            check: id.clone(),
                            mode: m.to_string(),
                        }));
                    }
                }
                checks::run_many(&filtered, Some(m), seed)?
            } else {
                checks::run_many(&ids, None, seed)?
            };
            let rendered = match report.as_str() {
                "text" => checks::render_text(&reports),
                "jsonl" => checks::render_jsonl(&reports),
                other => return Err(format!("unknown report format `{}`", other).into()),
            };
            match out {
                Some(path) => std::fs::write(path, rendered)?,
                None => {
                    std::io::stdout().write_all(rendered.as_bytes())?;
                }
            }
            let failed = reports.iter().any(|r| r.status == Status::Fail);
            Ok(if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Export { mode, out } => {
            let mode: RunMode = mode.parse()?;
            let cat = catfile::builtin_catalog(mode)?;
            let text = catfile::save_catalog(&cat);
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => {
                    std::io::stdout().write_all(text.as_bytes())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
