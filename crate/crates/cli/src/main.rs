//! `panachee`: check, complete and certify 3x3 diagram problems written in
//! the problem language. Reports go to stdout as JSON, diagnostics to stderr.

use clap::{Parser, Subcommand};
use panachee::certificate::{verify_certificate, Certificate, CertificateError};
use panachee::dsl::{parse_problem, DslError, ProblemSource};
use panachee::oracle::{brute_complete, OracleError, SearchBudget};
use panachee::panachee::{
    complete_with, enumerate_with, obstruction, torsor_with, Analysis, PanacheeError,
};
use panachee::report::{CompletionReport, ObstructionReport, OracleReport, Report, TorsorReport};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Exit statuses, one per outcome category.
mod code {
    pub const OK: u8 = 0;
    pub const IO: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const ILL_FORMED: u8 = 3;
    pub const OUT_OF_SCOPE: u8 = 4;
    pub const INTERNAL: u8 = 5;
    pub const OBSTRUCTED: u8 = 10;
    pub const VERIFY_FAILED: u8 = 11;
}

#[derive(Parser)]
#[command(
    name = "panachee",
    version,
    about = "Obstruction, completion and certificates for 3x3 diagrams of short exact sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the obstruction class. Exit 0 if completable, 10 if not.
    Check { file: PathBuf },
    /// Build a middle object; optionally write a certificate.
    Complete {
        file: PathBuf,
        #[arg(short = 'o', long = "output", value_name = "CERT")]
        output: Option<PathBuf>,
    },
    /// Describe the group acting on the set of solutions.
    Torsor { file: PathBuf },
    /// List up to K solutions, one per class.
    Enumerate {
        file: PathBuf,
        #[arg(long, value_name = "K", default_value_t = 16)]
        limit: usize,
    },
    /// Re-check a certificate without computing any Ext group. Exit 11 on failure.
    Verify { cert: PathBuf },
    /// Exhaustive search for completions (Z/N only, small orders).
    Oracle {
        file: PathBuf,
        #[arg(long = "max-order", value_name = "M", default_value_t = 16)]
        max_order: u64,
    },
}

/// A failure with its exit status.
struct Fail {
    code: u8,
    msg: String,
}

impl Fail {
    fn new(code: u8, msg: impl Into<String>) -> Self {
        Fail {
            code,
            msg: msg.into(),
        }
    }
}

impl From<PanacheeError> for Fail {
    fn from(e: PanacheeError) -> Self {
        let code = match e {
            PanacheeError::Obstructed => code::OBSTRUCTED,
            PanacheeError::CornerMismatch(_) | PanacheeError::Sequence { .. } => code::ILL_FORMED,
            PanacheeError::Infinite => code::OUT_OF_SCOPE,
            _ => code::INTERNAL,
        };
        Fail::new(code, e.to_string())
    }
}

impl From<OracleError> for Fail {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::CapTooLarge(_) => code::PARSE,
            OracleError::BudgetExceeded { .. }
            | OracleError::UnsupportedRing
            | OracleError::Infinite => code::OUT_OF_SCOPE,
            _ => code::INTERNAL,
        };
        Fail::new(code, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path)
        .map_err(|e| Fail::new(code::IO, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<ProblemSource, Fail> {
    parse_problem(&read(path)?).map_err(|e| {
        let code = match e {
            DslError::IllFormed { .. } => code::ILL_FORMED,
            _ => code::PARSE,
        };
        Fail::new(code, format!("{}:{e}", path.display()))
    })
}

fn analyse(src: &ProblemSource) -> Result<(Report, Analysis), Fail> {
    let an = obstruction(src.to_problem())?;
    let mut report = Report::new(&src.ring);
    report.obstruction = Some(ObstructionReport::new(&an));
    Ok((report, an))
}

fn emit(report: &Report) {
    println!("{}", report.to_json());
}

fn status(an: &Analysis) -> u8 {
    if an.is_obstructed() {
        code::OBSTRUCTED
    } else {
        code::OK
    }
}

fn run(cli: Cli) -> Result<u8, Fail> {
    match cli.command {
        Command::Check { file } => {
            let (report, an) = analyse(&load(&file)?)?;
            emit(&report);
            Ok(status(&an))
        }
        Command::Complete { file, output } => {
            let src = load(&file)?;
            let (mut report, an) = analyse(&src)?;
            let problem = src.to_problem();
            let tor = torsor_with(problem, &an.les, &an.y)?;
            report.torsor = Some(TorsorReport::new(&tor));
            if let Some(c) = complete_with(problem, &an)? {
                report.completion = Some(CompletionReport::new(&c));
                if let Some(path) = output {
                    let cert = Certificate::new(
                        problem,
                        &c,
                        ObstructionReport::new(&an),
                        Some(TorsorReport::new(&tor)),
                    );
                    std::fs::write(&path, cert.to_json())
                        .map_err(|e| Fail::new(code::IO, format!("{}: {e}", path.display())))?;
                }
            } else {
                eprintln!("obstructed: no middle object exists");
            }
            emit(&report);
            Ok(status(&an))
        }
        Command::Torsor { file } => {
            let src = load(&file)?;
            let (mut report, an) = analyse(&src)?;
            report.torsor = Some(TorsorReport::new(&torsor_with(
                src.to_problem(),
                &an.les,
                &an.y,
            )?));
            emit(&report);
            Ok(status(&an))
        }
        Command::Enumerate { file, limit } => {
            let src = load(&file)?;
            let (mut report, an) = analyse(&src)?;
            if an.is_obstructed() {
                emit(&report);
                return Ok(code::OBSTRUCTED);
            }
            let sols = enumerate_with(src.to_problem(), &an, limit)?;
            report.solutions = Some(sols.iter().map(CompletionReport::new).collect());
            emit(&report);
            Ok(code::OK)
        }
        Command::Verify { cert } => {
            let cert = Certificate::from_json(&read(&cert)?).map_err(|e| match e {
                CertificateError::Json(e) => {
                    Fail::new(code::PARSE, format!("{}: {e}", cert.display()))
                }
                other => Fail::new(code::ILL_FORMED, other.to_string()),
            })?;
            let rep = verify_certificate(&cert);
            println!(
                "{}",
                serde_json::to_string_pretty(&rep).expect("serializable")
            );
            for f in rep.failures() {
                eprintln!("failed: {}: {}", f.name, f.detail.as_deref().unwrap_or(""));
            }
            Ok(if rep.passed() {
                code::OK
            } else {
                code::VERIFY_FAILED
            })
        }
        Command::Oracle { file, max_order } => {
            let src = load(&file)?;
            let budget = SearchBudget::new(max_order)?;
            let found = brute_complete(src.to_problem(), &budget)?;
            let mut report = Report::new(&src.ring);
            report.oracle = Some(OracleReport {
                exists: !found.is_empty(),
                solution_classes: found.len(),
            });
            emit(&report);
            Ok(if found.is_empty() {
                code::OBSTRUCTED
            } else {
                code::OK
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(c) => ExitCode::from(c),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
