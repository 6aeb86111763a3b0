use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::{mpsc, Arc};
use std::thread;
use std::time::Duration;

use clap::{Parser, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use wkring::{run, CliError, Outcome, Progress, Request, Verb};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerbArg {
    Roots,
    Weyl,
    Csets,
    Steinberg,
    Ctable,
    Ktable,
    ToricCheck,
    Verify,
}

impl From<VerbArg> for Verb {
    fn from(v: VerbArg) -> Self {
        match v {
            VerbArg::Roots => Verb::Roots,
            VerbArg::Weyl => Verb::Weyl,
            VerbArg::Csets => Verb::CSets,
            VerbArg::Steinberg => Verb::Steinberg,
            VerbArg::Ctable => Verb::CTable,
            VerbArg::Ktable => Verb::KTable,
            VerbArg::ToricCheck => Verb::ToricCheck,
            VerbArg::Verify => Verb::Verify,
        }
    }
}

/// Exact K-rings of wonderful compactifications: bases, structure
/// constants, product tables and verification suites, as JSON.
#[derive(Debug, Parser)]
#[command(name = "wkring", version)]
struct Args {
    #[arg(value_enum)]
    verb: VerbArg,
    /// Cartan type such as A2, B3 or G2.
    #[arg(long = "type", value_name = "LABEL")]
    type_label: String,
    /// Write the JSON result here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Suite for `verify`; all suites when omitted.
    #[arg(long, value_name = "NAME")]
    suite: Option<String>,
    /// Subdivision of the positive chamber, as {"rays": .., "cones": ..}.
    #[arg(long, value_name = "PATH")]
    fan: Option<PathBuf>,
    /// Family of polynomials keyed by cone position, for `toric-check`.
    #[arg(long, value_name = "PATH")]
    family: Option<PathBuf>,
    /// Give up after this many seconds (exit code 3).
    #[arg(long, value_name = "SECS")]
    timeout: Option<f64>,
    #[arg(long, value_name = "N")]
    max_rank: Option<usize>,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}

fn request(args: &Args) -> Result<Request, CliError> {
    Ok(Request {
        verb: args.verb.into(),
        label: args.type_label.parse()?,
        suite: args.suite.clone(),
        fan: args.fan.as_deref().map(read_json).transpose()?,
        family: args.family.as_deref().map(read_json).transpose()?,
        max_rank: args.max_rank,
    })
}

fn print(doc: &Value) {
    println!("{}", serde_json::to_string_pretty(doc).expect("serializable"));
}

fn finish(result: Result<Outcome, CliError>, out: Option<&Path>) -> ExitCode {
    match result {
        Ok(o) => {
            match out {
                Some(path) => {
                    let text = serde_json::to_string_pretty(&o.doc).expect("serializable") + "\n";
                    if let Err(e) = fs::write(path, text) {
                        let err = CliError::Io(format!("{}: {e}", path.display()));
                        print(&err.to_json());
                        return ExitCode::from(1);
                    }
                }
                None => print(&o.doc),
            }
            ExitCode::from(o.code as u8)
        }
        Err(e) => {
            print(&e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            print(&CliError::Usage(e.to_string().trim_end().to_string()).to_json());
            return ExitCode::from(1);
        }
    };
    let req = match request(&args) {
        Ok(r) => r,
        Err(e) => return finish(Err(e), None),
    };
    let timeout = match args.timeout {
        Some(t) if !(t.is_finite() && t > 0.0) => {
            return finish(Err(CliError::Usage(format!("--timeout must be positive, got {t}"))), None)
        }
        t => t.map(Duration::from_secs_f64),
    };
    let progress = Arc::new(Progress::default());
    let (tx, rx) = mpsc::channel();
    let worker_progress = Arc::clone(&progress);
    thread::spawn(move || {
        let _ = tx.send(run(&req, &worker_progress));
    });
    let result = match timeout {
        None => rx.recv().expect("worker finished"),
        Some(limit) => match rx.recv_timeout(limit) {
            Ok(r) => r,
            Err(_) => {
                print(&json!({
                    "error": {
                        "kind": "Timeout",
                        "message": format!("gave up after {} s", limit.as_secs_f64()),
                    },
                    "progress": progress.snapshot(),
                }));
                return ExitCode::from(3);
            }
        },
    };
    finish(result, args.out.as_deref())
}
