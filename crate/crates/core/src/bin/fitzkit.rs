use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fitzkit::scenario::{generate_builtin, run_scenario, Scenario};

#[derive(Parser)]
#[command(name = "fitzkit", about = "Fitzpatrick-function scenarios and reports", disable_version_flag = true)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Run a scenario file and write its reports.
    Run {
        file: PathBuf,
        #[arg(long, default_value = "fitzkit-out")]
        out: PathBuf,
        /// Override the scenario tolerance.
        #[arg(long, allow_hyphen_values = true)]
        tol: Option<f64>,
        /// Override the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print a built-in scenario as JSON.
    Gen { name: String },
    /// Print the version.
    Version,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = std::env::var("FITZKIT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match cli.verb {
        Verb::Version => {
            println!("fitzkit {}", env!("CARGO_PKG_VERSION"));
            ExitCode::SUCCESS
        }
        Verb::Gen { name } => match generate_builtin(&name) {
            Ok(s) => {
                // a closed pipe (e.g. `| head`) is not an error
                let _ = writeln!(std::io::stdout().lock(), "{}", s.to_json_pretty());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Verb::Run { file, out, tol, seed } => {
            let loaded = std::fs::read_to_string(&file)
                .map_err(|e| format!("{}: {e}", file.display()))
                .and_then(|text| Scenario::from_json(&text).map_err(|e| e.to_string()))
                .and_then(|mut s| {
                    if let Some(t) = tol {
                        s.tol = t;
                    }
                    if let Some(n) = seed {
                        s.seed = n;
                    }
                    s.validate().map(|_| s).map_err(|e| e.to_string())
                });
            let scenario = match loaded {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            match run_scenario(&scenario, &out) {
                Ok(summary) => {
                    for s in &summary.suites {
                        println!(
                            "{:02} {:<13} {:<12} {}",
                            s.index,
                            s.kind,
                            s.object,
                            if s.passed { "PASS" } else { "FAIL" }
                        );
                    }
                    println!("reports: {}", summary.dir.display());
                    if summary.passed {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(2)
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
