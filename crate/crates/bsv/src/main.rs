use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bsv::builtins;
use bsv::report::schema;
use bsv::run::{env_prime, run_checks, RunOptions};
use bsv::scenario::{parse_scenario, serialize, ScenarioDoc};
use bsv_core::coeff::FieldMode;

#[derive(Parser)]
#[command(name = "bsv", version, about = "Verify Brauer-Severi bundle scenarios")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args)]
struct RunArgs {
    /// Coefficient field: q, qw, fp or fp:<prime>.
    #[arg(long, global = true)]
    field: Option<FieldMode>,
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run heavy ideal checks in the scenario field rather than mod p.
    #[arg(long, global = true)]
    exact: bool,
    /// Print the scenario text instead of running it.
    #[arg(long, global = true)]
    print: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the checks of a scenario file.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run a builtin scenario.
    Builtin {
        #[command(subcommand)]
        which: Which,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Report format information.
    Report {
        /// Print the JSON schema of the report.
        #[arg(long)]
        schema: bool,
    },
}

#[derive(Subcommand)]
enum Which {
    S1s2,
    Pencil {
        #[arg(long, allow_hyphen_values = true)]
        t0: i64,
        #[arg(long, allow_hyphen_values = true)]
        t1: i64,
    },
    Appendix {
        /// One of A1, A2, A3, A4, A5, Cartier, A7.
        #[arg(long)]
        lemma: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        t0: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        t1: i64,
    },
}

fn execute(doc: &ScenarioDoc, a: &RunArgs) -> Result<ExitCode, String> {
    let out = if a.print {
        serialize(doc)
    } else {
        let rep = run_checks(doc, &RunOptions { field: a.field, prime: env_prime(), exact: a.exact });
        let text = if a.json { rep.to_json_string() } else { rep.to_text() };
        if rep.has_failures() {
            emit(&text, a.out.as_ref())?;
            return Ok(ExitCode::from(1));
        }
        text
    };
    emit(&out, a.out.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.cmd {
        Cmd::Verify { file, run } => std::fs::read_to_string(&file)
            .map_err(|e| format!("{}: {e}", file.display()))
            .and_then(|t| parse_scenario(&t).map_err(|e| format!("{}: {e}", file.display())))
            .map_err(|e| (e, 2))
            .and_then(|doc| execute(&doc, &run).map_err(|e| (e, 2))),
        Cmd::Builtin { which, run } => {
            let doc = match which {
                Which::S1s2 => Ok(builtins::s1s2()),
                Which::Pencil { t0, t1 } => builtins::pencil(t0, t1),
                Which::Appendix { lemma, t0, t1 } => builtins::appendix(&lemma, t0, t1),
            };
            doc.map_err(|e| (e.to_string(), 2)).and_then(|d| execute(&d, &run).map_err(|e| (e, 2)))
        }
        Cmd::Report { schema: true } => {
            println!("{}", serde_json::to_string_pretty(&schema()).expect("schema serializes"));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Report { schema: false } => Err(("nothing to report; try --schema".to_string(), 2)),
    };
    match r {
        Ok(c) => c,
        Err((msg, code)) => {
            eprintln!("bsv: {msg}");
            ExitCode::from(code)
        }
    }
}
