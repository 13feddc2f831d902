use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Arg, ArgMatches, Command as ClapCommand, FromArgMatches, Parser, Subcommand};
use detscheme::{fixtures, load_problem, run, Command, InputError, Report};

/// Standard and good determinantal schemes: classification, complexes and certificates.
#[derive(Parser, Debug)]
#[command(name = "detscheme", version)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized steps (overrides the problem file).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Top,
}

#[derive(Subcommand, Debug)]
enum Top {
    #[command(flatten)]
    Run(Command),
    /// Replay the bundled fixtures and diff against the golden files.
    Examples {
        /// Rewrite the golden files instead of comparing.
        #[arg(long)]
        bless: bool,
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
}

/// Every problem subcommand takes the problem file (or fixture name) as its positional argument.
fn cli() -> ClapCommand {
    let mut cmd = <Cli as clap::CommandFactory>::command();
    let names: Vec<String> =
        cmd.get_subcommands().map(|s| s.get_name().to_string()).filter(|n| n != "examples").collect();
    for name in names {
        cmd = cmd.mut_subcommand(name, |s| {
            s.arg(Arg::new("problem").value_name("PROBLEM").help("Problem file or bundled fixture name").required(true))
        });
    }
    cmd
}

fn problem_arg(m: &ArgMatches) -> Option<String> {
    m.subcommand().and_then(|(_, sub)| sub.try_get_one::<String>("problem").ok().flatten().cloned())
}

fn execute(cli: &Cli, problem: Option<String>) -> Result<Report, InputError> {
    match &cli.command {
        Top::Examples { bless, golden_dir } => {
            let dir = golden_dir.clone().unwrap_or_else(fixtures::default_golden_dir);
            fixtures::run_examples(&dir, *bless)
        }
        Top::Run(cmd) => {
            let problem = load_problem(&problem.expect("clap requires PROBLEM"))?;
            run(cmd, &problem, cli.seed)
        }
    }
}

fn main() -> ExitCode {
    let matches = cli().get_matches();
    let parsed = Cli::from_arg_matches(&matches).unwrap_or_else(|e| e.exit());
    match execute(&parsed, problem_arg(&matches)) {
        Ok(report) => {
            if parsed.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
