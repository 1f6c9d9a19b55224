use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use tyang_cli::{run_scenario, RunOptions, Status, PIPELINES};

#[derive(Parser)]
#[command(
    name = "tyang",
    version,
    about = "Exact verification of twisted super Yangian constructions"
)]
struct Cli {
    /// Print the pipeline ids and exit.
    #[arg(long)]
    list_pipelines: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario file and emit its report.
    Run {
        scenario: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run only the check with this id.
        #[arg(long)]
        only: Option<String>,
        /// Refuse modules of larger dimension.
        #[arg(long, default_value_t = 64)]
        max_dim: usize,
    },
    /// List the pipelines with a short description.
    List,
}

fn list() {
    for p in PIPELINES {
        println!("{:<16}{}", p.id, p.summary);
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if cli.list_pipelines {
        for p in PIPELINES {
            println!("{}", p.id);
        }
        return ExitCode::SUCCESS;
    }
    match cli.command {
        None | Some(Command::List) => {
            list();
            ExitCode::SUCCESS
        }
        Some(Command::Run {
            scenario,
            out,
            only,
            max_dim,
        }) => {
            let report = match run_scenario(&scenario, &RunOptions { only, max_dim }) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let text = report.render();
            match out {
                Some(p) => {
                    if let Err(e) = std::fs::write(&p, text) {
                        eprintln!("cannot write {}: {e}", p.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            match report.status() {
                Status::Pass => ExitCode::SUCCESS,
                Status::Fail => ExitCode::from(1),
            }
        }
    }
}
