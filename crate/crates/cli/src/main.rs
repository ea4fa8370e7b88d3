use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fnls_cli::{cmd_case, cmd_compat, cmd_run, cmd_sweep, cmd_unique, selftest, CliError, Options};

#[derive(Parser)]
#[command(name = "fnls", version, about = "Fractional NLS with regularized singular coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args)]
struct Flags {
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory; overrides `output.dir`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for per-ε runs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for the ensemble diagnostics.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Apply the 2/3 rule to the nonlinear step.
    #[arg(long, global = true)]
    dealias: bool,
}

#[derive(Subcommand)]
enum Command {
    /// One run; writes diagnostics.csv, snapshots and witnesses.json.
    Run,
    /// One run per ε of the net, with summary.csv and fits.json.
    Sweep,
    /// Convergence to the unmollified smooth problem.
    Compat,
    /// Negligibility rate of an ε^k perturbation.
    Unique,
    /// A case preset: case1, case2, case3 or case4.
    Case { label: Option<String> },
    /// Fast invariant battery.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let f = cli.flags;
    let opts = Options { config: f.config, out: f.out, jobs: f.jobs, seed: f.seed, dealias: f.dealias };
    let result = match cli.command {
        Command::Run => cmd_run(&opts),
        Command::Sweep => cmd_sweep(&opts),
        Command::Compat => cmd_compat(&opts),
        Command::Unique => cmd_unique(&opts),
        Command::Case { label } => cmd_case(&opts, label.as_deref()),
        Command::Selftest => {
            let results = selftest::battery();
            print!("{}", selftest::report(&results));
            let failed = results.iter().filter(|r| !r.pass).count();
            if failed == 0 {
                return ExitCode::SUCCESS;
            }
            Err(CliError::SelfTest(failed))
        }
    };
    match result {
        Ok(manifest) => {
            println!("wrote {}", manifest.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("fnls: {e}");
            e.to_exit_code()
        }
    }
}
