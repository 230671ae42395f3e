use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use spectrum_auction::Policy;
use spectrum_auction::cli::{self, CliError};

#[derive(Parser)]
#[command(
    name = "spectrum-auction",
    version,
    about = "Sealed-bid spectrum allocation: run auction rounds and experiment sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one auction round over a bid file and print the verdicts as CSV
    Run {
        /// Allocation policy: dp, greedy or fifo
        #[arg(long)]
        policy: String,
        /// Free PU channels (m)
        #[arg(long)]
        channels: u32,
        /// Bid file with header su_id,channels,price
        #[arg(long)]
        bids: PathBuf,
    },
    /// Run one experiment sweep and write its CSV file
    Sweep {
        /// Which sweep: 6 (satisfied SUs vs m), 7 (PU gain vs m),
        /// 8 (processing time vs nb), 9 (response time vs X)
        #[arg(long)]
        figure: u8,
        /// Output path (default: figure<N>.csv)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed for the generated bid sets of sweep 8
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Repetitions per measured cell of sweep 8
        #[arg(long, default_value_t = 1000)]
        repeats: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::from(cli::EXIT_OK as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Run {
            policy,
            channels,
            bids,
        } => {
            let policy = Policy::from_str(&policy).map_err(|e| CliError::Input(e.to_string()))?;
            let report = cli::run_command(policy, channels, &bids)?;
            std::io::stdout()
                .write_all(report.as_bytes())
                .map_err(|e| CliError::Internal(format!("cannot write to stdout: {e}")))
        }
        Command::Sweep {
            figure,
            out,
            seed,
            repeats,
        } => {
            let path = cli::sweep_command(figure, out.as_deref(), seed, repeats)?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
    }
}
