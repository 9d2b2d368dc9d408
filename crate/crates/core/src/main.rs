use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use quantum_baker::chaos::LogBase;
use quantum_baker::experiments::{
    oracle_dump, run_chaos, run_orbits, run_verify, ClassicalModeKind, ConfigOverrides,
    ExperimentConfig, OperatorKind, OutputFormat, RunReport, VerifyOptions,
};
use quantum_baker::Error;

/// Quantum and classical baker's map orbits, chaos degrees and oracle checks.
#[derive(Parser)]
#[command(name = "quantum-baker", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quantum and classical orbits of a seeded initial string.
    Orbits(RunArgs),
    /// Chaos-degree series for each N of the sweep and the difference table.
    Chaos(RunArgs),
    /// Closed forms against the dense oracle; exit 1 on any failure.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a dense operator as row,col,re,im.
    OracleDump {
        #[arg(long)]
        operator: OperatorKind,
        #[arg(long)]
        n_qubits: usize,
        /// Number of untouched leading qubits for partial-fourier.
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// TOML file with any of the fields below; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n_qubits: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Last time step n_max.
    #[arg(long)]
    steps: Option<u64>,
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    bins: Option<usize>,
    /// 2 or e.
    #[arg(long)]
    log_base: Option<LogBase>,
    /// truncated or extended.
    #[arg(long)]
    classical_mode: Option<ClassicalModeKind>,
    /// Comma-separated qubit counts, e.g. 100,300,500,700.
    #[arg(long, value_delimiter = ',')]
    n_sweep: Option<Vec<usize>>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// csv or json.
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Also write gnuplot scripts next to the CSV files.
    #[arg(long)]
    gnuplot: bool,
}

impl RunArgs {
    fn load(self) -> quantum_baker::Result<ExperimentConfig> {
        let overrides = ConfigOverrides {
            n_qubits: self.n_qubits,
            seed: self.seed,
            steps: self.steps,
            window: self.window,
            bins: self.bins,
            log_base: self.log_base,
            classical_mode: self.classical_mode,
            n_sweep: self.n_sweep,
            out_dir: self.out_dir,
            format: self.format,
            gnuplot: self.gnuplot,
        };
        ExperimentConfig::load(self.config.as_deref(), &overrides)
    }
}

fn print_report(report: &RunReport) -> quantum_baker::Result<()> {
    println!("{}", serde_json::to_string_pretty(report)?);
    Ok(())
}

fn run(cli: Cli) -> quantum_baker::Result<bool> {
    match cli.command {
        Command::Orbits(args) => print_report(&run_orbits(&args.load()?)?)?,
        Command::Chaos(args) => print_report(&run_chaos(&args.load()?)?)?,
        Command::Verify { max_n, seed } => {
            let report = run_verify(&VerifyOptions {
                seed,
                ..VerifyOptions::new(max_n)
            })?;
            print!("{}", report.table());
            return Ok(report.passed());
        }
        Command::OracleDump {
            operator,
            n_qubits,
            m,
            out_dir,
        } => println!(
            "{}",
            oracle_dump(operator, n_qubits, m, &out_dir)?.display()
        ),
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) | Error::Csv(_) | Error::Json(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
