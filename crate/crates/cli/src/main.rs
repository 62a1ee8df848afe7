use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use qdict_gas::fejer::fejer_distribution;
use qdict_gas::gas::{layout_for, run_gas_observed, GasConfig};
use qdict_gas::oracle::{estimate_resources, Encoder};
use qdict_gas::problem::{load_problem, LoadedProblem};
use qdict_gas::report::{histogram_rows, trace_to_json, write_histograms_csv};
use qdict_gas::verify::brute_force_min;
use qdict_gas::Error;

#[derive(Parser)]
#[command(
    name = "qdgas",
    version,
    about = "Grover adaptive search on a simulated quantum dictionary"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run Grover adaptive search and write trace.json and histograms.csv.
    Solve {
        problem: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Growth factor for the rotation bound; accepts a fraction such as 8/7.
        #[arg(long, default_value = "8/7", value_parser = parse_lambda)]
        lambda: f64,
        #[arg(long, default_value_t = 3)]
        patience: usize,
        #[arg(long, default_value_t = 100)]
        max_iters: usize,
        /// Objective register width; derived from the coefficients by default.
        #[arg(long)]
        value_qubits: Option<usize>,
        #[arg(long, value_enum, default_value_t = EncoderArg::Phase)]
        encoder: EncoderArg,
        /// Combine the oracle conditions on a dedicated flag qubit.
        #[arg(long)]
        global_flag: bool,
        #[arg(long, default_value = "qdgas-out")]
        out_dir: PathBuf,
    },
    /// Gate counts for the state-preparation circuit.
    Resources {
        problem: PathBuf,
        #[arg(long)]
        value_qubits: Option<usize>,
    },
    /// Exhaustive minimum and every minimizing assignment.
    Brute { problem: PathBuf },
    /// Outcome distribution of a real phase target, as CSV.
    Fejer {
        #[arg(allow_negative_numbers = true)]
        a: f64,
        m: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EncoderArg {
    Phase,
    Ry,
}

impl From<EncoderArg> for Encoder {
    fn from(e: EncoderArg) -> Self {
        match e {
            EncoderArg::Phase => Encoder::Phase,
            EncoderArg::Ry => Encoder::Ry,
        }
    }
}

fn parse_lambda(s: &str) -> Result<f64, String> {
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|e| format!("{e}"))?;
            let den: f64 = den.trim().parse().map_err(|e| format!("{e}"))?;
            num / den
        }
        None => s.trim().parse().map_err(|e| format!("{e}"))?,
    };
    if value > 1.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(format!("lambda must be > 1, got {s}"))
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::ProblemFile(_)) => 2,
        Some(Error::ValueOverflow { .. } | Error::Overflow(_)) => 3,
        Some(Error::Infeasible) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Solve {
            problem,
            seed,
            lambda,
            patience,
            max_iters,
            value_qubits,
            encoder,
            global_flag,
            out_dir,
        } => {
            let loaded = load_problem(&problem)?;
            let config = GasConfig {
                lambda,
                patience,
                max_iterations: max_iters,
                seed,
                m_override: value_qubits,
                encoder: encoder.into(),
                global_flag,
            };
            solve(&loaded, &config, &out_dir)
        }
        Command::Resources {
            problem,
            value_qubits,
        } => {
            let loaded = load_problem(&problem)?;
            let config = GasConfig {
                m_override: value_qubits,
                ..GasConfig::default()
            };
            let layout = layout_for(&loaded.problem, &config)?;
            let estimate = estimate_resources(loaded.problem.objective(), &layout);
            println!("n = {}, m = {}", layout.n(), layout.m());
            println!("{:<20} {:>6}", "gate", "count");
            for (class, count) in &estimate.counts {
                println!("{:<20} {:>6}", class.to_string(), count);
            }
            println!("{:<20} {:>6}", "H (key register)", estimate.key_hadamards);
            Ok(())
        }
        Command::Brute { problem } => {
            let loaded = load_problem(&problem)?;
            let result = brute_force_min(&loaded.problem)?;
            println!("minimum {}", result.value);
            for key in result.argmins {
                println!("{} {}", loaded.key_bits(key), loaded.assignment_string(key));
            }
            Ok(())
        }
        Command::Fejer { a, m } => {
            let d = fejer_distribution(a, m)?;
            println!("outcome,probability");
            for (j, p) in d.probabilities.iter().enumerate() {
                println!("{j},{p:.12}");
            }
            Ok(())
        }
    }
}

fn solve(loaded: &LoadedProblem, config: &GasConfig, out_dir: &Path) -> anyhow::Result<()> {
    let mut rows = Vec::new();
    let mut row_error = None;
    let trace = run_gas_observed(
        &loaded.problem,
        config,
        |it, state, layout| match histogram_rows(it, state, layout, &loaded.names) {
            Ok(r) => rows.extend(r),
            Err(e) => {
                row_error.get_or_insert(e);
            }
        },
    )?;
    if let Some(e) = row_error {
        return Err(e.into());
    }

    fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    let trace_path = out_dir.join("trace.json");
    fs::write(&trace_path, trace_to_json(&trace))
        .with_context(|| format!("writing {}", trace_path.display()))?;
    let hist_path = out_dir.join("histograms.csv");
    let file =
        fs::File::create(&hist_path).with_context(|| format!("writing {}", hist_path.display()))?;
    write_histograms_csv(&rows, file)?;

    let accepted = trace.iterations.iter().filter(|it| it.accepted).count();
    println!(
        "iterations {} (accepted {}), Grover applications {}",
        trace.iterations.len(),
        accepted,
        trace.total_grover_applications
    );
    println!(
        "best value {} at {} ({})",
        trace.best_value,
        loaded.key_bits(trace.best_key),
        loaded.assignment_string(trace.best_key)
    );
    println!("wrote {} and {}", trace_path.display(), hist_path.display());
    Ok(())
}
