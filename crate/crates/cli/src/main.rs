use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use srdepth::corpus::DEFAULT_SEED;
use srdepth::linalg::FieldSpec;
use srdepth_cli::{
    analyze_depth, analyze_limits, analyze_verify, read_complex, resolve_d_max, write_named_corpus,
    write_random_corpus, AnalysisReport, CliError,
};

/// Depth of Stanley-Reisner face rings, derived limits of the star functor,
/// and checks relating them.
#[derive(Parser)]
#[command(name = "srdepth", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Facet-list or JSON complex file
    input: PathBuf,
    /// Coefficient field: `q` or `p=<prime>`
    #[arg(long, default_value = "p=2")]
    field: FieldSpec,
    /// Emit the JSON report
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Depth by the three engines
    Depth {
        #[command(flatten)]
        input: Input,
    },
    /// Higher limits per internal degree and the decomposition check
    Limits {
        #[command(flatten)]
        input: Input,
        /// Largest internal (even) degree; defaults to 4m
        #[arg(long)]
        d_max: Option<u32>,
    },
    /// Run every verification harness; exits 1 if any fails
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        d_max: Option<u32>,
    },
    /// Write a corpus of complexes
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// The fixed list of named complexes
    Named { out: PathBuf },
    /// Seeded random complexes plus a manifest of their parameters
    Random {
        /// Largest vertex count
        #[arg(long, default_value_t = 8)]
        m: u32,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        out: PathBuf,
    },
}

fn emit(report: &AnalysisReport, json: bool) {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{report}");
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let (report, json) = match cli.command {
        Command::Depth { input } => {
            let k = read_complex(&input.input)?;
            (analyze_depth(&k, input.field)?, input.json)
        }
        Command::Limits { input, d_max } => {
            let k = read_complex(&input.input)?;
            let d_max = resolve_d_max(&k, d_max)?;
            (analyze_limits(&k, input.field, d_max)?, input.json)
        }
        Command::Verify { input, d_max } => {
            let k = read_complex(&input.input)?;
            let d_max = resolve_d_max(&k, d_max)?;
            (analyze_verify(&k, input.field, d_max)?, input.json)
        }
        Command::Corpus(CorpusCommand::Named { out }) => {
            let n = write_named_corpus(&out)?;
            println!("wrote {n} complexes and manifest.json to {}", out.display());
            return Ok(0);
        }
        Command::Corpus(CorpusCommand::Random {
            m,
            count,
            seed,
            out,
        }) => {
            let n = write_random_corpus(&out, m, count, seed)?;
            println!("wrote {n} complexes and manifest.json to {}", out.display());
            return Ok(0);
        }
    };
    emit(&report, json);
    Ok(if report.passed() { 0 } else { 1 })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = e.exit_code();
            if code == 3 {
                eprintln!("{e:#?}");
            }
            ExitCode::from(code)
        }
    }
}
