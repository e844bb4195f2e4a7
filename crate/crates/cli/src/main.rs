//! `biobj`: command-line front end for the suite and the harness.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use biobj_bench::harness::{
    run_experiment, summarize, write_plot, ExperimentConfig, OptimizerKind, RunRecord, DEFAULT_BUDGET_MULTIPLIER,
    DEFAULT_STEP_SIGMA,
};
use biobj_bench::suite::{function_name, generate_instance_table, generate_manifest, group_of, SuiteFilter};
use biobj_bench::{instantiate_base, BaseFunctionId, Error};
use clap::{Args, Parser, Subcommand};

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "biobj", version, about = "Bi-objective benchmark suite and baseline harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect the suite.
    Suite {
        #[command(subcommand)]
        command: SuiteCommand,
    },
    /// Run optimizers over a selection of problems.
    Run(RunArgs),
    /// Summarize the records of a results directory.
    Summarize {
        results_dir: PathBuf,
    },
    /// Plot the final archive of a record as SVG.
    Plot {
        record: PathBuf,
        /// Output file; defaults to the record path with an .svg extension.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum SuiteCommand {
    /// List the 55 functions with their groups.
    List,
    /// Print the suite manifest for the selected problems.
    Manifest(FilterArgs),
    /// Regenerate the instance table (K K_alpha K_beta).
    Instances {
        #[arg(long, default_value_t = 10)]
        max: u32,
    },
    /// Dump one base-function instance.
    Base {
        /// Single-objective function number (1, 2, 6, 8, 13, 14, 15, 17, 20, 21).
        #[arg(long)]
        function: u32,
        #[arg(long)]
        instance: u32,
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Debug, Args)]
struct FilterArgs {
    /// Pair indices, e.g. `1,2,10-20`.
    #[arg(long)]
    functions: Option<String>,
    /// Dimensions, e.g. `2,3,5`.
    #[arg(long)]
    dims: Option<String>,
    /// Bi-objective instances, e.g. `1-10`.
    #[arg(long)]
    instances: Option<String>,
    /// Allow dimensions outside 2, 3, 5, 10, 20, 40.
    #[arg(long)]
    non_standard_dims: bool,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    filter: FilterArgs,
    /// random-search or archive-evolver; comma separated.
    #[arg(long, default_value = "random-search")]
    optimizer: String,
    /// Evaluations per run = multiplier * D.
    #[arg(long, default_value_t = DEFAULT_BUDGET_MULTIPLIER)]
    budget_mult: u64,
    /// Seeds, e.g. `1-15`.
    #[arg(long, default_value = "1-15")]
    seeds: String,
    /// Step width of the archive evolver.
    #[arg(long, default_value_t = DEFAULT_STEP_SIGMA)]
    step_sigma: f64,
    #[arg(long)]
    out: PathBuf,
}

/// Parses `1,3,5-7` into a set.
fn parse_list<T>(s: &str) -> Result<BTreeSet<T>, String>
where
    T: std::str::FromStr + Ord + Copy + std::ops::Add<Output = T> + From<u8>,
{
    let mut out = BTreeSet::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || format!("invalid list element {part:?}");
        if let Some((lo, hi)) = part.split_once('-') {
            let lo: T = lo.trim().parse().map_err(|_| bad())?;
            let hi: T = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            let mut v = lo;
            while v <= hi {
                out.insert(v);
                v = v + T::from(1);
            }
        } else {
            out.insert(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(format!("empty list {s:?}"));
    }
    Ok(out)
}

impl FilterArgs {
    fn to_filter(&self) -> Result<SuiteFilter, String> {
        Ok(SuiteFilter {
            functions: self.functions.as_deref().map(parse_list::<u32>).transpose()?,
            dims: self.dims.as_deref().map(parse_list::<usize>).transpose()?,
            instances: self.instances.as_deref().map(parse_list::<u32>).transpose()?,
        })
    }
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_)
            | Error::NonStandardDimension(_)
            | Error::InvalidDimension(_)
            | Error::PairIndexOutOfRange(_)
            | Error::InvalidInstance(_)
            | Error::UnknownFunction(_) => Failure::Usage(e.to_string()),
            other => Failure::Data(other.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Suite { command } => match command {
            SuiteCommand::List => {
                println!("pair_index\tgroup\tname");
                for k in 1..=55 {
                    println!("{k}\t{}\t{}", group_of(k)?, function_name(k)?);
                }
            }
            SuiteCommand::Manifest(args) => {
                let config = ExperimentConfig {
                    filter: args.to_filter().map_err(Failure::Usage)?,
                    allow_non_standard_dims: args.non_standard_dims,
                    ..ExperimentConfig::new(".")
                };
                let ids = config.problems()?;
                print!("{}", generate_manifest(&ids, args.non_standard_dims)?);
            }
            SuiteCommand::Instances { max } => print!("{}", generate_instance_table(max)),
            SuiteCommand::Base { function, instance, dim } => {
                let f = BaseFunctionId::from_number(function)?;
                println!("{}", instantiate_base(f, instance, dim)?.manifest_line());
            }
        },
        Command::Run(args) => {
            let optimizers = args
                .optimizer
                .split(',')
                .map(|name| match OptimizerKind::parse(name.trim()) {
                    Some(OptimizerKind::ArchiveEvolver { .. }) => Ok(OptimizerKind::ArchiveEvolver { step_sigma: args.step_sigma }),
                    Some(kind) => Ok(kind),
                    None => Err(Failure::Usage(format!("unknown optimizer {name:?}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let config = ExperimentConfig {
                filter: args.filter.to_filter().map_err(Failure::Usage)?,
                budget_multiplier: args.budget_mult,
                optimizers,
                seeds: parse_list::<u64>(&args.seeds).map_err(Failure::Usage)?.into_iter().collect(),
                out_dir: args.out,
                allow_non_standard_dims: args.filter.non_standard_dims,
            };
            let outcome = run_experiment(&config)?;
            println!("{} records written to {}", outcome.records.len(), outcome.out_dir.display());
        }
        Command::Summarize { results_dir } => {
            let summary = summarize(&results_dir)?;
            print!("{}", summary.to_tsv());
            for e in &summary.errors {
                eprintln!("warning: {e}");
            }
            if summary.rows.is_empty() {
                return Err(Failure::Data(format!("no readable records in {}", results_dir.display())));
            }
        }
        Command::Plot { record, out } => {
            let rec = RunRecord::load(&record)?;
            let out = out.unwrap_or_else(|| record.with_extension("svg"));
            write_plot(&rec, &out)?;
            println!("{}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DATA)
        }
    }
}
