use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use paracomm::{default_workers, BenchmarkSpec, EdgeListFormat, EvolutionConfig, OperatorParams};

#[derive(Debug, Parser)]
#[command(name = "paracomm", version, about = "Multi-objective evolutionary community detection")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve a Pareto front of partitions for a graph and pick the best one.
    Detect(DetectArgs),
    /// Score a partition against ground truth.
    Eval(EvalArgs),
    /// Write a planted-community benchmark graph and its ground truth.
    Generate(GenerateArgs),
    /// Run a grid of seeded benchmark experiments.
    Bench(BenchArgs),
    /// Enumerate the exact Pareto front of a tiny graph.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// Two identifiers per line, separated by whitespace or a comma.
    Whitespace,
    Csv,
}

impl From<InputFormat> for EdgeListFormat {
    fn from(f: InputFormat) -> Self {
        match f {
            InputFormat::Whitespace => EdgeListFormat::Whitespace,
            InputFormat::Csv => EdgeListFormat::Csv,
        }
    }
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Edge list file.
    pub graph: PathBuf,

    /// Edge list syntax.
    #[arg(long, value_enum, default_value = "whitespace")]
    pub input_format: InputFormat,
}

#[derive(Debug, Args)]
pub struct EvolutionArgs {
    /// Population size (even, at least 4).
    #[arg(long, default_value_t = 100)]
    pub population: usize,

    /// Number of generations.
    #[arg(long, default_value_t = 100)]
    pub generations: usize,

    /// Probability that a child comes from crossover rather than a copy.
    #[arg(long, default_value_t = 0.8)]
    pub crossover: f64,

    /// Per-node mutation probability.
    #[arg(long, default_value_t = 0.2)]
    pub mutation: f64,

    /// Parents per crossover.
    #[arg(long, default_value_t = 4)]
    pub parents: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads [default: available cores].
    #[arg(long, env = "PARACOMM_WORKERS")]
    pub workers: Option<usize>,
}

impl EvolutionArgs {
    pub fn config(&self) -> EvolutionConfig {
        EvolutionConfig {
            population: self.population,
            generations: self.generations,
            params: OperatorParams {
                crossover_prob: self.crossover,
                mutation_prob: self.mutation,
                parents: self.parents,
            },
            seed: self.seed,
            workers: self.workers.unwrap_or_else(default_workers),
        }
    }
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    #[command(flatten)]
    pub input: GraphInput,

    #[command(flatten)]
    pub evolution: EvolutionArgs,

    /// `json`: full run report. `csv`: one row per front member.
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,

    /// Report destination [default: stdout].
    #[arg(long, short)]
    pub output: Option<PathBuf>,

    /// Also write the best partition as a `node,community` CSV.
    #[arg(long)]
    pub partition: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Detected partition (`node,community` CSV, or `{"labels": [...]}` JSON
    /// when the name ends in `.json`).
    #[arg(long)]
    pub partition: PathBuf,

    /// Ground-truth partition, same formats.
    #[arg(long)]
    pub truth: PathBuf,

    #[command(flatten)]
    pub input: GraphInput,

    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,

    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlantedArgs {
    /// Expected fraction of each node's edges leaving its community.
    #[arg(long, default_value_t = 0.3)]
    pub mu: f64,

    #[arg(long, default_value_t = 20.0)]
    pub avg_degree: f64,

    #[arg(long, default_value_t = 20)]
    pub min_comm: usize,

    #[arg(long, default_value_t = 100)]
    pub max_comm: usize,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 1000)]
    pub n: usize,

    #[command(flatten)]
    pub planted: PlantedArgs,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Directory for graph.txt, truth.csv and spec.json.
    #[arg(long, short)]
    pub output: PathBuf,
}

impl GenerateArgs {
    pub fn spec(&self) -> BenchmarkSpec {
        BenchmarkSpec {
            n: self.n,
            mu: self.planted.mu,
            avg_degree: self.planted.avg_degree,
            min_comm: self.planted.min_comm,
            max_comm: self.planted.max_comm,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Node counts (comma separated).
    #[arg(long, value_delimiter = ',', default_value = "1000")]
    pub n: Vec<usize>,

    /// Mixing values (comma separated).
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.3,0.5,0.7")]
    pub mu: Vec<f64>,

    #[arg(long, default_value_t = 20.0)]
    pub avg_degree: f64,

    #[arg(long, default_value_t = 20)]
    pub min_comm: usize,

    #[arg(long, default_value_t = 100)]
    pub max_comm: usize,

    /// Seeded runs per grid cell.
    #[arg(long, default_value_t = 5)]
    pub seeds: usize,

    #[command(flatten)]
    pub evolution: EvolutionArgs,

    /// Format of the summary printed to stdout; files are written in both.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,

    /// Directory for runs.csv, summary.csv, report.json and plots/.
    #[arg(long, short)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub input: GraphInput,

    /// Refuse graphs with more nodes than this.
    #[arg(long, default_value_t = paracomm::benchmark::DEFAULT_MAX_NODES)]
    pub max_n: usize,

    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,

    #[arg(long, short)]
    pub output: Option<PathBuf>,
}
