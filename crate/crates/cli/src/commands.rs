use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use paracomm::benchmark::{run_experiment, ExperimentCell};
use paracomm::engine::RunReport;
use paracomm::io::{read_partition_csv, read_partition_json, write_partition_csv};
use paracomm::metrics::agreement;
use paracomm::{
    exact_pareto, generate_planted, graph::write_edge_list, load_edge_list, modularity, run, BenchmarkSpec,
    LoadedGraph, NodeLabelTable, Partition,
};
use serde::Serialize;

use crate::args::{BenchArgs, DetectArgs, EvalArgs, GenerateArgs, GraphInput, OracleArgs, OutputFormat};

/// A failed command: exit code and message.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

impl From<paracomm::Error> for Failure {
    fn from(e: paracomm::Error) -> Self {
        Failure { code: if e.is_input() { EXIT_INPUT } else { EXIT_CONFIG }, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_INPUT, message: format!("{}: {e}", path.display()) }
}

type Outcome = Result<(), Failure>;

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path).map(BufReader::new).map_err(|e| io_failure(path, e))
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
    }
    File::create(path).map(BufWriter::new).map_err(|e| io_failure(path, e))
}

/// File when a path is given, stdout otherwise.
fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    match path {
        Some(p) => Ok(Box::new(create(p)?)),
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

fn finish(mut w: impl Write, what: Option<&Path>) -> Outcome {
    w.flush().map_err(|e| io_failure(what.unwrap_or(Path::new("<stdout>")), e))
}

fn write_json<T: Serialize>(value: &T, path: Option<&Path>) -> Outcome {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(paracomm::Error::from)?;
    writeln!(w).map_err(|e| io_failure(path.unwrap_or(Path::new("<stdout>")), e))?;
    finish(w, path)
}

fn write_csv<T: Serialize>(rows: &[T], path: Option<&Path>) -> Outcome {
    let mut w = csv::Writer::from_writer(sink(path)?);
    for r in rows {
        w.serialize(r).map_err(paracomm::Error::from)?;
    }
    w.flush().map_err(|e| io_failure(path.unwrap_or(Path::new("<stdout>")), e))
}

fn load_graph(input: &GraphInput) -> Result<LoadedGraph, Failure> {
    let loaded = load_edge_list(open(&input.graph)?, input.input_format.into())
        .map_err(|e| Failure::from(e).with_context(&input.graph))?;
    let r = &loaded.report;
    if r.dropped_self_loops > 0 || r.dropped_duplicates > 0 {
        eprintln!(
            "warning: dropped {} self-loop(s) and {} duplicate edge(s)",
            r.dropped_self_loops, r.dropped_duplicates
        );
    }
    Ok(loaded)
}

impl Failure {
    fn with_context(self, path: &Path) -> Self {
        Failure { message: format!("{}: {}", path.display(), self.message), ..self }
    }
}

pub fn detect(args: &DetectArgs) -> Outcome {
    let cfg = args.evolution.config();
    cfg.validate()?;
    let loaded = load_graph(&args.input)?;
    let result = run(&loaded.graph, &cfg)?;
    let report = RunReport::new(&result, &cfg, &loaded.graph, &loaded.labels);
    if let Some(path) = &args.partition {
        let mut w = create(path)?;
        write_partition_csv(&result.best().partition, &loaded.labels, &mut w)?;
        finish(w, Some(path))?;
    }
    match args.format {
        OutputFormat::Json => write_json(&report, args.output.as_deref()),
        OutputFormat::Csv => write_csv(&report.front, args.output.as_deref()),
    }
}

fn read_partition(path: &Path, labels: &NodeLabelTable) -> Result<Partition, Failure> {
    let reader = open(path)?;
    let p = if path.extension().is_some_and(|e| e == "json") {
        read_partition_json(reader)
    } else {
        read_partition_csv(reader, labels)
    }
    .map_err(|e| Failure::from(e).with_context(path))?;
    if p.len() != labels.len() {
        return Err(Failure {
            code: EXIT_CONFIG,
            message: format!("{}: {} labels for a graph of {} nodes", path.display(), p.len(), labels.len()),
        });
    }
    Ok(p)
}

#[derive(Serialize)]
struct EvalReport {
    nmi: f64,
    ami: f64,
    #[serde(rename = "H")]
    h: f64,
    modularity: f64,
    k_detected: usize,
    k_truth: usize,
}

pub fn eval(args: &EvalArgs) -> Outcome {
    let loaded = load_graph(&args.input)?;
    let detected = read_partition(&args.partition, &loaded.labels)?;
    let truth = read_partition(&args.truth, &loaded.labels)?;
    let scores = agreement(&detected, &truth)?;
    let report = EvalReport {
        nmi: scores.nmi,
        ami: scores.ami,
        h: scores.h,
        modularity: modularity(&loaded.graph, &detected)?,
        k_detected: detected.community_count(),
        k_truth: truth.community_count(),
    };
    match args.format {
        OutputFormat::Json => write_json(&report, args.output.as_deref()),
        OutputFormat::Csv => write_csv(&[report], args.output.as_deref()),
    }
}

#[derive(Serialize)]
struct GeneratedSummary {
    spec: BenchmarkSpec,
    nodes: usize,
    edges: usize,
    communities: usize,
    realized_mu: f64,
    dropped_edges: usize,
}

pub fn generate(args: &GenerateArgs) -> Outcome {
    let spec = args.spec();
    let planted = generate_planted(&spec)?;
    let dir = &args.output;

    let path = dir.join("graph.txt");
    let mut w = create(&path)?;
    write_edge_list(&planted.graph, None, &mut w)?;
    finish(w, Some(&path))?;

    let path = dir.join("truth.csv");
    let mut w = create(&path)?;
    write_partition_csv(&planted.truth, &NodeLabelTable::identity(spec.n), &mut w)?;
    finish(w, Some(&path))?;

    let summary = GeneratedSummary {
        spec,
        nodes: planted.graph.node_count(),
        edges: planted.graph.edge_count(),
        communities: planted.truth.community_count(),
        realized_mu: planted.realized_mu,
        dropped_edges: planted.dropped_edges,
    };
    write_json(&summary, Some(&dir.join("spec.json")))
}

pub fn bench(args: &BenchArgs) -> Outcome {
    let config = args.evolution.config();
    let grid: Vec<ExperimentCell> = args
        .n
        .iter()
        .flat_map(|&n| {
            args.mu.iter().map(move |&mu| ExperimentCell {
                spec: BenchmarkSpec {
                    n,
                    mu,
                    avg_degree: args.avg_degree,
                    min_comm: args.min_comm,
                    max_comm: args.max_comm,
                    seed: config.seed,
                },
                config,
            })
        })
        .collect();
    let report = run_experiment(&grid, args.seeds)?;
    for f in &report.failures {
        eprintln!("warning: cell {} seed {} failed: {}", f.cell, f.seed, f.error);
    }

    let dir = &args.output;
    let path = dir.join("runs.csv");
    let mut w = create(&path)?;
    report.write_runs_csv(&mut w)?;
    finish(w, Some(&path))?;

    let path = dir.join("summary.csv");
    let mut w = create(&path)?;
    report.write_summary_csv(&mut w)?;
    finish(w, Some(&path))?;

    write_json(&report, Some(&dir.join("report.json")))?;
    for panel in report.panels() {
        let path: PathBuf = dir.join("plots").join(format!("{}.json", panel.name));
        write_json(&panel, Some(&path))?;
    }

    match args.format {
        OutputFormat::Json => write_json(&report.summary, None),
        OutputFormat::Csv => {
            let mut w = BufWriter::new(io::stdout().lock());
            report.write_summary_csv(&mut w)?;
            finish(w, None)
        }
    }
}

#[derive(Serialize)]
struct OracleRow {
    f1: f64,
    f2: f64,
    #[serde(rename = "Q")]
    q: f64,
    k: usize,
    intra_edges: u64,
    degree_sq: u64,
}

#[derive(Serialize)]
struct OracleEntry {
    #[serde(flatten)]
    row: OracleRow,
    labels: Vec<u32>,
}

#[derive(Serialize)]
struct OracleReport<'a> {
    nodes: &'a [String],
    edges: usize,
    enumerated: u64,
    front: Vec<OracleEntry>,
}

pub fn oracle(args: &OracleArgs) -> Outcome {
    let loaded = load_graph(&args.input)?;
    let front = exact_pareto(&loaded.graph, args.max_n)?;
    let entries: Vec<OracleEntry> = front
        .points
        .iter()
        .map(|p| {
            let labels = p.witness.canonical();
            OracleEntry {
                row: OracleRow {
                    f1: p.objectives.intra,
                    f2: p.objectives.inter,
                    q: p.objectives.quality(),
                    k: labels.community_count(),
                    intra_edges: p.intra_edges,
                    degree_sq: p.degree_sq,
                },
                labels: labels.into_labels(),
            }
        })
        .collect();
    match args.format {
        OutputFormat::Json => write_json(
            &OracleReport {
                nodes: loaded.labels.labels(),
                edges: loaded.graph.edge_count(),
                enumerated: front.enumerated,
                front: entries,
            },
            args.output.as_deref(),
        ),
        OutputFormat::Csv => write_csv(&entries.into_iter().map(|e| e.row).collect::<Vec<_>>(), args.output.as_deref()),
    }
}
