use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use super::ga_effort;
use super::generator::{generate_planted, BenchmarkSpec};
use crate::engine::{run, select_best, EvolutionConfig, ParetoFront};
use crate::error::{Error, Result};
use crate::metrics::agreement;
use crate::objectives::modularity;
use crate::rng::{derive_seed, Purpose};

/// One point of an experiment grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentCell {
    pub spec: BenchmarkSpec,
    pub config: EvolutionConfig,
}

/// One seeded run, in the column order of the runs CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub n: usize,
    pub mu: f64,
    #[serde(rename = "Np")]
    pub np: usize,
    #[serde(rename = "T")]
    pub t: usize,
    #[serde(rename = "Cp")]
    pub cp: f64,
    #[serde(rename = "Mp")]
    pub mp: f64,
    #[serde(rename = "Es")]
    pub es: usize,
    pub seed: u64,
    pub nmi: f64,
    pub ami: f64,
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    pub modularity: f64,
    pub k_detected: usize,
    pub k_truth: usize,
    pub wall_ms: f64,
    pub workers: usize,
}

/// Sample mean and half-width of its 95% Student-t interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub ci95: f64,
}

impl Estimate {
    pub fn from_samples(xs: &[f64]) -> Self {
        let k = xs.len();
        if k == 0 {
            return Estimate { mean: f64::NAN, ci95: f64::NAN };
        }
        let mean = xs.iter().sum::<f64>() / k as f64;
        if k < 2 {
            return Estimate { mean, ci95: f64::NAN };
        }
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1) as f64;
        let t = StudentsT::new(0.0, 1.0, (k - 1) as f64).expect("positive dof").inverse_cdf(0.975);
        Estimate { mean, ci95: t * (var / k as f64).sqrt() }
    }
}

/// Aggregate over the seeds of one cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n: usize,
    pub mu: f64,
    #[serde(rename = "Np")]
    pub np: usize,
    #[serde(rename = "T")]
    pub t: usize,
    pub runs: usize,
    pub failures: usize,
    pub nmi: Estimate,
    pub ami: Estimate,
    #[serde(rename = "H")]
    pub h: Estimate,
    #[serde(rename = "Q")]
    pub q: Estimate,
    pub wall_ms: Estimate,
    pub realized_mu: f64,
    /// Candidate evaluations per run.
    #[serde(rename = "E")]
    pub effort: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunFailure {
    pub cell: usize,
    pub seed: u64,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub cells: Vec<ExperimentCell>,
    pub runs: Vec<RunRecord>,
    pub summary: Vec<SummaryRow>,
    pub failures: Vec<RunFailure>,
}

fn run_one(cell: &ExperimentCell, seed: u64) -> Result<(RunRecord, f64)> {
    let spec = BenchmarkSpec { seed: derive_seed(cell.spec.seed, Purpose::Experiment, 0, seed), ..cell.spec };
    let planted = generate_planted(&spec)?;
    let cfg = EvolutionConfig { seed: derive_seed(cell.config.seed, Purpose::Experiment, 1, seed), ..cell.config };
    let start = Instant::now();
    let result = run(&planted.graph, &cfg)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let best = select_best(&result.front);
    let scores = agreement(&best.partition, &planted.truth)?;
    let record = RunRecord {
        n: spec.n,
        mu: spec.mu,
        np: cfg.population,
        t: cfg.generations,
        cp: cfg.params.crossover_prob,
        mp: cfg.params.mutation_prob,
        es: cfg.params.parents,
        seed,
        nmi: scores.nmi,
        ami: scores.ami,
        h: scores.h,
        q: best.quality(),
        modularity: modularity(&planted.graph, &best.partition)?,
        k_detected: best.communities,
        k_truth: planted.truth.community_count(),
        wall_ms,
        workers: cfg.workers,
    };
    Ok((record, planted.realized_mu))
}

/// Runs every cell for seeds `0..seeds` and aggregates per cell. Cells run
/// one after another so wall times are not distorted by each other; each
/// run parallelizes internally. A failing run is recorded, not fatal.
pub fn run_experiment(grid: &[ExperimentCell], seeds: usize) -> Result<ExperimentReport> {
    if grid.is_empty() {
        return Err(Error::Config("experiment grid is empty".into()));
    }
    if seeds < 2 {
        return Err(Error::Config(format!("need at least 2 seeds for an interval, got {seeds}")));
    }
    for cell in grid {
        cell.spec.validate()?;
        cell.config.validate()?;
    }
    let mut runs = Vec::new();
    let mut summary = Vec::new();
    let mut failures = Vec::new();
    for (ci, cell) in grid.iter().enumerate() {
        let mut rows = Vec::new();
        let mut mus = Vec::new();
        let mut failed = 0;
        for seed in 0..seeds as u64 {
            match run_one(cell, seed) {
                Ok((r, mu)) => {
                    rows.push(r);
                    mus.push(mu);
                }
                Err(e) => {
                    failed += 1;
                    failures.push(RunFailure { cell: ci, seed, error: e.to_string() });
                }
            }
        }
        let col = |f: fn(&RunRecord) -> f64| Estimate::from_samples(&rows.iter().map(f).collect::<Vec<_>>());
        summary.push(SummaryRow {
            n: cell.spec.n,
            mu: cell.spec.mu,
            np: cell.config.population,
            t: cell.config.generations,
            runs: rows.len(),
            failures: failed,
            nmi: col(|r| r.nmi),
            ami: col(|r| r.ami),
            h: col(|r| r.h),
            q: col(|r| r.q),
            wall_ms: col(|r| r.wall_ms),
            realized_mu: mus.iter().sum::<f64>() / mus.len().max(1) as f64,
            effort: ga_effort(cell.config.population, cell.config.generations),
        });
        runs.extend(rows);
    }
    Ok(ExperimentReport { cells: grid.to_vec(), runs, summary, failures })
}

/// Flat form of a summary row for CSV output.
#[derive(Serialize)]
struct SummaryCsvRow {
    n: usize,
    mu: f64,
    #[serde(rename = "Np")]
    np: usize,
    #[serde(rename = "T")]
    t: usize,
    runs: usize,
    failures: usize,
    nmi_mean: f64,
    nmi_ci95: f64,
    ami_mean: f64,
    ami_ci95: f64,
    #[serde(rename = "H_mean")]
    h_mean: f64,
    #[serde(rename = "H_ci95")]
    h_ci95: f64,
    #[serde(rename = "Q_mean")]
    q_mean: f64,
    #[serde(rename = "Q_ci95")]
    q_ci95: f64,
    wall_ms_mean: f64,
    wall_ms_ci95: f64,
    realized_mu: f64,
    #[serde(rename = "E")]
    effort: u64,
}

/// One line of a plot: `(x, mean, ci95)` triples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64, f64)>,
}

/// Data behind one figure panel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotPanel {
    pub name: String,
    pub x: String,
    pub y: String,
    pub series: Vec<Series>,
}

impl ExperimentReport {
    pub fn write_runs_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.runs {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_summary_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for s in &self.summary {
            w.serialize(SummaryCsvRow {
                n: s.n,
                mu: s.mu,
                np: s.np,
                t: s.t,
                runs: s.runs,
                failures: s.failures,
                nmi_mean: s.nmi.mean,
                nmi_ci95: s.nmi.ci95,
                ami_mean: s.ami.mean,
                ami_ci95: s.ami.ci95,
                h_mean: s.h.mean,
                h_ci95: s.h.ci95,
                q_mean: s.q.mean,
                q_ci95: s.q.ci95,
                wall_ms_mean: s.wall_ms.mean,
                wall_ms_ci95: s.wall_ms.ci95,
                realized_mu: s.realized_mu,
                effort: s.effort,
            })?;
        }
        w.flush()?;
        Ok(())
    }

    /// Score-versus-mixing panels (one series per `n`) and a time-versus-size
    /// panel (one series per `mu`).
    pub fn panels(&self) -> Vec<PlotPanel> {
        let by =
            |key: fn(&SummaryRow) -> f64, x: fn(&SummaryRow) -> f64, y: fn(&SummaryRow) -> Estimate, label: &str| {
                let mut keys: Vec<f64> = self.summary.iter().map(key).collect();
                keys.sort_by(f64::total_cmp);
                keys.dedup();
                keys.into_iter()
                    .map(|k| {
                        let mut points: Vec<(f64, f64, f64)> =
                            self.summary.iter().filter(|s| key(s) == k).map(|s| (x(s), y(s).mean, y(s).ci95)).collect();
                        points.sort_by(|a, b| a.0.total_cmp(&b.0));
                        Series { name: format!("{label}={k}"), points }
                    })
                    .collect()
            };
        let panel =
            |name: &str, x: &str, y: &str, series| PlotPanel { name: name.into(), x: x.into(), y: y.into(), series };
        vec![
            panel("nmi_vs_mu", "mu", "nmi", by(|s| s.n as f64, |s| s.mu, |s| s.nmi, "n")),
            panel("ami_vs_mu", "mu", "ami", by(|s| s.n as f64, |s| s.mu, |s| s.ami, "n")),
            panel("h_vs_mu", "mu", "H", by(|s| s.n as f64, |s| s.mu, |s| s.h, "n")),
            panel("wall_vs_n", "n", "wall_ms", by(|s| s.mu, |s| s.n as f64, |s| s.wall_ms, "mu")),
        ]
    }
}

/// Wall time of one run per worker count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingPoint {
    pub workers: usize,
    pub wall_ms: f64,
    /// Single-worker time over this time.
    pub speedup: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThreadScalingReport {
    pub points: Vec<ScalingPoint>,
    /// Every worker count produced the same front, bit for bit.
    pub identical_fronts: bool,
}

fn front_key(f: &ParetoFront) -> Vec<(Vec<u32>, u64, u64)> {
    f.iter()
        .map(|m| (m.partition.labels().to_vec(), m.objectives.intra.to_bits(), m.objectives.inter.to_bits()))
        .collect()
}

/// Runs the same seeded configuration once per worker count.
pub fn thread_scaling(
    spec: &BenchmarkSpec,
    cfg: &EvolutionConfig,
    worker_counts: &[usize],
) -> Result<ThreadScalingReport> {
    if !worker_counts.contains(&1) {
        return Err(Error::Config("worker counts must include 1".into()));
    }
    let planted = generate_planted(spec)?;
    let mut walls = Vec::new();
    let mut reference = None;
    let mut identical = true;
    for &w in worker_counts {
        let result = run(&planted.graph, &EvolutionConfig { workers: w, ..*cfg })?;
        walls.push((w, result.timing.total.as_secs_f64() * 1e3));
        let key = front_key(&result.front);
        match &reference {
            None => reference = Some(key),
            Some(r) => identical &= *r == key,
        }
    }
    let base = walls.iter().find(|(w, _)| *w == 1).map(|&(_, t)| t).unwrap();
    let points = walls
        .into_iter()
        .map(|(workers, wall_ms)| ScalingPoint { workers, wall_ms, speedup: base / wall_ms })
        .collect();
    Ok(ThreadScalingReport { points, identical_fronts: identical })
}
