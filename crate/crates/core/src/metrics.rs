//! Agreement between two partitions of the same node set: normalized and
//! chance-adjusted mutual information, plus their harmonic mean.
//!
//! Logarithms are natural throughout.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_factorial;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Co-membership counts of two canonicalized partitions, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    /// Nonzero cells `(row, column, count)` in row-major order.
    pub cells: Vec<(usize, usize, u64)>,
    pub row_sums: Vec<u64>,
    pub col_sums: Vec<u64>,
    pub total: u64,
}

impl ContingencyTable {
    pub fn rows(&self) -> usize {
        self.row_sums.len()
    }

    pub fn cols(&self) -> usize {
        self.col_sums.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.cells.binary_search_by(|&(r, c, _)| (r, c).cmp(&(i, j))).map(|k| self.cells[k].2).unwrap_or(0)
    }

    /// Dense matrix; meant for small tables.
    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        let mut m = vec![vec![0; self.cols()]; self.rows()];
        for &(i, j, c) in &self.cells {
            m[i][j] = c;
        }
        m
    }
}

fn check_lengths(p: &Partition, q: &Partition) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::Contract(format!("partitions cover {} and {} nodes", p.len(), q.len())));
    }
    if p.is_empty() {
        return Err(Error::Contract("cannot compare empty partitions".into()));
    }
    Ok(())
}

pub fn contingency(p: &Partition, q: &Partition) -> Result<ContingencyTable> {
    check_lengths(p, q)?;
    let (p, q) = (p.canonical(), q.canonical());
    let mut row_sums = vec![0u64; p.community_count()];
    let mut col_sums = vec![0u64; q.community_count()];
    let mut cells: HashMap<(usize, usize), u64> = HashMap::new();
    for (&a, &b) in p.labels().iter().zip(q.labels()) {
        row_sums[a as usize] += 1;
        col_sums[b as usize] += 1;
        *cells.entry((a as usize, b as usize)).or_default() += 1;
    }
    let mut cells: Vec<(usize, usize, u64)> = cells.into_iter().map(|((i, j), c)| (i, j, c)).collect();
    cells.sort_unstable();
    Ok(ContingencyTable { cells, row_sums, col_sums, total: p.len() as u64 })
}

/// Information quantities behind NMI and AMI, in nats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub h_u: f64,
    pub h_v: f64,
    pub mi: f64,
    /// Expected mutual information under random relabeling with fixed
    /// cluster sizes.
    pub emi: f64,
}

fn entropy(sums: &[u64], n: f64) -> f64 {
    sums.iter().filter(|&&a| a > 0).map(|&a| a as f64 / n).map(|x| -x * x.ln()).sum()
}

fn mutual_information(t: &ContingencyTable) -> f64 {
    let n = t.total as f64;
    let mi: f64 = t
        .cells
        .iter()
        .map(|&(i, j, c)| {
            let c = c as f64;
            c / n * (n * c / (t.row_sums[i] as f64 * t.col_sums[j] as f64)).ln()
        })
        .sum();
    mi.max(0.0)
}

fn size_histogram(sums: &[u64]) -> BTreeMap<u64, u64> {
    let mut h = BTreeMap::new();
    for &s in sums {
        *h.entry(s).or_default() += 1;
    }
    h
}

/// Exact hypergeometric expectation. Cells sharing the same pair of
/// marginals contribute identically, so the sum runs over distinct sizes.
fn expected_mutual_information(t: &ContingencyTable) -> f64 {
    let n = t.total;
    let nf = n as f64;
    let lf: Vec<f64> = (0..=n).map(ln_factorial).collect();
    let rows = size_histogram(&t.row_sums);
    let cols = size_histogram(&t.col_sums);
    let mut emi = 0.0;
    for (&a, &ra) in &rows {
        for (&b, &cb) in &cols {
            let lo = (a + b).saturating_sub(n).max(1);
            let hi = a.min(b);
            let fixed = lf[a as usize] + lf[b as usize] + lf[(n - a) as usize] + lf[(n - b) as usize] - lf[n as usize];
            let mut cell = 0.0;
            for k in lo..=hi {
                let kf = k as f64;
                let log_p =
                    fixed - lf[k as usize] - lf[(a - k) as usize] - lf[(b - k) as usize] - lf[(n + k - a - b) as usize];
                cell += kf / nf * (nf * kf / (a as f64 * b as f64)).ln() * log_p.exp();
            }
            emi += (ra * cb) as f64 * cell;
        }
    }
    emi
}

pub fn entropy_report(p: &Partition, q: &Partition) -> Result<EntropyReport> {
    let t = contingency(p, q)?;
    let n = t.total as f64;
    Ok(EntropyReport {
        h_u: entropy(&t.row_sums, n),
        h_v: entropy(&t.col_sums, n),
        mi: mutual_information(&t),
        emi: expected_mutual_information(&t),
    })
}

fn same_partition(p: &Partition, q: &Partition) -> bool {
    p.canonical() == q.canonical()
}

/// `2 MI / (H(U) + H(V))`. Identical partitions score exactly 1, including
/// the case where both are a single cluster.
pub fn nmi(p: &Partition, q: &Partition) -> Result<f64> {
    check_lengths(p, q)?;
    if same_partition(p, q) {
        return Ok(1.0);
    }
    let t = contingency(p, q)?;
    let n = t.total as f64;
    let (hu, hv) = (entropy(&t.row_sums, n), entropy(&t.col_sums, n));
    if hu + hv == 0.0 {
        return Ok(1.0);
    }
    Ok((2.0 * mutual_information(&t) / (hu + hv)).clamp(0.0, 1.0))
}

/// NMI written directly over the counts:
/// `-2 Σ M_ij ln(M_ij N / M_i. M_.j) / (Σ M_i. ln(M_i./N) + Σ M_.j ln(M_.j/N))`.
pub fn nmi_from_counts(t: &ContingencyTable) -> f64 {
    let n = t.total as f64;
    let num: f64 = t
        .cells
        .iter()
        .map(|&(i, j, c)| {
            let c = c as f64;
            c * (c * n / (t.row_sums[i] as f64 * t.col_sums[j] as f64)).ln()
        })
        .sum();
    let marg = |s: &[u64]| s.iter().map(|&a| a as f64 * (a as f64 / n).ln()).sum::<f64>();
    let den = marg(&t.row_sums) + marg(&t.col_sums);
    if den == 0.0 {
        return 1.0;
    }
    -2.0 * num / den
}

/// `(MI - EMI) / (max(H(U), H(V)) - EMI)`. Can be negative.
pub fn ami(p: &Partition, q: &Partition) -> Result<f64> {
    check_lengths(p, q)?;
    if same_partition(p, q) {
        return Ok(1.0);
    }
    let r = entropy_report(p, q)?;
    let num = r.mi - r.emi;
    let den = r.h_u.max(r.h_v) - r.emi;
    if den.abs() < f64::EPSILON {
        return Ok(if num.abs() < f64::EPSILON { 0.0 } else { num.signum() });
    }
    Ok(num / den)
}

/// Harmonic mean of AMI and NMI, with negative inputs clamped to 0.
pub fn harmonic_quality(ami: f64, nmi: f64) -> f64 {
    let (a, b) = (ami.max(0.0), nmi.max(0.0));
    if a + b == 0.0 {
        0.0
    } else {
        2.0 * a * b / (a + b)
    }
}

/// NMI, AMI and their harmonic mean for a detected partition against truth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Agreement {
    pub nmi: f64,
    pub ami: f64,
    #[serde(rename = "H")]
    pub h: f64,
}

pub fn agreement(detected: &Partition, truth: &Partition) -> Result<Agreement> {
    let nmi = nmi(detected, truth)?;
    let ami = ami(detected, truth)?;
    Ok(Agreement { nmi, ami, h: harmonic_quality(ami, nmi) })
}
