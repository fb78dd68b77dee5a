//! Monte Carlo campaigns over the pairing model.
//!
//! A campaign samples `trials` graphs, trial `i` seeded by
//! `SeedSpec(master_seed, i)`. Trials run on a dedicated rayon pool of
//! `workers` threads and are collected in trial order, so every report is a
//! pure function of the configuration and independent of `workers`.

use std::io;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geodesics::{enumerate_cycles, Cycle};
use crate::ribbon_graph::RibbonGraph;
use crate::sampler::{sample_pairing, SeedSpec};
use crate::stats::{self, Histogram, TRUNCATION};
use crate::topology::{lht_lengths, lht_paths};

/// Version tag embedded in every report.
pub const REPORT_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExperimentError {
    #[error("n must be at least 1")]
    ZeroSize,
    #[error("trials must be at least 1")]
    ZeroTrials,
    #[error("max_cycle_len must be at least 1")]
    ZeroMaxCycleLen,
    #[error("workers must be at least 1")]
    ZeroWorkers,
    #[error("cusp length threshold must be at least {min}, got {got}")]
    CuspThreshold { min: usize, got: usize },
    #[error("isolation parameters l1 and l2 must be at least 1")]
    IsolationParams,
    #[error("cycle indices must differ (got {0} twice)")]
    SameIndex(usize),
    #[error("cycle index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("n ladder needs at least 3 points, got {0}")]
    LadderTooShort(usize),
    #[error("n ladder must be strictly increasing and positive")]
    LadderNotIncreasing,
    #[error("cannot build worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolationParams {
    pub l1: usize,
    pub l2: usize,
    pub d: usize,
}

impl Default for IsolationParams {
    fn default() -> Self {
        IsolationParams { l1: 3, l2: 3, d: 2 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub trials: u64,
    pub master_seed: u64,
    pub max_cycle_len: usize,
    /// Cusp length `L`; 7 is enough for the compactification estimates.
    #[serde(rename = "L")]
    pub cusp_threshold: usize,
    pub isolation: IsolationParams,
    /// Thread count. Results do not depend on it, so it is kept out of
    /// serialized reports.
    #[serde(skip, default = "default_workers")]
    pub workers: usize,
}

fn default_workers() -> usize {
    1
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            n: 500,
            trials: 20_000,
            master_seed: 7,
            max_cycle_len: 6,
            cusp_threshold: 7,
            isolation: IsolationParams::default(),
            workers: 1,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.n == 0 {
            return Err(ExperimentError::ZeroSize);
        }
        if self.trials == 0 {
            return Err(ExperimentError::ZeroTrials);
        }
        if self.max_cycle_len == 0 {
            return Err(ExperimentError::ZeroMaxCycleLen);
        }
        if self.workers == 0 {
            return Err(ExperimentError::ZeroWorkers);
        }
        if self.cusp_threshold == 0 {
            return Err(ExperimentError::CuspThreshold { min: 1, got: 0 });
        }
        if self.isolation.l1 == 0 || self.isolation.l2 == 0 {
            return Err(ExperimentError::IsolationParams);
        }
        Ok(())
    }
}

/// Samples `trials` graphs on `2n` vertices and maps each through `f`,
/// returning results in trial order.
pub fn run_trials<T, F>(
    n: usize,
    trials: u64,
    master_seed: u64,
    workers: usize,
    f: F,
) -> Result<Vec<T>, ExperimentError>
where
    T: Send,
    F: Fn(&RibbonGraph) -> T + Sync,
{
    if n == 0 {
        return Err(ExperimentError::ZeroSize);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| ExperimentError::Pool(e.to_string()))?;
    Ok(pool.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let g = sample_pairing(n, SeedSpec::new(master_seed, i)).expect("n checked above");
                f(&g)
            })
            .collect()
    }))
}

/// What one sampled graph contributes to the census reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    /// `x[i - 1]`: cycle subgraphs of length `i`.
    pub x: Vec<u32>,
    /// `y[i - 1]`: left-hand-turn paths of length `i`.
    pub y: Vec<u32>,
    pub min_lht: usize,
    pub simple: bool,
}

impl TrialRecord {
    pub fn measure(g: &RibbonGraph, max_x: usize, max_y: usize) -> Self {
        let mut x = vec![0u32; max_x];
        for c in enumerate_cycles(g, max_x) {
            x[c.len() - 1] += 1;
        }
        let mut y = vec![0u32; max_y];
        let mut min_lht = usize::MAX;
        for l in lht_lengths(g) {
            min_lht = min_lht.min(l);
            if l <= max_y {
                y[l - 1] += 1;
            }
        }
        // a loop is a 1-cycle and a parallel pair a 2-cycle
        let simple = if max_x >= 2 {
            x[0] == 0 && x[1] == 0
        } else {
            g.is_simple()
        };
        TrialRecord {
            x,
            y,
            min_lht,
            simple,
        }
    }
}

/// Per-trial records of one campaign, from which the census reports derive.
#[derive(Debug, Clone)]
pub struct Campaign {
    pub config: ExperimentConfig,
    pub records: Vec<TrialRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    /// Cycle subgraphs, asymptotically Poisson(2^i / 2i).
    X,
    /// Left-hand-turn paths, asymptotically Poisson(1 / i).
    Y,
}

impl Family {
    pub fn target_mean(self, i: usize) -> f64 {
        match self {
            Family::X => 2f64.powi(i as i32) / (2 * i) as f64,
            Family::Y => 1.0 / i as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoissonFitRow {
    pub i: usize,
    pub target_mean: f64,
    pub mean: f64,
    pub tv: f64,
    /// Observation counts for values `0..=30`, then everything above.
    pub counts: Vec<u64>,
    pub frequencies: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoissonFitReport {
    pub format_version: u32,
    pub family: Family,
    pub config: ExperimentConfig,
    pub n: usize,
    pub trials: u64,
    pub rows: Vec<PoissonFitRow>,
    /// Fraction of graphs without loops or parallel edges (cycle census only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simple_fraction: Option<f64>,
}

impl PoissonFitReport {
    pub fn row(&self, i: usize) -> Option<&PoissonFitRow> {
        self.rows.iter().find(|r| r.i == i)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// One CSV row per `(i, count)` histogram cell, after a `#` preamble
    /// carrying the format version and configuration.
    pub fn write_csv<W: io::Write>(&self, mut w: W, header: bool) -> io::Result<()> {
        if header {
            write_preamble(&mut w, "poisson_fit", &self.config)?;
            writeln!(
                w,
                "family,i,count,observations,frequency,poisson_pmf,target_mean,mean,tv"
            )?;
        }
        let family = match self.family {
            Family::X => "X",
            Family::Y => "Y",
        };
        for row in &self.rows {
            let pmf = stats::poisson_cells(row.target_mean);
            for (k, (&c, &f)) in row.counts.iter().zip(&row.frequencies).enumerate() {
                let cell = if k <= TRUNCATION {
                    k.to_string()
                } else {
                    format!(">{TRUNCATION}")
                };
                writeln!(
                    w,
                    "{family},{},{cell},{c},{f:.10},{:.10},{:.10},{:.10},{:.10}",
                    row.i, pmf[k], row.target_mean, row.mean, row.tv
                )?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CuspProbabilityReport {
    pub format_version: u32,
    pub config: ExperimentConfig,
    #[serde(rename = "L")]
    pub cusp_threshold: usize,
    pub trials: u64,
    /// Fraction of graphs whose shortest left-hand-turn path has length >= L.
    pub empirical: f64,
    pub half_width: f64,
    /// `exp(-H_{L-1})`.
    pub target: f64,
    /// `exp(-gamma) / (L - 1)`.
    pub comparator: f64,
    /// The same probability recomputed as `P(Y_1 = ... = Y_{L-1} = 0)`.
    pub empirical_from_census: f64,
}

impl CuspProbabilityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn write_csv<W: io::Write>(&self, mut w: W, header: bool) -> io::Result<()> {
        if header {
            write_preamble(&mut w, "large_cusps", &self.config)?;
            writeln!(w, "L,trials,empirical,half_width,target,comparator")?;
        }
        writeln!(
            w,
            "{},{},{:.10},{:.10},{:.10},{:.10}",
            self.cusp_threshold,
            self.trials,
            self.empirical,
            self.half_width,
            self.target,
            self.comparator
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointIndependenceReport {
    pub format_version: u32,
    pub config: ExperimentConfig,
    pub i: usize,
    pub j: usize,
    pub tv: f64,
}

fn write_preamble<W: io::Write>(
    w: &mut W,
    kind: &str,
    config: &ExperimentConfig,
) -> io::Result<()> {
    writeln!(w, "# format_version={REPORT_FORMAT_VERSION} report={kind}")?;
    writeln!(
        w,
        "# config={}",
        serde_json::to_string(config).expect("config serializes")
    )
}

impl Campaign {
    pub fn run(config: &ExperimentConfig) -> Result<Self, ExperimentError> {
        config.validate()?;
        let max_x = config.max_cycle_len;
        let max_y = config
            .max_cycle_len
            .max(config.cusp_threshold.saturating_sub(1));
        let records = run_trials(
            config.n,
            config.trials,
            config.master_seed,
            config.workers,
            |g| TrialRecord::measure(g, max_x, max_y),
        )?;
        Ok(Campaign {
            config: config.clone(),
            records,
        })
    }

    fn trials(&self) -> u64 {
        self.records.len() as u64
    }

    fn fit(&self, family: Family) -> PoissonFitReport {
        let rows = (1..=self.config.max_cycle_len)
            .map(|i| {
                let h = Histogram::from_values(self.records.iter().map(|r| match family {
                    Family::X => r.x[i - 1] as usize,
                    Family::Y => r.y[i - 1] as usize,
                }));
                let target_mean = family.target_mean(i);
                PoissonFitRow {
                    i,
                    target_mean,
                    mean: h.mean(),
                    tv: stats::tv_to_poisson(&h, target_mean),
                    frequencies: h.frequencies(),
                    counts: h.counts,
                }
            })
            .collect();
        PoissonFitReport {
            format_version: REPORT_FORMAT_VERSION,
            family,
            config: self.config.clone(),
            n: self.config.n,
            trials: self.trials(),
            rows,
            simple_fraction: None,
        }
    }

    pub fn cycle_fit(&self) -> PoissonFitReport {
        let mut report = self.fit(Family::X);
        let simple = self.records.iter().filter(|r| r.simple).count();
        report.simple_fraction = Some(simple as f64 / self.trials() as f64);
        report
    }

    pub fn lht_fit(&self) -> PoissonFitReport {
        self.fit(Family::Y)
    }

    pub fn large_cusps(&self, threshold: usize) -> Result<CuspProbabilityReport, ExperimentError> {
        if threshold < 2 {
            return Err(ExperimentError::CuspThreshold {
                min: 2,
                got: threshold,
            });
        }
        let trials = self.trials();
        let hits = self
            .records
            .iter()
            .filter(|r| r.min_lht >= threshold)
            .count();
        let empirical = hits as f64 / trials as f64;
        let from_census = self
            .records
            .iter()
            .filter(|r| {
                if threshold - 1 <= r.y.len() {
                    r.y[..threshold - 1].iter().all(|&c| c == 0)
                } else {
                    r.min_lht >= threshold
                }
            })
            .count();
        Ok(CuspProbabilityReport {
            format_version: REPORT_FORMAT_VERSION,
            config: self.config.clone(),
            cusp_threshold: threshold,
            trials,
            empirical,
            half_width: stats::half_width(empirical, trials),
            target: (-stats::harmonic(threshold - 1)).exp(),
            comparator: (-stats::EULER_GAMMA).exp() / (threshold - 1) as f64,
            empirical_from_census: from_census as f64 / trials as f64,
        })
    }

    /// TV distance between the joint law of `(X_i, X_j)` and the product of
    /// their Poisson targets, each coordinate truncated at 30.
    pub fn joint_independence(
        &self,
        i: usize,
        j: usize,
    ) -> Result<JointIndependenceReport, ExperimentError> {
        let max = self.config.max_cycle_len;
        if i == j {
            return Err(ExperimentError::SameIndex(i));
        }
        for index in [i, j] {
            if index == 0 || index > max {
                return Err(ExperimentError::IndexOutOfRange { index, max });
            }
        }
        let cells = TRUNCATION + 2;
        let mut joint = vec![0u64; cells * cells];
        for r in &self.records {
            let a = (r.x[i - 1] as usize).min(TRUNCATION + 1);
            let b = (r.x[j - 1] as usize).min(TRUNCATION + 1);
            joint[a * cells + b] += 1;
        }
        let trials = self.trials() as f64;
        let pi = stats::poisson_cells(Family::X.target_mean(i));
        let pj = stats::poisson_cells(Family::X.target_mean(j));
        let empirical: Vec<f64> = joint.iter().map(|&c| c as f64 / trials).collect();
        let product: Vec<f64> = pi
            .iter()
            .flat_map(|a| pj.iter().map(move |b| a * b))
            .collect();
        Ok(JointIndependenceReport {
            format_version: REPORT_FORMAT_VERSION,
            config: self.config.clone(),
            i,
            j,
            tv: stats::total_variation(&empirical, &product),
        })
    }
}

pub fn run_cycle_census(cfg: &ExperimentConfig) -> Result<PoissonFitReport, ExperimentError> {
    Ok(Campaign::run(cfg)?.cycle_fit())
}

pub fn run_lht_census(cfg: &ExperimentConfig) -> Result<PoissonFitReport, ExperimentError> {
    Ok(Campaign::run(cfg)?.lht_fit())
}

pub fn estimate_large_cusp_probability(
    cfg: &ExperimentConfig,
) -> Result<CuspProbabilityReport, ExperimentError> {
    if cfg.cusp_threshold < 2 {
        return Err(ExperimentError::CuspThreshold {
            min: 2,
            got: cfg.cusp_threshold,
        });
    }
    Campaign::run(cfg)?.large_cusps(cfg.cusp_threshold)
}

pub fn joint_independence_check(
    cfg: &ExperimentConfig,
    i: usize,
    j: usize,
) -> Result<f64, ExperimentError> {
    if i == j {
        return Err(ExperimentError::SameIndex(i));
    }
    Ok(Campaign::run(cfg)?.joint_independence(i, j)?.tv)
}

/// Whether some two distinct cycles of lengths `l1` and `l2` lie within
/// distance `d` of each other.
pub fn has_close_cycle_pair(g: &RibbonGraph, cycles: &[Cycle], p: IsolationParams) -> bool {
    let vertex_sets: Vec<Vec<usize>> = cycles.iter().map(Cycle::vertices).collect();
    for (a, ca) in cycles.iter().enumerate().filter(|(_, c)| c.len() == p.l1) {
        for (b, _) in cycles.iter().enumerate().filter(|(_, c)| c.len() == p.l2) {
            if a == b {
                continue;
            }
            let _ = ca;
            if g.set_distance_within(&vertex_sets[a], &vertex_sets[b], p.d)
                .expect("nonempty")
                .is_some()
            {
                return true;
            }
        }
    }
    false
}

/// Relaxed large-cusps certificate: every left-hand-turn path shorter than
/// `cusp_threshold` keeps all other cycles of length `<= l2` farther than `d`.
pub fn isolation_certificate(
    g: &RibbonGraph,
    cycles: &[Cycle],
    cusp_threshold: usize,
    p: IsolationParams,
) -> bool {
    let short_lht: Vec<Vec<usize>> = lht_paths(g)
        .cycles
        .into_iter()
        .filter(|c| c.len() < cusp_threshold)
        .collect();
    if short_lht.is_empty() {
        return true;
    }
    let others: Vec<(Vec<usize>, Vec<usize>)> = cycles
        .iter()
        .filter(|c| c.len() <= p.l2)
        .map(|c| (c.edge_ids(g), c.vertices()))
        .collect();
    short_lht.iter().all(|path| {
        let mut own: Vec<usize> = path.iter().map(|&d| g.edge_id(d)).collect();
        own.sort_unstable();
        let verts: Vec<usize> = path.iter().map(|&d| d / 3).collect();
        others.iter().all(|(edges, cverts)| {
            *edges == own
                || g.set_distance_within(&verts, cverts, p.d)
                    .expect("nonempty")
                    .is_none()
        })
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsolationRow {
    pub n: usize,
    pub trials: u64,
    /// Empirical `Q_n(l1, l2, d)`.
    pub q: f64,
    pub q_half_width: f64,
    /// Empirical frequency of the relaxed large-cusps certificate.
    pub certificate: f64,
    pub certificate_half_width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsolationReport {
    pub format_version: u32,
    pub config: ExperimentConfig,
    pub params: IsolationParams,
    #[serde(rename = "L")]
    pub cusp_threshold: usize,
    pub rows: Vec<IsolationRow>,
}

impl IsolationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn write_csv<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        write_preamble(&mut w, "isolation", &self.config)?;
        writeln!(
            w,
            "n,trials,q,q_half_width,certificate,certificate_half_width"
        )?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{:.10},{:.10},{:.10},{:.10}",
                r.n, r.trials, r.q, r.q_half_width, r.certificate, r.certificate_half_width
            )?;
        }
        Ok(())
    }
}

/// Master seed used for the ladder rung at size `n`, so rungs draw
/// unrelated graphs.
pub fn rung_seed(master_seed: u64, n: usize) -> u64 {
    master_seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub fn estimate_isolation(
    cfg: &ExperimentConfig,
    ladder: &[usize],
) -> Result<IsolationReport, ExperimentError> {
    cfg.validate()?;
    if ladder.len() < 3 {
        return Err(ExperimentError::LadderTooShort(ladder.len()));
    }
    if ladder[0] == 0 || ladder.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ExperimentError::LadderNotIncreasing);
    }
    let p = cfg.isolation;
    let max_len = p.l1.max(p.l2);
    let mut rows = Vec::with_capacity(ladder.len());
    for &n in ladder {
        let outcomes = run_trials(
            n,
            cfg.trials,
            rung_seed(cfg.master_seed, n),
            cfg.workers,
            |g| {
                let cycles = enumerate_cycles(g, max_len);
                (
                    has_close_cycle_pair(g, &cycles, p),
                    isolation_certificate(g, &cycles, cfg.cusp_threshold, p),
                )
            },
        )?;
        let t = cfg.trials as f64;
        let q = outcomes.iter().filter(|o| o.0).count() as f64 / t;
        let c = outcomes.iter().filter(|o| o.1).count() as f64 / t;
        rows.push(IsolationRow {
            n,
            trials: cfg.trials,
            q,
            q_half_width: stats::half_width(q, cfg.trials),
            certificate: c,
            certificate_half_width: stats::half_width(c, cfg.trials),
        });
    }
    Ok(IsolationReport {
        format_version: REPORT_FORMAT_VERSION,
        config: cfg.clone(),
        params: p,
        cusp_threshold: cfg.cusp_threshold,
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Decreasing,
    Increasing,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendStep {
    pub from: f64,
    pub to: f64,
    /// Largest move against the trend still inside the 95% interval of the
    /// difference of the two proportions.
    pub tolerance: f64,
    pub consistent: bool,
}

/// Checks each consecutive pair of proportions against a trend.
///
/// A step is consistent when it moves the right way, or moves the wrong way
/// by less than `1.96 * sqrt(se_a^2 + se_b^2)`.
pub fn trend_steps(points: &[(f64, u64)], trend: Trend) -> Vec<TrendStep> {
    points
        .windows(2)
        .map(|w| {
            let ((a, ta), (b, tb)) = (w[0], w[1]);
            let se2 = a * (1.0 - a) / ta as f64 + b * (1.0 - b) / tb as f64;
            let tolerance = stats::Z95 * se2.sqrt();
            let against = match trend {
                Trend::Decreasing => b - a,
                Trend::Increasing => a - b,
            };
            TrendStep {
                from: a,
                to: b,
                tolerance,
                consistent: against <= tolerance,
            }
        })
        .collect()
}
