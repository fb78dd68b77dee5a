//! Poisson laws, empirical histograms and total-variation distances.

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Counts above this value are lumped into a single tail cell.
pub const TRUNCATION: usize = 30;

/// z-value of a two-sided 95% normal interval.
pub const Z95: f64 = 1.96;

/// `P(X = k)` for `X ~ Poisson(mean)`.
pub fn poisson_pmf(mean: f64, k: usize) -> f64 {
    let mut p = (-mean).exp();
    for j in 1..=k {
        p *= mean / j as f64;
    }
    p
}

/// Poisson law on cells `0..=TRUNCATION` plus the lumped tail.
pub fn poisson_cells(mean: f64) -> Vec<f64> {
    let mut cells: Vec<f64> = (0..=TRUNCATION).map(|k| poisson_pmf(mean, k)).collect();
    let head: f64 = cells.iter().sum();
    cells.push((1.0 - head).max(0.0));
    cells
}

/// Empirical law of nonnegative counts on the same cells as [`poisson_cells`].
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    /// `counts[k]` observations equal to `k` for `k <= TRUNCATION`;
    /// the last entry counts everything larger.
    pub counts: Vec<u64>,
    pub total: u64,
    pub sum: u64,
}

impl Histogram {
    pub fn new() -> Self {
        Histogram {
            counts: vec![0; TRUNCATION + 2],
            total: 0,
            sum: 0,
        }
    }

    pub fn from_values(values: impl IntoIterator<Item = usize>) -> Self {
        let mut h = Self::new();
        for v in values {
            h.add(v);
        }
        h
    }

    pub fn add(&mut self, value: usize) {
        self.counts[value.min(TRUNCATION + 1)] += 1;
        self.total += 1;
        self.sum += value as u64;
    }

    pub fn mean(&self) -> f64 {
        self.sum as f64 / self.total as f64
    }

    pub fn frequencies(&self) -> Vec<f64> {
        self.counts
            .iter()
            .map(|&c| c as f64 / self.total as f64)
            .collect()
    }
}

impl Default for Histogram {
    fn default() -> Self {
        Self::new()
    }
}

/// Half the L1 distance between two laws on the same cells.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    assert_eq!(p.len(), q.len());
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// TV distance between the empirical law of `values` and `Poisson(mean)`.
pub fn tv_to_poisson(h: &Histogram, mean: f64) -> f64 {
    total_variation(&h.frequencies(), &poisson_cells(mean))
}

/// `H_m = 1 + 1/2 + ... + 1/m`.
pub fn harmonic(m: usize) -> f64 {
    (1..=m).map(|i| 1.0 / i as f64).sum()
}

/// Normal-approximation half-width of a 95% interval for a proportion.
pub fn half_width(p: f64, trials: u64) -> f64 {
    Z95 * (p * (1.0 - p) / trials as f64).sqrt()
}
