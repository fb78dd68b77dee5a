//! Edge expansion of the underlying graph.
//!
//! `h(G) = min |E(A, B)| / min(|A|, |B|)` over two-part vertex splits, with
//! parallel edges counted with multiplicity and loops never crossing.
//! Small graphs are solved exhaustively; larger ones are bracketed by the
//! discrete Cheeger inequalities for 3-regular graphs,
//! `(3 - mu1) / 2 <= h <= sqrt(6 (3 - mu1))`, where `mu1` is the second
//! largest adjacency eigenvalue.

use nalgebra::{DMatrix, SymmetricEigen};
use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::ribbon_graph::RibbonGraph;

/// Largest vertex count the exhaustive search accepts.
pub const MAX_EXACT_VERTICES: usize = 26;

/// Expansion threshold from Bollobás's estimate for random cubic graphs.
pub const BOLLOBAS_THRESHOLD: Ratio<u64> = Ratio::new_raw(2, 11);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExpansionError {
    #[error("exhaustive Cheeger search supports at most {MAX_EXACT_VERTICES} vertices, got {0}")]
    TooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheegerMethod {
    Exhaustive,
    Disconnected,
    Spectral,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CheegerValue {
    Exact(Ratio<u64>),
    Interval { lower: f64, upper: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheegerResult {
    pub value: CheegerValue,
    /// Smaller side of an optimal split (exact methods only), sorted.
    pub witness: Vec<usize>,
    pub method: CheegerMethod,
}

impl CheegerResult {
    pub fn exact(&self) -> Option<Ratio<u64>> {
        match self.value {
            CheegerValue::Exact(r) => Some(r),
            CheegerValue::Interval { .. } => None,
        }
    }
}

impl Serialize for CheegerResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        match self.value {
            CheegerValue::Exact(r) => {
                m.serialize_entry("value", &ratio_to_f64(r))?;
                m.serialize_entry("numerator", r.numer())?;
                m.serialize_entry("denominator", r.denom())?;
            }
            CheegerValue::Interval { lower, upper } => {
                m.serialize_entry("interval", &[lower, upper])?;
            }
        }
        m.serialize_entry("witness", &self.witness)?;
        m.serialize_entry("method", &self.method)?;
        m.end()
    }
}

pub fn ratio_to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Number of edges with exactly one endpoint in `side`, with multiplicity.
pub fn cut_size(g: &RibbonGraph, side: &[usize]) -> usize {
    let mut inside = vec![false; g.vertex_count()];
    for &v in side {
        inside[v] = true;
    }
    (0..g.dart_count())
        .filter(|&d| inside[d / 3] && !inside[g.head(d)])
        .count()
}

/// Lexicographic order of the sorted element lists of two vertex bitsets.
fn lex_less(a: u32, b: u32) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let p = diff.trailing_zeros();
    if a >> p & 1 == 1 {
        // a continues with p; b either ends here (b is a prefix, so smaller)
        // or continues with something larger
        (b >> p) != 0
    } else {
        (a >> p) == 0
    }
}

fn witness_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Exact Cheeger constant by Gray-code enumeration of all vertex subsets.
///
/// Ties are broken towards the lexicographically smallest witness. A
/// disconnected graph has `h = 0`; its smallest component (earliest on
/// ties) is returned as witness without any search.
pub fn cheeger_exact(g: &RibbonGraph) -> Result<CheegerResult, ExpansionError> {
    let components = g.connected_components();
    if components.len() > 1 {
        let smallest = components
            .into_iter()
            .min_by_key(|c| c.len())
            .expect("at least two components");
        return Ok(CheegerResult {
            value: CheegerValue::Exact(Ratio::from_integer(0)),
            witness: smallest,
            method: CheegerMethod::Disconnected,
        });
    }
    let vertices = g.vertex_count();
    if vertices > MAX_EXACT_VERTICES {
        return Err(ExpansionError::TooLarge(vertices));
    }
    let half = vertices / 2;
    let neighbors: Vec<Vec<usize>> = (0..vertices)
        .map(|v| {
            g.darts_at(v)
                .map(|d| g.head(d))
                .filter(|&w| w != v)
                .collect()
        })
        .collect();

    let mut mask = 0u32;
    let mut size = 0usize;
    let mut cut = 0usize;
    let mut best: Option<(usize, usize, u32)> = None;
    for step in 1u64..(1u64 << vertices) {
        let v = step.trailing_zeros() as usize;
        let inside = neighbors[v].iter().filter(|&&w| mask >> w & 1 == 1).count();
        let deg = neighbors[v].len();
        if mask >> v & 1 == 1 {
            mask &= !(1 << v);
            size -= 1;
            cut = cut + 2 * inside - deg;
        } else {
            mask |= 1 << v;
            size += 1;
            cut = cut + deg - 2 * inside;
        }
        if size == 0 || size > half {
            continue;
        }
        let better = match best {
            None => true,
            Some((bc, bs, bm)) => {
                let (lhs, rhs) = (cut * bs, bc * size);
                lhs < rhs || (lhs == rhs && lex_less(mask, bm))
            }
        };
        if better {
            best = Some((cut, size, mask));
        }
    }
    let (cut, size, mask) = best.expect("a graph with at least two vertices has a split");
    Ok(CheegerResult {
        value: CheegerValue::Exact(Ratio::new(cut as u64, size as u64)),
        witness: witness_of(mask),
        method: CheegerMethod::Exhaustive,
    })
}

/// Multigraph adjacency matrix; a loop adds 2 on the diagonal so that every
/// row sums to 3.
pub fn adjacency_matrix(g: &RibbonGraph) -> DMatrix<f64> {
    let n = g.vertex_count();
    let mut m = DMatrix::zeros(n, n);
    for d in 0..g.dart_count() {
        m[(d / 3, g.head(d))] += 1.0;
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralGap {
    /// `3 - mu1`, clamped at zero.
    pub gap: f64,
    pub second_eigenvalue: f64,
    /// Set when the graph is disconnected, so `mu1 = 3` and the gap vanishes.
    pub disconnected: bool,
}

pub fn spectral_gap(g: &RibbonGraph) -> SpectralGap {
    let disconnected = !g.is_connected();
    let mut eig: Vec<f64> = SymmetricEigen::new(adjacency_matrix(g))
        .eigenvalues
        .iter()
        .copied()
        .collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    let second = if disconnected { 3.0 } else { eig[1] };
    SpectralGap {
        gap: (3.0 - second).max(0.0),
        second_eigenvalue: second,
        disconnected,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheegerBounds {
    pub lower: f64,
    pub upper: f64,
}

impl CheegerBounds {
    pub fn from_gap(gap: f64) -> Self {
        CheegerBounds {
            lower: gap / 2.0,
            upper: (6.0 * gap).sqrt(),
        }
    }

    /// Whether `h` lies inside the interval, allowing `slack` for eigenvalue error.
    pub fn contains(&self, h: f64, slack: f64) -> bool {
        self.lower - slack <= h && h <= self.upper + slack
    }
}

pub fn cheeger_bounds(g: &RibbonGraph) -> CheegerBounds {
    CheegerBounds::from_gap(spectral_gap(g).gap)
}

/// Exact when small enough, otherwise the spectral interval.
pub fn cheeger(g: &RibbonGraph) -> CheegerResult {
    match cheeger_exact(g) {
        Ok(r) => r,
        Err(ExpansionError::TooLarge(_)) => {
            let b = cheeger_bounds(g);
            CheegerResult {
                value: CheegerValue::Interval {
                    lower: b.lower,
                    upper: b.upper,
                },
                witness: Vec::new(),
                method: CheegerMethod::Spectral,
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdVerdict {
    Above,
    NotAbove,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// The graph is disconnected, so `h = 0`.
    Disconnected,
    /// Decided by the spectral interval.
    SpectralLowerBound,
    SpectralUpperBound,
    ExactSearch,
    /// The spectral interval straddles the threshold and the graph is too
    /// large to search.
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdCheck {
    pub verdict: ThresholdVerdict,
    pub certificate: Certificate,
    pub bounds: Option<CheegerBounds>,
    pub exact: Option<f64>,
}

impl ThresholdCheck {
    pub fn holds(&self) -> Option<bool> {
        match self.verdict {
            ThresholdVerdict::Above => Some(true),
            ThresholdVerdict::NotAbove => Some(false),
            ThresholdVerdict::Indeterminate => None,
        }
    }
}

/// Decides `h(G) > 2/11`.
///
/// The spectral lower bound is tried first since it settles most graphs
/// without the exhaustive search.
pub fn bollobas_threshold_check(g: &RibbonGraph) -> ThresholdCheck {
    let threshold = ratio_to_f64(BOLLOBAS_THRESHOLD);
    if !g.is_connected() {
        return ThresholdCheck {
            verdict: ThresholdVerdict::NotAbove,
            certificate: Certificate::Disconnected,
            bounds: None,
            exact: Some(0.0),
        };
    }
    let bounds = cheeger_bounds(g);
    threshold_from_parts(bounds, threshold, || {
        cheeger_exact(g).ok().and_then(|r| r.exact())
    })
}

/// Verdict logic shared by [`bollobas_threshold_check`], separated so the
/// certificate paths can be exercised with chosen bounds.
pub fn threshold_from_parts(
    bounds: CheegerBounds,
    threshold: f64,
    exact: impl FnOnce() -> Option<Ratio<u64>>,
) -> ThresholdCheck {
    if bounds.lower > threshold {
        return ThresholdCheck {
            verdict: ThresholdVerdict::Above,
            certificate: Certificate::SpectralLowerBound,
            bounds: Some(bounds),
            exact: None,
        };
    }
    if let Some(h) = exact() {
        let verdict = if h > BOLLOBAS_THRESHOLD {
            ThresholdVerdict::Above
        } else {
            ThresholdVerdict::NotAbove
        };
        return ThresholdCheck {
            verdict,
            certificate: Certificate::ExactSearch,
            bounds: Some(bounds),
            exact: Some(ratio_to_f64(h)),
        };
    }
    if bounds.upper <= threshold {
        return ThresholdCheck {
            verdict: ThresholdVerdict::NotAbove,
            certificate: Certificate::SpectralUpperBound,
            bounds: Some(bounds),
            exact: None,
        };
    }
    ThresholdCheck {
        verdict: ThresholdVerdict::Indeterminate,
        certificate: Certificate::None,
        bounds: Some(bounds),
        exact: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon_graph::catalog::*;

    /// Brute force over all subsets listed explicitly, independent of the Gray code.
    fn brute_force(g: &RibbonGraph) -> Ratio<u64> {
        let v = g.vertex_count();
        let mut best: Option<Ratio<u64>> = None;
        for mask in 1u32..(1 << v) {
            let side: Vec<usize> = (0..v).filter(|&i| mask >> i & 1 == 1).collect();
            let small = side.len().min(v - side.len());
            if small == 0 {
                continue;
            }
            let r = Ratio::new(cut_size(g, &side) as u64, small as u64);
            best = Some(best.map_or(r, |b| b.min(r)));
        }
        best.unwrap()
    }

    #[test]
    fn exact_values() {
        let k4 = cheeger_exact(&k4_planar()).unwrap();
        assert_eq!(k4.exact(), Some(Ratio::from_integer(2)));
        assert_eq!(k4.witness, vec![0, 1]);
        let th = cheeger_exact(&theta(false)).unwrap();
        assert_eq!(th.exact(), Some(Ratio::from_integer(3)));
        assert_eq!(th.witness, vec![0]);
        let cube = cheeger_exact(&cube_planar()).unwrap();
        assert_eq!(cube.exact(), Some(Ratio::from_integer(1)));
        assert_eq!(cube.witness.len(), 4);
        assert_eq!(cut_size(&cube_planar(), &cube.witness), 4);
        for g in [
            k4_planar(),
            theta(true),
            cube_planar(),
            prism_planar(),
            k33_with_triangle(),
            loops_and_bridge(),
        ] {
            assert_eq!(cheeger_exact(&g).unwrap().exact().unwrap(), brute_force(&g));
        }
        // loops never cross: the bridge is the only cut edge
        assert_eq!(
            cheeger_exact(&loops_and_bridge()).unwrap().exact(),
            Some(Ratio::from_integer(1))
        );
    }

    #[test]
    fn witness_reproduces_value() {
        for g in [
            k4_planar(),
            cube_planar(),
            prism_planar(),
            k33_with_triangle(),
        ] {
            let r = cheeger_exact(&g).unwrap();
            let h = r.exact().unwrap();
            assert_eq!(
                Ratio::new(cut_size(&g, &r.witness) as u64, r.witness.len() as u64),
                h
            );
            assert!(r.witness.len() <= g.vertex_count() / 2);
        }
    }

    #[test]
    fn disconnected_and_too_large() {
        let two = cube_planar().disjoint_union(&theta(false));
        let r = cheeger_exact(&two).unwrap();
        assert_eq!(r.exact(), Some(Ratio::from_integer(0)));
        assert_eq!(r.witness, vec![8, 9]);
        assert_eq!(r.method, CheegerMethod::Disconnected);
        let big = (0..7).fold(cube_planar(), |acc, _| acc.disjoint_union(&cube_planar()));
        // disconnected graphs are answered regardless of size
        assert!(cheeger_exact(&big).is_ok());
        let ring = crate::sampler::sample_batch(14, 50, 1)
            .map(Result::unwrap)
            .find(|g| g.is_connected())
            .unwrap();
        assert_eq!(cheeger_exact(&ring), Err(ExpansionError::TooLarge(28)));
        assert_eq!(cheeger(&ring).method, CheegerMethod::Spectral);
    }

    #[test]
    fn spectra() {
        let k4 = spectral_gap(&k4_planar());
        assert!((k4.gap - 4.0).abs() < 1e-9);
        assert!((spectral_gap(&theta(false)).gap - 6.0).abs() < 1e-9);
        assert!((spectral_gap(&cube_planar()).gap - 2.0).abs() < 1e-9);
        let a = adjacency_matrix(&loops_and_bridge());
        assert_eq!(a[(0, 0)], 2.0);
        assert_eq!(a.row(0).sum(), 3.0);
        let d = spectral_gap(&theta(false).disjoint_union(&k4_planar()));
        assert!(d.disconnected);
        assert_eq!(d.gap, 0.0);
    }

    #[test]
    fn bounds() {
        let b = cheeger_bounds(&k4_planar());
        assert!((b.lower - 2.0).abs() < 1e-9 && (b.upper - 24f64.sqrt()).abs() < 1e-9);
        let b = cheeger_bounds(&cube_planar());
        assert!((b.lower - 1.0).abs() < 1e-9 && (b.upper - 12f64.sqrt()).abs() < 1e-9);
        let b = cheeger_bounds(&theta(false));
        assert!((b.lower - 3.0).abs() < 1e-9 && (b.upper - 6.0).abs() < 1e-9);
        for g in [
            k4_planar(),
            cube_planar(),
            theta(false),
            prism_planar(),
            k33_with_triangle(),
        ] {
            let h = ratio_to_f64(cheeger_exact(&g).unwrap().exact().unwrap());
            assert!(cheeger_bounds(&g).contains(h, 1e-9));
        }
    }

    #[test]
    fn threshold() {
        let k4 = bollobas_threshold_check(&k4_planar());
        assert_eq!(k4.verdict, ThresholdVerdict::Above);
        assert_eq!(k4.holds(), Some(true));
        let d = bollobas_threshold_check(&k4_planar().disjoint_union(&theta(false)));
        assert_eq!(
            (d.verdict, d.certificate),
            (ThresholdVerdict::NotAbove, Certificate::Disconnected)
        );

        let spectral = threshold_from_parts(
            CheegerBounds {
                lower: 0.5,
                upper: 2.0,
            },
            2.0 / 11.0,
            || panic!("exhaustive search must not run"),
        );
        assert_eq!(spectral.verdict, ThresholdVerdict::Above);
        assert_eq!(spectral.certificate, Certificate::SpectralLowerBound);

        let unknown = threshold_from_parts(
            CheegerBounds {
                lower: 0.1,
                upper: 0.9,
            },
            2.0 / 11.0,
            || None,
        );
        assert_eq!(unknown.verdict, ThresholdVerdict::Indeterminate);
        let low = threshold_from_parts(
            CheegerBounds {
                lower: 0.01,
                upper: 0.1,
            },
            2.0 / 11.0,
            || None,
        );
        assert_eq!(low.verdict, ThresholdVerdict::NotAbove);
        let exact = threshold_from_parts(
            CheegerBounds {
                lower: 0.1,
                upper: 0.9,
            },
            2.0 / 11.0,
            || Some(Ratio::new(1, 7)),
        );
        assert_eq!(
            (exact.verdict, exact.certificate),
            (ThresholdVerdict::NotAbove, Certificate::ExactSearch)
        );
    }

    #[test]
    fn lex_order() {
        // {0,2} < {1}, {0} < {0,1}, {0,1} < {0,2}
        assert!(lex_less(0b101, 0b010));
        assert!(lex_less(0b001, 0b011));
        assert!(!lex_less(0b011, 0b001));
        assert!(lex_less(0b011, 0b101));
        assert!(!lex_less(0b101, 0b011));
    }
}
