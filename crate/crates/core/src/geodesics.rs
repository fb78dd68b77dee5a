//! Closed paths, turn words and the closed geodesics they determine.
//!
//! A closed non-backtracking path is written as its sequence of departure
//! darts `d_0, ..., d_{k-1}`: the path leaves along `d_i`, arrives at
//! `alpha(d_i)` and then leaves along `d_{i+1}`. The turn taken there is
//! Left when `d_{i+1} = sigma(alpha(d_i))` and Right when
//! `d_{i+1} = sigma(sigma(alpha(d_i)))`.
//!
//! Multiplying `L = [[1,1],[0,1]]` and `R = [[1,0],[1,1]]` along the word
//! gives an element of SL(2, Z) whose trace `t` fixes the length of the
//! geodesic in the free homotopy class: `2 cosh(len / 2) = t`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::ribbon_graph::RibbonGraph;
use crate::topology::lht_lengths;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Turn {
    Left,
    Right,
}

impl Turn {
    pub fn flip(self) -> Turn {
        match self {
            Turn::Left => Turn::Right,
            Turn::Right => Turn::Left,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("path is empty")]
    Empty,
    #[error("dart {dart} is out of range")]
    DartOutOfRange { dart: usize },
    #[error("path backtracks at step {step}: dart {dart} returns along the edge it arrived on")]
    Backtrack { step: usize, dart: usize },
    #[error("path is broken at step {step}: dart {dart} does not leave the vertex just reached")]
    Discontinuous { step: usize, dart: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TurnWord {
    letters: Vec<Turn>,
    base_dart: Option<usize>,
}

impl TurnWord {
    /// Builds a word not tied to any graph. Returns `None` for an empty word.
    pub fn new(letters: Vec<Turn>) -> Option<Self> {
        (!letters.is_empty()).then_some(TurnWord {
            letters,
            base_dart: None,
        })
    }

    pub fn letters(&self) -> &[Turn] {
        &self.letters
    }

    pub fn base_dart(&self) -> Option<usize> {
        self.base_dart
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// True for `Left^k` and `Right^k`: the parabolic (cusp) words.
    pub fn is_uniform(&self) -> bool {
        self.letters.iter().all(|&t| t == self.letters[0])
    }

    pub fn rotated(&self, by: usize) -> TurnWord {
        let mut letters = self.letters.clone();
        letters.rotate_left(by % self.len());
        TurnWord {
            letters,
            base_dart: None,
        }
    }

    /// The word read backwards with every turn swapped, which is the word of
    /// the same closed path traversed in the opposite direction.
    pub fn reversed_swapped(&self) -> TurnWord {
        TurnWord {
            letters: self.letters.iter().rev().map(|t| t.flip()).collect(),
            base_dart: None,
        }
    }
}

impl fmt::Display for TurnWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.letters {
            f.write_str(match t {
                Turn::Left => "L",
                Turn::Right => "R",
            })?;
        }
        Ok(())
    }
}

impl Serialize for TurnWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A 2x2 matrix over the nonnegative integers, `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordMatrix {
    pub a: BigUint,
    pub b: BigUint,
    pub c: BigUint,
    pub d: BigUint,
}

impl WordMatrix {
    pub fn identity() -> Self {
        WordMatrix {
            a: BigUint::one(),
            b: BigUint::zero(),
            c: BigUint::zero(),
            d: BigUint::one(),
        }
    }

    /// Right-multiplies by the matrix of one turn.
    pub fn push(&mut self, turn: Turn) {
        match turn {
            // [[a,b],[c,d]] * [[1,1],[0,1]] = [[a, a+b], [c, c+d]]
            Turn::Left => {
                self.b += &self.a;
                self.d += &self.c;
            }
            // [[a,b],[c,d]] * [[1,0],[1,1]] = [[a+b, b], [c+d, d]]
            Turn::Right => {
                self.a += &self.b;
                self.c += &self.d;
            }
        }
    }

    pub fn trace(&self) -> BigUint {
        &self.a + &self.d
    }

    /// `true` when `ad - bc = 1`.
    pub fn is_unimodular(&self) -> bool {
        &self.a * &self.d == &self.b * &self.c + BigUint::one()
    }
}

pub fn word_matrix(w: &TurnWord) -> WordMatrix {
    let mut m = WordMatrix::identity();
    for &t in w.letters() {
        m.push(t);
    }
    m
}

/// Geodesic length `2 arccosh(t / 2)` for an integer trace `t >= 2`.
///
/// Exactly zero for `t = 2`. Traces too large for `f64` are handled through
/// their leading 64 bits and a binary exponent.
pub fn length_from_trace(trace: &BigUint) -> f64 {
    let two = BigUint::from(2u32);
    assert!(
        *trace >= two,
        "a hyperbolic or parabolic trace is at least 2"
    );
    if *trace == two {
        return 0.0;
    }
    let bits = trace.bits();
    if bits <= 512 {
        let t = trace.to_f64().expect("trace fits in f64");
        return 2.0 * (t / 2.0).acosh();
    }
    // For t > 2^511 the correction ln((1 + sqrt(1 - 4/t^2))/2) + ln 2 to ln t
    // is below 1e-300, so 2 arccosh(t/2) = 2 ln t to full precision.
    let shift = bits - 64;
    let top = (trace >> shift).to_u64().expect("64 leading bits") as f64;
    2.0 * (top.ln() + shift as f64 * std::f64::consts::LN_2)
}

pub fn geodesic_length(w: &TurnWord) -> f64 {
    length_from_trace(&word_matrix(w).trace())
}

/// Turn word of a closed non-backtracking path given by its departure darts.
pub fn turn_word(g: &RibbonGraph, darts: &[usize]) -> Result<TurnWord, PathError> {
    if darts.is_empty() {
        return Err(PathError::Empty);
    }
    if let Some(&d) = darts.iter().find(|&&d| d >= g.dart_count()) {
        return Err(PathError::DartOutOfRange { dart: d });
    }
    let k = darts.len();
    let mut letters = Vec::with_capacity(k);
    for i in 0..k {
        let arrival = g.alpha(darts[i]);
        let next = darts[(i + 1) % k];
        let step = (i + 1) % k;
        if next == arrival {
            return Err(PathError::Backtrack { step, dart: next });
        } else if next == g.sigma(arrival) {
            letters.push(Turn::Left);
        } else if next == g.sigma(g.sigma(arrival)) {
            letters.push(Turn::Right);
        } else {
            return Err(PathError::Discontinuous { step, dart: next });
        }
    }
    Ok(TurnWord {
        letters,
        base_dart: Some(darts[0]),
    })
}

/// A cycle subgraph, stored as the departure darts of one traversal.
///
/// The stored traversal is the lexicographically smallest among all
/// rotations of both traversal directions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cycle {
    darts: Vec<usize>,
}

impl Cycle {
    /// Canonicalizes a closed traversal. The caller guarantees it is a cycle.
    pub fn from_traversal(g: &RibbonGraph, darts: &[usize]) -> Cycle {
        let k = darts.len();
        let reverse: Vec<usize> = darts.iter().rev().map(|&d| g.alpha(d)).collect();
        let mut best: Option<Vec<usize>> = None;
        for seq in [darts, reverse.as_slice()] {
            for r in 0..k {
                let cand: Vec<usize> = seq[r..].iter().chain(&seq[..r]).copied().collect();
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        Cycle {
            darts: best.expect("nonempty traversal"),
        }
    }

    pub fn darts(&self) -> &[usize] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.darts.iter().map(|d| d / 3).collect()
    }

    /// Sorted edge identifiers (smaller dart of each edge).
    pub fn edge_ids(&self, g: &RibbonGraph) -> Vec<usize> {
        let mut ids: Vec<usize> = self.darts.iter().map(|&d| g.edge_id(d)).collect();
        ids.sort_unstable();
        ids
    }
}

/// All cycle subgraphs with at most `max_len` edges, sorted by length and
/// then by canonical dart sequence.
///
/// Loops are the 1-cycles; two parallel edges form a 2-cycle. Longer cycles
/// visit distinct vertices.
pub fn enumerate_cycles(g: &RibbonGraph, max_len: usize) -> Vec<Cycle> {
    let mut out = Vec::new();
    if max_len == 0 {
        return out;
    }
    for d in 0..g.dart_count() {
        if g.is_loop_dart(d) && d < g.alpha(d) {
            out.push(Cycle { darts: vec![d] });
        }
    }
    let mut path = Vec::with_capacity(max_len);
    let mut on_path = vec![false; g.vertex_count()];
    for s in 0..g.vertex_count() {
        on_path[s] = true;
        extend_from(g, s, s, max_len, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
    }
    out.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.darts.cmp(&b.darts)));
    out
}

/// Depth-first extension of a path that started at `s`, the smallest
/// vertex of any cycle it can close into.
fn extend_from(
    g: &RibbonGraph,
    s: usize,
    v: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Cycle>,
) {
    let back = path.last().map(|&d| g.alpha(d));
    for d in g.darts_at(v) {
        if Some(d) == back || g.is_loop_dart(d) {
            continue;
        }
        let w = g.head(d);
        if w == s {
            if !path.is_empty() && path[0] < g.alpha(d) {
                // each cycle is met once per direction; keep one
                path.push(d);
                out.push(Cycle::from_traversal(g, path));
                path.pop();
            }
        } else if w > s && !on_path[w] && path.len() + 2 <= max_len {
            on_path[w] = true;
            path.push(d);
            extend_from(g, s, w, max_len, path, on_path, out);
            path.pop();
            on_path[w] = false;
        }
    }
}

/// Length of the shortest cycle; loops give 1 and parallel edges 2.
///
/// Every finite cubic multigraph has more edges than a forest on its
/// vertices, so the result always exists.
pub fn girth(g: &RibbonGraph) -> usize {
    let vertices = g.vertex_count();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; vertices];
    let mut parent_dart = vec![usize::MAX; vertices];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..vertices {
        dist.iter_mut().for_each(|x| *x = usize::MAX);
        dist[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            if 2 * dist[v] >= best {
                break;
            }
            for d in g.darts_at(v) {
                // skip the tree edge we arrived by (its far dart is parent_dart[v])
                if v != s && g.alpha(d) == parent_dart[v] {
                    continue;
                }
                let w = g.head(d);
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent_dart[w] = d;
                    queue.push_back(w);
                } else {
                    best = best.min(dist[v] + dist[w] + 1);
                }
            }
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub cycle: Cycle,
    pub combinatorial_length: usize,
    pub word: TurnWord,
    #[serde(serialize_with = "serialize_decimal")]
    pub trace: BigUint,
    pub geodesic_length: f64,
}

fn serialize_decimal<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystoleSpectrum {
    pub max_len: usize,
    /// Hyperbolic cycles sorted by geodesic length, then by cycle.
    pub geodesics: Vec<SpectrumEntry>,
    /// Cycles with a uniform turn word: they wind around a cusp.
    pub cusp_loops: Vec<Cycle>,
}

impl SystoleSpectrum {
    /// Shortest geodesic among cycles of at most `max_len` edges.
    pub fn minimum(&self) -> Option<&SpectrumEntry> {
        self.geodesics.first()
    }

    /// CSV with columns `cycle_id,combinatorial_length,trace_digits,geodesic_length`.
    pub fn write_csv<W: io::Write>(&self, w: W) -> csv::Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record([
            "cycle_id",
            "combinatorial_length",
            "trace_digits",
            "geodesic_length",
        ])?;
        for (id, e) in self.geodesics.iter().enumerate() {
            wr.write_record([
                id.to_string(),
                e.combinatorial_length.to_string(),
                e.trace.to_string(),
                format!("{:.12}", e.geodesic_length),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }
}

pub fn systole_spectrum(g: &RibbonGraph, max_len: usize) -> SystoleSpectrum {
    let mut geodesics = Vec::new();
    let mut cusp_loops = Vec::new();
    for cycle in enumerate_cycles(g, max_len) {
        let word = turn_word(g, cycle.darts()).expect("a cycle subgraph is non-backtracking");
        if word.is_uniform() {
            cusp_loops.push(cycle);
            continue;
        }
        let trace = word_matrix(&word).trace();
        geodesics.push(SpectrumEntry {
            combinatorial_length: cycle.len(),
            geodesic_length: length_from_trace(&trace),
            cycle,
            word,
            trace,
        });
    }
    geodesics.sort_by(|a, b| {
        a.geodesic_length
            .total_cmp(&b.geodesic_length)
            .then_with(|| a.cycle.cmp(&b.cycle))
    });
    SystoleSpectrum {
        max_len,
        geodesics,
        cusp_loops,
    }
}

/// Counts of cycle subgraphs (`x`) and left-hand-turn paths (`y`) by length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleCensus {
    pub max_len: usize,
    pub x: BTreeMap<usize, usize>,
    pub y: BTreeMap<usize, usize>,
}

impl CycleCensus {
    pub fn x(&self, i: usize) -> usize {
        self.x.get(&i).copied().unwrap_or(0)
    }

    pub fn y(&self, i: usize) -> usize {
        self.y.get(&i).copied().unwrap_or(0)
    }

    /// CSV with columns `family,length,count`.
    pub fn write_csv<W: io::Write>(&self, w: W) -> csv::Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["family", "length", "count"])?;
        for (family, map) in [("X", &self.x), ("Y", &self.y)] {
            for (i, c) in map {
                wr.write_record([family.to_string(), i.to_string(), c.to_string()])?;
            }
        }
        wr.flush()?;
        Ok(())
    }
}

pub fn cycle_census(g: &RibbonGraph, max_len: usize) -> CycleCensus {
    let mut x: BTreeMap<usize, usize> = (1..=max_len).map(|i| (i, 0)).collect();
    let mut y = x.clone();
    for c in enumerate_cycles(g, max_len) {
        *x.get_mut(&c.len()).unwrap() += 1;
    }
    for l in lht_lengths(g) {
        if let Some(c) = y.get_mut(&l) {
            *c += 1;
        }
    }
    CycleCensus { max_len, x, y }
}

/// Edge sets of all cycles, for comparisons that ignore traversal.
pub fn cycle_edge_sets(g: &RibbonGraph, cycles: &[Cycle]) -> HashSet<Vec<usize>> {
    cycles.iter().map(|c| c.edge_ids(g)).collect()
}
