//! Brute-force oracles shared by the integration tests. They use only the
//! raw `sigma`/`alpha` arrays, never the library's derived algorithms.
#![allow(dead_code)]

use std::collections::BTreeSet;

use ribbon_surfaces::RibbonGraph;

/// Edges as `(min dart, other dart)`, indexed by position.
pub fn raw_edges(g: &RibbonGraph) -> Vec<(usize, usize)> {
    let alpha = g.alpha_slice();
    (0..alpha.len())
        .filter(|&d| d < alpha[d])
        .map(|d| (d, alpha[d]))
        .collect()
}

/// Edge-id (min dart) sets of every cycle subgraph, by testing all edge subsets:
/// a subset is a cycle iff it is connected and every touched vertex has degree 2.
pub fn cycles_by_edge_subsets(g: &RibbonGraph) -> BTreeSet<Vec<usize>> {
    let edges = raw_edges(g);
    assert!(edges.len() <= 20, "subset oracle is exponential");
    let vcount = g.alpha_slice().len() / 3;
    let mut found = BTreeSet::new();
    for mask in 1u32..(1 << edges.len()) {
        let chosen: Vec<(usize, usize)> = (0..edges.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| edges[i])
            .collect();
        let mut degree = vec![0; vcount];
        let mut parent: Vec<usize> = (0..vcount).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b) in &chosen {
            let (u, v) = (a / 3, b / 3);
            degree[u] += 1;
            degree[v] += 1;
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            parent[ru] = rv;
        }
        let touched: Vec<usize> = (0..vcount).filter(|&v| degree[v] > 0).collect();
        if touched.iter().any(|&v| degree[v] != 2) {
            continue;
        }
        let root = find(&mut parent, touched[0]);
        if touched.iter().all(|&v| find(&mut parent, v) == root) {
            found.insert(chosen.iter().map(|e| e.0).collect());
        }
    }
    found
}

/// Edge-id sets of cycles found by following every closed walk that never
/// repeats a vertex, deduplicated by edge multiset.
pub fn cycles_by_walks(g: &RibbonGraph, max_len: usize) -> BTreeSet<Vec<usize>> {
    let alpha = g.alpha_slice();
    let edge = |d: usize| d.min(alpha[d]);
    let mut found = BTreeSet::new();
    for start in 0..alpha.len() {
        let mut stack: Vec<Vec<usize>> = vec![vec![start]];
        while let Some(path) = stack.pop() {
            let last = *path.last().unwrap();
            let far = alpha[last] / 3;
            let mut edges: Vec<usize> = path.iter().map(|&d| edge(d)).collect();
            edges.sort_unstable();
            let distinct = edges.windows(2).all(|w| w[0] != w[1]);
            if !distinct {
                continue;
            }
            if far == start / 3 {
                found.insert(edges);
                continue;
            }
            if path.len() == max_len || path.iter().any(|&d| d / 3 == far) {
                continue;
            }
            for next in 3 * far..3 * far + 3 {
                if next != alpha[last] {
                    let mut p = path.clone();
                    p.push(next);
                    stack.push(p);
                }
            }
        }
    }
    found
}

/// Orbits of `d -> sigma(alpha(d))`, computed from the raw arrays.
pub fn face_orbits(g: &RibbonGraph) -> Vec<Vec<usize>> {
    let (sigma, alpha) = (g.sigma_slice(), g.alpha_slice());
    let mut seen = vec![false; sigma.len()];
    let mut orbits = Vec::new();
    for s in 0..sigma.len() {
        if seen[s] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut d = s;
        while !seen[d] {
            seen[d] = true;
            orbit.push(d);
            d = sigma[alpha[d]];
        }
        orbits.push(orbit);
    }
    orbits
}

/// Component label per vertex by union-find on the raw edges.
pub fn component_labels(g: &RibbonGraph) -> Vec<usize> {
    let vcount = g.alpha_slice().len() / 3;
    let mut label: Vec<usize> = (0..vcount).collect();
    loop {
        let mut changed = false;
        for (a, b) in raw_edges(g) {
            let (u, v) = (a / 3, b / 3);
            let m = label[u].min(label[v]);
            if label[u] != m || label[v] != m {
                label[u] = m;
                label[v] = m;
                changed = true;
            }
        }
        if !changed {
            return label;
        }
    }
}

/// Cheeger constant by checking every vertex subset, as `(numerator, denominator)`.
pub fn brute_cheeger(g: &RibbonGraph) -> (u64, u64) {
    let vcount = g.alpha_slice().len() / 3;
    assert!(vcount <= 20);
    let edges = raw_edges(g);
    let mut best = (u64::MAX, 1u64);
    for mask in 1u32..(1 << vcount) - 1 {
        let size = mask.count_ones() as u64;
        if 2 * size > vcount as u64 {
            continue;
        }
        let cut = edges
            .iter()
            .filter(|(a, b)| (mask >> (a / 3) & 1) != (mask >> (b / 3) & 1))
            .count() as u64;
        if cut * best.1 < best.0 * size {
            best = (cut, size);
        }
    }
    best
}

/// Product of the word's matrices in exact integers; `true` means Left.
pub fn word_matrix_u128(word: &[bool]) -> [u128; 4] {
    let mut m = [1u128, 0, 0, 1];
    for &left in word {
        // right-multiply by [[1,1],[0,1]] or [[1,0],[1,1]]
        m = if left {
            [m[0], m[0] + m[1], m[2], m[2] + m[3]]
        } else {
            [m[0] + m[1], m[1], m[2] + m[3], m[3]]
        };
    }
    m
}
