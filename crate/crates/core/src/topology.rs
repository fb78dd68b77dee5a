//! Left-hand-turn paths and the topology of the associated cusped surface.
//!
//! The successor of dart `d` along a left-hand-turn path is
//! `sigma(alpha(d))`: cross the edge, then take the next dart in the
//! rotation at the far vertex. Each orbit bounds one cusp, and its length
//! (in edges) is the length of the canonical horocycle around that cusp.

use std::f64::consts::PI;

use serde::Serialize;

use crate::ribbon_graph::RibbonGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LhtDecomposition {
    /// Orbits of the left-turn successor, each starting at its smallest
    /// dart, ordered by that dart.
    pub cycles: Vec<Vec<usize>>,
}

impl LhtDecomposition {
    /// Number of left-hand-turn paths, i.e. cusps.
    pub fn count(&self) -> usize {
        self.cycles.len()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    pub fn min_length(&self) -> usize {
        self.cycles.iter().map(Vec::len).min().unwrap_or(0)
    }
}

/// Next dart along a left-hand-turn path.
#[inline]
pub fn left_turn(g: &RibbonGraph, d: usize) -> usize {
    g.sigma(g.alpha(d))
}

pub fn lht_paths(g: &RibbonGraph) -> LhtDecomposition {
    let mut seen = vec![false; g.dart_count()];
    let mut cycles = Vec::new();
    for start in 0..g.dart_count() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            cycle.push(d);
            d = left_turn(g, d);
        }
        cycles.push(cycle);
    }
    LhtDecomposition { cycles }
}

/// Lengths of all left-hand-turn paths without materializing them.
pub fn lht_lengths(g: &RibbonGraph) -> Vec<usize> {
    let mut seen = vec![false; g.dart_count()];
    let mut lengths = Vec::new();
    for start in 0..g.dart_count() {
        let mut d = start;
        let mut len = 0;
        while !seen[d] {
            seen[d] = true;
            len += 1;
            d = left_turn(g, d);
        }
        if len > 0 {
            lengths.push(len);
        }
    }
    lengths
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentSummary {
    pub vertices: Vec<usize>,
    pub genus: usize,
    pub cusps: usize,
    pub cusp_lengths: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceSummary {
    /// Sum of the per-component genera.
    pub genus: usize,
    pub cusps: usize,
    /// Sorted ascending.
    pub cusp_lengths: Vec<usize>,
    /// Hyperbolic area: one ideal triangle of area pi per vertex.
    pub area: f64,
    pub min_cusp_length: usize,
    pub components: usize,
    pub simple: bool,
    pub per_component: Vec<ComponentSummary>,
}

impl SurfaceSummary {
    pub fn one_line(&self) -> String {
        format!(
            "genus={} cusps={} min_cusp_length={} area={:.6} components={} simple={}",
            self.genus, self.cusps, self.min_cusp_length, self.area, self.components, self.simple
        )
    }
}

/// Genus from the Euler characteristic of a connected piece with
/// `2 * half_vertices` vertices and `cusps` left-hand-turn paths.
pub fn genus_of(half_vertices: usize, cusps: usize) -> Option<usize> {
    let twice = 2 + half_vertices as i64 - cusps as i64;
    (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as usize)
}

pub fn surface_summary(g: &RibbonGraph) -> SurfaceSummary {
    let lht = lht_paths(g);
    let components = g.connected_components();
    let mut component_of = vec![0; g.vertex_count()];
    for (c, verts) in components.iter().enumerate() {
        for &v in verts {
            component_of[v] = c;
        }
    }
    let mut per_lengths: Vec<Vec<usize>> = vec![Vec::new(); components.len()];
    for cycle in &lht.cycles {
        per_lengths[component_of[g.vertex_of(cycle[0])]].push(cycle.len());
    }
    let per_component: Vec<ComponentSummary> = components
        .into_iter()
        .zip(per_lengths)
        .map(|(vertices, mut cusp_lengths)| {
            cusp_lengths.sort_unstable();
            let genus = genus_of(vertices.len() / 2, cusp_lengths.len())
                .expect("Euler characteristic of a valid ribbon graph is even and at most 2");
            ComponentSummary {
                vertices,
                genus,
                cusps: cusp_lengths.len(),
                cusp_lengths,
            }
        })
        .collect();

    let mut cusp_lengths = lht.lengths();
    cusp_lengths.sort_unstable();
    SurfaceSummary {
        genus: per_component.iter().map(|c| c.genus).sum(),
        cusps: cusp_lengths.len(),
        min_cusp_length: cusp_lengths.first().copied().unwrap_or(0),
        cusp_lengths,
        area: 2.0 * PI * g.n() as f64,
        components: per_component.len(),
        simple: g.is_simple(),
        per_component,
    }
}

/// Whether every canonical horocycle has length at least `min_len`.
///
/// This is a sufficient condition for the surface to have cusps of that
/// length; the converse fails.
pub fn has_large_canonical_cusps(g: &RibbonGraph, min_len: usize) -> bool {
    lht_lengths(g).into_iter().all(|l| l >= min_len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon_graph::catalog::*;

    #[test]
    fn theta_one_face() {
        let d = lht_paths(&theta(false));
        assert_eq!(d.count(), 1);
        assert_eq!(d.cycles[0], vec![0, 4, 2, 3, 1, 5]);
        let s = surface_summary(&theta(false));
        assert_eq!((s.genus, s.cusps, s.cusp_lengths.clone()), (1, 1, vec![6]));
    }

    #[test]
    fn theta_three_faces() {
        let d = lht_paths(&theta(true));
        assert_eq!(d.cycles, vec![vec![0, 5], vec![1, 3], vec![2, 4]]);
        assert_eq!(surface_summary(&theta(true)).genus, 0);
    }

    #[test]
    fn cube_and_k4() {
        let cube = lht_paths(&cube_planar());
        assert_eq!(cube.lengths(), vec![4; 6]);
        let s = surface_summary(&cube_planar());
        assert_eq!((s.genus, s.cusps), (0, 6));

        let s = surface_summary(&k4_planar());
        assert_eq!(
            (s.genus, s.cusps, s.cusp_lengths.clone()),
            (0, 4, vec![3; 4])
        );
        assert!((s.area - 4.0 * PI).abs() < 1e-12);
        assert!(s.simple);
    }

    #[test]
    fn large_cusps() {
        let cube = cube_planar();
        assert!(has_large_canonical_cusps(&cube, 4));
        assert!(!has_large_canonical_cusps(&cube, 5));
        assert!(has_large_canonical_cusps(&loops_and_bridge(), 1));
        assert!(!has_large_canonical_cusps(&loops_and_bridge(), 2));
    }

    #[test]
    fn loops_and_bridge_topology() {
        // each loop bounds a length-1 cusp, the outside face runs loop, bridge, loop, bridge
        let s = surface_summary(&loops_and_bridge());
        assert_eq!(s.cusp_lengths, vec![1, 1, 4]);
        assert_eq!(s.genus, 0);
    }

    #[test]
    fn per_component_genus_is_summed() {
        let g = theta(false)
            .disjoint_union(&cube_planar())
            .disjoint_union(&theta(false));
        let s = surface_summary(&g);
        assert_eq!(s.components, 3);
        assert_eq!(
            s.per_component.iter().map(|c| c.genus).collect::<Vec<_>>(),
            vec![1, 0, 1]
        );
        assert_eq!(s.genus, 2);
        assert_eq!(s.cusps, 8);
    }

    #[test]
    fn mirror_keeps_genus() {
        for g in [
            theta(false),
            theta(true),
            cube_planar(),
            k4_planar(),
            loops_and_bridge(),
        ] {
            assert_eq!(
                surface_summary(&g).genus,
                surface_summary(&g.mirror()).genus
            );
        }
    }

    #[test]
    fn genus_formula_edge_cases() {
        assert_eq!(genus_of(1, 1), Some(1));
        assert_eq!(genus_of(1, 3), Some(0));
        assert_eq!(genus_of(1, 2), None);
        assert_eq!(genus_of(1, 5), None);
    }
}
