//! Color-criticality analysis: critical edges and vertices together with the
//! constrained colorings attached to them, and the pair-freeness test.

use crate::coloring::{self, Coloring};
use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_PATTERN_VERTICES};

/// An `r`-critical pattern: chromatic number `r + 1`, with at least one edge
/// whose deletion drops it to `r`.
#[derive(Clone, Debug)]
pub struct CriticalStructure {
    pub r: usize,
    pub critical_edges: Vec<(usize, usize)>,
    pub critical_vertices: Vec<usize>,
    /// For critical edge `uv`: all proper `r`-colorings of `F - uv` with
    /// both endpoints colored 1, parallel to `critical_edges`.
    pub colorings_per_edge: Vec<Vec<Coloring>>,
    /// For critical vertex `u`: all proper `r`-colorings of `F - u`
    /// (entry `u` is 0), parallel to `critical_vertices`.
    pub colorings_per_vertex: Vec<Vec<Coloring>>,
}

pub fn criticality(f: &Graph) -> Result<CriticalStructure> {
    let n = f.vertex_count();
    if n == 0 {
        return Err(Error::NotColorCritical("empty graph".into()));
    }
    if n > MAX_PATTERN_VERTICES {
        return Err(Error::SizeLimit {
            what: "pattern vertex count",
            limit: MAX_PATTERN_VERTICES,
            got: n,
        });
    }
    let chi = coloring::chromatic_number(f);
    if chi < 3 {
        return Err(Error::NotColorCritical(format!(
            "chromatic number is {chi}; patterns need chromatic number at least 3"
        )));
    }
    let r = chi - 1;
    let full = coloring::full_mask(f);

    let mut critical_edges = Vec::new();
    for (u, v) in f.edges() {
        if coloring::colorable(&f.without_edge(u, v), r) {
            critical_edges.push((u, v));
        }
    }
    if critical_edges.is_empty() {
        return Err(Error::NotColorCritical(format!(
            "chromatic number {chi}, but no edge deletion lowers it"
        )));
    }

    let mut critical_vertices = Vec::new();
    for v in 0..n {
        if coloring::colorable_masked(f, r, full & !(1 << v)) {
            critical_vertices.push(v);
        }
    }

    let colorings_per_edge = critical_edges
        .iter()
        .map(|&(u, v)| {
            coloring::proper_colorings(&f.without_edge(u, v), r, &[(u, 1), (v, 1)])
        })
        .collect();
    let colorings_per_vertex = critical_vertices
        .iter()
        .map(|&v| coloring::proper_colorings_masked(f, r, full & !(1 << v), &[]))
        .collect();

    let cs = CriticalStructure {
        r,
        critical_edges,
        critical_vertices,
        colorings_per_edge,
        colorings_per_vertex,
    };
    debug_assert!(cs
        .critical_vertices
        .iter()
        .all(|&v| f.degree(v) >= cs.r));
    Ok(cs)
}

/// Witness that a pattern is not pair-free: two distinct edges and a proper
/// `r`-coloring of the pattern minus both that leaves all four endpoints in
/// one color class.
#[derive(Clone, Debug)]
pub struct PairWitness {
    pub edges: ((usize, usize), (usize, usize)),
    pub coloring: Coloring,
}

/// A pattern is pair-free when no two distinct edges can simultaneously be
/// made monochromatic in the same class by a proper `r`-coloring of the
/// pattern minus both edges.
pub fn is_pair_free(f: &Graph, r: usize) -> (bool, Option<PairWitness>) {
    let edges = f.edges();
    for (i, &e1) in edges.iter().enumerate() {
        for &e2 in edges.iter().skip(i + 1) {
            let g = f.without_edge(e1.0, e1.1).without_edge(e2.0, e2.1);
            // pinning the shared class to color 1 is enough: classes are
            // interchangeable for existence
            let pins = [(e1.0, 1), (e1.1, 1), (e2.0, 1), (e2.1, 1)];
            if let Some(coloring) = coloring::first_coloring_masked(
                &g,
                r,
                coloring::full_mask(&g),
                &pins,
            ) {
                return (
                    false,
                    Some(PairWitness {
                        edges: (e1, e2),
                        coloring,
                    }),
                );
            }
        }
    }
    (true, None)
}
