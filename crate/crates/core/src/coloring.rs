//! Exact colorings. Colorings are labeled: colors `1..=r` are
//! distinguishable and enumerations are never quotiented by color swaps.

use crate::graph::Graph;

/// A (partial) assignment of colors `1..=r`; `0` marks a vertex outside the
/// colored subgraph (e.g. a deleted vertex).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coloring(pub Vec<u8>);

impl Coloring {
    pub fn color(&self, v: usize) -> u8 {
        self.0[v]
    }

    /// Number of vertices in `mask` carrying color `c`.
    pub fn class_size(&self, c: u8, mask: u64) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|&(v, &col)| mask >> v & 1 == 1 && col == c)
            .count()
    }
}

struct Search<'a> {
    g: &'a Graph,
    r: u8,
    active: u64,
    order: Vec<usize>,
    assignment: Vec<u8>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, out: &mut dyn FnMut(&[u8]) -> bool) -> bool {
        if depth == self.order.len() {
            return out(&self.assignment);
        }
        let v = self.order[depth];
        if self.assignment[v] != 0 {
            if self.consistent(v) {
                return self.run(depth + 1, out);
            }
            return true;
        }
        for c in 1..=self.r {
            self.assignment[v] = c;
            if self.consistent(v) && !self.run(depth + 1, out) {
                return false;
            }
        }
        self.assignment[v] = 0;
        true
    }

    fn consistent(&self, v: usize) -> bool {
        let mut nbrs = self.g.row(v) & self.active;
        while nbrs != 0 {
            let u = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            if self.assignment[u] != 0 && self.assignment[u] == self.assignment[v] {
                return false;
            }
        }
        true
    }
}

/// All proper `r`-colorings of the subgraph induced on `active`, honoring the
/// pinned `(vertex, color)` pairs, in lexicographic order of the assignment
/// vector. Vertices outside `active` stay 0.
pub fn proper_colorings_masked(
    g: &Graph,
    r: usize,
    active: u64,
    pins: &[(usize, u8)],
) -> Vec<Coloring> {
    let mut out = Vec::new();
    enumerate_colorings(g, r, active, pins, &mut |a| {
        out.push(Coloring(a.to_vec()));
        true
    });
    out
}

pub fn proper_colorings(g: &Graph, r: usize, pins: &[(usize, u8)]) -> Vec<Coloring> {
    proper_colorings_masked(g, r, full_mask(g), pins)
}

/// First proper coloring in lexicographic order, if any.
pub fn first_coloring_masked(
    g: &Graph,
    r: usize,
    active: u64,
    pins: &[(usize, u8)],
) -> Option<Coloring> {
    let mut found = None;
    enumerate_colorings(g, r, active, pins, &mut |a| {
        found = Some(Coloring(a.to_vec()));
        false
    });
    found
}

fn enumerate_colorings(
    g: &Graph,
    r: usize,
    active: u64,
    pins: &[(usize, u8)],
    visit: &mut dyn FnMut(&[u8]) -> bool,
) {
    assert!(r >= 1 && r <= u8::MAX as usize);
    let n = g.vertex_count();
    let mut assignment = vec![0u8; n];
    for &(v, c) in pins {
        assert!(v < n && active >> v & 1 == 1, "pin on inactive vertex {v}");
        assert!(c >= 1 && c as usize <= r, "pin color {c} out of range");
        if assignment[v] != 0 && assignment[v] != c {
            return; // contradictory pins: nothing to enumerate
        }
        assignment[v] = c;
    }
    let order: Vec<usize> = (0..n).filter(|&v| active >> v & 1 == 1).collect();
    let mut search = Search {
        g,
        r: r as u8,
        active,
        order,
        assignment,
    };
    search.run(0, visit);
}

pub fn full_mask(g: &Graph) -> u64 {
    if g.vertex_count() == 64 {
        u64::MAX
    } else {
        (1u64 << g.vertex_count()) - 1
    }
}

/// Is the subgraph on `active` properly colorable with `k` colors?
/// Symmetry-broken backtracking: a vertex may only open one new color.
pub fn colorable_masked(g: &Graph, k: usize, active: u64) -> bool {
    let order: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| active >> v & 1 == 1)
        .collect();
    let mut assignment = vec![0u8; g.vertex_count()];
    fn rec(
        g: &Graph,
        k: u8,
        active: u64,
        order: &[usize],
        depth: usize,
        used: u8,
        assignment: &mut [u8],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        let mut forbidden = 0u64; // bit c set when color c+1 clashes
        let mut nbrs = g.row(v) & active;
        while nbrs != 0 {
            let u = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            if assignment[u] != 0 {
                forbidden |= 1 << (assignment[u] - 1);
            }
        }
        let top = k.min(used + 1);
        for c in 1..=top {
            if forbidden >> (c - 1) & 1 == 1 {
                continue;
            }
            assignment[v] = c;
            if rec(g, k, active, order, depth + 1, used.max(c), assignment) {
                return true;
            }
        }
        assignment[v] = 0;
        false
    }
    rec(g, k as u8, active, &order, 0, 0, &mut assignment)
}

pub fn colorable(g: &Graph, k: usize) -> bool {
    colorable_masked(g, k, full_mask(g))
}

/// Exact chromatic number by ascending exhaustive search from a greedy
/// clique lower bound.
pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n == 0 || g.edge_count() == 0 {
        return 1;
    }
    let mut k = greedy_clique(g).max(2);
    loop {
        if colorable(g, k) {
            return k;
        }
        k += 1;
    }
}

fn greedy_clique(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut best = 1;
    for &start in &order {
        let mut clique = vec![start];
        let mut common = g.row(start);
        for &v in &order {
            if common >> v & 1 == 1 {
                clique.push(v);
                common &= g.row(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns;

    #[test]
    fn chromatic_basics() {
        assert_eq!(chromatic_number(&patterns::complete(3)), 3);
        assert_eq!(chromatic_number(&patterns::cycle(5)), 3);
        assert_eq!(chromatic_number(&patterns::cycle(6)), 2);
        assert_eq!(chromatic_number(&patterns::complete(6)), 6);
        assert_eq!(chromatic_number(&Graph::empty(4).unwrap()), 1);
    }

    use crate::graph::Graph;

    #[test]
    fn single_edge_two_colorings() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let cols = proper_colorings(&g, 2, &[]);
        assert_eq!(cols.len(), 2);
        assert_eq!(cols[0].0, vec![1, 2]); // lexicographic order
    }

    #[test]
    fn pinned_triangle_minus_edge() {
        // K_3 - {0,1} with both endpoints pinned to color 1: vertex 2 is forced
        let g = patterns::complete(3).without_edge(0, 1);
        let cols = proper_colorings(&g, 2, &[(0, 1), (1, 1)]);
        assert_eq!(cols.len(), 1);
        assert_eq!(cols[0].0, vec![1, 1, 2]);
    }

    #[test]
    fn pinned_k4_minus_edge() {
        // K_4 - {0,1}, pins color(0)=color(1)=1, r=3: the two remaining
        // vertices take colors {2,3} in either order
        let g = patterns::complete(4).without_edge(0, 1);
        let cols = proper_colorings(&g, 3, &[(0, 1), (1, 1)]);
        assert_eq!(cols.len(), 2);
    }

    #[test]
    fn masked_enumeration_skips_deleted_vertex() {
        let g = patterns::complete(3);
        let cols = proper_colorings_masked(&g, 2, 0b011, &[]);
        assert_eq!(cols.len(), 2);
        assert!(cols.iter().all(|c| c.0[2] == 0));
    }
}
