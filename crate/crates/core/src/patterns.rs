//! Constructors for the pattern graphs and hosts that recur throughout the
//! test catalog, plus name-based lookup for the CLI.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn complete(k: usize) -> Graph {
    let mut g = Graph::empty(k).unwrap();
    for u in 0..k {
        for v in u + 1..k {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

pub fn cycle(k: usize) -> Graph {
    assert!(k >= 3, "cycle needs at least 3 vertices");
    let mut g = Graph::empty(k).unwrap();
    for u in 0..k {
        g.add_edge(u, (u + 1) % k).unwrap();
    }
    g
}

/// `K_k` minus the edge `{0, 1}`.
pub fn complete_minus_edge(k: usize) -> Graph {
    assert!(k >= 3);
    complete(k).without_edge(0, 1)
}

pub fn complete_multipartite(sizes: &[usize]) -> Graph {
    let n: usize = sizes.iter().sum();
    let mut g = Graph::empty(n).unwrap();
    let mut starts = Vec::with_capacity(sizes.len());
    let mut at = 0;
    for &s in sizes {
        starts.push(at);
        at += s;
    }
    for (i, &si) in sizes.iter().enumerate() {
        for (j, &sj) in sizes.iter().enumerate().skip(i + 1) {
            for a in 0..si {
                for b in 0..sj {
                    g.add_edge(starts[i] + a, starts[j] + b).unwrap();
                }
            }
        }
    }
    g
}

/// Part sizes of the balanced complete `r`-partite graph on `n` vertices,
/// largest parts first.
pub fn turan_partition(r: usize, n: usize) -> Vec<usize> {
    let big = n % r;
    (0..r)
        .map(|i| n / r + usize::from(i < big))
        .collect()
}

pub fn turan(r: usize, n: usize) -> Graph {
    complete_multipartite(&turan_partition(r, n))
}

pub fn turan_edge_count(r: usize, n: usize) -> usize {
    let intra: usize = turan_partition(r, n).iter().map(|&s| s * (s - 1) / 2).sum();
    n * (n - 1) / 2 - intra
}

/// `K_{s,t}` plus one edge inside the part of size `s`. Vertices `0..s` form
/// that part; the extra edge is `{0, 1}`.
pub fn complete_bipartite_plus_edge(s: usize, t: usize) -> Graph {
    assert!(s >= 2 && t >= 1);
    let mut g = complete_multipartite(&[s, t]);
    g.add_edge(0, 1).unwrap();
    g
}

/// `K_{3,3}` plus an edge in one part plus a pendant vertex.
///
/// Vertices 0, 1, 2 form one side, 3, 4, 5 the other; the extra edge is
/// `{0, 1}` and vertex 6 hangs off vertex 2. This 7-vertex graph is
/// 2-critical with `{0, 1}` as its unique critical edge, and it is the
/// standard witness that the residue-0 optimality threshold can exceed
/// min of the two generic bounds.
pub fn k33_plus_edge_pendant() -> Graph {
    let mut g = complete_multipartite(&[3, 3]);
    g.add_edge(0, 1).unwrap();
    let mut h = Graph::empty(7).unwrap();
    for (u, v) in g.edges() {
        h.add_edge(u, v).unwrap();
    }
    h.add_edge(2, 6).unwrap();
    h
}

pub fn petersen() -> Graph {
    let mut g = Graph::empty(10).unwrap();
    for u in 0..5 {
        g.add_edge(u, (u + 1) % 5).unwrap();
        g.add_edge(u, u + 5).unwrap();
        g.add_edge(u + 5, (u + 2) % 5 + 5).unwrap();
    }
    g
}

/// Families the report recognises and annotates with their closed-form
/// constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternFamily {
    Clique(usize),
    OddCycle(usize),
    CliqueMinusEdge(usize),
    BipartitePlusEdge(usize, usize),
    K33EdgePendant,
}

impl PatternFamily {
    pub fn name(&self) -> String {
        match *self {
            PatternFamily::Clique(k) => format!("K{k}"),
            PatternFamily::OddCycle(k) => format!("C{k}"),
            PatternFamily::CliqueMinusEdge(k) => format!("K{k}-e"),
            PatternFamily::BipartitePlusEdge(s, t) => format!("K{s},{t}+"),
            PatternFamily::K33EdgePendant => "K3,3+ep".into(),
        }
    }

    pub fn build(&self) -> Graph {
        match *self {
            PatternFamily::Clique(k) => complete(k),
            PatternFamily::OddCycle(k) => cycle(k),
            PatternFamily::CliqueMinusEdge(k) => complete_minus_edge(k),
            PatternFamily::BipartitePlusEdge(s, t) => complete_bipartite_plus_edge(s, t),
            PatternFamily::K33EdgePendant => k33_plus_edge_pendant(),
        }
    }
}

/// All catalog families isomorphic to `g` (e.g. `K4-e` also appears as
/// `K2,2+`). Matching is by canonical form, so it is label independent.
pub fn recognize(g: &Graph) -> Vec<PatternFamily> {
    let n = g.vertex_count();
    if n > 10 {
        return Vec::new();
    }
    let canon = match crate::autom::canonical_form(g) {
        Ok(c) => c,
        Err(_) => return Vec::new(),
    };
    let mut candidates: Vec<PatternFamily> = Vec::new();
    for k in 3..=10 {
        candidates.push(PatternFamily::Clique(k));
        candidates.push(PatternFamily::CliqueMinusEdge(k));
        if k % 2 == 1 {
            candidates.push(PatternFamily::OddCycle(k));
        }
    }
    for s in 2..=8 {
        for t in 2..=8 {
            if s + t <= 10 {
                candidates.push(PatternFamily::BipartitePlusEdge(s, t));
            }
        }
    }
    candidates.push(PatternFamily::K33EdgePendant);
    candidates
        .into_iter()
        .filter(|fam| {
            let h = fam.build();
            h.vertex_count() == n
                && h.edge_count() == g.edge_count()
                && crate::autom::canonical_form(&h).map(|c| c == canon).unwrap_or(false)
        })
        .collect()
}

/// Looks up a pattern by catalog name: `K5`, `C7`, `K6-e`, `K3,4+`,
/// `K3,3+ep`, `petersen`.
pub fn by_name(name: &str) -> Result<Graph> {
    let bad = || Error::Parse {
        line: 1,
        msg: format!("unknown pattern name {name:?}"),
    };
    let s = name.trim();
    if s.eq_ignore_ascii_case("petersen") {
        return Ok(petersen());
    }
    if s.eq_ignore_ascii_case("K3,3+ep") {
        return Ok(k33_plus_edge_pendant());
    }
    if let Some(rest) = s.strip_prefix('C').or_else(|| s.strip_prefix('c')) {
        let k: usize = rest.parse().map_err(|_| bad())?;
        if k < 3 {
            return Err(bad());
        }
        return Ok(cycle(k));
    }
    if let Some(rest) = s.strip_prefix('K').or_else(|| s.strip_prefix('k')) {
        if let Some(body) = rest.strip_suffix('+') {
            let parts: Vec<&str> = body.split(',').collect();
            if parts.len() == 2 {
                let s1: usize = parts[0].parse().map_err(|_| bad())?;
                let t1: usize = parts[1].parse().map_err(|_| bad())?;
                if s1 >= 2 && t1 >= 1 {
                    return Ok(complete_bipartite_plus_edge(s1, t1));
                }
            }
            return Err(bad());
        }
        if let Some(body) = rest.strip_suffix("-e") {
            let k: usize = body.parse().map_err(|_| bad())?;
            if k >= 3 {
                return Ok(complete_minus_edge(k));
            }
            return Err(bad());
        }
        if let Ok(k) = rest.parse::<usize>() {
            if k >= 1 {
                return Ok(complete(k));
            }
        }
        return Err(bad());
    }
    Err(bad())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turan_sizes() {
        assert_eq!(turan_partition(2, 7), vec![4, 3]);
        assert_eq!(turan_partition(3, 8), vec![3, 3, 2]);
        assert_eq!(turan_edge_count(2, 6), 9);
        assert_eq!(turan_edge_count(2, 8), 16);
        assert_eq!(turan_edge_count(3, 9), 27);
    }

    #[test]
    fn named_lookup() {
        assert_eq!(by_name("K4").unwrap(), complete(4));
        assert_eq!(by_name("C5").unwrap(), cycle(5));
        assert_eq!(by_name("K4-e").unwrap(), complete_minus_edge(4));
        assert_eq!(by_name("K3,4+").unwrap(), complete_bipartite_plus_edge(3, 4));
        assert!(by_name("Q3").is_err());
    }

    #[test]
    fn pendant_graph_shape() {
        let g = k33_plus_edge_pendant();
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 11);
        assert_eq!(g.degree(6), 1);
    }
}
