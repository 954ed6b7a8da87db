use crate::error::{Error, Result};
use std::fmt;

/// Hosts are capped so an adjacency row fits one machine word.
pub const MAX_HOST_VERTICES: usize = 64;
/// Pattern graphs stay small enough for exhaustive recoloring tests.
pub const MAX_PATTERN_VERTICES: usize = 10;
/// Permutation searches (automorphisms, canonical forms) stop here.
pub const MAX_AUT_VERTICES: usize = 12;

/// Simple undirected graph on `{0, .., n-1}` with bitset adjacency rows.
///
/// Ordering and hashing are derived from `(n, rows)`, which makes the
/// lexicographically smallest witness of a search well defined.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_HOST_VERTICES {
            return Err(Error::SizeLimit {
                what: "vertex count",
                limit: MAX_HOST_VERTICES,
                got: n,
            });
        }
        Ok(Graph {
            n,
            rows: vec![0; n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adjacency rows must already be symmetric and loop-free.
    pub(crate) fn from_rows(n: usize, rows: Vec<u64>) -> Graph {
        debug_assert_eq!(rows.len(), n);
        Graph { n, rows }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn adj(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    /// Neighbourhood of `u` as a bitmask.
    pub fn row(&self, u: usize) -> u64 {
        self.rows[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].count_ones() as usize
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidHost(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidHost(format!("self-loop at {u}")));
        }
        if self.adj(u, v) {
            return Err(Error::InvalidHost(format!("duplicate edge ({u}, {v})")));
        }
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        Ok(())
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut bits = self.rows[u] >> (u + 1) << (u + 1);
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                out.push((u, v));
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.rows[u] &= !(1 << v);
        g.rows[v] &= !(1 << u);
        g
    }

    /// Deletes vertex `v`, relabelling the remaining vertices downwards.
    pub fn without_vertex(&self, v: usize) -> Graph {
        let mut g = Graph {
            n: self.n - 1,
            rows: vec![0; self.n - 1],
        };
        let map = |w: usize| if w < v { w } else { w - 1 };
        for (a, b) in self.edges() {
            if a != v && b != v {
                let (a, b) = (map(a), map(b));
                g.rows[a] |= 1 << b;
                g.rows[b] |= 1 << a;
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            let mut bits = frontier;
            while bits != 0 {
                let u = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= self.rows[u];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == self.n
    }

    /// Relabels vertices by `perm`, where `perm[i]` is the new label of `i`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph {
            n: self.n,
            rows: vec![0; self.n],
        };
        for (u, v) in self.edges() {
            let (a, b) = (perm[u], perm[v]);
            g.rows[a] |= 1 << b;
            g.rows[b] |= 1 << a;
        }
        g
    }

    // ---- edge-list format ------------------------------------------------

    /// Parses the `u v` edge-list format. Lines may carry `#` comments, and
    /// an optional leading line with a single integer pins the vertex count.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut forced_n: Option<usize> = None;
        let mut saw_data = false;
        let mut edges: Vec<(usize, usize, usize)> = Vec::new();
        let mut max_idx: Option<usize> = None;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.len() {
                1 if !saw_data => {
                    let n: usize = fields[0].parse().map_err(|_| Error::Parse {
                        line: lineno,
                        msg: format!("expected a vertex count, got {:?}", fields[0]),
                    })?;
                    forced_n = Some(n);
                    saw_data = true;
                }
                2 => {
                    saw_data = true;
                    let mut pair = [0usize; 2];
                    for (slot, f) in pair.iter_mut().zip(&fields) {
                        *slot = f.parse().map_err(|_| Error::Parse {
                            line: lineno,
                            msg: format!("expected a vertex index, got {f:?}"),
                        })?;
                    }
                    let (u, v) = (pair[0], pair[1]);
                    if u == v {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("self-loop at vertex {u}"),
                        });
                    }
                    max_idx = Some(max_idx.map_or(u.max(v), |m| m.max(u.max(v))));
                    edges.push((u, v, lineno));
                }
                _ => {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("expected \"u v\", got {line:?}"),
                    })
                }
            }
        }
        let implied = max_idx.map_or(0, |m| m + 1);
        let n = match forced_n {
            Some(n) if n < implied => {
                let bad = edges.iter().find(|&&(u, v, _)| u >= n || v >= n).unwrap();
                return Err(Error::Parse {
                    line: bad.2,
                    msg: format!("vertex index out of range (header says {n} vertices)"),
                });
            }
            Some(n) => n,
            None => implied,
        };
        let mut g = Graph::empty(n)?;
        for (u, v, lineno) in edges {
            g.add_edge(u, v).map_err(|e| Error::Parse {
                line: lineno,
                msg: e.to_string(),
            })?;
        }
        Ok(g)
    }

    /// Edge-list form with a leading vertex-count header; parses back to an
    /// identical graph.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    // ---- graph6 format ---------------------------------------------------

    pub fn parse_graph6(text: &str) -> Result<Graph> {
        let mut s = text.trim();
        if let Some(rest) = s.strip_prefix(">>graph6<<") {
            s = rest;
        }
        let bytes = s.as_bytes();
        if bytes.is_empty() {
            return Err(Error::Graph6 {
                pos: 0,
                msg: "empty input".into(),
            });
        }
        let check = |pos: usize, b: u8| -> Result<u64> {
            if !(63..=126).contains(&b) {
                return Err(Error::Graph6 {
                    pos,
                    msg: format!("byte {b} outside the graph6 alphabet"),
                });
            }
            Ok((b - 63) as u64)
        };
        let (n, at) = if bytes[0] == b'~' {
            if bytes.len() < 4 {
                return Err(Error::Graph6 {
                    pos: 0,
                    msg: "truncated long-form vertex count".into(),
                });
            }
            let mut n = 0u64;
            for (i, &b) in bytes[1..4].iter().enumerate() {
                n = n << 6 | check(1 + i, b)?;
            }
            (n as usize, 4)
        } else {
            (check(0, bytes[0])? as usize, 1)
        };
        if n > MAX_HOST_VERTICES {
            return Err(Error::SizeLimit {
                what: "vertex count",
                limit: MAX_HOST_VERTICES,
                got: n,
            });
        }
        let nbits = n * (n.max(1) - 1) / 2;
        let nbytes = nbits.div_ceil(6);
        if bytes.len() != at + nbytes {
            return Err(Error::Graph6 {
                pos: bytes.len().min(at + nbytes),
                msg: format!(
                    "expected {} data bytes for {} vertices, got {}",
                    nbytes,
                    n,
                    bytes.len() - at
                ),
            });
        }
        let mut g = Graph::empty(n)?;
        let mut bit = 0usize;
        for col in 1..n {
            for row in 0..col {
                let byte = at + bit / 6;
                let val = check(byte, bytes[byte])?;
                if val >> (5 - bit % 6) & 1 == 1 {
                    g.rows[row] |= 1 << col;
                    g.rows[col] |= 1 << row;
                }
                bit += 1;
            }
        }
        // padding bits must be zero for a bit-exact round trip
        while bit < nbytes * 6 {
            let byte = at + bit / 6;
            if check(byte, bytes[byte])? >> (5 - bit % 6) & 1 == 1 {
                return Err(Error::Graph6 {
                    pos: byte,
                    msg: "nonzero padding bit".into(),
                });
            }
            bit += 1;
        }
        Ok(g)
    }

    pub fn to_graph6(&self) -> String {
        let mut chars: Vec<u8> = Vec::new();
        if self.n <= 62 {
            chars.push(self.n as u8 + 63);
        } else {
            chars.push(b'~');
            for shift in [12, 6, 0] {
                chars.push((self.n >> shift & 0x3f) as u8 + 63);
            }
        }
        let mut acc = 0u8;
        let mut used = 0u8;
        for col in 1..self.n {
            for row in 0..col {
                acc = acc << 1 | self.adj(row, col) as u8;
                used += 1;
                if used == 6 {
                    chars.push(acc + 63);
                    acc = 0;
                    used = 0;
                }
            }
        }
        if used > 0 {
            chars.push((acc << (6 - used)) + 63);
        }
        String::from_utf8(chars).unwrap()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_parses_triangle() {
        let g = Graph::parse_edge_list("0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.adj(0, 2) && g.adj(2, 0));
    }

    #[test]
    fn edge_list_header_and_comments() {
        let g = Graph::parse_edge_list("# a path plus an isolated vertex\n5\n0 1\n1 2\n").unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn edge_list_rejects_duplicates_and_loops() {
        let err = Graph::parse_edge_list("0 1\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = Graph::parse_edge_list("3 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = Graph::parse_edge_list("2\n0 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::parse_edge_list("7\n0 1\n2 5\n").unwrap();
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn graph6_known_encoding() {
        // 5-vertex graph with edges 02 04 13 34, from the format's reference data
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(g.to_graph6(), "DQc");
        assert_eq!(Graph::parse_graph6("DQc").unwrap(), g);
    }

    #[test]
    fn graph6_rejects_bad_padding() {
        // 'DQd' flips a padding bit of 'DQc'
        assert!(Graph::parse_graph6("DQd").is_err());
    }

    #[test]
    fn graph6_header_accepted() {
        let g = Graph::parse_graph6(">>graph6<<DQc").unwrap();
        assert_eq!(g.vertex_count(), 5);
    }

    #[test]
    fn without_vertex_relabels() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = g.without_vertex(1);
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edges(), vec![(1, 2)]);
    }
}
