//! Exact subgraph-copy counting and the structured hosts the invariants are
//! checked against: complete multipartite graphs plus intra-part edges, with
//! an optional attached vertex of prescribed per-part degrees.

use crate::autom::automorphism_count;
use crate::critical::CriticalStructure;
use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_HOST_VERTICES, MAX_PATTERN_VERTICES};

/// Part sizes `(n_1, .., n_r)` of a complete multipartite host.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    pub sizes: Vec<usize>,
}

impl Partition {
    pub fn new(sizes: Vec<usize>) -> Partition {
        Partition { sizes }
    }

    /// Near-equal sizes, largest parts first.
    pub fn balanced(n: usize, r: usize) -> Partition {
        Partition {
            sizes: crate::patterns::turan_partition(r, n),
        }
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn r(&self) -> usize {
        self.sizes.len()
    }

    /// Half-open vertex ranges of each part when laid out contiguously.
    pub fn ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::with_capacity(self.sizes.len());
        let mut at = 0;
        for &s in &self.sizes {
            out.push(at..at + s);
            at += s;
        }
        out
    }

    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.ranges().iter().position(|r| r.contains(&v))
    }
}

/// A complete multipartite host plus optional intra-part edges and an
/// optional attached vertex with `d_i` neighbors in part `i`.
#[derive(Clone, Debug)]
pub struct HostSpec {
    pub partition: Partition,
    /// Extra edges, as global vertex indices; both ends must lie in the
    /// same part.
    pub extra_edges: Vec<(usize, usize)>,
    pub attached: Option<Vec<usize>>,
}

/// Builds the host graph: parts laid out contiguously in declared order, the
/// attached vertex last and adjacent to the first `d_i` vertices of part `i`.
pub fn build_host(spec: &HostSpec) -> Result<Graph> {
    let base = spec.partition.total();
    let n = base + usize::from(spec.attached.is_some());
    if n > MAX_HOST_VERTICES {
        return Err(Error::SizeLimit {
            what: "host vertex count",
            limit: MAX_HOST_VERTICES,
            got: n,
        });
    }
    let mut g = Graph::empty(n)?;
    let ranges = spec.partition.ranges();
    for (i, ri) in ranges.iter().enumerate() {
        for rj in ranges.iter().skip(i + 1) {
            for u in ri.clone() {
                for v in rj.clone() {
                    g.add_edge(u, v)?;
                }
            }
        }
    }
    for &(u, v) in &spec.extra_edges {
        let pu = spec.partition.part_of(u);
        let pv = spec.partition.part_of(v);
        match (pu, pv) {
            (Some(a), Some(b)) if a == b => {}
            _ => {
                return Err(Error::InvalidHost(format!(
                    "extra edge ({u}, {v}) does not lie inside a single part"
                )))
            }
        }
        g.add_edge(u, v)
            .map_err(|e| Error::InvalidHost(e.to_string()))?;
    }
    if let Some(d) = &spec.attached {
        if d.len() != spec.partition.r() {
            return Err(Error::InvalidHost(format!(
                "degree list has {} entries for {} parts",
                d.len(),
                spec.partition.r()
            )));
        }
        let z = base;
        for (i, (&di, range)) in d.iter().zip(&ranges).enumerate() {
            if di > range.len() {
                return Err(Error::InvalidHost(format!(
                    "attached degree {di} exceeds part {i} of size {}",
                    range.len()
                )));
            }
            for v in range.clone().take(di) {
                g.add_edge(z, v)?;
            }
        }
    }
    Ok(g)
}

fn check_pattern(f: &Graph) -> Result<()> {
    if f.vertex_count() > MAX_PATTERN_VERTICES {
        return Err(Error::SizeLimit {
            what: "pattern vertex count",
            limit: MAX_PATTERN_VERTICES,
            got: f.vertex_count(),
        });
    }
    Ok(())
}

/// Search order for pattern vertices: highest degree first, then preferring
/// vertices adjacent to one already placed. The result never depends on the
/// order; it only prunes faster.
pub fn default_order(f: &Graph) -> Vec<usize> {
    let n = f.vertex_count();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| {
                let connected = (f.row(v) & placed) != 0 || placed == 0;
                (connected, f.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        order.push(next);
        placed |= 1 << next;
    }
    order
}

/// Number of edge-preserving injections of `f` into `g` following `order`,
/// stopping once `cap` is reached.
pub fn count_injections_with_order(f: &Graph, g: &Graph, order: &[usize], cap: u64) -> u64 {
    let nf = f.vertex_count();
    let ng = g.vertex_count();
    if nf > ng {
        return 0;
    }
    if nf == 0 {
        return 1.min(cap);
    }
    let host_all = crate::coloring::full_mask(g);
    // earlier_nbrs[k] = positions in `order` before k that are f-adjacent to order[k]
    let mut earlier: Vec<Vec<usize>> = vec![Vec::new(); nf];
    for k in 0..nf {
        for j in 0..k {
            if f.adj(order[j], order[k]) {
                earlier[k].push(j);
            }
        }
    }
    let fdeg: Vec<usize> = order.iter().map(|&v| f.degree(v)).collect();
    struct Ctx<'a> {
        g: &'a Graph,
        earlier: &'a [Vec<usize>],
        fdeg: &'a [usize],
        host_all: u64,
        cap: u64,
        count: u64,
    }
    fn rec(ctx: &mut Ctx, image: &mut [usize], used: u64, k: usize) {
        if ctx.count >= ctx.cap {
            return;
        }
        if k == ctx.earlier.len() {
            ctx.count += 1;
            return;
        }
        let mut allowed = ctx.host_all & !used;
        for &j in &ctx.earlier[k] {
            allowed &= ctx.g.row(image[j]);
        }
        while allowed != 0 {
            let w = allowed.trailing_zeros() as usize;
            allowed &= allowed - 1;
            if ctx.g.degree(w) < ctx.fdeg[k] {
                continue;
            }
            image[k] = w;
            rec(ctx, image, used | 1 << w, k + 1);
            if ctx.count >= ctx.cap {
                return;
            }
        }
    }
    let mut image = vec![0usize; nf];
    let mut ctx = Ctx {
        g,
        earlier: &earlier,
        fdeg: &fdeg,
        host_all,
        cap,
        count: 0,
    };
    rec(&mut ctx, &mut image, 0, 0);
    ctx.count
}

fn is_triangle(f: &Graph) -> bool {
    f.vertex_count() == 3 && f.edge_count() == 3
}

fn has_triangle(g: &Graph) -> bool {
    let n = g.vertex_count();
    for u in 0..n {
        let mut bits = g.row(u) >> (u + 1) << (u + 1);
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if g.row(u) & g.row(v) != 0 {
                return true;
            }
        }
    }
    false
}

fn triangle_count(g: &Graph) -> u64 {
    let n = g.vertex_count();
    let mut total = 0u64;
    for u in 0..n {
        let mut bits = g.row(u) >> (u + 1) << (u + 1);
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            total += (g.row(u) & g.row(v)).count_ones() as u64;
        }
    }
    total / 3
}

/// Precompiled pattern for repeated counting against many hosts: the
/// automorphism count and search order are fixed once.
pub struct PatternCounter {
    f: Graph,
    aut: u64,
    order: Vec<usize>,
    triangle: bool,
}

impl PatternCounter {
    pub fn new(f: &Graph) -> Result<PatternCounter> {
        check_pattern(f)?;
        Ok(PatternCounter {
            f: f.clone(),
            aut: automorphism_count(f)?,
            order: default_order(f),
            triangle: is_triangle(f),
        })
    }

    pub fn count_capped(&self, g: &Graph, cap: u64) -> Result<u64> {
        if self.triangle {
            if cap == 1 {
                return Ok(has_triangle(g) as u64);
            }
            return Ok(triangle_count(g).min(cap));
        }
        if cap == 0 {
            return Ok(0);
        }
        let inj_cap = cap.saturating_mul(self.aut);
        let inj = count_injections_with_order(&self.f, g, &self.order, inj_cap);
        if inj >= inj_cap {
            return Ok(cap);
        }
        if !inj.is_multiple_of(self.aut) {
            return Err(Error::Internal(format!(
                "injection count {inj} not divisible by |Aut| = {}",
                self.aut
            )));
        }
        Ok(inj / self.aut)
    }

    pub fn count(&self, g: &Graph) -> Result<u64> {
        self.count_capped(g, u64::MAX)
    }
}

/// Number of subgraphs of `g` isomorphic to `f`: edge-preserving injections
/// divided by `|Aut(f)|`.
pub fn count_copies(f: &Graph, g: &Graph) -> Result<u64> {
    count_copies_capped(f, g, u64::MAX)
}

/// Copy count, exact below `cap`; returns `cap` as soon as the count is
/// known to reach it.
pub fn count_copies_capped(f: &Graph, g: &Graph, cap: u64) -> Result<u64> {
    check_pattern(f)?;
    if is_triangle(f) {
        return Ok(triangle_count(g).min(cap));
    }
    let aut = automorphism_count(f)?;
    if cap == 0 {
        return Ok(0);
    }
    let inj_cap = cap.saturating_mul(aut);
    let order = default_order(f);
    let inj = count_injections_with_order(f, g, &order, inj_cap);
    if inj >= inj_cap {
        return Ok(cap);
    }
    if !inj.is_multiple_of(aut) {
        return Err(Error::Internal(format!(
            "injection count {inj} not divisible by |Aut| = {aut}"
        )));
    }
    Ok(inj / aut)
}

/// Copies of `f` whose vertex set contains `v`.
pub fn count_copies_at_vertex(f: &Graph, g: &Graph, v: usize) -> Result<u64> {
    let all = count_copies(f, g)?;
    let rest = count_copies(f, &g.without_vertex(v))?;
    Ok(all - rest)
}

fn falling(base: i128, k: usize) -> i128 {
    let mut acc = 1i128;
    for j in 0..k as i128 {
        acc *= base - j;
    }
    acc
}

/// Closed falling-factorial route for the copies of `f` through the
/// attached vertex of `K(V_1, .., V_r) + z`, summing over critical vertices
/// and their colorings. [`count_with_attached_vertex`] pairs this with
/// brute enumeration; hosts too large to enumerate can use this route
/// directly once the pairing has been exercised at small sizes.
pub fn attached_count_formula(
    f: &Graph,
    cs: &CriticalStructure,
    partition: &Partition,
    d: &[usize],
) -> Result<u64> {
    check_pattern(f)?;
    let r = cs.r;
    if partition.r() != r || d.len() != r {
        return Err(Error::InvalidHost(format!(
            "partition/degree arity must match r = {r}"
        )));
    }
    for (i, (&di, &ni)) in d.iter().zip(&partition.sizes).enumerate() {
        if di > ni {
            return Err(Error::InvalidHost(format!(
                "d_{} = {di} exceeds part size {ni}",
                i + 1
            )));
        }
    }
    let aut = automorphism_count(f)? as i128;
    let mut total = 0i128;
    for (idx, &u) in cs.critical_vertices.iter().enumerate() {
        for coloring in &cs.colorings_per_vertex[idx] {
            let mut term = 1i128;
            for i in 0..r {
                let color = (i + 1) as u8;
                let mut y = 0usize;
                let mut x = 0usize;
                for w in 0..f.vertex_count() {
                    if w == u || coloring.color(w) != color {
                        continue;
                    }
                    if f.adj(u, w) {
                        y += 1;
                    } else {
                        x += 1;
                    }
                }
                term *= falling(partition.sizes[i] as i128 - y as i128, x);
                term *= falling(d[i] as i128, y);
            }
            total += term;
        }
    }
    if total % aut != 0 {
        return Err(Error::Internal(format!(
            "attached-vertex sum {total} not divisible by |Aut| = {aut}"
        )));
    }
    Ok((total / aut) as u64)
}

/// Copies of `f` through the attached vertex of the host
/// `K(V_1, .., V_r) + z` where `z` has `d_i` neighbors in part `i`.
///
/// Evaluated both by the closed falling-factorial formula over critical
/// vertices and their colorings, and by brute enumeration on the concrete
/// host; the two must agree exactly.
pub fn count_with_attached_vertex(
    f: &Graph,
    cs: &CriticalStructure,
    partition: &Partition,
    d: &[usize],
) -> Result<u64> {
    let formula = attached_count_formula(f, cs, partition, d)?;
    let host = build_host(&HostSpec {
        partition: partition.clone(),
        extra_edges: Vec::new(),
        attached: Some(d.to_vec()),
    })?;
    let brute = count_copies_at_vertex(f, &host, partition.total())?;
    if formula != brute {
        return Err(Error::Internal(format!(
            "attached-vertex count disagrees: formula {formula}, enumeration {brute}"
        )));
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::criticality;
    use crate::patterns;

    #[test]
    fn triangles_in_k4() {
        assert_eq!(
            count_copies(&patterns::complete(3), &patterns::complete(4)).unwrap(),
            4
        );
    }

    #[test]
    fn triangle_at_vertex_in_k4() {
        let k3 = patterns::complete(3);
        let k4 = patterns::complete(4);
        for v in 0..4 {
            assert_eq!(count_copies_at_vertex(&k3, &k4, v).unwrap(), 3);
        }
    }

    #[test]
    fn turan_graph_is_triangle_free() {
        let k3 = patterns::complete(3);
        let t = patterns::turan(2, 6);
        assert_eq!(count_copies(&k3, &t).unwrap(), 0);
        for v in 0..6 {
            assert_eq!(count_copies_at_vertex(&k3, &t, v).unwrap(), 0);
        }
    }

    #[test]
    fn turan_plus_edge_triangles() {
        // each added edge closes with every vertex of the opposite part
        let mut g = patterns::turan(2, 6);
        g.add_edge(0, 1).unwrap();
        let k3 = patterns::complete(3);
        assert_eq!(count_copies(&k3, &g).unwrap(), 3);
        assert_eq!(count_copies_at_vertex(&k3, &g, 0).unwrap(), 3);
    }

    #[test]
    fn build_host_examples() {
        // (2,2) with no extras is the 4-cycle
        let c4 = build_host(&HostSpec {
            partition: Partition::new(vec![2, 2]),
            extra_edges: Vec::new(),
            attached: None,
        })
        .unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert_eq!(
            crate::autom::canonical_form(&c4).unwrap(),
            crate::autom::canonical_form(&patterns::cycle(4)).unwrap()
        );

        // (3,3) plus one edge in part 1 holds exactly 3 triangles
        let h = build_host(&HostSpec {
            partition: Partition::new(vec![3, 3]),
            extra_edges: vec![(0, 1)],
            attached: None,
        })
        .unwrap();
        assert_eq!(h.edge_count(), 10);
        assert_eq!(count_copies(&patterns::complete(3), &h).unwrap(), 3);

        // (2,2,2) with attached degrees (0,2,2): no K_4 anywhere
        let h = build_host(&HostSpec {
            partition: Partition::new(vec![2, 2, 2]),
            extra_edges: Vec::new(),
            attached: Some(vec![0, 2, 2]),
        })
        .unwrap();
        assert_eq!(h.vertex_count(), 7);
        assert_eq!(count_copies(&patterns::complete(4), &h).unwrap(), 0);
    }

    #[test]
    fn build_host_rejects_cross_part_extras() {
        let err = build_host(&HostSpec {
            partition: Partition::new(vec![2, 2]),
            extra_edges: vec![(0, 2)],
            attached: None,
        });
        assert!(err.is_err());
    }

    #[test]
    fn attached_vertex_counts() {
        let k3 = patterns::complete(3);
        let cs = criticality(&k3).unwrap();
        assert_eq!(
            count_with_attached_vertex(&k3, &cs, &Partition::new(vec![3, 3]), &[3, 3]).unwrap(),
            9
        );
        assert_eq!(
            count_with_attached_vertex(&k3, &cs, &Partition::new(vec![3, 3]), &[0, 3]).unwrap(),
            0
        );
    }

    #[test]
    fn order_does_not_change_counts() {
        let f = patterns::complete_minus_edge(4);
        let mut g = patterns::turan(2, 7);
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 2).unwrap();
        let aut = automorphism_count(&f).unwrap();
        let base = count_injections_with_order(&f, &g, &default_order(&f), u64::MAX);
        // forced alternative orders must agree
        for order in [vec![0, 1, 2, 3], vec![3, 2, 1, 0], vec![2, 0, 3, 1]] {
            assert_eq!(
                count_injections_with_order(&f, &g, &order, u64::MAX),
                base
            );
        }
        assert_eq!(base % aut, 0);
    }
}
