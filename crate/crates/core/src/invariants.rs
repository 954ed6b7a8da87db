//! The exact symbolic layer: the copy-counting polynomial
//! `c(n_1, .., n_r; F)` of the Turán-plus-one-edge host, the density
//! polynomial `P_F`, and the constants derived from them.

use crate::autom::automorphism_count;
use crate::critical::CriticalStructure;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::{rat, Rat, RatPoly};
use num::ToPrimitive;
use num_traits::{Signed, Zero};

/// Exact data attached to one pattern graph.
#[derive(Clone, Debug)]
pub struct ExactInvariants {
    pub r: usize,
    pub f: usize,
    pub aut: u64,
    /// Copies of `F` in `K(V_1, .., V_r)` plus one edge in part 1, as a
    /// polynomial in the part sizes `n_1, .., n_r`.
    pub c_poly: RatPoly,
    /// Leading coefficient of `c` on the balanced diagonal.
    pub alpha: Rat,
    /// Coefficient of `n^(f-3)` in `dc/dn_2 - dc/dn_1` at the balanced
    /// point. Its sign selects the residue class with the doubled bound.
    pub zeta: Rat,
    /// `alpha / |zeta|`; `None` encodes infinity (`zeta = 0`).
    pub pi: Option<Rat>,
    /// Density polynomial in `xi_1, .., xi_r`.
    pub pf: RatPoly,
    pub deg_p: usize,
    /// Total number of (critical vertex, coloring) pairs behind `pf`,
    /// before dividing by `|Aut|`; feeds the approximation constant.
    pub coloring_pairs: u64,
}

/// Which orientation of the near-equal partition attains `c(n, F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Added edge in a smallest part (`n_1 <= .. <= n_r`).
    EdgeInSmallestPart,
    /// Added edge in a largest part (`n_1 >= .. >= n_r`).
    EdgeInLargestPart,
}

pub fn exact_invariants(f: &Graph, cs: &CriticalStructure) -> Result<ExactInvariants> {
    let aut = automorphism_count(f)?;
    let c_poly = c_polynomial(f, cs, aut);
    let (pf, coloring_pairs) = pf_polynomial(f, cs, aut);
    let nverts = f.vertex_count();
    let alpha = alpha_of(&c_poly, cs.r, nverts)?;
    let zeta = zeta_of(&c_poly, cs.r, nverts);
    let pi = if zeta.is_zero() {
        None
    } else {
        Some(alpha.clone() / zeta.abs())
    };
    Ok(ExactInvariants {
        r: cs.r,
        f: nverts,
        aut,
        c_poly,
        alpha,
        zeta,
        pi,
        pf,
        deg_p: 0,
        coloring_pairs,
    }
    .with_deg())
}

impl ExactInvariants {
    fn with_deg(mut self) -> Self {
        self.deg_p = self.pf.total_degree();
        self
    }

    pub fn deg_p_equals_r(&self) -> bool {
        self.deg_p == self.r
    }

    pub fn alpha_f64(&self) -> f64 {
        crate::rat_to_f64(&self.alpha)
    }

    /// `(pairs / |Aut|) * (f - 1) * (M + f)` with `M` the largest deviation
    /// of a part from `n/r`: a valid constant for the bound
    /// `|count - n^(f-1) P_F(d/n)| <= C n^(f-2)` whenever `n >= f`.
    pub fn attachment_error_constant(&self, sizes: &[usize]) -> f64 {
        let n: usize = sizes.iter().sum();
        let target = n as f64 / self.r as f64;
        let m = sizes
            .iter()
            .map(|&s| (s as f64 - target).abs())
            .fold(0.0, f64::max);
        let kf = self.coloring_pairs as f64 / self.aut as f64;
        kf * (self.f as f64 - 1.0) * (m + self.f as f64)
    }
}

/// `(1 / Aut) * sum over critical edges uv and colorings of F - uv pinned to
/// color 1 on both ends of `2 (n_1 - 2)_(x^1) prod_(i>=2) (n_i)_(x^i)`,
/// where `x^i` counts the vertices besides `u, v` in color class `i`.
pub fn c_polynomial(f: &Graph, cs: &CriticalStructure, aut: u64) -> RatPoly {
    let r = cs.r;
    let mut acc = RatPoly::zero(r);
    for (idx, &(u, v)) in cs.critical_edges.iter().enumerate() {
        for coloring in &cs.colorings_per_edge[idx] {
            let mut term = RatPoly::from_i64(r, 2);
            for i in 0..r {
                let color = (i + 1) as u8;
                let mut class = 0u32;
                for w in 0..f.vertex_count() {
                    if w != u && w != v && coloring.color(w) == color {
                        class += 1;
                    }
                }
                let base = if i == 0 {
                    RatPoly::var(r, 0).sub(&RatPoly::from_i64(r, 2))
                } else {
                    RatPoly::var(r, i)
                };
                term = term.mul(&RatPoly::falling_factorial(&base, class));
            }
            acc = acc.add(&term);
        }
    }
    acc.scale(&rat(1, aut as i64))
}

/// `(1 / Aut) * sum over critical vertices u and colorings of F - u of
/// `prod_i r^(-x_i) xi_i^(y_i)`, where `y_i` counts neighbors of `u` in
/// color `i` and `x_i` the non-neighbors.
pub fn pf_polynomial(f: &Graph, cs: &CriticalStructure, aut: u64) -> (RatPoly, u64) {
    let r = cs.r;
    let mut acc = RatPoly::zero(r);
    let mut pairs = 0u64;
    for (idx, &u) in cs.critical_vertices.iter().enumerate() {
        for coloring in &cs.colorings_per_vertex[idx] {
            pairs += 1;
            let mut exps = vec![0u32; r];
            let mut coeff = rat(1, 1);
            for i in 0..r {
                let color = (i + 1) as u8;
                for w in 0..f.vertex_count() {
                    if w == u || coloring.color(w) != color {
                        continue;
                    }
                    if f.adj(u, w) {
                        exps[i] += 1;
                    } else {
                        coeff /= rat(r as i64, 1);
                    }
                }
            }
            acc = acc.add(&RatPoly::monomial(r, exps, coeff));
        }
    }
    (acc.scale(&rat(1, aut as i64)), pairs)
}

/// Restriction of `c` to the balanced diagonal `n_i = n/r`, univariate in `n`.
pub fn c_on_diagonal(c_poly: &RatPoly, r: usize) -> RatPoly {
    let diag = vec![RatPoly::var(1, 0).scale(&rat(1, r as i64)); r];
    c_poly.compose(&diag)
}

/// Leading coefficient of the diagonal restriction; positive, of degree
/// `f - 2`.
pub fn alpha_of(c_poly: &RatPoly, r: usize, f: usize) -> Result<Rat> {
    let diag = c_on_diagonal(c_poly, r);
    if diag.total_degree() != f - 2 {
        return Err(Error::Internal(format!(
            "diagonal copy polynomial has degree {}, expected {}",
            diag.total_degree(),
            f - 2
        )));
    }
    let alpha = diag.univariate_coeff((f - 2) as u32);
    if !alpha.is_positive() {
        return Err(Error::Internal(format!(
            "leading diagonal coefficient {alpha} is not positive"
        )));
    }
    Ok(alpha)
}

/// Coefficient of `n^(f-3)` in `dc/dn_2 - dc/dn_1` on the diagonal.
pub fn zeta_of(c_poly: &RatPoly, r: usize, f: usize) -> Rat {
    let d2 = c_on_diagonal(&c_poly.derivative(1), r);
    let d1 = c_on_diagonal(&c_poly.derivative(0), r);
    d2.sub(&d1).univariate_coeff((f - 3) as u32)
}

/// Exact integer evaluation of the copy polynomial at a concrete partition.
/// Meaningful as a copy count once `n_1 >= 2` (the added edge needs two
/// vertices in part 1).
pub fn c_value(c_poly: &RatPoly, sizes: &[usize]) -> i128 {
    let point: Vec<Rat> = sizes.iter().map(|&s| rat(s as i64, 1)).collect();
    let v = c_poly.evaluate(&point);
    debug_assert!(v.is_integer());
    v.to_integer().to_i128().expect("copy count out of range")
}

/// `c(n, F)`: minimum of the two orientations of the sorted near-equal
/// partition. Returns the value, the attaining orientation (ties go to the
/// larger-part orientation), and the attaining partition vector.
pub fn c_min(c_poly: &RatPoly, r: usize, n: usize) -> (i128, Orientation, Vec<usize>) {
    assert!(n >= r, "need n >= r parts");
    let mut asc = crate::patterns::turan_partition(r, n);
    asc.reverse(); // ascending
    let desc: Vec<usize> = asc.iter().rev().copied().collect();
    let v_asc = c_value(c_poly, &asc);
    let v_desc = c_value(c_poly, &desc);
    if v_desc <= v_asc {
        (v_desc, Orientation::EdgeInLargestPart, desc)
    } else {
        (v_asc, Orientation::EdgeInSmallestPart, asc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::criticality;
    use crate::patterns;

    fn inv(g: &Graph) -> ExactInvariants {
        let cs = criticality(g).unwrap();
        exact_invariants(g, &cs).unwrap()
    }

    #[test]
    fn triangle_invariants() {
        let i = inv(&patterns::complete(3));
        assert_eq!(i.c_poly.to_canonical_string(&["n1", "n2"]), "1*n2");
        assert_eq!(i.alpha, rat(1, 2));
        assert_eq!(i.zeta, rat(1, 1));
        assert_eq!(i.pi, Some(rat(1, 2)));
        assert_eq!(i.pf.to_canonical_string(&["x1", "x2"]), "1*x1*x2");
        assert_eq!(i.deg_p, 2);
        assert!(i.deg_p_equals_r());
    }

    #[test]
    fn k4_minus_edge_invariants() {
        let i = inv(&patterns::complete_minus_edge(4));
        assert_eq!(i.alpha, rat(1, 8));
        assert_eq!(i.zeta, rat(1, 2));
        assert_eq!(i.pi, Some(rat(1, 4)));
        assert_eq!(i.deg_p, 3);
        // c(n1, n2) = C(n2, 2)
        assert_eq!(c_value(&i.c_poly, &[4, 4]), 6);
        assert_eq!(c_value(&i.c_poly, &[2, 5]), 10);
    }

    #[test]
    fn canonical_text_snapshots() {
        let i = inv(&patterns::complete_minus_edge(4));
        assert_eq!(
            i.c_poly.to_canonical_string(&["n1", "n2"]),
            "-1/2*n2 + 1/2*n2^2"
        );
        assert_eq!(
            i.pf.to_canonical_string(&["x1", "x2"]),
            "1/2*x1*x2^2 + 1/2*x1^2*x2"
        );
        let i = inv(&patterns::k33_plus_edge_pendant());
        assert_eq!(
            i.pf.to_canonical_string(&["x1", "x2"]),
            "1/24*x1*x2^3 + 1/24*x1^3*x2"
        );
    }

    #[test]
    fn pendant_graph_invariants() {
        let i = inv(&patterns::k33_plus_edge_pendant());
        assert_eq!(i.aut, 12);
        assert_eq!(i.alpha, rat(1, 192));
        assert_eq!(i.zeta, rat(1, 32));
        assert_eq!(i.pi, Some(rat(1, 6)));
        // P_F = (x1 x2^3 + x1^3 x2) / 24
        let x1 = RatPoly::var(2, 0);
        let x2 = RatPoly::var(2, 1);
        let expect = x1
            .mul(&x2.pow(3))
            .add(&x1.pow(3).mul(&x2))
            .scale(&rat(1, 24));
        assert_eq!(i.pf, expect);
    }

    #[test]
    fn c_min_picks_the_cheaper_orientation() {
        let i = inv(&patterns::complete(3));
        assert_eq!(c_min(&i.c_poly, 2, 6).0, 3);
        let (v, orient, parts) = c_min(&i.c_poly, 2, 7);
        assert_eq!(v, 3);
        assert_eq!(orient, Orientation::EdgeInLargestPart);
        assert_eq!(parts, vec![4, 3]);
    }

    #[test]
    fn odd_cycle_c_min() {
        let i = inv(&patterns::cycle(5));
        // evaluate both orientations of (3, 4): min is 12 with the edge in
        // the larger part
        let (v, orient, _) = c_min(&i.c_poly, 2, 7);
        assert_eq!(v, 12);
        assert_eq!(orient, Orientation::EdgeInLargestPart);
        assert_eq!(c_value(&i.c_poly, &[3, 3]), 6);
    }
}
