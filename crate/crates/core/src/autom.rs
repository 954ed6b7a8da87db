//! Automorphism counting and canonical labeling by pruned permutation
//! search. Both are exact and bounded to small graphs.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_AUT_VERTICES};

/// Exact `|Aut(G)|` by backtracking over degree-compatible images.
pub fn automorphism_count(g: &Graph) -> Result<u64> {
    let n = g.vertex_count();
    if n > MAX_AUT_VERTICES {
        return Err(Error::SizeLimit {
            what: "automorphism search",
            limit: MAX_AUT_VERTICES,
            got: n,
        });
    }
    if n == 0 {
        return Ok(1);
    }
    let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut image = vec![usize::MAX; n];
    let mut used = 0u64;
    let mut count = 0u64;
    fn rec(
        g: &Graph,
        degrees: &[usize],
        image: &mut [usize],
        used: &mut u64,
        v: usize,
        count: &mut u64,
    ) {
        let n = g.vertex_count();
        if v == n {
            *count += 1;
            return;
        }
        for w in 0..n {
            if *used >> w & 1 == 1 || degrees[w] != degrees[v] {
                continue;
            }
            let mut ok = true;
            for u in 0..v {
                if g.adj(u, v) != g.adj(image[u], w) {
                    ok = false;
                    break;
                }
            }
            if ok {
                image[v] = w;
                *used |= 1 << w;
                rec(g, degrees, image, used, v + 1, count);
                *used &= !(1 << w);
            }
        }
        image[v] = usize::MAX;
    }
    rec(g, &degrees, &mut image, &mut used, 0, &mut count);
    Ok(count)
}

/// Canonical relabelling: the vertex order whose packed upper-triangle
/// adjacency string is lexicographically smallest. Two graphs are isomorphic
/// iff their canonical forms are equal.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    Ok(g.relabel(&canonical_order(g)?))
}

pub fn canonical_graph6(g: &Graph) -> Result<String> {
    Ok(canonical_form(g)?.to_graph6())
}

fn canonical_order(g: &Graph) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    if n > MAX_AUT_VERTICES {
        return Err(Error::SizeLimit {
            what: "canonical labeling",
            limit: MAX_AUT_VERTICES,
            got: n,
        });
    }
    if n <= 1 {
        return Ok((0..n).collect());
    }
    // Bits of the column-major upper triangle packed into a u128,
    // most significant bit first, so integer order is string order.
    let total_bits = n * (n - 1) / 2;
    struct State<'a> {
        g: &'a Graph,
        n: usize,
        total_bits: u32,
        perm: Vec<usize>, // perm[k] = original vertex placed at position k
        best: Option<(u128, Vec<usize>)>,
    }
    fn rec(st: &mut State, depth: usize, bits: u128, len: u32, used: u64) {
        let n = st.n;
        if depth == n {
            let full = bits << (st.total_bits - len);
            if st.best.as_ref().is_none_or(|(b, _)| full < *b) {
                st.best = Some((full, st.perm[..n].to_vec()));
            }
            return;
        }
        for v in 0..n {
            if used >> v & 1 == 1 {
                continue;
            }
            let mut nb = bits;
            for k in 0..depth {
                nb = nb << 1 | u128::from(st.g.adj(st.perm[k], v));
            }
            let nlen = len + depth as u32;
            if let Some((best, _)) = &st.best {
                // compare the prefix against the best string's same-length prefix
                let best_prefix = *best >> (st.total_bits - nlen);
                if nb > best_prefix {
                    continue;
                }
            }
            st.perm[depth] = v;
            rec(st, depth + 1, nb, nlen, used | 1 << v);
        }
    }
    let mut st = State {
        g,
        n,
        total_bits: total_bits as u32,
        perm: vec![0; n],
        best: None,
    };
    rec(&mut st, 0, 0, 0, 0);
    let order = st.best.unwrap().1;
    // order[k] = original vertex at position k; relabel wants old -> new
    let mut relabel = vec![0usize; n];
    for (new, &old) in order.iter().enumerate() {
        relabel[old] = new;
    }
    Ok(relabel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns;

    #[test]
    fn aut_counts() {
        assert_eq!(automorphism_count(&patterns::complete(3)).unwrap(), 6);
        assert_eq!(automorphism_count(&patterns::cycle(5)).unwrap(), 10);
        assert_eq!(automorphism_count(&patterns::complete(4)).unwrap(), 24);
        assert_eq!(
            automorphism_count(&patterns::complete_minus_edge(4)).unwrap(),
            4
        );
        assert_eq!(automorphism_count(&patterns::petersen()).unwrap(), 120);
    }

    #[test]
    fn aut_size_limit() {
        let g = Graph::empty(13).unwrap();
        assert!(automorphism_count(&g).is_err());
    }

    #[test]
    fn canonical_form_identifies_isomorphs() {
        let c5 = patterns::cycle(5);
        let shuffled = c5.relabel(&[3, 1, 4, 0, 2]);
        assert_ne!(c5, shuffled);
        assert_eq!(
            canonical_form(&c5).unwrap(),
            canonical_form(&shuffled).unwrap()
        );
        let p = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_ne!(
            canonical_form(&c5).unwrap(),
            canonical_form(&p).unwrap()
        );
    }
}
