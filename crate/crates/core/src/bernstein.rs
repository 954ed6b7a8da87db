//! Exact nonnegativity certificates for rational polynomials on boxes via
//! Bernstein expansion with subdivision.
//!
//! All arithmetic is rational, so a successful certificate is a symbolic
//! fact, not a numeric approximation. On top of plain nonnegativity the
//! checker can pin the zero set: it certifies that the polynomial vanishes
//! nowhere on the box except at an explicitly allowed list of box corners.

use crate::{rat, Rat};
use crate::RatPoly;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum CertOutcome {
    /// Nonnegative on the box, vanishing only at allowed corners.
    NonnegativePinned,
    /// Nonnegative on the box; the zero set could not be pinned down.
    Nonnegative,
    /// A point of the box with a strictly negative value.
    Negative(Vec<Rat>),
    /// Subdivision budget exhausted without a decision.
    Unknown,
}

/// Dense coefficient tensor over `dims[k] = degree_k + 1` entries per axis.
#[derive(Clone)]
struct Tensor {
    dims: Vec<usize>,
    data: Vec<Rat>,
}

impl Tensor {
    fn strides(&self) -> Vec<usize> {
        let mut s = vec![1usize; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            s[k] = s[k + 1] * self.dims[k + 1];
        }
        s
    }
}

fn binomials(n: usize) -> Vec<Vec<Rat>> {
    let mut c = vec![vec![Rat::zero(); n + 1]; n + 1];
    for (i, row) in c.iter_mut().enumerate() {
        row[0] = Rat::one();
        for j in 1..=i {
            row[j] = row[j - 1].clone() * rat((i - j + 1) as i64, j as i64);
        }
    }
    c
}

fn power_tensor(p: &RatPoly) -> Tensor {
    let nvars = p.nvars();
    let dims: Vec<usize> = (0..nvars).map(|k| p.degree_in(k) as usize + 1).collect();
    let mut t = Tensor {
        dims: dims.clone(),
        data: vec![Rat::zero(); dims.iter().product()],
    };
    let strides = t.strides();
    for (e, c) in p.terms() {
        let idx: usize = e
            .iter()
            .zip(&strides)
            .map(|(&k, &s)| k as usize * s)
            .sum();
        t.data[idx] = c.clone();
    }
    t
}

/// Applies `f` to every fiber along `axis`.
fn map_fibers(t: &mut Tensor, axis: usize, f: impl Fn(&mut [Rat])) {
    let strides = t.strides();
    let d = t.dims[axis];
    let stride = strides[axis];
    let total = t.data.len();
    let block = stride * d;
    let mut fiber = vec![Rat::zero(); d];
    let mut base = 0;
    while base < total {
        for off in 0..stride {
            for (i, slot) in fiber.iter_mut().enumerate() {
                *slot = t.data[base + off + i * stride].clone();
            }
            f(&mut fiber);
            for (i, v) in fiber.iter().enumerate() {
                t.data[base + off + i * stride] = v.clone();
            }
        }
        base += block;
    }
}

/// Substitutes `x = lo + w u` along `axis` (power basis in `u` afterwards).
fn affine_axis(t: &mut Tensor, axis: usize, lo: &Rat, w: &Rat, binom: &[Vec<Rat>]) {
    let lo = lo.clone();
    let w = w.clone();
    map_fibers(t, axis, |fiber| {
        let d = fiber.len();
        let mut out = vec![Rat::zero(); d];
        for j in 0..d {
            if fiber[j].is_zero() {
                continue;
            }
            // x^j = sum_i C(j,i) lo^(j-i) w^i u^i
            let mut lo_pow = Rat::one();
            for i in (0..=j).rev() {
                // iterate i descending so lo_pow accumulates lo^(j-i)
                out[i] += fiber[j].clone() * binom[j][i].clone() * lo_pow.clone() * w_pow(&w, i);
                lo_pow *= lo.clone();
            }
        }
        fiber.clone_from_slice(&out);
    });
}

fn w_pow(w: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= w.clone();
    }
    acc
}

/// Power basis on `[0,1]` to Bernstein coefficients of degree `d = len - 1`.
fn bernstein_axis(t: &mut Tensor, axis: usize, binom: &[Vec<Rat>]) {
    map_fibers(t, axis, |fiber| {
        let d = fiber.len() - 1;
        let mut out = vec![Rat::zero(); d + 1];
        for (i, slot) in out.iter_mut().enumerate() {
            for j in 0..=i.min(d) {
                if fiber[j].is_zero() {
                    continue;
                }
                *slot += fiber[j].clone() * binom[i][j].clone() / binom[d][j].clone();
            }
        }
        fiber.clone_from_slice(&out);
    });
}

/// De Casteljau split of every fiber at the midpoint.
fn split_axis(t: &Tensor, axis: usize) -> (Tensor, Tensor) {
    let mut left = t.clone();
    let mut right = t.clone();
    let half = rat(1, 2);
    map_fibers(&mut left, axis, |fiber| {
        let mut tri = fiber.to_vec();
        let d = fiber.len();
        for slot in fiber.iter_mut() {
            *slot = tri[0].clone();
            for i in 0..d - 1 {
                tri[i] = (tri[i].clone() + tri[i + 1].clone()) * half.clone();
            }
        }
    });
    map_fibers(&mut right, axis, |fiber| {
        let mut tri = fiber.to_vec();
        let d = fiber.len();
        for k in 0..d {
            fiber[d - 1 - k] = tri[d - 1 - k].clone();
            for i in 0..d - 1 - k {
                tri[i] = (tri[i].clone() + tri[i + 1].clone()) * half.clone();
            }
        }
    });
    (left, right)
}

struct Cell {
    bern: Tensor,
    lo: Vec<Rat>,
    hi: Vec<Rat>,
    depth: u32,
}

/// Certifies `p >= 0` on the box `[lo, hi]`, with the zero set pinned to
/// `allowed_zeros` (each an exact point that must be a corner of some
/// subdivision cell; in practice a corner of the original box).
pub fn certify_nonnegative(
    p: &RatPoly,
    lo: &[Rat],
    hi: &[Rat],
    allowed_zeros: &[Vec<Rat>],
    max_depth: u32,
    max_cells: usize,
) -> CertOutcome {
    let nvars = p.nvars();
    assert_eq!(lo.len(), nvars);
    assert_eq!(hi.len(), nvars);
    if p.is_zero() {
        return CertOutcome::Nonnegative;
    }
    let max_deg = (0..nvars).map(|k| p.degree_in(k) as usize).max().unwrap_or(0);
    let binom = binomials(max_deg.max(1));

    let mut root = power_tensor(p);
    for k in 0..nvars {
        let w = hi[k].clone() - lo[k].clone();
        affine_axis(&mut root, k, &lo[k], &w, &binom);
        bernstein_axis(&mut root, k, &binom);
    }
    let mut stack = vec![Cell {
        bern: root,
        lo: lo.to_vec(),
        hi: hi.to_vec(),
        depth: 0,
    }];
    let mut pinned = true;
    let mut cells = 0usize;
    while let Some(cell) = stack.pop() {
        cells += 1;
        if cells > max_cells {
            return CertOutcome::Unknown;
        }
        match examine(&cell, allowed_zeros) {
            Examine::Ok { zero_pinned } => {
                pinned &= zero_pinned;
            }
            Examine::NegativeCorner(pt) => return CertOutcome::Negative(pt),
            Examine::Split => {
                if cell.depth >= max_depth {
                    return CertOutcome::Unknown;
                }
                subdivide(&cell, &mut stack);
            }
        }
    }
    if pinned {
        CertOutcome::NonnegativePinned
    } else {
        CertOutcome::Nonnegative
    }
}

enum Examine {
    Ok { zero_pinned: bool },
    NegativeCorner(Vec<Rat>),
    Split,
}

fn examine(cell: &Cell, allowed_zeros: &[Vec<Rat>]) -> Examine {
    let t = &cell.bern;
    let nvars = t.dims.len();
    let strides = t.strides();
    if t.data.iter().any(|c| c.is_negative()) {
        // corner coefficients are true values: a negative one is a witness
        for corner in 0..(1usize << nvars) {
            let mut idx = 0usize;
            let mut pt = Vec::with_capacity(nvars);
            for k in 0..nvars {
                if corner >> k & 1 == 1 {
                    idx += (t.dims[k] - 1) * strides[k];
                    pt.push(cell.hi[k].clone());
                } else {
                    pt.push(cell.lo[k].clone());
                }
            }
            if t.data[idx].is_negative() {
                return Examine::NegativeCorner(pt);
            }
        }
        return Examine::Split;
    }
    // All coefficients nonnegative: nonnegative on the cell. Pin the zero
    // set by walking every face: a face whose coefficients all vanish is an
    // identically-zero face and must be an allowed corner point; otherwise
    // some positive coefficient keeps the face interior positive.
    let mut pinned = true;
    let mut spec = vec![0u8; nvars]; // 0 = at lo, 1 = at hi, 2 = free
    loop {
        let mut all_zero = true;
        visit_face(t, &strides, &spec, &mut |c: &Rat| {
            if !c.is_zero() {
                all_zero = false;
            }
        });
        if all_zero {
            let dim0 = spec.iter().all(|&s| s != 2);
            if dim0 {
                let pt: Vec<Rat> = spec
                    .iter()
                    .enumerate()
                    .map(|(k, &s)| {
                        if s == 1 {
                            cell.hi[k].clone()
                        } else {
                            cell.lo[k].clone()
                        }
                    })
                    .collect();
                if !allowed_zeros.contains(&pt) {
                    pinned = false;
                }
            } else {
                pinned = false;
            }
        }
        // next face spec in base-3
        let mut k = 0;
        loop {
            if k == nvars {
                return Examine::Ok { zero_pinned: pinned };
            }
            spec[k] += 1;
            if spec[k] == 3 {
                spec[k] = 0;
                k += 1;
            } else {
                break;
            }
        }
    }
}

fn visit_face(t: &Tensor, strides: &[usize], spec: &[u8], f: &mut impl FnMut(&Rat)) {
    fn rec(
        t: &Tensor,
        strides: &[usize],
        spec: &[u8],
        k: usize,
        idx: usize,
        f: &mut impl FnMut(&Rat),
    ) {
        if k == spec.len() {
            f(&t.data[idx]);
            return;
        }
        match spec[k] {
            0 => rec(t, strides, spec, k + 1, idx, f),
            1 => rec(t, strides, spec, k + 1, idx + (t.dims[k] - 1) * strides[k], f),
            _ => {
                for i in 0..t.dims[k] {
                    rec(t, strides, spec, k + 1, idx + i * strides[k], f);
                }
            }
        }
    }
    rec(t, strides, spec, 0, 0, f);
}

fn subdivide(cell: &Cell, stack: &mut Vec<Cell>) {
    // split along the widest axis
    let nvars = cell.lo.len();
    let axis = (0..nvars)
        .max_by(|&a, &b| {
            let wa = cell.hi[a].clone() - cell.lo[a].clone();
            let wb = cell.hi[b].clone() - cell.lo[b].clone();
            wa.cmp(&wb)
        })
        .unwrap();
    let mid = (cell.lo[axis].clone() + cell.hi[axis].clone()) * rat(1, 2);
    let (left, right) = split_axis(&cell.bern, axis);
    let mut lo_r = cell.lo.clone();
    lo_r[axis] = mid.clone();
    let mut hi_l = cell.hi.clone();
    hi_l[axis] = mid;
    stack.push(Cell {
        bern: left,
        lo: cell.lo.clone(),
        hi: hi_l,
        depth: cell.depth + 1,
    });
    stack.push(Cell {
        bern: right,
        lo: lo_r,
        hi: cell.hi.clone(),
        depth: cell.depth + 1,
    });
}
