//! Numeric layer: certified minimization of the density polynomial over
//! slices of the box `[0, 1/r]^r`, the threshold densities where the minimum
//! curve meets the line of slope `alpha`, and the constants derived from
//! those thresholds.
//!
//! Certification leans on two structural facts. First, the density
//! polynomial has nonnegative coefficients, so it is monotone in every
//! coordinate on the positive orthant and evaluating at a cell's lower
//! corner is a sound lower bound (branch-and-bound then gives two-sided
//! enclosures of the slice minimum). Second, infinite thresholds are never
//! concluded from a failed search: they come either from the exact degree
//! criterion or from an exact Bernstein nonnegativity certificate.

use crate::bernstein::{certify_nonnegative, CertOutcome};
use crate::error::{Error, Result};
use crate::invariants::ExactInvariants;
use crate::{rat, rat_poly_to_float, FloatPoly, Rat, RatPoly};
use num_traits::Zero;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

#[derive(Clone, Debug)]
pub struct OptimOptions {
    /// Enclosure width demanded of each certified slice minimum.
    pub cert_tol: f64,
    /// Feasibility tolerance for returned minimizers.
    pub slice_tol: f64,
    /// Width at which threshold bisection stops.
    pub bisect_tol: f64,
    /// Grid step of the threshold scan.
    pub scan_step: f64,
    /// Branch-and-bound cell budget per slice minimization.
    pub max_cells: usize,
    pub bernstein_depth: u32,
    pub bernstein_cells: usize,
}

impl Default for OptimOptions {
    fn default() -> Self {
        OptimOptions {
            cert_tol: 1e-8,
            slice_tol: 1e-12,
            bisect_tol: 1e-9,
            scan_step: 1e-3,
            max_cells: 400_000,
            bernstein_depth: 16,
            bernstein_cells: 200_000,
        }
    }
}

/// One certified point of the minimum curve.
#[derive(Clone, Debug)]
pub struct CurvePoint {
    pub rho: f64,
    /// Best feasible value found; the true minimum lies in
    /// `[p - certified_gap, p]`.
    pub p: f64,
    pub argmin: Vec<f64>,
    pub certified_gap: f64,
}

/// Evaluation context for one pattern's density polynomial.
pub struct SliceProblem {
    pub r: usize,
    pub pf: FloatPoly,
    grads: Vec<FloatPoly>,
    cap: f64,
}

impl SliceProblem {
    pub fn new(pf_exact: &RatPoly, r: usize) -> SliceProblem {
        let pf = rat_poly_to_float(pf_exact);
        let grads = (0..r).map(|i| pf.derivative(i)).collect();
        SliceProblem {
            r,
            pf,
            grads,
            cap: 1.0 / r as f64,
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        eval_float(&self.pf, x)
    }

    fn grad(&self, x: &[f64]) -> Vec<f64> {
        self.grads.iter().map(|g| eval_float(g, x)).collect()
    }
}

pub fn eval_float(p: &FloatPoly, x: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (e, c) in p.terms() {
        let mut t = *c;
        for (xi, &k) in x.iter().zip(e) {
            t *= xi.powi(k as i32);
        }
        acc += t;
    }
    acc
}

/// Projection onto `{x in [0, cap]^r : sum x = rho}` by bisecting the shift.
fn project_slice(x: &[f64], rho: f64, cap: f64) -> Vec<f64> {
    let sum_at = |tau: f64| -> f64 { x.iter().map(|&v| (v - tau).clamp(0.0, cap)).sum() };
    let mut lo = x.iter().cloned().fold(f64::INFINITY, f64::min) - cap - 1.0;
    let mut hi = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 1.0;
    for _ in 0..70 {
        let mid = 0.5 * (lo + hi);
        if sum_at(mid) > rho {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let tau = 0.5 * (lo + hi);
    let mut out: Vec<f64> = x.iter().map(|&v| (v - tau).clamp(0.0, cap)).collect();
    // absorb the residual rounding into a coordinate with slack
    let resid = rho - out.iter().sum::<f64>();
    for v in out.iter_mut() {
        let fixed = (*v + resid).clamp(0.0, cap);
        if (fixed - *v - resid).abs() < 1e-15 {
            *v = fixed;
            break;
        }
    }
    out
}

fn descend(problem: &SliceProblem, rho: f64, start: &[f64]) -> (Vec<f64>, f64) {
    let mut x = project_slice(start, rho, problem.cap);
    let mut val = problem.eval(&x);
    for _ in 0..120 {
        let g = problem.grad(&x);
        let gnorm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if gnorm == 0.0 {
            break;
        }
        let mut step = 0.5 / gnorm.max(1.0);
        let mut improved = false;
        for _ in 0..30 {
            let cand: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi - step * gi).collect();
            let cand = project_slice(&cand, rho, problem.cap);
            let cval = problem.eval(&cand);
            if cval < val - 1e-18 {
                x = cand;
                val = cval;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (x, val)
}

/// Deterministic seed set: the balanced point and the vertices of the slice
/// polytope (evaluated exactly), plus the best few points of a coarse
/// symmetric lattice (descended).
fn structured_candidates(r: usize, rho: f64, cap: f64) -> Vec<Vec<f64>> {
    let mut out = vec![vec![rho / r as f64; r]];
    for k in 0..r {
        let rem = rho - k as f64 * cap;
        if (-1e-12..=cap + 1e-12).contains(&rem) {
            let mut v = vec![0.0; r];
            for i in 0..k {
                v[r - 1 - i] = cap;
            }
            v[r - 1 - k] = rem.clamp(0.0, cap);
            out.push(v);
        }
    }
    out
}

fn lattice_candidates(r: usize, rho: f64, cap: f64) -> Vec<Vec<f64>> {
    let steps = 6usize;
    let h = cap / steps as f64;
    let mut out = Vec::new();
    let mut lattice = vec![0u32; r];
    loop {
        if lattice.windows(2).all(|w| w[0] <= w[1]) {
            let v: Vec<f64> = lattice.iter().map(|&k| k as f64 * h).collect();
            let s: f64 = v.iter().sum();
            if (s - rho).abs() <= r as f64 * h {
                out.push(v);
            }
        }
        let mut i = 0;
        loop {
            if i == r {
                return out;
            }
            lattice[i] += 1;
            if lattice[i] > steps as u32 {
                lattice[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// Upper value only: structured candidates plus multi-start projected
/// gradient descent. Sound as an upper bound on the slice minimum; scans
/// that rely on it have their conclusions certified independently.
pub fn p_upper(problem: &SliceProblem, rho: f64, extra_seeds: &[Vec<f64>]) -> (Vec<f64>, f64) {
    let r = problem.r;
    let cap = problem.cap;
    let edge = (r as f64 - 1.0) / r as f64;
    if rho <= edge + 1e-15 {
        let mut v = vec![0.0; r];
        let mut rem = rho.max(0.0);
        for i in (0..r).rev() {
            let take = rem.min(cap);
            v[i] = take;
            rem -= take;
        }
        return (v, 0.0);
    }
    let mut best: Option<(Vec<f64>, f64)> = None;
    let consider = |x: Vec<f64>, val: f64, best: &mut Option<(Vec<f64>, f64)>| {
        let better = match best {
            None => true,
            Some((bx, bv)) => val < *bv || (val == *bv && lex_less(&x, bx)),
        };
        if better {
            *best = Some((x, val));
        }
    };
    // exact structured candidates
    for s in structured_candidates(r, rho, cap) {
        let s = project_slice(&s, rho, cap);
        let v = problem.eval(&s);
        consider(s, v, &mut best);
    }
    // lattice: evaluate projected, keep the best few for descent
    let mut ranked: Vec<(f64, Vec<f64>)> = lattice_candidates(r, rho, cap)
        .into_iter()
        .map(|s| {
            let s = project_slice(&s, rho, cap);
            (problem.eval(&s), s)
        })
        .collect();
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.partial_cmp(&b.1).unwrap()));
    let descent_starts: Vec<Vec<f64>> = structured_candidates(r, rho, cap)
        .into_iter()
        .chain(ranked.into_iter().take(8).map(|(_, s)| s))
        .chain(extra_seeds.iter().cloned())
        .collect();
    for s in descent_starts {
        let (x, val) = descend(problem, rho, &s);
        consider(x, val, &mut best);
    }
    best.unwrap()
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

#[derive(Clone, Copy, PartialEq)]
struct OrdF64(f64);
impl Eq for OrdF64 {}
impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

struct BbCell {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

/// Certified minimum of the density polynomial over the slice
/// `{x in [0,1/r]^r : sum x = rho}`. The reported value is the best feasible
/// point found; `certified_gap` bounds its distance from the true minimum.
pub fn p_of_rho(
    problem: &SliceProblem,
    rho: f64,
    tol: f64,
    opts: &OptimOptions,
) -> Result<CurvePoint> {
    if !(-1e-12..=1.0 + 1e-12).contains(&rho) {
        return Err(Error::InfeasibleSlice(rho));
    }
    let rho = rho.clamp(0.0, 1.0);
    let r = problem.r;
    let cap = problem.cap;
    let edge = (r as f64 - 1.0) / r as f64;
    let (argmin, upper) = p_upper(problem, rho, &[]);
    if rho <= edge + 1e-15 {
        return Ok(CurvePoint {
            rho,
            p: 0.0,
            argmin,
            certified_gap: 0.0,
        });
    }
    let mut best_x = argmin;
    let mut best = upper;

    // Branch and bound over the first r-1 coordinates; the last coordinate
    // is rho minus their sum.
    let cell_bounds = |lo: &[f64], hi: &[f64]| -> Option<(f64, Vec<f64>)> {
        let s_lo: f64 = lo.iter().sum();
        let s_hi: f64 = hi.iter().sum();
        let last_lo = (rho - s_hi).max(0.0);
        let last_hi = (rho - s_lo).min(cap);
        if last_lo > last_hi + 1e-15 {
            return None;
        }
        let mut corner = lo.to_vec();
        corner.push(last_lo);
        let lower = problem.eval(&corner);
        // feasible representative by water-filling
        let mids: f64 = lo.iter().zip(hi).map(|(a, b)| 0.5 * (a + b)).sum();
        let l_pref = (rho - mids).clamp(last_lo, last_hi);
        let t = rho - l_pref;
        let mut rep = lo.to_vec();
        let mut rem = t - s_lo;
        for (v, (&l, &h)) in rep.iter_mut().zip(lo.iter().zip(hi)) {
            let add = rem.min(h - l).max(0.0);
            *v = l + add;
            rem -= add;
        }
        rep.push(rho - rep.iter().sum::<f64>());
        Some((lower, rep))
    };

    let mut heap: BinaryHeap<(Reverse<OrdF64>, Reverse<u64>, usize)> = BinaryHeap::new();
    let mut cells: Vec<BbCell> = Vec::new();
    let mut next_id = 0u64;
    let root_lo = vec![0.0; r - 1];
    let root_hi = vec![cap; r - 1];
    if let Some((lower, rep)) = cell_bounds(&root_lo, &root_hi) {
        let val = problem.eval(&rep);
        if val < best {
            best = val;
            best_x = rep;
        }
        cells.push(BbCell {
            lo: root_lo,
            hi: root_hi,
        });
        heap.push((Reverse(OrdF64(lower)), Reverse(next_id), 0));
        next_id += 1;
    }
    let mut global_lower;
    let mut expanded = 0usize;
    while let Some(&(Reverse(OrdF64(lower)), _, idx)) = heap.peek() {
        global_lower = lower;
        if best - global_lower <= tol || expanded >= opts.max_cells {
            break;
        }
        heap.pop();
        expanded += 1;
        let (cell_lo, cell_hi) = (cells[idx].lo.clone(), cells[idx].hi.clone());
        let axis = (0..r - 1)
            .max_by(|&a, &b| (cell_hi[a] - cell_lo[a]).total_cmp(&(cell_hi[b] - cell_lo[b])))
            .unwrap_or(0);
        let mid = 0.5 * (cell_lo[axis] + cell_hi[axis]);
        for half in 0..2 {
            let mut lo = cell_lo.clone();
            let mut hi = cell_hi.clone();
            if half == 0 {
                hi[axis] = mid;
            } else {
                lo[axis] = mid;
            }
            if let Some((lower, rep)) = cell_bounds(&lo, &hi) {
                let val = problem.eval(&rep);
                if val < best || (val == best && lex_less(&rep, &best_x)) {
                    best = val.min(best);
                    best_x = rep;
                }
                let idx = cells.len();
                cells.push(BbCell { lo, hi });
                heap.push((Reverse(OrdF64(lower)), Reverse(next_id), idx));
                next_id += 1;
            }
        }
    }
    // polish the incumbent once; only improves the upper value
    let (px, pv) = descend(problem, rho, &best_x);
    if pv < best || (pv == best && lex_less(&px, &best_x)) {
        best = pv.min(best);
        best_x = px;
    }
    if let Some(&(Reverse(OrdF64(lower)), _, _)) = heap.peek() {
        global_lower = lower;
    } else {
        global_lower = best;
    }
    let gap = (best - global_lower).max(0.0);
    debug_assert!(feasible(&best_x, rho, cap, opts.slice_tol));
    Ok(CurvePoint {
        rho,
        p: best,
        argmin: best_x,
        certified_gap: gap,
    })
}

pub fn feasible(x: &[f64], rho: f64, cap: f64, tol: f64) -> bool {
    x.iter().all(|&v| (-tol..=cap + tol).contains(&v))
        && (x.iter().sum::<f64>() - rho).abs() <= tol
}

#[derive(Clone, Debug, PartialEq)]
pub enum Threshold {
    Finite(f64),
    Infinite,
    /// No crossing found, but positivity could not be certified either;
    /// carries the scan resolution.
    Unresolved(f64),
}

impl Threshold {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Threshold::Infinite)
    }

    pub fn finite(&self) -> Option<f64> {
        match self {
            Threshold::Finite(v) => Some(*v),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdCertificate {
    /// Density polynomial has total degree exactly `r`.
    DegreeEqualsR,
    /// Exact Bernstein nonnegativity of `P_F - alpha (sum xi - (r-1)/r)`.
    ExactNonnegativity,
    /// A bracketed sign change.
    CrossingBracket,
    NoCertificate,
}

#[derive(Clone, Debug)]
pub struct Thresholds {
    pub rho: Threshold,
    pub rho_hat: Threshold,
    pub tangency: bool,
    pub certificate: ThresholdCertificate,
}

/// First touch and first strict crossing of the slice-minimum curve against
/// the line `alpha (rho - (r-1)/r)`.
pub fn rho_thresholds(inv: &ExactInvariants, opts: &OptimOptions) -> Thresholds {
    if inv.deg_p_equals_r() {
        return Thresholds {
            rho: Threshold::Infinite,
            rho_hat: Threshold::Infinite,
            tangency: false,
            certificate: ThresholdCertificate::DegreeEqualsR,
        };
    }
    let r = inv.r;
    let edge = (r as f64 - 1.0) / r as f64;
    let alpha = inv.alpha_f64();
    let problem = SliceProblem::new(&inv.pf, r);
    let g = |rho: f64, extra: &[Vec<f64>]| -> f64 {
        p_upper(&problem, rho, extra).1 - alpha * (rho - edge)
    };

    let mut crossing: Option<(f64, f64)> = None; // bracket with g(hi) <= 0
    let steps = ((1.0 - edge) / opts.scan_step).ceil() as usize;
    let mut prev = edge;
    for k in 1..=steps {
        let rho = (edge + k as f64 * opts.scan_step).min(1.0);
        if g(rho, &[]) <= 0.0 {
            crossing = Some((prev, rho));
            break;
        }
        prev = rho;
    }

    if crossing.is_none() {
        // exact certificate: Q = P_F - alpha (sum xi - edge) >= 0 on the box,
        // vanishing only at the permutations of (0, 1/r, .., 1/r)
        let q = threshold_gap_polynomial(inv);
        let lo = vec![Rat::zero(); r];
        let hi = vec![rat(1, r as i64); r];
        let mut zeros = Vec::new();
        for i in 0..r {
            let mut z = vec![rat(1, r as i64); r];
            z[i] = Rat::zero();
            zeros.push(z);
        }
        match certify_nonnegative(&q, &lo, &hi, &zeros, opts.bernstein_depth, opts.bernstein_cells)
        {
            CertOutcome::NonnegativePinned => {
                return Thresholds {
                    rho: Threshold::Infinite,
                    rho_hat: Threshold::Infinite,
                    tangency: false,
                    certificate: ThresholdCertificate::ExactNonnegativity,
                }
            }
            CertOutcome::Nonnegative => {
                // no strict crossing anywhere; touches cannot be excluded
                return Thresholds {
                    rho: Threshold::Unresolved(opts.scan_step),
                    rho_hat: Threshold::Infinite,
                    tangency: true,
                    certificate: ThresholdCertificate::ExactNonnegativity,
                };
            }
            CertOutcome::Negative(pt) => {
                // the scan missed a dip; bracket it from the witness
                let xs: Vec<f64> = pt.iter().map(crate::rat_to_f64).collect();
                let rho_w: f64 = xs.iter().sum();
                if g(rho_w, std::slice::from_ref(&xs)) <= 0.0 {
                    crossing = Some((edge, rho_w));
                }
            }
            CertOutcome::Unknown => {}
        }
    }

    let Some((mut lo, mut hi)) = crossing else {
        return Thresholds {
            rho: Threshold::Unresolved(opts.scan_step),
            rho_hat: Threshold::Unresolved(opts.scan_step),
            tangency: false,
            certificate: ThresholdCertificate::NoCertificate,
        };
    };

    // rho: boundary of { g <= 0 }
    while hi - lo > opts.bisect_tol {
        let mid = 0.5 * (lo + hi);
        if g(mid, &[]) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let rho_star = 0.5 * (lo + hi);

    // rho_hat: boundary of strict negativity
    let strict = 1e-12 * alpha.max(1.0);
    let mut neg_at = None;
    let mut probe = rho_star;
    loop {
        if g(probe, &[]) < -strict {
            neg_at = Some(probe);
            break;
        }
        if probe >= 1.0 {
            break;
        }
        probe = (probe + opts.scan_step).min(1.0);
    }
    let (rho_hat, tangency) = match neg_at {
        Some(first_neg) => {
            let mut lo2 = if g(rho_star.min(first_neg), &[]) < -strict {
                edge
            } else {
                rho_star.min(first_neg)
            };
            let mut hi2 = first_neg;
            while hi2 - lo2 > opts.bisect_tol {
                let mid = 0.5 * (lo2 + hi2);
                if g(mid, &[]) < -strict {
                    hi2 = mid;
                } else {
                    lo2 = mid;
                }
            }
            // the strict crossing can never precede the touch
            let rh = (0.5 * (lo2 + hi2)).max(rho_star);
            (Threshold::Finite(rh), rh - rho_star > 1e-6)
        }
        None => (Threshold::Unresolved(opts.scan_step), true),
    };
    Thresholds {
        rho: Threshold::Finite(rho_star),
        rho_hat,
        tangency,
        certificate: ThresholdCertificate::CrossingBracket,
    }
}

/// `P_F - alpha (sum xi - (r-1)/r)` as an exact polynomial.
pub fn threshold_gap_polynomial(inv: &ExactInvariants) -> RatPoly {
    let r = inv.r;
    let mut line = RatPoly::constant(r, rat(-(r as i64 - 1), r as i64));
    for i in 0..r {
        line = line.add(&RatPoly::var(r, i));
    }
    inv.pf.sub(&line.scale(&inv.alpha))
}

pub fn theta_of(th: &Thresholds, r: usize) -> Threshold {
    let edge = (r as f64 - 1.0) / r as f64;
    match th.rho {
        Threshold::Finite(v) => Threshold::Finite(v - edge),
        Threshold::Infinite => Threshold::Infinite,
        Threshold::Unresolved(s) => Threshold::Unresolved(s),
    }
}

pub fn c2_of(th: &Thresholds, r: usize) -> Threshold {
    let edge = (r as f64 - 1.0) / r as f64;
    match th.rho_hat {
        Threshold::Finite(v) => Threshold::Finite(v - edge),
        Threshold::Infinite => Threshold::Infinite,
        Threshold::Unresolved(s) => Threshold::Unresolved(s),
    }
}

/// A reported constant: exact when its inputs are exact, a float when the
/// threshold side of a minimum won, infinite, or unavailable.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundValue {
    Exact(Rat),
    Approx(f64),
    Infinite,
    Unavailable,
}

impl BoundValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            BoundValue::Exact(q) => crate::rat_to_f64(q),
            BoundValue::Approx(v) => *v,
            BoundValue::Infinite => f64::INFINITY,
            BoundValue::Unavailable => f64::NAN,
        }
    }
}

/// Infimum of `p(rho) / (rho - (r-1)/r)`; equals `alpha` exactly when the
/// strict-crossing threshold is infinite.
pub fn beta(inv: &ExactInvariants, th: &Thresholds, opts: &OptimOptions) -> BoundValue {
    if th.rho_hat.is_infinite() {
        return BoundValue::Exact(inv.alpha.clone());
    }
    let r = inv.r;
    let edge = (r as f64 - 1.0) / r as f64;
    let problem = SliceProblem::new(&inv.pf, r);
    let ratio = |rho: f64| p_upper(&problem, rho, &[]).1 / (rho - edge);
    let steps = 400usize;
    let mut best = inv.alpha_f64();
    let mut best_rho = edge;
    for k in 1..=steps {
        let rho = edge + (1.0 - edge) * k as f64 / steps as f64;
        let v = ratio(rho);
        if v < best {
            best = v;
            best_rho = rho;
        }
    }
    if best_rho == edge {
        return BoundValue::Approx(best);
    }
    let mut lo = (best_rho - (1.0 - edge) / steps as f64).max(edge + opts.bisect_tol);
    let mut hi = (best_rho + (1.0 - edge) / steps as f64).min(1.0);
    for _ in 0..60 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if ratio(m1) <= ratio(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let refined = ratio(0.5 * (lo + hi));
    BoundValue::Approx(refined.min(best))
}

/// Lower bounds on the optimality threshold, overall and per residue class
/// of `n` mod `r`.
#[derive(Clone, Debug)]
pub struct C1Bounds {
    pub overall: BoundValue,
    pub per_residue: Vec<BoundValue>,
}

pub fn c1_lower_bound(inv: &ExactInvariants, theta: &Threshold) -> C1Bounds {
    let r = inv.r;
    if inv.deg_p_equals_r() {
        let v = BoundValue::Exact(rat(1, r as i64));
        return C1Bounds {
            overall: v.clone(),
            per_residue: vec![v; r],
        };
    }
    let base = min_pi_theta(inv.pi.clone(), theta, 1);
    let upgraded = min_pi_theta(inv.pi.clone(), theta, 2);
    let sign = num_traits::Signed::signum(&inv.zeta);
    let t_residue = if sign.is_zero() {
        0usize
    } else if num_traits::Signed::is_positive(&sign) {
        1 % r
    } else {
        r - 1
    };
    let per_residue: Vec<BoundValue> = (0..r)
        .map(|i| {
            if i == t_residue {
                upgraded.clone()
            } else {
                base.clone()
            }
        })
        .collect();
    C1Bounds {
        overall: base,
        per_residue,
    }
}

fn min_pi_theta(pi: Option<Rat>, theta: &Threshold, pi_factor: i64) -> BoundValue {
    let pi_scaled = pi.map(|p| p * rat(pi_factor, 1));
    match (pi_scaled, theta) {
        (None, Threshold::Infinite) => BoundValue::Infinite,
        (None, Threshold::Finite(t)) => BoundValue::Approx(*t),
        (Some(p), Threshold::Infinite) => BoundValue::Exact(p),
        (Some(p), Threshold::Finite(t)) => {
            if crate::rat_to_f64(&p) <= *t {
                BoundValue::Exact(p)
            } else {
                BoundValue::Approx(*t)
            }
        }
        (_, Threshold::Unresolved(_)) => BoundValue::Unavailable,
    }
}

#[derive(Clone, Debug)]
pub struct CurveRow {
    pub point: CurvePoint,
    pub line: f64,
}

/// Samples the certified minimum curve together with the reference line.
pub fn emit_curve(
    inv: &ExactInvariants,
    from: f64,
    to: f64,
    step: f64,
    opts: &OptimOptions,
) -> Result<Vec<CurveRow>> {
    if step <= 0.0 {
        return Err(Error::InfeasibleSlice(step));
    }
    let r = inv.r;
    let edge = (r as f64 - 1.0) / r as f64;
    let alpha = inv.alpha_f64();
    let problem = SliceProblem::new(&inv.pf, r);
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    let mut rows = Vec::with_capacity(count);
    for k in 0..count {
        let rho = from + k as f64 * step;
        let point = p_of_rho(&problem, rho, opts.cert_tol, opts)?;
        rows.push(CurveRow {
            point,
            line: alpha * (rho - edge),
        });
    }
    Ok(rows)
}

/// Finite-horizon search for the piecewise optimum
/// `min_k min_s (s_k alpha + sum_i p(s_i))` subject to
/// `sum s = c + k (r-1)/r`, `s_k >= 0`, `s_i >= (r-1)/r`.
pub fn phi_search(inv: &ExactInvariants, c: f64, k_max: usize, grid: usize) -> f64 {
    let r = inv.r;
    let edge = (r as f64 - 1.0) / r as f64;
    let alpha = inv.alpha_f64();
    let problem = SliceProblem::new(&inv.pf, r);
    let ps: Vec<f64> = (0..=grid)
        .map(|i| {
            let s = edge + (1.0 - edge) * i as f64 / grid as f64;
            p_upper(&problem, s, &[]).1
        })
        .collect();
    let s_at = |i: usize| edge + (1.0 - edge) * i as f64 / grid as f64;
    let mut best = alpha * c; // k = 0
    for k in 1..=k_max.min(2) {
        let budget = c + k as f64 * edge;
        if k == 1 {
            for i in 0..=grid {
                let sk = budget - s_at(i);
                if sk >= 0.0 {
                    best = best.min(sk * alpha + ps[i]);
                }
            }
        } else {
            for i in 0..=grid {
                for j in 0..=grid {
                    let sk = budget - s_at(i) - s_at(j);
                    if sk >= 0.0 {
                        best = best.min(sk * alpha + ps[i] + ps[j]);
                    }
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::criticality;
    use crate::invariants::exact_invariants;
    use crate::patterns;

    fn inv_of(g: &crate::Graph) -> ExactInvariants {
        let cs = criticality(g).unwrap();
        exact_invariants(g, &cs).unwrap()
    }

    #[test]
    fn p_vanishes_up_to_the_edge() {
        let inv = inv_of(&patterns::complete(3));
        let problem = SliceProblem::new(&inv.pf, inv.r);
        let opts = OptimOptions::default();
        let cp = p_of_rho(&problem, 0.5, 1e-8, &opts).unwrap();
        assert_eq!(cp.p, 0.0);
        assert_eq!(cp.argmin, vec![0.0, 0.5]);
        let cp = p_of_rho(&problem, 0.3, 1e-8, &opts).unwrap();
        assert_eq!(cp.p, 0.0);
    }

    #[test]
    fn k4_minus_edge_slice_minimum_matches_closed_form() {
        // minimum at (rho - 1/2, 1/2): value rho (rho - 1/2) / 4
        let inv = inv_of(&patterns::complete_minus_edge(4));
        let problem = SliceProblem::new(&inv.pf, inv.r);
        let opts = OptimOptions::default();
        for rho in [0.55, 0.6, 0.75, 0.9, 1.0] {
            let cp = p_of_rho(&problem, rho, 1e-9, &opts).unwrap();
            let expect = rho * (rho - 0.5) / 4.0;
            assert!(
                (cp.p - expect).abs() <= 1e-8,
                "rho = {rho}: got {}, want {expect}",
                cp.p
            );
            assert!(cp.certified_gap <= 1e-9 + 1e-12);
        }
    }

    #[test]
    fn k4_minus_edge_thresholds_are_infinite() {
        let inv = inv_of(&patterns::complete_minus_edge(4));
        let th = rho_thresholds(&inv, &OptimOptions::default());
        assert_eq!(th.rho, Threshold::Infinite);
        assert_eq!(th.rho_hat, Threshold::Infinite);
        assert_eq!(th.certificate, ThresholdCertificate::ExactNonnegativity);
    }

    #[test]
    fn clique_thresholds_use_degree_rule() {
        let inv = inv_of(&patterns::complete(4));
        let th = rho_thresholds(&inv, &OptimOptions::default());
        assert_eq!(th.certificate, ThresholdCertificate::DegreeEqualsR);
        assert!(th.rho.is_infinite() && th.rho_hat.is_infinite());
    }

    #[test]
    fn bipartite_plus_edge_t4_crossing() {
        let inv = inv_of(&patterns::complete_bipartite_plus_edge(3, 4));
        let th = rho_thresholds(&inv, &OptimOptions::default());
        let rho = th.rho.finite().expect("finite threshold");
        // smallest positive root of rho^5 = rho - 1/2
        let mut lo: f64 = 0.5;
        let mut hi: f64 = 0.6;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if mid.powi(5) - mid + 0.5 <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        assert!((rho - root).abs() < 1e-8, "rho = {rho}, root = {root}");
        let rho_hat = th.rho_hat.finite().expect("finite strict threshold");
        assert!((rho_hat - root).abs() < 1e-6);
        assert!(!th.tangency);
    }

    #[test]
    fn c1_bounds_shapes() {
        let inv = inv_of(&patterns::cycle(5));
        let th = rho_thresholds(&inv, &OptimOptions::default());
        let c1 = c1_lower_bound(&inv, &theta_of(&th, inv.r));
        assert_eq!(c1.overall, BoundValue::Exact(rat(1, 2)));

        let inv = inv_of(&patterns::complete_minus_edge(4));
        let th = rho_thresholds(&inv, &OptimOptions::default());
        let c1 = c1_lower_bound(&inv, &theta_of(&th, inv.r));
        assert_eq!(c1.overall, BoundValue::Exact(rat(1, 4)));
        assert_eq!(c1.per_residue[1], BoundValue::Exact(rat(1, 2)));
    }
}
