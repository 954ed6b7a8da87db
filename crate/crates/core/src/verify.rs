//! The verification suite: every check states a mathematical claim, runs it
//! at its stated tolerance, and reports pass/fail. The CLI `verify`
//! subcommand and the acceptance test target both drive this module.

use crate::counting::{build_host, count_copies, count_with_attached_vertex, HostSpec, Partition};
use crate::critical::criticality;
use crate::graph::Graph;
use crate::invariants::{c_value, exact_invariants, ExactInvariants};
use crate::optimize::{
    c1_lower_bound, eval_float, p_of_rho, phi_search, rho_thresholds, theta_of, BoundValue,
    OptimOptions, SliceProblem, Threshold,
};
use crate::oracle::{verify_crossing_quadratic, Oracle, OracleOptions};
use crate::patterns;
use crate::report::{fmt_bound, fmt_rat};
use crate::{rat, rat_to_f64, Rat, RatPoly};
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Quick,
    Full,
}

#[derive(Clone, Debug)]
pub struct Check {
    /// Criterion this check belongs to (1-11).
    pub criterion: u8,
    /// The mathematical claim being tested.
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn ok(criterion: u8, claim: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            criterion,
            claim: claim.into(),
            passed: true,
            detail: detail.into(),
        }
    }

    fn fail(criterion: u8, claim: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            criterion,
            claim: claim.into(),
            passed: false,
            detail: detail.into(),
        }
    }

    fn expect(criterion: u8, claim: impl Into<String>, passed: bool, detail: String) -> Check {
        if passed {
            Check::ok(criterion, claim, detail)
        } else {
            Check::fail(criterion, claim, detail)
        }
    }
}

fn inv_of(g: &Graph) -> ExactInvariants {
    let cs = criticality(g).expect("catalog pattern must be color-critical");
    exact_invariants(g, &cs).expect("catalog invariants")
}

/// Catalog used by the classification and identity checks.
fn catalog() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    for k in 3..=6 {
        out.push((format!("K{k}"), patterns::complete(k)));
    }
    for k in [5, 7, 9] {
        out.push((format!("C{k}"), patterns::cycle(k)));
    }
    for m in 4..=6 {
        out.push((format!("K{m}-e"), patterns::complete_minus_edge(m)));
    }
    for (s, t) in [(2, 3), (3, 3), (3, 4)] {
        out.push((format!("K{s},{t}+"), patterns::complete_bipartite_plus_edge(s, t)));
    }
    out.push(("K3,3+ep".into(), patterns::k33_plus_edge_pendant()));
    out
}

pub fn run_suite(suite: Suite, jobs: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    checks.extend(criterion_1_rademacher(suite, jobs));
    checks.extend(criterion_2_small_q(jobs));
    checks.extend(criterion_3_bridge());
    checks.extend(criterion_4_constant_catalog());
    checks.extend(criterion_5_degree_classification());
    checks.extend(criterion_6_identities());
    checks.extend(criterion_7_thresholds());
    checks.extend(criterion_8_c1_table());
    checks.extend(criterion_9_crossing_quadratic());
    checks.extend(criterion_10_packing_values(jobs));
    checks.extend(criterion_11_properties(suite, jobs));
    checks
}

fn oracle_with(jobs: usize, witnesses: usize) -> Oracle {
    Oracle::new(OracleOptions {
        jobs,
        witnesses,
        ..OracleOptions::default()
    })
}

// 1. h(K3, n, 1) = floor(n/2) for n in 5..8 (8 only in the full suite)
fn criterion_1_rademacher(suite: Suite, jobs: usize) -> Vec<Check> {
    let k3 = patterns::complete(3);
    let orc = oracle_with(jobs, 1);
    let ns: &[usize] = match suite {
        Suite::Quick => &[5, 6, 7],
        Suite::Full => &[5, 6, 7, 8],
    };
    ns.iter()
        .map(|&n| {
            let claim = format!("h(K3, {n}, 1) = floor({n}/2) = {}", n / 2);
            match orc.h(&k3, n, 1) {
                Ok(res) => Check::expect(
                    1,
                    claim,
                    res.value == (n / 2) as u64,
                    format!("computed {} over {} graphs", res.value, res.graphs_examined),
                ),
                Err(e) => Check::fail(1, claim, e.to_string()),
            }
        })
        .collect()
}

fn contains_spanning_complete_bipartite(g: &Graph) -> bool {
    let n = g.vertex_count();
    // bipartitions with vertex 0 on the A side
    for mask in 0u64..(1 << (n - 1)) {
        let a = mask << 1 | 1;
        let b = !a & ((1u64 << n) - 1);
        if b == 0 {
            continue;
        }
        let mut complete = true;
        'outer: for u in 0..n {
            if a >> u & 1 == 0 {
                continue;
            }
            let need = b;
            if g.row(u) & need != need {
                complete = false;
                break 'outer;
            }
        }
        if complete {
            return true;
        }
    }
    false
}

// 2. h(K3, 6, q) = 3q for q in {1,2,3}, and every minimizing witness
//    contains a spanning complete bipartite subgraph
fn criterion_2_small_q(jobs: usize) -> Vec<Check> {
    let k3 = patterns::complete(3);
    let orc = oracle_with(jobs, 100_000);
    let mut out = Vec::new();
    for q in 1..=3usize {
        let claim = format!("h(K3, 6, {q}) = {}", 3 * q);
        match orc.h(&k3, 6, q) {
            Ok(res) => {
                out.push(Check::expect(
                    2,
                    claim,
                    res.value == (3 * q) as u64,
                    format!("computed {} with {} minimizers", res.value, res.witnesses.len()),
                ));
                let wit_claim = format!(
                    "every minimizer of h(K3, 6, {q}) contains a spanning complete bipartite subgraph"
                );
                let all = res.witnesses.iter().all(contains_spanning_complete_bipartite);
                out.push(Check::expect(
                    2,
                    wit_claim,
                    all,
                    format!("checked {} witnesses", res.witnesses.len()),
                ));
            }
            Err(e) => out.push(Check::fail(2, claim, e.to_string())),
        }
    }
    out
}

// 3. c_value(F, partition) equals the brute copy count on the
//    Turán-plus-one-edge host, for all partitions with parts in [0, 5]
fn criterion_3_bridge() -> Vec<Check> {
    let pats: Vec<(String, Graph)> = vec![
        ("K3".into(), patterns::complete(3)),
        ("C5".into(), patterns::cycle(5)),
        ("K4-e".into(), patterns::complete_minus_edge(4)),
        ("K2,3+".into(), patterns::complete_bipartite_plus_edge(2, 3)),
    ];
    let mut out = Vec::new();
    for (name, f) in pats {
        let inv = inv_of(&f);
        let mut cases = 0usize;
        let mut bad = Vec::new();
        for n1 in 2..=5usize {
            for n2 in 0..=5usize {
                cases += 1;
                let poly_val = c_value(&inv.c_poly, &[n1, n2]);
                let host = build_host(&HostSpec {
                    partition: Partition::new(vec![n1, n2]),
                    extra_edges: vec![(0, 1)],
                    attached: None,
                })
                .expect("valid host");
                let brute = count_copies(&f, &host).expect("count") as i128;
                if poly_val != brute {
                    bad.push(format!("({n1},{n2}): poly {poly_val} vs count {brute}"));
                }
            }
        }
        out.push(Check::expect(
            3,
            format!("copy polynomial of {name} equals host enumeration on all parts in [0,5]"),
            bad.is_empty(),
            if bad.is_empty() {
                format!("{cases} partitions, exact equality")
            } else {
                bad.join("; ")
            },
        ));
    }
    out
}

// 4. exact rational constants for the catalog families
fn criterion_4_constant_catalog() -> Vec<Check> {
    let mut out = Vec::new();
    let mut check_consts =
        |name: &str, f: &Graph, alpha: Rat, zeta: Rat, pi: Option<Rat>| {
            let inv = inv_of(f);
            let got_pi = inv.pi.clone();
            let pass = inv.alpha == alpha && inv.zeta == zeta && got_pi == pi;
            out.push(Check::expect(
                4,
                format!(
                    "{name}: alpha = {}, zeta = {}, pi = {}",
                    fmt_rat(&alpha),
                    fmt_rat(&zeta),
                    pi.as_ref().map(fmt_rat).unwrap_or_else(|| "inf".into())
                ),
                pass,
                format!(
                    "computed alpha = {}, zeta = {}, pi = {}",
                    fmt_rat(&inv.alpha),
                    fmt_rat(&inv.zeta),
                    got_pi.as_ref().map(fmt_rat).unwrap_or_else(|| "inf".into())
                ),
            ));
        };
    for r in 2..=4i64 {
        let f = patterns::complete_minus_edge(r as usize + 2);
        let rr = |k: i64| -> Rat {
            let mut acc = rat(1, 1);
            for _ in 0..k {
                acc *= rat(r, 1);
            }
            acc
        };
        check_consts(
            &format!("K{}-e", r + 2),
            &f,
            rat(r - 1, 2) / rr(r),
            rat(1, 2) / rr(r - 2),
            Some(rat(r - 1, r * r)),
        );
    }
    for (s, t) in [(2i64, 2i64), (2, 3), (3, 3), (3, 4)] {
        let f = patterns::complete_bipartite_plus_edge(s as usize, t as usize);
        let fact = |k: i64| -> Rat {
            let mut acc = rat(1, 1);
            for i in 2..=k {
                acc *= rat(i, 1);
            }
            acc
        };
        let pow2 = |k: i64| -> Rat {
            let mut acc = rat(1, 1);
            for _ in 0..k {
                acc *= rat(1, 2);
            }
            acc
        };
        let denom = fact(t) * fact(s - 2);
        let alpha = pow2(t + s - 2) / denom.clone();
        let zeta = rat(t - s + 2, 1) * pow2(t + s - 3) / denom;
        let pi = if t == s - 2 {
            None
        } else {
            Some(rat(1, 2 * (t - s + 2).abs()))
        };
        check_consts(&format!("K{s},{t}+"), &f, alpha, zeta, pi);
    }
    // the 7-vertex pendant pattern, including its density polynomial
    let f = patterns::k33_plus_edge_pendant();
    check_consts("K3,3+ep", &f, rat(1, 192), rat(1, 32), Some(rat(1, 6)));
    let inv = inv_of(&f);
    let x1 = RatPoly::var(2, 0);
    let x2 = RatPoly::var(2, 1);
    let expect = x1
        .mul(&x2.pow(3))
        .add(&x1.pow(3).mul(&x2))
        .scale(&rat(1, 24));
    out.push(Check::expect(
        4,
        "K3,3+ep: P(xi) = (xi1 xi2^3 + xi1^3 xi2) / 24".to_string(),
        inv.pf == expect,
        format!("computed {}", inv.pf.to_canonical_string(&["xi1", "xi2"])),
    ));
    out
}

// 5. deg P = r exactly for cliques and odd cycles; deg P > r otherwise
fn criterion_5_degree_classification() -> Vec<Check> {
    let mut out = Vec::new();
    for r in 2..=5usize {
        let inv = inv_of(&patterns::complete(r + 1));
        out.push(Check::expect(
            5,
            format!("deg P(K{}) = r = {r}", r + 1),
            inv.deg_p == r,
            format!("computed {}", inv.deg_p),
        ));
    }
    for k in 1..=4usize {
        let inv = inv_of(&patterns::cycle(2 * k + 1));
        out.push(Check::expect(
            5,
            format!("deg P(C{}) = r = 2", 2 * k + 1),
            inv.deg_p == 2,
            format!("computed {}", inv.deg_p),
        ));
    }
    for (name, f) in catalog() {
        let is_clique = name.starts_with('K') && !name.contains(['-', '+', ',']);
        let is_cycle = name.starts_with('C');
        if is_clique || is_cycle {
            continue;
        }
        let inv = inv_of(&f);
        out.push(Check::expect(
            5,
            format!("deg P({name}) > r = {}", inv.r),
            inv.deg_p > inv.r,
            format!("computed {}", inv.deg_p),
        ));
    }
    out
}

// 6. identity suite on the exact polynomials
fn criterion_6_identities() -> Vec<Check> {
    let mut out = Vec::new();
    for (name, f) in catalog() {
        let inv = inv_of(&f);
        let r = inv.r;
        // gradient identity at (0, 1/r, .., 1/r)
        let mut point = vec![rat(1, r as i64); r];
        point[0] = Rat::zero();
        let grad = inv.pf.derivative(0).evaluate(&point);
        out.push(Check::expect(
            6,
            format!("{name}: dP/dxi1 at (0, 1/r, ..) equals alpha"),
            grad == inv.alpha,
            format!("computed {}", fmt_rat(&grad)),
        ));
        // vanishing identity at (1/r, .., 1/r, 0)
        let mut point = vec![rat(1, r as i64); r];
        point[r - 1] = Rat::zero();
        let vanish = inv.pf.evaluate(&point);
        out.push(Check::expect(
            6,
            format!("{name}: P(1/r, .., 1/r, 0) = 0"),
            vanish.is_zero(),
            format!("computed {}", fmt_rat(&vanish)),
        ));
        // symmetry and nonnegative coefficients
        out.push(Check::expect(
            6,
            format!("{name}: P is symmetric with nonnegative coefficients"),
            inv.pf.is_symmetric() && inv.pf.coefficients_nonnegative(),
            String::new(),
        ));
        // derivative symmetry of c on the balanced diagonal, i, j >= 2
        let mut sym_ok = true;
        let d_ref = crate::invariants::c_on_diagonal(&inv.c_poly.derivative(1), r);
        for i in 2..r {
            let d_i = crate::invariants::c_on_diagonal(&inv.c_poly.derivative(i), r);
            if d_i != d_ref {
                sym_ok = false;
            }
        }
        out.push(Check::expect(
            6,
            format!("{name}: dc/dn_i agree at the balanced point for i >= 2"),
            sym_ok,
            String::new(),
        ));
        // Taylor consistency: the n^(f-3) part of
        // c(n/r + a_1, ..) - c(n/r, ..) is exactly -zeta a_1
        out.push(taylor_check(&name, &inv));
    }
    out
}

fn taylor_check(name: &str, inv: &ExactInvariants) -> Check {
    let r = inv.r;
    let f = inv.f;
    // variables: 0 = n, 1..r = a_1..a_(r-1); a_r = -(a_1 + .. + a_(r-1))
    let nv = r; // n plus r-1 shift variables
    let n_over_r = RatPoly::var(nv, 0).scale(&rat(1, r as i64));
    let mut subs = Vec::with_capacity(r);
    let mut a_sum = RatPoly::zero(nv);
    for i in 0..r - 1 {
        let a_i = RatPoly::var(nv, i + 1);
        a_sum = a_sum.add(&a_i);
        subs.push(n_over_r.add(&a_i));
    }
    subs.push(n_over_r.sub(&a_sum));
    let shifted = inv.c_poly.compose(&subs);
    let base = inv
        .c_poly
        .compose(&vec![n_over_r.clone(); r]);
    let diff = shifted.sub(&base);
    // no monomial may carry n-degree >= f-2
    let mut high_ok = true;
    for (e, _) in diff.terms() {
        if e[0] as usize >= f - 1 {
            high_ok = false;
        }
    }
    let head = diff.coeff_of(0, (f as u32).saturating_sub(3));
    let expect = if r >= 2 {
        RatPoly::var(nv, 1).scale(&(-inv.zeta.clone()))
    } else {
        RatPoly::zero(nv)
    };
    // guard against the degenerate f < 3 case (cannot occur for r >= 2)
    let pass = high_ok && head == expect && f >= 3;
    Check::expect(
        6,
        format!("{name}: the n^(f-3) part of the partition shift of c is -zeta * a1"),
        pass,
        String::new(),
    )
}

// 7. threshold reproduction
fn criterion_7_thresholds() -> Vec<Check> {
    let opts = OptimOptions::default();
    let mut out = Vec::new();
    // independent bisection oracle for the smallest positive root of
    // rho^5 = rho - 1/2
    let mut lo: f64 = 0.5;
    let mut hi: f64 = 0.6;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid.powi(5) - mid + 0.5 <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    let inv = inv_of(&patterns::complete_bipartite_plus_edge(3, 4));
    let th = rho_thresholds(&inv, &opts);
    match th.rho.finite() {
        Some(v) => {
            out.push(Check::expect(
                7,
                "rho(K3,4+) equals the smallest positive root of rho^5 = rho - 1/2 within 1e-8"
                    .to_string(),
                (v - root).abs() <= 1e-8,
                format!("computed {v:.12}, root {root:.12}"),
            ));
            let theta = v - 0.5;
            out.push(Check::expect(
                7,
                "theta(K3,4+) lies strictly inside (2^-5, 2^-4)".to_string(),
                theta > 1.0 / 32.0 && theta < 1.0 / 16.0,
                format!("theta = {theta:.12}"),
            ));
        }
        None => out.push(Check::fail(
            7,
            "rho(K3,4+) is finite".to_string(),
            format!("{:?}", th.rho),
        )),
    }
    let infinite_cases: Vec<(String, Graph)> = vec![
        ("K4-e".into(), patterns::complete_minus_edge(4)),
        ("K2,3+".into(), patterns::complete_bipartite_plus_edge(2, 3)),
        ("C3".into(), patterns::cycle(3)),
        ("C5".into(), patterns::cycle(5)),
        ("C7".into(), patterns::cycle(7)),
        ("C9".into(), patterns::cycle(9)),
        ("K3".into(), patterns::complete(3)),
        ("K4".into(), patterns::complete(4)),
        ("K5".into(), patterns::complete(5)),
        ("K6".into(), patterns::complete(6)),
    ];
    for (name, f) in infinite_cases {
        let inv = inv_of(&f);
        let th = rho_thresholds(&inv, &opts);
        out.push(Check::expect(
            7,
            format!("rho({name}) = rho_hat({name}) = inf"),
            th.rho.is_infinite() && th.rho_hat.is_infinite(),
            format!("certificate: {:?}", th.certificate),
        ));
    }
    out
}

// 8. the optimality-threshold lower-bound table
fn criterion_8_c1_table() -> Vec<Check> {
    let opts = OptimOptions::default();
    let mut out = Vec::new();
    let c1_of = |f: &Graph| {
        let inv = inv_of(f);
        let th = rho_thresholds(&inv, &opts);
        (c1_lower_bound(&inv, &theta_of(&th, inv.r)), inv, th)
    };
    for k in [5usize, 7, 9] {
        let (c1, ..) = c1_of(&patterns::cycle(k));
        let all_half = c1.per_residue.iter().all(|b| *b == BoundValue::Exact(rat(1, 2)));
        out.push(Check::expect(
            8,
            format!("c1(C{k}) >= 1/2 on every residue"),
            c1.overall == BoundValue::Exact(rat(1, 2)) && all_half,
            format!("computed {}", fmt_bound(&c1.overall)),
        ));
    }
    for r in 2..=5usize {
        let (c1, ..) = c1_of(&patterns::complete(r + 1));
        out.push(Check::expect(
            8,
            format!("c1(K{}) >= 1/{r}", r + 1),
            c1.overall == BoundValue::Exact(rat(1, r as i64)),
            format!("computed {}", fmt_bound(&c1.overall)),
        ));
    }
    for r in 2..=4i64 {
        let (c1, ..) = c1_of(&patterns::complete_minus_edge(r as usize + 2));
        let pi = rat(r - 1, r * r);
        let pass = c1.overall == BoundValue::Exact(pi.clone())
            && c1.per_residue[1] == BoundValue::Exact(pi.clone() * rat(2, 1));
        out.push(Check::expect(
            8,
            format!("c1(K{}-e) >= (r-1)/r^2 with the doubled residue-1 bound", r + 2),
            pass,
            format!(
                "computed {} / residue-1 {}",
                fmt_bound(&c1.overall),
                fmt_bound(&c1.per_residue[1])
            ),
        ));
    }
    // bipartite-plus-edge: min(pi, theta), residue 1 gets min(2 pi, theta)
    for (s, t) in [(2usize, 3usize), (3, 3), (3, 4)] {
        let f = patterns::complete_bipartite_plus_edge(s, t);
        let (c1, inv, th) = c1_of(&f);
        let theta = theta_of(&th, inv.r);
        let pi = inv.pi.clone().expect("finite pi for these (s,t)");
        let expected_base = match &theta {
            Threshold::Infinite => BoundValue::Exact(pi.clone()),
            Threshold::Finite(tv) => {
                if rat_to_f64(&pi) <= *tv {
                    BoundValue::Exact(pi.clone())
                } else {
                    BoundValue::Approx(*tv)
                }
            }
            Threshold::Unresolved(_) => BoundValue::Unavailable,
        };
        let expected_up = match &theta {
            Threshold::Infinite => BoundValue::Exact(pi.clone() * rat(2, 1)),
            Threshold::Finite(tv) => {
                if rat_to_f64(&pi) * 2.0 <= *tv {
                    BoundValue::Exact(pi.clone() * rat(2, 1))
                } else {
                    BoundValue::Approx(*tv)
                }
            }
            Threshold::Unresolved(_) => BoundValue::Unavailable,
        };
        let pass = c1.overall == expected_base && c1.per_residue[1] == expected_up;
        out.push(Check::expect(
            8,
            format!("c1(K{s},{t}+) >= min(pi, theta); residue 1 gets min(2 pi, theta)"),
            pass,
            format!(
                "computed {} / residue-1 {}",
                fmt_bound(&c1.overall),
                fmt_bound(&c1.per_residue[1])
            ),
        ));
    }
    out
}

// 9. the packing-comparison quadratic of the pendant pattern
fn criterion_9_crossing_quadratic() -> Vec<Check> {
    let f = patterns::k33_plus_edge_pendant();
    let cs = criticality(&f).expect("pendant pattern is critical");
    let inv = exact_invariants(&f, &cs).expect("invariants");
    let mut out = Vec::new();
    match verify_crossing_quadratic(&f, &cs, &inv) {
        Ok(res) => {
            out.push(Check::expect(
                9,
                "packing comparison reduces to 4c^2 - 6c + 1 = 0".to_string(),
                res.quadratic == (4, -6, 1),
                format!("computed {:?}", res.quadratic),
            ));
            let expect = (3.0 - 5f64.sqrt()) / 4.0;
            out.push(Check::expect(
                9,
                "smaller root equals (3 - sqrt 5)/4 to 12 digits".to_string(),
                (res.roots.0 - expect).abs() <= 5e-13,
                format!("computed {:.15}", res.roots.0),
            ));
            out.push(Check::expect(
                9,
                "(3 - sqrt 5)/4 > 1/6, exceeding the generic balance bound".to_string(),
                res.exceeds_pi && res.roots.0 > 1.0 / 6.0,
                format!("root {:.12} vs 1/6", res.roots.0),
            ));
            out.push(Check::expect(
                9,
                "odd-residue analog yields 2 pi = 1/3".to_string(),
                res.odd_residue_bound == rat(1, 3),
                format!("computed {}", fmt_rat(&res.odd_residue_bound)),
            ));
        }
        Err(e) => out.push(Check::fail(9, "packing comparison quadratic", e.to_string())),
    }
    out
}

// 10. t(K4-e, 8, q) matches the matching-then-path packing values
fn criterion_10_packing_values(jobs: usize) -> Vec<Check> {
    let f = patterns::complete_minus_edge(4);
    let orc = oracle_with(jobs, 2);
    let mut out = Vec::new();
    for q in 1..=4usize {
        let expected = if q <= 2 {
            6 * q as u64
        } else {
            6 * q as u64 + 2 * (q as u64 - 2) * 4
        };
        let claim = format!("t(K4-e, 8, {q}) = {expected}");
        match orc.t(&f, 8, q) {
            Ok(res) => out.push(Check::expect(
                10,
                claim,
                res.value == expected,
                format!("computed {} over {} configurations", res.value, res.graphs_examined),
            )),
            Err(e) => out.push(Check::fail(10, claim, e.to_string())),
        }
    }
    out
}

// 11. property suite
fn criterion_11_properties(suite: Suite, jobs: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let k3 = patterns::complete(3);
    let k4e = patterns::complete_minus_edge(4);

    // determinism across worker counts
    {
        let mut sigs = Vec::new();
        for j in [1usize, 2, 8] {
            let orc = oracle_with(j, 4);
            let h = orc.h(&k3, 6, 2).expect("h(6,2)");
            let t = orc.t(&k4e, 8, 3).expect("t(8,3)");
            sigs.push((
                h.value,
                h.witnesses.iter().map(Graph::to_graph6).collect::<Vec<_>>(),
                h.graphs_examined,
                t.value,
                t.witnesses.iter().map(Graph::to_graph6).collect::<Vec<_>>(),
                t.graphs_examined,
            ));
        }
        out.push(Check::expect(
            11,
            "oracle results are identical with 1, 2, and 8 workers".to_string(),
            sigs.windows(2).all(|w| w[0] == w[1]),
            String::new(),
        ));
    }

    // p(rho) monotone on a sampled grid
    {
        let opts = OptimOptions::default();
        let mut mono = true;
        for f in [&k4e, &patterns::complete_bipartite_plus_edge(3, 4)] {
            let inv = inv_of(f);
            let problem = SliceProblem::new(&inv.pf, inv.r);
            let mut last = -1.0;
            for k in 0..=50 {
                let rho = 0.5 + 0.01 * k as f64;
                let p = p_of_rho(&problem, rho, opts.cert_tol, &opts).expect("p").p;
                if p < last - 1e-12 {
                    mono = false;
                }
                last = p;
            }
        }
        out.push(Check::expect(
            11,
            "p(rho) is nondecreasing on the sampled grid".to_string(),
            mono,
            String::new(),
        ));
    }

    // h <= t at equal host size
    {
        let orc = oracle_with(jobs, 1);
        let mut ok = true;
        let mut detail = Vec::new();
        let c5 = patterns::cycle(5);
        for (f, name, n, qs) in [
            (&k3, "K3", 6usize, vec![1usize, 2, 3]),
            (&k3, "K3", 7, vec![1, 2]),
            (&c5, "C5", 6, vec![1]),
            (&k4e, "K4-e", 6, vec![1, 2]),
        ] {
            let ex = orc.ex(f, n).expect("ex").value;
            if ex != patterns::turan_edge_count(2, n) as u64 {
                continue; // h and t count different host sizes
            }
            for q in qs {
                let h = orc.h(f, n, q).expect("h").value;
                let t = orc.t(f, n, q).expect("t").value;
                if h > t {
                    ok = false;
                    detail.push(format!("{name} n={n} q={q}: h {h} > t {t}"));
                }
            }
        }
        out.push(Check::expect(
            11,
            "h <= t whenever the extremal number matches the balanced host".to_string(),
            ok,
            detail.join("; "),
        ));
    }

    // witnesses recount to their recorded value
    {
        let orc = oracle_with(jobs, 8);
        let mut ok = true;
        for (n, q) in [(6usize, 1usize), (6, 2), (7, 1)] {
            let res = orc.h(&k3, n, q).expect("h");
            for w in &res.witnesses {
                if count_copies(&k3, w).expect("count") != res.value {
                    ok = false;
                }
            }
        }
        out.push(Check::expect(
            11,
            "every stored witness reproduces its recorded copy count".to_string(),
            ok,
            String::new(),
        ));
    }

    // graph6 round trip over assorted graphs
    {
        let mut ok = true;
        let mut graphs: Vec<Graph> = catalog().into_iter().map(|(_, g)| g).collect();
        graphs.push(patterns::turan(3, 11));
        graphs.push(Graph::empty(0).unwrap());
        graphs.push(Graph::empty(1).unwrap());
        graphs.push(patterns::petersen());
        for g in &graphs {
            let enc = g.to_graph6();
            match Graph::parse_graph6(&enc) {
                Ok(back) => {
                    if &back != g {
                        ok = false;
                    }
                }
                Err(_) => ok = false,
            }
        }
        out.push(Check::expect(
            11,
            "graph6 encode/parse round trip is vertex-identical".to_string(),
            ok,
            format!("{} graphs", graphs.len()),
        ));
    }

    // attachment approximation bound with the coefficient-derived constant
    {
        let mut ok = true;
        let mut cases = 0usize;
        let mut worst: f64 = 0.0;
        for f in [&k3, &patterns::cycle(5), &k4e] {
            let cs = criticality(f).expect("critical");
            let inv = exact_invariants(f, &cs).expect("invariants");
            let pf_float = crate::rat_poly_to_float(&inv.pf);
            for n1 in 1..=5usize {
                for n2 in 1..=5usize {
                    let n = n1 + n2;
                    if n < inv.f {
                        continue;
                    }
                    let sizes = vec![n1, n2];
                    let c_bound = inv.attachment_error_constant(&sizes)
                        * (n as f64).powi(inv.f as i32 - 2);
                    for d1 in 0..=n1 {
                        for d2 in 0..=n2 {
                            cases += 1;
                            let exact = count_with_attached_vertex(
                                f,
                                &cs,
                                &Partition::new(sizes.clone()),
                                &[d1, d2],
                            )
                            .expect("attached count")
                                as f64;
                            let xi = [d1 as f64 / n as f64, d2 as f64 / n as f64];
                            let approx =
                                (n as f64).powi(inv.f as i32 - 1) * eval_float(&pf_float, &xi);
                            let err = (exact - approx).abs();
                            worst = worst.max(err - c_bound);
                            if err > c_bound {
                                ok = false;
                            }
                        }
                    }
                }
            }
        }
        out.push(Check::expect(
            11,
            "attached-vertex counts track n^(f-1) P(d/n) within the derived constant".to_string(),
            ok,
            format!("{cases} cases, worst margin {worst:.3}"),
        ));
    }

    // full suite: the piecewise optimum flips exactly at the c2 threshold
    if suite == Suite::Full {
        let inv = inv_of(&patterns::complete_bipartite_plus_edge(3, 4));
        let th = rho_thresholds(&inv, &OptimOptions::default());
        if let Some(rho_hat) = th.rho_hat.finite() {
            let c2 = rho_hat - 0.5;
            let alpha = rat_to_f64(&inv.alpha);
            let below = phi_search(&inv, c2 - 0.02, 2, 64);
            let above = phi_search(&inv, c2 + 0.02, 2, 64);
            let pass = (below - alpha * (c2 - 0.02)).abs() <= 1e-9
                && above < alpha * (c2 + 0.02) - 1e-12;
            out.push(Check::expect(
                11,
                "the piecewise optimum leaves the linear branch at the c2 threshold".to_string(),
                pass,
                format!(
                    "phi below {below:.3e} vs line {:.3e}; above {above:.3e} vs {:.3e}",
                    alpha * (c2 - 0.02),
                    alpha * (c2 + 0.02)
                ),
            ));
        }
    }
    out
}

/// Renders one line per check; returns overall success.
pub fn render(checks: &[Check], out: &mut impl std::io::Write) -> std::io::Result<bool> {
    let mut all = true;
    for c in checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        all &= c.passed;
        if c.detail.is_empty() {
            writeln!(out, "{status} [criterion {}] {}", c.criterion, c.claim)?;
        } else {
            writeln!(
                out,
                "{status} [criterion {}] {} :: {}",
                c.criterion, c.claim, c.detail
            )?;
        }
    }
    Ok(all)
}
