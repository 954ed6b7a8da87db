//! The full analysis pipeline for one pattern and its deterministic report
//! document (text and JSON).

use crate::critical::{criticality, is_pair_free, CriticalStructure, PairWitness};
use crate::error::Result;
use crate::graph::Graph;
use crate::invariants::{exact_invariants, ExactInvariants};
use crate::optimize::{
    beta, c1_lower_bound, c2_of, rho_thresholds, theta_of, BoundValue, C1Bounds, OptimOptions,
    Threshold, ThresholdCertificate, Thresholds,
};
use crate::patterns::{recognize, PatternFamily};
use crate::{rat, Rat};
use num_traits::One;
use serde_json::{json, Map, Value};

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    pub optim: OptimOptions,
}

pub struct Analysis {
    pub pattern: Graph,
    pub canonical_g6: String,
    pub cs: CriticalStructure,
    pub inv: ExactInvariants,
    pub pair_free: bool,
    pub pair_witness: Option<PairWitness>,
    pub thresholds: Thresholds,
    pub theta: Threshold,
    pub c2: Threshold,
    pub beta: BoundValue,
    pub c1: C1Bounds,
    pub warnings: Vec<String>,
}

pub fn analyze(f: &Graph, opts: &AnalyzeOptions) -> Result<Analysis> {
    let cs = criticality(f)?;
    let inv = exact_invariants(f, &cs)?;
    let (pair_free, pair_witness) = is_pair_free(f, cs.r);
    let thresholds = rho_thresholds(&inv, &opts.optim);
    let theta = theta_of(&thresholds, inv.r);
    let c2 = c2_of(&thresholds, inv.r);
    let beta_v = beta(&inv, &thresholds, &opts.optim);
    let c1 = c1_lower_bound(&inv, &theta);
    let mut warnings = Vec::new();
    if thresholds.tangency {
        warnings.push(
            "threshold touch and strict crossing are numerically indistinguishable (tangency)"
                .to_string(),
        );
    }
    if let Threshold::Unresolved(res) = &thresholds.rho {
        warnings.push(format!(
            "no crossing found up to scan resolution {res}; the touch threshold is not certified"
        ));
    }
    if let Threshold::Unresolved(res) = &thresholds.rho_hat {
        warnings.push(format!(
            "no strict crossing found up to scan resolution {res}; not certified"
        ));
    }
    if recognize(f)
        .iter()
        .any(|fam| matches!(fam, PatternFamily::OddCycle(_)))
    {
        warnings.push(
            "copy counts are unlabeled subgraph counts; rooted or oriented cycle conventions \
             differ by constant factors"
                .to_string(),
        );
    }
    let canonical_g6 = crate::autom::canonical_graph6(f)?;
    Ok(Analysis {
        pattern: f.clone(),
        canonical_g6,
        cs,
        inv,
        pair_free,
        pair_witness,
        thresholds,
        theta,
        c2,
        beta: beta_v,
        c1,
        warnings,
    })
}

// ---- deterministic formatting ----------------------------------------------

pub fn fmt_rat(q: &Rat) -> String {
    format!("{q}")
}

/// Twelve significant digits; infinities print as `inf`.
pub fn fmt_real(x: f64) -> String {
    if x.is_infinite() {
        return "inf".into();
    }
    format!("{x:.11e}")
}

pub fn fmt_threshold(t: &Threshold) -> String {
    match t {
        Threshold::Finite(v) => fmt_real(*v),
        Threshold::Infinite => "inf".into(),
        Threshold::Unresolved(res) => format!("unresolved(resolution={res})"),
    }
}

pub fn fmt_bound(b: &BoundValue) -> String {
    match b {
        BoundValue::Exact(q) => fmt_rat(q),
        BoundValue::Approx(v) => fmt_real(*v),
        BoundValue::Infinite => "inf".into(),
        BoundValue::Unavailable => "unresolved".into(),
    }
}

fn certificate_name(c: ThresholdCertificate) -> &'static str {
    match c {
        ThresholdCertificate::DegreeEqualsR => "degree-equals-r",
        ThresholdCertificate::ExactNonnegativity => "exact-nonnegativity",
        ThresholdCertificate::CrossingBracket => "crossing-bracket",
        ThresholdCertificate::NoCertificate => "none",
    }
}

/// One expected-vs-computed row of the known-values table.
#[derive(Clone, Debug)]
pub struct KnownCheck {
    pub family: String,
    pub field: String,
    pub expected: String,
    pub actual: String,
    pub matches: bool,
}

fn factorial(k: usize) -> Rat {
    let mut acc = Rat::one();
    for i in 2..=k {
        acc *= rat(i as i64, 1);
    }
    acc
}

fn pow_rat(base: Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= base.clone();
    }
    acc
}

/// Closed-form constants for the recognized families.
pub fn known_checks(analysis: &Analysis) -> Vec<KnownCheck> {
    let mut out = Vec::new();
    let inv = &analysis.inv;
    let mut push = |family: &str, field: &str, expected: String, actual: String| {
        let matches = expected == actual;
        out.push(KnownCheck {
            family: family.into(),
            field: field.into(),
            expected,
            actual,
            matches,
        });
    };
    for fam in recognize(&analysis.pattern) {
        let name = fam.name();
        match fam {
            PatternFamily::Clique(k) => {
                let r = k - 1;
                push(&name, "deg_p", r.to_string(), inv.deg_p.to_string());
                push(
                    &name,
                    "c1_lower",
                    fmt_rat(&rat(1, r as i64)),
                    fmt_bound(&analysis.c1.overall),
                );
                push(
                    &name,
                    "rho",
                    "inf".into(),
                    fmt_threshold(&analysis.thresholds.rho),
                );
            }
            PatternFamily::OddCycle(_) => {
                push(&name, "deg_p", "2".into(), inv.deg_p.to_string());
                push(
                    &name,
                    "c1_lower",
                    "1/2".into(),
                    fmt_bound(&analysis.c1.overall),
                );
                push(
                    &name,
                    "rho",
                    "inf".into(),
                    fmt_threshold(&analysis.thresholds.rho),
                );
            }
            PatternFamily::CliqueMinusEdge(m) => {
                if m < 4 {
                    continue;
                }
                let r = (m - 2) as i64;
                let alpha = rat(r - 1, 2) / pow_rat(rat(r, 1), r as usize);
                let zeta = rat(1, 2) / pow_rat(rat(r, 1), (r - 2) as usize);
                let pi = rat(r - 1, r * r);
                push(&name, "alpha", fmt_rat(&alpha), fmt_rat(&inv.alpha));
                push(&name, "zeta", fmt_rat(&zeta), fmt_rat(&inv.zeta));
                push(
                    &name,
                    "pi",
                    fmt_rat(&pi),
                    inv.pi.as_ref().map(fmt_rat).unwrap_or_else(|| "inf".into()),
                );
                push(
                    &name,
                    "rho",
                    "inf".into(),
                    fmt_threshold(&analysis.thresholds.rho),
                );
                push(&name, "c1_lower", fmt_rat(&pi), fmt_bound(&analysis.c1.overall));
            }
            PatternFamily::BipartitePlusEdge(s, t) => {
                let denom = factorial(t) * factorial(s - 2);
                let alpha = pow_rat(rat(1, 2), t + s - 2) / denom.clone();
                let zeta =
                    rat(t as i64 - s as i64 + 2, 1) * pow_rat(rat(1, 2), t + s - 3) / denom;
                push(&name, "alpha", fmt_rat(&alpha), fmt_rat(&inv.alpha));
                push(&name, "zeta", fmt_rat(&zeta), fmt_rat(&inv.zeta));
                let pi_expected = if t + 2 == s {
                    "inf".to_string()
                } else {
                    let d = (t as i64 - s as i64 + 2).abs();
                    fmt_rat(&rat(1, 2 * d))
                };
                push(
                    &name,
                    "pi",
                    pi_expected,
                    inv.pi.as_ref().map(fmt_rat).unwrap_or_else(|| "inf".into()),
                );
                push(&name, "deg_p", (t + 1).to_string(), inv.deg_p.to_string());
                if t == 2 || t == 3 {
                    push(
                        &name,
                        "rho",
                        "inf".into(),
                        fmt_threshold(&analysis.thresholds.rho),
                    );
                }
                push(
                    &name,
                    "pair_free",
                    (t >= 3).to_string(),
                    analysis.pair_free.to_string(),
                );
            }
            PatternFamily::K33EdgePendant => {
                push(&name, "alpha", "1/192".into(), fmt_rat(&inv.alpha));
                push(&name, "zeta", "1/32".into(), fmt_rat(&inv.zeta));
                push(
                    &name,
                    "pi",
                    "1/6".into(),
                    inv.pi.as_ref().map(fmt_rat).unwrap_or_else(|| "inf".into()),
                );
                push(
                    &name,
                    "rho",
                    "inf".into(),
                    fmt_threshold(&analysis.thresholds.rho),
                );
                push(&name, "pair_free", "false".into(), analysis.pair_free.to_string());
            }
        }
    }
    out
}

/// The stable report: deterministic serialization, sorted JSON keys,
/// rationals as `p/q`, reals at 12 significant digits, infinities as `inf`.
pub struct ReportDocument {
    pub version: String,
    pub analysis: Analysis,
    pub known: Vec<KnownCheck>,
}

pub fn report(analysis: Analysis) -> ReportDocument {
    let known = known_checks(&analysis);
    ReportDocument {
        version: env!("CARGO_PKG_VERSION").to_string(),
        analysis,
        known,
    }
}

impl ReportDocument {
    pub fn to_json(&self) -> Value {
        let a = &self.analysis;
        let inv = &a.inv;
        let xi_names: Vec<String> = (1..=inv.r).map(|i| format!("xi{i}")).collect();
        let n_names: Vec<String> = (1..=inv.r).map(|i| format!("n{i}")).collect();
        let xi_refs: Vec<&str> = xi_names.iter().map(String::as_str).collect();
        let n_refs: Vec<&str> = n_names.iter().map(String::as_str).collect();
        let mut params = Map::new();
        params.insert("r".into(), json!(inv.r));
        params.insert("f".into(), json!(inv.f));
        params.insert("aut".into(), json!(inv.aut));
        params.insert("alpha".into(), json!(fmt_rat(&inv.alpha)));
        params.insert("zeta".into(), json!(fmt_rat(&inv.zeta)));
        params.insert(
            "pi".into(),
            json!(inv.pi.as_ref().map(fmt_rat).unwrap_or_else(|| "inf".into())),
        );
        params.insert("deg_p".into(), json!(inv.deg_p));
        params.insert("deg_p_equals_r".into(), json!(inv.deg_p_equals_r()));
        params.insert("pair_free".into(), json!(a.pair_free));
        params.insert("rho".into(), json!(fmt_threshold(&a.thresholds.rho)));
        params.insert(
            "rho_hat".into(),
            json!(fmt_threshold(&a.thresholds.rho_hat)),
        );
        params.insert("tangency".into(), json!(a.thresholds.tangency));
        params.insert(
            "threshold_certificate".into(),
            json!(certificate_name(a.thresholds.certificate)),
        );
        params.insert("theta".into(), json!(fmt_threshold(&a.theta)));
        params.insert("beta".into(), json!(fmt_bound(&a.beta)));
        params.insert("c2".into(), json!(fmt_threshold(&a.c2)));
        params.insert("c1_lower".into(), json!(fmt_bound(&a.c1.overall)));
        params.insert(
            "c1_per_residue".into(),
            Value::Array(a.c1.per_residue.iter().map(|b| json!(fmt_bound(b))).collect()),
        );
        params.insert(
            "c_polynomial".into(),
            json!(inv.c_poly.to_canonical_string(&n_refs)),
        );
        params.insert(
            "p_polynomial".into(),
            json!(inv.pf.to_canonical_string(&xi_refs)),
        );

        let known: Vec<Value> = self
            .known
            .iter()
            .map(|k| {
                let mut m = Map::new();
                m.insert("family".into(), json!(k.family));
                m.insert("field".into(), json!(k.field));
                m.insert("expected".into(), json!(k.expected));
                m.insert("actual".into(), json!(k.actual));
                m.insert("matches".into(), json!(k.matches));
                Value::Object(m)
            })
            .collect();

        let mut pattern = Map::new();
        pattern.insert("canonical_g6".into(), json!(a.canonical_g6));
        pattern.insert("vertices".into(), json!(a.pattern.vertex_count()));
        pattern.insert("edges".into(), json!(a.pattern.edge_count()));

        let mut root = Map::new();
        root.insert("version".into(), json!(self.version));
        root.insert("pattern".into(), Value::Object(pattern));
        root.insert("params".into(), Value::Object(params));
        root.insert("known_values".into(), Value::Array(known));
        root.insert(
            "warnings".into(),
            Value::Array(a.warnings.iter().map(|w| json!(w)).collect()),
        );
        Value::Object(root)
    }

    pub fn to_text(&self) -> String {
        let a = &self.analysis;
        let inv = &a.inv;
        let xi_names: Vec<String> = (1..=inv.r).map(|i| format!("xi{i}")).collect();
        let n_names: Vec<String> = (1..=inv.r).map(|i| format!("n{i}")).collect();
        let xi_refs: Vec<&str> = xi_names.iter().map(String::as_str).collect();
        let n_refs: Vec<&str> = n_names.iter().map(String::as_str).collect();
        let mut s = String::new();
        s.push_str(&format!(
            "pattern: {} vertices, {} edges (canonical g6: {})\n",
            a.pattern.vertex_count(),
            a.pattern.edge_count(),
            a.canonical_g6
        ));
        s.push_str(&format!("r = {}   f = {}   |Aut| = {}\n", inv.r, inv.f, inv.aut));
        s.push_str(&format!("c(n1..nr)    = {}\n", inv.c_poly.to_canonical_string(&n_refs)));
        s.push_str(&format!("P(xi1..xir)  = {}\n", inv.pf.to_canonical_string(&xi_refs)));
        s.push_str(&format!("alpha        = {}\n", fmt_rat(&inv.alpha)));
        s.push_str(&format!("zeta         = {}\n", fmt_rat(&inv.zeta)));
        s.push_str(&format!(
            "pi           = {}\n",
            inv.pi.as_ref().map(fmt_rat).unwrap_or_else(|| "inf".into())
        ));
        s.push_str(&format!(
            "deg P        = {} (r = {}{})\n",
            inv.deg_p,
            inv.r,
            if inv.deg_p_equals_r() {
                "; degenerate branch"
            } else {
                ""
            }
        ));
        s.push_str(&format!("pair-free    = {}\n", a.pair_free));
        if let Some(w) = &a.pair_witness {
            s.push_str(&format!(
                "  witness pair: ({}, {}) and ({}, {})\n",
                w.edges.0 .0, w.edges.0 .1, w.edges.1 .0, w.edges.1 .1
            ));
        }
        s.push_str(&format!(
            "rho          = {}   rho_hat = {}   [certificate: {}]\n",
            fmt_threshold(&a.thresholds.rho),
            fmt_threshold(&a.thresholds.rho_hat),
            certificate_name(a.thresholds.certificate)
        ));
        s.push_str(&format!("theta        = {}\n", fmt_threshold(&a.theta)));
        s.push_str(&format!("beta         = {}\n", fmt_bound(&a.beta)));
        s.push_str(&format!("c2           = {}\n", fmt_threshold(&a.c2)));
        s.push_str(&format!("c1 lower     = {}\n", fmt_bound(&a.c1.overall)));
        let residues: Vec<String> = a.c1.per_residue.iter().map(fmt_bound).collect();
        s.push_str(&format!("c1 residues  = [{}]\n", residues.join(", ")));
        if !self.known.is_empty() {
            s.push_str("known values:\n");
            for k in &self.known {
                s.push_str(&format!(
                    "  {:10} {:12} expected {:24} actual {:24} {}\n",
                    k.family,
                    k.field,
                    k.expected,
                    k.actual,
                    if k.matches { "match" } else { "MISMATCH" }
                ));
            }
        }
        if a.warnings.is_empty() {
            s.push_str("warnings: none\n");
        } else {
            s.push_str("warnings:\n");
            for w in &a.warnings {
                s.push_str(&format!("  - {w}\n"));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns;

    #[test]
    fn analyze_k4_minus_edge_report() {
        let a = analyze(&patterns::complete_minus_edge(4), &AnalyzeOptions::default()).unwrap();
        assert_eq!(fmt_rat(&a.inv.alpha), "1/8");
        assert!(!a.pair_free);
        assert!(a.thresholds.rho.is_infinite());
        let doc = report(a);
        let v = doc.to_json();
        assert_eq!(v["params"]["alpha"], "1/8");
        assert_eq!(v["params"]["rho"], "inf");
        assert!(doc.known.iter().all(|k| k.matches), "{:?}", doc.known);
        let text = doc.to_text();
        assert!(text.contains("pair-free    = false"));
    }

    #[test]
    fn json_is_deterministic_and_round_trips() {
        let a = analyze(&patterns::complete(3), &AnalyzeOptions::default()).unwrap();
        let doc = report(a);
        let s1 = serde_json::to_string_pretty(&doc.to_json()).unwrap();
        let reparsed: serde_json::Value = serde_json::from_str(&s1).unwrap();
        let s2 = serde_json::to_string_pretty(&reparsed).unwrap();
        assert_eq!(s1, s2);
    }
}
