//! Command-line surface: pattern analysis, minimum-curve sampling, copy
//! counting, explicit constructions, brute-force oracle runs, and the
//! verification suite.

use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::process::ExitCode;
use supersat::cache::Cache;
use supersat::counting;
use supersat::critical::criticality;
use supersat::invariants::exact_invariants;
use supersat::optimize::{emit_curve, rho_thresholds, OptimOptions};
use supersat::oracle::{self, Construction, Oracle, OracleOptions};
use supersat::report::{analyze, fmt_real, fmt_threshold, report, AnalyzeOptions};
use supersat::verify::{render, run_suite, Suite};
use supersat::{Error, Graph};

/// Exit codes: 0 ok, 2 input error, 3 pattern not color-critical,
/// 4 budget exceeded, 5 verification failure.
const EXIT_INPUT: u8 = 2;
const EXIT_NOT_CRITICAL: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_VERIFY: u8 = 5;

#[derive(Parser)]
#[command(
    name = "supersat",
    version,
    about = "Exact invariants and brute-force oracles for supersaturation of color-critical graphs"
)]
struct Cli {
    /// Worker threads for searches (results never depend on this).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Oracle cache file (also settable via SUPERSAT_CACHE_FILE).
    #[arg(long, global = true)]
    cache_file: Option<String>,

    /// Disable the oracle cache.
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a pattern: criticality, exact constants, thresholds, bounds.
    Analyze {
        /// Pattern: a name (K4-e, C5, K3,4+, K3,3+ep), a file path, or
        /// g6:<string>.
        pattern: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        tols: TolArgs,
    },
    /// Sample the slice-minimum curve and write it as CSV.
    Curve {
        pattern: String,
        #[arg(long, default_value_t = 0.5)]
        from: f64,
        #[arg(long, default_value_t = 1.0)]
        to: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        out: Option<String>,
        #[command(flatten)]
        tols: TolArgs,
    },
    /// Count copies of a pattern in a host.
    Count {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        host: String,
        /// Count only copies through this vertex.
        #[arg(long)]
        at_vertex: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build one of the comparison hosts and print it.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Exhaustive searches: ex, h, or t at concrete sizes.
    Oracle {
        #[arg(value_enum)]
        kind: OracleKindArg,
        pattern: String,
        #[arg(short)]
        n: usize,
        #[arg(short, default_value_t = 0)]
        q: usize,
        /// Witness graphs to report.
        #[arg(long, default_value_t = 4)]
        witnesses: usize,
        /// Enumeration budget (number of graphs).
        #[arg(long, default_value_t = 200_000_000)]
        budget: u128,
        /// Disable part-symmetry reduction in t searches.
        #[arg(long)]
        raw: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the verification suite; exits 5 on any failure.
    Verify {
        #[arg(value_enum, default_value = "quick")]
        suite: SuiteArg,
    },
}

/// Optimizer tolerances; defaults are 1e-8 / 1e-9 / 1e-3.
#[derive(clap::Args, Clone, Copy)]
struct TolArgs {
    /// Certification width for each slice minimum.
    #[arg(long)]
    cert_tol: Option<f64>,
    /// Threshold bisection width.
    #[arg(long)]
    bisect_tol: Option<f64>,
    /// Threshold scan step.
    #[arg(long)]
    scan_step: Option<f64>,
}

impl TolArgs {
    fn optim(&self) -> OptimOptions {
        let mut o = OptimOptions::default();
        if let Some(v) = self.cert_tol {
            o.cert_tol = v;
        }
        if let Some(v) = self.bisect_tol {
            o.bisect_tol = v;
        }
        if let Some(v) = self.scan_step {
            o.scan_step = v;
        }
        o
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKindArg {
    Ex,
    H,
    T,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Balanced host plus a star of q edges in the cheaper part.
    Star {
        pattern: String,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        q: usize,
    },
    /// Balanced host plus a matching-then-path packing of q edges.
    MatchingPath {
        pattern: String,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        q: usize,
    },
    /// Parts (n/r+1, n/r-1, ..) with q+1 packed edges in the large part.
    Unbalanced {
        pattern: String,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        q: usize,
    },
    /// Balanced parts plus an attached vertex with the given degrees.
    AttachedVertex {
        pattern: String,
        /// Part sizes, comma separated.
        #[arg(long, value_delimiter = ',')]
        parts: Vec<usize>,
        /// Attached degrees, comma separated.
        #[arg(long, value_delimiter = ',')]
        d: Vec<usize>,
    },
}

fn load_graph(spec: &str) -> supersat::Result<Graph> {
    if let Some(g6) = spec.strip_prefix("g6:") {
        return Graph::parse_graph6(g6);
    }
    if let Ok(g) = supersat::patterns::by_name(spec) {
        return Ok(g);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("{spec}: {e} (not a known pattern name either)"),
    })?;
    if spec.ends_with(".g6") {
        Graph::parse_graph6(text.lines().next().unwrap_or(""))
    } else {
        Graph::parse_edge_list(&text)
    }
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. }
        | Error::Graph6 { .. }
        | Error::InvalidHost(_)
        | Error::InvalidConstruction(_)
        | Error::SizeLimit { .. }
        | Error::InfeasibleSlice(_) => EXIT_INPUT,
        Error::NotColorCritical(_) => EXIT_NOT_CRITICAL,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Internal(_) | Error::Io(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

fn oracle_from(cli: &Cli, witnesses: usize, budget: u128, raw: bool) -> Oracle {
    let opts = OracleOptions {
        budget,
        witnesses,
        jobs: cli.jobs,
        symmetry: !raw,
        known_ex: None,
    };
    if cli.no_cache {
        Oracle::new(opts)
    } else {
        Oracle::with_cache(opts, Cache::resolve(cli.cache_file.as_deref()))
    }
}

fn run(cli: &Cli) -> supersat::Result<u8> {
    match &cli.command {
        Command::Analyze { pattern, format, tols } => {
            let g = load_graph(pattern)?;
            let analysis = analyze(&g, &AnalyzeOptions { optim: tols.optim() })?;
            let doc = report(analysis);
            match format {
                Format::Text => print!("{}", doc.to_text()),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&doc.to_json()).expect("serializable")
                ),
            }
            Ok(0)
        }
        Command::Curve {
            pattern,
            from,
            to,
            step,
            out,
            tols,
        } => {
            let g = load_graph(pattern)?;
            let cs = criticality(&g)?;
            let inv = exact_invariants(&g, &cs)?;
            let opts = tols.optim();
            let rows = emit_curve(&inv, *from, *to, *step, &opts)?;
            let mut csv = String::new();
            let xi_cols: Vec<String> = (1..=inv.r).map(|i| format!("xi_{i}")).collect();
            csv.push_str(&format!("rho,p,line,gap,{}\n", xi_cols.join(",")));
            for row in &rows {
                let xs: Vec<String> = row.point.argmin.iter().map(|&x| fmt_real(x)).collect();
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    fmt_real(row.point.rho),
                    fmt_real(row.point.p),
                    fmt_real(row.line),
                    fmt_real(row.point.certified_gap),
                    xs.join(",")
                ));
            }
            match out {
                Some(path) => std::fs::write(path, csv)?,
                None => print!("{csv}"),
            }
            let th = rho_thresholds(&inv, &opts);
            if inv.deg_p_equals_r() {
                eprintln!(
                    "note: density polynomial has degree r = {}; thresholds are infinite",
                    inv.r
                );
            }
            eprintln!(
                "thresholds: rho = {}, rho_hat = {}",
                fmt_threshold(&th.rho),
                fmt_threshold(&th.rho_hat)
            );
            Ok(0)
        }
        Command::Count {
            pattern,
            host,
            at_vertex,
            format,
        } => {
            let f = load_graph(pattern)?;
            let g = load_graph(host)?;
            let value = match at_vertex {
                Some(v) => counting::count_copies_at_vertex(&f, &g, *v)?,
                None => counting::count_copies(&f, &g)?,
            };
            match format {
                Format::Text => println!("{value}"),
                Format::Json => println!("{{\"copies\": {value}}}"),
            }
            Ok(0)
        }
        Command::Construct { kind } => {
            let (pattern, construction) = match kind {
                ConstructKind::Star { pattern, n, q } => {
                    (pattern, Construction::Star { n: *n, q: *q })
                }
                ConstructKind::MatchingPath { pattern, n, q } => {
                    (pattern, Construction::MatchingPath { n: *n, q: *q })
                }
                ConstructKind::Unbalanced { pattern, n, q } => {
                    (pattern, Construction::Unbalanced { n: *n, q: *q })
                }
                ConstructKind::AttachedVertex { pattern, parts, d } => (
                    pattern,
                    Construction::AttachedVertex {
                        partition: parts.clone(),
                        d: d.clone(),
                    },
                ),
            };
            let f = load_graph(pattern)?;
            let cs = criticality(&f)?;
            let inv = exact_invariants(&f, &cs)?;
            let host = oracle::construct(&inv, &construction)?;
            let copies = counting::count_copies(&f, &host)?;
            println!("graph6: {}", host.to_graph6());
            print!("{}", host.to_edge_list());
            println!("copies: {copies}");
            Ok(0)
        }
        Command::Oracle {
            kind,
            pattern,
            n,
            q,
            witnesses,
            budget,
            raw,
            format,
        } => {
            let f = load_graph(pattern)?;
            let orc = oracle_from(cli, *witnesses, *budget, *raw);
            let res = match kind {
                OracleKindArg::Ex => orc.ex(&f, *n)?,
                OracleKindArg::H => orc.h(&f, *n, *q)?,
                OracleKindArg::T => orc.t(&f, *n, *q)?,
            };
            let turan_note = match kind {
                OracleKindArg::Ex => {
                    let r = supersat::coloring::chromatic_number(&f) - 1;
                    Some(res.matches_turan(r))
                }
                _ => None,
            };
            match format {
                Format::Text => {
                    println!(
                        "{}({}, n={}, q={}) = {}",
                        res.kind.as_str(),
                        res.pattern_g6,
                        res.n,
                        res.q,
                        res.value
                    );
                    if let Some(m) = turan_note {
                        println!("matches balanced-host edge count: {m}");
                    }
                    println!(
                        "examined: {} graphs{}",
                        res.graphs_examined,
                        if res.from_cache { " (cached)" } else { "" }
                    );
                    for w in &res.witnesses {
                        println!("witness: {}", w.to_graph6());
                    }
                }
                Format::Json => {
                    let mut m = serde_json::Map::new();
                    m.insert("kind".into(), res.kind.as_str().into());
                    m.insert("pattern_g6".into(), res.pattern_g6.clone().into());
                    m.insert("n".into(), res.n.into());
                    m.insert("q".into(), res.q.into());
                    m.insert("value".into(), res.value.into());
                    m.insert(
                        "witnesses".into(),
                        res.witnesses
                            .iter()
                            .map(|w| serde_json::Value::from(w.to_graph6()))
                            .collect::<Vec<_>>()
                            .into(),
                    );
                    m.insert("examined".into(), res.graphs_examined.into());
                    m.insert("from_cache".into(), res.from_cache.into());
                    if let Some(t) = turan_note {
                        m.insert("matches_turan".into(), t.into());
                    }
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::Value::Object(m))
                            .expect("serializable")
                    );
                }
            }
            Ok(0)
        }
        Command::Verify { suite } => {
            let s = match suite {
                SuiteArg::Quick => Suite::Quick,
                SuiteArg::Full => Suite::Full,
            };
            let checks = run_suite(s, cli.jobs);
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            let ok = render(&checks, &mut lock).expect("stdout");
            let passed = checks.iter().filter(|c| c.passed).count();
            writeln!(lock, "{passed}/{} checks passed", checks.len()).expect("stdout");
            Ok(if ok { 0 } else { EXIT_VERIFY })
        }
    }
}
