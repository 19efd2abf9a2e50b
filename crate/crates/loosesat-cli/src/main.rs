use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use loosesat_core::{
    audit_summary, check_codegree_step, check_good_pair_double_neighbor, check_jfar_bound,
    check_two_deg2, construct_gn, enumerate_extremal_with, exists_saturated_with, is_free, lower_seed,
    parse_h3, run_discharge, triple_count, verify_saturated_jobs, write_h3, Budget, Hypergraph3,
    LemmaViolation, SearchError, SearchOptions, Strategy, TriangleWitness, Verdict,
};

/// Exit codes: 0 property holds / success, 1 property refuted (certificate
/// printed), 2 usage or IO error, 3 search budget exhausted.
const EXIT_OK: u8 = 0;
const EXIT_REFUTED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "loosesat",
    version,
    about = "Loose-triangle saturation toolkit for 3-uniform hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate the brick construction on n >= 14 vertices.
    Construct {
        #[arg(short = 'n', long = "n")]
        n: usize,
        /// Output file (defaults to stdout).
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Verify freeness or saturation of an .h3 file.
    Check {
        file: PathBuf,
        /// Check that the graph contains no loose triangle.
        #[arg(long)]
        free: bool,
        /// Check that the graph is saturated.
        #[arg(long)]
        saturated: bool,
        /// Worker threads for the non-edge scan (1 = reference mode).
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Compute the minimum saturation number by exhaustive search.
    Satnum {
        #[arg(short = 'n', long = "n")]
        n: usize,
        /// Stop after proving all m <= MAX infeasible.
        #[arg(long)]
        max_edges: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        budget_secs: Option<f64>,
        /// Also count extremal instances up to isomorphism.
        #[arg(long)]
        enumerate: bool,
    },
    /// Run the discharging audit.
    Discharge {
        file: PathBuf,
        /// Low/non-low threshold; defaults to max(3, floor(log2 n)).
        #[arg(long)]
        ell: Option<usize>,
        /// Write the full report as JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check the structural claims that hold on saturated instances.
    Lemmas {
        file: PathBuf,
        /// j parameter of the far-neighbor bound.
        #[arg(long, default_value_t = 2)]
        jfar: usize,
    },
    /// Basic statistics of an .h3 file.
    Stats { file: PathBuf },
}

fn main() -> ExitCode {
    // die quietly when a pipe reader closes early, like other unix tools
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("loosesat: {}", msg);
            EXIT_USAGE
        }
    };
    ExitCode::from(code)
}

fn load(path: &Path) -> Result<Hypergraph3, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
    parse_h3(&text).map_err(|e| format!("{}: {}", path.display(), e))
}

fn print_triangle(w: &TriangleWitness) {
    for e in &w.edges {
        println!("triangle e {} {} {}", e[0], e[1], e[2]);
    }
    println!("triangle core {} {} {}", w.core[0], w.core[1], w.core[2]);
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.cmd {
        Cmd::Construct { n, output } => {
            let (g, _) = construct_gn(n).map_err(|e| e.to_string())?;
            let text = write_h3(&g);
            match output {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| format!("cannot write {}: {}", path.display(), e))?,
                None => {
                    print!("{}", text);
                    std::io::stdout().flush().ok();
                }
            }
            Ok(EXIT_OK)
        }
        Cmd::Check {
            file,
            free,
            saturated,
            jobs,
        } => {
            if free == saturated {
                return Err("choose exactly one of --free or --saturated".into());
            }
            if jobs == 0 {
                return Err("--jobs must be at least 1".into());
            }
            let g = load(&file)?;
            if free {
                match loosesat_core::find_triangle(&g) {
                    None => {
                        println!("free");
                        Ok(EXIT_OK)
                    }
                    Some(w) => {
                        w.validate(&g, None).map_err(|e| format!("internal: {}", e))?;
                        println!("not-free");
                        print_triangle(&w);
                        Ok(EXIT_REFUTED)
                    }
                }
            } else {
                let cert = verify_saturated_jobs(&g, jobs);
                cert.validate(&g).map_err(|e| format!("internal: {}", e))?;
                match cert.verdict {
                    Verdict::Saturated => {
                        println!("saturated");
                        println!("checked-nonedges {}", cert.checked_nonedges);
                        Ok(EXIT_OK)
                    }
                    Verdict::NotFree => {
                        println!("not-free");
                        print_triangle(cert.triangle.as_ref().expect("witness"));
                        Ok(EXIT_REFUTED)
                    }
                    Verdict::NotSaturated => {
                        let e = cert.uncreating_nonedge.expect("witness");
                        println!("not-saturated");
                        println!("uncreating-nonedge {} {} {}", e[0], e[1], e[2]);
                        Ok(EXIT_REFUTED)
                    }
                }
            }
        }
        Cmd::Satnum {
            n,
            max_edges,
            jobs,
            budget_secs,
            enumerate,
        } => {
            if n == 0 {
                return Err("n must be at least 1".into());
            }
            if jobs == 0 {
                return Err("--jobs must be at least 1".into());
            }
            let deadline = budget_secs.map(|s| {
                std::time::Instant::now() + std::time::Duration::from_secs_f64(s)
            });
            let opts = SearchOptions {
                strategy: Strategy::LexCanonical,
                jobs,
            };
            let cap = max_edges.unwrap_or(triple_count(n)).min(triple_count(n));
            let mut found: Option<(usize, Hypergraph3)> = None;
            for m in lower_seed(n)..=cap {
                // the wall-clock budget spans the whole sweep
                let budget = match deadline {
                    None => Budget::unlimited(),
                    Some(dl) => {
                        let left = dl.saturating_duration_since(std::time::Instant::now());
                        if left.is_zero() {
                            eprintln!("satnum: budget exhausted before m={}", m);
                            return Ok(EXIT_TIMEOUT);
                        }
                        Budget::seconds(left.as_secs_f64())
                    }
                };
                let t0 = std::time::Instant::now();
                match exists_saturated_with(n, m, &budget, &opts) {
                    Ok(Some(w)) => {
                        eprintln!("satnum: m={} feasible ({:?})", m, t0.elapsed());
                        found = Some((m, w));
                        break;
                    }
                    Ok(None) => {
                        eprintln!("satnum: m={} exhausted ({:?})", m, t0.elapsed());
                    }
                    Err(SearchError::Timeout { partial }) => {
                        eprintln!(
                            "satnum: budget exhausted at m={} after {} nodes",
                            m, partial.nodes_explored
                        );
                        return Ok(EXIT_TIMEOUT);
                    }
                    Err(SearchError::Domain(e)) => return Err(e.to_string()),
                }
            }
            match found {
                Some((m, w)) => {
                    let path = format!("satnum_n{}.h3", n);
                    std::fs::write(&path, write_h3(&w))
                        .map_err(|e| format!("cannot write {}: {}", path, e))?;
                    println!("{}", m);
                    println!("{}", path);
                    if enumerate {
                        let budget = match deadline {
                            None => Budget::unlimited(),
                            Some(dl) => {
                                let left =
                                    dl.saturating_duration_since(std::time::Instant::now());
                                if left.is_zero() {
                                    return Ok(EXIT_TIMEOUT);
                                }
                                Budget::seconds(left.as_secs_f64())
                            }
                        };
                        match enumerate_extremal_with(n, m, &budget, &opts) {
                            Ok(forms) => println!("extremal-classes {}", forms.len()),
                            Err(SearchError::Timeout { .. }) => return Ok(EXIT_TIMEOUT),
                            Err(SearchError::Domain(e)) => return Err(e.to_string()),
                        }
                    }
                    Ok(EXIT_OK)
                }
                None => {
                    println!("none");
                    println!("exhausted-upto {}", cap);
                    Ok(EXIT_OK)
                }
            }
        }
        Cmd::Discharge { file, ell, json } => {
            let g = load(&file)?;
            let ell = ell.unwrap_or_else(|| default_ell(g.n()));
            let report = run_discharge(&g, ell).map_err(|e| e.to_string())?;
            let summary = audit_summary(&report);
            println!("n {}", summary.n);
            println!("edges {}", summary.edge_count);
            println!("ell {}", summary.ell);
            println!("low {}", summary.low_count);
            println!("nonlow {}", summary.nonlow_count);
            println!("helpful {}", summary.helpful_count);
            println!("half-helpful {}", summary.half_helpful_count);
            println!("deficient {}", summary.deficient_count);
            println!(
                "deficient-fraction {}",
                summary.deficient_fraction.as_deref().unwrap_or("n/a")
            );
            println!("total-half-units {}", summary.total_half_units);
            println!("conserved {}", summary.conserved);
            let totals: Vec<String> = summary.rule_totals.iter().map(|t| t.to_string()).collect();
            println!("rule-totals {}", totals.join(" "));
            let hist: Vec<String> = summary
                .charge_histogram
                .iter()
                .map(|(h, c)| format!("{}:{}", h, c))
                .collect();
            println!("charge-histogram {}", hist.join(" "));
            if let Some(path) = json {
                let body = serde_json::to_string_pretty(&report)
                    .map_err(|e| format!("serialize: {}", e))?;
                std::fs::write(&path, body)
                    .map_err(|e| format!("cannot write {}: {}", path.display(), e))?;
            }
            if summary.conserved {
                Ok(EXIT_OK)
            } else {
                // conservation is a theorem of the scheme; failing it means
                // the toolkit is broken, not the instance
                Err("charge conservation violated".into())
            }
        }
        Cmd::Lemmas { file, jfar } => {
            let g = load(&file)?;
            if !is_free(&g) {
                return Err("graph contains a loose triangle; no claim applies".into());
            }
            let saturated = loosesat_core::verify_saturated(&g).is_saturated();
            let mut total = 0usize;
            let mut print_outcome = |name: &str, violations: &[LemmaViolation]| {
                if violations.is_empty() {
                    println!("{} ok", name);
                } else {
                    println!("{} violations {}", name, violations.len());
                    for v in violations {
                        println!("  - {}", v.detail);
                    }
                }
                total += violations.len();
            };
            if saturated {
                print_outcome(
                    "codegree-step",
                    &check_codegree_step(&g).map_err(|e| e.to_string())?,
                );
                print_outcome(
                    "two-deg2-neighbors",
                    &check_two_deg2(&g).map_err(|e| e.to_string())?,
                );
            } else {
                println!("codegree-step skipped (graph not saturated)");
                println!("two-deg2-neighbors skipped (graph not saturated)");
            }
            print_outcome(
                "good-pair-double-neighbor",
                &check_good_pair_double_neighbor(&g).map_err(|e| e.to_string())?,
            );
            if saturated {
                print_outcome(
                    &format!("jfar-bound j={}", jfar),
                    &check_jfar_bound(&g, jfar).map_err(|e| e.to_string())?,
                );
            } else {
                println!("jfar-bound skipped (graph not saturated)");
            }
            Ok(if total == 0 { EXIT_OK } else { EXIT_REFUTED })
        }
        Cmd::Stats { file } => {
            let g = load(&file)?;
            println!("n {}", g.n());
            println!("edges {}", g.edge_count());
            let degs: Vec<usize> = (0..g.n()).map(|v| g.degree(v).unwrap()).collect();
            println!("min-degree {}", degs.iter().min().copied().unwrap_or(0));
            println!("max-degree {}", degs.iter().max().copied().unwrap_or(0));
            let mut hist = std::collections::BTreeMap::new();
            for d in degs {
                *hist.entry(d).or_insert(0usize) += 1;
            }
            let parts: Vec<String> = hist.iter().map(|(d, c)| format!("{}:{}", d, c)).collect();
            println!("degree-histogram {}", parts.join(" "));
            let max_cod = g
                .edges()
                .iter()
                .flat_map(|e| [(e[0], e[1]), (e[0], e[2]), (e[1], e[2])])
                .map(|(u, v)| g.codegree(u, v).unwrap())
                .max()
                .unwrap_or(0);
            println!("max-codegree {}", max_cod);
            println!("free {}", is_free(&g));
            Ok(EXIT_OK)
        }
    }
}

/// Default threshold when --ell is omitted: max(3, floor(log2 n)).
fn default_ell(n: usize) -> usize {
    if n < 2 {
        3
    } else {
        std::cmp::max(3, n.ilog2() as usize)
    }
}
