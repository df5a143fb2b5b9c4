//! Command-line front end for the knotpoly toolkit.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on domain errors
//! (unknown knots, malformed points, poles, oversize diagrams).

use clap::{Parser, Subcommand, ValueEnum};
use knotpoly::diagram::SingularDiagram;
use knotpoly::error::{Error, Result};
use knotpoly::hatops::HatResult;
use knotpoly::poly::DegreeFit;
use knotpoly::scalar::Scalar;
use knotpoly::skein::SkeinConfig;
use knotpoly::table::{KnotTable, KnotTableEntry};
use knotpoly::vassiliev::{
    default_witnesses, parse_descriptor, parse_scalar_expr, CriterionOutcome, CriterionVerdict,
    Evaluator, GrowthReport, GrowthVerdict, InvariantDescriptor, LocusReport,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "knotpoly",
    version,
    about = "Knot polynomials, Vassiliev criteria, and interpolation operations"
)]
struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Crossing budget for skein evaluation.
    #[arg(long, global = true)]
    max_crossings: Option<usize>,
    /// Tolerance for zero tests on approximate values.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a polynomial invariant of one knot.
    Poly {
        #[arg(long)]
        knot: String,
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Evaluate a descriptor on one knot.
    Eval {
        #[arg(long)]
        inv: String,
        #[arg(long)]
        knot: String,
    },
    /// Sample a descriptor along connected-sum powers and fit the growth.
    Growth {
        #[arg(long)]
        inv: String,
        #[arg(long)]
        base: String,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        imax: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Witness-point criterion for mixed derivatives of the two-variable
    /// polynomial.
    Criterion {
        /// Evaluation point, as a=EXPR,z=EXPR.
        #[arg(long)]
        point: String,
        /// Derivative orders, as m,n.
        #[arg(long)]
        orders: String,
        /// Comma-separated witness knots (default 3_1,4_1,6_1).
        #[arg(long)]
        witnesses: Option<String>,
    },
    /// Root sets that silence the witness rules for one knot.
    Locus {
        #[arg(long)]
        knot: String,
    },
    /// Interpolate a descriptor over a connected-sum grid.
    Hat {
        #[arg(long)]
        inv: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        knot: String,
        /// Fixed summand: interpolate v(L # K^i).
        #[arg(long, conflicts_with_all = ["star", "patterns"])]
        bar: Option<String>,
        /// Powered generator: interpolate v(K # L^i).
        #[arg(long, conflicts_with_all = ["bar", "patterns"])]
        star: Option<String>,
        /// Comma-separated generators for a full tensor grid.
        #[arg(long, conflicts_with_all = ["bar", "star"])]
        patterns: Option<String>,
    },
    /// Rank of an exact evaluation matrix of descriptors against knots.
    Rank {
        /// Semicolon-separated descriptors; semicolons inside
        /// parentheses belong to the descriptor.
        #[arg(long)]
        invs: String,
        /// Comma-separated knots.
        #[arg(long)]
        knots: String,
    },
    /// Alternating-sum evaluation on a diagram with marked double points.
    Singular {
        #[arg(long)]
        inv: String,
        #[arg(long)]
        knot: String,
        /// Comma-separated crossing indices to mark.
        #[arg(long)]
        points: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Homfly,
    Kauffman,
    Jones,
    Conway,
    Alexander,
    Q,
}

impl Which {
    fn name(self) -> &'static str {
        match self {
            Which::Homfly => "homfly",
            Which::Kauffman => "kauffman",
            Which::Jones => "jones",
            Which::Conway => "conway",
            Which::Alexander => "alexander",
            Which::Q => "q",
        }
    }
}

fn main() {
    // Die quietly when a downstream pipe closes (head, grep -q, ...)
    // instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests arrive here too; only real usage
            // errors exit nonzero.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            if json {
                println!("{}", json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut config = SkeinConfig::default();
    if let Some(mc) = cli.max_crossings {
        config.max_crossings = mc;
    }
    let mut ev = Evaluator::with_config(config);
    if let Some(tol) = cli.tol {
        ev = ev.tolerance(tol);
    }
    let table = KnotTable::from_env()?;
    let json = cli.json;

    match cli.command {
        Command::Poly { knot, which } => {
            let d = table.resolve(&knot)?;
            let text = match which {
                Which::Homfly => ev.engine().homfly(&d)?.to_string(),
                Which::Kauffman => ev.engine().kauffman(&d)?.to_string(),
                Which::Jones => ev.engine().jones(&d)?.to_string(),
                Which::Conway => ev.engine().conway(&d)?.to_string(),
                Which::Alexander => ev.engine().alexander(&d)?.to_string(),
                Which::Q => ev.engine().qpoly(&d)?.to_string(),
            };
            if json {
                println!(
                    "{}",
                    json!({ "knot": knot, "which": which.name(), "polynomial": text })
                );
            } else {
                println!("{text}");
            }
        }
        Command::Eval { inv, knot } => {
            let v = parse_descriptor(&inv)?;
            let d = table.resolve(&knot)?;
            let value = ev.eval_invariant(&v, &d)?;
            if json {
                println!(
                    "{}",
                    json!({ "descriptor": v.to_string(), "knot": knot, "value": value })
                );
            } else {
                println!("{value}");
            }
        }
        Command::Growth {
            inv,
            base,
            pattern,
            imax,
            degree,
        } => {
            let v = parse_descriptor(&inv)?;
            let base_d = table.resolve(&base)?;
            let pattern_d = table.resolve(&pattern)?;
            let report = ev.growth_sequence(&v, &base_d, &pattern_d, degree, imax)?;
            if json {
                println!("{}", serde_json::to_string(&report).expect("report is json"));
            } else {
                print_growth(&report);
            }
        }
        Command::Criterion {
            point,
            orders,
            witnesses,
        } => {
            let (a, z) = parse_point(&point)?;
            let orders = parse_orders(&orders)?;
            let wits = match witnesses {
                Some(list) => {
                    let mut out = Vec::new();
                    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                        out.push((name.to_string(), table.resolve(name)?));
                    }
                    out
                }
                None => default_witnesses(&table)?,
            };
            let verdict = ev.criterion_point((&a, &z), orders, &wits)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string(&verdict).expect("verdict is json")
                );
            } else {
                print_criterion(&verdict);
            }
        }
        Command::Locus { knot } => {
            let d = table.resolve(&knot)?;
            let report = ev.homfly_locus(&d)?;
            if json {
                println!("{}", serde_json::to_string(&report).expect("report is json"));
            } else {
                print_locus(&report);
            }
        }
        Command::Hat {
            inv,
            degree,
            knot,
            bar,
            star,
            patterns,
        } => {
            let v = parse_descriptor(&inv)?;
            let k = named_entry(&table, &knot)?;
            let result = if let Some(l) = bar {
                ev.bar_op(&v, degree, &named_entry(&table, &l)?, &k)?
            } else if let Some(l) = star {
                ev.star_op(&v, degree, &named_entry(&table, &l)?, &k)?
            } else {
                let pats: Vec<KnotTableEntry> = patterns
                    .as_deref()
                    .unwrap_or("")
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|n| named_entry(&table, n))
                    .collect::<Result<_>>()?;
                ev.hat_op(&v, degree, &k, &pats)?
            };
            if json {
                println!("{}", serde_json::to_string(&result).expect("result is json"));
            } else {
                print_hat(&result);
            }
        }
        Command::Rank { invs, knots } => {
            let descriptors: Vec<InvariantDescriptor> = split_descriptors(&invs)
                .into_iter()
                .map(parse_descriptor)
                .collect::<Result<_>>()?;
            let entries: Vec<KnotTableEntry> = knots
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|n| named_entry(&table, n))
                .collect::<Result<_>>()?;
            let report = ev.rank_report(&descriptors, &entries)?;
            if json {
                println!("{}", serde_json::to_string(&report).expect("report is json"));
            } else {
                println!("rank: {}", report.rank);
                let picked: Vec<&str> = report
                    .independent
                    .iter()
                    .map(|&j| report.invariants[j].as_str())
                    .collect();
                println!("independent: {}", picked.join("; "));
                for (name, row) in report.knots.iter().zip(&report.matrix) {
                    println!("{name}: {}", join_scalars(row));
                }
            }
        }
        Command::Singular { inv, knot, points } => {
            let v = parse_descriptor(&inv)?;
            let d = table.resolve(&knot)?;
            let mut s = SingularDiagram::new(d);
            for idx in parse_indices(&points)? {
                s = s.singularize(idx)?;
            }
            let value = ev.eval_singular(&v, &s)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "descriptor": v.to_string(),
                        "knot": knot,
                        "points": s.double_points().collect::<Vec<_>>(),
                        "value": value,
                    })
                );
            } else {
                println!("{value}");
            }
        }
    }
    Ok(())
}

fn named_entry(table: &KnotTable, name: &str) -> Result<KnotTableEntry> {
    Ok(KnotTableEntry {
        name: name.to_string(),
        diagram: table.resolve(name)?,
    })
}

/// Split a descriptor list on semicolons at parenthesis depth zero, so
/// evaluation points like `jones_deriv(3; 1)` survive intact.
fn split_descriptors(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ';' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out.into_iter()
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

/// Parse `a=EXPR,z=EXPR` (either order) into the two scalars.
fn parse_point(text: &str) -> Result<(Scalar, Scalar)> {
    let mut a = None;
    let mut z = None;
    for part in text.split(',') {
        let Some((key, expr)) = part.split_once('=') else {
            return Err(Error::Syntax {
                pos: 0,
                msg: format!("point component '{part}' is not of the form a=EXPR"),
            });
        };
        let value = parse_scalar_expr(expr.trim())?;
        match key.trim() {
            "a" => a = Some(value),
            "z" => z = Some(value),
            other => {
                return Err(Error::Syntax {
                    pos: 0,
                    msg: format!("unknown point variable '{other}'"),
                })
            }
        }
    }
    match (a, z) {
        (Some(a), Some(z)) => Ok((a, z)),
        _ => Err(Error::Syntax {
            pos: 0,
            msg: "point needs both a= and z= components".to_string(),
        }),
    }
}

fn parse_orders(text: &str) -> Result<(u32, u32)> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(Error::Syntax {
            pos: 0,
            msg: "orders must be two integers m,n".to_string(),
        });
    }
    let parse = |s: &str| {
        s.parse::<u32>().map_err(|_| Error::Syntax {
            pos: 0,
            msg: format!("'{s}' is not a nonnegative integer"),
        })
    };
    Ok((parse(parts[0])?, parse(parts[1])?))
}

fn parse_indices(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>().map_err(|_| Error::Syntax {
                pos: 0,
                msg: format!("'{s}' is not a crossing index"),
            })
        })
        .collect()
}

fn join_scalars(values: &[Scalar]) -> String {
    values
        .iter()
        .map(Scalar::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn fit_text(fit: &DegreeFit) -> String {
    match fit {
        DegreeFit::FitsDegree(d) => format!("fits degree {d}"),
        DegreeFit::Exceeds => "exceeds".to_string(),
    }
}

fn print_growth(report: &GrowthReport) {
    println!("descriptor: {}", report.descriptor);
    println!("values: {}", join_scalars(&report.values));
    println!("fit: {}", fit_text(&report.fit));
    match &report.verdict {
        GrowthVerdict::ConsistentWithDegree(n) => println!("verdict: consistent with degree {n}"),
        GrowthVerdict::ExceedsDegree(n) => println!("verdict: exceeds degree {n}"),
    }
    if let Some(exp) = &report.exponential {
        println!(
            "exponential base: {} (quotient fit: {}, residual {})",
            exp.base,
            fit_text(&exp.quotient_fit),
            exp.residual
        );
    }
}

fn print_criterion(verdict: &CriterionVerdict) {
    println!("point: ({}, {})", verdict.point.0, verdict.point.1);
    println!("orders: ({}, {})", verdict.orders.0, verdict.orders.1);
    match &verdict.outcome {
        CriterionOutcome::FullDerivativeWitness { witness } => {
            println!("outcome: not vassiliev (full-derivative witness {witness})");
        }
        CriterionOutcome::EvenOrderWitness { witness } => {
            println!("outcome: not vassiliev (even-order witness {witness})");
        }
        CriterionOutcome::Inconclusive => println!("outcome: inconclusive"),
    }
    for w in &verdict.witnesses {
        println!(
            "witness {}: value {}, da {}, dz {}, dzz {}",
            w.name, w.value, w.da, w.dz, w.dzz
        );
    }
    if let Some(note) = &verdict.note {
        println!("note: {note}");
    }
}

fn print_locus(report: &LocusReport) {
    let line = |label: &str, roots: &[Scalar]| {
        if roots.is_empty() {
            println!("{label}: (none)");
        } else {
            println!("{label}: {}", join_scalars(roots));
        }
    };
    line("value roots", &report.value_roots);
    line("slope roots", &report.slope_roots);
    line("curvature roots", &report.curvature_roots);
}

fn print_hat(result: &HatResult) {
    println!("descriptor: {}", result.descriptor);
    println!("knot: {}", result.knot);
    if !result.patterns.is_empty() {
        println!("patterns: {}", result.patterns.join(", "));
    }
    println!("variables: {}", result.variables.join(", "));
    println!("grid: {}", join_scalars(&result.grid));
    println!("polynomial: {}", result.polynomial);
}
