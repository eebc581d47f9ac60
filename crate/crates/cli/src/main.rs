//! `tropres`: tropical plane curves, stable intersections and resultants
//! from the command line.

mod svg;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tropres::lifting::{
    check_lift, genericity_conditions, lift_generic, tropical_basis, AlgPoly2, Elimination,
};
use tropres::polytope::{mixed_volume, newton_polygon};
use tropres::rational::{fmt_q, Q};
use tropres::resultant::{
    conjecture_sweep, resultant_pipeline, trop_resultant_wrt_x, trop_resultant_wrt_y, trop_resultant_wrt_z,
    trop_sylvester_permanent, CharMode, SweepConfig, SymPoly,
};
use tropres::stable::{oracle_directions, oracle_intersection, stable_intersection, StablePoint};
use tropres::subdivision::{dual_complex, EdgeShape, TropCurveComplex};
use tropres::{Error, Root, TropPoly1, TropPoly2};

use svg::{render_svg, Viewport};

const DEFAULT_SEED: u64 = 20_240_601;
const EXPECTED_CONIC: &str = include_str!("../data/conic_expected.json");

#[derive(Parser)]
#[command(name = "tropres", version, about = "Tropical plane curves, stable intersections and tropical resultants")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for every randomized step.
    #[arg(long, global = true, env = "TROPRES_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Field characteristic for resultants: zero, padic:P or equichar:P.
    #[arg(long = "char", global = true, default_value = "zero")]
    char_mode: String,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Mixed cells of the Minkowski sum.
    Mixed,
    /// The three tropical resultants.
    Resultants,
    /// Clustered intersection of a perturbed pair.
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Wrt {
    X,
    Y,
    Z,
}

#[derive(Subcommand)]
enum Command {
    /// Vertices, edges and faces of a tropical curve.
    Curve {
        /// Tropical polynomial, or @FILE.
        poly: String,
    },
    /// Stable intersection of two tropical curves.
    Intersect {
        f: String,
        g: String,
        #[arg(long, value_enum, default_value_t = Method::Mixed)]
        method: Method,
    },
    /// Tropical resultant of two tropical polynomials.
    Resultant {
        f: String,
        g: String,
        #[arg(long, value_enum)]
        wrt: Wrt,
        /// Exponent of the substitution x = z·y^a (default: the first
        /// separating one).
        #[arg(long)]
        a: Option<u32>,
    },
    /// Tropical Sylvester permanent against the tropical resultant, for one
    /// pair or for random full-support pairs.
    PermanentCheck {
        f: Option<String>,
        g: Option<String>,
        #[arg(long, default_value_t = 1)]
        min_degree: u32,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Permit degrees above 4.
        #[arg(long)]
        allow_large: bool,
    },
    /// Residual genericity conditions for two tropical curves.
    Genericity { f: String, g: String },
    /// Genericity certificate for two lifted curves.
    LiftCheck {
        f: String,
        g: String,
        /// Read tropical polynomials and lift them with seeded coefficients.
        #[arg(long)]
        generic: bool,
    },
    /// The five polynomials F, G, Res_x, Res_y, Res_z of two lifted curves.
    TropicalBasis {
        f: String,
        g: String,
        #[arg(long)]
        generic: bool,
    },
    /// Runs the conic example end to end and compares with the bundled
    /// expected values.
    ReproducePaper {
        /// Compare tropical polynomials up to an additive constant.
        #[arg(long)]
        projective: bool,
    },
}

enum Failure {
    Lib(Error),
    Input(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = std::result::Result<String, Failure>;

fn read_input(arg: &str) -> std::result::Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Failure::Input(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn trop(arg: &str) -> std::result::Result<TropPoly2, Failure> {
    Ok(read_input(arg)?.parse::<TropPoly2>()?)
}

fn lifted(arg: &str, generic: bool, seed: u64) -> std::result::Result<AlgPoly2, Failure> {
    if generic {
        Ok(lift_generic(&trop(arg)?, seed))
    } else {
        Ok(read_input(arg)?.parse::<AlgPoly2>()?)
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn points_json(points: &[StablePoint]) -> Value {
    serde_json::to_value(points).expect("serializable")
}

fn roots_json(roots: &[Root]) -> Value {
    Value::Array(roots.iter().map(|r| json!([fmt_q(&r.value), r.multiplicity])).collect())
}

fn roots_text(roots: &[Root]) -> String {
    let parts: Vec<String> = roots.iter().map(|r| format!("{} (mult {})", fmt_q(&r.value), r.multiplicity)).collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(", ")
    }
}

fn points_table(points: &[StablePoint]) -> String {
    let mut s = format!("{:<24} mult\n", "point");
    for p in points {
        let _ = writeln!(s, "{:<24} {}", p.point.to_string(), p.multiplicity);
    }
    let _ = writeln!(s, "total multiplicity {}", points.iter().map(|p| p.multiplicity).sum::<u64>());
    s
}

fn curve_table(c: &TropCurveComplex) -> String {
    let mut s = String::from("vertices\n");
    for v in &c.vertices {
        let _ = writeln!(s, "  {}", v.point);
    }
    s.push_str("edges\n");
    for e in &c.edges {
        let shape = match &e.shape {
            EdgeShape::Segment { from, to } => format!("segment {from} -- {to}"),
            EdgeShape::Ray { from } => format!("ray from {from}"),
            EdgeShape::Line { through } => format!("line through {through}"),
        };
        let _ = writeln!(s, "  {shape}  direction ({}, {})  weight {}", e.direction.0, e.direction.1, e.weight);
    }
    s.push_str("regions\n");
    for f in &c.faces {
        let _ = writeln!(
            s,
            "  x^{} y^{}  {}",
            f.exponent.i,
            f.exponent.j,
            if f.bounded { "bounded" } else { "unbounded" }
        );
    }
    s
}

fn svg_of(curves: &[&TropCurveComplex], points: &[StablePoint]) -> Outcome {
    if curves.iter().all(|c| c.is_empty()) {
        return Err(Error::Empty("nothing to draw: the curves are empty".into()).into());
    }
    Ok(render_svg(curves, points, &Viewport::around(curves, points)))
}

fn cmd_curve(cli: &Cli, poly: &str) -> Outcome {
    let f = trop(poly)?;
    let c = dual_complex(&f);
    match cli.format {
        Format::Svg => svg_of(&[&c], &[]),
        Format::Json => Ok(pretty(&json!({ "polynomial": f.to_string(), "curve": c }))),
        Format::Table => Ok(curve_table(&c)),
    }
}

fn cmd_intersect(cli: &Cli, f: &str, g: &str, method: Method, mode: CharMode) -> Outcome {
    let (f, g) = (trop(f)?, trop(g)?);
    let mut extra = json!({});
    let points = match method {
        Method::Mixed => stable_intersection(&f, &g),
        Method::Resultants => resultant_pipeline(&f, &g, mode)?.points,
        Method::Oracle => {
            let dirs = oracle_directions(&f, &g, 3, cli.seed);
            let mut results = Vec::new();
            for d in &dirs {
                results.push(oracle_intersection(&f, &g, d)?);
            }
            let agree = results.windows(2).all(|w| w[0] == w[1]);
            extra = json!({ "directions": dirs, "directions_agree": agree });
            results.into_iter().next().unwrap_or_default()
        }
    };
    let mv = mixed_volume(&newton_polygon(&f), &newton_polygon(&g));
    match cli.format {
        Format::Svg => svg_of(&[&dual_complex(&f), &dual_complex(&g)], &points),
        Format::Json => {
            let mut v = json!({
                "f": f.to_string(),
                "g": g.to_string(),
                "points": points_json(&points),
                "total": points.iter().map(|p| p.multiplicity).sum::<u64>(),
                "mixed_volume": mv,
            });
            if let (Some(o), Some(e)) = (v.as_object_mut(), extra.as_object()) {
                o.extend(e.clone());
            }
            Ok(pretty(&v))
        }
        Format::Table => Ok(points_table(&points) + &format!("mixed volume {mv}\n")),
    }
}

fn cmd_resultant(cli: &Cli, f: &str, g: &str, wrt: Wrt, a: Option<u32>, mode: CharMode) -> Outcome {
    let (f, g) = (trop(f)?, trop(g)?);
    let (r, var, a) = match wrt {
        Wrt::X => (trop_resultant_wrt_x(&f, &g, mode)?, "y", None),
        Wrt::Y => (trop_resultant_wrt_y(&f, &g, mode)?, "x", None),
        Wrt::Z => {
            let a = match a {
                Some(a) => a,
                None => resultant_pipeline(&f, &g, mode)?.a,
            };
            (trop_resultant_wrt_z(&f, &g, a, mode)?, "z", Some(a))
        }
    };
    let roots = r.roots();
    match cli.format {
        Format::Json => Ok(pretty(&json!({
            "resultant": r.display_with(var),
            "variable": var,
            "a": a,
            "char": mode.to_string(),
            "roots": roots_json(&roots),
        }))),
        _ => {
            let mut s = String::new();
            if let Some(a) = a {
                let _ = writeln!(s, "a = {a}");
            }
            let _ = writeln!(s, "resultant: {}", r.display_with(var));
            let _ = writeln!(s, "roots: {}", roots_text(&roots));
            Ok(s)
        }
    }
}

fn cmd_permanent(cli: &Cli, f: Option<&str>, g: Option<&str>, cfg: SweepConfig) -> Outcome {
    if let (Some(f), Some(g)) = (f, g) {
        let (f, g) = (trop(f)?, trop(g)?);
        let r = trop_resultant_wrt_x(&f, &g, CharMode::EquiCharZero)?;
        let p = trop_sylvester_permanent(&f, &g)?;
        let same = r.roots() == p.roots();
        return match cli.format {
            Format::Json => Ok(pretty(&json!({
                "resultant": r.to_string(),
                "permanent": p.to_string(),
                "resultant_roots": roots_json(&r.roots()),
                "permanent_roots": roots_json(&p.roots()),
                "same_variety": same,
            }))),
            _ => Ok(format!(
                "resultant: {r}\npermanent: {p}\nresultant roots: {}\npermanent roots: {}\nsame variety: {same}\n",
                roots_text(&r.roots()),
                roots_text(&p.roots())
            )),
        };
    }
    if f.is_some() != g.is_some() {
        return Err(Failure::Input("give both polynomials or neither".into()));
    }
    let report = conjecture_sweep(&cfg)?;
    match cli.format {
        Format::Json => Ok(pretty(&serde_json::to_value(&report).expect("serializable"))),
        _ => {
            let mut s = String::new();
            for (d, n) in &report.trials {
                let bad = report.discrepancies.iter().filter(|x| x.degree == *d).count();
                let _ = writeln!(s, "degree {d}: {n} trials, {bad} discrepancies");
            }
            for d in &report.discrepancies {
                let _ = writeln!(
                    s,
                    "counterexample degree {} trial {}\n  f = {}\n  g = {}\n  resultant = {}\n  permanent = {}",
                    d.degree, d.trial, d.f, d.g, d.resultant, d.permanent
                );
            }
            let _ = writeln!(s, "domination failures: {}", report.domination_failures.len());
            Ok(s)
        }
    }
}

fn cmd_genericity(cli: &Cli, f: &str, g: &str) -> Outcome {
    let (f, g) = (trop(f)?, trop(g)?);
    let conds = genericity_conditions(&f, &g)?;
    match cli.format {
        Format::Json => Ok(pretty(&serde_json::to_value(&conds).expect("serializable"))),
        _ => {
            let mut s = String::new();
            for c in &conds {
                let _ = writeln!(s, "{}: {}", c.label, c.poly);
            }
            Ok(s)
        }
    }
}

fn cmd_lift_check(cli: &Cli, f: &str, g: &str, generic: bool) -> Outcome {
    let (lf, lg) = (lifted(f, generic, cli.seed)?, lifted(g, generic, cli.seed.wrapping_add(1))?);
    let cert = check_lift(&lf, &lg)?;
    match cli.format {
        Format::Json => Ok(pretty(&json!({ "f": lf, "g": lg, "certificate": cert }))),
        _ => {
            let mut s = format!("F = {lf}\nG = {lg}\n");
            for c in &cert.conditions {
                let _ = writeln!(
                    s,
                    "{:<36} {:<10} value {}",
                    c.condition.label,
                    if c.satisfied { "ok" } else { "VANISHES" },
                    fmt_q(&c.value)
                );
            }
            for c in &cert.checks {
                let _ = writeln!(
                    s,
                    "{}: tropical {} | algebraic {} | same roots {} | vertex coefficients {}",
                    c.resultant.name(),
                    c.tropical,
                    c.algebraic.as_deref().unwrap_or("0"),
                    c.same_roots,
                    c.vertex_coefficients_match
                );
            }
            let _ = writeln!(s, "verified: {}", cert.verified);
            Ok(s)
        }
    }
}

fn cmd_basis(cli: &Cli, f: &str, g: &str, generic: bool) -> Outcome {
    let (lf, lg) = (lifted(f, generic, cli.seed)?, lifted(g, generic, cli.seed.wrapping_add(1))?);
    let basis = tropical_basis(&lf, &lg)?;
    let points = basis.tropical_points()?;
    match cli.format {
        Format::Json => Ok(pretty(&json!({ "basis": basis, "tropical_points": points_json(&points) }))),
        _ => {
            let mut s = format!(
                "F = {}\nG = {}\nRes_x = {}\nRes_y = {}\n",
                basis.f,
                basis.g,
                basis.res_x.display_with("y"),
                basis.res_y.display_with("x")
            );
            match (&basis.res_z, basis.a) {
                (Some(rz), Some(a)) => {
                    let _ = writeln!(s, "a = {a}\nRes_z = {}", rz.display_with("z"));
                }
                _ => s.push_str("Res_z not needed: the tropical curves do not meet\n"),
            }
            Ok(s + &points_table(&points))
        }
    }
}

fn poly_matches(got: &TropPoly1, expected: &str, projective: bool) -> bool {
    let Ok(want) = TropPoly1::parse(expected) else { return false };
    if !projective {
        return *got == want;
    }
    if got.terms().keys().ne(want.terms().keys()) {
        return false;
    }
    let diffs: Vec<Q> = got.terms().iter().map(|(k, c)| c - &want.terms()[k]).collect();
    diffs.windows(2).all(|w| w[0] == w[1])
}

fn cmd_reproduce(cli: &Cli, projective: bool) -> Outcome {
    let expected: Value = serde_json::from_str(EXPECTED_CONIC).expect("bundled JSON");
    let f = trop(expected["f"].as_str().expect("f"))?;
    let g = trop(expected["g"].as_str().expect("g"))?;
    let report = resultant_pipeline(&f, &g, CharMode::EquiCharZero)?;
    let stable = stable_intersection(&f, &g);
    let conds = genericity_conditions(&f, &g)?;
    let count = |e: &str| conds.iter().filter(|c| c.resultant().is_some_and(|r| r.name() == e)).count();
    let first_x = conds.iter().find(|c| c.resultant() == Some(Elimination::X)).map(|c| c.poly.clone());
    let want_first: SymPoly = expected["first_res_x_condition"].as_str().expect("condition").parse()?;
    let rz = report.res_z.clone().ok_or_else(|| Failure::Mismatch("no z-resultant".into()))?;

    let computed = json!({
        "stable_points": points_json(&stable),
        "res_x": report.res_x.display_with("y"),
        "res_y": report.res_y.display_with("x"),
        "y_roots": roots_json(&report.y_roots),
        "x_roots": roots_json(&report.x_roots),
        "candidates": serde_json::to_value(&report.candidates).expect("serializable"),
        "a": report.a,
        "res_z": rz.display_with("z"),
        "z_roots": roots_json(&report.z_roots),
        "extra_values": report.extra_values.iter().map(fmt_q).collect::<Vec<_>>(),
        "condition_counts": { "res_x": count("res_x"), "res_y": count("res_y"), "res_z": count("res_z") },
        "first_res_x_condition": first_x.as_ref().map(|p| p.to_string()),
    });

    let mut checks: BTreeMap<&str, bool> = BTreeMap::new();
    checks.insert("stable_points", computed["stable_points"] == expected["stable_points"]);
    checks.insert("res_x", poly_matches(&report.res_x, expected["res_x"].as_str().expect("res_x"), projective));
    checks.insert("res_y", poly_matches(&report.res_y, expected["res_y"].as_str().expect("res_y"), projective));
    checks.insert("res_z", poly_matches(&rz, expected["res_z"].as_str().expect("res_z"), projective));
    for key in ["y_roots", "x_roots", "candidates", "a", "z_roots", "extra_values", "condition_counts"] {
        checks.insert(key, computed[key] == expected[key]);
    }
    checks.insert("first_res_x_condition", first_x.is_some_and(|p| p.equal_up_to_sign(&want_first)));
    let all = checks.values().all(|&b| b);

    let text = match cli.format {
        Format::Json => pretty(&json!({ "computed": computed, "expected": expected, "checks": checks, "match": all })),
        _ => {
            let mut s = String::new();
            for (k, ok) in &checks {
                let _ = writeln!(s, "{:<24} {}", k, if *ok { "match" } else { "MISMATCH" });
                if !ok {
                    let _ = writeln!(s, "    computed: {}", computed[*k]);
                    let _ = writeln!(s, "    expected: {}", expected[*k]);
                }
            }
            s
        }
    };
    if all {
        Ok(text)
    } else {
        Err(Failure::Mismatch(text))
    }
}

fn run(cli: &Cli) -> Outcome {
    let mode = CharMode::from_str(&cli.char_mode)?;
    if cli.format == Format::Svg && !matches!(cli.command, Command::Curve { .. } | Command::Intersect { .. }) {
        return Err(Failure::Input("svg output is available for curve and intersect".into()));
    }
    match &cli.command {
        Command::Curve { poly } => cmd_curve(cli, poly),
        Command::Intersect { f, g, method } => cmd_intersect(cli, f, g, *method, mode),
        Command::Resultant { f, g, wrt, a } => cmd_resultant(cli, f, g, *wrt, *a, mode),
        Command::PermanentCheck { f, g, min_degree, max_degree, trials, allow_large } => cmd_permanent(
            cli,
            f.as_deref(),
            g.as_deref(),
            SweepConfig {
                min_degree: *min_degree,
                max_degree: *max_degree,
                trials: *trials,
                seed: cli.seed,
                allow_large: *allow_large,
            },
        ),
        Command::Genericity { f, g } => cmd_genericity(cli, f, g),
        Command::LiftCheck { f, g, generic } => cmd_lift_check(cli, f, g, *generic),
        Command::TropicalBasis { f, g, generic } => cmd_basis(cli, f, g, *generic),
        Command::ReproducePaper { projective } => cmd_reproduce(cli, *projective),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Lib(e @ Error::Parse(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Mismatch(text)) => {
            print!("{text}");
            eprintln!("error: reproduction differs from the expected values");
            ExitCode::from(4)
        }
    }
}
