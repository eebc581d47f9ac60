//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::Value;
use tropres::lifting::{check_lift, genericity_conditions, lift_generic, ConditionSource, Elimination};
use tropres::random::{bernstein_pair, pipeline_pair, random_curve};
use tropres::resultant::{
    conjecture_sweep, resultant_pipeline, same_trop_variety, stable_via_resultants, sylvester_resultant,
    tropicalize_resultant, CharMode, SweepConfig, SymPoly, Var,
};
use tropres::stable::{bernstein_bound, oracle_directions, oracle_intersection, stable_intersection, total_multiplicity};
use tropres::subdivision::verify_duality;
use tropres::{Error, TropPoly1, TropPoly2, Q};

const CONIC: &str = "0+1x+1y+1xy+0x²+0y²";
const EXPECTED: &str = include_str!("../../cli/data/conic_expected.json");

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn conic() -> TropPoly2 {
    CONIC.parse().unwrap()
}

fn expected() -> Value {
    serde_json::from_str(EXPECTED).unwrap()
}

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn within(t: Duration, limit: Duration, ok: Verdict) -> Verdict {
    let detail = ok?;
    if t > limit {
        return Err(format!("{detail}; took {:.2?}, limit {:.0?}", t, limit));
    }
    Ok(detail)
}

/// The command-line binary sits next to the `deps` directory holding this
/// test when the workspace is built together.
fn binary() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let bin = exe.parent()?.parent()?.join(format!("tropres{}", std::env::consts::EXE_SUFFIX));
    bin.is_file().then_some(bin)
}

fn conic_points() -> Vec<(String, String, u64)> {
    let mut want: Vec<(String, String, u64)> =
        [(-1, -1), (0, 1), (1, 0), (0, 0)].iter().map(|(x, y)| (x.to_string(), y.to_string(), 1)).collect();
    want.sort();
    want
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let c = conic();
    let mut got: Vec<(String, String, u64)> = stable_intersection(&c, &c)
        .into_iter()
        .map(|p| (p.point.x.to_string(), p.point.y.to_string(), p.multiplicity))
        .collect();
    got.sort();
    let elapsed = start.elapsed();
    if got != conic_points() {
        return Err(format!("points {got:?}"));
    }
    let Some(bin) = binary() else {
        return within(elapsed, Duration::from_secs(1), Ok("4 points of multiplicity 1 (binary not built)".into()));
    };
    let start = Instant::now();
    let out = Command::new(bin)
        .args(["--format", "json", "intersect", CONIC, CONIC])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let mut got: Vec<(String, String, u64)> = v["points"]
        .as_array()
        .ok_or("no points")?
        .iter()
        .map(|p| {
            let s = |k: usize| p["point"][k].as_str().unwrap_or_default().to_string();
            (s(0), s(1), p["mult"].as_u64().unwrap_or(0))
        })
        .collect();
    got.sort();
    if got != conic_points() {
        return Err(format!("intersect printed {got:?}"));
    }
    within(elapsed, Duration::from_secs(1), Ok("4 points of multiplicity 1 from `tropres intersect`".into()))
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let exp = expected();
    let c = conic();
    let r = resultant_pipeline(&c, &c, CharMode::EquiCharZero).map_err(|e| e.to_string())?;
    let parse = |key: &str| TropPoly1::parse(exp[key].as_str().unwrap()).unwrap();
    let mut wrong = Vec::new();
    if r.res_x != parse("res_x") {
        wrong.push(format!("res_x is {} (expected {})", r.res_x.display_with("y"), exp["res_x"]));
    }
    if r.res_y != parse("res_y") {
        wrong.push(format!("res_y is {} (expected {})", r.res_y.display_with("x"), exp["res_y"]));
    }
    if r.res_z.as_ref() != Some(&parse("res_z")) {
        wrong.push(format!("res_z is {:?}", r.res_z.as_ref().map(|p| p.display_with("z"))));
    }
    let roots: Vec<(Q, u32)> = r.z_roots.iter().map(|r| (r.value.clone(), r.multiplicity)).collect();
    if roots != vec![(q(-3), 1), (q(0), 1), (q(1), 1), (q(2), 1)] {
        wrong.push(format!("z roots {roots:?}"));
    }
    if r.a != 3 {
        wrong.push(format!("a = {}", r.a));
    }
    if r.extra_values != vec![q(-4), q(4)] {
        wrong.push(format!("extra values {:?}", r.extra_values));
    }
    let elapsed = start.elapsed();
    if !wrong.is_empty() {
        return Err(wrong.join("; "));
    }
    within(elapsed, Duration::from_secs(5), Ok("all resultants, a and extra values match".into()))
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let names = [('a', Var::A(0)), ('b', Var::A(1)), ('c', Var::A(2)), ('p', Var::B(0)), ('q', Var::B(1)), ('r', Var::B(2))];
    let i = [0u32, 1, 2].into_iter().collect();
    let r0 = sylvester_resultant(&i, &i, CharMode::EquiCharZero).map_err(|e| e.to_string())?;
    let r2 = sylvester_resultant(&i, &i, CharMode::EquiCharP(2)).map_err(|e| e.to_string())?;
    let want0 = SymPoly::parse_with("r^2a^2 - 2racp + c^2p^2 - qrba - qbcp + cq^2a + prb^2", &names).unwrap();
    let want2 = SymPoly::parse_with("r^2a^2 + c^2p^2 + qrba + qbcp + cq^2a + prb^2", &names).unwrap();
    if r0 != want0 {
        return Err(format!("R0 = {r0}"));
    }
    if r2 != want2 {
        return Err(format!("R2 = {r2}"));
    }
    let p1 = tropicalize_resultant(&r0, CharMode::EquiCharZero);
    let p2 = tropicalize_resultant(&r0, CharMode::PAdic(2));
    let p3 = tropicalize_resultant(&r2, CharMode::EquiCharP(2));
    for (name, x, y) in [("P1/P2", &p1, &p2), ("P1/P3", &p1, &p3), ("P2/P3", &p2, &p3)] {
        if !same_trop_variety(x, y, 200, 3) {
            return Err(format!("{name} differ"));
        }
    }
    within(start.elapsed(), Duration::from_secs(1), Ok("R0, R2 exact; P1, P2, P3 pairwise equal".into()))
}

fn criterion_4() -> Verdict {
    let start = Instant::now();
    for idx in 0..200 {
        let (f, g) = bernstein_pair(4, idx);
        let total = total_multiplicity(&stable_intersection(&f, &g));
        let mv = bernstein_bound(&f, &g);
        if total != mv {
            return Err(format!("pair {idx}: {f} / {g} has total {total}, mixed volume {mv}"));
        }
    }
    within(start.elapsed(), Duration::from_secs(60), Ok("200 pairs".into()))
}

fn criterion_5() -> Verdict {
    let start = Instant::now();
    for idx in 0..100 {
        let (f, g) = bernstein_pair(5, idx);
        let want = stable_intersection(&f, &g);
        for d in oracle_directions(&f, &g, 3, idx) {
            let got = oracle_intersection(&f, &g, &d).map_err(|e| format!("pair {idx}: {e}"))?;
            if got != want {
                return Err(format!("pair {idx}: {f} / {g} differs along {d}"));
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(120), Ok("100 pairs, 3 directions each".into()))
}

fn criterion_6() -> Verdict {
    let start = Instant::now();
    let (mut done, mut skipped, mut idx) = (0, 0, 0);
    while done < 100 {
        let (f, g) = pipeline_pair(6, idx);
        idx += 1;
        match stable_via_resultants(&f, &g, CharMode::EquiCharZero) {
            Ok(pts) if pts == stable_intersection(&f, &g) => done += 1,
            Ok(_) => return Err(format!("pair {}: {f} / {g} differs", idx - 1)),
            Err(Error::MatrixTooLarge { .. }) => skipped += 1,
            Err(e) => return Err(format!("pair {}: {e}", idx - 1)),
        }
    }
    within(start.elapsed(), Duration::from_secs(120), Ok(format!("100 pairs ({skipped} beyond the size limit skipped)")))
}

fn criterion_7() -> Verdict {
    let start = Instant::now();
    let c = conic();
    let conds = genericity_conditions(&c, &c).map_err(|e| e.to_string())?;
    let count = |e: fn(&Elimination) -> bool| {
        conds.iter().filter(|k| matches!(&k.source, ConditionSource::Resultant { resultant, .. } if e(resultant))).count()
    };
    let counts = (
        count(|e| matches!(e, Elimination::X)),
        count(|e| matches!(e, Elimination::Y)),
        count(|e| matches!(e, Elimination::Z(_))),
    );
    if counts != (4, 4, 5) {
        return Err(format!("counts {counts:?}"));
    }
    let first = conds
        .iter()
        .find(|k| matches!(k.source, ConditionSource::Resultant { resultant: Elimination::X, .. }))
        .ok_or("no res_x condition")?;
    let want: SymPoly = expected()["first_res_x_condition"].as_str().unwrap().parse().map_err(|e: Error| e.to_string())?;
    if !first.poly.equal_up_to_sign(&want) {
        return Err(format!("first res_x condition {}", first.poly));
    }
    within(start.elapsed(), Duration::from_secs(10), Ok("4 + 4 + 5 conditions, first one matches".into()))
}

fn criterion_8() -> Verdict {
    let start = Instant::now();
    let c = conic();
    for seed in 1..=20 {
        let cert = check_lift(&lift_generic(&c, seed), &lift_generic(&c, seed + 1)).map_err(|e| e.to_string())?;
        if !cert.all_satisfied {
            return Err(format!("seed {seed}: lift not certified"));
        }
        if cert.checks.len() != 3 || !cert.checks.iter().all(|k| k.same_roots) {
            return Err(format!("seed {seed}: {:?}", cert.checks));
        }
    }
    within(start.elapsed(), Duration::from_secs(60), Ok("20 lifts, all three resultants agree".into()))
}

fn criterion_9() -> Verdict {
    let start = Instant::now();
    let mut trials = Vec::new();
    let mut disc = 0;
    let mut dom = 0;
    for (lo, hi, n) in [(1, 3, 100), (4, 4, 25)] {
        let r = conjecture_sweep(&SweepConfig { min_degree: lo, max_degree: hi, trials: n, seed: 9, allow_large: false })
            .map_err(|e| e.to_string())?;
        for d in &r.discrepancies {
            eprintln!("  discrepancy at degree {} trial {}: {} / {}", d.degree, d.trial, d.f, d.g);
        }
        disc += r.discrepancies.len();
        dom += r.domination_failures.len();
        trials.extend(r.trials);
    }
    let total: usize = trials.iter().map(|t| t.1).sum();
    if disc > 0 {
        return Err(format!("{disc} discrepancies in {total} trials"));
    }
    within(
        start.elapsed(),
        Duration::from_secs(600),
        Ok(format!("{total} trials, 0 discrepancies, {dom} domination failures")),
    )
}

fn criterion_10() -> Verdict {
    let start = Instant::now();
    for idx in 0..200 {
        let f = random_curve(10, idx);
        let bad = verify_duality(&f);
        if !bad.is_empty() {
            return Err(format!("curve {idx} {f}: {}", bad.join("; ")));
        }
    }
    within(start.elapsed(), Duration::from_secs(30), Ok("200 curves".into()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("conic stable intersection", criterion_1),
        ("conic resultants", criterion_2),
        ("quadratic resultant in each characteristic", criterion_3),
        ("Bernstein count", criterion_4),
        ("translation oracle", criterion_5),
        ("three-resultant pipeline", criterion_6),
        ("genericity conditions of the conic", criterion_7),
        ("lifted resultants", criterion_8),
        ("permanent sweep", criterion_9),
        ("duality", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let t = start.elapsed();
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS {name} [{t:.2?}]: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} [{t:.2?}]: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
