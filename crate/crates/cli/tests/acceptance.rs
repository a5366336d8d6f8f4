//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vague_core::specio::bundled;
use vague_core::{
    check_axioms, check_duality, eval_measure, invert, invert_approx, judge, load_partition_str, random_irregular_partition,
    random_partition, validate_partition, ConnectiveTriple, Error, FuzzySet, Interval, Judgement, Negation,
    PartitionCandidate, PartitionDocument, SetOp, TConorm, TNorm, TargetVector, VagueExpr, Witness,
};
use vague_oracle::{interpolate, oracle_eval, oracle_extremum, oracle_validate, GridSpec, Mode};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

struct Run {
    code: i32,
    stdout: String,
    elapsed: Duration,
}

fn vague(args: &[&str]) -> Run {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_vague"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        elapsed: t.elapsed(),
    }
}

fn fast(r: &Run) -> Result<(), String> {
    ensure!(r.elapsed < Duration::from_secs(1), "took {:?}", r.elapsed);
    Ok(())
}

fn height_file(dir: &Path) -> PathBuf {
    let p = dir.join("height_nl_2006.vpart.json");
    std::fs::write(&p, bundled::HEIGHT_NL_2006).unwrap();
    p
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn c1_eval(file: &str) -> Outcome {
    let r = vague(&["eval", file, "--x", "1.5"]);
    fast(&r)?;
    ensure!(r.code == 0, "exit {}", r.code);
    let mut got = Vec::new();
    for part in r.stdout.split_whitespace() {
        let (k, v) = part.split_once('=').ok_or(format!("bad output {:?}", r.stdout))?;
        got.push((k.to_string(), v.parse::<f64>().map_err(|e| e.to_string())?));
    }
    let want = [("short", 0.625), ("medium", 0.375), ("tall", 0.0)];
    ensure!(got.len() == 3, "output {:?}", r.stdout);
    for ((k, v), (wk, wv)) in got.iter().zip(want) {
        ensure!(k == wk && close(*v, wv, 1e-12), "{k}={v}, want {wk}={wv}");
    }
    let (p, _) = load_partition_str(bundled::HEIGHT_NL_2006).unwrap();
    let j = judge(&p, 1.5).unwrap();
    for (k, v) in want {
        ensure!(close(j.degree(k).unwrap(), v, 1e-12), "library {k}");
    }
    Ok(format!("{} in {:?}", r.stdout.trim(), r.elapsed))
}

fn c2_invert(file: &str) -> Outcome {
    let r = vague(&["invert", file, "short=0", "medium=0.4", "tall=0.6"]);
    fast(&r)?;
    ensure!(r.code == 0, "exit {}", r.code);
    let x: f64 = r
        .stdout
        .trim()
        .strip_prefix("x = ")
        .ok_or(format!("output {:?}", r.stdout))?
        .parse()
        .map_err(|e| format!("{e}"))?;
    ensure!(close(x, 1.92, 1e-9), "x = {x}");
    let (p, _) = load_partition_str(bundled::HEIGHT_NL_2006).unwrap();
    let t = TargetVector::parse_pairs(["short=0", "medium=0.4", "tall=0.6"], 0.0).unwrap();
    let s = invert(&p, &t).unwrap().solutions;
    let c = s.components();
    ensure!(c.len() == 1 && c[0].is_point() && close(c[0].lo, 1.92, 1e-9), "library {s:?}");
    Ok(format!("{} in {:?}", r.stdout.trim(), r.elapsed))
}

fn demo_ok(name: &str) -> Result<String, String> {
    let r = vague(&["demo", name]);
    fast(&r)?;
    ensure!(r.code == 0 && r.stdout.contains("all values match"), "demo {name}: exit {}\n{}", r.code, r.stdout);
    Ok(r.stdout)
}

fn c3_age() -> Outcome {
    let t = ConnectiveTriple::default();
    let j = Judgement::new(35.0, [("young", 0.6), ("old", 0.4)]).unwrap();
    let r = check_axioms(&j, &t);
    ensure!(r.regular && !r.normal, "regular {} normal {}", r.regular, r.normal);
    let m = eval_measure(&j, &t, &vague_core::parse("young | old").unwrap()).unwrap();
    ensure!(m == 0.6, "M(young | old) = {m}");
    demo_ok("example45")?;
    Ok("regular, not normal, M(young | old) = 0.6".into())
}

fn c4_crisp_age() -> Outcome {
    let t = ConnectiveTriple::default();
    let j = Judgement::new(25.0, [("to40", 1.0), ("to80", 0.0), ("to120", 0.0), ("to160", 0.0), ("to200", 0.0)])
        .unwrap();
    let r = check_axioms(&j, &t);
    ensure!(r.regular && r.normal && r.crisp, "{r:?}");
    demo_ok("example44")?;
    Ok("regular and normal at x = 25".into())
}

fn c5_intuitionistic() -> Outcome {
    let (p, _) = load_partition_str(bundled::HEIGHT_NL_2006).unwrap();
    for x in [1.51, 1.92] {
        let mu = judge(&p, x).unwrap().degree("medium").unwrap();
        ensure!(close(mu, 0.4, 1e-12) && close(1.0 - mu, 0.6, 1e-12), "μ({x}) = {mu}");
    }
    let out = demo_ok("intuitionistic")?;
    ensure!(out.matches("computed 0.4").count() == 2 && out.matches("computed 0.6").count() >= 2, "{out}");
    Ok("μ = 0.4, ν = 0.6 at 1.51 and 1.92".into())
}

fn c6_edgington() -> Outcome {
    let (colour, ct) = load_partition_str(bundled::BALL_COLOUR).unwrap();
    let (size, st) = load_partition_str(bundled::BALL_SIZE).unwrap();
    let red = FuzzySet::derive(Arc::new(colour), ct, vague_core::parse("red").unwrap()).unwrap();
    let small = FuzzySet::derive(Arc::new(size), st, vague_core::parse("small").unwrap()).unwrap();
    ensure!(
        matches!(red.combine(&small, SetOp::And), Err(Error::CrossPartition))
            && matches!(red.combine(&small, SetOp::Or), Err(Error::CrossPartition)),
        "cross-partition combination accepted"
    );
    let r = [0.875, 0.5, 0.5].map(|c| red.membership(c).unwrap());
    let s = [0.5, 0.5, 0.875].map(|z| small.membership(z).unwrap());
    ensure!(r == [1.0, 0.5, 0.5] && s == [0.5, 0.5, 0.0], "R {r:?} S {s:?}");
    let and = |i: usize| r[i].min(s[i]);
    let or = |i: usize| r[i].max(s[i]);
    ensure!(and(0) == 0.5 && and(1) == 0.5 && or(1) == 0.5 && or(2) == 0.5, "forced values");
    demo_ok("edgington")?;
    Ok("rejected; forced min/max gives 0.5, 0.5, 0.5, 0.5".into())
}

fn random_domain<R: Rng>(rng: &mut R) -> Interval {
    let lo = rng.gen_range(-100.0..100.0);
    Interval::new(lo, lo + rng.gen_range(0.5..50.0)).unwrap()
}

fn random_expr<R: Rng>(rng: &mut R, depth: u32) -> VagueExpr {
    let atoms = ["short", "medium", "tall"];
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..8) {
            0 => VagueExpr::Bot,
            1 => VagueExpr::Top,
            _ => VagueExpr::atom(atoms[rng.gen_range(0..3)]),
        };
    }
    match rng.gen_range(0..3) {
        0 => VagueExpr::not(random_expr(rng, depth - 1)),
        1 => VagueExpr::and(random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
        _ => VagueExpr::or(random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
    }
}

fn random_degree<R: Rng>(rng: &mut R) -> f64 {
    match rng.gen_range(0..6) {
        0 => 0.0,
        1 => 1.0,
        _ => rng.gen_range(0.0..=1.0),
    }
}

fn triples() -> Vec<ConnectiveTriple> {
    TNorm::ALL.iter().map(|&t| ConnectiveTriple::standard(t)).collect()
}

fn c7_properties() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2006);
    let max = ConnectiveTriple::default();

    // (a), (b)
    for seed in 0..1000u64 {
        let d = random_domain(&mut rng);
        let n = rng.gen_range(1..=8);
        let p = if seed % 2 == 0 { random_partition(seed, d, n) } else { random_irregular_partition(seed, d, n) }
            .map_err(|e| format!("seed {seed}: {e}"))?;
        let x = rng.gen_range(d.lo()..=d.hi());
        let r = check_axioms(&judge(&p, x).unwrap(), &max);
        ensure!(r.axiom1 && r.axiom5, "(a) seed {seed} x {x}: {r:?}");
        ensure!(
            p.check_max_exclusion(x).unwrap() && p.check_unit_exclusion(x).unwrap(),
            "(b) seed {seed} x {x}"
        );
    }

    // (c)
    let names = ["p", "q", "r"];
    let mut normal = 0;
    for i in 0..10_000 {
        let j = if i % 2 == 0 {
            let p = random_partition(i, Interval::new(0.0, 1.0).unwrap(), rng.gen_range(1..5)).unwrap();
            let b = &p.blocks()[rng.gen_range(0..p.len())];
            let x = if rng.gen_bool(0.5) { b.function().extrema().max.x } else { rng.gen_range(0.0..=1.0) };
            judge(&p, x).unwrap()
        } else {
            Judgement::new(0.0, names.iter().map(|&n| (n, random_degree(&mut rng)))).unwrap()
        };
        for t in triples() {
            let r = check_axioms(&j, &t);
            if r.axiom1 && r.axiom5 && r.normal {
                normal += 1;
                ensure!(r.regular, "(c) normal but not regular: {r:?}");
            }
        }
    }
    ensure!(normal > 1000, "(c) only {normal} normal cases");

    // (d)
    let n = Negation::Standard;
    for (t, s, bound) in [
        (TNorm::Minimum, TConorm::Maximum, 0.0),
        (TNorm::Lukasiewicz, TConorm::BoundedSum, 0.0),
        (TNorm::Drastic, TConorm::Drastic, 0.0),
        (TNorm::Product, TConorm::ProbabilisticSum, 1e-15),
    ] {
        let c = check_duality(n, t, s, 0.01).unwrap();
        ensure!(c.residual <= bound, "(d) {t}/{s} residual {}", c.residual);
    }

    // (e) and the evaluation half of (g)
    for _ in 0..10_000 {
        let j = Judgement::new(1.0, ["short", "medium", "tall"].map(|n| (n, random_degree(&mut rng)))).unwrap();
        let t = triples()[rng.gen_range(0..4)];
        let (a, b) = (random_expr(&mut rng, 5), random_expr(&mut rng, 5));
        let m = |e: &VagueExpr| eval_measure(&j, &t, e).unwrap();
        let lhs = m(&VagueExpr::not(VagueExpr::and(a.clone(), b.clone())));
        let rhs = m(&VagueExpr::or(VagueExpr::not(a.clone()), VagueExpr::not(b.clone())));
        ensure!(close(lhs, rhs, 1e-12), "(e) De Morgan for {a}, {b} under {t}: {lhs} vs {rhs}");
        let lhs = m(&VagueExpr::not(VagueExpr::or(a.clone(), b.clone())));
        let rhs = m(&VagueExpr::and(VagueExpr::not(a.clone()), VagueExpr::not(b.clone())));
        ensure!(close(lhs, rhs, 1e-12), "(e) dual De Morgan for {a}, {b} under {t}");
        ensure!(m(&VagueExpr::not(VagueExpr::not(a.clone()))) == m(&a), "(e) double negation of {a}");
        let e = VagueExpr::and(a, b);
        let o = oracle_eval(&j, &t, &e).unwrap();
        ensure!(close(m(&e), o, 1e-12), "(g) eval of {e} under {t}: {} vs {o}", m(&e));
    }

    // (f)
    for seed in 0..1000u64 {
        let d = random_domain(&mut rng);
        let p = random_partition(seed, d, rng.gen_range(1..=6)).unwrap();
        let x = rng.gen_range(d.lo()..=d.hi());
        let j = judge(&p, x).unwrap();
        let t = TargetVector::new(j.degrees().map(|(k, v)| (k.to_string(), v)), 0.0).unwrap();
        let s = invert_approx(&p, &t, 1e-9).unwrap().solutions;
        ensure!(s.contains(x), "(f) seed {seed}: {x} not in {s:?}");
    }

    // (g) validation and extrema
    let grid = GridSpec::Points(10_001);
    for seed in 0..200u64 {
        let d = random_domain(&mut rng);
        let n = rng.gen_range(2..=6);
        let base = random_partition(seed, d, n).unwrap();
        let c: PartitionCandidate = match seed % 3 {
            0 => base.candidate().clone(),
            1 => base.candidate().with_block_scaled(rng.gen_range(0..n), rng.gen_range(0.5..1.5)).unwrap(),
            _ => random_irregular_partition(seed, d, n).unwrap().candidate().clone(),
        };
        let exact = validate_partition(&c);
        let o = oracle_validate(&c, grid);
        for (i, v) in o.conditions.iter().enumerate() {
            if let Some(v) = v {
                ensure!(exact.conditions[i].holds == *v, "(g) seed {seed} condition {}", i + 1);
            }
        }
        ensure!(exact.regular == o.regular, "(g) seed {seed} regularity");
    }
    let (p, t) = load_partition_str(bundled::HEIGHT_NL_2006).unwrap();
    let sep = vague_core::separation(&p, &t, 10_000).unwrap();
    let (gmin, _) = oracle_extremum(
        |x| p.blocks().iter().map(|b| interpolate(b.function().breakpoints(), x)).fold(0.0, f64::max),
        p.domain(),
        GridSpec::Step(1e-4),
        Mode::Min,
    );
    ensure!(sep.exact && close(1.0 - gmin, sep.value, 1e-3), "(g) separation {} vs grid {}", sep.value, 1.0 - gmin);

    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("(a)-(g) in {elapsed:?}"))
}

fn mutated(i: usize, factor: f64) -> (PartitionCandidate, String) {
    let mut doc = PartitionDocument::parse(bundled::HEIGHT_NL_2006).unwrap();
    let c = doc.candidate().unwrap().with_block_scaled(i, factor).unwrap();
    doc.blocks[i].breakpoints = c.blocks()[i].function().breakpoints().iter().map(|&(x, y)| [x, y]).collect();
    (c, doc.to_json())
}

fn c8_mutation(dir: &Path) -> Outcome {
    let grid = GridSpec::Points(30_001);
    let step = 3.0 / 30_000.0;
    let mut notes = Vec::new();
    for i in 0..3 {
        let (c, json) = mutated(i, 1.05);
        let r = validate_partition(&c);
        let v = r.condition(5);
        let Some(Witness::Point { x }) = v.witness else {
            return Err(format!("block {i} x1.05: no point witness ({v:?})"));
        };
        let sum: f64 = c.blocks().iter().map(|b| b.function().eval(x).unwrap()).sum();
        ensure!(!v.holds && sum > 1.0, "block {i} x1.05: condition (5) {} sum {sum}", v.holds);
        let o = oracle_validate(&c, grid);
        ensure!(o.conditions[4] == Some(false), "block {i} x1.05: oracle disagrees");
        let ox = o.witnesses[4].unwrap();
        let osum: f64 = c.blocks().iter().map(|b| interpolate(b.function().breakpoints(), ox)).sum();
        ensure!(
            (ox - x).abs() <= step || close(osum, r.sum_range.1, 30.0 * step),
            "block {i} x1.05: witnesses {x} vs {ox}"
        );

        let path = dir.join(format!("grow{i}.vpart.json"));
        std::fs::write(&path, json).unwrap();
        let run = vague(&["validate", path.to_str().unwrap()]);
        ensure!(run.code == 1 && run.stdout.contains("condition (5): FAIL"), "cli x1.05 block {i}: {}", run.stdout);

        let (c, json) = mutated(i, 0.9);
        let r = validate_partition(&c);
        let o = oracle_validate(&c, grid);
        ensure!(!r.regular && !o.regular, "block {i} x0.9: still regular");
        ensure!(r.condition(5).holds && o.conditions[4] == Some(true), "block {i} x0.9: condition (5) lost");
        ensure!(r.condition(3).holds == o.conditions[2].unwrap(), "block {i} x0.9: condition (3) disagrees with oracle");
        if !r.condition(3).holds {
            notes.push(i);
        }
        let path = dir.join(format!("shrink{i}.vpart.json"));
        std::fs::write(&path, json).unwrap();
        let run = vague(&["validate", path.to_str().unwrap()]);
        ensure!(run.code == 1 && run.stdout.contains("regular: no"), "cli x0.9 block {i}: {}", run.stdout);
    }
    Ok(format!(
        "x1.05 fails (5) with overflow witness; x0.9 keeps (5), loses regularity; (3) also fails for blocks {notes:?} since the peak drops to 0.9"
    ))
}

fn main() -> ExitCode {
    let dir = tempfile::tempdir().unwrap();
    let file = height_file(dir.path());
    let file = file.to_str().unwrap();
    let start = Instant::now();
    let criteria: Vec<Criterion> = vec![
        ("1 eval --x 1.5 on the height partition", Box::new(|| c1_eval(file))),
        ("2 invert short=0 medium=0.4 tall=0.6", Box::new(|| c2_invert(file))),
        ("3 age judgement at 35 is regular, not normal", Box::new(c3_age)),
        ("4 crisp judgement at 25 is regular and normal", Box::new(c4_crisp_age)),
        ("5 intuitionistic pair at 1.51 and 1.92", Box::new(c5_intuitionistic)),
        ("6 balls: cross-partition rejection", Box::new(c6_edgington)),
        ("7 property suite", Box::new(c7_properties)),
        ("8 validation mutations", Box::new(|| c8_mutation(dir.path()))),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed in {:?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
