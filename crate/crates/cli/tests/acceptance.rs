//! Acceptance suite: one line per criterion, exit status 1 if any fails.
//!
//! Every criterion is evaluated twice; the second run must produce the same
//! JSON summary byte for byte (criterion 10).

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::process::Command;
use std::time::{Duration, Instant};

use normevs::comparing::{
    check_primitive_inequality, comparing_function, minimize_ratio, random_probes, ComparingConfig,
    Space, Status, WitnessFamily, WitnessSequence,
};
use normevs::evs::{check_axioms, check_properties, CheckKind};
use normevs::instances::{Mutant, NormInstance, SignedScaling};
use normevs::json::format_sig17;
use normevs::norm::{evs_add, evs_smul, Point};
use normevs::NormExpr;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const INF: f64 = f64::INFINITY;
const SEEDS: [u64; 5] = [1, 2, 3, 7, 42];

type Criterion = (&'static str, fn() -> Outcome);
type Formula = Box<dyn Fn(f64) -> f64>;

struct Outcome {
    pass: bool,
    detail: String,
    json: String,
}

fn outcome(failures: Vec<String>, ok_detail: String, json: Value) -> Outcome {
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            ok_detail
        } else {
            failures.join("; ")
        },
        json: json.to_string(),
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    cli_env(args, &[])
}

fn cli_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_normevs"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

fn s17(x: f64) -> String {
    format_sig17(x)
}

fn all_axioms_pass(report: &Value) -> bool {
    ["A1", "A2", "A3", "A4", "A5", "A6"]
        .iter()
        .all(|a| report["axioms"][a]["status"] == "pass")
}

fn axiom_suite() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut docs = Vec::new();
    let mut runs = 0;
    let mut targets: Vec<(&str, &str)> = vec![("norms", "2"), ("norms", "3"), ("norms", "5")];
    targets.extend([("hyperspace", "2"), ("cone", "2")]);
    for (instance, dim) in targets {
        for seed in SEEDS {
            let seed = seed.to_string();
            let (code, out) = cli(&["check-axioms", instance, "--dim", dim, "--seed", &seed]);
            let report: Value = serde_json::from_str(&out).unwrap_or(Value::Null);
            runs += 1;
            if code != 0 || !all_axioms_pass(&report) {
                failures.push(format!("{instance} dim {dim} seed {seed}: exit {code}"));
            }
            docs.push(report);
        }
    }
    for m in Mutant::ALL {
        for seed in SEEDS {
            let report = m.check(seed, 16, 8).expect("mutant check runs");
            let failing = report.axioms.failing();
            if failing != [m.broken_axiom()] {
                failures.push(format!("{m:?} seed {seed}: failing {failing:?}"));
            }
            docs.push(serde_json::to_value(&report).unwrap());
        }
    }
    let signed = check_axioms(&SignedScaling::new(2).unwrap(), 7, 16, 8).expect("runs");
    let scalar_witness = signed
        .axioms
        .a2
        .counterexample
        .as_ref()
        .map(|c| (c.check, c.scalars.clone()));
    if scalar_witness != Some((CheckKind::A2Scalar, vec![-1.0])) {
        failures.push(format!("signed scaling: A2 counterexample {scalar_witness:?}"));
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(10) {
        failures.push(format!("runtime {elapsed:.2?} >= 10 s"));
    }
    outcome(
        failures,
        format!(
            "{runs} instance runs and {} mutant runs as expected in {elapsed:.2?}",
            Mutant::ALL.len() * SEEDS.len()
        ),
        json!(docs),
    )
}

fn properties() -> Outcome {
    let inst = NormInstance::new(3).unwrap();
    let report = check_properties(&inst, 42, 1000, 8).expect("properties run");
    let mut failures = Vec::new();
    for (name, entry) in report.entries() {
        if !entry.passed() {
            failures.push(format!("{name} failed: {:?}", entry.counterexample));
        } else if entry.trials < 1000 {
            failures.push(format!("{name}: only {} trials", entry.trials));
        }
    }
    let trials: Vec<String> = report
        .entries()
        .iter()
        .map(|(n, e)| format!("{n}={}", e.trials))
        .collect();
    outcome(
        failures,
        format!("all five pass ({})", trials.join(", ")),
        serde_json::to_value(&report).unwrap(),
    )
}

fn sup_over_one() -> Outcome {
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for n in 2..=6usize {
        let r = comparing_function(&NormExpr::one(), &NormExpr::sup(), Space::Rn(n), &Default::default())
            .expect("exact path");
        let expected = 1.0 / n as f64;
        if r.status != Status::Exact || (r.lower - expected).abs() > 1e-9 {
            failures.push(format!("n={n}: {:?} {}", r.status, r.lower));
        }
        let (brute, _) = oracle::brute_min(n, 1e-3, |x| oracle::pnorm(x, INF) / oracle::pnorm(x, 1.0));
        if (brute - r.lower).abs() > 1e-4 {
            failures.push(format!("n={n}: oracle {brute} vs {}", r.lower));
        }
        rows.push(json!({"n": n, "value": s17(r.lower), "oracle": s17(brute)}));
    }
    outcome(failures, "1/n for n=2..6, oracle within 1e-4".into(), json!(rows))
}

const PQ_CASES: [(f64, f64, usize); 3] = [(2.0, 1.0, 4), (4.0, 1.0, 4), (INF, 2.0, 5)];

fn pq_closed_form() -> Outcome {
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    let search = ComparingConfig {
        probes: false,
        ..Default::default()
    };
    for (p, q, n) in PQ_CASES {
        let expected = (n as f64).powf(1.0 / p - 1.0 / q);
        let f = NormExpr::p(q).unwrap();
        let g = NormExpr::p(p).unwrap();
        let r = comparing_function(&f, &g, Space::Rn(n), &Default::default()).expect("exact path");
        if r.status != Status::Exact || (r.lower - expected).abs() > 1e-9 {
            failures.push(format!("({p},{q},{n}): closed form {}", r.lower));
        }
        let found = minimize_ratio(&f, &g, n, &search).expect("search runs");
        if search.starts != 32 || (found.ratio - expected).abs() > 1e-6 {
            failures.push(format!("({p},{q},{n}): search {}", found.ratio));
        }
        rows.push(json!({
            "p": s17(p), "q": s17(q), "n": n,
            "closed_form": s17(r.lower), "search": s17(found.ratio),
        }));
    }
    outcome(failures, "closed form within 1e-9, 32-start search within 1e-6".into(), json!(rows))
}

fn witness_families() -> Outcome {
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    let mut families: Vec<(WitnessFamily, Formula)> = vec![
        (WitnessFamily::C00SupVsOne, Box::new(|n| 2.0 / (n + 1.0))),
        (WitnessFamily::HamelSupVsOne, Box::new(|n| 2.0 / (n + 1.0))),
    ];
    for (p, q) in [(2.0, 1.0), (3.0, 2.0), (INF, 1.0), (4.0, 1.5)] {
        families.push((
            WitnessFamily::p_vs_q(p, q).unwrap(),
            Box::new(move |n: f64| n.powf(1.0 / p - 1.0 / q)),
        ));
    }
    for (family, expected) in &families {
        let seq = WitnessSequence::new(*family);
        let mut previous = INF;
        let mut worst = 0.0f64;
        for n in 1..=64usize {
            let ratio = seq.evaluated_ratio(n);
            let want = expected(n as f64);
            let rel = (ratio - want).abs() / want;
            worst = worst.max(rel);
            if rel > 1e-12 {
                failures.push(format!("{} n={n}: {ratio} vs {want}", family.id()));
            }
            if ratio >= previous {
                failures.push(format!("{} not decreasing at n={n}", family.id()));
            }
            previous = ratio;
        }
        rows.push(json!({"family": family.id(), "params": family.params().map(|(p, q)| [s17(p), s17(q)]),
            "ratio_64": s17(seq.evaluated_ratio(64)), "worst_relative_error": s17(worst)}));
    }
    let (code, out) = cli(&["witness", "c00_sup_vs_one", "-N", "5"]);
    let last: Value = out.lines().last().and_then(|l| serde_json::from_str(l).ok()).unwrap_or(Value::Null);
    if code != 0 || last["ratio"].as_f64().map(|r| (r - 1.0 / 3.0).abs() > 1e-15) != Some(false) {
        failures.push(format!("cli witness: exit {code}, last line {last}"));
    }
    let (code, _) = cli(&["witness", "p_vs_q", "-p", "2", "-q", "3"]);
    if code != 64 {
        failures.push(format!("witness p<q exit {code}"));
    }
    outcome(
        failures,
        format!("{} families, n=1..64, relative error <= 1e-12, strictly decreasing", families.len()),
        json!(rows),
    )
}

fn independent_sandwich_check(lambda: f64, mu: f64, dim: usize) -> bool {
    random_probes(Space::Rn(dim), 1000, 4242).iter().all(|x| {
        let Point::Dense(v) = x else { return false };
        let (fx, gx) = (oracle::pnorm(v.coords(), 1.0), oracle::pnorm(v.coords(), INF));
        lambda * fx <= gx * (1.0 + 1e-12) && gx <= mu * fx * (1.0 + 1e-12)
    })
}

fn verdicts() -> Outcome {
    let mut failures = Vec::new();
    let (c1, out1) = cli(&["compare", "p(1)", "sup", "--dim", "3"]);
    let v1: Value = serde_json::from_str(&out1).unwrap_or(Value::Null);
    let sandwich = v1["sandwich"].as_array().map(|a| (a[0].as_f64(), a[1].as_f64()));
    match sandwich {
        Some((Some(l), Some(m))) if v1["equivalent"] == true && c1 == 0 => {
            if !independent_sandwich_check(l, m, 3) {
                failures.push(format!("R^3 sandwich [{l}, {m}] violated at a probe"));
            }
        }
        _ => failures.push(format!("R^3: exit {c1}, verdict {}", v1["equivalent"])),
    }
    let (c2, out2) = cli(&["compare", "p(1)", "sup", "--space", "c00"]);
    let v2: Value = serde_json::from_str(&out2).unwrap_or(Value::Null);
    if c2 != 1 || v2["equivalent"] != false || v2["witness_family"]["id"] != "c00_sup_vs_one" {
        failures.push(format!("c00: exit {c2}, verdict {}, witness {}", v2["equivalent"], v2["witness_family"]));
    }
    let (c3, out3) = cli(&["compare", "sum(p(3), sup)", "scale(7, sum(p(3), sup))", "--dim", "4"]);
    let v3: Value = serde_json::from_str(&out3).unwrap_or(Value::Null);
    if c3 != 0 || v3["equivalent"] != true || v3["psi"].as_f64() != Some(1.0 / 7.0) {
        failures.push(format!("(f, 7f): exit {c3}, psi {}", v3["psi"]));
    }
    outcome(
        failures,
        format!("exit codes {c1}/{c2}/{c3}, sandwich re-checked at 1000 probes, psi = 1/7"),
        json!([v1, v2, v3]),
    )
}

fn random_leaf(rng: &mut ChaCha8Rng) -> NormExpr {
    let exponents = [1.0, 1.5, 2.0, 3.0, 4.0, INF];
    let p = exponents[rng.random_range(0..exponents.len())];
    let c: f64 = rng.random_range(0.1..10.0);
    NormExpr::scale(c, NormExpr::p(p).unwrap())
}

fn invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut violations = Vec::new();
    let mut checked = 0;
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * a.abs().max(b.abs());
    let exact = |f: &NormExpr, g: &NormExpr, n: usize| {
        let r = comparing_function(f, g, Space::Rn(n), &Default::default()).ok()?;
        r.value()
    };
    while checked < 200 {
        let n = rng.random_range(2..=6usize);
        let f = random_leaf(&mut rng);
        let g = random_leaf(&mut rng);
        let h = evs_smul(rng.random_range(0.1..5.0), &g);
        let lambda: f64 = rng.random_range(0.2..5.0) * if rng.random_bool(0.5) { -1.0 } else { 1.0 };
        let values = (
            exact(&f, &f, n),
            exact(&f, &g, n),
            exact(&f, &h, n),
            exact(&f, &evs_add(&g, &h), n),
            exact(&f, &evs_smul(lambda, &g), n),
            exact(&evs_smul(lambda, &f), &g, n),
        );
        let (Some(ff), Some(fg), Some(fh), Some(fgh), Some(cov), Some(contra)) = values else {
            violations.push(format!("triple {f}, {g}, {h} left the exact path"));
            checked += 1;
            continue;
        };
        if ff != 1.0 {
            violations.push(format!("C_f(f) = {ff} for {f}"));
        }
        if !close(cov, lambda.abs() * fg) || !close(contra, fg / lambda.abs()) {
            violations.push(format!("scaling for {f}, {g}, lambda {lambda}"));
        }
        if fgh < (fg + fh) * (1.0 - 1e-12) {
            violations.push(format!("superadditivity for {f}, {g}, {h}"));
        }
        checked += 1;
    }
    outcome(
        violations,
        format!("{checked} triples, zero violations"),
        json!({"triples": checked}),
    )
}

fn primitive_inequality() -> Outcome {
    let mut failures = Vec::new();
    let mut pairs: Vec<(f64, f64, usize)> = (2..=6).map(|n| (INF, 1.0, n)).collect();
    pairs.extend(PQ_CASES);
    let mut rows = Vec::new();
    for (p, q, n) in pairs {
        let f = NormExpr::p(q).unwrap();
        let g = NormExpr::p(p).unwrap();
        let r = comparing_function(&f, &g, Space::Rn(n), &Default::default()).unwrap();
        let probes = random_probes(Space::Rn(n), 1000, 8);
        let ok = check_primitive_inequality(&f, &g, r.lower, &probes).unwrap();
        let independent = probes.iter().all(|x| {
            let Point::Dense(v) = x else { return false };
            r.lower * oracle::pnorm(v.coords(), q) <= oracle::pnorm(v.coords(), p) * (1.0 + 1e-12)
        });
        if !ok || !independent {
            failures.push(format!("({p},{q},{n}) violated"));
        }
        rows.push(json!({"p": s17(p), "q": s17(q), "n": n, "c": s17(r.lower), "holds": ok && independent}));
    }
    outcome(failures, format!("{} exact pairs at 1000 probes each", rows.len()), json!(rows))
}

fn family_scan() -> Outcome {
    let start = Instant::now();
    let (code, out) = cli(&["family-scan", "1", "1.5", "2", "3", "inf"]);
    let elapsed = start.elapsed();
    let scan: Value = serde_json::from_str(&out).unwrap_or(Value::Null);
    let pairs = scan["pairs"].as_array().cloned().unwrap_or_default();
    let certified = pairs
        .iter()
        .filter(|p| p["status"] == "nonequivalent_certified")
        .count();
    let mut failures = Vec::new();
    if code != 0 || pairs.len() != 10 || certified != 10 {
        failures.push(format!("exit {code}, {certified}/{} certified", pairs.len()));
    }
    if elapsed >= Duration::from_secs(5) {
        failures.push(format!("runtime {elapsed:.2?} >= 5 s"));
    }
    outcome(failures, format!("10/10 pairs certified in {elapsed:.2?}"), scan)
}

fn thread_independence() -> Option<String> {
    let args = ["compare", "p(2; w=1,3,2)", "sum(p(1), scale(0.5, sup))", "--dim", "3"];
    let one = cli_env(&args, &[("RAYON_NUM_THREADS", "1")]);
    let many = cli_env(&args, &[("RAYON_NUM_THREADS", "8")]);
    (one != many).then(|| "compare output depends on the thread count".to_string())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("axiom suite", axiom_suite),
        ("evs properties of N(R^n)", properties),
        ("C_1(sup) = 1/n with brute-force oracle", sup_over_one),
        ("p-q closed form and pattern search", pq_closed_form),
        ("witness families", witness_families),
        ("equivalence verdicts", verdicts),
        ("property-based invariants", invariants),
        ("C_f(g) f <= g at probes", primitive_inequality),
        ("family scan", family_scan),
    ];
    let mut all_pass = true;
    let mut nondeterministic = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let first = run();
        let second = run();
        if first.json != second.json {
            nondeterministic.push(i + 1);
        }
        all_pass &= first.pass;
        let tag = if first.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{tag}] {name}: {}", i + 1, first.detail);
    }
    if let Some(msg) = thread_independence() {
        nondeterministic.push(0);
        eprintln!("{msg}");
    }
    let deterministic = nondeterministic.is_empty();
    all_pass &= deterministic;
    let detail = if deterministic {
        "all criteria reproduce byte-identical JSON; output independent of thread count".to_string()
    } else {
        format!("differing output for criteria {nondeterministic:?} (0 = thread count)")
    };
    println!(
        "criterion 10 [{}] determinism: {detail}",
        if deterministic { "PASS" } else { "FAIL" }
    );
    if !all_pass {
        std::process::exit(1);
    }
}
