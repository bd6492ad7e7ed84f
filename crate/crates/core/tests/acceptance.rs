//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines go straight to stdout.
//! Exits non-zero if any criterion fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::json;
use xoppak::classical_families::MeixnerParams;
use xoppak::exact_core::rational::{int, rat};
use xoppak::exact_core::{Poly, Rational};
use xoppak::exceptional_laguerre::LaguerreExcFamily;
use xoppak::exceptional_meixner::MeixnerExcFamily;
use xoppak::numerics::Ctx;
use xoppak::pair_combinatorics::{enumerate_pairs, is_admissible, PairSpec};
use xoppak::sweep::{conjecture_sweep, laguerre_check, meixner_check, par_map, CheckOptions, Outcome, Status, SweepParams};

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    summary: String,
    failures: Vec<String>,
}

impl Verdict {
    fn from_failures(summary: String, failures: Vec<String>) -> Self {
        Verdict { pass: failures.is_empty(), summary, failures }
    }
}

fn a_samples() -> Vec<Rational> {
    vec![rat(1, 3), rat(1, 2), rat(2, 3)]
}

fn c_samples() -> Vec<Rational> {
    vec![int(3), rat(5, 2), rat(-1, 2)]
}

fn alpha_samples() -> Vec<Rational> {
    vec![rat(1, 2), rat(-1, 2), rat(-3, 2)]
}

/// Pairs and parameters used by the criteria that speak of "sampled families".
fn sample_pairs() -> Vec<PairSpec> {
    enumerate_pairs(3, 3)
}

fn ac_samples() -> Vec<(Rational, Rational)> {
    vec![(rat(1, 2), int(3)), (rat(1, 3), rat(5, 2)), (rat(2, 3), rat(-1, 2))]
}

fn mfam(a: &Rational, c: &Rational, pair: &PairSpec) -> MeixnerExcFamily {
    MeixnerExcFamily::new(MeixnerParams::new(a.clone(), c.clone()).unwrap(), pair.clone()).unwrap()
}

fn lfam(alpha: &Rational, pair: &PairSpec) -> LaguerreExcFamily {
    LaguerreExcFamily::new(alpha.clone(), pair.clone()).unwrap()
}

fn describe(o: &Outcome, what: String) -> String {
    let w = o.witnesses.iter().take(2).cloned().collect::<Vec<_>>().join("; ");
    format!("{what} {}: {} {} {}", o.check, o.status.as_str(), o.detail, w)
}

fn criterion_1() -> Verdict {
    let pairs = enumerate_pairs(5, 4);
    let opts = CheckOptions::default();
    let mut cells = Vec::new();
    for p in &pairs {
        for a in a_samples() {
            for c in c_samples() {
                cells.push((p.clone(), Some((a.clone(), c.clone())), None));
            }
        }
        for al in alpha_samples() {
            cells.push((p.clone(), None, Some(al)));
        }
    }
    let outs = par_map(&cells, |(p, ac, al)| match (ac, al) {
        (Some((a, c)), _) => {
            let o = meixner_check(&mfam(a, c, p), "eigen", &opts);
            (o, format!("Meixner {p} a={a} c={c}"))
        }
        (_, Some(al)) => {
            let o = laguerre_check(&lfam(al, p), "eigen", &opts);
            (o, format!("Laguerre {p} alpha={al}"))
        }
        _ => unreachable!(),
    });
    let degrees: usize = pairs.iter().map(|p| p.sigma_upto(p.u() + 8).len()).sum::<usize>() * 12;
    let failures = outs.iter().filter(|(o, _)| o.status != Status::Pass).map(|(o, w)| describe(o, w.clone())).collect();
    Verdict::from_failures(
        format!("{} pairs, {} families, {} exact identities", pairs.len(), cells.len(), degrees),
        failures,
    )
}

fn criterion_2() -> Verdict {
    let fam = mfam(&rat(1, 2), &rat(-7, 2), &PairSpec::from_vecs(vec![1], vec![]).unwrap());
    let mut failures = Vec::new();
    for n in 0..=20i64 {
        let lhs = fam.omega.eval(&int(n)) * fam.omega.eval(&int(n + 1));
        let rhs = Rational::from_integer(((2 * n + 7) * (2 * n + 9)).into()) / int(4);
        if lhs != rhs {
            failures.push(format!("n={n}: {lhs} vs {rhs}"));
        }
    }
    Verdict::from_failures("Omega(n) Omega(n+1) = (2n+7)(2n+9)/4 for n = 0..20".into(), failures)
}

fn criterion_3() -> Verdict {
    let pair = PairSpec::from_vecs(vec![1], vec![]).unwrap();
    let inside = [rat(-3, 2), rat(-5, 4), rat(-7, 4), rat(-101, 100)];
    let outside = [rat(-5, 2), rat(-7, 2), rat(1, 2), rat(-1, 2), rat(-9, 4), rat(3, 2)];
    let mut failures = Vec::new();
    for al in inside.iter().chain(outside.iter()) {
        let fam = lfam(al, &pair);
        let expected = Poly::linear(al + int(1), int(-1));
        if fam.omega != expected {
            failures.push(format!("alpha={al}: Omega = {}", fam.omega));
        }
        let adm = is_admissible(&(al + int(1)), &pair).unwrap();
        let want = inside.contains(al);
        if adm != want {
            failures.push(format!("alpha={al}: admissible {adm}, expected {want}"));
        }
    }
    Verdict::from_failures(
        format!("Omega = alpha+1-x and admissibility iff -2<alpha<-1 over {} samples", inside.len() + outside.len()),
        failures,
    )
}

fn criterion_4() -> Verdict {
    let pairs = enumerate_pairs(5, 4);
    let mut cells = Vec::new();
    for p in &pairs {
        for a in a_samples() {
            for c in c_samples() {
                cells.push((p.clone(), a.clone(), c.clone()));
            }
        }
    }
    let opts = CheckOptions::default();
    let outs = par_map(&cells, |(p, a, c)| {
        let f = mfam(a, c, p);
        (meixner_check(&f, "sign_condition", &opts), f.admissible().unwrap(), format!("Meixner {p} a={a} c={c}"))
    });
    let admissible = outs.iter().filter(|o| o.1).count();
    let failures = outs.iter().filter(|o| o.0.status != Status::Pass).map(|(o, _, w)| describe(o, w.clone())).collect();
    Verdict::from_failures(format!("{} families ({admissible} admissible), exact agreement", cells.len()), failures)
}

fn criterion_5() -> Verdict {
    let pairs: Vec<PairSpec> = enumerate_pairs(3, 3).into_iter().step_by(2).take(20).collect();
    let acs = ac_samples();
    let cells: Vec<(PairSpec, (Rational, Rational))> =
        pairs.iter().enumerate().map(|(i, p)| (p.clone(), acs[i % acs.len()].clone())).collect();
    let opts = CheckOptions::default();
    let outs = par_map(&cells, |(p, (a, c))| (meixner_check(&mfam(a, c, p), "duality", &opts), format!("{p} a={a} c={c}")));
    let failures = outs.iter().filter(|o| o.0.status != Status::Pass).map(|(o, w)| describe(o, w.clone())).collect();
    Verdict::from_failures(format!("{} families, 0 <= u <= 4, first 4 v in sigma", cells.len()), failures)
}

fn criterion_6() -> Verdict {
    let pairs: Vec<PairSpec> = sample_pairs().into_iter().filter(|p| !p.f2.is_empty()).collect();
    let opts = CheckOptions::default();
    let mut cells: Vec<(PairSpec, bool, usize)> = Vec::new();
    for p in &pairs {
        for i in 0..3 {
            cells.push((p.clone(), true, i));
            cells.push((p.clone(), false, i));
        }
    }
    let acs = ac_samples();
    let als = alpha_samples();
    let outs = par_map(&cells, |(p, meix, i)| {
        if *meix {
            let (a, c) = &acs[*i];
            (meixner_check(&mfam(a, c, p), "darboux", &opts), format!("Meixner {p} a={a} c={c}"))
        } else {
            (laguerre_check(&lfam(&als[*i], p), "darboux", &opts), format!("Laguerre {p} alpha={}", als[*i]))
        }
    });
    let failures = outs.iter().filter(|o| o.0.status != Status::Pass).map(|(o, w)| describe(o, w.clone())).collect();
    Verdict::from_failures(format!("{} families with F2 nonempty, both factorisations and intertwining", cells.len()), failures)
}

fn criterion_7() -> Verdict {
    let pairs = sample_pairs();
    let opts = CheckOptions::default();
    let acs = ac_samples();
    let als = alpha_samples();
    let mut cells = Vec::new();
    for p in &pairs {
        for i in 0..3 {
            cells.push((p.clone(), true, i));
            cells.push((p.clone(), false, i));
        }
    }
    let outs = par_map(&cells, |(p, meix, i)| {
        if *meix {
            let (a, c) = &acs[*i];
            let f = mfam(a, c, p);
            (meixner_check(&f, "altrep", &opts), f.admissible().unwrap(), format!("Meixner {p} a={a} c={c}"))
        } else {
            let f = lfam(&als[*i], p);
            (laguerre_check(&f, "altrep", &opts), f.admissible().unwrap(), format!("Laguerre {p} alpha={}", als[*i]))
        }
    });
    let mut counts: BTreeMap<(&str, &str), usize> = BTreeMap::new();
    let mut failures = Vec::new();
    for (o, adm, w) in &outs {
        *counts.entry((if *adm { "admissible" } else { "other" }, o.status.as_str())).or_default() += 1;
        let bad = match o.status {
            Status::Pass => false,
            Status::FailExpected | Status::Refused => *adm,
            _ => true,
        };
        if bad {
            failures.push(describe(o, w.clone()));
        }
    }
    let tally = counts.iter().map(|((a, s), n)| format!("{a}/{s}={n}")).collect::<Vec<_>>().join(" ");
    Verdict::from_failures(format!("{} families, n = v..v+2 [{tally}]", cells.len()), failures)
}

fn criterion_8() -> Verdict {
    let mut failures = Vec::new();
    let mut worst_m = 0f64;
    let mut worst_l = 0f64;
    let mut checked = (0usize, 0usize);
    let opts = CheckOptions::default();

    let mut mcells = Vec::new();
    for p in enumerate_pairs(2, 2) {
        for (a, c) in ac_samples().into_iter().chain([(rat(1, 2), rat(-1, 2)), (rat(1, 3), rat(-3, 2))]) {
            let f = mfam(&a, &c, &p);
            if f.admissible().unwrap() {
                mcells.push(f);
            }
        }
    }
    let mouts = par_map(&mcells, |f| {
        let mut ctx = Ctx::with_default_precision().unwrap();
        f.pair
            .sigma(3)
            .into_iter()
            .map(|r| (r, f.norm_identity(&mut ctx, r, 1e-10)))
            .collect::<Vec<_>>()
    });
    for (f, rows) in mcells.iter().zip(mouts) {
        for (r, res) in rows {
            checked.0 += 1;
            match res {
                Ok(c) if c.passed => worst_m = worst_m.max(c.rel_err),
                Ok(c) => failures.push(format!("Meixner {} a={} c={} r={r}: rel err {:e}", f.pair, f.params.a, f.params.c, c.rel_err)),
                Err(e) => failures.push(format!("Meixner {} r={r}: {e}", f.pair)),
            }
        }
    }

    let mut lcells = Vec::new();
    for p in enumerate_pairs(2, 2) {
        for al in alpha_samples().into_iter().chain([rat(-5, 4), rat(3, 2)]) {
            let f = lfam(&al, &p);
            if f.admissible().unwrap() {
                lcells.push(f);
            }
        }
    }
    let louts = par_map(&lcells, |f| {
        let mut ctx = Ctx::with_default_precision().unwrap();
        f.pair.sigma(3).into_iter().map(|n| (n, f.norm_formula(&mut ctx, n, 1e-8))).collect::<Vec<_>>()
    });
    for (f, rows) in lcells.iter().zip(louts) {
        for (n, res) in rows {
            checked.1 += 1;
            match res {
                Ok(c) if c.passed => worst_l = worst_l.max(c.rel_err),
                Ok(c) => failures.push(format!("Laguerre {} alpha={} n={n}: rel err {:e}", f.pair, f.alpha, c.rel_err)),
                Err(e) => failures.push(format!("Laguerre {} n={n}: {e}", f.pair)),
            }
        }
    }

    // the concrete value 2 sqrt(pi)
    let f = lfam(&rat(-3, 2), &PairSpec::from_vecs(vec![1], vec![]).unwrap());
    let mut ctx = Ctx::with_default_precision().unwrap();
    let c = f.norm_formula(&mut ctx, 0, 1e-8).unwrap();
    let target = 2.0 * std::f64::consts::PI.sqrt();
    let concrete = (c.numeric / target - 1.0).abs();
    if !(concrete < 1e-8) || !((c.expected / target - 1.0).abs() < 1e-12) {
        failures.push(format!("||L_0||^2 = {} (closed form {}), expected 2 sqrt(pi)", c.numeric, c.expected));
    }
    let _ = opts;
    Verdict::from_failures(
        format!(
            "Meixner {} norms max rel err {worst_m:.1e} (tol 1e-10); Laguerre {} norms max rel err {worst_l:.1e} (tol 1e-8); ||L_0||^2 = {:.12} vs 2 sqrt(pi)",
            checked.0, checked.1, c.numeric
        ),
        failures,
    )
}

fn criterion_9() -> Verdict {
    let pairs: Vec<PairSpec> = enumerate_pairs(2, 2).into_iter().filter(|p| p.u() <= 4).collect();
    let opts = CheckOptions { n_hi: Some(4), ..CheckOptions::default() };
    let mut cells = Vec::new();
    for p in pairs.iter().cloned().chain([PairSpec::classical()]) {
        for al in [rat(1, 2), rat(-3, 2)] {
            cells.push((p.clone(), al));
        }
    }
    let outs = par_map(&cells, |(p, al)| (laguerre_check(&lfam(al, p), "limit", &opts), format!("{p} alpha={al}")));
    let failures = outs.iter().filter(|o| o.0.status != Status::Pass).map(|(o, w)| describe(o, w.clone())).collect();
    let worst = outs
        .iter()
        .filter_map(|(o, _)| o.detail.strip_prefix("final deviation ").and_then(|s| s.split(',').next()?.parse::<f64>().ok()))
        .fold(0f64, f64::max);
    Verdict::from_failures(
        format!("{} families, n <= 4, t = 4..10, x in {{1/2, 1, 2}}, worst final deviation {worst:.1e}", cells.len()),
        failures,
    )
}

fn criterion_10() -> Verdict {
    let samples = vec![
        SweepParams { a: rat(1, 2), c: int(3), alpha: rat(1, 2) },
        SweepParams { a: rat(1, 3), c: rat(5, 2), alpha: rat(-1, 2) },
        SweepParams { a: rat(2, 3), c: rat(-1, 2), alpha: rat(-3, 2) },
    ];
    let rows = conjecture_sweep(4, 4, &samples);
    let mut counts: BTreeMap<(String, String, &str), usize> = BTreeMap::new();
    let mut counterexamples = Vec::new();
    let mut internal = Vec::new();
    for r in &rows {
        *counts.entry((r.family.to_string(), r.outcome.check.clone(), r.outcome.status.as_str())).or_default() += 1;
        match r.outcome.status {
            Status::Fail | Status::FailExpected => counterexamples.push(json!({
                "family": r.family,
                "pair": r.pair.to_string(),
                "params": r.params,
                "check": r.outcome.check,
                "status": r.outcome.status.as_str(),
                "witnesses": r.outcome.witnesses,
            })),
            Status::Internal => internal.push(format!("{} {} {}: {}", r.family, r.pair, r.params, r.outcome.detail)),
            _ => {}
        }
    }
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("conjecture_counterexamples.json");
    let artifact = json!({ "schema": "xoppak/1", "counterexamples": counterexamples });
    if let Err(e) = std::fs::write(&path, serde_json::to_string_pretty(&artifact).unwrap()) {
        internal.push(format!("cannot write artifact: {e}"));
    }
    let tally = counts.iter().map(|((f, c, s), n)| format!("{f}/{c}/{s}={n}")).collect::<Vec<_>>().join(" ");
    Verdict::from_failures(
        format!(
            "{} rows, {} counterexamples (artifact {}) [{tally}]",
            rows.len(),
            counterexamples.len(),
            path.display()
        ),
        internal,
    )
}

fn criterion_11() -> Verdict {
    let pairs = enumerate_pairs(5, 4);
    let alphas: Vec<Rational> =
        alpha_samples().into_iter().chain([rat(-5, 4), rat(-7, 4), rat(-9, 4), rat(-11, 4), rat(3, 2)]).collect();
    let cells: Vec<(PairSpec, Rational)> =
        pairs.iter().flat_map(|p| alphas.iter().map(move |a| (p.clone(), a.clone()))).collect();
    let opts = CheckOptions::default();
    let outs = par_map(&cells, |(p, al)| {
        let f = lfam(al, p);
        (laguerre_check(&f, "nonvanish", &opts), f.admissible().unwrap(), format!("{p} alpha={al}"))
    });
    let admissible = outs.iter().filter(|o| o.1).count();
    let failures = outs.iter().filter(|o| o.0.status != Status::Pass).map(|(o, _, w)| describe(o, w.clone())).collect();
    Verdict::from_failures(format!("{} families, {admissible} admissible, all without roots in [0, oo)", cells.len()), failures)
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("exact eigenfunction identities", criterion_1),
        ("Omega product at a=1/2, c=-7/2", criterion_2),
        ("Laguerre Omega and admissibility for F=({1},{})", criterion_3),
        ("admissibility equals the sign condition", criterion_4),
        ("degree/argument duality", criterion_5),
        ("Darboux factorisations", criterion_6),
        ("alternative determinant representations", criterion_7),
        ("norm formulas", criterion_8),
        ("Meixner to Laguerre limit", criterion_9),
        ("invariance conjecture sweep", criterion_10),
        ("nonvanishing of admissible Laguerre Omega", criterion_11),
    ];
    let only: Option<usize> = std::env::var("XOPPAK_CRITERION").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        let t = Instant::now();
        let v = run();
        let secs = t.elapsed().as_secs_f64();
        println!("criterion {:>2} {} {name}: {} ({secs:.1}s)", i + 1, if v.pass { "PASS" } else { "FAIL" }, v.summary);
        for f in v.failures.iter().take(5) {
            println!("      {f}");
        }
        if v.failures.len() > 5 {
            println!("      ... {} more", v.failures.len() - 5);
        }
        if !v.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
