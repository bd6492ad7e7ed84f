//! JSON and CSV shapes of the reports. Rationals are always "p/q" strings.

use serde::Serialize;
use serde_json::{json, Value};
use xoppak::sweep::{Outcome, SweepParams, SweepRow};
use xoppak::{Error, Poly, RatFunc, Result};

use crate::job::{FamilyArgs, Family, Job, Kind};

pub const SCHEMA: &str = "xoppak/1";

pub fn poly_json(p: &Poly) -> Value {
    Value::from(p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn ratfunc_json(r: &RatFunc) -> Value {
    json!({ "num": poly_json(r.num()), "den": poly_json(r.den()) })
}

pub fn params_json(job: &Job) -> Value {
    let mut m = serde_json::Map::new();
    for (k, v) in &job.params {
        m.insert(k.to_string(), Value::from(v.clone()));
    }
    Value::Object(m)
}

pub fn construct_json(job: &Job) -> Result<Value> {
    let (lo, hi) = job.degrees();
    let mut polys = Vec::new();
    for n in lo..=hi {
        if !job.pair.in_sigma(n) {
            polys.push(json!({ "n": n, "excluded": true, "coeffs": [] }));
            continue;
        }
        let p = match &job.family {
            Family::Meixner(f) => f.m_exc(n)?,
            Family::Laguerre(f) => f.l_exc(n)?,
        };
        polys.push(json!({ "n": n, "excluded": false, "coeffs": poly_json(&p) }));
    }
    let mut v = json!({
        "schema": SCHEMA,
        "command": "construct",
        "kind": job.kind.as_str(),
        "f1": job.pair.f1.elems(),
        "f2": job.pair.f2.elems(),
        "params": params_json(job),
        "n_range": [lo, hi],
        "u": job.pair.u(),
        "v": job.pair.v(),
        "polynomials": polys,
    });
    let obj = v.as_object_mut().expect("object");
    match &job.family {
        Family::Meixner(f) => {
            obj.insert("omega".into(), poly_json(&f.omega));
            obj.insert("lambda".into(), poly_json(&f.lambda));
            let op = f.operator()?;
            let terms: Vec<Value> = op
                .terms()
                .map(|(s, r)| json!({ "shift": s, "coefficient": ratfunc_json(r) }))
                .collect();
            obj.insert("operator".into(), json!({ "type": "shift", "eigenvalue": "n", "terms": terms }));
        }
        Family::Laguerre(f) => {
            obj.insert("omega".into(), poly_json(&f.omega));
            let op = f.operator()?;
            let terms: Vec<Value> = (0..=op.order())
                .map(|j| json!({ "derivative": j, "coefficient": ratfunc_json(&op.coeff(j)) }))
                .collect();
            obj.insert("operator".into(), json!({ "type": "differential", "eigenvalue": "-n", "terms": terms }));
        }
    }
    Ok(v)
}

/// Recovers the family arguments recorded in a `construct` report.
pub fn family_args_from(v: &Value) -> Result<FamilyArgs> {
    let bad = |what: &str| Error::Parameter(format!("construct report: missing or malformed {what}"));
    if v.get("schema").and_then(Value::as_str) != Some(SCHEMA) {
        return Err(bad("schema"));
    }
    let kind = match v.get("kind").and_then(Value::as_str) {
        Some("meixner") => Kind::Meixner,
        Some("laguerre") => Kind::Laguerre,
        Some("krawtchouk") => Kind::Krawtchouk,
        _ => return Err(bad("kind")),
    };
    let set = |key: &str| -> Result<String> {
        let arr = v.get(key).and_then(Value::as_array).ok_or_else(|| bad(key))?;
        let items: Option<Vec<String>> = arr.iter().map(|x| x.as_i64().map(|i| i.to_string())).collect();
        Ok(items.ok_or_else(|| bad(key))?.join(","))
    };
    let params = v.get("params").and_then(Value::as_object).ok_or_else(|| bad("params"))?;
    let param = |k: &str| params.get(k).and_then(Value::as_str).map(str::to_string);
    let range = v.get("n_range").and_then(Value::as_array).ok_or_else(|| bad("n_range"))?;
    let (lo, hi) = match (range.first().and_then(Value::as_i64), range.get(1).and_then(Value::as_i64)) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(bad("n_range")),
    };
    Ok(FamilyArgs {
        kind,
        f1: set("f1")?,
        f2: set("f2")?,
        a: param("a"),
        c: param("c"),
        alpha: param("alpha"),
        big_n: param("N").and_then(|s| s.parse().ok()),
        n: Some(format!("{lo}..{hi}")),
    })
}

#[derive(Serialize)]
pub struct CheckRow {
    pub check: String,
    pub status: String,
    pub detail: String,
    pub witnesses: Vec<String>,
    pub seconds: f64,
}

impl CheckRow {
    pub fn new(o: Outcome, seconds: f64) -> Self {
        CheckRow { check: o.check, status: o.status.as_str().into(), detail: o.detail, witnesses: o.witnesses, seconds }
    }
}

fn join_set(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

/// One CSV row per (pair, family, check).
pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let err = |e: csv::Error| Error::Inconsistency(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["f1", "f2", "family", "params", "check", "status", "witnesses"]).map_err(err)?;
    for r in rows {
        w.write_record([
            join_set(r.pair.f1.elems()),
            join_set(r.pair.f2.elems()),
            r.family.to_string(),
            r.params.clone(),
            r.outcome.check.clone(),
            r.outcome.status.as_str().to_string(),
            r.outcome.witnesses.join("; "),
        ])
        .map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Inconsistency(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("utf-8 fields"))
}

pub fn sweep_json(max_elem: i64, max_card: usize, s: &SweepParams, rows: &[SweepRow], seconds: f64) -> Value {
    let mut counts = serde_json::Map::new();
    for r in rows {
        let key = format!("{}/{}/{}", r.family, r.outcome.check, r.outcome.status.as_str());
        let e = counts.entry(key).or_insert(Value::from(0));
        *e = Value::from(e.as_u64().unwrap_or(0) + 1);
    }
    let row_json = |r: &SweepRow| {
        json!({
            "f1": r.pair.f1.elems(),
            "f2": r.pair.f2.elems(),
            "family": r.family,
            "params": r.params,
            "check": r.outcome.check,
            "status": r.outcome.status.as_str(),
            "detail": r.outcome.detail,
            "witnesses": r.outcome.witnesses,
        })
    };
    let counterexamples: Vec<Value> = rows
        .iter()
        .filter(|r| matches!(r.outcome.status.as_str(), "fail" | "fail_expected"))
        .map(row_json)
        .collect();
    json!({
        "schema": SCHEMA,
        "command": "sweep",
        "max_elem": max_elem,
        "max_card": max_card,
        "params": { "a": s.a.to_string(), "c": s.c.to_string(), "alpha": s.alpha.to_string() },
        "pairs": rows.iter().map(|r| r.pair.to_string()).collect::<std::collections::BTreeSet<_>>().len(),
        "counts": counts,
        "counterexamples": counterexamples,
        "rows": rows.iter().map(row_json).collect::<Vec<_>>(),
        "seconds": seconds,
    })
}
