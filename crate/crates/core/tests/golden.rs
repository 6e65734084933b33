//! `classify` output against committed tables of closed-form matrix entries.
//!
//! The tables in `tests/golden/` are written from `preset_rep` alone. To
//! regenerate them after an intentional change run
//! `ORBITKIT_BLESS=1 cargo test --test golden`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde_json::{json, Value};

use orbitkit::algebras::GradedStarAlgebra;
use orbitkit::cli::run_with;
use orbitkit::induce::{preset_rep, RepFamily};
use orbitkit::numeric::ParamValue;

const WINDOW: i64 = 6;

type Key = (String, i64, i64);

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn preset_table(alg: &GradedStarAlgebra, families: &[RepFamily]) -> Value {
    let reps: Vec<Value> = families
        .iter()
        .map(|f| {
            let rep = preset_rep(alg, f, 64).unwrap();
            let infinite = rep.truncated_below || rep.truncated_above;
            let mut entries = Vec::new();
            for (sym, m) in alg.generators().iter().zip(&rep.matrices) {
                for ((i, j), z) in m.entries() {
                    let (r, c) = (rep.labels[i], rep.labels[j]);
                    if !infinite || (r.abs() <= WINDOW && c.abs() <= WINDOW) {
                        entries.push(json!({"generator": sym.name, "row": r, "col": c, "re": z.re, "im": z.im}));
                    }
                }
            }
            json!({ "family": f, "entries": entries })
        })
        .collect();
    json!({ "algebra": alg.kind(), "parameters": alg.params(), "representations": reps })
}

fn entry_map(entries: &Value) -> BTreeMap<Key, (f64, f64)> {
    entries
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let key = (
                e["generator"].as_str().unwrap().to_string(),
                e["row"].as_i64().unwrap(),
                e["col"].as_i64().unwrap(),
            );
            (key, (e["re"].as_f64().unwrap(), e["im"].as_f64().unwrap()))
        })
        .collect()
}

fn same_entries(got: &Value, want: &Value, tol: f64, what: &str) {
    let (g, w) = (entry_map(got), entry_map(want));
    assert_eq!(g.keys().collect::<Vec<_>>(), w.keys().collect::<Vec<_>>(), "{what}");
    for (k, (re, im)) in &w {
        let (gre, gim) = g[k];
        let d = (gre - re).abs().max((gim - im).abs());
        assert!(d <= tol * (1.0 + re.abs().max(im.abs())), "{what} {k:?}: {gre} vs {re}");
    }
}

fn check(name: &str, alg: &GradedStarAlgebra, families: &[RepFamily], args: &[&str]) {
    let fresh = preset_table(alg, families);
    let path = golden_path(name);
    if std::env::var_os("ORBITKIT_BLESS").is_some() {
        std::fs::write(&path, serde_json::to_string_pretty(&fresh).unwrap() + "\n").unwrap();
    }
    let golden: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(golden["parameters"], fresh["parameters"]);
    let (g, f) = (golden["representations"].as_array().unwrap(), fresh["representations"].as_array().unwrap());
    assert_eq!(g.len(), f.len());
    for (a, b) in g.iter().zip(f) {
        assert_eq!(a["family"], b["family"]);
        same_entries(&b["entries"], &a["entries"], 1e-15, &format!("{name} vs preset_rep"));
    }

    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["orbitkit", "classify"];
    argv.extend_from_slice(args);
    assert_eq!(run_with(argv, &mut out, &mut err), 0, "{}", String::from_utf8_lossy(&err));
    let doc: Value = serde_json::from_slice(&out).unwrap();
    let listed = doc["result"]["representations"].as_array().unwrap();
    let want = golden["representations"].as_array().unwrap();
    assert_eq!(listed.len(), want.len());
    for (got, want) in listed.iter().zip(want) {
        assert_eq!(got["family"], want["family"]);
        same_entries(&got["sample_entries"], &want["entries"], 1e-12, &want["family"].to_string());
    }
}

#[test]
fn classify_uq_matches_golden() {
    let alg = GradedStarAlgebra::make_uq_su2(ParamValue::exact(2, 1)).unwrap();
    let families: Vec<RepFamily> = [1i8, -1]
        .iter()
        .flat_map(|&omega| (0..=6).map(move |l2| RepFamily::Uq { omega, l2 }))
        .collect();
    check("classify_uq_q2.json", &alg, &families, &["--algebra", "uq", "--q", "2", "--max-l", "3"]);
}

#[test]
fn classify_podles_matches_golden() {
    let alg = GradedStarAlgebra::make_podles(ParamValue::exact(1, 2), ParamValue::exact(2, 1)).unwrap();
    let families = [RepFamily::PodlesPlus, RepFamily::PodlesMinus, RepFamily::PodlesPhi { phi: 0.0 }];
    check("classify_podles_q05_r2.json", &alg, &families, &["--algebra", "podles", "--q", "1/2", "--r", "2"]);
}
