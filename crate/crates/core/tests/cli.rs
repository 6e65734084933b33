use serde_json::Value;
use sha2::{Digest, Sha256};

use orbitkit::cli::{run_with, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION_FAILED};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<&str> = std::iter::once("orbitkit").chain(args.iter().copied()).collect();
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn every_subcommand_is_deterministic() {
    let cases: &[&[&str]] = &[
        &["list-algebras"],
        &["spectrum", "--algebra", "qosc", "--q", "1/2"],
        &["orbits", "--algebra", "uq", "--q", "2", "--max-radius", "40"],
        &["classify", "--algebra", "podles", "--q", "1/2", "--r", "2"],
        &["induce", "--algebra", "podles", "--q", "1/2", "--r", "2", "--character", "0,+", "--truncation", "16"],
        &["verify", "--algebra", "qosc", "--q", "1/2", "--rep", "fock"],
        &["sos", "--algebra", "qosc", "--q", "1/2", "--target", "(N-1)*(N-1-q)"],
        &["covariance", "--algebra", "qosc", "--q", "1/2", "--rep", "fock", "--truncation", "32"],
    ];
    for args in cases {
        for format in ["json", "csv"] {
            let mut a = args.to_vec();
            a.extend(["--format", format]);
            let first = run(&a);
            assert_eq!(first.0, EXIT_OK, "{a:?}: {}", first.2);
            assert_eq!(first, run(&a), "{a:?}");
        }
    }
}

#[test]
fn manifest_hash_and_warnings() {
    let doc = json(&["orbits", "--algebra", "qosc", "--q", "1/2"]);
    let m = &doc["manifest"];
    assert_eq!(m["subcommand"], "orbits");
    assert_eq!(m["algebra"], "q_oscillator");
    assert_eq!(m["parameters"]["algebra_parameters"]["q"], "1/2");
    assert!(m["warnings"].as_array().unwrap().is_empty());
    let hash = hex::encode(Sha256::digest(serde_json::to_string(&doc["result"]).unwrap().as_bytes()));
    assert_eq!(m["output_hash"], hash.as_str());

    let doc = json(&["orbits", "--algebra", "qosc", "--q", "0.5"]);
    let w = doc["manifest"]["warnings"].as_array().unwrap();
    assert_eq!(w.len(), 1);
    assert!(w[0].as_str().unwrap().contains("floating point"));
}

#[test]
fn out_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("orbitkit-cli-test-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let args = ["classify", "--algebra", "uq", "--q", "2", "--max-l", "1"];
    let (_, stdout, _) = run(&args);
    let (code, quiet, _) = run(&[&args[..], &["--out", p]].concat());
    assert_eq!(code, EXIT_OK);
    assert!(quiet.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn classify_inventories() {
    let families = |doc: &Value| -> Vec<String> {
        doc["result"]["representations"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["family"]["name"].as_str().unwrap().to_string())
            .collect()
    };
    let uq = json(&["classify", "--algebra", "uq", "--q", "2", "--max-l", "3"]);
    let reps = uq["result"]["representations"].as_array().unwrap();
    assert_eq!(reps.len(), 14);
    for r in reps {
        let l2 = r["family"]["l2"].as_u64().unwrap();
        assert_eq!(r["dim"].as_u64().unwrap(), l2 + 1);
    }
    assert_eq!(families(&json(&["classify", "--algebra", "qosc", "--q", "2"])), ["fock"]);
    assert_eq!(
        families(&json(&["classify", "--algebra", "podles", "--q", "0.5", "--r", "2"])),
        ["podles_plus", "podles_minus", "podles_phi"]
    );
    let q_half = json(&["classify", "--algebra", "qosc", "--q", "1/2", "--gamma", "0.5"]);
    assert_eq!(families(&q_half), ["fock", "one_dim", "gamma"]);
}

#[test]
fn induce_csv_has_formulas() {
    let (code, out, _) = run(&[
        "induce", "--algebra", "qosc", "--q", "1/2", "--character", "0", "--truncation", "4", "--format", "csv",
    ]);
    assert_eq!(code, EXIT_OK);
    let mut rd = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(rd.headers().unwrap(), vec!["generator", "row_label", "col_label", "re", "im", "formula"]);
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    // a and a* each have four nonzero entries on labels -4..0
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r[5].contains("[[k")));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[]).0, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["spectrum", "--algebra", "qosc"]).0, EXIT_USAGE);
    assert_eq!(run(&["spectrum", "--algebra", "nope", "--q", "2"]).0, EXIT_USAGE);
    assert_eq!(run(&["spectrum", "--algebra", "qosc", "--q", "x"]).0, EXIT_USAGE);
    assert_eq!(run(&["spectrum", "--algebra", "podles", "--q", "1/2"]).0, EXIT_USAGE);
    assert_eq!(run(&["sos", "--algebra", "qosc", "--q", "1/2", "--target", "N +"]).0, EXIT_USAGE);
    assert_eq!(run(&["verify", "--algebra", "uq", "--q", "2", "--rep", "uq", "--l", "1/3"]).0, EXIT_USAGE);

    assert_eq!(run(&["spectrum", "--algebra", "qosc", "--q", "-1"]).0, EXIT_DOMAIN);
    assert_eq!(run(&["spectrum", "--algebra", "podles", "--q", "2", "--r", "1"]).0, EXIT_DOMAIN);
    assert_eq!(run(&["verify", "--algebra", "qosc", "--q", "2", "--rep", "gamma"]).0, EXIT_DOMAIN);
    assert_eq!(run(&["induce", "--algebra", "qosc", "--q", "1/2", "--character", "3,+"]).0, EXIT_USAGE);
    assert_eq!(run(&["sos", "--algebra", "qosc", "--q", "0.5", "--target", "N"]).0, EXIT_DOMAIN);

    let strict = ["verify", "--algebra", "qosc", "--q", "1/2", "--rep", "fock", "--tol", "1e-30"];
    assert_eq!(run(&strict).0, EXIT_VERIFICATION_FAILED);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn sos_verdicts() {
    let refuted = json(&["sos", "--algebra", "qosc", "--q", "1/2", "--target", "(N-1)*(N-1-q)"]);
    assert_eq!(refuted["result"]["verdict"]["verdict"], "refuted");
    let member = json(&["sos", "--algebra", "qosc", "--q", "1/2", "--target", "q^-1 N (N-1)"]);
    assert_eq!(member["result"]["verdict"]["verdict"], "member");
    let uq = json(&["sos", "--algebra", "uq", "--q", "2", "--target", "(E F - [2][K;1])*(E F - [3][K;2])"]);
    assert_eq!(uq["result"]["verdict"]["within_ansatz"], true);
}

#[test]
fn verify_passes_for_every_preset() {
    let cases: &[&[&str]] = &[
        &["--algebra", "qosc", "--q", "2", "--rep", "fock"],
        &["--algebra", "qosc", "--q", "1/2", "--rep", "gamma", "--gamma", "0.3"],
        &["--algebra", "qosc", "--q", "1/2", "--rep", "one_dim", "--phi", "1"],
        &["--algebra", "podles", "--q", "1/2", "--r", "2", "--rep", "podles_plus"],
        &["--algebra", "podles", "--q", "1/2", "--r", "2", "--rep", "podles_minus"],
        &["--algebra", "podles", "--q", "1/2", "--r", "2", "--rep", "podles_phi", "--phi", "3"],
        &["--algebra", "uq", "--q", "1/2", "--rep", "uq", "--omega", "-1", "--l", "5/2"],
    ];
    for c in cases {
        for sub in ["verify", "covariance"] {
            let args: Vec<&str> = std::iter::once(sub).chain(c.iter().copied()).collect();
            let doc = json(&args);
            assert_eq!(doc["result"]["pass"], true, "{args:?}");
        }
    }
}
