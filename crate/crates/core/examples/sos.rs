//! Sums of hermitian squares: a refuted positive element and a certified one.
//!
//! cargo run --example sos

use orbitkit::algebras::GradedStarAlgebra;
use orbitkit::numeric::ParamValue;
use orbitkit::verify::{bad_polynomial, sos_membership, SosVerdict};

fn report(alg: &GradedStarAlgebra, text: &str) {
    let p = alg.parse(text).unwrap();
    match sos_membership(alg, &p, 4).unwrap() {
        SosVerdict::Member { certificate } => {
            let terms: Vec<String> = certificate
                .iter()
                .map(|t| format!("{} a_{}* a_{} |{}|^2", t.weight, t.k, t.k, t.p))
                .collect();
            println!("{text}  =  {}", terms.join(" + "));
        }
        SosVerdict::Refuted { witnesses, within_ansatz } => {
            let w: Vec<String> = witnesses.iter().take(3).map(|w| w.label.clone()).collect();
            let scope = if within_ansatz { " (within the degree-4 ansatz)" } else { "" };
            println!("{text}  is not a sum of squares{scope}; vanishes at {w:?} ...");
        }
        SosVerdict::Inconclusive { reason } => println!("{text}: inconclusive, {reason}"),
    }
}

fn main() {
    let qosc = GradedStarAlgebra::make_q_oscillator(ParamValue::exact(1, 2)).unwrap();
    report(&qosc, "(N-1)*(N-1-q)");
    report(&qosc, "q^-1 N (N-1)");
    report(&qosc, "N");
    let uq = GradedStarAlgebra::make_uq_su2(ParamValue::exact(2, 1)).unwrap();
    report(&uq, "(E F - [2][K;1])*(E F - [3][K;2])");
    assert!(bad_polynomial(&uq).is_some());
}
