//! The positive spectrum of B and a positivity table for its first points.
//!
//! cargo run --example spectrum

use orbitkit::algebras::GradedStarAlgebra;
use orbitkit::numeric::ParamValue;
use orbitkit::spectrum::{positive_spectrum, Character};

fn main() {
    let algs = [
        GradedStarAlgebra::make_q_oscillator(ParamValue::exact(1, 2)).unwrap(),
        GradedStarAlgebra::make_podles(ParamValue::exact(1, 2), ParamValue::exact(2, 1)).unwrap(),
        GradedStarAlgebra::make_uq_su2(ParamValue::exact(2, 1)).unwrap(),
    ];
    for alg in &algs {
        let desc = positive_spectrum(alg).unwrap();
        println!("== {} ==", alg.kind());
        for f in &desc.discrete {
            println!("  family {}: {} ({})", f.name, f.formula, f.indices);
        }
        for iv in &desc.continuous {
            println!("  interval [{}, {})", iv.lo, iv.hi.map_or("inf".into(), |h| h.to_string()));
        }
        for chi in desc.points(2) {
            println!("  {:>10}  t={:<12.6} min norm over depth 25: {:.3e}", chi.label.to_string(), chi.t, chi.min_norm(25));
        }
    }

    // a point strictly between [[1]] and [[2]] fails at the second step
    let alg = &algs[0];
    let probe = Character::probe(alg.kind(), alg.params().unwrap(), 1.2, None);
    println!("\nt = 1.2 positive to depth 1: {}, depth 2: {}", probe.is_positive(1), probe.is_positive(2));
}
