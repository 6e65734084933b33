//! Section points, their orbits under the partial Z-action and stabilizers.
//!
//! cargo run --example orbits

use orbitkit::algebras::GradedStarAlgebra;
use orbitkit::numeric::ParamValue;
use orbitkit::pds::{fixed_points, orbit};
use orbitkit::spectrum::{section, DEFAULT_GAMMA_SAMPLES};

fn main() {
    let algs = [
        GradedStarAlgebra::make_q_oscillator(ParamValue::exact(1, 2)).unwrap(),
        GradedStarAlgebra::make_q_oscillator(ParamValue::exact(2, 1)).unwrap(),
        GradedStarAlgebra::make_podles(ParamValue::exact(1, 2), ParamValue::exact(2, 1)).unwrap(),
        GradedStarAlgebra::make_uq_su2(ParamValue::exact(2, 1)).unwrap(),
    ];
    for alg in &algs {
        println!("== {} q={} ==", alg.kind(), alg.params().unwrap().q_f64());
        for chi in section(alg, 3, &DEFAULT_GAMMA_SAMPLES).unwrap() {
            let o = orbit(&chi, 5);
            println!(
                "  {:>16}  {:?}  labels {:?}{}",
                chi.label.to_string(),
                o.stabilizer,
                o.labels(),
                if o.truncated { " ..." } else { "" }
            );
        }
        let fixed: Vec<f64> = fixed_points(alg).unwrap().iter().map(|c| c.t).collect();
        println!("  fixed points: {fixed:?}");
    }
}
