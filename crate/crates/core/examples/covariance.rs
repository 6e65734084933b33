//! Polar decomposition of the raising generator and the covariance relations.
//!
//! cargo run --example covariance

use orbitkit::algebras::GradedStarAlgebra;
use orbitkit::induce::{preset_rep, RepFamily};
use orbitkit::numeric::ParamValue;
use orbitkit::verify::covariance_check;

fn main() {
    let qosc = GradedStarAlgebra::make_q_oscillator(ParamValue::exact(1, 2)).unwrap();
    let pod = GradedStarAlgebra::make_podles(ParamValue::exact(1, 2), ParamValue::exact(2, 1)).unwrap();
    let uq = GradedStarAlgebra::make_uq_su2(ParamValue::exact(1, 2)).unwrap();
    let cases = [
        (&qosc, RepFamily::Fock),
        (&qosc, RepFamily::Gamma { gamma: 0.25 }),
        (&pod, RepFamily::PodlesPlus),
        (&pod, RepFamily::PodlesPhi { phi: 1.0 }),
        (&uq, RepFamily::Uq { omega: 1, l2: 4 }),
    ];
    println!("{:<28} {:>10} {:>6} {:>10} {:>10}", "representation", "isometry", "proj", "shift", "recon");
    for (alg, fam) in cases {
        let r = covariance_check(&preset_rep(alg, &fam, 64).unwrap()).unwrap();
        println!(
            "{:<28} {:>10.1e} {:>6} {:>10.1e} {:>10.1e}",
            format!("{fam:?}"),
            r.partial_isometry_defect,
            r.projections_ok,
            r.shift_residual,
            r.reconstruction_relative
        );
    }
}
