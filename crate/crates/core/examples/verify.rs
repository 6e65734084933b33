//! Relation residuals, well-behavedness and positivity of the bad polynomials.
//!
//! cargo run --example verify

use orbitkit::algebras::GradedStarAlgebra;
use orbitkit::induce::{preset_rep, RepFamily};
use orbitkit::numeric::ParamValue;
use orbitkit::verify::{bad_polynomial, positivity_check, relation_residual, well_behaved_check, RESIDUAL_TOL};

fn main() {
    let qosc = GradedStarAlgebra::make_q_oscillator(ParamValue::exact(1, 2)).unwrap();
    let uq = GradedStarAlgebra::make_uq_su2(ParamValue::exact(2, 1)).unwrap();
    let cases = [
        (&qosc, RepFamily::Fock),
        (&qosc, RepFamily::Gamma { gamma: 0.5 }),
        (&qosc, RepFamily::OneDim { phi: 0.0 }),
        (&uq, RepFamily::Uq { omega: -1, l2: 3 }),
    ];
    for (alg, fam) in cases {
        let rep = preset_rep(alg, &fam, 64).unwrap();
        let res = relation_residual(&rep, RESIDUAL_TOL).unwrap();
        let wb = well_behaved_check(&rep, res.margin).unwrap();
        let bad = bad_polynomial(alg).unwrap();
        let pos = positivity_check(&rep, &bad).unwrap();
        println!(
            "{:<32} residual {:.2e}  well-behaved {}  min of bad polynomial {:.3} at label {}",
            format!("{fam:?}"),
            res.max_relative(),
            wb.pass,
            pos.min_eigenvalue,
            pos.argmin_label
        );
    }
}
