//! Normal ordering in the three presets and the closed-form product identities.
//!
//! cargo run --example rewriting

use orbitkit::algebras::{closed_form_product, GradedStarAlgebra, ProductKind};
use orbitkit::ncpoly::{critical_pairs, normal_form};
use orbitkit::numeric::ParamValue;

fn main() {
    for alg in GradedStarAlgebra::all_symbolic() {
        println!("== {} ==", alg.kind());
        let joinable = critical_pairs(&alg).unwrap().iter().all(|c| c.joinable());
        println!("critical pairs joinable: {joinable}");
        for kind in ProductKind::ALL.into_iter().filter(|k| k.supported_by(alg.kind())) {
            let k = 2;
            let lit = kind.literal(&alg, k).unwrap();
            let nf = normal_form(&lit, &alg).unwrap();
            let cf = closed_form_product(&alg, kind, k).unwrap();
            println!("{kind:?} k={k}: {}", nf.display(&alg));
            assert_eq!(nf, cf);
        }
    }

    let alg = GradedStarAlgebra::uq_su2_symbolic();
    let expr = "E F - F E";
    println!("\n{expr} = {}", normal_form(&alg.parse(expr).unwrap(), &alg).unwrap().display(&alg));
    let c = alg.casimir().unwrap();
    println!("C_q = {}", normal_form(&c, &alg).unwrap().display(&alg));

    // numeric specialisation
    let q = GradedStarAlgebra::make_q_oscillator(ParamValue::exact(1, 2)).unwrap();
    let p = normal_form(&q.parse("a a*").unwrap(), &q).unwrap();
    println!("a a* at q=1/2: {}", q.specialize(&p).unwrap().display(&q));
}
