//! Induce a representation from a section point and compare it with the
//! closed-form matrices.
//!
//! cargo run --example induce

use orbitkit::algebras::GradedStarAlgebra;
use orbitkit::induce::{induce, max_relative_entry_difference, preset_rep, RepFamily};
use orbitkit::numeric::ParamValue;
use orbitkit::spectrum::{Character, Sign};

fn main() {
    let alg = GradedStarAlgebra::make_uq_su2(ParamValue::exact(2, 1)).unwrap();
    let chi = Character::uq(alg.params().unwrap(), 0, 2, Sign::Plus);
    let rep = induce(&alg, &chi, 64).unwrap();
    println!("induced from {} : labels {:?}", chi.label, rep.labels);
    for name in ["K", "E", "F"] {
        println!("{name} =");
        for row in rep.generator_matrix(name).unwrap().to_dense().row_iter() {
            let cells: Vec<String> = row.iter().map(|z| format!("{:8.4}", z.re)).collect();
            println!("  [{}]", cells.join(" "));
        }
    }
    let preset = preset_rep(&alg, &RepFamily::Uq { omega: 1, l2: 2 }, 0).unwrap();
    println!("max relative difference to closed form: {:e}", max_relative_entry_difference(&rep, &preset).unwrap());

    let pod = GradedStarAlgebra::make_podles(ParamValue::exact(1, 2), ParamValue::exact(2, 1)).unwrap();
    let rep = induce(&pod, &Character::podles(pod.params().unwrap(), 0, Sign::Minus), 8).unwrap();
    let data = rep.spectral_data();
    println!("\nPodles pi_-: spectrum of {} on labels {:?}", data.generators[0], data.labels);
    println!("  {:?}", data.values.iter().map(|v| v[0]).collect::<Vec<_>>());
}
