//! Checks run against representations: relation residuals, well-behavedness,
//! positivity of degree-zero elements, graded sums of squares and covariance.

mod covariance;
mod simplex;
mod sos;

use num_complex::Complex64;
use serde::Serialize;

use crate::algebras::{AlgebraKind, GradedStarAlgebra};
use crate::induce::{InducedRep, SparseMatrix};
use crate::ncpoly::{normal_form, NcPolynomial, RewriteError};
use crate::spectrum::{positive_spectrum, Character, POSITIVITY_TOL};

pub use covariance::{covariance_check, CovarianceReport, COVARIANCE_TEST_FUNCTIONS, KERNEL_TOL};
pub use simplex::feasible_point;
pub use sos::{sos_membership, SosCertificateTerm, SosError, SosVerdict, Witness};

/// Default residual tolerance.
pub const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("window of {dim} labels is too small for an interior margin of {margin}")]
    WindowTooSmall { dim: usize, margin: usize },
    #[error("element is not of degree zero")]
    NotDegreeZero,
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// Defect of one identity on the interior.
#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub name: String,
    /// Largest modulus of an interior entry of `lhs - rhs`.
    pub absolute: f64,
    /// `absolute / (1 + largest interior entry of lhs or rhs)`.
    pub relative: f64,
}

impl Residual {
    fn measure(name: String, lhs: &SparseMatrix, rhs: &SparseMatrix, rows: &[bool], cols: &[bool]) -> Self {
        let absolute = lhs.sub(rhs).max_abs_on(rows, cols);
        let scale = lhs.max_abs_on(rows, cols).max(rhs.max_abs_on(rows, cols));
        Residual {
            name,
            absolute,
            relative: absolute / (1.0 + scale),
        }
    }
}

/// Pass/fail is decided on the relative residual, so that reps with entries
/// growing along the orbit are held to the same number of significant digits.
#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub relations: Vec<Residual>,
    pub adjointness: Vec<Residual>,
    pub margin: usize,
    pub tolerance: f64,
    pub pass: bool,
}

impl ResidualReport {
    pub fn max_relative(&self) -> f64 {
        self.relations
            .iter()
            .chain(&self.adjointness)
            .map(|r| r.relative)
            .fold(0.0, f64::max)
    }

    pub fn max_absolute(&self) -> f64 {
        self.relations
            .iter()
            .chain(&self.adjointness)
            .map(|r| r.absolute)
            .fold(0.0, f64::max)
    }
}

fn check_window(rep: &InducedRep, margin: usize) -> Result<(), VerifyError> {
    let truncated = rep.truncated_below || rep.truncated_above;
    if truncated && rep.dim() < 2 * margin + 1 {
        return Err(VerifyError::WindowTooSmall { dim: rep.dim(), margin });
    }
    Ok(())
}

/// Residuals of every defining relation and of `M(x*) = M(x)†` on interior columns.
pub fn relation_residual(rep: &InducedRep, tol: f64) -> Result<ResidualReport, VerifyError> {
    let alg = rep.algebra();
    let rules = alg.rewrite_system().rules();
    let margin = rules
        .iter()
        .map(|r| r.right.max_word_len().max(2))
        .chain((0..alg.generators().len()).map(|g| alg.star_image(g as u8).max_word_len()))
        .max()
        .unwrap_or(2);
    check_window(rep, margin)?;
    let cols = rep.interior_mask(margin);
    let rows = vec![true; rep.dim()];

    let relations = rules
        .iter()
        .map(|r| {
            let lhs = NcPolynomial::word(r.left.to_vec());
            let name = format!("{} = {}", alg.format_word(&r.left), r.right.display(alg));
            Residual::measure(name, &rep.matrix_of(&lhs), &rep.matrix_of(&r.right), &rows, &cols)
        })
        .collect::<Vec<_>>();
    let adjointness = alg
        .generators()
        .iter()
        .enumerate()
        .map(|(g, sym)| {
            let star = alg.star_image(g as u8);
            let name = format!("M({})^† = M({})", sym.name, star.display(alg));
            // compare on interior rows and columns, as adjoints swap the roles
            Residual::measure(name, &rep.matrix_of(star), &rep.matrices[g].adjoint(), &cols, &cols)
        })
        .collect::<Vec<_>>();
    let pass = relations.iter().chain(&adjointness).all(|r| r.relative <= tol);
    Ok(ResidualReport {
        relations,
        adjointness,
        margin,
        tolerance: tol,
        pass,
    })
}

/// Character of B read off the diagonal at position `i`.
pub fn label_character(rep: &InducedRep, i: usize) -> Character {
    let alg = rep.algebra();
    let p = rep.params();
    let val = |name: &str| rep.generator_matrix(name).map(|m| m.get(i, i).re).unwrap_or(0.0);
    match alg.kind() {
        AlgebraKind::QOscillator => {
            let n = rep.generator_matrix("a*").unwrap().mul(rep.generator_matrix("a").unwrap());
            Character::probe(alg.kind(), p, n.get(i, i).re, None)
        }
        AlgebraKind::Podles => Character::probe(alg.kind(), p, val("a"), None),
        AlgebraKind::UqSu2 => {
            let c = rep.matrix_of(&alg.casimir().expect("U_q has a Casimir element"));
            Character::probe(alg.kind(), p, val("K"), Some(c.get(i, i).re))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WellBehavedReport {
    /// B-generator matrices are diagonal on the interior (hence normal and commuting).
    pub diagonal: bool,
    /// Every interior joint eigenvalue lies in the positive spectrum.
    pub spectrum_ok: bool,
    /// Interior labels whose joint eigenvalue failed the membership test.
    pub off_spectrum_labels: Vec<i64>,
    /// `M(a_n)` maps the joint eigenspace of `χ` into that of `α_n(χ)`, `|n| ≤ margin`.
    pub grading_ok: bool,
    pub margin: usize,
    pub pass: bool,
}

/// Discretized well-behavedness: diagonal B-restriction with spectrum inside
/// the positive spectrum, and module generators mapping label `g` to `g + n`.
pub fn well_behaved_check(rep: &InducedRep, margin: usize) -> Result<WellBehavedReport, VerifyError> {
    let alg = rep.algebra();
    check_window(rep, margin)?;
    let interior = rep.interior_mask(margin);
    let inner = rep.interior_mask(2);
    let diagonal = alg.b_generators().iter().all(|b| {
        rep.matrix_of(b)
            .entries()
            .all(|((i, j), v)| i == j || !inner[j] || v.norm() <= POSITIVITY_TOL)
    });
    let desc = positive_spectrum(alg).expect("representations live on numeric presets");
    let off_spectrum_labels: Vec<i64> = (0..rep.dim())
        .filter(|&i| inner[i] && !desc.contains_character(&label_character(rep, i), POSITIVITY_TOL))
        .map(|i| rep.labels[i])
        .collect();
    // compared on characters rather than labels so that fixed points are
    // handled too; edge labels have truncated products and are skipped
    let chars: Vec<Character> = (0..rep.dim()).map(|i| label_character(rep, i)).collect();
    let mut grading_ok = true;
    for n in -(margin as i32)..=(margin as i32) {
        let m = rep.matrix_of(&alg.module_generator(n));
        grading_ok &= m.entries().all(|((i, j), v)| {
            !interior[j]
                || !inner[i]
                || v.norm() <= POSITIVITY_TOL
                || chars[j].act(n as i64).is_ok_and(|image| image.approx_eq(&chars[i], 1e-9))
        });
    }
    let spectrum_ok = off_spectrum_labels.is_empty();
    Ok(WellBehavedReport {
        diagonal,
        spectrum_ok,
        off_spectrum_labels,
        grading_ok,
        margin,
        pass: diagonal && spectrum_ok && grading_ok,
    })
}

/// Normal form of `p`, rejecting anything outside B.
pub fn degree_zero_normal_form(alg: &GradedStarAlgebra, p: &NcPolynomial) -> Result<NcPolynomial, VerifyError> {
    let nf = normal_form(p, alg)?;
    if nf.terms().any(|(w, _)| alg.b_word_coordinates(w).is_none()) {
        return Err(VerifyError::NotDegreeZero);
    }
    Ok(nf)
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityReport {
    /// Smallest interior diagonal entry of `M(p)`.
    pub min_eigenvalue: f64,
    pub argmin_label: i64,
    pub values: Vec<(i64, f64)>,
}

/// Smallest eigenvalue of the diagonal matrix `M(p)` over interior labels.
pub fn positivity_check(rep: &InducedRep, p: &NcPolynomial) -> Result<PositivityReport, VerifyError> {
    let alg = rep.algebra();
    let nf = degree_zero_normal_form(alg, p)?;
    let margin = nf.max_word_len();
    let mask = rep.interior_mask(margin);
    let m = rep.matrix_of(&nf);
    let values: Vec<(i64, f64)> = m
        .diagonal_values()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask[*i])
        .map(|(i, v): (usize, &Complex64)| (rep.labels[i], v.re))
        .collect();
    let (argmin_label, min_eigenvalue) = values
        .iter()
        .copied()
        .fold((0, f64::INFINITY), |acc, v| if v.1 < acc.1 { v } else { acc });
    Ok(PositivityReport {
        min_eigenvalue,
        argmin_label,
        values,
    })
}

/// The bad polynomial of each algebra: positive on every well-behaved
/// representation, not a sum of squares. `None` for the Podleś sphere.
pub fn bad_polynomial(alg: &GradedStarAlgebra) -> Option<NcPolynomial> {
    let text = match alg.kind() {
        AlgebraKind::QOscillator => "(N-1)*(N-1-q)",
        AlgebraKind::UqSu2 => "(E F - [2][K;1])*(E F - [3][K;2])",
        AlgebraKind::Podles => return None,
    };
    Some(alg.parse(text).expect("built-in expression parses"))
}

/// Minimum of `χ(p)` over characters.
pub fn min_over_characters(
    alg: &GradedStarAlgebra,
    p: &NcPolynomial,
    chars: &[Character],
) -> Result<f64, VerifyError> {
    let nf = degree_zero_normal_form(alg, p)?;
    let mut min = f64::INFINITY;
    for c in chars {
        let v = c.evaluate(alg, &nf).map_err(|_| VerifyError::NotDegreeZero)?;
        min = min.min(v);
    }
    Ok(min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::induce::{preset_rep, RepFamily};
    use crate::numeric::ParamValue;

    #[test]
    fn residuals_of_presets() {
        let alg = GradedStarAlgebra::make_q_oscillator(ParamValue::exact(1, 2)).unwrap();
        let rep = preset_rep(&alg, &RepFamily::Fock, 64).unwrap();
        let r = relation_residual(&rep, 1e-12).unwrap();
        assert!(r.pass, "{r:?}");
        let pod = GradedStarAlgebra::make_podles(ParamValue::exact(1, 2), ParamValue::exact(2, 1)).unwrap();
        let rep = preset_rep(&pod, &RepFamily::PodlesPlus, 64).unwrap();
        assert!(relation_residual(&rep, 1e-12).unwrap().pass);
        let uq = GradedStarAlgebra::make_uq_su2(ParamValue::exact(2, 1)).unwrap();
        let rep = preset_rep(&uq, &RepFamily::Uq { omega: 1, l2: 2 }, 0).unwrap();
        assert!(relation_residual(&rep, 1e-13).unwrap().pass);
        let small = preset_rep(&alg, &RepFamily::Fock, 2).unwrap();
        assert!(relation_residual(&small, 1e-12).is_err());
    }

    #[test]
    fn well_behaved_and_positivity() {
        let alg = GradedStarAlgebra::make_q_oscillator(ParamValue::exact(2, 1)).unwrap();
        let rep = preset_rep(&alg, &RepFamily::Fock, 16).unwrap();
        assert!(well_behaved_check(&rep, 3).unwrap().pass);
        let bad = bad_polynomial(&alg).unwrap();
        let rep_pos = positivity_check(&rep, &bad).unwrap();
        let first: Vec<f64> = rep_pos.values.iter().rev().take(4).map(|v| v.1).collect();
        for (x, y) in first.iter().zip([3.0, 0.0, 0.0, 24.0]) {
            assert!((x - y).abs() < 1e-9, "{first:?}");
        }
        assert!(rep_pos.min_eigenvalue.abs() < 1e-9);

        let half = GradedStarAlgebra::make_q_oscillator(ParamValue::exact(1, 2)).unwrap();
        let g = preset_rep(&half, &RepFamily::Gamma { gamma: 0.5 }, 32).unwrap();
        assert!(well_behaved_check(&g, 3).unwrap().pass);
        // a fixed point: a maps the single eigenspace to itself
        let one = preset_rep(&half, &RepFamily::OneDim { phi: 1.0 }, 0).unwrap();
        assert!(well_behaved_check(&one, 3).unwrap().pass);
        let pod = GradedStarAlgebra::make_podles(ParamValue::exact(1, 2), ParamValue::exact(2, 1)).unwrap();
        let circle = preset_rep(&pod, &RepFamily::PodlesPhi { phi: 2.0 }, 0).unwrap();
        assert!(well_behaved_check(&circle, 3).unwrap().pass);

        let uq = GradedStarAlgebra::make_uq_su2(ParamValue::exact(2, 1)).unwrap();
        let rep = preset_rep(&uq, &RepFamily::Uq { omega: 1, l2: 2 }, 0).unwrap();
        assert!(well_behaved_check(&rep, 2).unwrap().pass);
        assert!(positivity_check(&rep, &bad_polynomial(&uq).unwrap()).unwrap().min_eigenvalue >= -1e-10);
        assert!(positivity_check(&rep, &uq.parse("E").unwrap()).is_err());
    }
}
