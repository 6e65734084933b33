//! Covariant pairs: polar decomposition of the degree-one generator against the
//! diagonal spectral operator.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::algebras::AlgebraKind;
use crate::induce::InducedRep;

use super::{label_character, VerifyError};

/// Singular values at or below this count as kernel directions.
pub const KERNEL_TOL: f64 = 1e-12;
/// Bump centers closer than this (relative) to a neighboring spectral value
/// are skipped.
pub const MIN_RELATIVE_GAP: f64 = 1e-4;
/// Number of bump functions used for the shift relation.
pub const COVARIANCE_TEST_FUNCTIONS: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct CovarianceReport {
    /// `max |u u† u - u|`.
    pub partial_isometry_defect: f64,
    /// `u†u` and `u u†` are the projections onto the predicted initial and final labels.
    pub projections_ok: bool,
    /// `max_f |u f(T) u† - f(F(T)) u u†|` over the bump battery, interior only.
    pub shift_residual: f64,
    pub test_functions: usize,
    /// `max |M(a_1) - u g(T)|` with `g(t) = χ_t(a_1* a_1)^{1/2}`.
    pub reconstruction_absolute: f64,
    /// Same, each entry divided by `1 + |M(a_1)|`.
    pub reconstruction_relative: f64,
}

impl CovarianceReport {
    pub fn pass(&self, shift_tol: f64, reconstruction_tol: f64) -> bool {
        self.partial_isometry_defect <= shift_tol
            && self.projections_ok
            && self.shift_residual <= shift_tol
            && self.reconstruction_relative <= reconstruction_tol
    }
}

/// Smooth bump of height 1 supported on `(c - w, c + w)`.
fn bump(x: f64, c: f64, w: f64) -> f64 {
    let y = (x - c) / w;
    if y.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - y * y)).exp()
    }
}

fn max_abs_masked(m: &DMatrix<Complex64>, mask: &[bool]) -> f64 {
    let mut best: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if mask[i] && mask[j] {
                best = best.max(m[(i, j)].norm());
            }
        }
    }
    best
}

pub fn covariance_check(rep: &InducedRep) -> Result<CovarianceReport, VerifyError> {
    let alg = rep.algebra();
    let n = rep.dim();
    let margin = 2;
    if (rep.truncated_below || rep.truncated_above) && n < 2 * margin + 3 {
        return Err(VerifyError::WindowTooSmall { dim: n, margin });
    }
    let mask = rep.interior_mask(margin);
    let q = rep.params().q_f64();

    let m = rep.matrices[alg.raising() as usize].to_dense();
    let svd = m.clone().svd(true, true);
    let (uu, vt) = (svd.u.expect("requested U"), svd.v_t.expect("requested V^T"));
    let mut u = DMatrix::<Complex64>::zeros(n, n);
    for (k, s) in svd.singular_values.iter().enumerate() {
        if *s > KERNEL_TOL {
            u += uu.column(k) * vt.row(k);
        }
    }
    let ud = u.adjoint();
    let partial_isometry_defect = (&u * &ud * &u - &u).iter().map(|z| z.norm()).fold(0.0, f64::max);

    // spectral operator and the one-step map on its values
    let chars: Vec<_> = (0..n).map(|i| label_character(rep, i)).collect();
    let t: Vec<f64> = chars.iter().map(|c| c.t).collect();
    let shift = |x: f64| match alg.kind() {
        AlgebraKind::QOscillator => 1.0 + q * x,
        AlgebraKind::Podles => q * q * x,
        AlgebraKind::UqSu2 => x / (q * q),
    };

    let init = &ud * &u;
    let fin = &u * &ud;
    let mut projections_ok = true;
    for i in 0..n {
        if !mask[i] {
            continue;
        }
        let want_init = if chars[i].domain_contains(1) { 1.0 } else { 0.0 };
        let want_fin = if chars[i].domain_contains(-1) { 1.0 } else { 0.0 };
        projections_ok &= (init[(i, i)].re - want_init).abs() < 1e-10 && (fin[(i, i)].re - want_fin).abs() < 1e-10;
    }

    // bump battery centered at interior spectral values
    let mut centers: Vec<f64> = (0..n).filter(|&i| mask[i]).map(|i| t[i]).collect();
    centers.sort_by(f64::total_cmp);
    centers.dedup();
    // keep only centers resolvable in floating point; near an accumulation
    // point the spectral values crowd below the rounding of F(t)
    let resolvable: Vec<f64> = (0..centers.len())
        .filter(|&i| {
            let c = centers[i];
            let near = [i.checked_sub(1).map(|k| centers[k]), centers.get(i + 1).copied()]
                .into_iter()
                .flatten()
                .map(|x| (x - c).abs())
                .fold(f64::INFINITY, f64::min);
            near > MIN_RELATIVE_GAP * (1.0 + c.abs())
        })
        .map(|i| centers[i])
        .collect();
    let centers = resolvable;
    let mut shift_residual: f64 = 0.0;
    if !centers.is_empty() {
        let last = centers.len() - 1;
        for j in 0..COVARIANCE_TEST_FUNCTIONS {
            let ci = j * last / (COVARIANCE_TEST_FUNCTIONS - 1).max(1);
            let c = centers[ci];
            let gap = [ci.checked_sub(1).map(|k| centers[k]), centers.get(ci + 1).copied()]
                .into_iter()
                .flatten()
                .map(|x| (x - c).abs())
                .fold(f64::INFINITY, f64::min);
            let gap = if gap.is_finite() { gap } else { 1.0 + c.abs() };
            let w = gap * (0.5 + (j % 3) as f64);
            let ft = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                n,
                t.iter().map(|x| Complex64::new(bump(*x, c, w), 0.0)),
            ));
            let fft = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                n,
                t.iter().map(|x| Complex64::new(bump(shift(*x), c, w), 0.0)),
            ));
            let lhs = &u * ft * &ud;
            let rhs = fft * &fin;
            shift_residual = shift_residual.max(max_abs_masked(&(lhs - rhs), &mask));
        }
    }

    let g = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        chars.iter().map(|c| Complex64::new(c.norm(1).max(0.0).sqrt(), 0.0)),
    ));
    let recon = &u * g;
    let mut reconstruction_absolute: f64 = 0.0;
    let mut reconstruction_relative: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if mask[i] && mask[j] {
                let d = (recon[(i, j)] - m[(i, j)]).norm();
                reconstruction_absolute = reconstruction_absolute.max(d);
                reconstruction_relative = reconstruction_relative.max(d / (1.0 + m[(i, j)].norm()));
            }
        }
    }
    Ok(CovarianceReport {
        partial_isometry_defect,
        projections_ok,
        shift_residual,
        test_functions: COVARIANCE_TEST_FUNCTIONS,
        reconstruction_absolute,
        reconstruction_relative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::GradedStarAlgebra;
    use crate::induce::{preset_rep, RepFamily};
    use crate::numeric::ParamValue;

    #[test]
    fn fock_and_one_dimensional() {
        let alg = GradedStarAlgebra::make_q_oscillator(ParamValue::exact(1, 2)).unwrap();
        let rep = preset_rep(&alg, &RepFamily::Fock, 64).unwrap();
        let r = covariance_check(&rep).unwrap();
        assert!(r.pass(1e-10, 1e-12), "{r:?}");
        // u is the 0/1 shift
        let m = rep.generator_matrix("a").unwrap();
        assert!(m.entries().all(|(_, v)| v.re > 0.0));

        let one = preset_rep(&alg, &RepFamily::OneDim { phi: 1.0 }, 0).unwrap();
        let r = covariance_check(&one).unwrap();
        assert!(r.pass(1e-10, 1e-12), "{r:?}");

        let pod = GradedStarAlgebra::make_podles(ParamValue::exact(1, 2), ParamValue::exact(2, 1)).unwrap();
        let rep = preset_rep(&pod, &RepFamily::PodlesMinus, 32).unwrap();
        assert!(covariance_check(&rep).unwrap().pass(1e-10, 1e-12));
    }
}
