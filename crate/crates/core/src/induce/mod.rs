//! Induced *-representations built from orbit data, and the closed-form preset
//! families they are compared against.
//!
//! Basis vectors are indexed by orbit labels `g` in increasing order. The preset
//! families are written in their customary indices (`k = -g` for the
//! q-oscillator and the Podleś sphere, `m = g - l` for U_q) and then placed on
//! the same label grid.

mod sparse;

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::algebras::{closed_form_product, AlgebraError, AlgebraKind, GradedStarAlgebra, ProductKind};
use crate::ncpoly::{Gen, NcPolynomial};
use crate::numeric::Params;
use crate::pds::{orbit, stabilizer, Stabilizer};
use crate::spectrum::{CharLabel, Character, Sign, SpectrumError};

pub use sparse::SparseMatrix;

/// Depth used to confirm positivity of a character before inducing from it.
pub const INDUCE_POSITIVITY_DEPTH: u32 = 25;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InduceError {
    #[error("character is not in the positive spectrum")]
    NotPositive,
    #[error("truncation must be at least 1")]
    TruncationTooSmall,
    #[error("the stabilizer must be {expected:?} for this construction")]
    WrongStabilizer { expected: Stabilizer },
    #[error("invalid representation parameters: {0}")]
    InvalidParams(String),
    #[error("algebra has no numeric parameters")]
    Symbolic,
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The closed-form families of irreducible representations.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum RepFamily {
    /// q-oscillator Fock representation.
    Fock,
    /// q-oscillator series `π_γ`, `γ ∈ (0, 1]`, for `q < 1`.
    Gamma { gamma: f64 },
    /// q-oscillator one-dimensional `π_φ` at the fixed point, `q < 1`.
    OneDim { phi: f64 },
    /// Podleś `π_+`.
    PodlesPlus,
    /// Podleś `π_-`.
    PodlesMinus,
    /// Podleś one-dimensional `π_φ`.
    PodlesPhi { phi: f64 },
    /// U_q `π_{ω,l}` with `l = l2 / 2`.
    Uq { omega: i8, l2: u32 },
}

impl RepFamily {
    pub fn name(&self) -> &'static str {
        match self {
            RepFamily::Fock => "fock",
            RepFamily::Gamma { .. } => "gamma",
            RepFamily::OneDim { .. } => "one_dim",
            RepFamily::PodlesPlus => "podles_plus",
            RepFamily::PodlesMinus => "podles_minus",
            RepFamily::PodlesPhi { .. } => "podles_phi",
            RepFamily::Uq { .. } => "uq",
        }
    }

    pub fn algebra(&self) -> AlgebraKind {
        match self {
            RepFamily::Fock | RepFamily::Gamma { .. } | RepFamily::OneDim { .. } => AlgebraKind::QOscillator,
            RepFamily::PodlesPlus | RepFamily::PodlesMinus | RepFamily::PodlesPhi { .. } => AlgebraKind::Podles,
            RepFamily::Uq { .. } => AlgebraKind::UqSu2,
        }
    }

    /// Family of the irreducible induced from a section point.
    pub fn of_section_point(chi: &Character, phi: f64) -> Option<RepFamily> {
        Some(match &chi.label {
            CharLabel::QInteger { k: 0 } => RepFamily::Fock,
            CharLabel::Gamma { gamma, j: 0 } => RepFamily::Gamma { gamma: *gamma },
            CharLabel::FixedPoint => RepFamily::OneDim { phi },
            CharLabel::Podles { m: 0, sign: Sign::Plus } => RepFamily::PodlesPlus,
            CharLabel::Podles { m: 0, sign: Sign::Minus } => RepFamily::PodlesMinus,
            CharLabel::Infinity => RepFamily::PodlesPhi { phi },
            CharLabel::Uq { m: 0, n, sign } => RepFamily::Uq {
                omega: sign.value() as i8,
                l2: *n as u32,
            },
            _ => return None,
        })
    }
}

/// How a representation was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RepSource {
    Induced,
    Preset,
}

/// Diagonal of the B-restriction: values of each B-generator at each label.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralData {
    pub generators: Vec<String>,
    pub labels: Vec<i64>,
    /// `values[i][j]`: generator `j` at label `labels[i]`.
    pub values: Vec<Vec<f64>>,
}

/// A (possibly truncated) representation on the label grid.
#[derive(Clone, Debug)]
pub struct InducedRep {
    alg: GradedStarAlgebra,
    pub source: RepSource,
    pub family: Option<RepFamily>,
    pub base: Option<Character>,
    pub labels: Vec<i64>,
    /// One matrix per generator, in generator order.
    pub matrices: Vec<SparseMatrix>,
    pub truncated_below: bool,
    pub truncated_above: bool,
    pub window: u64,
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

impl InducedRep {
    pub fn algebra(&self) -> &GradedStarAlgebra {
        &self.alg
    }

    pub fn params(&self) -> &Params {
        self.alg.params().expect("representations live on numeric presets")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: i64) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn generator_matrix(&self, name: &str) -> Option<&SparseMatrix> {
        self.alg.generator_index(name).map(|g| &self.matrices[g as usize])
    }

    /// Labels at least `margin` steps away from every truncated edge.
    pub fn interior_mask(&self, margin: usize) -> Vec<bool> {
        let n = self.dim();
        (0..n)
            .map(|i| (!self.truncated_below || i >= margin) && (!self.truncated_above || i + margin < n))
            .collect()
    }

    /// Value of a scalar coefficient at the preset's parameters.
    fn coefficient(&self, c: &crate::scalar::Scalar) -> f64 {
        let p = self.params();
        match p.exact() {
            Some((q, r)) => c
                .eval_exact(&q, &r)
                .map(|x| crate::numeric::Real::to_f64(&x))
                .unwrap_or(f64::NAN),
            None => p.eval_f64(c),
        }
    }

    /// Substitute generator matrices into each word of `p`.
    pub fn matrix_of(&self, p: &NcPolynomial) -> SparseMatrix {
        let n = self.dim();
        let mut cache: BTreeMap<Vec<Gen>, SparseMatrix> = BTreeMap::new();
        let mut out = SparseMatrix::zeros(n);
        for (w, c) in p.terms() {
            let m = cache.entry(w.clone()).or_insert_with(|| {
                w.iter()
                    .fold(SparseMatrix::identity(n), |acc, g| acc.mul(&self.matrices[*g as usize]))
            });
            out = out.axpy(re(self.coefficient(c)), m);
        }
        out
    }

    /// Joint diagonal of the B-generator matrices.
    pub fn spectral_data(&self) -> SpectralData {
        let gens = self.alg.b_generators();
        let diags: Vec<Vec<Complex64>> = gens.iter().map(|b| self.matrix_of(b).diagonal_values()).collect();
        SpectralData {
            generators: gens.iter().map(|b| b.display(&self.alg).to_string()).collect(),
            labels: self.labels.clone(),
            values: (0..self.dim()).map(|i| diags.iter().map(|d| d[i].re).collect()).collect(),
        }
    }
}

/// B-elements `r·l` and `l·r` for the raising and lowering generators.
struct Ladder {
    raise_lower: NcPolynomial,
    lower_raise: NcPolynomial,
}

impl Ladder {
    fn new(alg: &GradedStarAlgebra) -> Result<Self, InduceError> {
        Ok(Ladder {
            raise_lower: closed_form_product(alg, ProductKind::RaisingThenLowering, 1)?,
            lower_raise: closed_form_product(alg, ProductKind::LoweringThenRaising, 1)?,
        })
    }
}

/// Build the induced representation of a positive character with trivial
/// stabilizer. Infinite orbits are cut to labels with `|g| ≤ truncation`.
///
/// Entries come from the matrix-element formula for `a_g = r^g` or `l^{-g}`,
/// reduced with `χ(a_{g±1}* a_{g±1}) = χ(a_g* a_g)·χ^g(a_{±1}* a_{±1})` so
/// that only neighboring character values appear:
/// `π(r) e_g = χ^g(r* r)^{1/2} e_{g+1}` for `g ≥ 0`,
/// `π(r) e_g = χ^{g+1}(r l) χ^{g+1}(l* l)^{-1/2} e_{g+1}` for `g < 0`,
/// and symmetrically for `l`.
pub fn induce(alg: &GradedStarAlgebra, chi: &Character, truncation: u64) -> Result<InducedRep, InduceError> {
    if truncation < 1 {
        return Err(InduceError::TruncationTooSmall);
    }
    if alg.params().is_none() {
        return Err(InduceError::Symbolic);
    }
    if !chi.is_positive(INDUCE_POSITIVITY_DEPTH) {
        return Err(InduceError::NotPositive);
    }
    if stabilizer(chi) != Stabilizer::Trivial {
        return Err(InduceError::WrongStabilizer {
            expected: Stabilizer::Trivial,
        });
    }
    let orb = orbit(chi, truncation);
    let labels = orb.labels();
    let points: BTreeMap<i64, &Character> = orb.points.iter().map(|(g, c)| (*g, c)).collect();
    let ladder = Ladder::new(alg)?;
    let n = labels.len();
    let (lo, hi) = (labels[0], labels[n - 1]);
    let idx = |g: i64| (g - lo) as usize;

    let mut matrices = Vec::new();
    for (gi, sym) in alg.generators().iter().enumerate() {
        let gen = gi as Gen;
        let mut m = SparseMatrix::zeros(n);
        match sym.degree {
            0 => {
                let x = alg.gen_poly(&sym.name);
                for &g in &labels {
                    m.set(idx(g), idx(g), re(points[&g].evaluate(alg, &x)?));
                }
            }
            1 => {
                for g in lo..hi {
                    let v = if g >= 0 {
                        points[&g].norm(1).max(0.0).sqrt()
                    } else {
                        let c = points[&(g + 1)];
                        c.evaluate(alg, &ladder.raise_lower)? / c.norm(-1).sqrt()
                    };
                    m.set(idx(g + 1), idx(g), re(v));
                }
            }
            -1 => {
                for g in lo + 1..=hi {
                    let v = if g <= 0 {
                        points[&g].norm(-1).max(0.0).sqrt()
                    } else {
                        let c = points[&(g - 1)];
                        c.evaluate(alg, &ladder.lower_raise)? / c.norm(1).sqrt()
                    };
                    m.set(idx(g - 1), idx(g), re(v));
                }
            }
            d => unreachable!("generator {} has degree {d}", gen),
        }
        matrices.push(m);
    }
    let truncated_below = orb.truncated && chi.domain_contains(lo - 1);
    let truncated_above = orb.truncated && chi.domain_contains(hi + 1);
    Ok(InducedRep {
        alg: alg.clone(),
        source: RepSource::Induced,
        family: RepFamily::of_section_point(chi, 0.0),
        base: Some(chi.clone()),
        labels,
        matrices,
        truncated_below,
        truncated_above,
        window: truncation,
    })
}

/// One-dimensional representation at a character fixed by all of Z:
/// `r ↦ e^{iφ} χ(r* r)^{1/2}`, its adjoint for `l`, `χ(x)` on degree zero.
pub fn induce_one_dimensional(alg: &GradedStarAlgebra, chi: &Character, phi: f64) -> Result<InducedRep, InduceError> {
    if stabilizer(chi) != Stabilizer::AllOfZ {
        return Err(InduceError::WrongStabilizer {
            expected: Stabilizer::AllOfZ,
        });
    }
    if !(0.0..TAU).contains(&phi) {
        return Err(InduceError::InvalidParams(format!("phase {phi} outside [0, 2π)")));
    }
    if !chi.is_positive(INDUCE_POSITIVITY_DEPTH) {
        return Err(InduceError::NotPositive);
    }
    let amp = Complex64::from_polar(chi.norm(1).max(0.0).sqrt(), phi);
    let mut matrices = Vec::new();
    for sym in alg.generators() {
        let v = match sym.degree {
            0 => re(chi.evaluate(alg, &alg.gen_poly(&sym.name))?),
            1 => amp,
            _ => amp.conj(),
        };
        matrices.push(SparseMatrix::diagonal(&[v]));
    }
    Ok(InducedRep {
        alg: alg.clone(),
        source: RepSource::Induced,
        family: RepFamily::of_section_point(chi, phi),
        base: Some(chi.clone()),
        labels: vec![0],
        matrices,
        truncated_below: false,
        truncated_above: false,
        window: 0,
    })
}

fn q_int(q: f64, k: i64) -> f64 {
    if q == 1.0 {
        k as f64
    } else {
        (q.powi(k as i32) - 1.0) / (q - 1.0)
    }
}

fn q_num(q: f64, n: i64) -> f64 {
    (q.powi(n as i32) - q.powi(-n as i32)) / (q - 1.0 / q)
}

/// Matrices of a preset family from its closed-form action on the customary
/// basis, placed on the induced label grid. Independent of [`induce`].
pub fn preset_rep(alg: &GradedStarAlgebra, family: &RepFamily, truncation: u64) -> Result<InducedRep, InduceError> {
    if family.algebra() != alg.kind() {
        return Err(InduceError::Algebra(AlgebraError::WrongAlgebra {
            op: "preset_rep",
            algebra: alg.kind(),
        }));
    }
    let params = alg.params().ok_or(InduceError::Symbolic)?;
    let q = params.q_f64();
    let r = params.r_f64();
    let t = truncation as i64;
    let bad = |m: &str| Err(InduceError::InvalidParams(m.to_string()));
    let needs_window = !matches!(family, RepFamily::OneDim { .. } | RepFamily::PodlesPhi { .. } | RepFamily::Uq { .. });
    if needs_window && truncation < 1 {
        return Err(InduceError::TruncationTooSmall);
    }

    // (labels, truncated below, truncated above)
    let (labels, below, above): (Vec<i64>, bool, bool) = match family {
        RepFamily::Fock | RepFamily::PodlesPlus | RepFamily::PodlesMinus => ((-t..=0).collect(), true, false),
        RepFamily::Gamma { .. } => ((-t..=t).collect(), true, true),
        RepFamily::OneDim { .. } | RepFamily::PodlesPhi { .. } => (vec![0], false, false),
        RepFamily::Uq { l2, .. } => ((0..=*l2 as i64).collect(), false, false),
    };
    let n = labels.len();
    let lo = labels[0];
    let idx = |g: i64| (g - lo) as usize;
    let mut mats: BTreeMap<&str, SparseMatrix> = BTreeMap::new();
    let mut put = |name: &'static str, from: i64, to: i64, v: Complex64| {
        if labels.binary_search(&from).is_ok() && labels.binary_search(&to).is_ok() {
            mats.entry(name).or_insert_with(|| SparseMatrix::zeros(n)).set(idx(to), idx(from), v);
        }
    };

    match family {
        RepFamily::Fock => {
            for k in 0..=t {
                // a e_k = [[k]]^{1/2} e_{k-1}, a* e_k = [[k+1]]^{1/2} e_{k+1}
                put("a", -k, -(k - 1), re(q_int(q, k).sqrt()));
                put("a*", -k, -(k + 1), re(q_int(q, k + 1).sqrt()));
            }
        }
        RepFamily::Gamma { gamma } => {
            if q >= 1.0 || !(0.0..=1.0).contains(gamma) || *gamma == 0.0 {
                return bad("gamma family needs q < 1 and 0 < gamma <= 1");
            }
            let c = |k: i64| ((1.0 + q.powf(gamma + k as f64)) / (1.0 - q)).sqrt();
            for k in -t..=t {
                put("a", -k, -(k - 1), re(c(k)));
                put("a*", -k, -(k + 1), re(c(k + 1)));
            }
        }
        RepFamily::OneDim { phi } => {
            if q >= 1.0 || !(0.0..TAU).contains(phi) {
                return bad("one-dimensional family needs q < 1 and phi in [0, 2pi)");
            }
            let a = Complex64::from_polar((1.0 - q).powf(-0.5), *phi);
            put("a", 0, 0, a);
            put("a*", 0, 0, a.conj());
        }
        RepFamily::PodlesPlus | RepFamily::PodlesMinus => {
            let sign = if *family == RepFamily::PodlesPlus { 1.0 } else { -1.0 };
            let lam = 0.5 + sign * (r + 0.25).sqrt();
            let x = |k: i64| q.powi(2 * k as i32) * lam;
            let b = |k: i64| (x(k) - x(k) * x(k) + r).max(0.0).sqrt();
            for k in 0..=t {
                put("a", -k, -k, re(x(k)));
                put("b", -k, -(k - 1), re(b(k)));
                put("b*", -k, -(k + 1), re(b(k + 1)));
            }
        }
        RepFamily::PodlesPhi { phi } => {
            if !(0.0..TAU).contains(phi) {
                return bad("phi must lie in [0, 2pi)");
            }
            let b = Complex64::from_polar(r.sqrt(), *phi);
            put("b", 0, 0, b);
            put("b*", 0, 0, b.conj());
        }
        RepFamily::Uq { omega, l2 } => {
            if *omega != 1 && *omega != -1 {
                return bad("omega must be +1 or -1");
            }
            let w = *omega as f64;
            let l2 = *l2 as i64;
            // m = m2/2 with m2 ≡ l2 (mod 2); the label is g = l + m = (l2 + m2)/2
            let g_of = |m2: i64| (l2 + m2) / 2;
            let qh = |e2: i64| q.powf(e2 as f64 / 2.0);
            for m2 in (-l2..=l2).step_by(2) {
                let g = g_of(m2);
                put("K", g, g, re(w * qh(2 * m2)));
                put("K^-1", g, g, re(w * qh(-2 * m2)));
                let up = qh(m2 + 2) * (q_num(q, (l2 - m2) / 2) * q_num(q, (l2 + m2) / 2 + 1)).max(0.0).sqrt();
                put("E", g, g + 1, re(up));
                let down = w * qh(-m2) * (q_num(q, (l2 + m2) / 2) * q_num(q, (l2 - m2) / 2 + 1)).max(0.0).sqrt();
                put("F", g, g - 1, re(down));
            }
        }
    }
    let matrices = alg
        .generators()
        .iter()
        .map(|s| mats.get(s.name.as_str()).cloned().unwrap_or_else(|| SparseMatrix::zeros(n)))
        .collect();
    Ok(InducedRep {
        alg: alg.clone(),
        source: RepSource::Preset,
        family: Some(family.clone()),
        base: None,
        labels,
        matrices,
        truncated_below: below,
        truncated_above: above,
        window: if needs_window { truncation } else { 0 },
    })
}

/// Largest entrywise difference between two representations on the same
/// label grid; `None` if the grids differ.
pub fn max_entry_difference(a: &InducedRep, b: &InducedRep) -> Option<f64> {
    if a.labels != b.labels || a.matrices.len() != b.matrices.len() {
        return None;
    }
    Some(
        a.matrices
            .iter()
            .zip(&b.matrices)
            .map(|(x, y)| x.sub(y).max_abs())
            .fold(0.0, f64::max),
    )
}

/// Largest `|x - y| / (1 + max(|x|, |y|))` over corresponding entries.
/// Entries along an infinite orbit can grow geometrically, so this is the
/// measure that keeps a fixed number of significant digits.
pub fn max_relative_entry_difference(a: &InducedRep, b: &InducedRep) -> Option<f64> {
    if a.labels != b.labels || a.matrices.len() != b.matrices.len() {
        return None;
    }
    let mut worst: f64 = 0.0;
    for (x, y) in a.matrices.iter().zip(&b.matrices) {
        let keys: std::collections::BTreeSet<(usize, usize)> = x.entries().chain(y.entries()).map(|(k, _)| k).collect();
        for (i, j) in keys {
            let (u, v) = (x.get(i, j), y.get(i, j));
            worst = worst.max((u - v).norm() / (1.0 + u.norm().max(v.norm())));
        }
    }
    Some(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::normal_form;
    use crate::numeric::ParamValue;

    #[test]
    fn fock_entries() {
        let alg = GradedStarAlgebra::make_q_oscillator(ParamValue::exact(2, 1)).unwrap();
        let chi = Character::q_integer(alg.params().unwrap(), 0);
        let rep = induce(&alg, &chi, 8).unwrap();
        let a = rep.generator_matrix("a").unwrap();
        let (from, to) = (rep.index_of(-3).unwrap(), rep.index_of(-2).unwrap());
        assert!((a.get(to, from).re - 7f64.sqrt()).abs() < 1e-12);
        let preset = preset_rep(&alg, &RepFamily::Fock, 8).unwrap();
        assert!(max_entry_difference(&rep, &preset).unwrap() < 1e-12);
        let n = rep.matrix_of(&alg.parse("N").unwrap());
        let d: Vec<f64> = n.diagonal_values().iter().rev().take(4).map(|c| c.re).collect();
        for (x, y) in d.iter().zip([0.0, 1.0, 3.0, 7.0]) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn podles_and_uq_entries() {
        let pod = GradedStarAlgebra::make_podles(ParamValue::exact(1, 2), ParamValue::exact(2, 1)).unwrap();
        let chi = Character::podles(pod.params().unwrap(), 0, Sign::Plus);
        let rep = induce(&pod, &chi, 6).unwrap();
        let b = rep.generator_matrix("b").unwrap();
        let v = b.get(rep.index_of(0).unwrap(), rep.index_of(-1).unwrap()).re;
        assert!((v - 1.5).abs() < 1e-12);

        let uq = GradedStarAlgebra::make_uq_su2(ParamValue::exact(2, 1)).unwrap();
        let chi = Character::uq(uq.params().unwrap(), 0, 1, Sign::Plus);
        let rep = induce(&uq, &chi, 4).unwrap();
        let k: Vec<f64> = rep.generator_matrix("K").unwrap().diagonal_values().iter().map(|c| c.re).collect();
        assert_eq!(k, vec![0.5, 2.0]);
        assert!((rep.generator_matrix("E").unwrap().get(1, 0).re - 2f64.sqrt()).abs() < 1e-12);
        let c = rep.matrix_of(&normal_form(&uq.casimir().unwrap(), &uq).unwrap());
        for v in c.diagonal_values() {
            assert!((v.re - 17.0 / 9.0).abs() < 1e-12);
        }

        let minus = preset_rep(&uq, &RepFamily::Uq { omega: -1, l2: 1 }, 0).unwrap();
        let f = minus.generator_matrix("F").unwrap();
        assert!((f.get(0, 1).re + 0.5f64.sqrt()).abs() < 1e-12);
        let induced = induce(&uq, &Character::uq(uq.params().unwrap(), 0, 1, Sign::Minus), 4).unwrap();
        assert!(max_entry_difference(&induced, &minus).unwrap() < 1e-12);
    }

    #[test]
    fn one_dimensional_examples() {
        let alg = GradedStarAlgebra::make_q_oscillator(ParamValue::exact(3, 4)).unwrap();
        let fp = Character::fixed_point(alg.params().unwrap());
        let rep = induce_one_dimensional(&alg, &fp, 0.0).unwrap();
        assert!((rep.generator_matrix("a").unwrap().get(0, 0).re - 2.0).abs() < 1e-12);
        assert!(induce(&alg, &fp, 4).is_err());

        let pod = GradedStarAlgebra::make_podles(ParamValue::exact(1, 2), ParamValue::exact(2, 1)).unwrap();
        let rep = induce_one_dimensional(&pod, &Character::infinity(pod.params().unwrap()), std::f64::consts::PI).unwrap();
        let b = rep.generator_matrix("b").unwrap().get(0, 0);
        assert!((b.re + 2f64.sqrt()).abs() < 1e-12 && b.im.abs() < 1e-12);
        assert_eq!(rep.generator_matrix("a").unwrap().get(0, 0), re(0.0));
    }
}
