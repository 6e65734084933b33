//! The partial action of Z on the positive spectrum: orbits, stabilizers and
//! fixed points.

use serde::Serialize;

use crate::algebras::{AlgebraKind, GradedStarAlgebra};
use crate::ncpoly::{normal_form, NcPolynomial, RewriteError};
use crate::spectrum::{CharLabel, Character, SpectrumError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PdsError {
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("algebra has no numeric parameters")]
    Symbolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stabilizer {
    Trivial,
    AllOfZ,
}

/// Labeled orbit points `(g, α_g(χ))` for every `g` with `χ ∈ D_{-g}`,
/// windowed to `|g| ≤ max_radius`.
#[derive(Clone, Debug, Serialize)]
pub struct Orbit {
    pub base: Character,
    pub points: Vec<(i64, Character)>,
    /// The label set continues past the window on some side.
    pub truncated: bool,
    pub stabilizer: Stabilizer,
}

impl Orbit {
    pub fn labels(&self) -> Vec<i64> {
        self.points.iter().map(|(g, _)| *g).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, g: i64) -> Option<&Character> {
        self.points.iter().find(|(h, _)| *h == g).map(|(_, c)| c)
    }
}

/// `All of Z` iff `α_1(χ)` is defined and equal to `χ`. Family points are
/// decided by their index; other characters by a purely relative comparison,
/// since points deep in an orbit can be arbitrarily close to zero.
pub fn stabilizer(chi: &Character) -> Stabilizer {
    match chi.label {
        CharLabel::FixedPoint | CharLabel::Infinity => return Stabilizer::AllOfZ,
        CharLabel::Probe => {}
        _ => return Stabilizer::Trivial,
    }
    let same = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs());
    match chi.act(1) {
        Ok(image) if same(image.t, chi.t) && same(image.s.unwrap_or(0.0), chi.s.unwrap_or(0.0)) => {
            Stabilizer::AllOfZ
        }
        _ => Stabilizer::Trivial,
    }
}

pub fn orbit(chi: &Character, max_radius: u64) -> Orbit {
    let stab = stabilizer(chi);
    if stab == Stabilizer::AllOfZ {
        return Orbit {
            base: chi.clone(),
            points: vec![(0, chi.clone())],
            truncated: false,
            stabilizer: stab,
        };
    }
    let radius = max_radius as i64;
    let mut points = vec![(0, chi.clone())];
    let mut truncated = false;
    for dir in [1i64, -1] {
        let mut g = dir;
        loop {
            if !chi.domain_contains(g) {
                break;
            }
            if g.abs() > radius {
                truncated = true;
                break;
            }
            match chi.act(g) {
                Ok(c) => points.push((g, c)),
                Err(_) => break,
            }
            g += dir;
        }
    }
    points.sort_by_key(|(g, _)| *g);
    Orbit {
        base: chi.clone(),
        points,
        truncated,
        stabilizer: stab,
    }
}

/// Fixed points of the action: `{1/(1-q)}` for the q-oscillator with `q < 1`,
/// `{χ_∞}` for Podleś, none for U_q.
pub fn fixed_points(alg: &GradedStarAlgebra) -> Result<Vec<Character>, PdsError> {
    let p = alg.params().ok_or(PdsError::Symbolic)?;
    Ok(match alg.kind() {
        AlgebraKind::QOscillator if p.q_f64() < 1.0 => vec![Character::fixed_point(p)],
        AlgebraKind::QOscillator | AlgebraKind::UqSu2 => vec![],
        AlgebraKind::Podles => vec![Character::infinity(p)],
    })
}

/// `α_n(χ)(b) = χ(a_n* b a_n) / χ(a_n* a_n)` on each B-generator, computed by
/// normal ordering instead of the closed-form index shift.
pub fn act_by_definition(
    alg: &GradedStarAlgebra,
    chi: &Character,
    n: i64,
) -> Result<Vec<f64>, PdsError> {
    let an = alg.module_generator(n as i32);
    let an_star = an.star(alg);
    let denom = chi.evaluate(alg, &normal_form(&an_star.multiply(&an), alg)?)?;
    if denom == 0.0 {
        return Err(SpectrumError::OutOfDomain { n }.into());
    }
    alg.b_generators()
        .iter()
        .map(|b| {
            let p: NcPolynomial = an_star.multiply(b).multiply(&an);
            Ok(chi.evaluate(alg, &normal_form(&p, alg)?)? / denom)
        })
        .collect()
}

/// Values of a character on the B-generators, in `b_generators` order.
pub fn generator_values(alg: &GradedStarAlgebra, chi: &Character) -> Result<Vec<f64>, PdsError> {
    alg.b_generators()
        .iter()
        .map(|b| Ok(chi.evaluate(alg, &normal_form(b, alg)?)?))
        .collect()
}
