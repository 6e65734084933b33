//! Noncommutative *-polynomials over [`Scalar`] coefficients.
//!
//! A polynomial is a finite map from generator words to nonzero scalars. The
//! map is ordered, so iteration and serialization are deterministic.

mod parse;
mod rewrite;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::algebras::GradedStarAlgebra;
use crate::scalar::Scalar;

pub use parse::{parse, ParseError};
pub use rewrite::{
    critical_pairs, normal_form, normal_form_with_budget, CriticalPair, RewriteError,
    RewriteRule, RewriteSystem, DEFAULT_STEP_BUDGET,
};

/// Index of a generator inside its algebra.
pub type Gen = u8;

/// A word in the generators; the empty word is the unit.
pub type Word = Vec<Gen>;

/// Declared generator of a graded *-algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorSymbol {
    pub name: String,
    pub degree: i32,
    /// Name of the generator equal to this one's adjoint, when the adjoint is a
    /// single generator (`a* ↔ a`). `None` when it is a longer expression (`E* = FK`).
    pub star_partner: Option<String>,
    /// Name of the two-sided inverse, if declared (`K ↔ K^-1`).
    pub invertible_partner: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NcPolynomial {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPolynomial {
    pub fn zero() -> Self {
        NcPolynomial::default()
    }

    pub fn one() -> Self {
        NcPolynomial::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        NcPolynomial::monomial(Vec::new(), c)
    }

    pub fn word(w: Word) -> Self {
        NcPolynomial::monomial(w, Scalar::one())
    }

    pub fn generator(g: Gen) -> Self {
        NcPolynomial::word(vec![g])
    }

    pub fn monomial(w: Word, c: Scalar) -> Self {
        let mut p = NcPolynomial::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = NcPolynomial::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    /// Add `c·w`, dropping the entry if it cancels.
    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[Gen]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return NcPolynomial::zero();
        }
        NcPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, s)| (w.clone(), s * c))
                .filter(|(_, s)| !s.is_zero())
                .collect(),
        }
    }

    /// Free-algebra product: bilinear word concatenation.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = NcPolynomial::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(NcPolynomial::one(), |acc, _| acc.multiply(self))
    }

    /// Antilinear anti-homomorphic involution. Parameters `q`, `r` are real, so
    /// coefficients are unchanged; each word is reversed and every generator is
    /// replaced by its declared adjoint expression.
    pub fn star(&self, alg: &GradedStarAlgebra) -> Self {
        let mut out = NcPolynomial::zero();
        for (w, c) in &self.terms {
            let mut img = NcPolynomial::constant(c.clone());
            for g in w.iter().rev() {
                img = img.multiply(alg.star_image(*g));
            }
            out = out + img;
        }
        out
    }

    /// Sum of the terms whose word has degree `n`.
    pub fn degree_component(&self, n: i32, alg: &GradedStarAlgebra) -> Self {
        NcPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| alg.word_degree(w) == n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Projection onto the degree-zero subalgebra.
    pub fn bimodule_project(&self, alg: &GradedStarAlgebra) -> Self {
        self.degree_component(0, alg)
    }

    /// Degrees occurring in the polynomial, ascending.
    pub fn degrees(&self, alg: &GradedStarAlgebra) -> Vec<i32> {
        let mut d: Vec<i32> = self.terms.keys().map(|w| alg.word_degree(w)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Homogeneous of degree `n` (the zero polynomial is homogeneous of every degree).
    pub fn is_homogeneous_of(&self, n: i32, alg: &GradedStarAlgebra) -> bool {
        self.terms.keys().all(|w| alg.word_degree(w) == n)
    }

    pub fn display<'a>(&'a self, alg: &'a GradedStarAlgebra) -> DisplayPoly<'a> {
        DisplayPoly { poly: self, alg }
    }

    pub fn to_json(&self, alg: &GradedStarAlgebra) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(w, c)| {
                let (num, den) = c.to_integer_strings();
                TermJson {
                    word: w.iter().map(|g| alg.generator(*g).name.clone()).collect(),
                    coeff: CoeffJson { num, den },
                }
            })
            .collect()
    }
}

/// One term of the canonical JSON serialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: Vec<String>,
    pub coeff: CoeffJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub num: String,
    pub den: String,
}

impl fmt::Debug for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(w, c)| (w, c.to_string())))
            .finish()
    }
}

pub struct DisplayPoly<'a> {
    poly: &'a NcPolynomial,
    alg: &'a GradedStarAlgebra,
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.poly.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let word = self.alg.format_word(w);
            match (c.is_one(), word.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{word}")?,
                (false, true) => write!(f, "{c}")?,
                (false, false) => {
                    if c.as_constant().is_some() && c.to_integer_strings().1 == "1" {
                        write!(f, "{c}·{word}")?
                    } else {
                        write!(f, "({c})·{word}")?
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for NcPolynomial {
    type Output = NcPolynomial;
    fn add(mut self, other: NcPolynomial) -> NcPolynomial {
        for (w, c) in other.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl Sub for NcPolynomial {
    type Output = NcPolynomial;
    fn sub(self, other: NcPolynomial) -> NcPolynomial {
        self + (-other)
    }
}

impl Neg for NcPolynomial {
    type Output = NcPolynomial;
    fn neg(self) -> NcPolynomial {
        NcPolynomial {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl Mul for NcPolynomial {
    type Output = NcPolynomial;
    fn mul(self, other: NcPolynomial) -> NcPolynomial {
        self.multiply(&other)
    }
}

impl<'a> Mul<&'a NcPolynomial> for &'a NcPolynomial {
    type Output = NcPolynomial;
    fn mul(self, other: &NcPolynomial) -> NcPolynomial {
        self.multiply(other)
    }
}

impl<'a> Add<&'a NcPolynomial> for &'a NcPolynomial {
    type Output = NcPolynomial;
    fn add(self, other: &NcPolynomial) -> NcPolynomial {
        self.clone() + other.clone()
    }
}

impl<'a> Sub<&'a NcPolynomial> for &'a NcPolynomial {
    type Output = NcPolynomial;
    fn sub(self, other: &NcPolynomial) -> NcPolynomial {
        self.clone() - other.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::GradedStarAlgebra;

    #[test]
    fn multiply_concatenates_and_unit_laws_hold() {
        let alg = GradedStarAlgebra::q_oscillator_symbolic();
        let a = alg.gen_poly("a");
        let ad = alg.gen_poly("a*");
        let p = a.multiply(&ad);
        assert_eq!(p.len(), 1);
        assert_eq!(alg.format_word(p.terms().next().unwrap().0), "a a*");
        let one = NcPolynomial::one();
        let lhs = (a.clone() + one.clone()).multiply(&(a.clone() - one.clone()));
        assert_eq!(lhs, a.multiply(&a) - one);
    }

    #[test]
    fn star_reverses_words() {
        let alg = GradedStarAlgebra::podles_symbolic();
        let p = alg.gen_poly("a").multiply(&alg.gen_poly("b")).scale(&Scalar::from_int(2));
        let s = p.star(&alg);
        let expected = alg
            .gen_poly("b*")
            .multiply(&alg.gen_poly("a"))
            .scale(&Scalar::from_int(2));
        assert_eq!(s, expected);
        assert_eq!(s.star(&alg), p);
    }

    #[test]
    fn degree_components() {
        let alg = GradedStarAlgebra::q_oscillator_symbolic();
        let a = alg.gen_poly("a");
        let p = a.clone() + alg.gen_poly("a*");
        assert_eq!(p.degree_component(1, &alg), a);
        assert!(p.bimodule_project(&alg).is_zero());
        let pod = GradedStarAlgebra::podles_symbolic();
        let bb = pod.gen_poly("b*").multiply(&pod.gen_poly("b"));
        assert!(bb.degree_component(1, &pod).is_zero());
        assert_eq!(bb.degree_component(0, &pod), bb);
    }

    #[test]
    fn json_uses_generator_names() {
        let alg = GradedStarAlgebra::uq_su2_symbolic();
        let p = alg.gen_poly("E").multiply(&alg.gen_poly("F")).scale(&Scalar::q());
        let j = p.to_json(&alg);
        assert_eq!(j[0].word, vec!["E".to_string(), "F".to_string()]);
        assert_eq!(j[0].coeff.num, "q");
        assert_eq!(j[0].coeff.den, "1");
    }
}
