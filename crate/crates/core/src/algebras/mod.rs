//! The three preset graded *-algebras: the q-oscillator, the Podleś sphere
//! and U_q(su(2)).
//!
//! Generators are indexed in the normal order used by the rewriting engine,
//! so that sorted words are (mostly) already irreducible.

mod closed_form;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::ncpoly::{
    parse, Gen, GeneratorSymbol, NcPolynomial, ParseError, RewriteRule, RewriteSystem,
};
use crate::numeric::{ParamValue, Params};
use crate::scalar::Scalar;

pub use closed_form::{closed_form_product, BPoly, ProductKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraKind {
    QOscillator,
    Podles,
    UqSu2,
}

impl AlgebraKind {
    pub const ALL: [AlgebraKind; 3] = [AlgebraKind::QOscillator, AlgebraKind::Podles, AlgebraKind::UqSu2];

    /// Short name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            AlgebraKind::QOscillator => "qosc",
            AlgebraKind::Podles => "podles",
            AlgebraKind::UqSu2 => "uq",
        }
    }

    pub fn domain(self) -> &'static str {
        match self {
            AlgebraKind::QOscillator => "q > 0",
            AlgebraKind::Podles => "0 < q < 1, r > 0 (r = 0 and r = infinity are not supported)",
            AlgebraKind::UqSu2 => "q > 0, q != 1",
        }
    }

    pub fn has_r(self) -> bool {
        self == AlgebraKind::Podles
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for AlgebraKind {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "qosc" | "q-oscillator" | "qoscillator" => Ok(AlgebraKind::QOscillator),
            "podles" | "podles-sphere" => Ok(AlgebraKind::Podles),
            "uq" | "uqsu2" | "uq-su2" => Ok(AlgebraKind::UqSu2),
            other => Err(AlgebraError::UnknownAlgebra(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("unknown algebra `{0}` (expected qosc, podles or uq)")]
    UnknownAlgebra(String),
    #[error("parameters outside the domain of {algebra}: {message}")]
    Domain { algebra: AlgebraKind, message: String },
    #[error("operation `{op}` is not available for {algebra}")]
    WrongAlgebra { op: &'static str, algebra: AlgebraKind },
}

#[derive(Clone, Debug)]
pub struct GradedStarAlgebra {
    kind: AlgebraKind,
    generators: Vec<GeneratorSymbol>,
    star_images: Vec<NcPolynomial>,
    inverses: Vec<Option<Gen>>,
    rewrite: RewriteSystem,
    named: BTreeMap<String, NcPolynomial>,
    params: Option<Params>,
}

/// JSON description of a preset for run manifests.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraDescriptor {
    pub name: AlgebraKind,
    pub domain: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameters: Option<Params>,
    pub generators: Vec<GeneratorSymbol>,
    pub relations: Vec<String>,
    pub star: BTreeMap<String, String>,
}

fn sym(name: &str, degree: i32, star: Option<&str>, inv: Option<&str>) -> GeneratorSymbol {
    GeneratorSymbol {
        name: name.to_string(),
        degree,
        star_partner: star.map(str::to_string),
        invertible_partner: inv.map(str::to_string),
    }
}

fn w(gens: &[Gen]) -> NcPolynomial {
    NcPolynomial::word(gens.to_vec())
}

fn rule(left: [Gen; 2], right: NcPolynomial) -> RewriteRule {
    RewriteRule { left, right }
}

fn sc(s: Scalar) -> NcPolynomial {
    NcPolynomial::constant(s)
}

// q-oscillator indices
const AD: Gen = 0;
const A: Gen = 1;
// Podleś indices
const PB_STAR: Gen = 0;
const PA: Gen = 1;
const PB: Gen = 2;
// U_q(su(2)) indices
const F: Gen = 0;
const KINV: Gen = 1;
const K: Gen = 2;
const E: Gen = 3;

impl GradedStarAlgebra {
    pub fn q_oscillator_symbolic() -> Self {
        let generators = vec![sym("a*", -1, Some("a"), None), sym("a", 1, Some("a*"), None)];
        // a a* → 1 + q a* a
        let rules = vec![rule([A, AD], NcPolynomial::one() + w(&[AD, A]).scale(&Scalar::q()))];
        let mut named = BTreeMap::new();
        named.insert("N".to_string(), w(&[AD, A]));
        GradedStarAlgebra {
            kind: AlgebraKind::QOscillator,
            generators,
            star_images: vec![w(&[A]), w(&[AD])],
            inverses: vec![None, None],
            rewrite: RewriteSystem::new(rules),
            named,
            params: None,
        }
    }

    pub fn podles_symbolic() -> Self {
        let generators = vec![
            sym("b*", -1, Some("b"), None),
            sym("a", 0, Some("a"), None),
            sym("b", 1, Some("b*"), None),
        ];
        let q2 = Scalar::q_pow(2);
        let q4 = Scalar::q_pow(4);
        let rules = vec![
            // a-powers are moved to the right: normal words b*^i a^j and b^k a^j
            rule([PA, PB], w(&[PB, PA]).scale(&Scalar::q_pow(-2))),
            rule([PA, PB_STAR], w(&[PB_STAR, PA]).scale(&q2)),
            rule(
                [PB, PB_STAR],
                w(&[PA]).scale(&q2) - w(&[PA, PA]).scale(&q4) + sc(Scalar::r()),
            ),
            rule([PB_STAR, PB], w(&[PA]) - w(&[PA, PA]) + sc(Scalar::r())),
        ];
        GradedStarAlgebra {
            kind: AlgebraKind::Podles,
            generators,
            star_images: vec![w(&[PB]), w(&[PA]), w(&[PB_STAR])],
            inverses: vec![None, None, None],
            rewrite: RewriteSystem::new(rules),
            named: BTreeMap::new(),
            params: None,
        }
    }

    pub fn uq_su2_symbolic() -> Self {
        let generators = vec![
            sym("F", -1, None, None),
            sym("K^-1", 0, Some("K^-1"), Some("K")),
            sym("K", 0, Some("K"), Some("K^-1")),
            sym("E", 1, None, None),
        ];
        let qq = Scalar::q_minus_q_inv();
        let inv_qq = Scalar::one().checked_div(&qq).expect("q - 1/q is a nonzero rational function");
        let rules = vec![
            rule([K, KINV], NcPolynomial::one()),
            rule([KINV, K], NcPolynomial::one()),
            rule([E, F], w(&[F, E]) + (w(&[K]) - w(&[KINV])).scale(&inv_qq)),
            rule([E, K], w(&[K, E]).scale(&Scalar::q_pow(-2))),
            rule([E, KINV], w(&[KINV, E]).scale(&Scalar::q_pow(2))),
            rule([K, F], w(&[F, K]).scale(&Scalar::q_pow(-2))),
            rule([KINV, F], w(&[F, KINV]).scale(&Scalar::q_pow(2))),
        ];
        let inv_qq2 = inv_qq.pow(2);
        let casimir = w(&[E, F])
            + w(&[K]).scale(&(&Scalar::q_pow(-1) * &inv_qq2))
            + w(&[KINV]).scale(&(&Scalar::q() * &inv_qq2));
        let mut named = BTreeMap::new();
        named.insert("C_q".to_string(), casimir.clone());
        named.insert("Cq".to_string(), casimir);
        GradedStarAlgebra {
            kind: AlgebraKind::UqSu2,
            generators,
            // E* = F K, F* = K^-1 E
            star_images: vec![w(&[KINV, E]), w(&[KINV]), w(&[K]), w(&[F, K])],
            inverses: vec![None, Some(K), Some(KINV), None],
            rewrite: RewriteSystem::new(rules),
            named,
            params: None,
        }
    }

    pub fn symbolic(kind: AlgebraKind) -> Self {
        match kind {
            AlgebraKind::QOscillator => Self::q_oscillator_symbolic(),
            AlgebraKind::Podles => Self::podles_symbolic(),
            AlgebraKind::UqSu2 => Self::uq_su2_symbolic(),
        }
    }

    pub fn all_symbolic() -> Vec<Self> {
        AlgebraKind::ALL.iter().map(|k| Self::symbolic(*k)).collect()
    }

    pub fn make_q_oscillator(q: impl Into<ParamValue>) -> Result<Self, AlgebraError> {
        let q = q.into();
        let kind = AlgebraKind::QOscillator;
        if !positive(&q) {
            return Err(domain(kind, format!("q = {q} must be positive")));
        }
        Ok(Self::q_oscillator_symbolic().with_params(Params { q, r: None }))
    }

    pub fn make_podles(q: impl Into<ParamValue>, r: impl Into<ParamValue>) -> Result<Self, AlgebraError> {
        let (q, r) = (q.into(), r.into());
        let kind = AlgebraKind::Podles;
        if !positive(&q) || !less_than_one(&q) {
            return Err(domain(kind, format!("q = {q} must satisfy 0 < q < 1")));
        }
        if !positive(&r) {
            return Err(domain(
                kind,
                format!("r = {r} must be positive; the boundary case r = 0 is not supported"),
            ));
        }
        if !r.to_f64().is_finite() {
            return Err(domain(kind, "r = infinity is not supported".to_string()));
        }
        Ok(Self::podles_symbolic().with_params(Params { q, r: Some(r) }))
    }

    pub fn make_uq_su2(q: impl Into<ParamValue>) -> Result<Self, AlgebraError> {
        let q = q.into();
        let kind = AlgebraKind::UqSu2;
        if !positive(&q) {
            return Err(domain(kind, format!("q = {q} must be positive")));
        }
        if is_one(&q) {
            return Err(domain(kind, "q = 1 is excluded".to_string()));
        }
        Ok(Self::uq_su2_symbolic().with_params(Params { q, r: None }))
    }

    /// Build a preset from its kind and numeric parameters.
    pub fn make(kind: AlgebraKind, q: ParamValue, r: Option<ParamValue>) -> Result<Self, AlgebraError> {
        match kind {
            AlgebraKind::QOscillator => Self::make_q_oscillator(q),
            AlgebraKind::UqSu2 => Self::make_uq_su2(q),
            AlgebraKind::Podles => {
                let r = r.ok_or_else(|| domain(kind, "the parameter r is required".to_string()))?;
                Self::make_podles(q, r)
            }
        }
    }

    fn with_params(mut self, p: Params) -> Self {
        self.params = Some(p);
        self
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.cli_name()
    }

    pub fn params(&self) -> Option<&Params> {
        self.params.as_ref()
    }

    pub fn has_r(&self) -> bool {
        self.kind.has_r()
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.generators
    }

    pub fn generator(&self, g: Gen) -> &GeneratorSymbol {
        &self.generators[g as usize]
    }

    pub fn generator_index(&self, name: &str) -> Option<Gen> {
        self.generators.iter().position(|s| s.name == name).map(|i| i as Gen)
    }

    pub fn inverse_of(&self, g: Gen) -> Option<Gen> {
        self.inverses[g as usize]
    }

    pub fn named_element(&self, name: &str) -> Option<&NcPolynomial> {
        self.named.get(name)
    }

    /// The generator `name` as a polynomial. Panics on unknown names.
    pub fn gen_poly(&self, name: &str) -> NcPolynomial {
        let g = self
            .generator_index(name)
            .unwrap_or_else(|| panic!("{} has no generator `{name}`", self.name()));
        NcPolynomial::generator(g)
    }

    pub fn star_image(&self, g: Gen) -> &NcPolynomial {
        &self.star_images[g as usize]
    }

    pub fn rewrite_system(&self) -> &RewriteSystem {
        &self.rewrite
    }

    pub fn word_degree(&self, w: &[Gen]) -> i32 {
        w.iter().map(|g| self.generators[*g as usize].degree).sum()
    }

    pub fn format_word(&self, w: &[Gen]) -> String {
        w.iter()
            .map(|g| self.generators[*g as usize].name.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse(&self, text: &str) -> Result<NcPolynomial, ParseError> {
        parse(text, self)
    }

    /// Generator of degree `+1` (`a`, `b`, `E`).
    pub fn raising(&self) -> Gen {
        match self.kind {
            AlgebraKind::QOscillator => A,
            AlgebraKind::Podles => PB,
            AlgebraKind::UqSu2 => E,
        }
    }

    /// Generator of degree `-1` (`a*`, `b*`, `F`).
    pub fn lowering(&self) -> Gen {
        match self.kind {
            AlgebraKind::QOscillator => AD,
            AlgebraKind::Podles => PB_STAR,
            AlgebraKind::UqSu2 => F,
        }
    }

    /// `a_n` with `A_n = a_n·B`: the `|n|`-th power of the raising or lowering generator.
    pub fn module_generator(&self, n: i32) -> NcPolynomial {
        let g = if n >= 0 { self.raising() } else { self.lowering() };
        NcPolynomial::word(vec![g; n.unsigned_abs() as usize])
    }

    /// Generators of the commutative degree-zero subalgebra B.
    pub fn b_generators(&self) -> Vec<NcPolynomial> {
        match self.kind {
            AlgebraKind::QOscillator => vec![w(&[AD, A])],
            AlgebraKind::Podles => vec![w(&[PA])],
            AlgebraKind::UqSu2 => vec![self.named["C_q"].clone(), w(&[K]), w(&[KINV])],
        }
    }

    /// The central element `EF + (q^-1 K + q K^-1)/(q - q^-1)^2` of U_q(su(2)).
    pub fn casimir(&self) -> Result<NcPolynomial, AlgebraError> {
        self.named.get("C_q").cloned().ok_or(AlgebraError::WrongAlgebra {
            op: "casimir",
            algebra: self.kind,
        })
    }

    /// Coordinates `(i, j)` of a normal word of B: `a*^i a^i` (q-oscillator),
    /// `a^i` (Podleś) or `F^i K^j E^i` (U_q, negative `j` meaning `K^-1`).
    /// `None` for any other word.
    pub fn b_word_coordinates(&self, w: &[Gen]) -> Option<(u32, i32)> {
        let count = |g: Gen| w.iter().filter(|x| **x == g).count();
        match self.kind {
            AlgebraKind::QOscillator => {
                let i = count(AD);
                (i == count(A) && w.len() == 2 * i && w[..i].iter().all(|g| *g == AD))
                    .then_some((i as u32, 0))
            }
            AlgebraKind::Podles => w.iter().all(|g| *g == PA).then_some((w.len() as u32, 0)),
            AlgebraKind::UqSu2 => {
                let (f, e, k, ki) = (count(F), count(E), count(K), count(KINV));
                if f != e || (k > 0 && ki > 0) {
                    return None;
                }
                let j = k as i32 - ki as i32;
                let mid = if j >= 0 { K } else { KINV };
                let ok = w[..f].iter().all(|g| *g == F)
                    && w[f..w.len() - e].iter().all(|g| *g == mid)
                    && w[w.len() - e..].iter().all(|g| *g == E);
                ok.then_some((f as u32, j))
            }
        }
    }

    /// Substitute exact numeric parameters into every coefficient. `None` for
    /// symbolic presets or floating-point parameters.
    pub fn specialize(&self, p: &NcPolynomial) -> Option<NcPolynomial> {
        let (q, r) = self.params.as_ref()?.exact()?;
        let mut out = NcPolynomial::zero();
        for (w, c) in p.terms() {
            out.add_term(w.clone(), Scalar::from_ratio(c.eval_exact(&q, &r)?));
        }
        Some(out)
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        let relations = self
            .rewrite
            .rules()
            .iter()
            .map(|r| format!("{} -> {}", self.format_word(&r.left), r.right.display(self)))
            .collect();
        let star = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, s)| (s.name.clone(), self.star_images[i].display(self).to_string()))
            .collect();
        AlgebraDescriptor {
            name: self.kind,
            domain: self.kind.domain(),
            parameters: self.params.clone(),
            generators: self.generators.clone(),
            relations,
            star,
        }
    }
}

fn domain(algebra: AlgebraKind, message: String) -> AlgebraError {
    AlgebraError::Domain { algebra, message }
}

fn positive(v: &ParamValue) -> bool {
    match v {
        ParamValue::Exact(x) => x.is_positive(),
        ParamValue::Float(x) => *x > 0.0,
    }
}

fn less_than_one(v: &ParamValue) -> bool {
    match v {
        ParamValue::Exact(x) => *x < BigRational::one(),
        ParamValue::Float(x) => *x < 1.0,
    }
}

fn is_one(v: &ParamValue) -> bool {
    match v {
        ParamValue::Exact(x) => x.is_one(),
        ParamValue::Float(x) => *x == 1.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::normal_form;

    fn nf(alg: &GradedStarAlgebra, s: &str) -> NcPolynomial {
        normal_form(&alg.parse(s).unwrap(), alg).unwrap()
    }

    #[test]
    fn oscillator_relation_and_degree() {
        let alg = GradedStarAlgebra::make_q_oscillator(ParamValue::exact(1, 2)).unwrap();
        let spec = alg.specialize(&nf(&alg, "a a*")).unwrap();
        assert_eq!(spec, alg.parse("1/2 a* a + 1").unwrap());
        assert_eq!(alg.word_degree(&[A]), 1);
        assert_eq!(nf(&alg, "a a* - q a* a"), NcPolynomial::one());
        assert!(GradedStarAlgebra::make_q_oscillator(ParamValue::exact(0, 1)).is_err());
        assert!(GradedStarAlgebra::make_q_oscillator(ParamValue::Float(-0.5)).is_err());
        assert!(GradedStarAlgebra::make_q_oscillator(ParamValue::exact(3, 1)).is_ok());
    }

    #[test]
    fn podles_relations() {
        let alg = GradedStarAlgebra::podles_symbolic();
        assert_eq!(nf(&alg, "b* b"), alg.parse("a - a^2 + r").unwrap());
        assert_eq!(nf(&alg, "b b*"), alg.parse("q^2 a - q^4 a^2 + r").unwrap());
        assert!(nf(&alg, "a b - q^-2 b a").is_zero());
        assert_eq!(nf(&alg, "a b"), alg.parse("q^-2 b a").unwrap());
        assert!(nf(&alg, "a* - a").is_zero());
        for (q, r) in [((1, 2), (0, 1)), ((1, 1), (1, 1)), ((3, 2), (1, 1)), ((1, 2), (-1, 1))] {
            assert!(GradedStarAlgebra::make_podles(ParamValue::exact(q.0, q.1), ParamValue::exact(r.0, r.1)).is_err());
        }
        assert!(GradedStarAlgebra::make_podles(ParamValue::Float(0.5), ParamValue::Float(f64::INFINITY)).is_err());
        assert!(GradedStarAlgebra::make_podles(ParamValue::exact(1, 2), ParamValue::exact(2, 1)).is_ok());
    }

    #[test]
    fn uq_relations_and_star() {
        let alg = GradedStarAlgebra::uq_su2_symbolic();
        assert!(nf(&alg, "K E - q^2 E K").is_zero());
        assert_eq!(nf(&alg, "K K^-1"), NcPolynomial::one());
        assert_eq!(alg.gen_poly("F").star(&alg), alg.parse("K^-1 E").unwrap());
        assert_eq!(alg.gen_poly("E").star(&alg), alg.parse("F K").unwrap());
        assert!(GradedStarAlgebra::make_uq_su2(ParamValue::exact(1, 1)).is_err());
        assert!(GradedStarAlgebra::make_uq_su2(ParamValue::exact(0, 1)).is_err());
    }

    #[test]
    fn casimir_is_central_and_self_adjoint() {
        let alg = GradedStarAlgebra::uq_su2_symbolic();
        let c = alg.casimir().unwrap();
        for g in ["E", "F", "K", "K^-1"] {
            let x = alg.parse(g).unwrap();
            let comm = c.multiply(&x) - x.multiply(&c);
            assert!(normal_form(&comm, &alg).unwrap().is_zero(), "[C_q, {g}] != 0");
        }
        let cn = normal_form(&c, &alg).unwrap();
        assert_eq!(normal_form(&c.star(&alg), &alg).unwrap(), cn);
        let s = Scalar::q_minus_q_inv().pow(2);
        assert_eq!(s.eval_f64(2.0, 0.0), Some(2.25));
        assert!(GradedStarAlgebra::q_oscillator_symbolic().casimir().is_err());
    }

    #[test]
    fn degree_zero_part_is_commutative() {
        for alg in GradedStarAlgebra::all_symbolic() {
            let bs = alg.b_generators();
            for x in &bs {
                assert!(x.is_homogeneous_of(0, &alg));
                for y in &bs {
                    let c = x.multiply(y) - y.multiply(x);
                    assert!(normal_form(&c, &alg).unwrap().is_zero(), "{}", alg.name());
                }
            }
        }
    }

    #[test]
    fn homogeneous_words_factor_through_module_generator() {
        // every normal word of degree n starts (q-osc, U_q) or ends (Podleś) with
        // a power of the raising/lowering generator of length |n| at least
        for alg in GradedStarAlgebra::all_symbolic() {
            let n_gens = alg.generators().len() as Gen;
            let mut words: Vec<Vec<Gen>> = vec![vec![]];
            for _ in 0..4 {
                let mut next = Vec::new();
                for wd in &words {
                    for g in 0..n_gens {
                        let mut x = wd.clone();
                        x.push(g);
                        next.push(x);
                    }
                }
                words.extend(next.iter().cloned());
                words = {
                    let mut v = words;
                    v.sort();
                    v.dedup();
                    v
                };
            }
            for wd in words {
                let d = alg.word_degree(&wd);
                let p = normal_form(&NcPolynomial::word(wd.clone()), &alg).unwrap();
                assert!(p.is_homogeneous_of(d, &alg));
                let target = if d >= 0 { alg.raising() } else { alg.lowering() };
                for (nw, _) in p.terms() {
                    let count = nw.iter().filter(|g| **g == target).count();
                    assert!(count >= d.unsigned_abs() as usize, "{} {}", alg.name(), alg.format_word(nw));
                }
            }
        }
    }

    #[test]
    fn descriptor_serializes() {
        let alg = GradedStarAlgebra::make_podles(ParamValue::exact(1, 2), ParamValue::exact(2, 1)).unwrap();
        let j = serde_json::to_value(alg.descriptor()).unwrap();
        assert_eq!(j["name"], "podles");
        assert_eq!(j["parameters"]["q"], "1/2");
        assert_eq!(j["relations"].as_array().unwrap().len(), 4);
    }
}
