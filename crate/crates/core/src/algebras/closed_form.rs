//! Closed-form product identities, expanded into normal form without the
//! rewriting engine.
//!
//! Elements of the commutative subalgebra B are held as [`BPoly`], polynomials
//! in one variable `x` (`N`, `a` or `EF`) and, for U_q(su(2)), Laurent in `t = K`.
//! They are embedded into normal-ordered words through explicit recursions on
//! the normal-word basis of B, which is independent of rule-by-rule rewriting.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{AlgebraError, AlgebraKind, GradedStarAlgebra, A, AD, E, F, K, KINV, PA, PB};
use crate::ncpoly::{Gen, NcPolynomial, Word};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductKind {
    /// `a^k a*^k`, `b^n b*^n`, `E^n F^n`
    RaisingThenLowering,
    /// `a*^k a^k`, `b*^n b^n`, `F^n E^n`
    LoweringThenRaising,
    /// `[E, F^n]`
    Commutator,
    /// `[E^n, F]`
    CommutatorPower,
    /// `a b^n`
    Exchange,
}

impl ProductKind {
    pub const ALL: [ProductKind; 5] = [
        ProductKind::RaisingThenLowering,
        ProductKind::LoweringThenRaising,
        ProductKind::Commutator,
        ProductKind::CommutatorPower,
        ProductKind::Exchange,
    ];

    pub fn supported_by(self, kind: AlgebraKind) -> bool {
        use ProductKind::*;
        match self {
            RaisingThenLowering | LoweringThenRaising => true,
            Commutator | CommutatorPower => kind == AlgebraKind::UqSu2,
            Exchange => kind == AlgebraKind::Podles,
        }
    }

    /// The literal word product whose normal form the closed form predicts.
    pub fn literal(self, alg: &GradedStarAlgebra, k: u32) -> Option<NcPolynomial> {
        if !self.supported_by(alg.kind()) {
            return None;
        }
        let k = k as i32;
        let up = alg.module_generator(k);
        let down = alg.module_generator(-k);
        let e = alg.module_generator(1);
        let f = alg.module_generator(-1);
        Some(match self {
            ProductKind::RaisingThenLowering => up.multiply(&down),
            ProductKind::LoweringThenRaising => down.multiply(&up),
            ProductKind::Commutator => e.multiply(&down) - down.multiply(&e),
            ProductKind::CommutatorPower => up.multiply(&f) - f.multiply(&up),
            ProductKind::Exchange => NcPolynomial::generator(PA).multiply(&up),
        })
    }
}

/// Element of B: `Σ c·x^i·t^j`. For the q-oscillator and the Podleś sphere
/// the `t` exponent is always zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BPoly {
    terms: BTreeMap<(u32, i32), Scalar>,
}

impl BPoly {
    pub fn zero() -> Self {
        BPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        BPoly::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: i32, c: Scalar) -> Self {
        let mut p = BPoly::zero();
        p.add_term(i, j, c);
        p
    }

    /// The variable `x`.
    pub fn x() -> Self {
        BPoly::monomial(1, 0, Scalar::one())
    }

    /// `t^j`.
    pub fn t_pow(j: i32) -> Self {
        BPoly::monomial(0, j, Scalar::one())
    }

    fn add_term(&mut self, i: u32, j: i32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.get(&(i, j)) {
            Some(e) => e + &c,
            None => c,
        };
        if s.is_zero() {
            self.terms.remove(&(i, j));
        } else {
            self.terms.insert((i, j), s);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, i32), &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &BPoly) -> BPoly {
        let mut out = self.clone();
        for ((i, j), c) in &other.terms {
            out.add_term(*i, *j, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> BPoly {
        let mut out = BPoly::zero();
        for ((i, j), s) in &self.terms {
            out.add_term(*i, *j, s * c);
        }
        out
    }

    pub fn mul(&self, other: &BPoly) -> BPoly {
        let mut out = BPoly::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    /// `[K; l] = (q^l t − q^−l t^−1)/(q − q^−1)`.
    pub fn k_bracket(l: i64) -> BPoly {
        let inv = Scalar::one()
            .checked_div(&Scalar::q_minus_q_inv())
            .expect("q - 1/q is nonzero");
        BPoly::monomial(0, 1, &Scalar::q_pow(l) * &inv).add(&BPoly::monomial(0, -1, -(&Scalar::q_pow(-l) * &inv)))
    }

    /// Normal-ordered element of the algebra represented by this polynomial.
    pub fn embed(&self, alg: &GradedStarAlgebra) -> NcPolynomial {
        match alg.kind() {
            AlgebraKind::QOscillator => self.embed_oscillator(),
            AlgebraKind::Podles => {
                let mut out = NcPolynomial::zero();
                for ((i, _), c) in &self.terms {
                    out.add_term(vec![PA; *i as usize], c.clone());
                }
                out
            }
            AlgebraKind::UqSu2 => self.embed_uq(),
        }
    }

    /// Basis `X_i = a*^i a^i` with `N·X_i = q^i X_{i+1} + [[i]] X_i`.
    fn embed_oscillator(&self) -> NcPolynomial {
        let mut out = NcPolynomial::zero();
        for ((deg, _), c) in &self.terms {
            // coefficients of N^deg in the X basis
            let mut v: Vec<Scalar> = vec![Scalar::one()];
            for _ in 0..*deg {
                let mut nv = vec![Scalar::zero(); v.len() + 1];
                for (i, ci) in v.iter().enumerate() {
                    nv[i + 1] = &nv[i + 1] + &(ci * &Scalar::q_pow(i as i64));
                    nv[i] = &nv[i] + &(ci * &Scalar::q_integer(i as i64));
                }
                v = nv;
            }
            for (i, ci) in v.into_iter().enumerate() {
                out.add_term(x_word(AD, A, i, &[]), &ci * c);
            }
        }
        out
    }

    /// Basis `X_{i,j} = F^i K^j E^i`; multiplication by `EF` is
    /// `q^{-2j} X_{i+1,j} + [i+1]/(q − q^-1)·(q^{-i} X_{i,j+1} − q^i X_{i,j-1})`.
    fn embed_uq(&self) -> NcPolynomial {
        let inv = Scalar::one()
            .checked_div(&Scalar::q_minus_q_inv())
            .expect("q - 1/q is nonzero");
        let mut out = NcPolynomial::zero();
        for ((deg, tj), c) in &self.terms {
            let mut v: BTreeMap<(usize, i32), Scalar> = BTreeMap::new();
            v.insert((0, *tj), Scalar::one());
            for _ in 0..*deg {
                let mut nv: BTreeMap<(usize, i32), Scalar> = BTreeMap::new();
                for ((i, j), ci) in &v {
                    let i64i = *i as i64;
                    let f = &(&Scalar::q_number(i64i + 1) * &inv) * ci;
                    push(&mut nv, (i + 1, *j), ci * &Scalar::q_pow(-2 * *j as i64));
                    push(&mut nv, (*i, j + 1), &f * &Scalar::q_pow(-i64i));
                    push(&mut nv, (*i, j - 1), -(&f * &Scalar::q_pow(i64i)));
                }
                v = nv;
            }
            for ((i, j), ci) in v {
                out.add_term(uq_word(i, j, i), &ci * c);
            }
        }
        out
    }
}

fn push(map: &mut BTreeMap<(usize, i32), Scalar>, key: (usize, i32), c: Scalar) {
    let s = match map.get(&key) {
        Some(e) => e + &c,
        None => c,
    };
    if s.is_zero() {
        map.remove(&key);
    } else {
        map.insert(key, s);
    }
}

fn x_word(left: Gen, right: Gen, i: usize, mid: &[Gen]) -> Word {
    let mut w = vec![left; i];
    w.extend_from_slice(mid);
    w.extend(std::iter::repeat_n(right, i));
    w
}

/// `F^f K^j E^e` as a word.
fn uq_word(f: usize, j: i32, e: usize) -> Word {
    let k = if j >= 0 { K } else { KINV };
    let mut w = vec![F; f];
    w.extend(std::iter::repeat_n(k, j.unsigned_abs() as usize));
    w.extend(std::iter::repeat_n(E, e));
    w
}

/// Right-hand side of the product identity of the given kind, already in normal
/// form, built only from products of degree-zero factors.
pub fn closed_form_product(
    alg: &GradedStarAlgebra,
    kind: ProductKind,
    k: u32,
) -> Result<NcPolynomial, AlgebraError> {
    if !kind.supported_by(alg.kind()) || k == 0 {
        return Err(AlgebraError::WrongAlgebra {
            op: "closed_form_product",
            algebra: alg.kind(),
        });
    }
    let n = k as i64;
    let x = BPoly::x();
    let c = BPoly::constant;
    let prod = |factors: Vec<BPoly>| factors.into_iter().fold(c(Scalar::one()), |acc, f| acc.mul(&f));
    let out = match (alg.kind(), kind) {
        (AlgebraKind::QOscillator, ProductKind::RaisingThenLowering) => prod(
            (1..=n)
                .map(|j| x.scale(&Scalar::q_pow(j)).add(&c(Scalar::q_integer(j))))
                .collect(),
        )
        .embed(alg),
        (AlgebraKind::QOscillator, ProductKind::LoweringThenRaising) => prod(
            (0..n)
                .map(|j| x.scale(&Scalar::q_pow(-j)).add(&c(Scalar::q_integer(-j))))
                .collect(),
        )
        .embed(alg),
        (AlgebraKind::Podles, ProductKind::LoweringThenRaising) => prod(
            (1..=n)
                .map(|j| podles_factor(-2 * (j - 1)))
                .collect(),
        )
        .embed(alg),
        (AlgebraKind::Podles, ProductKind::RaisingThenLowering) => {
            prod((1..=n).map(|j| podles_factor(2 * j)).collect()).embed(alg)
        }
        (AlgebraKind::Podles, ProductKind::Exchange) => {
            let mut w = vec![PB; k as usize];
            w.push(PA);
            NcPolynomial::monomial(w, Scalar::q_pow(-2 * n))
        }
        (AlgebraKind::UqSu2, ProductKind::RaisingThenLowering) => prod(
            (1..=n)
                .map(|j| x.add(&BPoly::k_bracket(-j).scale(&Scalar::q_number(j - 1))))
                .collect(),
        )
        .embed(alg),
        (AlgebraKind::UqSu2, ProductKind::LoweringThenRaising) => prod(
            (1..=n)
                .map(|j| x.add(&BPoly::k_bracket(j - 1).scale(&-Scalar::q_number(j))))
                .collect(),
        )
        .embed(alg),
        (AlgebraKind::UqSu2, ProductKind::Commutator) => {
            // [n] F^{n-1} [K; 1-n]
            let mut out = NcPolynomial::zero();
            for ((_, j), s) in BPoly::k_bracket(1 - n).terms() {
                out.add_term(uq_word(k as usize - 1, *j, 0), s * &Scalar::q_number(n));
            }
            out
        }
        (AlgebraKind::UqSu2, ProductKind::CommutatorPower) => {
            // [n] E^{n-1} [K; n-1], with E^{n-1} K^j = q^{-2j(n-1)} K^j E^{n-1}
            let mut out = NcPolynomial::zero();
            for ((_, j), s) in BPoly::k_bracket(n - 1).terms() {
                let twist = Scalar::q_pow(-2 * *j as i64 * (n - 1));
                out.add_term(uq_word(0, *j, k as usize - 1), &(s * &Scalar::q_number(n)) * &twist);
            }
            out
        }
        _ => unreachable!("support checked above"),
    };
    Ok(out)
}

/// `q^s a − q^{2s} a² + r`.
fn podles_factor(s: i64) -> BPoly {
    BPoly::monomial(1, 0, Scalar::q_pow(s))
        .add(&BPoly::monomial(2, 0, -Scalar::q_pow(2 * s)))
        .add(&BPoly::constant(Scalar::r()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::normal_form;

    #[test]
    fn matches_rewriting_for_small_powers() {
        for alg in GradedStarAlgebra::all_symbolic() {
            for kind in ProductKind::ALL {
                if !kind.supported_by(alg.kind()) {
                    assert!(closed_form_product(&alg, kind, 1).is_err());
                    continue;
                }
                for k in 1..=6 {
                    let lit = kind.literal(&alg, k).unwrap();
                    let rewritten = normal_form(&lit, &alg).unwrap();
                    let closed = closed_form_product(&alg, kind, k).unwrap();
                    assert_eq!(rewritten, closed, "{} {:?} k={k}", alg.name(), kind);
                }
            }
        }
    }

    #[test]
    fn hand_expanded_examples() {
        let osc = GradedStarAlgebra::q_oscillator_symbolic();
        // a*^2 a^2 = q^-1 N (N - 1)
        let n = osc.parse("N").unwrap();
        let expected = normal_form(&n.multiply(&(n.clone() - NcPolynomial::one())).scale(&Scalar::q_pow(-1)), &osc).unwrap();
        assert_eq!(closed_form_product(&osc, ProductKind::LoweringThenRaising, 2).unwrap(), expected);

        let pod = GradedStarAlgebra::podles_symbolic();
        assert_eq!(
            closed_form_product(&pod, ProductKind::RaisingThenLowering, 1).unwrap(),
            pod.parse("q^2 a - q^4 a^2 + r").unwrap()
        );

        let uq = GradedStarAlgebra::uq_su2_symbolic();
        let fe = closed_form_product(&uq, ProductKind::LoweringThenRaising, 1).unwrap();
        let ef = normal_form(&uq.parse("E F - (K - K^-1)/(q - q^-1)").unwrap(), &uq).unwrap();
        assert_eq!(fe, ef);
    }

    #[test]
    fn k_bracket_evaluates() {
        for l in -6..=6i64 {
            let b = BPoly::k_bracket(l);
            let (q, t) = (2.0f64, 3.0f64);
            let v: f64 = b
                .terms()
                .map(|((_, j), c)| c.eval_f64(q, 0.0).unwrap() * t.powi(*j))
                .sum();
            let expect = (q.powi(l as i32) * t - q.powi(-l as i32) / t) / (q - 1.0 / q);
            assert!((v - expect).abs() < 1e-9 * (1.0 + expect.abs()));
        }
    }
}
