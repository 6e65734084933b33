//! Characters of the degree-zero subalgebra B, positivity, and the explicit
//! description of the positive spectrum of each preset.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::algebras::{AlgebraKind, GradedStarAlgebra};
use crate::ncpoly::NcPolynomial;
use crate::numeric::{Params, Real};
use crate::scalar::Scalar;

/// Relative tolerance under which a float factor counts as an exact zero.
pub const POSITIVITY_TOL: f64 = 1e-9;
/// Relative tolerance for `≠ 0` tests on unlabeled probes.
pub const DOMAIN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectrumError {
    #[error("character of {character} evaluated on an element of {algebra}")]
    WrongAlgebra { character: AlgebraKind, algebra: AlgebraKind },
    #[error("`{word}` is not a normal word of the degree-zero subalgebra")]
    NotDegreeZero { word: String },
    #[error("character is not in the domain of the shift by {n}")]
    OutOfDomain { n: i64 },
    #[error("evaluation divides by zero")]
    Undefined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Option<Sign> {
        match s.trim() {
            "+" | "+1" | "1" | "plus" => Some(Sign::Plus),
            "-" | "-1" | "minus" => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Which closed-form family a character belongs to, with its indices.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CharLabel {
    /// Not identified with a family point.
    Probe,
    /// q-oscillator `t = [[k]]_q`.
    QInteger { k: u64 },
    /// q-oscillator fixed point `t = 1/(1-q)`.
    FixedPoint,
    /// q-oscillator `t = (1 + q^{γ+j})/(1-q)`.
    Gamma { gamma: f64, j: i64 },
    /// Podleś `t = q^{2m} λ±`.
    Podles { m: u64, sign: Sign },
    /// Podleś `t = 0`.
    Infinity,
    /// U_q `t = ±q^{m-n}`, `s = ±(q^{m+n+1} + q^{-m-n-1})/(q - q^-1)^2`.
    Uq { m: u64, n: u64, sign: Sign },
}

impl fmt::Display for CharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharLabel::Probe => write!(f, "probe"),
            CharLabel::QInteger { k } => write!(f, "[[{k}]]"),
            CharLabel::FixedPoint => write!(f, "fixed"),
            CharLabel::Gamma { gamma, j } => write!(f, "gamma={gamma},j={j}"),
            CharLabel::Podles { m, sign } => write!(f, "{m},{sign}"),
            CharLabel::Infinity => write!(f, "infinity"),
            CharLabel::Uq { m, n, sign } => write!(f, "{m},{n},{sign}"),
        }
    }
}

fn ser_ratio<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// A real character of B, given by its values on the B-generators
/// (`N ↦ t`, `a ↦ t`, or `C_q ↦ s, K ↦ t`).
#[derive(Clone, Debug, Serialize)]
pub struct Character {
    pub kind: AlgebraKind,
    #[serde(skip)]
    params: Params,
    pub label: CharLabel,
    pub t: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(serialize_with = "ser_ratio", skip_serializing_if = "Option::is_none")]
    exact_t: Option<BigRational>,
    #[serde(serialize_with = "ser_ratio", skip_serializing_if = "Option::is_none")]
    exact_s: Option<BigRational>,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.label == other.label && self.t == other.t && self.s == other.s
    }
}

/// Exact square root of a nonnegative rational, if it is rational.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

/// Evaluation context over a field `T`: parameters plus character values.
struct Ctx<T> {
    kind: AlgebraKind,
    q: T,
    t: T,
    s: T,
    r: T,
}

impl<T: Real> Ctx<T> {
    fn qint(&self, k: i64) -> T {
        // [[k]] = (q^k - 1)/(q - 1), equal to k at q = 1
        let one = T::one();
        let d = self.q.clone() - one.clone();
        if d.is_zero() {
            T::from_i64(k)
        } else {
            (self.q.powi(k) - one) / d
        }
    }

    fn qq(&self) -> T {
        self.q.clone() - T::one() / self.q.clone()
    }

    fn qnum(&self, n: i64) -> T {
        (self.q.powi(n) - self.q.powi(-n)) / self.qq()
    }

    /// `[K; l]` at `K ↦ t`.
    fn kbr(&self, l: i64) -> T {
        (self.q.powi(l) * self.t.clone() - self.q.powi(-l) / self.t.clone()) / self.qq()
    }

    /// `(q^-1 t + q t^-1)/(q - q^-1)^2`, so that `χ(EF) = s - casimir_shift`.
    fn casimir_shift(&self) -> T {
        let qq = self.qq();
        (self.t.clone() / self.q.clone() + self.q.clone() / self.t.clone()) / (qq.clone() * qq)
    }

    fn e(&self) -> T {
        self.s.clone() - self.casimir_shift()
    }

    /// Factor `j ≥ 1` of `χ(a_g* a_g)` for `g` of sign `dir`, as `(value, scale)`.
    /// The factors of `g = ±k` are the first `k` factors of its direction.
    fn factor(&self, dir: i64, j: i64) -> (T, T) {
        let q = &self.q;
        let t = &self.t;
        match self.kind {
            AlgebraKind::QOscillator => {
                let e = if dir > 0 { 1 - j } else { j };
                let a = q.powi(e) * t.clone();
                let b = self.qint(e);
                (a.clone() + b.clone(), a.abs() + b.abs())
            }
            AlgebraKind::Podles => {
                let u = if dir > 0 { q.powi(-2 * (j - 1)) } else { q.powi(2 * j) } * t.clone();
                let u2 = u.clone() * u.clone();
                (u.clone() - u2.clone() + self.r.clone(), u.abs() + u2 + self.r.abs())
            }
            AlgebraKind::UqSu2 => {
                let c = self.casimir_shift();
                let b = if dir > 0 {
                    -(self.qnum(j) * self.kbr(j - 1))
                } else {
                    self.qnum(j - 1) * self.kbr(-j)
                };
                let v = self.s.clone() - c.clone() + b.clone();
                (v, self.s.abs() + c.abs() + b.abs())
            }
        }
    }

    /// Positive prefactor-free part: the prefactor of `χ(a_g* a_g)`.
    fn prefactor(&self, g: i64) -> T {
        let k = g.abs();
        match self.kind {
            AlgebraKind::UqSu2 if g > 0 => self.q.powi(k * (k + 1)) * self.t.powi(k),
            AlgebraKind::UqSu2 => self.q.powi(k * (k - 1)) * self.t.powi(-k),
            _ => T::one(),
        }
    }

    /// `χ(a_g* a_g)` as a prefactor times factors `(value, scale)`.
    fn norm_parts(&self, g: i64) -> (T, Vec<(T, T)>) {
        let dir = g.signum();
        (self.prefactor(g), (1..=g.abs()).map(|j| self.factor(dir, j)).collect())
    }

    /// Signs of `χ(a_g* a_g)` for `g = dir, 2 dir, …, depth·dir`, each factor
    /// evaluated once.
    fn norm_signs(&self, dir: i64, depth: u32, tol: f64) -> Vec<i32> {
        let sign = |x: &T| {
            if x.is_zero() {
                0
            } else if *x < T::zero() {
                -1
            } else {
                1
            }
        };
        let t_sign = sign(&self.t);
        let mut running = 1;
        (1..=depth as i64)
            .map(|k| {
                let (v, sc) = self.factor(dir, k);
                running *= sign(&v.snap(&sc, tol));
                let pre = if self.kind == AlgebraKind::UqSu2 && k % 2 == 1 { t_sign } else { 1 };
                running * pre
            })
            .collect()
    }

    fn norm(&self, g: i64, tol: f64) -> T {
        let (pre, factors) = self.norm_parts(g);
        factors
            .into_iter()
            .fold(pre, |acc, (v, sc)| acc * v.snap(&sc, tol))
    }

    /// Value on the normal word with B-coordinates `(i, j)`.
    fn word_value(&self, i: u32, j: i32) -> T {
        let i = i as i64;
        match self.kind {
            AlgebraKind::QOscillator => (0..i).fold(T::one(), |acc, l| {
                acc * (self.q.powi(-l) * self.t.clone() + self.qint(-l))
            }),
            AlgebraKind::Podles => self.t.powi(i),
            AlgebraKind::UqSu2 => {
                let e = self.e();
                let base = self.q.powi(2 * i * j as i64) * self.t.powi(j as i64);
                (1..=i).fold(base, |acc, l| acc * (e.clone() - self.qnum(l) * self.kbr(l - 1)))
            }
        }
    }

    fn evaluate(&self, alg: &GradedStarAlgebra, p: &NcPolynomial) -> Result<T, SpectrumError> {
        let mut acc = T::zero();
        for (w, c) in p.terms() {
            let (i, j) = alg
                .b_word_coordinates(w)
                .ok_or_else(|| SpectrumError::NotDegreeZero { word: alg.format_word(w) })?;
            let cv = T::eval(c, &self.q, &self.r).ok_or(SpectrumError::Undefined)?;
            acc = acc + cv * self.word_value(i, j);
        }
        Ok(acc)
    }
}

impl Character {
    fn build(
        kind: AlgebraKind,
        params: &Params,
        label: CharLabel,
        t: f64,
        s: Option<f64>,
        exact_t: Option<BigRational>,
        exact_s: Option<BigRational>,
    ) -> Self {
        Character {
            kind,
            params: params.clone(),
            label,
            t,
            s,
            exact_t,
            exact_s,
        }
    }

    fn scalar_value(params: &Params, s: &Scalar) -> (f64, Option<BigRational>) {
        let exact = params.exact().and_then(|(q, r)| s.eval_exact(&q, &r));
        let f = match &exact {
            Some(x) => x.to_f64(),
            None => params.eval_f64(s),
        };
        (f, exact)
    }

    /// Unlabeled character with float values.
    pub fn probe(kind: AlgebraKind, params: &Params, t: f64, s: Option<f64>) -> Self {
        Character::build(kind, params, CharLabel::Probe, t, s, None, None)
    }

    /// Unlabeled character with exact values.
    pub fn probe_exact(kind: AlgebraKind, params: &Params, t: BigRational, s: Option<BigRational>) -> Self {
        let tf = Real::to_f64(&t);
        let sf = s.as_ref().map(Real::to_f64);
        let s = if kind == AlgebraKind::UqSu2 { s.or(Some(<BigRational as Zero>::zero())) } else { None };
        Character::build(kind, params, CharLabel::Probe, tf, sf.or(s.as_ref().map(Real::to_f64)), Some(t), s)
    }

    pub fn q_integer(params: &Params, k: u64) -> Self {
        let (t, e) = Character::scalar_value(params, &Scalar::q_integer(k as i64));
        Character::build(AlgebraKind::QOscillator, params, CharLabel::QInteger { k }, t, None, e, None)
    }

    pub fn fixed_point(params: &Params) -> Self {
        let s = Scalar::one()
            .checked_div(&(Scalar::one() - Scalar::q()))
            .expect("1 - q is a nonzero polynomial");
        let (t, e) = Character::scalar_value(params, &s);
        Character::build(AlgebraKind::QOscillator, params, CharLabel::FixedPoint, t, None, e, None)
    }

    pub fn gamma(params: &Params, gamma: f64, j: i64) -> Self {
        let q = params.q_f64();
        let t = (1.0 + q.powf(gamma + j as f64)) / (1.0 - q);
        Character::build(AlgebraKind::QOscillator, params, CharLabel::Gamma { gamma, j }, t, None, None, None)
    }

    /// `λ± = 1/2 ± (r + 1/4)^{1/2}`, exact when the root is rational.
    pub fn podles_lambda(params: &Params, sign: Sign) -> (f64, Option<BigRational>) {
        let exact = params.exact().and_then(|(_, r)| {
            let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
            let root = rational_sqrt(&(r + &quarter))?;
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            Some(if sign == Sign::Plus { half + root } else { half - root })
        });
        let f = match &exact {
            Some(x) => Real::to_f64(x),
            None => 0.5 + sign.value() as f64 * (params.r_f64() + 0.25).sqrt(),
        };
        (f, exact)
    }

    pub fn podles(params: &Params, m: u64, sign: Sign) -> Self {
        let (lam, lam_e) = Character::podles_lambda(params, sign);
        let q = params.q_f64();
        let t = q.powi(2 * m as i32) * lam;
        let e = lam_e.and_then(|l| {
            let (q, _) = params.exact()?;
            Some(Real::powi(&q, 2 * m as i64) * l)
        });
        Character::build(AlgebraKind::Podles, params, CharLabel::Podles { m, sign }, t, None, e, None)
    }

    pub fn infinity(params: &Params) -> Self {
        Character::build(
            AlgebraKind::Podles,
            params,
            CharLabel::Infinity,
            0.0,
            None,
            Some(<BigRational as Zero>::zero()),
            None,
        )
    }

    pub fn uq(params: &Params, m: u64, n: u64, sign: Sign) -> Self {
        let w = sign.value();
        let d = m as i64 - n as i64;
        let tot = (m + n + 1) as i64;
        let ts = &Scalar::q_pow(d) * &Scalar::from_int(w);
        let inv = Scalar::one().checked_div(&Scalar::q_minus_q_inv().pow(2)).expect("q != 1");
        let ss = &(&(&Scalar::q_pow(tot) + &Scalar::q_pow(-tot)) * &inv) * &Scalar::from_int(w);
        let (t, te) = Character::scalar_value(params, &ts);
        let (s, se) = Character::scalar_value(params, &ss);
        Character::build(AlgebraKind::UqSu2, params, CharLabel::Uq { m, n, sign }, t, Some(s), te, se)
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn exact_t(&self) -> Option<&BigRational> {
        self.exact_t.as_ref()
    }

    pub fn exact_s(&self) -> Option<&BigRational> {
        self.exact_s.as_ref()
    }

    /// Exact evaluation is possible: parameters and values are rational.
    pub fn is_exact(&self) -> bool {
        self.params.is_exact()
            && self.exact_t.is_some()
            && (self.kind != AlgebraKind::UqSu2 || self.exact_s.is_some())
    }

    /// Values on the B-generators, keyed by name.
    pub fn values(&self) -> Vec<(&'static str, f64)> {
        match self.kind {
            AlgebraKind::QOscillator => vec![("N", self.t)],
            AlgebraKind::Podles => vec![("a", self.t)],
            AlgebraKind::UqSu2 => vec![("C_q", self.s.unwrap_or(0.0)), ("K", self.t)],
        }
    }

    fn ctx_f64(&self) -> Ctx<f64> {
        Ctx {
            kind: self.kind,
            q: self.params.q_f64(),
            r: self.params.r_f64(),
            t: self.t,
            s: self.s.unwrap_or(0.0),
        }
    }

    fn ctx_exact(&self) -> Option<Ctx<BigRational>> {
        if !self.is_exact() {
            return None;
        }
        let (q, r) = self.params.exact()?;
        Some(Ctx {
            kind: self.kind,
            q,
            r,
            t: self.exact_t.clone()?,
            s: self.exact_s.clone().unwrap_or_else(<BigRational as Zero>::zero),
        })
    }

    /// `χ(EF)` for U_q characters.
    pub fn ef_value(&self) -> f64 {
        self.ctx_f64().e()
    }

    /// `χ(a_g* a_g)`, exact when possible, with float factors snapped to zero
    /// within [`POSITIVITY_TOL`].
    pub fn norm(&self, g: i64) -> f64 {
        match self.ctx_exact() {
            Some(c) => Real::to_f64(&c.norm(g, 0.0)),
            None => self.ctx_f64().norm(g, POSITIVITY_TOL),
        }
    }

    pub fn norm_exact(&self, g: i64) -> Option<BigRational> {
        self.ctx_exact().map(|c| c.norm(g, 0.0))
    }

    /// Sign of `χ(a_g* a_g)`: -1, 0 or 1.
    fn norm_sign(&self, g: i64, tol: f64) -> i32 {
        match self.ctx_exact() {
            Some(c) => {
                let v = c.norm(g, 0.0);
                if Zero::is_zero(&v) {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            }
            None => {
                let v = self.ctx_f64().norm(g, tol);
                if v == 0.0 {
                    0
                } else if v > 0.0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Value on a degree-zero element in normal form.
    pub fn evaluate(&self, alg: &GradedStarAlgebra, p: &NcPolynomial) -> Result<f64, SpectrumError> {
        self.check_algebra(alg)?;
        match self.ctx_exact() {
            Some(c) => c.evaluate(alg, p).map(|x| Real::to_f64(&x)),
            None => self.ctx_f64().evaluate(alg, p),
        }
    }

    /// Exact value on a degree-zero element; `Ok(None)` for float characters.
    pub fn evaluate_exact(
        &self,
        alg: &GradedStarAlgebra,
        p: &NcPolynomial,
    ) -> Result<Option<BigRational>, SpectrumError> {
        self.check_algebra(alg)?;
        match self.ctx_exact() {
            Some(c) => c.evaluate(alg, p).map(Some),
            None => Ok(None),
        }
    }

    fn check_algebra(&self, alg: &GradedStarAlgebra) -> Result<(), SpectrumError> {
        if alg.kind() != self.kind {
            return Err(SpectrumError::WrongAlgebra {
                character: self.kind,
                algebra: alg.kind(),
            });
        }
        Ok(())
    }

    /// `χ(a_n* a_n) ≥ 0` for all `1 ≤ |n| ≤ depth`.
    pub fn is_positive(&self, depth: u32) -> bool {
        let signs = |dir: i64| match self.ctx_exact() {
            Some(c) => c.norm_signs(dir, depth, 0.0),
            None => self.ctx_f64().norm_signs(dir, depth, POSITIVITY_TOL),
        };
        signs(1).into_iter().chain(signs(-1)).all(|x| x >= 0)
    }

    /// Smallest `χ(a_n* a_n)` over `1 ≤ |n| ≤ depth`.
    pub fn min_norm(&self, depth: u32) -> f64 {
        (1..=depth as i64)
            .flat_map(|n| [self.norm(n), self.norm(-n)])
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether `χ(a_n* a_n) ≠ 0`. Exact index arithmetic for family points,
    /// a numeric test otherwise.
    pub fn domain_contains(&self, n: i64) -> bool {
        match &self.label {
            CharLabel::QInteger { k } => n <= *k as i64,
            CharLabel::Podles { m, .. } => n <= *m as i64,
            CharLabel::Uq { m, n: nn, .. } => -(*m as i64) <= n && n <= *nn as i64,
            CharLabel::FixedPoint | CharLabel::Gamma { .. } | CharLabel::Infinity => true,
            CharLabel::Probe => n == 0 || self.norm_sign(n, DOMAIN_TOL) != 0,
        }
    }

    /// The partial action `α_n(χ)`.
    pub fn act(&self, n: i64) -> Result<Character, SpectrumError> {
        if !self.domain_contains(n) {
            return Err(SpectrumError::OutOfDomain { n });
        }
        let p = &self.params;
        Ok(match &self.label {
            CharLabel::QInteger { k } => Character::q_integer(p, (*k as i64 - n) as u64),
            CharLabel::FixedPoint => self.clone(),
            CharLabel::Gamma { gamma, j } => Character::gamma(p, *gamma, j - n),
            CharLabel::Podles { m, sign } => Character::podles(p, (*m as i64 - n) as u64, *sign),
            CharLabel::Infinity => self.clone(),
            CharLabel::Uq { m, n: nn, sign } => {
                Character::uq(p, (*m as i64 + n) as u64, (*nn as i64 - n) as u64, *sign)
            }
            CharLabel::Probe => self.act_probe(n),
        })
    }

    /// Closed-form shift of the character values: `t ↦ q^-n t + [[-n]]`,
    /// `t ↦ q^{-2n} t`, or `t ↦ q^{2n} t` with `s` fixed.
    fn act_probe(&self, n: i64) -> Character {
        let mut out = self.clone();
        let cf = self.ctx_f64();
        out.t = match self.kind {
            AlgebraKind::QOscillator => cf.q.powi(-n as i32) * self.t + cf.qint(-n),
            AlgebraKind::Podles => cf.q.powi(-2 * n as i32) * self.t,
            AlgebraKind::UqSu2 => cf.q.powi(2 * n as i32) * self.t,
        };
        if let Some(c) = self.ctx_exact() {
            let t = match self.kind {
                AlgebraKind::QOscillator => Real::powi(&c.q, -n) * c.t.clone() + c.qint(-n),
                AlgebraKind::Podles => Real::powi(&c.q, -2 * n) * c.t.clone(),
                AlgebraKind::UqSu2 => Real::powi(&c.q, 2 * n) * c.t.clone(),
            };
            out.t = Real::to_f64(&t);
            out.exact_t = Some(t);
        }
        out
    }

    /// Same point of B̂ (labels are ignored), compared within `tol`.
    pub fn approx_eq(&self, other: &Character, tol: f64) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()));
        self.kind == other.kind
            && close(self.t, other.t)
            && close(self.s.unwrap_or(0.0), other.s.unwrap_or(0.0))
    }
}

/// A discrete family of spectrum points with a closed form.
#[derive(Clone, Debug, Serialize)]
pub struct DiscreteFamily {
    pub name: String,
    pub formula: String,
    pub indices: String,
}

/// A half-line or interval of characters `[lo, hi)`; `hi = None` means `+∞`.
#[derive(Clone, Debug, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: Option<f64>,
}

/// Exact description of the positive spectrum for fixed numeric parameters.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumDescription {
    pub algebra: AlgebraKind,
    pub discrete: Vec<DiscreteFamily>,
    pub continuous: Vec<Interval>,
    #[serde(skip)]
    params: Params,
}

fn family(name: &str, formula: &str, indices: &str) -> DiscreteFamily {
    DiscreteFamily {
        name: name.to_string(),
        formula: formula.to_string(),
        indices: indices.to_string(),
    }
}

impl SpectrumDescription {
    pub fn params(&self) -> &Params {
        &self.params
    }

    /// Family points, at most `cutoff + 1` per discrete family (for U_q all
    /// `(m, n)` with `m + n ≤ cutoff`).
    pub fn points(&self, cutoff: u64) -> Vec<Character> {
        let p = &self.params;
        match self.algebra {
            AlgebraKind::QOscillator => {
                let mut v: Vec<Character> = (0..=cutoff).map(|k| Character::q_integer(p, k)).collect();
                if p.q_f64() < 1.0 {
                    v.push(Character::fixed_point(p));
                }
                v
            }
            AlgebraKind::Podles => {
                let mut v = Vec::new();
                for sign in [Sign::Plus, Sign::Minus] {
                    v.extend((0..=cutoff).map(|m| Character::podles(p, m, sign)));
                }
                v.push(Character::infinity(p));
                v
            }
            AlgebraKind::UqSu2 => {
                let mut v = Vec::new();
                for sign in [Sign::Plus, Sign::Minus] {
                    for tot in 0..=cutoff {
                        v.extend((0..=tot).map(|m| Character::uq(p, m, tot - m, sign)));
                    }
                }
                v
            }
        }
    }

    /// Membership of `(t, s)` up to the relative tolerance `tol`.
    pub fn contains(&self, t: f64, s: Option<f64>, tol: f64) -> bool {
        let q = self.params.q_f64();
        let close = |a: f64, b: f64| (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()));
        match self.algebra {
            AlgebraKind::QOscillator => {
                if q < 1.0 && t >= 1.0 / (1.0 - q) - tol * (1.0 + t.abs()) {
                    return true;
                }
                let limit = if q < 1.0 { 1.0 / (1.0 - q) } else { f64::INFINITY };
                let mut k = 0i32;
                loop {
                    let v = if q == 1.0 { k as f64 } else { (q.powi(k) - 1.0) / (q - 1.0) };
                    if close(v, t) {
                        return true;
                    }
                    if v > t + tol * (1.0 + t.abs()) || (limit - v).abs() < 1e-15 || k > 100_000 {
                        return false;
                    }
                    k += 1;
                }
            }
            AlgebraKind::Podles => {
                if close(t, 0.0) {
                    return true;
                }
                [Sign::Plus, Sign::Minus].iter().any(|sign| {
                    let (lam, _) = Character::podles_lambda(&self.params, *sign);
                    let ratio = t / lam;
                    if ratio <= 0.0 {
                        return false;
                    }
                    let m = (ratio.ln() / (2.0 * q.ln())).round();
                    m >= 0.0 && close(q.powi(2 * m as i32) * lam, t)
                })
            }
            AlgebraKind::UqSu2 => {
                let Some(s) = s else { return false };
                if t == 0.0 {
                    return false;
                }
                let w = t.signum();
                let d = (t.abs().ln() / q.ln()).round();
                if !close(q.powf(d), t.abs()) {
                    return false;
                }
                let qq = q - 1.0 / q;
                let x = s * qq * qq * w;
                if x < 2.0 - tol {
                    return false;
                }
                let y = (x + (x * x - 4.0).max(0.0).sqrt()) / 2.0;
                let tot = (y.ln() / q.ln()).abs().round() - 1.0;
                tot >= d.abs()
                    && ((tot - d) as i64).rem_euclid(2) == 0
                    && close(w * (q.powf(tot + 1.0) + q.powf(-tot - 1.0)) / (qq * qq), s)
            }
        }
    }

    pub fn contains_character(&self, chi: &Character, tol: f64) -> bool {
        chi.kind == self.algebra && self.contains(chi.t, chi.s, tol)
    }
}

/// The positive spectrum B̂⁺ of a preset with numeric parameters.
pub fn positive_spectrum(alg: &GradedStarAlgebra) -> Option<SpectrumDescription> {
    let params = alg.params()?.clone();
    let q = params.q_f64();
    let (discrete, continuous) = match alg.kind() {
        AlgebraKind::QOscillator => {
            let d = vec![family("q_integer", "t = [[k]]_q", "k >= 0")];
            let c = if q < 1.0 {
                vec![Interval { lo: 1.0 / (1.0 - q), hi: None }]
            } else {
                vec![]
            };
            (d, c)
        }
        AlgebraKind::Podles => (
            vec![
                family("plus", "t = q^(2m) lambda_+, lambda_+ = 1/2 + (r + 1/4)^(1/2)", "m >= 0"),
                family("minus", "t = q^(2m) lambda_-, lambda_- = 1/2 - (r + 1/4)^(1/2)", "m >= 0"),
                family("infinity", "t = 0", "single point"),
            ],
            vec![],
        ),
        AlgebraKind::UqSu2 => (
            vec![family(
                "uq",
                "t = w q^(m-n), s = w (q^(m+n+1) + q^(-m-n-1))/(q - 1/q)^2, w = +1 or -1",
                "m, n >= 0",
            )],
            vec![],
        ),
    };
    Some(SpectrumDescription {
        algebra: alg.kind(),
        discrete,
        continuous,
        params,
    })
}

/// Default samples of the continuous γ-family.
pub const DEFAULT_GAMMA_SAMPLES: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

/// One point per orbit: q-osc `{0}` (and `1/(1-q)` plus γ-samples when `q < 1`),
/// Podleś `{χ_{0,+}, χ_{0,-}, χ_∞}`, U_q `{χ_{0,n,±} : n ≤ cutoff}`.
pub fn section(alg: &GradedStarAlgebra, cutoff: u64, gamma_samples: &[f64]) -> Option<Vec<Character>> {
    let p = alg.params()?;
    Some(match alg.kind() {
        AlgebraKind::QOscillator => {
            let mut v = vec![Character::q_integer(p, 0)];
            if p.q_f64() < 1.0 {
                v.push(Character::fixed_point(p));
                v.extend(gamma_samples.iter().map(|g| Character::gamma(p, *g, 0)));
            }
            v
        }
        AlgebraKind::Podles => vec![
            Character::podles(p, 0, Sign::Plus),
            Character::podles(p, 0, Sign::Minus),
            Character::infinity(p),
        ],
        AlgebraKind::UqSu2 => {
            let mut v = Vec::new();
            for sign in [Sign::Plus, Sign::Minus] {
                v.extend((0..=cutoff).map(|n| Character::uq(p, 0, n, sign)));
            }
            v
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::normal_form;
    use crate::numeric::ParamValue;

    fn qosc(n: i64, d: i64) -> GradedStarAlgebra {
        GradedStarAlgebra::make_q_oscillator(ParamValue::exact(n, d)).unwrap()
    }

    #[test]
    fn sign_scan_matches_direct_norms() {
        let algs = [
            qosc(1, 2),
            GradedStarAlgebra::make_podles(ParamValue::exact(3, 4), ParamValue::exact(1, 2)).unwrap(),
            GradedStarAlgebra::make_uq_su2(ParamValue::exact(2, 1)).unwrap(),
            GradedStarAlgebra::make_uq_su2(ParamValue::Float(0.5)).unwrap(),
        ];
        for alg in &algs {
            let p = alg.params().unwrap();
            let mut chars = positive_spectrum(alg).unwrap().points(4);
            for t in [-3.0, -0.4, 0.3, 1.7, 5.0] {
                let s = (alg.kind() == AlgebraKind::UqSu2).then_some(2.5);
                chars.push(Character::probe(alg.kind(), p, t, s));
            }
            for chi in &chars {
                let direct = (1..=12i64).all(|n| chi.norm(n) >= 0.0 && chi.norm(-n) >= 0.0);
                assert_eq!(chi.is_positive(12), direct, "{} {:?}", chi.label, chi.t);
            }
        }
    }

    #[test]
    fn evaluate_is_multiplicative_on_examples() {
        let alg = qosc(2, 1);
        let chi = Character::probe_exact(alg.kind(), alg.params().unwrap(), BigRational::from_integer(3.into()), None);
        let n2 = normal_form(&alg.parse("N N").unwrap(), &alg).unwrap();
        assert_eq!(chi.evaluate(&alg, &n2).unwrap(), 9.0);
        assert!(chi.evaluate(&alg, &alg.parse("a").unwrap()).is_err());

        let pod = GradedStarAlgebra::make_podles(ParamValue::exact(1, 2), ParamValue::exact(2, 1)).unwrap();
        let inf = Character::infinity(pod.params().unwrap());
        for n in 1..5 {
            let w = normal_form(&pod.parse(&format!("b*^{n} b^{n}")).unwrap(), &pod).unwrap();
            assert_eq!(inf.evaluate(&pod, &w).unwrap(), 2f64.powi(n));
            let w = normal_form(&pod.parse(&format!("b^{n} b*^{n}")).unwrap(), &pod).unwrap();
            assert_eq!(inf.evaluate(&pod, &w).unwrap(), 2f64.powi(n));
        }

        let uq = GradedStarAlgebra::make_uq_su2(ParamValue::exact(2, 1)).unwrap();
        let chi = Character::probe(uq.kind(), uq.params().unwrap(), 3.0, Some(0.7));
        let k1 = normal_form(&uq.parse("(q K - q^-1 K^-1)/(q - q^-1)").unwrap(), &uq).unwrap();
        let expect = (2.0 * 3.0 - 0.5 / 3.0) / 1.5;
        assert!((chi.evaluate(&uq, &k1).unwrap() - expect).abs() < 1e-12);
        let c = normal_form(&uq.casimir().unwrap(), &uq).unwrap();
        assert!((chi.evaluate(&uq, &c).unwrap() - 0.7).abs() < 1e-12);
    }

    #[test]
    fn positivity_examples() {
        let alg = qosc(2, 1);
        let p = alg.params().unwrap();
        let t3 = Character::probe_exact(alg.kind(), p, BigRational::from_integer(3.into()), None);
        assert!(t3.is_positive(25));
        let t2 = Character::probe_exact(alg.kind(), p, BigRational::from_integer(2.into()), None);
        assert!(!t2.is_positive(3));
        assert!(t2.is_positive(2));
        let half = qosc(1, 2);
        let c = Character::probe_exact(half.kind(), half.params().unwrap(), BigRational::new(5.into(), 2.into()), None);
        assert!(c.is_positive(60));
    }

    #[test]
    fn spectrum_points_and_section() {
        let alg = qosc(2, 1);
        let d = positive_spectrum(&alg).unwrap();
        let ts: Vec<f64> = d.points(4).iter().map(|c| c.t).collect();
        assert_eq!(ts, vec![0.0, 1.0, 3.0, 7.0, 15.0]);
        assert_eq!(section(&alg, 0, &DEFAULT_GAMMA_SAMPLES).unwrap().len(), 1);

        let half = qosc(1, 2);
        let sec = section(&half, 0, &[1.0]).unwrap();
        assert!((sec[2].t - 3.0).abs() < 1e-12);

        let pod = GradedStarAlgebra::make_podles(ParamValue::exact(1, 2), ParamValue::exact(2, 1)).unwrap();
        let sec = section(&pod, 0, &[]).unwrap();
        assert_eq!(sec.iter().map(|c| c.t).collect::<Vec<_>>(), vec![2.0, -1.0, 0.0]);
        assert_eq!(sec[0].exact_t().unwrap(), &BigRational::from_integer(2.into()));

        let uq = GradedStarAlgebra::make_uq_su2(ParamValue::exact(2, 1)).unwrap();
        let chi = Character::uq(uq.params().unwrap(), 0, 0, Sign::Plus);
        assert_eq!(chi.t, 1.0);
        assert!((chi.s.unwrap() - 2.5 / 2.25).abs() < 1e-15);
        let d = positive_spectrum(&uq).unwrap();
        for c in d.points(6) {
            assert!(d.contains_character(&c, 1e-9), "{:?}", c.label);
            assert!(c.is_positive(25));
        }
        assert!(!d.contains(1.0, Some(1.0), 1e-9));
    }

    #[test]
    fn domain_and_action_examples() {
        let alg = qosc(2, 1);
        let p = alg.params().unwrap();
        let c = Character::q_integer(p, 3);
        assert_eq!(c.t, 7.0);
        let moved = c.act(2).unwrap();
        assert_eq!(moved.t, 1.0);
        assert_eq!(moved.label, CharLabel::QInteger { k: 1 });
        assert!(c.act(4).is_err());
        // the unlabeled route agrees with the labeled one
        let probe = Character::probe_exact(alg.kind(), p, BigRational::from_integer(7.into()), None);
        assert!(probe.domain_contains(3) && !probe.domain_contains(4));
        assert_eq!(probe.act(2).unwrap().t, 1.0);

        let uq = GradedStarAlgebra::make_uq_su2(ParamValue::exact(2, 1)).unwrap();
        let c = Character::uq(uq.params().unwrap(), 0, 2, Sign::Plus);
        assert_eq!(c.t, 0.25);
        let m = c.act(1).unwrap();
        assert_eq!(m.label, CharLabel::Uq { m: 1, n: 1, sign: Sign::Plus });
        assert_eq!(m.t, 1.0);
        assert_eq!(m.s, c.s);
        for k in -3..=4 {
            assert_eq!(c.domain_contains(k), (0..=2).contains(&k));
        }
    }

    #[test]
    fn rational_sqrt_detects_squares() {
        let r = BigRational::new(9.into(), 4.into());
        assert_eq!(rational_sqrt(&r), Some(BigRational::new(3.into(), 2.into())));
        assert_eq!(rational_sqrt(&BigRational::new(3.into(), 4.into())), None);
    }
}
