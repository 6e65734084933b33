//! Exact scalars: rational functions in the deformation parameters `q` and `r`.
//!
//! The numerator is a polynomial in `q` and `r`, the denominator a monic
//! polynomial in `q` alone. Every structure constant of the preset algebras
//! (`q^-2`, `[[k]]_q`, `[n]_q`, `1/(q - q^-1)`, `r`) fits this shape, and it keeps
//! canonicalization to a univariate gcd.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense univariate polynomial in `q`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly(Vec<BigRational>);

impl QPoly {
    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn one() -> Self {
        QPoly(vec![BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly(vec![c]).trimmed()
    }

    pub fn monomial(c: BigRational, deg: usize) -> Self {
        let mut v = vec![BigRational::zero(); deg + 1];
        v[deg] = c;
        QPoly(v).trimmed()
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        QPoly(coeffs).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    /// Root test at `q = c`.
    fn vanishes_at(&self, c: i8) -> bool {
        match c {
            0 => self.0.first().is_none_or(|x| x.is_zero()),
            1 => self.0.iter().fold(BigRational::zero(), |acc, x| acc + x).is_zero(),
            _ => self
                .0
                .iter()
                .enumerate()
                .fold(BigRational::zero(), |acc, (i, x)| if i % 2 == 0 { acc + x } else { acc - x })
                .is_zero(),
        }
    }

    /// Exact division by `q - c` for `c ∈ {0, 1, -1}` (synthetic division).
    fn div_linear(&self, c: i8) -> Self {
        if c == 0 {
            return QPoly(self.0[1..].to_vec());
        }
        let n = self.0.len();
        let mut out = vec![BigRational::zero(); n - 1];
        let mut carry = BigRational::zero();
        for i in (1..n).rev() {
            carry = if c == 1 { &carry + &self.0[i] } else { &self.0[i] - &carry };
            out[i - 1] = carry.clone();
        }
        QPoly(out).trimmed()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_else(BigRational::zero);
            let b = other.0.get(i).cloned().unwrap_or_else(BigRational::zero);
            out.push(a + b);
        }
        QPoly(out).trimmed()
    }

    pub fn neg(&self) -> Self {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly(out).trimmed()
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.0[dd].clone();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = &rem[i] / &lead;
            for (j, d) in divisor.0.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = &rem[idx] - &c * d;
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (QPoly(quot).trimmed(), QPoly(rem).trimmed())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
            None => QPoly::zero(),
        }
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return QPoly::one();
            }
            let (_, r) = a.div_rem(&b);
            a = b;
            // keeping remainders monic stops coefficient growth
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        self.0
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * q + ratio_to_f64(c))
    }

    pub fn eval_exact(&self, q: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * q + c)
    }
}

pub(crate) fn ratio_to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        // Fall back to a scaled division for huge numerators/denominators.
        let n = c.numer().to_f64().unwrap_or(f64::NAN);
        let d = c.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Polynomial in `q` and `r`, stored as r-exponent → coefficient polynomial in `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
struct QrPoly(BTreeMap<u32, QPoly>);

impl QrPoly {
    fn from_q(p: QPoly) -> Self {
        let mut m = BTreeMap::new();
        if !p.is_zero() {
            m.insert(0, p);
        }
        QrPoly(m)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn r_free(&self) -> Option<&QPoly> {
        match self.0.len() {
            0 => None,
            1 => self.0.get(&0),
            _ => None,
        }
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (k, v) in &other.0 {
            let s = match out.get(k) {
                Some(a) => a.add(v),
                None => v.clone(),
            };
            if s.is_zero() {
                out.remove(k);
            } else {
                out.insert(*k, s);
            }
        }
        QrPoly(out)
    }

    fn neg(&self) -> Self {
        QrPoly(self.0.iter().map(|(k, v)| (*k, v.neg())).collect())
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = QrPoly::default();
        for (i, a) in &self.0 {
            for (j, b) in &other.0 {
                let mut m = BTreeMap::new();
                m.insert(i + j, a.mul(b));
                out = out.add(&QrPoly(m));
            }
        }
        out
    }

    fn mul_q(&self, p: &QPoly) -> Self {
        QrPoly(
            self.0
                .iter()
                .map(|(k, v)| (*k, v.mul(p)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        )
    }

    /// Exact division of every slice by `p`.
    fn div_q_exact(&self, p: &QPoly) -> Self {
        QrPoly(
            self.0
                .iter()
                .map(|(k, v)| {
                    let (quot, rem) = v.div_rem(p);
                    debug_assert!(rem.is_zero());
                    (*k, quot)
                })
                .collect(),
        )
    }

    fn content_gcd(&self, start: &QPoly) -> QPoly {
        let mut g = start.clone();
        for v in self.0.values() {
            if g.degree() == Some(0) {
                break;
            }
            g = g.gcd(v);
        }
        g
    }
}

/// Canonical rational function `num(q, r) / den(q)` with a monic denominator
/// coprime to the numerator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: QrPoly,
    den: QPoly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: QrPoly::default(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_ratio(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(c: BigRational) -> Self {
        Scalar {
            num: QrPoly::from_q(QPoly::constant(c)),
            den: QPoly::one(),
        }
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::from_ratio(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The formal parameter `q`.
    pub fn q() -> Self {
        Scalar::q_pow(1)
    }

    /// The formal parameter `r`.
    pub fn r() -> Self {
        let mut m = BTreeMap::new();
        m.insert(1, QPoly::one());
        Scalar {
            num: QrPoly(m),
            den: QPoly::one(),
        }
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let mono = QPoly::monomial(BigRational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Scalar {
                num: QrPoly::from_q(mono),
                den: QPoly::one(),
            }
        } else {
            Scalar {
                num: QrPoly::from_q(QPoly::one()),
                den: mono,
            }
        }
    }

    /// Build from a polynomial in `q` (no reduction needed).
    pub fn from_qpoly(p: QPoly) -> Self {
        Scalar {
            num: QrPoly::from_q(p),
            den: QPoly::one(),
        }
    }

    fn canonical(num: QrPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Scalar::zero();
        }
        // Denominators are almost always products of q, q - 1 and q + 1, so
        // cancel those by synthetic division before any Euclidean gcd.
        let (mut num, mut den) = (num, den);
        for c in [0i8, 1, -1] {
            while den.degree().unwrap_or(0) > 0
                && den.vanishes_at(c)
                && num.0.values().all(|v| v.vanishes_at(c))
            {
                den = den.div_linear(c);
                num = QrPoly(num.0.iter().map(|(k, v)| (*k, v.div_linear(c))).collect());
            }
        }
        let mut rest = den.clone();
        for c in [0i8, 1, -1] {
            while rest.degree().unwrap_or(0) > 0 && rest.vanishes_at(c) {
                rest = rest.div_linear(c);
            }
        }
        if rest.degree() == Some(0) {
            return Scalar::normalized_lead(num, den);
        }
        let g = num.content_gcd(&den);
        let (num, den) = if g.is_one() || g.is_zero() {
            (num, den)
        } else {
            let (d, _) = den.div_rem(&g);
            (num.div_q_exact(&g), d)
        };
        Scalar::normalized_lead(num, den)
    }

    fn normalized_lead(num: QrPoly, den: QPoly) -> Self {
        let lead = den.leading().cloned().expect("nonzero denominator");
        if lead.is_one() {
            Scalar { num, den }
        } else {
            let inv = lead.recip();
            Scalar {
                num: num.mul_q(&QPoly::constant(inv.clone())),
                den: den.scale(&inv),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.r_free().is_some_and(|p| p.is_one())
    }

    /// True when the scalar does not involve `r`.
    pub fn is_r_free(&self) -> bool {
        self.num.is_zero() || self.num.r_free().is_some()
    }

    /// True when the scalar is a plain rational number.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        let p = self.num.r_free()?;
        if p.degree() == Some(0) && self.den.is_one() {
            Some(p.coeffs()[0].clone())
        } else {
            None
        }
    }

    /// Division; `None` when the divisor is zero or depends on `r`.
    pub fn checked_div(&self, other: &Scalar) -> Option<Scalar> {
        if other.is_zero() {
            return None;
        }
        let on = other.num.r_free()?;
        let num = self.num.mul_q(&other.den);
        let den = self.den.mul(on);
        Some(Scalar::canonical(num, den))
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut out = Scalar::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `[[k]]_q = (q^k - 1)/(q - 1)` for every integer `k`.
    pub fn q_integer(k: i64) -> Scalar {
        let qm1 = Scalar::q() - Scalar::one();
        (Scalar::q_pow(k) - Scalar::one())
            .checked_div(&qm1)
            .expect("q - 1 is a nonzero r-free scalar")
    }

    /// `[n]_q = (q^n - q^-n)/(q - q^-1)`.
    pub fn q_number(n: i64) -> Scalar {
        (Scalar::q_pow(n) - Scalar::q_pow(-n))
            .checked_div(&Scalar::q_minus_q_inv())
            .expect("q - 1/q is a nonzero r-free scalar")
    }

    /// `q - q^-1`.
    pub fn q_minus_q_inv() -> Scalar {
        Scalar::q() - Scalar::q_pow(-1)
    }

    /// Evaluate at floating-point parameters. `None` if the denominator vanishes.
    pub fn eval_f64(&self, q: f64, r: f64) -> Option<f64> {
        let d = self.den.eval_f64(q);
        if d == 0.0 {
            return None;
        }
        let mut n = 0.0;
        for (k, p) in self.num.0.iter().rev() {
            let _ = k;
            n += p.eval_f64(q) * r.powi(*k as i32);
        }
        Some(n / d)
    }

    /// Evaluate at exact rational parameters. `None` if the denominator vanishes.
    pub fn eval_exact(&self, q: &BigRational, r: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_exact(q);
        if d.is_zero() {
            return None;
        }
        let mut n = BigRational::zero();
        for (k, p) in &self.num.0 {
            n += p.eval_exact(q) * num_traits::pow(r.clone(), *k as usize);
        }
        Some(n / d)
    }

    /// Integer-coefficient numerator and denominator strings, e.g. `("q^2 - 1", "q")`.
    pub fn to_integer_strings(&self) -> (String, String) {
        let mut lcm = BigInt::one();
        for p in self.num.0.values() {
            for c in p.coeffs() {
                lcm = lcm.lcm(c.denom());
            }
        }
        for c in self.den.coeffs() {
            lcm = lcm.lcm(c.denom());
        }
        let scale = BigRational::from_integer(lcm);
        let mut num_terms: Vec<(u32, u32, BigInt)> = Vec::new();
        for (rk, p) in &self.num.0 {
            for (qk, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    num_terms.push((qk as u32, *rk, (c * &scale).to_integer()));
                }
            }
        }
        let den_terms: Vec<(u32, u32, BigInt)> = self
            .den
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(qk, c)| (qk as u32, 0, (c * &scale).to_integer()))
            .collect();
        (format_int_poly(num_terms), format_int_poly(den_terms))
    }
}

fn format_int_poly(mut terms: Vec<(u32, u32, BigInt)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    // Highest total degree first, q before r.
    terms.sort_by(|a, b| match (b.0 + b.1).cmp(&(a.0 + a.1)) {
        Ordering::Equal => b.0.cmp(&a.0),
        o => o,
    });
    let mut out = String::new();
    for (i, (qk, rk, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        if !mag.is_one() || (*qk == 0 && *rk == 0) {
            factors.push(mag.to_string());
        }
        match qk {
            0 => {}
            1 => factors.push("q".into()),
            k => factors.push(format!("q^{k}")),
        }
        match rk {
            0 => {}
            1 => factors.push("r".into()),
            k => factors.push(format!("r^{k}")),
        }
        out.push_str(&factors.join("*"));
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.to_integer_strings();
        if d == "1" {
            write!(f, "{n}")
        } else {
            write!(f, "({n})/({d})")
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Scalar::canonical(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul_q(&other.den).add(&other.num.mul_q(&self.den));
        Scalar::canonical(num, self.den.mul(&other.den))
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        Scalar::canonical(self.num.mul(&other.num), self.den.mul(&other.den))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, other: &Scalar) -> Scalar {
        self + &(-other)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, other: Scalar) -> Scalar {
                (&self).$m(&other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn canonical_form_cancels_common_factors() {
        // (q^2 - 1)/(q - 1) = q + 1
        let a = (Scalar::q_pow(2) - Scalar::one())
            .checked_div(&(Scalar::q() - Scalar::one()))
            .unwrap();
        assert_eq!(a, Scalar::q() + Scalar::one());
        assert_eq!(a.to_integer_strings(), ("q + 1".to_string(), "1".to_string()));
    }

    #[test]
    fn q_integer_positive_and_negative() {
        assert_eq!(
            Scalar::q_integer(3),
            Scalar::one() + Scalar::q() + Scalar::q_pow(2)
        );
        assert_eq!(Scalar::q_integer(0), Scalar::zero());
        // [[-2]] = -(1 + q)/q^2, finite at q = 1 with value -2
        let m2 = Scalar::q_integer(-2);
        assert_eq!(m2.eval_f64(1.0, 0.0), Some(-2.0));
        assert_eq!(m2.eval_exact(&rat(1, 2), &rat(0, 1)), Some(rat(-6, 1)));
    }

    #[test]
    fn q_number_is_laurent() {
        // [2] = q + 1/q
        assert_eq!(Scalar::q_number(2), Scalar::q() + Scalar::q_pow(-1));
        assert_eq!(Scalar::q_number(0), Scalar::zero());
        assert_eq!(Scalar::q_number(-3), -Scalar::q_number(3));
    }

    #[test]
    fn division_by_r_is_rejected() {
        assert!(Scalar::one().checked_div(&Scalar::r()).is_none());
        assert!(Scalar::one().checked_div(&Scalar::zero()).is_none());
    }

    #[test]
    fn evaluation_and_strings() {
        let s = (Scalar::q_minus_q_inv()).pow(2);
        assert_eq!(s.eval_f64(2.0, 0.0), Some(2.25));
        let t = &(&Scalar::r() * &Scalar::q()) + &Scalar::frac(1, 2);
        assert_eq!(t.to_integer_strings().0, "2*q*r + 1");
        assert_eq!(t.to_integer_strings().1, "2");
    }
}
