//! Membership of degree-zero elements in the cone of hermitian squares.
//!
//! The degree-zero part of `Σ x_i* x_i` is `Σ_n a_n* a_n · p_n* p_n` with
//! `p_n ∈ B`. Every summand is nonnegative at a positive character, so at a
//! positive character `χ` where the target vanishes each `p_n` with
//! `χ(a_n* a_n) ≠ 0` must vanish too. Those linear conditions are collected
//! exactly; if they force every `p_n` in the bounded ansatz to zero, the target
//! is refuted. Otherwise a diagonal certificate is searched for with an exact
//! simplex.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebras::{AlgebraKind, GradedStarAlgebra};
use crate::ncpoly::{normal_form, NcPolynomial, RewriteError, Word};
use crate::scalar::Scalar;
use crate::spectrum::{positive_spectrum, Character};

use super::simplex::feasible_point;

/// Largest degree bound accepted.
pub const MAX_SOS_DEGREE: u32 = 4;
/// Family points tried as evaluation witnesses.
const WITNESS_CUTOFF: u64 = 12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SosError {
    #[error("sum-of-squares decisions are not implemented for {0}")]
    Unsupported(AlgebraKind),
    #[error("sum-of-squares decisions need exact rational parameters")]
    NeedsExactParams,
    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeBound { degree: u32, bound: u32 },
    #[error("target is not of degree zero")]
    NotDegreeZero,
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// `weight · a_k* a_k · p* p`.
#[derive(Clone, Debug, Serialize)]
pub struct SosCertificateTerm {
    pub k: i32,
    pub weight: String,
    pub p: String,
    #[serde(skip)]
    pub weight_exact: BigRational,
    #[serde(skip)]
    pub p_poly: NcPolynomial,
}

/// Positive character at which the target vanishes.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub label: String,
    pub values: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SosVerdict {
    Member {
        certificate: Vec<SosCertificateTerm>,
    },
    /// `within_ansatz` is set when the bounded ansatz is not known to be
    /// exhaustive for this algebra.
    Refuted {
        witnesses: Vec<Witness>,
        within_ansatz: bool,
    },
    Inconclusive {
        reason: String,
    },
}

impl SosVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, SosVerdict::Member { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, SosVerdict::Refuted { .. })
    }
}

/// Filtration degree: every letter counts 1 except `K` and `K^-1`.
fn filtration_degree(alg: &GradedStarAlgebra, w: &Word) -> u32 {
    w.iter()
        .filter(|g| alg.generators()[**g as usize].degree != 0 || alg.kind() != AlgebraKind::UqSu2)
        .count() as u32
}

fn k_exponent(alg: &GradedStarAlgebra, w: &Word) -> i32 {
    match alg.b_word_coordinates(w) {
        Some((_, j)) if alg.kind() == AlgebraKind::UqSu2 => j,
        _ => 0,
    }
}

fn exact_coefficients(alg: &GradedStarAlgebra, p: &NcPolynomial) -> Vec<(Word, BigRational)> {
    let sp = alg.specialize(p).expect("parameters are exact");
    sp.terms()
        .map(|(w, c)| (w.clone(), c.as_constant().expect("specialized scalars are constants")))
        .collect()
}

/// Basis of `B` of filtration degree `≤ 2·half`, with `K` exponents in `[-kmax, kmax]`.
fn b_basis(alg: &GradedStarAlgebra, half: u32, kmax: i32) -> Vec<NcPolynomial> {
    match alg.kind() {
        AlgebraKind::QOscillator => {
            let n = alg.named_element("N").expect("q-oscillator names N").clone();
            (0..=half / 2).map(|e| n.pow(e)).collect()
        }
        AlgebraKind::UqSu2 => {
            let ef = alg.gen_poly("E").multiply(&alg.gen_poly("F"));
            let mut out = Vec::new();
            for i in 0..=half / 2 {
                for j in -kmax..=kmax {
                    let kj = if j >= 0 {
                        alg.gen_poly("K").pow(j as u32)
                    } else {
                        alg.gen_poly("K^-1").pow((-j) as u32)
                    };
                    out.push(ef.pow(i).multiply(&kj));
                }
            }
            out
        }
        AlgebraKind::Podles => unreachable!("rejected earlier"),
    }
}

/// Basis of the null space of `rows` (each of length `ncols`).
fn kernel(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); ncols];
            v[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            v
        })
        .collect()
}

fn combine(basis: &[NcPolynomial], coeffs: &[BigRational]) -> NcPolynomial {
    let mut out = NcPolynomial::zero();
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out + b.scale(&Scalar::from_ratio(c.clone()));
        }
    }
    out
}

fn witness_of(chi: &Character) -> Witness {
    let mut values = vec![("t".to_string(), chi.exact_t().map(|v| v.to_string()).unwrap_or_default())];
    if let Some(s) = chi.exact_s() {
        values.push(("s".to_string(), s.to_string()));
    }
    Witness {
        label: chi.label.to_string(),
        values,
    }
}

/// Decide whether `target ∈ B` is a sum of hermitian squares within the graded
/// ansatz of filtration degree `≤ degree`.
pub fn sos_membership(alg: &GradedStarAlgebra, target: &NcPolynomial, degree: u32) -> Result<SosVerdict, SosError> {
    if alg.kind() == AlgebraKind::Podles {
        return Err(SosError::Unsupported(alg.kind()));
    }
    if !alg.params().is_some_and(|p| p.is_exact()) {
        return Err(SosError::NeedsExactParams);
    }
    if degree > MAX_SOS_DEGREE {
        return Err(SosError::DegreeBound {
            degree,
            bound: MAX_SOS_DEGREE,
        });
    }
    let tnf = normal_form(target, alg)?;
    if tnf.terms().any(|(w, _)| alg.b_word_coordinates(w).is_none()) {
        return Err(SosError::NotDegreeZero);
    }
    let tdeg = tnf.terms().map(|(w, _)| filtration_degree(alg, w)).max().unwrap_or(0);
    if tdeg > degree {
        return Err(SosError::DegreeBound { degree: tdeg, bound: degree });
    }
    let kmax = tnf.terms().map(|(w, _)| k_exponent(alg, w).abs()).max().unwrap_or(0);
    let kmax = (kmax + 1) / 2;

    // witnesses: exact family points where the target vanishes
    let desc = positive_spectrum(alg).expect("numeric preset");
    let witnesses: Vec<Character> = desc
        .points(WITNESS_CUTOFF)
        .into_iter()
        .filter(|c| c.is_exact())
        .filter(|c| matches!(c.evaluate_exact(alg, &tnf), Ok(Some(v)) if v.is_zero()))
        .collect();

    // summands a_n* a_n · p_n* p_n with 2|n| + 2·deg p_n ≤ degree
    let half_n = (degree / 2) as i32;
    let mut columns: Vec<(i32, NcPolynomial)> = Vec::new();
    for n in -half_n..=half_n {
        let room = degree - 2 * n.unsigned_abs();
        let basis = b_basis(alg, room / 2, kmax);
        let basis_nf: Vec<NcPolynomial> = basis.iter().map(|b| normal_form(b, alg)).collect::<Result<_, _>>()?;
        let rows: Vec<Vec<BigRational>> = witnesses
            .iter()
            .filter(|c| c.norm_exact(n as i64).is_some_and(|v| !v.is_zero()))
            .map(|c| {
                basis_nf
                    .iter()
                    .map(|b| c.evaluate_exact(alg, b).ok().flatten().expect("exact character on B"))
                    .collect()
            })
            .collect();
        for v in kernel(&rows, basis.len()) {
            columns.push((n, combine(&basis, &v)));
        }
    }

    if columns.is_empty() {
        if tnf.is_zero() {
            return Ok(SosVerdict::Member { certificate: vec![] });
        }
        return Ok(SosVerdict::Refuted {
            witnesses: witnesses.iter().map(witness_of).collect(),
            within_ansatz: alg.kind() == AlgebraKind::UqSu2,
        });
    }

    // diagonal certificate: target = Σ x_j a_n* a_n p_j* p_j, x ≥ 0
    let mut summands = Vec::new();
    for (n, p) in &columns {
        let an = alg.module_generator(*n);
        let s = an.star(alg).multiply(&an).multiply(&p.star(alg)).multiply(p);
        summands.push(exact_coefficients(alg, &normal_form(&s, alg)?));
    }
    let target_c = exact_coefficients(alg, &tnf);
    let mut words: Vec<Word> = target_c.iter().map(|(w, _)| w.clone()).collect();
    for s in &summands {
        words.extend(s.iter().map(|(w, _)| w.clone()));
    }
    words.sort();
    words.dedup();
    let coeff = |terms: &[(Word, BigRational)], w: &Word| {
        terms
            .iter()
            .find(|(x, _)| x == w)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    };
    let a: Vec<Vec<BigRational>> = words
        .iter()
        .map(|w| summands.iter().map(|s| coeff(s, w)).collect())
        .collect();
    let b: Vec<BigRational> = words.iter().map(|w| coeff(&target_c, w)).collect();
    let Some(x) = feasible_point(&a, &b) else {
        return Ok(SosVerdict::Inconclusive {
            reason: format!(
                "{} evaluation witnesses leave {} free summands and no diagonal certificate exists",
                witnesses.len(),
                columns.len()
            ),
        });
    };

    let certificate: Vec<SosCertificateTerm> = columns
        .iter()
        .zip(&x)
        .filter(|(_, w)| !w.is_zero())
        .map(|((n, p), w)| SosCertificateTerm {
            k: *n,
            weight: w.to_string(),
            p: p.display(alg).to_string(),
            weight_exact: w.clone(),
            p_poly: p.clone(),
        })
        .collect();
    // re-expand exactly before reporting
    let mut sum = NcPolynomial::zero();
    for t in &certificate {
        let an = alg.module_generator(t.k);
        let s = an.star(alg).multiply(&an).multiply(&t.p_poly.star(alg)).multiply(&t.p_poly);
        sum = sum + s.scale(&Scalar::from_ratio(t.weight_exact.clone()));
    }
    let residual = alg.specialize(&normal_form(&(sum - tnf), alg)?).expect("exact parameters");
    if !residual.is_zero() {
        return Ok(SosVerdict::Inconclusive {
            reason: "certificate failed exact re-expansion".into(),
        });
    }
    Ok(SosVerdict::Member { certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ParamValue;

    #[test]
    fn oscillator_verdicts() {
        let alg = GradedStarAlgebra::make_q_oscillator(ParamValue::exact(1, 2)).unwrap();
        let bad = alg.parse("(N-1)*(N-1-q)").unwrap();
        match sos_membership(&alg, &bad, 4).unwrap() {
            SosVerdict::Refuted { witnesses, within_ansatz } => {
                let ts: Vec<&str> = witnesses.iter().map(|w| w.values[0].1.as_str()).collect();
                assert_eq!(ts, vec!["1", "3/2"]);
                assert!(!within_ansatz);
            }
            v => panic!("{v:?}"),
        }
        let good = alg.parse("q^-1 N (N - 1)").unwrap();
        match sos_membership(&alg, &good, 4).unwrap() {
            SosVerdict::Member { certificate } => {
                assert_eq!(certificate.len(), 1);
                assert_eq!((certificate[0].k, certificate[0].weight.as_str(), certificate[0].p.as_str()), (2, "1", "1"));
            }
            v => panic!("{v:?}"),
        }
        match sos_membership(&alg, &alg.parse("N").unwrap(), 2).unwrap() {
            SosVerdict::Member { certificate } => assert_eq!(certificate[0].k, 1),
            v => panic!("{v:?}"),
        }
        assert!(sos_membership(&alg, &alg.parse("a").unwrap(), 4).is_err());
        assert!(sos_membership(&alg, &bad, 5).is_err());
    }

    #[test]
    fn uq_bad_polynomial() {
        let alg = GradedStarAlgebra::make_uq_su2(ParamValue::exact(2, 1)).unwrap();
        let bad = alg.parse("(E F - [2][K;1])*(E F - [3][K;2])").unwrap();
        match sos_membership(&alg, &bad, 4).unwrap() {
            SosVerdict::Refuted { witnesses, within_ansatz } => {
                assert!(within_ansatz);
                assert!(!witnesses.is_empty());
            }
            v => panic!("{v:?}"),
        }
        let ef = alg.parse("E* E").unwrap();
        assert!(sos_membership(&alg, &ef, 4).unwrap().is_member());
    }

    #[test]
    fn kernel_of_small_matrix() {
        let r = |n: i64| BigRational::from_integer(n.into());
        let k = kernel(&[vec![r(1), r(1), r(0)]], 3);
        assert_eq!(k, vec![vec![r(-1), r(1), r(0)], vec![r(0), r(0), r(1)]]);
    }
}
