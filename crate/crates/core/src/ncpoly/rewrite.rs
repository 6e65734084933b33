//! Length-two rewriting to a fixed normal order, plus the critical-pair check
//! used to certify that the preset systems are confluent.

use std::collections::{BTreeMap, HashMap};

use crate::algebras::GradedStarAlgebra;
use crate::scalar::Scalar;

use super::{Gen, NcPolynomial, Word};

/// Rewrite steps allowed per `normal_form` call before giving up.
pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("rewriting exceeded the step budget of {budget} (rule set does not terminate?)")]
    BudgetExceeded { budget: usize },
}

/// `left → right`, with `left` a word of length two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub left: [Gen; 2],
    pub right: NcPolynomial,
}

#[derive(Clone, Debug, Default)]
pub struct RewriteSystem {
    rules: Vec<RewriteRule>,
    index: HashMap<[Gen; 2], usize>,
}

impl RewriteSystem {
    pub fn new(rules: Vec<RewriteRule>) -> Self {
        let index = rules
            .iter()
            .enumerate()
            .map(|(i, r)| (r.left, i))
            .collect();
        RewriteSystem { rules, index }
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn rule_for(&self, pair: [Gen; 2]) -> Option<&RewriteRule> {
        self.index.get(&pair).map(|&i| &self.rules[i])
    }

    /// Leftmost reducible position of `w`.
    fn first_redex(&self, w: &[Gen]) -> Option<(usize, &RewriteRule)> {
        w.windows(2)
            .enumerate()
            .find_map(|(i, p)| self.rule_for([p[0], p[1]]).map(|r| (i, r)))
    }

    pub fn is_irreducible(&self, w: &[Gen]) -> bool {
        self.first_redex(w).is_none()
    }

    /// Replace the redex at position `pos` of `w` by the rule's right-hand side.
    fn apply_at(&self, w: &[Gen], pos: usize, rule: &RewriteRule, c: &Scalar) -> Vec<(Word, Scalar)> {
        rule.right
            .terms()
            .map(|(rw, rc)| {
                let mut nw = Vec::with_capacity(w.len() + rw.len());
                nw.extend_from_slice(&w[..pos]);
                nw.extend_from_slice(rw);
                nw.extend_from_slice(&w[pos + 2..]);
                (nw, c * rc)
            })
            .collect()
    }

    pub fn normalize(&self, p: &NcPolynomial, budget: usize) -> Result<NcPolynomial, RewriteError> {
        let mut done = NcPolynomial::zero();
        let mut pending: BTreeMap<Word, Scalar> =
            p.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut steps = 0usize;
        while !pending.is_empty() {
            let mut next: BTreeMap<Word, Scalar> = BTreeMap::new();
            for (w, c) in pending {
                match self.first_redex(&w) {
                    None => done.add_term(w, c),
                    Some((pos, rule)) => {
                        steps += 1;
                        if steps > budget {
                            return Err(RewriteError::BudgetExceeded { budget });
                        }
                        for (nw, nc) in self.apply_at(&w, pos, rule, &c) {
                            accumulate(&mut next, nw, nc);
                        }
                    }
                }
            }
            pending = next;
        }
        Ok(done)
    }
}

fn accumulate(map: &mut BTreeMap<Word, Scalar>, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&w) {
        Some(e) => {
            let s = &*e + &c;
            if s.is_zero() {
                map.remove(&w);
            } else {
                *e = s;
            }
        }
        None => {
            map.insert(w, c);
        }
    }
}

/// Unique irreducible form of `p` under the algebra's rewrite rules.
pub fn normal_form(p: &NcPolynomial, alg: &GradedStarAlgebra) -> Result<NcPolynomial, RewriteError> {
    normal_form_with_budget(p, alg, DEFAULT_STEP_BUDGET)
}

pub fn normal_form_with_budget(
    p: &NcPolynomial,
    alg: &GradedStarAlgebra,
    budget: usize,
) -> Result<NcPolynomial, RewriteError> {
    alg.rewrite_system().normalize(p, budget)
}

/// Overlap `xyz` of the rules `xy → …` and `yz → …`, resolved both ways.
#[derive(Clone, Debug)]
pub struct CriticalPair {
    pub word: Word,
    pub via_left: NcPolynomial,
    pub via_right: NcPolynomial,
}

impl CriticalPair {
    pub fn joinable(&self) -> bool {
        self.via_left == self.via_right
    }
}

/// All length-three overlaps of the algebra's rules with both reductions
/// normalized. The system is locally confluent iff every pair is joinable.
pub fn critical_pairs(alg: &GradedStarAlgebra) -> Result<Vec<CriticalPair>, RewriteError> {
    let sys = alg.rewrite_system();
    let mut out = Vec::new();
    for r1 in sys.rules() {
        for r2 in sys.rules() {
            if r1.left[1] != r2.left[0] {
                continue;
            }
            let x = NcPolynomial::generator(r1.left[0]);
            let z = NcPolynomial::generator(r2.left[1]);
            let left = r1.right.multiply(&z);
            let right = x.multiply(&r2.right);
            out.push(CriticalPair {
                word: vec![r1.left[0], r1.left[1], r2.left[1]],
                via_left: normal_form(&left, alg)?,
                via_right: normal_form(&right, alg)?,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::GradedStarAlgebra;

    #[test]
    fn q_oscillator_basic_relation() {
        let alg = GradedStarAlgebra::q_oscillator_symbolic();
        let p = alg.parse("a a*").unwrap();
        let nf = normal_form(&p, &alg).unwrap();
        let expected = alg.parse("q a* a + 1").unwrap();
        assert_eq!(nf, expected);
    }

    #[test]
    fn budget_guard_reports_error() {
        let alg = GradedStarAlgebra::q_oscillator_symbolic();
        let p = alg.parse("a^6 a*^6").unwrap();
        let err = normal_form_with_budget(&p, &alg, 5).unwrap_err();
        assert_eq!(err, RewriteError::BudgetExceeded { budget: 5 });
    }

    #[test]
    fn all_presets_are_locally_confluent() {
        for alg in GradedStarAlgebra::all_symbolic() {
            let pairs = critical_pairs(&alg).unwrap();
            assert!(!pairs.is_empty() || alg.rewrite_system().rules().len() == 1);
            for cp in pairs {
                assert!(cp.joinable(), "{}: overlap {} not joinable", alg.name(), alg.format_word(&cp.word));
            }
        }
    }

    #[test]
    fn normal_form_is_idempotent() {
        let alg = GradedStarAlgebra::uq_su2_symbolic();
        let p = alg.parse("E F E K F K^-1").unwrap();
        let nf = normal_form(&p, &alg).unwrap();
        assert_eq!(normal_form(&nf, &alg).unwrap(), nf);
        for (w, _) in nf.terms() {
            assert!(alg.rewrite_system().is_irreducible(w));
        }
    }
}
