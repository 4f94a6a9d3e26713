//! Combinatorial route to vacuum moments.
//!
//! For a plus-class word `eps`, the index set `P_n(eps)` keeps every pair of
//! the counterpart at depth >= 2 fixed and lets the labels of the depth-0 and
//! depth-1 pairs be matched in every way compatible with their signs. The
//! moment is then `sum over theta in P_n(eps) of q^c(theta) * prod <f_l, f_r>`.

use num::{BigRational, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::QPolynomial;
use crate::error::{Error, Result};
use crate::fock::{vacuum_expectation, FockState, TestVector};
use crate::pairings::{
    counterpart, enumerate_pp_eps, glue, plus_sequences, EpsilonSequence, PairPartition,
};

/// The set `P_n(eps)` in factored form: fixed deep pairs plus the signed
/// shallow labels whose matchings are enumerated on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PSet {
    pub epsilon: EpsilonSequence,
    pub counterpart: PairPartition,
    /// Counterpart pairs of depth >= 2.
    pub fixed_pairs: Vec<(i64, i64)>,
    /// Labels of counterpart pairs of depth 0 or 1, increasing.
    pub shallow_ground: Vec<i64>,
    /// `eps` restricted to `shallow_ground`.
    pub shallow_eps: EpsilonSequence,
}

pub fn build_pset(eps: &EpsilonSequence) -> Result<PSet> {
    let theta = counterpart(eps)?;
    let depths = theta.depths()?;
    let mut fixed_pairs = Vec::new();
    let mut shallow_ground = Vec::new();
    for (&(l, r), &d) in theta.pairs().iter().zip(&depths) {
        if d >= 2 {
            fixed_pairs.push((l, r));
        } else {
            shallow_ground.extend([l, r]);
        }
    }
    shallow_ground.sort_unstable();
    let shallow_eps = EpsilonSequence::new(
        shallow_ground
            .iter()
            .map(|&label| i64::from(eps.at(label as usize))),
    )?;
    Ok(PSet {
        epsilon: eps.clone(),
        counterpart: theta,
        fixed_pairs,
        shallow_ground,
        shallow_eps,
    })
}

impl PSet {
    /// Members of `P_n(eps)`, in the order of the shallow enumeration.
    pub fn members(&self) -> impl Iterator<Item = PairPartition> + '_ {
        let fixed = PairPartition::from_pairs(self.fixed_pairs.clone())
            .expect("deep pairs are a sub-matching of the counterpart");
        enumerate_pp_eps(&self.shallow_eps)
            .expect("restriction of a plus word to a union of its pairs is plus")
            .map(move |local| {
                let shallow = local.map_labels(|i| self.shallow_ground[(i - 1) as usize]);
                glue(&[fixed.clone(), shallow]).expect("shallow and deep labels are disjoint")
            })
    }

    pub fn cardinality(&self) -> usize {
        self.members().count()
    }
}

pub fn pset_cardinality(eps: &EpsilonSequence) -> Result<usize> {
    Ok(build_pset(eps)?.cardinality())
}

/// `|P_n|`, summed over all plus-class words of length `2n`.
pub fn total_cardinality(n: usize) -> usize {
    plus_sequences(n)
        .par_iter()
        .map(|eps| pset_cardinality(eps).expect("plus_sequences yields plus words"))
        .sum()
}

fn pair_weight(theta: &PairPartition, tests: &[TestVector]) -> BigRational {
    let mut weight = BigRational::from_integer(1.into());
    for &(l, r) in theta.pairs() {
        weight *= tests[(l - 1) as usize].inner(&tests[(r - 1) as usize]);
        if weight.is_zero() {
            break;
        }
    }
    weight
}

/// `sum over theta in P_n(eps) of q^c(theta) * prod_h <f_{l_h}, f_{r_h}>`.
pub fn moment_combinatorial(eps: &EpsilonSequence, tests: &[TestVector]) -> Result<QPolynomial> {
    eps.classify()?;
    let pset = build_pset(eps)?;
    if tests.len() != eps.len() {
        return Err(Error::LengthMismatch {
            ops: eps.len(),
            tests: tests.len(),
        });
    }
    let mut total = QPolynomial::zero();
    for theta in pset.members() {
        let weight = pair_weight(&theta, tests);
        total += QPolynomial::monomial(weight, theta.crossing_number() as i64);
    }
    Ok(total)
}

/// Both routes to one vacuum moment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentReport {
    pub epsilon: EpsilonSequence,
    #[serde(rename = "operator")]
    pub operator_value: QPolynomial,
    #[serde(rename = "combinatorial")]
    pub combinatorial_value: QPolynomial,
    pub agree: bool,
}

pub fn cross_check(eps: &EpsilonSequence, tests: &[TestVector]) -> Result<MomentReport> {
    let combinatorial_value = moment_combinatorial(eps, tests)?;
    let operator_value = vacuum_expectation(eps, tests)?;
    Ok(MomentReport {
        epsilon: eps.clone(),
        agree: operator_value == combinatorial_value,
        operator_value,
        combinatorial_value,
    })
}

/// `<Φ, (A(e_1) + A^+(e_1))^{2n} Φ>` as the sum of vacuum expectations over
/// plus-class words (operator route).
pub fn total_moment(n: usize) -> QPolynomial {
    let tests = vec![TestVector::e1(); 2 * n];
    plus_sequences(n)
        .par_iter()
        .map(|eps| vacuum_expectation(eps, &tests).expect("lengths agree"))
        .collect::<Vec<_>>()
        .into_iter()
        .sum()
}

/// Same moment as [`total_moment`], summed over `P_n` with weight `q^c(theta)`.
pub fn total_moment_combinatorial(n: usize) -> QPolynomial {
    plus_sequences(n)
        .par_iter()
        .map(|eps| {
            build_pset(eps)
                .expect("plus word")
                .members()
                .map(|theta| {
                    QPolynomial::monomial(
                        BigRational::from_integer(1.into()),
                        theta.crossing_number() as i64,
                    )
                })
                .sum::<QPolynomial>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum()
}

/// Applies the field operator `A(f) + A^+(f)` `2n` times to the vacuum and
/// reads off the vacuum coefficient, without splitting into words.
pub fn field_moment(n: usize, f: &TestVector) -> QPolynomial {
    let mut state = FockState::vacuum();
    for _ in 0..2 * n {
        state = state.annihilate(f).add(&state.create(f));
    }
    state.vacuum_coefficient()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::DEFAULT_DIMENSION;

    fn eps(values: &[i64]) -> EpsilonSequence {
        EpsilonSequence::new(values.iter().copied()).unwrap()
    }

    fn pp(pairs: &[(i64, i64)]) -> PairPartition {
        PairPartition::from_pairs(pairs.to_vec()).unwrap()
    }

    fn poly(coeffs: &[i64]) -> QPolynomial {
        QPolynomial::from_coeffs(coeffs)
    }

    fn e(i: usize) -> TestVector {
        TestVector::basis(DEFAULT_DIMENSION, i).unwrap()
    }

    #[test]
    fn pset_examples() {
        let p = build_pset(&eps(&[-1, -1, 1, 1])).unwrap();
        assert!(p.fixed_pairs.is_empty());
        assert_eq!(
            p.members().collect::<Vec<_>>(),
            vec![pp(&[(1, 3), (2, 4)]), pp(&[(1, 4), (2, 3)])]
        );

        let p = build_pset(&eps(&[-1, 1, -1, 1])).unwrap();
        assert_eq!(p.members().collect::<Vec<_>>(), vec![pp(&[(1, 2), (3, 4)])]);

        let p = build_pset(&eps(&[-1, -1, -1, 1, 1, 1])).unwrap();
        assert_eq!(p.counterpart, pp(&[(1, 6), (2, 5), (3, 4)]));
        assert_eq!(p.fixed_pairs, vec![(3, 4)]);
        assert_eq!(p.shallow_ground, vec![1, 2, 5, 6]);
        assert_eq!(p.shallow_eps, eps(&[-1, -1, 1, 1]));
        assert_eq!(
            p.members().collect::<Vec<_>>(),
            vec![pp(&[(1, 5), (2, 6), (3, 4)]), pp(&[(1, 6), (2, 5), (3, 4)])]
        );

        assert!(matches!(
            build_pset(&eps(&[1, -1])),
            Err(Error::NotPlusClass(_))
        ));
    }

    #[test]
    fn cardinality_totals() {
        assert_eq!(total_cardinality(2), 3);
        assert_eq!(total_cardinality(3), 11);
        assert_eq!(total_cardinality(6), 707);
    }

    #[test]
    fn combinatorial_examples() {
        let ones = |m: usize| vec![e(1); m];
        assert_eq!(
            moment_combinatorial(&eps(&[-1, -1, 1, 1]), &ones(4)).unwrap(),
            poly(&[1, 1])
        );
        assert_eq!(
            moment_combinatorial(&eps(&[-1, 1, -1, 1]), &ones(4)).unwrap(),
            poly(&[1])
        );
        assert_eq!(
            moment_combinatorial(&eps(&[-1, -1, 1, 1]), &[e(1), e(2), e(2), e(1)]).unwrap(),
            poly(&[1])
        );
        assert!(matches!(
            moment_combinatorial(&eps(&[-1, 1]), &ones(3)),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            moment_combinatorial(&eps(&[1, 1]), &ones(2)),
            Err(Error::NotPlusClass(_))
        ));
    }

    #[test]
    fn cross_check_examples() {
        let ones = |m: usize| vec![e(1); m];
        let r = cross_check(&eps(&[-1, -1, 1, 1]), &ones(4)).unwrap();
        assert!(r.agree);
        assert_eq!(r.operator_value, poly(&[1, 1]));

        let r = cross_check(&eps(&[-1, 1, -1, 1]), &ones(4)).unwrap();
        assert!(r.agree);
        assert_eq!(r.combinatorial_value, poly(&[1]));

        let deep = eps(&[-1, -1, -1, 1, 1, 1]);
        let r = cross_check(&deep, &ones(6)).unwrap();
        assert!(r.agree);
        let weighted: QPolynomial = build_pset(&deep)
            .unwrap()
            .members()
            .map(|t| {
                QPolynomial::monomial(
                    BigRational::from_integer(1.into()),
                    t.crossing_number() as i64,
                )
            })
            .sum();
        assert_eq!(r.operator_value, weighted);
    }

    #[test]
    fn total_moment_examples() {
        assert_eq!(total_moment(2), poly(&[2, 1]));
        assert_eq!(
            total_moment(2)
                .eval(&BigRational::from_integer(1.into()))
                .unwrap(),
            BigRational::from_integer(3.into())
        );
        assert_eq!(
            total_moment(3)
                .eval(&BigRational::from_integer(1.into()))
                .unwrap(),
            BigRational::from_integer(11.into())
        );
        for n in 1..=5 {
            assert_eq!(total_moment(n), total_moment_combinatorial(n), "n = {n}");
            assert_eq!(total_moment(n), field_moment(n, &e(1)), "n = {n}");
        }
    }

    #[test]
    fn report_json_shape() {
        let r = cross_check(&eps(&[-1, 1]), &[e(1), e(1)]).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"epsilon":[-1,1],"operator":{"0":"1"},"combinatorial":{"0":"1"},"agree":true}"#
        );
    }
}
