//! Self-checks that run each identity through independent routes.
//!
//! Every suite returns a [`SuiteReport`]; a check passes only if all of its
//! cases agree exactly. Randomized checks draw from a seeded ChaCha stream,
//! so reports are reproducible.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{rational, QPolynomial};
use crate::error::{Error, Result};
use crate::fock::{
    apply_word, deformed_inner, sandwich_check, vacuum_expectation, BasisWord, FockState,
    TestVector, DEFAULT_DIMENSION,
};
use crate::moments::{build_pset, cross_check, field_moment, total_cardinality, total_moment};
use crate::pairings::{
    all_words, counterpart, enumerate_ncpp, enumerate_pp, enumerate_pp_eps, plus_sequences,
    pp_eps_count_formula, EpsilonClass, EpsilonSequence,
};
use crate::sequences::{
    binomial, catalan, catalan_convolution, double_factorial_odd, u_closed, u_recurrence_values,
    verify_u_generating_function, verify_w_generating_function, w_closed, w_direct, w_operator,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    /// Passes when `failures` is empty; otherwise reports the first few.
    fn from_failures(name: &str, cases: usize, failures: Vec<String>) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            format!("{cases} cases")
        } else {
            let shown: Vec<_> = failures.iter().take(3).cloned().collect();
            format!("{} of {cases} failed: {}", failures.len(), shown.join("; "))
        };
        Self {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "[{}] {}",
            if self.passed() { "ok" } else { "FAILED" },
            self.name
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "  {} {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyParams {
    /// Largest `n` (half word length) checked.
    pub max: usize,
    pub seed: u64,
    /// Random samples per `n` in randomized checks.
    pub trials: usize,
}

impl Default for VerifyParams {
    fn default() -> Self {
        Self {
            max: 5,
            seed: 42,
            trials: 20,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Convolution,
    Counterpart,
    Fock,
    Moments,
    Genfun,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Convolution,
        Suite::Counterpart,
        Suite::Fock,
        Suite::Moments,
        Suite::Genfun,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Convolution => "convolution",
            Suite::Counterpart => "counterpart",
            Suite::Fock => "fock",
            Suite::Moments => "moments",
            Suite::Genfun => "genfun",
        }
    }

    pub fn run(self, params: &VerifyParams) -> SuiteReport {
        match self {
            Suite::Convolution => verify_convolution(params.max),
            Suite::Counterpart => verify_counterpart(params.max),
            Suite::Fock => verify_fock(params),
            Suite::Moments => verify_moments(params),
            Suite::Genfun => verify_genfun(params.max),
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

pub fn verify_all(params: &VerifyParams) -> Vec<SuiteReport> {
    Suite::ALL.iter().map(|s| s.run(params)).collect()
}

fn report(name: &str, checks: Vec<CheckResult>) -> SuiteReport {
    SuiteReport {
        name: name.to_string(),
        checks,
    }
}

/// Collects the failure messages of `case` over `items`, in order.
fn failures_over<T, F>(items: &[T], case: F) -> Vec<String>
where
    T: Sync,
    F: Fn(&T) -> Option<String> + Sync + Send,
{
    items.par_iter().filter_map(case).collect()
}

fn int(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

pub fn verify_convolution(max: usize) -> SuiteReport {
    let pairs: Vec<(usize, usize)> = (1..=max)
        .flat_map(|n| (1..=n).map(move |m| (n, m)))
        .collect();
    let conv = CheckResult::from_failures(
        "brute force equals closed form",
        pairs.len(),
        failures_over(&pairs, |&(n, m)| {
            catalan_convolution(n, m).err().map(|e| e.to_string())
        }),
    );

    let ns: Vec<usize> = (0..=max).collect();
    let w_routes = CheckResult::from_failures(
        "w_n direct equals Laurent closed form",
        ns.len(),
        failures_over(&ns, |&n| match w_closed(n) {
            Ok(closed) if closed == w_direct(n) => None,
            Ok(closed) => Some(format!("n={n}: {} vs {closed}", w_direct(n))),
            Err(e) => Some(format!("n={n}: {e}")),
        }),
    );
    let w_special = CheckResult::from_failures(
        "w_n(1) = binom(2n,n), w_n(0) = C_n, degree n",
        ns.len(),
        failures_over(&ns, |&n| {
            let w = w_direct(n);
            let at_one = w.eval(&BigRational::one()).ok()? == int(binomial(2 * n, n));
            let at_zero = w.coeff(0) == int(catalan(n));
            let degree = w.degree() == Some(n as i64);
            (!(at_one && at_zero && degree)).then(|| format!("n={n}: {w}"))
        }),
    );
    report("convolution", vec![conv, w_routes, w_special])
}

pub fn verify_counterpart(max: usize) -> SuiteReport {
    let words: Vec<EpsilonSequence> = (1..=max).flat_map(plus_sequences).collect();

    let round_trip = CheckResult::from_failures(
        "counterpart is non-crossing with tau = eps",
        words.len(),
        failures_over(&words, |eps| {
            let theta = counterpart(eps).ok()?;
            (!(theta.is_noncrossing() && &theta.tau() == eps)).then(|| format!("{eps}"))
        }),
    );

    let small: Vec<&EpsilonSequence> = words.iter().filter(|e| e.len() <= 10).collect();
    let unique = CheckResult::from_failures(
        "counterpart is the only non-crossing partition with tau = eps",
        small.len(),
        failures_over(&small, |eps| {
            let hits = enumerate_ncpp(eps.len() / 2)
                .filter(|t| &t.tau() == *eps)
                .count();
            (hits != 1).then(|| format!("{eps}: {hits} matches"))
        }),
    );

    let count = CheckResult::from_failures(
        "|PP(2n, eps)| = prod (2h - l_h)",
        small.len(),
        failures_over(&small, |eps| {
            let listed = enumerate_pp_eps(eps).ok()?.count() as u128;
            let formula = pp_eps_count_formula(eps).ok()?;
            (listed != formula).then(|| format!("{eps}: {listed} vs {formula}"))
        }),
    );

    let components = CheckResult::from_failures(
        "closed component count = n_eps",
        words.len(),
        failures_over(&words, |eps| {
            let found = counterpart(eps)
                .ok()?
                .closed_components()
                .ok()?
                .components
                .len();
            let expected = eps.n_epsilon().ok()?;
            (found != expected).then(|| format!("{eps}: {found} vs {expected}"))
        }),
    );

    let star = CheckResult::from_failures(
        "plus-star iff (1, 2n) is a pair",
        words.len(),
        failures_over(&words, |eps| {
            let is_star = eps.classify().ok()? == EpsilonClass::PlusStar;
            let outer = counterpart(eps).ok()?.contains_pair((1, eps.len() as i64));
            (is_star != outer).then(|| format!("{eps}"))
        }),
    );

    let ns: Vec<usize> = (1..=max.min(6)).collect();
    let counts = CheckResult::from_failures(
        "|NCPP(2n)| = C_n and |PP(2n)| = (2n-1)!!",
        ns.len(),
        failures_over(&ns, |&n| {
            let nc = BigInt::from(enumerate_ncpp(n).count());
            let all = BigInt::from(enumerate_pp(n).count());
            (nc != catalan(n) || all != double_factorial_odd(n)).then(|| format!("n={n}"))
        }),
    );

    report(
        "counterpart",
        vec![round_trip, unique, count, components, star, counts],
    )
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    rational(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

fn random_test_vector(rng: &mut ChaCha8Rng) -> TestVector {
    TestVector::new(
        (0..DEFAULT_DIMENSION)
            .map(|_| random_rational(rng))
            .collect(),
    )
    .expect("dimension is at least 2")
}

/// A random combination of up to four basis words of the given level.
fn random_state(rng: &mut ChaCha8Rng, level: usize) -> FockState {
    let terms = rng.gen_range(1..=4);
    FockState::from_terms((0..terms).map(|_| {
        let word = (0..level)
            .map(|_| rng.gen_range(1..=DEFAULT_DIMENSION))
            .collect();
        (BasisWord(word), QPolynomial::constant(random_rational(rng)))
    }))
}

fn ones(len: usize) -> Vec<TestVector> {
    vec![TestVector::e1(); len]
}

pub fn verify_fock(params: &VerifyParams) -> SuiteReport {
    let max = params.max;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let mut adjoint_failures = Vec::new();
    let mut adjoint_cases = 0;
    for n in 0..=max.min(4) {
        for _ in 0..params.trials {
            let f = random_test_vector(&mut rng);
            let g = random_state(&mut rng, n);
            let h = random_state(&mut rng, n + 1);
            let lhs = deformed_inner(&g.create(&f), &h);
            let rhs = deformed_inner(&g, &h.annihilate(&f));
            adjoint_cases += 1;
            match (lhs, rhs) {
                (Ok(a), Ok(b)) if a == b => {}
                (a, b) => adjoint_failures.push(format!("level {n}: {a:?} vs {b:?}")),
            }
        }
    }
    let adjoint =
        CheckResult::from_failures("<A+(f)G, H> = <G, A(f)H>", adjoint_cases, adjoint_failures);

    let minus: Vec<EpsilonSequence> = (1..=2 * max.min(4))
        .flat_map(all_words)
        .filter(|w| {
            w.classify()
                .map(|c| c == EpsilonClass::Minus)
                .unwrap_or(false)
        })
        .collect();
    let minus_zero = CheckResult::from_failures(
        "minus words have zero vacuum expectation",
        minus.len(),
        failures_over(&minus, |eps| {
            let tests = ones(eps.len());
            let value = apply_word(eps, &tests).ok()?.vacuum_coefficient();
            (!value.is_zero()).then(|| format!("{eps}: {value}"))
        }),
    );

    let sandwich_ns: Vec<usize> = (0..=max).collect();
    let sandwich = CheckResult::from_failures(
        "A(f)(A(f)A+(f))^n A+(f) collapses to the vacuum",
        sandwich_ns.len() * 2,
        failures_over(&sandwich_ns, |&n| {
            let f = TestVector::parse("1,2,0,-1").expect("valid vector");
            (!(sandwich_check(n, &TestVector::e1()) && sandwich_check(n, &f)))
                .then(|| format!("n={n}"))
        }),
    );

    let words: Vec<EpsilonSequence> = (1..=max.min(5)).flat_map(plus_sequences).collect();
    let collapse_cases: Vec<(&EpsilonSequence, Vec<TestVector>)> = words
        .iter()
        .map(|eps| {
            (
                eps,
                (0..eps.len())
                    .map(|_| random_test_vector(&mut rng))
                    .collect(),
            )
        })
        .collect();
    let collapse = CheckResult::from_failures(
        "plus words send the vacuum to a multiple of the vacuum",
        collapse_cases.len(),
        failures_over(&collapse_cases, |(eps, tests)| {
            let state = apply_word(eps, tests).ok()?;
            (!state.is_scalar()).then(|| format!("{eps}"))
        }),
    );

    let extended = CheckResult::from_failures(
        "extended plus words give (1+q)^{n_eps}",
        words.len(),
        failures_over(&words, |eps| {
            let word = eps.extended();
            let value = vacuum_expectation(&word, &ones(word.len())).ok()?;
            let expected = QPolynomial::one_plus_q().pow(eps.n_epsilon().ok()? as u32);
            (value != expected).then(|| format!("{eps}: {value}"))
        }),
    );

    let ns: Vec<usize> = (1..=max.min(6)).collect();
    let weighted = CheckResult::from_failures(
        "sum over extended words equals w_n, and C_n at q = 0",
        ns.len(),
        failures_over(&ns, |&n| {
            let w = w_operator(n);
            let free = total_moment(n).coeff(0) == int(catalan(n));
            (w != w_direct(n) || !free).then(|| format!("n={n}: {w}"))
        }),
    );

    report(
        "fock",
        vec![adjoint, minus_zero, sandwich, collapse, extended, weighted],
    )
}

pub fn verify_moments(params: &VerifyParams) -> SuiteReport {
    let max = params.max;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let words: Vec<EpsilonSequence> = (1..=max.min(4)).flat_map(plus_sequences).collect();
    let deterministic = CheckResult::from_failures(
        "operator and combinatorial routes agree with f_i = e_1",
        words.len(),
        failures_over(&words, |eps| match cross_check(eps, &ones(eps.len())) {
            Ok(r) if r.agree => None,
            Ok(r) => Some(format!(
                "{eps}: {} vs {}",
                r.operator_value, r.combinatorial_value
            )),
            Err(e) => Some(format!("{eps}: {e}")),
        }),
    );

    let mut samples = Vec::new();
    for n in 1..=max.min(4) {
        let candidates = plus_sequences(n);
        for _ in 0..params.trials {
            let eps = candidates
                .choose(&mut rng)
                .expect("nonempty for n >= 1")
                .clone();
            let tests: Vec<TestVector> = (0..2 * n).map(|_| random_test_vector(&mut rng)).collect();
            samples.push((eps, tests));
        }
    }
    let random = CheckResult::from_failures(
        "routes agree on seeded random rational test vectors",
        samples.len(),
        failures_over(&samples, |(eps, tests)| match cross_check(eps, tests) {
            Ok(r) if r.agree => None,
            Ok(r) => Some(format!(
                "{eps}: {} vs {}",
                r.operator_value, r.combinatorial_value
            )),
            Err(e) => Some(format!("{eps}: {e}")),
        }),
    );

    let u = u_recurrence_values(max);
    let ns: Vec<usize> = (1..=max).collect();
    let cardinality = CheckResult::from_failures(
        "sum of |P_n(eps)| equals u_n from the recurrence and the closed form",
        ns.len(),
        failures_over(&ns, |&n| {
            let total = BigInt::from(total_cardinality(n));
            (total != u[n] || total != u_closed(n)).then(|| format!("n={n}: {total} vs {}", u[n]))
        }),
    );

    let bounds = CheckResult::from_failures(
        "C_n <= u_n <= (2n-1)!!, strict for n >= 3",
        ns.len(),
        failures_over(&ns, |&n| {
            let (lo, hi) = (catalan(n), double_factorial_odd(n));
            let ok = if n >= 3 {
                lo < u[n] && u[n] < hi
            } else {
                lo <= u[n] && u[n] <= hi
            };
            (!ok).then(|| format!("n={n}: {lo} / {} / {hi}", u[n]))
        }),
    );

    let small_ns: Vec<usize> = (1..=max.min(4)).collect();
    let disjoint = CheckResult::from_failures(
        "P_n(eps) are pairwise disjoint",
        small_ns.len(),
        failures_over(&small_ns, |&n| {
            let mut seen = HashSet::new();
            let mut total = 0;
            for eps in plus_sequences(n) {
                for theta in build_pset(&eps).ok()?.members() {
                    total += 1;
                    seen.insert(theta);
                }
            }
            (seen.len() != total).then(|| format!("n={n}: {} distinct of {total}", seen.len()))
        }),
    );

    let threshold_words: Vec<EpsilonSequence> = (1..=max.min(5)).flat_map(plus_sequences).collect();
    let threshold = CheckResult::from_failures(
        "members keep every deep pair and the sign pattern of eps",
        threshold_words.len(),
        failures_over(&threshold_words, |eps| {
            let pset = build_pset(eps).ok()?;
            let bad = pset.members().find(|theta| {
                &theta.tau() != eps || !pset.fixed_pairs.iter().all(|&p| theta.contains_pair(p))
            });
            bad.map(|theta| format!("{eps}: {theta}"))
        }),
    );

    let field_ns: Vec<usize> = (1..=max.min(5)).collect();
    let field = CheckResult::from_failures(
        "field moment equals the sum of word moments",
        field_ns.len(),
        failures_over(&field_ns, |&n| {
            let by_words = total_moment(n);
            let by_field = field_moment(n, &TestVector::e1());
            (by_words != by_field).then(|| format!("n={n}: {by_words} vs {by_field}"))
        }),
    );

    report(
        "moments",
        vec![
            deterministic,
            random,
            cardinality,
            bounds,
            disjoint,
            threshold,
            field,
        ],
    )
}

pub fn verify_genfun(max: usize) -> SuiteReport {
    let samples = [
        rational(1, 1),
        rational(1, 2),
        rational(2, 1),
        rational(-1, 3),
    ];
    let w = CheckResult::from_failures(
        "W(x) (1 - (1+q)/2 (1 - sqrt(1-4x))) = 1",
        samples.len(),
        failures_over(&samples, |q0| {
            (!verify_w_generating_function(max, q0)).then(|| format!("q={q0}"))
        }),
    );
    let u = CheckResult::from_failures(
        "U(x) (1 - 4x - x^2) = 1 - 4x + x sqrt(1-4x)",
        1,
        if verify_u_generating_function(max) {
            Vec::new()
        } else {
            vec![format!("order {max}")]
        },
    );
    report("genfun", vec![w, u])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_small() {
        let params = VerifyParams {
            max: 4,
            seed: 7,
            trials: 5,
        };
        for r in verify_all(&params) {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let params = VerifyParams {
            max: 3,
            seed: 11,
            trials: 4,
        };
        assert_eq!(verify_moments(&params), verify_moments(&params));
    }

    #[test]
    fn failure_detail_lists_cases() {
        let c = CheckResult::from_failures("x", 3, vec!["a".into(), "b".into()]);
        assert!(!c.passed);
        assert_eq!(c.detail, "2 of 3 failed: a; b");
        assert_eq!("fock".parse::<Suite>().unwrap(), Suite::Fock);
        assert!("nope".parse::<Suite>().is_err());
    }
}
