//! Creation and annihilation operators on the (q,2)-Fock space.
//!
//! States are finite linear combinations of basis tensor words
//! `e_{i_1} ⊗ ... ⊗ e_{i_n}` with [`QPolynomial`] coefficients, so one pass
//! of operator application answers for every `q` at once. Nothing is ever
//! quotiented by the kernel of the deformed inner product.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{BigRational, One, Zero};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::algebra::{format_rational, parse_rational, QPolynomial};
use crate::error::{Error, Result};
use crate::pairings::EpsilonSequence;

/// Dimension used when the caller does not specify one.
pub const DEFAULT_DIMENSION: usize = 4;

/// A vector of a real Hilbert space, in coordinates of a fixed orthonormal
/// basis `e_1, ..., e_d` with `d >= 2`. Coordinates past `d` read as zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TestVector {
    coords: Vec<BigRational>,
}

impl TestVector {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionTooSmall(coords.len()));
        }
        Ok(Self { coords })
    }

    /// The basis vector `e_index` (1-based) of a `dim`-dimensional space.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index == 0 || index > dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} outside 1..={dim}"
            )));
        }
        let mut coords = vec![BigRational::zero(); dim];
        coords[index - 1] = BigRational::one();
        Self::new(coords)
    }

    /// `e_1` in the default dimension.
    pub fn e1() -> Self {
        Self::basis(DEFAULT_DIMENSION, 1).expect("default dimension is at least 2")
    }

    /// Parses comma separated rational coordinates, e.g. `"3/5,4/5"`.
    pub fn parse(text: &str) -> Result<Self> {
        let coords = text
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// `<self, e_index>` for a 1-based basis index.
    pub fn coord(&self, index: usize) -> BigRational {
        self.coords
            .get(index.wrapping_sub(1))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn inner(&self, other: &TestVector) -> BigRational {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .fold(BigRational::zero(), |acc, t| acc + t)
    }

    pub fn norm_sq(&self) -> BigRational {
        self.inner(self)
    }

    /// Non-zero coordinates as `(1-based index, value)`.
    fn support(&self) -> impl Iterator<Item = (usize, &BigRational)> + '_ {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i + 1, c))
    }
}

impl fmt::Display for TestVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for TestVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TestVector({self})")
    }
}

/// An elementary tensor of basis vectors; the empty word is the vacuum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BasisWord(pub Vec<usize>);

impl BasisWord {
    pub fn vacuum() -> Self {
        Self(Vec::new())
    }

    /// Particle number.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn prepend(&self, index: usize) -> Self {
        let mut indices = Vec::with_capacity(self.0.len() + 1);
        indices.push(index);
        indices.extend_from_slice(&self.0);
        Self(indices)
    }

    fn swap_last_two(&self) -> Self {
        let mut indices = self.0.clone();
        let n = indices.len();
        if n >= 2 {
            indices.swap(n - 2, n - 1);
        }
        Self(indices)
    }
}

impl fmt::Display for BasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for BasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite linear combination of basis words. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FockState {
    terms: BTreeMap<BasisWord, QPolynomial>,
}

impl FockState {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The vacuum vector.
    pub fn vacuum() -> Self {
        Self::scalar(QPolynomial::one())
    }

    pub fn scalar(value: QPolynomial) -> Self {
        Self::from_terms([(BasisWord::vacuum(), value)])
    }

    pub fn word(indices: &[usize]) -> Self {
        Self::from_terms([(BasisWord(indices.to_vec()), QPolynomial::one())])
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (BasisWord, QPolynomial)>,
    {
        let mut state = Self::zero();
        for (word, coeff) in terms {
            state.add_term(word, coeff);
        }
        state
    }

    fn add_term(&mut self, word: BasisWord, coeff: QPolynomial) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(slot) => {
                *slot += coeff;
                if slot.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, coeff);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisWord, &QPolynomial)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &BasisWord) -> QPolynomial {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    /// Coefficient of the vacuum.
    pub fn vacuum_coefficient(&self) -> QPolynomial {
        self.coeff(&BasisWord::vacuum())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no word other than the vacuum carries a coefficient.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(BasisWord::is_empty)
    }

    /// Distinct particle numbers present.
    pub fn levels(&self) -> BTreeSet<usize> {
        self.terms.keys().map(BasisWord::len).collect()
    }

    pub fn add(&self, other: &FockState) -> FockState {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &QPolynomial) -> FockState {
        FockState::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c * factor)))
    }

    /// `A^+(f)`: prepends `f` to every word.
    pub fn create(&self, f: &TestVector) -> FockState {
        let mut out = FockState::zero();
        for (word, coeff) in &self.terms {
            for (i, ci) in f.support() {
                out.add_term(word.prepend(i), coeff.scale(ci));
            }
        }
        out
    }

    /// `A(f)`: contracts `f` with the first factor, except on two-particle
    /// words where the second factor also contracts with weight `q`.
    pub fn annihilate(&self, f: &TestVector) -> FockState {
        let mut out = FockState::zero();
        for (word, coeff) in &self.terms {
            let g = &word.0;
            match g.len() {
                0 => {}
                2 => {
                    let first = f.coord(g[0]);
                    if !first.is_zero() {
                        out.add_term(BasisWord(vec![g[1]]), coeff.scale(&first));
                    }
                    let second = f.coord(g[1]);
                    if !second.is_zero() {
                        out.add_term(
                            BasisWord(vec![g[0]]),
                            (coeff * &QPolynomial::q()).scale(&second),
                        );
                    }
                }
                _ => {
                    let first = f.coord(g[0]);
                    if !first.is_zero() {
                        out.add_term(BasisWord(g[1..].to_vec()), coeff.scale(&first));
                    }
                }
            }
        }
        out
    }

    /// Substitutes `q = q0` in every coefficient.
    pub fn eval_q(&self, q0: &BigRational) -> Result<FockState> {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| Ok((w.clone(), QPolynomial::constant(c.eval(q0)?))))
            .collect::<Result<Vec<_>>>()?;
        Ok(FockState::from_terms(terms))
    }
}

impl fmt::Debug for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(w, c)| (w, c.to_string())))
            .finish()
    }
}

/// `{"[1,2]": {"0":"1","1":"1"}, ...}`
impl Serialize for FockState {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (w, c) in &self.terms {
            map.serialize_entry(&w.to_string(), c)?;
        }
        map.end()
    }
}

pub fn create(f: &TestVector, state: &FockState) -> FockState {
    state.create(f)
}

pub fn annihilate(f: &TestVector, state: &FockState) -> FockState {
    state.annihilate(f)
}

fn common_level(a: &FockState, b: &FockState) -> Result<Option<usize>> {
    let mut levels = a.levels();
    levels.extend(b.levels());
    match levels.len() {
        0 => Ok(None),
        1 => Ok(levels.into_iter().next()),
        _ => Err(Error::MixedLevels),
    }
}

fn tensor_inner(
    a: &FockState,
    b: &FockState,
    permute: impl Fn(&BasisWord) -> BasisWord,
) -> QPolynomial {
    b.terms
        .iter()
        .filter_map(|(w, cb)| a.terms.get(&permute(w)).map(|ca| ca * cb))
        .sum()
}

/// Deformed inner product `<F, G>_n = <F, G>_⊗ + q <F, σG>_⊗` for `n >= 2`,
/// with `σ` swapping the last two tensor factors; the plain tensor inner
/// product for `n <= 1`.
pub fn deformed_inner(f: &FockState, g: &FockState) -> Result<QPolynomial> {
    let Some(level) = common_level(f, g)? else {
        return Ok(QPolynomial::zero());
    };
    let plain = tensor_inner(f, g, BasisWord::clone);
    if level < 2 {
        return Ok(plain);
    }
    let swapped = tensor_inner(f, g, BasisWord::swap_last_two);
    Ok(&plain + &(&swapped * &QPolynomial::q()))
}

fn check_lengths(ops: &EpsilonSequence, tests: &[TestVector]) -> Result<()> {
    if ops.len() != tests.len() {
        return Err(Error::LengthMismatch {
            ops: ops.len(),
            tests: tests.len(),
        });
    }
    Ok(())
}

/// `A^{ε(1)}(f_1) ... A^{ε(m)}(f_m) Φ`, with `+1` a creator and `-1` an
/// annihilator; the rightmost operator acts first.
pub fn apply_word(ops: &EpsilonSequence, tests: &[TestVector]) -> Result<FockState> {
    check_lengths(ops, tests)?;
    let mut state = FockState::vacuum();
    for (&sign, f) in ops.values().iter().zip(tests).rev() {
        state = if sign == 1 {
            state.create(f)
        } else {
            state.annihilate(f)
        };
        if state.is_zero() {
            break;
        }
    }
    Ok(state)
}

/// `<Φ, A^{ε(1)}(f_1) ... A^{ε(m)}(f_m) Φ>` as a polynomial in `q`.
///
/// Zero for minus-class words. For plus-class words the resulting state is
/// checked to be a multiple of the vacuum.
pub fn vacuum_expectation(ops: &EpsilonSequence, tests: &[TestVector]) -> Result<QPolynomial> {
    check_lengths(ops, tests)?;
    if ops.is_empty() {
        return Ok(QPolynomial::one());
    }
    if !ops.classify()?.is_plus() {
        return Ok(QPolynomial::zero());
    }
    let state = apply_word(ops, tests)?;
    if !state.is_scalar() {
        return Err(Error::NonScalarResidue(format!("{state:?}")));
    }
    Ok(state.vacuum_coefficient())
}

/// The word `A(f) (A(f) A^+(f))^n A^+(f)` as a sign sequence.
pub fn sandwich_word(n: usize) -> EpsilonSequence {
    let mut values = vec![-1i64];
    for _ in 0..n {
        values.extend([-1, 1]);
    }
    values.push(1);
    EpsilonSequence::new(values).expect("only ±1 entries")
}

pub fn sandwich_state(n: usize, f: &TestVector) -> FockState {
    let word = sandwich_word(n);
    let tests = vec![f.clone(); word.len()];
    apply_word(&word, &tests).expect("lengths agree by construction")
}

/// Checks `A(f)(A(f)A^+(f))^n A^+(f) Φ = (1+q)^n ‖f‖^{2(n+1)} Φ` exactly.
pub fn sandwich_check(n: usize, f: &TestVector) -> bool {
    let mut norm_power = BigRational::one();
    for _ in 0..=n {
        norm_power *= f.norm_sq();
    }
    let expected = QPolynomial::one_plus_q().pow(n as u32).scale(&norm_power);
    sandwich_state(n, f) == FockState::scalar(expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;
    use crate::pairings::{all_words, plus_sequences};

    fn e(i: usize) -> TestVector {
        TestVector::basis(DEFAULT_DIMENSION, i).unwrap()
    }

    fn eps(values: &[i64]) -> EpsilonSequence {
        EpsilonSequence::new(values.iter().copied()).unwrap()
    }

    fn poly(coeffs: &[i64]) -> QPolynomial {
        QPolynomial::from_coeffs(coeffs)
    }

    #[test]
    fn test_vector_basics() {
        assert_eq!(
            TestVector::new(vec![rational(1, 1)]),
            Err(Error::DimensionTooSmall(1))
        );
        let f = TestVector::parse("3/5,4/5").unwrap();
        assert_eq!(f.norm_sq(), rational(1, 1));
        assert_eq!(f.coord(2), rational(4, 5));
        assert_eq!(f.coord(7), rational(0, 1));
        assert_eq!(f.to_string(), "3/5,4/5");
        assert!(TestVector::basis(4, 5).is_err());
    }

    #[test]
    fn create_examples() {
        assert_eq!(create(&e(1), &FockState::vacuum()), FockState::word(&[1]));
        assert_eq!(
            create(&e(2), &FockState::word(&[1])),
            FockState::word(&[2, 1])
        );
        let sum = TestVector::parse("1,1,0,0").unwrap();
        assert_eq!(
            create(&sum, &FockState::vacuum()),
            FockState::word(&[1]).add(&FockState::word(&[2]))
        );
    }

    #[test]
    fn annihilate_examples() {
        assert_eq!(
            annihilate(&e(1), &FockState::word(&[1])),
            FockState::vacuum()
        );
        assert_eq!(
            annihilate(&e(1), &FockState::word(&[1, 1])),
            FockState::word(&[1]).scale(&QPolynomial::one_plus_q())
        );
        assert!(annihilate(&e(1), &FockState::word(&[2, 1, 1])).is_zero());
        assert!(annihilate(&e(1), &FockState::vacuum()).is_zero());
        assert_eq!(
            annihilate(&e(2), &FockState::word(&[1, 2])),
            FockState::word(&[1]).scale(&QPolynomial::q())
        );
    }

    #[test]
    fn deformed_inner_examples() {
        let w = FockState::word;
        assert_eq!(deformed_inner(&w(&[1]), &w(&[1])).unwrap(), poly(&[1]));
        assert_eq!(
            deformed_inner(&w(&[1, 1]), &w(&[1, 1])).unwrap(),
            poly(&[1, 1])
        );
        assert_eq!(
            deformed_inner(&w(&[1, 2]), &w(&[2, 1])).unwrap(),
            poly(&[0, 1])
        );
        assert_eq!(
            deformed_inner(&w(&[3, 1, 2]), &w(&[3, 2, 1])).unwrap(),
            poly(&[0, 1])
        );
        assert_eq!(
            deformed_inner(&w(&[1, 2, 3]), &w(&[2, 1, 3])).unwrap(),
            QPolynomial::zero()
        );
        assert_eq!(
            deformed_inner(&w(&[1]), &w(&[1, 1])),
            Err(Error::MixedLevels)
        );
        let mixed = w(&[1]).add(&w(&[1, 2]));
        assert_eq!(deformed_inner(&mixed, &mixed), Err(Error::MixedLevels));
    }

    #[test]
    fn apply_word_examples() {
        let ones = |m: usize| vec![e(1); m];
        assert_eq!(
            apply_word(&eps(&[-1, 1]), &ones(2)).unwrap(),
            FockState::vacuum()
        );
        assert_eq!(
            apply_word(&eps(&[-1, -1, 1, 1]), &ones(4)).unwrap(),
            FockState::scalar(poly(&[1, 1]))
        );
        assert!(apply_word(&eps(&[1, -1]), &ones(2)).unwrap().is_zero());
        assert_eq!(
            apply_word(&eps(&[-1, 1]), &ones(3)),
            Err(Error::LengthMismatch { ops: 2, tests: 3 })
        );
    }

    #[test]
    fn vacuum_expectation_examples() {
        let ones = |m: usize| vec![e(1); m];
        assert_eq!(
            vacuum_expectation(&eps(&[-1, 1]), &ones(2)).unwrap(),
            poly(&[1])
        );
        assert_eq!(
            vacuum_expectation(&eps(&[-1, -1, 1, -1, 1, 1]), &ones(6)).unwrap(),
            poly(&[1, 2, 1])
        );
        assert_eq!(
            vacuum_expectation(&sandwich_word(2), &ones(6)).unwrap(),
            poly(&[1, 2, 1])
        );
        assert_eq!(
            vacuum_expectation(&eps(&[1, -1]), &ones(2)).unwrap(),
            QPolynomial::zero()
        );
        assert_eq!(
            vacuum_expectation(&eps(&[1]), &ones(1)).unwrap(),
            QPolynomial::zero()
        );
    }

    #[test]
    fn sandwich_examples() {
        assert!(sandwich_check(0, &e(1)));
        assert_eq!(
            sandwich_state(2, &e(1)),
            FockState::scalar(poly(&[1, 2, 1]))
        );
        let unit = TestVector::parse("3/5,4/5").unwrap();
        assert_eq!(sandwich_state(1, &unit), FockState::scalar(poly(&[1, 1])));
        for n in 0..=6 {
            assert!(sandwich_check(n, &e(1)), "n = {n}");
            assert!(sandwich_check(n, &unit), "n = {n}");
        }
        let long = TestVector::parse("1,2").unwrap();
        assert!(sandwich_check(3, &long));
    }

    #[test]
    fn minus_words_have_no_vacuum_component() {
        let tests: Vec<TestVector> = (0..8)
            .map(|i| TestVector::parse(&format!("{},1,-1,{}", i % 3, i)).unwrap())
            .collect();
        for len in 1..=8 {
            for word in all_words(len).filter(|w| !w.is_plus()) {
                let state = apply_word(&word, &tests[..len]).unwrap();
                assert!(state.vacuum_coefficient().is_zero(), "{word}");
            }
        }
    }

    #[test]
    fn plus_words_collapse_to_scalars() {
        let tests: Vec<TestVector> = (0..10)
            .map(|i| TestVector::parse(&format!("1,{},{}/2,-1", i % 4, i)).unwrap())
            .collect();
        for n in 1..=5 {
            for word in plus_sequences(n) {
                assert!(
                    apply_word(&word, &tests[..2 * n]).unwrap().is_scalar(),
                    "{word}"
                );
            }
        }
    }

    #[test]
    fn dump_json_shape() {
        let state = FockState::word(&[1, 2]).scale(&QPolynomial::one_plus_q());
        assert_eq!(
            serde_json::to_string(&state).unwrap(),
            r#"{"[1,2]":{"0":"1","1":"1"}}"#
        );
    }
}
