use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::{BigRational, One, Signed, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, parse_rational};
use crate::error::{Error, Result};

/// Laurent polynomial in the formal parameter `q` with exact rational
/// coefficients.
///
/// Stored as a sparse exponent -> coefficient map with no zero entries, so
/// derived equality is structural equality of normalized polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    terms: BTreeMap<i64, BigRational>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(value: BigRational) -> Self {
        Self::monomial(value, 0)
    }

    /// The polynomial `q`.
    pub fn q() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    /// `1 + q`.
    pub fn one_plus_q() -> Self {
        Self::one() + Self::q()
    }

    pub fn monomial(coeff: BigRational, exponent: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let mut poly = Self::zero();
        for (exp, coeff) in terms {
            poly.add_term(exp, coeff);
        }
        poly
    }

    /// Builds `c_0 + c_1 q + c_2 q^2 + ...` from integer coefficients.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (i as i64, BigRational::from_integer(c.into()))),
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exponent: i64) -> BigRational {
        self.terms
            .get(&exponent)
            .cloned()
            .unwrap_or_else(BigRational::zero)
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

    /// Highest exponent with a non-zero coefficient.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent with a non-zero coefficient.
    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// True when some stored exponent is negative.
    pub fn is_laurent(&self) -> bool {
        self.min_exponent().is_some_and(|e| e < 0)
    }

    /// The value of a polynomial with only a constant term.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, exponent: i64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponent).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * factor)).collect(),
        }
    }

    /// Multiplies by `q^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + shift, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact value at `q = q0`.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational> {
        if q0.is_zero() {
            if self.is_laurent() {
                return Err(Error::EvalAtZeroWithNegativeExponent);
            }
            return Ok(self.coeff(0));
        }
        Ok(self
            .terms
            .iter()
            .map(|(&e, c)| c * rational_pow(q0, e))
            .fold(BigRational::zero(), |acc, t| acc + t))
    }
}

fn rational_pow(base: &BigRational, exponent: i64) -> BigRational {
    let mut result = BigRational::one();
    for _ in 0..exponent.unsigned_abs() {
        result *= base;
    }
    if exponent < 0 {
        result.recip()
    } else {
        result
    }
}

impl From<BigRational> for QPolynomial {
    fn from(value: BigRational) -> Self {
        Self::constant(value)
    }
}

impl From<i64> for QPolynomial {
    fn from(value: i64) -> Self {
        Self::constant(BigRational::from_integer(value.into()))
    }
}

impl Add<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&QPolynomial> for QPolynomial {
    fn add_assign(&mut self, rhs: &QPolynomial) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl AddAssign for QPolynomial {
    fn add_assign(&mut self, rhs: QPolynomial) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;

    fn neg(self) -> QPolynomial {
        QPolynomial {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;

    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident::$method:ident),*) => {$(
        impl $tr for QPolynomial {
            type Output = QPolynomial;
            fn $method(self, rhs: QPolynomial) -> QPolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QPolynomial> for QPolynomial {
            type Output = QPolynomial;
            fn $method(self, rhs: &QPolynomial) -> QPolynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<QPolynomial> for &QPolynomial {
            type Output = QPolynomial;
            fn $method(self, rhs: QPolynomial) -> QPolynomial {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for QPolynomial {
    type Output = QPolynomial;

    fn neg(self) -> QPolynomial {
        -&self
    }
}

impl std::iter::Sum for QPolynomial {
    fn sum<I: Iterator<Item = QPolynomial>>(iter: I) -> Self {
        iter.fold(QPolynomial::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

/// Ascending-exponent form, e.g. `2 + 3q + q^2`, `1 - (1/2)q^-1`.
impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if e == 0 {
                f.write_str(&format_rational(&magnitude))?;
                continue;
            }
            if !magnitude.is_one() {
                if magnitude.is_integer() {
                    write!(f, "{}", magnitude.numer())?;
                } else {
                    write!(f, "({})", format_rational(&magnitude))?;
                }
            }
            if e == 1 {
                f.write_str("q")?;
            } else {
                write!(f, "q^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial({self})")
    }
}

impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            map.serialize_entry(&e.to_string(), &format_rational(c))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for QPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct TermsVisitor;

        impl<'de> Visitor<'de> for TermsVisitor {
            type Value = QPolynomial;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from exponent strings to rational strings")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut access: A,
            ) -> std::result::Result<QPolynomial, A::Error> {
                let mut poly = QPolynomial::zero();
                while let Some((exp, coeff)) = access.next_entry::<String, String>()? {
                    let exp: i64 = exp
                        .trim()
                        .parse()
                        .map_err(|_| de::Error::custom(format!("bad exponent {exp:?}")))?;
                    let coeff = parse_rational(&coeff).map_err(de::Error::custom)?;
                    poly.add_term(exp, coeff);
                }
                Ok(poly)
            }
        }

        deserializer.deserialize_map(TermsVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;
    use proptest::prelude::*;

    fn poly(coeffs: &[i64]) -> QPolynomial {
        QPolynomial::from_coeffs(coeffs)
    }

    #[test]
    fn eval_examples() {
        let one_plus_q = QPolynomial::one_plus_q();
        assert_eq!(one_plus_q.eval(&rational(1, 1)).unwrap(), rational(2, 1));
        assert_eq!(
            one_plus_q.pow(2).eval(&rational(-1, 1)).unwrap(),
            rational(0, 1)
        );
        let laurent = one_plus_q.shift(-1);
        assert_eq!(laurent.eval(&rational(1, 2)).unwrap(), rational(3, 1));
    }

    #[test]
    fn eval_laurent_at_zero_fails() {
        let laurent = QPolynomial::one_plus_q().shift(-1);
        assert_eq!(
            laurent.eval(&rational(0, 1)),
            Err(Error::EvalAtZeroWithNegativeExponent)
        );
        assert_eq!(poly(&[5, 1]).eval(&rational(0, 1)).unwrap(), rational(5, 1));
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = poly(&[1, 2, 3]);
        assert!((&p - &p).is_zero());
        let q = &poly(&[0, 1]) + &poly(&[0, -1]);
        assert_eq!(q.len(), 0);
        assert_eq!(q, QPolynomial::zero());
    }

    #[test]
    fn display_forms() {
        assert_eq!(poly(&[2, 3, 1]).to_string(), "2 + 3q + q^2");
        assert_eq!(poly(&[1, -1]).to_string(), "1 - q");
        assert_eq!(poly(&[0, 0, -2]).to_string(), "-2q^2");
        assert_eq!(QPolynomial::zero().to_string(), "0");
        let p = QPolynomial::from_terms([(-1, rational(-1, 2)), (0, rational(1, 1))]);
        assert_eq!(p.to_string(), "-(1/2)q^-1 + 1");
    }

    #[test]
    fn json_shape() {
        let p = QPolynomial::one_plus_q();
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"0":"1","1":"1"}"#);
        let back: QPolynomial = serde_json::from_str(r#"{"-2":"3/4","10":"-1"}"#).unwrap();
        assert_eq!(back.coeff(-2), rational(3, 4));
        assert_eq!(back.degree(), Some(10));
        assert!(serde_json::from_str::<QPolynomial>(r#"{"x":"1"}"#).is_err());
        assert!(serde_json::from_str::<QPolynomial>(r#"{"1":"1/0"}"#).is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let base = poly(&[1, 1]);
        let mut expected = QPolynomial::one();
        for k in 0..6u32 {
            assert_eq!(base.pow(k), expected);
            expected = &expected * &base;
        }
        assert_eq!(base.pow(3), poly(&[1, 3, 3, 1]));
    }

    fn arb_poly() -> impl Strategy<Value = QPolynomial> {
        prop::collection::vec(-9i64..=9, 0..=7).prop_map(|c| poly(&c))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn eval_is_a_homomorphism(a in arb_poly(), b in arb_poly(), num in -6i64..=6, den in 1i64..=5) {
            let q0 = rational(num, den);
            let lhs = (&a * &b).eval(&q0).unwrap();
            let rhs = a.eval(&q0).unwrap() * b.eval(&q0).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!((&a + &b).eval(&q0).unwrap(), a.eval(&q0).unwrap() + b.eval(&q0).unwrap());
        }

        #[test]
        fn json_round_trip(a in arb_poly(), shift in -3i64..=3) {
            let p = a.shift(shift);
            let text = serde_json::to_string(&p).unwrap();
            let back: QPolynomial = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
