use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One};

use super::poly::QPolynomial;
use crate::error::Result;

/// Power series in `x` truncated after `x^order`, with coefficients in `Q[q, 1/q]`.
///
/// Binary operations truncate to the smaller of the two orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coefficients: Vec<QPolynomial>,
}

impl PowerSeries {
    /// Pads with zeros or truncates so that exactly `order + 1` coefficients are kept.
    pub fn new(mut coefficients: Vec<QPolynomial>, order: usize) -> Self {
        coefficients.resize(order + 1, QPolynomial::zero());
        Self { coefficients }
    }

    pub fn from_rationals<I>(coefficients: I, order: usize) -> Self
    where
        I: IntoIterator<Item = BigRational>,
    {
        Self::new(
            coefficients
                .into_iter()
                .map(QPolynomial::constant)
                .collect(),
            order,
        )
    }

    pub fn from_ints(coefficients: &[i64], order: usize) -> Self {
        Self::from_rationals(
            coefficients
                .iter()
                .map(|&c| BigRational::from_integer(c.into())),
            order,
        )
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(QPolynomial::one(), order)
    }

    pub fn constant(value: QPolynomial, order: usize) -> Self {
        Self::new(vec![value], order)
    }

    /// The series `x`, truncated at `order` (zero when `order == 0`).
    pub fn x(order: usize) -> Self {
        Self::new(vec![QPolynomial::zero(), QPolynomial::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[QPolynomial] {
        &self.coefficients
    }

    /// Coefficient of `x^k`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> QPolynomial {
        self.coefficients.get(k).cloned().unwrap_or_default()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coefficients.clone(), order.min(self.order()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coefficients: (0..=order)
                .map(|k| &self.coefficients[k] + &other.coefficients[k])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            coefficients: self.coefficients.iter().map(|c| -c).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coefficients = (0..=order)
            .map(|k| {
                (0..=k)
                    .map(|i| &self.coefficients[i] * &other.coefficients[k - i])
                    .sum()
            })
            .collect();
        Self { coefficients }
    }

    /// Multiplies every coefficient by `factor`.
    pub fn scale(&self, factor: &QPolynomial) -> Self {
        Self {
            coefficients: self.coefficients.iter().map(|c| c * factor).collect(),
        }
    }

    /// Substitutes `q = q0` in every coefficient.
    pub fn eval_q(&self, q0: &BigRational) -> Result<Self> {
        let coefficients = self
            .coefficients
            .iter()
            .map(|c| c.eval(q0).map(QPolynomial::constant))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coefficients })
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries::add(self, rhs)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries::sub(self, rhs)
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries::mul(self, rhs)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;

    fn neg(self) -> PowerSeries {
        PowerSeries::neg(self)
    }
}

/// `sqrt(1 - 4x) = 1 - 2 * sum_{n>=1} C_{n-1} x^n`, truncated at `order`.
pub fn series_sqrt_one_minus_4x(order: usize) -> PowerSeries {
    let mut coefficients = Vec::with_capacity(order + 1);
    coefficients.push(QPolynomial::one());
    // C_k via C_{k+1} = C_k * 2(2k+1)/(k+2)
    let mut catalan = BigRational::one();
    for k in 0..order {
        coefficients.push(QPolynomial::constant(
            -BigRational::from_integer(2.into()) * &catalan,
        ));
        let factor = BigRational::new(BigInt::from(2 * (2 * k + 1)), BigInt::from(k + 2));
        catalan *= factor;
    }
    PowerSeries::new(coefficients, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_series_examples() {
        assert_eq!(series_sqrt_one_minus_4x(0), PowerSeries::one(0));
        assert_eq!(
            series_sqrt_one_minus_4x(3),
            PowerSeries::from_ints(&[1, -2, -2, -4], 3)
        );
        assert_eq!(
            series_sqrt_one_minus_4x(7),
            PowerSeries::from_ints(&[1, -2, -2, -4, -10, -28, -84, -264], 7)
        );
    }

    #[test]
    fn sqrt_series_squares_to_one_minus_4x() {
        for order in 0..=16 {
            let s = series_sqrt_one_minus_4x(order);
            assert_eq!(
                &s * &s,
                PowerSeries::from_ints(&[1, -4], order),
                "order {order}"
            );
        }
    }

    #[test]
    fn basic_products() {
        let one_plus_x = PowerSeries::from_ints(&[1, 1], 2);
        let one_minus_x = PowerSeries::from_ints(&[1, -1], 2);
        assert_eq!(
            &one_plus_x * &one_minus_x,
            PowerSeries::from_ints(&[1, 0, -1], 2)
        );

        let s = PowerSeries::from_ints(&[3, -1, 4, 1, -5], 4);
        assert_eq!(&s * &PowerSeries::one(4), s);
        assert_eq!(&s + &PowerSeries::zero(4), s);
    }

    #[test]
    fn catalan_square_coefficient() {
        let catalan = PowerSeries::from_ints(&[1, 1, 2, 5, 14], 4);
        let square = &catalan * &catalan;
        assert_eq!(square.coeff(2), QPolynomial::from(5));
        // C_{k+1} = sum C_i C_{k-i}
        assert_eq!(square.coeff(3), QPolynomial::from(14));
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = PowerSeries::from_ints(&[1, 2, 3, 4, 5], 4);
        let b = PowerSeries::from_ints(&[1, 1], 2);
        assert_eq!((&a + &b).order(), 2);
        assert_eq!((&a * &b).order(), 2);
        assert_eq!(
            a.scale(&QPolynomial::q()).coeff(3),
            QPolynomial::from_coeffs(&[0, 4])
        );
    }
}
