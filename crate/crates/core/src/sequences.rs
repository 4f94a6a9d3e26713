//! Catalan numbers, Catalan convolutions, the weighted sum `w_n(q)`, the
//! cardinalities `u_n = |P_n|`, and their generating functions.
//!
//! Most quantities are computed by at least two unrelated routes so that
//! each can check the other.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra::{format_rational, series_sqrt_one_minus_4x, PowerSeries, QPolynomial};
use crate::error::{Error, Result};
use crate::fock::{vacuum_expectation, TestVector};
use crate::moments::{total_cardinality, total_moment};
use crate::pairings::{enumerate_ncpp, enumerate_pp, plus_sequences};

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    // running product stays integral: prefix i is binom(n - k + i, i)
    (1..=k).fold(BigInt::one(), |acc, i| acc * (n - k + i) / i)
}

/// `C_k = (2k)! / (k! (k+1)!)`.
pub fn catalan(k: usize) -> BigInt {
    factorial(2 * k) / (factorial(k) * factorial(k + 1))
}

/// `C_0 ..= C_max` from `C_{k+1} = sum_i C_i C_{k-i}`.
pub fn catalan_by_recurrence(max: usize) -> Vec<BigInt> {
    let mut values = vec![BigInt::one()];
    for k in 0..max {
        let next = (0..=k).map(|i| &values[i] * &values[k - i]).sum();
        values.push(next);
    }
    values
}

/// `(2n-1)!! = 1 * 3 * ... * (2n-1)`, with `(-1)!! = 1`.
pub fn double_factorial_odd(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * (2 * k - 1))
}

/// All `(i_1, ..., i_parts)` of non-negative integers summing to `total`, in
/// lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn fill(rest: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            prefix.push(rest);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=rest {
            prefix.push(first);
            fill(rest - first, slots - 1, prefix, out);
            prefix.pop();
        }
    }

    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    fill(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// `sum over i_1 + ... + i_m = n - m of C_{i_1} ... C_{i_m}`, by brute force.
pub fn convolution_brute(n: usize, m: usize) -> BigInt {
    if m == 0 || m > n {
        return BigInt::zero();
    }
    let cat = catalan_by_recurrence(n - m);
    compositions(n - m, m)
        .iter()
        .map(|c| c.iter().map(|&i| &cat[i]).product::<BigInt>())
        .sum()
}

/// `m / (2n - m) * binom(2n - m, n)`.
pub fn convolution_closed(n: usize, m: usize) -> BigRational {
    BigRational::new(BigInt::from(m), BigInt::from(2 * n - m))
        * BigRational::from_integer(binomial(2 * n - m, n))
}

/// The `m`-fold Catalan convolution at `n`, checked against its closed form.
pub fn catalan_convolution(n: usize, m: usize) -> Result<BigInt> {
    if m == 0 || m > n {
        return Err(Error::InvalidArgument(format!(
            "convolution needs 1 <= m <= n, got n={n}, m={m}"
        )));
    }
    let brute = convolution_brute(n, m);
    let closed = convolution_closed(n, m);
    if BigRational::from_integer(brute.clone()) != closed {
        return Err(Error::ConvolutionMismatch {
            n,
            m,
            brute: brute.to_string(),
            closed: format_rational(&closed),
        });
    }
    Ok(brute)
}

/// `w_n(q) = sum_{m=1}^n (1+q)^m * (m-fold convolution at n)`; `w_0 = 1`.
pub fn w_direct(n: usize) -> QPolynomial {
    if n == 0 {
        return QPolynomial::one();
    }
    let one_plus_q = QPolynomial::one_plus_q();
    (1..=n)
        .map(|m| {
            one_plus_q
                .pow(m as u32)
                .scale(&BigRational::from_integer(convolution_brute(n, m)))
        })
        .sum()
}

/// `w_n(q)` from the Laurent closed form
/// `(1+q)/q * ((1+q)^{2n-1} / q^{n-1} - sum_m C_{m-1} (1+q)^{2(n-m)} / q^{n-m})`.
pub fn w_closed(n: usize) -> Result<QPolynomial> {
    if n == 0 {
        return Ok(QPolynomial::one());
    }
    let one_plus_q = QPolynomial::one_plus_q();
    let lead = one_plus_q.pow((2 * n - 1) as u32).shift(-(n as i64 - 1));
    let tail: QPolynomial = (1..=n)
        .map(|m| {
            one_plus_q
                .pow((2 * (n - m)) as u32)
                .shift(-((n - m) as i64))
                .scale(&BigRational::from_integer(catalan(m - 1)))
        })
        .sum();
    let result = (&one_plus_q * &(&lead - &tail)).shift(-1);
    if result.is_laurent() {
        return Err(Error::NegativeExponentResidue(result.to_string()));
    }
    Ok(result)
}

/// `w_n(q)` by the operator route: the sum over plus words `eps` of length
/// `2n` of `<Φ, A(e_1) A^{eps}(e_1) A^+(e_1) Φ>`.
pub fn w_operator(n: usize) -> QPolynomial {
    if n == 0 {
        return QPolynomial::one();
    }
    let tests = vec![TestVector::e1(); 2 * n + 2];
    plus_sequences(n)
        .par_iter()
        .map(|eps| vacuum_expectation(&eps.extended(), &tests).expect("lengths agree"))
        .collect::<Vec<_>>()
        .into_iter()
        .sum()
}

/// `‖f‖^{2n+2}`: the factor taking unit-norm `w_n` to a test vector of
/// squared norm `norm_sq`.
pub fn w_norm_factor(n: usize, norm_sq: &BigRational) -> BigRational {
    (0..=n).fold(BigRational::one(), |acc, _| acc * norm_sq)
}

/// `u_0 ..= u_max` from `u_{n+1} = sum_{m=0}^n binom(2m, m) u_{n-m}`.
pub fn u_recurrence_values(max: usize) -> Vec<BigInt> {
    let mut u = vec![BigInt::one()];
    for n in 0..max {
        let next = (0..=n).map(|m| binomial(2 * m, m) * &u[n - m]).sum();
        u.push(next);
    }
    u
}

pub fn u_recurrence(max_n: usize) -> SequenceTable {
    SequenceTable::numbers("u", Method::Recurrence, u_recurrence_values(max_n))
}

/// Sum over odd `m <= n+1` of `binom(n+1, m) 2^{n+1-m} 5^{(m-1)/2}`.
pub fn f_term(n: usize) -> BigInt {
    (1..=n + 1)
        .step_by(2)
        .map(|m| {
            binomial(n + 1, m)
                * num::pow(BigInt::from(2), n + 1 - m)
                * num::pow(BigInt::from(5), (m - 1) / 2)
        })
        .sum()
}

/// `g_1 = -3`, `g_n = -2 C_{n-2}` for `n >= 2`.
pub fn g_term(n: usize) -> BigInt {
    match n {
        0 => panic!("g is indexed from 1"),
        1 => BigInt::from(-3),
        _ => BigInt::from(-2) * catalan(n - 2),
    }
}

/// `u_n = f_n + g_n + sum_{m=1}^{n-1} f_{n-m} g_m` for `n >= 2`, `u_0 = u_1 = 1`.
pub fn u_closed(n: usize) -> BigInt {
    if n <= 1 {
        return BigInt::one();
    }
    let cross: BigInt = (1..n).map(|m| f_term(n - m) * g_term(m)).sum();
    f_term(n) + g_term(n) + cross
}

/// Checks `W(x) * (1 - (1+q)/2 * (1 - sqrt(1-4x))) = 1` up to `x^order` at
/// `q = q_sample`, where `W = sum w_n x^n`.
pub fn verify_w_generating_function(order: usize, q_sample: &BigRational) -> bool {
    let w: Vec<QPolynomial> = (0..=order).map(w_direct).collect();
    let Ok(w) = PowerSeries::new(w, order).eval_q(q_sample) else {
        return false;
    };
    let half_one_plus_q = (BigRational::one() + q_sample) / BigRational::from_integer(2.into());
    let one = PowerSeries::one(order);
    let sqrt = series_sqrt_one_minus_4x(order);
    let factor = &one - &(&one - &sqrt).scale(&QPolynomial::constant(half_one_plus_q));
    &w * &factor == one
}

/// Checks `U(x) * (1 - 4x - x^2) = (1 - 4x) + x sqrt(1 - 4x)` up to
/// `x^order`, where `U = sum u_n x^n` comes from the recurrence.
pub fn verify_u_generating_function(order: usize) -> bool {
    let u = PowerSeries::from_rationals(
        u_recurrence_values(order)
            .into_iter()
            .map(BigRational::from_integer),
        order,
    );
    let lhs = &u * &PowerSeries::from_ints(&[1, -4, -1], order);
    let sqrt = series_sqrt_one_minus_4x(order);
    let rhs = &PowerSeries::from_ints(&[1, -4], order) + &(&PowerSeries::x(order) * &sqrt);
    lhs == rhs
}

/// Where the values of a [`SequenceTable`] came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    Closed,
    Recurrence,
    Operator,
    Enumeration,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Direct,
        Method::Closed,
        Method::Recurrence,
        Method::Operator,
        Method::Enumeration,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Closed => "closed",
            Method::Recurrence => "recurrence",
            Method::Operator => "operator",
            Method::Enumeration => "enumerate",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "closed" => Ok(Method::Closed),
            "recurrence" => Ok(Method::Recurrence),
            "operator" => Ok(Method::Operator),
            "enumerate" | "enumeration" => Ok(Method::Enumeration),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqValue {
    Number(BigRational),
    Poly(QPolynomial),
}

impl SeqValue {
    /// Substitutes `q = q0` into polynomial entries.
    pub fn eval(&self, q0: &BigRational) -> Result<SeqValue> {
        match self {
            SeqValue::Number(_) => Ok(self.clone()),
            SeqValue::Poly(p) => Ok(SeqValue::Number(p.eval(q0)?)),
        }
    }
}

impl fmt::Display for SeqValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqValue::Number(x) => f.write_str(&format_rational(x)),
            SeqValue::Poly(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for SeqValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A sequence indexed from 0 together with the route that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceTable {
    pub name: String,
    pub method: Method,
    pub values: Vec<SeqValue>,
}

impl SequenceTable {
    pub fn numbers(name: &str, method: Method, values: Vec<BigInt>) -> Self {
        Self {
            name: name.to_string(),
            method,
            values: values
                .into_iter()
                .map(|v| SeqValue::Number(BigRational::from_integer(v)))
                .collect(),
        }
    }

    pub fn polys(name: &str, method: Method, values: Vec<QPolynomial>) -> Self {
        Self {
            name: name.to_string(),
            method,
            values: values.into_iter().map(SeqValue::Poly).collect(),
        }
    }

    pub fn eval(&self, q0: &BigRational) -> Result<SequenceTable> {
        Ok(Self {
            name: self.name.clone(),
            method: self.method,
            values: self
                .values
                .iter()
                .map(|v| v.eval(q0))
                .collect::<Result<_>>()?,
        })
    }
}

fn unsupported(name: &str, method: Method) -> Error {
    Error::InvalidArgument(format!("sequence {name} has no {method} route"))
}

/// `C_0 ..= C_max` by the chosen route.
pub fn catalan_table(max: usize, method: Method) -> Result<SequenceTable> {
    let values = match method {
        Method::Closed => (0..=max).map(catalan).collect(),
        Method::Recurrence => catalan_by_recurrence(max),
        Method::Enumeration => (0..=max)
            .map(|n| {
                if n == 0 {
                    BigInt::one()
                } else {
                    enumerate_ncpp(n).count().into()
                }
            })
            .collect(),
        // free Fock space: the q = 0 specialization of the field moment
        Method::Operator => (0..=max)
            .map(|n| {
                let m = if n == 0 {
                    QPolynomial::one()
                } else {
                    total_moment(n)
                };
                m.coeff(0).to_integer()
            })
            .collect(),
        Method::Direct => return Err(unsupported("catalan", method)),
    };
    Ok(SequenceTable::numbers("catalan", method, values))
}

pub fn w_table(max: usize, method: Method) -> Result<SequenceTable> {
    let values = match method {
        Method::Direct => (0..=max).map(w_direct).collect(),
        Method::Closed => (0..=max).map(w_closed).collect::<Result<_>>()?,
        Method::Operator => (0..=max).map(w_operator).collect(),
        _ => return Err(unsupported("w", method)),
    };
    Ok(SequenceTable::polys("w", method, values))
}

pub fn u_table(max: usize, method: Method) -> Result<SequenceTable> {
    let values = match method {
        Method::Recurrence => u_recurrence_values(max),
        Method::Closed => (0..=max).map(u_closed).collect(),
        Method::Enumeration => (0..=max)
            .map(|n| {
                if n == 0 {
                    BigInt::one()
                } else {
                    total_cardinality(n).into()
                }
            })
            .collect(),
        Method::Operator => (0..=max)
            .map(|n| {
                if n == 0 {
                    return BigInt::one();
                }
                total_moment(n)
                    .eval(&BigRational::one())
                    .expect("no negative powers")
                    .to_integer()
            })
            .collect(),
        Method::Direct => return Err(unsupported("u", method)),
    };
    Ok(SequenceTable::numbers("u", method, values))
}

/// `(2n-1)!!` by formula or by counting all pair partitions.
pub fn double_factorial_table(max: usize, method: Method) -> Result<SequenceTable> {
    let values = match method {
        Method::Closed => (0..=max).map(double_factorial_odd).collect(),
        Method::Enumeration => (0..=max)
            .map(|n| {
                if n == 0 {
                    BigInt::one()
                } else {
                    enumerate_pp(n).count().into()
                }
            })
            .collect(),
        _ => return Err(unsupported("double_factorial", method)),
    };
    Ok(SequenceTable::numbers("double_factorial", method, values))
}

/// Routes each sequence supports, default first.
pub fn methods_for(name: &str) -> &'static [Method] {
    match name {
        "catalan" => &[
            Method::Closed,
            Method::Recurrence,
            Method::Enumeration,
            Method::Operator,
        ],
        "w" => &[Method::Direct, Method::Closed, Method::Operator],
        "u" => &[
            Method::Recurrence,
            Method::Closed,
            Method::Enumeration,
            Method::Operator,
        ],
        "double_factorial" => &[Method::Closed, Method::Enumeration],
        _ => &[],
    }
}

pub fn sequence_table(name: &str, max: usize, method: Method) -> Result<SequenceTable> {
    match name {
        "catalan" => catalan_table(max, method),
        "w" => w_table(max, method),
        "u" => u_table(max, method),
        "double_factorial" => double_factorial_table(max, method),
        other => Err(Error::InvalidArgument(format!(
            "unknown sequence {other:?}"
        ))),
    }
}
