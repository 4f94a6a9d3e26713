use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which of the sign-sequence classes a `±1` word belongs to.
///
/// `PlusStar` is reported in preference to `Plus`: a `PlusStar` word is also
/// a member of the plus class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EpsilonClass {
    Plus,
    PlusStar,
    Minus,
}

impl EpsilonClass {
    pub fn is_plus(self) -> bool {
        matches!(self, EpsilonClass::Plus | EpsilonClass::PlusStar)
    }
}

impl fmt::Display for EpsilonClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EpsilonClass::Plus => "plus",
            EpsilonClass::PlusStar => "plus-star",
            EpsilonClass::Minus => "minus",
        })
    }
}

/// A word over `{-1, +1}` with its prefix sums `S(k) = eps(1) + ... + eps(k)`.
///
/// Positions are 1-based in every public method. As an operator word,
/// `+1` stands for a creator and `-1` for an annihilator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpsilonSequence {
    values: Vec<i8>,
    prefix_sums: Vec<i64>,
}

impl EpsilonSequence {
    pub fn new<I>(values: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<i64>,
    {
        let values = values
            .into_iter()
            .map(|v| match v.into() {
                -1 => Ok(-1i8),
                1 => Ok(1i8),
                other => Err(Error::InvalidSign(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_signs(values))
    }

    /// Caller guarantees every entry is `-1` or `1`.
    pub(crate) fn from_signs(values: Vec<i8>) -> Self {
        debug_assert!(values.iter().all(|v| *v == 1 || *v == -1));
        let prefix_sums = values
            .iter()
            .scan(0i64, |acc, &v| {
                *acc += i64::from(v);
                Some(*acc)
            })
            .collect();
        Self {
            values,
            prefix_sums,
        }
    }

    /// Parses a comma separated list such as `"-1,-1,1,1"`.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Ok(Self::from_signs(Vec::new()));
        }
        let values = trimmed
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad sign {:?}", tok.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn prefix_sums(&self) -> &[i64] {
        &self.prefix_sums
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at 1-based position `k`.
    pub fn at(&self, k: usize) -> i8 {
        self.values[k - 1]
    }

    pub fn total(&self) -> i64 {
        self.prefix_sums.last().copied().unwrap_or(0)
    }

    /// Plus iff the word sums to zero and every prefix sum is `<= 0`
    /// (equivalently every suffix sum is `>= 0`); PlusStar iff the only
    /// vanishing prefix sum is the full word.
    pub fn classify(&self) -> Result<EpsilonClass> {
        if self.values.is_empty() {
            return Err(Error::EmptySequence);
        }
        if self.values.len() % 2 == 1
            || self.total() != 0
            || self.prefix_sums.iter().any(|&s| s > 0)
        {
            return Ok(EpsilonClass::Minus);
        }
        if self.zero_positions().len() == 1 {
            Ok(EpsilonClass::PlusStar)
        } else {
            Ok(EpsilonClass::Plus)
        }
    }

    pub fn is_plus(&self) -> bool {
        self.classify().is_ok_and(EpsilonClass::is_plus)
    }

    pub(crate) fn require_plus(&self) -> Result<()> {
        if self.is_plus() {
            Ok(())
        } else {
            Err(Error::NotPlusClass(self.to_string()))
        }
    }

    /// 1-based positions `k` with `S(k) = 0`.
    pub fn zero_positions(&self) -> Vec<usize> {
        self.prefix_sums
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Number of vanishing prefix sums; defined on the plus class only.
    pub fn n_epsilon(&self) -> Result<usize> {
        self.require_plus()?;
        Ok(self.zero_positions().len())
    }

    /// 1-based positions carrying `-1`.
    pub fn left_positions(&self) -> Vec<usize> {
        self.positions_of(-1)
    }

    /// 1-based positions carrying `+1`.
    pub fn right_positions(&self) -> Vec<usize> {
        self.positions_of(1)
    }

    fn positions_of(&self, sign: i8) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == sign)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// The word `(-1, eps(1), ..., eps(m), +1)`.
    pub fn extended(&self) -> Self {
        let mut values = Vec::with_capacity(self.values.len() + 2);
        values.push(-1);
        values.extend_from_slice(&self.values);
        values.push(1);
        Self::from_signs(values)
    }

    /// Concatenation of two words.
    pub fn concat(&self, other: &Self) -> Self {
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        Self::from_signs(values)
    }
}

impl fmt::Display for EpsilonSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for EpsilonSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EpsilonSequence({self})")
    }
}

impl Serialize for EpsilonSequence {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EpsilonSequence {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<i64>::deserialize(deserializer)?;
        EpsilonSequence::new(raw).map_err(serde::de::Error::custom)
    }
}

/// Every word of length `len`, in lexicographic order with `-1 < +1`.
pub fn all_words(len: usize) -> impl Iterator<Item = EpsilonSequence> {
    assert!(len < 63, "word length {len} is too large to enumerate");
    (0u64..1 << len).map(move |bits| {
        let values = (0..len)
            .map(|i| {
                if bits >> (len - 1 - i) & 1 == 1 {
                    1
                } else {
                    -1
                }
            })
            .collect();
        EpsilonSequence::from_signs(values)
    })
}

/// All plus-class words of length `2n`, in lexicographic order.
///
/// Built directly (never testing words outside the class); there are `C_n`
/// of them. `n = 0` yields nothing.
pub fn plus_sequences(n: usize) -> Vec<EpsilonSequence> {
    fn extend(prefix: &mut Vec<i8>, sum: i64, len: usize, out: &mut Vec<EpsilonSequence>) {
        let remaining = (len - prefix.len()) as i64;
        if remaining == 0 {
            if sum == 0 {
                out.push(EpsilonSequence::from_signs(prefix.clone()));
            }
            return;
        }
        // after this step, |sum| must still be closable by the remaining steps
        if 1 - sum < remaining {
            prefix.push(-1);
            extend(prefix, sum - 1, len, out);
            prefix.pop();
        }
        if sum < 0 {
            prefix.push(1);
            extend(prefix, sum + 1, len, out);
            prefix.pop();
        }
    }

    let mut out = Vec::new();
    if n > 0 {
        extend(&mut Vec::with_capacity(2 * n), 0, 2 * n, &mut out);
    }
    out
}
