use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::epsilon::EpsilonSequence;
use crate::error::{Error, Result};

/// A perfect matching of a finite, totally ordered set of integer labels.
///
/// Pairs are stored as `(left, right)` with `left < right`, sorted by left
/// label. Only the relative order of labels matters; `{1,3,4,5}` behaves
/// exactly like `{1,2,3,4}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPartition")]
pub struct PairPartition {
    ground: Vec<i64>,
    pairs: Vec<(i64, i64)>,
}

#[derive(Deserialize)]
struct RawPartition {
    ground: Vec<i64>,
    pairs: Vec<(i64, i64)>,
}

impl TryFrom<RawPartition> for PairPartition {
    type Error = Error;

    fn try_from(raw: RawPartition) -> Result<Self> {
        PairPartition::new(raw.ground, raw.pairs)
    }
}

/// Closed components of a non-crossing partition, left to right.
///
/// `boundaries` holds `0 = j_0 < j_1 < ... < j_m = n`: component `p`
/// consists of pairs `j_p + 1 ..= j_{p+1}` of the original partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentDecomposition {
    pub components: Vec<PairPartition>,
    pub boundaries: Vec<usize>,
}

impl PairPartition {
    /// Validates that `pairs` matches every label of `ground` exactly once.
    /// Pairs may be given in any order and orientation.
    pub fn new(ground: Vec<i64>, pairs: Vec<(i64, i64)>) -> Result<Self> {
        if ground.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(
                "ground labels must be strictly increasing".into(),
            ));
        }
        if ground.len() != 2 * pairs.len() {
            return Err(Error::InvalidPartition(format!(
                "{} pairs cannot cover {} labels",
                pairs.len(),
                ground.len()
            )));
        }
        let mut pairs: Vec<(i64, i64)> = pairs
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        pairs.sort_unstable();
        let mut seen = BTreeSet::new();
        for &(l, r) in &pairs {
            if l == r {
                return Err(Error::InvalidPartition(format!(
                    "label {l} paired with itself"
                )));
            }
            for label in [l, r] {
                if ground.binary_search(&label).is_err() {
                    return Err(Error::InvalidPartition(format!(
                        "label {label} not in ground set"
                    )));
                }
                if !seen.insert(label) {
                    return Err(Error::InvalidPartition(format!("label {label} used twice")));
                }
            }
        }
        Ok(Self { ground, pairs })
    }

    /// Partition whose ground set is the union of the pair labels.
    pub fn from_pairs(pairs: Vec<(i64, i64)>) -> Result<Self> {
        let mut ground: Vec<i64> = pairs.iter().flat_map(|&(l, r)| [l, r]).collect();
        ground.sort_unstable();
        if ground.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPartition(
                "a label occurs in two pairs".into(),
            ));
        }
        Self::new(ground, pairs)
    }

    pub(crate) fn from_sorted_unchecked(ground: Vec<i64>, pairs: Vec<(i64, i64)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        Self { ground, pairs }
    }

    pub fn empty() -> Self {
        Self {
            ground: Vec::new(),
            pairs: Vec::new(),
        }
    }

    /// Number of pairs.
    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn ground(&self) -> &[i64] {
        &self.ground
    }

    pub fn pairs(&self) -> &[(i64, i64)] {
        &self.pairs
    }

    pub fn left_labels(&self) -> Vec<i64> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn contains_pair(&self, pair: (i64, i64)) -> bool {
        self.pairs.binary_search(&pair).is_ok()
    }

    /// Sign word over the ground set: `-1` at left labels, `+1` at right labels.
    pub fn tau(&self) -> EpsilonSequence {
        let rights: BTreeSet<i64> = self.pairs.iter().map(|p| p.1).collect();
        EpsilonSequence::from_signs(
            self.ground
                .iter()
                .map(|label| if rights.contains(label) { 1 } else { -1 })
                .collect(),
        )
    }

    pub fn is_noncrossing(&self) -> bool {
        self.interleavings().next().is_none()
    }

    /// Restricted crossing number: the number of index pairs `h < j` with
    /// `l_h < l_j < r_h < r_j`.
    pub fn crossing_number(&self) -> usize {
        self.interleavings().count()
    }

    fn interleavings(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let pairs = &self.pairs;
        (0..pairs.len()).flat_map(move |h| {
            let (lh, rh) = pairs[h];
            (h + 1..pairs.len())
                .filter(move |&j| {
                    let (lj, rj) = pairs[j];
                    lh < lj && lj < rh && rh < rj
                })
                .map(move |j| (h, j))
        })
    }

    fn require_noncrossing(&self) -> Result<()> {
        if self.is_noncrossing() {
            Ok(())
        } else {
            Err(Error::NotNonCrossing)
        }
    }

    /// Depth of the `k`-th pair (1-based, ordered by left label): the number
    /// of pairs strictly enclosing it.
    pub fn depth(&self, k: usize) -> Result<usize> {
        self.require_noncrossing()?;
        if k == 0 || k > self.n() {
            return Err(Error::PairIndexOutOfRange {
                index: k,
                len: self.n(),
            });
        }
        Ok(self.enclosing(k - 1))
    }

    /// Depths of all pairs, in pair order.
    pub fn depths(&self) -> Result<Vec<usize>> {
        self.require_noncrossing()?;
        Ok((0..self.n()).map(|k| self.enclosing(k)).collect())
    }

    fn enclosing(&self, k: usize) -> usize {
        let (lk, rk) = self.pairs[k];
        self.pairs
            .iter()
            .filter(|&&(lh, rh)| lh < lk && rk < rh)
            .count()
    }

    /// Splits a non-crossing partition at its depth-0 pairs.
    pub fn closed_components(&self) -> Result<ComponentDecomposition> {
        let depths = self.depths()?;
        let mut boundaries = vec![0];
        let mut components = Vec::new();
        let mut start = 0;
        for k in 1..=self.n() {
            if k == self.n() || depths[k] == 0 {
                let pairs = self.pairs[start..k].to_vec();
                let (lo, hi) = pairs[0];
                let ground = self
                    .ground
                    .iter()
                    .copied()
                    .filter(|&v| lo <= v && v <= hi)
                    .collect();
                components.push(Self::from_sorted_unchecked(ground, pairs));
                boundaries.push(k);
                start = k;
            }
        }
        Ok(ComponentDecomposition {
            components,
            boundaries,
        })
    }

    /// Applies a strictly increasing relabeling to every label.
    pub fn map_labels(&self, mut f: impl FnMut(i64) -> i64) -> Self {
        let ground: Vec<i64> = self.ground.iter().map(|&v| f(v)).collect();
        let pairs = self.pairs.iter().map(|&(l, r)| (f(l), f(r))).collect();
        debug_assert!(
            ground.windows(2).all(|w| w[0] < w[1]),
            "relabeling must be increasing"
        );
        Self { ground, pairs }
    }
}

/// The unique non-crossing partition of `{1, ..., 2n}` whose left labels are
/// the `-1` positions of `eps`.
pub fn counterpart(eps: &EpsilonSequence) -> Result<PairPartition> {
    let ground: Vec<i64> = (1..=eps.len() as i64).collect();
    counterpart_on(&ground, eps)
}

/// Counterpart over an arbitrary ordered ground set (`ground[i]` carries `eps(i+1)`).
pub fn counterpart_on(ground: &[i64], eps: &EpsilonSequence) -> Result<PairPartition> {
    eps.require_plus()?;
    if ground.len() != eps.len() {
        return Err(Error::InvalidArgument(format!(
            "ground of size {} for a word of length {}",
            ground.len(),
            eps.len()
        )));
    }
    let mut open = Vec::new();
    let mut pairs = Vec::with_capacity(eps.len() / 2);
    for (&label, &sign) in ground.iter().zip(eps.values()) {
        if sign == -1 {
            open.push(label);
        } else {
            let left = open.pop().expect("plus class never closes an empty stack");
            pairs.push((left, label));
        }
    }
    pairs.sort_unstable();
    PairPartition::new(ground.to_vec(), pairs)
}

/// Union of partitions over pairwise disjoint ground sets.
pub fn glue(parts: &[PairPartition]) -> Result<PairPartition> {
    let mut ground: Vec<i64> = parts
        .iter()
        .flat_map(|p| p.ground.iter().copied())
        .collect();
    ground.sort_unstable();
    if let Some(w) = ground.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::OverlappingGrounds(w[0]));
    }
    let mut pairs: Vec<(i64, i64)> = parts.iter().flat_map(|p| p.pairs.iter().copied()).collect();
    pairs.sort_unstable();
    Ok(PairPartition::from_sorted_unchecked(ground, pairs))
}

impl fmt::Display for PairPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (l, r)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({l},{r})")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for PairPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairPartition{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(pairs: &[(i64, i64)]) -> PairPartition {
        PairPartition::from_pairs(pairs.to_vec()).unwrap()
    }

    fn eps(values: &[i64]) -> EpsilonSequence {
        EpsilonSequence::new(values.iter().copied()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(PairPartition::new(vec![1, 2, 3], vec![(1, 2)]).is_err());
        assert!(PairPartition::new(vec![1, 2, 3, 4], vec![(1, 2), (2, 3)]).is_err());
        assert!(PairPartition::new(vec![1, 2, 3, 4], vec![(1, 2), (3, 5)]).is_err());
        assert!(PairPartition::new(vec![2, 1], vec![(1, 2)]).is_err());
        let flipped = PairPartition::new(vec![1, 2, 3, 4], vec![(4, 3), (2, 1)]).unwrap();
        assert_eq!(flipped.pairs(), &[(1, 2), (3, 4)]);
    }

    #[test]
    fn counterpart_examples() {
        assert_eq!(
            counterpart(&eps(&[-1, -1, 1, 1])).unwrap(),
            pp(&[(1, 4), (2, 3)])
        );
        assert_eq!(
            counterpart(&eps(&[-1, 1, -1, 1])).unwrap(),
            pp(&[(1, 2), (3, 4)])
        );
        assert_eq!(
            counterpart(&eps(&[-1, -1, 1, -1, 1, 1])).unwrap(),
            pp(&[(1, 6), (2, 3), (4, 5)])
        );
        assert!(matches!(
            counterpart(&eps(&[1, -1])),
            Err(Error::NotPlusClass(_))
        ));
    }

    #[test]
    fn tau_examples() {
        assert_eq!(pp(&[(1, 2)]).tau(), eps(&[-1, 1]));
        assert_eq!(pp(&[(1, 4), (2, 3)]).tau(), eps(&[-1, -1, 1, 1]));
        assert_eq!(pp(&[(1, 3), (2, 4)]).tau(), eps(&[-1, -1, 1, 1]));
    }

    #[test]
    fn noncrossing_examples() {
        assert!(pp(&[(1, 2), (3, 4)]).is_noncrossing());
        assert!(!pp(&[(1, 3), (2, 4)]).is_noncrossing());
        assert!(pp(&[(1, 6), (2, 3), (4, 5)]).is_noncrossing());
    }

    #[test]
    fn depth_examples() {
        let theta = pp(&[(1, 6), (2, 3), (4, 5)]);
        assert_eq!(theta.depth(1).unwrap(), 0);
        assert_eq!(theta.depth(2).unwrap(), 1);
        assert_eq!(pp(&[(1, 6), (2, 5), (3, 4)]).depth(3).unwrap(), 2);
        assert_eq!(pp(&[(1, 3), (2, 4)]).depth(1), Err(Error::NotNonCrossing));
        assert_eq!(
            theta.depth(4),
            Err(Error::PairIndexOutOfRange { index: 4, len: 3 })
        );
    }

    #[test]
    fn component_examples() {
        let d = pp(&[(1, 2), (3, 4)]).closed_components().unwrap();
        assert_eq!(d.components, vec![pp(&[(1, 2)]), pp(&[(3, 4)])]);
        assert_eq!(d.boundaries, vec![0, 1, 2]);

        let d = pp(&[(1, 4), (2, 3)]).closed_components().unwrap();
        assert_eq!(d.components, vec![pp(&[(1, 4), (2, 3)])]);

        let d = pp(&[(1, 2), (3, 6), (4, 5)]).closed_components().unwrap();
        assert_eq!(d.components, vec![pp(&[(1, 2)]), pp(&[(3, 6), (4, 5)])]);
        assert_eq!(d.boundaries, vec![0, 1, 3]);
        assert_eq!(glue(&d.components).unwrap(), pp(&[(1, 2), (3, 6), (4, 5)]));

        assert_eq!(
            pp(&[(1, 3), (2, 4)]).closed_components(),
            Err(Error::NotNonCrossing)
        );
    }

    #[test]
    fn glue_examples() {
        let left = pp(&[(1, 5), (3, 4)]);
        let right = pp(&[(2, 6)]);
        let glued = glue(&[left.clone(), right]).unwrap();
        assert_eq!(glued, pp(&[(1, 5), (2, 6), (3, 4)]));
        assert_eq!(glued.ground(), &[1, 2, 3, 4, 5, 6]);
        assert!(!glued.is_noncrossing());
        assert_eq!(glue(std::slice::from_ref(&left)).unwrap(), left);
        assert_eq!(
            glue(&[pp(&[(1, 2)]), pp(&[(3, 4)])]).unwrap(),
            pp(&[(1, 2), (3, 4)])
        );
        assert_eq!(
            glue(&[pp(&[(1, 2)]), pp(&[(2, 3)])]),
            Err(Error::OverlappingGrounds(2))
        );
    }

    #[test]
    fn crossing_number_examples() {
        assert_eq!(pp(&[(1, 2)]).crossing_number(), 0);
        assert_eq!(pp(&[(1, 3), (2, 4)]).crossing_number(), 1);
        assert_eq!(pp(&[(1, 4), (2, 5), (3, 6)]).crossing_number(), 3);
    }

    #[test]
    fn counterpart_on_general_ground() {
        let theta = counterpart_on(&[0, 3, 7, 9], &eps(&[-1, -1, 1, 1])).unwrap();
        assert_eq!(theta.pairs(), &[(0, 9), (3, 7)]);
        assert_eq!(theta.depths().unwrap(), vec![0, 1]);
    }

    #[test]
    fn json_shape() {
        let theta = pp(&[(1, 4), (2, 3)]);
        let text = serde_json::to_string(&theta).unwrap();
        assert_eq!(text, r#"{"ground":[1,2,3,4],"pairs":[[1,4],[2,3]]}"#);
        assert_eq!(serde_json::from_str::<PairPartition>(&text).unwrap(), theta);
        assert!(
            serde_json::from_str::<PairPartition>(r#"{"ground":[1,2],"pairs":[[1,3]]}"#).is_err()
        );
    }
}
