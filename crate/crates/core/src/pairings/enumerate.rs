use super::epsilon::EpsilonSequence;
use super::partition::PairPartition;
use crate::error::Result;

/// Lazy depth-first enumeration of pair partitions of an ordered ground set.
///
/// The smallest unpaired label is matched with each larger free label in
/// increasing order, so partitions come out in lexicographic order of their
/// sorted pair lists. Optional constraints: a sign per position (left labels
/// must carry `-1`, right labels `+1`) and non-crossing output only.
pub struct Pairings {
    ground: Vec<i64>,
    signs: Option<Vec<i8>>,
    noncrossing: bool,
    used: Vec<bool>,
    stack: Vec<(usize, usize)>,
    started: bool,
    done: bool,
}

impl Pairings {
    fn new(ground: Vec<i64>, signs: Option<Vec<i8>>, noncrossing: bool) -> Self {
        let done = ground.len() % 2 == 1;
        Self {
            used: vec![false; ground.len()],
            ground,
            signs,
            noncrossing,
            stack: Vec::new(),
            started: false,
            done,
        }
    }

    fn can_open(&self, i: usize) -> bool {
        self.signs.as_ref().is_none_or(|s| s[i] == -1)
    }

    fn can_close(&self, j: usize) -> bool {
        self.signs.as_ref().is_none_or(|s| s[j] == 1)
    }

    /// First admissible partner of `i` at position `>= from`.
    fn partner_from(&self, i: usize, from: usize) -> Option<usize> {
        (from..self.ground.len()).find(|&j| {
            !self.used[j]
                && self.can_close(j)
                && (!self.noncrossing || !self.stack.iter().any(|&(l, r)| l < i && i < r && r < j))
        })
    }

    fn push(&mut self, i: usize, j: usize) {
        self.used[i] = true;
        self.used[j] = true;
        self.stack.push((i, j));
    }

    /// Greedily completes the current prefix; false on a dead end.
    fn descend(&mut self) -> bool {
        loop {
            let Some(i) = self.used.iter().position(|u| !u) else {
                return true;
            };
            if !self.can_open(i) {
                return false;
            }
            match self.partner_from(i, i + 1) {
                Some(j) => self.push(i, j),
                None => return false,
            }
        }
    }

    /// Moves the deepest choice that still has an alternative; false when exhausted.
    fn advance(&mut self) -> bool {
        while let Some((i, j)) = self.stack.pop() {
            self.used[i] = false;
            self.used[j] = false;
            if let Some(next) = self.partner_from(i, j + 1) {
                self.push(i, next);
                return true;
            }
        }
        false
    }

    fn current(&self) -> PairPartition {
        let mut pairs: Vec<(i64, i64)> = self
            .stack
            .iter()
            .map(|&(i, j)| (self.ground[i], self.ground[j]))
            .collect();
        pairs.sort_unstable();
        PairPartition::from_sorted_unchecked(self.ground.clone(), pairs)
    }
}

impl Iterator for Pairings {
    type Item = PairPartition;

    fn next(&mut self) -> Option<PairPartition> {
        if self.done {
            return None;
        }
        let mut backtrack = self.started;
        self.started = true;
        loop {
            if backtrack && !self.advance() {
                self.done = true;
                return None;
            }
            if self.descend() {
                return Some(self.current());
            }
            backtrack = true;
        }
    }
}

fn standard_ground(n: usize) -> Vec<i64> {
    (1..=2 * n as i64).collect()
}

/// All `(2n-1)!!` pair partitions of `{1, ..., 2n}`.
pub fn enumerate_pp(n: usize) -> Pairings {
    Pairings::new(standard_ground(n), None, false)
}

/// All `C_n` non-crossing pair partitions of `{1, ..., 2n}`.
pub fn enumerate_ncpp(n: usize) -> Pairings {
    Pairings::new(standard_ground(n), None, true)
}

/// Pair partitions of an arbitrary ordered ground set.
pub fn enumerate_pp_of(ground: Vec<i64>) -> Pairings {
    Pairings::new(ground, None, false)
}

/// All partitions of `{1, ..., 2n}` with left labels at the `-1` positions
/// of `eps` and right labels at the `+1` positions.
pub fn enumerate_pp_eps(eps: &EpsilonSequence) -> Result<Pairings> {
    eps.require_plus()?;
    Ok(Pairings::new(
        standard_ground(eps.len() / 2),
        Some(eps.values().to_vec()),
        false,
    ))
}

/// `prod_h (2h - l_h)` over the left positions `l_1 < ... < l_n` of `eps`.
pub fn pp_eps_count_formula(eps: &EpsilonSequence) -> Result<u128> {
    eps.require_plus()?;
    Ok(eps
        .left_positions()
        .iter()
        .enumerate()
        .map(|(h, &l)| (2 * (h + 1) - l) as u128)
        .product())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn pp(pairs: &[(i64, i64)]) -> PairPartition {
        PairPartition::from_pairs(pairs.to_vec()).unwrap()
    }

    fn eps(values: &[i64]) -> EpsilonSequence {
        EpsilonSequence::new(values.iter().copied()).unwrap()
    }

    #[test]
    fn pp_small_cases() {
        assert_eq!(enumerate_pp(1).collect::<Vec<_>>(), vec![pp(&[(1, 2)])]);
        assert_eq!(
            enumerate_pp(2).collect::<Vec<_>>(),
            vec![
                pp(&[(1, 2), (3, 4)]),
                pp(&[(1, 3), (2, 4)]),
                pp(&[(1, 4), (2, 3)]),
            ]
        );
        assert_eq!(enumerate_pp(6).count(), 10395);
    }

    #[test]
    fn pp_is_sorted_and_distinct() {
        let all: Vec<_> = enumerate_pp(4).collect();
        assert_eq!(all.len(), 105);
        assert!(all.windows(2).all(|w| w[0].pairs() < w[1].pairs()));
    }

    #[test]
    fn ncpp_counts() {
        assert_eq!(enumerate_ncpp(2).count(), 2);
        assert_eq!(enumerate_ncpp(3).count(), 5);
        assert_eq!(enumerate_ncpp(6).count(), 132);
        assert!(enumerate_ncpp(5).all(|t| t.is_noncrossing()));
    }

    #[test]
    fn ncpp_is_the_noncrossing_part_of_pp() {
        for n in 1..=5 {
            let filtered: Vec<_> = enumerate_pp(n)
                .filter(PairPartition::is_noncrossing)
                .collect();
            assert_eq!(enumerate_ncpp(n).collect::<Vec<_>>(), filtered);
        }
    }

    #[test]
    fn pp_eps_examples() {
        assert_eq!(
            enumerate_pp_eps(&eps(&[-1, 1]))
                .unwrap()
                .collect::<Vec<_>>(),
            vec![pp(&[(1, 2)])]
        );
        assert_eq!(
            enumerate_pp_eps(&eps(&[-1, -1, 1, 1]))
                .unwrap()
                .collect::<Vec<_>>(),
            vec![pp(&[(1, 3), (2, 4)]), pp(&[(1, 4), (2, 3)])]
        );
        assert_eq!(
            enumerate_pp_eps(&eps(&[-1, 1, -1, 1]))
                .unwrap()
                .collect::<Vec<_>>(),
            vec![pp(&[(1, 2), (3, 4)])]
        );
        assert!(matches!(
            enumerate_pp_eps(&eps(&[1, -1])),
            Err(Error::NotPlusClass(_))
        ));
    }

    #[test]
    fn count_formula_examples() {
        assert_eq!(pp_eps_count_formula(&eps(&[-1, 1])).unwrap(), 1);
        assert_eq!(pp_eps_count_formula(&eps(&[-1, -1, 1, 1])).unwrap(), 2);
        assert_eq!(pp_eps_count_formula(&eps(&[-1, 1, -1, 1])).unwrap(), 1);
        assert_eq!(
            pp_eps_count_formula(&eps(&[-1, -1, 1, -1, 1, 1])).unwrap(),
            4
        );
    }

    #[test]
    fn odd_and_empty_grounds() {
        assert_eq!(enumerate_pp_of(vec![1, 2, 3]).count(), 0);
        assert_eq!(
            enumerate_pp_of(Vec::new()).collect::<Vec<_>>(),
            vec![PairPartition::empty()]
        );
        assert_eq!(enumerate_pp_of(vec![10, 20, 30, 40]).count(), 3);
    }
}
