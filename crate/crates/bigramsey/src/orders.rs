//! Finite linear orders and well-preorders over dense 0-based index sets.

use thiserror::Error;

/// Element of a ground set. Ground sets are always `0..n`.
pub type Elem = usize;

/// Hard cap on ground-set size so ancestor sets fit in a `u64` bitmask.
pub const MAX_GROUND: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("rank vector is not a bijection onto 0..n")]
    NotBijective,
    #[error("ground set too large: {0} > {max}", max = MAX_GROUND)]
    TooLarge(usize),
}

/// A linear order on `0..n`, stored as `rank[e] = position of e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearOrder {
    rank: Vec<usize>,
}

impl LinearOrder {
    pub fn new(rank: Vec<usize>) -> Result<Self, OrderError> {
        if rank.len() > MAX_GROUND {
            return Err(OrderError::TooLarge(rank.len()));
        }
        let mut seen = vec![false; rank.len()];
        for &r in &rank {
            if r >= rank.len() || seen[r] {
                return Err(OrderError::NotBijective);
            }
            seen[r] = true;
        }
        Ok(LinearOrder { rank })
    }

    /// The identity order `0 < 1 < ... < n-1`.
    pub fn identity(n: usize) -> Self {
        LinearOrder { rank: (0..n).collect() }
    }

    /// Builds the order from the sequence of elements listed smallest first.
    pub fn from_sequence(seq: &[Elem]) -> Result<Self, OrderError> {
        let mut rank = vec![usize::MAX; seq.len()];
        for (pos, &e) in seq.iter().enumerate() {
            if e >= seq.len() || rank[e] != usize::MAX {
                return Err(OrderError::NotBijective);
            }
            rank[e] = pos;
        }
        Self::new(rank)
    }

    pub fn n(&self) -> usize {
        self.rank.len()
    }

    pub fn rank(&self, e: Elem) -> usize {
        self.rank[e]
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        self.rank[a] < self.rank[b]
    }

    /// True iff `c` lies strictly between `a` and `b`, regardless of which of
    /// `a`, `b` is smaller.
    pub fn strictly_between(&self, c: Elem, a: Elem, b: Elem) -> bool {
        let (lo, hi) = if self.lt(a, b) { (a, b) } else { (b, a) };
        self.lt(lo, c) && self.lt(c, hi)
    }

    /// Elements listed smallest first.
    pub fn sequence(&self) -> Vec<Elem> {
        let mut seq = vec![0; self.rank.len()];
        for (e, &r) in self.rank.iter().enumerate() {
            seq[r] = e;
        }
        seq
    }
}

/// A well-preorder on `0..n`, stored as `level[e]`; ties are permitted.
///
/// On a finite set every total preorder given by levels is a well-preorder,
/// and it is a linear order iff `level` is injective.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WellPreorder {
    level: Vec<usize>,
}

impl WellPreorder {
    pub fn new(level: Vec<usize>) -> Result<Self, OrderError> {
        if level.len() > MAX_GROUND {
            return Err(OrderError::TooLarge(level.len()));
        }
        Ok(WellPreorder { level })
    }

    /// Builds the preorder from the sequence of elements listed earliest
    /// first; the result is a linear well-order.
    pub fn from_sequence(seq: &[Elem]) -> Result<Self, OrderError> {
        let mut level = vec![usize::MAX; seq.len()];
        for (pos, &e) in seq.iter().enumerate() {
            if e >= seq.len() || level[e] != usize::MAX {
                return Err(OrderError::NotBijective);
            }
            level[e] = pos;
        }
        Self::new(level)
    }

    pub fn n(&self) -> usize {
        self.level.len()
    }

    pub fn level(&self, e: Elem) -> usize {
        self.level[e]
    }

    pub fn le(&self, a: Elem, b: Elem) -> bool {
        self.level[a] <= self.level[b]
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        self.level[a] < self.level[b]
    }

    pub fn tied(&self, a: Elem, b: Elem) -> bool {
        self.level[a] == self.level[b]
    }

    pub fn is_linear(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.level.iter().all(|&l| seen.insert(l))
    }

    /// Levels renumbered to a dense `0..k` range preserving order and ties.
    pub fn normalized_levels(&self) -> Vec<usize> {
        let mut distinct: Vec<usize> = self.level.clone();
        distinct.sort_unstable();
        distinct.dedup();
        self.level
            .iter()
            .map(|l| distinct.binary_search(l).unwrap())
            .collect()
    }

    /// Restriction to a subset of elements, reindexed by `subset` position.
    pub fn restrict(&self, subset: &[Elem]) -> WellPreorder {
        WellPreorder { level: subset.iter().map(|&e| self.level[e]).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_order_rejects_non_bijection() {
        assert_eq!(LinearOrder::new(vec![0, 0, 2]), Err(OrderError::NotBijective));
        assert_eq!(LinearOrder::new(vec![0, 3, 1]), Err(OrderError::NotBijective));
        assert!(LinearOrder::new(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn from_sequence_round_trips() {
        let o = LinearOrder::from_sequence(&[1, 0, 2]).unwrap();
        assert_eq!(o.sequence(), vec![1, 0, 2]);
        assert!(o.lt(1, 0) && o.lt(0, 2));
    }

    #[test]
    fn betweenness_is_symmetric_in_endpoints() {
        let o = LinearOrder::identity(4);
        assert!(o.strictly_between(1, 0, 2));
        assert!(o.strictly_between(1, 2, 0));
        assert!(!o.strictly_between(3, 0, 2));
    }

    #[test]
    fn preorder_ties_and_normalization() {
        let p = WellPreorder::new(vec![5, 2, 5, 9]).unwrap();
        assert!(p.tied(0, 2));
        assert!(p.lt(1, 0));
        assert!(!p.is_linear());
        assert_eq!(p.normalized_levels(), vec![1, 0, 1, 2]);
        assert!(WellPreorder::from_sequence(&[2, 0, 1]).unwrap().is_linear());
    }
}
