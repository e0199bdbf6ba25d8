//! Canonical enumeration of `k`-dimensional subspaces of `F_p^m`.
//!
//! Each subspace has exactly one reduced row echelon generator. These are
//! grouped by pivot-column set (colexicographic order); within a pivot set
//! the free entries run lexicographically, row-major, first entry most
//! significant. A pivot set is a shard: it can be enumerated on its own.

use alloc::vec;
use alloc::vec::Vec;

use crate::duality::{check_budget, pow_saturating};
use crate::error::{Error, Result};
use crate::fp::{FpMatrix, PrimeField};

/// Number of `k`-dimensional subspaces of `F_p^m`, saturating at `u128::MAX`.
pub fn gaussian_binomial(p: u32, m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    // row[j] = [i choose j]_p for the current i.
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for i in 1..=m {
        for j in (1..=k.min(i)).rev() {
            let shifted = pow_saturating(p as u128, j as u32).saturating_mul(row[j]);
            row[j] = row[j - 1].saturating_add(shifted);
        }
    }
    row[k]
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// The pivot set of colexicographic rank `rank` among `k`-subsets of `0..m`.
pub(crate) fn unrank_pivots(mut rank: u128, m: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    let mut hi = m;
    for i in (0..k).rev() {
        // Largest c < hi with binomial(c, i + 1) <= rank.
        let mut c = hi - 1;
        while binomial(c, i + 1) > rank {
            c -= 1;
        }
        rank -= binomial(c, i + 1);
        out[i] = c;
        hi = c;
    }
    out
}

/// Odometer over the RREF matrices sharing one pivot set.
#[derive(Debug, Clone)]
pub(crate) struct ShardCursor {
    p: u32,
    /// Flat positions (row * cols + col) of the free entries, row-major.
    free: Vec<usize>,
    matrix: Vec<u32>,
    started: bool,
}

impl ShardCursor {
    pub(crate) fn new(p: u32, cols: usize, pivots: &[usize]) -> ShardCursor {
        let k = pivots.len();
        let mut matrix = vec![0u32; k * cols];
        let mut free = Vec::new();
        for (i, &pc) in pivots.iter().enumerate() {
            matrix[i * cols + pc] = 1;
            for c in pc + 1..cols {
                if !pivots.contains(&c) {
                    free.push(i * cols + c);
                }
            }
        }
        ShardCursor { p, free, matrix, started: false }
    }

    /// Advances to the next matrix; `false` once the shard is exhausted.
    pub(crate) fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return true;
        }
        for &pos in self.free.iter().rev() {
            if self.matrix[pos] + 1 < self.p {
                self.matrix[pos] += 1;
                return true;
            }
            self.matrix[pos] = 0;
        }
        false
    }

    pub(crate) fn matrix(&self) -> &[u32] {
        &self.matrix
    }
}

/// Every `k`-dimensional subspace of `F_p^m` as its RREF generator matrix.
#[derive(Debug, Clone)]
pub struct SubspaceIter {
    field: PrimeField,
    m: usize,
    k: usize,
    next_shard: u128,
    shards: u128,
    cursor: Option<ShardCursor>,
}

impl Iterator for SubspaceIter {
    type Item = FpMatrix;

    fn next(&mut self) -> Option<FpMatrix> {
        loop {
            if let Some(c) = self.cursor.as_mut() {
                if c.advance() {
                    let data = c.matrix().to_vec();
                    return FpMatrix::from_vec(self.field, self.k, self.m, data).ok();
                }
            }
            if self.next_shard >= self.shards {
                return None;
            }
            let pivots = unrank_pivots(self.next_shard, self.m, self.k);
            self.cursor = Some(ShardCursor::new(self.field.p(), self.m, &pivots));
            self.next_shard += 1;
        }
    }
}

/// Enumerates the `[m choose k]_p` subspaces, refusing when that count
/// exceeds `limit`.
pub fn enumerate_subspaces(field: PrimeField, m: usize, k: usize, limit: u64) -> Result<SubspaceIter> {
    if k == 0 || k > m {
        return Err(Error::InvalidRange("need 1 <= k <= ambient dimension"));
    }
    check_budget("subspaces", gaussian_binomial(field.p(), m, k), limit)?;
    Ok(SubspaceIter { field, m, k, next_shard: 0, shards: binomial(m, k), cursor: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_binomial(2, 4, 2), 35);
        assert_eq!(gaussian_binomial(2, 8, 4), 200_787);
        assert_eq!(gaussian_binomial(3, 4, 4), 1);
        assert_eq!(gaussian_binomial(3, 4, 1), 40);
        assert_eq!(gaussian_binomial(2, 3, 4), 0);
    }

    #[test]
    fn gaussian_matches_product_formula() {
        for p in [2u32, 3, 5] {
            for m in 1..8usize {
                for k in 0..=m {
                    let mut num: u128 = 1;
                    let mut den: u128 = 1;
                    for i in 0..k {
                        num *= (p as u128).pow((m - i) as u32) - 1;
                        den *= (p as u128).pow((i + 1) as u32) - 1;
                    }
                    assert_eq!(gaussian_binomial(p, m, k), num / den, "p={p} m={m} k={k}");
                }
            }
        }
    }

    #[test]
    fn pivots_in_colex_order() {
        let sets: Vec<Vec<usize>> = (0..binomial(4, 2)).map(|r| unrank_pivots(r, 4, 2)).collect();
        assert_eq!(sets, [vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn enumeration_counts_and_distinct_spans() {
        for (p, m, k) in [(2u64, 4usize, 2usize), (3, 3, 2), (2, 5, 3), (3, 4, 1)] {
            let field = f(p);
            let all: Vec<FpMatrix> = enumerate_subspaces(field, m, k, 1 << 20).unwrap().collect();
            assert_eq!(all.len() as u128, gaussian_binomial(p as u32, m, k));
            let mut spans = BTreeSet::new();
            for g in &all {
                assert_eq!(g.rank(), k);
                assert_eq!(g.rref().matrix, *g);
                spans.insert(g.as_slice().to_vec());
            }
            assert_eq!(spans.len(), all.len());
        }
    }

    #[test]
    fn brute_force_span_count() {
        // Distinct row spaces of all full-rank 2x4 binary matrices.
        let field = f(2);
        let mut spans = BTreeSet::new();
        for bits in 0u32..256 {
            let data: Vec<u32> = (0..8).map(|i| (bits >> i) & 1).collect();
            let g = FpMatrix::from_vec(field, 2, 4, data).unwrap();
            if g.rank() == 2 {
                spans.insert(g.rref().matrix.as_slice().to_vec());
            }
        }
        assert_eq!(spans.len(), 35);
    }

    #[test]
    fn full_space_is_single() {
        let all: Vec<_> = enumerate_subspaces(f(3), 4, 4, 10).unwrap().collect();
        assert_eq!(all, [FpMatrix::identity(f(3), 4)]);
    }

    #[test]
    fn order_within_shard_is_lexicographic() {
        let all: Vec<Vec<u32>> = enumerate_subspaces(f(2), 3, 1, 10).unwrap().map(|g| g.as_slice().to_vec()).collect();
        assert_eq!(
            all,
            [vec![1, 0, 0], vec![1, 0, 1], vec![1, 1, 0], vec![1, 1, 1], vec![0, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]
        );
    }

    #[test]
    fn budget_refusal_names_count() {
        match enumerate_subspaces(f(2), 8, 4, 1000) {
            Err(Error::BudgetExceeded { required, .. }) => assert_eq!(required, 200_787),
            other => panic!("{other:?}"),
        }
    }
}
