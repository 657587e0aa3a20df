//! Partitions as exact integer matrices between tensor powers.
//!
//! `t_map(p, N)` realizes a partition as the 0/1 matrix whose entry at a
//! (lower tuple, upper tuple) pair is the block-constancy Kronecker symbol.
//! Rows are indexed by the lower word, columns by the upper word; multi-index
//! order is lexicographic with the leftmost leg most significant.

use std::collections::BTreeMap;

use crate::calculus::{compose, CalculusError, UnionFind};
use crate::partition::{ColorWord, ColoredPartition};
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq, Clone)]
pub enum LinrealError {
    #[error("operators have mismatched words: {0} vs {1}")]
    WordMismatch(String, String),
    #[error("operators have mismatched ambient dimensions: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("partition list is empty")]
    EmptyFamily,
    #[error("partitions do not share a word pair")]
    MixedWordPairs,
    #[error(transparent)]
    Calculus(#[from] CalculusError),
}

/// Sparse integer matrix indexed by multi-indices over `{1..N}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseOperator {
    row_word: ColorWord,
    col_word: ColorWord,
    ambient: usize,
    entries: BTreeMap<(u64, u64), i64>,
}

impl SparseOperator {
    pub fn new(row_word: ColorWord, col_word: ColorWord, ambient: usize) -> Self {
        SparseOperator {
            row_word,
            col_word,
            ambient,
            entries: BTreeMap::new(),
        }
    }

    pub fn row_word(&self) -> &ColorWord {
        &self.row_word
    }

    pub fn col_word(&self) -> &ColorWord {
        &self.col_word
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rows(&self) -> u64 {
        (self.ambient as u64).pow(self.row_word.len() as u32)
    }

    pub fn cols(&self) -> u64 {
        (self.ambient as u64).pow(self.col_word.len() as u32)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u64, u64), &i64)> {
        self.entries.iter()
    }

    pub fn entry(&self, row: u64, col: u64) -> i64 {
        self.entries.get(&(row, col)).copied().unwrap_or(0)
    }

    pub fn add_entry(&mut self, row: u64, col: u64, value: i64) {
        if value == 0 {
            return;
        }
        let slot = self.entries.entry((row, col)).or_insert(0);
        *slot += value;
        if *slot == 0 {
            self.entries.remove(&(row, col));
        }
    }

    pub fn transpose(&self) -> SparseOperator {
        let mut out = SparseOperator::new(
            self.col_word.clone(),
            self.row_word.clone(),
            self.ambient,
        );
        for (&(r, c), &v) in &self.entries {
            out.add_entry(c, r, v);
        }
        out
    }

    pub fn scaled(&self, factor: i64) -> SparseOperator {
        let mut out = self.clone();
        if factor == 0 {
            out.entries.clear();
            return out;
        }
        for v in out.entries.values_mut() {
            *v *= factor;
        }
        out
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn matmul(&self, other: &SparseOperator) -> Result<SparseOperator, LinrealError> {
        if self.ambient != other.ambient {
            return Err(LinrealError::AmbientMismatch(self.ambient, other.ambient));
        }
        if self.col_word != other.row_word {
            return Err(LinrealError::WordMismatch(
                self.col_word.to_string(),
                other.row_word.to_string(),
            ));
        }
        let mut by_row: BTreeMap<u64, Vec<(u64, i64)>> = BTreeMap::new();
        for (&(r, c), &v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = SparseOperator::new(
            self.row_word.clone(),
            other.col_word.clone(),
            self.ambient,
        );
        for (&(r, m), &va) in &self.entries {
            if let Some(cols) = by_row.get(&m) {
                for &(c, vb) in cols {
                    out.add_entry(r, c, va * vb);
                }
            }
        }
        Ok(out)
    }

    /// Identity matrix on the tensor power of a word.
    pub fn identity(word: &ColorWord, ambient: usize) -> SparseOperator {
        let mut out = SparseOperator::new(word.clone(), word.clone(), ambient);
        let total = (ambient as u64).pow(word.len() as u32);
        for i in 0..total {
            out.add_entry(i, i, 1);
        }
        out
    }
}

/// The linear realization of a partition at ambient dimension `N`: entries
/// are 1 exactly where the joint index assignment is constant on blocks, so
/// there is one entry per function from blocks to `{1..N}`.
pub fn t_map(p: &ColoredPartition, ambient: usize) -> SparseOperator {
    let k = p.upper_len();
    let l = p.lower_len();
    let nblocks = p.block_count();
    let mut out = SparseOperator::new(
        p.lower_word().clone(),
        p.upper_word().clone(),
        ambient,
    );
    if ambient == 0 {
        return out;
    }
    // Enumerate block assignments; 0-based digits.
    let mut assign = vec![0usize; nblocks];
    loop {
        let mut col = 0u64;
        for i in 0..k {
            col = col * ambient as u64 + assign[p.class_of(i) as usize] as u64;
        }
        let mut row = 0u64;
        for j in 0..l {
            row = row * ambient as u64 + assign[p.class_of(k + j) as usize] as u64;
        }
        out.add_entry(row, col, 1);
        // Next assignment.
        let mut pos = nblocks;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            assign[pos] += 1;
            if assign[pos] < ambient {
                break;
            }
            assign[pos] = 0;
        }
        if nblocks == 0 {
            return out;
        }
    }
}

/// Checks the operator law for a composable pair: the composite of the
/// realizations (apply `p` first, then `q`) equals `N^loops` times the
/// realization of the composed partition, exactly.
pub fn verify_composition_law(
    p: &ColoredPartition,
    q: &ColoredPartition,
    ambient: usize,
) -> Result<bool, LinrealError> {
    let composed = compose(p, q)?;
    let product = t_map(q, ambient).matmul(&t_map(p, ambient))?;
    let factor = (ambient as i64).pow(composed.loops as u32);
    Ok(product == t_map(&composed.partition, ambient).scaled(factor))
}

/// Number of blocks of the common coarsening of two partitions on the same
/// word pair; the Gram matrix entry is `N` to this power.
pub(crate) fn joined_block_count(
    a: &ColoredPartition,
    b: &ColoredPartition,
) -> usize {
    debug_assert_eq!(a.upper_word(), b.upper_word());
    debug_assert_eq!(a.lower_word(), b.lower_word());
    let n = a.total_legs();
    let mut uf = UnionFind::new(n);
    for p in [a, b] {
        let mut first: Vec<Option<usize>> = vec![None; p.block_count()];
        for i in 0..n {
            let c = p.class_of(i) as usize;
            match first[c] {
                None => first[c] = Some(i),
                Some(f) => uf.union(f, i),
            }
        }
    }
    let mut roots = std::collections::BTreeSet::new();
    for i in 0..n {
        roots.insert(uf.find(i));
    }
    roots.len()
}
