//! Exact linear realization of partitions.
//!
//! Everything on a verdict path is integer or rational arithmetic: ranks go
//! through integer Gram matrices with fraction-free elimination, Hom-space
//! bases are integer echelon rows, and no floating point appears anywhere.

pub mod exact;
mod hom;
mod op;

pub use hom::{
    compress_basis, e1_extras, flatten, hom_family, saturate_homspaces,
    saturate_homspaces_from, uniformity_check, word_pair_scan_order, HomSpaceFamily, IntBasis,
    SparseVec, UniformityReport, UniformityWitness,
};
pub use op::{t_map, verify_composition_law, LinrealError, SparseOperator};

use crate::partition::ColoredPartition;
use crate::Int;
use exact::{fraction_free_rank, Matrix};

/// Exact rank over the rationals of the family `{t_map(p, N)}`, computed
/// from the integer Gram matrix of entrywise inner products: the Gram entry
/// for a pair of partitions is `N` to the number of blocks of their common
/// coarsening, so no operator is ever materialized.
pub fn span_dim(partitions: &[ColoredPartition], ambient: usize) -> Result<usize, LinrealError> {
    let Some(first) = partitions.first() else {
        return Err(LinrealError::EmptyFamily);
    };
    for p in partitions {
        if p.upper_word() != first.upper_word() || p.lower_word() != first.lower_word() {
            return Err(LinrealError::MixedWordPairs);
        }
    }
    let n = partitions.len();
    let mut gram = Matrix::<Int>::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let blocks = op::joined_block_count(&partitions[i], &partitions[j]);
            let v = num_traits::pow(Int::from(ambient), blocks);
            gram.set(i, j, v.clone());
            gram.set(j, i, v);
        }
    }
    Ok(fraction_free_rank(gram))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{enumerate_partitions, ColorWord, PartitionFilter};

    #[test]
    fn span_dim_of_all_partitions_of_four_points() {
        let down = ColorWord::white(4);
        let all = enumerate_partitions(&ColorWord::empty(), &down, None, 8).unwrap();
        assert_eq!(all.len(), 15);
        assert_eq!(span_dim(&all, 2).unwrap(), 8);
        assert_eq!(span_dim(&all, 3).unwrap(), 14);
        assert_eq!(span_dim(&all, 5).unwrap(), 15);
    }

    #[test]
    fn span_dim_of_temperley_lieb_at_loop_two() {
        let down = ColorWord::white(6);
        let nc = enumerate_partitions(
            &ColorWord::empty(),
            &down,
            Some(PartitionFilter::NcPairing),
            8,
        )
        .unwrap();
        assert_eq!(nc.len(), 5);
        assert_eq!(span_dim(&nc, 2).unwrap(), 5);
    }

    #[test]
    fn span_dim_edge_cases() {
        let down = ColorWord::white(2);
        let caps = enumerate_partitions(&ColorWord::empty(), &down, None, 8).unwrap();
        assert_eq!(span_dim(&caps[..1], 7).unwrap(), 1);
        assert!(matches!(span_dim(&[], 2), Err(LinrealError::EmptyFamily)));
        let mixed = vec![
            crate::partition::cap(crate::partition::Color::White, crate::partition::Color::White),
            crate::partition::cup(crate::partition::Color::White, crate::partition::Color::White),
        ];
        assert!(matches!(span_dim(&mixed, 2), Err(LinrealError::MixedWordPairs)));
    }

    #[test]
    fn span_dim_is_monotone_in_ambient_dimension() {
        for legs in [2usize, 4] {
            let down = ColorWord::white(legs);
            let all = enumerate_partitions(&ColorWord::empty(), &down, None, 8).unwrap();
            let mut prev = 0;
            for ambient in 1..=5usize {
                let d = span_dim(&all, ambient).unwrap();
                assert!(d >= prev, "rank dropped from {prev} to {d} at N={ambient}");
                prev = d;
            }
        }
    }
}
