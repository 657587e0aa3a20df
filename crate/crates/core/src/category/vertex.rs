//! Predicate-enumerated categories: the eight cube vertices and arbitrary
//! predicate pools.
//!
//! Enumeration runs over lower-aligned forms (all colorings of all block
//! structures per width); the four structural predicates are invariant
//! under rotation, so the two-row members are recovered by rotating legs
//! back up, exactly as for saturated categories.

use std::collections::BTreeSet;

use super::{CategoryError, Provenance, TruncatedCategory, MAX_VERTEX_DEGREE};
use crate::partition::{ClassPredicate, ColorWord, ColoredPartition};

/// All lower-aligned colored partitions of the given width.
fn aligned_forms(width: usize) -> Vec<ColoredPartition> {
    let mut out = Vec::new();
    for mask in 0..(1u32 << width) {
        let colors: Vec<_> = (0..width)
            .map(|i| {
                if mask >> i & 1 == 0 {
                    crate::partition::Color::White
                } else {
                    crate::partition::Color::Black
                }
            })
            .collect();
        let word = ColorWord::new(colors);
        for classes in crate::partition::RgsIter::new(width) {
            let raw: Vec<usize> = classes.iter().map(|&c| c as usize).collect();
            out.push(ColoredPartition::from_classes(
                ColorWord::empty(),
                word.clone(),
                &raw,
            ));
        }
    }
    out
}

/// Enumerates the truncated category of all partitions satisfying the
/// predicate, up to the degree.
pub fn predicate_category(
    label: &str,
    degree: usize,
    pred: impl Fn(&ColoredPartition) -> bool,
) -> Result<TruncatedCategory, CategoryError> {
    if degree > MAX_VERTEX_DEGREE {
        return Err(CategoryError::EnumerationBound {
            degree,
            bound: MAX_VERTEX_DEGREE,
        });
    }
    let mut lower = BTreeSet::new();
    for width in 0..=degree {
        for p in aligned_forms(width) {
            if pred(&p) {
                lower.insert(p);
            }
        }
    }
    Ok(TruncatedCategory {
        label: label.to_string(),
        degree,
        bound: degree,
        generators: Vec::new(),
        lower,
        provenance: Provenance::PredicateEnumerated,
        stable: true,
        complete: true,
    })
}

/// One of the eight cube vertex categories.
pub fn vertex_category(
    name: ClassPredicate,
    degree: usize,
) -> Result<TruncatedCategory, CategoryError> {
    predicate_category(name.name(), degree, |p| name.matches(p.flags()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{enumerate_partitions, ColorWord, PartitionFilter};
    use ClassPredicate::*;

    #[test]
    fn vertex_membership_examples() {
        let cnc2 = vertex_category(CNC2, 4).unwrap();
        assert!(cnc2.member(&"[|wb] {d1 d2}".parse().unwrap()).unwrap());
        assert!(!cnc2.member(&"[|ww] {d1 d2}".parse().unwrap()).unwrap());

        let p2 = vertex_category(P2, 4).unwrap();
        let at_wwww: Vec<_> = p2
            .members()
            .into_iter()
            .filter(|m| {
                m.upper_word().to_string() == "ww" && m.lower_word().to_string() == "ww"
            })
            .collect();
        assert_eq!(at_wwww.len(), 3, "two strands, cap over cup, crossing");
    }

    #[test]
    fn nc2_and_p2_counts_on_six_points() {
        let nc2 = vertex_category(NC2, 6).unwrap();
        let p2 = vertex_category(P2, 6).unwrap();
        let count = |c: &TruncatedCategory| {
            c.members()
                .into_iter()
                .filter(|m| m.upper_len() == 0 && m.lower_word().to_string() == "wwwwww")
                .count()
        };
        assert_eq!(count(&nc2), 5);
        assert_eq!(count(&p2), 15);
        assert!(p2.includes(&nc2).unwrap());
    }

    #[test]
    fn members_agree_with_direct_two_row_enumeration() {
        // The lower-aligned representation must reproduce plain filtered
        // enumeration on every word pair; this pins the rotation invariance
        // of the predicates.
        for name in [Peven, CP2, NCeven, CNC2] {
            let cat = vertex_category(name, 4).unwrap();
            let members = cat.members();
            for k in 0..=4usize {
                for l in 0..=4 - k {
                    for ucode in 0..(1u32 << k) {
                        for dcode in 0..(1u32 << l) {
                            let up = ColorWord::new(
                                (0..k)
                                    .map(|i| {
                                        if ucode >> i & 1 == 0 {
                                            crate::partition::Color::White
                                        } else {
                                            crate::partition::Color::Black
                                        }
                                    })
                                    .collect(),
                            );
                            let down = ColorWord::new(
                                (0..l)
                                    .map(|i| {
                                        if dcode >> i & 1 == 0 {
                                            crate::partition::Color::White
                                        } else {
                                            crate::partition::Color::Black
                                        }
                                    })
                                    .collect(),
                            );
                            let direct: BTreeSet<_> = enumerate_partitions(
                                &up,
                                &down,
                                Some(PartitionFilter::Class(name)),
                                8,
                            )
                            .unwrap()
                            .into_iter()
                            .collect();
                            let via: BTreeSet<_> = members
                                .iter()
                                .filter(|m| {
                                    m.upper_word() == &up && m.lower_word() == &down
                                })
                                .cloned()
                                .collect();
                            assert_eq!(direct, via, "{name:?} at ({up}, {down})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn degree_bound_is_enforced() {
        assert!(matches!(
            vertex_category(Peven, 11),
            Err(CategoryError::EnumerationBound { .. })
        ));
    }
}
