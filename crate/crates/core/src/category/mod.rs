//! Degree-truncated categories of partitions and the lattice operations on
//! them.
//!
//! A [`TruncatedCategory`] asserts membership only up to its degree, with
//! intermediates explored up to its bound; equality and inclusion verdicts
//! are always "at (degree, bound)". The `stable` flag records whether the
//! member set survives raising the bound by two; `complete` records whether
//! the exploration reached a fixpoint within its budget.

mod engine;
mod file;
mod oneline;
mod saturate;
mod vertex;

pub use engine::Engine;
pub use file::CategoryFile;
pub use vertex::{predicate_category, vertex_category};

use std::collections::BTreeSet;

use crate::calculus::{rotated_down, rotated_up};
use crate::partition::{cap, Color, ColoredPartition};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard ceiling for predicate enumeration (lower-aligned forms grow like
/// `2^n · Bell(n)`).
pub const MAX_VERTEX_DEGREE: usize = 10;

#[derive(Error, Debug, PartialEq, Eq, Clone)]
pub enum CategoryError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("partition has {legs} legs, beyond the category degree {degree}")]
    Oversized { legs: usize, degree: usize },
    #[error("generator has {legs} legs, beyond the saturation bound {bound}")]
    GeneratorExceedsBound { legs: usize, bound: usize },
    #[error("enumeration degree {degree} exceeds the bound {bound}")]
    EnumerationBound { degree: usize, bound: usize },
    #[error("degree {degree} exceeds bound {bound}")]
    DegreeAboveBound { degree: usize, bound: usize },
    #[error("category file error: {0}")]
    File(String),
}

/// How a category's member set was obtained.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    PredicateEnumerated,
    Saturated,
}

/// A degree-bounded, saturation-closed set of partitions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedCategory {
    label: String,
    degree: usize,
    bound: usize,
    generators: Vec<ColoredPartition>,
    /// Lower-aligned members with at most `degree` legs; rotation-closed by
    /// construction.
    lower: BTreeSet<ColoredPartition>,
    provenance: Provenance,
    stable: bool,
    complete: bool,
}

impl TruncatedCategory {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn generators(&self) -> &[ColoredPartition] {
        &self.generators
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Members unchanged when the bound is raised by two.
    pub fn stable(&self) -> bool {
        self.stable
    }

    /// Whether saturation reached a fixpoint within the work budget.
    pub fn complete(&self) -> bool {
        self.complete
    }

    /// The lower-aligned member forms (one per rotation class).
    pub fn lower_members(&self) -> &BTreeSet<ColoredPartition> {
        &self.lower
    }

    /// All members up to the degree, across every word pair.
    pub fn members(&self) -> BTreeSet<ColoredPartition> {
        let mut out = BTreeSet::new();
        for p in &self.lower {
            for k in 0..=p.total_legs() {
                out.insert(rotated_up(p, k));
            }
        }
        out
    }

    /// Membership of a single partition (must fit within the degree).
    pub fn member(&self, p: &ColoredPartition) -> Result<bool, CategoryError> {
        if p.total_legs() > self.degree {
            return Err(CategoryError::Oversized {
                legs: p.total_legs(),
                degree: self.degree,
            });
        }
        Ok(self.lower.contains(&rotated_down(p)))
    }

    pub fn includes(&self, other: &TruncatedCategory) -> Result<bool, CategoryError> {
        if self.degree != other.degree {
            return Err(CategoryError::DegreeMismatch(self.degree, other.degree));
        }
        Ok(other.lower.is_subset(&self.lower))
    }

    pub fn equals(&self, other: &TruncatedCategory) -> Result<bool, CategoryError> {
        Ok(self.includes(other)? && other.includes(self)?)
    }

    /// Member-set intersection (quantum-group generation, by the dictionary).
    pub fn intersect(&self, other: &TruncatedCategory) -> Result<TruncatedCategory, CategoryError> {
        if self.degree != other.degree {
            return Err(CategoryError::DegreeMismatch(self.degree, other.degree));
        }
        let lower: BTreeSet<_> = self.lower.intersection(&other.lower).cloned().collect();
        let provenance = if self.provenance == Provenance::Saturated
            || other.provenance == Provenance::Saturated
        {
            Provenance::Saturated
        } else {
            Provenance::PredicateEnumerated
        };
        Ok(TruncatedCategory {
            label: format!("intersect({},{})", self.label, other.label),
            degree: self.degree,
            bound: self.bound.min(other.bound),
            generators: Vec::new(),
            lower,
            provenance,
            stable: self.stable && other.stable,
            complete: self.complete && other.complete,
        })
    }

    /// Minimal member (by canonical order) of `self` not in `other`;
    /// `None` when included. Degree mismatch yields `None`.
    pub fn witness_not_in(&self, other: &TruncatedCategory) -> Option<ColoredPartition> {
        self.lower
            .iter()
            .find(|p| !other.lower.contains(*p))
            .map(|p| {
                // Report the two-row form with the canonical split (all
                // legs on the lower row).
                p.clone()
            })
    }

    /// Members where the two plausible readings of the matching rule
    /// disagree (equal but nonzero signed color totals in some block).
    pub fn matching_ambiguous_members(&self) -> Vec<ColoredPartition> {
        self.lower
            .iter()
            .filter(|p| p.matching_readings_disagree())
            .cloned()
            .collect()
    }
}

/// Saturates the category generated by `generators` (plus the base caps and
/// identity strands) at the given truncation. Stability is established by
/// re-running with the bound raised by two and comparing members.
pub fn generate(
    generators: &[ColoredPartition],
    degree: usize,
    bound: usize,
    budget: u64,
) -> Result<TruncatedCategory, CategoryError> {
    if degree > bound {
        return Err(CategoryError::DegreeAboveBound { degree, bound });
    }
    for g in generators {
        if g.total_legs() > bound {
            return Err(CategoryError::GeneratorExceedsBound {
                legs: g.total_legs(),
                bound,
            });
        }
    }
    let seeds: Vec<ColoredPartition> = generators.iter().map(rotated_down).collect();
    let main = saturate::saturate(&seeds, degree, bound, budget);
    let probe = saturate::saturate(&seeds, degree, bound + 2, budget);
    let stable = main.lower == probe.lower;
    Ok(TruncatedCategory {
        label: format!("closure[{}]", generators.len()),
        degree,
        bound,
        generators: generators.to_vec(),
        lower: main.lower,
        provenance: Provenance::Saturated,
        stable,
        complete: main.complete,
    })
}

/// Generators of the half-liberated orthogonal category: the all-white
/// three-strand reversal pairing together with the all-white cap.
pub fn half_liberation_generators() -> Vec<ColoredPartition> {
    let reversal = ColoredPartition::parse("[www|www] {u1 d3} {u2 d2} {u3 d1}")
        .expect("static partition");
    vec![reversal, cap(Color::White, Color::White)]
}
