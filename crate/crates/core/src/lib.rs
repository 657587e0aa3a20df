//! Engine for categories of two-colored partitions and their linear
//! realizations.
//!
//! The crate is organized around five layers:
//!
//! * [`partition`] — the core value type [`partition::ColoredPartition`]
//!   (canonical form, parsing, enumeration, structural predicates).
//! * [`calculus`] — the diagram operations: horizontal and vertical
//!   concatenation, upside-down turning and edge rotations, with loop
//!   bookkeeping.
//! * [`category`] — degree-truncated categories of partitions: the eight
//!   named vertex categories, a saturation engine for generated categories,
//!   and the lattice operations (intersection, generation, inclusion).
//! * [`linreal`] — exact linear realization: partitions as integer matrices,
//!   rank and Hom-space computations over the rationals, and the uniformity
//!   verdict.
//! * [`lattice`] — the cube model: projections, midpoint/pre-slicing/slicing
//!   verification and the classification harness.
//!
//! All arithmetic on verdict paths is exact; the scalar-generic helpers in
//! [`linreal::exact`] are instantiated at the aliases below.

pub mod calculus;
pub mod category;
pub mod lattice;
pub mod linreal;
pub mod partition;

/// Exact integer scalar used on all verdict paths.
pub type Int = num_bigint::BigInt;

/// Exact rational scalar (used by the brute-force oracles and dumps).
pub type Rat = num_rational::BigRational;

/// Engine version stamped into reports and cache keys.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Default degree bound for truncated categories.
pub const DEFAULT_DEGREE: usize = 6;

/// Default slack added to the degree to obtain the saturation bound.
pub const DEFAULT_BOUND_SLACK: usize = 4;

/// Default work-item budget for saturation runs.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// Default cap on total legs for exhaustive enumeration.
pub const DEFAULT_ENUM_BOUND: usize = 8;

#[cfg(test)]
pub(crate) mod testutil {
    use crate::category::{generate, half_liberation_generators, TruncatedCategory};
    use std::sync::OnceLock;

    /// Shared half-liberation closure at (6, 10); several suites need it and
    /// the saturation is the most expensive fixture.
    pub fn halflib() -> &'static TruncatedCategory {
        static CELL: OnceLock<TruncatedCategory> = OnceLock::new();
        CELL.get_or_init(|| {
            generate(&half_liberation_generators(), 6, 10, crate::DEFAULT_BUDGET)
                .expect("half-liberation closure")
                .with_label("halflib")
        })
    }
}
