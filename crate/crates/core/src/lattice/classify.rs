//! Desk-scale classification harness: containment, uniformity, slicing.

use std::sync::Arc;

use super::report::{
    Axiom, CandidateOutcome, ClassificationReport, ReportParameters, Status, Verdict,
};
use super::{slice_check, LatticeError};
use crate::category::{Engine, TruncatedCategory};
use crate::linreal::uniformity_check;
use crate::partition::ClassPredicate;

/// A labeled classification candidate.
#[derive(Clone)]
pub struct PoolEntry {
    pub label: String,
    pub category: Arc<TruncatedCategory>,
}

impl PoolEntry {
    pub fn new(label: impl Into<String>, category: Arc<TruncatedCategory>) -> Self {
        PoolEntry {
            label: label.into(),
            category,
        }
    }
}

/// Runs the three axioms over a candidate pool, cheapest first: containment
/// (the candidate sits between the base category and the even-block
/// category), uniformity at `(ambient, uniformity_degree)`, then the full
/// slicing report. Inconclusive sub-verdicts propagate, never pass.
pub fn classify_pool(
    engine: &Engine,
    pool: &[PoolEntry],
    ambient: usize,
    bound: usize,
    uniformity_degree: usize,
    linreal_budget: u64,
) -> Result<ClassificationReport, LatticeError> {
    let mut candidates = Vec::with_capacity(pool.len());
    let mut survivors = Vec::new();
    for entry in pool {
        let outcome = classify_one(
            engine,
            entry,
            ambient,
            bound,
            uniformity_degree,
            linreal_budget,
        )?;
        if outcome.verdict == Verdict::Survivor {
            survivors.push(outcome.label.clone());
        }
        candidates.push(outcome);
    }
    let degree = pool.first().map_or(0, |e| e.category.degree());
    Ok(ClassificationReport {
        report: "classification".to_string(),
        engine_version: crate::ENGINE_VERSION.to_string(),
        parameters: ReportParameters {
            degree,
            bound,
            budget: engine.budget(),
            ambient: Some(ambient),
        },
        candidates,
        survivors,
    })
}

fn classify_one(
    engine: &Engine,
    entry: &PoolEntry,
    ambient: usize,
    bound: usize,
    uniformity_degree: usize,
    linreal_budget: u64,
) -> Result<CandidateOutcome, LatticeError> {
    let cat = &entry.category;
    let degree = cat.degree();
    let rejected = |axiom, witness| CandidateOutcome {
        label: entry.label.clone(),
        verdict: Verdict::Rejected,
        failed_axiom: Some(axiom),
        witness,
    };

    // Containment: members within the even-block category (the candidate
    // lies above the hyperoctahedral level) and above the base category
    // (it lies below the free unitary level).
    let peven = engine.vertex(ClassPredicate::Peven, degree)?;
    if !peven.includes(cat)? {
        let witness = cat.witness_not_in(&peven).map(|p| p.to_string());
        return Ok(rejected(Axiom::Containment, witness));
    }
    let base = engine.vertex(ClassPredicate::CNC2, degree)?;
    if !cat.includes(&base)? {
        let witness = base.witness_not_in(cat).map(|p| p.to_string());
        return Ok(rejected(Axiom::Containment, witness));
    }

    // Uniformity at (ambient, uniformity_degree).
    let udeg = uniformity_degree.min(degree);
    let report = uniformity_check(cat, ambient, udeg, linreal_budget);
    match report.uniform {
        None => {
            return Ok(CandidateOutcome {
                label: entry.label.clone(),
                verdict: Verdict::Inconclusive,
                failed_axiom: Some(Axiom::Uniformity),
                witness: None,
            })
        }
        Some(false) => {
            let witness = report.witness.map(|w| {
                format!(
                    "({},{}) dim {} vs {}",
                    w.up, w.down, w.compressed_dim, w.expected_dim
                )
            });
            return Ok(rejected(Axiom::Uniformity, witness));
        }
        Some(true) => {}
    }

    // Slicing.
    let slice = slice_check(engine, cat, bound, Some(ambient))?;
    if slice.summary.fail > 0 {
        let first = slice
            .conditions
            .iter()
            .find(|c| c.status == Status::Fail)
            .expect("failing condition");
        let witness = match &first.witness {
            Some(w) => format!("{} {w}", first.id),
            None => first.id.clone(),
        };
        return Ok(rejected(Axiom::Slicing, Some(witness)));
    }
    if slice.summary.inconclusive > 0 {
        return Ok(CandidateOutcome {
            label: entry.label.clone(),
            verdict: Verdict::Inconclusive,
            failed_axiom: Some(Axiom::Slicing),
            witness: None,
        });
    }

    Ok(CandidateOutcome {
        label: entry.label.clone(),
        verdict: Verdict::Survivor,
        failed_axiom: None,
        witness: None,
    })
}
