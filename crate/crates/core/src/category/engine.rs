//! Closure engine with content-addressed caching.
//!
//! Face, slicing and classification checks reuse dozens of closures; the
//! engine memoizes saturation results in memory and, when a cache directory
//! is configured, on disk, keyed by a digest of the canonical seed set and
//! all truncation parameters. Identical keys always reproduce identical
//! results, so cold and warm runs emit the same reports.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{saturate, vertex_category, CategoryError, Provenance, TruncatedCategory};
use crate::calculus::rotated_down;
use crate::partition::{ClassPredicate, ColoredPartition};

struct ClosureOutcome {
    lower: BTreeSet<ColoredPartition>,
    complete: bool,
    stable: bool,
}

#[derive(Serialize, Deserialize)]
struct ClosureRecord {
    engine_version: String,
    degree: usize,
    bound: usize,
    budget: u64,
    complete: bool,
    stable: bool,
    lower: Vec<String>,
}

/// Shared context for category computations: budget plus caches.
pub struct Engine {
    budget: u64,
    cache_dir: Option<PathBuf>,
    closures: RefCell<HashMap<String, Arc<ClosureOutcome>>>,
    vertices: RefCell<HashMap<(ClassPredicate, usize), Arc<TruncatedCategory>>>,
}

impl Engine {
    pub fn new(budget: u64) -> Engine {
        Engine {
            budget,
            cache_dir: None,
            closures: RefCell::new(HashMap::new()),
            vertices: RefCell::new(HashMap::new()),
        }
    }

    pub fn with_cache_dir(mut self, dir: Option<PathBuf>) -> Engine {
        self.cache_dir = dir;
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    fn seed_digest(&self, seeds: &BTreeSet<ColoredPartition>, degree: usize, bound: usize) -> String {
        let mut hasher = Sha256::new();
        hasher.update(crate::ENGINE_VERSION.as_bytes());
        hasher.update([0]);
        hasher.update(degree.to_le_bytes());
        hasher.update(bound.to_le_bytes());
        hasher.update(self.budget.to_le_bytes());
        for s in seeds {
            hasher.update(s.to_string().as_bytes());
            hasher.update([b'\n']);
        }
        let out = hasher.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }

    fn disk_path(&self, key: &str) -> Option<PathBuf> {
        self.cache_dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    fn load_disk(&self, key: &str, degree: usize, bound: usize) -> Option<ClosureOutcome> {
        let path = self.disk_path(key)?;
        let text = std::fs::read_to_string(path).ok()?;
        let rec: ClosureRecord = serde_json::from_str(&text).ok()?;
        if rec.engine_version != crate::ENGINE_VERSION
            || rec.degree != degree
            || rec.bound != bound
            || rec.budget != self.budget
        {
            return None;
        }
        let mut lower = BTreeSet::new();
        for s in rec.lower {
            lower.insert(s.parse::<ColoredPartition>().ok()?);
        }
        Some(ClosureOutcome {
            lower,
            complete: rec.complete,
            stable: rec.stable,
        })
    }

    fn store_disk(&self, key: &str, degree: usize, bound: usize, outcome: &ClosureOutcome) {
        let Some(path) = self.disk_path(key) else { return };
        let Some(dir) = path.parent() else { return };
        if std::fs::create_dir_all(dir).is_err() {
            return;
        }
        let rec = ClosureRecord {
            engine_version: crate::ENGINE_VERSION.to_string(),
            degree,
            bound,
            budget: self.budget,
            complete: outcome.complete,
            stable: outcome.stable,
            lower: outcome.lower.iter().map(|p| p.to_string()).collect(),
        };
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        if let Ok(text) = serde_json::to_string(&rec) {
            if std::fs::write(&tmp, text).is_ok() {
                let _ = std::fs::rename(&tmp, &path);
            }
        }
    }

    fn closure(
        &self,
        seeds: &BTreeSet<ColoredPartition>,
        degree: usize,
        bound: usize,
    ) -> Arc<ClosureOutcome> {
        let key = self.seed_digest(seeds, degree, bound);
        if let Some(hit) = self.closures.borrow().get(&key) {
            return hit.clone();
        }
        if let Some(disk) = self.load_disk(&key, degree, bound) {
            let arc = Arc::new(disk);
            self.closures.borrow_mut().insert(key, arc.clone());
            return arc;
        }
        let seed_vec: Vec<ColoredPartition> = seeds.iter().cloned().collect();
        let main = saturate::saturate(&seed_vec, degree, bound, self.budget);
        let probe = saturate::saturate(&seed_vec, degree, bound + 2, self.budget);
        let outcome = ClosureOutcome {
            stable: main.lower == probe.lower,
            lower: main.lower,
            complete: main.complete,
        };
        self.store_disk(&key, degree, bound, &outcome);
        let arc = Arc::new(outcome);
        self.closures.borrow_mut().insert(key, arc.clone());
        arc
    }

    /// Memoized vertex category.
    pub fn vertex(
        &self,
        name: ClassPredicate,
        degree: usize,
    ) -> Result<Arc<TruncatedCategory>, CategoryError> {
        if let Some(hit) = self.vertices.borrow().get(&(name, degree)) {
            return Ok(hit.clone());
        }
        let v = Arc::new(vertex_category(name, degree)?);
        self.vertices.borrow_mut().insert((name, degree), v.clone());
        Ok(v)
    }

    /// Saturated category generated by explicit generators.
    pub fn generate(
        &self,
        label: &str,
        generators: &[ColoredPartition],
        degree: usize,
        bound: usize,
    ) -> Result<Arc<TruncatedCategory>, CategoryError> {
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
        let seeds: BTreeSet<ColoredPartition> = generators.iter().map(rotated_down).collect();
        let c = self.closure(&seeds, degree, bound);
        Ok(Arc::new(TruncatedCategory {
            label: label.to_string(),
            degree,
            bound,
            generators: generators.to_vec(),
            lower: c.lower.clone(),
            provenance: Provenance::Saturated,
            stable: c.stable,
            complete: c.complete,
        }))
    }

    /// Category generation `<C1 ∪ C2>` (quantum-group intersection, by the
    /// dictionary): saturates the union of the member sets. When one input
    /// already includes the other the larger input is returned unchanged —
    /// every category value is closed at its own truncation.
    pub fn join(
        &self,
        a: &Arc<TruncatedCategory>,
        b: &Arc<TruncatedCategory>,
        bound: usize,
    ) -> Result<Arc<TruncatedCategory>, CategoryError> {
        if a.degree != b.degree {
            return Err(CategoryError::DegreeMismatch(a.degree, b.degree));
        }
        if a.lower.is_subset(&b.lower) {
            return Ok(b.clone());
        }
        if b.lower.is_subset(&a.lower) {
            return Ok(a.clone());
        }
        let seeds: BTreeSet<ColoredPartition> =
            a.lower.union(&b.lower).cloned().collect();
        let c = self.closure(&seeds, a.degree, bound);
        Ok(Arc::new(TruncatedCategory {
            label: format!("join({},{})", a.label, b.label),
            degree: a.degree,
            bound,
            generators: Vec::new(),
            lower: c.lower.clone(),
            provenance: Provenance::Saturated,
            stable: c.stable,
            complete: c.complete,
        }))
    }

    /// Member-set intersection (quantum-group generation).
    pub fn intersect(
        &self,
        a: &Arc<TruncatedCategory>,
        b: &Arc<TruncatedCategory>,
    ) -> Result<Arc<TruncatedCategory>, CategoryError> {
        Ok(Arc::new(a.intersect(b)?))
    }
}
