//! On-disk category records.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use super::{CategoryError, Provenance, TruncatedCategory};
use crate::calculus::rotated_down;
use crate::partition::ColoredPartition;

/// Structured category record: generators, truncation parameters and the
/// full member list in canonical order (word pair, then serialization).
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CategoryFile {
    pub label: String,
    pub degree: usize,
    pub bound: usize,
    pub stable: bool,
    pub complete: bool,
    pub provenance: Provenance,
    pub generators: Vec<String>,
    pub members: Vec<String>,
}

impl CategoryFile {
    pub fn from_category(cat: &TruncatedCategory) -> CategoryFile {
        CategoryFile {
            label: cat.label().to_string(),
            degree: cat.degree(),
            bound: cat.bound(),
            stable: cat.stable(),
            complete: cat.complete(),
            provenance: cat.provenance(),
            generators: cat.generators().iter().map(|g| g.to_string()).collect(),
            members: cat.members().iter().map(|m| m.to_string()).collect(),
        }
    }

    pub fn into_category(self) -> Result<TruncatedCategory, CategoryError> {
        let mut lower = BTreeSet::new();
        for text in &self.members {
            let p: ColoredPartition = text
                .parse()
                .map_err(|e| CategoryError::File(format!("bad member {text:?}: {e}")))?;
            if p.total_legs() > self.degree {
                return Err(CategoryError::File(format!(
                    "member {text:?} exceeds declared degree {}",
                    self.degree
                )));
            }
            lower.insert(rotated_down(&p));
        }
        let mut generators = Vec::new();
        for text in &self.generators {
            generators.push(
                text.parse::<ColoredPartition>()
                    .map_err(|e| CategoryError::File(format!("bad generator {text:?}: {e}")))?,
            );
        }
        Ok(TruncatedCategory {
            label: self.label,
            degree: self.degree,
            bound: self.bound,
            generators,
            lower,
            provenance: self.provenance,
            stable: self.stable,
            complete: self.complete,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("category file serializes")
    }

    pub fn from_json(text: &str) -> Result<CategoryFile, CategoryError> {
        serde_json::from_str(text).map_err(|e| CategoryError::File(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::vertex_category;
    use crate::partition::ClassPredicate;

    #[test]
    fn category_file_round_trip() {
        let cat = vertex_category(ClassPredicate::CNC2, 4).unwrap();
        let file = CategoryFile::from_category(&cat);
        let json = file.to_json();
        let back = CategoryFile::from_json(&json).unwrap().into_category().unwrap();
        assert!(back.equals(&cat).unwrap());
        assert_eq!(back.label(), "CNC2");
        // Serialization is deterministic.
        assert_eq!(json, CategoryFile::from_category(&back).to_json());
    }

    #[test]
    fn rejects_member_beyond_degree() {
        let cat = vertex_category(ClassPredicate::CNC2, 4).unwrap();
        let mut file = CategoryFile::from_category(&cat);
        file.degree = 2;
        assert!(matches!(
            file.into_category(),
            Err(CategoryError::File(_))
        ));
    }
}
