//! Structured verification reports with a stable schema.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ConditionResult {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl ConditionResult {
    pub fn new(id: impl Into<String>, status: Status, witness: Option<String>) -> Self {
        ConditionResult {
            id: id.into(),
            status,
            witness,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ReportParameters {
    pub degree: usize,
    pub bound: usize,
    pub budget: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl Summary {
    pub fn of(conditions: &[ConditionResult]) -> Summary {
        let mut s = Summary::default();
        for c in conditions {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Inconclusive => s.inconclusive += 1,
            }
        }
        s
    }
}

/// A report made of named pass/fail/inconclusive conditions (cube faces,
/// midpoints, pre-slicing, slicing).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ConditionReport {
    pub report: String,
    pub engine_version: String,
    pub subject: String,
    pub parameters: ReportParameters,
    pub conditions: Vec<ConditionResult>,
    pub summary: Summary,
}

impl ConditionReport {
    pub fn new(
        kind: &str,
        subject: &str,
        parameters: ReportParameters,
        conditions: Vec<ConditionResult>,
    ) -> Self {
        let summary = Summary::of(&conditions);
        ConditionReport {
            report: kind.to_string(),
            engine_version: crate::ENGINE_VERSION.to_string(),
            subject: subject.to_string(),
            parameters,
            conditions,
            summary,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0 && self.summary.inconclusive == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text rendering: a header, one line per condition, a summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "pcat {} report={} subject={} degree={} bound={} budget={}{}\n",
            self.engine_version,
            self.report,
            self.subject,
            self.parameters.degree,
            self.parameters.bound,
            self.parameters.budget,
            match self.parameters.ambient {
                Some(n) => format!(" ambient={n}"),
                None => String::new(),
            }
        ));
        for c in &self.conditions {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "INCONCLUSIVE",
            };
            match &c.witness {
                Some(w) => out.push_str(&format!("{status} {} witness={w}\n", c.id)),
                None => out.push_str(&format!("{status} {}\n", c.id)),
            }
        }
        out.push_str(&format!(
            "summary pass={} fail={} inconclusive={}\n",
            self.summary.pass, self.summary.fail, self.summary.inconclusive
        ));
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Survivor,
    Rejected,
    Inconclusive,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axiom {
    Containment,
    Uniformity,
    Slicing,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CandidateOutcome {
    pub label: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_axiom: Option<Axiom>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub report: String,
    pub engine_version: String,
    pub parameters: ReportParameters,
    pub candidates: Vec<CandidateOutcome>,
    pub survivors: Vec<String>,
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn all_conclusive(&self) -> bool {
        self.candidates
            .iter()
            .all(|c| c.verdict != Verdict::Inconclusive)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "pcat {} report=classification degree={} bound={} budget={} ambient={}\n",
            self.engine_version,
            self.parameters.degree,
            self.parameters.bound,
            self.parameters.budget,
            self.parameters.ambient.unwrap_or(0),
        ));
        for c in &self.candidates {
            let verdict = match c.verdict {
                Verdict::Survivor => "SURVIVOR",
                Verdict::Rejected => "REJECTED",
                Verdict::Inconclusive => "INCONCLUSIVE",
            };
            out.push_str(&format!("{verdict} {}", c.label));
            if let Some(a) = c.failed_axiom {
                out.push_str(&format!(
                    " axiom={}",
                    match a {
                        Axiom::Containment => "containment",
                        Axiom::Uniformity => "uniformity",
                        Axiom::Slicing => "slicing",
                    }
                ));
            }
            if let Some(w) = &c.witness {
                out.push_str(&format!(" witness={w}"));
            }
            out.push('\n');
        }
        out.push_str(&format!("survivors {}\n", self.survivors.join(" ")));
        out
    }
}
