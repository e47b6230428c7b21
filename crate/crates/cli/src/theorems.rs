//! Registry of check bundles, keyed by theorem id.

use std::sync::OnceLock;
use std::time::Instant;

use diamwidth::{Error, Result};
use serde::{Deserialize, Serialize};

use crate::experiment::{run_experiment, ExperimentPlan, Status};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremEntry {
    pub id: String,
    pub cite: String,
    pub summary: String,
    pub plan: Vec<ExperimentPlan>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremRegistry {
    pub version: u32,
    pub theorem: Vec<TheoremEntry>,
}

impl TheoremRegistry {
    pub fn parse(text: &str) -> Result<Self> {
        let r: TheoremRegistry =
            toml::from_str(text).map_err(|e| Error::Plan(format!("theorem registry: {e}")))?;
        for t in &r.theorem {
            for p in &t.plan {
                p.validate()?;
            }
        }
        Ok(r)
    }

    pub fn get(&self, id: &str) -> Result<&TheoremEntry> {
        self.theorem
            .iter()
            .find(|t| t.id == id)
            .ok_or_else(|| Error::UnknownKey(id.to_string()))
    }
}

pub fn theorem_registry() -> &'static TheoremRegistry {
    static R: OnceLock<TheoremRegistry> = OnceLock::new();
    R.get_or_init(|| {
        TheoremRegistry::parse(include_str!("theorems.toml"))
            .expect("bundled theorem registry parses")
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub plan: String,
    pub family: String,
    pub check: String,
    pub status: Status,
    pub millis: u128,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TheoremReport {
    pub id: String,
    pub cite: String,
    pub registry_version: u32,
    pub status: Status,
    pub millis: u128,
    pub checks: Vec<CheckReport>,
}

/// Runs every plan of the bundle; the overall status is the worst check status.
pub fn verify_theorem(id: &str) -> Result<TheoremReport> {
    let reg = theorem_registry();
    let entry = reg.get(id)?;
    let start = Instant::now();
    let mut checks = Vec::new();
    let mut status = Status::Pass;
    for plan in &entry.plan {
        let report = run_experiment(plan)?;
        status = status.worse(report.status());
        for row in &report.rows {
            if let Some(e) = &row.error {
                checks.push(CheckReport {
                    plan: plan.name.clone(),
                    family: row.family.clone(),
                    check: "build".into(),
                    status: Status::Error,
                    millis: 0,
                    detail: Some(e.clone()),
                });
            }
            for c in &row.checks {
                checks.push(CheckReport {
                    plan: plan.name.clone(),
                    family: row.family.clone(),
                    check: c.column.clone(),
                    status: c.status,
                    millis: c.millis,
                    detail: None,
                });
            }
        }
    }
    Ok(TheoremReport {
        id: entry.id.clone(),
        cite: entry.cite.clone(),
        registry_version: reg.version,
        status,
        millis: start.elapsed().as_millis(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_keys() {
        let ids: Vec<&str> = theorem_registry()
            .theorem
            .iter()
            .map(|t| t.id.as_str())
            .collect();
        assert_eq!(
            ids,
            [
                "thm5-gadget",
                "thm10-polarity",
                "thm15-gadget",
                "thm17-gadget",
                "samecyc-gadgets",
                "h3-contrast",
                "cwtw-contrast"
            ]
        );
        assert!(matches!(
            verify_theorem("nonexistent"),
            Err(Error::UnknownKey(_))
        ));
    }

    #[test]
    fn thm5_passes() {
        let r = verify_theorem("thm5-gadget").unwrap();
        assert_eq!(r.status, Status::Pass, "{r:?}");
        assert_eq!(r.checks.len(), 6);
    }
}
