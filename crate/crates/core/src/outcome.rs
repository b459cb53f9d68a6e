use serde::Serialize;

use crate::model::AttributeModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Decision {
    Yes,
    No,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed_ms: u64,
}

/// Result of a decision procedure. A YES always carries a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub decision: Decision,
    pub witness: Option<AttributeModel>,
    pub stats: SearchStats,
    /// Short explanation for NO answers decided by a direct argument.
    pub reason: Option<String>,
}

impl SolveOutcome {
    pub fn yes(witness: AttributeModel, stats: SearchStats) -> Self {
        Self {
            decision: Decision::Yes,
            witness: Some(witness),
            stats,
            reason: None,
        }
    }

    pub fn no(stats: SearchStats) -> Self {
        Self {
            decision: Decision::No,
            witness: None,
            stats,
            reason: None,
        }
    }

    pub fn no_because(reason: impl Into<String>, stats: SearchStats) -> Self {
        Self {
            reason: Some(reason.into()),
            ..Self::no(stats)
        }
    }

    pub fn is_yes(&self) -> bool {
        self.decision == Decision::Yes
    }
}
