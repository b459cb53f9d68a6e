use thiserror::Error;

pub type Result<T, E = BamError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BamError {
    /// An identifier did not resolve against the profile, or a model does
    /// not line up with the profile it is checked against.
    #[error("lookup error: {0}")]
    Lookup(String),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    /// Malformed source instance handed to a reduction or partial solver.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit exceeded after {nodes} nodes ({elapsed_ms} ms)")]
    ResourceLimit { nodes: u64, elapsed_ms: u64 },

    /// The minimum-k driver ran out of budget while deciding `k`.
    #[error("resource limit exceeded at k = {k} after {nodes} nodes ({elapsed_ms} ms)")]
    ResourceLimitAt {
        k: usize,
        nodes: u64,
        elapsed_ms: u64,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A witness could not be mapped back to the source problem.
    #[error("extraction failed: {0}")]
    Extraction(String),
}

impl BamError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            BamError::ResourceLimit { .. } | BamError::ResourceLimitAt { .. }
        )
    }

    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        BamError::Parse {
            line,
            message: message.into(),
        }
    }
}
