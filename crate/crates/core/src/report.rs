use serde::Serialize;
use serde_json::Value;

/// Outcome of an exact identity check.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Verification {
    pub ok: bool,
    /// What failed (a generator, an index, ...); `null` on success.
    pub witness: Value,
    /// Number of nonzero terms in the residual.
    pub residual_terms: usize,
}

impl Verification {
    pub fn pass() -> Self {
        Self { ok: true, witness: Value::Null, residual_terms: 0 }
    }

    pub fn fail(witness: Value, residual_terms: usize) -> Self {
        Self { ok: false, witness, residual_terms }
    }

    /// Passes iff the residual count is zero.
    pub fn from_residual(witness: impl FnOnce() -> Value, residual_terms: usize) -> Self {
        if residual_terms == 0 {
            Self::pass()
        } else {
            Self::fail(witness(), residual_terms)
        }
    }

    /// Conjunction, keeping the first failure.
    pub fn and(self, other: Verification) -> Verification {
        if self.ok {
            other
        } else {
            self
        }
    }
}
