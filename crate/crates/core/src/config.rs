use serde::{Deserialize, Serialize};

/// Size limits shared by the enumerating operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    /// Largest `n` for which `S_n` may be enumerated (balls, covering checks).
    pub enumeration: usize,
    /// Largest `n` for the exhaustive `P(n,d)` clique search.
    pub oracle: usize,
    /// Largest number of tabloids for a dense action matrix.
    pub dense_dimension: usize,
    /// Largest number of tabloids (or tableaux) for any sparse matrix.
    pub sparse_dimension: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: 8,
            oracle: 5,
            dense_dimension: 100_000,
            sparse_dimension: 10_000_000,
        }
    }
}
