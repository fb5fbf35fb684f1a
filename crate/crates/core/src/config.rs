//! Size caps for the finite searches in this crate.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest conductor accepted when building an abelian field.
    pub max_conductor: u64,
    /// Largest group order accepted for character-table computation.
    pub max_group_order: usize,
    /// Largest candidate grid the constraint engine will scan.
    pub max_candidates: u64,
    /// Number of group-algebra elements tried when looking for a quaternion basis.
    pub schur_search_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_conductor: 1_000_000,
            max_group_order: 256,
            max_candidates: 1_000_000,
            schur_search_budget: 4096,
        }
    }
}
