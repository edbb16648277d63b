/// Every incompleteness knob in one place. All defaults are desk-scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for Hilbert basis enumeration.
    pub hilbert_max_dim: usize,
    /// Largest `n` for algorithms that scan all `2^n` coordinate subsets.
    pub subset_max_dim: usize,
    /// Largest exponent `m` tried when testing `p^m L ⊆ S`.
    pub charp_cap: u32,
    /// Candidate budget for exhaustive subset searches.
    pub search_budget: u128,
    /// Node budget for a single semigroup membership search.
    pub member_node_budget: u64,
    /// Modulus `M` of the root-of-unity points used by the refutation oracle.
    pub oracle_modulus: u64,
    /// Number of point pairs the oracle may examine.
    pub oracle_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            hilbert_max_dim: 12,
            subset_max_dim: 16,
            charp_cap: 8,
            search_budget: 1_000_000,
            member_node_budget: 2_000_000,
            oracle_modulus: 2 * 3 * 5 * 7,
            oracle_budget: 1_000_000,
        }
    }
}
