/// Size thresholds and search budgets. Every operation that can blow up takes
/// one of these and reports `CapExceeded` / `BudgetExhausted` instead of
/// guessing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order for exhaustive (element-table) computations.
    pub exhaustive_order: u64,
    /// Largest group order for which normalizers and centralizers are found by
    /// scanning every element instead of backtracking.
    pub brute_force_order: u64,
    /// Node cap for a single backtrack search.
    pub node_cap: u64,
    /// Largest index for quotient realization.
    pub index_cap: u64,
    /// Largest permutation degree the constructors will produce.
    pub degree_cap: usize,
    /// Largest `n` accepted for `Sym`, `Alt`, `Cyclic` and `Dihedral`.
    pub named_degree_cap: usize,
    /// Subgroups up to this order are intersected by element filtering.
    pub filter_order: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            exhaustive_order: 50_000,
            brute_force_order: 5_000,
            node_cap: 10_000_000,
            index_cap: 100_000,
            degree_cap: 5_000,
            named_degree_cap: 12,
            filter_order: 10_000,
        }
    }
}

impl Limits {
    pub fn with_exhaustive_order(mut self, order: u64) -> Self {
        self.exhaustive_order = order;
        self
    }

    pub fn with_node_cap(mut self, cap: u64) -> Self {
        self.node_cap = cap;
        self
    }
}
