//! Brute-force oracle: Killing-tensor spaces as explicit subspaces of
//! tensor powers, with dimensions computed by exact rank.
//!
//! Tensors with `2k` slots over `R^d` are flattened with slot 0 as the most
//! significant digit. Slots `0..k` are the first Young row, `k..2k` the
//! second, and column `i` is the pair `(i, k+i)`.

mod ambient;
mod casimir;
mod constraints;
mod index;
mod oracle;
mod young;

pub use ambient::{build_ambient, AmbientModel, OracleBudget, BUDGET_ENV};
pub use casimir::{
    casimir_decomposition, casimir_value, rank2_branching_check, CasimirComponent, CasimirReport,
};
pub use constraints::{derivation_action, derivation_constraints, j_trace_constraints, j_traces};
pub use oracle::{
    generation_rank, generation_rank_with, killing_field_space, oracle_cpn_dim,
    oracle_cpn_dim_direct, oracle_cpn_dim_with, oracle_cpn_space, oracle_cpn_space_with,
    oracle_sphere_dim, oracle_sphere_dim_with, GenerationReport,
};
pub use young::{
    apply_young, young_space_on, young_two_row_space, young_two_row_space_with, TensorSubspace,
};
