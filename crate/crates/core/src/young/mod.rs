//! Number partitions, Young tabloids and the representations of `S_n`
//! built on them.

mod action;
mod partition;
mod seminormal;
mod tableau;
mod tabloid;

pub use action::{
    build_action_matrix, double_coset_oracle, permutation_similar_to_path, tridiagonal_reference, ActionMatrix,
};
pub use partition::{constituents_dominating, dominance_geq, literature_s15_list, NumberPartition};
pub use seminormal::{
    irrep_t_matrix, seminormal_generator, Rational, SeminormalBasis, SeminormalGenerator, SparseRationalMatrix,
    MAX_SEMINORMAL_N,
};
pub use tableau::{enumerate_syt, hook_length_dimension, StandardYoungTableau};
pub use tabloid::{act, enumerate_tabloids, tabloid_count, TabloidIndexer, YoungTabloid};
