//! The coset integer program and its solvers.

mod bnb;
mod certify;
mod cuts;
mod lp;
mod lpfile;
mod model;
mod prime;
mod relax;
mod report;
mod scalar;

pub use bnb::{ilp_solve, IlpResult, SolveConfig, SolveStatus};
pub use lpfile::{export_lp, export_matrix, lp_string, parse_lp, LpFile, MatrixFormat, DENSE_JSON_LIMIT};
pub use model::{build_coset_ilp, code_projection, feasible, IlpModel};
pub use prime::{analytic_prime_bound, maximum_gap_inequality, random_feasible, systemineq_check, SystemClaims};
pub use relax::{lp_relax, LpSolution, LpStatus};
pub use report::{
    bound_report, literature_lower_bound, literature_table, BoundEntry, BoundKind, BoundMethod, BoundReport,
    LiteratureBound,
};
