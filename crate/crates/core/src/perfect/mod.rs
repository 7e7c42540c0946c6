//! Obstructions to 1-perfect Kendall codes.

mod modp;
mod obstruction;

pub use modp::{
    berlekamp_massey, check_nonsingular, dense_nonsingular, invertible_mod_p, reduce_rational, wiedemann_nonsingular,
    CheckMethod, EliminationBudget, ModPCheck, ModPMatrix, Verdict, DENSE_LIMIT, PRIME_LIMIT,
};
pub use obstruction::{
    conjecture_check, divisibility_precondition, obstruction_coset, obstruction_irreps, perfect_counting_condition,
    Conclusion, ConstituentList, MatrixCheck, MatrixVerdict, ObstructionOptions, ObstructionReport, Route,
    DEFAULT_PRIMES,
};
