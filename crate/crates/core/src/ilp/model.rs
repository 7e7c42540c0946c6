//! The coset integer program `max 1ᵀx` subject to `M x <= |H|·1`, `x >= 0`
//! integral.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::perm::Code;
use crate::young::{act, build_action_matrix, ActionMatrix, NumberPartition, TabloidIndexer, YoungTabloid};

/// Coset ILP for one shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpModel {
    matrix: ActionMatrix,
    rhs: BigUint,
}

impl IlpModel {
    /// Wraps an arbitrary nonnegative matrix and right-hand side.
    pub fn new(matrix: ActionMatrix, rhs: BigUint) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::InvalidInput("rhs must be at least 1".into()));
        }
        for i in 0..matrix.dim() {
            if matrix.row(i).all(|(_, v)| v == 0) {
                return Err(Error::InvalidInput(format!("row {i} has no positive entry")));
            }
        }
        Ok(IlpModel { matrix, rhs })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ActionMatrix {
        &self.matrix
    }

    pub fn rhs(&self) -> &BigUint {
        &self.rhs
    }

    /// Upper bound `⌊rhs / M_jj⌋` implied on each variable by its own row.
    pub fn variable_bounds(&self) -> Vec<BigUint> {
        (0..self.dim())
            .map(|j| {
                let d = self.matrix.get(j, j);
                if d == 0 {
                    self.rhs.clone()
                } else {
                    &self.rhs / BigUint::from(d)
                }
            })
            .collect()
    }
}

/// Builds the coset ILP of `shape` with `rhs = ∏ λ_i!`.
pub fn build_coset_ilp(n: usize, shape: &NumberPartition, limits: &Limits) -> Result<IlpModel> {
    let matrix = build_action_matrix(n, shape, limits)?;
    IlpModel::new(matrix, shape.young_subgroup_order())
}

/// `true` iff `x >= 0` and `M x <= rhs` componentwise.
pub fn feasible(model: &IlpModel, x: &[BigInt]) -> Result<bool> {
    if x.len() != model.dim() {
        return Err(Error::LengthMismatch(model.dim(), x.len()));
    }
    if x.iter().any(|v| v.is_negative()) {
        return Ok(false);
    }
    let rhs = BigInt::from(model.rhs.clone());
    for i in 0..model.dim() {
        let lhs: BigInt = model.matrix.row(i).map(|(j, v)| &x[j] * BigInt::from(v)).sum();
        if lhs > rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of code members in each coset of the Young subgroup of `shape`.
///
/// The coset of `c` is identified by the tabloid `t₀^(c⁻¹)`, so that the
/// radius-one ball around `c` meets coset `j` exactly `M[i][j]` times when
/// `c` lies in coset `i`.
pub fn code_projection(code: &Code, shape: &NumberPartition, limits: &Limits) -> Result<Vec<u64>> {
    let n = code.n();
    if n > limits.enumeration {
        return Err(Error::limit("n", n, limits.enumeration));
    }
    if shape.n() != n {
        return Err(Error::InvalidPartition(format!("{shape} is not a partition of {n}")));
    }
    let indexer = TabloidIndexer::new(shape, usize::MAX)?;
    let reference = YoungTabloid::reference(shape);
    let mut counts = vec![0u64; indexer.len()];
    for c in code.members() {
        counts[indexer.rank(&act(&reference, &c.inverse())?)] += 1;
    }
    Ok(counts)
}
