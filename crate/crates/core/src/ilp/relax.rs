//! Exact LP relaxation by primal simplex with Bland's rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::model::IlpModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Optimum of the relaxation with integrality dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub value: BigRational,
    pub point: Vec<BigRational>,
    pub status: LpStatus,
}

/// Solves `max 1ᵀx`, `M x <= rhs`, `x >= 0` exactly. The slack basis is
/// feasible because `rhs >= 0`, and Bland's rule (lowest-index entering
/// column, lowest-index leaving variable among ratio ties) rules out
/// cycling, so the pivot sequence is fully determined by the model.
pub fn lp_relax(model: &IlpModel) -> LpSolution {
    let m = model.dim();
    let n = m;
    let w = n + m + 1;
    let rhs = BigRational::from_integer(BigInt::from(model.rhs().clone()));
    let mut tab: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row = vec![BigRational::zero(); w];
            for (j, v) in model.matrix().row(i) {
                row[j] = BigRational::from_integer(v.into());
            }
            row[n + i] = BigRational::one();
            row[w - 1] = rhs.clone();
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs of max 1ᵀx; the last entry tracks minus the objective.
    let mut d: Vec<BigRational> = (0..w)
        .map(|j| if j < n { BigRational::one() } else { BigRational::zero() })
        .collect();
    while let Some(q) = (0..n + m).find(|&j| d[j].is_positive()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..m {
            if !tab[r][q].is_positive() {
                continue;
            }
            let ratio = &tab[r][w - 1] / &tab[r][q];
            let better = match &leave {
                None => true,
                Some((br, bv)) => ratio < *bv || (ratio == *bv && basis[r] < basis[*br]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let Some((r, _)) = leave else {
            return LpSolution {
                value: BigRational::zero(),
                point: vec![BigRational::zero(); n],
                status: LpStatus::Unbounded,
            };
        };
        let piv = tab[r][q].clone();
        for v in tab[r].iter_mut() {
            *v /= &piv;
        }
        let prow = std::mem::take(&mut tab[r]);
        for row in tab.iter_mut().filter(|row| !row.is_empty()) {
            let f = row[q].clone();
            if f.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        let f = d[q].clone();
        for (x, p) in d.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
        tab[r] = prow;
        basis[r] = q;
    }
    let mut point = vec![BigRational::zero(); n];
    for (r, &p) in basis.iter().enumerate() {
        if p < n {
            point[p] = tab[r][w - 1].clone();
        }
    }
    let value = point.iter().fold(BigRational::zero(), |acc, v| acc + v);
    LpSolution {
        value,
        point,
        status: LpStatus::Optimal,
    }
}
