//! Gomory fractional cuts derived from the exact root relaxation.
//!
//! For a tableau row `x_p + Σ_j t_j x'_j = β` with fractional `β`, where the
//! `x'_j` are the nonbasic variables shifted to be nonnegative integers,
//! `x_p + Σ_j ⌊t_j⌋ x'_j <= ⌊β⌋` holds for every integer point. Undoing the
//! shifts and eliminating slacks turns it into an integer inequality in the
//! original variables.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::certify::IntRows;
use super::lp::{BoundedLp, LpOutcome, VarState};
use super::scalar::LpScalar;

pub(crate) type Cut = (Vec<(usize, BigInt)>, BigInt);

/// Cuts added per round, taken from the rows whose fractional part is
/// closest to one half.
const CUTS_PER_ROUND: usize = 8;

pub(crate) fn root_cuts(rows: &IntRows, n: usize, lower: &[i64], upper: &[i64], rounds: usize) -> Vec<Cut> {
    let mut all = rows.clone();
    let mut cuts = Vec::new();
    let mut hint: Vec<usize> = Vec::new();
    let mut at_upper: Vec<usize> = Vec::new();
    for _ in 0..rounds {
        let mut lp = dense_lp(&all, n, lower, upper);
        lp.install_basis(&hint, &at_upper);
        if lp.solve(u64::MAX) != LpOutcome::Optimal {
            break;
        }
        hint = lp.basic_set();
        at_upper = lp.at_upper_set();
        let mut scored: Vec<(BigRational, usize)> = (0..lp.rows())
            .filter_map(|r| {
                let (_, _, beta) = lp.tableau_row(r);
                let f = beta - beta.floor();
                if f.is_zero() {
                    return None;
                }
                let half = BigRational::new(1.into(), 2.into());
                Some((Signed::abs(&(f - half)), r))
            })
            .collect();
        if scored.is_empty() {
            break;
        }
        scored.sort();
        let mut added = 0;
        for (_, r) in scored.into_iter().take(CUTS_PER_ROUND) {
            let cut = cut_from_row(&lp, &all, n, r, lower, upper);
            let duplicate = all.rows.iter().zip(&all.rhs).any(|(r, b)| *r == cut.0 && *b == cut.1);
            if cut.0.is_empty() || duplicate {
                continue;
            }
            all.push(cut.0.clone(), cut.1.clone());
            cuts.push(cut);
            added += 1;
        }
        if added == 0 {
            break;
        }
    }
    cuts
}

fn dense_lp(rows: &IntRows, n: usize, lower: &[i64], upper: &[i64]) -> BoundedLp<BigRational> {
    let a = rows
        .rows
        .iter()
        .map(|r| {
            let mut dense = vec![<BigRational as LpScalar>::zero(); n];
            for (j, v) in r {
                dense[*j] = BigRational::from_bigint(v);
            }
            dense
        })
        .collect();
    BoundedLp::new(
        a,
        rows.rhs.iter().map(BigRational::from_bigint).collect(),
        vec![BigRational::from_i64(1); n],
        lower.iter().map(|&v| BigRational::from_i64(v)).collect(),
        upper.iter().map(|&v| BigRational::from_i64(v)).collect(),
    )
}

/// Builds `Σ α_j x_j <= γ` from tableau row `r`.
fn cut_from_row(lp: &BoundedLp<BigRational>, rows: &IntRows, n: usize, r: usize, lower: &[i64], upper: &[i64]) -> Cut {
    let (t, p, beta) = lp.tableau_row(r);
    // The cut in shifted space: coefficient 1 on x_p, ⌊t'_j⌋ on x'_j.
    let mut alpha = vec![BigInt::zero(); n];
    let mut gamma = beta.floor().to_integer();
    // Adds `coef * v` where `v` is basic or nonbasic variable `j` expressed
    // in the original variables.
    let add_var = |j: usize, coef: &BigInt, alpha: &mut Vec<BigInt>, gamma: &mut BigInt| {
        if j < n {
            alpha[j] += coef;
        } else {
            // s_k = b_k - A_k x
            let k = j - n;
            *gamma -= coef * &rows.rhs[k];
            for (i, a) in &rows.rows[k] {
                alpha[*i] -= coef * a;
            }
        }
    };
    add_var(p, &BigInt::from(1), &mut alpha, &mut gamma);
    for (j, tj) in t.iter().enumerate() {
        if j == p || tj.is_zero() {
            continue;
        }
        match lp.var_state(j) {
            VarState::Basic => {}
            VarState::AtLower => {
                // x'_j = x_j - l_j
                let c = tj.floor().to_integer();
                if c.is_zero() {
                    continue;
                }
                if j < n {
                    gamma += &c * lower[j];
                }
                add_var(j, &c, &mut alpha, &mut gamma);
            }
            VarState::AtUpper => {
                // x'_j = u_j - x_j, coefficient of x'_j is -t_j
                let c = (-tj).floor().to_integer();
                if c.is_zero() {
                    continue;
                }
                gamma -= &c * upper[j];
                add_var(j, &(-&c), &mut alpha, &mut gamma);
            }
        }
    }
    let row: Vec<(usize, BigInt)> = alpha.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
    (row, gamma)
}
