//! Exact Lagrangian bounds from approximate dual multipliers.
//!
//! For rows `A x <= b`, a box `l <= x <= u` and any `y >= 0`,
//! `max c·x <= y·b + Σ_j max(d_j l_j, d_j u_j)` with `d = c - Aᵀy`.
//! The multipliers may come from a floating-point solve: they are turned
//! into exact dyadic rationals first, so the bound is exact and valid no
//! matter how inaccurate the solve was.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sparse integer rows with integer right-hand sides.
#[derive(Clone, Debug, Default)]
pub(crate) struct IntRows {
    pub(crate) rows: Vec<Vec<(usize, BigInt)>>,
    pub(crate) rhs: Vec<BigInt>,
}

impl IntRows {
    pub(crate) fn len(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn push(&mut self, row: Vec<(usize, BigInt)>, rhs: BigInt) {
        self.rows.push(row);
        self.rhs.push(rhs);
    }
}

/// Nonnegative multipliers over a common positive denominator.
#[derive(Clone, Debug)]
pub(crate) struct ScaledDuals {
    pub(crate) num: Vec<BigInt>,
    pub(crate) den: BigInt,
}

impl ScaledDuals {
    /// Exact dyadic image of floating-point multipliers. Negative entries
    /// and entries below `2^-60` of the largest one are dropped, which only
    /// weakens the bound.
    pub(crate) fn from_f64(y: &[f64]) -> Self {
        let max = y.iter().cloned().fold(0.0f64, f64::max);
        let floor = max * 2f64.powi(-60);
        let parts: Vec<Option<(u64, i32)>> = y
            .iter()
            .map(|&v| {
                if v > 0.0 && v >= floor && v.is_finite() {
                    Some(decode(v))
                } else {
                    None
                }
            })
            .collect();
        let e = parts.iter().flatten().map(|&(_, e)| e).min().unwrap_or(0).min(0);
        let num = parts
            .iter()
            .map(|p| match p {
                Some((m, ex)) => BigInt::from(*m) << ((ex - e) as usize),
                None => BigInt::zero(),
            })
            .collect();
        ScaledDuals {
            num,
            den: BigInt::one() << ((-e) as usize),
        }
    }

    pub(crate) fn from_rational(y: &[BigRational]) -> Self {
        let den = y
            .iter()
            .filter(|v| v.is_positive())
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let num = y
            .iter()
            .map(|v| {
                if v.is_positive() {
                    v.numer() * (&den / v.denom())
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        ScaledDuals { num, den }
    }
}

/// `v = m · 2^e` with integer `m`.
fn decode(v: f64) -> (u64, i32) {
    let bits = v.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp - 1075)
    }
}

/// A certified bound `num / den` together with the scaled reduced costs.
#[derive(Clone, Debug)]
pub(crate) struct Certificate {
    pub(crate) num: BigInt,
    pub(crate) den: BigInt,
    /// `den · (c - Aᵀy)`.
    pub(crate) reduced: Vec<BigInt>,
}

impl Certificate {
    /// Evaluates the Lagrangian bound for objective `c` (integers).
    pub(crate) fn evaluate(rows: &IntRows, c: &[i64], y: &ScaledDuals, lower: &[i64], upper: &[i64]) -> Self {
        let n = c.len();
        let mut reduced: Vec<BigInt> = c.iter().map(|&v| &y.den * v).collect();
        let mut num = BigInt::zero();
        for (k, yk) in y.num.iter().enumerate() {
            if yk.is_zero() {
                continue;
            }
            num += yk * &rows.rhs[k];
            for (j, a) in &rows.rows[k] {
                reduced[*j] -= yk * a;
            }
        }
        for j in 0..n {
            let d = &reduced[j];
            if d.is_positive() {
                num += d * upper[j];
            } else if d.is_negative() {
                num += d * lower[j];
            }
        }
        Certificate {
            num,
            den: y.den.clone(),
            reduced,
        }
    }

    /// `true` when the bound is strictly below `target`.
    pub(crate) fn below(&self, target: i64) -> bool {
        self.num < &self.den * target
    }

    pub(crate) fn value(&self) -> BigRational {
        BigRational::new(self.num.clone(), self.den.clone())
    }

    /// Reduced-cost tightening: shrinks the box so that every point cut
    /// away has bound below `target`. Requires `!self.below(target)`.
    pub(crate) fn tighten(&self, target: i64, lower: &mut [i64], upper: &mut [i64]) -> usize {
        let gap = &self.num - &self.den * target;
        debug_assert!(!gap.is_negative());
        let mut changed = 0;
        for (j, d) in self.reduced.iter().enumerate() {
            if d.is_zero() || lower[j] == upper[j] {
                continue;
            }
            let room = (&gap / d.abs()).try_into().unwrap_or(i64::MAX);
            if d.is_negative() {
                let nu = lower[j].saturating_add(room);
                if nu < upper[j] {
                    upper[j] = nu;
                    changed += 1;
                }
            } else {
                let nl = upper[j].saturating_sub(room);
                if nl > lower[j] {
                    lower[j] = nl;
                    changed += 1;
                }
            }
        }
        changed
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_round_trips() {
        for v in [1.0, 0.1, 3.75e-9, 12345.678, f64::MIN_POSITIVE] {
            let (m, e) = decode(v);
            assert_eq!((m as f64) * 2f64.powi(e / 2) * 2f64.powi(e - e / 2), v);
        }
    }

    #[test]
    fn bound_on_small_system() {
        // max x + y, x + 2y <= 4, 3x + y <= 6, box [0, 10]; optimum 14/5.
        let rows = IntRows {
            rows: vec![vec![(0, 1.into()), (1, 2.into())], vec![(0, 3.into()), (1, 1.into())]],
            rhs: vec![4.into(), 6.into()],
        };
        let y = ScaledDuals::from_f64(&[0.4, 0.2]);
        let cert = Certificate::evaluate(&rows, &[1, 1], &y, &[0, 0], &[10, 10]);
        let v = cert.value();
        let exact = BigRational::new(14.into(), 5.into());
        assert!(v >= exact);
        assert!(v - exact < BigRational::new(1.into(), 1_000_000.into()));
        assert!(cert.below(3));
        assert!(!cert.below(2));
    }
}
