//! The tridiagonal system for prime `p` and its analytic bound.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::young::tridiagonal_reference;

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// `(p-1)! - ⌈p/3⌉ + 2` for primes `p >= 11`.
pub fn analytic_prime_bound(p: u64) -> Result<BigInt> {
    if p < 11 || !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not a prime >= 11")));
    }
    Ok(BigInt::from(factorial(p - 1)) - BigInt::from(p.div_ceil(3)) + 2)
}

/// The three assertions about an integer solution of `M x <= (p-1)!·1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemClaims {
    /// At least `⌈p/3⌉` coordinates are at most `(p-1)!/p`.
    pub small_coordinates: bool,
    /// With `Σx = (p-1)! - k`, at least `p - k - 2` coordinates equal the
    /// maximum.
    pub maximal_coordinates: bool,
    /// `Σx <= (p-1)! - ⌈p/3⌉ + 2`.
    pub sum_bound: bool,
}

impl SystemClaims {
    pub fn all(&self) -> bool {
        self.small_coordinates && self.maximal_coordinates && self.sum_bound
    }
}

fn check_system(x: &[BigInt], p: u64) -> Result<BigInt> {
    if p < 7 || !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not a prime >= 7")));
    }
    if x.len() as u64 != p {
        return Err(Error::LengthMismatch(p as usize, x.len()));
    }
    let rhs = BigInt::from(factorial(p - 1));
    let m = tridiagonal_reference(p as usize)?;
    let feasible = x.iter().all(|v| v.sign() != num_bigint::Sign::Minus)
        && (0..x.len()).all(|i| m.row(i).map(|(j, a)| &x[j] * a).sum::<BigInt>() <= rhs);
    if !feasible {
        return Err(Error::InvalidInput("vector is not a feasible solution".into()));
    }
    Ok(rhs)
}

/// Evaluates the three assertions on a feasible vector of the tridiagonal
/// system for a prime `p >= 7`.
///
/// The assertions are stated without reference to neighbouring
/// coordinates, so the first and last coordinates need no special care
/// here; [`maximum_gap_inequality`] audits the neighbour-based step used
/// to derive the second assertion.
pub fn systemineq_check(x: &[BigInt], p: u64) -> Result<SystemClaims> {
    let rhs = check_system(x, p)?;
    let ceil_third = BigInt::from(p.div_ceil(3));
    let pb = BigInt::from(p);
    let small = x.iter().filter(|v| *v * &pb <= rhs).count();
    let sum: BigInt = x.iter().sum();
    let k = &rhs - &sum;
    let max = x.iter().max().cloned().unwrap_or_default();
    let at_max = BigInt::from(x.iter().filter(|v| **v == max).count());
    let needed = BigInt::from(p) - &k - 2;
    Ok(SystemClaims {
        small_coordinates: BigInt::from(small) >= ceil_third,
        maximal_coordinates: at_max >= needed,
        sum_bound: sum <= rhs - ceil_third + 2,
    })
}

/// For every index `ℓ` attaining the maximum, checks
/// `Σ_{i ∉ {ℓ-1, ℓ+1}} (x_ℓ - x_i) <= k` where `k = (p-1)! - Σx`.
/// Neighbours outside `1..=p` are absent, which matches the boundary rows
/// `(p-1) x_1 + x_2` and `x_{p-1} + (p-1) x_p`.
pub fn maximum_gap_inequality(x: &[BigInt], p: u64) -> Result<bool> {
    let rhs = check_system(x, p)?;
    let sum: BigInt = x.iter().sum();
    let k = rhs - &sum;
    let max = x.iter().max().cloned().unwrap_or_default();
    for l in (0..x.len()).filter(|&l| x[l] == max) {
        let gap: BigInt = (0..x.len())
            .filter(|&i| i + 1 != l && i != l + 1)
            .map(|i| &x[l] - &x[i])
            .sum();
        if gap > k || gap < BigInt::zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Random feasible vector of the tridiagonal system: starting from zero,
/// repeatedly raises a random coordinate by a random amount within its
/// remaining room until no coordinate can move.
pub fn random_feasible(p: u64, seed: u64) -> Result<Vec<BigInt>> {
    if p < 2 {
        return Err(Error::InvalidInput("p must be at least 2".into()));
    }
    let m = tridiagonal_reference(p as usize)?;
    let n = p as usize;
    let rhs = factorial(p - 1).to_u128().ok_or_else(|| Error::limit("p", p, 34))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![0u128; n];
    let mut slack = vec![rhs; n];
    loop {
        let room: Vec<u128> = (0..n)
            .map(|j| m.row(j).map(|(i, a)| slack[i] / a as u128).min().unwrap_or(0))
            .collect();
        let open: Vec<usize> = (0..n).filter(|&j| room[j] > 0).collect();
        if open.is_empty() {
            break;
        }
        let j = open[rng.gen_range(0..open.len())];
        // Mostly large steps, sometimes single units, so that both coarse
        // and fine structure gets exercised.
        let step = if rng.gen_bool(0.25) {
            1
        } else {
            rng.gen_range(1..=room[j])
        };
        x[j] += step;
        for (i, a) in m.row(j) {
            slack[i] -= step * a as u128;
        }
    }
    Ok(x.into_iter().map(BigInt::from).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_bound_values() {
        let f = |n: u64| BigInt::from(factorial(n));
        assert_eq!(analytic_prime_bound(19).unwrap(), f(18) - 5);
        assert_eq!(analytic_prime_bound(11).unwrap(), f(10) - 2);
        assert_eq!(analytic_prime_bound(13).unwrap(), f(12) - 3);
        assert!(analytic_prime_bound(7).is_err());
        assert!(analytic_prime_bound(15).is_err());
    }

    #[test]
    fn zero_satisfies_everything() {
        let x = vec![BigInt::zero(); 7];
        assert!(systemineq_check(&x, 7).unwrap().all());
        assert!(maximum_gap_inequality(&x, 7).unwrap());
    }

    #[test]
    fn rejects_infeasible_vectors() {
        let x = vec![BigInt::from(1000); 7];
        assert!(systemineq_check(&x, 7).is_err());
        assert!(systemineq_check(&vec![BigInt::zero(); 6], 7).is_err());
        assert!(systemineq_check(&vec![BigInt::zero(); 9], 9).is_err());
    }

    #[test]
    fn random_vectors_are_feasible_and_seeded() {
        let a = random_feasible(11, 1).unwrap();
        let b = random_feasible(11, 2).unwrap();
        assert_ne!(a, b);
        assert_eq!(a, random_feasible(11, 1).unwrap());
        assert!(systemineq_check(&a, 11).unwrap().all());
    }
}
