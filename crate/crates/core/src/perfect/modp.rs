//! Nonsingularity certificates over prime fields.
//!
//! If `det(M) mod p != 0` then `det(M) != 0` over the rationals, so a
//! nonsingular reduction is a proof of invertibility. A singular reduction
//! proves nothing.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{inv_mod, is_prime};
use crate::error::{Error, Result};
use crate::young::{ActionMatrix, Rational, SparseRationalMatrix};

/// Largest dimension handled by dense elimination.
pub const DENSE_LIMIT: usize = 4096;

/// Sparse elimination finishes densely below this many active rows.
const DENSE_SWITCH: usize = 1024;

/// Primes must stay below this so that products of residues fit in `u64`.
pub const PRIME_LIMIT: u64 = 1 << 31;

/// Square sparse matrix with entries reduced modulo a prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPMatrix {
    p: u64,
    rows: Vec<Vec<(u32, u32)>>,
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) || p >= PRIME_LIMIT {
        return Err(Error::InvalidInput(format!("{p} is not a prime below 2^31")));
    }
    Ok(())
}

fn reduce_i64(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

impl ModPMatrix {
    /// Rows of `(column, residue)`; columns are merged and zeros dropped.
    pub fn from_rows(p: u64, rows: Vec<Vec<(usize, u64)>>) -> Result<Self> {
        check_prime(p)?;
        let dim = rows.len();
        let mut out = Vec::with_capacity(dim);
        for mut row in rows {
            row.sort_unstable_by_key(|e| e.0);
            let mut merged: Vec<(u32, u32)> = Vec::with_capacity(row.len());
            for (c, v) in row {
                if c >= dim {
                    return Err(Error::InvalidInput(format!(
                        "column {c} out of range for dimension {dim}"
                    )));
                }
                let v = v % p;
                match merged.last_mut() {
                    Some(last) if last.0 as usize == c => last.1 = ((last.1 as u64 + v) % p) as u32,
                    _ => merged.push((c as u32, v as u32)),
                }
            }
            merged.retain(|e| e.1 != 0);
            out.push(merged);
        }
        Ok(ModPMatrix { p, rows: out })
    }

    pub fn from_action(m: &ActionMatrix, p: u64) -> Result<Self> {
        let rows = (0..m.dim())
            .map(|i| m.row(i).map(|(j, v)| (j, v as u64)).collect())
            .collect();
        ModPMatrix::from_rows(p, rows)
    }

    /// Reduces exact rational entries; fails when `p` divides a denominator.
    pub fn from_rational(m: &SparseRationalMatrix, p: u64) -> Result<Self> {
        check_prime(p)?;
        let mut rows = Vec::with_capacity(m.dim());
        for i in 0..m.dim() {
            let mut row = Vec::with_capacity(m.row(i).len());
            for &(j, v) in m.row(i) {
                row.push((j, reduce_rational(v, p)?));
            }
            rows.push(row);
        }
        ModPMatrix::from_rows(p, rows)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.rows[i]
            .binary_search_by_key(&(j as u32), |e| e.0)
            .map(|k| self.rows[i][k].1 as u64)
            .unwrap_or(0)
    }

    fn to_dense(&self) -> Vec<Vec<u64>> {
        let n = self.dim();
        self.rows
            .iter()
            .map(|row| {
                let mut d = vec![0u64; n];
                for &(c, v) in row {
                    d[c as usize] = v as u64;
                }
                d
            })
            .collect()
    }
}

/// `v mod p`; errors when `p` divides the denominator.
pub fn reduce_rational(v: Rational, p: u64) -> Result<u64> {
    let den = reduce_i64(*v.denom(), p);
    let inv = inv_mod(den, p).ok_or_else(|| Error::BadPrime {
        den: v.denom().to_string(),
        prime: p,
    })?;
    Ok(reduce_i64(*v.numer(), p) * inv % p)
}

/// Outcome of one reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// `det mod p != 0`, hence invertible over the rationals.
    Invertible,
    /// `det mod p == 0`; inconclusive.
    SingularModP,
    /// The black-box probe did not reach full degree, so nothing is known
    /// about `det mod p`.
    Undetermined,
}

/// Algorithm that produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMethod {
    Dense,
    /// Sparse elimination with Markowitz pivoting.
    Sparse,
    /// Wiedemann sequence of a diagonally preconditioned matrix.
    BlackBox,
}

/// Verdict together with the data needed to reproduce it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModPCheck {
    pub dim: usize,
    pub prime: u64,
    pub verdict: Verdict,
    pub method: CheckMethod,
}

/// Tuning of [`check_nonsingular`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EliminationBudget {
    /// Dimension up to which dense elimination is used.
    pub dense_limit: usize,
    /// Sparse elimination gives up in favour of the black-box method once
    /// it stores more than this multiple of the input entries.
    pub fill_factor: usize,
    /// Seed of the black-box preconditioner.
    pub seed: u64,
}

impl Default for EliminationBudget {
    fn default() -> Self {
        EliminationBudget {
            dense_limit: DENSE_LIMIT,
            fill_factor: 4,
            seed: 0x5eed,
        }
    }
}

/// Decides whether `m` is nonsingular modulo its prime.
pub fn check_nonsingular(m: &ModPMatrix, budget: &EliminationBudget) -> ModPCheck {
    let report = |verdict, method| ModPCheck {
        dim: m.dim(),
        prime: m.p,
        verdict,
        method,
    };
    let as_verdict = |ok: bool| if ok { Verdict::Invertible } else { Verdict::SingularModP };
    if m.dim() <= budget.dense_limit {
        return report(as_verdict(dense_nonsingular(m.to_dense(), m.p)), CheckMethod::Dense);
    }
    match sparse_nonsingular(m, budget) {
        Some(ok) => report(as_verdict(ok), CheckMethod::Sparse),
        None => {
            let verdict = if wiedemann_nonsingular(m, budget.seed) {
                Verdict::Invertible
            } else {
                Verdict::Undetermined
            };
            report(verdict, CheckMethod::BlackBox)
        }
    }
}

/// `invertible` proves the rational matrix invertible; any other verdict
/// is inconclusive.
pub fn invertible_mod_p(m: &SparseRationalMatrix, p: u64) -> Result<ModPCheck> {
    let reduced = ModPMatrix::from_rational(m, p)?;
    Ok(check_nonsingular(&reduced, &EliminationBudget::default()))
}

/// Gaussian elimination on a dense matrix of residues.
pub fn dense_nonsingular(mut a: Vec<Vec<u64>>, p: u64) -> bool {
    let n = a.len();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i][k] != 0) else {
            return false;
        };
        a.swap(k, piv);
        let inv = inv_mod(a[k][k], p).expect("nonzero residue");
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in rest.iter_mut() {
            let f = row[k] * inv % p;
            if f == 0 {
                continue;
            }
            let m = p - f;
            for (x, &y) in row[k..].iter_mut().zip(&pivot[k..]) {
                *x = (*x + m * y) % p;
            }
        }
    }
    true
}

/// Right-looking sparse elimination. Returns `None` when the fill budget
/// is exhausted.
fn sparse_nonsingular(m: &ModPMatrix, budget: &EliminationBudget) -> Option<bool> {
    let n = m.dim();
    let p = m.p;
    let mut rows: Vec<Vec<(u32, u32)>> = m.rows.clone();
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut col_count = vec![0usize; n];
    for (i, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c as usize].push(i as u32);
            col_count[c as usize] += 1;
        }
    }
    let mut active = vec![true; n];
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| Reverse((r.len(), i as u32)))
        .collect();
    let mut stored = m.nnz();
    let max_fill = budget.fill_factor.saturating_mul(stored);
    let mut remaining = n;
    let mut scratch: Vec<(u32, u32)> = Vec::new();
    const CANDIDATES: usize = 4;

    while remaining > 0 {
        // Switch to dense elimination once the active part is dense enough.
        if remaining <= budget.dense_limit.min(DENSE_SWITCH) && stored * 4 >= remaining * remaining {
            return Some(finish_dense(&rows, &active, p));
        }
        let mut picked: Vec<u32> = Vec::with_capacity(CANDIDATES);
        while picked.len() < CANDIDATES {
            let Some(Reverse((len, i))) = heap.pop() else { break };
            if active[i as usize] && rows[i as usize].len() == len && !picked.contains(&i) {
                picked.push(i);
            }
        }
        let Some(&first) = picked.first() else {
            return Some(false);
        };
        if rows[first as usize].is_empty() {
            return Some(false);
        }
        let mut best: Option<(usize, u32, u32)> = None;
        for &i in &picked {
            let r = rows[i as usize].len() - 1;
            for &(c, _) in &rows[i as usize] {
                let cost = r * (col_count[c as usize] - 1);
                if best.is_none_or(|b| cost < b.0) {
                    best = Some((cost, i, c));
                }
            }
        }
        let (_, pi, pc) = best.expect("nonempty candidate rows");
        for &i in &picked {
            if i != pi {
                heap.push(Reverse((rows[i as usize].len(), i)));
            }
        }
        let pivot_row = std::mem::take(&mut rows[pi as usize]);
        active[pi as usize] = false;
        remaining -= 1;
        stored -= pivot_row.len();
        for &(c, _) in &pivot_row {
            col_count[c as usize] -= 1;
        }
        let pv = pivot_row
            .iter()
            .find(|e| e.0 == pc)
            .map(|e| e.1 as u64)
            .expect("pivot entry");
        let inv = inv_mod(pv, p).expect("nonzero pivot");
        let targets = std::mem::take(&mut col_rows[pc as usize]);
        for r in targets {
            let ru = r as usize;
            if !active[ru] {
                continue;
            }
            let Ok(pos) = rows[ru].binary_search_by_key(&pc, |e| e.0) else {
                continue;
            };
            let f = rows[ru][pos].1 as u64 * inv % p;
            let mul = p - f;
            scratch.clear();
            let old = &rows[ru];
            let (mut a, mut b) = (0, 0);
            while a < old.len() || b < pivot_row.len() {
                let ca = old.get(a).map_or(u32::MAX, |e| e.0);
                let cb = pivot_row.get(b).map_or(u32::MAX, |e| e.0);
                if ca < cb {
                    scratch.push(old[a]);
                    a += 1;
                } else if cb < ca {
                    let v = (mul * pivot_row[b].1 as u64 % p) as u32;
                    scratch.push((cb, v));
                    col_count[cb as usize] += 1;
                    col_rows[cb as usize].push(r);
                    b += 1;
                } else {
                    let v = ((old[a].1 as u64 + mul * pivot_row[b].1 as u64) % p) as u32;
                    if v != 0 {
                        scratch.push((ca, v));
                    } else {
                        col_count[ca as usize] -= 1;
                    }
                    a += 1;
                    b += 1;
                }
            }
            stored = stored + scratch.len() - rows[ru].len();
            rows[ru].clear();
            rows[ru].extend_from_slice(&scratch);
            heap.push(Reverse((rows[ru].len(), r)));
        }
        if stored > max_fill {
            return None;
        }
    }
    Some(true)
}

fn finish_dense(rows: &[Vec<(u32, u32)>], active: &[bool], p: u64) -> bool {
    let live: Vec<usize> = (0..rows.len()).filter(|&i| active[i]).collect();
    let mut cols: Vec<u32> = live.iter().flat_map(|&i| rows[i].iter().map(|e| e.0)).collect();
    cols.sort_unstable();
    cols.dedup();
    if cols.len() < live.len() {
        return false;
    }
    let dense = live
        .iter()
        .map(|&i| {
            let mut d = vec![0u64; cols.len()];
            for &(c, v) in &rows[i] {
                d[cols.binary_search(&c).expect("collected column")] = v as u64;
            }
            d
        })
        .collect();
    dense_nonsingular(dense, p)
}

/// Minimal generator of a linearly recurrent sequence (Berlekamp-Massey),
/// as coefficients `c_0 = 1, c_1, ..., c_L` with `Σ c_k s_{i-k} = 0`.
pub fn berlekamp_massey(s: &[u64], p: u64) -> Vec<u64> {
    let mut c = vec![1u64];
    let mut b = vec![1u64];
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut last = 1u64;
    for i in 0..s.len() {
        let mut d = s[i];
        for k in 1..=l.min(c.len() - 1) {
            d = (d + c[k] * s[i - k]) % p;
        }
        if d == 0 {
            shift += 1;
            continue;
        }
        let coef = d * inv_mod(last, p).expect("nonzero discrepancy") % p;
        let t = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, 0);
        }
        for (k, &bk) in b.iter().enumerate() {
            c[k + shift] = (c[k + shift] + (p - coef) * bk) % p;
        }
        if 2 * l <= i {
            l = i + 1 - l;
            b = t;
            last = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.truncate(l + 1);
    c.resize(l + 1, 0);
    c
}

/// Wiedemann's method on `D M` with a random nonsingular diagonal `D`.
///
/// The generator of `(x (DM)^i) u` divides the minimal polynomial of `DM`.
/// Only when its degree equals the dimension is it the characteristic
/// polynomial, and then a nonzero constant term proves `det(M) != 0`.
/// Every other outcome returns `false`, which says nothing about `M`.
pub fn wiedemann_nonsingular(m: &ModPMatrix, seed: u64) -> bool {
    let n = m.dim();
    let p = m.p;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
    let d: Vec<u64> = (0..n).map(|_| rng.gen_range(1..p)).collect();
    let u: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
    let mut x: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();

    // Columns of D M, so that each step is a sequence of dot products.
    let mut ptr = vec![0usize; n + 1];
    for row in &m.rows {
        for &(c, _) in row {
            ptr[c as usize + 1] += 1;
        }
    }
    for c in 0..n {
        ptr[c + 1] += ptr[c];
    }
    let mut fill = ptr.clone();
    let mut idx = vec![0u32; ptr[n]];
    let mut val = vec![0u64; ptr[n]];
    for (i, row) in m.rows.iter().enumerate() {
        for &(c, v) in row {
            let k = &mut fill[c as usize];
            idx[*k] = i as u32;
            val[*k] = d[i] * v as u64 % p;
            *k += 1;
        }
    }

    let dot = |a: &[u64], b: &[u64]| -> u64 {
        (a.iter().zip(b).map(|(&s, &t)| (s * t) as u128).sum::<u128>() % p as u128) as u64
    };
    let mut y = vec![0u64; n];
    let mut seq = Vec::with_capacity(2 * n);
    for _ in 0..2 * n {
        seq.push(dot(&x, &u));
        for (c, yc) in y.iter_mut().enumerate() {
            let range = ptr[c]..ptr[c + 1];
            let acc: u128 = idx[range.clone()]
                .iter()
                .zip(&val[range])
                .map(|(&i, &v)| (x[i as usize] * v) as u128)
                .sum();
            *yc = (acc % p as u128) as u64;
        }
        std::mem::swap(&mut x, &mut y);
    }
    let g = berlekamp_massey(&seq, p);
    g.len() == n + 1 && g[n] != 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::young::tridiagonal_reference;

    const P: u64 = 1_000_003;

    fn integer(p: u64, rows: &[&[i64]]) -> ModPMatrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().enumerate().map(|(j, &v)| (j, reduce_i64(v, p))).collect())
            .collect();
        ModPMatrix::from_rows(p, rows).unwrap()
    }

    fn budget_sparse() -> EliminationBudget {
        EliminationBudget {
            dense_limit: 0,
            ..Default::default()
        }
    }

    fn budget_black_box() -> EliminationBudget {
        EliminationBudget {
            dense_limit: 0,
            fill_factor: 0,
            ..Default::default()
        }
    }

    #[test]
    fn identity_and_all_ones() {
        let id = ModPMatrix::from_rows(P, (0..5).map(|i| vec![(i, 1)]).collect()).unwrap();
        for b in [EliminationBudget::default(), budget_sparse(), budget_black_box()] {
            assert_eq!(check_nonsingular(&id, &b).verdict, Verdict::Invertible);
        }
        let ones = integer(P, &[&[1, 1], &[1, 1]]);
        for b in [EliminationBudget::default(), budget_sparse(), budget_black_box()] {
            assert_eq!(check_nonsingular(&ones, &b).verdict, Verdict::SingularModP);
        }
        assert!(!wiedemann_nonsingular(&ones, 7));
    }

    #[test]
    fn tridiagonal_five_at_101() {
        // det = 275 = 5^2 * 11, nonzero mod 101 but zero mod 5 and 11.
        let t = tridiagonal_reference(5).unwrap();
        for (p, ok) in [(101, true), (5, false), (11, false), (13, true)] {
            let m = ModPMatrix::from_action(&t, p).unwrap();
            let expect = if ok { Verdict::Invertible } else { Verdict::SingularModP };
            assert_eq!(check_nonsingular(&m, &EliminationBudget::default()).verdict, expect);
            assert_eq!(check_nonsingular(&m, &budget_sparse()).verdict, expect);
        }
    }

    #[test]
    fn rejects_bad_primes() {
        assert!(ModPMatrix::from_rows(12, vec![]).is_err());
        let half = SparseRationalMatrix::from_rows(vec![vec![(0, Rational::new(1, 2))]]);
        assert!(matches!(invertible_mod_p(&half, 2), Err(Error::BadPrime { .. })));
        assert_eq!(invertible_mod_p(&half, 3).unwrap().verdict, Verdict::Invertible);
        assert_eq!(reduce_rational(Rational::new(-1, 2), 7).unwrap(), 3);
    }

    #[test]
    fn berlekamp_massey_fibonacci() {
        let p = 1_000_003;
        let mut s = vec![0u64, 1];
        for i in 2..20 {
            s.push((s[i - 1] + s[i - 2]) % p);
        }
        assert_eq!(berlekamp_massey(&s, p), vec![1, p - 1, p - 1]);
    }

    #[test]
    fn methods_agree_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..60 {
            let n = rng.gen_range(1..25);
            let p = [2u64, 3, 7, 101][trial % 4];
            let rows = (0..n)
                .map(|_| {
                    let mut row = Vec::new();
                    for j in 0..n {
                        if rng.gen_bool(0.25) {
                            row.push((j, rng.gen_range(0..p)));
                        }
                    }
                    row
                })
                .collect();
            let m = ModPMatrix::from_rows(p, rows).unwrap();
            let dense = check_nonsingular(&m, &EliminationBudget::default()).verdict;
            assert_eq!(check_nonsingular(&m, &budget_sparse()).verdict, dense);
            // The black box may miss invertibility but never invents it.
            if check_nonsingular(&m, &budget_black_box()).verdict == Verdict::Invertible {
                assert_eq!(dense, Verdict::Invertible);
            }
        }
    }
}
