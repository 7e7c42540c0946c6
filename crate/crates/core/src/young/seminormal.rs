//! Young's seminormal form of the irreducible representations of `S_n`.
//!
//! Basis vectors are indexed by standard tableaux in last-letter order and
//! matrices act on row vectors: row `t` of `ρ(s_i)` holds the image of the
//! basis vector `v_t`. With `r = c(i+1) - c(i)` the axial distance (`c` the
//! content) the generator `s_i = (i, i+1)` acts by
//!
//! * `v_t -> v_t` when `i, i+1` share a row, `v_t -> -v_t` when they share
//!   a column;
//! * otherwise `v_t -> v_t / r + v_u` when `i+1` lies below `i`, and
//!   `v_t -> v_t / r + (1 - 1/r²) v_u` when it lies above, where `u` is `t`
//!   with `i` and `i+1` exchanged.

use std::collections::HashMap;

use num_rational::Rational64;
use num_traits::{One, Zero};

use super::partition::NumberPartition;
use super::tableau::{enumerate_syt, StandardYoungTableau};
use crate::error::{Error, Result};

/// Rational entries of the seminormal matrices. Denominators divide
/// `lcm(1..n)²`, so `i64` is exact for every `n` this crate accepts.
pub type Rational = Rational64;

/// Largest `n` accepted for seminormal matrices.
pub const MAX_SEMINORMAL_N: usize = 20;

/// Square sparse matrix with exact rational entries, stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseRationalMatrix {
    rows: Vec<Vec<(usize, Rational)>>,
}

impl SparseRationalMatrix {
    /// Builds from row lists; duplicate columns are summed and zeros dropped.
    pub fn from_rows(rows: Vec<Vec<(usize, Rational)>>) -> Self {
        let dim = rows.len();
        let rows = rows
            .into_iter()
            .map(|mut row| {
                row.sort_by_key(|&(c, _)| c);
                let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(row.len());
                for (c, v) in row {
                    assert!(c < dim, "column out of range");
                    match merged.last_mut() {
                        Some((lc, lv)) if *lc == c => *lv += v,
                        _ => merged.push((c, v)),
                    }
                }
                merged.retain(|(_, v)| !v.is_zero());
                merged
            })
            .collect();
        SparseRationalMatrix { rows }
    }

    pub fn identity(dim: usize) -> Self {
        SparseRationalMatrix {
            rows: (0..dim).map(|i| vec![(i, Rational::one())]).collect(),
        }
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Self {
        SparseRationalMatrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .map(|(j, &v)| (j, Rational::from_integer(v)))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.rows[i]
            .binary_search_by_key(&j, |&(c, _)| c)
            .map(|k| self.rows[i][k].1)
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        SparseRationalMatrix::from_rows(
            self.rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.iter().chain(b).copied().collect())
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        SparseRationalMatrix::from_rows(
            self.rows
                .iter()
                .map(|row| {
                    let mut acc: HashMap<usize, Rational> = HashMap::new();
                    for &(k, a) in row {
                        for &(j, b) in &other.rows[k] {
                            *acc.entry(j).or_insert_with(Rational::zero) += a * b;
                        }
                    }
                    acc.into_iter().collect()
                })
                .collect(),
        )
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator_lcm(&self) -> i64 {
        use num_integer::Integer;
        self.rows.iter().flatten().fold(1i64, |acc, (_, v)| acc.lcm(v.denom()))
    }
}

/// `ρ_λ(s_i)` for the generator `s_i = (i, i+1)`, `1 <= i <= n-1`.
#[derive(Debug, Clone)]
pub struct SeminormalGenerator {
    pub shape: NumberPartition,
    pub index: usize,
    pub matrix: SparseRationalMatrix,
}

/// Shared basis data for building several generators of one shape.
pub struct SeminormalBasis {
    pub shape: NumberPartition,
    pub tableaux: Vec<StandardYoungTableau>,
    index: HashMap<Vec<u8>, usize>,
}

impl SeminormalBasis {
    pub fn new(shape: &NumberPartition, limit: usize) -> Result<Self> {
        if shape.n() > MAX_SEMINORMAL_N {
            return Err(Error::limit("n", shape.n(), MAX_SEMINORMAL_N));
        }
        let tableaux = enumerate_syt(shape, limit)?;
        let index = tableaux.iter().enumerate().map(|(k, t)| (t.row_word(), k)).collect();
        Ok(SeminormalBasis {
            shape: shape.clone(),
            tableaux,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    /// Row `t` of `ρ(s_i)` as `(column, value)` pairs.
    fn generator_row(&self, t: usize, i: usize) -> Vec<(usize, Rational)> {
        let tab = &self.tableaux[t];
        let (ri, _) = tab.cell_of(i);
        let (rj, _) = tab.cell_of(i + 1);
        let r = tab.content(i + 1) - tab.content(i);
        match r {
            1 => vec![(t, Rational::one())],
            -1 => vec![(t, -Rational::one())],
            _ => {
                let mut word = tab.row_word();
                word.swap(i - 1, i);
                let u = self.index[&word];
                let inv = Rational::new(1, r);
                let off = if rj > ri {
                    Rational::one()
                } else {
                    Rational::one() - inv * inv
                };
                vec![(t, inv), (u, off)]
            }
        }
    }

    pub fn generator(&self, i: usize) -> Result<SeminormalGenerator> {
        let n = self.shape.n();
        if i == 0 || i >= n {
            return Err(Error::InvalidInput(format!(
                "generator index {i} outside 1..={}",
                n.saturating_sub(1)
            )));
        }
        let rows = (0..self.dim()).map(|t| self.generator_row(t, i)).collect();
        Ok(SeminormalGenerator {
            shape: self.shape.clone(),
            index: i,
            matrix: SparseRationalMatrix::from_rows(rows),
        })
    }

    /// `I + Σ_i ρ(s_i)`.
    pub fn t_matrix(&self) -> SparseRationalMatrix {
        let n = self.shape.n();
        let rows = (0..self.dim())
            .map(|t| {
                let mut row = vec![(t, Rational::one())];
                for i in 1..n {
                    row.extend(self.generator_row(t, i));
                }
                row
            })
            .collect();
        SparseRationalMatrix::from_rows(rows)
    }
}

pub fn seminormal_generator(shape: &NumberPartition, i: usize, limit: usize) -> Result<SeminormalGenerator> {
    SeminormalBasis::new(shape, limit)?.generator(i)
}

/// The image of `T̂ = 1 + Σ s_i` in the irreducible representation `λ`.
pub fn irrep_t_matrix(shape: &NumberPartition, limit: usize) -> Result<SparseRationalMatrix> {
    Ok(SeminormalBasis::new(shape, limit)?.t_matrix())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> NumberPartition {
        s.parse().unwrap()
    }

    #[test]
    fn one_dimensional_representations() {
        for n in 2..=6 {
            let triv = SeminormalBasis::new(&NumberPartition::row(n), 10).unwrap();
            let sign = SeminormalBasis::new(&NumberPartition::column(n), 10).unwrap();
            for i in 1..n {
                assert_eq!(triv.generator(i).unwrap().matrix.get(0, 0), Rational::one());
                assert_eq!(sign.generator(i).unwrap().matrix.get(0, 0), -Rational::one());
            }
            assert_eq!(triv.t_matrix().get(0, 0), Rational::from_integer(n as i64));
            assert_eq!(sign.t_matrix().get(0, 0), Rational::from_integer(2 - n as i64));
        }
    }

    #[test]
    fn shape_21_relations() {
        let b = SeminormalBasis::new(&part("2,1"), 10).unwrap();
        let s1 = b.generator(1).unwrap().matrix;
        let s2 = b.generator(2).unwrap().matrix;
        let id = SparseRationalMatrix::identity(2);
        assert_eq!(s1.mul(&s1), id);
        assert_eq!(s2.mul(&s2), id);
        assert_eq!(s1.mul(&s2).mul(&s1), s2.mul(&s1).mul(&s2));
        assert!(b.generator(0).is_err());
        assert!(b.generator(3).is_err());
    }

    #[test]
    fn t_matrix_row_structure() {
        for n in 1..=8 {
            for shape in NumberPartition::all(n) {
                let t = irrep_t_matrix(&shape, 100_000).unwrap();
                for i in 0..t.dim() {
                    assert!(t.row(i).len() <= 2 * (n - 1) + 1);
                }
            }
        }
    }

    #[test]
    fn rejects_large_n() {
        assert!(SeminormalBasis::new(&NumberPartition::row(21), 10).is_err());
    }
}
