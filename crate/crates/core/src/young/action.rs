//! Coset-action matrices of `T = S ∪ {1}` on Young tabloids.

use serde::{Deserialize, Serialize};

use super::partition::NumberPartition;
use super::tabloid::{act, TabloidIndexer, YoungTabloid};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::perm::{GeneratorSet, Permutation};

/// Square nonnegative-integer matrix in compressed sparse row form.
///
/// For matrices built from a shape, entry `(i, j)` counts the elements of
/// `S ∪ {1}` mapping tabloid `i` to tabloid `j` (tabloids in lexicographic
/// order of their assignment vectors).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionMatrix {
    pub n: usize,
    pub shape: NumberPartition,
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<u32>,
}

impl ActionMatrix {
    /// Builds from per-row `(column, value)` lists; zero values are dropped
    /// and each row is sorted by column.
    pub fn from_rows(n: usize, shape: NumberPartition, rows: Vec<Vec<(usize, u32)>>) -> Self {
        let dim = rows.len();
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for mut row in rows {
            row.sort_unstable();
            let mut last: Option<usize> = None;
            for (c, v) in row {
                assert!(c < dim, "column out of range");
                if last == Some(c) {
                    *vals.last_mut().unwrap() += v;
                    continue;
                }
                cols.push(c as u32);
                vals.push(v);
                last = Some(c);
            }
            row_ptr.push(cols.len());
        }
        let mut m = ActionMatrix {
            n,
            shape,
            dim,
            row_ptr,
            cols,
            vals,
        };
        m.drop_zeros();
        m
    }

    fn drop_zeros(&mut self) {
        if !self.vals.contains(&0) {
            return;
        }
        let rows: Vec<Vec<(usize, u32)>> = (0..self.dim)
            .map(|i| self.row(i).filter(|&(_, v)| v != 0).collect())
            .collect();
        *self = ActionMatrix::from_rows(self.n, self.shape.clone(), rows);
    }

    pub fn from_dense(n: usize, shape: NumberPartition, dense: &[Vec<u32>]) -> Self {
        let rows = dense
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(j, &v)| (j, v))
                    .collect()
            })
            .collect();
        ActionMatrix::from_rows(n, shape, rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Nonzero entries of row `i` as `(column, value)`, by increasing column.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[range.clone()]
            .iter()
            .zip(&self.vals[range])
            .map(|(&c, &v)| (c as usize, v))
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.cols[range.clone()].binary_search(&(j as u32)) {
            Ok(k) => self.vals[range.start + k],
            Err(_) => 0,
        }
    }

    pub fn row_sums(&self) -> Vec<u64> {
        (0..self.dim)
            .map(|i| self.row(i).map(|(_, v)| v as u64).sum())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| self.row(i).all(|(j, v)| self.get(j, i) == v))
    }

    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0u32; self.dim]; self.dim];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in self.row(i) {
                row[j] = v;
            }
        }
        out
    }

    /// Checks the structural invariants of a `T`-action matrix: row sums
    /// equal to `n`, symmetry and a positive diagonal.
    pub fn check_invariants(&self) -> Result<()> {
        if let Some(i) = self.row_sums().iter().position(|&s| s != self.n as u64) {
            return Err(Error::InvalidInput(format!("row {i} does not sum to {}", self.n)));
        }
        if !self.is_symmetric() {
            return Err(Error::InvalidInput("matrix is not symmetric".into()));
        }
        if let Some(i) = (0..self.dim).find(|&i| self.get(i, i) == 0) {
            return Err(Error::InvalidInput(format!("zero diagonal entry at {i}")));
        }
        Ok(())
    }
}

/// Matrix of `Σ_{s ∈ S ∪ {1}} ρ(s)` in the permutation representation on
/// tabloids of `shape`.
pub fn build_action_matrix(n: usize, shape: &NumberPartition, limits: &Limits) -> Result<ActionMatrix> {
    if shape.n() != n {
        return Err(Error::InvalidPartition(format!("{shape} is not a partition of {n}")));
    }
    let indexer = TabloidIndexer::new(shape, limits.sparse_dimension)?;
    let dim = indexer.len();
    let mut rows = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut word = indexer.unrank(i).assignment().to_vec();
        let mut diag = 1u32;
        let mut row = Vec::with_capacity(n);
        for k in 0..n - 1 {
            if word[k] == word[k + 1] {
                diag += 1;
            } else {
                word.swap(k, k + 1);
                row.push((indexer.rank_word(&word), 1));
                word.swap(k, k + 1);
            }
        }
        row.push((i, diag));
        rows.push(row);
    }
    Ok(ActionMatrix::from_rows(n, shape.clone(), rows))
}

/// Entry `(i, j)` of the `T`-action matrix computed from cosets directly:
/// `|T ∩ a_i⁻¹ H a_j|`, where `H` is the Young subgroup stabilising the
/// reference tabloid and `a_i` is the lexicographically least permutation
/// carrying the reference tabloid to tabloid `i`. Enumerates `H` and `S_n`;
/// restricted to `n <= 6`.
pub fn double_coset_oracle(n: usize, shape: &NumberPartition, i: usize, j: usize) -> Result<u32> {
    if n > 6 {
        return Err(Error::limit("n", n, 6));
    }
    if shape.n() != n {
        return Err(Error::InvalidPartition(format!("{shape} is not a partition of {n}")));
    }
    let indexer = TabloidIndexer::new(shape, usize::MAX)?;
    if i >= indexer.len() || j >= indexer.len() {
        return Err(Error::InvalidInput(format!("index out of range 0..{}", indexer.len())));
    }
    let reference = YoungTabloid::reference(shape);
    let all = Permutation::all(n);
    let stabiliser: Vec<&Permutation> = all
        .iter()
        .filter(|g| act(&reference, g).map(|t| t == reference).unwrap_or(false))
        .collect();
    let representative = |k: usize| -> Result<&Permutation> {
        let target = indexer.unrank(k);
        for g in &all {
            if act(&reference, g)? == target {
                return Ok(g);
            }
        }
        unreachable!("S_n acts transitively on tabloids")
    };
    let ai_inv = representative(i)?.inverse();
    let aj = representative(j)?;
    let t = GeneratorSet::adjacent(n, true).elements();
    let mut count = 0;
    for h in stabiliser {
        let g = ai_inv.compose(h)?.compose(aj)?;
        if t.contains(&g) {
            count += 1;
        }
    }
    Ok(count)
}

/// The explicit `n × n` matrix with diagonal `(n-1, n-2, ..., n-2, n-1)` and
/// unit off-diagonals; the `T`-action matrix of shape `(n-1, 1)` up to
/// relabelling.
pub fn tridiagonal_reference(n: usize) -> Result<ActionMatrix> {
    if n < 2 {
        return Err(Error::InvalidInput("tridiagonal reference needs n >= 2".into()));
    }
    let rows = (0..n)
        .map(|i| {
            let mut row = Vec::with_capacity(3);
            if i > 0 {
                row.push((i - 1, 1));
            }
            let d = if i == 0 || i == n - 1 { n - 1 } else { n - 2 };
            row.push((i, d as u32));
            if i + 1 < n {
                row.push((i + 1, 1));
            }
            row
        })
        .collect();
    Ok(ActionMatrix::from_rows(
        n,
        NumberPartition::new(vec![n - 1, 1]).expect("n >= 2"),
        rows,
    ))
}

/// Decides whether a simultaneous relabelling of rows and columns of `a`
/// yields the path matrix `b`. `b` must be tridiagonal with every
/// sub-diagonal entry nonzero.
pub fn permutation_similar_to_path(a: &ActionMatrix, b: &ActionMatrix) -> Result<bool> {
    let dim = b.dim();
    for i in 0..dim {
        for (j, _) in b.row(i) {
            if i.abs_diff(j) > 1 {
                return Err(Error::InvalidInput("target is not tridiagonal".into()));
            }
        }
        if i + 1 < dim && b.get(i, i + 1) == 0 {
            return Err(Error::InvalidInput("target path is disconnected".into()));
        }
    }
    if a.dim() != dim {
        return Ok(false);
    }
    if dim == 1 {
        return Ok(a.get(0, 0) == b.get(0, 0));
    }
    let neighbours: Vec<Vec<usize>> = (0..dim)
        .map(|i| a.row(i).map(|(j, _)| j).filter(|&j| j != i).collect())
        .collect();
    if neighbours.iter().any(|nb| nb.len() > 2) {
        return Ok(false);
    }
    let ends: Vec<usize> = (0..dim).filter(|&i| neighbours[i].len() == 1).collect();
    if ends.len() != 2 {
        return Ok(false);
    }
    for &start in &ends {
        // Walk the path from this endpoint.
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < dim {
            let Some(&next) = neighbours[cur].iter().find(|&&v| v != prev) else {
                break;
            };
            prev = cur;
            cur = next;
            order.push(cur);
        }
        if order.len() != dim {
            return Ok(false);
        }
        let matches = (0..dim).all(|k| {
            a.get(order[k], order[k]) == b.get(k, k)
                && (k + 1 == dim || a.get(order[k], order[k + 1]) == b.get(k, k + 1))
                && (k + 1 == dim || a.get(order[k + 1], order[k]) == b.get(k + 1, k))
        });
        if matches {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> NumberPartition {
        s.parse().unwrap()
    }

    #[test]
    fn small_matrix_by_hand() {
        let m = build_action_matrix(3, &part("2,1"), &Limits::default()).unwrap();
        assert_eq!(m.to_dense(), vec![vec![2, 1, 0], vec![1, 1, 1], vec![0, 1, 2]]);
        assert_eq!(
            tridiagonal_reference(3).unwrap().to_dense(),
            vec![vec![2, 1, 0], vec![1, 1, 1], vec![0, 1, 2]]
        );
    }

    #[test]
    fn invariants_on_222() {
        let m = build_action_matrix(6, &part("2,2,2"), &Limits::default()).unwrap();
        assert_eq!(m.dim(), 90);
        m.check_invariants().unwrap();
        assert!(build_action_matrix(5, &part("2,2,2"), &Limits::default()).is_err());
    }

    #[test]
    fn reference_properties() {
        for n in 2..=20 {
            let m = tridiagonal_reference(n).unwrap();
            assert!(m.is_symmetric());
            assert!(m.row_sums().iter().all(|&s| s == n as u64));
        }
        assert!(tridiagonal_reference(1).is_err());
    }

    #[test]
    fn similarity() {
        let b = tridiagonal_reference(6).unwrap();
        assert!(permutation_similar_to_path(&b, &b).unwrap());
        let dense = b.to_dense();
        let reversed: Vec<Vec<u32>> = (0..6).map(|i| (0..6).map(|j| dense[5 - i][5 - j]).collect()).collect();
        let r = ActionMatrix::from_dense(6, b.shape.clone(), &reversed);
        assert!(permutation_similar_to_path(&r, &b).unwrap());
        let a = build_action_matrix(7, &part("6,1"), &Limits::default()).unwrap();
        assert!(permutation_similar_to_path(&a, &tridiagonal_reference(7).unwrap()).unwrap());
        assert!(!permutation_similar_to_path(&a, &tridiagonal_reference(6).unwrap()).unwrap());
        let not_path = build_action_matrix(4, &part("2,2"), &Limits::default()).unwrap();
        assert!(permutation_similar_to_path(&b, &not_path).is_err());
    }

    #[test]
    fn oracle_agrees_on_small_shapes() {
        for (n, shape) in [(4, "3,1"), (5, "3,2"), (4, "2,1,1"), (3, "1,1,1")] {
            let shape = part(shape);
            let m = build_action_matrix(n, &shape, &Limits::default()).unwrap();
            for i in 0..m.dim() {
                for j in 0..m.dim() {
                    assert_eq!(double_coset_oracle(n, &shape, i, j).unwrap(), m.get(i, j));
                }
            }
        }
    }

    #[test]
    fn oracle_diagonal_for_hook_shape() {
        // For (n-1,1) the tabloid whose singleton is an interior point has
        // diagonal n-2.
        let n = 5;
        let shape = part("4,1");
        // Tabloid 2 in lex order has its singleton at point 3.
        assert_eq!(double_coset_oracle(n, &shape, 2, 2).unwrap(), (n - 2) as u32);
        assert!(double_coset_oracle(7, &part("6,1"), 0, 0).is_err());
    }
}
