use std::collections::HashMap;

use num_bigint::BigUint;

use super::partition::{factorial, NumberPartition};
use crate::error::{Error, Result};

/// A standard Young tableau, stored as the cell `(row, column)` of each
/// entry `1..=n` (0-based rows and columns).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardYoungTableau {
    cells: Vec<(u8, u8)>,
}

impl StandardYoungTableau {
    /// Cell of the 1-based entry `k`.
    pub fn cell_of(&self, k: usize) -> (usize, usize) {
        let (r, c) = self.cells[k - 1];
        (r as usize, c as usize)
    }

    /// Content `column - row` of the 1-based entry `k`.
    pub fn content(&self, k: usize) -> i64 {
        let (r, c) = self.cell_of(k);
        c as i64 - r as i64
    }

    /// Row index of every entry, which determines the tableau.
    pub fn row_word(&self) -> Vec<u8> {
        self.cells.iter().map(|&(r, _)| r).collect()
    }

    pub fn n(&self) -> usize {
        self.cells.len()
    }

    /// Rows of the tableau as lists of entries.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        let height = self.cells.iter().map(|&(r, _)| r as usize + 1).max().unwrap_or(0);
        let mut rows = vec![Vec::new(); height];
        for (k, &(r, _)) in self.cells.iter().enumerate() {
            rows[r as usize].push(k + 1);
        }
        rows
    }

    /// Checks strict increase along rows and down columns.
    pub fn is_standard(&self) -> bool {
        let mut at: HashMap<(u8, u8), usize> = HashMap::new();
        for (k, &cell) in self.cells.iter().enumerate() {
            at.insert(cell, k);
        }
        self.cells.iter().enumerate().all(|(k, &(r, c))| {
            let left_ok = c == 0 || at.get(&(r, c - 1)).is_some_and(|&j| j < k);
            let up_ok = r == 0 || at.get(&(r - 1, c)).is_some_and(|&j| j < k);
            left_ok && up_ok
        })
    }
}

/// `n! / ∏ hook lengths`.
pub fn hook_length_dimension(shape: &NumberPartition) -> BigUint {
    let conj = shape.conjugate();
    let mut hooks = BigUint::from(1u32);
    for (i, &row) in shape.parts().iter().enumerate() {
        for (j, &col) in conj.iter().enumerate().take(row) {
            hooks *= (row - j - 1) + (col - i - 1) + 1;
        }
    }
    factorial(shape.n()) / hooks
}

/// All standard Young tableaux of `shape` in last-letter order: tableaux
/// are grouped by the cell holding `n`, taken by increasing row, and
/// recursively so for `n - 1, n - 2, ...`.
pub fn enumerate_syt(shape: &NumberPartition, limit: usize) -> Result<Vec<StandardYoungTableau>> {
    let dim = hook_length_dimension(shape);
    if dim > BigUint::from(limit) {
        return Err(Error::limit("tableau count", dim, limit));
    }
    let n = shape.n();
    if n > u8::MAX as usize {
        return Err(Error::limit("n", n, u8::MAX));
    }
    fn rec(rows: &mut Vec<usize>, out: &mut Vec<Vec<(u8, u8)>>) {
        let n: usize = rows.iter().sum();
        if n == 0 {
            out.push(Vec::new());
            return;
        }
        for r in 0..rows.len() {
            let removable = rows[r] > 0 && rows.get(r + 1).is_none_or(|&below| below < rows[r]);
            if !removable {
                continue;
            }
            rows[r] -= 1;
            let col = rows[r];
            let start = out.len();
            rec(rows, out);
            for t in &mut out[start..] {
                t.push((r as u8, col as u8));
            }
            rows[r] += 1;
        }
    }
    let mut raw = Vec::new();
    rec(&mut shape.parts().to_vec(), &mut raw);
    Ok(raw.into_iter().map(|cells| StandardYoungTableau { cells }).collect())
}
