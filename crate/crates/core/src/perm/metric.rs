use std::collections::{BTreeSet, VecDeque};

use super::{factorial_usize, Permutation};
use crate::config::Limits;
use crate::error::{Error, Result};

/// The adjacent transpositions `S = {(i, i+1)}` of `S_n`, optionally
/// together with the identity (`T = S ∪ {1}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub n: usize,
    pub members: Vec<Permutation>,
    pub include_identity: bool,
}

impl GeneratorSet {
    pub fn adjacent(n: usize, include_identity: bool) -> Self {
        GeneratorSet {
            n,
            members: (0..n.saturating_sub(1)).map(|i| Permutation::adjacent(n, i)).collect(),
            include_identity,
        }
    }

    /// Members, with the identity first when it is included.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(self.members.len() + 1);
        if self.include_identity {
            out.push(Permutation::identity(self.n));
        }
        out.extend(self.members.iter().cloned());
        out
    }

    pub fn len(&self) -> usize {
        self.members.len() + usize::from(self.include_identity)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Number of value pairs ordered differently by `p` and `q`.
pub fn kendall_distance(p: &Permutation, q: &Permutation) -> Result<usize> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    let n = p.len();
    let mut pos_in_q = vec![0usize; n];
    for (i, &v) in q.images().iter().enumerate() {
        pos_in_q[v as usize] = i;
    }
    // Inversions of p read in q's coordinates.
    let seq: Vec<usize> = p.images().iter().map(|&v| pos_in_q[v as usize]).collect();
    Ok(count_inversions(&seq))
}

fn count_inversions(seq: &[usize]) -> usize {
    // Fenwick tree over values.
    let n = seq.len();
    let mut tree = vec![0usize; n + 1];
    let mut inv = 0;
    for (seen, &v) in seq.iter().enumerate() {
        let mut i = v + 1;
        let mut le = 0;
        while i > 0 {
            le += tree[i];
            i &= i - 1;
        }
        inv += seen - le;
        let mut i = v + 1;
        while i <= n {
            tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }
    inv
}

/// Graph distance between `p` and `q` in the adjacent-swap move graph,
/// found by breadth-first search. Exponential; intended for `n <= 7`.
pub fn kendall_distance_bfs(p: &Permutation, q: &Permutation) -> Result<usize> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    if p == q {
        return Ok(0);
    }
    let n = p.len();
    let mut dist = vec![usize::MAX; factorial_usize(n)];
    let target = q.rank();
    dist[p.rank()] = 0;
    let mut queue = VecDeque::from([p.clone()]);
    while let Some(g) = queue.pop_front() {
        let d = dist[g.rank()];
        for i in 0..n - 1 {
            let h = g.swap_positions(i);
            let r = h.rank();
            if dist[r] == usize::MAX {
                dist[r] = d + 1;
                if r == target {
                    return Ok(d + 1);
                }
                queue.push_back(h);
            }
        }
    }
    unreachable!("the adjacent-swap graph on S_n is connected")
}

/// The Kendall ball `{h : d(center, h) <= r}`.
pub fn ball(center: &Permutation, r: usize, limits: &Limits) -> Result<BTreeSet<Permutation>> {
    let n = center.len();
    if n > limits.enumeration {
        return Err(Error::limit("n", n, limits.enumeration));
    }
    let mut out = BTreeSet::from([center.clone()]);
    let mut frontier = vec![center.clone()];
    for _ in 0..r {
        let mut next = Vec::new();
        for g in &frontier {
            for i in 0..n.saturating_sub(1) {
                let h = g.swap_positions(i);
                if out.insert(h.clone()) {
                    next.push(h);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(out)
}

/// `|B_r(1)|`: the number of permutations of `[n]` with at most `r`
/// inversions, by the Mahonian recurrence. Requires no enumeration.
pub fn ball_size(n: usize, r: usize) -> u128 {
    // counts[k] = #perms of current size with exactly k inversions, k <= r.
    let mut counts = vec![0u128; r + 1];
    counts[0] = 1;
    for m in 2..=n {
        let mut next = vec![0u128; r + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            for j in 0..m.min(k + 1) {
                *slot += counts[k - j];
            }
        }
        counts = next;
    }
    counts.iter().sum()
}
