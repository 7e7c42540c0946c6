use super::{kendall_distance, Code, Permutation};
use crate::config::Limits;
use crate::error::{Error, Result};

/// Exact `P(n, d)` together with a code attaining it.
#[derive(Debug, Clone)]
pub struct MaxCode {
    pub size: usize,
    pub witness: Code,
}

type Bits = Vec<u64>;

fn words(len: usize) -> usize {
    len.div_ceil(64)
}

fn set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn test(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn is_empty(b: &Bits) -> bool {
    b.iter().all(|&w| w == 0)
}

fn first_bit(b: &Bits) -> Option<usize> {
    b.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(wi, &w)| wi * 64 + w.trailing_zeros() as usize)
}

struct CliqueSearch {
    adj: Vec<Bits>,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl CliqueSearch {
    /// Greedy sequential colouring of `cand`; returns vertices with their
    /// colour bound, in increasing colour order.
    fn colour(&self, cand: &Bits) -> Vec<(usize, usize)> {
        let mut uncoloured = cand.clone();
        let mut out = Vec::new();
        let mut colour = 0;
        while !is_empty(&uncoloured) {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = first_bit(&q) {
                q[v / 64] &= !(1 << (v % 64));
                uncoloured[v / 64] &= !(1 << (v % 64));
                for (qw, aw) in q.iter_mut().zip(&self.adj[v]) {
                    *qw &= !aw;
                }
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, mut cand: Bits) {
        let order = self.colour(&cand);
        for &(v, bound) in order.iter().rev() {
            if self.current.len() + bound <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next: Bits = cand.iter().zip(&self.adj[v]).map(|(c, a)| c & a).collect();
            if is_empty(&next) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cand[v / 64] &= !(1 << (v % 64));
        }
    }
}

/// Exact `P(n, d)` by maximum-clique branch-and-bound on the graph whose
/// vertices are `S_n` (lexicographic order) and whose edges join pairs at
/// Kendall distance at least `d`.
pub fn exhaustive_max_code(n: usize, d: usize, limits: &Limits) -> Result<MaxCode> {
    if n > limits.oracle {
        return Err(Error::limit("n", n, limits.oracle));
    }
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let perms = Permutation::all(n);
    let m = perms.len();
    let mut adj = vec![vec![0u64; words(m)]; m];
    for i in 0..m {
        for j in i + 1..m {
            if kendall_distance(&perms[i], &perms[j])? >= d {
                set(&mut adj[i], j);
                set(&mut adj[j], i);
            }
        }
    }
    let mut all = vec![0u64; words(m)];
    (0..m).for_each(|i| set(&mut all, i));
    let mut search = CliqueSearch {
        adj,
        best: vec![0],
        current: Vec::new(),
    };
    search.expand(all);
    debug_assert!(search
        .best
        .iter()
        .all(|&a| search.best.iter().all(|&b| a == b || test(&search.adj[a], b))));
    let witness = Code::new(n, search.best.iter().map(|&i| perms[i].clone()))?;
    Ok(MaxCode {
        size: witness.len(),
        witness,
    })
}
