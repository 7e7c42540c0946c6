use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{factorial_usize, kendall_distance, Permutation};
use crate::config::Limits;
use crate::error::{Error, Result};

/// A permutation code: a nonempty set of distinct permutations of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Code {
    n: usize,
    members: BTreeSet<Permutation>,
}

impl Code {
    pub fn new(n: usize, members: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for g in members {
            if g.len() != n {
                return Err(Error::LengthMismatch(n, g.len()));
            }
            if !set.insert(g.clone()) {
                return Err(Error::InvalidInput(format!("duplicate code member {g}")));
            }
        }
        Ok(Code { n, members: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = &Permutation> {
        self.members.iter()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.members.contains(g)
    }

    /// Parses the code file format: one permutation per line, `#` starts a
    /// comment, blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut members = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let g: Permutation = line.parse().map_err(|e: Error| Error::Parse {
                line: lineno + 1,
                msg: e.to_string(),
            })?;
            members.push(g);
        }
        let n = members
            .first()
            .map(Permutation::len)
            .ok_or_else(|| Error::InvalidInput("empty code".into()))?;
        Code::new(n, members)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Code::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.members {
            writeln!(out, "{g}").unwrap();
        }
        out
    }
}

/// Minimum Kendall distance over distinct pairs of members.
pub fn min_distance(code: &Code) -> Result<usize> {
    if code.len() < 2 {
        return Err(Error::InvalidInput(
            "minimum distance needs at least two codewords".into(),
        ));
    }
    let members: Vec<&Permutation> = code.members().collect();
    let mut best = usize::MAX;
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            best = best.min(kendall_distance(a, b)?);
        }
    }
    Ok(best)
}

/// `true` iff every pair of codewords is at distance at least `d`.
pub fn verify_code(code: &Code, d: usize) -> bool {
    code.len() < 2 || min_distance(code).map(|m| m >= d).unwrap_or(false)
}

/// Radius-one covering data of a code: the uncovered set `Y` and the
/// largest multiplicity in the multiset union of the balls `B_1(c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covering {
    pub uncovered: BTreeSet<Permutation>,
    pub multiplicity_max: usize,
}

pub fn covering_decomposition(code: &Code, limits: &Limits) -> Result<Covering> {
    let n = code.n();
    if n > limits.enumeration {
        return Err(Error::limit("n", n, limits.enumeration));
    }
    let mut mult = vec![0usize; factorial_usize(n)];
    for c in code.members() {
        mult[c.rank()] += 1;
        for i in 0..n.saturating_sub(1) {
            mult[c.swap_positions(i).rank()] += 1;
        }
    }
    let uncovered = mult
        .iter()
        .enumerate()
        .filter(|(_, &m)| m == 0)
        .map(|(r, _)| Permutation::unrank(n, r))
        .collect();
    Ok(Covering {
        uncovered,
        multiplicity_max: mult.iter().copied().max().unwrap_or(0),
    })
}

/// A code with minimum distance at least `d` that is maximal by inclusion:
/// `S_n` is scanned in a seeded random order and each permutation is kept
/// when it is far enough from everything kept so far.
pub fn greedy_code(n: usize, d: usize, seed: u64, limits: &Limits) -> Result<Code> {
    if n > limits.enumeration {
        return Err(Error::limit("n", n, limits.enumeration));
    }
    let mut order = Permutation::all(n);
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut kept: Vec<Permutation> = Vec::new();
    for g in order {
        if kept
            .iter()
            .all(|c| kendall_distance(c, &g).map(|x| x >= d).unwrap_or(false))
        {
            kept.push(g);
        }
    }
    Code::new(n, kept)
}
