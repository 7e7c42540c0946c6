use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::partition::{factorial, NumberPartition};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A Young tabloid: an ordered tuple of disjoint blocks partitioning `[n]`
/// with block sizes given by the shape. Stored as the assignment vector
/// point -> block index (both 0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct YoungTabloid {
    assignment: Vec<u8>,
}

impl YoungTabloid {
    pub fn new(shape: &NumberPartition, assignment: Vec<u8>) -> Result<Self> {
        if assignment.len() != shape.n() {
            return Err(Error::LengthMismatch(shape.n(), assignment.len()));
        }
        let mut counts = vec![0usize; shape.len()];
        for &b in &assignment {
            *counts
                .get_mut(b as usize)
                .ok_or_else(|| Error::InvalidInput(format!("block index {b} out of range")))? += 1;
        }
        if counts != shape.parts() {
            return Err(Error::InvalidInput(format!(
                "block sizes {counts:?} do not match {shape}"
            )));
        }
        Ok(YoungTabloid { assignment })
    }

    /// The reference tabloid `({1..λ_1}, {λ_1+1..λ_1+λ_2}, ...)`, whose
    /// stabiliser is the standard Young subgroup.
    pub fn reference(shape: &NumberPartition) -> Self {
        let assignment = shape
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(b, &len)| std::iter::repeat_n(b as u8, len))
            .collect();
        YoungTabloid { assignment }
    }

    pub fn assignment(&self) -> &[u8] {
        &self.assignment
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    /// Blocks as sorted lists of 1-based points.
    pub fn blocks(&self, shape: &NumberPartition) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); shape.len()];
        for (x, &b) in self.assignment.iter().enumerate() {
            blocks[b as usize].push(x + 1);
        }
        blocks
    }

    /// Builds a tabloid from blocks of 1-based points.
    pub fn from_blocks(shape: &NumberPartition, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut assignment = vec![u8::MAX; shape.n()];
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                let slot = x
                    .checked_sub(1)
                    .and_then(|i| assignment.get_mut(i))
                    .ok_or_else(|| Error::InvalidInput(format!("point {x} out of range")))?;
                *slot = b as u8;
            }
        }
        YoungTabloid::new(shape, assignment)
    }
}

/// `n! / ∏ λ_i!`, the number of tabloids of the given shape.
pub fn tabloid_count(shape: &NumberPartition) -> BigUint {
    factorial(shape.n()) / shape.young_subgroup_order()
}

/// Blockwise image `t^σ`: point `σ(x)` lands in the block that held `x`.
pub fn act(t: &YoungTabloid, sigma: &Permutation) -> Result<YoungTabloid> {
    if t.n() != sigma.len() {
        return Err(Error::LengthMismatch(t.n(), sigma.len()));
    }
    let mut assignment = vec![0u8; t.n()];
    for (x, &b) in t.assignment.iter().enumerate() {
        assignment[sigma.apply(x)] = b;
    }
    Ok(YoungTabloid { assignment })
}

/// Lexicographic ranking of tabloids of a fixed shape, i.e. of the
/// multiset permutations of the assignment word.
#[derive(Debug, Clone)]
pub struct TabloidIndexer {
    shape: NumberPartition,
    count: u64,
}

impl TabloidIndexer {
    pub fn new(shape: &NumberPartition, limit: usize) -> Result<Self> {
        let count = tabloid_count(shape);
        if count > BigUint::from(limit) {
            return Err(Error::limit("tabloid count", count, limit));
        }
        Ok(TabloidIndexer {
            shape: shape.clone(),
            count: count.to_u64().expect("bounded by limit"),
        })
    }

    pub fn len(&self) -> usize {
        self.count as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rank(&self, t: &YoungTabloid) -> usize {
        self.rank_word(&t.assignment)
    }

    pub(crate) fn rank_word(&self, word: &[u8]) -> usize {
        let mut counts: Vec<u128> = self.shape.parts().iter().map(|&p| p as u128).collect();
        let mut remaining = word.len() as u128;
        // Number of arrangements of the remaining multiset.
        let mut arrangements = self.count as u128;
        let mut rank = 0u128;
        for &b in word {
            let b = b as usize;
            for c in counts.iter().take(b) {
                rank += arrangements * c / remaining;
            }
            arrangements = arrangements * counts[b] / remaining;
            counts[b] -= 1;
            remaining -= 1;
        }
        rank as usize
    }

    pub fn unrank(&self, mut rank: usize) -> YoungTabloid {
        let mut counts: Vec<u128> = self.shape.parts().iter().map(|&p| p as u128).collect();
        let n = self.shape.n();
        let mut remaining = n as u128;
        let mut arrangements = self.count as u128;
        let mut word = Vec::with_capacity(n);
        for _ in 0..n {
            for (b, c) in counts.iter_mut().enumerate() {
                if *c == 0 {
                    continue;
                }
                let block = (arrangements * *c / remaining) as usize;
                if rank < block {
                    word.push(b as u8);
                    arrangements = block as u128;
                    *c -= 1;
                    break;
                }
                rank -= block;
            }
            remaining -= 1;
        }
        YoungTabloid { assignment: word }
    }
}

/// All tabloids of the shape, sorted lexicographically by assignment vector.
pub fn enumerate_tabloids(shape: &NumberPartition, limit: usize) -> Result<Vec<YoungTabloid>> {
    let indexer = TabloidIndexer::new(shape, limit)?;
    let mut out = Vec::with_capacity(indexer.len());
    let mut word: Vec<u8> = YoungTabloid::reference(shape).assignment;
    loop {
        out.push(YoungTabloid {
            assignment: word.clone(),
        });
        if !next_permutation(&mut word) {
            break;
        }
    }
    Ok(out)
}

/// Advances to the next lexicographic arrangement; `false` at the last one.
fn next_permutation(w: &mut [u8]) -> bool {
    let Some(i) = (1..w.len()).rev().find(|&i| w[i - 1] < w[i]) else {
        return false;
    };
    let j = (i..w.len()).rev().find(|&j| w[j] > w[i - 1]).expect("exists");
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn part(s: &str) -> NumberPartition {
        s.parse().unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(tabloid_count(&part("6,1")), BigUint::from(7u32));
        assert_eq!(tabloid_count(&part("2,2,2")), BigUint::from(90u32));
        assert_eq!(tabloid_count(&part("4,4,4,3")), BigUint::from(15_765_750u32));
        assert_eq!(tabloid_count(&part("6,6,2")), BigUint::from(84_084u32));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_tabloids(&part("2,1"), 100).unwrap().len(), 3);
        let two = enumerate_tabloids(&part("1,1"), 100).unwrap();
        let words: Vec<&[u8]> = two.iter().map(|t| t.assignment()).collect();
        assert_eq!(words, vec![&[0u8, 1][..], &[1, 0][..]]);
        assert!(enumerate_tabloids(&part("2,2,2"), 89).is_err());
    }

    #[test]
    fn enumeration_matches_count_and_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let all: Vec<_> = (1..=10).flat_map(NumberPartition::all).collect();
        for _ in 0..20 {
            let shape = &all[rng.gen_range(0..all.len())];
            let list = enumerate_tabloids(shape, 1_000_000).unwrap();
            assert_eq!(BigUint::from(list.len()), tabloid_count(shape));
            let idx = TabloidIndexer::new(shape, 1_000_000).unwrap();
            for (i, t) in list.iter().enumerate().step_by(7) {
                assert_eq!(idx.rank(t), i);
                assert_eq!(&idx.unrank(i), t);
            }
            assert!(list.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn act_examples() {
        let shape = part("2,1");
        let t = YoungTabloid::from_blocks(&shape, &[vec![2, 3], vec![1]]).unwrap();
        assert_eq!(act(&t, &Permutation::identity(3)).unwrap(), t);
        let sigma: Permutation = "2,1,3".parse().unwrap();
        let image = act(&t, &sigma).unwrap();
        assert_eq!(image.blocks(&shape), vec![vec![1, 3], vec![2]]);
        assert!(act(&t, &Permutation::identity(4)).is_err());
    }

    #[test]
    fn act_is_right_action_and_bijective() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for shape in [part("3,2,2"), part("4,3,1"), part("2,2,2,1,1")] {
            let n = shape.n();
            let list = enumerate_tabloids(&shape, 100_000).unwrap();
            for _ in 0..20 {
                let g = Permutation::random(n, &mut rng);
                let h = Permutation::random(n, &mut rng);
                let t = &list[rng.gen_range(0..list.len())];
                let lhs = act(&act(t, &g).unwrap(), &h).unwrap();
                assert_eq!(lhs, act(t, &g.compose(&h).unwrap()).unwrap());
                let mut images: Vec<_> = list.iter().map(|t| act(t, &g).unwrap()).collect();
                images.sort();
                assert_eq!(images, list);
            }
        }
    }
}
