//! Permutations of `[n]` and the Kendall tau metric.
//!
//! Permutations are stored 0-based in one-line notation; parsing and
//! display use the 1-based comma separated form `2,1,4,3`. Products follow
//! the "apply left, then right" convention: `compose(p, q)` maps `x` to
//! `q(p(x))`. Under this convention swapping the entries at positions `i`
//! and `i+1` of `p` is `compose(s_i, p)` with `s_i = (i, i+1)`.

mod clique;
mod code;
mod metric;

pub use clique::{exhaustive_max_code, MaxCode};
pub use code::{covering_decomposition, greedy_code, min_distance, verify_code, Code, Covering};
pub use metric::{ball, ball_size, kendall_distance, kendall_distance_bfs, GeneratorSet};

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A bijection on `[n]`, stored 0-based in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from 1-based images.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let zero: Vec<usize> = images
            .iter()
            .map(|&v| {
                v.checked_sub(1)
                    .ok_or_else(|| Error::InvalidPermutation(format!("{images:?}")))
            })
            .collect::<Result<_>>()?;
        Self::from_zero_based(&zero)
    }

    /// Builds a permutation from 0-based images.
    pub fn from_zero_based(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("length {n}")));
        }
        let mut seen = vec![false; n];
        for &v in images {
            if v >= n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&v| v as u8).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1 && n <= u8::MAX as usize);
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// The longest element `[n, n-1, ..., 1]`.
    pub fn reverse(n: usize) -> Self {
        assert!(n >= 1 && n <= u8::MAX as usize);
        Permutation {
            images: (0..n as u8).rev().collect(),
        }
    }

    /// The adjacent transposition swapping the 0-based points `i` and `i+1`.
    pub fn adjacent(n: usize, i: usize) -> Self {
        assert!(i + 1 < n);
        let mut p = Self::identity(n);
        p.images.swap(i, i + 1);
        p
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        use rand::seq::SliceRandom;
        let mut p = Self::identity(n);
        p.images.shuffle(rng);
        p
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// 0-based image of the 0-based point `x`.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// Returns `p` then `q`: the permutation `x -> q(p(x))`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        if self.len() != q.len() {
            return Err(Error::LengthMismatch(self.len(), q.len()));
        }
        Ok(Permutation {
            images: self.images.iter().map(|&v| q.images[v as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// Swaps the entries at 0-based positions `i` and `i+1` of the one-line
    /// notation, i.e. `compose(s_i, self)`.
    pub fn swap_positions(&self, i: usize) -> Permutation {
        let mut p = self.clone();
        p.images.swap(i, i + 1);
        p
    }

    /// Lexicographic rank in `0..n!` (Lehmer code).
    pub fn rank(&self) -> usize {
        let n = self.len();
        let mut rank = 0usize;
        let mut used = 0u32;
        for (i, &v) in self.images.iter().enumerate() {
            let smaller_unused = (0..v).filter(|&u| used & (1 << u) == 0).count();
            rank = rank * (n - i) + smaller_unused;
            used |= 1 << v;
        }
        rank
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(n: usize, mut rank: usize) -> Permutation {
        let mut digits = vec![0usize; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut avail: Vec<u8> = (0..n as u8).collect();
        let images = digits.into_iter().map(|d| avail.remove(d)).collect();
        Permutation { images }
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let total = factorial_usize(n);
        (0..total).map(|r| Permutation::unrank(n, r)).collect()
    }
}

pub(crate) fn factorial_usize(n: usize) -> usize {
    (1..=n).product()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", *v as usize + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPermutation(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_one_based(&images)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `compose(p, q)`: apply `p` first, then `q`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    p.compose(q)
}

pub fn inverse(p: &Permutation) -> Permutation {
    p.inverse()
}
