use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A number partition `λ = (λ_1 >= λ_2 >= ... >= λ_m >= 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NumberPartition {
    parts: Vec<usize>,
}

impl NumberPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(NumberPartition { parts })
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        NumberPartition { parts: vec![n] }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        NumberPartition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Column lengths of the Young diagram.
    pub fn conjugate(&self) -> Vec<usize> {
        (0..self.parts[0])
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect()
    }

    /// `|S_λ| = ∏ λ_i!`, the order of the Young subgroup.
    pub fn young_subgroup_order(&self) -> BigUint {
        self.parts.iter().map(|&p| factorial(p)).product()
    }

    /// All partitions of `n`, in reverse lexicographic order: `(n)` first,
    /// `(1^n)` last.
    pub fn all(n: usize) -> Vec<NumberPartition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<NumberPartition>) {
            if rest == 0 {
                out.push(NumberPartition { parts: cur.clone() });
                return;
            }
            for k in (1..=rest.min(max)).rev() {
                cur.push(k);
                rec(rest - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

impl fmt::Display for NumberPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for NumberPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `4,4,4,3` (parentheses optional). Unsorted input is rejected.
impl FromStr for NumberPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        NumberPartition::new(parts)
    }
}

impl Serialize for NumberPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NumberPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        NumberPartition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// `λ ⊵ μ`: every prefix sum of `λ` is at least the matching prefix sum of `μ`.
pub fn dominance_geq(lambda: &NumberPartition, mu: &NumberPartition) -> Result<bool> {
    if lambda.n() != mu.n() {
        return Err(Error::InvalidInput(format!(
            "{lambda} and {mu} partition different integers"
        )));
    }
    let len = lambda.len().max(mu.len());
    let (mut a, mut b) = (0, 0);
    for i in 0..len {
        a += lambda.parts.get(i).copied().unwrap_or(0);
        b += mu.parts.get(i).copied().unwrap_or(0);
        if a < b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every partition dominating `μ`, i.e. the irreducible constituents of the
/// permutation module on tabloids of shape `μ` (Young's rule), in reverse
/// lexicographic order.
pub fn constituents_dominating(mu: &NumberPartition) -> Vec<NumberPartition> {
    NumberPartition::all(mu.n())
        .into_iter()
        .filter(|l| dominance_geq(l, mu).expect("same n"))
        .collect()
}

/// The 37 partitions of 15 whose irreducible representations were checked
/// for the `(4,4,4,3)` tabloid module, in the order they are listed in the
/// literature.
pub fn literature_s15_list() -> Vec<NumberPartition> {
    const LIST: [&[usize]; 37] = [
        &[15],
        &[14, 1],
        &[13, 2],
        &[13, 1, 1],
        &[12, 3],
        &[12, 2, 1],
        &[11, 4],
        &[8, 7],
        &[10, 5],
        &[11, 2, 2],
        &[9, 6],
        &[11, 3, 1],
        &[7, 7, 1],
        &[5, 5, 5],
        &[10, 4, 1],
        &[10, 3, 2],
        &[9, 5, 1],
        &[8, 6, 1],
        &[9, 3, 3],
        &[9, 2, 2, 2],
        &[6, 6, 3],
        &[9, 4, 2],
        &[4, 4, 4, 3],
        &[7, 6, 2],
        &[7, 4, 4],
        &[6, 5, 4],
        &[8, 5, 2],
        &[8, 4, 3],
        &[7, 5, 3],
        &[6, 3, 3, 3],
        &[8, 3, 2, 2],
        &[5, 4, 4, 2],
        &[7, 3, 3, 2],
        &[5, 5, 3, 2],
        &[6, 5, 2, 2],
        &[7, 4, 2, 2],
        &[6, 4, 3, 2],
    ];
    LIST.iter()
        .map(|p| NumberPartition::new(p.to_vec()).expect("valid literal"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> NumberPartition {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_validate() {
        assert_eq!(part("4,4,4,3").parts(), &[4, 4, 4, 3]);
        assert_eq!(part("(2,1)").n(), 3);
        assert!("3,4".parse::<NumberPartition>().is_err());
        assert!("3,0".parse::<NumberPartition>().is_err());
        assert!("".parse::<NumberPartition>().is_err());
        assert_eq!(part("3,1,1").conjugate(), vec![3, 1, 1]);
        assert_eq!(part("3,1").to_string(), "(3,1)");
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| NumberPartition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(NumberPartition::all(15).len(), 176);
        let all = NumberPartition::all(5);
        assert_eq!(all[0], NumberPartition::row(5));
        assert_eq!(*all.last().unwrap(), NumberPartition::column(5));
    }

    #[test]
    fn dominance_examples() {
        let mu = part("4,4,4,3");
        assert!(dominance_geq(&part("15"), &mu).unwrap());
        assert!(dominance_geq(&mu, &mu).unwrap());
        assert!(!dominance_geq(&part("3,3,3,3,3"), &mu).unwrap());
        assert!(dominance_geq(&part("3"), &mu).is_err());
    }

    #[test]
    fn constituents_examples() {
        assert_eq!(constituents_dominating(&part("6")), vec![part("6")]);
        assert_eq!(constituents_dominating(&part("1,1")), vec![part("2"), part("1,1")]);
        let computed = constituents_dominating(&part("4,4,4,3"));
        assert_eq!(computed.len(), 54);
        for l in literature_s15_list() {
            assert!(computed.contains(&l), "{l} missing");
        }
        assert!(computed.contains(&part("5,4,3,3")));
        assert!(computed.contains(&part("12,1,1,1")));
    }

    #[test]
    fn literal_list() {
        let list = literature_s15_list();
        assert_eq!(list.len(), 37);
        assert!(list.contains(&part("4,4,4,3")));
        let mu = part("4,4,4,3");
        assert!(list.iter().all(|l| dominance_geq(l, &mu).unwrap()));
        let mut sorted = list.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 37);
    }

    #[test]
    fn young_subgroup_orders() {
        assert_eq!(part("2,2,2").young_subgroup_order(), BigUint::from(8u32));
        assert_eq!(part("5,1,1").young_subgroup_order(), BigUint::from(120u32));
        assert_eq!(part("16,1").young_subgroup_order(), factorial(16));
    }
}
