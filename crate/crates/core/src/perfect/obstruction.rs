//! Obstruction reports for 1-perfect codes.
//!
//! A 1-perfect code `C` with a subgroup `H` satisfies `T̂ · C̃ = Ĥ` in the
//! group algebra. If `n ∤ |H|` and the matrix of `T = S ∪ {1}` acting on the
//! cosets of `H` is invertible, no such code exists. Young's rule splits the
//! coset module of a Young subgroup into irreducibles, so invertibility may
//! equally be checked on each irreducible constituent.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::modp::{check_nonsingular, CheckMethod, EliminationBudget, ModPMatrix, Verdict};
use crate::arith::is_prime;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::perm::ball_size;
use crate::young::{
    build_action_matrix, constituents_dominating, hook_length_dimension, irrep_t_matrix, literature_s15_list,
    tabloid_count, NumberPartition,
};

/// The three primes just above `10^6` used unless configured otherwise.
pub const DEFAULT_PRIMES: [u64; 3] = [1_000_003, 1_000_033, 1_000_037];

/// Settings shared by the obstruction pipelines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionOptions {
    /// Primes tried in order until one certifies invertibility.
    pub primes: Vec<u64>,
    /// Reduce modulo every prime even after a certificate, so that the
    /// verdicts can be compared.
    pub all_primes: bool,
    /// Irreducible constituents above this dimension are reported as
    /// skipped.
    pub dimension_limit: usize,
    pub budget: EliminationBudget,
    /// Worker threads for independent matrix checks; results do not depend
    /// on it.
    pub threads: usize,
}

impl Default for ObstructionOptions {
    fn default() -> Self {
        ObstructionOptions {
            primes: DEFAULT_PRIMES.to_vec(),
            all_primes: false,
            dimension_limit: 200_000,
            budget: EliminationBudget::default(),
            threads: 1,
        }
    }
}

impl ObstructionOptions {
    fn validate(&self) -> Result<()> {
        if self.primes.is_empty() {
            return Err(Error::InvalidInput("the prime list is empty".into()));
        }
        if let Some(&p) = self.primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(())
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).product()
}

/// True iff `n` does not divide `|S_λ| = ∏ λ_i!`.
pub fn divisibility_precondition(n: usize, shape: &NumberPartition) -> Result<bool> {
    if shape.n() != n {
        return Err(Error::InvalidPartition(format!("{shape} is not a partition of {n}")));
    }
    Ok(!(shape.young_subgroup_order() % BigUint::from(n)).is_zero())
}

/// True iff `|B_r(1)|` divides `n!`, the counting condition every
/// `r`-perfect code satisfies. For `r = 1` it always holds since
/// `|B_1| = n`.
pub fn perfect_counting_condition(n: usize, r: usize, limits: &Limits) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    // The Mahonian counts fit in u128 up to n = 34.
    if n > 34 || n > limits.sparse_dimension {
        return Err(Error::limit("n", n, 34.min(limits.sparse_dimension)));
    }
    Ok((factorial(n) % BigUint::from(ball_size(n, r))).is_zero())
}

/// Which module an obstruction report examined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Route {
    Coset {
        #[serde(serialize_with = "as_text")]
        shape: NumberPartition,
    },
    Irreps {
        #[serde(serialize_with = "as_text")]
        mu: NumberPartition,
        list: ConstituentList,
        #[serde(serialize_with = "all_as_text")]
        partitions: Vec<NumberPartition>,
    },
}

/// Source of the irreducible constituents to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstituentList {
    /// Every partition dominating `μ` (Young's rule).
    Computed,
    /// The published list of 37 partitions for `μ = (4,4,4,3)`.
    Literature,
}

fn as_text<S: Serializer>(p: &NumberPartition, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn all_as_text<S: Serializer>(ps: &[NumberPartition], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(ps.iter().map(ToString::to_string))
}

/// Outcome for one matrix at one prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixVerdict {
    Invertible,
    SingularModP,
    /// Attempted, but the black-box probe was inconclusive.
    Undetermined,
    /// Not attempted because the dimension exceeds the configured limit.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixCheck {
    pub label: String,
    pub dim: u64,
    pub prime: Option<u64>,
    pub verdict: MatrixVerdict,
    pub method: Option<CheckMethod>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    #[serde(rename = "no-1-perfect-code")]
    NoOnePerfectCode,
    /// Every listed matrix is invertible, but the list is not the full set
    /// of constituents.
    ConditionalOnConstituentList,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ObstructionReport {
    pub n: usize,
    pub route: Route,
    pub divisibility_ok: bool,
    pub matrices: Vec<MatrixCheck>,
    pub conclusion: Conclusion,
    /// Why the conclusion is not `no-1-perfect-code`, when it is not.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl ObstructionReport {
    /// Labels whose every attempt stayed inconclusive.
    pub fn uncertified(&self) -> Vec<&str> {
        let mut labels: Vec<&str> = self.matrices.iter().map(|m| m.label.as_str()).collect();
        labels.dedup();
        labels
            .into_iter()
            .filter(|l| {
                !self
                    .matrices
                    .iter()
                    .any(|m| m.label == *l && m.verdict == MatrixVerdict::Invertible)
            })
            .collect()
    }

    /// True when one matrix was certified at one prime and found singular
    /// at another. A genuine determinant vanishes modulo few primes, so on
    /// the default primes this points at a bug.
    pub fn has_disagreement(&self) -> bool {
        self.matrices.iter().any(|a| {
            a.verdict == MatrixVerdict::Invertible
                && self
                    .matrices
                    .iter()
                    .any(|b| b.label == a.label && b.verdict == MatrixVerdict::SingularModP)
        })
    }
}

/// Tries the primes in order and records every attempt.
fn certify(
    label: &str,
    dim: u64,
    options: &ObstructionOptions,
    reduce: impl Fn(u64) -> Result<ModPMatrix>,
) -> Result<Vec<MatrixCheck>> {
    let mut out = Vec::new();
    let mut certified = false;
    for &p in &options.primes {
        if certified && !options.all_primes {
            break;
        }
        let m = reduce(p)?;
        let check = check_nonsingular(&m, &options.budget);
        certified |= check.verdict == Verdict::Invertible;
        out.push(MatrixCheck {
            label: label.to_string(),
            dim,
            prime: Some(p),
            verdict: match check.verdict {
                Verdict::Invertible => MatrixVerdict::Invertible,
                Verdict::SingularModP => MatrixVerdict::SingularModP,
                Verdict::Undetermined => MatrixVerdict::Undetermined,
            },
            method: Some(check.method),
        });
    }
    Ok(out)
}

fn conclude(divisibility_ok: bool, matrices: &[MatrixCheck], complete_list: bool) -> (Conclusion, Option<String>) {
    let report = ObstructionReport {
        n: 0,
        route: Route::Coset {
            shape: NumberPartition::row(1),
        },
        divisibility_ok,
        matrices: matrices.to_vec(),
        conclusion: Conclusion::Inconclusive,
        reason: None,
    };
    let uncertified = report.uncertified();
    if !uncertified.is_empty() {
        let skipped = matrices.iter().any(|m| m.verdict == MatrixVerdict::Skipped);
        let what = if skipped {
            "skipped or singular modulo every prime"
        } else {
            "singular modulo every prime"
        };
        return (
            Conclusion::Inconclusive,
            Some(format!("{what}: {}", uncertified.join(" "))),
        );
    }
    if !divisibility_ok {
        return (
            Conclusion::Inconclusive,
            Some("n divides the order of the subgroup".into()),
        );
    }
    if !complete_list {
        return (
            Conclusion::ConditionalOnConstituentList,
            Some("conditional on the published constituent list, which omits dominating partitions".into()),
        );
    }
    (Conclusion::NoOnePerfectCode, None)
}

/// Checks the coset-action matrix of `shape` modulo each prime.
pub fn obstruction_coset(
    n: usize,
    shape: &NumberPartition,
    options: &ObstructionOptions,
    limits: &Limits,
) -> Result<ObstructionReport> {
    options.validate()?;
    let divisibility_ok = divisibility_precondition(n, shape)?;
    let matrix = build_action_matrix(n, shape, limits)?;
    let label = format!("M{shape}");
    let matrices = certify(&label, matrix.dim() as u64, options, |p| {
        ModPMatrix::from_action(&matrix, p)
    })?;
    let (conclusion, reason) = conclude(divisibility_ok, &matrices, true);
    Ok(ObstructionReport {
        n,
        route: Route::Coset { shape: shape.clone() },
        divisibility_ok,
        matrices,
        conclusion,
        reason,
    })
}

/// Checks `T̂` on irreducible constituents of the coset module of `μ`.
///
/// With [`ConstituentList::Literature`] (only for `μ = (4,4,4,3)`) the
/// published partitions are checked; since they are a strict subset of the
/// dominating partitions the conclusion is at best conditional.
/// Constituents above the dimension limit are skipped and reported.
pub fn obstruction_irreps(
    n: usize,
    mu: &NumberPartition,
    list: ConstituentList,
    options: &ObstructionOptions,
) -> Result<ObstructionReport> {
    options.validate()?;
    let divisibility_ok = divisibility_precondition(n, mu)?;
    if let Some(&p) = options.primes.iter().find(|&&p| p as usize <= n) {
        return Err(Error::InvalidInput(format!(
            "seminormal matrices of S_{n} need primes above {n}, got {p}"
        )));
    }
    let computed = constituents_dominating(mu);
    let partitions = match list {
        ConstituentList::Computed => computed.clone(),
        ConstituentList::Literature => {
            if mu.parts() != [4, 4, 4, 3] {
                return Err(Error::InvalidInput(format!(
                    "a published constituent list exists only for (4,4,4,3), not {mu}"
                )));
            }
            literature_s15_list()
        }
    };
    let complete = computed.iter().all(|l| partitions.contains(l));

    let check_one = |lambda: &NumberPartition| -> Result<Vec<MatrixCheck>> {
        let label = format!("T{lambda}");
        let dim = hook_length_dimension(lambda);
        let small = u64::try_from(&dim)
            .ok()
            .filter(|&d| d as usize <= options.dimension_limit);
        let Some(dim) = small else {
            return Ok(vec![MatrixCheck {
                label,
                dim: u64::try_from(&dim).unwrap_or(u64::MAX),
                prime: None,
                verdict: MatrixVerdict::Skipped,
                method: None,
            }]);
        };
        let t = irrep_t_matrix(lambda, options.dimension_limit)?;
        certify(&label, dim, options, |p| ModPMatrix::from_rational(&t, p))
    };
    let per_lambda: Vec<Result<Vec<MatrixCheck>>> = if options.threads > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.threads)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        pool.install(|| partitions.par_iter().map(check_one).collect())
    } else {
        partitions.iter().map(check_one).collect()
    };
    let mut matrices = Vec::new();
    for r in per_lambda {
        matrices.extend(r?);
    }
    matrices.sort_by(|a, b| a.label.cmp(&b.label));
    let (conclusion, reason) = conclude(divisibility_ok, &matrices, complete);
    Ok(ObstructionReport {
        n,
        route: Route::Irreps {
            mu: mu.clone(),
            list,
            partitions,
        },
        divisibility_ok,
        matrices,
        conclusion,
        reason,
    })
}

/// Checks the coset matrix of `(p-1, p-1, 2)` in `S_{2p}` for a prime
/// `p >= 3`, the family for which no 1-perfect code is expected.
pub fn conjecture_check(p: usize, options: &ObstructionOptions, limits: &Limits) -> Result<ObstructionReport> {
    if p < 3 || !is_prime(p as u64) {
        return Err(Error::InvalidInput(format!("{p} is not a prime >= 3")));
    }
    let shape = NumberPartition::new(vec![p - 1, p - 1, 2])?;
    let dim = tabloid_count(&shape);
    if dim > BigUint::from(limits.sparse_dimension) {
        return Err(Error::limit("tabloid count", dim, limits.sparse_dimension));
    }
    obstruction_coset(2 * p, &shape, options, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::next_prime;

    fn part(s: &str) -> NumberPartition {
        s.parse().unwrap()
    }

    #[test]
    fn default_primes_are_the_first_above_a_million() {
        let p0 = next_prime(1_000_000);
        let p1 = next_prime(p0);
        let p2 = next_prime(p1);
        assert_eq!(DEFAULT_PRIMES, [p0, p1, p2]);
    }

    #[test]
    fn divisibility() {
        assert!(divisibility_precondition(14, &part("6,6,2")).unwrap());
        assert!(!divisibility_precondition(6, &part("5,1")).unwrap());
        assert!(divisibility_precondition(5, &part("4,1")).unwrap());
        assert!(divisibility_precondition(5, &part("3,1")).is_err());
    }

    #[test]
    fn counting_condition() {
        let l = Limits::default();
        assert!(perfect_counting_condition(4, 1, &l).unwrap());
        assert!(perfect_counting_condition(5, 1, &l).unwrap());
        assert!(!perfect_counting_condition(4, 2, &l).unwrap());
        for n in 1..=20 {
            assert!(perfect_counting_condition(n, 1, &l).unwrap());
        }
    }

    #[test]
    fn small_coset_reports() {
        let o = ObstructionOptions::default();
        let l = Limits::default();
        let r = obstruction_coset(5, &part("4,1"), &o, &l).unwrap();
        assert_eq!(r.conclusion, Conclusion::NoOnePerfectCode);
        assert_eq!(r.matrices.len(), 1);
        let r = obstruction_coset(6, &part("5,1"), &o, &l).unwrap();
        assert!(!r.divisibility_ok);
        assert_eq!(r.conclusion, Conclusion::Inconclusive);
    }

    #[test]
    fn singular_everywhere_is_inconclusive() {
        // det of the (2,2,2) coset matrix is zero over the rationals.
        let o = ObstructionOptions::default();
        let r = conjecture_check(3, &o, &Limits::default()).unwrap();
        assert_eq!(r.matrices.len(), 3);
        assert!(r.matrices.iter().all(|m| m.verdict == MatrixVerdict::SingularModP));
        assert_eq!(r.conclusion, Conclusion::Inconclusive);
        assert!(conjecture_check(4, &o, &Limits::default()).is_err());
    }

    #[test]
    fn irreps_of_s3() {
        let o = ObstructionOptions::default();
        let r = obstruction_irreps(3, &part("2,1"), ConstituentList::Computed, &o).unwrap();
        let labels: Vec<&str> = r.matrices.iter().map(|m| m.label.as_str()).collect();
        // 1 + s1 + s2 has eigenvalues 2 and 0 on the standard representation,
        // as it must: S_3 has a 1-perfect code.
        assert_eq!(labels, ["T(2,1)", "T(2,1)", "T(2,1)", "T(3)"]);
        assert!(r.matrices[..3].iter().all(|m| m.verdict == MatrixVerdict::SingularModP));
        assert_eq!(r.matrices[3].verdict, MatrixVerdict::Invertible);
        assert_eq!(r.conclusion, Conclusion::Inconclusive);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["route"]["kind"], "irreps");
        assert_eq!(json["route"]["partitions"][0], "(3)");
        assert!(json.get("divisibilityOk").is_some());
    }

    #[test]
    fn small_primes_rejected_for_seminormal_matrices() {
        let o = ObstructionOptions {
            primes: vec![5],
            ..Default::default()
        };
        assert!(obstruction_irreps(5, &part("3,2"), ConstituentList::Computed, &o).is_err());
    }

    #[test]
    fn skipped_constituents_are_reported() {
        let o = ObstructionOptions {
            dimension_limit: 4,
            ..Default::default()
        };
        let r = obstruction_irreps(5, &part("3,1,1"), ConstituentList::Computed, &o).unwrap();
        assert!(r
            .matrices
            .iter()
            .any(|m| m.verdict == MatrixVerdict::Skipped && m.label == "T(3,1,1)"));
        assert_eq!(r.conclusion, Conclusion::Inconclusive);
    }
}
