//! Aggregated upper bounds on the size of Kendall codes with minimum
//! distance three.

use num_bigint::BigInt;
use serde::Serialize;

use super::bnb::{ilp_solve, SolveConfig, SolveStatus};
use super::model::build_coset_ilp;
use super::prime::analytic_prime_bound;
use crate::arith::is_prime;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::young::NumberPartition;

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

/// Kind of a literature bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Lower,
    Upper,
}

/// Closed-form literature values, kept exactly as published.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Formula {
    /// `a!·c + d`
    Factorial {
        a: u64,
        times: u64,
        plus: i64,
    },
    /// `a!/q`
    FactorialOver {
        a: u64,
        q: u64,
    },
    Constant(u64),
    /// `(n-1)! + d` for prime `n >= 19`.
    PrimeShifted(i64),
    /// `(n-1)! - ⌈n/3⌉ + 2` for prime `n >= 19`.
    PrimeThird,
    /// `2·(n-2)!` for prime `n >= 19`.
    PrimeDoubleShifted,
}

/// One published bound on `P(n,3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiteratureBound {
    /// `None` stands for every prime `n >= 19`.
    pub n: Option<u64>,
    pub kind: BoundKind,
    /// The bound as printed.
    pub expression: &'static str,
    /// Where the bound comes from.
    pub source: &'static str,
    formula: Formula,
}

impl LiteratureBound {
    /// Value at `n`; `None` when the row does not apply.
    pub fn value(&self, n: u64) -> Option<BigInt> {
        match self.n {
            Some(m) if m != n => return None,
            None if n < 19 || !is_prime(n) => return None,
            _ => {}
        }
        Some(match self.formula {
            Formula::Factorial { a, times, plus } => factorial(a) * times + plus,
            Formula::FactorialOver { a, q } => factorial(a) / q,
            Formula::Constant(c) => BigInt::from(c),
            Formula::PrimeShifted(d) => factorial(n - 1) + d,
            Formula::PrimeThird => factorial(n - 1) - BigInt::from(n.div_ceil(3)) + 2,
            Formula::PrimeDoubleShifted => factorial(n - 2) * 2,
        })
    }
}

const PRIOR: &str = "prior upper bound (non-existence of perfect codes)";
const CURRENT: &str = "coset integer programs, analytic prime bound, invertibility certificates";

macro_rules! lit {
    ($n:expr, $kind:ident, $expr:literal, $src:expr, $f:expr) => {
        LiteratureBound {
            n: $n,
            kind: BoundKind::$kind,
            expression: $expr,
            source: $src,
            formula: $f,
        }
    };
}

/// Published lower and upper bounds on `P(n,3)` for
/// `n ∈ {6, 7, 11, 13, 14, 15, 17}` and prime `n >= 19`.
pub fn literature_table() -> Vec<LiteratureBound> {
    use Formula::*;
    vec![
        lit!(Some(6), Lower, "102", "explicit construction", Constant(102)),
        lit!(
            Some(6),
            Upper,
            "5!-1",
            PRIOR,
            Factorial {
                a: 5,
                times: 1,
                plus: -1
            }
        ),
        lit!(
            Some(6),
            Upper,
            "5!-4",
            CURRENT,
            Factorial {
                a: 5,
                times: 1,
                plus: -4
            }
        ),
        lit!(Some(7), Lower, "588", "explicit construction", Constant(588)),
        lit!(
            Some(7),
            Upper,
            "6!-1",
            PRIOR,
            Factorial {
                a: 6,
                times: 1,
                plus: -1
            }
        ),
        lit!(
            Some(7),
            Upper,
            "6!-4",
            CURRENT,
            Factorial {
                a: 6,
                times: 1,
                plus: -4
            }
        ),
        lit!(
            Some(11),
            Lower,
            "11!/20",
            "explicit construction",
            FactorialOver { a: 11, q: 20 }
        ),
        lit!(
            Some(11),
            Upper,
            "10!-1",
            PRIOR,
            Factorial {
                a: 10,
                times: 1,
                plus: -1
            }
        ),
        lit!(
            Some(11),
            Upper,
            "10!-10",
            CURRENT,
            Factorial {
                a: 10,
                times: 1,
                plus: -10
            }
        ),
        lit!(
            Some(13),
            Lower,
            "13!/24",
            "explicit construction",
            FactorialOver { a: 13, q: 24 }
        ),
        lit!(
            Some(13),
            Upper,
            "12!-1",
            PRIOR,
            Factorial {
                a: 12,
                times: 1,
                plus: -1
            }
        ),
        lit!(
            Some(13),
            Upper,
            "12!-12",
            CURRENT,
            Factorial {
                a: 12,
                times: 1,
                plus: -12
            }
        ),
        lit!(
            Some(14),
            Lower,
            "2x12!",
            "explicit construction",
            Factorial {
                a: 12,
                times: 2,
                plus: 0
            }
        ),
        lit!(
            Some(14),
            Upper,
            "13!",
            "sphere packing",
            Factorial {
                a: 13,
                times: 1,
                plus: 0
            }
        ),
        lit!(
            Some(14),
            Upper,
            "13!-1",
            CURRENT,
            Factorial {
                a: 13,
                times: 1,
                plus: -1
            }
        ),
        lit!(
            Some(15),
            Lower,
            "15!/28",
            "explicit construction",
            FactorialOver { a: 15, q: 28 }
        ),
        lit!(
            Some(15),
            Upper,
            "14!",
            "sphere packing",
            Factorial {
                a: 14,
                times: 1,
                plus: 0
            }
        ),
        lit!(
            Some(15),
            Upper,
            "14!-1",
            CURRENT,
            Factorial {
                a: 14,
                times: 1,
                plus: -1
            }
        ),
        lit!(
            Some(17),
            Lower,
            "2x15!",
            "explicit construction",
            Factorial {
                a: 15,
                times: 2,
                plus: 0
            }
        ),
        lit!(
            Some(17),
            Upper,
            "16!-1",
            PRIOR,
            Factorial {
                a: 16,
                times: 1,
                plus: -1
            }
        ),
        lit!(
            Some(17),
            Upper,
            "16!-5",
            CURRENT,
            Factorial {
                a: 16,
                times: 1,
                plus: -5
            }
        ),
        lit!(None, Lower, "2x(n-2)!", "explicit construction", PrimeDoubleShifted),
        lit!(None, Upper, "(n-1)!-1", PRIOR, PrimeShifted(-1)),
        lit!(None, Upper, "(n-1)!-ceil(n/3)+2", CURRENT, PrimeThird),
    ]
}

/// How a report entry was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMethod {
    SpherePacking,
    AnalyticPrime,
    Ilp,
    Literature,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub method: BoundMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
    #[serde(serialize_with = "as_decimal")]
    pub value: BigInt,
    pub provenance: String,
    /// Set on every entry attaining the smallest upper bound.
    pub minimum: bool,
}

fn as_decimal<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Upper bounds on `P(n,3)` from every available method.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: u64,
    pub d: u64,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn minimum(&self) -> &BigInt {
        self.entries
            .iter()
            .map(|e| &e.value)
            .min()
            .expect("sphere packing entry is always present")
    }
}

/// Collects the sphere-packing bound `(n-1)!`, the analytic prime bound
/// when `n` is a prime `>= 11`, the coset ILP bound of each requested
/// shape, and the literature upper bounds for `n`.
///
/// An ILP entry is the proven optimum, or the floor of the certified dual
/// bound when the solver stops early.
pub fn bound_report(n: u64, shapes: &[NumberPartition], config: &SolveConfig, limits: &Limits) -> Result<BoundReport> {
    if n < 3 {
        return Err(Error::InvalidInput("bound report needs n >= 3".into()));
    }
    let mut entries = vec![BoundEntry {
        method: BoundMethod::SpherePacking,
        shape: None,
        value: factorial(n - 1),
        provenance: "computed: (n-1)! from disjoint radius-one balls of size n".into(),
        minimum: false,
    }];
    if n >= 11 && is_prime(n) {
        entries.push(BoundEntry {
            method: BoundMethod::AnalyticPrime,
            shape: None,
            value: analytic_prime_bound(n)?,
            provenance: "computed: (p-1)! - ceil(p/3) + 2".into(),
            minimum: false,
        });
    }
    for shape in shapes {
        if shape.n() as u64 != n {
            return Err(Error::InvalidPartition(format!("{shape} is not a partition of {n}")));
        }
        let model = build_coset_ilp(n as usize, shape, limits)?;
        let result = ilp_solve(&model, config)?;
        let (value, provenance) = match result.status {
            SolveStatus::ProvenOptimal => (
                result.optimum.clone(),
                format!("computed: proven ILP optimum ({} nodes)", result.nodes_explored),
            ),
            SolveStatus::IncumbentOnly => (
                result.dual_bound.floor().to_integer(),
                format!(
                    "computed: certified dual bound at limit (incumbent {}, {} nodes)",
                    result.optimum, result.nodes_explored
                ),
            ),
        };
        entries.push(BoundEntry {
            method: BoundMethod::Ilp,
            shape: Some(shape.to_string()),
            value,
            provenance,
            minimum: false,
        });
    }
    for row in literature_table().iter().filter(|r| r.kind == BoundKind::Upper) {
        if let Some(value) = row.value(n) {
            entries.push(BoundEntry {
                method: BoundMethod::Literature,
                shape: None,
                value,
                provenance: format!("literature: {} ({})", row.expression, row.source),
                minimum: false,
            });
        }
    }
    let min = entries.iter().map(|e| e.value.clone()).min().expect("nonempty");
    for e in &mut entries {
        e.minimum = e.value == min;
    }
    Ok(BoundReport { n, d: 3, entries })
}

/// Literature lower bound for `n`, when one is tabulated.
pub fn literature_lower_bound(n: u64) -> Option<(&'static str, BigInt)> {
    literature_table()
        .into_iter()
        .filter(|r| r.kind == BoundKind::Lower)
        .find_map(|r| r.value(n).map(|v| (r.expression, v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literature_values() {
        let upper = |n: u64, e: &str| {
            literature_table()
                .into_iter()
                .find(|r| r.kind == BoundKind::Upper && r.expression == e && r.value(n).is_some())
                .and_then(|r| r.value(n))
                .unwrap()
        };
        assert_eq!(upper(14, "13!-1"), factorial(13) - 1);
        assert_eq!(upper(6, "5!-4"), BigInt::from(116));
        assert_eq!(upper(19, "(n-1)!-ceil(n/3)+2"), factorial(18) - 5);
        assert_eq!(literature_lower_bound(11).unwrap().1, BigInt::from(1_995_840));
        assert!(literature_lower_bound(8).is_none());
        assert!(upper(23, "(n-1)!-1") == factorial(22) - 1);
    }

    #[test]
    fn report_for_five() {
        let r = bound_report(5, &[], &SolveConfig::default(), &Limits::default()).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.entries[0].value, BigInt::from(24));
        assert!(r.entries[0].minimum);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["entries"][0]["method"], "sphere-packing");
        assert_eq!(json["entries"][0]["value"], "24");
        assert!(json["entries"][0].get("shape").is_none());
    }

    #[test]
    fn ilp_entries_never_exceed_sphere_packing() {
        let shapes: Vec<NumberPartition> = vec!["4,1".parse().unwrap(), "3,2".parse().unwrap()];
        let r = bound_report(5, &shapes, &SolveConfig::default(), &Limits::default()).unwrap();
        let sp = &r.entries[0].value;
        for e in r.entries.iter().filter(|e| e.method == BoundMethod::Ilp) {
            assert!(e.value <= *sp);
        }
        assert_eq!(r.minimum(), &BigInt::from(23));
    }
}
