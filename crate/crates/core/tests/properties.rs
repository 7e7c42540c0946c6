use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use permcode::ilp::{build_coset_ilp, lp_string, parse_lp};
use permcode::perfect::{
    check_nonsingular, wiedemann_nonsingular, EliminationBudget, ModPMatrix, Verdict, DEFAULT_PRIMES,
};
use permcode::perm::{kendall_distance, kendall_distance_bfs, Permutation};
use permcode::young::{
    act, build_action_matrix, tridiagonal_reference, ActionMatrix, NumberPartition, TabloidIndexer, YoungTabloid,
};
use permcode::Limits;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    any::<u64>().prop_map(move |seed| Permutation::random(n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn perms(max_n: usize, count: usize) -> impl Strategy<Value = Vec<Permutation>> {
    (1..=max_n).prop_flat_map(move |n| prop::collection::vec(perm(n), count))
}

fn shape(max_n: usize) -> impl Strategy<Value = NumberPartition> {
    (2..=max_n).prop_flat_map(|n| {
        let all = NumberPartition::all(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

/// Exact determinant by fraction-free elimination.
fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn exact_det(m: &ActionMatrix) -> BigInt {
    bareiss(
        m.to_dense()
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect(),
    )
}

fn sparse_only() -> EliminationBudget {
    EliminationBudget {
        dense_limit: 0,
        ..Default::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn distance_is_a_metric(ps in perms(7, 3)) {
        let d = |a: &Permutation, b: &Permutation| kendall_distance(a, b).unwrap();
        let (g, h, k) = (&ps[0], &ps[1], &ps[2]);
        prop_assert_eq!(d(g, h), d(h, g));
        prop_assert_eq!(d(g, g), 0);
        prop_assert!(d(g, h) <= d(g, k) + d(k, h));
        prop_assert_eq!(d(&g.compose(k).unwrap(), &h.compose(k).unwrap()), d(g, h));
    }

    #[test]
    fn distance_matches_bfs(ps in perms(5, 2)) {
        prop_assert_eq!(kendall_distance(&ps[0], &ps[1]).unwrap(), kendall_distance_bfs(&ps[0], &ps[1]).unwrap());
    }

    #[test]
    fn composition_laws(ps in perms(8, 3)) {
        let (a, b, c) = (&ps[0], &ps[1], &ps[2]);
        let left = a.compose(b).unwrap().compose(c).unwrap();
        let right = a.compose(&b.compose(c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert_eq!(Permutation::unrank(a.len(), a.rank()), a.clone());
    }

    #[test]
    fn tabloid_action_is_a_right_action(s in shape(7), seed in any::<u64>()) {
        let n = s.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h) = (Permutation::random(n, &mut rng), Permutation::random(n, &mut rng));
        let t = YoungTabloid::reference(&s);
        let lhs = act(&act(&t, &g).unwrap(), &h).unwrap();
        prop_assert_eq!(lhs, act(&t, &g.compose(&h).unwrap()).unwrap());
        prop_assert_eq!(act(&t, &Permutation::identity(n)).unwrap(), t.clone());
        let idx = TabloidIndexer::new(&s, 100_000).unwrap();
        let u = act(&t, &g).unwrap();
        prop_assert_eq!(idx.unrank(idx.rank(&u)), u);
    }

    #[test]
    fn action_matrices_are_symmetric_with_row_sum_n(s in shape(7)) {
        let m = build_action_matrix(s.n(), &s, &Limits::default()).unwrap();
        prop_assert!(m.is_symmetric());
        prop_assert!(m.row_sums().iter().all(|&r| r == s.n() as u64));
        prop_assert!(m.check_invariants().is_ok());
    }

    #[test]
    fn lp_files_round_trip(s in shape(6)) {
        let model = build_coset_ilp(s.n(), &s, &Limits::default()).unwrap();
        let parsed = parse_lp(&lp_string(&model)).unwrap().to_model().unwrap();
        prop_assert_eq!(parsed.matrix(), model.matrix());
        prop_assert_eq!(parsed.rhs(), model.rhs());
    }

    #[test]
    fn elimination_methods_agree(
        n in 1usize..30,
        density in 0.05f64..0.6,
        p in prop::sample::select(vec![2u64, 3, 5, 101, 1_000_003]),
        seed in any::<u64>(),
    ) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows = Vec::new();
        for _ in 0..n {
            let mut row = Vec::new();
            for j in 0..n {
                if rng.gen_bool(density) {
                    row.push((j, rng.gen_range(0..p)));
                }
            }
            rows.push(row);
        }
        let m = ModPMatrix::from_rows(p, rows).unwrap();
        let dense = check_nonsingular(&m, &EliminationBudget::default()).verdict;
        prop_assert_eq!(check_nonsingular(&m, &sparse_only()).verdict, dense);
        // The black box may miss a certificate but must never invent one.
        if wiedemann_nonsingular(&m, seed) {
            prop_assert_eq!(dense, Verdict::Invertible);
        }
    }
}

#[test]
fn tridiagonal_verdicts_match_exact_determinants() {
    for n in 2..=12 {
        let t = tridiagonal_reference(n).unwrap();
        let det = exact_det(&t);
        for p in [2u64, 3, 5, 7, 11, 13, 101, 1_000_003] {
            let expect = if (&det % BigInt::from(p)).is_zero() {
                Verdict::SingularModP
            } else {
                Verdict::Invertible
            };
            let m = ModPMatrix::from_action(&t, p).unwrap();
            assert_eq!(
                check_nonsingular(&m, &EliminationBudget::default()).verdict,
                expect,
                "n={n} p={p}"
            );
            assert_eq!(check_nonsingular(&m, &sparse_only()).verdict, expect, "n={n} p={p}");
            if p > 1000 {
                assert_eq!(
                    wiedemann_nonsingular(&m, 1),
                    expect == Verdict::Invertible,
                    "n={n} p={p}"
                );
            }
        }
    }
    assert_eq!(exact_det(&tridiagonal_reference(5).unwrap()), BigInt::from(275));
}

#[test]
fn coset_determinants() {
    let limits = Limits::default();
    let det = |s: &str| {
        let s: NumberPartition = s.parse().unwrap();
        exact_det(&build_action_matrix(s.n(), &s, &limits).unwrap())
    };
    assert_eq!(det("3,2"), BigInt::from(-3300));
    assert_eq!(det("4,2"), BigInt::from(-4_043_520));
    assert_eq!(det("5,1,1"), "-82860374207970388575".parse::<BigInt>().unwrap());
    assert!(det("2,2,2").is_zero());
    for s in ["3,2", "4,2", "5,1,1", "6,1", "3,3"] {
        let d = det(s);
        let s: NumberPartition = s.parse().unwrap();
        let m = build_action_matrix(s.n(), &s, &limits).unwrap();
        for p in DEFAULT_PRIMES {
            let expect = !(&d % BigInt::from(p)).is_zero();
            let mp = ModPMatrix::from_action(&m, p).unwrap();
            for budget in [EliminationBudget::default(), sparse_only()] {
                assert_eq!(
                    check_nonsingular(&mp, &budget).verdict == Verdict::Invertible,
                    expect,
                    "{s} p={p}"
                );
            }
            assert_eq!(wiedemann_nonsingular(&mp, 1), expect, "{s} p={p}");
        }
    }
}
