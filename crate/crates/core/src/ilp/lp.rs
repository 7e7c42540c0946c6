//! Bounded-variable dual simplex on a dense tableau.
//!
//! The problem is `max c·x` subject to `A x + s = b`, `l <= x <= u`,
//! `s >= 0`. Every structural variable is boxed, so a slack basis with each
//! structural variable parked at the bound favoured by its cost is dual
//! feasible and no phase one is needed.

use super::scalar::LpScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum VarState {
    Basic,
    AtLower,
    AtUpper,
}

/// Outcome of a dual simplex run.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum LpOutcome<T> {
    Optimal,
    /// Primal infeasible; carries nonnegative row multipliers `y` with
    /// `y·b < min over the box of (yᵀA)·x`.
    Infeasible(Vec<T>),
    IterationLimit,
}

/// A dense bounded LP together with its current basis and tableau.
#[derive(Clone, Debug)]
pub(crate) struct BoundedLp<T> {
    m: usize,
    n: usize,
    a: Vec<Vec<T>>,
    b: Vec<T>,
    c: Vec<T>,
    lower: Vec<T>,
    upper: Vec<T>,
    /// `B⁻¹ [A | I | b]`, one row per constraint.
    tab: Vec<Vec<T>>,
    basis: Vec<usize>,
    state: Vec<VarState>,
    beta: Vec<T>,
    d: Vec<T>,
    pub(crate) iterations: u64,
}

impl<T: LpScalar> BoundedLp<T> {
    /// Builds the LP and installs the slack basis.
    pub(crate) fn new(a: Vec<Vec<T>>, b: Vec<T>, c: Vec<T>, lower: Vec<T>, upper: Vec<T>) -> Self {
        let m = a.len();
        let n = c.len();
        debug_assert!(a.iter().all(|r| r.len() == n));
        let mut lp = BoundedLp {
            m,
            n,
            a,
            b,
            c,
            lower,
            upper,
            tab: Vec::new(),
            basis: Vec::new(),
            state: Vec::new(),
            beta: Vec::new(),
            d: Vec::new(),
            iterations: 0,
        };
        lp.install_basis(&[], &[]);
        lp
    }

    pub(crate) fn rows(&self) -> usize {
        self.m
    }

    pub(crate) fn cols(&self) -> usize {
        self.n
    }

    pub(crate) fn set_rhs(&mut self, row: usize, value: T) {
        self.b[row] = value;
    }

    pub(crate) fn set_bounds(&mut self, lower: &[T], upper: &[T]) {
        self.lower.clone_from_slice(lower);
        self.upper.clone_from_slice(upper);
    }

    /// Changes the box of structural variable `j`, keeping the basis.
    pub(crate) fn change_bound(&mut self, j: usize, lower: T, upper: T) {
        let basic = self.state[j] == VarState::Basic;
        let old = if basic { T::zero() } else { self.nonbasic_value(j) };
        self.lower[j] = lower;
        self.upper[j] = upper;
        if basic {
            return;
        }
        let delta = self.nonbasic_value(j).sub(&old);
        if delta.is_negligible() {
            return;
        }
        for (row, beta) in self.tab.iter().zip(self.beta.iter_mut()) {
            if !row[j].is_negligible() {
                beta.sub_mul_assign(&row[j], &delta);
            }
        }
    }

    /// Indices of the basic variables (slack `k` has index `n + k`).
    pub(crate) fn basic_set(&self) -> Vec<usize> {
        let mut v = self.basis.clone();
        v.sort_unstable();
        v
    }

    /// Structural variables currently nonbasic at their upper bound.
    pub(crate) fn at_upper_set(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| self.state[j] == VarState::AtUpper).collect()
    }

    fn width(&self) -> usize {
        self.n + self.m + 1
    }

    fn cost(&self, j: usize) -> T {
        if j < self.n {
            self.c[j].clone()
        } else {
            T::zero()
        }
    }

    fn nonbasic_value(&self, j: usize) -> T {
        match self.state[j] {
            VarState::AtUpper => self.upper[j].clone(),
            VarState::AtLower if j < self.n => self.lower[j].clone(),
            _ => T::zero(),
        }
    }

    fn var_bounds(&self, j: usize) -> (T, Option<T>) {
        if j < self.n {
            (self.lower[j].clone(), Some(self.upper[j].clone()))
        } else {
            (T::zero(), None)
        }
    }

    /// Refactorizes from scratch with the given basic set as a hint. Basic
    /// candidates that would make the basis singular are dropped; any
    /// remaining rows keep their slack. Nonbasic variables are then placed
    /// at the bound that keeps the reduced costs dual feasible. Returns
    /// `false` when a nonbasic slack ends up dual infeasible, in which case
    /// the slack basis is installed instead.
    pub(crate) fn install_basis(&mut self, hint: &[usize], at_upper: &[usize]) -> bool {
        let (m, n, w) = (self.m, self.n, self.width());
        self.tab = (0..m)
            .map(|i| {
                let mut row = Vec::with_capacity(w);
                row.extend(self.a[i].iter().cloned());
                row.extend((0..m).map(|k| if k == i { T::one() } else { T::zero() }));
                row.push(self.b[i].clone());
                row
            })
            .collect();
        self.basis = (0..m).map(|i| n + i).collect();
        self.state = vec![VarState::AtLower; n + m];
        for i in 0..m {
            self.state[n + i] = VarState::Basic;
        }
        let wanted: Vec<bool> = {
            let mut v = vec![false; n + m];
            for &j in hint {
                if j < n + m {
                    v[j] = true;
                }
            }
            v
        };
        for &q in hint.iter().filter(|&&q| q < n) {
            let mut best: Option<(usize, T)> = None;
            for r in 0..m {
                let p = self.basis[r];
                if p < n || wanted[p] {
                    continue;
                }
                let mag = self.tab[r][q].abs();
                if mag.is_negligible() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, bm)| mag > *bm) {
                    best = Some((r, mag));
                }
            }
            if let Some((r, _)) = best {
                self.pivot_tableau(r, q);
                let p = self.basis[r];
                self.state[p] = VarState::AtLower;
                self.basis[r] = q;
                self.state[q] = VarState::Basic;
            }
        }
        self.recompute_duals();
        let mut ok = true;
        for j in 0..n + m {
            if self.state[j] == VarState::Basic {
                continue;
            }
            if j < n {
                let up = if self.d[j].is_pos() {
                    true
                } else if self.d[j].is_neg() {
                    false
                } else {
                    at_upper.binary_search(&j).is_ok()
                };
                self.state[j] = if up { VarState::AtUpper } else { VarState::AtLower };
            } else if self.d[j].is_pos() {
                ok = false;
            }
        }
        if !ok {
            if hint.is_empty() {
                unreachable!("slack basis is always dual feasible with boxed columns");
            }
            self.install_basis(&[], &[]);
            return false;
        }
        self.recompute_primal();
        true
    }

    fn recompute_duals(&mut self) {
        let (m, n) = (self.m, self.n);
        let mut d: Vec<T> = (0..n + m).map(|j| self.cost(j)).collect();
        for r in 0..m {
            let cb = self.cost(self.basis[r]);
            if cb.is_negligible() {
                continue;
            }
            let row = &self.tab[r];
            for (j, dj) in d.iter_mut().enumerate() {
                dj.sub_mul_assign(&cb, &row[j]);
            }
        }
        self.d = d;
    }

    /// Recomputes basic values from `B⁻¹ b` and the nonbasic values.
    pub(crate) fn recompute_primal(&mut self) {
        let (m, n) = (self.m, self.n);
        let nb: Vec<(usize, T)> = (0..n + m)
            .filter(|&j| self.state[j] != VarState::Basic)
            .map(|j| (j, self.nonbasic_value(j)))
            .filter(|(_, v)| !v.is_negligible())
            .collect();
        self.beta = (0..m)
            .map(|r| {
                let row = &self.tab[r];
                let mut v = row[n + m].clone();
                for (j, x) in &nb {
                    v.sub_mul_assign(&row[*j], x);
                }
                v
            })
            .collect();
    }

    /// Row operation part of a pivot on `(r, q)`.
    fn pivot_tableau(&mut self, r: usize, q: usize) {
        let piv = self.tab[r][q].clone();
        let inv = T::one().div(&piv);
        for v in self.tab[r].iter_mut() {
            *v = v.mul(&inv);
        }
        let pivot_row = std::mem::take(&mut self.tab[r]);
        for (i, row) in self.tab.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[q].clone();
            if f.is_negligible() {
                if !T::EXACT {
                    row[q] = T::zero();
                }
                continue;
            }
            for (x, p) in row.iter_mut().zip(pivot_row.iter()) {
                x.sub_mul_assign(&f, p);
            }
            row[q] = T::zero();
        }
        self.tab[r] = pivot_row;
    }

    /// Runs the dual simplex until optimality, infeasibility or the cap.
    pub(crate) fn solve(&mut self, max_iterations: u64) -> LpOutcome<T> {
        let (m, n) = (self.m, self.n);
        let bland_after = 50 * (n + m) as u64;
        let mut local = 0u64;
        loop {
            let bland = local >= bland_after;
            // Leaving row.
            let mut leave: Option<(usize, bool, T)> = None;
            for r in 0..m {
                let p = self.basis[r];
                let (lo, up) = self.var_bounds(p);
                let v = &self.beta[r];
                let (viol, below) = if *v < lo.sub(&T::feas_tol(&lo)) {
                    (lo.sub(v), true)
                } else if let Some(u) = up.as_ref().filter(|u| *v > u.add(&T::feas_tol(u))) {
                    (v.sub(u), false)
                } else {
                    continue;
                };
                if bland {
                    leave = Some((r, below, viol));
                    break;
                }
                if leave.as_ref().is_none_or(|(_, _, bv)| viol > *bv) {
                    leave = Some((r, below, viol));
                }
            }
            let Some((r, below, _)) = leave else {
                return LpOutcome::Optimal;
            };
            if local >= max_iterations {
                return LpOutcome::IterationLimit;
            }
            local += 1;
            self.iterations += 1;
            // Entering column.
            let row = &self.tab[r];
            let mut enter: Option<(usize, T, T)> = None;
            for j in 0..n + m {
                let st = self.state[j];
                if st == VarState::Basic {
                    continue;
                }
                let t = &row[j];
                let ok = match (below, st) {
                    (true, VarState::AtLower) | (false, VarState::AtUpper) => t.is_neg(),
                    (true, VarState::AtUpper) | (false, VarState::AtLower) => t.is_pos(),
                    _ => false,
                };
                if !ok {
                    continue;
                }
                let mut dj = self.d[j].abs();
                if !T::EXACT && !dj.is_pos() {
                    dj = T::zero();
                }
                let ratio = dj.div(&t.abs());
                let better = match &enter {
                    None => true,
                    Some((_, br, bt)) => {
                        if bland || T::EXACT {
                            ratio < *br
                        } else {
                            let tol = 1e-12 * f64::max(1.0, br.to_f64().abs());
                            let diff = ratio.to_f64() - br.to_f64();
                            diff < -tol || (diff.abs() <= tol && t.abs() > *bt)
                        }
                    }
                };
                if better {
                    enter = Some((j, ratio, t.abs()));
                }
            }
            let Some((q, _, _)) = enter else {
                let sign = if below { T::one() } else { T::one().neg() };
                let y: Vec<T> = (0..m)
                    .map(|k| {
                        let v = self.tab[r][n + k].mul(&sign);
                        if v.is_neg() || v.is_negligible() {
                            T::zero()
                        } else {
                            v
                        }
                    })
                    .collect();
                return LpOutcome::Infeasible(y);
            };
            self.pivot(r, q, below);
        }
    }

    /// Full dual simplex pivot: `basis[r]` leaves to the violated bound and
    /// `q` enters.
    fn pivot(&mut self, r: usize, q: usize, below: bool) {
        let (m, n) = (self.m, self.n);
        let p = self.basis[r];
        let (lo, up) = self.var_bounds(p);
        let target = if below { lo } else { up.expect("upper bound violated") };
        let t_rq = self.tab[r][q].clone();
        let delta = self.beta[r].sub(&target).div(&t_rq);
        let xq = self.nonbasic_value(q);
        for i in 0..m {
            if i == r {
                continue;
            }
            let t = self.tab[i][q].clone();
            if !t.is_negligible() {
                self.beta[i].sub_mul_assign(&t, &delta);
            }
        }
        self.beta[r] = xq.add(&delta);
        let dq = self.d[q].clone();
        self.pivot_tableau(r, q);
        if !dq.is_negligible() || T::EXACT {
            let row = &self.tab[r];
            for (dj, t) in self.d.iter_mut().zip(row.iter()).take(n + m) {
                dj.sub_mul_assign(&dq, t);
            }
        }
        self.d[q] = T::zero();
        self.basis[r] = q;
        self.state[q] = VarState::Basic;
        self.state[p] = if below { VarState::AtLower } else { VarState::AtUpper };
    }

    /// Structural values of the current basic solution.
    pub(crate) fn primal(&self) -> Vec<T> {
        let mut x: Vec<T> = (0..self.n).map(|j| self.nonbasic_value(j)).collect();
        for (r, &p) in self.basis.iter().enumerate() {
            if p < self.n {
                x[p] = self.beta[r].clone();
            }
        }
        x
    }

    /// Row duals `y = c_B B⁻¹`, clamped at zero.
    pub(crate) fn duals(&self) -> Vec<T> {
        (0..self.m)
            .map(|k| {
                let v = self.d[self.n + k].neg();
                if v.is_pos() || (T::EXACT && !v.is_neg()) {
                    v
                } else {
                    T::zero()
                }
            })
            .collect()
    }

    pub(crate) fn objective(&self) -> T {
        let x = self.primal();
        x.iter()
            .zip(self.c.iter())
            .fold(T::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
    }

    /// Tableau row of basic variable `r` together with its basic value.
    pub(crate) fn tableau_row(&self, r: usize) -> (&[T], usize, &T) {
        (&self.tab[r][..self.n + self.m], self.basis[r], &self.beta[r])
    }

    pub(crate) fn var_state(&self, j: usize) -> VarState {
        self.state[j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn small_exact_lp() {
        // max x + y, x + 2y <= 4, 3x + y <= 6, 0 <= x,y <= 10
        let a = vec![vec![q(1), q(2)], vec![q(3), q(1)]];
        let mut lp = BoundedLp::new(
            a,
            vec![q(4), q(6)],
            vec![q(1), q(1)],
            vec![q(0), q(0)],
            vec![q(10), q(10)],
        );
        assert_eq!(lp.solve(1000), LpOutcome::Optimal);
        assert_eq!(
            lp.primal(),
            vec![
                BigRational::new(8.into(), 5.into()),
                BigRational::new(6.into(), 5.into())
            ]
        );
        assert_eq!(lp.objective(), BigRational::new(14.into(), 5.into()));
        assert_eq!(
            lp.duals(),
            vec![
                BigRational::new(2.into(), 5.into()),
                BigRational::new(1.into(), 5.into())
            ]
        );
    }

    #[test]
    fn detects_infeasibility() {
        // x + y <= 1 with x >= 2
        let a = vec![vec![1.0, 1.0]];
        let mut lp = BoundedLp::new(a, vec![1.0], vec![1.0, 1.0], vec![2.0, 0.0], vec![5.0, 5.0]);
        match lp.solve(100) {
            LpOutcome::Infeasible(y) => assert!(y[0] > 0.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn warm_start_after_bound_change() {
        let a = vec![vec![1.0, 2.0], vec![3.0, 1.0]];
        let mut lp = BoundedLp::new(a, vec![4.0, 6.0], vec![1.0, 1.0], vec![0.0, 0.0], vec![10.0, 10.0]);
        assert_eq!(lp.solve(100), LpOutcome::Optimal);
        let hint = lp.basic_set();
        let up = lp.at_upper_set();
        lp.set_bounds(&[0.0, 0.0], &[1.0, 10.0]);
        lp.install_basis(&hint, &up);
        assert_eq!(lp.solve(100), LpOutcome::Optimal);
        let x = lp.primal();
        assert!((x[0] - 1.0).abs() < 1e-9 && (x[1] - 1.5).abs() < 1e-9);
    }
}
