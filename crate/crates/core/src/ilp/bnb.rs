//! Certified branch-and-bound for the coset ILP.
//!
//! Node relaxations are solved by the bounded dual simplex in floating
//! point for speed. Floating-point results only steer the search: every
//! pruning decision is backed by an exact certificate ([`Certificate`]),
//! every incumbent is checked in integer arithmetic, and any node whose
//! floating-point solve cannot be certified is re-solved in exact rational
//! arithmetic.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::certify::{Certificate, IntRows, ScaledDuals};
use super::cuts::root_cuts;
use super::lp::{BoundedLp, LpOutcome};
use super::model::IlpModel;
use super::relax::lp_relax;
use super::scalar::LpScalar;
use crate::error::{Error, Result};

/// Largest right-hand side handled with floating-point node solves.
const FLOAT_RHS_LIMIT: u64 = 1 << 32;
/// Largest right-hand side the solver accepts at all.
const RHS_LIMIT: u64 = 1 << 62;
const INTEGRALITY_TOL: f64 = 1e-9;

/// Solver settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, rename_all = "camelCase")]
pub struct SolveConfig {
    /// Wall-clock budget in seconds; `None` runs to completion.
    pub time_limit: Option<f64>,
    /// Worker threads. Node processing is sequential so that results do
    /// not depend on this value.
    pub threads: usize,
    /// Rounds of Gomory fractional cuts at the root.
    pub cut_rounds: usize,
    /// Optional cap on explored nodes, treated like the time limit.
    pub node_limit: Option<u64>,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            time_limit: None,
            threads: 1,
            cut_rounds: 0,
            node_limit: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    ProvenOptimal,
    IncumbentOnly,
}

/// Result of [`ilp_solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpResult {
    pub optimum: BigInt,
    pub argmax: Vec<BigInt>,
    pub nodes_explored: u64,
    pub status: SolveStatus,
    pub dual_bound: BigRational,
    /// Nodes whose floating-point solve could not be certified and were
    /// re-solved in exact arithmetic.
    pub exact_resolves: u64,
}

impl IlpResult {
    /// JSON view with all numbers as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "optimum": self.optimum.to_string(),
            "argmax": self.argmax.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "nodesExplored": self.nodes_explored,
            "status": self.status,
            "dualBound": self.dual_bound.to_string(),
            "exactResolves": self.exact_resolves,
        })
    }
}

struct Node {
    id: u64,
    /// Certified upper bound inherited from the parent; `None` at the root.
    bound: Option<BigRational>,
    lower: Vec<i64>,
    upper: Vec<i64>,
    hint: Vec<usize>,
    at_upper: Vec<usize>,
    /// Branching that created the node, for pseudocost updates.
    origin: Option<Origin>,
}

#[derive(Clone, Copy, Debug)]
struct Origin {
    var: usize,
    up: bool,
    parent_value: f64,
    frac: f64,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Node {
    /// Larger bound first, then smaller id.
    fn cmp(&self, other: &Self) -> Ordering {
        let by_bound = match (&self.bound, &other.bound) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(a), Some(b)) => a.cmp(b),
        };
        by_bound.then_with(|| other.id.cmp(&self.id))
    }
}

struct Branching {
    bound: BigRational,
    value: f64,
    var: usize,
    split: i64,
    frac: f64,
    lower: Vec<i64>,
    upper: Vec<i64>,
    hint: Vec<usize>,
    at_upper: Vec<usize>,
}

enum NodeOutcome {
    Pruned,
    Branch(Branching),
}

/// Per-variable pseudocosts: average objective loss per unit of change in
/// each direction.
#[derive(Clone, Debug)]
struct Pseudocosts {
    sum: Vec<[f64; 2]>,
    count: Vec<[u32; 2]>,
}

const RELIABLE: u32 = 4;
const STRONG_CANDIDATES: usize = 12;
const STRONG_LOOKAHEAD: usize = 4;
const STRONG_ITERATIONS: u64 = 60;

impl Pseudocosts {
    fn new(n: usize) -> Self {
        Pseudocosts {
            sum: vec![[0.0; 2]; n],
            count: vec![[0; 2]; n],
        }
    }

    fn record(&mut self, var: usize, up: bool, per_unit: f64) {
        let d = up as usize;
        self.sum[var][d] += per_unit.max(0.0);
        self.count[var][d] += 1;
    }

    fn reliable(&self, var: usize) -> bool {
        self.count[var][0] >= RELIABLE && self.count[var][1] >= RELIABLE
    }

    fn mean(&self, var: usize, up: bool) -> f64 {
        let d = up as usize;
        if self.count[var][d] > 0 {
            return self.sum[var][d] / self.count[var][d] as f64;
        }
        let (s, c) = self
            .sum
            .iter()
            .zip(&self.count)
            .fold((0.0, 0u32), |(s, c), (a, b)| (s + a[d], c + b[d]));
        if c > 0 {
            s / c as f64
        } else {
            1.0
        }
    }

    fn score(&self, var: usize, frac: f64) -> f64 {
        score(self.mean(var, false) * frac, self.mean(var, true) * (1.0 - frac))
    }
}

fn score(down: f64, up: f64) -> f64 {
    down.max(1e-6) * up.max(1e-6)
}

struct Solver {
    n: usize,
    /// Model rows, then cuts, then the objective cutoff row.
    rows: IntRows,
    model_rows: Vec<Vec<(usize, i64)>>,
    rhs: i64,
    cutoff: Option<usize>,
    ones: Vec<i64>,
    zeros: Vec<i64>,
    incumbent: Vec<i64>,
    value: i64,
    float_lp: Option<BoundedLp<f64>>,
    exact_lp: Option<BoundedLp<BigRational>>,
    pseudo: Pseudocosts,
    exact_solves: u64,
}

/// Solves the coset ILP to proven optimality or until a limit is hit.
pub fn ilp_solve(model: &IlpModel, config: &SolveConfig) -> Result<IlpResult> {
    let start = Instant::now();
    let deadline = config.time_limit.map(|s| start + Duration::from_secs_f64(s.max(0.0)));
    let rhs = model
        .rhs()
        .to_u64()
        .filter(|&r| r <= RHS_LIMIT)
        .ok_or_else(|| Error::limit("rhs", model.rhs(), RHS_LIMIT))?;
    let n = model.dim();
    let model_rows: Vec<Vec<(usize, i64)>> = (0..n)
        .map(|i| model.matrix().row(i).map(|(j, v)| (j, v as i64)).collect())
        .collect();
    let upper0: Vec<i64> = model
        .variable_bounds()
        .iter()
        .map(|v| v.to_i64().expect("bounded by rhs"))
        .collect();
    let lower0 = vec![0i64; n];
    let mut rows = IntRows::default();
    for r in &model_rows {
        rows.push(
            r.iter().map(|&(j, v)| (j, BigInt::from(v))).collect(),
            BigInt::from(rhs),
        );
    }

    let mut solver = Solver {
        n,
        rows,
        model_rows,
        rhs: rhs as i64,
        cutoff: None,
        ones: vec![1; n],
        zeros: vec![0; n],
        incumbent: vec![0; n],
        value: 0,
        float_lp: None,
        exact_lp: None,
        pseudo: Pseudocosts::new(n),
        exact_solves: 0,
    };

    // Initial incumbent: floor of the LP optimum, then greedy ascent.
    let relax = lp_relax(model);
    let start_point: Vec<i64> = relax
        .point
        .iter()
        .map(|v| v.floor().to_integer().to_i64().expect("bounded"))
        .collect();
    solver.offer(start_point);

    for (row, rhs) in root_cuts(&solver.rows, n, &lower0, &upper0, config.cut_rounds) {
        solver.rows.push(row, rhs);
    }
    // Objective cutoff `-Σx <= -(value + 1)`; its rhs follows the incumbent.
    solver
        .rows
        .push((0..n).map(|j| (j, -BigInt::one())).collect(), BigInt::zero());
    solver.cutoff = Some(solver.rows.len() - 1);
    solver.sync_cutoff();
    if rhs <= FLOAT_RHS_LIMIT {
        solver.float_lp = Some(solver.make_lp::<f64>(&lower0, &upper0));
    }

    let mut heap = BinaryHeap::new();
    heap.push(Node {
        id: 0,
        bound: None,
        lower: lower0,
        upper: upper0,
        hint: Vec::new(),
        at_upper: Vec::new(),
        origin: None,
    });
    let mut next_id = 1u64;
    let mut nodes = 0u64;
    let mut interrupted_bound: Option<BigRational> = None;

    while let Some(node) = heap.pop() {
        if let Some(b) = &node.bound {
            if *b < BigRational::from_integer((solver.value + 1).into()) {
                continue;
            }
        }
        let out_of_time = deadline.is_some_and(|d| Instant::now() >= d);
        let out_of_nodes = config.node_limit.is_some_and(|l| nodes >= l);
        if out_of_time || out_of_nodes {
            interrupted_bound = Some(node.bound.clone().unwrap_or_else(|| relax.value.clone()));
            break;
        }
        nodes += 1;
        if let NodeOutcome::Branch(br) = solver.process(&node) {
            let mut down_upper = br.upper.clone();
            down_upper[br.var] = br.split;
            let mut up_lower = br.lower.clone();
            up_lower[br.var] = br.split + 1;
            let origin = |up| Origin {
                var: br.var,
                up,
                parent_value: br.value,
                frac: br.frac,
            };
            heap.push(Node {
                id: next_id,
                bound: Some(br.bound.clone()),
                lower: br.lower,
                upper: down_upper,
                hint: br.hint.clone(),
                at_upper: br.at_upper.clone(),
                origin: Some(origin(false)),
            });
            heap.push(Node {
                id: next_id + 1,
                bound: Some(br.bound),
                lower: up_lower,
                upper: br.upper,
                hint: br.hint,
                at_upper: br.at_upper,
                origin: Some(origin(true)),
            });
            next_id += 2;
        }
    }

    let optimum = BigInt::from(solver.value);
    let argmax: Vec<BigInt> = solver.incumbent.iter().map(|&v| BigInt::from(v)).collect();
    let (status, dual_bound) = match interrupted_bound {
        None => (SolveStatus::ProvenOptimal, BigRational::from_integer(optimum.clone())),
        Some(b) => {
            let top = heap
                .iter()
                .filter_map(|nd| nd.bound.clone())
                .fold(b, |acc, v| if v > acc { v } else { acc });
            let inc = BigRational::from_integer(optimum.clone());
            (SolveStatus::IncumbentOnly, if top > inc { top } else { inc })
        }
    };
    Ok(IlpResult {
        optimum,
        argmax,
        nodes_explored: nodes,
        status,
        dual_bound,
        exact_resolves: solver.exact_solves,
    })
}

/// Outcome of a floating-point child solve during strong branching.
struct ChildProbe {
    pruned: bool,
    value: f64,
}

impl Solver {
    fn make_lp<T: LpScalar>(&self, lower: &[i64], upper: &[i64]) -> BoundedLp<T> {
        let a: Vec<Vec<T>> = self
            .rows
            .rows
            .iter()
            .map(|r| {
                let mut dense = vec![T::zero(); self.n];
                for (j, v) in r {
                    dense[*j] = T::from_bigint(v);
                }
                dense
            })
            .collect();
        let b = self.rows.rhs.iter().map(T::from_bigint).collect();
        BoundedLp::new(
            a,
            b,
            vec![T::one(); self.n],
            lower.iter().map(|&v| T::from_i64(v)).collect(),
            upper.iter().map(|&v| T::from_i64(v)).collect(),
        )
    }

    fn sync_cutoff(&mut self) {
        let Some(k) = self.cutoff else {
            return;
        };
        let target = -(self.value + 1);
        self.rows.rhs[k] = BigInt::from(target);
        if let Some(lp) = self.float_lp.as_mut() {
            lp.set_rhs(k, target as f64);
        }
        self.exact_lp = None;
    }

    /// Checks `x` against the model, completes it greedily and keeps it if
    /// it beats the incumbent.
    fn offer(&mut self, mut x: Vec<i64>) {
        if x.iter().any(|&v| v < 0) {
            return;
        }
        let mut slack: Vec<i128> = Vec::with_capacity(self.n);
        for r in &self.model_rows {
            let lhs: i128 = r.iter().map(|&(j, v)| v as i128 * x[j] as i128).sum();
            let s = self.rhs as i128 - lhs;
            if s < 0 {
                return;
            }
            slack.push(s);
        }
        // The matrix is symmetric, so row j lists the rows touching x_j.
        for j in 0..self.n {
            let room = self.model_rows[j]
                .iter()
                .map(|&(i, v)| slack[i] / v as i128)
                .min()
                .unwrap_or(0);
            if room > 0 {
                x[j] += room as i64;
                for &(i, v) in &self.model_rows[j] {
                    slack[i] -= room * v as i128;
                }
            }
        }
        let value: i64 = x.iter().sum();
        if value > self.value {
            self.value = value;
            self.incumbent = x;
            self.sync_cutoff();
        }
    }

    fn process(&mut self, node: &Node) -> NodeOutcome {
        if let Some(mut lp) = self.float_lp.take() {
            let out = self.process_float(&mut lp, node);
            self.float_lp = Some(lp);
            if let Some(out) = out {
                return out;
            }
        }
        self.exact_solves += 1;
        self.process_exact(node)
    }

    fn certify_infeasible(&self, y: &[f64], lower: &[i64], upper: &[i64]) -> bool {
        Certificate::evaluate(&self.rows, &self.zeros, &ScaledDuals::from_f64(y), lower, upper).below(0)
    }

    /// Floating-point node solve; `None` asks for an exact re-solve.
    fn process_float(&mut self, lp: &mut BoundedLp<f64>, node: &Node) -> Option<NodeOutcome> {
        let mut lower = node.lower.clone();
        let mut upper = node.upper.clone();
        let lo: Vec<f64> = lower.iter().map(|&v| v as f64).collect();
        let up: Vec<f64> = upper.iter().map(|&v| v as f64).collect();
        lp.set_bounds(&lo, &up);
        lp.install_basis(&node.hint, &node.at_upper);
        let cap = 20 * (lp.rows() + lp.cols()) as u64 + 1000;
        let mut first = true;
        loop {
            match lp.solve(cap) {
                LpOutcome::Optimal => {}
                LpOutcome::Infeasible(y) => {
                    return self
                        .certify_infeasible(&y, &lower, &upper)
                        .then_some(NodeOutcome::Pruned);
                }
                LpOutcome::IterationLimit => return None,
            }
            let x = lp.primal();
            let value = lp.objective();
            if first {
                first = false;
                if let Some(o) = node.origin {
                    let dist = if o.up { 1.0 - o.frac } else { o.frac };
                    self.pseudo.record(o.var, o.up, (o.parent_value - value) / dist);
                }
            }
            let cert = Certificate::evaluate(
                &self.rows,
                &self.ones,
                &ScaledDuals::from_f64(&lp.duals()),
                &lower,
                &upper,
            );
            self.offer(
                x.iter()
                    .map(|v| (v + INTEGRALITY_TOL * v.abs().max(1.0)).floor() as i64)
                    .collect(),
            );
            if cert.below(self.value + 1) {
                return Some(NodeOutcome::Pruned);
            }
            let (old_lo, old_up) = (lower.clone(), upper.clone());
            if cert.tighten(self.value + 1, &mut lower, &mut upper) > 0 {
                for j in 0..self.n {
                    if lower[j] != old_lo[j] || upper[j] != old_up[j] {
                        lp.change_bound(j, lower[j] as f64, upper[j] as f64);
                    }
                }
            }
            let candidates: Vec<(usize, f64)> = x
                .iter()
                .enumerate()
                .filter_map(|(j, &v)| {
                    let f = v - v.floor();
                    let tol = INTEGRALITY_TOL * v.abs().max(1.0);
                    (f > tol && f < 1.0 - tol).then_some((j, f))
                })
                .collect();
            if candidates.is_empty() {
                // The rounded point was offered above; if the certificate
                // still does not prune, the float solve is not trusted.
                return None;
            }
            match self.select_branch(lp, &x, value, &candidates, &mut lower, &mut upper) {
                Selection::Resolve => continue,
                Selection::Pruned => return Some(NodeOutcome::Pruned),
                Selection::Var(var, frac) => {
                    let split = x[var].floor() as i64;
                    if split < lower[var] || split >= upper[var] {
                        return None;
                    }
                    return Some(NodeOutcome::Branch(Branching {
                        bound: cert.value(),
                        value,
                        var,
                        split,
                        frac,
                        lower,
                        upper,
                        hint: lp.basic_set(),
                        at_upper: lp.at_upper_set(),
                    }));
                }
            }
        }
    }

    /// Reliability branching: pseudocost scores, with strong branching on
    /// variables whose pseudocosts are not yet reliable. A strong-branching
    /// child whose certified bound falls below the cutoff fixes the
    /// variable to the other side.
    fn select_branch(
        &mut self,
        lp: &mut BoundedLp<f64>,
        x: &[f64],
        value: f64,
        candidates: &[(usize, f64)],
        lower: &mut [i64],
        upper: &mut [i64],
    ) -> Selection {
        let mut order: Vec<(usize, f64)> = candidates.to_vec();
        // Unreliable candidates first by pseudocost score, then the rest.
        let keyed: Vec<(bool, f64, usize, f64)> = order
            .iter()
            .map(|&(j, f)| (self.pseudo.reliable(j), self.pseudo.score(j, f), j, f))
            .collect();
        let mut keyed = keyed;
        keyed.sort_by(|a, b| {
            a.0.cmp(&b.0)
                .then(b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal))
                .then(a.2.cmp(&b.2))
        });
        order = keyed.iter().map(|&(_, _, j, f)| (j, f)).collect();
        let mut best: Option<(usize, f64, f64)> = None;
        let mut strong = 0usize;
        let mut since_improvement = 0usize;
        for (j, f) in order {
            let s = if self.pseudo.reliable(j) || strong >= STRONG_CANDIDATES || since_improvement >= STRONG_LOOKAHEAD {
                self.pseudo.score(j, f)
            } else {
                strong += 1;
                let split = x[j].floor() as i64;
                let down = self.probe(lp, j, lower[j], split, lower, upper);
                let up = self.probe(lp, j, split + 1, upper[j], lower, upper);
                if down.pruned && up.pruned {
                    return Selection::Pruned;
                }
                if down.pruned || up.pruned {
                    if down.pruned {
                        lower[j] = split + 1;
                    } else {
                        upper[j] = split;
                    }
                    lp.change_bound(j, lower[j] as f64, upper[j] as f64);
                    return Selection::Resolve;
                }
                let dl = (value - down.value).max(0.0);
                let ul = (value - up.value).max(0.0);
                self.pseudo.record(j, false, dl / f);
                self.pseudo.record(j, true, ul / (1.0 - f));
                score(dl, ul)
            };
            match best {
                Some((_, _, bs)) if s <= bs => since_improvement += 1,
                _ => {
                    best = Some((j, f, s));
                    since_improvement = 0;
                }
            }
        }
        let (var, frac, _) = best.expect("at least one candidate");
        Selection::Var(var, frac)
    }

    /// Solves the child with `lo <= x_j <= hi` approximately and reports
    /// whether an exact certificate prunes it.
    fn probe(&self, lp: &BoundedLp<f64>, j: usize, lo: i64, hi: i64, lower: &[i64], upper: &[i64]) -> ChildProbe {
        let mut child = lp.clone();
        child.change_bound(j, lo as f64, hi as f64);
        let mut cl = lower.to_vec();
        let mut cu = upper.to_vec();
        cl[j] = lo;
        cu[j] = hi;
        match child.solve(STRONG_ITERATIONS) {
            LpOutcome::Infeasible(y) => ChildProbe {
                pruned: self.certify_infeasible(&y, &cl, &cu),
                value: f64::NEG_INFINITY,
            },
            LpOutcome::Optimal | LpOutcome::IterationLimit => {
                let value = child.objective();
                let cert =
                    Certificate::evaluate(&self.rows, &self.ones, &ScaledDuals::from_f64(&child.duals()), &cl, &cu);
                ChildProbe {
                    pruned: cert.below(self.value + 1),
                    value,
                }
            }
        }
    }

    fn process_exact(&mut self, node: &Node) -> NodeOutcome {
        let lo: Vec<BigRational> = node
            .lower
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect();
        let up: Vec<BigRational> = node
            .upper
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect();
        if self.exact_lp.is_none() {
            self.exact_lp = Some(self.make_lp(&node.lower, &node.upper));
        }
        let lp = self.exact_lp.as_mut().expect("exact lp");
        lp.set_bounds(&lo, &up);
        lp.install_basis(&node.hint, &node.at_upper);
        match lp.solve(u64::MAX) {
            LpOutcome::Optimal => {}
            LpOutcome::Infeasible(_) => return NodeOutcome::Pruned,
            LpOutcome::IterationLimit => unreachable!("no iteration cap"),
        }
        let x = lp.primal();
        let y = lp.duals();
        let hint = lp.basic_set();
        let at_upper = lp.at_upper_set();
        let value = ToPrimitive::to_f64(&lp.objective()).unwrap_or(f64::INFINITY);
        let cert = Certificate::evaluate(
            &self.rows,
            &self.ones,
            &ScaledDuals::from_rational(&y),
            &node.lower,
            &node.upper,
        );
        self.offer(
            x.iter()
                .map(|v| v.floor().to_integer().to_i64().expect("bounded"))
                .collect(),
        );
        if cert.below(self.value + 1) {
            return NodeOutcome::Pruned;
        }
        let mut lower = node.lower.clone();
        let mut upper = node.upper.clone();
        cert.tighten(self.value + 1, &mut lower, &mut upper);
        let mut best: Option<(usize, BigRational)> = None;
        for (j, v) in x.iter().enumerate() {
            let f = v - v.floor();
            if f.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, bf)| f > *bf) {
                best = Some((j, f));
            }
        }
        // An integral relaxation optimum was offered above and the exact
        // certificate then equals its value, so it has been pruned.
        let (var, f) = best.expect("integral optimum is pruned");
        let split = x[var].floor().to_integer().to_i64().expect("bounded");
        NodeOutcome::Branch(Branching {
            bound: cert.value(),
            value,
            var,
            split,
            frac: ToPrimitive::to_f64(&f).unwrap_or(0.5),
            lower,
            upper,
            hint,
            at_upper,
        })
    }
}

enum Selection {
    Var(usize, f64),
    Resolve,
    Pruned,
}
