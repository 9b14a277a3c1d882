//! Structure of optimal plans: how far a plan is from the 0-or-cap form,
//! whether the optimum is unique, and marginal-preserving perturbations.
//!
//! The continuum argument for uniqueness perturbs a density on small balls
//! around points of an alternating chain, keeping both projections fixed.
//! On a grid the same move is an [`AlternatingCycle`]: add `ε` on the plus
//! cells `(x_i, y_i)` and subtract it on the minus cells `(x_{i+1}, y_i)`.
//! Row and column sums are untouched and the cost changes by `ε · gain`.
//! The set of cells strictly between 0 and the cap plays the role of the
//! region where the density is strictly between 0 and `Φ`.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use num_traits::{One, Signed, Zero};

use crate::cost::BuiltinCost;
use crate::cycles::CycleSearch;
use crate::error::{Error, Result};
use crate::flow::{solve, ConstrainedProblem, Potentials, SolveOutcome, SolveReport};
use crate::measure::{product_measure, uniform_measure, GridAxis, TransportPlan};
use crate::nondegeneracy::alternating_sums;
use crate::rational::{format_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorSet {
    pub cells: Vec<(usize, usize)>,
    /// `Σ η_ij` over the interior cells.
    pub eta_mass: Rational,
    /// Relative margin; `None` for the open set `0 < σ < c`.
    pub epsilon: Option<Rational>,
}

impl InteriorSet {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Default relative margin for interior classification.
pub fn default_epsilon() -> Rational {
    rat(1, 1_000_000)
}

/// Cells with `ε·c < σ < (1−ε)·c`, for `ε ∈ (0, 1/2)`.
pub fn interior_set(
    plan: &TransportPlan,
    problem: &ConstrainedProblem,
    epsilon: &Rational,
) -> Result<InteriorSet> {
    if !epsilon.is_positive() || *epsilon >= rat(1, 2) {
        return Err(Error::OutOfRange(format!(
            "epsilon {} not in (0, 1/2)",
            format_rational(epsilon)
        )));
    }
    let upper = Rational::one() - epsilon;
    Ok(collect_interior(
        plan,
        problem,
        Some(epsilon.clone()),
        |s, c| *s > epsilon * c && *s < &upper * c,
    ))
}

/// Cells with `0 < σ < c` (the `ε → 0⁺` limit).
pub fn open_interior(plan: &TransportPlan, problem: &ConstrainedProblem) -> InteriorSet {
    collect_interior(plan, problem, None, |s, c| s.is_positive() && s < c)
}

fn collect_interior(
    plan: &TransportPlan,
    problem: &ConstrainedProblem,
    epsilon: Option<Rational>,
    inside: impl Fn(&Rational, &Rational) -> bool,
) -> InteriorSet {
    let mut cells = Vec::new();
    let mut eta_mass = Rational::zero();
    for ((i, j), sigma) in plan.mass().cells() {
        let cap = problem.cap(i, j);
        if cap.is_positive() && inside(sigma, cap) {
            cells.push((i, j));
            eta_mass += problem.eta().weight(i, j);
        }
    }
    InteriorSet {
        cells,
        eta_mass,
        epsilon,
    }
}

/// Cells at their cap: the empirical set on which an optimal plan saturates.
pub fn saturated_cells(plan: &TransportPlan, problem: &ConstrainedProblem) -> Vec<(usize, usize)> {
    plan.mass()
        .cells()
        .filter(|((i, j), s)| s.is_positive() && *s == problem.cap(*i, *j))
        .map(|(c, _)| c)
        .collect()
}

/// Marginal-preserving direction: `+1` on `(x_k, y_k)`, `−1` on
/// `(x_{k+1}, y_k)` with `x_{n+1} = x_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingCycle {
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
    /// `Σ_plus h − Σ_minus h`
    pub gain: Rational,
}

impl AlternatingCycle {
    pub fn new(problem: &ConstrainedProblem, xs: Vec<usize>, ys: Vec<usize>) -> Result<Self> {
        let (nx, ny) = problem.shape();
        let n = xs.len();
        if n < 2 || ys.len() != n {
            return Err(Error::OutOfRange(
                "a cycle needs n ≥ 2 rows and as many columns".into(),
            ));
        }
        let distinct = |v: &[usize], bound: usize| {
            let mut seen = vec![false; bound];
            v.iter()
                .all(|&k| k < bound && !std::mem::replace(&mut seen[k], true))
        };
        if !distinct(&xs, nx) || !distinct(&ys, ny) {
            return Err(Error::OutOfRange(
                "cycle rows and columns must be distinct and in range".into(),
            ));
        }
        let (plus, minus) = alternating_sums(problem.cost(), &xs, &ys);
        Ok(AlternatingCycle {
            xs,
            ys,
            gain: plus - minus,
        })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn cells_plus(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }

    pub fn cells_minus(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.xs.len();
        (0..n).map(move |k| (self.xs[(k + 1) % n], self.ys[k]))
    }

    /// The same cells traversed the other way; negates the gain.
    pub fn reversed(&self) -> AlternatingCycle {
        let n = self.xs.len();
        // Plus cells of the reverse are the current minus cells.
        let xs: Vec<usize> = (0..n).map(|k| self.xs[(n - k) % n]).collect();
        let ys: Vec<usize> = (0..n).map(|k| self.ys[(2 * n - 1 - k) % n]).collect();
        AlternatingCycle {
            xs,
            ys,
            gain: -self.gain.clone(),
        }
    }
}

/// Largest `ε` keeping the plan inside `[0, c]` along the cycle.
pub fn max_step(
    plan: &TransportPlan,
    cycle: &AlternatingCycle,
    problem: &ConstrainedProblem,
) -> Rational {
    let up = cycle
        .cells_plus()
        .map(|(i, j)| problem.cap(i, j) - plan.get(i, j));
    let down = cycle.cells_minus().map(|(i, j)| plan.get(i, j).clone());
    up.chain(down).min().expect("cycles are nonempty")
}

/// `σ + ε θ` for the cycle direction `θ`.
pub fn apply_cycle(
    plan: &TransportPlan,
    cycle: &AlternatingCycle,
    epsilon: &Rational,
    problem: &ConstrainedProblem,
) -> Result<TransportPlan> {
    if epsilon.is_negative() {
        return Err(Error::OutOfRange("step must be nonnegative".into()));
    }
    let limit = max_step(plan, cycle, problem);
    if *epsilon > limit {
        return Err(Error::StepTooLarge(format!(
            "{} exceeds available slack {}",
            format_rational(epsilon),
            format_rational(&limit)
        )));
    }
    let mut mass = plan.mass().clone();
    for cell in cycle.cells_plus() {
        mass[cell] += epsilon;
    }
    for cell in cycle.cells_minus() {
        mass[cell] -= epsilon;
    }
    problem.plan_from_mass(mass)
}

/// Moves the full available slack along the cycle (vertex to vertex).
pub fn apply_full_step(
    plan: &TransportPlan,
    cycle: &AlternatingCycle,
    problem: &ConstrainedProblem,
) -> Result<TransportPlan> {
    apply_cycle(plan, cycle, &max_step(plan, cycle, problem), problem)
}

/// Residual arcs of a plan: row → column where `σ < c`, column → row where
/// `σ > 0`, restricted to positive-capacity cells accepted by `keep`.
struct Residual {
    nx: usize,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl Residual {
    fn new(
        plan: &TransportPlan,
        problem: &ConstrainedProblem,
        keep: impl Fn(usize, usize) -> bool,
    ) -> Self {
        let (nx, ny) = problem.shape();
        let mut up = vec![Vec::new(); nx];
        let mut down = vec![Vec::new(); ny];
        for ((i, j), s) in plan.mass().cells() {
            let cap = problem.cap(i, j);
            if cap.is_zero() || !keep(i, j) {
                continue;
            }
            if s < cap {
                up[i].push(j);
            }
            if s.is_positive() {
                down[j].push(i);
            }
        }
        Residual { nx, up, down }
    }

    fn allows_up(&self, i: usize, j: usize) -> bool {
        self.up[i].binary_search(&j).is_ok()
    }

    fn allows_down(&self, i: usize, j: usize) -> bool {
        self.down[j].binary_search(&i).is_ok()
    }

    /// Simple directed cycle through the arc `x → y`, other than the
    /// two-step return over the same cell; shortest such, by BFS.
    fn cycle_through(&self, x: usize, y: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let nx = self.nx;
        let nodes = nx + self.down.len();
        let mut pred: Vec<Option<usize>> = vec![None; nodes];
        let mut seen = vec![false; nodes];
        let start = nx + y;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let next: Vec<usize> = if u < nx {
                self.up[u].iter().map(|&j| nx + j).collect()
            } else {
                self.down[u - nx]
                    .iter()
                    .copied()
                    .filter(|&i| !(u == start && i == x))
                    .collect()
            };
            for v in next {
                if !seen[v] {
                    seen[v] = true;
                    pred[v] = Some(u);
                    if v == x {
                        queue.clear();
                        break;
                    }
                    queue.push_back(v);
                }
            }
        }
        if !seen[x] {
            return None;
        }
        let mut path = vec![x];
        let mut v = x;
        while let Some(p) = pred[v] {
            path.push(p);
            v = p;
        }
        // path = x, c_k, r_k, …, y (reversed); the cycle is x → y → … → x.
        path.reverse();
        path.pop();
        let mut nodes_seq = vec![x];
        nodes_seq.extend(path);
        let xs = nodes_seq.iter().step_by(2).copied().collect();
        let ys = nodes_seq
            .iter()
            .skip(1)
            .step_by(2)
            .map(|&c| c - nx)
            .collect();
        Some((xs, ys))
    }
}

/// Reduced costs of the report's potentials, exactly.
fn zero_reduced(
    report: &SolveReport,
    problem: &ConstrainedProblem,
) -> impl Fn(usize, usize) -> bool {
    let (nx, ny) = problem.shape();
    let mut zero = vec![false; nx * ny];
    for i in 0..nx {
        for j in 0..ny {
            zero[i * ny + j] = report
                .potentials
                .reduced_cost(problem.cost(), i, j)
                .is_zero();
        }
    }
    move |i, j| zero[i * ny + j]
}

/// Searches for a zero-gain cycle along which the optimal plan can move in
/// both directions' required sense (plus cells below cap, minus cells
/// positive). Such a cycle exists iff the optimum is not unique.
pub fn find_zero_cost_cycle(
    report: &SolveReport,
    problem: &ConstrainedProblem,
) -> Option<AlternatingCycle> {
    let residual = Residual::new(&report.plan, problem, zero_reduced(report, problem));
    for x in 0..residual.nx {
        for &y in &residual.up[x] {
            if let Some((xs, ys)) = residual.cycle_through(x, y) {
                let cycle = AlternatingCycle::new(problem, xs, ys).expect("simple residual cycle");
                debug_assert!(cycle.gain.is_zero());
                return Some(cycle);
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImprovingSearch {
    pub cycle: Option<AlternatingCycle>,
    /// True when "no cycle" proves optimality.
    pub complete: bool,
}

/// Looks for a negative-gain cycle with plus cells below cap and minus
/// cells positive. With `max_n` covering every simple cycle (or `None`) the
/// search is a Bellman–Ford negative-cycle detection and is complete;
/// smaller bounds enumerate cycles up to that length and are partial.
pub fn find_improving_cycle(
    plan: &TransportPlan,
    problem: &ConstrainedProblem,
    max_n: Option<usize>,
) -> Result<ImprovingSearch> {
    problem.validate_plan(plan)?;
    let (nx, ny) = problem.shape();
    let longest = nx.min(ny);
    match max_n {
        Some(n) if n < 2 => Err(Error::OutOfRange(format!(
            "max_n must be at least 2, got {n}"
        ))),
        Some(n) if n < longest => {
            let residual = Residual::new(plan, problem, |_, _| true);
            let mut found = None;
            CycleSearch::new(
                nx,
                ny,
                |i, j| residual.allows_up(i, j),
                |i, j| residual.allows_down(i, j),
            )
            .lengths(2, n)
            .run(|xs, ys| {
                let (plus, minus) = alternating_sums(problem.cost(), xs, ys);
                if plus < minus {
                    found = Some(AlternatingCycle {
                        xs: xs.to_vec(),
                        ys: ys.to_vec(),
                        gain: plus - minus,
                    });
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            });
            let complete = found.is_some();
            Ok(ImprovingSearch {
                cycle: found,
                complete,
            })
        }
        _ => Ok(ImprovingSearch {
            cycle: bellman_ford(plan, problem).err(),
            complete: true,
        }),
    }
}

/// Shortest distances in the residual graph from a virtual source, or a
/// negative cycle.
fn bellman_ford(
    plan: &TransportPlan,
    problem: &ConstrainedProblem,
) -> std::result::Result<Vec<Rational>, AlternatingCycle> {
    let (nx, ny) = problem.shape();
    let h = problem.cost();
    let residual = Residual::new(plan, problem, |_, _| true);
    let mut arcs: Vec<(usize, usize, Rational)> = Vec::new();
    for (i, cols) in residual.up.iter().enumerate() {
        for &j in cols {
            arcs.push((i, nx + j, h.get(i, j).clone()));
        }
    }
    for (j, rows) in residual.down.iter().enumerate() {
        for &i in rows {
            arcs.push((nx + j, i, -h.get(i, j).clone()));
        }
    }
    let nodes = nx + ny;
    let mut dist = vec![Rational::zero(); nodes];
    let mut pred: Vec<Option<usize>> = vec![None; nodes];
    let mut last = None;
    for _ in 0..nodes {
        last = None;
        for (u, v, w) in &arcs {
            let cand = &dist[*u] + w;
            if cand < dist[*v] {
                dist[*v] = cand;
                pred[*v] = Some(*u);
                last = Some(*v);
            }
        }
        if last.is_none() {
            return Ok(dist);
        }
    }
    let mut v = last.expect("relaxation in the final round");
    for _ in 0..nodes {
        v = pred[v].expect("relaxed nodes have predecessors");
    }
    // Walk the predecessor cycle back to v.
    let mut cycle = vec![v];
    let mut u = pred[v].expect("on cycle");
    while u != v {
        cycle.push(u);
        u = pred[u].expect("on cycle");
    }
    cycle.reverse();
    let first_row = cycle
        .iter()
        .position(|&n| n < nx)
        .expect("cycles alternate");
    cycle.rotate_left(first_row);
    let xs = cycle.iter().step_by(2).copied().collect();
    let ys = cycle.iter().skip(1).step_by(2).map(|&c| c - nx).collect();
    let found = AlternatingCycle::new(problem, xs, ys).expect("predecessor cycles are simple");
    debug_assert!(found.gain.is_negative());
    Err(found)
}

/// Dual certificate for an arbitrary feasible plan; `None` when the plan is
/// not optimal.
pub fn potentials_for_plan(
    plan: &TransportPlan,
    problem: &ConstrainedProblem,
) -> Result<Option<Potentials>> {
    problem.validate_plan(plan)?;
    let nx = problem.shape().0;
    Ok(bellman_ford(plan, problem).ok().map(|dist| Potentials {
        rows: dist[..nx].iter().map(|d| -d.clone()).collect(),
        cols: dist[nx..].to_vec(),
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Uniqueness {
    /// No zero-gain cycle: the optimal plan is the only one.
    Unique,
    /// A second optimum is obtained by moving along the cycle.
    NonUnique(AlternatingCycle),
    /// A length-bounded search found nothing.
    Unknown,
}

impl Uniqueness {
    pub fn label(&self) -> &'static str {
        match self {
            Uniqueness::Unique => "unique",
            Uniqueness::NonUnique(_) => "non-unique",
            Uniqueness::Unknown => "unknown",
        }
    }
}

/// Uniqueness of an optimal report; `max_n` below the longest possible
/// cycle restricts the search and may answer [`Uniqueness::Unknown`].
pub fn probe_uniqueness(
    report: &SolveReport,
    problem: &ConstrainedProblem,
    max_n: Option<usize>,
) -> Uniqueness {
    let (nx, ny) = problem.shape();
    match max_n {
        Some(n) if n < nx.min(ny) => {
            let zero = zero_reduced(report, problem);
            let residual = Residual::new(&report.plan, problem, zero);
            let mut found = None;
            CycleSearch::new(
                nx,
                ny,
                |i, j| residual.allows_up(i, j),
                |i, j| residual.allows_down(i, j),
            )
            .lengths(2, n.max(2))
            .run(|xs, ys| {
                found = Some(AlternatingCycle::new(problem, xs.to_vec(), ys.to_vec()));
                ControlFlow::Break(())
            });
            match found {
                Some(Ok(cycle)) => Uniqueness::NonUnique(cycle),
                _ => Uniqueness::Unknown,
            }
        }
        _ => match find_zero_cost_cycle(report, problem) {
            Some(cycle) => Uniqueness::NonUnique(cycle),
            None => Uniqueness::Unique,
        },
    }
}

/// Uniform marginals and reference measure on an `n × n` cell-center grid
/// with a builtin cost and constant density bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefineFamily {
    pub cost: BuiltinCost,
    pub phi: Rational,
}

impl RefineFamily {
    pub fn problem(&self, n: usize) -> Result<ConstrainedProblem> {
        let axis = GridAxis::cell_centers(n)?;
        let m = uniform_measure(axis);
        let eta = product_measure(&m, &m);
        let h = crate::cost::builtin_cost(self.cost, m.axis(), m.axis());
        ConstrainedProblem::with_constant_phi(m.clone(), m, eta, self.phi.clone(), h)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileRow {
    pub n: usize,
    pub interior_cells: usize,
    pub interior_eta_mass: Rational,
    pub opt_cost: Rational,
    /// `(n_x + n_y − 1) · max η_ij`
    pub mass_bound: Rational,
}

impl ProfileRow {
    pub fn within_bound(&self) -> bool {
        self.interior_eta_mass <= self.mass_bound
    }
}

/// Solves the family on each grid and records the open interior.
pub fn bang_bang_profile(family: &RefineFamily, grids: &[usize]) -> Result<Vec<ProfileRow>> {
    grids
        .iter()
        .map(|&n| {
            let problem = family.problem(n)?;
            let report = match solve(&problem) {
                SolveOutcome::Optimal(r) => r,
                SolveOutcome::Infeasible(f) => {
                    return Err(Error::Infeasible(format!(
                        "n = {n}: only {} of the mass can be moved",
                        format_rational(&f.max_mass)
                    )))
                }
            };
            let interior = open_interior(&report.plan, &problem);
            let (nx, ny) = problem.shape();
            let max_eta = problem
                .eta()
                .weights()
                .as_slice()
                .iter()
                .max()
                .cloned()
                .unwrap_or_default();
            Ok(ProfileRow {
                n,
                interior_cells: interior.len(),
                interior_eta_mass: interior.eta_mass,
                opt_cost: report.cost,
                mass_bound: Rational::from_integer((nx + ny - 1).into()) * max_eta,
            })
        })
        .collect()
}
