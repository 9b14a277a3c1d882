//! Exact solution of the discrete density-constrained transport problem
//!
//! ```text
//! minimize Σ h_ij σ_ij  subject to  Σ_j σ_ij = μ_i,  Σ_i σ_ij = ν_j,  0 ≤ σ_ij ≤ Φ_ij η_ij
//! ```
//!
//! The solver runs successive shortest paths on the bipartite network
//! source → rows → columns → sink. All supplies, demands and capacities are
//! rescaled to a common denominator so the flow arithmetic is integral;
//! costs are rescaled separately. A fixed-width fast path is used whenever
//! the scaled data leaves ample headroom in `i128`, otherwise the same code
//! runs on big integers.

mod maxflow;
mod network;
mod oracle;
mod ssp;

use num_traits::{Signed, Zero};

use crate::cost::{check_lengths, CostMatrix};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::measure::{row_col_sums, DiscreteMeasure, JointMeasure, TransportPlan};
use crate::rational::{format_rational, Rational};

pub use maxflow::check_feasible;
pub use oracle::{brute_force_oracle, OracleResult, DEFAULT_ORACLE_CELLS};
pub use ssp::solve;

/// Density bound `Φ` and the derived cell capacities `c_ij = Φ_ij η_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacityField {
    phi: Matrix<Rational>,
    caps: Matrix<Rational>,
}

impl CapacityField {
    pub fn new(phi: Matrix<Rational>, eta: &JointMeasure) -> Result<Self> {
        check_lengths("capacity field", phi.shape(), eta.shape())?;
        if let Some(((i, j), _)) = phi.cells().find(|(_, v)| v.is_negative()) {
            return Err(Error::NegativeCapacity(i, j));
        }
        let caps = Matrix::from_fn(phi.rows(), phi.cols(), |i, j| {
            &phi[(i, j)] * eta.weight(i, j)
        });
        Ok(CapacityField { phi, caps })
    }

    pub fn constant(phi: Rational, eta: &JointMeasure) -> Result<Self> {
        let (nx, ny) = eta.shape();
        CapacityField::new(Matrix::filled(nx, ny, phi), eta)
    }

    pub fn phi(&self) -> &Matrix<Rational> {
        &self.phi
    }

    pub fn caps(&self) -> &Matrix<Rational> {
        &self.caps
    }

    pub fn cap(&self, i: usize, j: usize) -> &Rational {
        &self.caps[(i, j)]
    }

    pub fn total(&self) -> Rational {
        self.caps.as_slice().iter().sum()
    }
}

/// Full data of a density-constrained transport instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstrainedProblem {
    mu: DiscreteMeasure,
    nu: DiscreteMeasure,
    eta: JointMeasure,
    capacity: CapacityField,
    cost: CostMatrix,
}

impl ConstrainedProblem {
    pub fn new(
        mu: DiscreteMeasure,
        nu: DiscreteMeasure,
        eta: JointMeasure,
        capacity: CapacityField,
        cost: CostMatrix,
    ) -> Result<Self> {
        if mu.axis() != eta.x_axis() || nu.axis() != eta.y_axis() {
            return Err(Error::DimensionMismatch(
                "marginal axes differ from the reference measure axes".into(),
            ));
        }
        let shape = eta.shape();
        check_lengths("capacity field", capacity.phi().shape(), shape)?;
        check_lengths("cost", cost.shape(), shape)?;
        // Caps are rebuilt from Φ and η so they always vanish where η does.
        let capacity = CapacityField::new(capacity.phi, &eta)?;
        Ok(ConstrainedProblem {
            mu,
            nu,
            eta,
            capacity,
            cost,
        })
    }

    /// Convenience constructor with a constant density bound.
    pub fn with_constant_phi(
        mu: DiscreteMeasure,
        nu: DiscreteMeasure,
        eta: JointMeasure,
        phi: Rational,
        cost: CostMatrix,
    ) -> Result<Self> {
        let capacity = CapacityField::constant(phi, &eta)?;
        ConstrainedProblem::new(mu, nu, eta, capacity, cost)
    }

    pub fn mu(&self) -> &DiscreteMeasure {
        &self.mu
    }

    pub fn nu(&self) -> &DiscreteMeasure {
        &self.nu
    }

    pub fn eta(&self) -> &JointMeasure {
        &self.eta
    }

    pub fn capacity(&self) -> &CapacityField {
        &self.capacity
    }

    pub fn cost(&self) -> &CostMatrix {
        &self.cost
    }

    pub fn cap(&self, i: usize, j: usize) -> &Rational {
        self.capacity.cap(i, j)
    }

    pub fn shape(&self) -> (usize, usize) {
        self.eta.shape()
    }

    /// Same data with the density bound replaced.
    pub fn with_phi(&self, phi: Matrix<Rational>) -> Result<Self> {
        let capacity = CapacityField::new(phi, &self.eta)?;
        ConstrainedProblem::new(
            self.mu.clone(),
            self.nu.clone(),
            self.eta.clone(),
            capacity,
            self.cost.clone(),
        )
    }

    /// `I_h(σ) = Σ h_ij σ_ij`.
    pub fn plan_cost(&self, plan: &TransportPlan) -> Rational {
        plan.mass()
            .cells()
            .filter(|(_, v)| !v.is_zero())
            .map(|((i, j), v)| self.cost.get(i, j) * v)
            .sum()
    }

    /// Checks marginals and `0 ≤ σ_ij ≤ c_ij` exactly.
    pub fn validate_plan(&self, plan: &TransportPlan) -> Result<()> {
        check_lengths("plan", plan.shape(), self.shape())?;
        for ((i, j), v) in plan.mass().cells() {
            if v.is_negative() {
                return Err(Error::InvalidPlan(format!("negative mass at ({i}, {j})")));
            }
            if v > self.cap(i, j) {
                return Err(Error::InvalidPlan(format!(
                    "mass {} exceeds capacity {} at ({i}, {j})",
                    format_rational(v),
                    format_rational(self.cap(i, j))
                )));
            }
        }
        let (rows, cols) = row_col_sums(plan.mass());
        if let Some(i) = (0..rows.len()).find(|&i| rows[i] != *self.mu.weight(i)) {
            return Err(Error::InvalidPlan(format!("row {i} sum differs from mu")));
        }
        if let Some(j) = (0..cols.len()).find(|&j| cols[j] != *self.nu.weight(j)) {
            return Err(Error::InvalidPlan(format!(
                "column {j} sum differs from nu"
            )));
        }
        Ok(())
    }

    /// Wraps a mass table as a plan on this problem's grid.
    pub fn plan_from_mass(&self, mass: Matrix<Rational>) -> Result<TransportPlan> {
        TransportPlan::new(self.eta.x_axis().clone(), self.eta.y_axis().clone(), mass)
    }
}

/// Source side of a minimum cut separating the supplies from the demands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeficitCut {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// Capacity of the cut; equals the maximum transportable mass.
    pub capacity: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub feasible: bool,
    /// Largest mass that can be routed respecting the caps.
    pub max_mass: Rational,
    /// Present when infeasible.
    pub deficit_cut: Option<DeficitCut>,
}

/// Dual values with reduced costs `r_ij = h_ij − α_i − β_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Potentials {
    pub rows: Vec<Rational>,
    pub cols: Vec<Rational>,
}

impl Potentials {
    pub fn reduced_cost(&self, cost: &CostMatrix, i: usize, j: usize) -> Rational {
        cost.get(i, j) - &self.rows[i] - &self.cols[j]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub plan: TransportPlan,
    pub cost: Rational,
    pub potentials: Potentials,
}

impl SolveReport {
    /// Cells with `0 < σ_ij < c_ij`.
    pub fn interior_cells(&self, problem: &ConstrainedProblem) -> Vec<(usize, usize)> {
        self.plan
            .mass()
            .cells()
            .filter(|((i, j), v)| v.is_positive() && *v < problem.cap(*i, *j))
            .map(|(c, _)| c)
            .collect()
    }

    /// Verifies complementary slackness against `problem` exactly.
    pub fn check_slackness(&self, problem: &ConstrainedProblem) -> Result<()> {
        for ((i, j), sigma) in self.plan.mass().cells() {
            let cap = problem.cap(i, j);
            if cap.is_zero() {
                continue;
            }
            let r = self.potentials.reduced_cost(problem.cost(), i, j);
            if r.is_positive() && !sigma.is_zero() {
                return Err(Error::InvalidPlan(format!(
                    "positive reduced cost but positive mass at ({i}, {j})"
                )));
            }
            if r.is_negative() && sigma != cap {
                return Err(Error::InvalidPlan(format!(
                    "negative reduced cost but cell ({i}, {j}) below capacity"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Optimal(SolveReport),
    Infeasible(FeasibilityReport),
}

impl SolveOutcome {
    pub fn status(&self) -> SolveStatus {
        match self {
            SolveOutcome::Optimal(_) => SolveStatus::Optimal,
            SolveOutcome::Infeasible(_) => SolveStatus::Infeasible,
        }
    }

    pub fn optimal(&self) -> Option<&SolveReport> {
        match self {
            SolveOutcome::Optimal(r) => Some(r),
            SolveOutcome::Infeasible(_) => None,
        }
    }

    pub fn into_optimal(self) -> Option<SolveReport> {
        match self {
            SolveOutcome::Optimal(r) => Some(r),
            SolveOutcome::Infeasible(_) => None,
        }
    }
}
