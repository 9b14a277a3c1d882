use std::fmt::Debug;
use std::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::ConstrainedProblem;
use crate::matrix::Matrix;
use crate::rational::{common_denominator, scale_exact, Rational};

/// Integer type the flow algorithms run on.
pub(crate) trait FlowInt:
    Clone + Ord + Debug + Signed + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self>
{
    fn from_big(v: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
}

impl FlowInt for i128 {
    fn from_big(v: &BigInt) -> Self {
        v.to_i128().expect("value checked to fit before dispatch")
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl FlowInt for BigInt {
    fn from_big(v: &BigInt) -> Self {
        v.clone()
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Problem data rescaled to integers: masses by `mass_scale`, costs by
/// `cost_scale`. Cells with zero capacity carry `cap = 0`.
#[derive(Debug, Clone)]
pub(crate) struct ScaledData {
    pub supply: Vec<BigInt>,
    pub demand: Vec<BigInt>,
    pub cap: Matrix<BigInt>,
    pub cost: Matrix<BigInt>,
    pub mass_scale: BigInt,
    pub cost_scale: BigInt,
}

/// Headroom limit for the `i128` path; products of a cost, a mass and the
/// cell count must stay below 2^126.
const FAST_PATH_BITS: u64 = 40;

impl ScaledData {
    pub fn new(problem: &ConstrainedProblem) -> Self {
        let mu = problem.mu().weights();
        let nu = problem.nu().weights();
        let caps = problem.capacity().caps();
        let mass_scale =
            common_denominator(mu.iter().chain(nu.iter()).chain(caps.as_slice().iter()));
        let costs = problem.cost().values();
        let cost_scale = common_denominator(costs.as_slice().iter());
        ScaledData {
            supply: mu.iter().map(|v| scale_exact(v, &mass_scale)).collect(),
            demand: nu.iter().map(|v| scale_exact(v, &mass_scale)).collect(),
            cap: caps.map(|v| scale_exact(v, &mass_scale)),
            cost: costs.map(|v| scale_exact(v, &cost_scale)),
            mass_scale,
            cost_scale,
        }
    }

    pub fn nx(&self) -> usize {
        self.supply.len()
    }

    pub fn ny(&self) -> usize {
        self.demand.len()
    }

    /// Whether every intermediate quantity fits comfortably in `i128`.
    pub fn fits_fast_path(&self) -> bool {
        let max_cost_bits = self
            .cost
            .as_slice()
            .iter()
            .map(|c| c.bits())
            .max()
            .unwrap_or(0);
        let cells = (self.nx() * self.ny() + self.nx() + self.ny() + 2) as u64;
        let cell_bits = 64 - cells.leading_zeros() as u64;
        self.mass_scale.bits() <= FAST_PATH_BITS
            && max_cost_bits <= FAST_PATH_BITS
            && self.mass_scale.bits() + max_cost_bits + 2 * cell_bits < 120
    }

    pub fn mass_to_rational(&self, v: &BigInt) -> Rational {
        Rational::new(v.clone(), self.mass_scale.clone())
    }
}

/// Residual network with paired arcs (`a ^ 1` is the reverse of `a`).
#[derive(Debug, Clone)]
pub(crate) struct Network<T> {
    pub adjacency: Vec<Vec<usize>>,
    pub head: Vec<usize>,
    pub residual: Vec<T>,
    pub cost: Vec<T>,
}

impl<T: FlowInt> Network<T> {
    pub fn new(nodes: usize) -> Self {
        Network {
            adjacency: vec![Vec::new(); nodes],
            head: Vec::new(),
            residual: Vec::new(),
            cost: Vec::new(),
        }
    }

    pub fn nodes(&self) -> usize {
        self.adjacency.len()
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: T, cost: T) -> usize {
        let id = self.head.len();
        self.adjacency[from].push(id);
        self.head.push(to);
        self.residual.push(cap);
        self.cost.push(cost.clone());
        self.adjacency[to].push(id + 1);
        self.head.push(from);
        self.residual.push(T::zero());
        self.cost.push(-cost);
        id
    }

    pub fn tail(&self, arc: usize) -> usize {
        self.head[arc ^ 1]
    }

    pub fn push(&mut self, arc: usize, amount: &T) {
        self.residual[arc] -= amount;
        self.residual[arc ^ 1] += amount;
    }

    /// Nodes reachable from `start` through arcs with positive residual.
    pub fn reachable(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &a in &self.adjacency[u] {
                let v = self.head[a];
                if !seen[v] && self.residual[a].is_positive() {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Transport network layout: node 0 is the source, rows are `1..=nx`,
/// columns follow, and the sink is last.
#[derive(Debug, Clone)]
pub(crate) struct TransportNetwork<T> {
    pub net: Network<T>,
    pub nx: usize,
    pub ny: usize,
    /// Forward arc of each cell with positive capacity.
    pub cell_arc: Matrix<Option<usize>>,
}

impl<T: FlowInt> TransportNetwork<T> {
    /// `cost_shift` is subtracted from every cell cost.
    pub fn build(data: &ScaledData, with_costs: bool, cost_shift: &BigInt) -> Self {
        let (nx, ny) = (data.nx(), data.ny());
        let mut net = Network::new(nx + ny + 2);
        let sink = nx + ny + 1;
        for (i, s) in data.supply.iter().enumerate() {
            net.add_arc(0, 1 + i, T::from_big(s), T::zero());
        }
        let cell_arc = Matrix::from_fn(nx, ny, |i, j| {
            let cap = &data.cap[(i, j)];
            if cap.is_zero() {
                return None;
            }
            let cost = if with_costs {
                T::from_big(&(&data.cost[(i, j)] - cost_shift))
            } else {
                T::zero()
            };
            Some(net.add_arc(1 + i, 1 + nx + j, T::from_big(cap), cost))
        });
        for (j, d) in data.demand.iter().enumerate() {
            net.add_arc(1 + nx + j, sink, T::from_big(d), T::zero());
        }
        TransportNetwork {
            net,
            nx,
            ny,
            cell_arc,
        }
    }

    pub fn source(&self) -> usize {
        0
    }

    pub fn sink(&self) -> usize {
        self.nx + self.ny + 1
    }

    pub fn row_node(&self, i: usize) -> usize {
        1 + i
    }

    pub fn col_node(&self, j: usize) -> usize {
        1 + self.nx + j
    }

    /// Flow on each cell arc (reverse residual).
    pub fn cell_flows(&self) -> Matrix<T> {
        self.cell_arc.map(|arc| match arc {
            Some(a) => self.net.residual[a ^ 1].clone(),
            None => T::zero(),
        })
    }

    pub fn source_side_cut(&self) -> (Vec<usize>, Vec<usize>) {
        let seen = self.net.reachable(self.source());
        let rows = (0..self.nx).filter(|&i| seen[self.row_node(i)]).collect();
        let cols = (0..self.ny).filter(|&j| seen[self.col_node(j)]).collect();
        (rows, cols)
    }
}

/// Capacity of the cut whose source side holds `rows` and `cols`.
pub(crate) fn cut_capacity(data: &ScaledData, rows: &[usize], cols: &[usize]) -> BigInt {
    let mut in_rows = vec![false; data.nx()];
    rows.iter().for_each(|&i| in_rows[i] = true);
    let mut in_cols = vec![false; data.ny()];
    cols.iter().for_each(|&j| in_cols[j] = true);
    let mut total = BigInt::zero();
    for (s, _) in data
        .supply
        .iter()
        .zip(&in_rows)
        .filter(|(_, &inside)| !inside)
    {
        total += s;
    }
    for (d, _) in data
        .demand
        .iter()
        .zip(&in_cols)
        .filter(|(_, &inside)| inside)
    {
        total += d;
    }
    for ((i, j), cap) in data.cap.cells() {
        if in_rows[i] && !in_cols[j] {
            total += cap;
        }
    }
    total
}
