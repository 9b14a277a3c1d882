//! Exhaustive vertex enumeration of the bounded transportation polytope.
//!
//! A point is a vertex exactly when the cells strictly between their bounds
//! (the free cells) have linearly independent constraint columns, i.e. form
//! a forest in the row/column bipartite graph. The search labels every
//! positive-capacity cell as pinned to 0, pinned to its cap, or free, keeps
//! the free cells acyclic, and solves the resulting forest system by leaf
//! peeling. Each vertex corresponds to exactly one labeling.

use num_bigint::BigInt;
use num_traits::Zero;

use super::network::{FlowInt, ScaledData};
use super::ConstrainedProblem;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::measure::TransportPlan;
use crate::rational::Rational;

pub const DEFAULT_ORACLE_CELLS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// `None` when the plan set is empty.
    pub opt_cost: Option<Rational>,
    /// Every optimal vertex, in enumeration order.
    pub opt_vertices: Vec<TransportPlan>,
    /// Number of vertices of the feasible polytope.
    pub vertex_count: usize,
}

impl OracleResult {
    pub fn feasible(&self) -> bool {
        self.opt_cost.is_some()
    }
}

/// Enumerates every vertex; refuses grids with more than `max_cells` cells.
pub fn brute_force_oracle(problem: &ConstrainedProblem, max_cells: usize) -> Result<OracleResult> {
    let (nx, ny) = problem.shape();
    if nx * ny > max_cells {
        return Err(Error::TooLarge {
            cells: nx * ny,
            limit: max_cells,
        });
    }
    let data = ScaledData::new(problem);
    let found = if data.fits_fast_path() {
        Search::<i128>::run(&data)
    } else {
        Search::<BigInt>::run(&data)
    };
    let opt_vertices = found
        .best
        .into_iter()
        .map(|m| {
            problem
                .plan_from_mass(m.map(|v| data.mass_to_rational(v)))
                .expect("vertices carry unit mass")
        })
        .collect();
    Ok(OracleResult {
        opt_cost: found
            .best_cost
            .map(|c| Rational::new(c, &data.mass_scale * &data.cost_scale)),
        opt_vertices,
        vertex_count: found.vertex_count,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Label {
    Zero,
    Cap,
    Free,
}

struct Found {
    best_cost: Option<BigInt>,
    best: Vec<Matrix<BigInt>>,
    vertex_count: usize,
}

/// Union-find with rollback (no path compression).
struct Forest {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<Option<(usize, usize)>>,
}

impl Forest {
    fn new(n: usize) -> Self {
        Forest {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// False (and no change) when `a` and `b` are already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push(Some((ra, rb)));
        true
    }

    fn undo(&mut self) {
        if let Some(Some((ra, rb))) = self.history.pop() {
            self.parent[rb] = rb;
            self.size[ra] -= self.size[rb];
        }
    }
}

struct Search<'a, T> {
    data: &'a ScaledData,
    cells: Vec<(usize, usize)>,
    caps: Vec<T>,
    supply: Vec<T>,
    demand: Vec<T>,
    /// Index into `cells` after which row `i` / column `j` is complete.
    row_last: Vec<Option<usize>>,
    col_last: Vec<Option<usize>>,
    labels: Vec<Label>,
    row_fixed: Vec<T>,
    col_fixed: Vec<T>,
    row_free: Vec<usize>,
    col_free: Vec<usize>,
    forest: Forest,
    found: Found,
}

impl<'a, T: FlowInt> Search<'a, T> {
    fn run(data: &'a ScaledData) -> Found {
        let (nx, ny) = (data.nx(), data.ny());
        let cells: Vec<(usize, usize)> = data
            .cap
            .cells()
            .filter(|(_, c)| !c.is_zero())
            .map(|(c, _)| c)
            .collect();
        let mut row_last = vec![None; nx];
        let mut col_last = vec![None; ny];
        for (k, &(i, j)) in cells.iter().enumerate() {
            row_last[i] = Some(k);
            col_last[j] = Some(k);
        }
        let mut search = Search {
            data,
            caps: cells
                .iter()
                .map(|&(i, j)| T::from_big(&data.cap[(i, j)]))
                .collect(),
            supply: data.supply.iter().map(T::from_big).collect(),
            demand: data.demand.iter().map(T::from_big).collect(),
            labels: vec![Label::Zero; cells.len()],
            cells,
            row_last,
            col_last,
            row_fixed: vec![T::zero(); nx],
            col_fixed: vec![T::zero(); ny],
            row_free: vec![0; nx],
            col_free: vec![0; ny],
            forest: Forest::new(nx + ny),
            found: Found {
                best_cost: None,
                best: Vec::new(),
                vertex_count: 0,
            },
        };
        // Lines without any admissible cell must carry no mass.
        let isolated_ok = (0..nx)
            .all(|i| search.row_last[i].is_some() || search.supply[i].is_zero())
            && (0..ny).all(|j| search.col_last[j].is_some() || search.demand[j].is_zero());
        if isolated_ok {
            search.descend(0);
        }
        search.found
    }

    fn line_ok(target: &T, fixed: &T, free: usize, free_caps: Option<T>) -> bool {
        if free == 0 {
            return fixed == target;
        }
        let mut upper = fixed.clone();
        upper += &free_caps.expect("free caps supplied with free cells");
        fixed < target && *target < upper
    }

    fn free_caps_row(&self, i: usize) -> T {
        let mut total = T::zero();
        for (k, &(r, _)) in self.cells.iter().enumerate() {
            if r == i && self.labels[k] == Label::Free {
                total += &self.caps[k];
            }
        }
        total
    }

    fn free_caps_col(&self, j: usize) -> T {
        let mut total = T::zero();
        for (k, &(_, c)) in self.cells.iter().enumerate() {
            if c == j && self.labels[k] == Label::Free {
                total += &self.caps[k];
            }
        }
        total
    }

    fn descend(&mut self, k: usize) {
        if k == self.cells.len() {
            self.leaf();
            return;
        }
        let (i, j) = self.cells[k];
        let nx = self.supply.len();
        for label in [Label::Zero, Label::Cap, Label::Free] {
            match label {
                Label::Zero => {}
                Label::Cap => {
                    let cap = self.caps[k].clone();
                    self.row_fixed[i] += &cap;
                    self.col_fixed[j] += &cap;
                }
                Label::Free => {
                    if !self.forest.union(i, nx + j) {
                        continue;
                    }
                    self.row_free[i] += 1;
                    self.col_free[j] += 1;
                }
            }
            self.labels[k] = label;
            if self.consistent(k, i, j) {
                self.descend(k + 1);
            }
            match label {
                Label::Zero => {}
                Label::Cap => {
                    let cap = self.caps[k].clone();
                    self.row_fixed[i] -= &cap;
                    self.col_fixed[j] -= &cap;
                }
                Label::Free => {
                    self.forest.undo();
                    self.row_free[i] -= 1;
                    self.col_free[j] -= 1;
                }
            }
        }
        self.labels[k] = Label::Zero;
    }

    fn consistent(&self, k: usize, i: usize, j: usize) -> bool {
        if self.row_fixed[i] > self.supply[i] || self.col_fixed[j] > self.demand[j] {
            return false;
        }
        if self.row_last[i] == Some(k) {
            let caps = (self.row_free[i] > 0).then(|| self.free_caps_row(i));
            if !Self::line_ok(&self.supply[i], &self.row_fixed[i], self.row_free[i], caps) {
                return false;
            }
        }
        if self.col_last[j] == Some(k) {
            let caps = (self.col_free[j] > 0).then(|| self.free_caps_col(j));
            if !Self::line_ok(&self.demand[j], &self.col_fixed[j], self.col_free[j], caps) {
                return false;
            }
        }
        true
    }

    /// Solves the free forest; records the vertex if all bounds hold strictly.
    fn leaf(&mut self) {
        let (nx, ny) = (self.supply.len(), self.demand.len());
        let mut need: Vec<T> = (0..nx)
            .map(|i| {
                let mut r = self.supply[i].clone();
                r -= &self.row_fixed[i];
                r
            })
            .chain((0..ny).map(|j| {
                let mut r = self.demand[j].clone();
                r -= &self.col_fixed[j];
                r
            }))
            .collect();
        let free: Vec<usize> = (0..self.cells.len())
            .filter(|&k| self.labels[k] == Label::Free)
            .collect();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nx + ny];
        for &k in &free {
            let (i, j) = self.cells[k];
            incident[i].push(k);
            incident[nx + j].push(k);
        }
        let mut degree: Vec<usize> = incident.iter().map(Vec::len).collect();
        let mut value: Vec<Option<T>> = vec![None; self.cells.len()];
        let mut leaves: Vec<usize> = (0..nx + ny).filter(|&v| degree[v] == 1).collect();
        while let Some(v) = leaves.pop() {
            if degree[v] != 1 {
                continue;
            }
            let k = *incident[v]
                .iter()
                .find(|&&k| value[k].is_none())
                .expect("leaf has one unsolved cell");
            let amount = need[v].clone();
            if amount <= T::zero() || amount >= self.caps[k] {
                return;
            }
            let (i, j) = self.cells[k];
            let other = if v == i { nx + j } else { i };
            need[v] = T::zero();
            need[other] -= &amount;
            value[k] = Some(amount);
            degree[v] = 0;
            degree[other] -= 1;
            if degree[other] == 1 {
                leaves.push(other);
            }
        }
        if need.iter().any(|r| !r.is_zero()) {
            return;
        }
        let mut mass = Matrix::filled(nx, ny, BigInt::zero());
        let mut cost = BigInt::zero();
        for (k, &(i, j)) in self.cells.iter().enumerate() {
            let v = match self.labels[k] {
                Label::Zero => continue,
                Label::Cap => self.caps[k].to_big(),
                Label::Free => value[k].as_ref().expect("forest fully peeled").to_big(),
            };
            cost += &v * &self.data.cost[(i, j)];
            mass[(i, j)] = v;
        }
        self.found.vertex_count += 1;
        match &self.found.best_cost {
            Some(best) if cost > *best => {}
            Some(best) if cost == *best => self.found.best.push(mass),
            _ => {
                self.found.best_cost = Some(cost);
                self.found.best = vec![mass];
            }
        }
    }
}
