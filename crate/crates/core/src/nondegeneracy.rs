//! Separability of a cost on a support set.
//!
//! On each connected component of the support (viewed as a bipartite graph
//! with rows and columns as nodes and cells as edges) a cost is either
//! exactly `u_i + v_j`, or some alternating cycle has unequal diagonal and
//! shifted sums. [`fit_separable`] decides this constructively and returns
//! potentials or a witness; [`cycle_scan`] and [`quadruple_scan`] enumerate
//! witnesses directly. [`mixed_partial_certify`] is a floating-point
//! sufficient test based on second differences and never overrides the
//! exact decision.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::ops::ControlFlow;

use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::CostMatrix;
use crate::cycles::CycleSearch;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::measure::{GridAxis, JointMeasure};
use crate::rational::Rational;

/// Cells `(i, j)` on which separability is tested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    nx: usize,
    ny: usize,
    cells: BTreeSet<(usize, usize)>,
}

impl SupportSet {
    pub fn new(
        nx: usize,
        ny: usize,
        cells: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let cells: BTreeSet<_> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(Error::OutOfRange("support set is empty".into()));
        }
        if let Some(&(i, j)) = cells.iter().find(|&&(i, j)| i >= nx || j >= ny) {
            return Err(Error::OutOfRange(format!(
                "cell ({i}, {j}) outside a {nx}x{ny} grid"
            )));
        }
        Ok(SupportSet { nx, ny, cells })
    }

    pub fn full(nx: usize, ny: usize) -> Result<Self> {
        SupportSet::new(nx, ny, (0..nx).flat_map(|i| (0..ny).map(move |j| (i, j))))
    }

    /// Cells where the reference measure is positive.
    pub fn from_eta(eta: &JointMeasure) -> Result<Self> {
        let (nx, ny) = eta.shape();
        SupportSet::new(
            nx,
            ny,
            eta.weights()
                .cells()
                .filter(|(_, w)| w.is_positive())
                .map(|(c, _)| c),
        )
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.cells.contains(&(i, j))
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cells.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    fn check_cost(&self, h: &CostMatrix) -> Result<()> {
        if h.shape() != (self.nx, self.ny) {
            return Err(Error::DimensionMismatch(format!(
                "cost {:?} vs support grid {:?}",
                h.shape(),
                (self.nx, self.ny)
            )));
        }
        Ok(())
    }

    fn restricted(&self, cells: &[(usize, usize)]) -> SupportSet {
        SupportSet {
            nx: self.nx,
            ny: self.ny,
            cells: cells.iter().copied().collect(),
        }
    }
}

/// Alternating cycle `(x_1,y_1),(x_2,y_1),(x_2,y_2),…,(x_n,y_n),(x_1,y_n)`
/// with its two alternating cost sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
    /// `Σ h(x_i, y_i)`
    pub sum_diag: Rational,
    /// `Σ h(x_{i+1}, y_i)` with `x_{n+1} = x_1`
    pub sum_shift: Rational,
}

impl CycleWitness {
    pub fn from_path(h: &CostMatrix, xs: &[usize], ys: &[usize]) -> Self {
        let (sum_diag, sum_shift) = alternating_sums(h, xs, ys);
        CycleWitness {
            xs: xs.to_vec(),
            ys: ys.to_vec(),
            sum_diag,
            sum_shift,
        }
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// `sum_diag − sum_shift`
    pub fn gap(&self) -> Rational {
        &self.sum_diag - &self.sum_shift
    }

    pub fn diagonal_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }

    pub fn shifted_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.xs.len();
        (0..n).map(move |k| (self.xs[(k + 1) % n], self.ys[k]))
    }

    /// Recomputes both sums from `h` and checks the cells lie in `support`.
    pub fn verify(&self, h: &CostMatrix, support: &SupportSet) -> bool {
        let n = self.xs.len();
        n >= 2
            && self.ys.len() == n
            && self
                .diagonal_cells()
                .chain(self.shifted_cells())
                .all(|(i, j)| support.contains(i, j))
            && {
                let (d, s) = alternating_sums(h, &self.xs, &self.ys);
                d == self.sum_diag && s == self.sum_shift && d != s
            }
    }
}

pub(crate) fn alternating_sums(h: &CostMatrix, xs: &[usize], ys: &[usize]) -> (Rational, Rational) {
    let n = xs.len();
    let mut diag = Rational::zero();
    let mut shift = Rational::zero();
    for k in 0..n {
        diag += h.get(xs[k], ys[k]);
        shift += h.get(xs[(k + 1) % n], ys[k]);
    }
    (diag, shift)
}

/// `h_ij = u_i + v_j` on every cell of a component, normalized by
/// `u(root) = 0` for the smallest row of the component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparableFit {
    pub cells: Vec<(usize, usize)>,
    pub u: BTreeMap<usize, Rational>,
    pub v: BTreeMap<usize, Rational>,
    pub root: usize,
}

impl SeparableFit {
    pub fn holds_on(&self, h: &CostMatrix) -> bool {
        self.cells
            .iter()
            .all(|&(i, j)| *h.get(i, j) == &self.u[&i] + &self.v[&j])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentVerdict {
    Separable(SeparableFit),
    Witness(CycleWitness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentResult {
    /// Smallest row index in the component.
    pub root: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub cells: Vec<(usize, usize)>,
    pub verdict: ComponentVerdict,
}

impl ComponentResult {
    pub fn is_separable(&self) -> bool {
        matches!(self.verdict, ComponentVerdict::Separable(_))
    }

    pub fn witness(&self) -> Option<&CycleWitness> {
        match &self.verdict {
            ComponentVerdict::Witness(w) => Some(w),
            ComponentVerdict::Separable(_) => None,
        }
    }

    pub fn fit(&self) -> Option<&SeparableFit> {
        match &self.verdict {
            ComponentVerdict::Separable(f) => Some(f),
            ComponentVerdict::Witness(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FitOptions {
    /// Replace the first-conflict witness by a shortest unbalanced cycle.
    pub minimal_witness: bool,
}

/// Per-component separability decision, ordered by component root.
///
/// Traversal is breadth-first from the smallest row of each component,
/// neighbors in increasing index order. Values propagate along tree edges
/// (`v_j = h_ij − u_i`, `u_i = h_ij − v_j`); the first non-tree edge whose
/// cost disagrees closes an unbalanced cycle with the two tree paths.
pub fn fit_separable(
    support: &SupportSet,
    h: &CostMatrix,
    options: FitOptions,
) -> Result<Vec<ComponentResult>> {
    support.check_cost(h)?;
    let (nx, ny) = support.shape();
    let mut row_adj: Vec<Vec<usize>> = vec![Vec::new(); nx];
    let mut col_adj: Vec<Vec<usize>> = vec![Vec::new(); ny];
    for (i, j) in support.cells() {
        row_adj[i].push(j);
        col_adj[j].push(i);
    }
    // Node ids: rows 0..nx, columns nx..nx+ny.
    let mut value: Vec<Option<Rational>> = vec![None; nx + ny];
    let mut parent: Vec<Option<usize>> = vec![None; nx + ny];
    let mut results = Vec::new();
    for root in 0..nx {
        if row_adj[root].is_empty() || value[root].is_some() {
            continue;
        }
        value[root] = Some(Rational::zero());
        let mut order = vec![root];
        let mut queue = VecDeque::from([root]);
        let mut conflict: Option<(usize, usize)> = None;
        while let Some(node) = queue.pop_front() {
            let neighbors: Vec<usize> = if node < nx {
                row_adj[node].iter().map(|&j| nx + j).collect()
            } else {
                col_adj[node - nx].clone()
            };
            for other in neighbors {
                let (i, j) = if node < nx {
                    (node, other - nx)
                } else {
                    (other, node - nx)
                };
                let here = value[node].clone().expect("queued nodes are assigned");
                match &value[other] {
                    None => {
                        value[other] = Some(h.get(i, j) - here);
                        parent[other] = Some(node);
                        order.push(other);
                        queue.push_back(other);
                    }
                    Some(there) => {
                        if parent[node] == Some(other) || conflict.is_some() {
                            continue;
                        }
                        if *h.get(i, j) != &here + there {
                            conflict = Some((node, other));
                        }
                    }
                }
            }
        }
        let mut rows: Vec<usize> = order.iter().copied().filter(|&n| n < nx).collect();
        let mut cols: Vec<usize> = order
            .iter()
            .filter(|&&n| n >= nx)
            .map(|&n| n - nx)
            .collect();
        rows.sort_unstable();
        cols.sort_unstable();
        let cells: Vec<(usize, usize)> = rows
            .iter()
            .flat_map(|&i| row_adj[i].iter().map(move |&j| (i, j)))
            .collect();
        let verdict = match conflict {
            None => ComponentVerdict::Separable(SeparableFit {
                cells: cells.clone(),
                u: rows
                    .iter()
                    .map(|&i| (i, value[i].clone().expect("component row assigned")))
                    .collect(),
                v: cols
                    .iter()
                    .map(|&j| (j, value[nx + j].clone().expect("component column assigned")))
                    .collect(),
                root,
            }),
            Some((a, b)) => {
                let witness = if options.minimal_witness {
                    shortest_witness(&support.restricted(&cells), h)
                        .expect("an unbalanced component has an unbalanced simple cycle")
                } else {
                    tree_cycle_witness(h, &parent, nx, a, b)
                };
                ComponentVerdict::Witness(witness)
            }
        };
        results.push(ComponentResult {
            root,
            rows,
            cols,
            cells,
            verdict,
        });
    }
    Ok(results)
}

/// Closes the tree paths from `a` and `b` with the edge `a — b`.
fn tree_cycle_witness(
    h: &CostMatrix,
    parent: &[Option<usize>],
    nx: usize,
    a: usize,
    b: usize,
) -> CycleWitness {
    let path_to_root = |mut v: usize| {
        let mut path = vec![v];
        while let Some(p) = parent[v] {
            path.push(p);
            v = p;
        }
        path
    };
    let pa = path_to_root(a);
    let pb = path_to_root(b);
    let on_b: BTreeSet<usize> = pb.iter().copied().collect();
    let lca_pos = pa.iter().position(|v| on_b.contains(v)).expect("same tree");
    let lca = pa[lca_pos];
    let mut cycle: Vec<usize> = pa[..=lca_pos].to_vec();
    let lca_in_b = pb
        .iter()
        .position(|&v| v == lca)
        .expect("lca on both paths");
    cycle.extend(pb[..lca_in_b].iter().rev());
    if cycle[0] >= nx {
        cycle.rotate_left(1);
    }
    let xs: Vec<usize> = cycle.iter().step_by(2).copied().collect();
    let ys: Vec<usize> = cycle.iter().skip(1).step_by(2).map(|&c| c - nx).collect();
    CycleWitness::from_path(h, &xs, &ys)
}

fn shortest_witness(support: &SupportSet, h: &CostMatrix) -> Option<CycleWitness> {
    let (nx, ny) = support.shape();
    for n in 2..=nx.min(ny) {
        let mut found = None;
        CycleSearch::new(
            nx,
            ny,
            |i, j| support.contains(i, j),
            |i, j| support.contains(i, j),
        )
        .undirected()
        .lengths(n, n)
        .run(|xs, ys| {
            let (d, s) = alternating_sums(h, xs, ys);
            if d != s {
                found = Some(CycleWitness::from_path(h, xs, ys));
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleScan {
    pub violations: Vec<CycleWitness>,
    /// Simple cycles examined.
    pub checked: usize,
    /// False when the step budget stopped the search early.
    pub complete: bool,
}

/// Default step budget for exhaustive cycle scans.
pub const DEFAULT_SCAN_BUDGET: usize = 50_000_000;

/// Enumerates every simple alternating cycle with at most `max_n` rows inside
/// `support` and reports the unbalanced ones.
pub fn cycle_scan(
    support: &SupportSet,
    h: &CostMatrix,
    max_n: usize,
    budget: usize,
) -> Result<CycleScan> {
    cycle_scan_lengths(support, h, 2, max_n, budget)
}

/// [`cycle_scan`] restricted to cycles with `min_n ..= max_n` rows.
pub fn cycle_scan_lengths(
    support: &SupportSet,
    h: &CostMatrix,
    min_n: usize,
    max_n: usize,
    budget: usize,
) -> Result<CycleScan> {
    support.check_cost(h)?;
    if max_n < 2 || min_n > max_n {
        return Err(Error::OutOfRange(format!(
            "cycle lengths {min_n}..={max_n} must satisfy 2 ≤ max_n and min_n ≤ max_n"
        )));
    }
    let (nx, ny) = support.shape();
    let mut violations = Vec::new();
    let pass = CycleSearch::new(
        nx,
        ny,
        |i, j| support.contains(i, j),
        |i, j| support.contains(i, j),
    )
    .undirected()
    .lengths(min_n, max_n)
    .budget(budget)
    .run(|xs, ys| {
        let (d, s) = alternating_sums(h, xs, ys);
        if d != s {
            violations.push(CycleWitness {
                xs: xs.to_vec(),
                ys: ys.to_vec(),
                sum_diag: d,
                sum_shift: s,
            });
        }
        ControlFlow::Continue(())
    });
    Ok(CycleScan {
        violations,
        checked: pass.cycles,
        complete: pass.complete,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadrupleMode {
    Exhaustive,
    /// Random row pairs and column pairs; incomplete rectangles are skipped.
    Sampled {
        count: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrupleScan {
    pub violations: Vec<CycleWitness>,
    /// Complete rectangles tested.
    pub checked: usize,
}

/// Tests `h(x1,y1) + h(x2,y2) = h(x1,y2) + h(x2,y1)` on rectangles in `support`.
pub fn quadruple_scan(
    support: &SupportSet,
    h: &CostMatrix,
    mode: QuadrupleMode,
) -> Result<QuadrupleScan> {
    support.check_cost(h)?;
    let (nx, ny) = support.shape();
    let mut scan = QuadrupleScan {
        violations: Vec::new(),
        checked: 0,
    };
    let test = |x1: usize, x2: usize, y1: usize, y2: usize, scan: &mut QuadrupleScan| {
        if [(x1, y1), (x2, y2), (x1, y2), (x2, y1)]
            .iter()
            .all(|&(i, j)| support.contains(i, j))
        {
            scan.checked += 1;
            let w = CycleWitness::from_path(h, &[x1, x2], &[y1, y2]);
            if w.sum_diag != w.sum_shift {
                scan.violations.push(w);
            }
        }
    };
    match mode {
        QuadrupleMode::Exhaustive => {
            for x1 in 0..nx {
                for x2 in x1 + 1..nx {
                    for y1 in 0..ny {
                        for y2 in y1 + 1..ny {
                            test(x1, x2, y1, y2, &mut scan);
                        }
                    }
                }
            }
        }
        QuadrupleMode::Sampled { count, seed } => {
            if nx >= 2 && ny >= 2 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..count {
                    let (x1, x2) = distinct_pair(&mut rng, nx);
                    let (y1, y2) = distinct_pair(&mut rng, ny);
                    test(x1, x2, y1, y2, &mut scan);
                }
            }
        }
    }
    Ok(scan)
}

fn distinct_pair(rng: &mut impl Rng, n: usize) -> (usize, usize) {
    let a = rng.gen_range(0..n);
    let mut b = rng.gen_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    (a.min(b), a.max(b))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifierConfig {
    /// Stencil width in grid steps (δ = steps · spacing).
    pub steps: usize,
    /// Cells pass when `|D| ≥ threshold · δx · δy`.
    pub threshold: f64,
    /// Fraction of stencil cells that must pass.
    pub coverage: f64,
}

impl Default for CertifierConfig {
    fn default() -> Self {
        CertifierConfig {
            steps: 1,
            threshold: 1e-9,
            coverage: 0.99,
        }
    }
}

/// Outcome of the second-difference test. `certified` is a sufficient
/// condition for non-separability only.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub certified: bool,
    pub min_abs_d: f64,
    pub min_abs_d_exact: Rational,
    pub stencil_cells: usize,
    pub fail_cells: Vec<(usize, usize)>,
    pub delta_x: Rational,
    pub delta_y: Rational,
}

/// `D_ij = h(i+k, j+k) − h(i, j+k) − h(i+k, j) + h(i, j)` for every cell
/// where the `k`-step stencil fits.
pub fn second_differences(h: &CostMatrix, steps: usize) -> Result<Matrix<Rational>> {
    let (nx, ny) = h.shape();
    if steps == 0 {
        return Err(Error::OutOfRange("stencil needs at least one step".into()));
    }
    if steps >= nx || steps >= ny {
        return Err(Error::StencilTooLarge { steps });
    }
    Ok(Matrix::from_fn(nx - steps, ny - steps, |i, j| {
        h.get(i + steps, j + steps) - h.get(i, j + steps) - h.get(i + steps, j) + h.get(i, j)
    }))
}

/// Mixed-partial sufficient test for non-separability on uniform axes.
pub fn mixed_partial_certify(
    h: &CostMatrix,
    x_axis: &GridAxis,
    y_axis: &GridAxis,
    config: CertifierConfig,
) -> Result<Certificate> {
    if h.shape() != (x_axis.len(), y_axis.len()) {
        return Err(Error::DimensionMismatch("cost does not match axes".into()));
    }
    if config.threshold.is_nan()
        || config.threshold < 0.0
        || !(0.0..=1.0).contains(&config.coverage)
    {
        return Err(Error::OutOfRange(
            "threshold must be ≥ 0 and coverage in [0, 1]".into(),
        ));
    }
    let diffs = second_differences(h, config.steps)?;
    let sx = x_axis.uniform_step().ok_or(Error::NonUniformAxis)?;
    let sy = y_axis.uniform_step().ok_or(Error::NonUniformAxis)?;
    let k = Rational::from_integer(config.steps.into());
    let (delta_x, delta_y) = (&sx * &k, &sy * &k);
    let scale = (&delta_x * &delta_y).to_f64().unwrap_or(f64::NAN);
    let bound = config.threshold * scale;
    let mut fail_cells = Vec::new();
    let mut min_abs: Option<Rational> = None;
    for ((i, j), d) in diffs.cells() {
        let a = d.abs();
        if a.to_f64().unwrap_or(f64::NAN) < bound {
            fail_cells.push((i, j));
        }
        if min_abs.as_ref().is_none_or(|m| a < *m) {
            min_abs = Some(a);
        }
    }
    let stencil_cells = diffs.as_slice().len();
    let passed = (stencil_cells - fail_cells.len()) as f64;
    let min_abs_d_exact = min_abs.unwrap_or_default();
    Ok(Certificate {
        certified: stencil_cells > 0 && passed >= config.coverage * stencil_cells as f64,
        min_abs_d: min_abs_d_exact.to_f64().unwrap_or(f64::NAN),
        min_abs_d_exact,
        stencil_cells,
        fail_cells,
        delta_x,
        delta_y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{builtin_cost, multiplicative_cost, separable_cost, BuiltinCost};
    use crate::rational::{int, rat};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&k| int(k)).collect()
    }

    #[test]
    fn separable_on_full_support() {
        let x = ints(&[0, 2, 5]);
        let y = ints(&[1, 4, 9]);
        let h = separable_cost(&x, &y);
        let support = SupportSet::full(3, 3).unwrap();
        let res = fit_separable(&support, &h, FitOptions::default()).unwrap();
        assert_eq!(res.len(), 1);
        let fit = res[0].fit().unwrap();
        assert_eq!(fit.root, 0);
        assert!(fit.holds_on(&h));
        for i in 0..3 {
            assert_eq!(fit.u[&i], &x[i] - &x[0]);
            assert_eq!(fit.v[&i], &y[i] + &x[0]);
        }
    }

    #[test]
    fn product_cost_gives_quadruple_witness() {
        let h = multiplicative_cost(&ints(&[0, 1]), &ints(&[0, 1]));
        let support = SupportSet::full(2, 2).unwrap();
        let res = fit_separable(&support, &h, FitOptions::default()).unwrap();
        let w = res[0].witness().unwrap();
        assert_eq!(w.len(), 2);
        assert!(w.verify(&h, &support));
        let mut sums = [w.sum_diag.clone(), w.sum_shift.clone()];
        sums.sort();
        assert_eq!(sums, [int(0), int(1)]);
    }

    #[test]
    fn components_are_independent() {
        // Two disjoint blocks; only the second one is non-separable.
        let mut m = Matrix::filled(4, 4, int(0));
        m[(2, 2)] = int(1);
        let h = CostMatrix::explicit(m);
        let cells = [
            (0, 0),
            (0, 1),
            (1, 0),
            (1, 1),
            (2, 2),
            (2, 3),
            (3, 2),
            (3, 3),
        ];
        let support = SupportSet::new(4, 4, cells).unwrap();
        let res = fit_separable(&support, &h, FitOptions::default()).unwrap();
        assert_eq!(res.len(), 2);
        assert!(res[0].is_separable());
        assert_eq!(res[0].rows, vec![0, 1]);
        assert_eq!(res[1].root, 2);
        assert!(res[1].witness().unwrap().verify(&h, &support));
    }

    #[test]
    fn minimal_witness_is_shortest() {
        // Long path closing into a 3-cycle plus a short unbalanced rectangle
        // that BFS from row 0 does not hit first.
        let ax = GridAxis::cell_centers(4).unwrap();
        let h = builtin_cost(BuiltinCost::NegProduct, &ax, &ax);
        let support = SupportSet::full(4, 4).unwrap();
        let res = fit_separable(
            &support,
            &h,
            FitOptions {
                minimal_witness: true,
            },
        )
        .unwrap();
        assert_eq!(res[0].witness().unwrap().len(), 2);
    }

    #[test]
    fn tree_support_is_always_separable() {
        let h = CostMatrix::explicit(Matrix::from_fn(
            3,
            3,
            |i, j| int((i * 7 + j * j * 3) as i64),
        ));
        let support = SupportSet::new(3, 3, [(0, 0), (0, 1), (1, 1), (2, 1), (2, 2)]).unwrap();
        let res = fit_separable(&support, &h, FitOptions::default()).unwrap();
        assert!(res[0].fit().unwrap().holds_on(&h));
    }

    #[test]
    fn support_set_validation() {
        assert!(SupportSet::new(2, 2, []).is_err());
        assert!(SupportSet::new(2, 2, [(2, 0)]).is_err());
    }

    #[test]
    fn quadruple_examples() {
        let support = SupportSet::full(4, 4).unwrap();
        let h = separable_cost(&ints(&[1, 2, 3, 4]), &ints(&[0, 7, 7, 1]));
        let scan = quadruple_scan(&support, &h, QuadrupleMode::Exhaustive).unwrap();
        assert_eq!(scan.checked, 36);
        assert!(scan.violations.is_empty());

        let ax = GridAxis::cell_centers(4).unwrap();
        let h = builtin_cost(BuiltinCost::NegProduct, &ax, &ax);
        let scan = quadruple_scan(&support, &h, QuadrupleMode::Exhaustive).unwrap();
        assert_eq!(scan.violations.len(), 36);
        for w in &scan.violations {
            let (x1, x2, y1, y2) = (w.xs[0], w.xs[1], w.ys[0], w.ys[1]);
            let want = -((ax.point(x1) - ax.point(x2)) * (ax.point(y1) - ax.point(y2)));
            assert_eq!(w.gap(), want);
        }

        let sampled =
            quadruple_scan(&support, &h, QuadrupleMode::Sampled { count: 50, seed: 7 }).unwrap();
        assert_eq!(sampled.checked, 50);
        assert_eq!(sampled.violations.len(), 50);
        let again =
            quadruple_scan(&support, &h, QuadrupleMode::Sampled { count: 50, seed: 7 }).unwrap();
        assert_eq!(sampled, again);
    }

    #[test]
    fn cycle_scan_rejects_short_max_n() {
        let support = SupportSet::full(2, 2).unwrap();
        let h = separable_cost(&ints(&[0, 0]), &ints(&[0, 0]));
        assert!(cycle_scan(&support, &h, 1, DEFAULT_SCAN_BUDGET).is_err());
        for n in 2..5 {
            let scan = cycle_scan(
                &SupportSet::full(4, 4).unwrap(),
                &separable_cost(&ints(&[0, 1, 5, 2]), &ints(&[3, 0, 0, 1])),
                n,
                DEFAULT_SCAN_BUDGET,
            )
            .unwrap();
            assert!(scan.violations.is_empty() && scan.complete);
        }
        let _ = support;
    }

    #[test]
    fn cycle_scan_budget_flags_partial() {
        let ax = GridAxis::cell_centers(5).unwrap();
        let h = builtin_cost(BuiltinCost::NegProduct, &ax, &ax);
        let scan = cycle_scan(&SupportSet::full(5, 5).unwrap(), &h, 5, 20).unwrap();
        assert!(!scan.complete);
    }

    fn unit_axis(n: usize) -> GridAxis {
        GridAxis::new((0..n).map(|i| rat(i as i64, (n - 1) as i64)).collect()).unwrap()
    }

    #[test]
    fn certifier_examples() {
        let ax = unit_axis(6);
        let cfg = CertifierConfig::default();
        for steps in 1..=3 {
            let cfg = CertifierConfig { steps, ..cfg };
            let delta = rat(steps as i64, 5);
            let d2 = &delta * &delta;

            let h = builtin_cost(BuiltinCost::NegProduct, &ax, &ax);
            let diffs = second_differences(&h, steps).unwrap();
            assert!(diffs.as_slice().iter().all(|d| *d == -d2.clone()));
            let cert = mixed_partial_certify(
                &h,
                &ax,
                &ax,
                CertifierConfig {
                    threshold: 1.0,
                    coverage: 1.0,
                    ..cfg
                },
            )
            .unwrap();
            assert!(cert.certified);
            assert_eq!(cert.min_abs_d_exact, d2);

            let h = builtin_cost(BuiltinCost::SqDistance, &ax, &ax);
            let diffs = second_differences(&h, steps).unwrap();
            assert!(diffs.as_slice().iter().all(|d| *d == -(int(2) * &d2)));
            assert!(mixed_partial_certify(&h, &ax, &ax, cfg).unwrap().certified);

            let pts = ax.points().to_vec();
            let h = separable_cost(&pts, &pts);
            let cert = mixed_partial_certify(&h, &ax, &ax, cfg).unwrap();
            assert!(!cert.certified);
            assert_eq!(cert.fail_cells.len(), cert.stencil_cells);
        }
    }

    #[test]
    fn certifier_errors() {
        let ax = unit_axis(3);
        let h = builtin_cost(BuiltinCost::NegProduct, &ax, &ax);
        let cfg = CertifierConfig {
            steps: 3,
            ..Default::default()
        };
        assert_eq!(
            mixed_partial_certify(&h, &ax, &ax, cfg),
            Err(Error::StencilTooLarge { steps: 3 })
        );
        let bumpy = GridAxis::new(vec![int(0), rat(1, 3), int(1)]).unwrap();
        let h = builtin_cost(BuiltinCost::NegProduct, &bumpy, &bumpy);
        assert_eq!(
            mixed_partial_certify(&h, &bumpy, &bumpy, CertifierConfig::default()),
            Err(Error::NonUniformAxis)
        );
    }
}
