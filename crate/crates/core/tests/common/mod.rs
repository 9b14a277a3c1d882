#![allow(dead_code)]

pub mod dichotomy;

use capot_core::rational::{int, Rational};
use capot_core::{
    check_feasible, CapacityField, ConstrainedProblem, CostMatrix, DiscreteMeasure, GridAxis,
    JointMeasure, Matrix,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Positive integers normalised to a probability vector.
pub fn random_weights(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    let raw: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
    let total: i64 = raw.iter().sum();
    raw.into_iter()
        .map(|w| Rational::new(w.into(), total.into()))
        .collect()
}

/// Nonnegative table with some zero cells, normalised to total 1.
pub fn random_joint(rng: &mut impl Rng, nx: usize, ny: usize) -> Matrix<Rational> {
    loop {
        let raw: Vec<i64> = (0..nx * ny)
            .map(|_| {
                if rng.gen_bool(0.2) {
                    0
                } else {
                    rng.gen_range(1..=5)
                }
            })
            .collect();
        let total: i64 = raw.iter().sum();
        if total > 0 {
            let data = raw
                .into_iter()
                .map(|w| Rational::new(w.into(), total.into()))
                .collect();
            return Matrix::from_vec(nx, ny, data);
        }
    }
}

pub fn random_cost(rng: &mut impl Rng, nx: usize, ny: usize) -> CostMatrix {
    CostMatrix::explicit(Matrix::from_fn(nx, ny, |_, _| int(rng.gen_range(0..=10))))
}

/// Instance with random rational marginals, reference measure and density
/// bound `Φ_ij ∈ {0, 1/2, …, max_phi_halves/2}`.
pub fn random_problem(
    rng: &mut impl Rng,
    nx: usize,
    ny: usize,
    max_phi_halves: i64,
) -> ConstrainedProblem {
    let x = GridAxis::cell_centers(nx).unwrap();
    let y = GridAxis::cell_centers(ny).unwrap();
    let mu = DiscreteMeasure::new(x.clone(), random_weights(rng, nx)).unwrap();
    let nu = DiscreteMeasure::new(y.clone(), random_weights(rng, ny)).unwrap();
    let eta = JointMeasure::new(x, y, random_joint(rng, nx, ny)).unwrap();
    let phi = Matrix::from_fn(nx, ny, |_, _| {
        Rational::new(rng.gen_range(0..=max_phi_halves).into(), 2.into())
    });
    let capacity = CapacityField::new(phi, &eta).unwrap();
    let cost = random_cost(rng, nx, ny);
    ConstrainedProblem::new(mu, nu, eta, capacity, cost).unwrap()
}

/// Draws instances until one with the requested feasibility turns up.
pub fn random_problem_with(
    rng: &mut impl Rng,
    max_side: usize,
    feasible: bool,
) -> ConstrainedProblem {
    loop {
        let nx = rng.gen_range(1..=max_side);
        let ny = rng.gen_range(1..=max_side);
        let p = random_problem(rng, nx, ny, 10);
        if check_feasible(&p).feasible == feasible {
            return p;
        }
    }
}

/// Average of optimal plans for several random costs: feasible, and usually
/// with room to move along cycles.
pub fn blended_plan(
    rng: &mut impl Rng,
    p: &ConstrainedProblem,
) -> Option<capot_core::TransportPlan> {
    let (nx, ny) = p.shape();
    let mut total = Matrix::filled(nx, ny, Rational::from_integer(0.into()));
    let k = 3;
    for _ in 0..k {
        let q = ConstrainedProblem::new(
            p.mu().clone(),
            p.nu().clone(),
            p.eta().clone(),
            p.capacity().clone(),
            random_cost(rng, nx, ny),
        )
        .unwrap();
        let plan = capot_core::solve(&q).into_optimal()?.plan;
        for ((i, j), v) in plan.mass().cells() {
            total[(i, j)] += v;
        }
    }
    p.plan_from_mass(total.map(|v| v / int(k))).ok()
}

/// Distinct rows and columns for a random cycle with `2 ≤ n ≤ min(nx, ny)`.
pub fn random_cycle_indices(rng: &mut impl Rng, nx: usize, ny: usize) -> (Vec<usize>, Vec<usize>) {
    use rand::seq::SliceRandom;
    let n = rng.gen_range(2..=nx.min(ny));
    let mut rows: Vec<usize> = (0..nx).collect();
    let mut cols: Vec<usize> = (0..ny).collect();
    rows.shuffle(rng);
    cols.shuffle(rng);
    (rows[..n].to_vec(), cols[..n].to_vec())
}
