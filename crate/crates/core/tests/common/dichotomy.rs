use capot_core::rational::int;
use capot_core::{separable_cost, CostMatrix, Matrix, SupportSet};
use rand::Rng;

/// Random support and a cost that is separable on it about half the time;
/// the other half a separable cost is bumped on one supported cell.
pub fn random_support_cost(rng: &mut impl Rng, max_side: usize) -> (SupportSet, CostMatrix) {
    let nx = rng.gen_range(2..=max_side);
    let ny = rng.gen_range(2..=max_side);
    let density = rng.gen_range(0.4..=1.0);
    let mut cells: Vec<(usize, usize)> = (0..nx)
        .flat_map(|i| (0..ny).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    if cells.is_empty() {
        cells.push((0, 0));
    }
    let support = SupportSet::new(nx, ny, cells.clone()).unwrap();
    let u: Vec<_> = (0..nx).map(|_| int(rng.gen_range(-5..=5))).collect();
    let v: Vec<_> = (0..ny).map(|_| int(rng.gen_range(-5..=5))).collect();
    let base = separable_cost(&u, &v);
    let mut values: Matrix<_> = base.values().clone();
    match rng.gen_range(0..4) {
        0 => {}
        1 => {
            // Off-support noise never matters.
            for i in 0..nx {
                for j in 0..ny {
                    if !support.contains(i, j) {
                        values[(i, j)] = int(rng.gen_range(-20..=20));
                    }
                }
            }
        }
        2 => {
            let cell = cells[rng.gen_range(0..cells.len())];
            values[cell] += int(rng.gen_range(1..=3));
        }
        _ => values = Matrix::from_fn(nx, ny, |_, _| int(rng.gen_range(0..=10))),
    }
    (support, CostMatrix::explicit(values))
}
