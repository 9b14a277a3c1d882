use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::network::{cut_capacity, FlowInt, ScaledData, TransportNetwork};
use super::{
    ConstrainedProblem, DeficitCut, FeasibilityReport, Potentials, SolveOutcome, SolveReport,
};
use crate::matrix::Matrix;
use crate::rational::Rational;

/// Solves the capacity-constrained transport problem exactly.
///
/// Successive shortest paths with Dijkstra on reduced costs; costs are first
/// shifted by their minimum so the initial potentials can be zero. Ties in
/// the shortest-path search resolve towards the smallest node index, which
/// makes the returned basic plan deterministic.
pub fn solve(problem: &ConstrainedProblem) -> SolveOutcome {
    let data = ScaledData::new(problem);
    let flows = if data.fits_fast_path() {
        run::<i128>(&data)
    } else {
        run::<BigInt>(&data)
    };
    match flows {
        Err(report) => SolveOutcome::Infeasible(*report),
        Ok(flows) => {
            let mass = flows.map(|f| data.mass_to_rational(f));
            let plan = problem
                .plan_from_mass(mass)
                .expect("a full flow has unit total mass");
            let potentials = if data.fits_fast_path() {
                potentials::<i128>(&data, &flows)
            } else {
                potentials::<BigInt>(&data, &flows)
            };
            let cost = problem.plan_cost(&plan);
            SolveOutcome::Optimal(SolveReport {
                plan,
                cost,
                potentials,
            })
        }
    }
}

fn run<T: FlowInt>(data: &ScaledData) -> Result<Matrix<BigInt>, Box<FeasibilityReport>> {
    let shift = data
        .cost
        .as_slice()
        .iter()
        .min()
        .cloned()
        .unwrap_or_default();
    let mut tn = TransportNetwork::<T>::build(data, true, &shift);
    let (source, sink) = (tn.source(), tn.sink());
    let nodes = tn.net.nodes();
    let target = T::from_big(&data.mass_scale);
    let mut sent = T::zero();
    let mut potential = vec![T::zero(); nodes];

    while sent < target {
        let (dist, pred) = dijkstra(&tn, &potential, source);
        let Some(sink_dist) = dist[sink].clone() else {
            break;
        };
        let horizon = dist.iter().flatten().max().cloned().unwrap_or(sink_dist);
        for (p, d) in potential.iter_mut().zip(&dist) {
            *p += d.as_ref().unwrap_or(&horizon);
        }
        let mut path = Vec::new();
        let mut v = sink;
        while let Some(a) = pred[v] {
            path.push(a);
            v = tn.net.tail(a);
        }
        let mut amount = target.clone();
        amount -= &sent;
        for &a in &path {
            if tn.net.residual[a] < amount {
                amount = tn.net.residual[a].clone();
            }
        }
        for &a in &path {
            tn.net.push(a, &amount);
        }
        sent += &amount;
    }

    if sent < target {
        let (rows, cols) = tn.source_side_cut();
        let capacity = data.mass_to_rational(&cut_capacity(data, &rows, &cols));
        return Err(Box::new(FeasibilityReport {
            feasible: false,
            max_mass: data.mass_to_rational(&sent.to_big()),
            deficit_cut: Some(DeficitCut {
                rows,
                cols,
                capacity,
            }),
        }));
    }
    Ok(tn.cell_flows().map(FlowInt::to_big))
}

type Distances<T> = (Vec<Option<T>>, Vec<Option<usize>>);

fn dijkstra<T: FlowInt>(tn: &TransportNetwork<T>, potential: &[T], source: usize) -> Distances<T> {
    let net = &tn.net;
    let nodes = net.nodes();
    let mut dist: Vec<Option<T>> = vec![None; nodes];
    let mut pred = vec![None; nodes];
    let mut done = vec![false; nodes];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(T::zero());
    heap.push(Reverse((T::zero(), source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for &a in &net.adjacency[u] {
            if net.residual[a] <= T::zero() {
                continue;
            }
            let v = net.head[a];
            if done[v] {
                continue;
            }
            let mut nd = d.clone();
            nd += &net.cost[a];
            nd += &potential[u];
            nd -= &potential[v];
            if dist[v].as_ref().is_none_or(|cur| nd < *cur) {
                dist[v] = Some(nd.clone());
                pred[v] = Some(a);
                heap.push(Reverse((nd, v)));
            }
        }
    }
    (dist, pred)
}

/// Row/column duals from shortest distances in the residual bipartite graph
/// of an optimal flow (no negative cycles there). Every node starts at 0.
fn potentials<T: FlowInt>(data: &ScaledData, flows: &Matrix<BigInt>) -> Potentials {
    let (nx, ny) = (data.nx(), data.ny());
    // Nodes: rows 0..nx, columns nx..nx+ny.
    let mut arcs: Vec<(usize, usize, T)> = Vec::new();
    for ((i, j), cap) in data.cap.cells() {
        if cap.is_zero() {
            continue;
        }
        let h = T::from_big(&data.cost[(i, j)]);
        let f = &flows[(i, j)];
        if f < cap {
            arcs.push((i, nx + j, h.clone()));
        }
        if !f.is_zero() {
            arcs.push((nx + j, i, -h));
        }
    }
    let mut dist = vec![T::zero(); nx + ny];
    for round in 0..=nx + ny {
        let mut changed = false;
        for (u, v, w) in &arcs {
            let mut cand = dist[*u].clone();
            cand += w;
            if cand < dist[*v] {
                dist[*v] = cand;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        assert!(
            round < nx + ny,
            "residual graph of an optimal flow has a negative cycle"
        );
    }
    let scale = |v: T| Rational::new(v.to_big(), data.cost_scale.clone());
    Potentials {
        rows: dist[..nx].iter().map(|d| scale(-d.clone())).collect(),
        cols: dist[nx..].iter().map(|d| scale(d.clone())).collect(),
    }
}
