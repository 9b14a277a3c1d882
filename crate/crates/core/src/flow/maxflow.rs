use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::Zero;

use super::network::{cut_capacity, FlowInt, ScaledData, TransportNetwork};
use super::{ConstrainedProblem, DeficitCut, FeasibilityReport};

/// Decides whether the plan set is nonempty by a max-flow computation
/// (shortest augmenting paths), independent of the cost-aware solver.
///
/// When infeasible, the report carries the shortfall and the source side of
/// a minimum cut certifying it.
pub fn check_feasible(problem: &ConstrainedProblem) -> FeasibilityReport {
    let data = ScaledData::new(problem);
    if data.fits_fast_path() {
        max_flow::<i128>(&data)
    } else {
        max_flow::<BigInt>(&data)
    }
}

fn max_flow<T: FlowInt>(data: &ScaledData) -> FeasibilityReport {
    let mut tn = TransportNetwork::<T>::build(data, false, &BigInt::zero());
    let (source, sink) = (tn.source(), tn.sink());
    let nodes = tn.net.nodes();
    let mut total = T::zero();
    loop {
        let mut pred: Vec<Option<usize>> = vec![None; nodes];
        let mut seen = vec![false; nodes];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for &a in &tn.net.adjacency[u] {
                let v = tn.net.head[a];
                if !seen[v] && tn.net.residual[a] > T::zero() {
                    seen[v] = true;
                    pred[v] = Some(a);
                    queue.push_back(v);
                }
            }
        }
        if !seen[sink] {
            break;
        }
        let mut path = Vec::new();
        let mut v = sink;
        while let Some(a) = pred[v] {
            path.push(a);
            v = tn.net.tail(a);
        }
        let bottleneck = path
            .iter()
            .map(|&a| tn.net.residual[a].clone())
            .min()
            .expect("augmenting path is nonempty");
        for &a in &path {
            tn.net.push(a, &bottleneck);
        }
        total += &bottleneck;
    }
    let moved = total.to_big();
    let feasible = moved == data.mass_scale;
    let deficit_cut = (!feasible).then(|| {
        let (rows, cols) = tn.source_side_cut();
        let capacity = data.mass_to_rational(&cut_capacity(data, &rows, &cols));
        DeficitCut {
            rows,
            cols,
            capacity,
        }
    });
    FeasibilityReport {
        feasible,
        max_mass: data.mass_to_rational(&moved),
        deficit_cut,
    }
}
