//! Instance builders shared by the benchmarks.

use capot_core::rational::int;
use capot_core::{BuiltinCost, ConstrainedProblem, RefineFamily};

/// Uniform `n × n` problem with a builtin cost and constant bound `phi`.
pub fn uniform_problem(cost: BuiltinCost, n: usize, phi: i64) -> ConstrainedProblem {
    RefineFamily {
        cost,
        phi: int(phi),
    }
    .problem(n)
    .expect("valid grid")
}
