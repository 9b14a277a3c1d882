//! JSON fragments shared by the commands. Exact values are `{"exact": "p/q",
//! "decimal": "..."}` pairs.

use capot_core::{
    rational_json, AlternatingCycle, ComponentResult, CycleWitness, FeasibilityReport, InteriorSet,
    Potentials, Rational, SeparableFit, TransportPlan, Uniqueness,
};
use serde_json::{json, Map, Value};

pub fn rationals(values: &[Rational]) -> Value {
    Value::Array(values.iter().map(rational_json).collect())
}

pub fn cells(cells: &[(usize, usize)]) -> Value {
    Value::Array(cells.iter().map(|&(i, j)| json!([i, j])).collect())
}

pub fn potentials(p: &Potentials) -> Value {
    json!({"rows": rationals(&p.rows), "cols": rationals(&p.cols)})
}

pub fn interior(set: &InteriorSet) -> Value {
    let mut out = json!({
        "cells": cells(&set.cells),
        "count": set.len(),
        "eta_mass": rational_json(&set.eta_mass),
    });
    if let Some(eps) = &set.epsilon {
        out["epsilon"] = rational_json(eps);
    }
    out
}

pub fn cycle(c: &AlternatingCycle) -> Value {
    json!({"xs": c.xs, "ys": c.ys, "gain": rational_json(&c.gain)})
}

pub fn witness(w: &CycleWitness) -> Value {
    json!({
        "length": w.len(),
        "xs": w.xs,
        "ys": w.ys,
        "sum_diag": rational_json(&w.sum_diag),
        "sum_shift": rational_json(&w.sum_shift),
        "gap": rational_json(&w.gap()),
    })
}

fn potential_map(values: &std::collections::BTreeMap<usize, Rational>) -> Value {
    let map: Map<String, Value> = values
        .iter()
        .map(|(k, v)| (k.to_string(), rational_json(v)))
        .collect();
    Value::Object(map)
}

pub fn fit(f: &SeparableFit) -> Value {
    json!({"root": f.root, "u": potential_map(&f.u), "v": potential_map(&f.v)})
}

pub fn component(c: &ComponentResult) -> Value {
    let mut out = json!({
        "root": c.root,
        "rows": c.rows,
        "cols": c.cols,
        "cells": c.cells.len(),
    });
    if let Some(f) = c.fit() {
        out["fit"] = fit(f);
    }
    if let Some(w) = c.witness() {
        out["witness"] = witness(w);
    }
    out
}

pub fn infeasible(f: &FeasibilityReport) -> Value {
    let cut = f.deficit_cut.as_ref().map(|c| {
        json!({
            "rows": c.rows,
            "cols": c.cols,
            "capacity": rational_json(&c.capacity),
        })
    });
    json!({
        "status": "infeasible",
        "max_mass": rational_json(&f.max_mass),
        "deficit_cut": cut,
    })
}

/// `(label, witnesses)` for a uniqueness verdict.
pub fn uniqueness(u: &Uniqueness) -> (Value, Option<Value>) {
    let witnesses = match u {
        Uniqueness::NonUnique(c) => Some(json!([cycle(c)])),
        _ => None,
    };
    (Value::String(u.label().into()), witnesses)
}

/// Nonzero cells as `[i, j, mass]` triples.
pub fn plan(p: &TransportPlan) -> Value {
    Value::Array(
        p.support()
            .map(|(i, j)| json!([i, j, rational_json(p.get(i, j))]))
            .collect(),
    )
}

pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialise");
    s.push('\n');
    s
}
