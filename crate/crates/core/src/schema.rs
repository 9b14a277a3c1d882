//! JSON problem files.
//!
//! ```json
//! {
//!   "grid": {"nx": 2, "ny": 2, "coords": {"x": ["1/4", "3/4"], "y": ["1/4", "3/4"]}},
//!   "mu": {"uniform": 2},
//!   "nu": {"n": 2, "weights": ["1/2", "1/2"]},
//!   "eta": "product",
//!   "phi": "2",
//!   "cost": {"type": "builtin", "name": "neg_product"}
//! }
//! ```
//!
//! Numbers are exact: `"p/q"` strings, integers, or finite decimals. `coords`
//! defaults to cell centers. `eta` is `"product"` (of `mu` and `nu`), a
//! matrix, or `{"type": "fractal", "N": .., "K": ..}`. `phi` is a scalar or a
//! matrix. Cost types: `separable` (`u`, `v`), `multiplicative` (`f`, `g`),
//! `builtin` (`name`), `explicit` (`values`), `fractal` (`N`, `K`).
//!
//! Errors carry a JSON path such as `$.mu.weights[2]`.

use serde_json::{json, Map, Value};

use crate::cost::{
    builtin_cost, multiplicative_cost, separable_cost, BuiltinCost, CostMatrix, CostProvenance,
};
use crate::counterexample::{fractal_eta, fractal_h, FractalSpec};
use crate::error::{Error, Result};
use crate::flow::{CapacityField, ConstrainedProblem};
use crate::matrix::Matrix;
use crate::measure::{product_measure, uniform_measure, DiscreteMeasure, GridAxis, JointMeasure};
use crate::rational::{decimal_string, format_rational, parse_rational, Rational};

/// Significant digits of the decimal companions written next to exact values.
pub const DECIMAL_DIGITS: usize = 12;

/// `{"exact": "p/q", "decimal": "0.25"}`
pub fn rational_json(value: &Rational) -> Value {
    json!({
        "exact": format_rational(value),
        "decimal": decimal_string(value, DECIMAL_DIGITS),
    })
}

fn strings(values: &[Rational]) -> Value {
    Value::Array(
        values
            .iter()
            .map(|v| Value::String(format_rational(v)))
            .collect(),
    )
}

fn matrix_json(m: &Matrix<Rational>) -> Value {
    Value::Array((0..m.rows()).map(|i| strings(m.row(i))).collect())
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::schema(path, format!("missing field {key:?}")))
}

fn object<'a>(value: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    value
        .as_object()
        .ok_or_else(|| Error::schema(path, "expected an object"))
}

fn count(value: &Value, path: &str) -> Result<usize> {
    value
        .as_u64()
        .and_then(|v| usize::try_from(v).ok())
        .filter(|&v| v > 0)
        .ok_or_else(|| Error::schema(path, "expected a positive integer"))
}

fn number(value: &Value, path: &str) -> Result<Rational> {
    let text = match value {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(Error::schema(path, "expected a number or \"p/q\" string")),
    };
    parse_rational(&text).map_err(|e| Error::schema(path, e.to_string()))
}

fn vector(value: &Value, path: &str, len: Option<usize>) -> Result<Vec<Rational>> {
    let items = value
        .as_array()
        .ok_or_else(|| Error::schema(path, "expected an array"))?;
    if let Some(n) = len {
        if items.len() != n {
            return Err(Error::schema(
                path,
                format!("expected {n} entries, got {}", items.len()),
            ));
        }
    }
    items
        .iter()
        .enumerate()
        .map(|(k, v)| number(v, &format!("{path}[{k}]")))
        .collect()
}

fn matrix(value: &Value, path: &str, shape: (usize, usize)) -> Result<Matrix<Rational>> {
    let rows = value
        .as_array()
        .ok_or_else(|| Error::schema(path, "expected an array of rows"))?;
    if rows.len() != shape.0 {
        return Err(Error::schema(
            path,
            format!("expected {} rows, got {}", shape.0, rows.len()),
        ));
    }
    let mut data = Vec::with_capacity(shape.0 * shape.1);
    for (i, row) in rows.iter().enumerate() {
        data.extend(vector(row, &format!("{path}[{i}]"), Some(shape.1))?);
    }
    Ok(Matrix::from_vec(shape.0, shape.1, data))
}

fn fractal_spec(obj: &Map<String, Value>, path: &str) -> Result<FractalSpec> {
    let n = count(field(obj, path, "N")?, &format!("{path}.N"))?;
    let k = count(field(obj, path, "K")?, &format!("{path}.K"))?;
    FractalSpec::new(n, k).map_err(|e| Error::schema(path, e.to_string()))
}

fn axis(grid: &Map<String, Value>, key: &str, n: usize) -> Result<GridAxis> {
    let path = format!("$.grid.coords.{key}");
    match grid.get("coords") {
        None => GridAxis::cell_centers(n),
        Some(coords) => {
            let coords = object(coords, "$.grid.coords")?;
            let points = vector(field(coords, "$.grid.coords", key)?, &path, Some(n))?;
            GridAxis::new(points).map_err(|e| Error::schema(&path, e.to_string()))
        }
    }
}

fn measure(value: &Value, path: &str, axis: &GridAxis) -> Result<DiscreteMeasure> {
    let obj = object(value, path)?;
    if let Some(u) = obj.get("uniform") {
        let n = count(u, &format!("{path}.uniform"))?;
        if n != axis.len() {
            return Err(Error::schema(
                path,
                format!("uniform over {n} points on an axis of {}", axis.len()),
            ));
        }
        return Ok(uniform_measure(axis.clone()));
    }
    if let Some(n) = obj.get("n") {
        if count(n, &format!("{path}.n"))? != axis.len() {
            return Err(Error::schema(
                format!("{path}.n"),
                "does not match the grid",
            ));
        }
    }
    let wpath = format!("{path}.weights");
    let weights = vector(field(obj, path, "weights")?, &wpath, Some(axis.len()))?;
    DiscreteMeasure::new(axis.clone(), weights).map_err(|e| Error::schema(wpath, e.to_string()))
}

fn cost(value: &Value, x: &GridAxis, y: &GridAxis) -> Result<CostMatrix> {
    let path = "$.cost";
    let obj = object(value, path)?;
    let kind = field(obj, path, "type")?
        .as_str()
        .ok_or_else(|| Error::schema("$.cost.type", "expected a string"))?;
    let sub = |key: &str| format!("$.cost.{key}");
    let h = match kind {
        "separable" | "multiplicative" => {
            let (a, b) = if kind == "separable" {
                ("u", "v")
            } else {
                ("f", "g")
            };
            let first = vector(field(obj, path, a)?, &sub(a), Some(x.len()))?;
            let second = vector(field(obj, path, b)?, &sub(b), Some(y.len()))?;
            if kind == "separable" {
                separable_cost(&first, &second)
            } else {
                multiplicative_cost(&first, &second)
            }
        }
        "builtin" => {
            let name = field(obj, path, "name")?
                .as_str()
                .ok_or_else(|| Error::schema(sub("name"), "expected a string"))?;
            let b: BuiltinCost = name
                .parse()
                .map_err(|e: Error| Error::schema(sub("name"), e.to_string()))?;
            builtin_cost(b, x, y)
        }
        "explicit" => CostMatrix::explicit(matrix(
            field(obj, path, "values")?,
            &sub("values"),
            (x.len(), y.len()),
        )?),
        "fractal" => {
            let spec = fractal_spec(obj, path)?;
            if spec.side() != x.len() || spec.side() != y.len() {
                return Err(Error::schema(
                    path,
                    format!("fractal side {} does not match the grid", spec.side()),
                ));
            }
            fractal_h(&spec)
        }
        other => {
            return Err(Error::schema(
                "$.cost.type",
                format!("unknown cost type {other:?}"),
            ))
        }
    };
    Ok(h)
}

/// Parses a problem document already loaded as JSON.
pub fn problem_from_value(doc: &Value) -> Result<ConstrainedProblem> {
    let root = object(doc, "$")?;
    let grid = object(field(root, "$", "grid")?, "$.grid")?;
    let nx = count(field(grid, "$.grid", "nx")?, "$.grid.nx")?;
    let ny = count(field(grid, "$.grid", "ny")?, "$.grid.ny")?;
    let x = axis(grid, "x", nx)?;
    let y = axis(grid, "y", ny)?;
    let mu = measure(field(root, "$", "mu")?, "$.mu", &x)?;
    let nu = measure(field(root, "$", "nu")?, "$.nu", &y)?;

    let eta_value = field(root, "$", "eta")?;
    let eta = match eta_value {
        Value::String(s) if s == "product" => product_measure(&mu, &nu),
        Value::String(s) => {
            return Err(Error::schema(
                "$.eta",
                format!("unknown reference measure {s:?}"),
            ))
        }
        Value::Object(obj) => {
            if obj.get("type").and_then(Value::as_str) != Some("fractal") {
                return Err(Error::schema("$.eta.type", "expected \"fractal\""));
            }
            let spec = fractal_spec(obj, "$.eta")?;
            if spec.side() != nx || spec.side() != ny {
                return Err(Error::schema(
                    "$.eta",
                    "fractal side does not match the grid",
                ));
            }
            let f = fractal_eta(&spec);
            JointMeasure::new(x.clone(), y.clone(), f.weights().clone())?
        }
        other => {
            let w = matrix(other, "$.eta", (nx, ny))?;
            JointMeasure::new(x.clone(), y.clone(), w)
                .map_err(|e| Error::schema("$.eta", e.to_string()))?
        }
    };

    let phi_value = field(root, "$", "phi")?;
    let phi = match phi_value {
        Value::Array(_) => matrix(phi_value, "$.phi", (nx, ny))?,
        other => Matrix::filled(nx, ny, number(other, "$.phi")?),
    };
    let capacity =
        CapacityField::new(phi, &eta).map_err(|e| Error::schema("$.phi", e.to_string()))?;
    let h = cost(field(root, "$", "cost")?, &x, &y)?;
    ConstrainedProblem::new(mu, nu, eta, capacity, h)
}

/// Parses a problem document from text.
pub fn parse_problem(text: &str) -> Result<ConstrainedProblem> {
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        Error::schema(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    problem_from_value(&doc)
}

/// Writes a problem so that [`problem_from_value`] rebuilds it exactly.
/// Builtin and fractal costs are written by name; other costs as matrices.
pub fn problem_to_value(problem: &ConstrainedProblem) -> Value {
    let (nx, ny) = problem.shape();
    let eta = problem.eta();
    let cost = match problem.cost().provenance() {
        CostProvenance::Builtin(b) => json!({"type": "builtin", "name": b.name()}),
        CostProvenance::Fractal { base, depth } => {
            json!({"type": "fractal", "N": base, "K": depth})
        }
        _ => json!({"type": "explicit", "values": matrix_json(problem.cost().values())}),
    };
    let phi = problem.capacity().phi();
    let phi = match phi.as_slice().first() {
        Some(first) if phi.as_slice().iter().all(|v| v == first) => {
            Value::String(format_rational(first))
        }
        _ => matrix_json(phi),
    };
    json!({
        "grid": {
            "nx": nx,
            "ny": ny,
            "coords": {
                "x": strings(eta.x_axis().points()),
                "y": strings(eta.y_axis().points()),
            },
        },
        "mu": {"n": nx, "weights": strings(problem.mu().weights())},
        "nu": {"n": ny, "weights": strings(problem.nu().weights())},
        "eta": matrix_json(eta.weights()),
        "phi": phi,
        "cost": cost,
    })
}
