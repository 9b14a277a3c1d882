//! Cost matrices `h_ij`: separable and multiplicative families, analytic
//! builtins evaluated exactly on rational grids, and explicit tables.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::measure::GridAxis;
use crate::rational::{parse_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinCost {
    /// `-x·y`
    NegProduct,
    /// `(x - y)²`
    SqDistance,
    /// `|x - y|`
    AbsDistance,
}

impl BuiltinCost {
    pub const ALL: [BuiltinCost; 3] = [
        BuiltinCost::NegProduct,
        BuiltinCost::SqDistance,
        BuiltinCost::AbsDistance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinCost::NegProduct => "neg_product",
            BuiltinCost::SqDistance => "sq_distance",
            BuiltinCost::AbsDistance => "abs_distance",
        }
    }

    pub fn eval(self, x: &Rational, y: &Rational) -> Rational {
        match self {
            BuiltinCost::NegProduct => -(x * y),
            BuiltinCost::SqDistance => {
                let d = x - y;
                &d * &d
            }
            BuiltinCost::AbsDistance => (x - y).abs(),
        }
    }
}

impl fmt::Display for BuiltinCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinCost {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BuiltinCost::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::UnknownCost(s.to_string()))
    }
}

/// Where a cost matrix came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CostProvenance {
    Separable,
    Multiplicative,
    Builtin(BuiltinCost),
    Fractal { base: usize, depth: usize },
    Explicit,
}

impl fmt::Display for CostProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostProvenance::Separable => f.write_str("separable"),
            CostProvenance::Multiplicative => f.write_str("multiplicative"),
            CostProvenance::Builtin(b) => write!(f, "builtin:{b}"),
            CostProvenance::Fractal { base, depth } => write!(f, "fractal:N={base},K={depth}"),
            CostProvenance::Explicit => f.write_str("explicit"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostMatrix {
    values: Matrix<Rational>,
    provenance: CostProvenance,
}

impl CostMatrix {
    pub fn new(values: Matrix<Rational>, provenance: CostProvenance) -> Self {
        CostMatrix { values, provenance }
    }

    pub fn explicit(values: Matrix<Rational>) -> Self {
        CostMatrix::new(values, CostProvenance::Explicit)
    }

    pub fn values(&self) -> &Matrix<Rational> {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.values[(i, j)]
    }

    pub fn shape(&self) -> (usize, usize) {
        self.values.shape()
    }

    pub fn provenance(&self) -> &CostProvenance {
        &self.provenance
    }
}

pub fn separable_cost(u: &[Rational], v: &[Rational]) -> CostMatrix {
    CostMatrix::new(
        Matrix::from_fn(u.len(), v.len(), |i, j| &u[i] + &v[j]),
        CostProvenance::Separable,
    )
}

pub fn multiplicative_cost(f: &[Rational], g: &[Rational]) -> CostMatrix {
    CostMatrix::new(
        Matrix::from_fn(f.len(), g.len(), |i, j| &f[i] * &g[j]),
        CostProvenance::Multiplicative,
    )
}

pub fn builtin_cost(kind: BuiltinCost, x_axis: &GridAxis, y_axis: &GridAxis) -> CostMatrix {
    CostMatrix::new(
        Matrix::from_fn(x_axis.len(), y_axis.len(), |i, j| {
            kind.eval(x_axis.point(i), y_axis.point(j))
        }),
        CostProvenance::Builtin(kind),
    )
}

/// Loads a rectangular table of exact numbers (`"p/q"`, integers, finite
/// decimals). Non-finite entries and ragged rows are rejected.
pub fn load_cost<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<CostMatrix> {
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || ncols == 0 {
        return Err(Error::DimensionMismatch("empty cost table".into()));
    }
    let mut data = Vec::with_capacity(rows.len() * ncols);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(Error::RaggedMatrix {
                row: r,
                got: row.len(),
                expected: ncols,
            });
        }
        for entry in row {
            data.push(parse_rational(entry.as_ref())?);
        }
    }
    Ok(CostMatrix::explicit(Matrix::from_vec(
        rows.len(),
        ncols,
        data,
    )))
}

/// Length check used when a cost is attached to a grid.
pub(crate) fn check_lengths(what: &str, got: (usize, usize), want: (usize, usize)) -> Result<()> {
    if got != want {
        return Err(Error::DimensionMismatch(format!(
            "{what} has shape {got:?}, grid is {want:?}"
        )));
    }
    Ok(())
}
