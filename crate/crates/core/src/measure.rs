//! Discrete probability measures on 1-D grids, their products, and
//! transport plans.
//!
//! Everything here is exact: total masses are compared to 1 with rational
//! equality, never with a tolerance.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{format_rational, Rational};

/// Strictly increasing grid coordinates in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridAxis {
    points: Vec<Rational>,
}

impl GridAxis {
    pub fn new(points: Vec<Rational>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyAxis);
        }
        for p in &points {
            if p.is_negative() || *p > Rational::one() {
                return Err(Error::AxisOutOfRange(format_rational(p)));
            }
        }
        if let Some(k) = points.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::AxisNotIncreasing(k + 1));
        }
        Ok(GridAxis { points })
    }

    /// Cell-center grid `(i + 1/2) / n`.
    pub fn cell_centers(n: usize) -> Result<Self> {
        let two_n = Rational::from_integer((2 * n).into());
        GridAxis::new(
            (0..n)
                .map(|i| Rational::from_integer((2 * i + 1).into()) / &two_n)
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Rational {
        &self.points[i]
    }

    /// Common spacing if the points are equally spaced (and `n ≥ 2`).
    pub fn uniform_step(&self) -> Option<Rational> {
        if self.points.len() < 2 {
            return None;
        }
        let step = &self.points[1] - &self.points[0];
        self.points
            .windows(2)
            .all(|w| &w[1] - &w[0] == step)
            .then_some(step)
    }
}

fn check_weights<'a>(weights: impl IntoIterator<Item = &'a Rational>) -> Result<()> {
    let mut total = Rational::zero();
    for (index, w) in weights.into_iter().enumerate() {
        if w.is_negative() {
            return Err(Error::NegativeWeight {
                index,
                value: format_rational(w),
            });
        }
        total += w;
    }
    if !total.is_one() {
        return Err(Error::MassNotOne(format_rational(&total)));
    }
    Ok(())
}

/// Probability weights on the points of one axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscreteMeasure {
    axis: GridAxis,
    weights: Vec<Rational>,
}

impl DiscreteMeasure {
    pub fn new(axis: GridAxis, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != axis.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} grid points",
                weights.len(),
                axis.len()
            )));
        }
        check_weights(&weights)?;
        Ok(DiscreteMeasure { axis, weights })
    }

    /// Unit mass at index `i`.
    pub fn point_mass(axis: GridAxis, i: usize) -> Result<Self> {
        let weights = (0..axis.len())
            .map(|k| {
                if k == i {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        DiscreteMeasure::new(axis, weights)
    }

    pub fn axis(&self) -> &GridAxis {
        &self.axis
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &Rational {
        &self.weights[i]
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

pub fn uniform_measure(axis: GridAxis) -> DiscreteMeasure {
    let n = axis.len();
    let w = Rational::new(1.into(), n.into());
    DiscreteMeasure {
        axis,
        weights: vec![w; n],
    }
}

/// Reference measure on the product grid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JointMeasure {
    x_axis: GridAxis,
    y_axis: GridAxis,
    weights: Matrix<Rational>,
}

impl JointMeasure {
    pub fn new(x_axis: GridAxis, y_axis: GridAxis, weights: Matrix<Rational>) -> Result<Self> {
        if weights.shape() != (x_axis.len(), y_axis.len()) {
            return Err(Error::DimensionMismatch(format!(
                "joint weights {:?} on a {}x{} grid",
                weights.shape(),
                x_axis.len(),
                y_axis.len()
            )));
        }
        check_weights(weights.as_slice())?;
        Ok(JointMeasure {
            x_axis,
            y_axis,
            weights,
        })
    }

    pub fn x_axis(&self) -> &GridAxis {
        &self.x_axis
    }

    pub fn y_axis(&self) -> &GridAxis {
        &self.y_axis
    }

    pub fn weights(&self) -> &Matrix<Rational> {
        &self.weights
    }

    pub fn weight(&self, i: usize, j: usize) -> &Rational {
        &self.weights[(i, j)]
    }

    pub fn shape(&self) -> (usize, usize) {
        self.weights.shape()
    }

    pub fn marginals(&self) -> (DiscreteMeasure, DiscreteMeasure) {
        let (rows, cols) = row_col_sums(&self.weights);
        (
            DiscreteMeasure {
                axis: self.x_axis.clone(),
                weights: rows,
            },
            DiscreteMeasure {
                axis: self.y_axis.clone(),
                weights: cols,
            },
        )
    }
}

pub fn product_measure(first: &DiscreteMeasure, second: &DiscreteMeasure) -> JointMeasure {
    let weights = Matrix::from_fn(first.len(), second.len(), |i, j| {
        first.weight(i) * second.weight(j)
    });
    JointMeasure {
        x_axis: first.axis.clone(),
        y_axis: second.axis.clone(),
        weights,
    }
}

pub(crate) fn row_col_sums(m: &Matrix<Rational>) -> (Vec<Rational>, Vec<Rational>) {
    let mut rows = vec![Rational::zero(); m.rows()];
    let mut cols = vec![Rational::zero(); m.cols()];
    for ((i, j), v) in m.cells() {
        rows[i] += v;
        cols[j] += v;
    }
    (rows, cols)
}

/// Nonnegative cell masses `σ_ij` of total mass 1.
///
/// The plan alone only knows its grid; marginal and capacity contracts are
/// checked against a problem with
/// [`ConstrainedProblem::validate_plan`](crate::flow::ConstrainedProblem::validate_plan).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransportPlan {
    x_axis: GridAxis,
    y_axis: GridAxis,
    mass: Matrix<Rational>,
}

impl TransportPlan {
    pub fn new(x_axis: GridAxis, y_axis: GridAxis, mass: Matrix<Rational>) -> Result<Self> {
        if mass.shape() != (x_axis.len(), y_axis.len()) {
            return Err(Error::DimensionMismatch(format!(
                "plan {:?} on a {}x{} grid",
                mass.shape(),
                x_axis.len(),
                y_axis.len()
            )));
        }
        check_weights(mass.as_slice())?;
        Ok(TransportPlan {
            x_axis,
            y_axis,
            mass,
        })
    }

    pub fn x_axis(&self) -> &GridAxis {
        &self.x_axis
    }

    pub fn y_axis(&self) -> &GridAxis {
        &self.y_axis
    }

    pub fn mass(&self) -> &Matrix<Rational> {
        &self.mass
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.mass[(i, j)]
    }

    pub fn shape(&self) -> (usize, usize) {
        self.mass.shape()
    }

    /// Cells carrying positive mass, row-major.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mass
            .cells()
            .filter(|(_, v)| v.is_positive())
            .map(|(c, _)| c)
    }
}

/// Row and column sums of a plan.
pub fn marginals(plan: &TransportPlan) -> (DiscreteMeasure, DiscreteMeasure) {
    let (rows, cols) = row_col_sums(&plan.mass);
    (
        DiscreteMeasure {
            axis: plan.x_axis.clone(),
            weights: rows,
        },
        DiscreteMeasure {
            axis: plan.y_axis.clone(),
            weights: cols,
        },
    )
}
