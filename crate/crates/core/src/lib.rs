//! Exact toolkit for discrete optimal transport under density constraints.
//!
//! Plans `σ` on a product grid must have prescribed marginals `μ`, `ν` and
//! satisfy `σ_ij ≤ Φ_ij η_ij` for a reference measure `η`. The crate solves
//! such problems exactly, decides whether a cost is separable (`u(x) + v(y)`)
//! on a support set, probes the 0-or-cap structure and uniqueness of optimal
//! plans, and builds the classic degenerate and fractal boundary examples.
//!
//! All data are arbitrary-precision rationals; no comparison anywhere in the
//! solver or the structural checks involves rounding.

pub mod cost;
pub mod counterexample;
mod cycles;
pub mod error;
pub mod flow;
pub mod matrix;
pub mod measure;
pub mod nondegeneracy;
pub mod rational;
pub mod schema;
pub mod structure;

pub use cost::{
    builtin_cost, load_cost, multiplicative_cost, separable_cost, BuiltinCost, CostMatrix,
    CostProvenance,
};
pub use counterexample::{
    degenerate_instance, escape_check, fractal_eta, fractal_h, fractal_problem,
    verify_fractal_claims, verify_nonuniqueness, DegeneratePreset, FractalReport, FractalSpec,
    NonUniquenessReport,
};
pub use error::{Error, Result};
pub use flow::{
    brute_force_oracle, check_feasible, solve, CapacityField, ConstrainedProblem, DeficitCut,
    FeasibilityReport, OracleResult, Potentials, SolveOutcome, SolveReport, SolveStatus,
};
pub use matrix::Matrix;
pub use measure::{
    marginals, product_measure, uniform_measure, DiscreteMeasure, GridAxis, JointMeasure,
    TransportPlan,
};
pub use nondegeneracy::{
    cycle_scan, fit_separable, mixed_partial_certify, quadruple_scan, Certificate, CertifierConfig,
    ComponentResult, ComponentVerdict, CycleScan, CycleWitness, FitOptions, QuadrupleMode,
    QuadrupleScan, SeparableFit, SupportSet,
};
pub use rational::{parse_rational, Rational};
pub use schema::{parse_problem, problem_from_value, problem_to_value, rational_json};
pub use structure::{
    apply_cycle, apply_full_step, bang_bang_profile, find_improving_cycle, find_zero_cost_cycle,
    interior_set, max_step, open_interior, probe_uniqueness, AlternatingCycle, ImprovingSearch,
    InteriorSet, ProfileRow, RefineFamily, Uniqueness,
};
