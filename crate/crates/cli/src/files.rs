//! Plan and support CSV files, problem loading, output placement.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use capot_core::rational::{format_rational, parse_rational};
use capot_core::{parse_problem, ConstrainedProblem, Matrix, Rational, SupportSet, TransportPlan};
use num_traits::Zero;

pub const PLAN_HEADER: [&str; 7] = ["i", "j", "x", "y", "sigma", "cap", "eta"];

pub fn load_problem(path: &Path) -> Result<ConstrainedProblem> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_problem(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Nonzero cells of the plan, one row each.
pub fn plan_csv(plan: &TransportPlan, problem: &ConstrainedProblem) -> Result<String> {
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(PLAN_HEADER)?;
    for ((i, j), sigma) in plan.mass().cells() {
        if sigma.is_zero() {
            continue;
        }
        out.write_record([
            i.to_string(),
            j.to_string(),
            format_rational(plan.x_axis().point(i)),
            format_rational(plan.y_axis().point(j)),
            format_rational(sigma),
            format_rational(problem.cap(i, j)),
            format_rational(problem.eta().weight(i, j)),
        ])?;
    }
    Ok(String::from_utf8(out.into_inner()?)?)
}

fn column(headers: &csv::StringRecord, name: &str) -> Option<usize> {
    headers.iter().position(|h| h.trim() == name)
}

/// Reads a plan CSV and checks it against the problem: coordinates, caps and
/// reference weights when present, then marginals and bounds.
pub fn read_plan(path: &Path, problem: &ConstrainedProblem) -> Result<TransportPlan> {
    let mut reader =
        csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let headers = reader.headers()?.clone();
    let (Some(ci), Some(cj), Some(cs)) = (
        column(&headers, "i"),
        column(&headers, "j"),
        column(&headers, "sigma"),
    ) else {
        bail!("{}: header must contain i, j and sigma", path.display());
    };
    let (nx, ny) = problem.shape();
    let mut mass = Matrix::filled(nx, ny, Rational::from_integer(0.into()));
    let mut seen = Matrix::filled(nx, ny, false);
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        let at = |c: usize| record.get(c).unwrap_or("").trim();
        let here = || format!("{} line {}", path.display(), line + 2);
        let i: usize = at(ci)
            .parse()
            .with_context(|| format!("{}: bad row index", here()))?;
        let j: usize = at(cj)
            .parse()
            .with_context(|| format!("{}: bad column index", here()))?;
        if i >= nx || j >= ny {
            bail!("{}: cell ({i}, {j}) outside the {nx}×{ny} grid", here());
        }
        if std::mem::replace(&mut seen[(i, j)], true) {
            bail!("{}: cell ({i}, {j}) listed twice", here());
        }
        mass[(i, j)] = parse_rational(at(cs)).with_context(|| format!("{}: sigma", here()))?;
        let checks: [(&str, &Rational); 4] = [
            ("x", problem.eta().x_axis().point(i)),
            ("y", problem.eta().y_axis().point(j)),
            ("cap", problem.cap(i, j)),
            ("eta", problem.eta().weight(i, j)),
        ];
        for (name, want) in checks {
            if let Some(c) = column(&headers, name) {
                let got = parse_rational(at(c)).with_context(|| format!("{}: {name}", here()))?;
                if got != *want {
                    bail!(
                        "{}: {name} is {} but the problem has {}",
                        here(),
                        format_rational(&got),
                        format_rational(want)
                    );
                }
            }
        }
    }
    let plan = problem
        .plan_from_mass(mass)
        .with_context(|| format!("{} is not a probability plan on the grid", path.display()))?;
    problem
        .validate_plan(&plan)
        .with_context(|| format!("{} is not admissible", path.display()))?;
    Ok(plan)
}

/// `i,j` pairs, with or without a header row.
pub fn read_support(path: &Path, shape: (usize, usize)) -> Result<SupportSet> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut cells = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        let (Some(a), Some(b)) = (record.get(0), record.get(1)) else {
            bail!("{} line {}: expected i,j", path.display(), line + 1);
        };
        match (a.trim().parse::<usize>(), b.trim().parse::<usize>()) {
            (Ok(i), Ok(j)) => cells.push((i, j)),
            _ if line == 0 => continue,
            _ => bail!("{} line {}: expected i,j", path.display(), line + 1),
        }
    }
    Ok(SupportSet::new(shape.0, shape.1, cells)?)
}

/// Resolves where an output goes: explicit path, else `dir/default_name`.
pub fn output_path(
    explicit: Option<&Path>,
    dir: Option<&Path>,
    default_name: &str,
) -> Option<PathBuf> {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| dir.map(|d| d.join(default_name)))
}

pub fn write(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}
