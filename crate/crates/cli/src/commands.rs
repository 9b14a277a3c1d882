use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use capot_core::nondegeneracy::DEFAULT_SCAN_BUDGET;
use capot_core::rational::{decimal_string, format_rational, parse_rational};
use capot_core::schema::DECIMAL_DIGITS;
use capot_core::structure::{potentials_for_plan, saturated_cells};
use capot_core::{
    bang_bang_profile, cycle_scan, find_improving_cycle, fit_separable, fractal_problem,
    interior_set, mixed_partial_certify, open_interior, probe_uniqueness, problem_to_value,
    quadruple_scan, rational_json, solve, verify_fractal_claims, verify_nonuniqueness, BuiltinCost,
    CertifierConfig, CycleScan, DegeneratePreset, FitOptions, FractalSpec, QuadrupleMode,
    RefineFamily, SolveOutcome, SolveReport, SupportSet,
};
use serde_json::{json, Value};

use crate::files::{load_problem, output_path, plan_csv, read_plan, read_support, write};
use crate::{report, AnalyzeArgs, CertifyArgs, DegenerateArgs, FractalArgs, RefineArgs, SolveArgs};
use crate::{EXIT_INFEASIBLE, EXIT_OK, EXIT_SEPARABLE};

/// Writes `text` to the resolved path, or stdout when there is none.
fn emit(text: &str, explicit: Option<&Path>, dir: Option<&Path>, name: &str) -> Result<()> {
    match output_path(explicit, dir, name) {
        Some(path) => write(&path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn timings(start: Instant) -> Value {
    json!({"total_ms": start.elapsed().as_secs_f64() * 1e3})
}

pub fn solve_cmd(args: &SolveArgs) -> Result<u8> {
    let start = Instant::now();
    let problem = load_problem(&args.problem)?;
    let dir = args.out_dir.as_deref();
    let (mut doc, code) = match solve(&problem) {
        SolveOutcome::Infeasible(f) => (report::infeasible(&f), EXIT_INFEASIBLE),
        SolveOutcome::Optimal(rep) => {
            if let Some(path) = output_path(args.out.as_deref(), dir, "plan.csv") {
                write(&path, &plan_csv(&rep.plan, &problem)?)?;
            }
            (optimal_report(&rep, &problem, args.max_n), EXIT_OK)
        }
    };
    doc["timings"] = timings(start);
    emit(
        &report::to_text(&doc),
        args.report.as_deref(),
        dir,
        "report.json",
    )?;
    Ok(code)
}

fn optimal_report(
    rep: &SolveReport,
    problem: &capot_core::ConstrainedProblem,
    max_n: Option<usize>,
) -> Value {
    let interior = open_interior(&rep.plan, problem);
    let (label, witnesses) = report::uniqueness(&probe_uniqueness(rep, problem, max_n));
    let mut doc = json!({
        "status": "optimal",
        "cost": rational_json(&rep.cost),
        "potentials": report::potentials(&rep.potentials),
        "interior": report::interior(&interior),
        "saturated_cells": saturated_cells(&rep.plan, problem).len(),
        "support_cells": rep.plan.support().count(),
        "uniqueness": label,
    });
    if let Some(w) = witnesses {
        doc["witnesses"] = w;
    }
    doc
}

fn scan_json(scan: &CycleScan, max_n: usize) -> Value {
    let summary = match (scan.violations.is_empty(), scan.complete) {
        (true, true) => format!("no violation at n≤{max_n}"),
        (true, false) => format!("no violation found at n≤{max_n} (budget exhausted)"),
        (false, _) => format!("{} violations at n≤{max_n}", scan.violations.len()),
    };
    json!({
        "max_n": max_n,
        "checked": scan.checked,
        "complete": scan.complete,
        "violations": scan.violations.len(),
        "first_violation": scan.violations.first().map(report::witness),
        "summary": summary,
    })
}

pub fn certify(args: &CertifyArgs) -> Result<u8> {
    let start = Instant::now();
    let problem = load_problem(&args.problem)?;
    let h = problem.cost();
    let support = match args.support.as_str() {
        "from-eta" => SupportSet::from_eta(problem.eta())?,
        path => read_support(Path::new(path), problem.shape())?,
    };
    let components = fit_separable(
        &support,
        h,
        FitOptions {
            minimal_witness: true,
        },
    )?;
    let scan = cycle_scan(&support, h, args.max_n, DEFAULT_SCAN_BUDGET)?;
    let mode = if args.exhaustive {
        QuadrupleMode::Exhaustive
    } else {
        QuadrupleMode::Sampled {
            count: args.samples,
            seed: args.seed,
        }
    };
    let quads = quadruple_scan(&support, h, mode)?;
    let eta = problem.eta();
    let certifier =
        match mixed_partial_certify(h, eta.x_axis(), eta.y_axis(), CertifierConfig::default()) {
            Ok(c) => json!({
                "applicable": true,
                "certified": c.certified,
                "min_abs_d": rational_json(&c.min_abs_d_exact),
                "stencil_cells": c.stencil_cells,
                "fail_cells": c.fail_cells.len(),
                "delta_x": rational_json(&c.delta_x),
                "delta_y": rational_json(&c.delta_y),
            }),
            Err(e) => json!({"applicable": false, "reason": e.to_string()}),
        };
    let separable = components.iter().filter(|c| c.is_separable()).count();
    let verdict = if separable == 0 {
        "non-degenerate"
    } else {
        "degenerate"
    };
    let doc = json!({
        "verdict": verdict,
        "support_cells": support.len(),
        "components": components.iter().map(report::component).collect::<Vec<_>>(),
        "separable_components": separable,
        "cycle_scan": scan_json(&scan, args.max_n),
        "quadruple_stats": {
            "mode": if args.exhaustive { "exhaustive".to_string() } else { format!("sampled(seed={})", args.seed) },
            "checked": quads.checked,
            "violations": quads.violations.len(),
            "first_violation": quads.violations.first().map(report::witness),
        },
        "certifier": certifier,
        "timings": timings(start),
    });
    emit(
        &report::to_text(&doc),
        args.report.as_deref(),
        args.out_dir.as_deref(),
        "certify.json",
    )?;
    Ok(if separable == 0 {
        EXIT_OK
    } else {
        EXIT_SEPARABLE
    })
}

pub fn analyze(args: &AnalyzeArgs) -> Result<u8> {
    let start = Instant::now();
    let problem = load_problem(&args.problem)?;
    let plan = read_plan(&args.plan, &problem)?;
    let epsilon = parse_rational(&args.epsilon).context("--epsilon")?;
    let cost = problem.plan_cost(&plan);
    let improving = find_improving_cycle(&plan, &problem, args.max_n)?;
    let optimal = improving.complete && improving.cycle.is_none();
    let mut doc = json!({
        "cost": rational_json(&cost),
        "interior": report::interior(&open_interior(&plan, &problem)),
        "epsilon_interior": report::interior(&interior_set(&plan, &problem, &epsilon)?),
        "saturated_cells": saturated_cells(&plan, &problem).len(),
        "support_cells": plan.support().count(),
        "improving_cycle": {
            "found": improving.cycle.as_ref().map(report::cycle),
            "complete": improving.complete,
        },
        "optimal": if optimal { json!(true) } else if improving.cycle.is_some() { json!(false) } else { Value::Null },
    });
    if args.probe_uniqueness {
        let label = match (optimal, potentials_for_plan(&plan, &problem)?) {
            (true, Some(potentials)) => {
                let rep = SolveReport {
                    plan: plan.clone(),
                    cost,
                    potentials,
                };
                let (label, witnesses) =
                    report::uniqueness(&probe_uniqueness(&rep, &problem, args.max_n));
                if let Some(w) = witnesses {
                    doc["witnesses"] = w;
                }
                label
            }
            _ => json!("unknown"),
        };
        doc["uniqueness"] = label;
    }
    doc["timings"] = timings(start);
    emit(
        &report::to_text(&doc),
        args.report.as_deref(),
        args.out_dir.as_deref(),
        "analyze.json",
    )?;
    Ok(EXIT_OK)
}

pub fn refine(args: &RefineArgs) -> Result<u8> {
    let cost: BuiltinCost = args.cost.parse()?;
    let phi = parse_rational(&args.phi).context("--phi")?;
    let rows = bang_bang_profile(&RefineFamily { cost, phi }, &args.grids)?;
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record([
        "n",
        "interior_cells",
        "interior_eta_mass",
        "interior_eta_mass_decimal",
        "mass_bound",
        "opt_cost",
        "opt_cost_decimal",
    ])?;
    for r in &rows {
        out.write_record([
            r.n.to_string(),
            r.interior_cells.to_string(),
            format_rational(&r.interior_eta_mass),
            decimal_string(&r.interior_eta_mass, DECIMAL_DIGITS),
            format_rational(&r.mass_bound),
            format_rational(&r.opt_cost),
            decimal_string(&r.opt_cost, DECIMAL_DIGITS),
        ])?;
    }
    let text = String::from_utf8(out.into_inner()?)?;
    emit(
        &text,
        args.out.as_deref(),
        args.out_dir.as_deref(),
        "refine.csv",
    )?;
    Ok(EXIT_OK)
}

pub fn fractal(args: &FractalArgs) -> Result<u8> {
    let start = Instant::now();
    let spec = FractalSpec::new(args.base, args.depth)?;
    let phi = parse_rational(&args.phi).context("--phi")?;
    let problem = fractal_problem(&spec, phi)?;
    let problem_doc = problem_to_value(&problem);
    let dir = args.out_dir.as_deref();
    if let Some(d) = dir {
        write(&d.join("problem.json"), &report::to_text(&problem_doc))?;
    }
    let mut passed = true;
    let mut verification = Value::Null;
    if args.verify {
        let rep = verify_fractal_claims(&spec, DEFAULT_SCAN_BUDGET)?;
        passed = rep.passes();
        verification = json!({
            "passes": passed,
            "measure": {
                "total_is_one": rep.total_mass_is_one,
                "marginals_uniform": rep.marginals_uniform,
                "supported_cells": rep.supported_cells,
            },
            "short_cycles_balance": {
                "pass": rep.short_cycles_balance(),
                "vacuous": rep.short_scan.is_none(),
                "scan": rep.short_scan.as_ref().map(|s| scan_json(s, spec.base() - 1)),
            },
            "length_n_violation": {
                "pass": rep.length_n_violated(),
                "violations": rep.length_n_scan.violations.len(),
                "max_gap": rational_json(&rep.max_gap),
                "witness": rep.length_n_witness.as_ref().map(report::witness),
            },
            "never_separable": {
                "pass": rep.never_separable(),
                "components": rep.fit_components,
                "witnesses": rep.fit_witnesses.iter().map(report::witness).collect::<Vec<_>>(),
            },
        });
    }
    let mut doc = json!({
        "N": spec.base(),
        "K": spec.depth(),
        "side": spec.side(),
        "support_cells": spec.support_size(),
        "verification": verification,
    });
    if let Some(max_n) = args.max_n {
        let support = SupportSet::from_eta(problem.eta())?;
        let scan = cycle_scan(&support, problem.cost(), max_n, DEFAULT_SCAN_BUDGET)?;
        doc["cycle_scan"] = scan_json(&scan, max_n);
    }
    if dir.is_none() {
        doc["problem"] = problem_doc;
    }
    doc["timings"] = timings(start);
    emit(&report::to_text(&doc), None, dir, "report.json")?;
    if !passed {
        bail!("fractal verification failed");
    }
    Ok(EXIT_OK)
}

pub fn degenerate(args: &DegenerateArgs) -> Result<u8> {
    let start = Instant::now();
    let preset = DegeneratePreset::from_name(&args.preset)?;
    let problem = preset.build()?;
    let rep = verify_nonuniqueness(&problem, capot_core::flow::DEFAULT_ORACLE_CELLS)?;
    let dir = args.out_dir.as_deref();
    let problem_doc = problem_to_value(&problem);
    if let Some(d) = dir {
        write(&d.join("problem.json"), &report::to_text(&problem_doc))?;
        write(&d.join("plan_a.csv"), &plan_csv(&rep.first_plan, &problem)?)?;
        if let Some(second) = &rep.second_plan {
            write(&d.join("plan_b.csv"), &plan_csv(second, &problem)?)?;
        }
    }
    let (label, witnesses) = report::uniqueness(&rep.verdict);
    let mut doc = json!({
        "preset": preset.name(),
        "uniqueness": label,
        "witnesses": witnesses,
        "optimal_cost": rational_json(&rep.optimal_cost),
        "cost_gap": rep.cost_gap.as_ref().map(rational_json),
        "first_plan": report::plan(&rep.first_plan),
        "second_plan": rep.second_plan.as_ref().map(report::plan),
        "oracle_optimal_vertices": rep.oracle_optimal_vertices,
        "consistent": rep.consistent(),
    });
    if dir.is_none() {
        doc["problem"] = problem_doc;
    }
    doc["timings"] = timings(start);
    emit(&report::to_text(&doc), None, dir, "report.json")?;
    Ok(EXIT_OK)
}
