use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn capot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_capot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn without_timings(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timings");
    v
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_forced_instance() {
    let dir = tempfile::tempdir().unwrap();
    let out = capot(&[
        "solve",
        path_str(&data("forced.json")),
        "--out-dir",
        path_str(dir.path()),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["status"], "optimal");
    assert_eq!(report["cost"]["exact"], "1/2");
    assert_eq!(report["cost"]["decimal"], "0.5");
    assert_eq!(report["uniqueness"], "unique");
    assert_eq!(report["interior"]["count"], 0);
    let csv = fs::read_to_string(dir.path().join("plan.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("i,j,x,y,sigma,cap,eta"));
    assert_eq!(csv.lines().count(), 5);
    assert!(csv
        .lines()
        .skip(1)
        .all(|l| l.split(',').nth(4) == Some("1/4")));
}

#[test]
fn solve_infeasible_lists_cut() {
    let out = capot(&["solve", path_str(&data("infeasible.json"))]);
    assert_eq!(code(&out), 2);
    let report = json(&out);
    assert_eq!(report["status"], "infeasible");
    assert_eq!(report["max_mass"]["exact"], "1/2");
    assert_eq!(report["deficit_cut"]["capacity"]["exact"], "1/2");
}

#[test]
fn bad_inputs_exit_one() {
    let out = capot(&["solve", path_str(&data("malformed.json"))]);
    assert_eq!(code(&out), 1);

    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(data("forced.json")).unwrap().replace(
        "\"uniform\": 2\n  },\n  \"nu\"",
        "\"uniform\": 3\n  },\n  \"nu\"",
    );
    let bad = dir.path().join("bad.json");
    fs::write(&bad, text).unwrap();
    let out = capot(&["solve", path_str(&bad)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("$.mu"));

    let out = capot(&["solve", "/nonexistent/problem.json"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn plan_csv_round_trips_through_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.csv");
    for problem in ["forced.json", "neg_product.json", "separable.json"] {
        let problem = data(problem);
        let out = capot(&[
            "solve",
            path_str(&problem),
            "--out",
            path_str(&plan),
            "--report",
            path_str(&dir.path().join("r.json")),
        ]);
        assert_eq!(code(&out), 0);
        let solved: Value =
            serde_json::from_str(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
        let out = capot(&[
            "analyze",
            path_str(&problem),
            "--plan",
            path_str(&plan),
            "--probe-uniqueness",
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let analyzed = json(&out);
        assert_eq!(analyzed["cost"], solved["cost"]);
        assert_eq!(analyzed["optimal"], true);
        assert_eq!(analyzed["uniqueness"], solved["uniqueness"]);
        assert_eq!(analyzed["interior"], solved["interior"]);
    }

    // A plan whose cap column disagrees with the problem is rejected.
    let text = fs::read_to_string(&plan).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut fields: Vec<String> = lines[1].split(',').map(String::from).collect();
    fields[5] = "7".into();
    lines[1] = fields.join(",");
    fs::write(&plan, lines.join("\n")).unwrap();
    let out = capot(&[
        "analyze",
        path_str(&data("separable.json")),
        "--plan",
        path_str(&plan),
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn analyze_flags_suboptimal_plan() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.csv");
    // Anti-diagonal under -xy with caps 1/2: the diagonal is cheaper.
    fs::write(&plan, "i,j,sigma\n0,1,1/2\n1,0,1/2\n").unwrap();
    let out = capot(&[
        "analyze",
        path_str(&data("neg_product.json")),
        "--plan",
        path_str(&plan),
    ]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["optimal"], false);
    assert!(report["improving_cycle"]["found"]["gain"]["exact"]
        .as_str()
        .unwrap()
        .starts_with('-'));
}

#[test]
fn certify_exit_codes() {
    let out = capot(&["certify", path_str(&data("neg_product.json"))]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["verdict"], "non-degenerate");
    assert_eq!(report["components"][0]["witness"]["length"], 2);
    assert_eq!(report["certifier"]["certified"], true);

    let out = capot(&["certify", path_str(&data("separable.json")), "--exhaustive"]);
    assert_eq!(code(&out), 3);
    let report = json(&out);
    let fit = &report["components"][0]["fit"];
    assert_eq!(fit["u"].as_object().unwrap().len(), 3);
    assert_eq!(fit["v"].as_object().unwrap().len(), 3);
    assert_eq!(report["quadruple_stats"]["violations"], 0);
    assert_eq!(report["quadruple_stats"]["checked"], 9);
}

#[test]
fn certify_fractal_needs_long_cycles() {
    let out = capot(&["certify", path_str(&data("fractal3.json")), "--max-n", "2"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["cycle_scan"]["summary"], "no violation at n≤2");
    assert_eq!(report["components"][0]["witness"]["length"], 3);
    assert_eq!(report["components"][0]["witness"]["gap"]["exact"], "1/2");
}

#[test]
fn certify_with_support_file() {
    let dir = tempfile::tempdir().unwrap();
    let support = dir.path().join("support.csv");
    // A tree support: every cost fits.
    fs::write(&support, "i,j\n0,0\n0,1\n1,1\n").unwrap();
    let out = capot(&[
        "certify",
        path_str(&data("neg_product.json")),
        "--support",
        path_str(&support),
    ]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["support_cells"], 3);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["solve", "neg_product.json"],
        vec!["certify", "separable.json", "--seed", "9"],
        vec!["certify", "fractal3.json", "--max-n", "3"],
    ] {
        let path = data(args[1]);
        let mut full: Vec<&str> = vec![args[0], path_str(&path)];
        full.extend(&args[2..]);
        let a = without_timings(json(&capot(&full)));
        let b = without_timings(json(&capot(&full)));
        assert_eq!(a, b);
    }
}

#[test]
fn refine_table() {
    let out = capot(&[
        "refine",
        "--cost",
        "neg_product",
        "--phi",
        "2",
        "--grids",
        "8,16",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[0][0], "8");
    assert_eq!(&rows[1][0], "16");
    // Integral caps: both grids are bang-bang, so the column is flat at 0.
    assert_eq!(&rows[0][2], "0");
    assert_eq!(&rows[1][2], "0");

    let out = capot(&[
        "refine",
        "--cost",
        "neg_product",
        "--phi",
        "3",
        "--grids",
        "8,16",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let masses: Vec<String> = csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap()[2].to_string())
        .collect();
    assert_eq!(masses, ["7/32", "15/128"]);

    let out = capot(&["refine", "--cost", "cubic", "--phi", "2", "--grids", "8"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn fractal_counterexample() {
    let out = capot(&[
        "counterexample",
        "fractal",
        "--N",
        "3",
        "--K",
        "1",
        "--verify",
    ]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    let v = &report["verification"];
    assert_eq!(v["passes"], true);
    assert_eq!(v["short_cycles_balance"]["pass"], true);
    assert_eq!(v["length_n_violation"]["max_gap"]["exact"], "1/2");
    assert_eq!(v["never_separable"]["pass"], true);
    assert_eq!(report["problem"]["grid"]["nx"], 3);

    let dir = tempfile::tempdir().unwrap();
    let out = capot(&[
        "counterexample",
        "fractal",
        "--N",
        "3",
        "--K",
        "2",
        "--verify",
        "--max-n",
        "3",
        "--out-dir",
        path_str(dir.path()),
    ]);
    assert_eq!(code(&out), 0);
    let report: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert!(report["cycle_scan"]["violations"].as_u64().unwrap() > 0);
    // The emitted problem file is solvable by the main command.
    let out = capot(&["solve", path_str(&dir.path().join("problem.json"))]);
    assert_eq!(code(&out), 0);

    let out = capot(&["counterexample", "fractal", "--N", "1", "--K", "1"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn degenerate_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let out = capot(&[
        "counterexample",
        "degenerate",
        "--preset",
        "separable-2x2",
        "--out-dir",
        path_str(dir.path()),
    ]);
    assert_eq!(code(&out), 0);
    let report: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["uniqueness"], "non-unique");
    assert_eq!(report["cost_gap"]["exact"], "0");
    assert_eq!(report["consistent"], true);

    let problem = dir.path().join("problem.json");
    let costs: Vec<Value> = ["plan_a.csv", "plan_b.csv"]
        .iter()
        .map(|p| {
            let out = capot(&[
                "analyze",
                path_str(&problem),
                "--plan",
                path_str(&dir.path().join(p)),
            ]);
            assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
            let r = json(&out);
            assert_eq!(r["optimal"], true);
            r["cost"].clone()
        })
        .collect();
    assert_eq!(costs[0], costs[1]);

    let out = capot(&["counterexample", "degenerate", "--preset", "nope"]);
    assert_eq!(code(&out), 1);
}
