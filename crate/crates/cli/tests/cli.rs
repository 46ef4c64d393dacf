use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goss-zeta"))
        .args(args)
        .env_remove("GOSSZETA_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = run(&full);
    let mut lines = json_lines(&o);
    assert_eq!(lines.len(), 1, "{}", stdout(&o));
    (o.status.code().unwrap(), lines.remove(0))
}

#[test]
fn enumerate_lists_the_seven_compositions() {
    let o = run(&[
        "enumerate",
        "--p",
        "3",
        "--s",
        "2",
        "--m",
        "2",
        "--n",
        "131",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let records = json_lines(&o);
    assert_eq!(records.len(), 7);
    let weights: Vec<u64> = records.iter().map(|r| r["weight"].as_u64().unwrap()).collect();
    assert_eq!(weights, [230, 222, 214, 158, 150, 142, 134]);
    assert_eq!(records[0]["parts"], serde_json::json!([32, 99]));
    assert_eq!(records[0]["base_p"], serde_json::json!(["1012_3", "10200_3"]));
}

#[test]
fn enumerate_empty_set_exits_two() {
    let o = run(&["enumerate", "--p", "3", "--s", "2", "--m", "3", "--n", "131"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
}

#[test]
fn enumerate_single_part() {
    let o = run(&[
        "enumerate",
        "--p",
        "2",
        "--s",
        "1",
        "--m",
        "1",
        "--n",
        "5",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let records = json_lines(&o);
    assert_eq!(records.len(), 1);
    assert_eq!(records[0]["parts"], serde_json::json!([5]));
}

#[test]
fn table_shows_decimal_and_base_p() {
    let o = run(&["greedy", "--p", "3", "--s", "2", "--m", "2", "--n", "11212_3"]);
    assert_eq!(stdout(&o), "(32 (1012_3), 99 (10200_3))  weight 230\n");
}

#[test]
fn greedy_of_empty_set_exits_two() {
    assert_eq!(
        run(&["greedy", "--p", "3", "--s", "2", "--m", "3", "--n", "131"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn optimal_agrees_with_greedy() {
    let (code, v) = json(&["optimal", "--p", "3", "--s", "2", "--m", "2", "--n", "131"]);
    assert_eq!(code, 0);
    assert_eq!(v["optimal"]["parts"], serde_json::json!([32, 99]));
    assert_eq!(v["optimal"], v["greedy"]);
    assert_eq!(v["unique"], true);
    assert_eq!(v["agrees"], true);
    assert_eq!(v["searched"], 7);
}

#[test]
fn member_reports_the_cone_coordinates() {
    let (code, v) = json(&["member", "--p", "3", "--s", "2", "--n", "131", "--m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["gamma"], serde_json::json!([5, 2]));
    assert_eq!(v["in_i_m"], true);
    assert_eq!(v["in_frak_j"], false);
    let (_, v) = json(&["member", "--p", "3", "--s", "2", "--gamma", "2,2", "--m", "1"]);
    assert_eq!(v["in_frak_j"], true);
    assert_eq!(v["in_j_m"], true);
    assert!(v.get("n").is_none());
}

#[test]
fn verify_single_cell_reports_the_witness() {
    let (code, v) = json(&["verify-theorem12", "--p", "3", "--s", "2", "--m", "2", "--n", "131"]);
    assert_eq!(code, 0);
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 1);
    assert_eq!(cells[0]["outcome"], "pass");
    assert_eq!(cells[0]["greedy"]["parts"], serde_json::json!([32, 99]));
    assert_eq!(cells[0]["optimal"], cells[0]["greedy"]);
}

#[test]
fn verify_small_grid_passes() {
    let (code, v) = json(&[
        "verify-theorem12",
        "--shape",
        "2^1",
        "--shape",
        "3",
        "--m-max",
        "3",
        "--n-max",
        "200",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["totals"]["fail"], 0);
    assert_eq!(v["totals"]["skipped"], 0);
    assert_eq!(v["cells"].as_array().unwrap().len(), 2 * 3 * 200);
}

#[test]
fn verify_all_empty_grid() {
    // V_3(N) over F_4 needs at least two multiples of 3 below N.
    let (code, v) = json(&[
        "verify-theorem12",
        "--p",
        "2",
        "--s",
        "2",
        "--m",
        "3",
        "--n-min",
        "1",
        "--n-max",
        "5",
    ]);
    assert_eq!(code, 0);
    assert!(v["cells"].as_array().unwrap().iter().all(|c| c["outcome"] == "empty"));
    assert_eq!(v["totals"]["empty"], 5);
}

#[test]
fn verify_results_do_not_depend_on_jobs() {
    let args = ["verify-theorem12", "--shape", "2^2", "--m-max", "3", "--n-max", "80"];
    let (_, one) = json(&args);
    let mut more = args.to_vec();
    more.extend(["--jobs", "3"]);
    let (_, three) = json(&more);
    assert_eq!(one["cells"], three["cells"]);
    assert_eq!(one["totals"], three["totals"]);
}

#[test]
fn verify_over_budget_is_partial() {
    let o = run(&[
        "verify-theorem12",
        "--p",
        "2",
        "--m",
        "4",
        "--n",
        "1023",
        "--budget",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_power_sums_passes() {
    let (code, v) = json(&[
        "verify-theorem14",
        "--shape",
        "2",
        "--shape",
        "3",
        "--shape",
        "2^2",
        "--n-max",
        "60",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["totals"]["pass"], 3 * 3 * 60);
}

#[test]
fn power_sum_examples() {
    let (code, v) = json(&["power-sum", "--p", "3", "--s", "1", "--k", "1", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["direct"], "2");
    assert_eq!(v["predicted_degree"], 0);
    assert_eq!(v["agree"], true);

    let (code, v) = json(&["power-sum", "--p", "3", "--s", "1", "--k", "1", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["direct"], "0");
    assert_eq!(v["u_nonempty"], false);
    assert_eq!(v["degree"], Value::Null);
    assert_eq!(v["agree"], true);

    let (_, v) = json(&["power-sum", "--p", "2", "--s", "1", "--k", "0", "--n", "7"]);
    assert_eq!(v["direct"], "1");
}

#[test]
fn power_sum_over_budget_exits_three() {
    assert_eq!(
        run(&["power-sum", "--p", "3", "--k", "6", "--n", "100", "--budget", "10"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn newton_polygon_of_an_integer() {
    let (code, v) = json(&["newton-polygon", "--p", "3", "--s", "1", "--y", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["points"], serde_json::json!([[0, 0], [1, 2]]));
    assert_eq!(v["slopes"], serde_json::json!([2]));
    assert_eq!(v["hull_ok"], true);
}

#[test]
fn newton_polygon_of_minus_one() {
    let (code, v) = json(&["newton-polygon", "--p", "2", "--s", "1", "--y", "1:1", "--max-m", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["points"], serde_json::json!([[0, 0], [1, 1], [2, 4], [3, 11]]));
    assert_eq!(v["hull_ok"], true);
    assert_eq!(v["thresholds"].as_array().unwrap().len(), 4);
    let (_, w) = json(&["newton-polygon", "--y", "-1", "--max-m", "3"]);
    assert_eq!(v["points"], w["points"]);
}

#[test]
fn newton_polygon_of_zero() {
    let (code, v) = json(&["newton-polygon", "--y", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["points"], serde_json::json!([[0, 0]]));
    assert_eq!(v["slopes"], serde_json::json!([]));
}

#[test]
fn newton_polygon_inconclusive_exits_four() {
    let o = run(&[
        "newton-polygon",
        "--p",
        "2",
        "--s",
        "2",
        "--y",
        "1:001",
        "--max-m",
        "4",
        "--t-cap",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn newton_polygon_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("poly.csv");
    let svg = dir.path().join("poly.svg");
    let o = run(&[
        "newton-polygon",
        "--p",
        "3",
        "--y",
        ":2",
        "--max-m",
        "3",
        "--format",
        "csv",
        "--output",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), "m,v_m\n0,0\n1,2\n2,10\n3,36\n");
    let svg = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 1);
    assert_eq!(svg.matches("<circle").count(), 4);
}

#[test]
fn json_round_trips_byte_for_byte() {
    let cases: [&[&str]; 6] = [
        &["enumerate", "--p", "3", "--s", "2", "--m", "2", "--n", "131"],
        &["optimal", "--p", "5", "--m", "3", "--n", "977"],
        &["member", "--p", "2", "--s", "3", "--n", "4000", "--m", "2"],
        &["power-sum", "--p", "2", "--s", "2", "--k", "2", "--n", "45"],
        &["newton-polygon", "--p", "3", "--s", "2", "--y", "2:10", "--max-m", "3"],
        &["verify-theorem12", "--shape", "5", "--m-max", "2", "--n-max", "30"],
    ];
    for args in cases {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let o = run(&full);
        for line in stdout(&o).lines() {
            let v: Value = serde_json::from_str(line).unwrap();
            assert_eq!(serde_json::to_string(&v).unwrap(), line, "{args:?}");
        }
    }
}

#[test]
fn bad_arguments_exit_five() {
    for args in [
        &["greedy", "--p", "4", "--m", "1", "--n", "3"][..],
        &["greedy", "--p", "3", "--m", "1", "--n", "12_2"],
        &["greedy", "--m", "0", "--n", "3"],
        &["enumerate", "--m", "two", "--n", "3"],
        &["member", "--p", "2", "--s", "2", "--gamma", "1,2,3"],
        &["newton-polygon", "--p", "3", "--y", "1:3"],
        &["verify-theorem12", "--m-min", "3", "--m-max", "2"],
        &["verify-theorem12", "--shape", "6"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(5), "{args:?}");
    }
}

#[test]
fn budget_can_come_from_the_environment() {
    let args = ["enumerate", "--p", "2", "--m", "3", "--n", "1023"];
    assert_eq!(run(&args).status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_goss-zeta"))
        .args(args)
        .env("GOSSZETA_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
