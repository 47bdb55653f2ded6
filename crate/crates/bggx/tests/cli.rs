use std::path::Path;
use std::process::{Command, Output};

use bggx::cache::TableCache;
use bggx::checks::ClosedForms;
use bggx::commands::{repro, ReproOptions};
use bggx_core::bgg::{closed_form_g2, Status};
use bggx_core::CoefPoly;
use serde_json::Value;

fn bggx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bggx"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(bggx(&["conjecture", "verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(bggx(&["conjecture", "verify", "--k", "0..2"]).status.code(), Some(2));
    assert_eq!(bggx(&["schubert", "mult", "--k", "2", "--q", "4", "3", "1"]).status.code(), Some(2));
}

#[test]
fn input_data_errors_exit_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = bggx(&["complex", "check", "--input", bad.to_str().unwrap(), "--w", "1", "--r", "1", "--j", "0"]);
    assert_eq!(out.status.code(), Some(3));

    // Two wedge actions that commute instead of anticommuting.
    let datum = r#"{"d":2,"q":2,"dims":[[1,0,0],[2,0,0],[1,0,0]],"action":[
        {"a":1,"i":0,"j":0,"matrix":[["1"],["0"]]},
        {"a":2,"i":0,"j":0,"matrix":[["0"],["1"]]},
        {"a":1,"i":1,"j":0,"matrix":[["0","1"]]},
        {"a":2,"i":1,"j":0,"matrix":[["1","0"]]}]}"#;
    let path = dir.path().join("datum.json");
    std::fs::write(&path, datum).unwrap();
    let out = bggx(&["complex", "check", "--input", path.to_str().unwrap(), "--w", "1,0;0,1", "--r", "2", "--j", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("v_1 and v_2 do not anticommute on H^0(Ω^0)"), "{err}");
}

#[test]
fn single_cell_sweep() {
    let out = bggx(&["conjecture", "verify", "--k", "2", "--q-max", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let cell = v["results"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(cell["q"], 5);
    assert_eq!(cell["mu"], serde_json::json!([2, 1]));
    assert_eq!(cell["status"], "PASS");
}

#[test]
fn empty_range_is_an_empty_passing_report() {
    let out = bggx(&["conjecture", "verify", "--k", "4..3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["results"], serde_json::json!([]));
}

#[test]
fn json_output_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["conjecture", "verify", "--k", "2..3", "--q-max", "8", "--format", "json"];
    let a = bggx(&args);
    let b = bggx(&args);
    let mut single = args.to_vec();
    single.extend(["--jobs", "1"]);
    let c = bggx(&single);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn curves_example_matches_golden_file() {
    let out = bggx(&["example", "curves", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let golden = std::fs::read(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/example_curves.json")).unwrap();
    assert_eq!(out.stdout, golden);
}

#[test]
fn emitted_datum_feeds_complex_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("abelian.json");
    let out = bggx(&["model", "abelian", "--q", "3", "--emit-datum", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = bggx(&[
        "complex", "check", "--input", path.to_str().unwrap(), "--w", "1,0,0;0,1,0;0,0,1", "--r", "3", "--j", "0",
        "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["results"]["term_dims"], serde_json::json!([10, 18, 9, 1]));
    assert_eq!(v["results"]["homology"], serde_json::json!([0, 0, 0, 0]));

    let out = bggx(&["bounds", "check", "--hodge", path.to_str().unwrap(), "--k", "2", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn curves_datum_round_trips_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curves.json");
    assert_eq!(bggx(&["example", "curves", "--emit-datum", path.to_str().unwrap()]).status.code(), Some(0));
    let out = bggx(&[
        "complex", "check", "--input", path.to_str().unwrap(), "--w", "1,0,0,1,0,0;0,1,0,0,1,0;0,0,1,0,0,1",
        "--r", "2", "--j", "1", "--e2-table", "--format", "json",
    ]);
    let v = json_of(&out);
    assert_eq!(v["results"]["homology"], serde_json::json!([0, 18, 0]));
    assert_eq!(v["results"]["e2_table"]["hyper"][2], 55);
}

#[test]
fn csv_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = bggx(&[
        "chern", "sym", "--rank", "2", "--power", "2", "--max-degree", "2", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv, "degree,monomial,coeff\n0,1,1\n1,e1,3\n2,e2,4\n2,e1^2,2\n");
}

#[test]
fn schubert_product_json() {
    let out = bggx(&["schubert", "mult", "--k", "2", "--q", "4", "1", "1", "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["results"]["context"], serde_json::json!({ "k": 2, "q": 4 }));
    assert_eq!(v["results"]["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn bounds_table_lists_conditional_bounds() {
    let out = bggx(&["bounds", "h20", "--q", "12", "--d", "5", "--k", "4", "--format", "json"]);
    let v = json_of(&out);
    let rows = v["results"].as_array().unwrap();
    let find = |name: &str| rows.iter().find(|r| r["bound"] == name).unwrap().clone();
    assert_eq!(find("conjectural rank")["value"], "60");
    assert!(find("top Chern class")["hypotheses"].as_str().unwrap().starts_with("CONDITIONAL"));
    assert_eq!(find("dimension")["value"], "60");
}

fn tampered_g2(k: usize) -> CoefPoly {
    &closed_form_g2(k) + &CoefPoly::int(1)
}

#[test]
fn repro_names_a_tampered_constant() {
    let opts = ReproOptions {
        seed: 1,
        samples: 0,
        forms: ClosedForms {
            g2: tampered_g2,
            ..ClosedForms::default()
        },
    };
    let report = repro(&opts, &TableCache::new()).unwrap();
    assert_eq!(report.status, Status::Fail);
    assert_eq!(report.exit_code(), 1);
    let failing: Vec<&str> = report.results["failing"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(failing.len(), 6);
    assert!(failing.contains(&"g_2 closed form, k=3"));
}
