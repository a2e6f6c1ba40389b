use std::path::PathBuf;
use std::process::{Command, Output};

fn spread(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spread"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn family_edge_list_has_fifteen_edges() {
    let o = spread(&[
        "family",
        "--kind",
        "outerplanar-linear",
        "--n",
        "10",
        "--ell",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("10 15"));
    assert_eq!(text.lines().count(), 16);
}

#[test]
fn coefficients_match_through_fifth_order() {
    let o = spread(&["coeffs", "--family", "outerplanar", "--order", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("c1..c5 exact match: true"));
    let json: serde_json::Value = serde_json::from_str(text.split_once('\n').unwrap().1).unwrap();
    assert_eq!(json["rows"].as_array().unwrap().len(), 5);
}

#[test]
fn scan_predicts_sixty_seven_at_one_hundred() {
    let o = spread(&["scan", "--kind", "outerplanar-linear", "--n", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["predicted_ell0"], 67);
    assert_eq!(json["argmax_ell"], 67);
}

#[test]
fn walks_csv() {
    let o = spread(&["walks", "--kmax", "2"]);
    assert_eq!(stdout(&o), "k,p,q,threshold\n0,1,0,1\n1,2,-2,1\n2,4,-6,2\n");
}

#[test]
fn spectrum_of_a_file_written_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("k4.txt");
    std::fs::write(&graph, "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let out: PathBuf = dir.path().join("report.json");
    let o = spread(&[
        "spectrum",
        graph.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!((json["lambda1"].as_f64().unwrap() - 3.0).abs() < 1e-12);
    assert!((json["spread"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    assert!(!dir.path().join("report.json.tmp").exists());
}

#[test]
fn enumerate_small_outerplanar() {
    let o = spread(&["enumerate", "--n", "4", "--class", "outerplanar"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((json["max_spread"].as_f64().unwrap() - 17f64.sqrt()).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["frobnicate"],
        vec!["family", "--kind", "outerplanar-linear"],
        vec!["family", "--kind", "nope", "--n", "9"],
        vec!["family", "--kind", "double-wheel", "--n", "2"],
        vec![
            "scan",
            "--kind",
            "outerplanar-linear",
            "--n",
            "10",
            "--bogus",
        ],
        vec!["spectrum", "/nonexistent/graph.txt"],
    ] {
        let o = spread(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn malformed_graph_file_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("bad.txt");
    std::fs::write(&graph, "3 1\n0 x\n").unwrap();
    let o = spread(&["spectrum", graph.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fast_verification_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = spread(&["verify", "--fast", "--out", path.to_str().unwrap()]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    let ra = std::fs::read_to_string(&a).unwrap();
    assert_eq!(ra, std::fs::read_to_string(&b).unwrap());
    let json: serde_json::Value = serde_json::from_str(&ra).unwrap();
    assert_eq!(json["checks"].as_array().unwrap().len(), 12);
    assert_eq!(json["summary"]["fail"], 0);
    assert_eq!(json["environment"]["fast"], true);
}
