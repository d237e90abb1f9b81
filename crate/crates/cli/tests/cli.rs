use std::path::Path;
use std::process::{Command, Output};

fn eichler(args: &[&str], config: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_eichler"));
    c.args(args).env_remove("EICHLER_CONFIG");
    if let Some(p) = config {
        c.env("EICHLER_CONFIG", p);
    }
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn split_type_of_a_divisor_pair() {
    let o = eichler(&["split-type", "--pair=-inf, 2*inf"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(2,-1)\n");
}

#[test]
fn split_type_certificate_brackets_the_exponents() {
    let o = eichler(&["split-type", "--pair", "3*inf,inf", "--certificate"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["a"].as_i64(), v["b"].as_i64()), (Some(3), Some(1)));
    let h0: Vec<(i64, u64)> = serde_json::from_value(v["h0"].clone()).unwrap();
    // h0(O(3-n) + O(1-n)) for n = 0..=4
    assert_eq!(h0, vec![(0, 6), (1, 4), (2, 2), (3, 1), (4, 0)]);
}

#[test]
fn split_type_from_transition_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("t.json");
    // diag(t^-a, t^-b) is the transition of O(a) + O(b)
    std::fs::write(&f, r#"[["t^2", "0"], ["0", "1/t"]]"#).unwrap();
    let o = eichler(&["split-type", "--transition", f.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "(1,-2)\n");
    // Ext^1(O(-2), O(3)) = 0, so the off-diagonal entry cannot change the type
    std::fs::write(&f, r#"[["1/t^3", "t^2+1"], ["0", "t^2"]]"#).unwrap();
    let o = eichler(&["split-type", "--transition", f.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let pair = eichler(&["split-type", "--pair=3*inf,-2*inf"], None);
    assert_eq!(stdout(&o), stdout(&pair));
}

#[test]
fn is_split_exit_codes() {
    let o = eichler(&["is-split", "--pair", "inf,t"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("split\n"));
    let o = eichler(&["is-split", "--f-order", "1"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("non-split\n"));
    let o = eichler(&["is-split", "--maximal", "0"], None);
    assert_eq!(o.status.code(), Some(0));
    let o = eichler(&["is-split", "--pair", "inf"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cgraph_json_and_dot() {
    let o = eichler(&["cgraph", "--level", "inf", "--depth", "3", "--format", "json"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["meta"]["Q"], "(t)");
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(v["half_edges"].as_array().unwrap().len(), 1);
    let o = eichler(&["cgraph", "--level", "inf", "--place", "inf"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cgraph_from_seed_file_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let seeds = dir.path().join("seeds.json");
    std::fs::write(
        &seeds,
        r#"[{"corner_a": {"fin": [["1","0"],["0","1"]], "inf": [["1","0"],["0","1"]]},
             "corner_b": {"fin": [["1","0"],["0","1"]], "inf": [["1","0"],["0","1"]]}}]"#,
    )
    .unwrap();
    let out = dir.path().join("g.dot");
    let o = eichler(
        &[
            "cgraph",
            "--seed-file",
            seeds.to_str().unwrap(),
            "--depth",
            "2",
            "--out",
            out.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let dot = std::fs::read_to_string(out).unwrap();
    assert!(dot.starts_with("graph cgraph {"));
    assert_eq!(dot.matches(" -- ").count(), 2);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "q = 3\ndepth = 2\nformat = \"json\"\n").unwrap();
    let o = eichler(&["cgraph", "--level", "inf"], Some(&cfg));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["meta"]["q"].as_u64(), v["meta"]["depth"].as_u64()), (Some(3), Some(2)));
    let o = eichler(&["--q", "2", "cgraph", "--level", "inf", "--depth", "1", "--format", "dot"], Some(&cfg));
    assert!(stdout(&o).contains("q=2 D=inf Q=(t) depth=1"));
    std::fs::write(&cfg, "colour = 1\n").unwrap();
    let o = eichler(&["cgraph"], Some(&cfg));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = eichler(&["verify", "fig1a", "--depth", "3", "--out", d], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("fig1a: PASS\n"));
    for f in ["fig1a.dot", "fig1a.json", "fig1a.report.json"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let o = eichler(&["verify", "fig7", "--out", d], None);
    assert_eq!(o.status.code(), Some(2));
}
