use std::process::{Command, Output};

fn wgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wgeo"))
        .args(args)
        .env_remove("WGEO_ORBIT_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn graph_stats_for_k33_word() {
    let out = wgeo(&["graph", "bbaaccabc", "--stats", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["stats"]["vertices"], 6);
    assert_eq!(v["stats"]["edges"], 9);
    assert_eq!(v["stats"]["regular"], 3);
    assert_eq!(v["stats"]["edge_connectivity"], 3);
    assert_eq!(v["stats"]["planar"], false);
}

#[test]
fn graph_dot_for_commutator() {
    let out = wgeo(&["graph", "abAB", "--dot"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("graph G {"));
    assert_eq!(text.lines().filter(|l| l.contains("--")).count(), 4);
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(wgeo(&["graph", ""]).status.code(), Some(2));
    let out = wgeo(&["graph", "ab1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 2"));
    assert_eq!(
        wgeo(&["certify", "ab", "--rank", "27"]).status.code(),
        Some(2)
    );
}

#[test]
fn minimize_reports_lengths() {
    let v = json(&wgeo(&["minimize", "aba"]));
    assert_eq!(v["initial_length"], 3);
    assert_eq!(v["final_length"], 1);
    let v = json(&wgeo(&["minimize", "bbaaccabc"]));
    assert_eq!(v["final_length"], 9);
    assert_eq!(v["automorphisms"].as_array().unwrap().len(), 0);
}

#[test]
fn certify_exit_codes() {
    assert_eq!(wgeo(&["certify", "bbaaccabc"]).status.code(), Some(0));
    assert_eq!(wgeo(&["certify", "baabccACBBCA"]).status.code(), Some(0));
    assert_eq!(wgeo(&["certify", "abAB"]).status.code(), Some(4));
    // An unused generator breaks regularity but not minimality or non-planarity.
    assert_eq!(
        wgeo(&["certify", "bbaaccabc", "--rank", "4"]).status.code(),
        Some(3)
    );
}

#[test]
fn certify_json_goes_to_stdout() {
    let out = wgeo(&["certify", "baabccACBBCA", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "NotVirtuallyGeometric");
    assert_eq!(v["k"], 4);
    assert!(!out.stderr.is_empty());
}

#[test]
fn orbit_cap_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_wgeo"))
        .args(["certify", "abAB", "--json"])
        .env("WGEO_ORBIT_CAP", "1")
        .output()
        .unwrap();
    let v = json(&out);
    assert_eq!(v["orbit"]["cap"], 1);
    assert_eq!(v["orbit"]["truncated"], true);
}

#[test]
fn cover_simulation_report() {
    let out = wgeo(&[
        "splice-sim",
        "--word",
        "bbaaccabc",
        "--copies",
        "3",
        "--trials",
        "100",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["trials"], 100);
    assert_eq!(v["violations"], 0);
    for t in v["per_trial"].as_array().unwrap() {
        assert_eq!(t["valence"], 3);
        assert_eq!(t["edge_connectivity"], 3);
        assert_eq!(t["planar"], false);
    }
}

#[test]
fn single_copy_echoes_the_base_graph() {
    let v = json(&wgeo(&[
        "splice-sim",
        "--word",
        "bbaaccabc",
        "--copies",
        "1",
    ]));
    let t = &v["per_trial"][0];
    assert_eq!(t["valence"], 3);
    assert_eq!(t["edge_connectivity"], 3);
    assert_eq!(t["planar"], false);
}

#[test]
fn regular_splice_report() {
    let out = wgeo(&["splice-sim", "--regular", "6,3", "--trials", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["trials"], 50);
    assert_eq!(v["violations"], 0);
    assert_eq!(
        wgeo(&["splice-sim", "--regular", "5,3"]).status.code(),
        Some(2)
    );
}

#[test]
fn selftest_passes() {
    let out = wgeo(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out)
            .lines()
            .filter(|l| l.starts_with("PASS"))
            .count(),
        3
    );
}
