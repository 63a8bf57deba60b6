use std::process::{Command, Output};

fn gaussnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaussnet")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn build_writes_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g2.json");
    let out = gaussnet(&["build", "--k", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["n"], 13);
    assert_eq!(v["edges"].as_array().unwrap().len(), 26);
}

#[test]
fn export_both_dot() {
    let out = gaussnet(&["export", "--k", "4", "--what", "both", "--format", "dot"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let edges: Vec<&str> = text.lines().filter(|l| l.contains(" -- ")).collect();
    assert_eq!(edges.len(), 82);
    assert_eq!(edges.iter().filter(|l| l.contains("style=dashed")).count(), 2);
    assert!(text.starts_with("graph "));
}

#[test]
fn route_trace() {
    let out = gaussnet(&["route", "--k", "2", "--from", "0,0", "--to", "1,1", "--tree", "black"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "0,0 0,1 1,1");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("0,0\t(<0,0>, <1,1>, "));
    assert!(lines[3].ends_with("hops=2\twire=000000000100010000000200"));
}

#[test]
fn verify_exit_codes() {
    let out = gaussnet(&["verify", "--k", "1..8"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.contains(": PASS")).count(), 12 * 8 + 4);
    let out = gaussnet(&["verify", "--k", "3", "--mutate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("independence: FAIL"));
}

#[test]
fn invalid_input() {
    for args in [
        &["build", "--k", "-1"][..],
        &["export", "--k", "2", "--what", "tree"],
        &["route", "--k", "2", "--from", "0,0"],
        &["split", "--k", "2", "--from", "0,0", "--to", "x,y"],
        &["broadcast", "--k", "2", "--root", "0,0", "--fault-node", "0,0"],
    ] {
        let out = gaussnet(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn stats_k3() {
    let out = gaussnet(&["stats", "--k", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("nodes=25\n"));
    assert!(text.contains("edges=50\n"));
    assert!(text.contains("diameter=3\n"));
    assert!(text.contains("distances=0:1 1:4 2:8 3:12\n"));
}
