use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn msord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msord")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("msord-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sep_of_k23_at_two() {
    let dir = scratch("sep");
    let g = dir.join("k23.graph");
    let o = msord(&["gen", "complete_bipartite", "2", "3", "-o", g.to_str().unwrap()]);
    assert!(o.status.success());
    let o = msord(&["measure", g.to_str().unwrap(), "sep", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("3"));
    let o = msord(&["--json", "measure", g.to_str().unwrap(), "sep", "--k", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], 3);
}

#[test]
fn split_certificate_round_trip() {
    let dir = scratch("split");
    let g = dir.join("k2d2.graph");
    fs::write(&g, "graph 4\nedge 0 1\nedge 0 2\nedge 0 3\nedge 1 2\nedge 1 3\n").unwrap();
    let c = dir.join("cert.json");
    let o = msord(&["order", g.to_str().unwrap(), "split", "--s", "1", "-o", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = msord(&["--json", "verify", g.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ok"], true);

    let mut cert: serde_json::Value = serde_json::from_str(&fs::read_to_string(&c).unwrap()).unwrap();
    cert["order"].as_array_mut().unwrap().swap(0, 3);
    fs::write(&c, cert.to_string()).unwrap();
    let o = msord(&["verify", g.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn generated_graph_reads_back() {
    let dir = scratch("gen");
    let g = dir.join("c5.graph");
    let o = msord(&["gen", "cycle", "5", "-o", g.to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(&g).unwrap();
    assert_eq!(stdout(&o), text);
    let o = msord(&["--json", "measure", g.to_str().unwrap(), "components"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], 1);
    let o = msord(&["reduce", g.to_str().unwrap(), "bp"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn output_is_byte_stable() {
    let dir = scratch("stable");
    let g = dir.join("r.graph");
    msord(&["--seed", "7", "gen", "random", "7", "0.5", "-o", g.to_str().unwrap()]);
    let a = msord(&["--seed", "7", "gen", "random", "7", "0.5"]);
    let b = msord(&["--seed", "7", "gen", "random", "7", "0.5"]);
    assert_eq!(a.stdout, b.stdout);
    let c1 = msord(&["--json", "order", g.to_str().unwrap(), "cograph", "--d", "7"]);
    let c2 = msord(&["--json", "order", g.to_str().unwrap(), "cograph", "--d", "7"]);
    assert_eq!(c1.stdout, c2.stdout);
    assert_eq!(c1.stderr, c2.stderr);
}

#[test]
fn exit_codes() {
    let dir = scratch("codes");
    let g = dir.join("k23.graph");
    msord(&["gen", "complete_bipartite", "2", "3", "-o", g.to_str().unwrap()]);
    let o = msord(&["--budget-n", "3", "measure", g.to_str().unwrap(), "sep", "--k", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let o = msord(&["--json", "measure", g.to_str().unwrap(), "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    let e: serde_json::Value = serde_json::from_str(String::from_utf8_lossy(&o.stderr).trim()).unwrap();
    assert_eq!(e["error"], "input");
    let o = msord(&["measure", dir.join("missing.graph").to_str().unwrap(), "sep", "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = msord(&["order", g.to_str().unwrap(), "split", "--s", "1"]);
    assert_eq!(o.status.code(), Some(2));
}
