use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_netrobust");
const CSF: &str = "gen:csf:n=80,m=2,p=0.3,seed=3";

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN).current_dir(dir).env_remove("NETROBUST_OUT_DIR").args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn triangle(dir: &Path) -> String {
    let p = dir.join("tri.edges");
    std::fs::write(&p, "0 1\n1 2\n2 0\n").unwrap();
    p.display().to_string()
}

#[test]
fn triangle_resistance_prints_two() {
    let dir = tempfile::tempdir().unwrap();
    let tri = triangle(dir.path());
    let o = run(dir.path(), &["measure", "--id", "effective_resistance", "--in", &tri]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2.0\n");
}

#[test]
fn measure_all_has_one_row_per_id() {
    let dir = tempfile::tempdir().unwrap();
    let tri = triangle(dir.path());
    let o = run(dir.path(), &["measure", "--id", "all", "--in", &tri, "--out", "m.csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("m.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "measure_id,value,exact,higher_is_more_robust,k,flagged,note");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 22);
    assert!(rows.iter().any(|r| r.starts_with("effective_resistance,2.0,true,false,")));
    // Sampled betweenness needs a seed; it is reported, not silently dropped.
    assert!(rows.iter().any(|r| r.starts_with("approx_avg_vertex_betweenness,NaN,") && r.ends_with("needs --seed")));
    assert!(dir.path().join("m.csv.manifest.json").exists());
}

#[test]
fn missing_seed_is_a_usage_error_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let tri = triangle(dir.path());
    let o = run(dir.path(), &["attack", "--strategy", "rnd", "--kind", "node", "--count", "2", "--in", &tri, "--out", "t.csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!dir.path().join("t.csv").exists());
    assert!(!dir.path().join("t.csv.manifest.json").exists());
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["measure", "--id", "lcc", "--in", "nope.edges"],
        &["measure", "--id", "nope", "--in", CSF],
        &["measure", "--id", "lcc", "--in", CSF, "--bogus"],
        &["attack", "--strategy", "rb", "--count", "500", "--in", CSF, "--seed", "1"],
        &["approx-error", "--measure", "avg_vertex_betweenness", "--runs", "0", "--in", CSF, "--seed", "1"],
        &["sis", "--beta", "1.5", "--delta", "0.1", "--in", CSF, "--seed", "1"],
        &["cascade", "--lmax", "0", "--r", "0.5", "--attack", "id:4", "--in", CSF, "--seed", "1"],
        &["sweep", "--model", "sis", "--values", "1", "--runs", "0", "--in", CSF, "--seed", "1"],
        &["netshield", "--k", "0", "--in", CSF],
        &["scale", "--measures", "lcc", "--sizes", "1000,100", "--seed", "1"],
    ];
    for args in cases {
        let o = run(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn runtime_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("two.edges");
    std::fs::write(&p, "0 1\n2 3\n").unwrap();
    let o = run(dir.path(), &["measure", "--id", "effective_resistance", "--in", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

fn byte_identical(args: &[&str]) {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let mut full: Vec<&str> = args.to_vec();
        full.extend(["--out", name]);
        let o = run(dir.path(), &full);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        outputs.push(std::fs::read(dir.path().join(name)).unwrap());
    }
    assert_eq!(outputs[0], outputs[1], "{args:?}");
}

#[test]
fn stochastic_commands_are_reproducible() {
    byte_identical(&["attack", "--strategy", "rnd", "--count", "10", "--in", CSF, "--seed", "4"]);
    byte_identical(&["defend", "--strategy", "random_addition", "--budget", "5", "--attack", "rb:10", "--in", CSF, "--seed", "4"]);
    byte_identical(&["sis", "--strength", "3", "--delta", "0.2", "--steps", "200", "--in", CSF, "--seed", "4"]);
    byte_identical(&["approx-error", "--measure", "avg_edge_betweenness", "--k-grid", "5,20", "--runs", "3", "--in", CSF, "--seed", "4"]);
}

#[test]
fn jobs_do_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["sweep", "--model", "cascade", "--values", "0,0.5,1", "--runs", "4", "--in", "gen:grid:rows=8,cols=8,shortcuts=4,seed=2", "--seed", "9"];
    let one = run(dir.path(), &[&["--jobs", "1"], &base[..]].concat());
    let four = run(dir.path(), &[&["--jobs", "4"], &base[..]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn manifest_records_digest_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["cascade", "--lmax", "0.8", "--r", "0.2", "--attack", "id:3", "--in", "gen:grid:rows=6,cols=6", "--seed", "2", "--out", "c.csv"];
    assert_eq!(run(dir.path(), &args).status.code(), Some(0));
    let first = std::fs::read(dir.path().join("c.csv")).unwrap();
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("c.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["input"]["n"], 36);
    assert_eq!(manifest["input"]["m"], 60);
    assert_eq!(manifest["config"]["command"]["cascade"]["seed"], 2);
    assert!(manifest["duration_secs"].as_f64().is_some());
    std::fs::remove_file(dir.path().join("c.csv")).unwrap();
    assert_eq!(run(dir.path(), &["replay", "c.csv.manifest.json"]).status.code(), Some(0));
    assert_eq!(std::fs::read(dir.path().join("c.csv")).unwrap(), first);
}

#[test]
fn digest_follows_the_edge_set() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        std::fs::write(dir.path().join(name), text).unwrap();
        let out = format!("{name}.csv");
        assert_eq!(run(dir.path(), &["measure", "--id", "lcc", "--in", name, "--out", &out]).status.code(), Some(0));
        let m: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join(format!("{out}.manifest.json"))).unwrap()).unwrap();
        m["input"]["sha256"].as_str().unwrap().to_string()
    };
    let a = write("a.edges", "0 1\n1 2\n");
    let b = write("b.edges", "# reordered\n2 1\n1 0\n0 1\n");
    let c = write("c.edges", "0 1\n1 2\n0 2\n");
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn out_dir_environment_variable() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("results");
    let o = Command::new(BIN)
        .current_dir(dir.path())
        .env("NETROBUST_OUT_DIR", &target)
        .args(["netshield", "--k", "3", "--in", CSF, "--out", "ns.json"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(target.join("ns.json")).unwrap()).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 3);
    assert!(v["eigendrop"].as_f64().unwrap() > 0.0);
}

#[test]
fn monitor_file_feeds_the_epidemic() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["netshield", "--k", "5", "--in", CSF, "--out", "ns.json"]).status.code(), Some(0));
    let o = run(dir.path(), &["sir", "--beta", "0.2", "--delta", "0.3", "--steps", "50", "--monitor", "ns.json", "--in", CSF, "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("step,susceptible,infected,recovered,infected_fraction\n"));
    for line in text.lines().skip(1) {
        let f: Vec<usize> = line.split(',').take(4).map(|x| x.parse().unwrap()).collect();
        assert_eq!(f[1] + f[2] + f[3], 75);
    }
}

#[test]
fn approx_error_is_zero_at_full_k() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["approx-error", "--measure", "avg_vertex_betweenness", "--k-grid", "80", "--runs", "3", "--in", CSF, "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let err: f64 = text.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!(err.abs() < 1e-9);
}

#[test]
fn scale_marks_timeouts_and_fills_the_grid() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &["scale", "--measures", "lcc,avg_vertex_betweenness", "--sizes", "100,1000,10000", "--budget", "1", "--seed", "1"],
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().filter(|r| r.starts_with("lcc,")).all(|r| !r.ends_with("TIMEOUT")));
    assert_eq!(rows[5], "avg_vertex_betweenness,10000,TIMEOUT");
}
