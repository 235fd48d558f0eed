use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_robustnet"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn robustnet")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn write_complete(path: &Path, n: usize) {
    let mut s = format!("n {n}\n");
    for i in 0..n {
        for j in i + 1..n {
            s += &format!("{i} {j}\n");
        }
    }
    fs::write(path, s).unwrap();
}

#[test]
fn robustness_of_complete_graph() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k6.txt");
    write_complete(&g, 6);
    let o = run(&["robustness", p(&g)]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("robustness: 3"), "{out}");
    assert!(out.contains("connectivity: 5"), "{out}");

    let o = run(&["robustness", p(&g), "--r", "4"]);
    assert!(stdout(&o).contains("4-robust: false"));
}

#[test]
fn limit_exit_code_is_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k30.txt");
    write_complete(&g, 30);
    let o = run(&["robustness", p(&g)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("coNP"));
    let o = run(&["robustness", p(&g), "--limit", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_input_exit_code_is_one() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("bad.txt");
    fs::write(&g, "n 3\n0 7\n").unwrap();
    assert_eq!(run(&["robustness", p(&g)]).status.code(), Some(1));
    assert_eq!(run(&["robustness", "/no/such/file"]).status.code(), Some(1));
}

#[test]
fn help_mentions_hardness() {
    let o = run(&["--help"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("coNP"));
}

#[test]
fn generation_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    let c = dir.path().join("c.txt");
    for (seed, out) in [("7", &a), ("7", &b), ("8", &c)] {
        let o = run(&["--seed", seed, "gen", "er", "--n", "30", "--p", "0.3", "--out", p(out)]);
        assert!(o.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn geometric_and_preferential_generation() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("geo.json");
    let o = run(&[
        "gen", "geom", "--n", "15", "--radius", "2", "--side", "10", "--out", p(&g),
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!(v["n"], 15);
    let pos = fs::read_to_string(dir.path().join("geo.json.pos")).unwrap();
    assert_eq!(pos.lines().filter(|l| !l.starts_with('#')).count(), 15);

    let ba = dir.path().join("ba.txt");
    let o = run(&["gen", "ba", "--n", "20", "--r", "2", "--out", p(&ba)]);
    assert!(o.status.success());
    let o = run(&["robustness", p(&ba), "--r", "2"]);
    assert!(stdout(&o).contains("2-robust: true"));
}

#[test]
fn cut_reports_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    // two triangles joined by one edge
    fs::write(&g, "n 6\n0 1\n0 2\n1 2\n3 4\n3 5\n4 5\n2 3\n").unwrap();
    let o = run(&["cut", p(&g), "--rho", "1", "--relaxed"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(v.is_object(), "{v}");
    let o = run(&["cut", p(&g), "--rho", "0"]);
    assert_eq!(stdout(&o).trim(), "null");
}

#[test]
fn sweep_writes_records_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    fs::write(
        &spec,
        r#"{"family": "erdos_renyi", "n": 12, "r": 1, "offsets": [-1, 1], "trials": 10}"#,
    )
    .unwrap();
    let out = dir.path().join("er.csv");
    let plot = dir.path().join("er.gp");
    let o = run(&[
        "sweep", "er", "--spec", p(&spec), "--out", p(&out), "--plot", p(&plot),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("family,"));
    assert!(csv.lines().count() > 2);
    assert!(fs::read_to_string(&plot).unwrap().contains("plot"));

    let o = run(&["sweep", "ba", "--spec", p(&spec), "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn consensus_and_cascade_run() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k7.txt");
    write_complete(&g, 7);
    let cfg = dir.path().join("c.json");
    fs::write(
        &cfg,
        r#"{"f": 1, "max_rounds": 200, "epsilon": 1e-6,
            "initial": [0, 1, 2, 3, 4, 5, 6],
            "adversaries": [{"node": 6, "strategy": {"kind": "constant", "value": 100}}]}"#,
    )
    .unwrap();
    let o = run(&["consensus", "--graph", p(&g), "--config", p(&cfg)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("converged: true") && err.contains("validity held: true"), "{err}");
    assert!(stdout(&o).starts_with("round,node,value,is_adversary"));

    let seeds = dir.path().join("s.txt");
    fs::write(&seeds, "0 1\n").unwrap();
    let o = run(&[
        "cascade", "--graph", p(&g), "--seed-set", p(&seeds), "--threshold", "2",
    ]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("infected 7 of 7"));
}

#[test]
fn gadget_writes_graph_and_roles() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.cnf");
    fs::write(&f, "c one clause\np nae3sat 3 1\n1 -2 3 0\n").unwrap();
    let out = dir.path().join("g.txt");
    let o = run(&["gadget", "--formula", p(&f), "--build", "g", "--out", p(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let roles = fs::read_to_string(dir.path().join("g.txt.roles.csv")).unwrap();
    let n: usize = fs::read_to_string(&out)
        .unwrap()
        .lines()
        .next()
        .unwrap()
        .trim_start_matches("n ")
        .parse()
        .unwrap();
    assert_eq!(roles.lines().count(), n + 1);

    let o = run(&["gadget", "--formula", p(&f), "--build", "grho", "--rho", "0", "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(1));
}
