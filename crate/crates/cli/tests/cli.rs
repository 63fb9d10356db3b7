use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tree_energy::cache::Cache;
use tree_energy_core::spectral::{EnergyOptions, Method};
use tree_energy_core::tree::bn_tree;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tree-energy"));
    c.env_remove("TREE_ENERGY_CACHE_DIR");
    c
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Value of `column` in the first data row of CSV output.
fn csv_field(text: &str, column: &str) -> String {
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let i = r.headers().unwrap().iter().position(|h| h == column).unwrap();
    r.records().next().unwrap().unwrap()[i].to_owned()
}

fn csv_column(text: &str, column: &str) -> Vec<String> {
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let i = r.headers().unwrap().iter().position(|h| h == column).unwrap();
    r.records().map(|rec| rec.unwrap()[i].to_owned()).collect()
}

fn energy_of(spec: &str) -> f64 {
    csv_field(&stdout(&run_ok(&["--no-cache", "energy", spec])), "energy").parse().unwrap()
}

#[test]
fn energy_examples() {
    assert!((energy_of("bn:0") - 3.4641016).abs() < 1e-7);
    assert!((energy_of("tstar:10,2") - energy_of("bn:1")).abs() <= 1e-9);
    let dir = tempfile::tempdir().unwrap();
    let p4 = dir.path().join("path4.txt");
    fs::write(&p4, "4\n0 1\n1 2\n2 3\n").unwrap();
    assert!((energy_of(p4.to_str().unwrap()) - 4.4721360).abs() < 1e-7);
    let g6 = dir.path().join("star.g6");
    fs::write(&g6, ">>graph6<<Cs\n").unwrap();
    assert!((energy_of(g6.to_str().unwrap()) - 2.0 * 3f64.sqrt()).abs() < 1e-9);
}

#[test]
fn every_output_embeds_config_and_version() {
    let csv = stdout(&run_ok(&["--no-cache", "alpha", "--d", "2..4", "--eps", "1e-8"]));
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "# engine_version=tree-energy-engine/1");
    assert!(lines.next().unwrap().contains("\"command\":\"alpha\""));
    assert_eq!(csv_column(&csv, "d"), ["2", "3", "4"]);

    let json = stdout(&run_ok(&["--no-cache", "--format", "json", "alpha", "--d", "2..4", "--eps", "1e-8"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["engine_version"], "tree-energy-engine/1");
    assert_eq!(v["config"]["eps"], 1e-8);
    assert_eq!(v["config"]["params"]["d"], "2..4");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["tail_bound"].as_f64().unwrap() <= 0.5e-8));
}

#[test]
fn output_is_deterministic() {
    for format in ["csv", "json"] {
        let args = ["--no-cache", "--format", format, "minimal", "--n", "2..9", "--d", "2"];
        assert_eq!(run_ok(&args).stdout, run_ok(&args).stdout);
    }
}

#[test]
fn cache_hits_and_transparency() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["--cache-dir", cache, "conjecture1", "--max-level", "6"];
    let first = run_ok(&args);
    assert!(stderr(&first).contains("cache: 0 hits, 7 misses"), "{}", stderr(&first));
    let second = run_ok(&args);
    assert!(stderr(&second).contains("cache: 7 hits, 0 misses"), "{}", stderr(&second));
    let uncached = run_ok(&["--no-cache", "conjecture1", "--max-level", "6"]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, uncached.stdout);
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        bin()
            .env("TREE_ENERGY_CACHE_DIR", dir.path())
            .args(["energy", "bn:3"])
            .output()
            .unwrap()
    };
    run();
    assert!(stderr(&run()).contains("cache: 1 hits, 0 misses"));
}

#[test]
fn stale_version_and_corrupt_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let opts = EnergyOptions::default();
    Cache::with_version(Some(dir.path().into()), "tree-energy-engine/0")
        .energy(&bn_tree(2).unwrap(), Method::Cross, &opts)
        .unwrap();
    let args = ["--cache-dir", dir.path().to_str().unwrap(), "energy", "bn:2"];
    let out = run_ok(&args);
    assert!(stderr(&out).contains("cache: 0 hits, 1 misses"), "{}", stderr(&out));
    assert!(stderr(&run_ok(&args)).contains("cache: 1 hits, 0 misses"));

    for sub in fs::read_dir(dir.path()).unwrap() {
        for f in fs::read_dir(sub.unwrap().path()).unwrap() {
            fs::write(f.unwrap().path(), "garbage").unwrap();
        }
    }
    let out = run_ok(&args);
    assert!(stderr(&out).contains("corrupt"), "{}", stderr(&out));
    assert!(stderr(&out).contains("cache: 0 hits, 1 misses"));
    assert_eq!(out.stdout, run_ok(&["--no-cache", "energy", "bn:2"]).stdout);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| bin().args(args).output().unwrap().status.code();
    assert_eq!(code(&["--no-cache", "alpha", "--d", "2", "--eps", "1e-30"]), Some(1));
    assert_eq!(code(&["--no-cache", "alpha", "--d", "1..3"]), Some(1));
    assert_eq!(code(&["--no-cache", "energy", "tstar:10"]), Some(1));
    assert_eq!(code(&["--no-cache", "energy", "/nonexistent/tree.txt"]), Some(1));
    assert_eq!(code(&["--no-cache", "bogus"]), Some(1));
    assert_eq!(code(&["--no-cache", "energy", "bn:12"]), Some(2));
    assert_eq!(code(&["--no-cache", "conjecture1", "--max-level", "11"]), Some(2));
    assert_eq!(code(&["--no-cache", "minimal", "--n", "21", "--d", "2"]), Some(2));
    // A clamp this coarse drops real eigenvalues from the dense engine only.
    assert_eq!(
        code(&["--no-cache", "--zero-clamp", "1", "energy", "--method", "cross", "cstar:2,6"]),
        Some(3)
    );
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn invalid_file_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "3\n0 1\n0 x\n").unwrap();
    let out = bin().args(["--no-cache", "energy", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn commands_agree_with_each_other() {
    let minimal = stdout(&run_ok(&["--no-cache", "minimal", "--n", "2..14", "--d", "2"]));
    let ns = csv_column(&minimal, "n");
    let mins = csv_column(&minimal, "min_energy");
    for (n, e) in ns.iter().zip(&mins) {
        let direct = energy_of(&format!("tstar:{n},2"));
        assert!((direct - e.parse::<f64>().unwrap()).abs() <= 1e-9, "n={n}");
    }
    assert!(csv_column(&minimal, "tstar_match").iter().all(|v| v == "true"));

    let conj = stdout(&run_ok(&["--no-cache", "conjecture1", "--max-level", "2"]));
    for (size, e) in csv_column(&conj, "vertex_count").iter().zip(csv_column(&conj, "energy")) {
        let direct = energy_of(&format!("tstar:{size},2"));
        assert!((direct - e.parse::<f64>().unwrap()).abs() <= 1e-9);
    }
}

#[test]
fn side_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_owned();

    run_ok(&["--no-cache", "energy", "cstar:3,3", "--spectrum", &p("spec.csv")]);
    let spec = fs::read_to_string(p("spec.csv")).unwrap();
    assert!(spec.starts_with("# engine_version="));
    assert_eq!(csv_column(&spec, "eigenvalue").len(), 13);

    run_ok(&["--no-cache", "construct", "tstar:40,3", "--write", &p("t.txt")]);
    assert!((energy_of(&p("t.txt")) - energy_of("tstar:40,3")).abs() <= 1e-12);
    run_ok(&["--no-cache", "construct", "bn:2", "--write", &p("b.g6"), "--write-format", "graph6"]);
    assert!((energy_of(&p("b.g6")) - energy_of("bn:2")).abs() <= 1e-12);

    run_ok(&["--no-cache", "conjecture1", "--max-level", "3", "--plot", &p("plot.txt"), "--out", &p("c.csv")]);
    let plot = fs::read_to_string(p("plot.txt")).unwrap();
    let data: Vec<&str> = plot.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 4);
    assert!(data.iter().all(|l| l.split(' ').count() == 2));
    assert!(Path::new(&p("c.csv")).exists());

    let out = run_ok(&[
        "--no-cache",
        "hypo-census",
        "--max-n",
        "8",
        "--sweep-max",
        "60",
        "--sweep-full",
        "30",
        "--sweep-stride",
        "10",
        "--sweep-out",
        &p("sweep.csv"),
    ]);
    let census = stdout(&out);
    assert!(census.contains("# summary sweep_strongly_from_n=23"), "{census}");
    assert!(census.contains("# summary sweep_hypoenergetic_from_n=3"));
    let sweep = fs::read_to_string(p("sweep.csv")).unwrap();
    assert_eq!(csv_column(&sweep, "n").len(), 30 + 3);
    assert_eq!(csv_column(&census, "hypoenergetic"), ["1", "0", "1", "1", "0", "0", "1", "0"]);
}

#[test]
fn minimal_on_paths_only() {
    let out = stdout(&run_ok(&["--no-cache", "minimal", "--n", "4", "--d", "1"]));
    assert_eq!(csv_field(&out, "tree_count"), "1");
    assert_eq!(csv_field(&out, "argmin_code"), "((())())");
    assert_eq!(csv_field(&out, "tstar_match"), "");
}
