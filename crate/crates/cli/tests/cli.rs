use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use quick_xml::events::Event;
use quick_xml::Reader;
use serde_json::Value;
use tempfile::TempDir;

const FAN_FIXTURE: &str = r#"{
  "schema": 1,
  "n": 5,
  "edges": [[0, 1], [0, 2], [3, 4]],
  "coords": [[0, 1, 0, 1], [2, 1, 2, 1], [2, 1, -2, 1], [1, 1, 3, 1], [1, 1, -3, 1]],
  "provenance": "fan fixture"
}"#;

fn fanfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fanfree"))
        .args(args)
        .env_remove("FANFREE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn fixture(dir: &TempDir) -> PathBuf {
    let p = dir.path().join("fan.json");
    std::fs::write(&p, FAN_FIXTURE).unwrap();
    p
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let out = dir.path().join(name);
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", path_str(&out)]);
    let o = fanfree(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn check_reports_the_fan_fixture() {
    let dir = TempDir::new().unwrap();
    let input = fixture(&dir);
    let json = dir.path().join("w.json");
    let o = fanfree(&[
        "check",
        "--input",
        path_str(&input),
        "--k",
        "2",
        "--json",
        path_str(&json),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let payload: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(payload["schema"], 1);
    assert_eq!(payload["witnesses"].as_array().unwrap().len(), 1);
    assert_eq!(payload["witnesses"][0]["fan"], serde_json::json!([0, 1]));
    let o = fanfree(&["check", "--input", path_str(&input), "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn generated_k6_checks_clean() {
    let dir = TempDir::new().unwrap();
    let out = gen(&dir, "k6.json", &["--family", "straight-extremal", "--n", "6"]);
    let o = fanfree(&["check", "--input", path_str(&out), "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("15 edges"));
}

#[test]
fn generation_is_deterministic() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["--family", "quad-extremal", "--n", "11"][..],
        &["--family", "grid", "--side", "5", "--k", "3"][..],
    ] {
        let a = gen(&dir, "a.json", args);
        let first = std::fs::read(&a).unwrap();
        let b = gen(&dir, "b.json", args);
        assert_eq!(first, std::fs::read(&b).unwrap());
    }
}

#[test]
fn invalid_generator_parameters_are_usage_errors() {
    let o = fanfree(&["gen", "--family", "quad-extremal", "--n", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("6j = 20"));
    let o = fanfree(&["gen", "--family", "nonsense", "--n", "9"]);
    assert_eq!(o.status.code(), Some(2));
    let o = fanfree(&["check"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn star_search_values_and_budget() {
    let o = fanfree(&["star-search", "--m", "3", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
    let o = fanfree(&["star-search", "--m", "6", "--k", "2", "--long-only"]);
    assert_eq!(stdout(&o).trim(), "4");
    let o = fanfree(&["star-search", "--m", "8", "--k", "2", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_fanfree"))
        .args(["star-search", "--m", "8", "--k", "2"])
        .env("FANFREE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = fanfree(&["star-search", "--m", "4", "--k", "3", "--class", "2,1,1"]);
    assert_eq!(stdout(&o).trim(), "5");
}

#[test]
fn star_search_json_is_versioned() {
    let dir = TempDir::new().unwrap();
    let json = dir.path().join("s.json");
    let o = fanfree(&["star-search", "--m", "5", "--k", "2", "--json", path_str(&json)]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["maximum"], 4);
    assert_eq!(v["witnesses"][0]["m"], 5);
}

#[test]
fn bounds_reports() {
    let o = fanfree(&["bounds", "--n", "10", "--k", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["upper_bound"], 32);
    let o = fanfree(&["bounds", "--n", "10", "--k", "3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["upper_bound"], 48);

    let dir = TempDir::new().unwrap();
    let quad = gen(&dir, "q.json", &["--family", "quad-extremal", "--n", "12"]);
    let o = fanfree(&["bounds", "--k", "2", "--input", path_str(&quad)]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["edges"], 40);
    assert_eq!(v["verdict"], "extremal");

    let o = fanfree(&["bounds", "--n", "9", "--nonexistence"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total_degree"], 28);
    assert!(v["integer_solution"].is_null());
    assert_eq!(fanfree(&["bounds", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn audit_extremal_drawings() {
    let dir = TempDir::new().unwrap();
    for (name, args) in [
        ("quad.json", &["--family", "quad-extremal", "--n", "8"][..]),
        ("straight.json", &["--family", "straight-extremal", "--n", "10"][..]),
    ] {
        let input = gen(&dir, name, args);
        let report = dir.path().join("r.json");
        let o = fanfree(&[
            "audit",
            "--input",
            path_str(&input),
            "--k",
            "2",
            "--report",
            path_str(&report),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
        assert_eq!(v["schema"], 1);
        assert!(v["falsifications"].as_array().unwrap().is_empty());
        let arrows = v["arrows"].as_array().unwrap().len();
        assert_eq!(arrows, 2 * v["excluded"].as_array().unwrap().len());
        if name == "quad.json" {
            assert_eq!(v["plane"].as_array().unwrap().len(), 18);
            assert!(v["faces"].as_array().unwrap().iter().all(|f| f["arrows"] == 1));
        }
    }
}

#[test]
fn render_emits_valid_svg() {
    let dir = TempDir::new().unwrap();
    let input = gen(&dir, "g.json", &["--family", "straight-extremal", "--n", "8"]);
    let svg_path = dir.path().join("g.svg");
    let o = fanfree(&["render", "--input", path_str(&input), "--out", path_str(&svg_path)]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    let mut reader = Reader::from_str(&svg);
    let (mut circles, mut paths, mut marks) = (0, 0, 0);
    loop {
        match reader.read_event().expect("well-formed XML") {
            Event::Eof => break,
            Event::Empty(e) | Event::Start(e) => match e.name().as_ref() {
                b"circle" => circles += 1,
                b"path" => paths += 1,
                b"rect" => marks += 1,
                _ => {}
            },
            _ => {}
        }
    }
    assert_eq!((circles, paths), (8, 4 * 8 - 9));
    assert_eq!(marks, 8 - 3);

    let quad = gen(&dir, "q.json", &["--family", "quad-extremal", "--n", "8"]);
    assert_eq!(fanfree(&["render", "--input", path_str(&quad)]).status.code(), Some(2));
}

#[test]
fn round_trip_matches_in_memory_check() {
    use fanfree::constructions::gen_kq_subdivision;
    use fanfree::crossings::is_k_fan_free;
    let dir = TempDir::new().unwrap();
    let path = gen(&dir, "kq.json", &["--family", "kq-subdivision", "--q", "5"]);
    let loaded = fanfree::io::read_drawing(&path).unwrap().drawing;
    let direct: fanfree::Drawing = gen_kq_subdivision(5).unwrap().into();
    assert_eq!(loaded, direct);
    assert_eq!(is_k_fan_free(&loaded, 2), is_k_fan_free(&direct, 2));
}

#[test]
fn repro_with_tiny_budget_is_inconclusive_on_star_rows() {
    let dir = TempDir::new().unwrap();
    let json = dir.path().join("repro.json");
    let o = fanfree(&[
        "repro",
        "--budget",
        "1",
        "--max-n",
        "12",
        "--json",
        path_str(&json),
        "--archive",
        path_str(&dir.path().join("ce")),
    ]);
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with('[')).count(), 10);
    assert_eq!(o.status.code(), Some(3), "{text}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["criteria"][0]["status"], "inconclusive");
}
