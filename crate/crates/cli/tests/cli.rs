use std::path::Path;
use std::process::{Command, Output};

fn nearring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nearring"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn construct_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let p = path.to_str().unwrap().to_string();
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &p]);
    let o = nearring(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    p
}

#[test]
fn check_prints_one_line_per_property() {
    let dir = tempfile::tempdir().unwrap();
    let f = construct_to(dir.path(), "t.nr", &["tim1", "--field", "gf3", "--k", "2"]);
    let o = nearring(&["check", "--file", &f, "--props", "f,a,ring,nearfield"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[1..], ["f: true", "a: true", "ring: false", "nearfield: false"]);
}

#[test]
fn search_order_16_prints_zero_representatives() {
    let o = nearring(&["search", "--group", "Z2^4", "--mode", "f-not-a"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("0 representatives\n"), "{out}");
    assert!(out.contains("exhaustive yes"));
    assert!(out.is_ascii());
}

#[test]
fn classify_order_9_passes() {
    let o = nearring(&["classify", "--p2", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict pass"));
}

#[test]
fn search_writes_a_directory_that_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("reps");
    let o = nearring(&["search", "--group", "Z3^2", "--mode", "f", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("3 representatives"));
    for i in 0..3 {
        let f = out.join(format!("rep_{i:03}.nr"));
        let c = nearring(&["check", "--file", f.to_str().unwrap(), "--props", "f"]);
        assert_eq!(c.status.code(), Some(0));
        assert!(stdout(&c).contains("f: true"));
    }
    let manifest = std::fs::read_to_string(out.join("manifest.tsv")).unwrap();
    assert!(manifest.lines().all(|l| l.split('\t').count() == 2));
}

#[test]
fn iso_distinguishes_the_two_near_fields_of_order_9() {
    let dir = tempfile::tempdir().unwrap();
    let g = construct_to(dir.path(), "g.nr", &["gf", "--p", "3", "--k", "2"]);
    let d = construct_to(dir.path(), "d.nr", &["dickson9"]);
    let u = construct_to(dir.path(), "u.nr", &["unitex", "--p", "3", "--k", "2"]);
    let t = construct_to(dir.path(), "t.nr", &["tim1", "--field", "gf3", "--k", "2"]);
    assert_eq!(nearring(&["iso", &g, &d]).status.code(), Some(1));
    let o = nearring(&["iso", &u, &t]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("isomorphic\nmap "));
}

#[test]
fn audit_and_info_on_constructions() {
    let dir = tempfile::tempdir().unwrap();
    let h = construct_to(dir.path(), "h.nr", &["tg1"]);
    let m = construct_to(dir.path(), "m.nr", &["m0", "--group", "Z3"]);
    for f in [&h, &m] {
        let o = nearring(&["audit", "--file", f]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
    let o = nearring(&["info", "--file", &m]);
    let out = stdout(&o);
    assert!(out.contains("units 2 "));
    assert!(out.contains("simple true"));
    let o = nearring(&["info", "--group", "Z2^4"]);
    assert!(stdout(&o).contains("automorphisms 20160"));
}

#[test]
fn order81_construction_reports_the_closure_defect() {
    let o = nearring(&["construct", "unitex1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("s_36 o s_36"));
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(nearring(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(nearring(&["search", "--group", "Z2^4", "--mode", "x"]).status.code(), Some(2));
    assert_eq!(nearring(&["search", "--group", "Q8"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.nr");
    std::fs::write(&bad, "NEARRING v1\norder 2\n").unwrap();
    let o = nearring(&["check", "--file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line "));
}

#[test]
fn invalid_tables_are_a_failed_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.nr");
    // Z2 with 1*1 = 0: identity fails
    std::fs::write(&bad, "NEARRING v1\norder 2\none 1\nadd\n0 1\n1 0\nmul\n0 0\n0 0\n").unwrap();
    let o = nearring(&["check", "--file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exhausted_budget_exits_3() {
    let o = nearring(&["--timeout", "0", "search", "--group", "Z2^4", "--mode", "f"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("exhaustive no"));
    assert_eq!(nearring(&["--cap", "8", "search", "--group", "Z2^4"]).status.code(), Some(3));
}
