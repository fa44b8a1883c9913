use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfcodes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const CONFIG: &str = r#"
variant = "affine"
tasks = ["field-info", "qf", "code", "cwe", "ghw", "verify-lemmas"]
format = "json"

[tower]
p = 3
m1 = 2
m2 = 2

[form]
frobenius = [{ coeff = [1, 2], power = 0 }, { coeff = "g^3", power = 1 }]
"#;

#[test]
fn preset_list_has_examples_and_descent_fixture() {
    let o = run(&["preset", "list", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["sections"][0]["tables"][0]["rows"].as_array().unwrap();
    assert!(rows.len() >= 7);
    let find = |name: &str| {
        rows.iter()
            .find(|r| r[0] == name)
            .unwrap_or_else(|| panic!("{name} listed"))
    };
    assert_eq!(find("example-3.5")[1], "(3,1,5,3)");
    assert!(find("example-3.5")[4]
        .as_str()
        .unwrap()
        .contains("Tr(2x^10 + x^2)"));
    assert!(find("example-3.2")[4]
        .as_str()
        .unwrap()
        .contains("(1/3) Tr(x)^2"));
    assert_eq!(find("descent-5-2-1-1-n2")[3], "2");
}

#[test]
fn example_3_1_reproduces() {
    let o = run(&["preset", "run", "example-3.1"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let out: Vec<String> = stdout(&o)
        .lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .collect();
    assert!(out
        .iter()
        .any(|l| l == "parameters (enumerated) [2186, 4, 1458]_3"));
    assert!(out.iter().any(|l| l == "[728,729,729] 78 78 78"));
    assert!(out.iter().any(|l| l == "[566,810,810] 2 2 2"));
}

#[test]
fn example_3_6_hierarchy() {
    let o = run(&["ghw", "--preset", "example-3.6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let d: Vec<u64> = v["sections"][0]["tables"][0]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r[1].as_str().unwrap().parse().unwrap())
        .collect();
    assert_eq!(d, vec![1215, 1863, 2079, 2151, 2175, 2187]);
}

#[test]
fn example_3_3_exits_two_with_three_way_report() {
    let o = run(&["ghw", "--preset", "example-3.3"]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(
        out.contains("d_2: quoted 52830, closed 58320, brute 58320"),
        "{out}"
    );
}

#[test]
fn config_runs_are_byte_identical_across_runs_and_exec_modes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exp.toml");
    std::fs::write(&path, CONFIG).unwrap();
    let p = path.to_str().unwrap();
    let a = run(&["run", p]);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stderr)
    );
    let b = run(&["run", p]);
    let c = run(&["run", p, "--sequential", "--audit"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v["disagreements"].as_array().unwrap().is_empty());
    assert_eq!(c.status.code(), Some(0));
    // audit adds its own entries; every table must still match
    let w: serde_json::Value = serde_json::from_slice(&c.stdout).unwrap();
    let tables = |v: &serde_json::Value| -> Vec<serde_json::Value> {
        v["sections"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s["tables"].clone())
            .collect()
    };
    assert_eq!(tables(&v), tables(&w));
}

#[test]
fn malformed_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, CONFIG.replace("m2 = 2", "m2 = 2\nextra = 1")).unwrap();
    let o = run(&["run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("extra") && err.contains("line"), "{err}");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["code", "--preset", "nope"]).status.code(), Some(1));
    assert_eq!(run(&["code"]).status.code(), Some(1));
    assert_eq!(
        run(&["code", "--preset", "example-3.1", "--budget", "10"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn inadmissible_descent_is_refused_unless_requested() {
    assert_eq!(
        run(&["descend", "--preset", "descent-5-2-1-1-n2"])
            .status
            .code(),
        Some(1)
    );
    let o = run(&[
        "descend",
        "--preset",
        "descent-5-2-1-1-n2",
        "--allow-inadmissible",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("psi is not constant weight"));
}

#[test]
fn admissible_descent_agrees() {
    let o = run(&[
        "descend",
        "--preset",
        "descent-7-2-1-1-n3",
        "--ghw-r-max",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("verdict,agree\n"));
}
