use std::io::Write;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hironaka"))
}

fn problem(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn run(args: &[&str], json: &str) -> Output {
    let f = problem(json);
    bin().args(args).arg(f.path()).output().unwrap()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const CUSP: &str = r#"{"variables":["x","y"],"generators":["x^2 + y^3","x*y"]}"#;

#[test]
fn std_basis_of_the_cusp() {
    let v = stdout_json(&run(&["std-basis", "--json"], CUSP));
    assert_eq!(v["elements"].as_array().unwrap().len(), 3);
    assert_eq!(v["certified"], true);
}

#[test]
fn hilbert_values_of_a_double_line() {
    let v = stdout_json(&run(&["hilbert", "--eta-max", "5", "--json"], r#"{"variables":["x","y"],"generators":["x^2"]}"#));
    assert_eq!(v["values"], serde_json::json!([1, 3, 5, 7, 9, 11]));
}

#[test]
fn ring_report_of_crossing_lines() {
    let v = stdout_json(&run(&["ring-report", "--json"], r#"{"variables":["x","y"],"generators":["x*y"]}"#));
    assert_eq!(v["dim"], 1);
    assert_eq!(v["pd"], 1);
    assert_eq!(v["betti"], serde_json::json!([1, 1]));
    assert_eq!(v["cm"], true);
    assert_eq!(v["gorenstein"], true);
}

#[test]
fn field_override_and_modules() {
    let v = stdout_json(&run(&["betti", "--field", "zp:7", "--json"], CUSP));
    assert_eq!(v["field"], "zp:7");
    assert_eq!(v["betti"], serde_json::json!([1, 2, 1]));
    let module = r#"{"variables":["x","y"],"generators":[["x","y"],["y^2","0"]]}"#;
    let v = stdout_json(&run(&["resolve", "--json"], module));
    assert_eq!(v["ranks"], serde_json::json!([2]));
}

#[test]
fn stdin_input() {
    let mut child = bin()
        .args(["diagram", "--json", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(CUSP.as_bytes()).unwrap();
    let v = stdout_json(&child.wait_with_output().unwrap());
    assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    let code = |out: Output| out.status.code().unwrap();
    assert_eq!(code(bin().arg("no-such-command").output().unwrap()), 1);
    assert_eq!(code(run(&["truncate"], CUSP)), 1);
    assert_eq!(code(run(&["std-basis"], r#"{"variables":["x","y"],"generators":["x + z"]}"#)), 2);
    assert_eq!(code(run(&["std-basis"], r#"{"variables":["x"],"#)), 2);
    assert_eq!(code(run(&["std-basis"], r#"{"variables":["x"],"generators":["x"],"extra":1}"#)), 2);
    assert_eq!(code(run(&["std-basis"], r#"{"variables":["x","x"],"generators":["x"]}"#)), 1);
    assert_eq!(code(run(&["flat-check"], CUSP)), 1);
    let not_cm = r#"{"variables":["x","y"],"generators":["x^2","x*y"],"map_images":["y"]}"#;
    assert_eq!(code(run(&["flat-check"], not_cm)), 3);
    assert_eq!(code(run(&["ring-report"], r#"{"variables":["x"],"generators":["1 + x"]}"#)), 3);
    assert_eq!(code(bin().arg("--help").output().unwrap()), 0);
}

#[test]
fn size_caps() {
    let seven = r#"{"variables":["a","b","c","d","e","f","g"],"generators":["a*b"]}"#;
    assert_eq!(run(&["diagram"], seven).status.code(), Some(1));
    assert!(run(&["diagram", "--allow-large"], seven).status.success());
    let high = r#"{"variables":["x"],"generators":["x^17"]}"#;
    assert_eq!(run(&["diagram"], high).status.code(), Some(1));
    assert!(run(&["diagram", "--allow-large"], high).status.success());
}

#[test]
fn flatness_verdicts() {
    let flat = r#"{"variables":["x","y"],"generators":["x^2 - y"],"map_images":["y"]}"#;
    assert_eq!(stdout_json(&run(&["flat-check", "--json"], flat))["flat"], true);
    let not_flat = r#"{"variables":["x","y"],"generators":["x*y"],"map_images":["y"]}"#;
    assert_eq!(stdout_json(&run(&["flat-check", "--json"], not_flat))["flat"], false);
}

#[test]
fn truncation_commands() {
    let v = stdout_json(&run(&["truncate", "--mu", "2", "--json"], CUSP));
    assert_eq!(v["diagram_equal"], false);
    assert_eq!(v["truncated"], serde_json::json!(["x^2", "x*y"]));
    let v = stdout_json(&run(&["mu0-scan", "--mu-max", "6", "--json"], CUSP));
    assert_eq!(v["empirical_mu0"], 3);
    assert_eq!(v["candidate_mu0"], 4);
    assert_eq!(v["scan"].as_array().unwrap().len(), 7);
}

#[test]
fn text_output_is_default() {
    let out = run(&["betti"], CUSP);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "betti (quotient): 1,2,1\npd: 2\n");
}
