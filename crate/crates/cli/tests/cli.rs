use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn pwc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pwc-relu")).current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const RAMP: &str = r#"{"kind":"halfspaces","box":{"lo":[0,0],"hi":[1,1]},"dim":2,"normals":[[1,0]],"offsets":[0.5]}"#;

fn ramp_network(dir: &Path) {
    fs::write(dir.join("ramp.json"), RAMP).unwrap();
    let o = pwc(dir, &["build", "ramp.json", "--eps", "0.1", "--out", "net.json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "2\u{2013}1\u{2013}1\u{2013}1");
}

#[test]
fn build_and_eval() {
    let tmp = tempfile::tempdir().unwrap();
    ramp_network(tmp.path());
    fs::write(tmp.path().join("pts.txt"), "0.2 0.5\n# comment\n0.55,0.1\n\n0.9 0.9\n").unwrap();
    let o = pwc(tmp.path(), &["eval", "net.json", "pts.txt"]);
    assert!(o.status.success());
    let vals: Vec<f64> = stdout(&o).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(vals.len(), 3);
    assert_eq!(vals[0], 0.0);
    assert!((vals[1] - 0.5).abs() < 1e-12);
    assert_eq!(vals[2], 1.0);
}

#[test]
fn eval_empty_points() {
    let tmp = tempfile::tempdir().unwrap();
    ramp_network(tmp.path());
    fs::write(tmp.path().join("empty.txt"), "").unwrap();
    let o = pwc(tmp.path(), &["eval", "net.json", "empty.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn halfspace_error_row() {
    let tmp = tempfile::tempdir().unwrap();
    ramp_network(tmp.path());
    let o = pwc(tmp.path(), &["error", "net.json", "ramp.json", "--p", "1", "--samples", "200000", "--seed", "7", "--eps", "0.1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "scenario,p,eps,method,estimate,ci,bound,pass");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[3], "mc");
    let est: f64 = row[4].parse().unwrap();
    let ci: f64 = row[5].parse().unwrap();
    assert!((est - 0.05).abs() < 3.0 * ci + 1e-4, "{est} ± {ci}");

    let o = pwc(tmp.path(), &["error", "net.json", "ramp.json", "--p", "1", "--method", "exact2d"]);
    let est: f64 = stdout(&o).lines().nth(1).unwrap().split(',').nth(4).unwrap().parse().unwrap();
    assert!((est - 0.05).abs() < 1e-12);

    // same seed, same bytes
    let again = pwc(tmp.path(), &["error", "net.json", "ramp.json", "--p", "1", "--samples", "200000", "--seed", "7", "--eps", "0.1"]);
    assert_eq!(again.stdout, text.as_bytes());
}

#[test]
fn breaklines_and_render() {
    let tmp = tempfile::tempdir().unwrap();
    ramp_network(tmp.path());
    let o = pwc(tmp.path(), &["breaklines", "net.json", "--lo", "0,0", "--hi", "1,1", "--out", "bl.json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = pwc(tmp.path(), &["render", "bl.json", "--out", "bl.svg"]);
    assert!(o.status.success());
    let svg = fs::read_to_string(tmp.path().join("bl.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("stroke-dasharray"));
}

#[test]
fn example_circle_writes_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let args = ["example", "circle", "--n", "6", "--eps", "0.04", "--samples", "20000", "--resolution", "64"];
    let o = pwc(tmp.path(), &args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("2\u{2013}6\u{2013}1\u{2013}1"));
    let dir = tmp.path().join("out/circle/n6");
    for f in ["network.json", "errors.csv", "field.txt", "field.svg", "breaklines.json", "breaklines.svg", "report.json"] {
        assert!(dir.join(f).is_file(), "{f}");
    }
    let csv = fs::read(dir.join("errors.csv")).unwrap();
    let field = fs::read(dir.join("field.txt")).unwrap();
    assert!(pwc(tmp.path(), &args).status.success());
    assert_eq!(fs::read(dir.join("errors.csv")).unwrap(), csv);
    assert_eq!(fs::read(dir.join("field.txt")).unwrap(), field);

    let o = pwc(tmp.path(), &["render", "out/circle/n6/field.txt"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("<svg"));
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let o = pwc(tmp.path(), &["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));

    fs::write(tmp.path().join("bad.json"), "{not json").unwrap();
    assert_eq!(pwc(tmp.path(), &["build", "bad.json", "--eps", "0.1", "--out", "n.json"]).status.code(), Some(2));

    fs::write(tmp.path().join("ramp.json"), RAMP).unwrap();
    assert_eq!(pwc(tmp.path(), &["build", "ramp.json", "--eps", "-1", "--out", "n.json"]).status.code(), Some(2));
    assert_eq!(pwc(tmp.path(), &["example", "circle", "--n", "2"]).status.code(), Some(2));
    // missing file is a runtime failure
    assert_eq!(pwc(tmp.path(), &["eval", "nope.json", "pts.txt"]).status.code(), Some(1));
    assert_eq!(pwc(tmp.path(), &["--help"]).status.code(), Some(0));
}
