use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hgpoly::io;
use serde_json::Value;

const THREE_GAMMA: &str = r#"{"n":2,"factors":[
    {"A":[-1,-1],"c":"1","sign":1},{"A":[2,-1],"c":"-2","sign":1},{"A":[-1,2],"c":"-2","sign":1}]}"#;

fn hgpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgpoly")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn polynomial_of(json: &str) -> hgpoly::LaurentPolynomial {
    io::polynomial_from_str(json).unwrap()
}

fn expr(s: &str) -> hgpoly::LaurentPolynomial {
    io::parse_polynomial_expr(s, 2).unwrap()
}

#[test]
fn construct_from_vertices_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let cross = dir.path().join("cross.json");
    fs::write(&cross, r#"{"n":2,"vertices":[[1,0],[-1,0],[0,1],[0,-1]]}"#).unwrap();
    let o = hgpoly(&["construct", cross.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(polynomial_of(&stdout(&o)), expr("x + y + 4xy + x^2y + xy^2"));

    let o = hgpoly(&["construct", "2,0;3,2;2,3;0,1"]);
    assert_eq!(polynomial_of(&stdout(&o)), expr("240x^2 + 3y + 240xy + 1080x^2y + 30xy^2 + 180x^2y^2 + 36x^3y^2 + 2x^2y^3"));

    let out = dir.path().join("box.json");
    let o = hgpoly(&["construct", "0,0;1,0;0,1;1,1", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(polynomial_of(&fs::read_to_string(&out).unwrap()), expr("1 + x + y + xy"));
    // the human-readable listing goes to stdout when a file is written
    assert!(!stdout(&o).trim_start().starts_with('{'));
}

#[test]
fn construct_errors_use_documented_exit_codes() {
    let o = hgpoly(&["construct", "0,0;1,1;2,2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("degenerate"));
    assert_eq!(code(&hgpoly(&["construct", r#"{"n":2,"#])), 3);
    assert_eq!(code(&hgpoly(&["construct", "a,b"])), 3);
    // no partial output on error
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never.json");
    hgpoly(&["construct", "0,0;1,1", "-o", out.to_str().unwrap()]);
    assert!(!out.exists());
}

#[test]
fn horn_and_verify() {
    let o = hgpoly(&["horn", THREE_GAMMA]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pairs"].as_array().unwrap().len(), 2);

    let o = hgpoly(&["verify", "x + y + 6xy + x^2y^2", THREE_GAMMA]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "true"));
    let o = hgpoly(&["verify", "1 + x", THREE_GAMMA]);
    assert_eq!((code(&o), stdout(&o).trim()), (1, "false"));

    let bad = r#"{"n":2,"factors":[{"A":[1,0],"c":"1","sign":0}]}"#;
    assert_eq!(code(&hgpoly(&["verify", "1 + x", bad])), 3);
}

#[test]
fn optimal_verdicts_map_to_exit_codes() {
    let fast = ["--res", "160", "--angles", "256"];
    let o = hgpoly(&[&["optimal", "3x + 12xy + 2x^2y + 2y^2 + 3xy^2"][..], &fast].concat());
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["optimal"], Value::Bool(true));
    assert_eq!(v["components"].as_array().unwrap().len(), 5);

    let o = hgpoly(&[&["optimal", "x + y + 4xy + x^2y + xy^2"][..], &fast].concat());
    assert_eq!(code(&o), 1);

    let o = hgpoly(&["optimal", "1 + x + y", "--window", "1,2,3"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn amoeba_writes_image_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let ppm = dir.path().join("a.ppm");
    let report = dir.path().join("a.json");
    let o = hgpoly(&[
        "amoeba",
        "1 + x + y",
        "--res",
        "64",
        "--angles",
        "128",
        "-o",
        ppm.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let bytes = fs::read(&ppm).unwrap();
    assert!(bytes.starts_with(b"P6\n64 64\n255\n"));
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["lattice_points"], 3);
}

#[test]
fn wca_and_deform_outputs() {
    let o = hgpoly(&["wca", "1 + x + y", "--res", "60", "--angles", "64", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,u,v"));
    for line in lines {
        let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!(f[1] > -1e-9 && f[2] > -1e-9 && f[1] + f[2] < 1.0 + 1e-9, "{line}");
    }

    let o = hgpoly(&[
        "deform",
        "3x + 12xy + 2x^2y + 2y^2 + 3xy^2",
        "--term",
        "1,1",
        "--eps",
        "0,11",
        "--res",
        "48",
        "--angles",
        "128",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(String::from).collect();
    assert_eq!(rows.len(), 2);
    let area = |r: &str| r.split(',').nth(1).unwrap().parse::<usize>().unwrap();
    assert!(area(&rows[0]) > area(&rows[1]));
}

#[test]
fn families_and_aster() {
    let o = hgpoly(&["build", "appell", "-5", "-4", "-4", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(polynomial_of(&stdout(&o)).len(), 19);

    let o = hgpoly(&["build", "gauss", "-2", "1", "1"]);
    assert_eq!(code(&o), 0);
    let p: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(p.is_object() || p.is_array());

    let o = hgpoly(&["aster", "--a", "-3", "--b", "1/2,1,2", "--c", "1/3,1,3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 1 + 3 * 2 * 3);

    assert_eq!(code(&hgpoly(&["aster", "--b", "1/0,1,2"])), 3);
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let run = || stdout(&hgpoly(&["orders", "x + y + 6xy + x^2y^2", "--res", "96", "--angles", "128"]));
    assert_eq!(run(), run());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&hgpoly(&["no-such-command"])), 2);
    assert!(Path::new(env!("CARGO_BIN_EXE_hgpoly")).exists());
}
