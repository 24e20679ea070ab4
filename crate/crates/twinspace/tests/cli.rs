use std::process::{Command, Output};

use serde_json::Value;

fn twinspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twinspace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn sieve_twin_12() {
    let o = twinspace(&["sieve", "--kind", "twin", "--limit", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "k,small,large\n1,5,7\n2,11,13\n3,17,19\n5,29,31\n7,41,43\n10,59,61\n12,71,73\n"
    );
}

#[test]
fn sieve_methods_agree() {
    let forms = twinspace(&["sieve", "--kind", "cousin", "--limit", "5000", "--method", "forms"]);
    let threads = twinspace(&["sieve", "--kind", "cousin", "--limit", "5000", "--method", "threads"]);
    assert_eq!(forms.status.code(), Some(0));
    assert_eq!(forms.stdout, threads.stdout);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["sieve", "--kind", "twin", "--limit", "0"][..],
        &["sieve", "--kind", "triplet", "--limit", "5"],
        &["sieve"],
        &["density", "--steps", "8", "--period"],
        &["density", "--steps", "0"],
        &["bounds", "--max", "100", "--step", "0"],
        &["gaps", "--max", "1"],
        &["frobnicate"],
    ] {
        let o = twinspace(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn verify_reports_agreement() {
    let o = twinspace(&["verify", "--kind", "twin", "--limit", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let err = stderr(&o);
    assert!(err.contains("3 strategies agree"), "{err}");
    assert!(err.contains("{1,2,3,5,7,10,12}"), "{err}");
}

#[test]
fn density_rows() {
    let o = twinspace(&["density", "--kind", "twin", "--steps", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "step,p5,form,alpha,p5r,c_num,c_den,c_float,true_num,true_den,true_float");
    assert_eq!(lines[1], "1,5,MPS,2,3,3,5,0.6,3,5,0.6");
    assert_eq!(lines[2], "2,7,MPL,1,6,18,35,0.5142857143,3,7,0.4285714286");
    assert!(lines[3].starts_with("3,11,MPS,2,9,162,385,"));
}

#[test]
fn bounds_and_gaps() {
    let o = twinspace(&["bounds", "--kind", "twin", "--max", "100", "--step", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("n,pi,bound9,bound11,bound20,ok9,ok11,ok20"));
    assert!(out.lines().any(|l| l.starts_with("31,4,3.1,")));

    let o = twinspace(&["gaps", "--max", "100"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "prime,next\n"));
}

fn csv_records(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn json_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Equal text, or equal numbers (JSON prints `7.0` where CSV prints `7`).
fn same_cell(a: &str, b: &str) -> bool {
    a == b || matches!((a.parse::<f64>(), b.parse::<f64>()), (Ok(x), Ok(y)) if x == y)
}

#[test]
fn csv_json_parity() {
    for args in [
        &["sieve", "--kind", "twin", "--limit", "300"][..],
        &["verify", "--kind", "cousin", "--limit", "300"],
        &["density", "--kind", "twin", "--steps", "5", "--period", "--window", "1000"],
        &["bounds", "--kind", "cousin", "--max", "400", "--step", "7"],
    ] {
        let csv = stdout(&twinspace(args));
        let mut json_args = args.to_vec();
        json_args.extend(["--format", "json"]);
        let json: Value = serde_json::from_str(&stdout(&twinspace(&json_args))).unwrap();
        let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
        let rows = json.as_array().unwrap();
        let from_json: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                let obj = r.as_object().unwrap();
                assert_eq!(obj.keys().map(String::as_str).collect::<Vec<_>>(), header);
                obj.values().map(json_cell).collect()
            })
            .collect();
        let from_csv = csv_records(&csv);
        assert_eq!(from_json.len(), from_csv.len(), "{args:?}");
        for (j, c) in from_json.iter().zip(&from_csv) {
            assert!(j.iter().zip(c).all(|(a, b)| same_cell(a, b)), "{args:?}: {j:?} vs {c:?}");
        }
    }
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pairs.csv");
    let o = twinspace(&["sieve", "--kind", "twin", "--limit", "1000", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let direct = twinspace(&["sieve", "--kind", "twin", "--limit", "1000"]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);

    let bad = dir.path().join("missing").join("x.csv");
    let o = twinspace(&["gaps", "--max", "10", "--out", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
