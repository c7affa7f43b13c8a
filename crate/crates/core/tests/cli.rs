use std::process::{Command, Output};

fn windschitl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_windschitl")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn coeffs_families() {
    let o = windschitl(&["coeffs", "a", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("6,-2260261/1178793000"));

    let o = windschitl(&["coeffs", "b", "10"]);
    assert!(stdout(&o).lines().any(|l| l == "10,1/5248800"));

    let o = windschitl(&["coeffs", "lu", "0"]);
    assert_eq!(stdout(&o), "7,1/810\n9,-67/42525\n11,19/8505\n");

    let o = windschitl(&["coeffs", "c", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,value\n0,1/1\n1,0/1\n2,1/135\n");

    let o = windschitl(&["coeffs", "unknown", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn approx_points() {
    let o = windschitl(&["approx", "w1", "1", "--format", "json", "--digits", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "approx");
    assert_eq!(v["precision_bits"], 256);
    let mid: f64 = v["rows"][0]["mid"].as_str().unwrap().parse().unwrap();
    assert!((mid - 1.0).abs() < 2e-4);

    let o = windschitl(&["approx", "w0", "10", "--format", "csv", "--digits", "12"]);
    let line = stdout(&o).lines().nth(1).unwrap().to_string();
    let mid: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
    assert!((mid / 3628800.0 - 1.0).abs() < 1e-6);

    assert_eq!(windschitl(&["approx", "w1", "0"]).status.code(), Some(2));
    assert_eq!(windschitl(&["approx", "w1", "-3"]).status.code(), Some(2));
    assert_eq!(windschitl(&["approx", "w1", "abc"]).status.code(), Some(2));
}

#[test]
fn table_defaults_and_selection() {
    let o = windschitl(&["table", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(reader.headers().unwrap().iter().collect::<Vec<_>>(), ["x", "w1", "wc1", "w01", "wl1"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 7);
    assert_eq!(&rows[0][1], "1.832e-4");
    assert_eq!(&rows[4][2], "4.370e-13");
    assert_eq!(&rows[6][4], "7.877e-18");

    let o = windschitl(&["table", "--xs", "2", "--formulas", "w1", "--format", "csv"]);
    assert_eq!(stdout(&o), "x,w1\n2,2.668e-6\n");

    assert_eq!(windschitl(&["table", "--xs", "0"]).status.code(), Some(2));
    assert_eq!(windschitl(&["table", "--formulas", "w7"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = windschitl(&["table", "--format", "json"]);
    let b = windschitl(&["table", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let a = windschitl(&["verify", "ordering", "--grid", "1:20:0.5", "--format", "csv"]);
    let b = windschitl(&["verify", "ordering", "--grid", "1:20:0.5", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_checks() {
    let o = windschitl(&["verify", "ordering", "--grid", "1:100:0.25"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("397 points, 0 violations, 0 inconclusive"));

    let o = windschitl(&["verify", "remainder", "--n", "4:8", "--xs", "1,2,5,10"]);
    assert_eq!(o.status.code(), Some(0));

    let o = windschitl(&["verify", "rate", "--formula", "w1", "--x", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("-163/340200"));

    let o = windschitl(&["verify", "--check", "f1shape", "--grid", "1:10:0.5"]);
    assert_eq!(o.status.code(), Some(0));

    // the lower link is an equality at x = 1
    let o = windschitl(&["verify", "sandwich", "--grid", "1:3:1"]);
    assert_eq!(o.status.code(), Some(4));
    let o = windschitl(&["verify", "sandwich", "--grid", "2:10:2"]);
    assert_eq!(o.status.code(), Some(0));

    assert_eq!(windschitl(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(windschitl(&["verify", "ordering", "--grid", "0.5:2:0.5"]).status.code(), Some(2));
}

#[test]
fn precision_limits() {
    assert_eq!(windschitl(&["approx", "w1", "1", "--precision", "63"]).status.code(), Some(2));
    assert_eq!(windschitl(&["approx", "w1", "1", "--precision", "4097"]).status.code(), Some(2));
    assert_eq!(windschitl(&["approx", "w1", "1", "--precision", "64"]).status.code(), Some(0));
    // at 64 bits the oracle cannot resolve the x = 1e4 probe
    let o = windschitl(&["verify", "rate", "--formula", "w1", "--x", "10000", "--precision", "64"]);
    assert!(matches!(o.status.code(), Some(3) | Some(4)), "{:?}", o.status);
}
