use std::fs;
use std::process::{Command, Output};

use lowering::cli::{parse_records, render_records, Format, ResultRecord};
use lowering::criteria::Class;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lowering"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<ResultRecord> {
    parse_records(&stdout(o)).unwrap()
}

#[test]
fn classify_zero_case() {
    let o = run(&[
        "classify", "--p", "2", "--lambda", "2,1,0", "--mu", "1,1", "--i", "1", "--j", "3", "--A",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = records(&o);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].class, Class::Zero);
}

#[test]
fn classify_single_step_high_weight() {
    let o = run(&[
        "classify", "--p", "3", "--lambda", "4,2,0", "--mu", "4,1", "--i", "1", "--j", "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = records(&o);
    assert_eq!(r[0].class, Class::NonzeroHighWeight);
    assert_eq!(r[0].nu, Some(vec![3, 2]));
}

#[test]
fn usage_errors_exit_2() {
    let bad_mu = run(&[
        "classify", "--p", "2", "--lambda", "2,1,0", "--mu", "3,1", "--i", "1", "--j", "3",
    ]);
    assert_eq!(bad_mu.status.code(), Some(2));
    let garbled = run(&[
        "classify", "--p", "2", "--lambda", "2,x,0", "--mu", "1,1", "--i", "1", "--j", "3",
    ]);
    assert_eq!(garbled.status.code(), Some(2));
    let not_prime = run(&[
        "classify", "--p", "4", "--lambda", "2,1,0", "--mu", "1,1", "--i", "1", "--j", "3",
    ]);
    assert_eq!(not_prime.status.code(), Some(2));
    let bad_range = run(&[
        "classify", "--p", "2", "--lambda", "2,1,0", "--mu", "1,1", "--i", "2", "--j", "2",
    ]);
    assert_eq!(bad_range.status.code(), Some(2));
    let missing = run(&["classify", "--p", "2", "--lambda", "2,1,0"]);
    assert_eq!(missing.status.code(), Some(2));
    let unknown = run(&["classify", "--bogus"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn negative_weights_parse() {
    let o = run(&[
        "classify", "--p", "3", "--lambda", "3,1,-1", "--mu", "3,0", "--i", "1", "--j", "2",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let shifted = run(&[
        "classify", "--p", "3", "--lambda", "4,2,0", "--mu", "4,1", "--i", "1", "--j", "2",
    ]);
    assert_eq!(records(&o)[0].class, records(&shifted)[0].class);
    assert_eq!(records(&o)[0].nu, Some(vec![2, 1]));
}

#[test]
fn enumerate_counts() {
    let o = run(&[
        "enumerate",
        "--p",
        "2",
        "--lambda",
        "2,1,0",
        "--mu",
        "1,1",
        "--i",
        "1",
        "--j",
        "3",
    ]);
    let r = records(&o);
    assert_eq!(r.len(), 2);
    assert_eq!(r[0].a, Vec::<usize>::new());
    assert_eq!(r[0].class, Class::NonzeroNotHighWeight);
    assert_eq!(r[1].a, vec![2]);

    let adjacent = run(&[
        "enumerate",
        "--p",
        "2",
        "--lambda",
        "2,1,0",
        "--mu",
        "1,1",
        "--i",
        "1",
        "--j",
        "2",
    ]);
    assert_eq!(records(&adjacent).len(), 1);

    let wide = run(&[
        "enumerate",
        "--p",
        "3",
        "--lambda",
        "3,2,1,1,0",
        "--mu",
        "3,1,1,0",
        "--i",
        "1",
        "--j",
        "5",
    ]);
    assert_eq!(records(&wide).len(), 8);
}

#[test]
fn exists_returns_witness() {
    let o = run(&[
        "exists", "--p", "2", "--lambda", "3,2,1,0", "--mu", "3,2,0", "--i", "1", "--j", "3",
    ]);
    let r = records(&o);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].class, Class::NonzeroHighWeight);
    assert_eq!(r[0].a, vec![2]);
    assert!(r[0].witness_eps.is_some());

    let none = run(&[
        "exists", "--p", "2", "--lambda", "2,1,0", "--mu", "1,1", "--i", "1", "--j", "3",
    ]);
    assert_eq!(none.status.code(), Some(0));
    assert!(records(&none).is_empty());
}

#[test]
fn csv_columns_are_fixed() {
    let o = run(&[
        "enumerate",
        "--p",
        "2",
        "--lambda",
        "2,1,0",
        "--mu",
        "1,1",
        "--i",
        "1",
        "--j",
        "3",
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rd.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ResultRecord::CSV_HEADER);
    let rows: Vec<csv::StringRecord> = rd.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[1][1], "2,1,0");
    assert_eq!(&rows[1][6], "Zero");
}

#[test]
fn json_round_trip() {
    let o = run(&[
        "sweep",
        "--p",
        "2,3",
        "--n",
        "3,4",
        "--max-lambda1",
        "2",
        "--max-size",
        "3",
        "--mode",
        "checked",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let recs = records(&o);
    assert!(!recs.is_empty());
    assert!(recs
        .iter()
        .all(|r| r.checks.as_ref().is_some_and(|c| c.values().all(|&ok| ok))));
    let again = parse_records(&render_records(&recs, Format::Json).unwrap()).unwrap();
    assert_eq!(again, recs);
    assert_eq!(render_records(&again, Format::Json).unwrap(), stdout(&o));
}

#[test]
fn sweep_is_deterministic_across_workers() {
    let base = [
        "sweep",
        "--p",
        "2,3",
        "--n",
        "3,4",
        "--max-lambda1",
        "2",
        "--max-size",
        "4",
    ];
    let one = run(&[&base[..], &["--workers", "1"]].concat());
    let four = run(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&four));
    assert!(records(&one).iter().all(|r| r.checks.is_none()));
}

#[test]
fn config_file_with_flags_winning() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(
        &cfg,
        "p = 3\nlambda = [2, 1, 0]\nmu = [1, 1]\ni = 1\nj = 3\nA = [2]\n",
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let from_file = records(&run(&["classify", "--config", cfg]));
    assert_eq!(from_file[0].p, 3);
    let overridden = records(&run(&["classify", "--config", cfg, "--p", "2"]));
    assert_eq!(overridden[0].p, 2);
    assert_eq!(overridden[0].class, Class::Zero);

    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "colour = 1\n").unwrap();
    assert_eq!(
        run(&["classify", "--config", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let o = run(&[
        "classify",
        "--p",
        "2",
        "--lambda",
        "2,1,0",
        "--mu",
        "1,1",
        "--i",
        "1",
        "--j",
        "3",
        "--A",
        "",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let recs = parse_records(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(recs[0].class, Class::NonzeroNotHighWeight);
}

#[test]
fn verify_small_sweep() {
    let o = run(&[
        "verify",
        "--p",
        "2,3",
        "--n",
        "3",
        "--max-lambda1",
        "3",
        "--workers",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("0 disagreements"), "{text}");
    assert!(text.contains("k_poly_def==k_poly_rec: pass"), "{text}");
}

#[test]
fn verify_json_summary() {
    let o = run(&[
        "verify",
        "--n",
        "3",
        "--mode",
        "existence",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suites"][0][0], "existence");
    assert!(v["pairs"].as_u64().unwrap() > 0);
}

#[test]
fn injected_fault_is_caught() {
    let o = run(&[
        "verify",
        "--n",
        "3",
        "--mode",
        "agreement",
        "--inject-fault",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(v["check"], "vanishing");
    assert!(v["case"]["lambda"].is_array());
}
