//! End-to-end runs of the binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wlan-mac-lab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn manifest(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

const DCF: &str = "[scenario]\nname = quick\nprotocol = dcf\nstations = 4\nseed = 2\nduration_s = 0.05\n\
    [timing]\nsifs_us = 16\nslot_us = 9\nack_us = 44\nw_min = 16\nalpha = 6\n";

#[test]
fn example_prs_prints_the_plan() {
    let o = bin(&["example", "prs"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("r = [3, 2, 2, 1, 0]"));
    assert!(text.contains("RA-zone stations: E, X, Y, Z"));
}

#[test]
fn frames_round_trip() {
    let o = bin(&["frames", "encode", "Clear to send"]);
    assert_eq!(stdout(&o).trim(), "01 1100");
    let o = bin(&["frames", "decode", "01", "1100"]);
    assert_eq!(stdout(&o).trim(), "Clear to send");
    let o = bin(&["frames", "decode", "11", "0000"]);
    assert_eq!(o.status.code(), Some(3));
    let o = bin(&["frames", "table", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 26);
}

#[test]
fn analytic_csv_is_long_form() {
    let o = bin(&["analytic", "ra", "--sweep", "n=2,5,10", "--set", "w_min=32", "--set", "alpha=5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("parameter,value,output,result"));
    assert_eq!(lines.filter(|l| l.contains(",tau,")).count(), 3);
    let o = bin(&["analytic", "nothing"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simulate_writes_trace_and_station_table() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "quick.ini", DCF);
    let out = dir.path().join("out");
    let o = bin(&["simulate", &cfg, "--seed", "9", "--trace", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("seed             9"));
    let trace = std::fs::read_to_string(out.join("quick_trace.tsv")).unwrap();
    assert!(trace.starts_with("tick\tkind\tsubchannel\tstation\tdetail\n"));
    let per = std::fs::read_to_string(out.join("quick_stations.csv")).unwrap();
    assert_eq!(per.lines().count(), 5);
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.ini", &format!("{DCF}typo = 3\n"));
    let o = bin(&["simulate", &bad]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("typo") && err.contains("line 13"), "{err}");
    let noseed = write(dir.path(), "noseed.ini", &DCF.replace("seed = 2\n", ""));
    assert_eq!(bin(&["simulate", &noseed]).status.code(), Some(2));
    assert_eq!(bin(&["simulate", "/no/such/file.ini"]).status.code(), Some(2));
    assert_eq!(bin(&["bogus-command"]).status.code(), Some(2));
    // a scenario without an experiment cannot be swept
    assert_eq!(bin(&["sweep", &bad.replace("bad", "noseed")]).status.code(), Some(2));
}

#[test]
fn runtime_failure_exits_4_with_partial_file() {
    let dir = tempfile::tempdir().unwrap();
    let text = DCF.replace("stations = 4\n", "")
        + "[stations]\nA = 0\nB = 0\n[experiment]\nseeds = 1, 2\nsweep = timing.w_min\nvalues = 16\nprotocols = dcf, era\n";
    let cfg = write(dir.path(), "zero.ini", &text);
    let out = dir.path().join("res");
    let o = bin(&["sweep", &cfg, "--out", out.to_str().unwrap(), "--workers", "2"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(out.join("quick.csv.partial").exists());
    assert!(!out.join("quick.csv").exists());
}

#[test]
fn schedule_for_each_scheduler() {
    let o = bin(&["schedule", manifest("experiments/protocol_comparison.ini").to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "station_id,subchannel\nS1,1\nS2,2\nS3,3\n");

    let dir = tempfile::tempdir().unwrap();
    let prs = write(
        dir.path(),
        "prs.ini",
        &(DCF.replace("protocol = dcf", "protocol = prs").replace("stations = 4\n", "")
            + "[stations]\nA = 3.1\nB = 2.2\nC = 2.9\nD = 1.3\nE = 0.7\nX = 3.4, ra\nY = 1.2, ra\nZ = 2.1, ra\n"),
    );
    let o = bin(&["schedule", &prs, "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("station_id,zone,sru_start,sru_len,tones\n"));
    assert!(text.contains("*,RA,9,10,260"), "{text}");

    let era = write(
        dir.path(),
        "era.ini",
        &(DCF.replace("protocol = dcf", "protocol = era").replace("stations = 4\n", "")
            + "[stations]\nA = 4\nB = 1.5\nC = 2.7\nD = 30\nE = 3\n[schedule]\nflows = 2\n"),
    );
    let o = bin(&["schedule", &era]);
    let text = stdout(&o);
    assert!(text.contains("D load 30 -> HL") && text.contains("flow 2"), "{text}");

    let dcf = write(dir.path(), "dcf.ini", DCF);
    assert_eq!(bin(&["schedule", &dcf]).status.code(), Some(2));
}

#[test]
fn sweep_writes_results_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "s.ini",
        &format!("{DCF}[experiment]\nseeds = 1..2\nsweep = scenario.stations\nvalues = 2, 3\n"),
    );
    let out = dir.path().join("res");
    let o = bin(&["sweep", &cfg, "--out", out.to_str().unwrap(), "--workers", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let res = std::fs::read_to_string(out.join("quick.csv")).unwrap();
    assert_eq!(res.lines().count(), 2 + 4);
    assert!(res.lines().nth(2).unwrap().starts_with("quick,dcf,1,scenario.stations,2,"));
    let sum = std::fs::read_to_string(out.join("quick_summary.csv")).unwrap();
    assert_eq!(sum.lines().count(), 2 + 2);
}
