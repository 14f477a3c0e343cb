//! Output compared byte for byte against files in `tests/golden/`.

use std::path::PathBuf;

use wlan_mac_lab::harness::{load_config, prs_worked_example};
use wlan_mac_lab::mac::frame_table_csv;
use wlan_mac_lab::ru::{Bandwidth, RuLayout};
use wlan_mac_lab::sim::run_traced;

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn same(name: &str, got: &str) {
    let want = golden(name);
    if want != got {
        let line = want.lines().zip(got.lines()).position(|(a, b)| a != b);
        panic!("{name} differs (first differing line {line:?})\n--- want\n{want}\n--- got\n{got}");
    }
}

#[test]
fn standard_layouts() {
    for b in Bandwidth::ALL {
        same(&format!("layout_standard_{}.txt", b.mhz()), &RuLayout::standard(b).dump());
    }
}

#[test]
fn binary_layouts() {
    for b in [Bandwidth::Mhz20, Bandwidth::Mhz40] {
        same(&format!("layout_binary_{}.txt", b.mhz()), &RuLayout::binary(b).dump());
    }
}

#[test]
fn frame_type_table() {
    same("frames.csv", &frame_table_csv());
}

#[test]
fn prs_example_report() {
    same("prs_example.txt", &prs_worked_example().unwrap().report());
}

#[test]
fn tiny_dcf_trace() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let s = load_config(dir.join("tiny_dcf.ini")).unwrap();
    let (_, trace) = run_traced(&s.sim).unwrap();
    same("tiny_dcf_trace.tsv", &trace);
}
