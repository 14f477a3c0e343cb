//! Runs an experiment file and prints its summary. Takes the file as the
//! first argument; defaults to the shipped PRS distribution experiment,
//! shortened to 1 s of simulated time per run.

use std::path::PathBuf;

use wlan_mac_lab::harness::{parse_config_with, run_to_dir};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("experiments/prs_distribution.ini")
    });
    let text = std::fs::read_to_string(&path)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("experiment");
    let spec = parse_config_with(&text, stem, &[("scenario.duration_s", "1")])?
        .experiment
        .ok_or("the file has no [experiment] section")?;
    let out = std::env::temp_dir().join("wlan-mac-lab-example");
    let w = run_to_dir(&spec, &out, 4)?;
    println!("{} runs written to {}", w.rows, w.results.display());
    print!("{}", std::fs::read_to_string(&w.summary)?);
    Ok(())
}
