//! Sweep execution and CSV output.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

use super::config::ExperimentSpec;
use crate::error::{Error, SimError};
use crate::sim::{run, Protocol};

/// One simulation run of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub experiment: String,
    pub protocol: Protocol,
    pub seed: u64,
    pub param: String,
    pub value: String,
    pub throughput_mbps: f64,
    pub goodput_mbps: f64,
    pub collision_prob: f64,
    pub retransmissions: u64,
    pub jain: f64,
    pub maxmin_f: f64,
    /// Simulated time, not wall-clock time.
    pub sim_time_s: f64,
}

pub const RESULT_HEADER: [&str; 12] = [
    "experiment", "protocol", "seed", "param", "value", "throughput_mbps", "goodput_mbps",
    "collision_prob", "retransmissions", "jain", "maxmin_f", "sim_time_s",
];

/// Formats a float with 6 significant digits, like C's `%g`.
pub fn fmt_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mant}e{sign}{:02}", exp.abs());
    }
    trim_zeros(&format!("{x:.*}", (5 - exp) as usize)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

impl ResultRow {
    fn record(&self) -> Vec<String> {
        vec![
            self.experiment.clone(),
            self.protocol.name().to_string(),
            self.seed.to_string(),
            self.param.clone(),
            self.value.clone(),
            fmt_g(self.throughput_mbps),
            fmt_g(self.goodput_mbps),
            fmt_g(self.collision_prob),
            self.retransmissions.to_string(),
            fmt_g(self.jain),
            fmt_g(self.maxmin_f),
            fmt_g(self.sim_time_s),
        ]
    }
}

struct Job<'a> {
    protocol: Protocol,
    value: &'a str,
    seed: u64,
}

fn jobs(spec: &ExperimentSpec) -> Vec<Job<'_>> {
    let mut out = Vec::with_capacity(spec.run_count());
    for &protocol in &spec.protocols {
        for value in &spec.sweep_values {
            for &seed in &spec.seeds {
                out.push(Job { protocol, value, seed });
            }
        }
    }
    out
}

fn run_job(spec: &ExperimentSpec, job: &Job) -> Result<ResultRow, Error> {
    let cfg = spec.config_for(job.protocol, job.value, job.seed)?;
    let m = run(&cfg)?;
    Ok(ResultRow {
        experiment: spec.name.clone(),
        protocol: job.protocol,
        seed: job.seed,
        param: spec.sweep_param.clone(),
        value: job.value.to_string(),
        throughput_mbps: m.throughput_mbps,
        goodput_mbps: m.goodput_mbps,
        collision_prob: m.collision_prob,
        retransmissions: m.retransmissions,
        jain: m.jain,
        maxmin_f: m.maxmin_f,
        sim_time_s: m.duration_us as f64 / 1e6,
    })
}

/// Every run of the sweep, ordered protocol-major, then by sweep value,
/// then by seed. Each entry is that run's outcome, so failures do not hide
/// the rows that succeeded.
pub fn run_sweep(spec: &ExperimentSpec, workers: usize) -> Result<Vec<Result<ResultRow, Error>>, Error> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| SimError::Config(format!("cannot start worker pool: {e}")))?;
    let jobs = jobs(spec);
    Ok(pool.install(|| jobs.par_iter().map(|j| run_job(spec, j)).collect()))
}

/// Runs the sweep and fails on the first failed run.
pub fn run_experiment(spec: &ExperimentSpec, workers: usize) -> Result<Vec<ResultRow>, Error> {
    run_sweep(spec, workers)?.into_iter().collect()
}

/// Mean and sample standard deviation; the deviation is zero for one value.
pub fn mean_std(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    if x.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = x.iter().sum::<f64>() / n;
    if x.len() < 2 {
        return (mean, 0.0);
    }
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Per-point statistics over seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub experiment: String,
    pub protocol: Protocol,
    pub param: String,
    pub value: String,
    pub seeds: usize,
    /// (mean, stddev) per metric, in [`SUMMARY_METRICS`] order.
    pub stats: Vec<(f64, f64)>,
}

pub const SUMMARY_METRICS: [&str; 6] =
    ["throughput_mbps", "goodput_mbps", "collision_prob", "retransmissions", "jain", "maxmin_f"];

/// Groups rows by (protocol, value), keeping first-seen order.
pub fn summarize(rows: &[ResultRow]) -> Vec<SummaryRow> {
    let mut groups: Vec<(Protocol, String, Vec<&ResultRow>)> = Vec::new();
    for r in rows {
        match groups.iter_mut().find(|g| g.0 == r.protocol && g.1 == r.value) {
            Some(g) => g.2.push(r),
            None => groups.push((r.protocol, r.value.clone(), vec![r])),
        }
    }
    groups
        .into_iter()
        .map(|(protocol, value, rs)| {
            let pick: [fn(&ResultRow) -> f64; 6] = [
                |r| r.throughput_mbps,
                |r| r.goodput_mbps,
                |r| r.collision_prob,
                |r| r.retransmissions as f64,
                |r| r.jain,
                |r| r.maxmin_f,
            ];
            let stats = pick.iter().map(|f| mean_std(&rs.iter().map(|r| f(r)).collect::<Vec<_>>())).collect();
            SummaryRow {
                experiment: rs[0].experiment.clone(),
                protocol,
                param: rs[0].param.clone(),
                value,
                seeds: rs.len(),
                stats,
            }
        })
        .collect()
}

fn stamp() -> String {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    format!("# generated_unix = {secs}\n")
}

fn to_csv(header: &[String], records: impl Iterator<Item = Vec<String>>) -> Result<String, Error> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(header).map_err(io)?;
    for r in records {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Result rows as CSV, without the timestamp line.
pub fn results_csv(rows: &[ResultRow]) -> Result<String, Error> {
    let header: Vec<String> = RESULT_HEADER.iter().map(|s| s.to_string()).collect();
    to_csv(&header, rows.iter().map(ResultRow::record))
}

/// Summary rows as CSV, without the timestamp line.
pub fn summary_csv(rows: &[SummaryRow]) -> Result<String, Error> {
    let mut header: Vec<String> = ["experiment", "protocol", "param", "value", "seeds"].map(String::from).to_vec();
    for m in SUMMARY_METRICS {
        header.push(format!("{m}_mean"));
        header.push(format!("{m}_std"));
    }
    to_csv(
        &header,
        rows.iter().map(|s| {
            let mut r = vec![
                s.experiment.clone(),
                s.protocol.name().to_string(),
                s.param.clone(),
                s.value.clone(),
                s.seeds.to_string(),
            ];
            for (m, sd) in &s.stats {
                r.push(fmt_g(*m));
                r.push(fmt_g(*sd));
            }
            r
        }),
    )
}

/// Paths written by [`run_to_dir`].
#[derive(Debug, Clone, PartialEq)]
pub struct Written {
    pub results: PathBuf,
    pub summary: PathBuf,
    pub rows: usize,
}

/// Runs the sweep and writes `<name>.csv` and `<name>_summary.csv` under
/// `out`. If any run fails, the rows that succeeded go to
/// `<name>.csv.partial` and the error is [`Error::Partial`].
pub fn run_to_dir(spec: &ExperimentSpec, out: &Path, workers: usize) -> Result<Written, Error> {
    fs::create_dir_all(out)?;
    let outcomes = run_sweep(spec, workers)?;
    let results = out.join(format!("{}.csv", spec.name));
    let summary = out.join(format!("{}_summary.csv", spec.name));
    let mut rows = Vec::with_capacity(outcomes.len());
    let mut first_err = None;
    for o in outcomes {
        match o {
            Ok(r) => rows.push(r),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    if let Some(e) = first_err {
        let partial = out.join(format!("{}.csv.partial", spec.name));
        fs::write(&partial, stamp() + &results_csv(&rows)?)?;
        return Err(Error::Partial { path: partial.display().to_string(), cause: e.to_string() });
    }
    fs::write(&results, stamp() + &results_csv(&rows)?)?;
    fs::write(&summary, stamp() + &summary_csv(&summarize(&rows))?)?;
    Ok(Written { results, summary, rows: rows.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::parse_config;

    #[test]
    fn g_format() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (3.58500, "3.585"),
            (0.288150123, "0.28815"),
            (123456.7, "123457"),
            (1234567.0, "1.23457e+06"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (-2.5, "-2.5"),
            (999999.6, "1e+06"),
            (f64::NAN, "nan"),
        ];
        for (x, want) in cases {
            assert_eq!(fmt_g(x), want, "{x}");
        }
    }

    #[test]
    fn sample_stddev() {
        let (m, s) = mean_std(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]);
        assert_eq!(m, 5.0);
        assert!((s - (32.0f64 / 7.0).sqrt()).abs() < 1e-12);
        assert_eq!(mean_std(&[3.0]), (3.0, 0.0));
    }

    const SWEEP: &str = "[scenario]\nname = tiny\nprotocol = dcf\nstations = 3\nduration_s = 0.05\n\
        [timing]\nsifs_us = 16\nslot_us = 9\nack_us = 44\nw_min = 16\nalpha = 6\n\
        [phy]\ndata_airtime_us = 300\n\
        [experiment]\nseeds = 1..3\nsweep = timing.w_min\nvalues = 8, 32\nprotocols = dcf, htfa\n";

    #[test]
    fn rows_follow_the_cross_product() {
        let spec = parse_config(SWEEP, "x").unwrap().experiment.unwrap();
        let rows = run_experiment(&spec, 2).unwrap();
        assert_eq!(rows.len(), 12);
        let keys: Vec<(Protocol, &str, u64)> = rows.iter().map(|r| (r.protocol, r.value.as_str(), r.seed)).collect();
        assert_eq!(keys[0], (Protocol::LegacyDcf, "8", 1));
        assert_eq!(keys[3], (Protocol::LegacyDcf, "32", 1));
        assert_eq!(keys[11], (Protocol::Htfa, "32", 3));
        assert!(rows.iter().all(|r| r.sim_time_s == 0.05 && r.experiment == "tiny"));
        let sums = summarize(&rows);
        assert_eq!(sums.len(), 4);
        assert!(sums.iter().all(|s| s.seeds == 3));
    }

    #[test]
    fn writes_files_and_partial_on_failure() {
        let dir = tempfile::tempdir().unwrap();
        let spec = parse_config(SWEEP, "x").unwrap().experiment.unwrap();
        let w = run_to_dir(&spec, dir.path(), 1).unwrap();
        let text = fs::read_to_string(&w.results).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("# generated_unix = "));
        assert_eq!(lines.next().unwrap(), RESULT_HEADER.join(","));
        assert_eq!(lines.count(), 12);
        assert!(!text.contains('\r'));
        assert!(w.summary.exists());

        // zero offered load passes validation but the load classifier rejects it
        let bad = SWEEP.replace("stations = 3\n", "").replace("protocols = dcf, htfa", "protocols = dcf, era")
            + "[stations]\nS1 = 0\nS2 = 0\n";
        let spec = parse_config(&bad, "x").unwrap().experiment.unwrap();
        let e = run_to_dir(&spec, dir.path(), 2).unwrap_err();
        assert_eq!(e.exit_code(), 4);
        let partial = fs::read_to_string(dir.path().join("tiny.csv.partial")).unwrap();
        // the six legacy DCF rows survive
        assert_eq!(partial.lines().count(), 2 + 6);
    }
}
