//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use super::analytic::{analytic_csv, run_analytic, Model};
use super::config::{load_config, parse_list, Scenario};
use super::example::prs_worked_example;
use super::experiment::{fmt_g, run_to_dir};
use crate::error::{ConfigError, Error};
use crate::mac::{decode_type_subtype, encode_type_subtype, frame_table, frame_table_csv, parse_bits, FrameKind};
use crate::ru::RuLayout;
use crate::sched::{era_assign, era_classify, htfa_distribute, prs_schedule, EraQueues};
use crate::sim::{run, run_traced, Protocol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "wlan-mac-lab", version, about = "OFDMA Wi-Fi MAC scheduling lab")]
pub struct Cli {
    /// Output format for tables.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the schedule a scenario's protocol produces.
    Schedule {
        /// Scenario INI file.
        file: PathBuf,
    },
    /// Evaluate a closed-form model (ra, htfa or sa).
    Analytic {
        model: String,
        /// Override an input, `key=value`. Repeatable.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Sweep one input, `key=a,b,c` or `key=lo..hi`.
        #[arg(long, value_name = "KEY=VALUES")]
        sweep: Option<String>,
    },
    /// Run one simulation.
    Simulate {
        /// Scenario INI file.
        file: PathBuf,
        /// Overrides the file's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Write the event trace (TSV).
        #[arg(long)]
        trace: bool,
        /// Directory for the per-station CSV and the trace.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the experiment a scenario file describes.
    Sweep {
        /// Experiment INI file.
        file: PathBuf,
        /// Output directory for the results and summary CSVs.
        #[arg(long, default_value = "results")]
        out: PathBuf,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Frame type/subtype codec.
    Frames {
        #[command(subcommand)]
        action: FramesAction,
    },
    /// Built-in worked examples.
    Example { name: ExampleName },
}

#[derive(Debug, Subcommand)]
pub enum FramesAction {
    /// Type and subtype bits of a frame kind, e.g. `RTS` or `"Probe request"`.
    Encode { name: String },
    /// Frame kind of a type/subtype pair, e.g. `01 1011`.
    Decode { type_bits: String, subtype_bits: String },
    /// The full table.
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    Prs,
}

fn config_err(key: &str, msg: impl Into<String>) -> Error {
    ConfigError::Invalid { section: "cli".into(), key: key.into(), line: None, msg: msg.into() }.into()
}

fn parse_kv(s: &str, flag: &str) -> Result<(String, String), Error> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .ok_or_else(|| config_err(flag, format!("expected KEY=VALUE, got {s:?}")))
}

fn parse_f64(s: &str, key: &str) -> Result<f64, Error> {
    s.parse().map_err(|_| config_err(key, format!("not a number: {s:?}")))
}

fn find_frame(name: &str) -> Result<FrameKind, Error> {
    // accepts the table description or the compact kind name, e.g. `PsPoll`
    let norm = |s: &str| s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
    let want = norm(name);
    FrameKind::all()
        .find(|k| norm(k.description()) == want || norm(&format!("{k:?}")) == want)
        .ok_or_else(|| config_err("name", format!("unknown frame kind {name:?}")))
}

fn schedule(s: &Scenario, format: Format, out: &mut dyn Write) -> Result<(), Error> {
    let c = &s.sim;
    match c.protocol {
        Protocol::Prs => {
            let plan = prs_schedule(&c.stations, &RuLayout::standard(c.bandwidth), c.prs.rounding)?;
            match format {
                Format::Csv => write!(out, "{}", plan.assignment.to_csv())?,
                Format::Text => {
                    writeln!(out, "S = {}\nT = {}", plan.s, plan.t)?;
                    let r: Vec<String> = plan.revision.r.iter().map(|x| x.to_string()).collect();
                    writeln!(out, "r = [{}]\nU = {}\nV = {}\n", r.join(", "), plan.revision.u, plan.revision.v)?;
                    write!(out, "{}", plan.assignment.to_text())?;
                }
            }
        }
        Protocol::Era => {
            let classes = era_classify(&c.stations, c.era.ll_threshold)?;
            let mut queues = EraQueues::from_classified(&c.stations, &classes);
            let layout = RuLayout::binary(c.bandwidth);
            if format == Format::Text {
                for (st, cl) in c.stations.iter().zip(&classes) {
                    writeln!(out, "{} load {} -> {}", st.id, st.load, cl.name())?;
                }
            }
            for flow in 1..=s.flows {
                if queues.is_empty() {
                    break;
                }
                let a = era_assign(&mut queues, &layout)?;
                match format {
                    Format::Csv => {
                        let body = a.to_csv();
                        let body = if flow == 1 { body.as_str() } else { body.split_once('\n').map_or("", |x| x.1) };
                        write!(out, "{body}")?;
                    }
                    Format::Text => write!(out, "\nflow {flow}\n{}", a.to_text())?,
                }
            }
        }
        Protocol::Htfa => {
            let st = htfa_distribute(&c.stations, c.htfa.m)?;
            match format {
                Format::Csv => {
                    writeln!(out, "station_id,subchannel")?;
                    for (j, ch) in st.channels().iter().enumerate() {
                        for id in ch {
                            writeln!(out, "{id},{}", j + 1)?;
                        }
                    }
                }
                Format::Text => {
                    for (j, ch) in st.channels().iter().enumerate() {
                        let ids: Vec<&str> = ch.iter().map(|s| s.as_str()).collect();
                        writeln!(out, "sub-channel {}: {}", j + 1, ids.join(" "))?;
                    }
                }
            }
        }
        Protocol::LegacyDcf => {
            return Err(config_err("protocol", "legacy DCF has no schedule; use simulate"));
        }
    }
    Ok(())
}

fn simulate(
    mut s: Scenario,
    seed: Option<u64>,
    trace: bool,
    dir: Option<PathBuf>,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Error> {
    if let Some(seed) = seed {
        s.sim.seed = seed;
    }
    let (m, tsv) = if trace { run_traced(&s.sim).map(|(m, t)| (m, Some(t)))? } else { (run(&s.sim)?, None) };
    let mut per = String::from("station_id,throughput_mbps,goodput_mbps,attempts,collisions,retransmissions\n");
    for p in &m.per_station {
        per.push_str(&format!(
            "{},{},{},{},{},{}\n",
            p.id,
            fmt_g(p.throughput_mbps),
            fmt_g(p.goodput_mbps),
            p.attempts,
            p.collisions,
            p.retransmissions
        ));
    }
    let summary = [
        ("protocol", s.sim.protocol.name().to_string()),
        ("seed", s.sim.seed.to_string()),
        ("stations", s.sim.stations.len().to_string()),
        ("sim_time_s", fmt_g(m.duration_us as f64 / 1e6)),
        ("throughput_mbps", fmt_g(m.throughput_mbps)),
        ("goodput_mbps", fmt_g(m.goodput_mbps)),
        ("collision_prob", fmt_g(m.collision_prob)),
        ("attempts", m.attempts.to_string()),
        ("collisions", m.collisions.to_string()),
        ("retransmissions", m.retransmissions.to_string()),
        ("drops", m.drops.to_string()),
        ("jain", fmt_g(m.jain)),
        ("maxmin_f", fmt_g(m.maxmin_f)),
    ];
    match format {
        Format::Csv => {
            let (k, v): (Vec<&str>, Vec<String>) = summary.iter().map(|(k, v)| (*k, v.clone())).unzip();
            writeln!(out, "{}\n{}", k.join(","), v.join(","))?;
        }
        Format::Text => {
            for (k, v) in &summary {
                writeln!(out, "{k:<16} {v}")?;
            }
        }
    }
    match dir {
        Some(dir) => {
            std::fs::create_dir_all(&dir)?;
            std::fs::write(dir.join(format!("{}_stations.csv", s.name)), per)?;
            if let Some(t) = tsv {
                let p = dir.join(format!("{}_trace.tsv", s.name));
                std::fs::write(&p, t)?;
                writeln!(out, "trace written to {}", p.display())?;
            }
        }
        None => {
            if let Some(t) = tsv {
                write!(out, "{t}")?;
            }
        }
    }
    Ok(())
}

fn analytic(model: &str, set: &[String], sweep: Option<&str>, format: Format, out: &mut dyn Write) -> Result<(), Error> {
    let model = Model::parse(model).ok_or_else(|| config_err("model", format!("unknown model {model:?}; expected ra, htfa or sa")))?;
    let set: Vec<(String, f64)> = set
        .iter()
        .map(|s| {
            let (k, v) = parse_kv(s, "set")?;
            let x = parse_f64(&v, &k)?;
            Ok((k, x))
        })
        .collect::<Result<_, Error>>()?;
    let sweep = match sweep {
        None => None,
        Some(s) => {
            let (k, v) = parse_kv(s, "sweep")?;
            let vals = parse_list(&v).unwrap_or_default();
            let vals: Vec<f64> = vals.iter().map(|x| parse_f64(x, &k)).collect::<Result<_, _>>()?;
            Some((k, vals))
        }
    };
    let rows = run_analytic(model, &set, sweep.as_ref().map(|(k, v)| (k.as_str(), v.as_slice())))?;
    match format {
        Format::Csv => write!(out, "{}", analytic_csv(&rows))?,
        Format::Text => {
            for r in &rows {
                if r.parameter.is_empty() {
                    writeln!(out, "{:<24} {}", r.output, fmt_g(r.result))?;
                } else {
                    writeln!(out, "{}={:<10} {:<24} {}", r.parameter, r.value, r.output, fmt_g(r.result))?;
                }
            }
        }
    }
    Ok(())
}

fn frames(action: FramesAction, format: Format, out: &mut dyn Write) -> Result<(), Error> {
    match action {
        FramesAction::Encode { name } => {
            let (t, st) = encode_type_subtype(find_frame(&name)?);
            writeln!(out, "{t:02b} {st:04b}")?;
        }
        FramesAction::Decode { type_bits, subtype_bits } => {
            let t = parse_bits(&type_bits, 2)?;
            let st = parse_bits(&subtype_bits, 4)?;
            let kind = decode_type_subtype(t, st)?;
            writeln!(out, "{}", kind.description())?;
        }
        FramesAction::Table => match format {
            Format::Csv => write!(out, "{}", frame_table_csv())?,
            Format::Text => {
                writeln!(out, "{:<4} {:<7} {:<11} description", "type", "subtype", "class")?;
                for (t, st, class, name) in frame_table() {
                    writeln!(out, "{t:<4} {st:<7} {class:<11} {name}")?;
                }
            }
        },
    }
    Ok(())
}

/// Runs a parsed command, writing results to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), Error> {
    let format = cli.format;
    match cli.command {
        Command::Schedule { file } => schedule(&load_config(file)?, format, out),
        Command::Analytic { model, set, sweep } => analytic(&model, &set, sweep.as_deref(), format, out),
        Command::Simulate { file, seed, trace, out: dir } => simulate(load_config(file)?, seed, trace, dir, format, out),
        Command::Sweep { file, out: dir, workers } => {
            let s = load_config(&file)?;
            let spec = s.experiment.ok_or_else(|| {
                Error::from(ConfigError::Missing { section: "experiment".into(), key: "sweep".into() })
            })?;
            let workers = workers
                .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
            if workers == 0 {
                return Err(config_err("workers", "must be at least 1"));
            }
            let w = run_to_dir(&spec, &dir, workers)?;
            writeln!(out, "{} rows written to {}", w.rows, w.results.display())?;
            writeln!(out, "summary written to {}", w.summary.display())?;
            Ok(())
        }
        Command::Frames { action } => frames(action, format, out),
        Command::Example { name: ExampleName::Prs } => {
            write!(out, "{}", prs_worked_example()?.report())?;
            Ok(())
        }
    }
}

/// Entry point for the binary: parses `args`, runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(cli, &mut lock) {
        Ok(()) => 0,
        // a closed pipe (`| head`) is not a failure
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
