//! Sectioned `key = value` scenario files.
//!
//! A file describes one scenario and, optionally, an experiment that sweeps
//! one key of that scenario over a list of values and seeds. Every key is
//! checked against a fixed schema; parameters that change results have no
//! silent defaults.

use std::collections::BTreeMap;
use std::path::Path;

use ini::Ini;

use crate::channel::{PathLossParams, RateTable};
use crate::error::{ConfigError, Error};
use crate::mac::TimingParams;
use crate::ru::Bandwidth;
use crate::sched::{AccessMode, Station, StationId, TRounding};
use crate::sim::{CohortPolicy, Handshake, Protocol, PrsDistribution, SimConfig};

/// Built-in parameter sets, selectable with `preset = <name>`.
pub const PRESETS: [(&str, &str); 4] = [
    ("table61", include_str!("../../presets/table61.ini")),
    ("table62", include_str!("../../presets/table62.ini")),
    ("table64", include_str!("../../presets/table64.ini")),
    ("table65", include_str!("../../presets/table65.ini")),
];

pub fn preset_text(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

const SCHEMA: &[(&str, &[&str])] = &[
    (
        "scenario",
        &[
            "preset", "name", "protocol", "stations", "seed", "duration_s", "bandwidth_mhz",
            "handshake", "freeze_on_busy", "radius_m", "ap_antennas", "hidden_pairs",
        ],
    ),
    ("timing", &["sifs_us", "slot_us", "ack_us", "w_min", "alpha", "retry_limit"]),
    (
        "phy",
        &[
            "data_airtime_us", "channel_rate_mbps", "body_octets", "rts_us", "cts_us", "delta_us",
            "phy_header_us", "tf_us", "sa_payload_us",
        ],
    ),
    ("htfa", &["m", "guard_fraction", "multi_channel_tx"]),
    ("era", &["ll_threshold"]),
    ("prs", &["rounding", "policy", "distribution"]),
    ("pathloss", &["carrier_ghz", "breakpoint_m", "floor_db", "wall_db", "a", "b", "c", "x"]),
    ("rates", &["table", "antenna_exponent"]),
    ("experiment", &["name", "seeds", "sweep", "values", "protocols"]),
    ("schedule", &["flows"]),
];

/// Free-form section: one station per key.
const STATIONS: &str = "stations";

#[derive(Debug, Clone, PartialEq)]
struct Entry {
    value: String,
    line: Option<usize>,
}

/// Parsed but not yet interpreted key/value pairs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RawConfig {
    entries: BTreeMap<(String, String), Entry>,
    stations: Vec<(String, Entry)>,
}

/// Line number of every `key =` line, by section.
fn key_lines(text: &str) -> BTreeMap<(String, String), usize> {
    let mut out = BTreeMap::new();
    let mut section = String::new();
    for (n, raw) in text.lines().enumerate() {
        let l = raw.trim();
        if l.starts_with('[') {
            section = l.trim_start_matches('[').split(']').next().unwrap_or("").trim().to_string();
        } else if let Some((k, _)) = l.split_once('=') {
            if !l.starts_with(';') && !l.starts_with('#') {
                out.entry((section.clone(), k.trim().to_string())).or_insert(n + 1);
            }
        }
    }
    out
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let ini = Ini::load_from_str(text).map_err(|e| ConfigError::Parse { line: e.line, msg: e.msg.to_string() })?;
        let lines = key_lines(text);
        let mut raw = RawConfig::default();
        for (sec, props) in ini.iter() {
            let Some(sec) = sec else {
                if let Some((k, _)) = props.iter().next() {
                    return Err(ConfigError::UnknownKey {
                        section: String::new(),
                        key: k.to_string(),
                        line: lines.get(&(String::new(), k.to_string())).copied(),
                    });
                }
                continue;
            };
            let known = SCHEMA.iter().find(|(s, _)| *s == sec);
            if known.is_none() && sec != STATIONS {
                return Err(ConfigError::UnknownSection(sec.to_string()));
            }
            for (k, v) in props.iter() {
                let line = lines.get(&(sec.to_string(), k.to_string())).copied();
                let entry = Entry { value: v.trim().to_string(), line };
                match known {
                    None => raw.stations.push((k.to_string(), entry)),
                    Some((_, keys)) if keys.contains(&k) => {
                        raw.entries.insert((sec.to_string(), k.to_string()), entry);
                    }
                    Some(_) => {
                        return Err(ConfigError::UnknownKey { section: sec.to_string(), key: k.to_string(), line })
                    }
                }
            }
        }
        // a preset supplies defaults that the file's own keys override
        if let Some(p) = raw.get("scenario", "preset") {
            let name = p.value.clone();
            let text = preset_text(&name).ok_or_else(|| ConfigError::Invalid {
                section: "scenario".into(),
                key: "preset".into(),
                line: p.line,
                msg: format!("unknown preset {name:?}; expected one of {}", preset_names()),
            })?;
            let mut base = RawConfig::parse(text)?;
            for e in base.entries.values_mut() {
                e.line = None;
            }
            if raw.get("scenario", "stations").is_some() {
                base.stations.clear();
            }
            if !raw.stations.is_empty() {
                base.entries.remove(&("scenario".into(), "stations".into()));
                base.stations = raw.stations;
            }
            base.entries.extend(raw.entries);
            base.entries.remove(&("scenario".into(), "preset".into()));
            return Ok(base);
        }
        Ok(raw)
    }

    fn get(&self, section: &str, key: &str) -> Option<&Entry> {
        self.entries.get(&(section.to_string(), key.to_string()))
    }

    pub fn value(&self, section: &str, key: &str) -> Option<&str> {
        self.get(section, key).map(|e| e.value.as_str())
    }

    /// Sets `section.key`, as a sweep does for each point.
    pub fn set(&mut self, section: &str, key: &str, value: &str) -> Result<(), ConfigError> {
        check_key(section, key)?;
        self.entries
            .insert((section.to_string(), key.to_string()), Entry { value: value.to_string(), line: None });
        if section == "scenario" && key == "stations" {
            self.stations.clear();
        }
        Ok(())
    }

    fn required(&self, section: &str, key: &str) -> Result<&Entry, ConfigError> {
        self.get(section, key)
            .ok_or_else(|| ConfigError::Missing { section: section.into(), key: key.into() })
    }

    fn parse_opt<T>(&self, section: &str, key: &str, f: impl Fn(&str) -> Option<T>, what: &str) -> Result<Option<T>, ConfigError> {
        match self.get(section, key) {
            None => Ok(None),
            Some(e) => f(&e.value).map(Some).ok_or_else(|| ConfigError::Invalid {
                section: section.into(),
                key: key.into(),
                line: e.line,
                msg: format!("expected {what}, got {:?}", e.value),
            }),
        }
    }

    fn parse_req<T>(&self, section: &str, key: &str, f: impl Fn(&str) -> Option<T>, what: &str) -> Result<T, ConfigError> {
        self.required(section, key)?;
        Ok(self.parse_opt(section, key, f, what)?.expect("present"))
    }

    fn invalid(&self, section: &str, key: &str, msg: impl Into<String>) -> ConfigError {
        ConfigError::Invalid {
            section: section.into(),
            key: key.into(),
            line: self.get(section, key).and_then(|e| e.line),
            msg: msg.into(),
        }
    }
}

fn preset_names() -> String {
    PRESETS.iter().map(|p| p.0).collect::<Vec<_>>().join(", ")
}

/// Checks that `section.key` exists in the schema.
pub fn check_key(section: &str, key: &str) -> Result<(), ConfigError> {
    match SCHEMA.iter().find(|(s, _)| *s == section) {
        Some((_, keys)) if keys.contains(&key) => Ok(()),
        Some(_) => Err(ConfigError::UnknownKey { section: section.into(), key: key.into(), line: None }),
        None => Err(ConfigError::UnknownSection(section.into())),
    }
}

fn num<T: std::str::FromStr>(s: &str) -> Option<T> {
    s.trim().parse().ok()
}

fn boolean(s: &str) -> Option<bool> {
    match s.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Some(true),
        "false" | "no" | "off" | "0" => Some(false),
        _ => None,
    }
}

/// `1..10` (inclusive) or a comma-separated list.
pub fn parse_list(s: &str) -> Option<Vec<String>> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let (a, b): (i64, i64) = (num(a)?, num(b.trim_start_matches('='))?);
        return (a <= b).then(|| (a..=b).map(|x| x.to_string()).collect());
    }
    let v: Vec<String> = s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect();
    (!v.is_empty()).then_some(v)
}

fn parse_station(id: &str, spec: &str) -> Option<Station> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let load: f64 = num(parts.first()?)?;
    let mut st = Station::new(id, load);
    if let Some(m) = parts.get(1) {
        st.mode = match m.to_ascii_lowercase().as_str() {
            "sa" => AccessMode::Sa,
            "ra" => AccessMode::Ra,
            _ => return None,
        };
    }
    if let Some(a) = parts.get(2) {
        st.antennas = num(a)?;
    }
    (parts.len() <= 3).then_some(st)
}

fn parse_rate_table(s: &str) -> Option<Vec<(f64, f64)>> {
    s.split(',')
        .map(|p| {
            let (l, r) = p.split_once(':')?;
            Some((num(l)?, num(r)?))
        })
        .collect()
}

/// A sweep over seeds, one scenario key and optionally protocols.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub name: String,
    pub protocols: Vec<Protocol>,
    /// Swept key as `section.key`.
    pub sweep_param: String,
    pub sweep_values: Vec<String>,
    pub seeds: Vec<u64>,
    base: RawConfig,
}

impl ExperimentSpec {
    /// The scenario for one sweep point, protocol and seed.
    pub fn config_for(&self, protocol: Protocol, value: &str, seed: u64) -> Result<SimConfig, ConfigError> {
        let mut raw = self.base.clone();
        let (sec, key) = self.sweep_param.split_once('.').expect("validated sweep key");
        raw.set(sec, key, value)?;
        raw.set("scenario", "protocol", protocol.name())?;
        raw.set("scenario", "seed", &seed.to_string())?;
        build_sim_config(&raw)
    }

    /// Number of simulation runs in the full cross product.
    pub fn run_count(&self) -> usize {
        self.protocols.len() * self.sweep_values.len() * self.seeds.len()
    }
}

/// Everything a scenario file describes.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub sim: SimConfig,
    pub experiment: Option<ExperimentSpec>,
    /// ERA flows to print for `schedule`.
    pub flows: usize,
}

pub fn build_sim_config(raw: &RawConfig) -> Result<SimConfig, ConfigError> {
    let protocol = raw.parse_req("scenario", "protocol", Protocol::parse, "dcf, htfa, era or prs")?;
    let seed = raw.parse_req("scenario", "seed", num::<u64>, "an unsigned integer")?;
    let duration_s: f64 = raw.parse_req("scenario", "duration_s", num, "seconds")?;
    if !(duration_s > 0.0) || duration_s > 1e6 {
        return Err(raw.invalid("scenario", "duration_s", "must be in (0, 1e6] seconds"));
    }

    let sifs = raw.parse_req("timing", "sifs_us", num::<u64>, "microseconds")?;
    let slot = raw.parse_req("timing", "slot_us", num::<u64>, "microseconds")?;
    let ack = raw.parse_req("timing", "ack_us", num::<u64>, "microseconds")?;
    let w_min = raw.parse_req("timing", "w_min", num::<u32>, "an integer")?;
    let alpha = raw.parse_req("timing", "alpha", num::<u32>, "an integer")?;
    let mut timing = TimingParams::new(sifs, slot, ack, w_min, alpha).map_err(|e| raw.invalid("timing", "w_min", e.to_string()))?;
    if let Some(r) = raw.parse_opt("timing", "retry_limit", num::<u32>, "an integer")? {
        timing.retry_limit = r;
    }

    let stations = match (raw.get("scenario", "stations"), raw.stations.is_empty()) {
        (Some(_), false) => {
            return Err(raw.invalid("scenario", "stations", "give either a count or a [stations] section, not both"))
        }
        (Some(_), true) => {
            let n: usize = raw.parse_req("scenario", "stations", num, "a station count")?;
            if n == 0 || n > 10_000 {
                return Err(raw.invalid("scenario", "stations", "must be between 1 and 10000"));
            }
            (1..=n).map(|k| Station::new(format!("S{k}"), 1.0)).collect()
        }
        (None, false) => {
            let mut v = Vec::new();
            for (id, e) in &raw.stations {
                v.push(parse_station(id, &e.value).ok_or_else(|| ConfigError::Invalid {
                    section: STATIONS.into(),
                    key: id.clone(),
                    line: e.line,
                    msg: "expected `load[, sa|ra[, antennas]]`".into(),
                })?);
            }
            v
        }
        (None, true) => return Err(ConfigError::Missing { section: "scenario".into(), key: "stations".into() }),
    };

    let mut c = SimConfig::new(protocol, 0, timing, seed);
    c.stations = stations;
    c.sim_duration_us = (duration_s * 1e6).round() as u64;
    if let Some(mhz) = raw.parse_opt("scenario", "bandwidth_mhz", num::<u32>, "20, 40, 80 or 160")? {
        c.bandwidth = Bandwidth::from_mhz(mhz).map_err(|e| raw.invalid("scenario", "bandwidth_mhz", e.to_string()))?;
    }
    if let Some(h) = raw.parse_opt("scenario", "handshake", Handshake::parse, "two-way, four-way or auto")? {
        c.handshake = h;
    }
    if let Some(b) = raw.parse_opt("scenario", "freeze_on_busy", boolean, "true or false")? {
        c.freeze_on_busy = b;
    }
    if let Some(r) = raw.parse_opt("scenario", "radius_m", num::<f64>, "metres")? {
        c.radius_m = r;
    }
    if let Some(a) = raw.parse_opt("scenario", "ap_antennas", num::<u32>, "an integer")? {
        c.ap_antennas = a;
    }
    if let Some(e) = raw.get("scenario", "hidden_pairs") {
        c.hidden_pairs = if e.value.eq_ignore_ascii_case("adjacent") {
            c.stations.chunks_exact(2).map(|p| (p[0].id.clone(), p[1].id.clone())).collect()
        } else if e.value.eq_ignore_ascii_case("none") || e.value.is_empty() {
            Vec::new()
        } else {
            e.value
                .split(',')
                .map(|p| p.trim().split_once(':').map(|(a, b)| (StationId::new(a.trim()), StationId::new(b.trim()))))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| raw.invalid("scenario", "hidden_pairs", "expected `A:B, C:D`, `adjacent` or `none`"))?
        };
    }

    let p = &mut c.phy;
    p.data_airtime_us = raw.parse_opt("phy", "data_airtime_us", num::<u64>, "microseconds")?.or(p.data_airtime_us);
    let set_u64 = |key: &str, slot: &mut u64| -> Result<(), ConfigError> {
        if let Some(v) = raw.parse_opt("phy", key, num::<u64>, "microseconds")? {
            *slot = v;
        }
        Ok(())
    };
    set_u64("rts_us", &mut p.rts_us)?;
    set_u64("cts_us", &mut p.cts_us)?;
    set_u64("delta_us", &mut p.delta_us)?;
    set_u64("phy_header_us", &mut p.phy_header_us)?;
    set_u64("tf_us", &mut p.tf_us)?;
    set_u64("sa_payload_us", &mut p.sa_payload_us)?;
    if let Some(v) = raw.parse_opt("phy", "channel_rate_mbps", num::<f64>, "Mbit/s")? {
        p.channel_rate_mbps = v;
    }
    if let Some(v) = raw.parse_opt("phy", "body_octets", num::<usize>, "octets")? {
        p.body_octets = v;
    }

    if let Some(m) = raw.parse_opt("htfa", "m", num::<usize>, "a sub-channel count")? {
        c.htfa.m = m;
    }
    if let Some(g) = raw.parse_opt("htfa", "guard_fraction", num::<f64>, "a fraction")? {
        c.htfa.guard_fraction = g;
    }
    if let Some(b) = raw.parse_opt("htfa", "multi_channel_tx", boolean, "true or false")? {
        c.htfa.multi_channel_tx = b;
    }
    if let Some(ll) = raw.parse_opt("era", "ll_threshold", num::<f64>, "a load")? {
        c.era.ll_threshold = ll;
    }
    let rounding = |s: &str| match s.to_ascii_lowercase().as_str() {
        "ceiling" | "ceil" => Some(TRounding::Ceiling),
        "floor" => Some(TRounding::Floor),
        _ => None,
    };
    if let Some(r) = raw.parse_opt("prs", "rounding", rounding, "ceiling or floor")? {
        c.prs.rounding = r;
    }
    let policy = |s: &str| match s.to_ascii_lowercase().as_str() {
        "rotating" => Some(CohortPolicy::Rotating),
        "literal" => Some(CohortPolicy::Literal),
        _ => None,
    };
    if let Some(pol) = raw.parse_opt("prs", "policy", policy, "rotating or literal")? {
        c.prs.policy = pol;
    }
    c.prs.distribution = raw.parse_opt("prs", "distribution", PrsDistribution::parse, "sa, ra or hybrid")?;

    let mut pl = PathLossParams::default();
    for (key, slot) in [
        ("carrier_ghz", &mut pl.carrier_ghz),
        ("breakpoint_m", &mut pl.breakpoint_m),
        ("floor_db", &mut pl.floor_penetration_db),
        ("wall_db", &mut pl.wall_penetration_db),
        ("a", &mut pl.a_coef),
        ("b", &mut pl.b_coef),
        ("c", &mut pl.c_coef),
        ("x", &mut pl.x_coef),
    ] {
        if let Some(v) = raw.parse_opt("pathloss", key, num::<f64>, "a number")? {
            *slot = v;
        }
    }
    c.path_loss = pl;
    if let Some(t) = raw.parse_opt("rates", "table", parse_rate_table, "`loss:mbps, ...`")? {
        c.rates = RateTable::new(t).map_err(|e| raw.invalid("rates", "table", e.to_string()))?;
    }
    if let Some(x) = raw.parse_opt("rates", "antenna_exponent", num::<f64>, "a number")? {
        c.rates.antenna_exponent = x;
    }
    c.validate().map_err(|e| raw.invalid("scenario", "protocol", e.to_string()))?;
    Ok(c)
}

fn build_experiment(raw: &RawConfig, default_name: &str) -> Result<Option<ExperimentSpec>, ConfigError> {
    if !raw.entries.keys().any(|(s, _)| s == "experiment") {
        return Ok(None);
    }
    let name = raw.value("experiment", "name").unwrap_or(default_name).to_string();
    let seeds: Vec<String> = raw.parse_req("experiment", "seeds", parse_list, "`a..b` or a list")?;
    let seeds: Vec<u64> = seeds
        .iter()
        .map(|s| num(s))
        .collect::<Option<_>>()
        .ok_or_else(|| raw.invalid("experiment", "seeds", "seeds must be unsigned integers"))?;
    let mut sorted = seeds.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != seeds.len() {
        return Err(raw.invalid("experiment", "seeds", "seeds must be distinct"));
    }
    let sweep_param = raw.required("experiment", "sweep")?.value.clone();
    let (sec, key) = sweep_param
        .split_once('.')
        .ok_or_else(|| raw.invalid("experiment", "sweep", "expected `section.key`"))?;
    check_key(sec, key).map_err(|e| raw.invalid("experiment", "sweep", e.to_string()))?;
    if sec == "experiment" {
        return Err(raw.invalid("experiment", "sweep", "cannot sweep experiment keys"));
    }
    let values = raw.required("experiment", "values")?;
    let sweep_values = parse_list(&values.value).ok_or_else(|| raw.invalid("experiment", "values", "sweep is empty"))?;
    let protocols = match raw.get("experiment", "protocols") {
        Some(_) => raw
            .parse_req("experiment", "protocols", parse_list, "a list")?
            .iter()
            .map(|p| Protocol::parse(p))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| raw.invalid("experiment", "protocols", "expected dcf, htfa, era or prs"))?,
        None => vec![raw.parse_req("scenario", "protocol", Protocol::parse, "dcf, htfa, era or prs")?],
    };
    let mut base = raw.clone();
    // the sweep supplies the seed, so the scenario need not
    if base.get("scenario", "seed").is_none() {
        base.set("scenario", "seed", &seeds[0].to_string())?;
    }
    let spec = ExperimentSpec { name, protocols, sweep_param, sweep_values, seeds, base };
    // fail early on any point that cannot be built
    for p in &spec.protocols {
        for v in &spec.sweep_values {
            spec.config_for(*p, v, spec.seeds[0]).map_err(|e| raw.invalid("experiment", "values", format!("{v}: {e}")))?;
        }
    }
    Ok(Some(spec))
}

/// Interprets a scenario text. `origin` names it in messages and provides
/// the default experiment name.
pub fn parse_config(text: &str, origin: &str) -> Result<Scenario, ConfigError> {
    parse_config_with(text, origin, &[])
}

/// [`parse_config`] with `section.key = value` overrides applied on top of
/// the file, e.g. a shorter duration for a quick run.
pub fn parse_config_with(text: &str, origin: &str, overrides: &[(&str, &str)]) -> Result<Scenario, ConfigError> {
    let mut raw = RawConfig::parse(text)?;
    for (path, value) in overrides {
        let (sec, key) = path.split_once('.').ok_or_else(|| ConfigError::Invalid {
            section: String::new(),
            key: path.to_string(),
            line: None,
            msg: "expected `section.key`".into(),
        })?;
        raw.set(sec, key, value)?;
    }
    let name = raw.value("scenario", "name").map(str::to_string).unwrap_or_else(|| origin.to_string());
    let experiment = build_experiment(&raw, &name)?;
    if let Some(e) = &experiment {
        if raw.get("scenario", "seed").is_none() {
            raw.set("scenario", "seed", &e.seeds[0].to_string())?;
        }
    }
    let sim = build_sim_config(&raw)?;
    let flows = raw.parse_opt("schedule", "flows", num::<usize>, "a flow count")?.unwrap_or(1);
    Ok(Scenario { name, sim, experiment, flows })
}

/// Reads and validates a scenario file.
pub fn load_config(path: impl AsRef<Path>) -> Result<Scenario, Error> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
    Ok(parse_config(&text, stem)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINI: &str = "[scenario]\nprotocol = dcf\nstations = 3\nseed = 4\nduration_s = 0.5\n\
                        [timing]\nsifs_us = 10\nslot_us = 20\nack_us = 50\nw_min = 16\nalpha = 5\n";

    #[test]
    fn minimal_scenario() {
        let s = parse_config(MINI, "mini").unwrap();
        assert_eq!(s.name, "mini");
        assert_eq!(s.sim.stations.len(), 3);
        assert_eq!(s.sim.seed, 4);
        assert_eq!(s.sim.sim_duration_us, 500_000);
        assert_eq!(s.sim.timing.difs(), 50);
        assert!(s.experiment.is_none());
    }

    #[test]
    fn unknown_key_reports_line() {
        let text = format!("{MINI}bogus = 1\n");
        match parse_config(&text, "x") {
            Err(ConfigError::UnknownKey { section, key, line }) => {
                assert_eq!((section.as_str(), key.as_str(), line), ("timing", "bogus", Some(12)));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_config("[nowhere]\na = 1\n", "x"), Err(ConfigError::UnknownSection(_))));
    }

    #[test]
    fn missing_seed_is_an_error() {
        let text = MINI.replace("seed = 4\n", "");
        assert!(matches!(
            parse_config(&text, "x"),
            Err(ConfigError::Missing { section, key }) if section == "scenario" && key == "seed"
        ));
    }

    #[test]
    fn invalid_value_names_key_and_line() {
        let text = MINI.replace("alpha = 5", "alpha = five");
        match parse_config(&text, "x") {
            Err(ConfigError::Invalid { key, line, .. }) => assert_eq!((key.as_str(), line), ("alpha", Some(11))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn explicit_stations_keep_order() {
        let text = MINI.replace("stations = 3\n", "") + "[stations]\nZ = 2.0, ra\nA = 1.5, sa, 2\n";
        let s = parse_config(&text, "x").unwrap();
        let ids: Vec<&str> = s.sim.stations.iter().map(|s| s.id.as_str()).collect();
        assert_eq!(ids, vec!["Z", "A"]);
        assert_eq!(s.sim.stations[0].mode, AccessMode::Ra);
        assert_eq!(s.sim.stations[1].antennas, 2);
    }

    #[test]
    fn table61_preset() {
        let s = parse_config("[scenario]\npreset = table61\nseed = 1\n", "t").unwrap();
        let c = &s.sim;
        assert_eq!(c.stations.len(), 10);
        assert_eq!((c.timing.alpha, c.timing.w_min, c.timing.slot_us), (6, 32, 50));
        assert_eq!(c.timing.difs(), 110);
        assert_eq!(c.phy.data_airtime_us, Some(2500));
    }

    #[test]
    fn table62_preset() {
        let s = parse_config("[scenario]\npreset = table62\nseed = 1\n", "t").unwrap();
        let c = &s.sim;
        assert_eq!((c.stations.len(), c.htfa.m), (3, 3));
        assert_eq!(c.phy.channel_rate_mbps, 54.0);
        assert_eq!((c.timing.w_min as u64, c.timing.w_max()), (32, 1024));
        assert_eq!(c.timing.slot_us, 10);
        assert_eq!(c.phy.body_octets, 1500);
    }

    #[test]
    fn every_preset_parses() {
        for (name, _) in PRESETS {
            let s = parse_config(&format!("[scenario]\npreset = {name}\nseed = 1\n"), name);
            assert!(s.is_ok(), "{name}: {s:?}");
        }
    }

    #[test]
    fn experiment_sweep() {
        let text = format!("{MINI}[experiment]\nseeds = 1..3\nsweep = timing.w_min\nvalues = 8, 16\nprotocols = dcf, htfa\n");
        let s = parse_config(&text, "exp").unwrap();
        let e = s.experiment.unwrap();
        assert_eq!(e.seeds, vec![1, 2, 3]);
        assert_eq!(e.run_count(), 12);
        let c = e.config_for(Protocol::Htfa, "8", 2).unwrap();
        assert_eq!((c.timing.w_min, c.seed, c.protocol), (8, 2, Protocol::Htfa));

        let empty = text.replace("values = 8, 16", "values = ");
        assert!(parse_config(&empty, "x").is_err());
        let dup = text.replace("seeds = 1..3", "seeds = 1, 1");
        assert!(parse_config(&dup, "x").is_err());
        let bad = text.replace("sweep = timing.w_min", "sweep = timing.nothing");
        assert!(parse_config(&bad, "x").is_err());
    }

    #[test]
    fn overrides_apply_before_validation() {
        let s = parse_config_with(MINI, "x", &[("scenario.duration_s", "0.25"), ("timing.w_min", "64")]).unwrap();
        assert_eq!((s.sim.sim_duration_us, s.sim.timing.w_min), (250_000, 64));
        assert!(parse_config_with(MINI, "x", &[("timing.nope", "1")]).is_err());
        assert!(parse_config_with(MINI, "x", &[("nodot", "1")]).is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list("1..3").unwrap(), vec!["1", "2", "3"]);
        assert_eq!(parse_list("a, b").unwrap(), vec!["a", "b"]);
        assert!(parse_list(" ").is_none());
        assert!(parse_list("3..1").is_none());
    }

    #[test]
    fn hidden_pair_forms() {
        let adj = MINI.replace("stations = 3", "stations = 4").replace(
            "duration_s = 0.5\n",
            "duration_s = 0.5\nhidden_pairs = adjacent\n",
        );
        assert_eq!(parse_config(&adj, "x").unwrap().sim.hidden_pairs.len(), 2);
        let explicit = adj.replace("adjacent", "S1:S3");
        assert_eq!(
            parse_config(&explicit, "x").unwrap().sim.hidden_pairs,
            vec![(StationId::new("S1"), StationId::new("S3"))]
        );
        assert!(parse_config(&adj.replace("adjacent", "S1-S3"), "x").is_err());
    }
}
