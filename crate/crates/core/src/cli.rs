//! Command-line front end: config files, sweeps, CSV tables, validation
//! reports and the figure presets.
//!
//! Config files are flat `key = value` lines; `#` starts a comment. Units
//! are part of the key names.
//!
//! | key | meaning |
//! |-----|---------|
//! | `n_elements` | RIS elements N |
//! | `carrier_hz` | carrier frequency |
//! | `pathloss_exponent` | α ≥ 2 |
//! | `noise_dbm`, `tx_power_dbm` | noise and transmit power |
//! | `m_h`, `m_g`, `m_d` | Nakagami shapes (or `k_factor_h`, `k_factor_g`, `k_factor_d`) |
//! | `r_h_m`, `r_g_m` | hop lengths |
//! | `sd_distance_m` | S–D distance; replaces `r_g_m` with `sd_distance_m − r_h_m` |
//! | `psi_deg` | angle at the RIS, needed with a direct link (default 90) |
//! | `direct_link` | `true` / `false` |
//! | `phase_design` | `rps`, `ops` or `quantized` |
//! | `quantization_bits` | b, with `phase_design = quantized` |
//! | `gamma_th_db`, `modulation`, `trials`, `seed` | run settings, overridable by flags |

use std::collections::BTreeMap;
use std::f64::consts::LN_2;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::asymptotic::{
    largen_ops_cdf, largen_ops_ec, largen_rps_ber, largen_rps_cdf, largen_rps_ec, LargeNOps, LargeNRps,
};
use crate::modulation::Modulation;
use crate::montecarlo::{estimate_many, McEstimate, PhaseModel, Simulator};
use crate::numerics::QuadratureSpec;
use crate::ops::{ber_from_cdf, ber_ops, ec_ops, op_ops, AmplitudeChf};
use crate::rps::{ber_rps, ec_rps, op_rps, HankelProduct};
use crate::scenario::{ricean_k_to_m, LinkGeometry, LinkModel, PhaseDesign, ScenarioConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("{0}")]
    Numerical(String),
    #[error("{0} validation check(s) exceeded |z| > 4")]
    Validation(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config { .. } | CliError::Io(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Validation(_) => 3,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Op,
    Ber,
    Ec,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Op => "op",
            Metric::Ber => "ber",
            Metric::Ec => "ec",
        }
    }

    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "op" => Ok(Metric::Op),
            "ber" => Ok(Metric::Ber),
            "ec" => Ok(Metric::Ec),
            _ => Err(usage(format!("unknown metric '{s}' (expected op, ber or ec)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Method {
    Exact,
    Asymptotic,
    Mc,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Exact, Method::Asymptotic, Method::Mc];

    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Asymptotic => "asymptotic",
            Method::Mc => "mc",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        Method::ALL.into_iter().find(|m| m.name() == s)
    }
}

/// Methods requested on the command line; `all` silently skips combinations
/// a design does not support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodSel {
    One(Method),
    All,
}

impl MethodSel {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        if s == "all" {
            return Ok(MethodSel::All);
        }
        Method::from_name(s)
            .map(MethodSel::One)
            .ok_or_else(|| usage(format!("unknown method '{s}' (expected exact, asymptotic, mc or all)")))
    }

    fn methods(self) -> Vec<Method> {
        match self {
            MethodSel::One(m) => vec![m],
            MethodSel::All => Method::ALL.to_vec(),
        }
    }
}

const KEYS: &[&str] = &[
    "n_elements",
    "carrier_hz",
    "pathloss_exponent",
    "noise_dbm",
    "tx_power_dbm",
    "m_h",
    "m_g",
    "m_d",
    "k_factor_h",
    "k_factor_g",
    "k_factor_d",
    "r_h_m",
    "r_g_m",
    "sd_distance_m",
    "psi_deg",
    "direct_link",
    "phase_design",
    "quantization_bits",
    "gamma_th_db",
    "modulation",
    "trials",
    "seed",
];

/// Run settings that are not part of the physical scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub gamma_th_db: f64,
    pub modulation: Modulation,
    pub trials: usize,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            gamma_th_db: 0.0,
            modulation: Modulation::Bpsk,
            trials: 100_000,
            seed: 1,
        }
    }
}

impl Settings {
    pub fn gamma_th(&self) -> f64 {
        10f64.powf(self.gamma_th_db / 10.0)
    }
}

/// Command-line overrides of [`Settings`].
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SettingsOverride {
    pub gamma_th_db: Option<f64>,
    pub modulation: Option<Modulation>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
}

/// A parsed but not yet interpreted config file.
#[derive(Debug, Clone, PartialEq)]
pub struct RawConfig {
    entries: BTreeMap<String, (String, usize)>,
}

pub fn parse_config(text: &str) -> Result<RawConfig, CliError> {
    let mut entries = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(CliError::Config {
                line,
                message: format!("expected 'key = value', found '{content}'"),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(CliError::Config {
                line,
                message: format!("unknown key '{key}'"),
            });
        }
        if value.is_empty() {
            return Err(CliError::Config {
                line,
                message: format!("missing value for '{key}'"),
            });
        }
        if let Some((_, first)) = entries.insert(key.to_string(), (value.to_string(), line)) {
            return Err(CliError::Config {
                line,
                message: format!("'{key}' already set on line {first}"),
            });
        }
    }
    Ok(RawConfig { entries })
}

impl RawConfig {
    pub fn from_file(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        parse_config(&text)
    }

    /// Canonical key name for a sweep parameter.
    pub fn sweep_key(name: &str) -> Result<&'static str, CliError> {
        let canonical = match name {
            "r_h" => "r_h_m",
            "r_g" => "r_g_m",
            "b" | "bits" => "quantization_bits",
            "n" | "N" => "n_elements",
            "P" | "tx_power" => "tx_power_dbm",
            other => other,
        };
        const NUMERIC: &[&str] = &[
            "n_elements",
            "carrier_hz",
            "pathloss_exponent",
            "noise_dbm",
            "tx_power_dbm",
            "m_h",
            "m_g",
            "m_d",
            "k_factor_h",
            "k_factor_g",
            "k_factor_d",
            "r_h_m",
            "r_g_m",
            "sd_distance_m",
            "psi_deg",
            "quantization_bits",
            "gamma_th_db",
        ];
        NUMERIC
            .iter()
            .find(|k| **k == canonical)
            .copied()
            .ok_or_else(|| usage(format!("'{name}' is not a numeric config field")))
    }

    /// A copy with one value replaced (or added).
    pub fn with_value(&self, key: &str, value: f64) -> RawConfig {
        let mut out = self.clone();
        let line = self.entries.get(key).map_or(0, |(_, l)| *l);
        out.entries.insert(key.to_string(), (format!("{value}"), line));
        out
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(v, _)| v.as_str())
    }

    fn line(&self, key: &str) -> usize {
        self.entries.get(key).map_or(0, |(_, l)| *l)
    }

    fn err(&self, key: &str, message: String) -> CliError {
        CliError::Config {
            line: self.line(key),
            message: format!("{key}: {message}"),
        }
    }

    fn number(&self, key: &str) -> Result<Option<f64>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(Some)
                .ok_or_else(|| self.err(key, format!("'{v}' is not a finite number"))),
        }
    }

    fn required(&self, key: &str) -> Result<f64, CliError> {
        self.number(key)?.ok_or_else(|| CliError::Config {
            line: 0,
            message: format!("missing required key '{key}'"),
        })
    }

    fn integer(&self, key: &str) -> Result<Option<u64>, CliError> {
        match self.number(key)? {
            None => Ok(None),
            Some(x) if x >= 0.0 && x.fract() == 0.0 && x < 9.0e15 => Ok(Some(x as u64)),
            Some(x) => Err(self.err(key, format!("{x} is not a nonnegative integer"))),
        }
    }

    fn shape(&self, m_key: &str, k_key: &str) -> Result<Option<f64>, CliError> {
        match (self.number(m_key)?, self.number(k_key)?) {
            (Some(_), Some(_)) => Err(self.err(k_key, format!("give either {m_key} or {k_key}, not both"))),
            (Some(m), None) => Ok(Some(m)),
            (None, Some(k)) if k >= 0.0 => Ok(Some(ricean_k_to_m(k))),
            (None, Some(k)) => Err(self.err(k_key, format!("Ricean factor {k} is negative"))),
            (None, None) => Ok(None),
        }
    }

    fn boolean(&self, key: &str) -> Result<Option<bool>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some("true") | Some("yes") | Some("1") => Ok(Some(true)),
            Some("false") | Some("no") | Some("0") => Ok(Some(false)),
            Some(v) => Err(self.err(key, format!("'{v}' is not a boolean"))),
        }
    }

    /// Interpret the entries as a scenario plus run settings.
    pub fn build(&self, flags: &SettingsOverride) -> Result<(ScenarioConfig, Settings), CliError> {
        let n = self
            .integer("n_elements")?
            .ok_or_else(|| usage("missing required key 'n_elements'"))?;
        let direct_link = self.boolean("direct_link")?.unwrap_or(false);
        let m_h = self.shape("m_h", "k_factor_h")?.ok_or_else(|| usage("missing m_h (or k_factor_h)"))?;
        let m_g = self.shape("m_g", "k_factor_g")?.ok_or_else(|| usage("missing m_g (or k_factor_g)"))?;
        let m_d = self.shape("m_d", "k_factor_d")?;
        if m_d.is_some() && !direct_link {
            let key = if self.get("m_d").is_some() { "m_d" } else { "k_factor_d" };
            return Err(self.err(key, "given but direct_link is false".into()));
        }
        if direct_link && m_d.is_none() {
            return Err(self.err("direct_link", "a direct link needs m_d (or k_factor_d)".into()));
        }
        let r_h = self.required("r_h_m")?;
        let r_g = match (self.number("r_g_m")?, self.number("sd_distance_m")?) {
            (Some(_), Some(_)) => return Err(self.err("sd_distance_m", "give either r_g_m or sd_distance_m".into())),
            (Some(r), None) => r,
            (None, Some(d)) => {
                if direct_link {
                    return Err(self.err("sd_distance_m", "the collinear placement has no direct-link angle".into()));
                }
                d - r_h
            }
            (None, None) => return Err(usage("missing r_g_m (or sd_distance_m)")),
        };
        let phase_design = match self.get("phase_design").unwrap_or("rps") {
            "rps" => PhaseDesign::Rps,
            "ops" => PhaseDesign::Ops,
            "quantized" => {
                let bits = self
                    .integer("quantization_bits")?
                    .ok_or_else(|| self.err("phase_design", "quantized design needs quantization_bits".into()))?;
                PhaseDesign::Quantized { bits: bits as u32 }
            }
            other => return Err(self.err("phase_design", format!("unknown design '{other}'"))),
        };
        if self.get("quantization_bits").is_some() && !matches!(phase_design, PhaseDesign::Quantized { .. }) {
            return Err(self.err("quantization_bits", "only valid with phase_design = quantized".into()));
        }
        let scenario = ScenarioConfig {
            n_elements: n as usize,
            carrier_hz: self.required("carrier_hz")?,
            alpha: self.required("pathloss_exponent")?,
            noise_dbm: self.required("noise_dbm")?,
            tx_power_dbm: self.required("tx_power_dbm")?,
            m_h,
            m_g,
            m_d,
            geometry: LinkGeometry {
                r_h,
                r_g,
                psi_deg: self.number("psi_deg")?.unwrap_or(90.0),
                direct_link,
            },
            phase_design,
        };
        scenario.validate().map_err(|e| usage(format!("invalid scenario: {e}")))?;
        scenario.derive().map_err(|e| usage(format!("invalid scenario: {e}")))?;

        let mut settings = Settings::default();
        if let Some(x) = self.number("gamma_th_db")? {
            settings.gamma_th_db = x;
        }
        if let Some(m) = self.get("modulation") {
            settings.modulation = m.parse().map_err(|e: String| self.err("modulation", e))?;
        }
        if let Some(t) = self.integer("trials")? {
            settings.trials = t as usize;
        }
        if let Some(s) = self.integer("seed")? {
            settings.seed = s;
        }
        if let Some(x) = flags.gamma_th_db {
            settings.gamma_th_db = x;
        }
        if let Some(m) = flags.modulation {
            settings.modulation = m;
        }
        if let Some(t) = flags.trials {
            settings.trials = t;
        }
        if let Some(s) = flags.seed {
            settings.seed = s;
        }
        Ok((scenario, settings))
    }
}

/// `key=start:stop:steps[:log]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub key: &'static str,
    pub values: Vec<f64>,
}

impl Sweep {
    pub fn parse(spec: &str) -> Result<Self, CliError> {
        let bad = || usage(format!("sweep '{spec}' is not of the form key=start:stop:steps[:log]"));
        let (key, range) = spec.split_once('=').ok_or_else(bad)?;
        let key = RawConfig::sweep_key(key.trim())?;
        let parts: Vec<&str> = range.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(bad());
        }
        let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let steps: usize = parts[2].trim().parse().map_err(|_| bad())?;
        let log = match parts.get(3).map(|s| s.trim()) {
            None => false,
            Some("log") => true,
            Some(_) => return Err(bad()),
        };
        if steps == 0 || !start.is_finite() || !stop.is_finite() {
            return Err(bad());
        }
        if log && (start <= 0.0 || stop <= 0.0) {
            return Err(usage("a log sweep needs positive endpoints"));
        }
        let values = (0..steps)
            .map(|i| {
                let f = if steps == 1 { 0.0 } else { i as f64 / (steps - 1) as f64 };
                if log {
                    (start.ln() + f * (stop.ln() - start.ln())).exp()
                } else {
                    start + f * (stop - start)
                }
            })
            .map(|x| if matches!(key, "n_elements" | "quantization_bits") { x.round() } else { x })
            .collect();
        Ok(Sweep { key, values })
    }
}

/// One table row.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub x: f64,
    pub metric: String,
    pub method: Method,
    /// The estimate, or the reason it could not be computed.
    pub estimate: Result<f64, String>,
    pub std_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub param: String,
    pub rows: Vec<Row>,
}

pub const CSV_HEADER: &str = "param,value,metric,method,estimate,std_error";

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let est = match &r.estimate {
                Ok(v) => format!("{v:e}"),
                Err(_) => "error".to_string(),
            };
            let se = r.std_error.map(|s| format!("{s:e}")).unwrap_or_default();
            let _ = writeln!(out, "{},{:e},{},{},{},{}", self.param, r.x, r.metric, r.method.name(), est, se);
        }
        out
    }

    pub fn parse_csv(text: &str) -> Result<Self, CliError> {
        let mut lines = text.lines();
        if lines.next() != Some(CSV_HEADER) {
            return Err(usage("missing CSV header"));
        }
        let mut param = String::new();
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let bad = || CliError::Config {
                line: i + 2,
                message: format!("malformed row '{line}'"),
            };
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 6 {
                return Err(bad());
            }
            param = f[0].to_string();
            let num = |s: &str| s.parse::<f64>().map_err(|_| bad());
            rows.push(Row {
                x: num(f[1])?,
                metric: f[2].to_string(),
                method: Method::from_name(f[3]).ok_or_else(bad)?,
                estimate: if f[4] == "error" { Err("error".into()) } else { Ok(num(f[4])?) },
                std_error: if f[5].is_empty() { None } else { Some(num(f[5])?) },
            });
        }
        Ok(SweepTable { param, rows })
    }

    /// Number of rows whose computation failed.
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.estimate.is_err()).count()
    }

    fn sort(&mut self) {
        self.rows.sort_by(|a, b| a.x.total_cmp(&b.x));
    }
}

#[cfg(feature = "parallel")]
fn par_map<T: Sync, U: Send, F: Fn(&T) -> U + Sync + Send>(items: &[T], f: F) -> Vec<U> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, U, F: Fn(&T) -> U>(items: &[T], f: F) -> Vec<U> {
    items.iter().map(f).collect()
}

#[derive(Debug)]
enum RowError {
    Unsupported(String),
    Numerical(String),
}

impl fmt::Display for RowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowError::Unsupported(s) | RowError::Numerical(s) => f.write_str(s),
        }
    }
}

impl From<crate::Error> for RowError {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::Unsupported(s) => RowError::Unsupported(s),
            other => RowError::Numerical(other.to_string()),
        }
    }
}

fn unsupported(method: Method, design: PhaseDesign) -> RowError {
    RowError::Unsupported(format!("no {} evaluation for the {design:?} design", method.name()))
}

/// Analytical value of a metric. `link` may differ from the scenario's own
/// link model (the validation report uses this to plant errors).
fn analytic(
    link: &LinkModel,
    design: PhaseDesign,
    settings: &Settings,
    metric: Metric,
    method: Method,
    spec: &QuadratureSpec,
) -> Result<f64, RowError> {
    let rho = link.rho;
    let gth = settings.gamma_th();
    let m = settings.modulation;
    let unit = |l: &LinkModel| LinkModel { rho: 1.0, ..*l };
    match (method, design) {
        (Method::Exact, PhaseDesign::Rps) => {
            let hp = HankelProduct::from_link(&unit(link));
            Ok(match metric {
                Metric::Op => op_rps(&hp, gth, rho, spec)?,
                Metric::Ber => ber_rps(&hp, rho, m, spec)?,
                Metric::Ec => ec_rps(&hp, rho)?,
            })
        }
        (Method::Exact, PhaseDesign::Ops) => {
            let chf = AmplitudeChf::from_link(&unit(link));
            Ok(match metric {
                Metric::Op => op_ops(&chf, gth, rho, spec)?,
                Metric::Ber => ber_ops(&chf, rho, m, spec)?,
                Metric::Ec => ec_ops(&chf, rho)?,
            })
        }
        (Method::Asymptotic, PhaseDesign::Rps) => {
            let model = LargeNRps::from_link(link)?;
            Ok(match metric {
                Metric::Op => largen_rps_cdf(&model, gth),
                Metric::Ber => largen_rps_ber(&model, m),
                Metric::Ec => largen_rps_ec(&model),
            })
        }
        (Method::Asymptotic, PhaseDesign::Ops) => {
            let model = LargeNOps::from_link(link)?;
            Ok(match metric {
                Metric::Op => largen_ops_cdf(&model, gth),
                Metric::Ber => ber_from_cdf(|x| Ok(largen_ops_cdf(&model, x)), m, model.mean(), spec)?,
                Metric::Ec => largen_ops_ec(&model, spec)?,
            })
        }
        (method, design) => Err(unsupported(method, design)),
    }
}

fn kernel(metric: Metric, settings: &Settings, rho: f64) -> impl Fn(f64) -> f64 + Sync {
    let gth = settings.gamma_th();
    let m = settings.modulation;
    move |x: f64| {
        let g = rho * x;
        match metric {
            Metric::Op => {
                if g <= gth {
                    1.0
                } else {
                    0.0
                }
            }
            Metric::Ber => m.conditional_ber(g),
            Metric::Ec => g.ln_1p() / LN_2,
        }
    }
}

/// MC estimates at several SNR scales from one shared set of channel draws.
fn mc_at_scales(
    link: &LinkModel,
    design: PhaseDesign,
    settings: &Settings,
    metric: Metric,
    rhos: &[f64],
) -> Result<Vec<McEstimate>, RowError> {
    let sim = Simulator::new(&LinkModel { rho: 1.0, ..*link }, design, PhaseModel::for_design(design))?;
    let kernels: Vec<_> = rhos.iter().map(|&r| kernel(metric, settings, r)).collect();
    let refs: Vec<&(dyn Fn(f64) -> f64 + Sync)> = kernels.iter().map(|k| k as &(dyn Fn(f64) -> f64 + Sync)).collect();
    let mut est = estimate_many(&sim, &refs, settings.trials, settings.seed)?;
    if metric == Metric::Op {
        for e in &mut est {
            e.std_error = (e.value * (1.0 - e.value) / e.n_trials as f64).sqrt();
        }
    }
    Ok(est)
}

/// A metric request against one config.
#[derive(Debug, Clone)]
pub struct MetricRequest {
    pub metric: Metric,
    pub methods: MethodSel,
    pub sweep: Option<Sweep>,
    pub flags: SettingsOverride,
}

/// Evaluate a metric over an optional sweep. Rows come out sorted by the
/// swept value, then by method.
pub fn cmd_metric(raw: &RawConfig, req: &MetricRequest) -> Result<SweepTable, CliError> {
    cmd_metric_labeled(raw, req, req.metric.name())
}

fn cmd_metric_labeled(raw: &RawConfig, req: &MetricRequest, label: &str) -> Result<SweepTable, CliError> {
    let (param, xs, configs) = match &req.sweep {
        Some(s) => {
            let cfgs = s
                .values
                .iter()
                .map(|&x| raw.with_value(s.key, x).build(&req.flags))
                .collect::<Result<Vec<_>, _>>()?;
            (s.key.to_string(), s.values.clone(), cfgs)
        }
        None => {
            let (scn, set) = raw.build(&req.flags)?;
            ("tx_power_dbm".to_string(), vec![scn.tx_power_dbm], vec![(scn, set)])
        }
    };
    let methods = req.methods.methods();
    let spec = QuadratureSpec::default();
    let links: Vec<LinkModel> = configs
        .iter()
        .map(|(s, _)| s.link_model().map_err(|e| usage(e.to_string())))
        .collect::<Result<_, _>>()?;

    let mut rows = Vec::new();
    for &method in &methods {
        let results: Vec<Result<(f64, Option<f64>), RowError>> = if method == Method::Mc {
            mc_rows(&param, &configs, &links, req.metric)
        } else {
            let jobs: Vec<usize> = (0..configs.len()).collect();
            par_map(&jobs, |&i| {
                let (scn, set) = &configs[i];
                analytic(&links[i], scn.phase_design, set, req.metric, method, &spec).map(|v| (v, None))
            })
        };
        for (x, r) in xs.iter().zip(results) {
            let estimate = match r {
                Ok(v) => Ok(v),
                Err(RowError::Unsupported(msg)) => {
                    if req.methods == MethodSel::All {
                        continue;
                    }
                    return Err(usage(msg));
                }
                Err(RowError::Numerical(msg)) => Err(msg),
            };
            let (estimate, std_error) = match estimate {
                Ok((v, se)) => (Ok(v), se),
                Err(e) => (Err(e), None),
            };
            rows.push(Row {
                x: *x,
                metric: label.to_string(),
                method,
                estimate,
                std_error,
            });
        }
    }
    let mut table = SweepTable { param, rows };
    table.sort();
    Ok(table)
}

fn mc_rows(
    param: &str,
    configs: &[(ScenarioConfig, Settings)],
    links: &[LinkModel],
    metric: Metric,
) -> Vec<Result<(f64, Option<f64>), RowError>> {
    let to_row = |e: &McEstimate| (e.value, Some(e.std_error));
    if param == "tx_power_dbm" && configs.len() > 1 {
        // only ρ changes along a power sweep, so one set of draws serves all rows
        let (scn, set) = &configs[0];
        let rhos: Vec<f64> = links.iter().map(|l| l.rho).collect();
        return match mc_at_scales(&links[0], scn.phase_design, set, metric, &rhos) {
            Ok(est) => est.iter().map(|e| Ok(to_row(e))).collect(),
            Err(e) => {
                let msg = e.to_string();
                let unsupported = matches!(e, RowError::Unsupported(_));
                (0..configs.len())
                    .map(|_| {
                        Err(if unsupported {
                            RowError::Unsupported(msg.clone())
                        } else {
                            RowError::Numerical(msg.clone())
                        })
                    })
                    .collect()
            }
        };
    }
    configs
        .iter()
        .zip(links)
        .map(|((scn, set), link)| {
            mc_at_scales(link, scn.phase_design, set, metric, &[link.rho]).map(|e| to_row(&e[0]))
        })
        .collect()
}

/// Knobs of the validation report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidateOptions {
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    /// Multiplies Λ_n in the analytical model only; anything but 1 should
    /// make the report fail.
    pub lambda_scale: f64,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            trials: None,
            seed: None,
            lambda_scale: 1.0,
        }
    }
}

/// Expected MC event count below which OP and BER points are not judged.
pub const MIN_EVENTS: f64 = 20.0;

/// Element count below which large-N models are reported but not judged.
pub const LARGE_N: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Reported only: approximations (Taylor EC, large-N models).
    Info,
    /// Large-N model applied below [`LARGE_N`] elements.
    Loose,
    /// Too few MC events at this point to judge the analytical value.
    Unresolved,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
            Status::Loose => "loose",
            Status::Unresolved => "unresolved",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationRow {
    pub metric: Metric,
    pub method: Method,
    pub value: Result<f64, String>,
    pub mc: McEstimate,
    pub z: f64,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub rows: Vec<ValidationRow>,
}

impl ValidationReport {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.status == Status::Fail).count()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("metric,method,value,mc_estimate,mc_std_error,z,status\n");
        for r in &self.rows {
            let v = match &r.value {
                Ok(v) => format!("{v:e}"),
                Err(_) => "error".into(),
            };
            let _ = writeln!(
                out,
                "{},{},{},{:e},{:e},{:.3},{}",
                r.metric.name(),
                r.method.name(),
                v,
                r.mc.value,
                r.mc.std_error,
                r.z,
                r.status.name()
            );
        }
        out
    }
}

/// Analytical and asymptotic values side by side with MC, with z-scores.
/// Exact OP and BER are judged at |z| ≤ 4; the Taylor EC and the large-N
/// models are approximations and only reported.
pub fn cmd_validate(raw: &RawConfig, opts: &ValidateOptions) -> Result<ValidationReport, CliError> {
    let flags = SettingsOverride {
        trials: opts.trials,
        seed: opts.seed,
        ..Default::default()
    };
    let (scn, settings) = raw.build(&flags)?;
    let link = scn.link_model().map_err(|e| usage(e.to_string()))?;
    let mut planted = link;
    planted.h.omega *= opts.lambda_scale;
    let spec = QuadratureSpec::default();
    let design = scn.phase_design;
    let mut rows = Vec::new();
    for metric in [Metric::Op, Metric::Ber, Metric::Ec] {
        let mc = mc_at_scales(&link, design, &settings, metric, &[link.rho])
            .map_err(|e| CliError::Numerical(e.to_string()))?[0];
        for method in [Method::Exact, Method::Asymptotic] {
            let value = match analytic(&planted, design, &settings, metric, method, &spec) {
                Ok(v) => Ok(v),
                Err(RowError::Unsupported(_)) => continue,
                Err(RowError::Numerical(m)) => Err(m),
            };
            let z = value.as_ref().map_or(f64::NAN, |&v| match metric {
                // score test: the binomial spread under the hypothesised value
                Metric::Op if v > 0.0 && v < 1.0 => (mc.value - v) / (v * (1.0 - v) / mc.n_trials as f64).sqrt(),
                _ => mc.z_score(v),
            });
            let resolved = |v: f64| metric == Metric::Ec || v * mc.n_trials as f64 >= MIN_EVENTS;
            let status = match (method, metric, &value) {
                (_, _, Err(_)) => Status::Fail,
                (Method::Exact, Metric::Ec, _) => Status::Info,
                (Method::Exact, _, Ok(v)) if !resolved(*v) => Status::Unresolved,
                (Method::Exact, _, _) => {
                    if z.abs() <= 4.0 {
                        Status::Pass
                    } else {
                        Status::Fail
                    }
                }
                _ if scn.n_elements < LARGE_N => Status::Loose,
                _ => Status::Info,
            };
            rows.push(ValidationRow {
                metric,
                method,
                value,
                mc,
                z,
                status,
            });
        }
    }
    Ok(ValidationReport { rows })
}

/// Settings shared by the figure presets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PresetOptions {
    pub trials: usize,
    pub seed: u64,
}

impl Default for PresetOptions {
    fn default() -> Self {
        PresetOptions {
            trials: 100_000,
            seed: 1,
        }
    }
}

/// OP and EC of random phase shifting over LOS hops (K = 10), no direct link.
pub const FIG1_CONFIG: &str = "\
# random phase shifting, LOS hops
n_elements = 16
carrier_hz = 2.45e9
pathloss_exponent = 2.5
noise_dbm = -85
tx_power_dbm = 50
k_factor_h = 10
k_factor_g = 10
r_h_m = 20
r_g_m = 20
direct_link = false
phase_design = rps
gamma_th_db = 0
";

/// BPSK BER with m_h = 1.5, m_g = 2.5; the direct link is Rayleigh.
pub const FIG2_CONFIG: &str = "\
# BPSK over Nakagami hops
n_elements = 4
carrier_hz = 2.45e9
pathloss_exponent = 2.5
noise_dbm = -85
tx_power_dbm = 60
m_h = 1.5
m_g = 2.5
r_h_m = 20
r_g_m = 20
psi_deg = 86
direct_link = false
phase_design = rps
modulation = bpsk
";

/// EC along a 100 m source-destination segment, no direct link.
pub const FIG3_CONFIG: &str = "\
# RIS placed on the source-destination segment
n_elements = 32
carrier_hz = 2.45e9
pathloss_exponent = 2.5
noise_dbm = -85
tx_power_dbm = 50
k_factor_h = 10
k_factor_g = 10
r_h_m = 50
sd_distance_m = 100
direct_link = false
phase_design = rps
";

pub const FIG1_ELEMENTS: [usize; 4] = [16, 32, 64, 128];
pub const FIG2_ELEMENTS: [usize; 2] = [4, 16];
pub const FIG3_ELEMENTS: [usize; 3] = [32, 128, 320];

fn merge(tables: Vec<SweepTable>) -> SweepTable {
    let param = tables[0].param.clone();
    let mut rows: Vec<Row> = tables.into_iter().flat_map(|t| t.rows).collect();
    rows.sort_by(|a, b| a.x.total_cmp(&b.x));
    SweepTable { param, rows }
}

fn preset_flags(opts: &PresetOptions) -> SettingsOverride {
    SettingsOverride {
        trials: Some(opts.trials),
        seed: Some(opts.seed),
        ..Default::default()
    }
}

/// OP and EC against transmit power for several N.
pub fn preset_fig1(opts: &PresetOptions) -> Result<SweepTable, CliError> {
    let base = parse_config(FIG1_CONFIG)?;
    let mut tables = Vec::new();
    for n in FIG1_ELEMENTS {
        let raw = base.with_value("n_elements", n as f64);
        for metric in [Metric::Op, Metric::Ec] {
            let req = MetricRequest {
                metric,
                methods: MethodSel::All,
                sweep: Some(Sweep::parse("tx_power_dbm=30:90:13")?),
                flags: preset_flags(opts),
            };
            tables.push(cmd_metric_labeled(&raw, &req, &format!("{}/rps/N={n}", metric.name()))?);
        }
    }
    Ok(merge(tables))
}

/// BPSK BER against transmit power for both designs, with and without the
/// direct link.
pub fn preset_fig2(opts: &PresetOptions) -> Result<SweepTable, CliError> {
    let base = parse_config(FIG2_CONFIG)?;
    let mut tables = Vec::new();
    for n in FIG2_ELEMENTS {
        for design in ["rps", "ops"] {
            for direct in [false, true] {
                let mut raw = base.with_value("n_elements", n as f64);
                raw.entries.insert("phase_design".into(), (design.into(), 0));
                if direct {
                    raw.entries.insert("direct_link".into(), ("true".into(), 0));
                    raw.entries.insert("m_d".into(), ("1".into(), 0));
                }
                let req = MetricRequest {
                    metric: Metric::Ber,
                    methods: MethodSel::All,
                    sweep: Some(Sweep::parse("tx_power_dbm=40:90:11")?),
                    flags: preset_flags(opts),
                };
                let label = format!("ber/{design}/N={n}/{}", if direct { "direct" } else { "no-direct" });
                let mut t = cmd_metric_labeled(&raw, &req, &label)?;
                // the large-N models exclude the direct path
                t.rows.retain(|r| !(direct && r.method == Method::Asymptotic));
                tables.push(t);
            }
        }
    }
    Ok(merge(tables))
}

/// EC against the source-RIS distance for random, 2-bit quantized and
/// optimal phase shifting.
pub fn preset_fig3(opts: &PresetOptions) -> Result<SweepTable, CliError> {
    let base = parse_config(FIG3_CONFIG)?;
    let mut tables = Vec::new();
    for n in FIG3_ELEMENTS {
        for design in ["rps", "quantized", "ops"] {
            let mut raw = base.with_value("n_elements", n as f64);
            raw.entries.insert("phase_design".into(), (design.into(), 0));
            let (methods, label) = if design == "quantized" {
                raw.entries.insert("quantization_bits".into(), ("2".into(), 0));
                (MethodSel::One(Method::Mc), format!("ec/quantized2/N={n}"))
            } else {
                (MethodSel::One(Method::Exact), format!("ec/{design}/N={n}"))
            };
            let req = MetricRequest {
                metric: Metric::Ec,
                methods,
                sweep: Some(Sweep::parse("r_h_m=10:90:17")?),
                flags: preset_flags(opts),
            };
            tables.push(cmd_metric_labeled(&raw, &req, &label)?);
        }
    }
    Ok(merge(tables))
}
