//! Batch experiment runner: declarative sweep specs (key = value sections),
//! bundled presets mirroring the headline figures, CSV / JSON-lines output.
//!
//! A spec is deterministic: the seed fully fixes every Monte Carlo column
//! regardless of thread count (row i uses base seed + i, with per-trial
//! substreams below that).

mod presets;

pub use presets::{preset, preset_names, PRESETS};

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::channel::{ConstellationLabel, JammingScheme};
use crate::error::{Error, Result};
use crate::errorprob::{
    asep_with_model, simulate_ser, AsepMode, FadingMode, JammerModel, SerQuery,
};
use crate::geometry::{db_to_linear, shadowing_db_to_natural, JammerParams, NetworkParams};
use crate::outage::{outage_probability_raw, simulate_outage, OutageMode, OutageQuery};
use crate::retx::{retx_profile, Coupling};
use crate::sizing::{min_jammers, sizing_template, SizingMode, SizingPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Outage,
    Ser,
    NjStar,
    Retx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engines {
    Analytic,
    Mc,
    Both,
}

impl Engines {
    fn wants_analytic(self) -> bool {
        self != Engines::Mc
    }
    fn wants_mc(self) -> bool {
        self != Engines::Analytic
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    NJ,
    NJc,
    P,
    ThetaDb,
    SigmaChiDb,
    LambdaFactor,
    SnrDb,
    JnrDb,
    Scheme,
    D,
    GhqN,
}

/// One grid point of a sweep: numeric for every parameter except the
/// jamming scheme, which sweeps by label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SweepValue {
    Num(f64),
    Label(String),
}

impl std::fmt::Display for SweepValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SweepValue::Num(v) => write!(f, "{}", format_sig(*v)),
            SweepValue::Label(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RetxOutput {
    Activity,
    Drop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizingPolicyKind {
    Scaled,
    Fixed,
}

/// A fully validated experiment definition.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub name: String,
    pub metric: Metric,
    pub engines: Engines,
    pub trials: u64,
    pub seed: Option<u64>,
    pub theta_db: f64,
    pub ghq_n: usize,

    pub lambda_raw: f64,
    pub alpha: f64,
    pub sigma_chi_db: f64,
    pub mu_chi: f64,
    pub p: f64,
    pub snr_db: f64,
    pub noise_power: f64,

    pub n_j: u32,
    pub n_jc: f64,
    pub jnr_db: f64,
    pub scheme: JammingScheme,
    pub jam_model: JammerModel,

    pub victim: ConstellationLabel,
    pub fading: FadingMode,

    pub target_outage: f64,
    pub sizing_policy: SizingPolicyKind,
    pub fixed_r_over_sqrt_lambda: Option<f64>,
    pub fixed_r_abs: Option<f64>,
    pub n_max: u32,

    pub coupling: Coupling,
    pub retx_output: RetxOutput,

    pub sweep_param: SweepParam,
    pub grid: Vec<SweepValue>,
}

/// One emitted result row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub sweep: SweepValue,
    pub analytic: Option<f64>,
    pub mc: Option<f64>,
    pub mc_stderr: Option<f64>,
    pub trials: Option<u64>,
    pub wall_ms: f64,
    pub flags: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub rows: Vec<ResultRow>,
    pub failed_rows: usize,
}

// ---------------------------------------------------------------------
// spec-file parsing

type KeyMap = BTreeMap<String, String>;

/// Parses the `[section] key = value` format into a flat `section.key` map.
pub fn parse_keymap(text: &str) -> Result<KeyMap> {
    let mut map = KeyMap::new();
    let mut section = String::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            section = name.trim().to_ascii_lowercase();
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::InvalidSpec(format!(
                "line {}: expected `key = value`, got `{raw}`",
                lineno + 1
            )));
        };
        if section.is_empty() {
            return Err(Error::InvalidSpec(format!(
                "line {}: key outside any [section]",
                lineno + 1
            )));
        }
        map.insert(
            format!("{section}.{}", key.trim().to_ascii_lowercase()),
            value.trim().to_string(),
        );
    }
    Ok(map)
}

fn parse_f64(map: &KeyMap, key: &str, default: f64) -> Result<f64> {
    match map.get(key) {
        None => Ok(default),
        Some(v) => v
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("{key}: not a number: `{v}`"))),
    }
}

fn parse_u64(map: &KeyMap, key: &str, default: u64) -> Result<u64> {
    match map.get(key) {
        None => Ok(default),
        Some(v) => v
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("{key}: not an integer: `{v}`"))),
    }
}

fn parse_scheme(s: &str) -> Result<JammingScheme> {
    match s.to_ascii_lowercase().as_str() {
        "bpsk" => Ok(JammingScheme::Bpsk),
        "qpsk" => Ok(JammingScheme::Qpsk),
        "qam16" | "16qam" => Ok(JammingScheme::Qam16),
        "awgn" => Ok(JammingScheme::Awgn),
        other => Err(Error::InvalidSpec(format!("unknown scheme `{other}`"))),
    }
}

fn parse_constellation(s: &str) -> Result<ConstellationLabel> {
    match s.to_ascii_lowercase().as_str() {
        "bpsk" => Ok(ConstellationLabel::Bpsk),
        "qpsk" => Ok(ConstellationLabel::Qpsk),
        "qam16" | "16qam" => Ok(ConstellationLabel::Qam16),
        other => Err(Error::InvalidSpec(format!("unknown constellation `{other}`"))),
    }
}

impl ExperimentSpec {
    /// Builds and validates a spec from config text plus `section.key=value`
    /// overrides (later overrides win).
    pub fn from_text(text: &str, overrides: &[(String, String)]) -> Result<Self> {
        let mut map = parse_keymap(text)?;
        for (k, v) in overrides {
            map.insert(k.to_ascii_lowercase(), v.clone());
        }
        Self::from_keymap(&map)
    }

    fn from_keymap(map: &KeyMap) -> Result<Self> {
        let metric = match map
            .get("experiment.metric")
            .map(String::as_str)
            .unwrap_or("outage")
        {
            "outage" => Metric::Outage,
            "ser" => Metric::Ser,
            "njstar" => Metric::NjStar,
            "retx" => Metric::Retx,
            other => return Err(Error::InvalidSpec(format!("unknown metric `{other}`"))),
        };
        let engines = match map
            .get("experiment.engines")
            .map(String::as_str)
            .unwrap_or("analytic")
        {
            "analytic" => Engines::Analytic,
            "mc" | "montecarlo" => Engines::Mc,
            "both" => Engines::Both,
            other => return Err(Error::InvalidSpec(format!("unknown engines `{other}`"))),
        };
        let sweep_param = match map
            .get("sweep.param")
            .ok_or_else(|| Error::InvalidSpec("sweep.param is required".into()))?
            .as_str()
        {
            "n_j" => SweepParam::NJ,
            "n_jc" => SweepParam::NJc,
            "p" => SweepParam::P,
            "theta_db" => SweepParam::ThetaDb,
            "sigma_chi_db" => SweepParam::SigmaChiDb,
            "lambda_factor" => SweepParam::LambdaFactor,
            "snr_db" => SweepParam::SnrDb,
            "jnr_db" => SweepParam::JnrDb,
            "scheme" => SweepParam::Scheme,
            "d" => SweepParam::D,
            "ghq_n" => SweepParam::GhqN,
            other => return Err(Error::InvalidSpec(format!("unknown sweep param `{other}`"))),
        };

        let grid_text = map
            .get("sweep.grid")
            .ok_or_else(|| Error::InvalidSpec("sweep.grid is required".into()))?;
        let mut grid = Vec::new();
        for tok in grid_text.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            if sweep_param == SweepParam::Scheme {
                parse_scheme(tok)?;
                grid.push(SweepValue::Label(tok.to_ascii_lowercase()));
            } else {
                let v: f64 = tok
                    .parse()
                    .map_err(|_| Error::InvalidSpec(format!("sweep.grid: bad number `{tok}`")))?;
                grid.push(SweepValue::Num(v));
            }
        }
        if grid.is_empty() {
            return Err(Error::InvalidSpec("sweep.grid is empty".into()));
        }

        let seed = map
            .get("experiment.seed")
            .map(|v| {
                v.parse::<u64>()
                    .map_err(|_| Error::InvalidSpec(format!("experiment.seed: bad integer `{v}`")))
            })
            .transpose()?;

        let spec = ExperimentSpec {
            name: map
                .get("experiment.name")
                .cloned()
                .unwrap_or_else(|| "unnamed".into()),
            metric,
            engines,
            trials: parse_u64(map, "experiment.trials", 100_000)?,
            seed,
            theta_db: parse_f64(map, "experiment.theta_db", 0.0)?,
            ghq_n: parse_u64(map, "experiment.ghq_n", default_ghq(metric))? as usize,

            lambda_raw: parse_f64(map, "network.lambda_raw", 4.6188021535170065e-6)?,
            alpha: parse_f64(map, "network.alpha", 3.7)?,
            sigma_chi_db: parse_f64(map, "network.sigma_chi_db", 6.0)?,
            mu_chi: parse_f64(map, "network.mu_chi", 0.0)?,
            p: parse_f64(map, "network.p", 0.01)?,
            snr_db: parse_f64(map, "network.snr_db", 0.0)?,
            noise_power: parse_f64(map, "network.noise_power", 1.0)?,

            n_j: parse_u64(map, "jammers.n_j", 0)? as u32,
            n_jc: parse_f64(map, "jammers.n_jc", 1.0)?,
            jnr_db: parse_f64(map, "jammers.jnr_db", 0.0)?,
            scheme: parse_scheme(map.get("jammers.scheme").map(String::as_str).unwrap_or("bpsk"))?,
            jam_model: match map
                .get("jammers.model")
                .map(String::as_str)
                .unwrap_or("exact")
            {
                "exact" => JammerModel::Exact,
                "gaussian" => JammerModel::GaussianApprox,
                other => {
                    return Err(Error::InvalidSpec(format!("unknown jammer model `{other}`")))
                }
            },

            victim: parse_constellation(
                map.get("victim.constellation")
                    .map(String::as_str)
                    .unwrap_or("bpsk"),
            )?,
            fading: match map
                .get("victim.fading")
                .map(String::as_str)
                .unwrap_or("rayleigh")
            {
                "rayleigh" => FadingMode::Rayleigh,
                "none" => FadingMode::None,
                other => return Err(Error::InvalidSpec(format!("unknown fading `{other}`"))),
            },

            target_outage: parse_f64(map, "sizing.target_outage", 0.9)?,
            sizing_policy: match map
                .get("sizing.policy")
                .map(String::as_str)
                .unwrap_or("scaled")
            {
                "scaled" => SizingPolicyKind::Scaled,
                "fixed" => SizingPolicyKind::Fixed,
                other => return Err(Error::InvalidSpec(format!("unknown sizing policy `{other}`"))),
            },
            fixed_r_over_sqrt_lambda: map
                .get("sizing.fixed_r_over_sqrt_lambda")
                .map(|v| {
                    v.parse::<f64>().map_err(|_| {
                        Error::InvalidSpec("sizing.fixed_r_over_sqrt_lambda: bad number".into())
                    })
                })
                .transpose()?,
            fixed_r_abs: map
                .get("sizing.fixed_r_abs")
                .map(|v| {
                    v.parse::<f64>()
                        .map_err(|_| Error::InvalidSpec("sizing.fixed_r_abs: bad number".into()))
                })
                .transpose()?,
            n_max: parse_u64(map, "sizing.n_max", 500)? as u32,

            coupling: match map
                .get("retx.coupling")
                .map(String::as_str)
                .unwrap_or("fixed_point")
            {
                "fixed_point" => Coupling::FixedPoint,
                "open_loop" => Coupling::OpenLoop,
                other => return Err(Error::InvalidSpec(format!("unknown coupling `{other}`"))),
            },
            retx_output: match map
                .get("retx.output")
                .map(String::as_str)
                .unwrap_or("activity")
            {
                "activity" => RetxOutput::Activity,
                "drop" => RetxOutput::Drop,
                other => return Err(Error::InvalidSpec(format!("unknown retx output `{other}`"))),
            },

            sweep_param,
            grid,
        };

        if spec.engines.wants_mc() && matches!(spec.metric, Metric::Outage | Metric::Ser) {
            if spec.seed.is_none() {
                return Err(Error::InvalidSpec(
                    "experiment.seed is required when the Monte Carlo engine is selected".into(),
                ));
            }
            if spec.trials < 1000 {
                return Err(Error::InvalidSpec(format!(
                    "experiment.trials must be at least 1000, got {}",
                    spec.trials
                )));
            }
        }
        Ok(spec)
    }
}

fn default_ghq(metric: Metric) -> u64 {
    match metric {
        Metric::Ser => 10,
        _ => 15,
    }
}

// ---------------------------------------------------------------------
// running

struct Scenario {
    net: NetworkParams,
    jam: JammerParams,
    theta: f64,
    victim: ConstellationLabel,
    fading: FadingMode,
    ghq_mode: OutageMode,
    ghq_n: usize,
    d: u32,
}

fn materialize(spec: &ExperimentSpec, value: &SweepValue) -> Result<Scenario> {
    let mut s = spec.clone();
    let mut d = 0u32;
    let mut ghq_override: Option<usize> = None;
    let mut lambda_factor = 1.0;

    match (&spec.sweep_param, value) {
        (SweepParam::NJ, SweepValue::Num(v)) => s.n_j = *v as u32,
        (SweepParam::NJc, SweepValue::Num(v)) => s.n_jc = *v,
        (SweepParam::P, SweepValue::Num(v)) => s.p = *v,
        (SweepParam::ThetaDb, SweepValue::Num(v)) => s.theta_db = *v,
        (SweepParam::SigmaChiDb, SweepValue::Num(v)) => s.sigma_chi_db = *v,
        (SweepParam::LambdaFactor, SweepValue::Num(v)) => lambda_factor = *v,
        (SweepParam::SnrDb, SweepValue::Num(v)) => s.snr_db = *v,
        (SweepParam::JnrDb, SweepValue::Num(v)) => s.jnr_db = *v,
        (SweepParam::D, SweepValue::Num(v)) => d = *v as u32,
        (SweepParam::GhqN, SweepValue::Num(v)) => ghq_override = Some(*v as usize),
        (SweepParam::Scheme, SweepValue::Label(l)) => s.scheme = parse_scheme(l)?,
        (p, v) => {
            return Err(Error::InvalidSpec(format!(
                "sweep value {v:?} incompatible with parameter {p:?}"
            )))
        }
    }

    let sigma_nat = shadowing_db_to_natural(s.sigma_chi_db);
    let net = NetworkParams::from_raw_density(
        s.lambda_raw * lambda_factor,
        db_to_linear(s.snr_db) * s.noise_power,
        s.p,
        s.alpha,
        s.mu_chi,
        sigma_nat,
        s.noise_power,
    )?;
    let p_j = db_to_linear(s.jnr_db) * s.noise_power;
    let jam = if s.n_j == 0 {
        JammerParams::none_with_power(p_j, s.scheme)
    } else {
        JammerParams::scaled(s.n_j, s.n_jc, net.lambda_t, p_j, s.scheme)?
    };

    let ghq_mode = match ghq_override {
        Some(0) => OutageMode::Exact,
        Some(n) => OutageMode::Ghq(n),
        None => OutageMode::Ghq(s.ghq_n),
    };

    Ok(Scenario {
        net,
        jam,
        theta: db_to_linear(s.theta_db),
        victim: s.victim,
        fading: s.fading,
        ghq_mode,
        ghq_n: s.ghq_n,
        d,
    })
}

fn run_row(spec: &ExperimentSpec, idx: usize, value: &SweepValue) -> Result<ResultRow> {
    let scn = materialize(spec, value)?;
    let mut flags: Vec<String> = Vec::new();
    let mut analytic = None;
    let mut mc = None;
    let mut mc_stderr = None;
    let mut trials_out = None;
    let started = Instant::now();

    match spec.metric {
        Metric::Outage => {
            if spec.engines.wants_analytic() {
                let q = OutageQuery::new(scn.theta, scn.net, scn.jam)?;
                let (p, raw) = outage_probability_raw(&q, scn.ghq_mode)?;
                if (raw - p).abs() > 1e-9 {
                    flags.push(format!("clamped_from={}", format_sig(raw)));
                }
                analytic = Some(p);
            }
            if spec.engines.wants_mc() {
                let q = OutageQuery::new(scn.theta, scn.net, scn.jam)?;
                let seed = spec.seed.expect("validated").wrapping_add(idx as u64);
                let est = simulate_outage(&q, spec.trials, seed)?;
                mc = Some(est.value);
                mc_stderr = Some(est.stderr);
                trials_out = Some(est.trials);
                if est.rejected_trials > 0 {
                    flags.push(format!("rejected={}", est.rejected_trials));
                }
            }
        }
        Metric::Ser => {
            if spec.engines.wants_analytic() {
                if scn.fading == FadingMode::None {
                    flags.push("analytic_unavailable_no_fading".into());
                } else {
                    let victim = crate::channel::make_constellation(scn.victim);
                    let est = asep_with_model(
                        &victim,
                        &scn.net,
                        &scn.jam,
                        AsepMode::NearestNeighbor,
                        scn.ghq_n,
                        spec.jam_model,
                    )?;
                    if est.higher_order_approximation {
                        flags.push("nn_approximation_higher_order".into());
                    }
                    if spec.jam_model == JammerModel::GaussianApprox {
                        flags.push("gaussian_jammer_model".into());
                    }
                    analytic = Some(est.value);
                }
            }
            if spec.engines.wants_mc() {
                let q = SerQuery {
                    net: scn.net,
                    jam: scn.jam,
                    victim: scn.victim,
                    fading: scn.fading,
                };
                let seed = spec.seed.expect("validated").wrapping_add(idx as u64);
                let est = simulate_ser(&q, spec.trials, seed)?;
                mc = Some(est.value);
                mc_stderr = Some(est.stderr);
                trials_out = Some(est.trials);
                if est.rejected_trials > 0 {
                    flags.push(format!("rejected={}", est.rejected_trials));
                }
            }
        }
        Metric::NjStar => {
            let mode = match spec.sizing_policy {
                SizingPolicyKind::Scaled => SizingMode::ScaledRadius { n_jc: spec.n_jc },
                SizingPolicyKind::Fixed => {
                    let r = if let Some(abs) = spec.fixed_r_abs {
                        abs
                    } else {
                        let c = spec.fixed_r_over_sqrt_lambda.ok_or_else(|| {
                            Error::InvalidSpec(
                                "fixed sizing policy needs fixed_r_abs or fixed_r_over_sqrt_lambda"
                                    .into(),
                            )
                        })?;
                        c / scn.net.lambda_t.sqrt()
                    };
                    SizingMode::FixedRadius { r_j: r }
                }
            };
            let policy = SizingPolicy {
                mode,
                target_outage: spec.target_outage,
                theta: scn.theta,
            };
            let template = sizing_template(scn.jam.p_j, scn.jam.scheme);
            let res = min_jammers(&scn.net, &template, &policy, spec.n_max)?;
            analytic = Some(res.n_star as f64);
            flags.push(format!("achieved={}", format_sig(res.achieved_outage)));
            if res.saturated {
                flags.push("saturated".into());
            }
        }
        Metric::Retx => {
            let rows = retx_profile(&scn.net, &scn.jam, scn.theta, spec.coupling, &[scn.d])?;
            let row = rows[0];
            analytic = Some(match spec.retx_output {
                RetxOutput::Activity => row.p_s,
                RetxOutput::Drop => row.delta,
            });
            flags.push(format!("p_o={}", format_sig(row.p_o)));
            if !row.converged {
                flags.push("fixed_point_not_converged".into());
            }
        }
    }

    Ok(ResultRow {
        sweep: value.clone(),
        analytic,
        mc,
        mc_stderr,
        trials: trials_out,
        wall_ms: started.elapsed().as_secs_f64() * 1e3,
        flags: flags.join(";"),
    })
}

/// Runs every grid point of the spec, capturing per-row failures in the
/// flags column so a sweep survives isolated engine errors.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<RunOutcome> {
    let mut rows = Vec::with_capacity(spec.grid.len());
    let mut failed = 0;
    for (idx, value) in spec.grid.iter().enumerate() {
        match run_row(spec, idx, value) {
            Ok(row) => rows.push(row),
            Err(e) => {
                failed += 1;
                rows.push(ResultRow {
                    sweep: value.clone(),
                    analytic: None,
                    mc: None,
                    mc_stderr: None,
                    trials: None,
                    wall_ms: 0.0,
                    flags: format!("error={e}"),
                });
            }
        }
    }
    Ok(RunOutcome { rows, failed_rows: failed })
}

// ---------------------------------------------------------------------
// output

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    JsonLines,
}

/// 12 significant digits, compact form.
fn format_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let formatted = format!("{v:.11e}");
    formatted
}

fn opt_f64(v: Option<f64>) -> String {
    v.map(format_sig).unwrap_or_default()
}

/// Writes rows in the requested format. The CSV header is fixed:
/// `sweep,analytic,mc,mc_stderr,trials,wall_ms,flags`.
pub fn emit<W: Write>(rows: &[ResultRow], format: OutputFormat, out: &mut W) -> std::io::Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(out, "sweep,analytic,mc,mc_stderr,trials,wall_ms,flags")?;
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.sweep,
                    opt_f64(r.analytic),
                    opt_f64(r.mc),
                    opt_f64(r.mc_stderr),
                    r.trials.map(|t| t.to_string()).unwrap_or_default(),
                    format_sig(r.wall_ms),
                    r.flags
                )?;
            }
        }
        OutputFormat::JsonLines => {
            for r in rows {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
    }
    Ok(())
}

pub fn emit_to_path(
    rows: &[ResultRow],
    format: OutputFormat,
    path: &std::path::Path,
) -> Result<()> {
    let mut file = std::fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    emit(rows, format, &mut file).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses JSON-lines output back into rows (the round-trip inverse of
/// [`emit`] with [`OutputFormat::JsonLines`]).
pub fn parse_jsonl(text: &str) -> Result<Vec<ResultRow>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            serde_json::from_str(l)
                .map_err(|e| Error::InvalidSpec(format!("bad result row `{l}`: {e}")))
        })
        .collect()
}
