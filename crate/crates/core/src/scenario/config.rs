//! Loading and validating scenario files.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::eval;

pub const DEFAULT_MAX_ROWS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    IndoorSisoOwc,
    IndoorSisoThz,
    IndoorNetwork,
    OutdoorFso,
    OutdoorThz,
    Uav,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 6] = [
        ScenarioKind::IndoorSisoOwc,
        ScenarioKind::IndoorSisoThz,
        ScenarioKind::IndoorNetwork,
        ScenarioKind::OutdoorFso,
        ScenarioKind::OutdoorThz,
        ScenarioKind::Uav,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ScenarioKind::IndoorSisoOwc => "indoor_siso_owc",
            ScenarioKind::IndoorSisoThz => "indoor_siso_thz",
            ScenarioKind::IndoorNetwork => "indoor_network",
            ScenarioKind::OutdoorFso => "outdoor_fso",
            ScenarioKind::OutdoorThz => "outdoor_thz",
            ScenarioKind::Uav => "uav",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Snr,
    Sinr,
    Cf,
    Cp,
    Outage,
    ChannelGainDb,
}

impl Metric {
    /// Column header of the value.
    pub fn column(&self) -> &'static str {
        match self {
            Metric::Snr => "snr_db",
            Metric::Sinr => "sinr_db",
            Metric::Cf => "cf_bit_per_j",
            Metric::Cp => "cp",
            Metric::Outage => "outage",
            Metric::ChannelGainDb => "channel_gain_db",
        }
    }

    /// Monte Carlo metrics carry a standard-error column.
    pub fn has_stderr(&self) -> bool {
        matches!(self, Metric::Cp | Metric::Outage)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Metric::Snr => "snr",
            Metric::Sinr => "sinr",
            Metric::Cf => "cf",
            Metric::Cp => "cp",
            Metric::Outage => "outage",
            Metric::ChannelGainDb => "channel_gain_db",
        }
    }
}

/// One sweep dimension. A zipped axis sets several paths together, so
/// `values[i][j]` is the value of `paths[j]` at point `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub paths: Vec<String>,
    pub values: Vec<Vec<Value>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonteCarlo {
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Draws per point: channel samples outdoors, user drops for coverage.
    #[serde(default)]
    pub samples: Option<usize>,
}

fn default_seed() -> u64 {
    1
}

impl Default for MonteCarlo {
    fn default() -> Self {
        Self {
            seed: default_seed(),
            samples: None,
        }
    }
}

/// A validated scenario: defaults merged into `params`, sweep paths
/// resolved, every sweep value checked against the models.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    pub params: Value,
    pub sweep: Vec<SweepAxis>,
    pub metrics: Vec<Metric>,
    pub monte_carlo: MonteCarlo,
    pub output_path: Option<PathBuf>,
    pub max_rows: usize,
}

impl ScenarioConfig {
    /// Number of sweep points.
    pub fn row_count(&self) -> usize {
        self.sweep.iter().map(|a| a.values.len()).product()
    }

    /// Monte Carlo draws per point, falling back to the scenario default.
    pub fn samples(&self) -> usize {
        self.monte_carlo.samples.unwrap_or(match self.kind {
            ScenarioKind::IndoorNetwork => 200,
            _ => 100_000,
        })
    }
}

/// Every problem found in a scenario file.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigErrors(pub Vec<String>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigErrors {}

const TOP_LEVEL: [&str; 7] = [
    "scenario_kind",
    "params",
    "sweep",
    "metrics",
    "monte_carlo",
    "output_path",
    "max_rows",
];

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

/// Overlay `user` on `default`, reporting unknown keys and type mismatches.
fn merge(default: &Value, user: &Value, path: &str, errors: &mut Vec<String>) -> Value {
    match (default, user) {
        (Value::Object(d), Value::Object(u)) => {
            let mut out = Map::new();
            for key in u.keys() {
                if !d.contains_key(key) {
                    errors.push(format!("{path}.{key}: unknown field"));
                }
            }
            for (key, dv) in d {
                let child = format!("{path}.{key}");
                let v = match u.get(key) {
                    Some(uv) => merge(dv, uv, &child, errors),
                    None => dv.clone(),
                };
                out.insert(key.clone(), v);
            }
            Value::Object(out)
        }
        // Optional fields default to null and accept anything.
        (Value::Null, _) => user.clone(),
        (Value::Number(_), Value::Number(_))
        | (Value::String(_), Value::String(_))
        | (Value::Bool(_), Value::Bool(_))
        | (Value::Array(_), Value::Array(_)) => user.clone(),
        _ => {
            errors.push(format!(
                "{path}: expected {}, got {}",
                type_name(default),
                type_name(user)
            ));
            default.clone()
        }
    }
}

fn lookup<'a>(root: &'a Value, path: &str) -> Option<&'a Value> {
    path.split('.').try_fold(root, |node, seg| match node {
        Value::Object(m) => m.get(seg),
        Value::Array(a) => seg.parse::<usize>().ok().and_then(|i| a.get(i)),
        _ => None,
    })
}

/// Replace the value at a dotted path; the path must already exist.
pub fn set_path(root: &mut Value, path: &str, value: Value) -> bool {
    let mut node = root;
    for seg in path.split('.') {
        node = match node {
            Value::Object(m) => match m.get_mut(seg) {
                Some(v) => v,
                None => return false,
            },
            Value::Array(a) => match seg.parse::<usize>().ok().and_then(|i| a.get_mut(i)) {
                Some(v) => v,
                None => return false,
            },
            _ => return false,
        };
    }
    *node = value;
    true
}

/// Default parameter tree for a scenario kind.
pub fn defaults(kind: ScenarioKind) -> Value {
    eval::defaults(kind)
}

fn parse_axis(i: usize, raw: &Value, errors: &mut Vec<String>) -> Option<SweepAxis> {
    let at = format!("sweep[{i}]");
    let Value::Object(m) = raw else {
        errors.push(format!("{at}: expected object, got {}", type_name(raw)));
        return None;
    };
    for key in m.keys() {
        if key != "parameter_path" && key != "values" {
            errors.push(format!("{at}.{key}: unknown field"));
        }
    }
    let paths: Vec<String> = match m.get("parameter_path") {
        Some(Value::String(s)) => vec![s.clone()],
        Some(Value::Array(a)) if !a.is_empty() && a.iter().all(Value::is_string) => a
            .iter()
            .map(|v| v.as_str().unwrap_or_default().to_string())
            .collect(),
        Some(v) => {
            errors.push(format!(
                "{at}.parameter_path: expected a string or a non-empty list of strings, got {}",
                type_name(v)
            ));
            return None;
        }
        None => {
            errors.push(format!("{at}.parameter_path: missing"));
            return None;
        }
    };
    let values = match m.get("values") {
        Some(Value::Array(a)) if !a.is_empty() => a,
        Some(Value::Array(_)) => {
            errors.push(format!("{at}.values: must not be empty"));
            return None;
        }
        Some(v) => {
            errors.push(format!("{at}.values: expected array, got {}", type_name(v)));
            return None;
        }
        None => {
            errors.push(format!("{at}.values: missing"));
            return None;
        }
    };
    let mut points = Vec::with_capacity(values.len());
    for (j, v) in values.iter().enumerate() {
        if paths.len() == 1 {
            points.push(vec![v.clone()]);
        } else {
            match v {
                Value::Array(t) if t.len() == paths.len() => points.push(t.clone()),
                _ => {
                    errors.push(format!(
                        "{at}.values[{j}]: zipped sweep needs an array of {} values",
                        paths.len()
                    ));
                    return None;
                }
            }
        }
    }
    Some(SweepAxis {
        paths,
        values: points,
    })
}

/// Parse, merge defaults and validate a scenario. All problems are
/// collected and returned together.
pub fn load_scenario(text: &str) -> Result<ScenarioConfig, ConfigErrors> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| ConfigErrors(vec![format!("parse error: {e}")]))?;
    let Value::Object(top) = &root else {
        return Err(ConfigErrors(vec!["top level must be an object".into()]));
    };
    let mut errors = Vec::new();
    for key in top.keys() {
        if !TOP_LEVEL.contains(&key.as_str()) {
            errors.push(format!("{key}: unknown field"));
        }
    }

    let kind = match top.get("scenario_kind") {
        Some(v) => match ScenarioKind::deserialize(v) {
            Ok(k) => Some(k),
            Err(e) => {
                errors.push(format!("scenario_kind: {e}"));
                None
            }
        },
        None => {
            errors.push("scenario_kind: missing".into());
            None
        }
    };

    let metrics: Vec<Metric> = match top.get("metrics") {
        Some(Value::Array(a)) if !a.is_empty() => {
            let mut out = Vec::new();
            for (i, m) in a.iter().enumerate() {
                match Metric::deserialize(m) {
                    Ok(m) if out.contains(&m) => {
                        errors.push(format!("metrics[{i}]: duplicate metric {}", m.name()))
                    }
                    Ok(m) => out.push(m),
                    Err(e) => errors.push(format!("metrics[{i}]: {e}")),
                }
            }
            out
        }
        Some(_) => {
            errors.push("metrics: expected a non-empty list".into());
            Vec::new()
        }
        None => {
            errors.push("metrics: missing".into());
            Vec::new()
        }
    };

    let monte_carlo = match top.get("monte_carlo") {
        Some(v) => MonteCarlo::deserialize(v).unwrap_or_else(|e| {
            errors.push(format!("monte_carlo: {e}"));
            MonteCarlo::default()
        }),
        None => MonteCarlo::default(),
    };
    if monte_carlo.samples == Some(0) {
        errors.push("monte_carlo.samples: must be >= 1".into());
    }

    let output_path = match top.get("output_path") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(PathBuf::from(s)),
        Some(v) => {
            errors.push(format!(
                "output_path: expected string, got {}",
                type_name(v)
            ));
            None
        }
    };

    let max_rows = match top.get("max_rows") {
        None => DEFAULT_MAX_ROWS,
        Some(v) => match v.as_u64() {
            Some(n) if n > 0 => n as usize,
            _ => {
                errors.push("max_rows: expected a positive integer".into());
                DEFAULT_MAX_ROWS
            }
        },
    };

    let sweep: Vec<SweepAxis> = match top.get("sweep") {
        None => Vec::new(),
        Some(Value::Array(a)) => a
            .iter()
            .enumerate()
            .filter_map(|(i, v)| parse_axis(i, v, &mut errors))
            .collect(),
        Some(v) => {
            errors.push(format!("sweep: expected array, got {}", type_name(v)));
            Vec::new()
        }
    };

    let Some(kind) = kind else {
        return Err(ConfigErrors(errors));
    };

    for m in &metrics {
        if !eval::supports(kind, *m) {
            errors.push(format!(
                "metrics: {} is not available for {}",
                m.name(),
                kind.name()
            ));
        }
    }

    let user_params = top
        .get("params")
        .cloned()
        .unwrap_or(Value::Object(Map::new()));
    if !user_params.is_object() {
        errors.push(format!(
            "params: expected object, got {}",
            type_name(&user_params)
        ));
        return Err(ConfigErrors(errors));
    }
    let params = merge(&defaults(kind), &user_params, "params", &mut errors);

    let mut seen = BTreeSet::new();
    for (i, axis) in sweep.iter().enumerate() {
        for p in &axis.paths {
            match lookup(&params, p) {
                None => errors.push(format!("sweep[{i}]: unresolvable parameter path \"{p}\"")),
                Some(Value::Object(_)) => errors.push(format!(
                    "sweep[{i}]: parameter path \"{p}\" names a group, not a value"
                )),
                Some(_) => {}
            }
            if !seen.insert(p.clone()) {
                errors.push(format!("sweep[{i}]: parameter path \"{p}\" is swept twice"));
            }
        }
    }

    let rows = sweep
        .iter()
        .try_fold(1usize, |acc, a| acc.checked_mul(a.values.len()))
        .unwrap_or(usize::MAX);
    if rows > max_rows {
        errors.push(format!(
            "sweep has {rows} points, above the cap of {max_rows}"
        ));
    }

    if !errors.is_empty() {
        return Err(ConfigErrors(errors));
    }

    // Physical checks: the base point, then each sweep value on its own.
    if let Err(e) = eval::check(kind, &params) {
        errors.push(format!("params: {e}"));
    }
    for (i, axis) in sweep.iter().enumerate() {
        for (j, tuple) in axis.values.iter().enumerate() {
            let mut point = params.clone();
            for (p, v) in axis.paths.iter().zip(tuple) {
                set_path(&mut point, p, v.clone());
            }
            if let Err(e) = eval::check(kind, &point) {
                errors.push(format!("sweep[{i}].values[{j}]: {e}"));
            }
        }
    }
    if !errors.is_empty() {
        return Err(ConfigErrors(errors));
    }

    Ok(ScenarioConfig {
        kind,
        params,
        sweep,
        metrics,
        monte_carlo,
        output_path,
        max_rows,
    })
}
