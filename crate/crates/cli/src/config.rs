//! Run configuration: defaults, a flat `key = value` file, then flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use purespin::constants::Domain;
use purespin::fock::{ConstantsVintage, MassModel};
use purespin::tolerance::Tolerances;

use crate::CliError;

/// Every key accepted in a config file or through `--override`.
pub const KEYS: &[&str] = &[
    "n",
    "nmax",
    "trials",
    "seed",
    "tol",
    "grid",
    "nprobe",
    "quad_points",
    "vintage",
    "mass",
    "mc_samples",
    "out",
    "tol.identity",
    "tol.rank",
    "tol.null",
    "tol.non_null",
    "tol.residual",
    "tol.reality",
    "V_D5",
    "V_S4",
    "V_Q5",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub n: Option<usize>,
    pub nmax: usize,
    pub trials: Option<usize>,
    pub seed: u64,
    /// Primary tolerance of the selected suite, when set.
    pub tol: Option<f64>,
    pub tolerances: Tolerances,
    /// Nystrom grid size per angular direction.
    pub grid: usize,
    pub nprobe: usize,
    pub quad_points: usize,
    pub vintage: ConstantsVintage,
    pub mass: MassModel,
    pub mc_samples: u64,
    pub volume_overrides: BTreeMap<String, f64>,
    /// Kept out of reports so they do not depend on where they are written.
    #[serde(skip)]
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: None,
            nmax: 10,
            trials: None,
            seed: 1,
            tol: None,
            tolerances: Tolerances::default(),
            grid: 24,
            nprobe: 3,
            quad_points: 64,
            vintage: ConstantsVintage::Codata2018,
            mass: MassModel::Reduced,
            mc_samples: 1_000_000,
            volume_overrides: BTreeMap::new(),
            out: PathBuf::from("reports"),
        }
    }
}

/// Ordered `key -> value` assignments from one source.
pub type Layer = BTreeMap<String, String>;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn canonical_key(key: &str) -> Result<String, CliError> {
    let key = key.trim();
    if let Some(d) = Domain::parse(key) {
        return Ok(format!("V_{}", d.as_str()));
    }
    let normalized = key.replace('-', "_");
    KEYS.iter()
        .find(|k| **k == normalized || (**k == "grid" && normalized == "nystrom_grid"))
        .map(|k| k.to_string())
        .ok_or_else(|| bad(format!("unknown configuration key '{key}'")))
}

/// Parses a flat `key = value` file. `#` starts a comment; duplicates and
/// unknown keys are rejected.
pub fn parse_file_text(text: &str, origin: &str) -> Result<Layer, CliError> {
    let mut layer = Layer::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| bad(format!("{origin}:{}: expected 'key = value'", lineno + 1)))?;
        let key = canonical_key(k).map_err(|e| bad(format!("{origin}:{}: {e}", lineno + 1)))?;
        if layer.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err(bad(format!("{origin}:{}: duplicate key '{key}'", lineno + 1)));
        }
    }
    Ok(layer)
}

pub fn parse_file(path: &Path) -> Result<Layer, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| bad(format!("cannot read config file {}: {e}", path.display())))?;
    parse_file_text(&text, &path.display().to_string())
}

/// Parses `KEY=VAL` assignments given on the command line.
pub fn parse_assignments(items: &[String]) -> Result<Layer, CliError> {
    let mut layer = Layer::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| bad(format!("override '{item}' is not KEY=VAL")))?;
        layer.insert(canonical_key(k)?, v.trim().to_string());
    }
    Ok(layer)
}

fn positive_int(key: &str, v: &str) -> Result<usize, CliError> {
    match v.parse::<usize>() {
        Ok(x) if x > 0 => Ok(x),
        _ => Err(bad(format!("{key} must be a positive integer, got '{v}'"))),
    }
}

fn positive_u64(key: &str, v: &str) -> Result<u64, CliError> {
    match v.parse::<u64>() {
        Ok(x) if x > 0 => Ok(x),
        _ => Err(bad(format!("{key} must be a positive integer, got '{v}'"))),
    }
}

fn positive_real(key: &str, v: &str) -> Result<f64, CliError> {
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(bad(format!("{key} must be a positive number, got '{v}'"))),
    }
}

/// Applies layers in order, later layers winning.
pub fn resolve(layers: &[Layer]) -> Result<RunConfig, CliError> {
    let mut merged = Layer::new();
    for layer in layers {
        for (k, v) in layer {
            merged.insert(k.clone(), v.clone());
        }
    }
    let mut cfg = RunConfig::default();
    for (key, v) in &merged {
        match key.as_str() {
            "n" => cfg.n = Some(positive_int(key, v)?),
            "nmax" => cfg.nmax = positive_int(key, v)?,
            "trials" => cfg.trials = Some(positive_int(key, v)?),
            "seed" => cfg.seed = positive_u64(key, v)?,
            "tol" => cfg.tol = Some(positive_real(key, v)?),
            "grid" => cfg.grid = positive_int(key, v)?,
            "nprobe" => cfg.nprobe = positive_int(key, v)?,
            "quad_points" => cfg.quad_points = positive_int(key, v)?,
            "mc_samples" => cfg.mc_samples = positive_u64(key, v)?,
            "vintage" => {
                cfg.vintage = ConstantsVintage::parse(v).ok_or_else(|| bad(format!("unknown constants vintage '{v}'")))?
            }
            "mass" => cfg.mass = MassModel::parse(v).ok_or_else(|| bad(format!("unknown mass model '{v}'")))?,
            "out" => cfg.out = PathBuf::from(v),
            "tol.identity" => cfg.tolerances.identity = positive_real(key, v)?,
            "tol.rank" => cfg.tolerances.rank = positive_real(key, v)?,
            "tol.null" => cfg.tolerances.null = positive_real(key, v)?,
            "tol.non_null" => cfg.tolerances.non_null = positive_real(key, v)?,
            "tol.residual" => cfg.tolerances.residual = positive_real(key, v)?,
            "tol.reality" => cfg.tolerances.reality = positive_real(key, v)?,
            k if k.starts_with("V_") => {
                cfg.volume_overrides.insert(k.to_string(), positive_real(key, v)?);
            }
            other => return Err(bad(format!("unknown configuration key '{other}'"))),
        }
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layer(pairs: &[(&str, &str)]) -> Layer {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn precedence_is_flags_over_file_over_defaults() {
        let file = parse_file_text("n = 3\nseed = 5 # comment\n\ntrials=10\n", "cfg").unwrap();
        let flags = layer(&[("seed", "9")]);
        let cfg = resolve(&[file, flags]).unwrap();
        assert_eq!((cfg.n, cfg.seed, cfg.trials, cfg.nmax), (Some(3), 9, Some(10), 10));
    }

    #[test]
    fn unknown_and_duplicate_keys_are_rejected() {
        assert!(parse_file_text("colour = red", "cfg").is_err());
        assert!(parse_file_text("n = 1\nn = 2", "cfg").is_err());
        assert!(parse_file_text("just words", "cfg").is_err());
    }

    #[test]
    fn numeric_fields_must_be_positive() {
        for (k, v) in [("n", "0"), ("trials", "-1"), ("tol", "0"), ("tol.rank", "nan"), ("seed", "x")] {
            assert!(resolve(&[layer(&[(k, v)])]).is_err(), "{k}={v}");
        }
    }

    #[test]
    fn volume_keys_are_normalized() {
        let l = parse_assignments(&["v_q5=1.0".into(), "nystrom-grid=12".into()]).unwrap();
        let cfg = resolve(&[l]).unwrap();
        assert_eq!(cfg.volume_overrides.get("V_Q5"), Some(&1.0));
        assert_eq!(cfg.grid, 12);
    }
}
