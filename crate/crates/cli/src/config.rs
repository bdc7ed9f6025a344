//! Run configuration. Values come from three layers, highest first:
//! command-line flags, a `key = value` config file, the environment
//! (`QDEFORM_TOL` only).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use qdeform_core::dsl::{MaskPolicy, DEFAULT_TOLERANCE};
use qdeform_core::exotic::{
    nu_grid, FChoice, MomentumChoice, Preset, Sign, DEFORMED_CLAMBDA_SHIPPED_LAMBDA,
    GDOA_SHIPPED_LAMBDA,
};

use crate::CliError;

pub const TOL_ENV: &str = "QDEFORM_TOL";

/// Keys accepted in a config file; flags use the same names with `-`.
pub const KEYS: &[&str] = &[
    "preset",
    "dsl",
    "dim",
    "lambda",
    "nu",
    "sign",
    "mu_omega",
    "alphas",
    "f_choice",
    "momentum",
    "tol",
    "mask",
    "measure_only",
    "out",
    "format",
];

pub type Layer = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq)]
pub enum SourceSpec {
    Preset(Preset),
    Dsl(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(CliError::config(format!(
                "unknown format `{other}` (json, csv, text)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: SourceSpec,
    pub dim: usize,
    pub lambda: usize,
    /// One point for `check`, the expanded grid for `sweep`.
    pub nus: Vec<f64>,
    pub sign: Sign,
    pub mu_omega: f64,
    pub alphas: Option<Vec<f64>>,
    pub f_choice: FChoice,
    pub momentum: MomentumChoice,
    pub tolerance: f64,
    pub mask: MaskPolicy,
    pub measure_only: bool,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

/// Reads a flat `key = value` file. Blank lines and `#` comments are
/// skipped; unknown keys are an error.
pub fn parse_config_text(text: &str, origin: &str) -> Result<Layer, CliError> {
    let mut out = Layer::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::config(format!(
                "{origin}:{}: expected `key = value`",
                k + 1
            )));
        };
        let key = key.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::config(format!(
                "{origin}:{}: unknown key `{key}`",
                k + 1
            )));
        }
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

pub fn load_config_file(path: &Path) -> Result<Layer, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config_text(&text, &path.display().to_string())
}

/// Merges layers; later layers win.
pub fn merge(layers: &[Layer]) -> Layer {
    let mut out = Layer::new();
    for l in layers {
        out.extend(l.iter().map(|(k, v)| (k.clone(), v.clone())));
    }
    out
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.parse()
        .map_err(|_| CliError::config(format!("{key}: cannot parse `{v}`")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool, CliError> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(CliError::config(format!(
            "{key}: expected true or false, got `{v}`"
        ))),
    }
}

/// `start:stop:step` or a single value.
pub fn parse_grid(v: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = v.split(':').collect();
    match parts.as_slice() {
        [one] => Ok(vec![parse_num("nu", one)?]),
        [a, b, s] => Ok(nu_grid(
            parse_num("nu", a)?,
            parse_num("nu", b)?,
            parse_num("nu", s)?,
        )?),
        _ => Err(CliError::config(format!(
            "nu: expected a value or start:stop:step, got `{v}`"
        ))),
    }
}

fn parse_mask(v: &str) -> Result<MaskPolicy, CliError> {
    if v == "auto" {
        Ok(MaskPolicy::Auto)
    } else {
        Ok(MaskPolicy::Fixed(parse_num("mask", v)?))
    }
}

impl RunConfig {
    /// Builds a config from merged layers. `sweep` allows a ν grid.
    pub fn from_layer(layer: &Layer, sweep: bool) -> Result<Self, CliError> {
        let get = |k: &str| layer.get(k).map(String::as_str);
        let source = match (get("preset"), get("dsl")) {
            (Some(p), None) => SourceSpec::Preset(Preset::from_name(p)?),
            (None, Some(d)) => SourceSpec::Dsl(PathBuf::from(d)),
            (Some(_), Some(_)) => {
                return Err(CliError::config(
                    "give either a preset or a dsl file, not both",
                ))
            }
            (None, None) => return Err(CliError::config("a preset or a dsl file is required")),
        };
        let default_lambda = match source {
            SourceSpec::Preset(Preset::Gdoa) => GDOA_SHIPPED_LAMBDA,
            SourceSpec::Preset(Preset::DeformedClambda) => DEFORMED_CLAMBDA_SHIPPED_LAMBDA,
            _ => 2,
        };
        let nus = match get("nu") {
            None => vec![0.0],
            Some(v) if sweep => parse_grid(v)?,
            Some(v) => vec![parse_num("nu", v)?],
        };
        if let Some(bad) = nus.iter().find(|n| !n.is_finite()) {
            return Err(CliError::config(format!("nu must be finite, got {bad}")));
        }
        let alphas = get("alphas")
            .map(|v| {
                v.split(',')
                    .map(|a| parse_num::<f64>("alphas", a.trim()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        let tolerance: f64 = match get("tol") {
            Some(v) => parse_num("tol", v)?,
            None => DEFAULT_TOLERANCE,
        };
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(CliError::config(format!(
                "tol must be positive and finite, got {tolerance}"
            )));
        }
        let mu_omega: f64 = match get("mu_omega") {
            Some(v) => parse_num("mu_omega", v)?,
            None => 1.0,
        };
        if !(mu_omega.is_finite() && mu_omega > 0.0) {
            return Err(CliError::config(format!(
                "mu_omega must be positive, got {mu_omega}"
            )));
        }
        Ok(RunConfig {
            source,
            dim: get("dim")
                .map(|v| parse_num("dim", v))
                .transpose()?
                .unwrap_or(16),
            lambda: get("lambda")
                .map(|v| parse_num("lambda", v))
                .transpose()?
                .unwrap_or(default_lambda),
            nus,
            sign: get("sign").map(str::parse).transpose()?.unwrap_or_default(),
            mu_omega,
            alphas,
            f_choice: get("f_choice")
                .map(str::parse)
                .transpose()?
                .unwrap_or_default(),
            momentum: get("momentum")
                .map(str::parse)
                .transpose()?
                .unwrap_or_default(),
            tolerance,
            mask: get("mask")
                .map(parse_mask)
                .transpose()?
                .unwrap_or(MaskPolicy::Auto),
            measure_only: get("measure_only")
                .map(|v| parse_bool("measure_only", v))
                .transpose()?
                .unwrap_or(false),
            out: get("out").map(PathBuf::from),
            format: get("format").map(str::parse).transpose()?,
        })
    }

    /// Format from the flag, else the output extension, else `fallback`.
    pub fn output_format(&self, fallback: Format) -> Format {
        if let Some(f) = self.format {
            return f;
        }
        match self
            .out
            .as_ref()
            .and_then(|p| p.extension())
            .and_then(|e| e.to_str())
        {
            Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            Some("txt") => Format::Text,
            _ => fallback,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layer(pairs: &[(&str, &str)]) -> Layer {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    #[test]
    fn flags_beat_file_beat_env() {
        let env = layer(&[("tol", "1e-3")]);
        let file = parse_config_text("preset = boson\ntol = 1e-5 # tighter\n", "f").unwrap();
        let flags = layer(&[("tol", "1e-7")]);
        let c = RunConfig::from_layer(&merge(&[env.clone(), file.clone(), flags]), false).unwrap();
        assert_eq!(c.tolerance, 1e-7);
        let c = RunConfig::from_layer(&merge(&[env.clone(), file]), false).unwrap();
        assert_eq!(c.tolerance, 1e-5);
        let c =
            RunConfig::from_layer(&merge(&[env, layer(&[("preset", "boson")])]), false).unwrap();
        assert_eq!(c.tolerance, 1e-3);
    }

    #[test]
    fn unknown_key_is_rejected() {
        assert!(parse_config_text("colour = blue", "f").is_err());
        assert!(parse_config_text("just text", "f").is_err());
    }

    #[test]
    fn source_is_exclusive() {
        assert!(
            RunConfig::from_layer(&layer(&[("preset", "boson"), ("dsl", "x.qdl")]), false).is_err()
        );
        assert!(RunConfig::from_layer(&layer(&[]), false).is_err());
        assert!(RunConfig::from_layer(&layer(&[("preset", "nope")]), false).is_err());
    }

    #[test]
    fn grid_forms() {
        assert_eq!(parse_grid("0:0:0.1").unwrap(), vec![0.0]);
        assert_eq!(parse_grid("0:1:0.05").unwrap().len(), 21);
        assert_eq!(parse_grid("0.3").unwrap(), vec![0.3]);
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("0:1").is_err());
    }

    #[test]
    fn shipped_lambda_is_the_default_for_graded_presets() {
        let c = RunConfig::from_layer(&layer(&[("preset", "gdoa")]), false).unwrap();
        assert_eq!(c.lambda, 3);
        let c = RunConfig::from_layer(&layer(&[("preset", "deformed_clambda")]), false).unwrap();
        assert_eq!(c.lambda, 4);
    }

    #[test]
    fn negative_alphas_parse() {
        let c = RunConfig::from_layer(
            &layer(&[("preset", "calogero_vasiliev"), ("alphas", "-0.9, 0.9")]),
            false,
        )
        .unwrap();
        assert_eq!(c.alphas, Some(vec![-0.9, 0.9]));
    }

    #[test]
    fn format_from_extension() {
        let mut c =
            RunConfig::from_layer(&layer(&[("preset", "boson"), ("out", "r.csv")]), false).unwrap();
        assert_eq!(c.output_format(Format::Json), Format::Csv);
        c.format = Some(Format::Text);
        assert_eq!(c.output_format(Format::Json), Format::Text);
    }
}
