//! Run configuration: flags take precedence over the TOML file, which takes
//! precedence over the built-in preset `mu = 1, d1 = 1, d2 = 3`.

use std::path::PathBuf;

use hadamard::MaterialParams;
use serde::Deserialize;

use crate::{AppError, Cli, Format};

const PRESET_MU: f64 = 1.0;
const PRESET_D1: f64 = 1.0;
const PRESET_D2: f64 = 3.0;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    mu: Option<f64>,
    d1: Option<f64>,
    d2: Option<f64>,
    samples: Option<usize>,
    out: Option<PathBuf>,
    format: Option<String>,
    mu_sweep: Option<String>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub material: MaterialParams,
    pub samples: Option<usize>,
    pub out: PathBuf,
    pub format: Format,
    pub mu_sweep: Option<Vec<f64>>,
}

impl RunConfig {
    pub fn resolve(cli: &Cli) -> Result<Self, AppError> {
        let file = match &cli.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    AppError::Config(format!("cannot read {}: {e}", path.display()))
                })?;
                toml::from_str::<FileConfig>(&text)
                    .map_err(|e| AppError::Config(format!("bad config file: {e}")))?
            }
            None => FileConfig::default(),
        };

        let mu = cli.mu.or(file.mu).unwrap_or(PRESET_MU);
        let d1 = cli.d1.or(file.d1).unwrap_or(PRESET_D1);
        let d2 = cli.d2.or(file.d2).unwrap_or(PRESET_D2);
        let material = MaterialParams::new(mu, d1, d2)
            .map_err(|e| AppError::Config(e.to_string()))?;

        let samples = cli.samples.or(file.samples);
        if let Some(n) = samples {
            if n < 2 {
                return Err(AppError::Config(format!("samples = {n} must be at least 2")));
            }
        }

        let format = match cli.format {
            Some(f) => f,
            None => match file.format.as_deref() {
                Some("csv") | None => Format::Csv,
                Some("json") => Format::Json,
                Some(other) => {
                    return Err(AppError::Config(format!(
                        "format must be csv or json, got {other}"
                    )))
                }
            },
        };

        let sweep_spec = cli.mu_sweep.clone().or(file.mu_sweep);
        let mu_sweep = sweep_spec.map(|s| parse_sweep(&s)).transpose()?;

        Ok(Self {
            material,
            samples,
            out: cli.out.clone().or(file.out).unwrap_or_else(|| PathBuf::from("out")),
            format,
            mu_sweep,
        })
    }
}

fn parse_sweep(spec: &str) -> Result<Vec<f64>, AppError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = |why: &str| AppError::Config(format!("bad mu sweep `{spec}`: {why}"));
    if parts.len() != 3 {
        return Err(bad("expected start:stop:step"));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad("not a number"))?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if nums.iter().any(|v| !v.is_finite()) || step <= 0.0 || stop < start || start < 0.0 {
        return Err(bad("need 0 <= start <= stop and step > 0"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| start + step * k as f64).collect())
}
