//! Game configuration files.
//!
//! ```json
//! {
//!   "m": ["-1", "1", "1"],
//!   "n": ["2", "1", "-1"],
//!   "sunk_cost": ["1", "1"],
//!   "grid_resolution": 101
//! }
//! ```
//!
//! Numbers may be JSON integers or strings holding an integer, a decimal or a
//! fraction `p/q`; they are read exactly. `sunk_cost` defaults to `(1, 1)` and
//! `grid_resolution` to 101.

use coopetitive_core::coopetition::CoopetitiveGame;
use coopetitive_core::geom2d::{int, parse_rational, to_exact, Rational, Rational2};
use num_traits::Signed;
use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

pub const DEFAULT_RESOLUTION: usize = 101;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("config field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameConfig {
    pub game: CoopetitiveGame,
    pub sunk_cost: Rational2,
    pub grid_resolution: usize,
}

impl GameConfig {
    pub fn new(game: CoopetitiveGame) -> Self {
        Self {
            game,
            sunk_cost: Rational2::from_ints(1, 1),
            grid_resolution: DEFAULT_RESOLUTION,
        }
    }

    /// `m = (-1, 1, 1)`, `n = (2, 1, -1)`.
    pub fn worked_example() -> Self {
        Self::new(CoopetitiveGame::from_ints([-1, 1, 1], [2, 1, -1]))
    }

    pub fn with_resolution(mut self, resolution: usize) -> Result<Self, ConfigError> {
        check_resolution(resolution as u64)?;
        self.grid_resolution = resolution;
        Ok(self)
    }

    /// Canonical JSON text of this config (exact strings).
    pub fn to_json(&self) -> String {
        let strings = |v: &[Rational]| v.iter().map(to_exact).collect::<Vec<_>>();
        let value = serde_json::json!({
            "m": strings(&self.game.m),
            "n": strings(&self.game.n),
            "sunk_cost": strings(&[self.sunk_cost.x.clone(), self.sunk_cost.y.clone()]),
            "grid_resolution": self.grid_resolution,
        });
        serde_json::to_string_pretty(&value).expect("json value") + "\n"
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    m: Vec<Value>,
    n: Vec<Value>,
    #[serde(default)]
    sunk_cost: Option<Vec<Value>>,
    #[serde(default)]
    grid_resolution: Option<u64>,
}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Field { field: field.into(), message: message.into() }
}

fn rational_field(field: &str, value: &Value) -> Result<Rational, ConfigError> {
    match value {
        Value::String(text) => parse_rational(text).map_err(|e| field_error(field, e.to_string())),
        Value::Number(number) => {
            if let Some(i) = number.as_i64() {
                Ok(int(i))
            } else {
                // shortest round-trip text of the float, read as an exact decimal
                parse_rational(&number.to_string()).map_err(|e| field_error(field, e.to_string()))
            }
        }
        other => Err(field_error(field, format!("expected a number or string, found {other}"))),
    }
}

fn vector_field<const N: usize>(field: &str, values: &[Value]) -> Result<[Rational; N], ConfigError> {
    if values.len() != N {
        return Err(field_error(field, format!("expected {N} components, found {}", values.len())));
    }
    let parsed = values
        .iter()
        .enumerate()
        .map(|(i, v)| rational_field(&format!("{field}[{i}]"), v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(parsed.try_into().expect("length checked"))
}

fn check_resolution(resolution: u64) -> Result<(), ConfigError> {
    if resolution < 2 {
        return Err(field_error("grid_resolution", format!("must be at least 2, got {resolution}")));
    }
    Ok(())
}

/// Parses a configuration document.
pub fn parse_config(text: &str) -> Result<GameConfig, ConfigError> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| ConfigError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let m = vector_field::<3>("m", &raw.m)?;
    let n = vector_field::<3>("n", &raw.n)?;
    let sunk_cost = match raw.sunk_cost {
        Some(values) => {
            let [x, y] = vector_field::<2>("sunk_cost", &values)?;
            for (i, v) in [&x, &y].into_iter().enumerate() {
                if v.is_negative() {
                    return Err(field_error(format!("sunk_cost[{i}]"), "must be nonnegative"));
                }
            }
            Rational2::new(x, y)
        }
        None => Rational2::from_ints(1, 1),
    };
    let grid_resolution = raw.grid_resolution.unwrap_or(DEFAULT_RESOLUTION as u64);
    check_resolution(grid_resolution)?;
    Ok(GameConfig {
        game: CoopetitiveGame::new(m, n),
        sunk_cost,
        grid_resolution: grid_resolution as usize,
    })
}

pub fn load_config(path: &std::path::Path) -> Result<GameConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}
