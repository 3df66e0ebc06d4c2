//! Run configuration: a JSON document naming the rank, the adjoined roots
//! and which suites to run.

use std::fmt;

use gimso_core::rootsys::{AffinizationSpec, Root};
use serde_json::{json, Map, Value};

/// The verification suites, in the order they always run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Matrix,
    Brackets,
    Coords,
    Hom,
    Grading,
    Witness,
    Selftest,
}

impl Suite {
    pub const ORDER: [Suite; 7] =
        [Suite::Matrix, Suite::Brackets, Suite::Coords, Suite::Hom, Suite::Grading, Suite::Witness, Suite::Selftest];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Matrix => "matrix",
            Suite::Brackets => "brackets",
            Suite::Coords => "coords",
            Suite::Hom => "hom",
            Suite::Grading => "grading",
            Suite::Witness => "witness",
            Suite::Selftest => "selftest",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ORDER.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Text => "text",
        }
    }

    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "json" => Some(Format::Json),
            "text" => Some(Format::Text),
            _ => None,
        }
    }
}

pub const DEFAULT_TRIALS: usize = 100;

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub spec: AffinizationSpec,
    /// Selected suites, deduplicated and in run order.
    pub suites: Vec<Suite>,
    pub trials: usize,
    pub seed: u64,
    /// File path, or `None` for standard output.
    pub output: Option<String>,
    pub format: Format,
}

/// A rejected configuration. `code` is stable and machine-readable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub code: &'static str,
    pub field: String,
    pub message: String,
}

impl ConfigError {
    fn new(code: &'static str, field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError { code, field: field.into(), message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at `{}`: {}", self.code, self.field, self.message)
    }
}

impl std::error::Error for ConfigError {}

const KEYS: [&str; 7] = ["rank", "adjoined", "suites", "trials", "seed", "output", "format"];

/// Parse and validate a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| ConfigError::new("config.malformed", "$", e.to_string()))?;
    let obj = doc.as_object().ok_or_else(|| ConfigError::new("config.malformed", "$", "expected a JSON object"))?;
    if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(ConfigError::new("config.malformed", k.as_str(), "unknown field"));
    }
    let rank = match obj.get("rank") {
        None => return Err(ConfigError::new("config.malformed", "rank", "missing required field")),
        Some(v) => {
            v.as_u64().ok_or_else(|| ConfigError::new("config.rank", "rank", "expected a non-negative integer"))?
        }
    };
    if rank < 3 {
        return Err(ConfigError::new("config.rank", "rank", format!("rank {rank} is not supported; need at least 3")));
    }
    let rank = rank as usize;
    let adjoined = parse_adjoined(obj, rank)?;
    let spec = AffinizationSpec::new(rank, adjoined)
        .map_err(|e| ConfigError::new("config.invalid_root", "adjoined", e.to_string()))?;
    let suites = match obj.get("suites") {
        None => Suite::ORDER.to_vec(),
        Some(v) => {
            let arr = v
                .as_array()
                .ok_or_else(|| ConfigError::new("config.malformed", "suites", "expected an array of suite names"))?;
            let mut out = Vec::new();
            for (i, s) in arr.iter().enumerate() {
                let field = format!("suites[{i}]");
                let name = s
                    .as_str()
                    .ok_or_else(|| ConfigError::new("config.malformed", field.as_str(), "expected a string"))?;
                let suite = Suite::parse(name).ok_or_else(|| {
                    ConfigError::new("config.suite", field.as_str(), format!("unknown suite `{name}`"))
                })?;
                out.push(suite);
            }
            out.sort();
            out.dedup();
            out
        }
    };
    let trials = match obj.get("trials") {
        None => DEFAULT_TRIALS,
        Some(v) => match v.as_u64() {
            Some(t) if t >= 1 => t as usize,
            _ => return Err(ConfigError::new("config.trials", "trials", format!("expected an integer >= 1, got {v}"))),
        },
    };
    let seed = match obj.get("seed") {
        None => 0,
        Some(v) => v
            .as_u64()
            .ok_or_else(|| ConfigError::new("config.malformed", "seed", "expected an unsigned 64-bit integer"))?,
    };
    let output = match obj.get("output") {
        None => None,
        Some(v) => {
            let s =
                v.as_str().ok_or_else(|| ConfigError::new("config.malformed", "output", "expected a path string"))?;
            (s != "-").then(|| s.to_string())
        }
    };
    let format = match obj.get("format") {
        None => Format::Json,
        Some(v) => v.as_str().and_then(Format::parse).ok_or_else(|| {
            ConfigError::new("config.format", "format", format!("expected \"json\" or \"text\", got {v}"))
        })?,
    };
    Ok(RunConfig { spec, suites, trials, seed, output, format })
}

fn parse_adjoined(obj: &Map<String, Value>, rank: usize) -> Result<Vec<(Root, usize)>, ConfigError> {
    let Some(v) = obj.get("adjoined") else { return Ok(Vec::new()) };
    let arr = v.as_array().ok_or_else(|| ConfigError::new("config.malformed", "adjoined", "expected an array"))?;
    let mut out: Vec<(Root, usize)> = Vec::new();
    for (i, entry) in arr.iter().enumerate() {
        let at = |k: &str| format!("adjoined[{i}].{k}");
        let e = entry
            .as_object()
            .ok_or_else(|| ConfigError::new("config.malformed", format!("adjoined[{i}]"), "expected an object"))?;
        if let Some(k) = e.keys().find(|k| *k != "root" && *k != "copies") {
            return Err(ConfigError::new("config.malformed", at(k), "unknown field"));
        }
        let raw =
            e.get("root").ok_or_else(|| ConfigError::new("config.malformed", at("root"), "missing required field"))?;
        let coeffs = raw
            .as_array()
            .and_then(|a| {
                a.iter().map(|c| c.as_i64().and_then(|c| i32::try_from(c).ok())).collect::<Option<Vec<i32>>>()
            })
            .ok_or_else(|| ConfigError::new("config.invalid_root", at("root"), "expected an array of integers"))?;
        if coeffs.len() != rank {
            return Err(ConfigError::new(
                "config.invalid_root",
                at("root"),
                format!("root has {} coordinates, rank is {rank}", coeffs.len()),
            ));
        }
        let root = Root::new(coeffs).map_err(|e| ConfigError::new("config.invalid_root", at("root"), e.to_string()))?;
        if root.long_shape().is_none() {
            return Err(ConfigError::new(
                "config.unsupported_root",
                at("root"),
                format!("{root} is not a long root; only +-e_i +- e_j can be adjoined"),
            ));
        }
        let copies = match e.get("copies") {
            None => 1,
            Some(c) => match c.as_u64() {
                Some(k) if k >= 1 => k as usize,
                _ => {
                    return Err(ConfigError::new(
                        "config.copies",
                        at("copies"),
                        format!("expected an integer >= 1, got {c}"),
                    ))
                }
            },
        };
        if out.iter().any(|(r, _)| *r == root) {
            return Err(ConfigError::new(
                "config.duplicate_root",
                at("root"),
                format!("{root} is already adjoined; raise its `copies` instead"),
            ));
        }
        out.push((root, copies));
    }
    Ok(out)
}

impl RunConfig {
    /// The configuration as it is echoed into reports.
    pub fn echo(&self) -> Value {
        let adjoined: Vec<Value> =
            self.spec.adjoined().iter().map(|(r, k)| json!({ "root": r.coeffs(), "copies": k })).collect();
        json!({
            "rank": self.spec.rank(),
            "adjoined": adjoined,
            "suites": self.suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
            "trials": self.trials,
            "seed": self.seed,
            "output": self.output.as_deref().unwrap_or("-"),
            "format": self.format.name(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(text: &str) -> &'static str {
        parse_config(text).unwrap_err().code
    }

    #[test]
    fn affine_b3() {
        let c = parse_config(r#"{"rank":3, "adjoined":[{"root":[-1,-1,0],"copies":1}], "suites":["hom","matrix"]}"#)
            .unwrap();
        assert_eq!(c.spec.d(), 1);
        assert_eq!(c.suites, vec![Suite::Matrix, Suite::Hom]);
        assert_eq!(c.trials, DEFAULT_TRIALS);
        assert_eq!(c.format, Format::Json);
    }

    #[test]
    fn error_codes() {
        assert_eq!(code("{"), "config.malformed");
        assert_eq!(code("[]"), "config.malformed");
        assert_eq!(code(r#"{"adjoined":[]}"#), "config.malformed");
        assert_eq!(code(r#"{"rank":3,"extra":1}"#), "config.malformed");
        assert_eq!(code(r#"{"rank":2}"#), "config.rank");
        assert_eq!(code(r#"{"rank":"3"}"#), "config.rank");
        assert_eq!(code(r#"{"rank":3,"adjoined":[{"root":[1,0,0],"copies":1}]}"#), "config.unsupported_root");
        assert_eq!(code(r#"{"rank":3,"adjoined":[{"root":[2,0,0]}]}"#), "config.unsupported_root");
        assert_eq!(code(r#"{"rank":3,"adjoined":[{"root":[1,2,0]}]}"#), "config.invalid_root");
        assert_eq!(code(r#"{"rank":3,"adjoined":[{"root":[1,1]}]}"#), "config.invalid_root");
        assert_eq!(code(r#"{"rank":3,"adjoined":[{"root":[1,1,0]},{"root":[1,1,0]}]}"#), "config.duplicate_root");
        assert_eq!(code(r#"{"rank":3,"adjoined":[{"root":[1,1,0],"copies":0}]}"#), "config.copies");
        assert_eq!(code(r#"{"rank":3,"trials":0}"#), "config.trials");
        assert_eq!(code(r#"{"rank":3,"suites":["nope"]}"#), "config.suite");
        assert_eq!(code(r#"{"rank":3,"format":"xml"}"#), "config.format");
    }

    #[test]
    fn error_names_the_field() {
        let e = parse_config(r#"{"rank":3,"adjoined":[{"root":[1,1,0]},{"root":[0,0,1]}]}"#).unwrap_err();
        assert_eq!(e.field, "adjoined[1].root");
    }

    #[test]
    fn echo_round_trips() {
        let c =
            parse_config(r#"{"rank":4,"adjoined":[{"root":[0,1,0,-1],"copies":2}],"seed":9,"format":"text"}"#).unwrap();
        let again = parse_config(&c.echo().to_string()).unwrap();
        assert_eq!(again.echo(), c.echo());
    }
}
