//! Build configuration files (TOML, or JSON when the text starts with `{`).

use std::fs;
use std::path::Path;

use liepool::builder::{BuildStats, CandidateSource};
use liepool::io::parse_pool;
use liepool::{AlgebraTarget, BuildConfig, OracleGuard, OraclePolicy, PauliString, SymmetryConstraints, VerificationReport};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConstraints {
    #[serde(default)]
    odd_y: bool,
    #[serde(default)]
    even_flip: bool,
    #[serde(default)]
    commute_with: Vec<String>,
    #[serde(default)]
    note: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    n: usize,
    #[serde(default)]
    target: Option<String>,
    /// Integer, or the string `auto`.
    #[serde(default)]
    target_rank: Option<RankSetting>,
    #[serde(default)]
    target_size: Option<usize>,
    #[serde(default)]
    seed: Option<u64>,
    /// Pool file, relative to the config file.
    #[serde(default)]
    starters: Option<String>,
    #[serde(default)]
    stop_at_minimal: Option<bool>,
    #[serde(default)]
    candidate_source: Option<String>,
    #[serde(default)]
    max_candidates: Option<usize>,
    #[serde(default)]
    oracle: Option<String>,
    #[serde(default)]
    constraints: RawConstraints,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RankSetting {
    Value(usize),
    Word(String),
}

/// Config error before a path is attached.
#[derive(Debug)]
pub struct ConfigError(String);

impl ConfigError {
    pub fn at(self, path: &Path) -> CliError {
        CliError {
            category: "config",
            code: 2,
            message: format!("{}: {}", path.display(), self.0),
        }
    }
}

fn err(msg: impl ToString) -> ConfigError {
    ConfigError(msg.to_string())
}

/// Parses the config; `seed` overrides the file. Returns the seed actually used.
pub fn load(text: &str, base: &Path, seed: Option<u64>, guard: OracleGuard) -> Result<(BuildConfig, u64), ConfigError> {
    let raw: RawConfig = if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(err)?
    } else {
        toml::from_str(text).map_err(err)?
    };
    let n = raw.n;
    if n == 0 {
        return Err(err("n must be positive"));
    }
    let commute_with = raw
        .constraints
        .commute_with
        .iter()
        .map(|s| PauliString::parse(s, Some(n)).map_err(|e| err(format!("commute_with {s:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let constraints = SymmetryConstraints {
        odd_y: raw.constraints.odd_y,
        even_flip: raw.constraints.even_flip,
        commute_with,
        note: raw.constraints.note,
    };
    let mut cfg = BuildConfig::new(n, constraints);
    if let Some(t) = raw.target {
        cfg.target = AlgebraTarget::from_name(&t).ok_or_else(|| err(format!("unknown target {t:?}")))?;
    }
    cfg.target_rank = match raw.target_rank {
        None => None,
        Some(RankSetting::Value(r)) => Some(r),
        Some(RankSetting::Word(w)) if w == "auto" => None,
        Some(RankSetting::Word(w)) => return Err(err(format!("target_rank {w:?} is neither an integer nor auto"))),
    };
    cfg.target_size = raw.target_size;
    if let Some(s) = raw.stop_at_minimal {
        cfg.stop_at_minimal = s;
    }
    let seed = seed.or(raw.seed).unwrap_or(0);
    cfg.candidate_source = match raw.candidate_source.as_deref().unwrap_or("random") {
        "random" => CandidateSource::Random { seed },
        "enumerate" => CandidateSource::Enumerate,
        other => return Err(err(format!("unknown candidate_source {other:?}"))),
    };
    if let Some(m) = raw.max_candidates {
        cfg.max_candidates = m;
    }
    if let Some(o) = raw.oracle {
        cfg.oracle = OraclePolicy::parse(&o).ok_or_else(|| err(format!("unknown oracle policy {o:?}")))?;
    }
    cfg.guard = guard;
    if let Some(path) = raw.starters {
        let full = base.join(&path);
        let text = fs::read_to_string(&full).map_err(|e| err(format!("starters {}: {e}", full.display())))?;
        let pool = parse_pool(&text).map_err(|e| err(format!("starters {}: {e}", full.display())))?;
        if pool.num_qubits() != n {
            return Err(err(format!("starters act on {} qubits, n = {n}", pool.num_qubits())));
        }
        cfg.starters = pool;
    }
    Ok((cfg, seed))
}

/// JSON document written by `build`.
#[derive(Serialize)]
pub struct BuildDocument<'a> {
    pub seed: u64,
    pub report: &'a VerificationReport,
    pub stats: &'a BuildStats,
}
