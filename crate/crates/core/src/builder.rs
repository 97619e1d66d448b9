//! Pool construction from starters and verification of arbitrary pools.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitVec;
use crate::closure::{
    bracket_closure, check_completeness, closure_contains, enumerate_sector, is_bracket_independent, AlgebraTarget,
    ClosureError, Completeness, Independence, IndependenceMode, OracleGuard, TargetKind,
};
use crate::f2::canonical_congruence;
use crate::gamma::{build_gamma, Origin, Pool, PoolError};
use crate::pauli::PauliString;
use crate::symmetry::SymmetryConstraints;

/// Largest qubit count at which `OraclePolicy::Auto` runs the oracle.
pub const AUTO_ORACLE_MAX_QUBITS: usize = 6;
/// Largest qubit count for which reference profiles are searched.
pub const REFERENCE_SEARCH_MAX_QUBITS: usize = 6;
/// Random candidates are drawn by shuffling the enumerated sector up to this many strings.
const SHUFFLE_LIMIT: u64 = 1 << 20;
const REFERENCE_SEED: u64 = 0x5eed_0fc0_ffee;
const REFERENCE_TRIALS: usize = 24;
/// Fewer trials once the target basis exceeds this size.
const REFERENCE_LARGE_BASIS: usize = 1024;
const REFERENCE_TRIALS_LARGE: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("starter {index} ({label}) violates the constraints {constraints}")]
    StarterViolates {
        index: usize,
        label: String,
        constraints: String,
    },
    #[error("starter {index} ({label}) lies in the bracket closure of the other starters")]
    StarterDependent { index: usize, label: String },
    #[error("starters act on {found} qubits, config says {expected}")]
    StarterQubits { expected: usize, found: usize },
    #[error("no reference rank for target {target} on {n} qubits; give target_rank explicitly")]
    NoReference { target: String, n: usize },
    #[error("target rank {0} is odd; anti-commutation matrices have even rank")]
    OddTargetRank(usize),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Oracle(#[from] ClosureError),
    #[error(transparent)]
    Pool(#[from] PoolError),
}

/// When the brute-force oracle may run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OraclePolicy {
    /// Only for `n ≤ AUTO_ORACLE_MAX_QUBITS` and within the guard.
    #[default]
    Auto,
    /// Always; guard violations are errors.
    Force,
    /// Never; only polynomial-time checks run.
    Off,
}

impl OraclePolicy {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "auto" => Some(OraclePolicy::Auto),
            "force" => Some(OraclePolicy::Force),
            "off" => Some(OraclePolicy::Off),
            _ => None,
        }
    }

    fn runs(self, n: usize, guard: &OracleGuard) -> Result<bool, ClosureError> {
        match self {
            OraclePolicy::Off => Ok(false),
            OraclePolicy::Auto => Ok(n <= AUTO_ORACLE_MAX_QUBITS && guard.allows(n)),
            OraclePolicy::Force => {
                if guard.allows(n) {
                    Ok(true)
                } else {
                    Err(ClosureError::TooManyQubits {
                        n,
                        limit: guard.max_qubits,
                    })
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum CandidateSource {
    /// Lexicographic `IXYZ` order, qubit 1 most significant.
    Enumerate,
    Random { seed: u64 },
}

/// Rank and minimal size that certify completeness for a target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReferenceProfile {
    pub rank: usize,
    /// `None` when no minimal pool is known.
    pub mcp_size: Option<usize>,
    pub source: String,
}

/// Cache key: target name plus reference-pool labels, and `n`.
type ProfileKey = (String, usize);

fn profile_cache() -> &'static Mutex<HashMap<ProfileKey, ReferenceProfile>> {
    static CACHE: OnceLock<Mutex<HashMap<ProfileKey, ReferenceProfile>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn profile_key(n: usize, target: &AlgebraTarget) -> ProfileKey {
    let name = match &target.kind {
        TargetKind::ReferencePool(p) => {
            let labels: Vec<String> = p.iter().map(|s| s.label()).collect();
            format!("reference_pool:{}", labels.join(","))
        }
        _ => target.name().to_string(),
    };
    (name, n)
}

/// Reference rank and MCP size for `target` on `n` qubits.
///
/// Chem targets with `n ≥ 4` use rank `2n − 4`; the MCP size still comes from
/// search when `n` is small enough. Every other case is derived by seeded
/// random growth of complete pools followed by inclusion-minimal pruning,
/// keeping the smallest pool found. Results are cached per `(target, n)`.
pub fn reference_profile(n: usize, target: &AlgebraTarget) -> Result<ReferenceProfile, BuildError> {
    let key = profile_key(n, target);
    if let Some(p) = profile_cache().lock().expect("cache lock").get(&key) {
        return Ok(p.clone());
    }
    let chem_formula = matches!(target.kind, TargetKind::Chem) && n >= 4;
    let profile = if (1..=REFERENCE_SEARCH_MAX_QUBITS).contains(&n) {
        let searched = search_minimal_pool(n, target)?;
        match searched {
            Some(pool) => {
                let rank = build_gamma(&pool).rank();
                if chem_formula {
                    ReferenceProfile {
                        rank: 2 * n - 4,
                        mcp_size: Some(pool.len()),
                        source: format!("rank 2n-4; size from seeded search (searched rank {rank})"),
                    }
                } else {
                    ReferenceProfile {
                        rank,
                        mcp_size: Some(pool.len()),
                        source: "seeded oracle search".to_string(),
                    }
                }
            }
            None if chem_formula => ReferenceProfile {
                rank: 2 * n - 4,
                mcp_size: None,
                source: "rank 2n-4".to_string(),
            },
            None => {
                return Err(BuildError::NoReference {
                    target: target.name().to_string(),
                    n,
                })
            }
        }
    } else if chem_formula {
        ReferenceProfile {
            rank: 2 * n - 4,
            mcp_size: None,
            source: "rank 2n-4".to_string(),
        }
    } else {
        return Err(BuildError::NoReference {
            target: target.name().to_string(),
            n,
        });
    };
    profile_cache()
        .lock()
        .expect("cache lock")
        .insert(key, profile.clone());
    Ok(profile)
}

/// Reference rank only; see [`reference_profile`].
pub fn reference_rank(n: usize, target: &AlgebraTarget) -> Result<usize, BuildError> {
    Ok(reference_profile(n, target)?.rank)
}

/// Smallest inclusion-minimal complete pool found over the seeded trials, or
/// `None` when the target basis is empty.
fn search_minimal_pool(n: usize, target: &AlgebraTarget) -> Result<Option<Pool>, BuildError> {
    let guard = OracleGuard::default();
    let basis = target.basis(n, &guard)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let dim = basis.len();
    let mut rng = ChaCha8Rng::seed_from_u64(REFERENCE_SEED ^ (n as u64));
    let mut best: Option<Pool> = None;
    let trials = if dim > REFERENCE_LARGE_BASIS { REFERENCE_TRIALS_LARGE } else { REFERENCE_TRIALS };
    for _ in 0..trials {
        let mut order = basis.clone();
        order.shuffle(&mut rng);
        let mut pool = Pool::new(n);
        let mut closure = bracket_closure(&pool, None, &guard)?;
        for p in order {
            if closure.contains(&p) {
                continue;
            }
            pool.push(p, Origin::Generated)?;
            closure = bracket_closure(&pool, None, &guard)?;
            if closure.dimension() >= dim {
                break;
            }
        }
        // prune to an inclusion-minimal complete pool
        let mut i = 0;
        while i < pool.len() {
            let smaller = pool.without(i);
            if check_completeness(&smaller, target, &guard)?.complete {
                pool = smaller;
            } else {
                i += 1;
            }
        }
        if best.as_ref().is_none_or(|b| pool.len() < b.len()) {
            best = Some(pool);
        }
    }
    Ok(best)
}

/// Certification status of a pool.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "MCP")]
    Mcp,
    #[serde(rename = "CP")]
    Cp,
    #[serde(rename = "incomplete")]
    Incomplete,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl Verdict {
    pub fn is_complete(self) -> bool {
        matches!(self, Verdict::Mcp | Verdict::Cp)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Mcp => "MCP",
            Verdict::Cp => "CP",
            Verdict::Incomplete => "incomplete",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    pub rank: usize,
    /// Rows of `P` as 0/1 text.
    pub p: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleSummary {
    pub complete: bool,
    pub closure_dimension: usize,
    pub target_dimension: usize,
    pub exceeds_target: bool,
}

impl From<Completeness> for OracleSummary {
    fn from(c: Completeness) -> Self {
        OracleSummary {
            complete: c.complete,
            closure_dimension: c.closure_dimension,
            target_dimension: c.target_dimension,
            exceeds_target: c.exceeds_target,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub target: String,
    pub constraints: String,
    pub size: usize,
    pub rank: usize,
    pub rank_target: Option<usize>,
    pub mcp_size: Option<usize>,
    /// `None` when the fast test failed and the exact test did not run.
    pub bracket_independent: Option<bool>,
    pub independence_mode: IndependenceMode,
    pub independence_witness: Option<usize>,
    /// Verdict from rank, size and independence alone.
    pub rank_verdict: Verdict,
    /// Final verdict; the oracle overrides the rank verdict when it ran.
    pub verdict: Verdict,
    pub oracle_checked: bool,
    pub oracle: Option<OracleSummary>,
    pub certificate: Option<CertificateSummary>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub oracle: OraclePolicy,
    pub guard: OracleGuard,
    pub rank_override: Option<usize>,
    pub mcp_size_override: Option<usize>,
    pub constraints: Option<SymmetryConstraints>,
}

/// Verdict from polynomial-time facts only.
fn rank_verdict(size: usize, rank: usize, independent: Option<bool>, rank_target: Option<usize>, mcp_size: Option<usize>) -> Verdict {
    let Some(target) = rank_target else {
        return Verdict::Inconclusive;
    };
    if rank != target {
        return Verdict::Incomplete;
    }
    match independent {
        Some(true) if mcp_size == Some(size) => Verdict::Mcp,
        Some(true) => Verdict::Cp,
        _ => Verdict::Inconclusive,
    }
}

/// Size, rank, independence and verdict of `pool` for `target`.
///
/// With the oracle off nothing here grows with `4^n`. When the oracle runs its
/// completeness answer replaces the rank verdict.
pub fn verify_pool(pool: &Pool, target: &AlgebraTarget, opts: &VerifyOptions) -> Result<VerificationReport, BuildError> {
    let n = pool.num_qubits();
    let oracle = opts.oracle.runs(n, &opts.guard)?;
    let mut notes = Vec::new();

    let gamma = build_gamma(pool);
    let rank = gamma.rank();
    let certificate = canonical_congruence(gamma.matrix()).ok().map(|c| CertificateSummary {
        rank: c.rank,
        p: (0..c.p.nrows()).map(|i| c.p.row(i).to_string()).collect(),
    });

    let mode = if oracle { IndependenceMode::Exact } else { IndependenceMode::Fast };
    let independence = is_bracket_independent(pool, mode, &opts.guard)?;
    let bracket_independent = match independence {
        Independence::Independent => Some(true),
        Independence::Dependent { .. } => Some(false),
        Independence::Inconclusive { .. } => None,
    };

    let profile = if opts.rank_override.is_some() && opts.mcp_size_override.is_some() {
        None
    } else {
        match reference_profile(n, target) {
            Ok(p) => Some(p),
            Err(e) => {
                notes.push(format!("reference: {e}"));
                None
            }
        }
    };
    let rank_target = opts.rank_override.or(profile.as_ref().map(|p| p.rank));
    let mcp_size = opts.mcp_size_override.or(profile.as_ref().and_then(|p| p.mcp_size));
    if let Some(p) = &profile {
        notes.push(format!("reference profile: {}", p.source));
    }

    let by_rank = rank_verdict(pool.len(), rank, bracket_independent, rank_target, mcp_size);
    let mut verdict = by_rank;
    let mut summary = None;
    if oracle {
        let c = check_completeness(pool, target, &opts.guard)?;
        if c.exceeds_target {
            notes.push("closure leaves the target algebra".to_string());
        }
        verdict = if !c.complete {
            Verdict::Incomplete
        } else if mcp_size == Some(pool.len()) {
            Verdict::Mcp
        } else {
            Verdict::Cp
        };
        if verdict != by_rank {
            notes.push(format!(
                "oracle verdict {} differs from rank verdict {}",
                verdict.as_str(),
                by_rank.as_str()
            ));
        }
        summary = Some(c.into());
    }

    Ok(VerificationReport {
        n,
        target: target.name().to_string(),
        constraints: opts
            .constraints
            .as_ref()
            .map_or_else(|| "none".to_string(), SymmetryConstraints::describe),
        size: pool.len(),
        rank,
        rank_target,
        mcp_size,
        bracket_independent,
        independence_mode: mode,
        independence_witness: independence.witness(),
        rank_verdict: by_rank,
        verdict,
        oracle_checked: oracle,
        oracle: summary,
        certificate,
        notes,
    })
}

/// Default target implied by a constraint set.
pub fn target_for(constraints: &SymmetryConstraints) -> AlgebraTarget {
    match (constraints.odd_y, constraints.even_flip) {
        (true, true) => AlgebraTarget::chem(),
        (true, false) => AlgebraTarget::odd_y(),
        _ => AlgebraTarget::full(),
    }
}

#[derive(Clone, Debug)]
pub struct BuildConfig {
    pub n: usize,
    pub starters: Pool,
    pub constraints: SymmetryConstraints,
    pub target: AlgebraTarget,
    /// `None` means the reference rank.
    pub target_rank: Option<usize>,
    /// Used when `stop_at_minimal` is false.
    pub target_size: Option<usize>,
    pub stop_at_minimal: bool,
    pub candidate_source: CandidateSource,
    pub max_candidates: usize,
    pub oracle: OraclePolicy,
    pub guard: OracleGuard,
}

impl BuildConfig {
    pub fn new(n: usize, constraints: SymmetryConstraints) -> Self {
        BuildConfig {
            n,
            starters: Pool::new(n),
            target: target_for(&constraints),
            constraints,
            target_rank: None,
            target_size: None,
            stop_at_minimal: true,
            candidate_source: CandidateSource::Random { seed: 0 },
            max_candidates: 1 << 20,
            oracle: OraclePolicy::Auto,
            guard: OracleGuard::default(),
        }
    }
}

/// Counters and event log of one build.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BuildStats {
    pub candidates_examined: usize,
    pub accepted: usize,
    pub rejected_constraints: usize,
    pub rejected_present: usize,
    pub rejected_dependent: usize,
    /// φ-dependent candidates skipped because the exact test could not run.
    pub skipped_inconclusive: usize,
    pub rejected_rank_overshoot: usize,
    pub escalations: usize,
    pub exhausted: bool,
    pub events: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct BuildOutcome {
    pub pool: Pool,
    pub report: VerificationReport,
    pub stats: BuildStats,
}

/// Reduced row basis of symplectic vectors; rows keep distinct pivots.
#[derive(Clone, Debug, Default)]
struct SpanBasis {
    rows: Vec<(usize, BitVec)>,
}

impl SpanBasis {
    fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (pivot, row) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign(row);
            }
        }
        v
    }

    fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    fn insert(&mut self, v: &BitVec) -> bool {
        let r = self.reduce(v);
        match r.first_one() {
            Some(pivot) => {
                self.rows.push((pivot, r));
                true
            }
            None => false,
        }
    }
}

/// Lazily yields candidate strings in the configured order.
fn candidates(cfg: &BuildConfig) -> Box<dyn Iterator<Item = PauliString> + '_> {
    let n = cfg.n;
    let total = if n >= 32 { u64::MAX } else { 4u64.pow(n as u32) };
    match cfg.candidate_source {
        CandidateSource::Enumerate => {
            Box::new((1..total).map(move |k| crate::closure::lex_string(n, k)).take(cfg.max_candidates))
        }
        CandidateSource::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            if total <= SHUFFLE_LIMIT {
                let mut all = enumerate_sector(n, |_| true);
                all.shuffle(&mut rng);
                Box::new(all.into_iter().take(cfg.max_candidates))
            } else {
                Box::new(
                    std::iter::repeat_with(move || random_string(n, &mut rng))
                        .filter(|p| !p.is_identity())
                        .take(cfg.max_candidates),
                )
            }
        }
    }
}

fn random_string<R: Rng>(n: usize, rng: &mut R) -> PauliString {
    let x = BitVec::from_bools((0..n).map(|_| rng.gen::<bool>()));
    let z = BitVec::from_bools((0..n).map(|_| rng.gen::<bool>()));
    PauliString::from_parts(x, z).expect("equal lengths")
}

/// Passes the constraints and lies in the target sector.
fn admitted(cfg: &BuildConfig, p: &PauliString) -> bool {
    cfg.constraints.admits(p) && cfg.target.admits(p) != Some(false)
}

/// Grows a bracket-independent pool from the starters.
///
/// With `stop_at_minimal` the loop ends once the Γ rank equals the target and
/// completeness is established: by the oracle when the policy lets it run,
/// otherwise by reaching the reference MCP size, otherwise by rank alone.
/// Candidates that would push the rank past the target are skipped. Without
/// `stop_at_minimal` independent candidates are appended until `target_size`.
pub fn build_pool(cfg: &BuildConfig) -> Result<BuildOutcome, BuildError> {
    let n = cfg.n;
    if cfg.starters.num_qubits() != n {
        return Err(BuildError::StarterQubits {
            expected: n,
            found: cfg.starters.num_qubits(),
        });
    }
    cfg.constraints
        .validate(n)
        .map_err(|e| BuildError::Config(e.to_string()))?;
    if let Some(r) = cfg.target_rank {
        if r % 2 == 1 {
            return Err(BuildError::OddTargetRank(r));
        }
    }
    if !cfg.stop_at_minimal && cfg.target_size.is_none() {
        return Err(BuildError::Config("target_size is required when stop_at_minimal is false".into()));
    }
    if cfg.candidate_source == CandidateSource::Enumerate && n >= 32 {
        return Err(BuildError::Config("enumeration is limited to fewer than 32 qubits".into()));
    }
    let oracle = cfg.oracle.runs(n, &cfg.guard)?;
    let exact = oracle;

    for (i, s) in cfg.starters.iter().enumerate() {
        if !admitted(cfg, s) {
            return Err(BuildError::StarterViolates {
                index: i,
                label: s.label(),
                constraints: cfg.constraints.describe(),
            });
        }
    }
    let mode = if exact { IndependenceMode::Exact } else { IndependenceMode::Fast };
    match is_bracket_independent(&cfg.starters, mode, &cfg.guard)? {
        Independence::Independent => {}
        Independence::Dependent { witness } | Independence::Inconclusive { witness } => {
            return Err(BuildError::StarterDependent {
                index: witness,
                label: cfg.starters.elements()[witness].label(),
            })
        }
    }

    let profile = match cfg.target_rank {
        Some(_) => reference_profile(n, &cfg.target).ok(),
        None => Some(reference_profile(n, &cfg.target)?),
    };
    let target_rank = cfg
        .target_rank
        .or(profile.as_ref().map(|p| p.rank))
        .expect("rank from config or profile");
    let mcp_size = profile.as_ref().and_then(|p| p.mcp_size);

    let mut pool = cfg.starters.clone().relabeled(Origin::Starter);
    let mut basis = SpanBasis::default();
    let mut stats = BuildStats::default();
    for s in pool.iter() {
        basis.insert(s.to_symplectic().bits());
    }

    let done = |pool: &Pool, rank: usize, stats: &mut BuildStats| -> Result<bool, BuildError> {
        if !cfg.stop_at_minimal {
            return Ok(Some(pool.len()) >= cfg.target_size);
        }
        if rank != target_rank {
            return Ok(false);
        }
        if oracle {
            let complete = check_completeness(pool, &cfg.target, &cfg.guard)?.complete;
            if !complete {
                stats
                    .events
                    .push(format!("rank {rank} reached at size {} but oracle reports incomplete", pool.len()));
            }
            return Ok(complete);
        }
        Ok(mcp_size.is_none_or(|m| pool.len() >= m))
    };

    let mut rank = build_gamma(&pool).rank();
    let mut finished = done(&pool, rank, &mut stats)?;
    if !finished {
        let mut source = candidates(cfg);
        loop {
            let Some(c) = source.next() else {
                stats.exhausted = true;
                stats.events.push("candidate source exhausted".to_string());
                break;
            };
            stats.candidates_examined += 1;
            if !admitted(cfg, &c) {
                stats.rejected_constraints += 1;
                continue;
            }
            if pool.contains(&c) {
                stats.rejected_present += 1;
                continue;
            }
            let v = c.to_symplectic().bits().clone();
            let independent_fast = !basis.contains(&v);
            let trial = pool.with(c.clone(), Origin::Generated)?;
            if !independent_fast {
                if !exact {
                    stats.skipped_inconclusive += 1;
                    continue;
                }
                stats.escalations += 1;
                if closure_contains(&pool, &c, &cfg.guard)? {
                    stats.rejected_dependent += 1;
                    continue;
                }
                if !is_bracket_independent(&trial, IndependenceMode::Exact, &cfg.guard)?.is_independent() {
                    stats.rejected_dependent += 1;
                    continue;
                }
            }
            let trial_rank = build_gamma(&trial).rank();
            if cfg.stop_at_minimal && trial_rank > target_rank {
                stats.rejected_rank_overshoot += 1;
                continue;
            }
            basis.insert(&v);
            pool = trial;
            rank = trial_rank;
            stats.accepted += 1;
            if done(&pool, rank, &mut stats)? {
                finished = true;
                break;
            }
        }
    }
    if !finished {
        stats.events.push(format!("stopped at rank {rank}, target {target_rank}"));
    }

    let opts = VerifyOptions {
        oracle: cfg.oracle,
        guard: cfg.guard,
        rank_override: Some(target_rank),
        mcp_size_override: mcp_size,
        constraints: Some(cfg.constraints.clone()),
    };
    let mut report = verify_pool(&pool, &cfg.target, &opts)?;
    if stats.exhausted && !report.oracle_checked && report.verdict != Verdict::Incomplete {
        report.notes.push("candidate source exhausted before the stop rule held".to_string());
        report.verdict = Verdict::Incomplete;
    }
    Ok(BuildOutcome { pool, report, stats })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_basis_detects_products() {
        let mut b = SpanBasis::default();
        let x: PauliString = "XI".parse().unwrap();
        let z: PauliString = "ZI".parse().unwrap();
        let y: PauliString = "YI".parse().unwrap();
        assert!(b.insert(x.to_symplectic().bits()));
        assert!(b.insert(z.to_symplectic().bits()));
        assert!(b.contains(y.to_symplectic().bits()));
        assert!(!b.insert(y.to_symplectic().bits()));
    }

    #[test]
    fn reference_profiles_small() {
        let full2 = reference_profile(2, &AlgebraTarget::full()).unwrap();
        assert_eq!((full2.rank, full2.mcp_size), (4, Some(5)));
        let odd2 = reference_profile(2, &AlgebraTarget::odd_y()).unwrap();
        assert_eq!((odd2.rank, odd2.mcp_size), (4, Some(4)));
        assert_eq!(reference_rank(6, &AlgebraTarget::chem()).unwrap(), 8);
        assert_eq!(reference_rank(4, &AlgebraTarget::chem()).unwrap(), 4);
        assert_eq!(reference_rank(100, &AlgebraTarget::chem()).unwrap(), 196);
        assert!(reference_profile(2, &AlgebraTarget::chem()).is_err());
        assert!(reference_profile(9, &AlgebraTarget::full()).is_err());
    }

    #[test]
    fn verify_su2() {
        let pool = Pool::from_labels(&["X", "Z"]).unwrap();
        let r = verify_pool(&pool, &AlgebraTarget::full(), &VerifyOptions::default()).unwrap();
        assert_eq!(r.size, 2);
        assert_eq!(r.rank, 2);
        assert_eq!(r.bracket_independent, Some(true));
        assert!(r.oracle_checked);
        assert_eq!(r.verdict, Verdict::Mcp);
    }

    #[test]
    fn verify_commuting_set_incomplete() {
        let pool = Pool::from_text_labels(2, &["Z1", "Z2", "Z1 Z2"]).unwrap();
        let r = verify_pool(&pool, &AlgebraTarget::full(), &VerifyOptions::default()).unwrap();
        assert_eq!(r.rank, 0);
        assert_eq!(r.verdict, Verdict::Incomplete);
        assert_eq!(r.rank_verdict, Verdict::Incomplete);
    }

    #[test]
    fn build_chem_four_enumerate() {
        let mut cfg = BuildConfig::new(4, SymmetryConstraints::chemistry());
        cfg.candidate_source = CandidateSource::Enumerate;
        let out = build_pool(&cfg).unwrap();
        assert_eq!(out.report.rank, 4);
        assert!(out.report.oracle_checked);
        assert!(out.report.verdict.is_complete(), "{:?}", out.report);
    }

    #[test]
    fn starters_meeting_target_are_returned_unchanged() {
        let mut cfg = BuildConfig::new(1, SymmetryConstraints::none());
        cfg.starters = Pool::from_labels(&["X", "Z"]).unwrap();
        let out = build_pool(&cfg).unwrap();
        assert_eq!(out.pool.elements(), cfg.starters.elements());
        assert_eq!(out.stats.candidates_examined, 0);
        assert!(out.pool.origins().iter().all(|o| *o == Origin::Starter));
    }

    #[test]
    fn starter_errors() {
        let mut cfg = BuildConfig::new(4, SymmetryConstraints::chemistry());
        cfg.starters = Pool::from_labels(&["XIII"]).unwrap();
        assert!(matches!(build_pool(&cfg), Err(BuildError::StarterViolates { index: 0, .. })));
        let mut cfg = BuildConfig::new(1, SymmetryConstraints::none());
        cfg.starters = Pool::from_labels(&["X", "Z", "Y"]).unwrap();
        assert!(matches!(build_pool(&cfg), Err(BuildError::StarterDependent { index: 2, .. })));
    }
}
