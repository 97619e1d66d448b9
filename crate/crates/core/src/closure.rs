//! Brute-force Lie-closure oracle for small qubit counts.
//!
//! Two Pauli strings either commute or have a commutator proportional to
//! their product, so closure can run on phaseless strings alone: whenever the
//! symplectic form of two known strings is 1, the XOR of their symplectic
//! vectors is a new element. The span over the reals of the resulting set is
//! the generated Lie algebra.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitVec;
use crate::gamma::Pool;
use crate::pauli::PauliString;
use crate::symmetry::{is_even_flip, is_odd_string};

/// Default largest qubit count the oracle accepts.
pub const DEFAULT_ORACLE_MAX_QUBITS: usize = 12;
/// Default element cap (2^24).
pub const DEFAULT_ORACLE_MAX_ELEMENTS: usize = 1 << 24;
/// Packed keys hold at most this many qubits.
const PACKED_QUBITS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("oracle refuses {n} qubits (limit {limit})")]
    TooManyQubits { n: usize, limit: usize },
    #[error("closure truncated at {cap} elements before a decision was reached")]
    Truncated { cap: usize },
    #[error("target acts on {target} qubits, pool on {pool}")]
    QubitMismatch { pool: usize, target: usize },
}

/// Size limits for exact closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleGuard {
    pub max_qubits: usize,
    pub max_elements: usize,
}

impl Default for OracleGuard {
    fn default() -> Self {
        OracleGuard {
            max_qubits: DEFAULT_ORACLE_MAX_QUBITS,
            max_elements: DEFAULT_ORACLE_MAX_ELEMENTS,
        }
    }
}

impl OracleGuard {
    pub fn allows(&self, n: usize) -> bool {
        n <= self.max_qubits.min(PACKED_QUBITS)
    }

    fn check(&self, n: usize) -> Result<(), ClosureError> {
        if self.allows(n) {
            Ok(())
        } else {
            Err(ClosureError::TooManyQubits {
                n,
                limit: self.max_qubits.min(PACKED_QUBITS),
            })
        }
    }
}

/// `(x, z)` with qubit `q` (0-based) at bit `q`.
type Key = (u64, u64);

fn pack(p: &PauliString) -> Key {
    let x = p.x_bits().words().first().copied().unwrap_or(0);
    let z = p.z_bits().words().first().copied().unwrap_or(0);
    (x, z)
}

fn unpack(n: usize, k: Key) -> PauliString {
    let bits = |w: u64| BitVec::from_bools((0..n).map(|q| (w >> q) & 1 == 1));
    PauliString::from_parts(bits(k.0), bits(k.1)).expect("equal lengths")
}

#[inline]
fn anticommute(a: Key, b: Key) -> bool {
    ((a.0 & b.1).count_ones() + (a.1 & b.0).count_ones()) & 1 == 1
}

/// Bracket closure of a pool.
#[derive(Clone, Debug)]
pub struct ClosureResult {
    n: usize,
    order: Vec<Key>,
    keys: HashSet<Key>,
    pub truncated: bool,
}

impl ClosureResult {
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.order.len()
    }

    /// Elements in discovery order (pool first, then BFS order).
    pub fn elements(&self) -> Vec<PauliString> {
        self.order.iter().map(|&k| unpack(self.n, k)).collect()
    }

    pub fn contains(&self, p: &PauliString) -> bool {
        p.num_qubits() == self.n && self.keys.contains(&pack(p))
    }

    /// Phaseless set equality.
    pub fn same_set(&self, other: &ClosureResult) -> bool {
        self.n == other.n && self.keys == other.keys
    }

    pub fn is_subset_of(&self, other: &ClosureResult) -> bool {
        self.n == other.n && self.keys.is_subset(&other.keys)
    }

    /// Closed under commutators: every anticommuting pair has its product inside.
    pub fn is_closed(&self) -> bool {
        self.order.iter().enumerate().all(|(i, &a)| {
            self.order[..i]
                .iter()
                .all(|&b| !anticommute(a, b) || self.keys.contains(&(a.0 ^ b.0, a.1 ^ b.1)))
        })
    }
}

/// BFS over pairwise commutators, stopping early once `stop` returns true
/// for a newly found key or the cap is exceeded.
fn closure_search(
    pool: &Pool,
    cap: usize,
    mut stop: impl FnMut(Key) -> bool,
) -> (Vec<Key>, HashSet<Key>, bool, bool) {
    let mut order: Vec<Key> = Vec::with_capacity(pool.len());
    let mut keys: HashSet<Key> = HashSet::with_capacity(pool.len());
    for p in pool {
        let k = pack(p);
        if keys.insert(k) {
            order.push(k);
            if stop(k) {
                return (order, keys, false, true);
            }
        }
    }
    let mut head = 0;
    while head < order.len() {
        let a = order[head];
        for idx in 0..head {
            let b = order[idx];
            if !anticommute(a, b) {
                continue;
            }
            let c = (a.0 ^ b.0, a.1 ^ b.1);
            if keys.contains(&c) {
                continue;
            }
            if order.len() >= cap {
                return (order, keys, true, false);
            }
            keys.insert(c);
            order.push(c);
            if stop(c) {
                return (order, keys, false, true);
            }
        }
        head += 1;
    }
    (order, keys, false, false)
}

/// Fixed point of pairwise commutators on phaseless strings, including the
/// pool itself. `truncated` is set when more than `cap` elements would be needed.
pub fn bracket_closure(pool: &Pool, cap: Option<usize>, guard: &OracleGuard) -> Result<ClosureResult, ClosureError> {
    let n = pool.num_qubits();
    guard.check(n)?;
    let cap = cap.unwrap_or(guard.max_elements).min(guard.max_elements);
    let (order, keys, truncated, _) = closure_search(pool, cap, |_| false);
    Ok(ClosureResult {
        n,
        order,
        keys,
        truncated,
    })
}

/// Whether `target` lies in the closure of `pool`, stopping as soon as it appears.
pub fn closure_contains(pool: &Pool, target: &PauliString, guard: &OracleGuard) -> Result<bool, ClosureError> {
    let n = pool.num_qubits();
    guard.check(n)?;
    if target.num_qubits() != n {
        return Err(ClosureError::QubitMismatch {
            pool: n,
            target: target.num_qubits(),
        });
    }
    let goal = pack(target);
    let (_, _, truncated, found) = closure_search(pool, guard.max_elements, |k| k == goal);
    if found {
        Ok(true)
    } else if truncated {
        Err(ClosureError::Truncated {
            cap: guard.max_elements,
        })
    } else {
        Ok(false)
    }
}

/// Closure dimension; errors if the cap is hit.
pub fn dla_dimension(pool: &Pool, guard: &OracleGuard) -> Result<usize, ClosureError> {
    let c = bracket_closure(pool, None, guard)?;
    if c.truncated {
        return Err(ClosureError::Truncated {
            cap: guard.max_elements,
        });
    }
    Ok(c.dimension())
}

/// Which Lie algebra a pool should generate.
#[derive(Clone, Debug)]
pub enum TargetKind {
    /// su(2^n): every non-identity string.
    Full,
    /// Odd Y-count strings, an so-type algebra.
    OddY,
    /// Odd Y-count with even flips per spin species.
    Chem,
    /// Closure of a supplied pool.
    ReferencePool(Pool),
}

#[derive(Clone, Debug)]
pub struct AlgebraTarget {
    pub kind: TargetKind,
    pub expected_dimension: Option<usize>,
}

impl AlgebraTarget {
    pub fn full() -> Self {
        AlgebraTarget {
            kind: TargetKind::Full,
            expected_dimension: None,
        }
    }

    pub fn odd_y() -> Self {
        AlgebraTarget {
            kind: TargetKind::OddY,
            expected_dimension: None,
        }
    }

    pub fn chem() -> Self {
        AlgebraTarget {
            kind: TargetKind::Chem,
            expected_dimension: None,
        }
    }

    pub fn reference_pool(pool: Pool) -> Self {
        AlgebraTarget {
            kind: TargetKind::ReferencePool(pool),
            expected_dimension: None,
        }
    }

    /// Parses `full`, `odd_y` or `chem`.
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "full" | "su" => Some(Self::full()),
            "odd_y" | "so" => Some(Self::odd_y()),
            "chem" => Some(Self::chem()),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            TargetKind::Full => "full",
            TargetKind::OddY => "odd_y",
            TargetKind::Chem => "chem",
            TargetKind::ReferencePool(_) => "reference_pool",
        }
    }

    /// Membership in the target basis for the sector targets; `None` for
    /// reference pools, whose basis is only known after a closure run.
    pub fn admits(&self, p: &PauliString) -> Option<bool> {
        if p.is_identity() {
            return Some(false);
        }
        match self.kind {
            TargetKind::Full => Some(true),
            TargetKind::OddY => Some(is_odd_string(p)),
            TargetKind::Chem => Some(is_odd_string(p) && is_even_flip(p)),
            TargetKind::ReferencePool(_) => None,
        }
    }

    /// Dimension of the target algebra on `n` qubits.
    pub fn dimension(&self, n: usize, guard: &OracleGuard) -> Result<usize, ClosureError> {
        if let Some(d) = self.expected_dimension {
            return Ok(d);
        }
        match &self.kind {
            TargetKind::Full => Ok(4usize.pow(n as u32) - 1),
            TargetKind::OddY => Ok((4usize.pow(n as u32) - 2usize.pow(n as u32)) / 2),
            TargetKind::Chem => {
                guard.check(n)?;
                Ok(enumerate_sector(n, |p| is_odd_string(p) && is_even_flip(p)).len())
            }
            TargetKind::ReferencePool(reference) => dla_dimension(reference, guard),
        }
    }

    /// Every basis string of the target, in lexicographic label order.
    pub fn basis(&self, n: usize, guard: &OracleGuard) -> Result<Vec<PauliString>, ClosureError> {
        guard.check(n)?;
        match &self.kind {
            TargetKind::ReferencePool(reference) => {
                let c = bracket_closure(reference, None, guard)?;
                if c.truncated {
                    return Err(ClosureError::Truncated {
                        cap: guard.max_elements,
                    });
                }
                let mut elems = c.elements();
                elems.sort_by_key(lex_index);
                Ok(elems)
            }
            _ => Ok(enumerate_sector(n, |p| self.admits(p).unwrap_or(false))),
        }
    }
}

/// Position of `p` in `IXYZ` lexicographic order with qubit 1 most significant.
pub(crate) fn lex_index(p: &PauliString) -> u64 {
    (0..p.num_qubits()).fold(0u64, |acc, q| {
        let d = match p.site(q) {
            'I' => 0,
            'X' => 1,
            'Y' => 2,
            _ => 3,
        };
        acc * 4 + d
    })
}

/// String at lexicographic index `k` (inverse of [`lex_index`]).
pub(crate) fn lex_string(n: usize, k: u64) -> PauliString {
    let mut x = BitVec::zeros(n);
    let mut z = BitVec::zeros(n);
    for q in 0..n {
        match (k >> (2 * (n - 1 - q))) & 3 {
            1 => x.set(q, true),
            2 => {
                x.set(q, true);
                z.set(q, true)
            }
            3 => z.set(q, true),
            _ => {}
        }
    }
    PauliString::from_parts(x, z).expect("equal lengths")
}

/// Non-identity strings passing `keep`, in lexicographic order.
pub fn enumerate_sector(n: usize, keep: impl Fn(&PauliString) -> bool) -> Vec<PauliString> {
    assert!(n <= PACKED_QUBITS, "enumeration limited to {PACKED_QUBITS} qubits");
    (1..4u64.pow(n as u32))
        .map(|k| lex_string(n, k))
        .filter(|p| keep(p))
        .collect()
}

/// Outcome of a completeness check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Completeness {
    pub complete: bool,
    /// Closure size, or a lower bound when the search stopped early.
    pub closure_dimension: usize,
    pub target_dimension: usize,
    /// The closure contains strings outside the target basis.
    pub exceeds_target: bool,
}

/// Checks `span(closure(pool)) = target` by exact set comparison.
///
/// The search stops one element past the target dimension: a larger closure
/// can never equal the target.
pub fn check_completeness(pool: &Pool, target: &AlgebraTarget, guard: &OracleGuard) -> Result<Completeness, ClosureError> {
    let n = pool.num_qubits();
    guard.check(n)?;
    let target_dimension = target.dimension(n, guard)?;
    let cap = target_dimension + 1;
    if cap > guard.max_elements {
        return Err(ClosureError::Truncated {
            cap: guard.max_elements,
        });
    }
    let c = bracket_closure(pool, Some(cap), guard)?;
    let (inside, exceeds) = match &target.kind {
        TargetKind::ReferencePool(reference) => {
            if reference.num_qubits() != n {
                return Err(ClosureError::QubitMismatch {
                    pool: n,
                    target: reference.num_qubits(),
                });
            }
            let r = bracket_closure(reference, None, guard)?;
            (c.is_subset_of(&r), !c.is_subset_of(&r))
        }
        _ => {
            let all_inside = c
                .order
                .iter()
                .all(|&k| target.admits(&unpack(n, k)).unwrap_or(false));
            (all_inside, !all_inside)
        }
    };
    Ok(Completeness {
        complete: !c.truncated && inside && c.dimension() == target_dimension,
        closure_dimension: c.dimension(),
        target_dimension,
        exceeds_target: exceeds || c.truncated,
    })
}

pub fn is_complete(pool: &Pool, target: &AlgebraTarget, guard: &OracleGuard) -> Result<bool, ClosureError> {
    Ok(check_completeness(pool, target, guard)?.complete)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndependenceMode {
    /// Linear independence of symplectic vectors (sufficient only).
    Fast,
    /// Closure membership for every element.
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Independence {
    Independent,
    /// `witness` lies in the closure of the others.
    Dependent { witness: usize },
    /// The fast test failed at `witness`; only the exact test can decide.
    Inconclusive { witness: usize },
}

impl Independence {
    pub fn is_independent(&self) -> bool {
        matches!(self, Independence::Independent)
    }

    pub fn witness(&self) -> Option<usize> {
        match *self {
            Independence::Independent => None,
            Independence::Dependent { witness } | Independence::Inconclusive { witness } => Some(witness),
        }
    }
}

/// Last index whose symplectic vector lies in the span of the others.
fn symplectic_dependency(pool: &Pool) -> Option<usize> {
    let full = pool.symplectic_matrix();
    let rank = full.rank();
    if rank == pool.len() {
        return None;
    }
    (0..pool.len())
        .rev()
        .find(|&j| pool.without(j).symplectic_matrix().rank() == rank)
}

/// Bracket independence: no element lies in the closure of the others.
///
/// The fast mode only checks linear independence of the symplectic vectors;
/// any nested commutator of the other elements has a symplectic vector in
/// their span, so a pass is conclusive while a failure is not. Exact mode runs
/// the fast test first and falls back to closure membership per element.
/// Witnesses are searched from the last element backwards.
pub fn is_bracket_independent(pool: &Pool, mode: IndependenceMode, guard: &OracleGuard) -> Result<Independence, ClosureError> {
    let Some(witness) = symplectic_dependency(pool) else {
        return Ok(Independence::Independent);
    };
    match mode {
        IndependenceMode::Fast => Ok(Independence::Inconclusive { witness }),
        IndependenceMode::Exact => {
            for j in (0..pool.len()).rev() {
                if closure_contains(&pool.without(j), &pool.elements()[j], guard)? {
                    return Ok(Independence::Dependent { witness: j });
                }
            }
            Ok(Independence::Independent)
        }
    }
}
