//! Pools of Pauli strings, their anti-commutation matrices and contractions.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitVec;
use crate::f2::{canonical_congruence, BitMatrix, F2Error};
use crate::pauli::{PauliError, PauliString};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoolError {
    #[error("element {0} is the identity string")]
    Identity(usize),
    #[error("element {index} ({label}) duplicates an earlier element")]
    Duplicate { index: usize, label: String },
    #[error("element {index} acts on {found} qubits, pool has {expected}")]
    QubitCount {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("index {index} out of range for pool of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("cannot contract element {0} onto itself")]
    SameIndex(usize),
    #[error("elements {0} and {1} commute; contraction would give the zero operator")]
    Commuting(usize, usize),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    F2(#[from] F2Error),
}

/// Where a pool element came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Input,
    Starter,
    Generated,
}

/// Ordered set of phaseless, non-identity Pauli strings on `n` qubits.
#[derive(Clone, PartialEq, Eq)]
pub struct Pool {
    n: usize,
    elements: Vec<PauliString>,
    origins: Vec<Origin>,
    keys: HashSet<(BitVec, BitVec)>,
}

fn key(p: &PauliString) -> (BitVec, BitVec) {
    (p.x_bits().clone(), p.z_bits().clone())
}

impl Pool {
    pub fn new(n: usize) -> Self {
        Pool {
            n,
            elements: Vec::new(),
            origins: Vec::new(),
            keys: HashSet::new(),
        }
    }

    pub fn from_strings<I>(n: usize, strings: I) -> Result<Self, PoolError>
    where
        I: IntoIterator<Item = PauliString>,
    {
        let mut pool = Pool::new(n);
        for s in strings {
            pool.push(s, Origin::Input)?;
        }
        Ok(pool)
    }

    /// Parses dense labels; convenient in tests and examples.
    pub fn from_labels(labels: &[&str]) -> Result<Self, PoolError> {
        let strings = labels
            .iter()
            .map(|s| PauliString::parse(s, None))
            .collect::<Result<Vec<_>, _>>()?;
        let n = strings.first().map_or(0, PauliString::num_qubits);
        Pool::from_strings(n, strings)
    }

    /// Parses labels in dense or sparse form on `n` qubits.
    pub fn from_text_labels(n: usize, labels: &[&str]) -> Result<Self, PoolError> {
        let strings = labels
            .iter()
            .map(|s| PauliString::parse(s, Some(n)))
            .collect::<Result<Vec<_>, _>>()?;
        Pool::from_strings(n, strings)
    }

    /// Appends a string (phase dropped).
    pub fn push(&mut self, p: PauliString, origin: Origin) -> Result<(), PoolError> {
        let index = self.elements.len();
        if p.num_qubits() != self.n {
            return Err(PoolError::QubitCount {
                index,
                expected: self.n,
                found: p.num_qubits(),
            });
        }
        if p.is_identity() {
            return Err(PoolError::Identity(index));
        }
        let p = p.phaseless();
        if !self.keys.insert(key(&p)) {
            return Err(PoolError::Duplicate {
                index,
                label: p.label(),
            });
        }
        self.elements.push(p);
        self.origins.push(origin);
        Ok(())
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PauliString] {
        &self.elements
    }

    pub fn origins(&self) -> &[Origin] {
        &self.origins
    }

    pub fn get(&self, i: usize) -> Option<&PauliString> {
        self.elements.get(i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, PauliString> {
        self.elements.iter()
    }

    /// Phaseless membership.
    pub fn contains(&self, p: &PauliString) -> bool {
        self.keys.contains(&key(p))
    }

    /// Copy of the pool with element `i` removed.
    pub fn without(&self, i: usize) -> Pool {
        let mut out = Pool::new(self.n);
        for (k, (p, o)) in self.elements.iter().zip(&self.origins).enumerate() {
            if k != i {
                out.push(p.clone(), *o).expect("subset of a valid pool");
            }
        }
        out
    }

    /// Copy of the pool with `p` appended.
    pub fn with(&self, p: PauliString, origin: Origin) -> Result<Pool, PoolError> {
        let mut out = self.clone();
        out.push(p, origin)?;
        Ok(out)
    }

    /// Marks every element with `origin`.
    pub fn relabeled(mut self, origin: Origin) -> Pool {
        self.origins.iter_mut().for_each(|o| *o = origin);
        self
    }

    fn check_index(&self, i: usize) -> Result<(), PoolError> {
        if i >= self.len() {
            return Err(PoolError::IndexOutOfRange {
                index: i,
                size: self.len(),
            });
        }
        Ok(())
    }

    /// Symplectic vectors of all elements as rows of a `|A| × 2n` matrix.
    pub fn symplectic_matrix(&self) -> BitMatrix {
        let rows = self.elements.iter().map(|p| p.to_symplectic().bits().clone()).collect();
        BitMatrix::from_rows(rows).unwrap_or_else(|_| BitMatrix::zeros(0, 2 * self.n))
    }
}

impl fmt::Debug for Pool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.elements.iter().map(|p| p.label())).finish()
    }
}

impl<'a> IntoIterator for &'a Pool {
    type Item = &'a PauliString;
    type IntoIter = std::slice::Iter<'a, PauliString>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

/// Symmetric zero-diagonal anti-commutation matrix of a pool.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GammaMatrix(BitMatrix);

impl GammaMatrix {
    pub fn matrix(&self) -> &BitMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> BitMatrix {
        self.0
    }

    pub fn size(&self) -> usize {
        self.0.nrows()
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }
}

impl TryFrom<BitMatrix> for GammaMatrix {
    type Error = F2Error;

    fn try_from(m: BitMatrix) -> Result<Self, Self::Error> {
        m.check_alternating()?;
        Ok(GammaMatrix(m))
    }
}

impl fmt::Display for GammaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Entry `(i, j)` is 1 exactly when elements `i` and `j` anticommute.
pub fn build_gamma(pool: &Pool) -> GammaMatrix {
    let m = pool.len();
    let mut g = BitMatrix::zeros(m, m);
    let elems = pool.elements();
    for i in 0..m {
        for j in i + 1..m {
            if elems[i].symplectic_form(&elems[j]) {
                g.set(i, j, true);
                g.set(j, i, true);
            }
        }
    }
    GammaMatrix(g)
}

/// Contracts element `i` onto element `j`: `P_j` becomes the phaseless
/// product `P_j · P_i`, every other element is untouched.
pub fn contract(pool: &Pool, i: usize, j: usize) -> Result<Pool, PoolError> {
    pool.check_index(i)?;
    pool.check_index(j)?;
    if i == j {
        return Err(PoolError::SameIndex(i));
    }
    let (pi, pj) = (&pool.elements[i], &pool.elements[j]);
    if !pi.symplectic_form(pj) {
        return Err(PoolError::Commuting(i, j));
    }
    let replaced = pj.multiply(pi)?.phaseless();
    let mut out = Pool::new(pool.n);
    for (k, (p, o)) in pool.elements.iter().zip(&pool.origins).enumerate() {
        let p = if k == j { replaced.clone() } else { p.clone() };
        out.push(p, *o).map_err(|e| match e {
            PoolError::Duplicate { label, .. } => PoolError::Duplicate { index: j, label },
            other => other,
        })?;
    }
    Ok(out)
}

/// Γ of the contracted pool computed directly on the matrix:
/// `Eᵀ Γ E` with `E = I + e_i e_jᵀ`.
pub fn gamma_after_contraction(g: &GammaMatrix, i: usize, j: usize) -> Result<GammaMatrix, PoolError> {
    let size = g.size();
    for idx in [i, j] {
        if idx >= size {
            return Err(PoolError::IndexOutOfRange { index: idx, size });
        }
    }
    if i == j {
        return Err(PoolError::SameIndex(i));
    }
    if !g.0.get(i, j) {
        return Err(PoolError::Commuting(i, j));
    }
    Ok(GammaMatrix(g.0.congruence_add(i, j)?))
}

/// Same size and same rank; for alternating matrices over F2 that is the
/// full congruence invariant.
pub fn congruent(g1: &GammaMatrix, g2: &GammaMatrix) -> bool {
    g1.size() == g2.size() && g1.rank() == g2.rank()
}

/// Invertible `P` with `Pᵀ g1 P = g2`, composed from the two canonical
/// certificates; `None` when the ranks differ.
pub fn find_congruence(g1: &GammaMatrix, g2: &GammaMatrix) -> Result<Option<BitMatrix>, F2Error> {
    if g1.size() != g2.size() {
        return Err(F2Error::ShapeMismatch {
            left: g1.0.shape(),
            right: g2.0.shape(),
        });
    }
    let c1 = canonical_congruence(&g1.0)?;
    let c2 = canonical_congruence(&g2.0)?;
    if c1.rank != c2.rank {
        return Ok(None);
    }
    // P1ᵀ g1 P1 = C = P2ᵀ g2 P2  ⇒  (P1 P2⁻¹)ᵀ g1 (P1 P2⁻¹) = g2
    let p = c1.p.mul(&c2.p.invert()?)?;
    Ok(Some(p))
}
