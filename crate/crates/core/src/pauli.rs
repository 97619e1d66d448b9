//! Phase-tracked Pauli strings in symplectic bit form.
//!
//! A string on `n` qubits is stored as two length-`n` bit vectors: `x` marks
//! sites carrying X or Y, `z` marks sites carrying Z or Y. The operator is
//! `i^phase * (s_1 ⊗ ... ⊗ s_n)` where each `s_q` is the ordinary Pauli
//! matrix I, X, Y or Z selected by the pair `(x_q, z_q)`.
//!
//! Text forms put qubit 1 first: `"XYZI"` is X on qubit 1, Y on qubit 2 and
//! Z on qubit 3. The sparse form `"X1 Y2 Z3"` (1-indexed) names the same
//! operator when the qubit count is supplied.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bits::BitVec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("empty Pauli string")]
    Empty,
    #[error("invalid character {ch:?} at position {pos}")]
    InvalidCharacter { ch: char, pos: usize },
    #[error("qubit {0} appears more than once")]
    DuplicateIndex(usize),
    #[error("qubit index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("sparse Pauli string needs an explicit qubit count")]
    MissingQubitCount,
    #[error("expected {expected} qubits, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("operands act on {left} and {right} qubits")]
    SizeMismatch { left: usize, right: usize },
    #[error("symplectic vector has odd length {0}")]
    OddLength(usize),
}

/// Pauli operator `i^phase * s_1 ⊗ ... ⊗ s_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    x: BitVec,
    z: BitVec,
    phase: u8,
}

/// `φ(P) = [x_1 … x_n z_1 … z_n]`; the phase is dropped.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticVector {
    bits: BitVec,
}

impl SymplecticVector {
    pub fn new(bits: BitVec) -> Result<Self, PauliError> {
        if !bits.len().is_multiple_of(2) {
            return Err(PauliError::OddLength(bits.len()));
        }
        Ok(SymplecticVector { bits })
    }

    pub fn from_bits_str(s: &str) -> Result<Self, PauliError> {
        let mut bools = Vec::new();
        for (pos, ch) in s.chars().filter(|c| !c.is_whitespace()).enumerate() {
            match ch {
                '0' => bools.push(false),
                '1' => bools.push(true),
                _ => return Err(PauliError::InvalidCharacter { ch, pos }),
            }
        }
        Self::new(BitVec::from_bools(bools))
    }

    pub fn num_qubits(&self) -> usize {
        self.bits.len() / 2
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn x_part(&self) -> BitVec {
        self.bits.slice(0, self.num_qubits())
    }

    pub fn z_part(&self) -> BitVec {
        let n = self.num_qubits();
        self.bits.slice(n, n)
    }
}

impl fmt::Display for SymplecticVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}]", self.x_part(), self.z_part())
    }
}

impl fmt::Debug for SymplecticVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymplecticVector{self}")
    }
}

fn site_char(x: bool, z: bool) -> char {
    match (x, z) {
        (false, false) => 'I',
        (true, false) => 'X',
        (true, true) => 'Y',
        (false, true) => 'Z',
    }
}

fn char_bits(ch: char) -> Option<(bool, bool)> {
    match ch {
        'I' => Some((false, false)),
        'X' => Some((true, false)),
        'Y' => Some((true, true)),
        'Z' => Some((false, true)),
        _ => None,
    }
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            phase: 0,
        }
    }

    /// Builds a phase-free string from its X and Z supports.
    pub fn from_parts(x: BitVec, z: BitVec) -> Result<Self, PauliError> {
        if x.len() != z.len() {
            return Err(PauliError::SizeMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        Ok(PauliString { x, z, phase: 0 })
    }

    /// Single-site operator `kind` (one of `IXYZ`) on 0-based qubit `q`.
    pub fn single(n: usize, q: usize, kind: char) -> Result<Self, PauliError> {
        let (xb, zb) = char_bits(kind).ok_or(PauliError::InvalidCharacter { ch: kind, pos: 0 })?;
        if q >= n {
            return Err(PauliError::IndexOutOfRange { index: q + 1, n });
        }
        let mut p = PauliString::identity(n);
        p.x.set(q, xb);
        p.z.set(q, zb);
        Ok(p)
    }

    /// Parses dense (`"IXYZ"`) or sparse (`"X1 Y2 Z3"`, 1-indexed) text.
    ///
    /// Sparse text is recognised by the presence of digits and requires `n`.
    /// Dense text must match `n` when it is given.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self, PauliError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(PauliError::Empty);
        }
        if text.chars().any(|c| c.is_ascii_digit()) {
            let n = n.ok_or(PauliError::MissingQubitCount)?;
            return Self::parse_sparse(text, n);
        }
        let mut bits = Vec::with_capacity(text.len());
        for (pos, ch) in text.chars().enumerate() {
            bits.push(char_bits(ch).ok_or(PauliError::InvalidCharacter { ch, pos })?);
        }
        if let Some(n) = n {
            if bits.len() != n {
                return Err(PauliError::LengthMismatch {
                    expected: n,
                    found: bits.len(),
                });
            }
        }
        Ok(PauliString {
            x: BitVec::from_bools(bits.iter().map(|b| b.0)),
            z: BitVec::from_bools(bits.iter().map(|b| b.1)),
            phase: 0,
        })
    }

    fn parse_sparse(text: &str, n: usize) -> Result<Self, PauliError> {
        let mut p = PauliString::identity(n);
        let mut seen = vec![false; n];
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        while pos < chars.len() {
            let ch = chars[pos];
            if ch.is_whitespace() {
                pos += 1;
                continue;
            }
            let (xb, zb) = char_bits(ch).ok_or(PauliError::InvalidCharacter { ch, pos })?;
            pos += 1;
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                let ch = chars.get(pos).copied().unwrap_or(ch);
                return Err(PauliError::InvalidCharacter { ch, pos });
            }
            let digits: String = chars[start..pos].iter().collect();
            let index: usize = digits
                .parse()
                .map_err(|_| PauliError::IndexOutOfRange { index: usize::MAX, n })?;
            if index == 0 || index > n {
                return Err(PauliError::IndexOutOfRange { index, n });
            }
            if seen[index - 1] {
                return Err(PauliError::DuplicateIndex(index));
            }
            seen[index - 1] = true;
            p.x.set(index - 1, xb);
            p.z.set(index - 1, zb);
        }
        Ok(p)
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    #[inline]
    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    /// Exponent `k` of the global factor `i^k`.
    #[inline]
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, phase_exp: u8) -> Self {
        self.phase = phase_exp % 4;
        self
    }

    /// Same string with the global phase removed.
    pub fn phaseless(&self) -> PauliString {
        PauliString {
            x: self.x.clone(),
            z: self.z.clone(),
            phase: 0,
        }
    }

    /// Equality of the underlying strings, ignoring phase.
    pub fn same_string(&self, other: &PauliString) -> bool {
        self.x == other.x && self.z == other.z
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Operator on 0-based qubit `q` as one of `IXYZ`.
    pub fn site(&self, q: usize) -> char {
        site_char(self.x.get(q), self.z.get(q))
    }

    /// Number of non-identity sites.
    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    /// Number of Y sites.
    pub fn y_count(&self) -> usize {
        self.x.and_count(&self.z)
    }

    pub fn to_symplectic(&self) -> SymplecticVector {
        SymplecticVector {
            bits: self.x.concat(&self.z),
        }
    }

    pub fn from_symplectic(v: &SymplecticVector) -> PauliString {
        PauliString {
            x: v.x_part(),
            z: v.z_part(),
            phase: 0,
        }
    }

    fn check_size(&self, other: &PauliString) -> Result<(), PauliError> {
        if self.num_qubits() != other.num_qubits() {
            return Err(PauliError::SizeMismatch {
                left: self.num_qubits(),
                right: other.num_qubits(),
            });
        }
        Ok(())
    }

    /// Symplectic form `<x_a, z_b> + <z_a, x_b> mod 2`; `true` means anticommuting.
    #[inline]
    pub(crate) fn symplectic_form(&self, other: &PauliString) -> bool {
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }

    pub fn commutes(&self, other: &PauliString) -> Result<bool, PauliError> {
        self.check_size(other)?;
        Ok(!self.symplectic_form(other))
    }

    /// Exact product `self · other`.
    ///
    /// Writing each site as `s = i^{xz} X^x Z^z`, the product reorders
    /// `Z^{z_a} X^{x_b}` at the cost of `(-1)^{<z_a, x_b>}` and converts back,
    /// so the phase is `p_a + p_b + y_a + y_b + 2<z_a, x_b> - y_c (mod 4)`.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString, PauliError> {
        self.check_size(other)?;
        let x = self.x.xor(&other.x);
        let z = self.z.xor(&other.z);
        let y_c = x.and_count(&z);
        let swap = self.z.and_count(&other.x);
        let phase = (self.phase as usize
            + other.phase as usize
            + self.y_count()
            + other.y_count()
            + 2 * swap
            + (4 - y_c % 4))
            % 4;
        Ok(PauliString {
            x,
            z,
            phase: phase as u8,
        })
    }

    /// `[self, other] = self·other − other·self`.
    ///
    /// Returns `None` when the strings commute, otherwise `(s, 2)` with the
    /// dense commutator equal to `2 · s` (the sign lives in the phase of `s`).
    pub fn commutator(&self, other: &PauliString) -> Result<Option<(PauliString, u8)>, PauliError> {
        if self.commutes(other)? {
            return Ok(None);
        }
        Ok(Some((self.multiply(other)?, 2)))
    }

    /// Dense text with no phase prefix.
    pub fn label(&self) -> String {
        (0..self.num_qubits()).map(|q| self.site(q)).collect()
    }

    /// Sparse 1-indexed text such as `Z1 Z2 X3 Y4`; `I` for the identity.
    pub fn sparse_label(&self) -> String {
        let parts: Vec<String> = (0..self.num_qubits())
            .filter(|&q| self.site(q) != 'I')
            .map(|q| format!("{}{}", self.site(q), q + 1))
            .collect();
        if parts.is_empty() {
            "I".to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i", "-", "-i"][self.phase as usize];
        write!(f, "{prefix}{}", self.label())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    /// Dense text with an optional phase prefix (`-`, `i`, `-i`, `+`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (phase, rest) = if let Some(r) = s.strip_prefix("-i") {
            (3, r)
        } else if let Some(r) = s.strip_prefix("+i") {
            (1, r)
        } else if let Some(r) = s.strip_prefix('i') {
            (1, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (2, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (0, r)
        } else {
            (0, s)
        };
        Ok(PauliString::parse(rest, None)?.with_phase(phase))
    }
}
