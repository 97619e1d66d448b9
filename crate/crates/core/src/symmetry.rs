//! Symmetry-sector predicates for pool elements.
//!
//! Spin orbitals are taken in interleaved order: odd qubits (1, 3, 5, …) are
//! spin-up, even qubits (2, 4, 6, …) are spin-down. A string has the even-flip
//! property when it flips an even number of qubits inside each spin species.

use serde::{Deserialize, Serialize};

use crate::pauli::{PauliError, PauliString};

/// Enabled sector predicates; every enabled one must hold.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryConstraints {
    #[serde(default)]
    pub odd_y: bool,
    #[serde(default)]
    pub even_flip: bool,
    #[serde(default, with = "pauli_list")]
    pub commute_with: Vec<PauliString>,
    #[serde(default)]
    pub note: String,
}

impl SymmetryConstraints {
    pub fn none() -> Self {
        Self::default()
    }

    /// Odd Y-count with even flips per spin species.
    pub fn chemistry() -> Self {
        SymmetryConstraints {
            odd_y: true,
            even_flip: true,
            ..Self::default()
        }
    }

    pub fn odd_y_only() -> Self {
        SymmetryConstraints {
            odd_y: true,
            ..Self::default()
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.odd_y && !self.even_flip && self.commute_with.is_empty()
    }

    /// All `commute_with` operators must act on `n` qubits.
    pub fn validate(&self, n: usize) -> Result<(), PauliError> {
        for s in &self.commute_with {
            if s.num_qubits() != n {
                return Err(PauliError::SizeMismatch {
                    left: n,
                    right: s.num_qubits(),
                });
            }
        }
        Ok(())
    }

    /// Whether `p` lies in the sector. Size mismatches never pass.
    pub fn admits(&self, p: &PauliString) -> bool {
        (!self.odd_y || is_odd_string(p))
            && (!self.even_flip || is_even_flip(p))
            && commutes_with_all(p, &self.commute_with).unwrap_or(false)
    }

    /// Short human-readable summary used in reports.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.odd_y {
            parts.push("odd_y".to_string());
        }
        if self.even_flip {
            parts.push("even_flip".to_string());
        }
        if !self.commute_with.is_empty() {
            let ops: Vec<String> = self.commute_with.iter().map(|p| p.label()).collect();
            parts.push(format!("commute_with[{}]", ops.join(",")));
        }
        if parts.is_empty() {
            parts.push("none".to_string());
        }
        parts.join("+")
    }
}

/// Odd number of Y sites.
pub fn is_odd_string(p: &PauliString) -> bool {
    p.y_count() % 2 == 1
}

/// Flipped-qubit counts `(spin_up, spin_down)`: X or Y on odd and on even qubits.
pub fn flip_counts(p: &PauliString) -> (usize, usize) {
    p.x_bits().iter_ones().fold((0, 0), |(up, down), q| {
        // q is 0-based, so qubit q + 1 is odd exactly when q is even
        if q % 2 == 0 {
            (up + 1, down)
        } else {
            (up, down + 1)
        }
    })
}

/// Even number of flips within each spin species.
pub fn is_even_flip(p: &PauliString) -> bool {
    let (up, down) = flip_counts(p);
    up % 2 == 0 && down % 2 == 0
}

pub fn commutes_with_all(p: &PauliString, ops: &[PauliString]) -> Result<bool, PauliError> {
    for s in ops {
        if !p.commutes(s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Order-preserving filter keeping strings that pass every enabled predicate.
pub fn filter<'a, I>(candidates: I, constraints: &'a SymmetryConstraints) -> impl Iterator<Item = PauliString> + 'a
where
    I: IntoIterator<Item = PauliString>,
    I::IntoIter: 'a,
{
    candidates.into_iter().filter(move |p| constraints.admits(p))
}

mod pauli_list {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::pauli::PauliString;

    pub fn serialize<S: Serializer>(ops: &[PauliString], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(ops.iter().map(|p| p.label()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<PauliString>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| PauliString::parse(s, None).map_err(D::Error::custom))
            .collect()
    }
}
