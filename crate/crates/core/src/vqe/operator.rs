use num_complex::Complex;

use super::{check_qubits, VqeError};
use crate::pauli::PauliString;
use crate::scalar::Real;

/// Real linear combination of phaseless Pauli strings.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum<T> {
    n: usize,
    terms: Vec<(T, PauliString)>,
}

impl<T: Real> PauliSum<T> {
    pub fn new(n: usize) -> Self {
        PauliSum { n, terms: Vec::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = (T, PauliString)>>(n: usize, terms: I) -> Result<Self, VqeError> {
        let mut h = PauliSum::new(n);
        for (c, p) in terms {
            h.add_term(c, p)?;
        }
        Ok(h)
    }

    /// Adds `c·p`, merging with an existing term on the same string.
    /// A phase of −1 is folded into the coefficient; ±i is rejected.
    pub fn add_term(&mut self, c: T, p: PauliString) -> Result<(), VqeError> {
        check_qubits(self.n, p.num_qubits())?;
        let c = match p.phase_exp() {
            0 => c,
            2 => -c,
            _ => return Err(VqeError::NonHermitian(p.to_string())),
        };
        let p = p.phaseless();
        match self.terms.iter_mut().find(|(_, q)| q.same_string(&p)) {
            Some((coef, _)) => *coef += c,
            None => self.terms.push((c, p)),
        }
        Ok(())
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(T, PauliString)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same operator with another scalar type.
    pub fn cast<U: Real>(&self) -> PauliSum<U> {
        PauliSum {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (U::of(c.to_f64_lossy()), p.clone()))
                .collect(),
        }
    }

    /// `H·v` on raw amplitudes.
    pub(crate) fn apply_raw(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut out = vec![Complex::new(T::zero(), T::zero()); v.len()];
        for (c, p) in &self.terms {
            let action = super::state::PauliAction::new(p, self.n);
            action.accumulate(v, *c, &mut out);
        }
        out
    }
}
