use num_complex::Complex;

use super::operator::PauliSum;
use super::{check_qubits, VqeError, STATE_MAX_QUBITS};
use crate::pauli::PauliString;
use crate::scalar::Real;

/// Basis-index form of a Pauli string: `P|b⟩ = i^quarter · (−1)^{|b ∧ z|} |b ⊕ x⟩`.
///
/// Qubit 1 is the most significant bit of the basis index.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PauliAction {
    x: usize,
    z: usize,
    quarter: u8,
}

impl PauliAction {
    pub(crate) fn new(p: &PauliString, n: usize) -> Self {
        let mask = |bits: &crate::bits::BitVec| bits.iter_ones().fold(0usize, |m, q| m | (1 << (n - 1 - q)));
        let quarter = ((p.y_count() % 4) as u8 + p.phase_exp()) % 4;
        PauliAction {
            x: mask(p.x_bits()),
            z: mask(p.z_bits()),
            quarter,
        }
    }

    #[inline]
    fn factor<T: Real>(&self, b: usize) -> Complex<T> {
        let sign = (b & self.z).count_ones() & 1;
        let q = (self.quarter as u32 + 2 * sign) % 4;
        let (o, z) = (T::one(), T::zero());
        match q {
            0 => Complex::new(o, z),
            1 => Complex::new(z, o),
            2 => Complex::new(-o, z),
            _ => Complex::new(z, -o),
        }
    }

    /// `out += c · P v`.
    pub(crate) fn accumulate<T: Real>(&self, v: &[Complex<T>], c: T, out: &mut [Complex<T>]) {
        for (b, a) in v.iter().enumerate() {
            out[b ^ self.x] += self.factor::<T>(b) * a * c;
        }
    }

    pub(crate) fn apply<T: Real>(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut out = vec![Complex::new(T::zero(), T::zero()); v.len()];
        for (b, a) in v.iter().enumerate() {
            out[b ^ self.x] = self.factor::<T>(b) * a;
        }
        out
    }

    /// `⟨v|P|v⟩`.
    pub(crate) fn expectation<T: Real>(&self, v: &[Complex<T>]) -> Complex<T> {
        v.iter()
            .enumerate()
            .map(|(b, a)| v[b ^ self.x].conj() * self.factor::<T>(b) * a)
            .fold(Complex::new(T::zero(), T::zero()), |s, t| s + t)
    }

    /// `v ← e^{iθP} v = cos θ · v + i sin θ · P v`.
    pub(crate) fn evolve<T: Real>(&self, v: &mut [Complex<T>], theta: T) {
        let (s, c) = theta.sin_cos();
        let pv = self.apply(v);
        let is = Complex::new(T::zero(), s);
        for (a, p) in v.iter_mut().zip(pv) {
            *a = *a * c + is * p;
        }
    }
}

pub(crate) fn inner<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .fold(Complex::new(T::zero(), T::zero()), |s, t| s + t)
}

/// Pure state of `n` qubits as `2^n` complex amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct Statevector<T> {
    n: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> Statevector<T> {
    /// Computational basis state `|b⟩`, qubit 1 most significant.
    pub fn basis(n: usize, index: usize) -> Result<Self, VqeError> {
        if n > STATE_MAX_QUBITS {
            return Err(VqeError::TooManyQubits {
                n,
                limit: STATE_MAX_QUBITS,
            });
        }
        let dim = 1usize << n;
        if index >= dim {
            return Err(VqeError::Reference(format!("index {index} outside 2^{n}")));
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); dim];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(Statevector { n, amps })
    }

    pub fn zeros(n: usize) -> Result<Self, VqeError> {
        Self::basis(n, 0)
    }

    /// Normalizes the given amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self, VqeError> {
        let dim = amps.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(VqeError::Reference(format!("{dim} amplitudes is not a power of two")));
        }
        let n = dim.trailing_zeros() as usize;
        let mut s = Statevector { n, amps };
        let norm = s.norm();
        if norm == T::zero() {
            return Err(VqeError::Reference("zero vector".into()));
        }
        s.amps.iter_mut().for_each(|a| *a /= norm);
        Ok(s)
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt()
    }

    /// `P|s⟩` including the string's phase.
    pub fn apply_pauli(&self, p: &PauliString) -> Result<Self, VqeError> {
        check_qubits(self.n, p.num_qubits())?;
        Ok(Statevector {
            n: self.n,
            amps: PauliAction::new(p, self.n).apply(&self.amps),
        })
    }

    /// In-place `e^{iθP}`.
    pub fn evolve(&mut self, p: &PauliString, theta: T) -> Result<(), VqeError> {
        check_qubits(self.n, p.num_qubits())?;
        PauliAction::new(&p.phaseless(), self.n).evolve(&mut self.amps, theta);
        Ok(())
    }

    /// `e^{iθP}|s⟩`.
    pub fn apply_pauli_evolution(&self, p: &PauliString, theta: T) -> Result<Self, VqeError> {
        let mut out = self.clone();
        out.evolve(p, theta)?;
        Ok(out)
    }

    pub fn inner(&self, other: &Statevector<T>) -> Result<Complex<T>, VqeError> {
        check_qubits(self.n, other.n)?;
        Ok(inner(&self.amps, &other.amps))
    }

    /// `⟨s|P|s⟩`.
    pub fn expectation(&self, p: &PauliString) -> Result<Complex<T>, VqeError> {
        check_qubits(self.n, p.num_qubits())?;
        Ok(PauliAction::new(p, self.n).expectation(&self.amps))
    }

    /// `Σ c_t Re⟨s|P_t|s⟩`.
    pub fn energy(&self, h: &PauliSum<T>) -> Result<T, VqeError> {
        check_qubits(self.n, h.num_qubits())?;
        Ok(h.terms()
            .iter()
            .map(|(c, p)| *c * PauliAction::new(p, self.n).expectation(&self.amps).re)
            .sum())
    }

    /// `H|s⟩`.
    pub fn apply_operator(&self, h: &PauliSum<T>) -> Result<Self, VqeError> {
        check_qubits(self.n, h.num_qubits())?;
        Ok(Statevector {
            n: self.n,
            amps: h.apply_raw(&self.amps),
        })
    }

    /// `d/dθ ⟨s|e^{−iθP} H e^{iθP}|s⟩` at zero, i.e. `−2 Im⟨s|H P|s⟩`.
    pub fn adapt_gradient(&self, h: &PauliSum<T>, p: &PauliString) -> Result<T, VqeError> {
        let hs = self.apply_operator(h)?;
        hs.adapt_gradient_with(self, p)
    }

    /// Gradient given `self = H|s⟩` already computed for `s`.
    pub(crate) fn adapt_gradient_with(&self, s: &Statevector<T>, p: &PauliString) -> Result<T, VqeError> {
        check_qubits(self.n, p.num_qubits())?;
        let ps = PauliAction::new(&p.phaseless(), self.n).apply(&s.amps);
        Ok(-(T::one() + T::one()) * inner(&self.amps, &ps).im)
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.amps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn close(a: Complex<f64>, b: Complex<f64>) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn single_qubit_evolutions() {
        let t = 0.3f64;
        let s = Statevector::<f64>::zeros(1).unwrap();
        let x = s.apply_pauli_evolution(&p("X"), t).unwrap();
        assert!(close(x.amplitudes()[0], Complex::new(t.cos(), 0.0)));
        assert!(close(x.amplitudes()[1], Complex::new(0.0, t.sin())));
        let y = s.apply_pauli_evolution(&p("Y"), t).unwrap();
        assert!(close(y.amplitudes()[0], Complex::new(t.cos(), 0.0)));
        assert!(close(y.amplitudes()[1], Complex::new(-t.sin(), 0.0)));
        assert_eq!(s.apply_pauli_evolution(&p("Z"), 0.0).unwrap(), s);
    }

    #[test]
    fn qubit_one_is_most_significant() {
        let s = Statevector::<f64>::zeros(2).unwrap();
        let flipped = s.apply_pauli(&p("XI")).unwrap();
        assert!(close(flipped.amplitudes()[2], Complex::new(1.0, 0.0)));
    }

    #[test]
    fn energy_examples() {
        let z = PauliSum::from_terms(1, [(1.0, p("Z"))]).unwrap();
        let zero = Statevector::<f64>::zeros(1).unwrap();
        assert!((zero.energy(&z).unwrap() - 1.0).abs() < 1e-12);
        let plus = Statevector::from_amplitudes(vec![Complex::new(1.0, 0.0), Complex::new(1.0, 0.0)]).unwrap();
        assert!(plus.energy(&z).unwrap().abs() < 1e-12);
    }

    #[test]
    fn adapt_gradient_examples() {
        let x = PauliSum::from_terms(1, [(1.0, p("X"))]).unwrap();
        let zero = Statevector::<f64>::zeros(1).unwrap();
        assert!((zero.adapt_gradient(&x, &p("Y")).unwrap() + 2.0).abs() < 1e-12);
        let z = PauliSum::from_terms(1, [(1.0, p("Z"))]).unwrap();
        assert!(zero.adapt_gradient(&z, &p("Z")).unwrap().abs() < 1e-12);
    }

    #[test]
    fn single_precision_runs() {
        let s = Statevector::<f32>::zeros(2).unwrap();
        let e = s.apply_pauli_evolution(&p("XY"), 0.7).unwrap();
        assert!((e.norm() - 1.0).abs() < 1e-6);
    }
}
