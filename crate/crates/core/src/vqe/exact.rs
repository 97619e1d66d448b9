use nalgebra::DMatrix;
use num_complex::Complex;

use super::operator::PauliSum;
use super::VqeError;
use crate::scalar::Real;

/// Largest register for dense diagonalization.
pub const EXACT_MAX_QUBITS: usize = 12;

/// Dense `2^n × 2^n` matrix of `h` in double precision.
pub fn dense_matrix<T: Real>(h: &PauliSum<T>) -> Result<DMatrix<Complex<f64>>, VqeError> {
    let n = h.num_qubits();
    if n > EXACT_MAX_QUBITS {
        return Err(VqeError::TooManyQubits {
            n,
            limit: EXACT_MAX_QUBITS,
        });
    }
    let dim = 1usize << n;
    let h64: PauliSum<f64> = h.cast();
    let mut m = DMatrix::from_element(dim, dim, Complex::new(0.0, 0.0));
    let mut e = vec![Complex::new(0.0, 0.0); dim];
    for col in 0..dim {
        e[col] = Complex::new(1.0, 0.0);
        let out = h64.apply_raw(&e);
        for (row, v) in out.into_iter().enumerate() {
            m[(row, col)] = v;
        }
        e[col] = Complex::new(0.0, 0.0);
    }
    Ok(m)
}

/// Lowest eigenvalue of `h` by dense Hermitian diagonalization.
pub fn dense_ground_energy<T: Real>(h: &PauliSum<T>) -> Result<T, VqeError> {
    let m = dense_matrix(h)?;
    let real = m.iter().all(|v| v.im == 0.0);
    let lowest = if real {
        m.map(|v| v.re).symmetric_eigenvalues().min()
    } else {
        m.symmetric_eigenvalues().min()
    };
    Ok(T::of(lowest))
}
