use super::operator::PauliSum;
use super::state::{inner, PauliAction, Statevector};
use super::{check_qubits, VqeError};
use crate::pauli::PauliString;
use crate::scalar::Real;

/// How the steps of an ansatz were laid out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    /// Grown one batch at a time.
    Adaptive,
    /// `k_layers` copies of a pool of `pool_size` generators.
    Layered { k_layers: usize, pool_size: usize },
}

/// Parses a reference bitstring such as `0101` (qubit 1 first) into a basis index.
pub fn parse_reference(n: usize, text: &str) -> Result<usize, VqeError> {
    let text = text.trim();
    if text.len() != n {
        return Err(VqeError::Reference(format!("expected {n} bits, got {:?}", text)));
    }
    text.chars().try_fold(0usize, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(VqeError::Reference(format!("invalid bit {c:?}"))),
    })
}

/// `|Ψ⟩ = e^{iθ_K P_K} ⋯ e^{iθ_1 P_1} |reference⟩`; step 1 acts first.
#[derive(Clone, Debug, PartialEq)]
pub struct Ansatz<T> {
    n: usize,
    reference: usize,
    generators: Vec<PauliString>,
    thetas: Vec<T>,
    layout: Layout,
}

impl<T: Real> Ansatz<T> {
    pub fn new(n: usize, reference: usize) -> Self {
        Ansatz {
            n,
            reference,
            generators: Vec::new(),
            thetas: Vec::new(),
            layout: Layout::Adaptive,
        }
    }

    /// `k_layers × |pool|` steps, pool order within each layer, all angles zero.
    pub fn layered(n: usize, reference: usize, pool: &[PauliString], k_layers: usize) -> Result<Self, VqeError> {
        if pool.is_empty() {
            return Err(VqeError::EmptyPool);
        }
        if k_layers == 0 {
            return Err(VqeError::NoLayers);
        }
        let mut a = Ansatz::new(n, reference);
        for _ in 0..k_layers {
            for p in pool {
                a.push(p.clone(), T::zero())?;
            }
        }
        a.layout = Layout::Layered {
            k_layers,
            pool_size: pool.len(),
        };
        Ok(a)
    }

    pub fn push(&mut self, generator: PauliString, theta: T) -> Result<(), VqeError> {
        check_qubits(self.n, generator.num_qubits())?;
        self.generators.push(generator.phaseless());
        self.thetas.push(theta);
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn reference(&self) -> usize {
        self.reference
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn thetas(&self) -> &[T] {
        &self.thetas
    }

    pub fn set_thetas(&mut self, thetas: &[T]) {
        assert_eq!(thetas.len(), self.thetas.len(), "parameter count");
        self.thetas.copy_from_slice(thetas);
    }

    pub fn cnot_estimate(&self) -> usize {
        cnot_estimate(&self.generators)
    }

    fn actions(&self) -> Vec<PauliAction> {
        self.generators.iter().map(|p| PauliAction::new(p, self.n)).collect()
    }

    /// State for the given angles.
    pub fn state_at(&self, thetas: &[T]) -> Result<Statevector<T>, VqeError> {
        let mut s = Statevector::basis(self.n, self.reference)?;
        for (a, t) in self.actions().iter().zip(thetas) {
            a.evolve(s.amps_mut(), *t);
        }
        Ok(s)
    }

    pub fn state(&self) -> Result<Statevector<T>, VqeError> {
        self.state_at(&self.thetas)
    }

    pub fn energy_at(&self, h: &PauliSum<T>, thetas: &[T]) -> Result<T, VqeError> {
        self.state_at(thetas)?.energy(h)
    }

    /// Energy and all parameter derivatives by one forward and one backward sweep.
    pub fn energy_and_gradient(&self, h: &PauliSum<T>, thetas: &[T]) -> Result<(T, Vec<T>), VqeError> {
        check_qubits(self.n, h.num_qubits())?;
        let actions = self.actions();
        let psi = self.state_at(thetas)?;
        let hpsi = psi.apply_operator(h)?;
        let e = inner(psi.amplitudes(), hpsi.amplitudes()).re;
        let mut phi = psi;
        let mut lambda = hpsi;
        let mut grad = vec![T::zero(); thetas.len()];
        let two = T::one() + T::one();
        for k in (0..actions.len()).rev() {
            let pphi = actions[k].apply(phi.amplitudes());
            grad[k] = -two * inner(lambda.amplitudes(), &pphi).im;
            actions[k].evolve(phi.amps_mut(), -thetas[k]);
            actions[k].evolve(lambda.amps_mut(), -thetas[k]);
        }
        Ok((e, grad))
    }
}

/// Staircase CNOT count: `Σ 2·(weight − 1)` over generators of weight at least 2.
pub fn cnot_estimate(generators: &[PauliString]) -> usize {
    generators.iter().map(|p| 2 * p.weight().saturating_sub(1)).sum()
}
