use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::ansatz::Ansatz;
use super::exact::dense_ground_energy;
use super::operator::PauliSum;
use super::optimize::{minimize_bfgs, OptimizerConfig};
use super::{check_qubits, VqeError};
use crate::pauli::PauliString;
use crate::scalar::Real;

/// Batched ADAPT settings; `batch_k = 1` is plain single-operator growth.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdaptConfig {
    pub batch_k: usize,
    pub eps_grad: f64,
    pub max_outer: usize,
    pub optimizer: OptimizerConfig,
    /// Basis index of the reference state.
    pub reference: usize,
    /// Recorded for reproducibility; the run itself draws no random numbers.
    pub seed: u64,
}

impl Default for AdaptConfig {
    fn default() -> Self {
        AdaptConfig {
            batch_k: 1,
            eps_grad: 1e-6,
            max_outer: 50,
            optimizer: OptimizerConfig::default(),
            reference: 0,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NiDuccConfig {
    pub k_layers: usize,
    pub optimizer: OptimizerConfig,
    pub reference: usize,
    pub seed: u64,
}

impl Default for NiDuccConfig {
    fn default() -> Self {
        NiDuccConfig {
            k_layers: 1,
            optimizer: OptimizerConfig::default(),
            reference: 0,
            seed: 0,
        }
    }
}

/// One outer iteration; row 0 is the reference state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceRow<T> {
    pub iteration: usize,
    pub energy: T,
    pub abs_error: T,
    /// Cumulative energy and gradient evaluations.
    pub fevals: usize,
    pub params: usize,
    pub cnots: usize,
    pub selected: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunTrace<T> {
    pub exact_energy: T,
    pub rows: Vec<TraceRow<T>>,
    pub ansatz: Ansatz<T>,
}

impl<T: Real> RunTrace<T> {
    pub fn final_row(&self) -> &TraceRow<T> {
        self.rows.last().expect("trace has a reference row")
    }

    pub fn final_error(&self) -> T {
        self.final_row().abs_error
    }

    /// `iteration,energy,abs_error,fevals,params,cnots`, one line per row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("iteration,energy,abs_error,fevals,params,cnots\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{:.12e},{:.6e},{},{},{}",
                r.iteration,
                r.energy.to_f64_lossy(),
                r.abs_error.to_f64_lossy(),
                r.fevals,
                r.params,
                r.cnots
            );
        }
        out
    }
}

fn check_pool(n: usize, pool: &[PauliString]) -> Result<(), VqeError> {
    if pool.is_empty() {
        return Err(VqeError::EmptyPool);
    }
    pool.iter().try_for_each(|p| check_qubits(n, p.num_qubits()))
}

/// Optimizes all angles of `ansatz` from its current values; returns the evaluations used.
fn optimize<T: Real>(ansatz: &mut Ansatz<T>, h: &PauliSum<T>, cfg: &OptimizerConfig) -> Result<(T, usize), VqeError> {
    let mut failure = None;
    let start = ansatz.thetas().to_vec();
    let result = {
        let a = &*ansatz;
        let fail = std::cell::RefCell::new(&mut failure);
        minimize_bfgs(
            start,
            cfg,
            |x| {
                a.energy_at(h, x).unwrap_or_else(|e| {
                    **fail.borrow_mut() = Some(e);
                    T::nan()
                })
            },
            |x| {
                a.energy_and_gradient(h, x).unwrap_or_else(|e| {
                    **fail.borrow_mut() = Some(e);
                    (T::nan(), vec![T::zero(); x.len()])
                })
            },
        )
    };
    if let Some(e) = failure {
        return Err(e);
    }
    ansatz.set_thetas(&result.x);
    Ok((result.f, result.energy_evals + result.gradient_evals))
}

/// Batched ADAPT: each outer iteration scores every pool operator by its
/// energy gradient, appends the `batch_k` largest in magnitude (ties go to the
/// lower pool index) and re-optimizes every angle from a warm start.
pub fn run_adapt<T: Real>(h: &PauliSum<T>, pool: &[PauliString], cfg: &AdaptConfig) -> Result<RunTrace<T>, VqeError> {
    let n = h.num_qubits();
    check_pool(n, pool)?;
    let exact = dense_ground_energy(h)?;
    let mut ansatz = Ansatz::new(n, cfg.reference);
    let mut state = ansatz.state()?;
    let mut energy = state.energy(h)?;
    let mut fevals = 1;
    let mut rows = vec![TraceRow {
        iteration: 0,
        energy,
        abs_error: (energy - exact).abs(),
        fevals,
        params: 0,
        cnots: 0,
        selected: Vec::new(),
    }];
    let eps = T::of(cfg.eps_grad);
    let k = cfg.batch_k.max(1);
    for iteration in 1..=cfg.max_outer {
        let hs = state.apply_operator(h)?;
        let grads = pool
            .iter()
            .map(|p| hs.adapt_gradient_with(&state, p))
            .collect::<Result<Vec<T>, _>>()?;
        fevals += pool.len();
        let largest = grads.iter().fold(T::zero(), |m, g| m.max(g.abs()));
        if largest < eps {
            break;
        }
        let mut order: Vec<usize> = (0..pool.len()).collect();
        order.sort_by(|&a, &b| {
            grads[b]
                .abs()
                .partial_cmp(&grads[a].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        let selected: Vec<usize> = order.into_iter().take(k).collect();
        for &i in &selected {
            ansatz.push(pool[i].clone(), T::zero())?;
        }
        let (e, used) = optimize(&mut ansatz, h, &cfg.optimizer)?;
        fevals += used;
        energy = e;
        state = ansatz.state()?;
        rows.push(TraceRow {
            iteration,
            energy,
            abs_error: (energy - exact).abs(),
            fevals,
            params: ansatz.len(),
            cnots: ansatz.cnot_estimate(),
            selected: selected.iter().map(|&i| pool[i].label()).collect(),
        });
    }
    Ok(RunTrace {
        exact_energy: exact,
        rows,
        ansatz,
    })
}

/// Fixed layered ansatz of `k_layers` pool copies, all angles starting at
/// zero, optimized once with no selection gradients.
pub fn run_niducc<T: Real>(h: &PauliSum<T>, pool: &[PauliString], cfg: &NiDuccConfig) -> Result<RunTrace<T>, VqeError> {
    let n = h.num_qubits();
    check_pool(n, pool)?;
    let exact = dense_ground_energy(h)?;
    let mut ansatz = Ansatz::layered(n, cfg.reference, pool, cfg.k_layers)?;
    let start = ansatz.state()?.energy(h)?;
    let mut rows = vec![TraceRow {
        iteration: 0,
        energy: start,
        abs_error: (start - exact).abs(),
        fevals: 1,
        params: 0,
        cnots: 0,
        selected: Vec::new(),
    }];
    let (e, used) = optimize(&mut ansatz, h, &cfg.optimizer)?;
    rows.push(TraceRow {
        iteration: 1,
        energy: e,
        abs_error: (e - exact).abs(),
        fevals: 1 + used,
        params: ansatz.len(),
        cnots: ansatz.cnot_estimate(),
        selected: pool.iter().map(PauliString::label).collect(),
    });
    Ok(RunTrace {
        exact_energy: exact,
        rows,
        ansatz,
    })
}
