use serde::{Deserialize, Serialize};

use crate::scalar::Real;

/// Stopping rules for [`minimize_bfgs`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Converged once the largest gradient component falls below this.
    pub grad_tol: f64,
    /// Also converged once an accepted step lowers `f` by less than this.
    pub f_tol: f64,
    pub max_iters: usize,
    /// Budget on energy plus gradient evaluations.
    pub max_evals: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            grad_tol: 1e-8,
            f_tol: 1e-14,
            max_iters: 500,
            max_evals: 20_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizerResult<T> {
    pub x: Vec<T>,
    pub f: T,
    pub iterations: usize,
    pub energy_evals: usize,
    pub gradient_evals: usize,
    pub converged: bool,
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(x, y)| *x * *y).sum()
}

fn max_abs<T: Real>(a: &[T]) -> T {
    a.iter().fold(T::zero(), |m, v| m.max(v.abs()))
}

/// Deterministic BFGS with Armijo backtracking.
///
/// `f` returns the objective; `grad` returns the objective and its gradient
/// and counts as one energy plus one gradient evaluation.
pub fn minimize_bfgs<T, F, G>(x0: Vec<T>, cfg: &OptimizerConfig, mut f: F, mut grad: G) -> OptimizerResult<T>
where
    T: Real,
    F: FnMut(&[T]) -> T,
    G: FnMut(&[T]) -> (T, Vec<T>),
{
    let m = x0.len();
    let mut x = x0;
    let (mut fx, mut g) = grad(&x);
    let mut energy_evals = 1;
    let mut gradient_evals = 1;
    let grad_tol = T::of(cfg.grad_tol);
    let f_tol = T::of(cfg.f_tol);
    let c1 = T::of(1e-4);
    let half = T::of(0.5);
    // inverse Hessian, row-major
    let mut h = identity::<T>(m);
    let mut first = true;
    let mut iterations = 0;
    let mut converged = m == 0 || max_abs(&g) < grad_tol;

    while !converged && iterations < cfg.max_iters && energy_evals + gradient_evals < cfg.max_evals {
        iterations += 1;
        let mut d: Vec<T> = (0..m).map(|i| -dot(&h[i * m..(i + 1) * m], &g)).collect();
        let mut slope = dot(&g, &d);
        if slope >= T::zero() {
            h = identity(m);
            d = g.iter().map(|v| -*v).collect();
            slope = dot(&g, &d);
        }
        let mut alpha = T::one();
        let mut accepted = None;
        for _ in 0..60 {
            let trial: Vec<T> = x.iter().zip(&d).map(|(xi, di)| *xi + alpha * *di).collect();
            let ft = f(&trial);
            energy_evals += 1;
            if ft <= fx + c1 * alpha * slope {
                accepted = Some(trial);
                break;
            }
            alpha *= half;
        }
        let Some(x_new) = accepted else {
            // no descent along d at machine precision
            converged = true;
            break;
        };
        let (f_new, g_new) = grad(&x_new);
        energy_evals += 1;
        gradient_evals += 1;
        let s: Vec<T> = x_new.iter().zip(&x).map(|(a, b)| *a - *b).collect();
        let y: Vec<T> = g_new.iter().zip(&g).map(|(a, b)| *a - *b).collect();
        let improvement = fx - f_new;
        x = x_new;
        fx = f_new;
        g = g_new;
        if max_abs(&g) < grad_tol || improvement.abs() < f_tol {
            converged = true;
            break;
        }
        let sy = dot(&s, &y);
        if sy > T::epsilon() * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() {
            if first {
                let scale = sy / dot(&y, &y);
                h.iter_mut().for_each(|v| *v *= scale);
                first = false;
            }
            bfgs_update(&mut h, &s, &y, T::one() / sy);
        }
    }
    OptimizerResult {
        x,
        f: fx,
        iterations,
        energy_evals,
        gradient_evals,
        converged,
    }
}

fn identity<T: Real>(m: usize) -> Vec<T> {
    let mut h = vec![T::zero(); m * m];
    for i in 0..m {
        h[i * m + i] = T::one();
    }
    h
}

/// `H ← (I − ρ s yᵀ) H (I − ρ y sᵀ) + ρ s sᵀ`.
fn bfgs_update<T: Real>(h: &mut [T], s: &[T], y: &[T], rho: T) {
    let m = s.len();
    let hy: Vec<T> = (0..m).map(|i| dot(&h[i * m..(i + 1) * m], y)).collect();
    let yhy = dot(y, &hy);
    for i in 0..m {
        for j in 0..m {
            h[i * m + j] += rho * ((T::one() + rho * yhy) * s[i] * s[j] - hy[i] * s[j] - s[i] * hy[j]);
        }
    }
}
