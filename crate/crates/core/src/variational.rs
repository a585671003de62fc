//! Constrained minimization of radial density functionals.
//!
//! Minimizes h(ρ) over {ρ ≥ 0, ∫ρ d³x = 1} for spherically symmetric ρ
//! discretized on a logarithmic radial grid. The feasible set is a
//! weighted simplex; we run projected gradient descent with
//! Barzilai-Borwein steps and a nonmonotone backtracking line search.
//! Projection in the quadrature inner product reduces to a uniform shift
//! ρ_i = max(y_i − λ, 0), with λ found by bisection on the normalization.
//!
//! The objective callback returns the functional value and the pointwise
//! functional derivative δh/δρ(r_i); the quadrature weights turn that
//! into the discrete gradient in the weighted inner product.

use crate::error::Error;
use crate::profile::log_spaced;
use crate::Result;

/// Log-spaced radial grid with Simpson 3D quadrature weights:
/// ∫ f d³x = Σ w_i f(r_i) with w_i = 4π r_i³ · (Simpson coeff) · Δln r.
#[derive(Debug, Clone)]
pub struct LogGrid {
    r: Vec<f64>,
    w: Vec<f64>,
}

impl LogGrid {
    /// `points` is rounded up to odd (composite Simpson needs it).
    pub fn new(r_min: f64, r_max: f64, points: usize) -> Self {
        let n = if points % 2 == 0 { points + 1 } else { points };
        let r = log_spaced(r_min, r_max, n);
        let dln = (r_max / r_min).ln() / (n - 1) as f64;
        let w = r
            .iter()
            .enumerate()
            .map(|(i, &ri)| {
                let simpson = if i == 0 || i == n - 1 {
                    1.0 / 3.0
                } else if i % 2 == 1 {
                    4.0 / 3.0
                } else {
                    2.0 / 3.0
                };
                4.0 * std::f64::consts::PI * ri * ri * ri * simpson * dln
            })
            .collect();
        LogGrid { r, w }
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn weights(&self) -> &[f64] {
        &self.w
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    /// ∫ f d³x for pointwise samples f(r_i).
    pub fn integral(&self, f: &[f64]) -> f64 {
        self.w.iter().zip(f).map(|(w, v)| w * v).sum()
    }

    fn inner(&self, a: &[f64], b: &[f64]) -> f64 {
        self.w
            .iter()
            .zip(a)
            .zip(b)
            .map(|((w, x), y)| w * x * y)
            .sum()
    }
}

/// Solver diagnostics for a converged (or failed) run.
#[derive(Debug, Clone, Copy)]
pub struct Convergence {
    pub iterations: usize,
    pub value: f64,
    pub last_change: f64,
}

/// Project `y` onto {ρ ≥ 0, Σ w_i ρ_i = 1} in the w-weighted L² metric:
/// ρ_i = max(y_i − λ, 0) with λ from bisection.
pub fn project_simplex(y: &[f64], w: &[f64]) -> Vec<f64> {
    let mass = |lambda: f64| -> f64 {
        y.iter()
            .zip(w)
            .map(|(&yi, &wi)| wi * (yi - lambda).max(0.0))
            .sum()
    };
    let y_max = y.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    // mass(λ) is continuous, nonincreasing, 0 at y_max; widen left until
    // >= 1. The offset must scale with y_max or the subtraction is lost
    // to rounding when the components are large.
    let mut offset = (y_max.abs() * 1e-6).max(1.0);
    while mass(y_max - offset) < 1.0 {
        offset *= 2.0;
        if !offset.is_finite() {
            break;
        }
    }
    let mut hi = y_max;
    let mut lo = y_max - offset;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mass(mid) >= 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
            break;
        }
    }
    let lambda = 0.5 * (lo + hi);
    y.iter().map(|&yi| (yi - lambda).max(0.0)).collect()
}

/// Options for [`minimize_normalized`].
#[derive(Debug, Clone, Copy)]
pub struct MinimizeOptions {
    /// Relative change in the functional value considered stationary.
    pub tol: f64,
    /// Consecutive stationary iterations required to declare convergence.
    pub patience: usize,
    pub max_iter: usize,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        MinimizeOptions {
            tol: 1e-13,
            patience: 25,
            max_iter: 400_000,
        }
    }
}

/// Minimize a functional over the normalized nonnegative densities on `grid`.
///
/// `obj(rho)` returns (h(ρ), δh/δρ sampled on the grid). `rho0` need not
/// be feasible; it is projected first.
pub fn minimize_normalized<F>(
    obj: &F,
    grid: &LogGrid,
    rho0: &[f64],
    opts: &MinimizeOptions,
) -> Result<(Vec<f64>, Convergence)>
where
    F: Fn(&[f64]) -> (f64, Vec<f64>),
{
    let w = grid.weights();
    let mut rho = project_simplex(rho0, w);
    let (mut f_cur, mut g) = obj(&rho);
    let mut step = {
        // scale the first step so the trial move is O(1) in the w-norm
        let gnorm = grid.inner(&g, &g).sqrt();
        if gnorm > 0.0 {
            1.0 / gnorm
        } else {
            1.0
        }
    };
    let mut history = vec![f_cur; 8]; // nonmonotone reference window
    let mut quiet = 0usize;
    let mut last_change = f64::INFINITY;

    for iter in 0..opts.max_iter {
        let f_ref = history.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut accepted = None;
        let mut t = step;
        for _ in 0..40 {
            let trial: Vec<f64> = rho.iter().zip(&g).map(|(&x, &gi)| x - t * gi).collect();
            let cand = project_simplex(&trial, w);
            let d: Vec<f64> = cand.iter().zip(&rho).map(|(a, b)| a - b).collect();
            let gd = grid.inner(&g, &d);
            let (f_new, g_new) = obj(&cand);
            if f_new <= f_ref + 1e-4 * gd || gd >= 0.0 {
                accepted = Some((cand, d, f_new, g_new));
                break;
            }
            t *= 0.5;
        }
        let Some((cand, d, f_new, g_new)) = accepted else {
            return Err(Error::NonConvergence {
                iterations: iter,
                last_value: f_cur,
                last_change,
            });
        };

        // Barzilai-Borwein step for the next iteration
        let dg: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let ss = grid.inner(&d, &d);
        let sy = grid.inner(&d, &dg);
        step = if sy > 0.0 {
            (ss / sy).clamp(1e-14, 1e14)
        } else {
            (t * 2.0).clamp(1e-14, 1e14)
        };

        last_change = (f_cur - f_new).abs();
        rho = cand;
        g = g_new;
        f_cur = f_new;
        history.remove(0);
        history.push(f_cur);

        if last_change <= opts.tol * f_cur.abs().max(1.0) {
            quiet += 1;
            if quiet >= opts.patience {
                return Ok((
                    rho,
                    Convergence {
                        iterations: iter + 1,
                        value: f_cur,
                        last_change,
                    },
                ));
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        iterations: opts.max_iter,
        last_value: f_cur,
        last_change,
    })
}
