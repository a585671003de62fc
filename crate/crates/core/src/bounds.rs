//! Rigorous and variational energy/size bounds for atoms and bulk
//! Coulomb matter: Balmer shell-filling brackets, the Sobolev and Hölder
//! variational lower bounds for hydrogen-like atoms, the oscillator
//! atom-size bound, and the Lieb-Thirring / boson reference bounds.
//!
//! Energy unit is the Rydberg throughout. Asymptotic bounds (valid up to
//! O(N^{-1/3}) corrections) are flagged and never used in exact
//! assertions.

use serde::Serialize;

use crate::error::Error;
use crate::profile::RadialProfile;
use crate::variational::{minimize_normalized, Convergence, LogGrid, MinimizeOptions};
use crate::Result;

/// Optimal Sobolev constant K_s = 3(π/2)^{4/3} for ‖∇ψ‖₂² ≥ K_s‖ρ_ψ‖₃.
pub fn sobolev_constant() -> f64 {
    3.0 * (std::f64::consts::PI / 2.0).powf(4.0 / 3.0)
}

/// Improved kinetic-inequality constant for the ∫ρ^{5/3} form.
pub const HOLDER_K1_IMPROVED: f64 = 9.57;

/// Thomas-Fermi neutral-atom energy coefficient: E = −1.5375 Z^{7/3} Ry.
pub const TF_ENERGY_COEFF_RY: f64 = 1.5375;

/// Particle statistics of a Coulomb system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    Fermion,
    Boson,
}

/// Descriptive record of a Coulomb system: N electrons against a set of
/// nuclear charges. No wavefunction is represented; this only carries
/// the inputs the bounds depend on.
#[derive(Debug, Clone, Serialize)]
pub struct SystemSpec {
    pub n: u64,
    pub nuclear_charges: Vec<u32>,
    pub statistics: Statistics,
}

impl SystemSpec {
    pub fn new(n: u64, nuclear_charges: Vec<u32>, statistics: Statistics) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput("need N >= 1 electrons".into()));
        }
        if nuclear_charges.is_empty() || nuclear_charges.iter().any(|&z| z < 1) {
            return Err(Error::InvalidInput(
                "need at least one nucleus, all charges >= 1".into(),
            ));
        }
        Ok(SystemSpec {
            n,
            nuclear_charges,
            statistics,
        })
    }

    pub fn z_max(&self) -> u32 {
        *self.nuclear_charges.iter().max().unwrap()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
}

/// An energy bound in Ry. `asymptotic` marks bounds stated only up to
/// O(N^{-1/3}) corrections.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EnergyBound {
    pub value_ry: f64,
    pub kind: BoundKind,
    pub asymptotic: bool,
}

/// Result of filling N electrons into Balmer levels (degeneracy 2n²).
#[derive(Debug, Clone, Serialize)]
pub struct Filling {
    /// Largest principal quantum number whose level is completely full.
    pub n0: u32,
    /// 2n² for each full level n = 1..=n0.
    pub occupancy: Vec<u64>,
    /// Electrons left over in level n0 + 1.
    pub remainder: u64,
}

/// Fill N electrons into hydrogenic levels of degeneracy 2n².
pub fn fill_levels(n_electrons: u64) -> Filling {
    assert!(n_electrons >= 1);
    // cumulative capacity through level n is n(n+1)(2n+1)/3
    let mut n0 = 0u64;
    while (n0 + 1) * (n0 + 2) * (2 * n0 + 3) / 3 <= n_electrons {
        n0 += 1;
    }
    let filled = n0 * (n0 + 1) * (2 * n0 + 1) / 3;
    Filling {
        n0: n0 as u32,
        occupancy: (1..=n0).map(|n| 2 * n * n).collect(),
        remainder: n_electrons - filled,
    }
}

/// Ground-state energy of the electron-repulsion-free atom, in Z² Ry:
/// each electron in level n contributes −1/n².
pub fn unperturbed_ground_energy(n_electrons: u64) -> f64 {
    let fill = fill_levels(n_electrons);
    // a full level contributes 2n²·(−1/n²) = −2
    let full = -2.0 * fill.n0 as f64;
    let top = (fill.n0 + 1) as f64;
    full - fill.remainder as f64 / (top * top)
}

/// Shell-filling lower bound: the exact finite-N bracket and the
/// large-N asymptotic form.
#[derive(Debug, Clone, Serialize)]
pub struct ShellFillLower {
    /// E ≥ −2(n0+1) Z² Ry, exact for every N.
    pub exact: EnergyBound,
    /// E ≥ −2(3/2)^{1/3} N^{1/3} Z² Ry, up to O(N^{-1/3}).
    pub asymptotic: EnergyBound,
    pub n0: u32,
}

/// Large-N coefficient 2(3/2)^{1/3} of the shell-filling bounds.
pub fn shell_fill_coefficient() -> f64 {
    2.0 * 1.5f64.powf(1.0 / 3.0)
}

pub fn shell_fill_lower_bound(n_electrons: u64, z: u32) -> ShellFillLower {
    let fill = fill_levels(n_electrons);
    let z2 = (z as f64) * (z as f64);
    ShellFillLower {
        exact: EnergyBound {
            value_ry: -2.0 * (fill.n0 + 1) as f64 * z2,
            kind: BoundKind::Lower,
            asymptotic: false,
        },
        asymptotic: EnergyBound {
            value_ry: -shell_fill_coefficient() * (n_electrons as f64).powf(1.0 / 3.0) * z2,
            kind: BoundKind::Lower,
            asymptotic: true,
        },
        n0: fill.n0,
    }
}

/// Variational (Slater shell-state) upper bound; only asserted for
/// N ≤ 2Z, where the (1 − N/2Z) factor keeps its sign.
#[derive(Debug, Clone, Serialize)]
pub struct ShellFillUpper {
    /// None when N > 2Z: the bound degenerates and is not asserted.
    pub bound: Option<EnergyBound>,
    pub note: &'static str,
}

pub fn shell_fill_upper_bound(n_electrons: u64, z: u32) -> ShellFillUpper {
    if n_electrons > 2 * z as u64 {
        return ShellFillUpper {
            bound: None,
            note: "not asserted for N > 2Z (sign of the 1 - N/2Z factor flips)",
        };
    }
    let z2 = (z as f64) * (z as f64);
    let factor = 1.0 - n_electrons as f64 / (2.0 * z as f64);
    ShellFillUpper {
        bound: Some(EnergyBound {
            value_ry: -shell_fill_coefficient()
                * factor
                * (n_electrons as f64).powf(1.0 / 3.0)
                * z2,
            kind: BoundKind::Upper,
            asymptotic: true,
        }),
        note: "asymptotic, up to O(N^{-1/3})",
    }
}

/// Thomas-Fermi neutral-atom reference energy −1.5375 Z^{7/3} Ry.
pub fn tf_reference_energy(z: u32) -> f64 {
    -TF_ENERGY_COEFF_RY * (z as f64).powf(7.0 / 3.0)
}

/// Lower bound on the rms atom size, with the intermediate quantities of
/// its derivation (oscillator operator inequality + virial theorem).
///
/// Units: ħ²/2m = 1, e = 1, so lengths are Bohr radii and ⟨Σp²⟩/2 is the
/// kinetic energy in units of 4 Ry.
#[derive(Debug, Clone, Serialize)]
pub struct AtomSizeBound {
    /// r ≥ coefficient · N^{-1/3}, in a0.
    pub radius_a0: f64,
    /// (9·6^{1/3}/32)^{1/2} ≈ 0.714.
    pub coefficient: f64,
    /// 3^{4/3}/4 from the oscillator level filling.
    pub oscillator_coefficient: f64,
    /// Virial-theorem bound on ⟨Σp²⟩: 2|E_N| ≤ 2(3/2)^{1/3} N^{7/3}.
    pub momentum_sq_bound: f64,
    /// The ω that optimizes the oscillator inequality for that ⟨Σp²⟩.
    pub optimal_omega: f64,
    pub asymptotic: bool,
}

pub fn atom_size_lower_bound(n_electrons: u64) -> AtomSizeBound {
    let n = n_electrons as f64;
    let osc = 3.0f64.powf(4.0 / 3.0) / 4.0;
    // |E_N| ≤ (3/2)^{1/3} N^{7/3} in these units, and ⟨Σp²⟩ = 2|E_N|
    let p2 = 2.0 * 1.5f64.powf(1.0 / 3.0) * n.powf(7.0 / 3.0);
    let omega = p2 / (osc * n.powf(4.0 / 3.0));
    // ⟨Σx²⟩ ≥ (3N)^{8/3}/(16⟨Σp²⟩); r = (⟨Σx²⟩/N)^{1/2}
    let coefficient = (9.0 * 6.0f64.powf(1.0 / 3.0) / 32.0).sqrt();
    AtomSizeBound {
        radius_a0: coefficient * n.powf(-1.0 / 3.0),
        coefficient,
        oscillator_coefficient: osc,
        momentum_sq_bound: p2,
        optimal_omega: omega,
        asymptotic: true,
    }
}

/// Outcome of a variational lower-bound minimization.
#[derive(Debug, Clone)]
pub struct VariationalBound {
    pub analytic_ry: f64,
    pub numeric_ry: f64,
    pub minimizer: RadialProfile,
    pub convergence: Convergence,
}

/// Grid/iteration controls for the variational bounds.
#[derive(Debug, Clone, Copy)]
pub struct VariationalOptions {
    pub r_min_a0: f64,
    pub r_max_a0: f64,
    pub points: usize,
    pub minimize: MinimizeOptions,
}

impl Default for VariationalOptions {
    fn default() -> Self {
        VariationalOptions {
            r_min_a0: 1e-4,
            r_max_a0: 50.0,
            points: 401,
            minimize: MinimizeOptions::default(),
        }
    }
}

/// Hydrogen-like lower bound from the Sobolev inequality: minimize
/// h(ρ) = K_s ‖ρ‖₃ − Z ∫ρ/r over normalized ρ ≥ 0.
///
/// In units ħ²/2m = 1, e = 1 (Ry = 1/4) the Euler-Lagrange condition is
/// K_s ρ²/‖ρ‖₃² = (Z/r − μ)₊, so ρ ∝ (Z/r − μ)₊^{1/2} with support
/// r < Z/μ; normalization fixes μ = Z²/3 and h_min = −Z²/3, i.e.
/// E ≥ −(4/3) Z² Ry. The numeric minimizer must reproduce this.
pub fn sobolev_hydrogen_bound(z: f64, opts: &VariationalOptions) -> Result<VariationalBound> {
    if !(z >= 0.0) {
        return Err(Error::InvalidInput(format!("Z must be >= 0, got {z}")));
    }
    let analytic_ry = -4.0 / 3.0 * z * z;
    if z == 0.0 {
        // no attraction: the infimum is 0, approached by spreading out
        let grid = LogGrid::new(opts.r_min_a0, opts.r_max_a0, opts.points);
        let flat = vec![0.0; grid.len()];
        return Ok(VariationalBound {
            analytic_ry: 0.0,
            numeric_ry: 0.0,
            minimizer: RadialProfile::new(grid.r().to_vec(), flat)?,
            convergence: Convergence {
                iterations: 0,
                value: 0.0,
                last_change: 0.0,
            },
        });
    }
    let ks = sobolev_constant();
    // scale the grid with Z so every Z sees the same dimensionless problem
    let grid = LogGrid::new(opts.r_min_a0 / z, opts.r_max_a0 / z, opts.points);
    let r = grid.r().to_vec();
    let obj = {
        let grid = grid.clone();
        let r = r.clone();
        move |rho: &[f64]| {
            let cubes: Vec<f64> = rho.iter().map(|x| x * x * x).collect();
            let norm3 = grid.integral(&cubes).powf(1.0 / 3.0);
            let attraction: f64 = grid
                .weights()
                .iter()
                .zip(rho)
                .zip(&r)
                .map(|((w, x), ri)| w * x / ri)
                .sum();
            let val = ks * norm3 - z * attraction;
            let grad = rho
                .iter()
                .zip(&r)
                .map(|(x, ri)| ks * x * x / norm3.powi(2) - z / ri)
                .collect();
            (val, grad)
        }
    };
    let start: Vec<f64> = r.iter().map(|&ri| (-2.0 * z * ri).exp()).collect();
    let (rho, convergence) = minimize_normalized(&obj, &grid, &start, &opts.minimize)?;
    Ok(VariationalBound {
        analytic_ry,
        numeric_ry: 4.0 * convergence.value,
        minimizer: RadialProfile::new(r, rho)?,
        convergence,
    })
}

/// Analytic minimum of the Hölder-weakened functional
/// h(ρ) = K1 ∫ρ^{5/3} − Z ∫ρ/r over normalized ρ ≥ 0, in Ry.
///
/// Euler-Lagrange: (5/3)K1 ρ^{2/3} = (Z/r − μ)₊, so
/// ρ = (3/5K1)^{3/2}(Z/r − μ)₊^{3/2} with compact support r < Z/μ.
/// Normalization (a Beta integral, ∫₀¹u^{1/2}(1−u)^{3/2}du = π/16) gives
/// μ = (π²/4)^{2/3}(3/5K1) Z², and substituting back,
/// h_min = −(9/5K1)(π²/4)^{2/3} Z² in units Ry = 1/4, i.e.
/// −(36/5K1)(π²/4)^{2/3} Z² Ry.
pub fn holder_analytic_minimum_ry(z: f64, k1: f64) -> f64 {
    -(36.0 / (5.0 * k1)) * (std::f64::consts::PI.powi(2) / 4.0).powf(2.0 / 3.0) * z * z
}

/// Closed-form minimizer of the Hölder functional on the given radii.
pub fn holder_analytic_minimizer(z: f64, k1: f64, r: &[f64]) -> Vec<f64> {
    let mu = (std::f64::consts::PI.powi(2) / 4.0).powf(2.0 / 3.0) * (3.0 / (5.0 * k1)) * z * z;
    let amp = (3.0 / (5.0 * k1)).powf(1.5);
    r.iter()
        .map(|&ri| amp * (z / ri - mu).max(0.0).powf(1.5))
        .collect()
}

/// Numeric + analytic minimization of the Hölder functional.
pub fn holder_bound(z: f64, k1: f64, opts: &VariationalOptions) -> Result<VariationalBound> {
    if !(z > 0.0) || !(k1 > 0.0) {
        return Err(Error::InvalidInput(format!(
            "need Z > 0 and K1 > 0, got Z={z}, K1={k1}"
        )));
    }
    let grid = LogGrid::new(opts.r_min_a0 / z, opts.r_max_a0 / z, opts.points);
    let r = grid.r().to_vec();
    let obj = {
        let grid = grid.clone();
        let r = r.clone();
        move |rho: &[f64]| {
            let p53: Vec<f64> = rho.iter().map(|x| x.powf(5.0 / 3.0)).collect();
            let kinetic = k1 * grid.integral(&p53);
            let attraction: f64 = grid
                .weights()
                .iter()
                .zip(rho)
                .zip(&r)
                .map(|((w, x), ri)| w * x / ri)
                .sum();
            let val = kinetic - z * attraction;
            let grad = rho
                .iter()
                .zip(&r)
                .map(|(x, ri)| k1 * (5.0 / 3.0) * x.powf(2.0 / 3.0) - z / ri)
                .collect();
            (val, grad)
        }
    };
    // start from the closed form itself, perturbed, so the numeric run is
    // a genuine check of optimality rather than of basin finding
    let start: Vec<f64> = holder_analytic_minimizer(z, k1, &r)
        .iter()
        .zip(&r)
        .map(|(&v, &ri)| 0.7 * v + 0.3 * (-2.0 * z * ri).exp())
        .collect();
    let (rho, convergence) = minimize_normalized(&obj, &grid, &start, &opts.minimize)?;
    Ok(VariationalBound {
        analytic_ry: holder_analytic_minimum_ry(z, k1),
        numeric_ry: 4.0 * convergence.value,
        minimizer: RadialProfile::new(r, rho)?,
        convergence,
    })
}

/// Lieb-Thirring stability bound E ≥ −c (N + Σ Z_j^{7/3}) Ry, c ≈ 20.
pub fn lieb_thirring_bound(spec: &SystemSpec, constant: f64) -> Result<EnergyBound> {
    if spec.statistics == Statistics::Boson {
        return Err(Error::FermionsOnly);
    }
    let z_sum: f64 = spec
        .nuclear_charges
        .iter()
        .map(|&z| (z as f64).powf(7.0 / 3.0))
        .sum();
    Ok(EnergyBound {
        value_ry: -constant * (spec.n as f64 + z_sum),
        kind: BoundKind::Lower,
        asymptotic: false,
    })
}

/// Default Lieb-Thirring constant.
pub const LIEB_THIRRING_CONSTANT: f64 = 20.0;

/// Boson N^{7/5} bounds (charged bosons, k = N dynamic nuclei):
/// −small·N^{7/5} ≥ E ≥ −A·N^{7/5} with A ≈ 0.2.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BosonBounds {
    pub upper_ry: f64,
    pub lower_ry: f64,
    pub lower_coefficient: f64,
    pub upper_coefficient: f64,
}

/// Coefficient of the boson lower bound.
pub const BOSON_LOWER_A: f64 = 0.2;
/// Display-only scale of the boson upper bound ("small, ~1e-6").
pub const BOSON_UPPER_SMALL: f64 = 1e-6;

pub fn boson_bounds(n_particles: f64, upper_coefficient: f64) -> BosonBounds {
    let n75 = n_particles.powf(7.0 / 5.0);
    BosonBounds {
        upper_ry: -upper_coefficient * n75,
        lower_ry: -BOSON_LOWER_A * n75,
        lower_coefficient: BOSON_LOWER_A,
        upper_coefficient,
    }
}
