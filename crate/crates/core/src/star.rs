//! Single-zone heuristic model of gravitating Coulomb matter: the
//! nonrelativistic energy minimum, terrestrial densities, the boson
//! scaling law, and the critical electron numbers where gravity takes
//! over and where the electrons turn relativistic.
//!
//! Everything here is a model statement with literal O(1) coefficients;
//! outputs are labeled accordingly and only asserted within the stated
//! order-of-magnitude factors.

use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::error::Error;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    NonRelativistic,
    Relativistic,
    /// The relativistic energy has no minimum: E → −∞ as p → ∞.
    Unbounded,
}

/// Inputs of the heuristic model: N electrons in matter of nuclear
/// charge Z and mass number A.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HeuristicInput {
    pub n: f64,
    pub z: u32,
    pub a: u32,
    pub include_gravity: bool,
}

impl HeuristicInput {
    pub fn new(n: f64, z: u32, a: u32, include_gravity: bool) -> Result<Self> {
        if !(n >= 1.0) {
            return Err(Error::InvalidInput(format!("need N >= 1, got {n}")));
        }
        if z < 1 || a < z {
            return Err(Error::InvalidInput(format!(
                "need 1 <= Z <= A, got Z={z}, A={a}"
            )));
        }
        Ok(HeuristicInput {
            n,
            z,
            a,
            include_gravity,
        })
    }
}

/// Output of a heuristic minimization. When `regime` is `Unbounded`,
/// `e0_ry` is −∞ (never a finite number).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HeuristicResult {
    /// Average electron momentum at the minimum, in units of mc.
    pub p0_over_mc: f64,
    /// Total energy at the minimum, Ry.
    pub e0_ry: f64,
    /// Electron number density, a₀^{-3}.
    pub n0_per_a03: f64,
    /// Mass density, g/cm³.
    pub rho0_g_cm3: f64,
    pub regime: Regime,
}

fn densities(input: &HeuristicInput, k: &PhysicalConstants, p0_over_mc: f64) -> (f64, f64) {
    // n0 ≈ (p0/ħ)³; in Bohr units a0 = λ_C/α, so n0 a0³ = (p0/mc)³/α³
    let n0_a03 = (p0_over_mc / k.alpha).powi(3);
    // mass per electron is (A/Z) m_N
    let a0_m = k.bohr_radius_m;
    let n0_si = n0_a03 / (a0_m * a0_m * a0_m);
    let rho_si = n0_si * (input.a as f64 / input.z as f64) * k.nucleon_mass_kg;
    (n0_a03, rho_si * 1e-3) // kg/m³ → g/cm³
}

/// Gravitational part of p0/mc: ½(A/Z)²(m_N/M_Pl)² N^{2/3}.
fn gravity_momentum(input: &HeuristicInput, k: &PhysicalConstants) -> f64 {
    let az = input.a as f64 / input.z as f64;
    0.5 * az * az * input.n.powf(2.0 / 3.0) / k.planck_to_nucleon().powi(2)
}

/// Minimize the nonrelativistic single-zone energy
/// E(p) = N p²/2m − [gravity + Coulomb]·p. At the minimum
/// p0/mc = ½(A/Z)²(m_N/M_Pl)²N^{2/3} + αZ^{2/3} and E0 = −N p0²/2m,
/// which with gravity off is −N Z^{4/3} Ry: linear in N.
pub fn minimize_nonrel(input: &HeuristicInput, k: &PhysicalConstants) -> HeuristicResult {
    let coulomb = k.alpha * (input.z as f64).powf(2.0 / 3.0);
    let gravity = if input.include_gravity {
        gravity_momentum(input, k)
    } else {
        0.0
    };
    let p0 = gravity + coulomb;
    // p0²/2m in Ry: (p0/mc)² mc²/2 = (p0/mc)²/α² Ry
    let e0_ry = -input.n * (p0 / k.alpha).powi(2);
    let (n0, rho0) = densities(input, k, p0);
    HeuristicResult {
        p0_over_mc: p0,
        e0_ry,
        n0_per_a03: n0,
        rho0_g_cm3: rho0,
        regime: Regime::NonRelativistic,
    }
}

/// The boson counterpart: with only the uncertainty-principle floor
/// p ≥ ħ/R, the energy law steepens from −N Ry to −N^{5/3} Ry
/// (fixed nuclei). With dynamic nuclei the rigorous law is N^{7/5}.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BosonScaling {
    pub e0_ry: f64,
    /// Fermion reference at the same N: −N Ry.
    pub fermion_e0_ry: f64,
    /// Exponent of the rigorous dynamic-nuclei law, reported alongside.
    pub dynamic_nuclei_exponent: f64,
}

pub fn boson_scaling(n: f64) -> BosonScaling {
    BosonScaling {
        e0_ry: -n.powf(5.0 / 3.0),
        fermion_e0_ry: -n,
        dynamic_nuclei_exponent: 1.4,
    }
}

/// The critical numbers of the model, evaluated from a constant set.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CriticalNumbers {
    /// Gravity overtakes Coulomb: N_c = Z(Z/A)³α^{3/2}(M_Pl/m_N)³.
    pub n_c: f64,
    /// Relativistic threshold as printed: (Z/A)³(2M_Pl/m_N)^{3/2}.
    pub n_r_printed: f64,
    /// Relativistic threshold derived from p₀ = mc in the model's own
    /// algebra: 2^{3/2}(Z/A)³(M_Pl/m_N)³. Setting the gravitational
    /// p₀/mc expression to 1 gives the cube of the Planck-mass ratio,
    /// not the printed 3/2 power — the two forms are exposed side by
    /// side rather than silently reconciled.
    pub n_r_derived: f64,
    /// Limiting mass M_r = 2.8 (Z/A)² M_Pl³/m_N², kg.
    pub m_r_kg: f64,
    pub m_r_solar: f64,
}

pub fn critical_numbers(z: u32, a: u32, k: &PhysicalConstants) -> Result<CriticalNumbers> {
    if z < 1 || a < z {
        return Err(Error::InvalidInput(format!(
            "need 1 <= Z <= A, got Z={z}, A={a}"
        )));
    }
    let za = z as f64 / a as f64;
    let ratio = k.planck_to_nucleon();
    let m_r_kg = 2.8 * za * za * k.planck_mass_kg.powi(3)
        / (k.nucleon_mass_kg * k.nucleon_mass_kg);
    Ok(CriticalNumbers {
        n_c: z as f64 * za.powi(3) * k.alpha.powf(1.5) * ratio.powi(3),
        n_r_printed: za.powi(3) * (2.0 * ratio).powf(1.5),
        n_r_derived: 2.0f64.powf(1.5) * za.powi(3) * ratio.powi(3),
        m_r_kg,
        m_r_solar: m_r_kg / k.solar_mass_kg,
    })
}

/// Minimize the relativistic single-zone energy (c = 1)
/// E(p) = N√(p² + m²) − ½(N/Z)²(G m_Z²/ħN^{1/3}) p over p ≥ 0.
///
/// With γ the gravitational coefficient per electron (γ = coefficient/N,
/// dimensionless), the minimum exists iff γ < 1, at p₀/mc = γ/√(1−γ²),
/// where E = N mc² √(1−γ²). `e0_ry` reports the energy relative to the
/// rest mass, N mc²(√(1−γ²) − 1).
pub fn relativistic_minimum(input: &HeuristicInput, k: &PhysicalConstants) -> HeuristicResult {
    let gamma = gravity_momentum(input, k);
    let mc2_ry = 2.0 / (k.alpha * k.alpha); // mc² in Ry
    if gamma >= 1.0 {
        return HeuristicResult {
            p0_over_mc: f64::INFINITY,
            e0_ry: f64::NEG_INFINITY,
            n0_per_a03: f64::INFINITY,
            rho0_g_cm3: f64::INFINITY,
            regime: Regime::Unbounded,
        };
    }
    let p0 = gamma / (1.0 - gamma * gamma).sqrt();
    let e0_ry = input.n * mc2_ry * ((1.0 - gamma * gamma).sqrt() - 1.0);
    let (n0, rho0) = densities(input, k, p0);
    HeuristicResult {
        p0_over_mc: p0,
        e0_ry,
        n0_per_a03: n0,
        rho0_g_cm3: rho0,
        regime: Regime::Relativistic,
    }
}

/// The N at which the relativistic minimum ceases to exist (γ = 1),
/// computed from the same formula the minimizer uses.
pub fn relativistic_threshold(z: u32, a: u32, k: &PhysicalConstants) -> f64 {
    let za = z as f64 / a as f64;
    (2.0 * za * za * k.planck_to_nucleon().powi(2)).powf(1.5)
}

/// Golden-section cross-check of the closed-form relativistic minimum:
/// minimizes √(q² + 1) − γq in q = p/mc over a bracketed interval.
pub fn relativistic_minimum_golden(gamma: f64) -> (f64, f64) {
    let f = |q: f64| (q * q + 1.0).sqrt() - gamma * q;
    let (mut a, mut b) = (0.0, 1e6);
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    for _ in 0..200 {
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - inv_phi * (b - a);
        d = a + inv_phi * (b - a);
    }
    let q = 0.5 * (a + b);
    (q, f(q))
}
