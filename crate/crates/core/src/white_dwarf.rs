//! Relativistic degenerate-electron stars: equation of state, structure
//! equations, mass-radius curve, and the critical compactness where the
//! electron number saturates.
//!
//! Everything internal is dimensionless: energies in units of mc²,
//! momenta in mc, number densities per Compton volume λ_C³, lengths in
//! κ^{-1/2}λ_C where κ = G(m_Z/Z)²/ħc is the gravitational coupling per
//! electron. In these units the coupled structure system is universal,
//!
//!   dμ/dr = −q/r²,   dq/dr = 4πr²n(μ),
//!
//! with μ the local chemical potential (rest mass subtracted), q the
//! enclosed electron number, and n(μ) the degenerate-gas inversion. One
//! integration serves every mass-per-electron; `constants` converts at
//! the boundary: N = κ^{-3/2}N̂, R = κ^{-1/2}λ_C R̂, E = mc²κ^{-3/2}Ê.

use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::error::Error;
use crate::ode::{integrate_with_event, rk4_step, Adaptive};
use crate::profile::RadialProfile;
use crate::Result;

// ---------------------------------------------------------------------------
// Equation of state (scaled: m = c = ħ = 1)
// ---------------------------------------------------------------------------

/// Below this Fermi momentum the closed forms for ε and P suffer leading
/// cancellation (relative error ~ 7e-16/x²); a series through x¹³,
/// accurate to ~1e-12 relative at the threshold and exact-to-machine
/// below x ≈ 0.05, takes over.
const X_SERIES: f64 = 0.1;

/// Fermi momentum (3π²n)^{1/3} of a number density, in units of mc.
pub fn fermi_momentum(n: f64) -> f64 {
    (3.0 * std::f64::consts::PI.powi(2) * n).cbrt()
}

fn density_of_x(x: f64) -> f64 {
    x * x * x / (3.0 * std::f64::consts::PI.powi(2))
}

/// Kinetic energy density of the ideal degenerate gas, rest mass
/// subtracted: (1/π²)∫₀^{p_F} [√(p²+1) − 1] p² dp, in mc² per λ_C³.
pub fn energy_density(n: f64) -> Result<f64> {
    if n < 0.0 {
        return Err(Error::NegativeDensity(n));
    }
    let x = fermi_momentum(n);
    let pi2 = std::f64::consts::PI.powi(2);
    if x < X_SERIES {
        let x2 = x * x;
        let x5 = x2 * x2 * x;
        return Ok(x5
            * (0.1
                + x2 * (-1.0 / 56.0
                    + x2 * (1.0 / 144.0 + x2 * (-5.0 / 1408.0 + x2 * 7.0 / 3328.0))))
            / pi2);
    }
    let s = (1.0 + x * x).sqrt();
    Ok(((x * (2.0 * x * x + 1.0) * s - x.asinh()) / 8.0 - x * x * x / 3.0) / pi2)
}

/// Degeneracy pressure, same units. Satisfies P = nε′(n) − ε(n).
pub fn pressure(n: f64) -> Result<f64> {
    if n < 0.0 {
        return Err(Error::NegativeDensity(n));
    }
    let x = fermi_momentum(n);
    let pi2 = std::f64::consts::PI.powi(2);
    if x < X_SERIES {
        let x2 = x * x;
        let x5 = x2 * x2 * x;
        return Ok(x5
            * (1.0 / 15.0
                + x2 * (-1.0 / 42.0
                    + x2 * (1.0 / 72.0 + x2 * (-5.0 / 528.0 + x2 * 35.0 / 4992.0))))
            / pi2);
    }
    let s = (1.0 + x * x).sqrt();
    Ok((x * s * (2.0 * x * x / 3.0 - 1.0) + x.asinh()) / (8.0 * pi2))
}

/// ε and P together.
pub fn eos_eval(n: f64) -> Result<(f64, f64)> {
    Ok((energy_density(n)?, pressure(n)?))
}

/// Chemical potential ε′(n) = √(1 + p_F²) − 1, in mc².
pub fn chemical_potential(n: f64) -> Result<f64> {
    if n < 0.0 {
        return Err(Error::NegativeDensity(n));
    }
    let x = fermi_momentum(n);
    // stable form of √(1+x²) − 1 for small x
    Ok(x * x / (1.0 + (1.0 + x * x).sqrt()))
}

/// Inversion of `chemical_potential`; vacuum (n = 0) for μ ≤ 0.
pub fn density_of_mu(mu: f64) -> f64 {
    if mu <= 0.0 {
        return 0.0;
    }
    density_of_x((mu * (mu + 2.0)).sqrt())
}

// ---------------------------------------------------------------------------
// Structure
// ---------------------------------------------------------------------------

/// One integrated configuration in scaled units. The stored arrays are a
/// uniform grid from the regular center to the surface (first zero of μ,
/// hence of n and P).
#[derive(Debug, Clone)]
pub struct ScaledWd {
    /// Central Fermi momentum p_F(n_c)/mc.
    pub x_c: f64,
    /// Central number density, λ_C^{-3}.
    pub n_c: f64,
    pub r: Vec<f64>,
    pub mu: Vec<f64>,
    /// Enclosed electron number q(r).
    pub q: Vec<f64>,
    /// Surface radius R̂.
    pub radius: f64,
    /// Total electron number N̂ = q(R̂).
    pub n_total: f64,
    /// ∫ ε(n) d³r.
    pub e_kin: f64,
    /// −∫ (q/r) q′ dr, the full double-integral self-energy.
    pub e_grav: f64,
}

impl ScaledWd {
    /// ε(n) + gravity, the functional the profile minimizes at fixed N̂.
    pub fn e_tf(&self) -> f64 {
        self.e_kin + self.e_grav
    }

    pub fn density(&self) -> Vec<f64> {
        self.mu.iter().map(|&m| density_of_mu(m)).collect()
    }
}

fn structure_rhs(r: f64, y: &[f64; 2]) -> [f64; 2] {
    [-y[1] / (r * r), 4.0 * std::f64::consts::PI * r * r * density_of_mu(y[0])]
}

/// Points in the stored uniform grid (even, so Simpson applies).
const GRID_STEPS: usize = 20_000;

pub fn solve_scaled(x_c: f64) -> Result<ScaledWd> {
    if !(x_c > 0.0) {
        return Err(Error::InvalidInput(format!(
            "central Fermi momentum must be positive, got {x_c}"
        )));
    }
    let pi = std::f64::consts::PI;
    let n_c = density_of_x(x_c);
    let mu_c = x_c * x_c / (1.0 + (1.0 + x_c * x_c).sqrt());
    // regular center: μ = μ_c − (2π/3)n_c r² + O(r⁴)
    let r0 = 1e-6;
    let y0 = [mu_c - 2.0 * pi / 3.0 * n_c * r0 * r0, 4.0 * pi / 3.0 * n_c * r0.powi(3)];
    // generous outer bound from the low-density polytrope radius estimate
    let a = ((3.0 * pi * pi).powf(2.0 / 3.0) * n_c.powf(-1.0 / 3.0) / (8.0 * pi)).sqrt();
    let r_max = (10.0 * 3.7 * a).max(50.0);
    let opt = Adaptive {
        rtol: 1e-12,
        atol: 1e-14,
        h_init: 1e-6,
        ..Adaptive::default()
    };
    let (_, hit) = integrate_with_event(
        &structure_rhs,
        r0,
        y0,
        r_max,
        &opt,
        &|_, y: &[f64; 2]| y[0],
        1e-12,
    );
    let (radius, _) = hit.ok_or(Error::UnboundedProfile { r_max, x_c })?;

    // fixed-step pass to the known surface for the stored profile;
    // quadratures below are Simpson on this grid. The pass starts at its
    // own first grid point via the center series — starting at r0 would
    // make the first RK4 step span three decades of radius, where the
    // stage estimates of q ∝ r³ go badly wrong.
    let h = radius / (GRID_STEPS + 1) as f64;
    let y_start = [mu_c - 2.0 * pi / 3.0 * n_c * h * h, 4.0 * pi / 3.0 * n_c * h.powi(3)];
    let mut r = Vec::with_capacity(GRID_STEPS + 1);
    let mut mu = Vec::with_capacity(GRID_STEPS + 1);
    let mut q = Vec::with_capacity(GRID_STEPS + 1);
    let mut y = y_start;
    r.push(h);
    mu.push(y[0]);
    q.push(y[1]);
    for k in 0..GRID_STEPS {
        // near the center the μ-equation couples through −q/r² with an
        // effectively 1/r² Jacobian; substep the first intervals so the
        // stage errors in q ∝ r³ stay below the residual tolerances
        let subs = (64 / (k + 1)).max(1);
        let hs = h / subs as f64;
        let r_a = h * (k + 1) as f64;
        for j in 0..subs {
            y = rk4_step(&structure_rhs, r_a + hs * j as f64, &y, hs);
        }
        r.push(r_a + h);
        mu.push(y[0]);
        q.push(y[1]);
    }
    let n_total = *q.last().unwrap();
    let simpson = |g: &dyn Fn(usize) -> f64| -> f64 {
        let mut acc = g(0) + g(GRID_STEPS);
        for i in 1..GRID_STEPS {
            acc += if i % 2 == 1 { 4.0 * g(i) } else { 2.0 * g(i) };
        }
        acc * h / 3.0
    };
    let dens: Vec<f64> = mu.iter().map(|&m| density_of_mu(m)).collect();
    // head correction for the [0, h] ball the grid omits; the analogous
    // gravitational head is O(h⁵)
    let e_kin = 4.0 * pi / 3.0 * h.powi(3) * energy_density(n_c)?
        + simpson(&|i| {
            4.0 * pi * r[i] * r[i] * energy_density(dens[i]).expect("n >= 0 on the profile")
        });
    let e_grav = -simpson(&|i| 4.0 * pi * r[i] * q[i] * dens[i]);

    Ok(ScaledWd {
        x_c,
        n_c,
        r,
        mu,
        q,
        radius,
        n_total,
        e_kin,
        e_grav,
    })
}

/// Max of |dP/dr + n q/r²| over the interior grid, normalized by P_c/R̂.
/// dP/dr is n·dμ/dr (Gibbs-Duhem, exact for this EOS) with dμ/dr by
/// centered differences on the stored uniform grid — differencing P
/// itself would run into its (R−r)^{5/2} surface behavior, whose third
/// derivative is unbounded, while μ crosses zero smoothly.
pub fn hydrostatic_residual(wd: &ScaledWd) -> f64 {
    let p_c = pressure(density_of_mu(wd.mu[0])).expect("n >= 0");
    let scale = p_c / wd.radius;
    let mut worst = 0.0f64;
    for i in 1..wd.r.len() - 1 {
        let dmu = (wd.mu[i + 1] - wd.mu[i - 1]) / (wd.r[i + 1] - wd.r[i - 1]);
        let n = density_of_mu(wd.mu[i]);
        let res = (n * dmu + n * wd.q[i] / (wd.r[i] * wd.r[i])).abs() / scale;
        worst = worst.max(res);
    }
    worst
}

/// Max relative deviation of μ(n(r)) + Φ(r) from its surface value −N̂/R̂,
/// where Φ(r) = −q/r − ∫_r^R 4πs n ds is recomputed from the density
/// alone (trapezoid from the surface inward) — the stationarity condition
/// of the energy functional, checked without reusing the ODE.
pub fn euler_lagrange_residual(wd: &ScaledWd) -> f64 {
    let pi = std::f64::consts::PI;
    let dens = wd.density();
    let m = wd.r.len();
    // exterior shell integral ∫_r^R 4πs n ds, accumulated inward
    let mut tail = vec![0.0; m];
    for i in (0..m - 1).rev() {
        let f0 = 4.0 * pi * wd.r[i] * dens[i];
        let f1 = 4.0 * pi * wd.r[i + 1] * dens[i + 1];
        tail[i] = tail[i + 1] + 0.5 * (f0 + f1) * (wd.r[i + 1] - wd.r[i]);
    }
    let level = -wd.n_total / wd.radius;
    let mut worst = 0.0f64;
    for i in 0..m {
        let phi = -wd.q[i] / wd.r[i] - tail[i];
        worst = worst.max((wd.mu[i] + phi - level).abs());
    }
    worst / level.abs()
}

/// Energy functional ∫ε(n) − (κ/2)∬ n n′/|x−x′| on an arbitrary radial
/// profile (scaled units), via the 1-d potential identity
/// −κ∫(q/r)q′ dr for the double integral. Pass κ = 1 for profiles in
/// the standard scaling, κ = 0 to switch gravity off.
pub fn tf_energy_of_profile(profile: &RadialProfile, kappa: f64) -> Result<f64> {
    let pi = std::f64::consts::PI;
    let r = profile.r();
    let n = profile.values();
    let mut e_kin = 0.0;
    let mut e_grav = 0.0;
    let mut q = 0.0;
    let mut prev_kin = 4.0 * pi * r[0] * r[0] * energy_density(n[0])?;
    let mut prev_shell = 4.0 * pi * r[0] * r[0] * n[0];
    let mut prev_grav = 4.0 * pi * r[0] * q * n[0];
    for i in 1..r.len() {
        let dr = r[i] - r[i - 1];
        let kin = 4.0 * pi * r[i] * r[i] * energy_density(n[i])?;
        let shell = 4.0 * pi * r[i] * r[i] * n[i];
        e_kin += 0.5 * (prev_kin + kin) * dr;
        q += 0.5 * (prev_shell + shell) * dr;
        let grav = 4.0 * pi * r[i] * q * n[i];
        e_grav += 0.5 * (prev_grav + grav) * dr;
        prev_kin = kin;
        prev_shell = shell;
        prev_grav = grav;
    }
    Ok(e_kin - kappa * e_grav)
}

// ---------------------------------------------------------------------------
// Physical configurations
// ---------------------------------------------------------------------------

/// One configuration in SI/solar units for a given mass-per-electron.
#[derive(Debug, Clone, Serialize)]
pub struct WdModel {
    /// Central Fermi momentum over mc (the scaled family parameter).
    pub x_c: f64,
    /// Central electron density, m⁻³.
    pub central_density_m3: f64,
    pub n_electrons: f64,
    pub mass_kg: f64,
    pub mass_solar: f64,
    pub radius_m: f64,
    /// Value of the energy functional on the profile, J.
    pub e_tf_joule: f64,
    /// Gravitational coupling κ = G(m_Z/Z)²/ħc.
    pub kappa: f64,
    /// Electron density n(r), m⁻³ against m.
    #[serde(skip)]
    pub profile: RadialProfile,
}

pub fn solve_structure(
    x_c: f64,
    mu_per_electron_kg: f64,
    k: &PhysicalConstants,
) -> Result<WdModel> {
    if !(mu_per_electron_kg > 0.0) {
        return Err(Error::InvalidInput(format!(
            "mass per electron must be positive, got {mu_per_electron_kg}"
        )));
    }
    let wd = solve_scaled(x_c)?;
    let kappa = k.kappa(mu_per_electron_kg);
    let lam = k.electron_compton_m();
    let length = lam / kappa.sqrt(); // κ^{-1/2} λ_C
    let n_scale = kappa.powf(-1.5);
    let dens = wd.density();
    // thin the stored grid for the exported profile
    let stride = 10;
    let mut r_si = Vec::with_capacity(wd.r.len() / stride + 2);
    let mut n_si = Vec::with_capacity(r_si.capacity());
    for i in (0..wd.r.len()).step_by(stride) {
        r_si.push(wd.r[i] * length);
        n_si.push(dens[i] / (lam * lam * lam));
    }
    if *r_si.last().unwrap() < wd.radius * length {
        r_si.push(wd.radius * length);
        n_si.push(0.0);
    }
    let n_electrons = n_scale * wd.n_total;
    Ok(WdModel {
        x_c,
        central_density_m3: wd.n_c / (lam * lam * lam),
        n_electrons,
        mass_kg: mu_per_electron_kg * n_electrons,
        mass_solar: mu_per_electron_kg * n_electrons / k.solar_mass_kg,
        radius_m: wd.radius * length,
        e_tf_joule: k.electron_rest_energy_joule() * n_scale * wd.e_tf(),
        kappa,
        profile: RadialProfile::new(r_si, n_si)?,
    })
}

// ---------------------------------------------------------------------------
// Mass-radius curve and criticality
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct CurvePoint {
    pub x_c: f64,
    pub central_density_m3: f64,
    pub n_electrons: f64,
    pub mass_kg: f64,
    pub mass_solar: f64,
    pub radius_m: f64,
    pub e_tf_joule: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MassRadiusCurve {
    pub points: Vec<CurvePoint>,
    /// sup N over the family, by Aitken extrapolation of N(x_c) → ∞.
    pub limiting_n: f64,
    pub limiting_mass_kg: f64,
    pub limiting_mass_solar: f64,
    /// κN^{2/3} at the limit (= N̂^{2/3}, independent of κ).
    pub tau_at_limit: f64,
}

/// Iterated Aitken Δ² acceleration; returns the last accelerated value.
fn aitken(seq: &[f64]) -> f64 {
    let mut s = seq.to_vec();
    while s.len() >= 3 {
        let mut next = Vec::with_capacity(s.len() - 2);
        for w in s.windows(3) {
            let denom = (w[2] - w[1]) - (w[1] - w[0]);
            if denom.abs() < 1e-300 {
                return w[2];
            }
            next.push(w[2] - (w[2] - w[1]).powi(2) / denom);
        }
        s = next;
    }
    *s.last().unwrap()
}

/// Saturation electron number N̂ of the scaled family, extrapolated from
/// a doubling ladder of central Fermi momenta.
pub fn limiting_n_scaled() -> Result<f64> {
    let mut seq = Vec::new();
    let mut x_c = 10.0;
    for _ in 0..6 {
        seq.push(solve_scaled(x_c)?.n_total);
        x_c *= 2.0;
    }
    Ok(aitken(&seq))
}

pub fn mass_radius_curve(
    x_c_grid: &[f64],
    mu_per_electron_kg: f64,
    k: &PhysicalConstants,
) -> Result<MassRadiusCurve> {
    if x_c_grid.is_empty() {
        return Err(Error::InvalidInput("empty central-density grid".into()));
    }
    let mut points = Vec::with_capacity(x_c_grid.len());
    for &x_c in x_c_grid {
        let m = solve_structure(x_c, mu_per_electron_kg, k)?;
        points.push(CurvePoint {
            x_c: m.x_c,
            central_density_m3: m.central_density_m3,
            n_electrons: m.n_electrons,
            mass_kg: m.mass_kg,
            mass_solar: m.mass_solar,
            radius_m: m.radius_m,
            e_tf_joule: m.e_tf_joule,
        });
    }
    let n_hat = limiting_n_scaled()?;
    let kappa = k.kappa(mu_per_electron_kg);
    let limiting_n = kappa.powf(-1.5) * n_hat;
    Ok(MassRadiusCurve {
        points,
        limiting_n,
        limiting_mass_kg: mu_per_electron_kg * limiting_n,
        limiting_mass_solar: mu_per_electron_kg * limiting_n / k.solar_mass_kg,
        tau_at_limit: n_hat.powf(2.0 / 3.0),
    })
}

/// Critical compactness τ = κN^{2/3} from the ultrarelativistic limit,
/// where P = Kn^{4/3} with K = (3π²)^{1/3}/4 and the structure problem
/// is the scale-invariant index-3 polytrope: the scaled electron number
/// is N̂ = 4π(K/π)^{3/2}·(−ξ₁²θ′(ξ₁)) at every radius, so τ = N̂^{2/3}.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CriticalTau {
    /// Saturation N̂ from the index-3 polytrope.
    pub n_hat_critical: f64,
    /// τ = κN^{2/3} with κ and N as the functional defines them.
    pub tau_raw: f64,
    /// The literature value quoted for comparison; its normalization of
    /// τ is not pinned down enough to equate with `tau_raw`, so the two
    /// are reported side by side and no tuning is done.
    pub tau_literature: f64,
    /// Lane-Emden index-3 inputs, for the record.
    pub xi1: f64,
    pub polytrope_mass: f64,
}

pub fn critical_tau() -> Result<CriticalTau> {
    let pi = std::f64::consts::PI;
    let le = crate::lane_emden::solve(3.0)?;
    let k_poly = (3.0 * pi * pi).cbrt() / 4.0;
    let n_hat = 4.0 * pi * (k_poly / pi).powf(1.5) * le.mass;
    Ok(CriticalTau {
        n_hat_critical: n_hat,
        tau_raw: n_hat.powf(2.0 / 3.0),
        tau_literature: 3.1,
        xi1: le.xi1,
        polytrope_mass: le.mass,
    })
}
