//! Non-relativistic Thomas-Fermi solver for the neutral atom.
//!
//! The universal screening function φ solves φ″ = φ^{3/2}/√x with
//! φ(0) = 1, φ(∞) = 0, where x = r/b and b = (1/4)(9π²/2)^{1/3} Z^{-1/3}
//! Bohr radii. We shoot on the initial slope s = φ′(0) with bisection;
//! near x = 0 stepping is ill-posed (the x^{3/2} term), so integration
//! starts from the series
//! φ = 1 + s·x + (4/3)x^{3/2} + (2/5)s·x^{5/2} + x³/3 + (3/70)s²x^{7/2}.
//!
//! # Energy-slope relation (derivation)
//!
//! In Hartree units the TF electrostatic potential is V(r) = (Z/r)φ(x)
//! and the density n = (2V)^{3/2}/(3π²); Poisson's equation for this
//! pair is exactly the screening ODE, given the b above. Write
//! J₁ = ∫₀^∞ φ^{3/2} x^{-1/2} dx. Integrating the ODE once gives
//! J₁ = φ′(∞) − φ′(0) = −s, and ∫ x φ″ dx = [xφ′ − φ]₀^∞ = 1 expresses
//! neutrality ∫n d³x = Z. The energy pieces become
//!
//! - attraction:  U_en = −Z ∫ n/r d³x = −(Z²/b) J₁ = (Z²/b)·s,
//! - repulsion:   U_ee = ½∫ n·(Z/b)(1 − φ)/x d³x = ½(Z²/b)∫(1−φ)φ″ dx,
//! - kinetic:     K = (3/10)(3π²)^{2/3} ∫ n^{5/3} d³x
//!                  = 2^{7/2}/(5π)·√b·Z^{5/2}·∫ φ^{5/2} x^{-1/2} dx.
//!
//! The standard virial/scaling identities for the TF functional give
//! K = −E and U_en + U_ee = 2E, from which E = (3/7)U_en, i.e.
//!
//!   E = (3/7)(Z²/b)·φ′(0) Hartree = (6/7)(φ′(0)/b₁)·Z^{7/3} Ry,
//!
//! with b₁ = (1/4)(9π²/2)^{1/3}. Rather than trusting this algebra, the
//! solver also evaluates K + U_en + U_ee directly from the profile and
//! the tests require the two routes to agree (along with the virial
//! split), so the slope-energy constant is checked in-repo.
//!
//! Quadratures are accumulated as extra ODE components during a
//! fixed-step pass; the x^{-1/2}-singular pieces on [0, x₀] are added
//! from the series expansion, and tails beyond x_max use the exact
//! identities ∫_{x_max}^∞ φ″ = −φ′(x_max), ∫ xφ″ = φ − xφ′ |_{x_max}.

use crate::error::Error;
use crate::ode::{integrate_with_event, rk4_step, Adaptive};
use crate::profile::RadialProfile;
use crate::Result;

/// b₁ = (1/4)(9π²/2)^{1/3} ≈ 0.8853; the TF length is b = b₁ Z^{-1/3} a₀.
pub fn tf_length_coefficient() -> f64 {
    0.25 * (9.0 * std::f64::consts::PI.powi(2) / 2.0).powf(1.0 / 3.0)
}

/// TF length scale b in Bohr radii for charge Z.
pub fn tf_length_b(z: u32) -> f64 {
    tf_length_coefficient() * (z as f64).powf(-1.0 / 3.0)
}

const X_SERIES: f64 = 1e-3;
// The neutral branch is a separatrix: an O(δ) error in φ′(0) blows up
// exponentially and corrupts the trajectory beyond x ≈ 60 even at
// δ ~ 1e-12, so integration stops here and tails use the exact
// identities ∫φ″ = −φ′(x_max), ∫xφ″ = φ − xφ′ |_{x_max} plus the
// negligible φ^{5/2} remainder.
const X_MAX: f64 = 50.0;

/// Solved universal screening function with its quadrature integrals.
#[derive(Debug, Clone)]
pub struct TfScreening {
    x: Vec<f64>,
    phi: Vec<f64>,
    dphi: Vec<f64>,
    /// φ′(0), the neutral-atom initial slope.
    pub slope0: f64,
    /// ∫ φ^{3/2} x^{-1/2} dx over [0, ∞).
    pub j1: f64,
    /// ∫ φ^{5/2} x^{-1/2} dx over [0, ∞).
    pub j3: f64,
    /// ∫ (1 − φ) φ″ dx over [0, ∞).
    pub qee: f64,
    /// ∫ x φ″ dx over [0, ∞); equals 1 exactly for the neutral branch.
    pub neutrality: f64,
}

fn series_phi(s: f64, x: f64) -> (f64, f64) {
    let sq = x.sqrt();
    let phi = 1.0
        + s * x
        + 4.0 / 3.0 * x * sq
        + 0.4 * s * x * x * sq
        + x * x * x / 3.0
        + 3.0 / 70.0 * s * s * x * x * x * sq;
    let dphi = s
        + 2.0 * sq
        + s * x * sq
        + x * x
        + 3.0 / 20.0 * s * s * x * x * sq;
    (phi, dphi)
}

fn screening_rhs(x: f64, y: &[f64; 2]) -> [f64; 2] {
    [y[1], y[0].max(0.0).powf(1.5) / x.sqrt()]
}

/// Shoot once: does the trajectory with slope `s` cross zero ("low") or
/// turn around and diverge ("high") first?
fn shot_crosses_zero(s: f64) -> bool {
    let (phi0, dphi0) = series_phi(s, X_SERIES);
    let opt = Adaptive {
        rtol: 1e-12,
        atol: 1e-14,
        h_init: 1e-5,
        ..Adaptive::default()
    };
    // stop when φ ≤ 0 (crossed) or φ′ ≥ 0 (about to diverge upward)
    let (_, hit) = integrate_with_event(
        &screening_rhs,
        X_SERIES,
        [phi0, dphi0],
        100.0,
        &opt,
        &|_, y: &[f64; 2]| y[0].min(-y[1]),
        1e-10,
    );
    match hit {
        Some((_, y)) => y[0] <= 1e-8,
        None => false, // stayed positive and decreasing: treat as high side
    }
}

/// Solve the neutral-atom screening branch.
///
/// `tolerance` bounds the bisection bracket on φ′(0); values below 1e-12
/// are clamped to 1e-12.
pub fn solve_screening(tolerance: f64) -> Result<TfScreening> {
    if !(tolerance > 0.0) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let tol = tolerance.max(1e-12);
    let (mut lo, mut hi) = (-2.0, -1.0);
    if !shot_crosses_zero(lo) || shot_crosses_zero(hi) {
        return Err(Error::BracketFailure { lo, hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if shot_crosses_zero(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s = 0.5 * (lo + hi);

    // fixed-step quadrature pass with the integrals as extra components:
    // y = [φ, φ′, J1, J3, Qee, ∫xφ″]
    let f = |x: f64, y: &[f64; 6]| {
        let phi = y[0].max(0.0);
        let ddphi = phi.powf(1.5) / x.sqrt();
        [
            y[1],
            ddphi,
            ddphi, // φ^{3/2}/√x is exactly φ″
            phi * ddphi,
            (1.0 - y[0]) * ddphi,
            x * ddphi,
        ]
    };
    let x0 = X_SERIES;
    let (phi0, dphi0) = series_phi(s, x0);
    // series contributions on [0, x0] for the singular integrands
    let (x32, x2) = (x0 * x0.sqrt(), x0 * x0);
    let j1_head = 2.0 * x0.sqrt() + s * x32 + x2;
    let j3_head = 2.0 * x0.sqrt() + 5.0 / 3.0 * s * x32 + 5.0 / 3.0 * x2;
    let qee_head = -2.0 / 3.0 * s * x32 - 2.0 / 3.0 * x2;
    let neutral_head = 2.0 / 3.0 * x32;
    let mut y = [phi0, dphi0, j1_head, j3_head, qee_head, neutral_head];

    let mut xs = Vec::with_capacity(14_000);
    let mut phis = Vec::with_capacity(14_000);
    let mut dphis = Vec::with_capacity(14_000);
    let mut push = |x: f64, y: &[f64; 6]| {
        xs.push(x);
        phis.push(y[0]);
        dphis.push(y[1]);
    };
    push(x0, &y);
    // (start, end, steps, store-every)
    let segments = [
        (x0, 1.0, 20_000usize, 10usize),
        (1.0, 10.0, 9_000, 1),
        (10.0, X_MAX, 8_000, 4),
    ];
    for &(a, bseg, steps, every) in &segments {
        let h = (bseg - a) / steps as f64;
        for k in 0..steps {
            let x = a + h * k as f64;
            y = rk4_step(&f, x, &y, h);
            if (k + 1) % every == 0 {
                push(a + h * (k + 1) as f64, &y);
            }
        }
    }
    let (phi_end, dphi_end) = (y[0], y[1]);
    Ok(TfScreening {
        x: xs,
        phi: phis,
        dphi: dphis,
        slope0: s,
        j1: y[2] - dphi_end,
        j3: y[3],
        qee: y[4] - dphi_end,
        neutrality: y[5] + phi_end - X_MAX * dphi_end,
    })
}

impl TfScreening {
    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    pub fn dphi(&self) -> &[f64] {
        &self.dphi
    }

    /// Cubic Hermite interpolation of φ; beyond the stored range the
    /// x^{-3} asymptote matched at the endpoint is used.
    pub fn phi_at(&self, x: f64) -> f64 {
        if x <= self.x[0] {
            return 1.0 + self.slope0 * x + 4.0 / 3.0 * x * x.sqrt();
        }
        let last = *self.x.last().unwrap();
        if x >= last {
            let c = self.phi.last().unwrap() * last.powi(3);
            return c / x.powi(3);
        }
        let i = self.x.partition_point(|&g| g < x);
        let (x0, x1) = (self.x[i - 1], self.x[i]);
        let h = x1 - x0;
        let t = (x - x0) / h;
        let (p0, p1) = (self.phi[i - 1], self.phi[i]);
        let (m0, m1) = (self.dphi[i - 1] * h, self.dphi[i] * h);
        let t2 = t * t;
        let t3 = t2 * t;
        (2.0 * t3 - 3.0 * t2 + 1.0) * p0
            + (t3 - 2.0 * t2 + t) * m0
            + (-2.0 * t3 + 3.0 * t2) * p1
            + (t3 - t2) * m1
    }
}

/// TF energies for charge Z, all in Ry.
#[derive(Debug, Clone, Copy)]
pub struct TfEnergy {
    pub z: u32,
    /// Energy via the slope relation E = (6/7)(φ′(0)/b₁) Z^{7/3} Ry.
    pub total_ry: f64,
    /// Energy via direct functional integration K + U_en + U_ee.
    pub direct_ry: f64,
    pub kinetic_ry: f64,
    pub attraction_ry: f64,
    pub repulsion_ry: f64,
    pub slope0: f64,
}

pub fn tf_energy(scr: &TfScreening, z: u32) -> Result<TfEnergy> {
    if z < 1 {
        return Err(Error::InvalidInput("need Z >= 1".into()));
    }
    let b1 = tf_length_coefficient();
    let z73 = (z as f64).powf(7.0 / 3.0);
    // Hartree → Ry is the factor 2
    let attraction_ry = -2.0 * z73 * scr.j1 / b1;
    let repulsion_ry = z73 * scr.qee / b1;
    let c_k = 2.0f64.powf(3.5) / (5.0 * std::f64::consts::PI);
    let kinetic_ry = 2.0 * c_k * b1.sqrt() * scr.j3 * z73;
    let total_ry = (6.0 / 7.0) * (scr.slope0 / b1) * z73;
    Ok(TfEnergy {
        z,
        total_ry,
        direct_ry: kinetic_ry + attraction_ry + repulsion_ry,
        kinetic_ry,
        attraction_ry,
        repulsion_ry,
        slope0: scr.slope0,
    })
}

/// Electron density n(r) of the neutral TF atom, in a₀^{-3} against r in
/// a₀: n = (2Zφ/r)^{3/2}/(3π²). Integrates to Z (neutrality).
pub fn density_profile(scr: &TfScreening, z: u32) -> Result<RadialProfile> {
    if z < 1 {
        return Err(Error::InvalidInput("need Z >= 1".into()));
    }
    let b = tf_length_b(z);
    let c = 1.0 / (3.0 * std::f64::consts::PI.powi(2));
    let r: Vec<f64> = scr.x.iter().map(|&x| b * x).collect();
    let n: Vec<f64> = scr
        .x
        .iter()
        .zip(&scr.phi)
        .map(|(&x, &phi)| c * (2.0 * z as f64 * phi.max(0.0) / (b * x)).powf(1.5))
        .collect();
    RadialProfile::new(r, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn screening() -> &'static TfScreening {
        static CELL: OnceLock<TfScreening> = OnceLock::new();
        CELL.get_or_init(|| solve_screening(1e-12).unwrap())
    }

    #[test]
    fn slope_matches_oracle() {
        // independent shooting oracle, Richardson-extrapolated
        assert!(
            (screening().slope0 + 1.5880710).abs() < 1e-6,
            "slope {}",
            screening().slope0
        );
    }

    #[test]
    fn boundary_condition_at_origin() {
        assert!((screening().phi_at(0.0) - 1.0).abs() < 1e-15);
        assert!((screening().phi_at(1e-9) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn neutrality_integral_is_one() {
        assert!(
            (screening().neutrality - 1.0).abs() < 1e-6,
            "∫xφ″ = {}",
            screening().neutrality
        );
    }

    #[test]
    fn j1_equals_minus_slope() {
        // ∫φ^{3/2}/√x = −φ′(0) exactly on the solution
        let s = screening();
        assert!((s.j1 + s.slope0).abs() < 1e-6, "J1 {} slope {}", s.j1, s.slope0);
    }

    #[test]
    fn particular_solution_satisfies_ode() {
        // φ = 144/x³ solves φ″ = φ^{3/2}/√x identically
        for x in [1.0f64, 7.0, 123.0] {
            let phi = 144.0 / x.powi(3);
            let ddphi = 144.0 * 12.0 / x.powi(5);
            assert!((ddphi - phi.powf(1.5) / x.sqrt()).abs() < 1e-12 * ddphi);
        }
    }

    #[test]
    fn ode_residual_on_interior_grid() {
        // central difference of stored φ′ vs the right-hand side on the
        // densely stored segment x ∈ [1, 10]
        let s = screening();
        let lo = s.x.partition_point(|&x| x < 1.001);
        let hi = s.x.partition_point(|&x| x < 9.999);
        let mut worst: f64 = 0.0;
        for i in (lo + 1)..(hi - 1) {
            let h1 = s.x[i] - s.x[i - 1];
            let h2 = s.x[i + 1] - s.x[i];
            if (h1 - h2).abs() > 1e-9 {
                continue;
            }
            let fd = (s.dphi[i + 1] - s.dphi[i - 1]) / (h1 + h2);
            let rhs = s.phi[i].max(0.0).powf(1.5) / s.x[i].sqrt();
            worst = worst.max((fd - rhs).abs());
        }
        assert!(worst < 1e-6, "max residual {worst}");
    }

    #[test]
    fn energy_matches_reference_value() {
        let e = tf_energy(screening(), 1).unwrap();
        assert!(
            (e.total_ry + 1.5375).abs() < 1.5375 * 1e-3,
            "E = {}",
            e.total_ry
        );
        // Z^{7/3} scaling exact by construction
        let e10 = tf_energy(screening(), 10).unwrap();
        assert!((e10.total_ry / (e.total_ry * 10f64.powf(7.0 / 3.0)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_energy_routes_agree() {
        let e = tf_energy(screening(), 1).unwrap();
        assert!(
            (e.direct_ry / e.total_ry - 1.0).abs() < 2e-3,
            "direct {} vs slope {}",
            e.direct_ry,
            e.total_ry
        );
    }

    #[test]
    fn virial_split() {
        let e = tf_energy(screening(), 1).unwrap();
        assert!((e.kinetic_ry / -e.total_ry - 1.0).abs() < 2e-3);
        let potential = e.attraction_ry + e.repulsion_ry;
        assert!((potential / (2.0 * e.total_ry) - 1.0).abs() < 2e-3);
    }

    #[test]
    fn density_is_neutral_and_decreasing() {
        let n = density_profile(screening(), 3).unwrap();
        assert!((n.norm() / 3.0 - 1.0).abs() < 0.01, "∫n = {}", n.norm());
        assert!(n.values().windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn density_scales_as_z_squared_at_fixed_x() {
        // at the same scaled radius x, n ∝ Z²
        let s = screening();
        let n1 = density_profile(s, 1).unwrap();
        let n4 = density_profile(s, 4).unwrap();
        // index 100 corresponds to the same x for both profiles
        let ratio = n4.values()[100] / n1.values()[100];
        assert!((ratio - 16.0).abs() < 1e-9 * 16.0, "ratio {ratio}");
    }

    #[test]
    fn tail_approaches_asymptote_from_below() {
        // x³φ(x) climbs monotonically toward 144 (reaching ~0.60·144 at
        // x = 50, ~0.95·144 by x = 10³; the approach goes as x^{-0.772}
        // and full convergence is far outside the integration range)
        let s = screening();
        let ratio_at = |x: f64| s.phi_at(x) * x.powi(3) / 144.0;
        assert!(ratio_at(10.0) < ratio_at(25.0));
        assert!(ratio_at(25.0) < ratio_at(50.0));
        let r50 = ratio_at(50.0);
        assert!((0.55..0.65).contains(&r50), "x³φ/144 at 50: {r50}");
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(solve_screening(0.0).is_err());
        assert!(tf_energy(screening(), 0).is_err());
    }
}
