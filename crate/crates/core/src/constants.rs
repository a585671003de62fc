//! Physical constants (CODATA 2018) and unit conversions.
//!
//! All solver modules work in natural units internally; this module owns
//! every conversion to SI and solar units. Values are hard-coded from
//! CODATA 2018 (Tiesinga et al., Rev. Mod. Phys. 93, 025010) for
//! reproducibility; nothing is fetched at run time.

use serde::Serialize;

/// Version tag recorded in run manifests.
pub const CONSTANTS_VERSION: &str = "CODATA-2018";

/// Immutable set of physical constants. Safe to share across threads.
#[derive(Debug, Clone, Serialize)]
pub struct PhysicalConstants {
    /// Fine structure constant (dimensionless).
    pub alpha: f64,
    /// Rydberg energy in eV.
    pub rydberg_ev: f64,
    /// Rydberg energy in joule.
    pub rydberg_joule: f64,
    /// Bohr radius in m.
    pub bohr_radius_m: f64,
    /// Electron mass in kg.
    pub electron_mass_kg: f64,
    /// Average nucleon mass (m_p + m_n)/2 in kg.
    pub nucleon_mass_kg: f64,
    /// Planck mass sqrt(hbar c / G) in kg.
    pub planck_mass_kg: f64,
    /// Newtonian gravitational constant in m^3 kg^-1 s^-2.
    pub gravitational_g: f64,
    /// Reduced Planck constant in J s.
    pub hbar: f64,
    /// Speed of light in m/s.
    pub c: f64,
    /// Elementary charge in C.
    pub elementary_charge: f64,
    /// Solar mass in kg (IAU 2015 nominal).
    pub solar_mass_kg: f64,
    /// Source tag for all values.
    pub source: &'static str,
}

/// The CODATA 2018 constant set.
///
/// Derived-constant identities are asserted on construction:
/// M_Pl = sqrt(hbar c / G) to 1e-10 relative and Ry = alpha^2 m c^2 / 2
/// to 1e-6 relative.
pub fn codata() -> PhysicalConstants {
    let hbar: f64 = 1.054_571_817e-34;
    let c: f64 = 299_792_458.0;
    let g: f64 = 6.674_30e-11;
    let k = PhysicalConstants {
        alpha: 7.297_352_569_3e-3,
        rydberg_ev: 13.605_693_122_994,
        rydberg_joule: 2.179_872_361_103_5e-18,
        bohr_radius_m: 5.291_772_109_03e-11,
        electron_mass_kg: 9.109_383_701_5e-31,
        // (m_p + m_n)/2 = (1.67262192369 + 1.67492749804)/2 e-27 kg
        nucleon_mass_kg: 1.673_774_710_865e-27,
        // defined via hbar, c, G; CODATA prints 2.176434(24)e-8 kg
        planck_mass_kg: (hbar * c / g).sqrt(),
        gravitational_g: g,
        hbar,
        c,
        elementary_charge: 1.602_176_634e-19,
        solar_mass_kg: 1.988_47e30,
        source: CONSTANTS_VERSION,
    };
    let mpl = (k.hbar * k.c / k.gravitational_g).sqrt();
    debug_assert!((k.planck_mass_kg / mpl - 1.0).abs() < 1e-10);
    let ry = 0.5 * k.alpha * k.alpha * k.electron_mass_kg * k.c * k.c;
    debug_assert!((k.rydberg_joule / ry - 1.0).abs() < 1e-6);
    k
}

impl PhysicalConstants {
    /// Ratio M_Pl / m_N, the large number behind stellar scales.
    pub fn planck_to_nucleon(&self) -> f64 {
        self.planck_mass_kg / self.nucleon_mass_kg
    }

    /// Electron Compton wavelength hbar / (m c) in m.
    pub fn electron_compton_m(&self) -> f64 {
        self.hbar / (self.electron_mass_kg * self.c)
    }

    /// Electron rest energy m c^2 in joule.
    pub fn electron_rest_energy_joule(&self) -> f64 {
        self.electron_mass_kg * self.c * self.c
    }

    /// Dimensionless gravitational coupling kappa = G (m_Z/Z)^2 / (hbar c)
    /// for a star with mass-per-electron `mu_per_electron_kg`.
    pub fn kappa(&self, mu_per_electron_kg: f64) -> f64 {
        self.gravitational_g * mu_per_electron_kg * mu_per_electron_kg / (self.hbar * self.c)
    }
}
