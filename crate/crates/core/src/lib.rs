//! Numerical laboratory spanning atomic multiplet structure and the bulk
//! stability of matter, from exact Zeeman-effect arithmetic up to the
//! limiting mass of white dwarfs.
//!
//! The crate is organized around self-contained physics modules:
//!
//! - [`constants`]: CODATA 2018 physical constants and unit conversions.
//! - [`exact`]: exact half-integer and rational arithmetic for angular
//!   momentum bookkeeping.
//! - [`zeeman`]: multiplet structure, strong-field Zeeman tables, the
//!   sum-rule reconstruction of Lande g-factors, selection rules and
//!   shell counting.
//! - [`bounds`]: rigorous and variational energy/size bounds for atoms
//!   and bulk Coulomb matter.
//! - [`tf_atom`]: the non-relativistic Thomas-Fermi atom (screening
//!   function, total energy, electron density).
//! - [`star`]: single-zone heuristic scaling laws for gravitating matter
//!   and the critical electron numbers they imply.
//! - [`white_dwarf`]: relativistic Thomas-Fermi (Chandrasekhar) theory:
//!   degenerate equation of state, stellar structure, mass-radius curve
//!   and the critical compactness parameter.

pub mod bounds;
pub mod constants;
pub mod error;
pub mod exact;
pub mod lane_emden;
pub mod ode;
pub mod profile;
pub mod star;
pub mod tf_atom;
pub mod variational;
pub mod white_dwarf;
pub mod zeeman;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
