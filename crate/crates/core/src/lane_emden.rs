//! Lane-Emden polytrope solver.
//!
//! θ″ + (2/ξ)θ′ + θⁿ = 0, θ(0) = 1, θ′(0) = 0. The solver returns the
//! first zero ξ₁ and the mass integral −ξ₁²θ′(ξ₁), the two numbers the
//! stellar-structure checks need (indices 3/2 and 3 bracket the
//! white-dwarf family).

use crate::error::Error;
use crate::ode::{integrate_with_event, Adaptive};
use crate::Result;

#[derive(Debug, Clone, Copy)]
pub struct LaneEmden {
    pub index: f64,
    pub xi1: f64,
    /// −ξ₁²θ′(ξ₁), the dimensionless mass of the polytrope.
    pub mass: f64,
}

pub fn solve(index: f64) -> Result<LaneEmden> {
    if !(index >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "polytrope index must be >= 0, got {index}"
        )));
    }
    // series start: θ = 1 − ξ²/6 + n ξ⁴/120 + O(ξ⁶)
    let xi0: f64 = 1e-4;
    let theta0 = 1.0 - xi0 * xi0 / 6.0 + index * xi0.powi(4) / 120.0;
    let dtheta0 = -xi0 / 3.0 + index * xi0.powi(3) / 30.0;
    let f = |xi: f64, y: &[f64; 2]| [y[1], -2.0 / xi * y[1] - y[0].max(0.0).powf(index)];
    let opt = Adaptive {
        rtol: 1e-12,
        atol: 1e-14,
        h_init: 1e-4,
        ..Adaptive::default()
    };
    let (_, hit) = integrate_with_event(
        &f,
        xi0,
        [theta0, dtheta0],
        1e4,
        &opt,
        &|_, y: &[f64; 2]| y[0],
        1e-13,
    );
    match hit {
        Some((xi1, y)) => Ok(LaneEmden {
            index,
            xi1,
            mass: -xi1 * xi1 * y[1],
        }),
        None => Err(Error::UnboundedProfile {
            r_max: 1e4,
            x_c: 1.0,
        }),
    }
}
