//! Sampled nonnegative radial functions (densities, screening data).

use serde::Serialize;

use crate::error::Error;
use crate::Result;

/// A nonnegative function of radius sampled on a strictly increasing grid.
///
/// Used both for electron densities n(r) and for variational minimizers;
/// the radial unit is whatever the producing module documents.
#[derive(Debug, Clone, Serialize)]
pub struct RadialProfile {
    r: Vec<f64>,
    values: Vec<f64>,
}

impl RadialProfile {
    pub fn new(r: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if r.len() != values.len() || r.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "profile needs matching grids of >= 2 points, got {} and {}",
                r.len(),
                values.len()
            )));
        }
        if !r.windows(2).all(|w| w[0] < w[1]) || r[0] < 0.0 {
            return Err(Error::InvalidInput(
                "radial grid must be nonnegative and strictly increasing".into(),
            ));
        }
        for &v in &values {
            if !(v >= 0.0) {
                return Err(Error::NegativeDensity(v));
            }
        }
        Ok(RadialProfile { r, values })
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    /// 3D integral of the profile, 4π ∫ r² v(r) dr by the trapezoid rule.
    pub fn norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 1..self.r.len() {
            let f0 = self.r[i - 1] * self.r[i - 1] * self.values[i - 1];
            let f1 = self.r[i] * self.r[i] * self.values[i];
            acc += 0.5 * (f0 + f1) * (self.r[i] - self.r[i - 1]);
        }
        4.0 * std::f64::consts::PI * acc
    }

    /// Linear interpolation; clamps outside the grid to the end values.
    pub fn at(&self, r: f64) -> f64 {
        if r <= self.r[0] {
            return self.values[0];
        }
        if r >= *self.r.last().unwrap() {
            return *self.values.last().unwrap();
        }
        let i = self.r.partition_point(|&g| g < r);
        let t = (r - self.r[i - 1]) / (self.r[i] - self.r[i - 1]);
        self.values[i - 1] * (1.0 - t) + self.values[i] * t
    }
}

/// Logarithmically spaced grid on [r_min, r_max].
pub fn log_spaced(r_min: f64, r_max: f64, points: usize) -> Vec<f64> {
    assert!(r_min > 0.0 && r_max > r_min && points >= 2);
    let step = (r_max / r_min).ln() / (points - 1) as f64;
    (0..points).map(|i| r_min * (step * i as f64).exp()).collect()
}
