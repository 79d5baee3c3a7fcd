use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{domain, Result};

/// Direction of a line `e^{iφ}ℝ` through the origin, with `φ ∈ [0, π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LineAngle(f64);

impl LineAngle {
    /// The real axis.
    pub const REAL: LineAngle = LineAngle(0.0);

    pub fn new(phi: f64) -> Result<Self> {
        if phi.is_finite() && (0.0..PI).contains(&phi) {
            Ok(LineAngle(phi))
        } else {
            Err(domain("LineAngle::new", phi, "0 <= phi < pi"))
        }
    }

    /// The imaginary axis, `φ = π/2`.
    pub fn imaginary() -> Self {
        LineAngle(PI / 2.0)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// `e^{iφ}`, the unit direction of the line.
    pub fn direction(self) -> Complex64 {
        Complex64::from_polar(1.0, self.0)
    }

    /// `cos φ` with the rounding residue at `φ = π/2` flushed to zero, so
    /// main terms that vanish analytically vanish numerically too.
    pub fn cos(self) -> f64 {
        let c = self.0.cos();
        if c.abs() < 1e-12 {
            0.0
        } else {
            c
        }
    }
}

impl fmt::Display for LineAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<f64> for LineAngle {
    type Error = crate::Error;

    fn try_from(phi: f64) -> Result<Self> {
        LineAngle::new(phi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range() {
        assert!(LineAngle::new(-1e-12).is_err());
        assert!(LineAngle::new(PI).is_err());
        assert!(LineAngle::new(f64::NAN).is_err());
        assert!(LineAngle::new(0.0).is_ok());
        assert!(LineAngle::new(PI - 1e-9).is_ok());
    }

    #[test]
    fn cos_vanishes_on_imaginary_axis() {
        assert_eq!(LineAngle::imaginary().cos(), 0.0);
        assert_eq!(LineAngle::REAL.cos(), 1.0);
    }
}
