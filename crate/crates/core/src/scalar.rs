//! Complex scalars for character values, Gauss sums and operator entries.
//!
//! The backend is machine-precision `Complex64`. Every character sum in the
//! crate is accumulated in the canonical enumeration order of the underlying
//! ring, so results are bit-for-bit reproducible on a given platform.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Scalar = Complex64;

/// Global tolerance for scalar equality.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub const ZERO: Scalar = Complex64::new(0.0, 0.0);
pub const ONE: Scalar = Complex64::new(1.0, 0.0);
pub const I: Scalar = Complex64::new(0.0, 1.0);

/// `exp(2πi k / n)`, periodic in `k` modulo `n`.
pub fn root_of_unity(n: u64, k: i64) -> Result<Scalar> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let r = k.rem_euclid(n as i64) as u64;
    // exact values on the axes avoid spurious 1e-16 imaginary parts
    if r == 0 {
        return Ok(ONE);
    }
    if 2 * r == n {
        return Ok(-ONE);
    }
    if 4 * r == n {
        return Ok(I);
    }
    if 4 * r == 3 * n {
        return Ok(-I);
    }
    Ok(Complex64::from_polar(1.0, TAU * r as f64 / n as f64))
}

pub fn try_inv(a: Scalar) -> Result<Scalar> {
    if a == ZERO {
        return Err(Error::DegenerateScalar);
    }
    Ok(a.inv())
}

pub fn approx_equal(a: Scalar, b: Scalar, tol: f64) -> bool {
    (a - b).norm() <= tol
}

pub fn sqrt_nonneg_int(n: u64) -> f64 {
    (n as f64).sqrt()
}

/// Rounds away floating noise below `1e-12` so that reports print cleanly.
pub fn tidy(z: Scalar) -> Scalar {
    let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
    Complex64::new(clean(z.re), clean(z.im))
}
