//! Zonal harmonics on S³ and the Fock kernel.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::quadrature::adaptive_integrate;
use crate::error::{Error, Result};

/// Volume of the unit three-sphere.
pub const S3_VOLUME: f64 = 2.0 * PI * PI;

/// Smallest accepted per-panel rule for [`kernel_eigenvalue`].
pub const MIN_QUAD_POINTS: usize = 64;

pub const EIGENVALUE_TOL: f64 = 1e-13;
pub const MAX_REFINEMENTS: u32 = 12;

/// Chebyshev `U_{n-1}(x)` by the three-term recurrence; `U_{-1} = 0`.
pub fn chebyshev_u(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 1..n {
        (prev, cur) = (cur, 2.0 * x * cur - prev);
    }
    cur
}

/// The degree-`(n-1)` zonal harmonic `sin(n theta) / sin(theta)`.
/// Exact at the poles: `n` at `theta = 0` and `(-1)^(n-1) n` at `theta = pi`.
pub fn gegenbauer_zonal(n: usize, theta: f64) -> f64 {
    chebyshev_u(n, theta.cos())
}

/// `cot(theta/2) sin(n theta) = (1 + cos theta) U_{n-1}(cos theta)`,
/// bounded by `2n`.
pub fn zonal_integrand(n: usize, theta: f64) -> f64 {
    let c = theta.cos();
    (1.0 + c) * chebyshev_u(n, c)
}

/// `K(u, u') = 1 / (u - u')^2 = 1 / (2 (1 - u.u'))` on unit four-vectors,
/// acting with measure `dOmega / V(S3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZonalKernel {
    pub normalization: f64,
}

impl Default for ZonalKernel {
    fn default() -> Self {
        Self {
            normalization: S3_VOLUME,
        }
    }
}

impl ZonalKernel {
    pub fn evaluate(&self, cos_theta: f64) -> f64 {
        1.0 / (2.0 * (1.0 - cos_theta))
    }

    /// `sum_{n=1}^{order} U_{n-1}`: the kernel's zonal expansion truncated
    /// after `order` harmonics (each with eigenvalue `1/n` times `n`).
    pub fn truncated(&self, order: usize, cos_theta: f64) -> f64 {
        let (mut prev, mut cur, mut sum) = (0.0, 1.0, 0.0);
        for k in 0..order {
            sum += cur;
            if k + 1 < order {
                (prev, cur) = (cur, 2.0 * cos_theta * cur - prev);
            }
        }
        sum
    }

    /// `K - truncated`, smooth enough for plain product quadrature.
    pub fn remainder(&self, order: usize, cos_theta: f64) -> f64 {
        self.evaluate(cos_theta) - self.truncated(order, cos_theta)
    }
}

/// Eigenvalue of `psi -> (1/2pi^2) int psi(u') / (u - u')^2 dOmega'` on the
/// degree-`(n-1)` harmonics, from the one-dimensional zonal reduction
/// `(1/(n pi)) int_0^pi cot(theta/2) sin(n theta) dtheta`.
pub fn kernel_eigenvalue(n: usize, quad_points: usize) -> Result<f64> {
    kernel_eigenvalue_with(n, quad_points, EIGENVALUE_TOL)
}

pub fn kernel_eigenvalue_with(n: usize, quad_points: usize, tol: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("level index n must be at least 1".into()));
    }
    if quad_points < MIN_QUAD_POINTS {
        return Err(Error::InvalidArgument(format!(
            "quad_points must be at least {MIN_QUAD_POINTS}, got {quad_points}"
        )));
    }
    let est = adaptive_integrate(|t| zonal_integrand(n, t), 0.0, PI, quad_points, tol, MAX_REFINEMENTS)?;
    Ok(est.value / (n as f64 * PI))
}
