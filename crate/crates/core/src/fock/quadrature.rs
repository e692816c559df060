//! Gauss–Legendre rules and an adaptive composite integrator.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(node, weight)` pairs on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(points: usize) -> Result<Vec<(f64, f64)>> {
    let degree = NonZeroUsize::new(points)
        .ok_or_else(|| Error::InvalidArgument("quadrature needs at least one point".into()))?;
    let mut pairs = GaussLegendre::new(degree).as_node_weight_pairs().to_vec();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(pairs)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureEstimate {
    pub value: f64,
    /// Number of panel doublings performed.
    pub levels: u32,
    pub panels: usize,
    /// Absolute change between the last two refinements.
    pub change: f64,
}

/// Composite Gauss–Legendre integration of `f` over `[a, b]` with `points`
/// nodes per panel. The panel count doubles until two successive estimates
/// agree to `tol * max(1, |value|)`.
pub fn adaptive_integrate<F>(f: F, a: f64, b: f64, points: usize, tol: f64, max_levels: u32) -> Result<QuadratureEstimate>
where
    F: Fn(f64) -> f64,
{
    let rule = gauss_legendre(points)?;
    let composite = |panels: usize| -> f64 {
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|k| {
                let lo = a + h * k as f64;
                let mid = lo + 0.5 * h;
                rule.iter().map(|&(x, w)| w * f(mid + 0.5 * h * x)).sum::<f64>() * 0.5 * h
            })
            .sum()
    };
    let mut panels = 1;
    let mut value = composite(panels);
    let mut change = f64::INFINITY;
    for level in 1..=max_levels {
        panels *= 2;
        let next = composite(panels);
        change = (next - value).abs();
        value = next;
        if change <= tol * value.abs().max(1.0) {
            return Ok(QuadratureEstimate {
                value,
                levels: level,
                panels,
                change,
            });
        }
    }
    Err(Error::QuadratureNonConvergence {
        tol,
        levels: max_levels,
        change,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let rule = gauss_legendre(5).unwrap();
        let total: f64 = rule.iter().map(|p| p.1).sum();
        assert!((total - 2.0).abs() < 1e-15);
        let x8: f64 = rule.iter().map(|&(x, w)| w * x.powi(8)).sum();
        assert!((x8 - 2.0 / 9.0).abs() < 1e-15);
        assert!(rule.windows(2).all(|p| p[0].0 < p[1].0));
        assert!(gauss_legendre(0).is_err());
    }

    #[test]
    fn adaptive_converges_on_smooth_integrands() {
        let est = adaptive_integrate(f64::sin, 0.0, PI, 16, 1e-14, 10).unwrap();
        assert!((est.value - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_reports_non_convergence() {
        let err = adaptive_integrate(|x: f64| x.sqrt().recip(), 0.0, 1.0, 2, 1e-15, 3).unwrap_err();
        assert!(matches!(err, Error::QuadratureNonConvergence { levels: 3, .. }));
    }
}
