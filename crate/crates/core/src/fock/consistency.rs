//! Pointwise check of the Fock equation on a zonal harmonic.
//!
//! For each sample `u` the right side is integrated in polar coordinates
//! about `u`: `u' = cos(t) u + sin(t) w` with `w` on the unit two-sphere
//! orthogonal to `u`. The measure `sin^2 t` cancels the kernel singularity,
//! leaving the bounded factor `(1 + cos t) / 2`.

use std::f64::consts::PI;

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::levels::PhysicalConstants;
use super::quadrature::gauss_legendre;
use super::zonal::{chebyshev_u, S3_VOLUME};
use crate::error::{Error, Result};
use crate::seeds::{stream, SeedSplitter};

pub const SAMPLE_POINTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePoint {
    pub u: [f64; 4],
    pub harmonic: f64,
    pub right_side: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub n: usize,
    pub axis: [f64; 4],
    /// `alpha m c / p0` at the eigencondition.
    pub coupling: f64,
    pub samples: Vec<SamplePoint>,
    /// `max |right_side - harmonic|` over samples, relative to `n`.
    pub max_error: f64,
}

fn random_unit<R: rand::Rng>(rng: &mut R) -> [f64; 4] {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.map(|x| x / norm);
        }
    }
}

fn dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Orthonormal basis of the complement of the unit vector `u`.
fn complement(u: &[f64; 4]) -> [[f64; 4]; 3] {
    let mut basis: Vec<[f64; 4]> = Vec::with_capacity(3);
    let mut axes: Vec<usize> = (0..4).collect();
    axes.sort_by(|&a, &b| u[a].abs().total_cmp(&u[b].abs()));
    for &k in axes.iter().take(3) {
        let mut v = [0.0; 4];
        v[k] = 1.0;
        for q in std::iter::once(u).chain(basis.iter()) {
            let d = dot(&v, q);
            for i in 0..4 {
                v[i] -= d * q[i];
            }
        }
        let norm = dot(&v, &v).sqrt();
        basis.push(v.map(|x| x / norm));
    }
    [basis[0], basis[1], basis[2]]
}

/// Evaluates `alpha (m c / p0) (1/2pi^2) int Y(u') / (u - u')^2 dOmega'` for
/// the zonal harmonic `Y(u') = U_{n-1}(u'.e)` at seeded sample points, with
/// `p0` on the eigencondition for level `n`. Each value should reproduce `Y(u)`.
pub fn self_consistency(n: usize, consts: &PhysicalConstants, seed: u64, quad_points: usize) -> Result<ConsistencyReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("level index n must be at least 1".into()));
    }
    consts.validate()?;
    let lambda = 1.0 / n as f64;
    let p0 = consts.alpha * consts.mass * consts.c * lambda;
    let coupling = consts.alpha * consts.mass * consts.c / p0;

    let splitter = SeedSplitter::new(seed);
    let axis = random_unit(&mut splitter.rng(stream::SPHERE, 0));
    let polar = gauss_legendre(quad_points.max(n + 8))?;
    let sphere_pts = (n + 4).max(8);
    let cos_beta = gauss_legendre(sphere_pts)?;
    let n_phi = 2 * sphere_pts;

    let samples = (0..SAMPLE_POINTS)
        .map(|s| {
            let u = random_unit(&mut splitter.rng(stream::SPHERE, 1 + s as u64));
            let [e1, e2, e3] = complement(&u);
            let (ue, e1e, e2e, e3e) = (dot(&u, &axis), dot(&e1, &axis), dot(&e2, &axis), dot(&e3, &axis));
            let mut total = 0.0;
            for &(x, wx) in &polar {
                let t = 0.5 * PI * (x + 1.0);
                let (st, ct) = t.sin_cos();
                let radial = 0.5 * (1.0 + ct);
                let mut shell = 0.0;
                for &(cb, wb) in &cos_beta {
                    let sb = (1.0 - cb * cb).sqrt();
                    for k in 0..n_phi {
                        let (sp, cp) = (2.0 * PI * k as f64 / n_phi as f64).sin_cos();
                        let we = sb * cp * e1e + sb * sp * e2e + cb * e3e;
                        shell += wb * chebyshev_u(n, ct * ue + st * we);
                    }
                }
                total += wx * radial * shell * (2.0 * PI / n_phi as f64);
            }
            let integral = total * 0.5 * PI / S3_VOLUME;
            SamplePoint {
                u,
                harmonic: chebyshev_u(n, ue),
                right_side: coupling * integral,
            }
        })
        .collect::<Vec<_>>();
    let max_error = samples
        .iter()
        .map(|p| (p.right_side - p.harmonic).abs() / n as f64)
        .fold(0.0, f64::max);
    Ok(ConsistencyReport {
        n,
        axis,
        coupling,
        samples,
        max_error,
    })
}
