//! Direct discretization of the Fock operator on S³.
//!
//! Points are `u = (cos chi, sin chi cos theta, sin chi sin theta cos phi,
//! sin chi sin theta sin phi)` with Gauss–Legendre nodes in `cos chi` (weight
//! `sin chi` folded in), Gauss–Legendre nodes in `cos theta`, and a uniform
//! azimuth with `2G` points. The kernel is split as `K = K_M + R_M` where
//! `K_M` is its zonal expansion through order `M`. `K_M` is smooth and goes
//! through the product rule. The remainder `R_M` integrates to zero against
//! constants, so its diagonal is replaced by minus the weighted row sum.
//!
//! Rotation in `phi` makes the matrix block-circulant. Azimuthal mode `m`
//! gives a real symmetric `G^2 x G^2` block, and modes `m` and `2G - m`
//! coincide. Harmonics of degree `n - 1` only reach `|m| < n`, so blocks
//! `0..=n_probe` cover the probed levels and a separator.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::quadrature::gauss_legendre;
use super::zonal::{ZonalKernel, S3_VOLUME};
use crate::error::{Error, Result};

pub const MIN_GRID: usize = 8;
pub const MAX_PROBE: usize = 6;
pub const DEFAULT_SUBTRACTION_ORDER: usize = 4;
pub const REFERENCE_GRID: usize = 24;
/// Relative gap separating eigenvalue clusters.
pub const CLUSTER_GAP: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NystromConfig {
    pub grid_size: usize,
    pub n_probe: usize,
    pub subtraction_order: usize,
}

impl NystromConfig {
    pub fn new(grid_size: usize, n_probe: usize) -> Self {
        Self {
            grid_size,
            n_probe,
            subtraction_order: DEFAULT_SUBTRACTION_ORDER,
        }
    }

    /// Grid needed so that every probed level is resolved in each direction.
    pub fn needed_grid(n_probe: usize) -> usize {
        MIN_GRID.max(4 * n_probe)
    }

    fn validate(&self) -> Result<()> {
        if self.n_probe == 0 || self.n_probe > MAX_PROBE {
            return Err(Error::InvalidArgument(format!(
                "n_probe must be in 1..={MAX_PROBE}, got {}",
                self.n_probe
            )));
        }
        if self.subtraction_order == 0 {
            return Err(Error::InvalidArgument("subtraction order must be at least 1".into()));
        }
        let needed = Self::needed_grid(self.n_probe);
        if self.grid_size < needed {
            return Err(Error::GridTooCoarse {
                grid: self.grid_size,
                probes: self.n_probe,
                needed,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub n: usize,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub multiplicity: usize,
    pub expected_multiplicity: usize,
    /// `|mean - 1/n| n`.
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NystromReport {
    pub config: NystromConfig,
    pub points: usize,
    pub azimuth_points: usize,
    pub clusters: Vec<Cluster>,
    /// Largest eigenvalue below the last probed cluster.
    pub separator: f64,
}

impl NystromReport {
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.clusters.iter().map(|c| c.mean).collect()
    }

    pub fn lambda1_error(&self) -> f64 {
        (self.clusters[0].mean - 1.0).abs()
    }

    pub fn max_relative_error(&self) -> f64 {
        self.clusters.iter().map(|c| c.relative_error).fold(0.0, f64::max)
    }

    pub fn multiplicities_match(&self) -> bool {
        self.clusters.iter().all(|c| c.multiplicity == c.expected_multiplicity)
    }
}

/// The `n_probe` largest distinct eigenvalues of the discretized operator.
pub fn nystrom_cross_check(grid_size: usize, n_probe: usize) -> Result<Vec<f64>> {
    Ok(nystrom_spectrum(&NystromConfig::new(grid_size, n_probe))?.eigenvalues())
}

struct Grid {
    cos_chi: Vec<f64>,
    sin_chi: Vec<f64>,
    cos_theta: Vec<f64>,
    sin_theta: Vec<f64>,
    /// Product weight of the meridional point `(a, b)`, azimuth included.
    weight: Vec<f64>,
    azimuth_cos: Vec<f64>,
}

impl Grid {
    fn new(g: usize) -> Result<Self> {
        let chi = gauss_legendre(g)?;
        let theta = gauss_legendre(g)?;
        let n_phi = 2 * g;
        let w_phi = 2.0 * PI / n_phi as f64;
        let mut weight = Vec::with_capacity(g * g);
        for &(t, wt) in &chi {
            for &(_, wx) in &theta {
                weight.push(wt * (1.0 - t * t).sqrt() * wx * w_phi);
            }
        }
        Ok(Self {
            cos_chi: chi.iter().map(|p| p.0).collect(),
            sin_chi: chi.iter().map(|p| (1.0 - p.0 * p.0).sqrt()).collect(),
            cos_theta: theta.iter().map(|p| p.0).collect(),
            sin_theta: theta.iter().map(|p| (1.0 - p.0 * p.0).sqrt()).collect(),
            weight,
            azimuth_cos: (0..n_phi).map(|c| (2.0 * PI * c as f64 / n_phi as f64).cos()).collect(),
        })
    }

    fn g(&self) -> usize {
        self.cos_chi.len()
    }

    /// `u_i . u_j` with `u_i` at azimuth 0 and `u_j` at azimuth index `c`.
    fn dot(&self, i: usize, j: usize, c: usize) -> f64 {
        let g = self.g();
        let (a, b) = (i / g, i % g);
        let (a2, b2) = (j / g, j % g);
        self.cos_chi[a] * self.cos_chi[a2]
            + self.sin_chi[a]
                * self.sin_chi[a2]
                * (self.cos_theta[b] * self.cos_theta[b2]
                    + self.sin_theta[b] * self.sin_theta[b2] * self.azimuth_cos[c])
    }
}

pub fn nystrom_spectrum(cfg: &NystromConfig) -> Result<NystromReport> {
    cfg.validate()?;
    let grid = Grid::new(cfg.grid_size)?;
    let g = grid.g();
    let nb = g * g;
    let n_phi = 2 * g;
    let modes = cfg.n_probe + 1;
    let kernel = ZonalKernel::default();
    let order = cfg.subtraction_order;
    let fac = 1.0 / S3_VOLUME;
    // mode_cos[m][c] = cos(2 pi m c / n_phi)
    let mode_cos: Vec<Vec<f64>> = (0..modes)
        .map(|m| (0..n_phi).map(|c| (2.0 * PI * (m * c) as f64 / n_phi as f64).cos()).collect())
        .collect();

    // rows[i] = (per-mode row entries, weighted remainder row sum)
    let rows: Vec<(Vec<Vec<f64>>, f64)> = (0..nb)
        .into_par_iter()
        .map(|i| {
            let mut out = vec![vec![0.0; nb]; modes];
            let mut row_sum = 0.0;
            for j in 0..nb {
                let scale = fac * (grid.weight[i] * grid.weight[j]).sqrt();
                for c in 0..n_phi {
                    let x = grid.dot(i, j, c);
                    let smooth = kernel.truncated(order, x);
                    let rem = if i == j && c == 0 { 0.0 } else { kernel.remainder(order, x) };
                    row_sum += grid.weight[j] * rem;
                    let k = smooth + rem;
                    for (m, block) in out.iter_mut().enumerate() {
                        block[j] += scale * mode_cos[m][c] * k;
                    }
                }
            }
            (out, row_sum)
        })
        .collect();

    let blocks: Vec<DMatrix<f64>> = (0..modes)
        .map(|m| {
            DMatrix::from_fn(nb, nb, |i, j| {
                let v = rows[i].0[m][j];
                if i == j {
                    v - fac * rows[i].1
                } else {
                    v
                }
            })
        })
        .collect();

    let spectra = blocks
        .into_par_iter()
        .map(|b| {
            // average with the transpose to remove rounding asymmetry
            let sym = (&b + b.transpose()) * 0.5;
            SymmetricEigen::try_new(sym, f64::EPSILON, 100_000)
                .map(|e| e.eigenvalues.iter().copied().collect::<Vec<f64>>())
                .ok_or_else(|| Error::EigenSolver("symmetric eigen-decomposition did not converge".into()))
        })
        .collect::<Result<Vec<_>>>()?;

    // (eigenvalue, multiplicity) with modes m > 0 counted twice
    let mut eig: Vec<(f64, usize)> = spectra
        .iter()
        .enumerate()
        .flat_map(|(m, s)| s.iter().map(move |&v| (v, if m == 0 { 1 } else { 2 })))
        .collect();
    eig.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut clusters = Vec::new();
    let mut k = 0;
    while clusters.len() < cfg.n_probe && k < eig.len() {
        let start = k;
        let mut multiplicity = eig[k].1;
        while k + 1 < eig.len() && (eig[k].0 - eig[k + 1].0) <= CLUSTER_GAP * eig[k].0.abs() {
            k += 1;
            multiplicity += eig[k].1;
        }
        let members = &eig[start..=k];
        let total: f64 = members.iter().map(|(v, w)| v * *w as f64).sum();
        let mean = total / multiplicity as f64;
        let n = clusters.len() + 1;
        clusters.push(Cluster {
            n,
            mean,
            min: members.last().unwrap().0,
            max: members[0].0,
            multiplicity,
            expected_multiplicity: n * n,
            relative_error: (mean - 1.0 / n as f64).abs() * n as f64,
        });
        k += 1;
    }
    if clusters.len() < cfg.n_probe {
        return Err(Error::EigenSolver("fewer eigenvalue clusters than requested".into()));
    }
    Ok(NystromReport {
        config: *cfg,
        points: nb * n_phi,
        azimuth_points: n_phi,
        clusters,
        separator: eig.get(k).map_or(0.0, |e| e.0),
    })
}
