//! Dirac and Weyl spinors, their totally null planes, and Cartan purity.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::clifford::{weyl_projectors, GammaRep};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, C64};
use crate::seeds;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Plus,
    Minus,
    None,
}

impl Chirality {
    pub fn opposite(self) -> Self {
        match self {
            Chirality::Plus => Chirality::Minus,
            Chirality::Minus => Chirality::Plus,
            Chirality::None => Chirality::None,
        }
    }
}

/// A `2^n`-component spinor with an optional chirality tag.
#[derive(Debug, Clone, PartialEq)]
pub struct Spinor {
    components: CVector,
    chirality: Chirality,
}

impl Spinor {
    /// An untagged (Dirac) spinor.
    pub fn dirac(components: CVector) -> Self {
        Self {
            components,
            chirality: Chirality::None,
        }
    }

    /// A Weyl spinor; fails unless `P^chirality psi = psi` to within
    /// `tol * |psi|`.
    pub fn weyl(rep: &GammaRep, components: CVector, chirality: Chirality, tol: f64) -> Result<Self> {
        check_len(rep, &components)?;
        if chirality != Chirality::None {
            let projected = project(rep, &components, chirality);
            let residual = (&projected - &components).norm();
            if residual > tol * components.norm().max(f64::MIN_POSITIVE) {
                return Err(Error::ChiralityViolation(chirality, residual));
            }
        }
        Ok(Self {
            components,
            chirality,
        })
    }

    /// Projects onto a chiral half and tags the result.
    pub fn projected(rep: &GammaRep, components: &CVector, chirality: Chirality) -> Self {
        Self {
            components: project(rep, components, chirality),
            chirality,
        }
    }

    /// Computational basis vector `k`, tagged with its chirality.
    pub fn basis(rep: &GammaRep, k: usize) -> Self {
        Self {
            components: linalg::unit(rep.spinor_dim(), k),
            chirality: rep.basis_chirality(k),
        }
    }

    pub fn components(&self) -> &CVector {
        &self.components
    }

    pub fn into_components(self) -> CVector {
        self.components
    }

    pub fn chirality(&self) -> Chirality {
        self.chirality
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.components.norm()
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self {
            components: &self.components * c,
            chirality: self.chirality,
        }
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        self.scaled(C64::from(1.0 / n))
    }

    /// Applies an even element (which preserves chirality).
    pub fn transformed(&self, m: &CMatrix) -> Self {
        Self {
            components: m * &self.components,
            chirality: self.chirality,
        }
    }

    /// Linear combination of two spinors; the tag survives only if shared.
    pub fn combine(a: C64, x: &Spinor, b: C64, y: &Spinor) -> Self {
        let chirality = if x.chirality == y.chirality {
            x.chirality
        } else {
            Chirality::None
        };
        Self {
            components: &x.components * a + &y.components * b,
            chirality,
        }
    }
}

fn check_len(rep: &GammaRep, v: &CVector) -> Result<()> {
    if v.len() != rep.spinor_dim() {
        return Err(Error::SpinorLength {
            expected: rep.spinor_dim(),
            got: v.len(),
        });
    }
    Ok(())
}

fn project(rep: &GammaRep, v: &CVector, chirality: Chirality) -> CVector {
    let (pp, pm) = weyl_projectors(rep);
    match chirality {
        Chirality::Plus => pp * v,
        Chirality::Minus => pm * v,
        Chirality::None => v.clone(),
    }
}

/// Basis of the totally null plane `{Z : Z_a gamma^a psi = 0}`.
#[derive(Debug, Clone)]
pub struct NullPlane {
    pub basis: Vec<CVector>,
    pub dim: usize,
    /// Largest `|Z.Z'|` over pairs of (unit) basis vectors.
    pub nullity_residual: f64,
    pub relative_singular_values: Vec<f64>,
}

/// Computes `T_d(psi)` as the numerical kernel of the `2^n x 2n` matrix with
/// columns `gamma^a psi`, then re-checks that the kernel is totally null.
pub fn null_plane_of(psi: &Spinor, rep: &GammaRep, tol: f64) -> Result<NullPlane> {
    check_len(rep, &psi.components)?;
    let norm = psi.norm();
    if norm < tol {
        return Err(Error::ZeroSpinor { norm, tol });
    }
    let unit = &psi.components / C64::from(norm);
    let vdim = rep.vector_dim();
    let mut columns = CMatrix::zeros(rep.spinor_dim(), vdim);
    for a in 0..vdim {
        let col = rep.upper(a) * &unit;
        columns.set_column(a, &col);
    }
    let kernel = linalg::numerical_kernel(&columns, tol)?;
    let metric = rep.metric();
    let mut nullity_residual = 0.0f64;
    for (i, z) in kernel.basis.iter().enumerate() {
        for w in &kernel.basis[i..] {
            let dot: C64 = (0..vdim).map(|a| z[a] * w[a] * metric[a]).sum();
            nullity_residual = nullity_residual.max(dot.norm());
        }
    }
    Ok(NullPlane {
        dim: kernel.basis.len(),
        basis: kernel.basis,
        nullity_residual,
        relative_singular_values: kernel.relative_singular_values,
    })
}

#[derive(Debug, Clone)]
pub struct PurityVerdict {
    pub pure: bool,
    pub plane: NullPlane,
}

/// A Weyl spinor is pure when its null plane has the maximal dimension `n`.
pub fn is_pure(psi: &Spinor, rep: &GammaRep, tol: f64) -> Result<PurityVerdict> {
    if psi.chirality == Chirality::None {
        return Err(Error::ChiralityRequired);
    }
    let plane = null_plane_of(psi, rep, tol)?;
    Ok(PurityVerdict {
        pure: plane.dim == rep.half_dim(),
        plane,
    })
}

/// First computational basis vector of the requested chirality. Each tensor
/// basis vector is annihilated by the `n` null combinations
/// `gamma_{2k-1} +- i gamma_{2k}`, so it is pure.
pub fn reference_pure_spinor(rep: &GammaRep, chirality: Chirality) -> Result<Spinor> {
    if chirality == Chirality::None {
        return Err(Error::ChiralityRequired);
    }
    let k = rep.chiral_indices(chirality)[0];
    Ok(Spinor::basis(rep, k))
}

/// `exp(sum_{a<b} c_ab [gamma_a, gamma_b] / 4)` for `c` in lexicographic pair
/// order.
pub fn spin_element(rep: &GammaRep, coeffs: &[C64]) -> CMatrix {
    let vdim = rep.vector_dim();
    assert_eq!(coeffs.len(), vdim * (vdim - 1) / 2, "one coefficient per pair");
    let dim = rep.spinor_dim();
    let mut generator = CMatrix::zeros(dim, dim);
    let mut k = 0;
    for a in 0..vdim {
        for b in a + 1..vdim {
            generator += rep.bivector(a, b) * coeffs[k];
            k += 1;
        }
    }
    generator.exp()
}

/// Spin element with complex coefficients uniform in `[-scale, scale]^2`.
pub fn random_spin_element<R: Rng>(rep: &GammaRep, rng: &mut R, scale: f64) -> CMatrix {
    let vdim = rep.vector_dim();
    let coeffs: Vec<C64> = (0..vdim * (vdim - 1) / 2)
        .map(|_| {
            C64::new(
                rng.random_range(-scale..=scale),
                rng.random_range(-scale..=scale),
            )
        })
        .collect();
    spin_element(rep, &coeffs)
}

/// Coefficient range used by [`random_pure_spinor`].
pub const SPIN_SAMPLE_SCALE: f64 = 0.5;

/// A unit pure spinor from the spin orbit of the reference spinor,
/// deterministic in `seed`.
pub fn random_pure_spinor(rep: &GammaRep, chirality: Chirality, seed: u64) -> Result<Spinor> {
    let reference = reference_pure_spinor(rep, chirality)?;
    let mut rng = seeds::rng_from(seed);
    let s = random_spin_element(rep, &mut rng, SPIN_SAMPLE_SCALE);
    let moved = reference.transformed(&s);
    Ok(Spinor::projected(rep, moved.components(), chirality).normalized())
}

/// A unit spinor with independent Gaussian components on one chiral half
/// (or on all components for `Chirality::None`). Generic: for `n >= 4` it is
/// non-pure with probability one.
pub fn random_chiral_spinor(rep: &GammaRep, chirality: Chirality, seed: u64) -> Spinor {
    let mut rng = seeds::rng_from(seed);
    let mut v = CVector::zeros(rep.spinor_dim());
    for k in rep.chiral_indices(chirality) {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        v[k] = C64::new(re, im);
    }
    Spinor {
        components: v,
        chirality,
    }
    .normalized()
}

/// Number of independent equations cutting the pure spinors out of one chiral
/// half: none up to n = 3, one quadric at n = 4, ten at n = 5.
pub fn purity_constraint_count(n: usize) -> Result<usize> {
    match n {
        1..=3 => Ok(0),
        4 => Ok(1),
        5 => Ok(10),
        _ => Err(Error::DimensionOutOfRange(n, 1, 5)),
    }
}
