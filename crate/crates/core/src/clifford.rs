//! Explicit matrix representations of the complex Clifford algebra Cl(2n).
//!
//! Generators are built recursively as tensor products of Pauli matrices
//! (Brauer-Weyl construction). Generators of negative square are the Euclidean
//! ones multiplied by `i`. The volume element is diagonal in the resulting
//! basis, so the computational basis doubles as the chiral basis.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, anticommutator, max_abs, CMatrix, C64, I, ONE, ZERO};
use crate::spinor::Chirality;

/// Largest supported half-dimension (spinor dimension 64).
pub const MAX_HALF_DIM: usize = 6;

/// Numbers of generators squaring to `+1` and to `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
}

impl Signature {
    pub fn new(plus: usize, minus: usize) -> Self {
        Self { plus, minus }
    }

    pub fn euclidean(n: usize) -> Self {
        Self::new(2 * n, 0)
    }

    /// `(+, -, ..., -)` with the timelike generator first.
    pub fn lorentzian(n: usize) -> Self {
        Self::new(1, 2 * n - 1)
    }

    /// `(-, +, ..., +)` with the timelike generator first.
    pub fn mostly_plus(n: usize) -> Self {
        Self::new(2 * n - 1, 1)
    }

    pub fn dim(&self) -> usize {
        self.plus + self.minus
    }

    pub fn is_lorentzian(&self) -> bool {
        self.dim() >= 2 && (self.plus == 1 || self.minus == 1)
    }

    /// Diagonal metric in generator order.
    ///
    /// Lorentzian signatures put the timelike generator at index 0:
    /// `(1, q)` gives `(+, -, ..., -)` and `(p, 1)` gives `(-, +, ..., +)`.
    /// Other signatures list the `+1` entries first.
    pub fn metric(&self) -> Vec<f64> {
        let dim = self.dim();
        if self.plus == 1 && dim >= 2 {
            std::iter::once(1.0).chain(std::iter::repeat(-1.0).take(dim - 1)).collect()
        } else if self.minus == 1 && dim >= 2 {
            std::iter::once(-1.0).chain(std::iter::repeat(1.0).take(dim - 1)).collect()
        } else {
            std::iter::repeat(1.0)
                .take(self.plus)
                .chain(std::iter::repeat(-1.0).take(self.minus))
                .collect()
        }
    }

    pub fn timelike_index(&self) -> Option<usize> {
        self.is_lorentzian().then_some(0)
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.plus, self.minus)
    }
}

/// A concrete representation of Cl(2n) on `2^n`-component spinors.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaRep {
    half_dim: usize,
    signature: Signature,
    metric: Vec<f64>,
    generators: Vec<CMatrix>,
    volume: CMatrix,
    volume_phase: C64,
}

fn pauli() -> [CMatrix; 3] {
    [
        CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        CMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
        CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
    ]
}

/// The `2n` Hermitian Euclidean generators
/// `s3 x ... x s3 x s_{1,2} x 1 x ... x 1`.
fn euclidean_generators(n: usize) -> Vec<CMatrix> {
    let [s1, s2, s3] = pauli();
    let id2 = linalg::identity(2);
    let mut out = Vec::with_capacity(2 * n);
    for k in 0..n {
        for middle in [&s1, &s2] {
            let mut m = CMatrix::identity(1, 1);
            for slot in 0..n {
                let factor = match slot.cmp(&k) {
                    std::cmp::Ordering::Less => &s3,
                    std::cmp::Ordering::Equal => middle,
                    std::cmp::Ordering::Greater => &id2,
                };
                m = m.kronecker(factor);
            }
            out.push(m);
        }
    }
    out
}

/// Ordered product of all generators with the phase `i^k` that fixes the
/// first diagonal entry to `+1`.
///
/// In this basis the raw product is `i^k` times a diagonal matrix of `+-1`, so
/// the normalized volume element always squares to the identity.
fn normalized_volume(generators: &[CMatrix]) -> (CMatrix, C64) {
    let product = generators
        .iter()
        .skip(1)
        .fold(generators[0].clone(), |acc, g| acc * g);
    let phase = product[(0, 0)].conj();
    (product * phase, phase)
}

/// Builds the representation for half-dimension `n` and signature `sig`.
pub fn build_gamma_rep(n: usize, sig: Signature) -> Result<GammaRep> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if n > MAX_HALF_DIM {
        return Err(Error::DimensionOutOfRange(n, 1, MAX_HALF_DIM));
    }
    if sig.dim() != 2 * n {
        return Err(Error::SignatureMismatch {
            plus: sig.plus,
            minus: sig.minus,
            dim: 2 * n,
        });
    }
    let metric = sig.metric();
    let generators: Vec<CMatrix> = euclidean_generators(n)
        .into_iter()
        .zip(&metric)
        .map(|(g, &m)| if m > 0.0 { g } else { g * I })
        .collect();
    let (volume, volume_phase) = normalized_volume(&generators);
    Ok(GammaRep {
        half_dim: n,
        signature: sig,
        metric,
        generators,
        volume,
        volume_phase,
    })
}

impl GammaRep {
    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    /// Dimension `2n` of the underlying vector space.
    pub fn vector_dim(&self) -> usize {
        2 * self.half_dim
    }

    pub fn spinor_dim(&self) -> usize {
        1 << self.half_dim
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn metric(&self) -> &[f64] {
        &self.metric
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    pub fn generator(&self, a: usize) -> &CMatrix {
        &self.generators[a]
    }

    /// `gamma^a = g^{aa} gamma_a`.
    pub fn upper(&self, a: usize) -> CMatrix {
        &self.generators[a] * C64::from(self.metric[a])
    }

    pub fn timelike_index(&self) -> Option<usize> {
        self.signature.timelike_index()
    }

    pub fn volume(&self) -> &CMatrix {
        &self.volume
    }

    /// The phase `i^k` applied to the raw generator product.
    pub fn volume_phase(&self) -> C64 {
        self.volume_phase
    }

    /// `sum_a z_a gamma^a` for covariant components `z`.
    pub fn slash(&self, z: &[C64]) -> CMatrix {
        assert_eq!(z.len(), self.vector_dim(), "vector length");
        let dim = self.spinor_dim();
        z.iter()
            .enumerate()
            .fold(CMatrix::zeros(dim, dim), |acc, (a, za)| {
                acc + &self.generators[a] * (za * self.metric[a])
            })
    }

    /// `[gamma_a, gamma_b] / 4`, a generator of the spin group.
    pub fn bivector(&self, a: usize, b: usize) -> CMatrix {
        linalg::commutator(&self.generators[a], &self.generators[b]) * C64::from(0.25)
    }

    /// Chirality of computational basis vector `k` (the volume is diagonal).
    pub fn basis_chirality(&self, k: usize) -> Chirality {
        if self.volume[(k, k)].re > 0.0 {
            Chirality::Plus
        } else {
            Chirality::Minus
        }
    }

    /// Basis indices spanning the given chiral half (all indices for `None`).
    pub fn chiral_indices(&self, chirality: Chirality) -> Vec<usize> {
        (0..self.spinor_dim())
            .filter(|&k| chirality == Chirality::None || self.basis_chirality(k) == chirality)
            .collect()
    }

    /// Matrix `B` with `B gamma_a B^-1 = gamma_a^T` for every generator.
    ///
    /// In this basis odd-position generators are symmetric and even-position
    /// ones antisymmetric, so `B` is the product of one of the two families.
    pub fn intertwiner(&self) -> CMatrix {
        for start in [0, 1] {
            let b = (start..self.vector_dim())
                .step_by(2)
                .fold(linalg::identity(self.spinor_dim()), |acc, a| {
                    acc * &self.generators[a]
                });
            let b_inv = b.adjoint();
            let ok = self
                .generators
                .iter()
                .all(|g| max_abs(&(&b * g * &b_inv - g.transpose())) <= 1e-12);
            if ok {
                return b;
            }
        }
        unreachable!("tensor-product generators always admit a transpose intertwiner")
    }

    pub fn residuals(&self) -> CliffordResiduals {
        clifford_residuals(self)
    }
}

/// Returns the normalized volume element, recomputed from the generators.
pub fn volume_element(rep: &GammaRep) -> CMatrix {
    normalized_volume(&rep.generators).0
}

/// Chiral projectors `P+- = (1 +- volume) / 2`.
pub fn weyl_projectors(rep: &GammaRep) -> (CMatrix, CMatrix) {
    let id = linalg::identity(rep.spinor_dim());
    let half = C64::from(0.5);
    (
        (&id + &rep.volume) * half,
        (&id - &rep.volume) * half,
    )
}

/// Cl(2n+1) obtained by appending the volume element as a generator.
#[derive(Debug, Clone)]
pub struct OddExtension {
    pub generators: Vec<CMatrix>,
    pub metric: Vec<f64>,
}

pub fn extend_to_odd(rep: &GammaRep) -> OddExtension {
    let mut generators = rep.generators.clone();
    generators.push(rep.volume.clone());
    let mut metric = rep.metric.clone();
    metric.push(1.0);
    OddExtension { generators, metric }
}

impl OddExtension {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Max deviation from the Cl(2n+1) relations.
    pub fn relation_residual(&self) -> f64 {
        relation_residual(&self.generators, &self.metric)
    }

    /// `i gamma_a gamma_{2n+1}` for `a < 2n`: even elements of Cl(2n+1) that
    /// satisfy the Cl(2n) relations with the original metric.
    pub fn even_generators(&self) -> Vec<CMatrix> {
        let last = self.generators.last().expect("non-empty extension");
        self.generators[..self.len() - 1]
            .iter()
            .map(|g| g * last * I)
            .collect()
    }

    pub fn even_relation_residual(&self) -> f64 {
        relation_residual(&self.even_generators(), &self.metric[..self.len() - 1])
    }

    /// Largest non-scalar part of any anticommutator of the products
    /// `gamma_a gamma_{2n+1}`.
    pub fn even_closure_residual(&self) -> f64 {
        let last = self.generators.last().expect("non-empty extension");
        let products: Vec<CMatrix> = self.generators[..self.len() - 1]
            .iter()
            .map(|g| g * last)
            .collect();
        let dim = last.nrows();
        let mut worst = 0.0f64;
        for a in &products {
            for b in &products {
                let ac = anticommutator(a, b);
                let scalar = linalg::trace(&ac) / C64::from(dim as f64);
                worst = worst.max(max_abs(&(ac - linalg::identity(dim) * scalar)));
            }
        }
        worst
    }
}

/// Max over all pairs of `|g_a g_b + g_b g_a - 2 metric_a delta_ab|`.
pub fn relation_residual(generators: &[CMatrix], metric: &[f64]) -> f64 {
    let dim = generators.first().map(|g| g.nrows()).unwrap_or(0);
    let id = linalg::identity(dim);
    let mut worst = 0.0f64;
    for (a, ga) in generators.iter().enumerate() {
        for (b, gb) in generators.iter().enumerate().skip(a) {
            let mut ac = anticommutator(ga, gb);
            if a == b {
                ac -= &id * C64::from(2.0 * metric[a]);
            }
            worst = worst.max(max_abs(&ac));
        }
    }
    worst
}

/// Every identity the representation is expected to satisfy, as max-norm
/// residuals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CliffordResiduals {
    pub anticommutator: f64,
    pub volume_anticommutator: f64,
    pub volume_square: f64,
    pub volume_offdiagonal: f64,
    pub projector_idempotent: f64,
    pub projector_orthogonal: f64,
    pub projector_completeness: f64,
    pub projector_rank_plus: usize,
    pub projector_rank_minus: usize,
    pub generator_trace: f64,
    pub odd_relation: f64,
    pub even_subalgebra: f64,
}

impl CliffordResiduals {
    /// Largest of the floating-point residuals.
    pub fn max_residual(&self) -> f64 {
        [
            self.anticommutator,
            self.volume_anticommutator,
            self.volume_square,
            self.volume_offdiagonal,
            self.projector_idempotent,
            self.projector_orthogonal,
            self.projector_completeness,
            self.generator_trace,
            self.odd_relation,
            self.even_subalgebra,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64, half_dim: usize) -> bool {
        let rank = 1usize << (half_dim - 1);
        self.max_residual() <= tol
            && self.projector_rank_plus == rank
            && self.projector_rank_minus == rank
    }
}

fn clifford_residuals(rep: &GammaRep) -> CliffordResiduals {
    let dim = rep.spinor_dim();
    let id = linalg::identity(dim);
    let w = &rep.volume;
    let volume_anticommutator = rep
        .generators
        .iter()
        .map(|g| max_abs(&anticommutator(w, g)))
        .fold(0.0, f64::max);
    let volume_square = max_abs(&(w * w - &id));
    let mut off = w.clone();
    off.fill_diagonal(ZERO);
    let (pp, pm) = weyl_projectors(rep);
    let projector_idempotent = max_abs(&(&pp * &pp - &pp)).max(max_abs(&(&pm * &pm - &pm)));
    let projector_orthogonal = max_abs(&(&pp * &pm)).max(max_abs(&(&pm * &pp)));
    let projector_completeness = max_abs(&(&pp + &pm - &id));
    let generator_trace = rep
        .generators
        .iter()
        .map(|g| linalg::trace(g).norm())
        .fold(0.0, f64::max);
    let odd = extend_to_odd(rep);
    CliffordResiduals {
        anticommutator: relation_residual(&rep.generators, &rep.metric),
        volume_anticommutator,
        volume_square,
        volume_offdiagonal: max_abs(&off),
        projector_idempotent,
        projector_orthogonal,
        projector_completeness,
        projector_rank_plus: linalg::numerical_rank(&pp, 1e-9),
        projector_rank_minus: linalg::numerical_rank(&pm, 1e-9),
        generator_trace,
        odd_relation: odd.relation_residual(),
        even_subalgebra: odd.even_relation_residual().max(odd.even_closure_residual()),
    }
}
