//! Vector bilinears of spinor pairs, the pure-spinor nullity theorem, and the
//! Minkowski-plus-extras split of real momenta.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{build_gamma_rep, GammaRep, Signature};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, C64};
use crate::seeds::{self, SeedSplitter};
use crate::spinor::{random_chiral_spinor, random_pure_spinor, Chirality, Spinor};
use crate::tolerance::Tolerances;

/// How the left spinor is paired with `gamma_a phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingMode {
    /// `psi^dagger gamma_0 gamma_a phi` (Dirac adjoint).
    LorentzianAdjoint,
    /// `psi^T B gamma_a phi` with `B gamma_a B^-1 = gamma_a^T`.
    TransposeIntertwiner,
}

impl PairingMode {
    pub const ALL: [PairingMode; 2] = [
        PairingMode::LorentzianAdjoint,
        PairingMode::TransposeIntertwiner,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PairingMode::LorentzianAdjoint => "lorentzian_adjoint",
            PairingMode::TransposeIntertwiner => "transpose_intertwiner",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BilinearVector {
    pub components: Vec<C64>,
    pub mode: PairingMode,
}

impl BilinearVector {
    /// `sum_a |Z_a|^2`.
    pub fn norm_sq(&self) -> f64 {
        self.components.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `|Z.Z| / |Z|^2`, or `None` when `Z` vanishes.
    pub fn relative_nullity(&self, metric: &[f64]) -> Option<f64> {
        let n2 = self.norm_sq();
        (n2 > DEGENERATE_NORM_SQ).then(|| norm_squared(self, metric).norm() / n2)
    }
}

/// Below this `|Z|^2` (for unit spinors) a bilinear is treated as identically
/// zero and excluded from statistics.
pub const DEGENERATE_NORM_SQ: f64 = 1e-24;

/// Matrix `M` so that `Z_a = left(psi)^T M gamma_a phi`; `left` conjugates in
/// the adjoint mode.
fn pairing_matrix(rep: &GammaRep, mode: PairingMode) -> Result<CMatrix> {
    match mode {
        PairingMode::LorentzianAdjoint => {
            let t = rep.timelike_index().ok_or(Error::NoTimelikeGenerator)?;
            Ok(rep.generator(t).clone())
        }
        PairingMode::TransposeIntertwiner => Ok(rep.intertwiner()),
    }
}

fn left_vector(psi: &CVector, mode: PairingMode) -> CVector {
    match mode {
        PairingMode::LorentzianAdjoint => psi.map(|z| z.conj()),
        PairingMode::TransposeIntertwiner => psi.clone(),
    }
}

/// `Z_a = <psi, gamma_a phi>` for `a = 0 .. 2n-1` (covariant index).
pub fn vector_bilinear(
    psi: &Spinor,
    phi: &Spinor,
    rep: &GammaRep,
    mode: PairingMode,
) -> Result<BilinearVector> {
    for s in [psi, phi] {
        if s.len() != rep.spinor_dim() {
            return Err(Error::SpinorLength {
                expected: rep.spinor_dim(),
                got: s.len(),
            });
        }
    }
    let m = pairing_matrix(rep, mode)?;
    let row = left_vector(psi.components(), mode).transpose() * m;
    let components = rep
        .generators()
        .iter()
        .map(|g| (&row * (g * phi.components()))[(0, 0)])
        .collect();
    Ok(BilinearVector { components, mode })
}

/// Complex-bilinear square `sum_a g^{aa} Z_a Z_a`.
pub fn norm_squared(z: &BilinearVector, metric: &[f64]) -> C64 {
    z.components
        .iter()
        .zip(metric)
        .map(|(za, m)| za * za * *m)
        .sum()
}

/// Hermitian diagnostic `sum_a g^{aa} |Z_a|^2`.
pub fn hermitian_norm_squared(z: &BilinearVector, metric: &[f64]) -> f64 {
    z.components
        .iter()
        .zip(metric)
        .map(|(za, m)| za.norm_sqr() * m)
        .sum()
}

/// The chirality `phi` must have for `<psi, gamma_a phi>` not to vanish
/// identically, given the chirality of `psi`.
///
/// Decided on basis vectors: the adjoint pairing needs equal chiralities, the
/// transpose pairing needs opposite ones for even `n` and equal ones for odd.
pub fn compatible_chirality(rep: &GammaRep, mode: PairingMode, psi: Chirality) -> Result<Chirality> {
    if psi == Chirality::None {
        return Ok(Chirality::None);
    }
    let m = pairing_matrix(rep, mode)?;
    let left_idx = rep.chiral_indices(psi);
    for candidate in [psi, psi.opposite()] {
        let right_idx = rep.chiral_indices(candidate);
        let hit = rep.generators().iter().any(|g| {
            let mg = &m * g;
            left_idx
                .iter()
                .any(|&i| right_idx.iter().any(|&j| mg[(i, j)].norm() > 0.5))
        });
        if hit {
            return Ok(candidate);
        }
    }
    unreachable!("some chirality always pairs non-trivially")
}

/// A real covariant momentum with its diagonal metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Momentum {
    components: Vec<f64>,
    metric: Vec<f64>,
}

impl Momentum {
    pub fn new(components: Vec<f64>, metric: Vec<f64>) -> Result<Self> {
        if components.len() != metric.len() {
            return Err(Error::VectorDimension {
                expected: metric.len(),
                got: components.len(),
            });
        }
        Ok(Self { components, metric })
    }

    /// A four-momentum in `(+,-,-,-)`.
    pub fn minkowski(p: [f64; 4]) -> Self {
        Self {
            components: p.to_vec(),
            metric: vec![1.0, -1.0, -1.0, -1.0],
        }
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn metric(&self) -> &[f64] {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    /// `P_a P^a`.
    pub fn square(&self) -> f64 {
        self.components
            .iter()
            .zip(&self.metric)
            .map(|(p, m)| p * p * m)
            .sum()
    }

    /// `sum_a P_a^2`, the scale for relative comparisons.
    pub fn euclidean_norm_sq(&self) -> f64 {
        self.components.iter().map(|p| p * p).sum()
    }

    /// Contravariant components `P^a`.
    pub fn raised(&self) -> Vec<f64> {
        self.components
            .iter()
            .zip(&self.metric)
            .map(|(p, m)| p * m)
            .collect()
    }

    pub fn as_complex(&self) -> Vec<C64> {
        self.components.iter().map(|&p| C64::from(p)).collect()
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            components: self.components.iter().map(|p| p * c).collect(),
            metric: self.metric.clone(),
        }
    }
}

/// `P_a = psi~ gamma_a psi` with `psi~ = psi^dagger gamma_0`; the imaginary
/// parts must vanish to within `tol * |P|`.
pub fn real_momentum(psi: &Spinor, rep: &GammaRep, tol: f64) -> Result<Momentum> {
    let z = vector_bilinear(psi, psi, rep, PairingMode::LorentzianAdjoint)?;
    let scale = z.norm_sq().sqrt();
    let residue = z.components.iter().fold(0.0f64, |acc, c| acc.max(c.im.abs()));
    if residue > tol * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::ImaginaryResidue { residue, tol });
    }
    Momentum::new(
        z.components.iter().map(|c| c.re).collect(),
        rep.metric().to_vec(),
    )
}

/// Sign in front of `p_mu p^mu` in the mass relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignConvention {
    Plus,
    Minus,
    /// Pick per sample the sign that makes `M^2` non-negative, preferring the
    /// sign of the timelike metric entry.
    Auto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub head: [f64; 4],
    pub extras: Vec<f64>,
    /// `p_mu p^mu` over the first four components.
    pub head_square: f64,
    /// `sum P_extra^2`.
    pub extras_square: f64,
    /// `P_a P^a` over all components, computed independently.
    pub full_square: f64,
    pub sign: f64,
    /// `sign * p_mu p^mu - sum P_extra^2`.
    pub mass_squared: f64,
    pub mass_squared_plus: f64,
    pub mass_squared_minus: f64,
    /// For a four-component momentum: whether `M^2` vanishes within tolerance.
    pub massless: Option<bool>,
    /// Whether the chosen sign leaves `M^2 >= -tol`.
    pub consistent: bool,
}

impl Decomposition {
    /// `|sign p^2 - (M^2 + sum extras^2)|`.
    pub fn identity_residual(&self) -> f64 {
        (self.sign * self.head_square - (self.mass_squared + self.extras_square)).abs()
    }

    /// `|M^2 - sign P_a P^a|`, meaningful when every extra direction carries
    /// metric `-sign` (both standard Lorentzian layouts).
    pub fn full_square_residual(&self) -> f64 {
        (self.mass_squared - self.sign * self.full_square).abs()
    }

    /// Radius of the sphere the extras lie on at fixed `M`:
    /// `sqrt(sign p^2 - M^2)`.
    pub fn sphere_radius(&self, mass_squared: f64) -> Option<f64> {
        let r2 = self.sign * self.head_square - mass_squared;
        (r2 >= 0.0).then(|| r2.sqrt())
    }
}

pub fn decompose_momentum(p: &Momentum, convention: SignConvention, tol: f64) -> Result<Decomposition> {
    if p.dim() < 4 {
        return Err(Error::VectorDimension {
            expected: 4,
            got: p.dim(),
        });
    }
    let c = p.components();
    let m = p.metric();
    let head = [c[0], c[1], c[2], c[3]];
    let head_square: f64 = (0..4).map(|k| c[k] * c[k] * m[k]).sum();
    let extras = c[4..].to_vec();
    let extras_square: f64 = extras.iter().map(|x| x * x).sum();
    let full_square = p.square();
    let scale = p.euclidean_norm_sq().max(f64::MIN_POSITIVE);
    let mass_squared_plus = head_square - extras_square;
    let mass_squared_minus = -head_square - extras_square;
    let preferred = if m[0] >= 0.0 { 1.0 } else { -1.0 };
    let sign = match convention {
        SignConvention::Plus => 1.0,
        SignConvention::Minus => -1.0,
        SignConvention::Auto => {
            let ok = |s: f64| s * head_square - extras_square >= -tol * scale;
            if ok(preferred) || !ok(-preferred) {
                preferred
            } else {
                -preferred
            }
        }
    };
    let mass_squared = if sign > 0.0 {
        mass_squared_plus
    } else {
        mass_squared_minus
    };
    Ok(Decomposition {
        head,
        extras,
        head_square,
        extras_square,
        full_square,
        sign,
        mass_squared,
        mass_squared_plus,
        mass_squared_minus,
        massless: (p.dim() == 4).then(|| mass_squared.abs() <= tol * scale),
        consistent: mass_squared >= -tol * scale,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Arm {
    PurePure,
    PureGeneric,
    GenericPure,
    GenericGeneric,
}

impl Arm {
    pub const ALL: [Arm; 4] = [Arm::PurePure, Arm::PureGeneric, Arm::GenericPure, Arm::GenericGeneric];

    fn members(self) -> (bool, bool) {
        match self {
            Arm::PurePure => (true, true),
            Arm::PureGeneric => (true, false),
            Arm::GenericPure => (false, true),
            Arm::GenericGeneric => (false, false),
        }
    }

    pub fn has_pure_member(self) -> bool {
        let (a, b) = self.members();
        a || b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Null,
    NonNull,
}

/// Per-arm results of the nullity audit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArmReport {
    pub n: usize,
    pub pairing_mode: PairingMode,
    pub arm: Arm,
    pub trials: usize,
    /// Trials with `|Z.Z| <= null_tol |Z|^2`.
    pub pass_count: usize,
    /// Trials with `|Z.Z| > non_null_tol |Z|^2`.
    pub fail_count: usize,
    pub degenerate_count: usize,
    pub max_residual: f64,
    pub min_residual: f64,
    pub expectation: Expectation,
    pub verdict: bool,
    pub seeds: Vec<u64>,
    /// Relative nullity per trial; `null` marks a degenerate (all-zero) `Z`.
    pub residuals: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub n: usize,
    pub pairing_mode: PairingMode,
    pub signature: Signature,
    pub psi_chirality: Chirality,
    pub phi_chirality: Chirality,
    pub arms: Vec<ArmReport>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.arms.iter().all(|a| a.verdict)
    }

    pub fn arm(&self, arm: Arm) -> &ArmReport {
        self.arms.iter().find(|a| a.arm == arm).expect("all arms are run")
    }
}

/// Fraction of generic-generic trials that must be non-null for `n >= 4`.
pub const GENERIC_FAIL_FRACTION: f64 = 0.99;

/// Runs the four arms at half-dimension `n` in signature `(1, 2n-1)`.
///
/// `psi` is always positive-chirality; `phi` takes whichever chirality pairs
/// non-trivially under `mode`.
pub fn theorem_audit(
    n: usize,
    trials: usize,
    seed: u64,
    mode: PairingMode,
    tol: &Tolerances,
) -> Result<AuditReport> {
    if !(1..=5).contains(&n) {
        return Err(Error::DimensionOutOfRange(n, 1, 5));
    }
    let rep = build_gamma_rep(n, Signature::lorentzian(n))?;
    let psi_ch = Chirality::Plus;
    let phi_ch = compatible_chirality(&rep, mode, psi_ch)?;
    let splitter = SeedSplitter::new(seed);
    let metric = rep.metric().to_vec();

    let mut arms = Vec::with_capacity(4);
    for (arm_idx, arm) in Arm::ALL.into_iter().enumerate() {
        let (psi_pure, phi_pure) = arm.members();
        let seeds: Vec<u64> = (0..trials as u64)
            .map(|t| splitter.seed(seeds::stream::AUDIT + arm_idx as u64, t))
            .collect();
        let residuals: Vec<Option<f64>> = seeds
            .par_iter()
            .map(|&s| -> Result<Option<f64>> {
                let draw = |pure: bool, ch: Chirality, sub: u64| -> Result<Spinor> {
                    let sd = seeds::derive(s, sub, 0);
                    if pure {
                        random_pure_spinor(&rep, ch, sd)
                    } else {
                        Ok(random_chiral_spinor(&rep, ch, sd))
                    }
                };
                let psi = draw(psi_pure, psi_ch, 1)?;
                let phi = draw(phi_pure, phi_ch, 2)?;
                let z = vector_bilinear(&psi, &phi, &rep, mode)?;
                Ok(z.relative_nullity(&metric))
            })
            .collect::<Result<_>>()?;

        let expectation = if arm.has_pure_member() || n <= 3 {
            Expectation::Null
        } else {
            Expectation::NonNull
        };
        let live: Vec<f64> = residuals.iter().flatten().copied().collect();
        let degenerate_count = trials - live.len();
        let pass_count = live.iter().filter(|r| **r <= tol.null).count();
        let fail_count = live.iter().filter(|r| **r > tol.non_null).count();
        let verdict = match expectation {
            Expectation::Null => !live.is_empty() && pass_count == live.len(),
            Expectation::NonNull => {
                fail_count as f64 >= (GENERIC_FAIL_FRACTION * trials as f64).ceil()
            }
        };
        arms.push(ArmReport {
            n,
            pairing_mode: mode,
            arm,
            trials,
            pass_count,
            fail_count,
            degenerate_count,
            max_residual: live.iter().copied().fold(0.0, f64::max),
            min_residual: live.iter().copied().fold(f64::INFINITY, f64::min),
            expectation,
            verdict,
            seeds,
            residuals,
        });
    }
    Ok(AuditReport {
        n,
        pairing_mode: mode,
        signature: rep.signature(),
        psi_chirality: psi_ch,
        phi_chirality: phi_ch,
        arms,
    })
}
