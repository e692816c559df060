//! Four-dimensional field constructions: the Weyl operator, the bilinear
//! electromagnetic tensor with its vacuum Maxwell identities, and the
//! quadrilinear tensor built from two chiral currents.
//!
//! All functions here expect a `2n = 4` representation with a timelike
//! generator at index 0. Index positions: momenta and tensors carry lower
//! (covariant) indices, and `p^mu = g^{mu mu} p_mu`.

use serde::{Deserialize, Serialize};

use crate::bilinear::Momentum;
use crate::clifford::{GammaRep, Signature};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, C64, ONE, ZERO};
use crate::spinor::{Chirality, Spinor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

fn require_four(rep: &GammaRep) -> Result<usize> {
    if rep.vector_dim() != 4 {
        return Err(Error::VectorDimension {
            expected: 4,
            got: rep.vector_dim(),
        });
    }
    rep.timelike_index().ok_or(Error::NoTimelikeGenerator)
}

fn require_momentum(p: &Momentum, rep: &GammaRep) -> Result<()> {
    if p.dim() != rep.vector_dim() {
        return Err(Error::VectorDimension {
            expected: rep.vector_dim(),
            got: p.dim(),
        });
    }
    Ok(())
}

/// `1 +- volume`.
fn chiral_factor(rep: &GammaRep, sign: Sign) -> CMatrix {
    linalg::identity(rep.spinor_dim()) + rep.volume() * C64::from(sign.factor())
}

/// `sum_a Z_a gamma^a (1 +- gamma_{2n+1})`.
pub fn weyl_operator(z: &[C64], rep: &GammaRep, sign: Sign) -> Result<CMatrix> {
    if z.len() != rep.vector_dim() {
        return Err(Error::VectorDimension {
            expected: rep.vector_dim(),
            got: z.len(),
        });
    }
    Ok(rep.slash(z) * chiral_factor(rep, sign))
}

/// `(phi^dagger phi, phi^dagger sigma_k phi)`: a real, null, future-pointing
/// four-momentum in `(+,-,-,-)`.
pub fn two_spinor_momentum(phi: [C64; 2]) -> Result<Momentum> {
    let [a, b] = phi;
    let p0 = a.norm_sqr() + b.norm_sqr();
    if p0 == 0.0 {
        return Err(Error::ZeroTwoSpinor);
    }
    let cross = a.conj() * b;
    Ok(Momentum::minkowski([
        p0,
        2.0 * cross.re,
        2.0 * cross.im,
        a.norm_sqr() - b.norm_sqr(),
    ]))
}

/// Embeds a two-component spinor into the positive-chirality half so that
/// its real momentum `psi~ gamma_a psi` equals [`two_spinor_momentum`].
///
/// The restrictions `S_k` of `gamma_0 gamma_k` to the positive half form a
/// Pauli triple. The embedding is the unitary `U` with `U^dagger S_k U =
/// sigma_k` when the triple has Pauli orientation, and `phi -> U conj(phi)`
/// when it is reversed.
pub fn embed_two_spinor(rep: &GammaRep, phi: [C64; 2]) -> Result<Spinor> {
    let t = require_four(rep)?;
    if phi[0].norm_sqr() + phi[1].norm_sqr() == 0.0 {
        return Err(Error::ZeroTwoSpinor);
    }
    let idx = rep.chiral_indices(Chirality::Plus);
    let restrict = |k: usize| -> CMatrix {
        let m = rep.generator(t) * rep.generator(k);
        CMatrix::from_fn(2, 2, |i, j| m[(idx[i], idx[j])])
    };
    let spatial: Vec<usize> = (0..4).filter(|&k| k != t).collect();
    let [s1, s2, s3] = [restrict(spatial[0]), restrict(spatial[1]), restrict(spatial[2])];

    // +1 eigenvector of S_3 (Hermitian, squares to one)
    let probe = (&s3 + linalg::identity(2)) * CVector::from_vec(vec![ONE, ZERO]);
    let probe = if probe.norm() > 0.5 {
        probe
    } else {
        (&s3 + linalg::identity(2)) * CVector::from_vec(vec![ZERO, ONE])
    };
    let u0 = &probe / C64::from(probe.norm());
    let u1 = &s1 * &u0;
    let orientation = (u1.adjoint() * (&s2 * &u0))[(0, 0)];
    let (x, y) = if orientation.im > 0.0 {
        (phi[0], phi[1])
    } else {
        (phi[0].conj(), phi[1].conj())
    };
    let local = &u0 * x + &u1 * y;
    let mut full = CVector::zeros(rep.spinor_dim());
    for (i, &k) in idx.iter().enumerate() {
        full[k] = local[i];
    }
    Spinor::weyl(rep, full, Chirality::Plus, 1e-12)
}

/// Literal kernel of `p-slash (1 + gamma_5)`. It contains the whole
/// negative-chirality half, which the projector annihilates.
pub fn weyl_kernel(p: &Momentum, rep: &GammaRep, tol: f64) -> Result<Vec<Spinor>> {
    require_four(rep)?;
    require_momentum(p, rep)?;
    let op = weyl_operator(&p.as_complex(), rep, Sign::Plus)?;
    let kernel = linalg::numerical_kernel(&op, tol)?;
    Ok(kernel.basis.into_iter().map(Spinor::dirac).collect())
}

/// Chirality-tagged solutions of `p-slash (1 + gamma_5) psi = 0` whose
/// adjoints also satisfy `psi~ p-slash (1 - gamma_5) = 0`.
#[derive(Debug, Clone)]
pub struct WeylSolutions {
    pub spinors: Vec<Spinor>,
    /// Set for `p = 0`, where every spinor qualifies.
    pub degenerate: bool,
}

impl WeylSolutions {
    pub fn of_chirality(&self, ch: Chirality) -> impl Iterator<Item = &Spinor> {
        self.spinors.iter().filter(move |s| s.chirality() == ch)
    }

    /// `sum_k c_k psi_k` as an untagged spinor.
    pub fn combination(&self, coeffs: &[C64]) -> Spinor {
        assert_eq!(coeffs.len(), self.spinors.len(), "one coefficient per solution");
        let dim = self.spinors[0].len();
        let v = self
            .spinors
            .iter()
            .zip(coeffs)
            .fold(CVector::zeros(dim), |acc, (s, c)| acc + s.components() * *c);
        Spinor::dirac(v)
    }
}

/// Solutions of the Weyl equation together with its adjoint.
///
/// Since `p-slash` swaps the chiral halves, these are exactly the kernel of
/// `p-slash` split by chirality: one spinor per half on the null cone.
pub fn weyl_solutions(p: &Momentum, rep: &GammaRep, tol: f64) -> Result<WeylSolutions> {
    require_four(rep)?;
    require_momentum(p, rep)?;
    let scale = p.euclidean_norm_sq();
    if scale == 0.0 {
        return Ok(WeylSolutions {
            spinors: (0..rep.spinor_dim()).map(|k| Spinor::basis(rep, k)).collect(),
            degenerate: true,
        });
    }
    if p.square().abs() > tol * scale {
        return Err(Error::NotNull { square: p.square() });
    }
    let slash = rep.slash(&p.as_complex());
    let mut spinors = Vec::new();
    for ch in [Chirality::Plus, Chirality::Minus] {
        let idx = rep.chiral_indices(ch);
        let block = CMatrix::from_fn(rep.spinor_dim(), idx.len(), |i, j| slash[(i, idx[j])]);
        for v in linalg::numerical_kernel(&block, tol)?.basis {
            let mut full = CVector::zeros(rep.spinor_dim());
            for (j, &k) in idx.iter().enumerate() {
                full[k] = v[j];
            }
            spinors.push(Spinor::weyl(rep, full, ch, 1e-12)?);
        }
    }
    Ok(WeylSolutions {
        spinors,
        degenerate: false,
    })
}

/// `psi~ = psi^dagger gamma_0` as a row.
fn adjoint_row(psi: &Spinor, rep: &GammaRep) -> Result<nalgebra::RowDVector<C64>> {
    let t = rep.timelike_index().ok_or(Error::NoTimelikeGenerator)?;
    Ok(psi.components().adjoint() * rep.generator(t))
}

/// `|p-slash (1 + gamma_5) psi|`.
pub fn weyl_residual(psi: &Spinor, p: &Momentum, rep: &GammaRep) -> Result<f64> {
    let op = weyl_operator(&p.as_complex(), rep, Sign::Plus)?;
    Ok((op * psi.components()).norm())
}

/// `|psi~ p-slash (1 - gamma_5)|`.
pub fn adjoint_residual(psi: &Spinor, p: &Momentum, rep: &GammaRep) -> Result<f64> {
    let row = adjoint_row(psi, rep)? * rep.slash(&p.as_complex()) * chiral_factor(rep, Sign::Minus);
    Ok(row.norm())
}

/// `F_{mu nu} = psi~ [gamma_mu, gamma_nu] (1 +- gamma_5) psi`, antisymmetric
/// by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct EmTensor {
    pub f: CMatrix,
    pub chirality: Sign,
}

impl EmTensor {
    pub fn antisymmetry_residual(&self) -> f64 {
        linalg::max_abs(&(&self.f + self.f.transpose()))
    }

    pub fn rank(&self, tol: f64) -> usize {
        linalg::numerical_rank(&self.f, tol)
    }

    /// `F_01 F_23 - F_02 F_13 + F_03 F_12`; vanishes exactly when the rank
    /// is at most two.
    pub fn pfaffian(&self) -> C64 {
        let f = &self.f;
        f[(0, 1)] * f[(2, 3)] - f[(0, 2)] * f[(1, 3)] + f[(0, 3)] * f[(1, 2)]
    }
}

pub fn em_tensor(psi: &Spinor, rep: &GammaRep, chirality: Sign) -> Result<EmTensor> {
    require_four(rep)?;
    let row = adjoint_row(psi, rep)?;
    let right = chiral_factor(rep, chirality) * psi.components();
    let mut f = CMatrix::zeros(4, 4);
    for mu in 0..4 {
        for nu in mu + 1..4 {
            let c = linalg::commutator(rep.generator(mu), rep.generator(nu));
            let v = (&row * (c * &right))[(0, 0)];
            f[(mu, nu)] = v;
            f[(nu, mu)] = -v;
        }
    }
    Ok(EmTensor { f, chirality })
}

/// Alternating symbol with `eps^{0123} = +1`.
pub fn levi_civita(idx: [usize; 4]) -> f64 {
    let mut sign = 1.0;
    let mut v = idx;
    for i in 0..4 {
        if v[i] > 3 {
            return 0.0;
        }
        for j in i + 1..4 {
            if v[i] == v[j] {
                return 0.0;
            }
        }
    }
    // bubble sort parity
    for i in 0..4 {
        for j in 0..3 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    sign
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxwellResiduals {
    /// `p^mu F+_{mu nu}`.
    pub plus: [C64; 4],
    /// `p_mu eps^{mu rho tau lambda} F-_{tau lambda}`.
    pub minus: [C64; 4],
    pub plus_norm: f64,
    pub minus_norm: f64,
    /// Whether `psi` satisfied both the Weyl equation and its adjoint.
    pub vacuum: bool,
}

fn norm4(v: &[C64; 4]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Both vacuum Maxwell contractions of the bilinear field of `psi`.
/// Residuals are always computed; `vacuum` records whether the precondition
/// held to within `tol` (relative to `|p| |psi|`).
pub fn maxwell_residuals(psi: &Spinor, p: &Momentum, rep: &GammaRep, tol: f64) -> Result<MaxwellResiduals> {
    require_four(rep)?;
    require_momentum(p, rep)?;
    let fp = em_tensor(psi, rep, Sign::Plus)?;
    let fm = em_tensor(psi, rep, Sign::Minus)?;
    let lower = p.components();
    let upper = p.raised();
    let mut plus = [ZERO; 4];
    let mut minus = [ZERO; 4];
    for nu in 0..4 {
        plus[nu] = (0..4).map(|mu| fp.f[(mu, nu)] * upper[mu]).sum();
    }
    for (rho, slot) in minus.iter_mut().enumerate() {
        let mut acc = ZERO;
        for mu in 0..4 {
            for tau in 0..4 {
                for lambda in 0..4 {
                    let e = levi_civita([mu, rho, tau, lambda]);
                    if e != 0.0 {
                        acc += fm.f[(tau, lambda)] * (lower[mu] * e);
                    }
                }
            }
        }
        *slot = acc;
    }
    let scale = p.euclidean_norm_sq().sqrt() * psi.norm();
    let vacuum = weyl_residual(psi, p, rep)? <= tol * scale && adjoint_residual(psi, p, rep)? <= tol * scale;
    Ok(MaxwellResiduals {
        plus_norm: norm4(&plus),
        minus_norm: norm4(&minus),
        plus,
        minus,
        vacuum,
    })
}

/// `J_{mu nu} = a_mu b_nu` with `a_mu = psi1~ gamma_mu (1+gamma_5) psi2` and
/// `b_nu = psi3~ gamma_nu (1+gamma_5) psi4`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadTensor {
    pub j: CMatrix,
    pub left: [C64; 4],
    pub right: [C64; 4],
    /// Optional names for the four sources; no dynamics attached.
    pub labels: Option<[String; 4]>,
}

impl QuadTensor {
    pub fn with_labels(mut self, labels: [&str; 4]) -> Self {
        self.labels = Some(labels.map(str::to_owned));
        self
    }

    /// `(J + J^T) / 2`.
    pub fn symmetrized(&self) -> CMatrix {
        (&self.j + self.j.transpose()) * C64::from(0.5)
    }

    pub fn symmetry_defect(&self) -> f64 {
        linalg::max_abs(&(&self.j - self.j.transpose()))
    }

    pub fn rank(&self, tol: f64) -> usize {
        linalg::numerical_rank(&self.j, tol)
    }

    /// Second singular value relative to the first (zero for rank one).
    pub fn rank_one_defect(&self) -> f64 {
        let (s, _) = linalg::svd_sorted(&self.j);
        if s[0] == 0.0 {
            0.0
        } else {
            s[1] / s[0]
        }
    }
}

/// The chiral current `psi_a~ gamma_mu (1 + gamma_5) psi_b`.
pub fn chiral_current(psi_a: &Spinor, psi_b: &Spinor, rep: &GammaRep) -> Result<[C64; 4]> {
    require_four(rep)?;
    let row = adjoint_row(psi_a, rep)?;
    let right = chiral_factor(rep, Sign::Plus) * psi_b.components();
    let mut out = [ZERO; 4];
    for (mu, slot) in out.iter_mut().enumerate() {
        *slot = (&row * (rep.generator(mu) * &right))[(0, 0)];
    }
    Ok(out)
}

pub fn quad_tensor(psi: [&Spinor; 4], rep: &GammaRep) -> Result<QuadTensor> {
    let left = chiral_current(psi[0], psi[1], rep)?;
    let right = chiral_current(psi[2], psi[3], rep)?;
    let j = CMatrix::from_fn(4, 4, |mu, nu| left[mu] * right[nu]);
    Ok(QuadTensor {
        j,
        left,
        right,
        labels: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceResiduals {
    /// `p^mu J_{mu nu}`.
    pub first: [C64; 4],
    /// `p^nu J_{mu nu}`.
    pub second: [C64; 4],
    pub first_norm: f64,
    pub second_norm: f64,
}

pub fn divergence_residuals(j: &QuadTensor, p: &Momentum) -> Result<DivergenceResiduals> {
    if p.dim() != 4 {
        return Err(Error::VectorDimension {
            expected: 4,
            got: p.dim(),
        });
    }
    let up = p.raised();
    let mut first = [ZERO; 4];
    let mut second = [ZERO; 4];
    for k in 0..4 {
        first[k] = (0..4).map(|mu| j.j[(mu, k)] * up[mu]).sum();
        second[k] = (0..4).map(|nu| j.j[(k, nu)] * up[nu]).sum();
    }
    Ok(DivergenceResiduals {
        first_norm: norm4(&first),
        second_norm: norm4(&second),
        first,
        second,
    })
}

/// One line of a residual report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualRecord {
    pub equation: String,
    pub p: Vec<f64>,
    pub seed: u64,
    pub residual_norm: f64,
    pub pass: bool,
}

/// The `(1,3)` representation used throughout this module.
pub fn minkowski_rep() -> GammaRep {
    crate::clifford::build_gamma_rep(2, Signature::lorentzian(2)).expect("n = 2 is supported")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinear::real_momentum;
    use crate::tolerance::{RANK_TOL, RESIDUAL_TOL};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn up_spinor_momentum() {
        let p = two_spinor_momentum([ONE, ZERO]).unwrap();
        assert_eq!(p.components(), &[1.0, 0.0, 0.0, 1.0]);
        assert_eq!(two_spinor_momentum([ZERO, ZERO]).unwrap_err(), Error::ZeroTwoSpinor);
    }

    #[test]
    fn two_spinor_momentum_is_phase_invariant() {
        let phi = [c(0.3, -0.4), c(1.1, 0.2)];
        let p = two_spinor_momentum(phi).unwrap();
        let ph = C64::from_polar(1.0, 2.1);
        let q = two_spinor_momentum([phi[0] * ph, phi[1] * ph]).unwrap();
        for k in 0..4 {
            assert!((p.components()[k] - q.components()[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn embedding_reproduces_the_momentum() {
        let rep = minkowski_rep();
        for phi in [[ONE, ZERO], [ZERO, ONE], [c(0.3, 0.7), c(-1.2, 0.1)]] {
            let psi = embed_two_spinor(&rep, phi).unwrap();
            let p = real_momentum(&psi, &rep, 1e-12).unwrap();
            let q = two_spinor_momentum(phi).unwrap();
            for k in 0..4 {
                assert!((p.components()[k] - q.components()[k]).abs() < 1e-13, "{phi:?}");
            }
        }
    }

    #[test]
    fn zero_momentum_operator_vanishes() {
        let rep = minkowski_rep();
        let op = weyl_operator(&[ZERO; 4], &rep, Sign::Plus).unwrap();
        assert_eq!(linalg::max_abs(&op), 0.0);
        let sol = weyl_solutions(&Momentum::minkowski([0.0; 4]), &rep, RANK_TOL).unwrap();
        assert!(sol.degenerate);
        assert_eq!(sol.spinors.len(), 4);
    }

    #[test]
    fn null_momentum_kernel_dimensions() {
        let rep = minkowski_rep();
        let p = two_spinor_momentum([c(0.2, 0.9), c(0.4, -0.3)]).unwrap();
        assert_eq!(weyl_kernel(&p, &rep, RANK_TOL).unwrap().len(), 3);
        let sol = weyl_solutions(&p, &rep, RANK_TOL).unwrap();
        assert_eq!(sol.of_chirality(Chirality::Plus).count(), 1);
        assert_eq!(sol.of_chirality(Chirality::Minus).count(), 1);
        for s in &sol.spinors {
            assert!(weyl_residual(s, &p, &rep).unwrap() < 1e-14);
            assert!(adjoint_residual(s, &p, &rep).unwrap() < 1e-14);
        }
    }

    #[test]
    fn timelike_momentum_is_rejected() {
        let rep = minkowski_rep();
        let p = Momentum::minkowski([1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(weyl_solutions(&p, &rep, RANK_TOL), Err(Error::NotNull { .. })));
    }

    #[test]
    fn em_tensor_is_antisymmetric_and_phase_invariant() {
        let rep = minkowski_rep();
        let psi = crate::spinor::random_chiral_spinor(&rep, Chirality::None, 5);
        let f = em_tensor(&psi, &rep, Sign::Plus).unwrap();
        assert_eq!(f.antisymmetry_residual(), 0.0);
        let g = em_tensor(&psi.scaled(C64::from_polar(1.0, 0.4)), &rep, Sign::Plus).unwrap();
        assert!(linalg::max_abs(&(&f.f - &g.f)) < 1e-14);
        let zero = Spinor::dirac(CVector::zeros(4));
        assert_eq!(linalg::max_abs(&em_tensor(&zero, &rep, Sign::Minus).unwrap().f), 0.0);
    }

    #[test]
    fn maxwell_on_up_momentum() {
        let rep = minkowski_rep();
        let p = two_spinor_momentum([ONE, ZERO]).unwrap();
        let sol = weyl_solutions(&p, &rep, RANK_TOL).unwrap();
        let psi = sol.combination(&[c(0.6, 0.1), c(-0.3, 0.7)]);
        let r = maxwell_residuals(&psi, &p, &rep, RESIDUAL_TOL).unwrap();
        assert!(r.vacuum);
        assert!(r.plus_norm <= 1e-10 && r.minus_norm <= 1e-10, "{r:?}");
        let f = em_tensor(&psi, &rep, Sign::Plus).unwrap();
        assert_eq!(f.rank(1e-9), 2);
    }

    #[test]
    fn levi_civita_values() {
        assert_eq!(levi_civita([0, 1, 2, 3]), 1.0);
        assert_eq!(levi_civita([1, 0, 2, 3]), -1.0);
        assert_eq!(levi_civita([3, 2, 1, 0]), 1.0);
        assert_eq!(levi_civita([0, 0, 2, 3]), 0.0);
    }

    #[test]
    fn quad_tensor_swap_and_rank() {
        let rep = minkowski_rep();
        let s: Vec<Spinor> = (0..4)
            .map(|k| crate::spinor::random_chiral_spinor(&rep, Chirality::None, 100 + k))
            .collect();
        let j = quad_tensor([&s[0], &s[1], &s[2], &s[3]], &rep).unwrap();
        let k = quad_tensor([&s[2], &s[3], &s[0], &s[1]], &rep).unwrap();
        assert_eq!(j.j, k.j.transpose());
        assert!(j.rank(1e-9) <= 1);
        let sym = quad_tensor([&s[0], &s[1], &s[0], &s[1]], &rep).unwrap();
        assert_eq!(sym.symmetry_defect(), 0.0);
        let labelled = j.with_labels(["neutron", "proton", "lepton", "neutrino"]);
        assert_eq!(labelled.labels.unwrap()[3], "neutrino");
    }

    #[test]
    fn zero_momentum_divergence_vanishes() {
        let rep = minkowski_rep();
        let s = crate::spinor::random_chiral_spinor(&rep, Chirality::None, 1);
        let j = quad_tensor([&s, &s, &s, &s], &rep).unwrap();
        let d = divergence_residuals(&j, &Momentum::minkowski([0.0; 4])).unwrap();
        assert_eq!((d.first_norm, d.second_norm), (0.0, 0.0));
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        let rep = crate::clifford::build_gamma_rep(3, Signature::lorentzian(3)).unwrap();
        let psi = Spinor::basis(&rep, 0);
        assert!(matches!(em_tensor(&psi, &rep, Sign::Plus), Err(Error::VectorDimension { .. })));
    }
}
