//! Clifford algebra representations, pure spinors and their bilinears, the
//! field tensors built from them, Fock's S³ spectrum and Wyler's formula.

pub mod bilinear;
pub mod clifford;
pub mod constants;
pub mod error;
pub mod field;
pub mod fock;
pub mod linalg;
pub mod seeds;
pub mod spinor;
pub mod tolerance;

pub use bilinear::{
    decompose_momentum, real_momentum, theorem_audit, vector_bilinear, Arm, AuditReport, Decomposition, Momentum,
    PairingMode, SignConvention,
};
pub use clifford::{build_gamma_rep, extend_to_odd, volume_element, weyl_projectors, GammaRep, Signature};
pub use constants::{volume, wyler_alpha, wyler_alpha_with, Domain, DomainVolume, Provenance, WylerInputs, WylerReport};
pub use error::{Error, Result};
pub use field::{
    divergence_residuals, em_tensor, embed_two_spinor, maxwell_residuals, quad_tensor, two_spinor_momentum,
    weyl_kernel, weyl_operator, weyl_solutions, QuadTensor, Sign,
};
pub use linalg::{CMatrix, CVector, C64};
pub use seeds::SeedSplitter;
pub use spinor::{is_pure, null_plane_of, Chirality, NullPlane, Spinor};
pub use tolerance::Tolerances;
