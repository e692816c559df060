//! Fock's momentum-space hydrogen problem on S³.

pub mod consistency;
pub mod levels;
pub mod nystrom;
pub mod quadrature;
pub mod zonal;

pub use consistency::{self_consistency, ConsistencyReport};
pub use levels::{
    balmer_limit, balmer_ratios, levels_from_lambdas, solve_levels, solve_levels_quadrature, BalmerLine,
    ConstantsVintage, LambdaPath, Level, MassModel, PhysicalConstants, SpectralResult,
};
pub use nystrom::{nystrom_cross_check, nystrom_spectrum, Cluster, NystromConfig, NystromReport};
pub use zonal::{gegenbauer_zonal, kernel_eigenvalue, ZonalKernel};
