//! Physical energy levels from the dimensionless kernel spectrum.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::zonal::kernel_eigenvalue;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConstantsVintage {
    #[serde(rename = "CODATA-2014")]
    Codata2014,
    #[serde(rename = "CODATA-2018")]
    Codata2018,
}

impl ConstantsVintage {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstantsVintage::Codata2014 => "CODATA-2014",
            ConstantsVintage::Codata2018 => "CODATA-2018",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().replace('_', "-").as_str() {
            "CODATA-2014" | "2014" => Some(ConstantsVintage::Codata2014),
            "CODATA-2018" | "2018" => Some(ConstantsVintage::Codata2018),
            _ => None,
        }
    }
}

/// Whether `m` is the bare electron mass or the electron–proton reduced mass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MassModel {
    Electron,
    Reduced,
}

impl MassModel {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "electron" | "raw" => Some(MassModel::Electron),
            "reduced" => Some(MassModel::Reduced),
            _ => None,
        }
    }
}

const CODATA_2018: [f64; 4] = [7.297_352_569_3e-3, 9.109_383_701_5e-31, 1.672_621_923_69e-27, 1.602_176_634e-19];
const CODATA_2014: [f64; 4] = [7.297_352_566_4e-3, 9.109_383_56e-31, 1.672_621_898e-27, 1.602_176_620_8e-19];
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// SI constants for the level formula, tagged with their source.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub alpha: f64,
    /// Mass entering the level formula, kg.
    pub mass: f64,
    pub c: f64,
    pub electron_mass: f64,
    pub proton_mass: f64,
    /// Joules per electronvolt.
    pub elementary_charge: f64,
    pub vintage: ConstantsVintage,
    pub mass_model: MassModel,
}

impl PhysicalConstants {
    pub fn codata(vintage: ConstantsVintage, mass_model: MassModel) -> Self {
        let [alpha, me, mp, e] = match vintage {
            ConstantsVintage::Codata2014 => CODATA_2014,
            ConstantsVintage::Codata2018 => CODATA_2018,
        };
        let mass = match mass_model {
            MassModel::Electron => me,
            MassModel::Reduced => me * mp / (me + mp),
        };
        Self {
            alpha,
            mass,
            c: SPEED_OF_LIGHT,
            electron_mass: me,
            proton_mass: mp,
            elementary_charge: e,
            vintage,
            mass_model,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("alpha", self.alpha),
            ("mass", self.mass),
            ("c", self.c),
            ("elementary_charge", self.elementary_charge),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidArgument(format!("constant {name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// `m c^2` in eV.
    pub fn rest_energy_ev(&self) -> f64 {
        self.mass * self.c * self.c / self.elementary_charge
    }

    /// `(alpha^2 / 2) m c^2` in eV: the `n = 1` level.
    pub fn rydberg_ev(&self) -> f64 {
        0.5 * self.alpha * self.alpha * self.rest_energy_ev()
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata(ConstantsVintage::Codata2018, MassModel::Reduced)
    }
}

/// How the kernel eigenvalues were obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LambdaPath {
    /// `lambda_n = 1/n` exactly.
    Analytic,
    /// Zonal reduction by adaptive quadrature.
    Quadrature { quad_points: usize },
    /// Eigenvalues supplied by the caller, e.g. from the Nystrom matrix.
    Supplied,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub n: usize,
    pub lambda_n: f64,
    /// `n^2`, the dimension of the degree-`(n-1)` harmonics on S³.
    pub degeneracy: usize,
    /// `alpha m c lambda_n`, kg m/s.
    pub p0: f64,
    /// `p0^2 / 2m` as a positive binding energy, eV.
    pub energy_ev: f64,
    /// `lambda_n` as a fraction when known exactly.
    #[serde(skip)]
    pub lambda_exact: Option<Ratio<i128>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub levels: Vec<Level>,
    pub constants: PhysicalConstants,
    pub path: LambdaPath,
}

impl SpectralResult {
    pub fn level(&self, n: usize) -> Option<&Level> {
        self.levels.iter().find(|l| l.n == n)
    }

    pub fn n_max(&self) -> usize {
        self.levels.last().map_or(0, |l| l.n)
    }

    /// Largest relative spread of `E_n n^2` across levels.
    pub fn scaling_defect(&self) -> f64 {
        let scaled: Vec<f64> = self.levels.iter().map(|l| l.energy_ev * (l.n * l.n) as f64).collect();
        let first = scaled[0];
        scaled.iter().map(|s| ((s - first) / first).abs()).fold(0.0, f64::max)
    }

    pub fn is_monotone(&self) -> bool {
        self.levels.windows(2).all(|w| w[0].lambda_n > w[1].lambda_n)
    }
}

/// Attaches physical units to a list of kernel eigenvalues `lambda_1, lambda_2, ...`
/// through the eigencondition `1 = alpha (m c / p0) lambda_n`.
pub fn levels_from_lambdas(lambdas: &[f64], consts: &PhysicalConstants, path: LambdaPath) -> Result<SpectralResult> {
    if lambdas.is_empty() {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    consts.validate()?;
    let levels = lambdas
        .iter()
        .enumerate()
        .map(|(k, &lambda_n)| {
            let n = k + 1;
            let p0 = consts.alpha * consts.mass * consts.c * lambda_n;
            Level {
                n,
                lambda_n,
                degeneracy: n * n,
                p0,
                energy_ev: p0 * p0 / (2.0 * consts.mass) / consts.elementary_charge,
                lambda_exact: None,
            }
        })
        .collect();
    Ok(SpectralResult {
        levels,
        constants: consts.clone(),
        path,
    })
}

/// Levels `1..=n_max` with `lambda_n = 1/n`.
pub fn solve_levels(n_max: usize, consts: &PhysicalConstants) -> Result<SpectralResult> {
    let lambdas: Vec<f64> = (1..=n_max).map(|n| 1.0 / n as f64).collect();
    let mut result = levels_from_lambdas(&lambdas, consts, LambdaPath::Analytic)?;
    for level in &mut result.levels {
        level.lambda_exact = Some(Ratio::new(1, level.n as i128));
    }
    Ok(result)
}

/// Levels with `lambda_n` from the quadrature of the zonal reduction.
pub fn solve_levels_quadrature(n_max: usize, consts: &PhysicalConstants, quad_points: usize) -> Result<SpectralResult> {
    let lambdas = (1..=n_max)
        .map(|n| kernel_eigenvalue(n, quad_points))
        .collect::<Result<Vec<_>>>()?;
    levels_from_lambdas(&lambdas, consts, LambdaPath::Quadrature { quad_points })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BalmerLine {
    /// Upper level of the `n -> 2` transition.
    pub n: usize,
    pub ratio: f64,
    /// `"27/20"` style fraction in the analytic path.
    pub exact: Option<String>,
    #[serde(skip)]
    pub exact_ratio: Option<Ratio<i128>>,
}

/// Balmer transition energies `E_2 - E_n` normalized to the `n = 3` line,
/// for `n = 3..=n_max`.
pub fn balmer_ratios(result: &SpectralResult) -> Result<Vec<BalmerLine>> {
    if result.n_max() < 3 {
        return Err(Error::InvalidArgument(format!(
            "Balmer ratios need n_max >= 3, got {}",
            result.n_max()
        )));
    }
    let energy = |n: usize| result.level(n).expect("levels are contiguous").energy_ev;
    let exact_sq = |n: usize| result.level(n).and_then(|l| l.lambda_exact).map(|r| r * r);
    let reference = energy(2) - energy(3);
    let exact_reference = match (exact_sq(2), exact_sq(3)) {
        (Some(a), Some(b)) => Some(a - b),
        _ => None,
    };
    Ok((3..=result.n_max())
        .map(|n| {
            let exact_ratio = match (exact_sq(2), exact_sq(n), exact_reference) {
                (Some(a), Some(b), Some(r)) => Some((a - b) / r),
                _ => None,
            };
            BalmerLine {
                n,
                ratio: (energy(2) - energy(n)) / reference,
                exact: exact_ratio.map(|r| format!("{}/{}", r.numer(), r.denom())),
                exact_ratio,
            }
        })
        .collect())
}

/// `n -> infinity` limit of the normalized Balmer ratio.
pub fn balmer_limit() -> Ratio<i128> {
    Ratio::new(1, 4) / (Ratio::new(1, 4) - Ratio::new(1, 9))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state_energies() {
        let raw = PhysicalConstants::codata(ConstantsVintage::Codata2018, MassModel::Electron);
        let red = PhysicalConstants::codata(ConstantsVintage::Codata2018, MassModel::Reduced);
        let e_raw = solve_levels(1, &raw).unwrap().levels[0].energy_ev;
        let e_red = solve_levels(1, &red).unwrap().levels[0].energy_ev;
        assert!((e_raw / 13.605_693 - 1.0).abs() < 1e-6, "{e_raw}");
        assert!((e_red / 13.598_287 - 1.0).abs() < 1e-6, "{e_red}");
        assert!((e_raw - raw.rydberg_ev()).abs() < 1e-12);
    }

    #[test]
    fn level_scaling_and_degeneracy() {
        let r = solve_levels(6, &PhysicalConstants::default()).unwrap();
        assert_eq!(r.level(3).unwrap().degeneracy, 9);
        let e1 = r.level(1).unwrap().energy_ev;
        let e4 = r.level(4).unwrap().energy_ev;
        assert!((e1 / e4 - 16.0).abs() < 1e-12);
        assert!(r.scaling_defect() < 1e-14);
        assert!(r.is_monotone());
    }

    #[test]
    fn balmer_fractions() {
        let r = solve_levels(8, &PhysicalConstants::default()).unwrap();
        let lines = balmer_ratios(&r).unwrap();
        assert_eq!(lines[0].exact_ratio, Some(Ratio::new(1, 1)));
        assert_eq!(lines[1].exact.as_deref(), Some("27/20"));
        assert_eq!(balmer_limit(), Ratio::new(9, 5));
        assert!(balmer_ratios(&solve_levels(2, &PhysicalConstants::default()).unwrap()).is_err());
    }

    #[test]
    fn invalid_constants_are_rejected() {
        let mut c = PhysicalConstants::default();
        c.alpha = -1.0;
        assert!(solve_levels(3, &c).is_err());
        assert!(solve_levels(0, &PhysicalConstants::default()).is_err());
    }

    #[test]
    fn vintage_names_round_trip() {
        for v in [ConstantsVintage::Codata2014, ConstantsVintage::Codata2018] {
            assert_eq!(ConstantsVintage::parse(v.as_str()), Some(v));
        }
    }
}
