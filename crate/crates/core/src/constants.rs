//! Wyler's closed form for the fine-structure constant,
//! `alpha = 8 pi V(D5)^(1/4) / (V(S4) V(Q5))`.

use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seeds::{derive, rng_from, stream};

/// CODATA-2018 inverse fine-structure constant.
pub const EXPERIMENTAL_INVERSE_ALPHA: f64 = 137.035_999_084;
/// The value as printed with a decimal comma, `137,0608`.
pub const PRINTED_INVERSE_ALPHA: f64 = 137.0608;
/// The printed value with the likely dropped digit restored.
pub const ALTERNATE_INVERSE_ALPHA: f64 = 137.036_08;

pub const DEFAULT_MC_SAMPLES: u64 = 10_000_000;
const MC_CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    D5,
    S4,
    Q5,
}

impl Domain {
    pub const ALL: [Domain; 3] = [Domain::D5, Domain::S4, Domain::Q5];

    pub fn as_str(self) -> &'static str {
        match self {
            Domain::D5 => "D5",
            Domain::S4 => "S4",
            Domain::Q5 => "Q5",
        }
    }

    /// Accepts `D5` or `V_D5` style names.
    pub fn parse(s: &str) -> Option<Self> {
        let key = s.trim().to_ascii_uppercase();
        let key = key.strip_prefix("V_").unwrap_or(&key);
        Domain::ALL.into_iter().find(|d| d.as_str() == key)
    }

    pub fn closed_form(self) -> f64 {
        match self {
            Domain::D5 => PI.powi(5) / 1920.0,
            Domain::S4 => 8.0 * PI * PI / 3.0,
            Domain::Q5 => 8.0 * PI.powi(3) / 3.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    MonteCarlo,
    Override,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed_form",
            Provenance::MonteCarlo => "monte_carlo",
            Provenance::Override => "override",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainVolume {
    pub name: Domain,
    pub value: f64,
    pub provenance: Provenance,
    /// Sample count and standard error for Monte Carlo estimates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub standard_error: Option<f64>,
}

impl DomainVolume {
    fn closed(name: Domain) -> Self {
        Self {
            name,
            value: name.closed_form(),
            provenance: Provenance::ClosedForm,
            samples: None,
            standard_error: None,
        }
    }
}

/// `volume(name, closed_form)` or the default-size Monte Carlo estimate.
pub fn volume(name: Domain, provenance: Provenance) -> Result<DomainVolume> {
    match provenance {
        Provenance::ClosedForm => Ok(DomainVolume::closed(name)),
        Provenance::MonteCarlo => monte_carlo_volume(name, DEFAULT_MC_SAMPLES, 0),
        Provenance::Override => Err(Error::UnsupportedVolume(name.as_str().into(), provenance.as_str().into())),
    }
}

/// Sampled surface volume of the unit four-sphere: `5 vol(B5)` with the ball
/// volume estimated by hits in the cube `[-1, 1]^5`.
pub fn monte_carlo_volume(name: Domain, samples: u64, seed: u64) -> Result<DomainVolume> {
    if name != Domain::S4 {
        return Err(Error::UnsupportedVolume(name.as_str().into(), "monte_carlo".into()));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("Monte Carlo needs at least one sample".into()));
    }
    let chunks = samples.div_ceil(MC_CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = rng_from(derive(seed, stream::MONTE_CARLO, k));
            let count = MC_CHUNK.min(samples - k * MC_CHUNK);
            (0..count)
                .filter(|_| (0..5).map(|_| rng.random_range(-1.0f64..1.0).powi(2)).sum::<f64>() <= 1.0)
                .count() as u64
        })
        .sum();
    let frac = hits as f64 / samples as f64;
    let scale = 5.0 * 32.0;
    Ok(DomainVolume {
        name,
        value: scale * frac,
        provenance: Provenance::MonteCarlo,
        samples: Some(samples),
        standard_error: Some(scale * (frac * (1.0 - frac) / samples as f64).sqrt()),
    })
}

/// The three volumes entering the formula; closed forms unless overridden.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WylerInputs {
    pub volumes: Vec<DomainVolume>,
}

impl Default for WylerInputs {
    fn default() -> Self {
        Self {
            volumes: Domain::ALL.into_iter().map(DomainVolume::closed).collect(),
        }
    }
}

impl WylerInputs {
    pub fn value(&self, name: Domain) -> f64 {
        self.volumes.iter().find(|v| v.name == name).expect("all domains present").value
    }

    /// Replaces one volume; `key` is `D5`, `V_D5` and so on.
    pub fn with_override(mut self, key: &str, value: f64) -> Result<Self> {
        let name = Domain::parse(key).ok_or_else(|| Error::InvalidArgument(format!("unknown volume {key}")))?;
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidArgument(format!("volume {key} must be positive, got {value}")));
        }
        let slot = self.volumes.iter_mut().find(|v| v.name == name).expect("all domains present");
        *slot = DomainVolume {
            name,
            value,
            provenance: Provenance::Override,
            samples: None,
            standard_error: None,
        };
        Ok(self)
    }

    pub fn with_volume(mut self, volume: DomainVolume) -> Self {
        let slot = self.volumes.iter_mut().find(|v| v.name == volume.name).expect("all domains present");
        *slot = volume;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Delta {
    pub reference: f64,
    /// `computed - reference` on `1/alpha`.
    pub absolute: f64,
    pub relative: f64,
}

impl Delta {
    fn against(inverse: f64, reference: f64) -> Self {
        Self {
            reference,
            absolute: inverse - reference,
            relative: (inverse - reference) / reference,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WylerReport {
    pub volumes: Vec<DomainVolume>,
    pub alpha: f64,
    pub inverse_alpha: f64,
    pub delta_vs_experiment: Delta,
    #[serde(rename = "delta_vs_paper_printed")]
    pub delta_vs_printed: Delta,
    #[serde(rename = "delta_vs_137_03608")]
    pub delta_vs_alternate: Delta,
    /// Whether `1/alpha` lies in `[137.0, 137.1]`.
    pub in_expected_range: bool,
    /// `|(alpha V(S4) V(Q5) / 8 pi)^4 / V(D5) - 1|`.
    pub round_trip_residual: f64,
    pub overrides: Vec<Domain>,
}

pub fn wyler_alpha() -> WylerReport {
    wyler_alpha_with(&WylerInputs::default())
}

pub fn wyler_alpha_with(inputs: &WylerInputs) -> WylerReport {
    let (d5, s4, q5) = (inputs.value(Domain::D5), inputs.value(Domain::S4), inputs.value(Domain::Q5));
    let alpha = 8.0 * PI * d5.powf(0.25) / (s4 * q5);
    let inverse = 1.0 / alpha;
    let round_trip = (alpha * s4 * q5 / (8.0 * PI)).powi(4);
    WylerReport {
        volumes: inputs.volumes.clone(),
        alpha,
        inverse_alpha: inverse,
        delta_vs_experiment: Delta::against(inverse, EXPERIMENTAL_INVERSE_ALPHA),
        delta_vs_printed: Delta::against(inverse, PRINTED_INVERSE_ALPHA),
        delta_vs_alternate: Delta::against(inverse, ALTERNATE_INVERSE_ALPHA),
        in_expected_range: (137.0..=137.1).contains(&inverse),
        round_trip_residual: (round_trip / d5 - 1.0).abs(),
        overrides: inputs
            .volumes
            .iter()
            .filter(|v| v.provenance == Provenance::Override)
            .map(|v| v.name)
            .collect(),
    }
}
