//! Spreading, absorption and scattering losses and their total.
//!
//! All losses are in dB and positive for attenuation. The model assumes
//! `d ≫ λ_g`; for very short paths the spreading term can go negative and is
//! returned unclamped.

mod scattering;

pub use scattering::{
    adt_efficiency, rayleigh_efficiency, scattering_coefficients, scattering_loss, ParticlePopulation, ScatteringDetail,
    SizeClass, ADT_SERIES_THRESHOLD, MAX_PARTICLE_RADIUS_M,
};

use serde::{Deserialize, Serialize};

use crate::dielectrics::{optical_state, AbsorptionWavelength, FrequencyPoint, Medium, OpticalState};
use crate::error::{Error, Result};
use crate::scalar::{db_per_neper, Scalar};

/// Gaussian beam width of the transmitting nano-antenna.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamSpec<T> {
    delta_theta: T,
}

impl<T: Scalar> BeamSpec<T> {
    /// `delta_theta` in radians, within `[0, π]`.
    pub fn new(delta_theta: T) -> Result<Self> {
        if !(delta_theta >= T::zero() && delta_theta <= T::PI()) {
            return Err(Error::invalid(
                "beam width",
                format!("delta_theta = {delta_theta} rad is outside [0, pi]"),
            ));
        }
        Ok(BeamSpec { delta_theta })
    }

    pub fn delta_theta(&self) -> T {
        self.delta_theta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelGeometry<T> {
    distance: T,
}

impl<T: Scalar> ChannelGeometry<T> {
    /// Path length in meters.
    pub fn new(distance: T) -> Result<Self> {
        if !(distance.is_finite() && distance > T::zero()) {
            return Err(Error::invalid(
                "distance",
                format!("expected a finite positive path length in m, got {distance}"),
            ));
        }
        Ok(ChannelGeometry { distance })
    }

    pub fn distance(&self) -> T {
        self.distance
    }
}

/// Per-component path loss in dB. Construct through [`LossBreakdown::new`] so
/// the total is always the sum of its parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossBreakdown<T> {
    pub spreading_db: T,
    pub absorption_db: T,
    pub scattering_db: T,
    pub total_db: T,
}

impl<T: Scalar> LossBreakdown<T> {
    pub fn new(spreading_db: T, absorption_db: T, scattering_db: T) -> Self {
        LossBreakdown {
            spreading_db,
            absorption_db,
            scattering_db,
            total_db: spreading_db + absorption_db + scattering_db,
        }
    }
}

/// Directivity of a Gaussian-beam source:
/// `D = 8 / [8/3 − (cosΔθ + cos²Δθ + cos³Δθ/3)]`.
///
/// Ranges from 24 at `Δθ = 0` down to 8/3 at `Δθ = π`.
pub fn directivity<T: Scalar>(beam: &BeamSpec<T>) -> T {
    let c = beam.delta_theta.cos();
    let three = T::lit(3.0);
    let bracket = T::lit(8.0) / three - (c + c * c + c * c * c / three);
    T::lit(8.0) / bracket
}

/// `PL_spr = −10·log10[D·(λ_g/(4πd))²]`.
pub fn spreading_loss<T: Scalar>(directivity: T, lambda_g: T, geom: &ChannelGeometry<T>) -> T {
    let ratio = lambda_g / (T::lit(4.0) * T::PI() * geom.distance);
    -T::lit(10.0) * (directivity * ratio * ratio).log10()
}

/// Beer-Lambert loss `−10·log10(e^{−μd}) = 10·log10(e)·μ·d`.
pub fn absorption_loss<T: Scalar>(mu_abs: T, geom: &ChannelGeometry<T>) -> T {
    db_per_neper::<T>() * mu_abs * geom.distance
}

/// Everything computed on the way to a [`LossBreakdown`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelEvaluation<T> {
    pub optical: OpticalState<T>,
    pub directivity: T,
    pub scattering: Vec<ScatteringDetail<T>>,
    pub loss: LossBreakdown<T>,
}

/// Runs the full pipeline for one medium, frequency, path and beam.
pub fn evaluate_channel<T: Scalar>(
    medium: &Medium<T>,
    freq: &FrequencyPoint<T>,
    geom: &ChannelGeometry<T>,
    beam: &BeamSpec<T>,
    populations: &[ParticlePopulation<T>],
    absorption: AbsorptionWavelength,
) -> Result<ChannelEvaluation<T>> {
    if !medium.band.contains(freq.hz()) {
        return Err(Error::OutOfBand {
            medium: String::new(),
            f_hz: freq.hz().as_f64(),
            f_min_hz: medium.band.min_hz.as_f64(),
            f_max_hz: medium.band.max_hz.as_f64(),
        });
    }
    let optical = optical_state(&medium.debye, freq, absorption)?;
    let d = directivity(beam);
    let scattering = populations
        .iter()
        .map(|pop| scattering_coefficients(pop, &optical))
        .collect::<Result<Vec<_>>>()?;
    let loss = LossBreakdown::new(
        spreading_loss(d, optical.lambda_g, geom),
        absorption_loss(optical.mu_abs, geom),
        scattering_loss(&scattering, geom),
    );
    Ok(ChannelEvaluation {
        optical,
        directivity: d,
        scattering,
        loss,
    })
}

/// Total path loss `PL_spr + PL_abs + PL_sca` with its components.
pub fn total_path_loss<T: Scalar>(
    medium: &Medium<T>,
    freq: &FrequencyPoint<T>,
    geom: &ChannelGeometry<T>,
    beam: &BeamSpec<T>,
    populations: &[ParticlePopulation<T>],
    absorption: AbsorptionWavelength,
) -> Result<LossBreakdown<T>> {
    evaluate_channel(medium, freq, geom, beam, populations, absorption).map(|e| e.loss)
}
