//! Path-loss model for terahertz electromagnetic links inside tissue.
//!
//! The total loss of a link is the sum of three dB terms: spherical
//! spreading (including the transmit antenna's Gaussian-beam directivity),
//! Beer-Lambert molecular absorption, and particle scattering. Media are
//! described by double-Debye relaxation parameters loaded from data files
//! ([`mediadb`]); [`sweep`] evaluates the model over parameter grids and the
//! `thzchan` binary exposes it on the command line.
//!
//! The physics in [`dielectrics`] and [`pathloss`] is generic over
//! [`Scalar`] (`f32` or `f64`). The aliases below fix it to `f64`, which is
//! what the data, sweep and CLI layers use.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dielectrics;
mod error;
pub mod mediadb;
pub mod pathloss;
pub mod scalar;
pub mod sweep;

pub use error::{Error, Result};
pub use scalar::{Scalar, SPEED_OF_LIGHT};

pub use dielectrics::AbsorptionWavelength;
pub use mediadb::{load_database, MediumDatabase, MediumRecord, ParticleRecord};
pub use pathloss::SizeClass;
pub use sweep::{Evaluation, Figure, SweepAxis, SweepRequest, SweepResult};

pub type DebyeParameters = dielectrics::DebyeParameters<f64>;
pub type FrequencyPoint = dielectrics::FrequencyPoint<f64>;
pub type FrequencyBand = dielectrics::FrequencyBand<f64>;
pub type Medium = dielectrics::Medium<f64>;
pub type ComplexPermittivity = dielectrics::ComplexPermittivity<f64>;
pub type RefractiveIndex = dielectrics::RefractiveIndex<f64>;
pub type OpticalState = dielectrics::OpticalState<f64>;

pub type BeamSpec = pathloss::BeamSpec<f64>;
pub type ChannelGeometry = pathloss::ChannelGeometry<f64>;
pub type ParticlePopulation = pathloss::ParticlePopulation<f64>;
pub type ScatteringDetail = pathloss::ScatteringDetail<f64>;
pub type LossBreakdown = pathloss::LossBreakdown<f64>;
pub type ChannelEvaluation = pathloss::ChannelEvaluation<f64>;

/// Single-precision variants, for callers that trade accuracy for throughput.
pub type OpticalStateF32 = dielectrics::OpticalState<f32>;
pub type LossBreakdownF32 = pathloss::LossBreakdown<f32>;
