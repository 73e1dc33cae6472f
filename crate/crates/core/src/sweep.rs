//! One-dimensional parameter sweeps and the four figure presets.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dielectrics::{AbsorptionWavelength, FrequencyPoint};
use crate::error::{Error, Result};
use crate::mediadb::MediumDatabase;
use crate::pathloss::{evaluate_channel, BeamSpec, ChannelGeometry, LossBreakdown, ParticlePopulation};

/// Grid density of the figure presets.
pub const PRESET_POINTS: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    /// Grid in Hz.
    Frequency,
    /// Grid in m.
    Distance,
    /// Grid in rad.
    BeamWidth,
}

impl SweepAxis {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepAxis::Frequency => "frequency",
            SweepAxis::Distance => "distance",
            SweepAxis::BeamWidth => "beam_width",
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The parameters held constant during a sweep. The one matching the swept
/// axis must be absent; the other two must be present.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct FixedParameters {
    pub frequency: Option<FrequencyPoint<f64>>,
    pub geometry: Option<ChannelGeometry<f64>>,
    pub beam: Option<BeamSpec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRequest {
    pub medium_ids: Vec<String>,
    pub axis: SweepAxis,
    pub grid: Vec<f64>,
    pub fixed: FixedParameters,
    #[serde(default)]
    pub populations: Vec<ParticlePopulation<f64>>,
    #[serde(default)]
    pub absorption: AbsorptionWavelength,
}

/// Optical quantities reported alongside each row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpticalSummary {
    pub eps_real: f64,
    pub eps_imag: f64,
    pub n_real: f64,
    pub n_imag: f64,
    pub lambda_g_m: f64,
    pub mu_abs_per_m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub medium: String,
    pub axis_value: f64,
    pub f_hz: f64,
    pub lambda0_m: f64,
    pub distance_m: f64,
    pub beam_rad: f64,
    pub directivity: f64,
    pub optical: OpticalSummary,
    pub loss: LossBreakdown<f64>,
    /// Some scattering efficiency was negative and clamped to zero.
    pub scattering_clamped: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub request: SweepRequest,
    pub rows: Vec<SweepRow>,
}

/// How grid points are evaluated. Both produce identical rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Evaluation {
    Serial,
    #[default]
    Parallel,
}

/// `n` evenly spaced values from `start` to `end`, both endpoints exact.
pub fn linspace(start: f64, end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    end
                } else {
                    start + (end - start) * (i as f64) / ((n - 1) as f64)
                }
            })
            .collect(),
    }
}

struct Point {
    freq: FrequencyPoint<f64>,
    geom: ChannelGeometry<f64>,
    beam: BeamSpec<f64>,
}

fn grid_error(axis: SweepAxis, value: f64, reason: impl fmt::Display) -> Error {
    Error::invalid("sweep grid", format!("{axis} value {value}: {reason}"))
}

fn missing(name: &str, axis: SweepAxis) -> Error {
    Error::invalid("sweep request", format!("a {axis} sweep needs a fixed {name}"))
}

impl SweepRequest {
    fn points(&self) -> Result<Vec<Point>> {
        if self.grid.len() < 2 {
            return Err(Error::invalid(
                "sweep grid",
                format!("needs at least 2 points, got {}", self.grid.len()),
            ));
        }
        if let Some(w) = self.grid.windows(2).find(|w| !(w[0] < w[1])) {
            return Err(grid_error(self.axis, w[1], format!("grid must be strictly increasing (after {})", w[0])));
        }
        let f = self.fixed;
        let swept_also_fixed = match self.axis {
            SweepAxis::Frequency => f.frequency.is_some(),
            SweepAxis::Distance => f.geometry.is_some(),
            SweepAxis::BeamWidth => f.beam.is_some(),
        };
        if swept_also_fixed {
            return Err(Error::invalid(
                "sweep request",
                format!("the swept parameter ({}) cannot also be fixed", self.axis),
            ));
        }
        self.grid
            .iter()
            .map(|&v| {
                let axis = self.axis;
                Ok(match axis {
                    SweepAxis::Frequency => Point {
                        freq: FrequencyPoint::from_hz(v).map_err(|e| grid_error(axis, v, e))?,
                        geom: f.geometry.ok_or_else(|| missing("distance", axis))?,
                        beam: f.beam.ok_or_else(|| missing("beam width", axis))?,
                    },
                    SweepAxis::Distance => Point {
                        freq: f.frequency.ok_or_else(|| missing("frequency", axis))?,
                        geom: ChannelGeometry::new(v).map_err(|e| grid_error(axis, v, e))?,
                        beam: f.beam.ok_or_else(|| missing("beam width", axis))?,
                    },
                    SweepAxis::BeamWidth => Point {
                        freq: f.frequency.ok_or_else(|| missing("frequency", axis))?,
                        geom: f.geometry.ok_or_else(|| missing("distance", axis))?,
                        beam: BeamSpec::new(v).map_err(|e| grid_error(axis, v, e))?,
                    },
                })
            })
            .collect()
    }
}

/// Evaluates the request over every (medium, grid point) pair. Rows come out
/// medium-major in request order regardless of `evaluation`.
pub fn run_sweep(db: &MediumDatabase, req: &SweepRequest, evaluation: Evaluation) -> Result<SweepResult> {
    if req.medium_ids.is_empty() {
        return Err(Error::invalid("sweep request", "no media selected"));
    }
    let media = req
        .medium_ids
        .iter()
        .map(|id| db.get_medium(id))
        .collect::<Result<Vec<_>>>()?;
    let points = req.points()?;
    for rec in &media {
        if let Some(p) = points.iter().find(|p| !rec.medium.band.contains(p.freq.hz())) {
            return Err(Error::OutOfBand {
                medium: rec.id.clone(),
                f_hz: p.freq.hz(),
                f_min_hz: rec.medium.band.min_hz,
                f_max_hz: rec.medium.band.max_hz,
            });
        }
    }

    let jobs: Vec<_> = media
        .iter()
        .flat_map(|rec| req.grid.iter().zip(&points).map(move |(&v, p)| (*rec, v, p)))
        .collect();
    let eval = |&(rec, axis_value, p): &(&crate::mediadb::MediumRecord, f64, &Point)| -> Result<SweepRow> {
        let e = evaluate_channel(&rec.medium, &p.freq, &p.geom, &p.beam, &req.populations, req.absorption)?;
        Ok(SweepRow {
            medium: rec.id.clone(),
            axis_value,
            f_hz: p.freq.hz(),
            lambda0_m: p.freq.lambda_0(),
            distance_m: p.geom.distance(),
            beam_rad: p.beam.delta_theta(),
            directivity: e.directivity,
            optical: OpticalSummary {
                eps_real: e.optical.permittivity.eps_real,
                eps_imag: e.optical.permittivity.eps_imag,
                n_real: e.optical.index.n_real,
                n_imag: e.optical.index.n_imag,
                lambda_g_m: e.optical.lambda_g,
                mu_abs_per_m: e.optical.mu_abs,
            },
            loss: e.loss,
            scattering_clamped: e.scattering.iter().any(|s| s.clamped),
        })
    };
    let rows = match evaluation {
        Evaluation::Serial => jobs.iter().map(eval).collect::<Result<Vec<_>>>()?,
        Evaluation::Parallel => jobs.par_iter().map(eval).collect::<Result<Vec<_>>>()?,
    };
    Ok(SweepResult {
        request: req.clone(),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl Figure {
    pub const ALL: [Figure; 4] = [Figure::Fig1, Figure::Fig2, Figure::Fig3, Figure::Fig4];

    pub fn name(&self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
        }
    }

    pub fn title(&self) -> &'static str {
        match self {
            Figure::Fig1 => "Path loss vs frequency, d = 1 mm, beam width 0.5 rad",
            Figure::Fig2 => "Path loss vs frequency, d = 2 mm, beam width 0.5 rad",
            Figure::Fig3 => "Path loss vs distance, lambda0 = 0.3 mm, beam width 0.5 rad",
            Figure::Fig4 => "Path loss vs beam width, lambda0 = 0.3 mm, d = 1 mm",
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Figure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown figure '{s}' (valid: fig1, fig2, fig3, fig4)"))
    }
}

/// Media shown in every figure, in plotting order.
pub const FIGURE_MEDIA: [&str; 3] = ["water", "skin", "epidermis"];

/// Preset with the default grid density.
pub fn figure_preset(figure: Figure) -> SweepRequest {
    figure_preset_with_points(figure, PRESET_POINTS)
}

pub fn figure_preset_with_points(figure: Figure, points: usize) -> SweepRequest {
    let freq = |hz| Some(FrequencyPoint::from_lambda0(hz).expect("valid preset wavelength"));
    let geom = |d| Some(ChannelGeometry::new(d).expect("valid preset distance"));
    let beam = |t| Some(BeamSpec::new(t).expect("valid preset beam"));
    let (axis, grid, fixed) = match figure {
        Figure::Fig1 | Figure::Fig2 => {
            let d = if figure == Figure::Fig1 { 1e-3 } else { 2e-3 };
            (
                SweepAxis::Frequency,
                linspace(1e11, 1e12, points),
                FixedParameters {
                    frequency: None,
                    geometry: geom(d),
                    beam: beam(0.5),
                },
            )
        }
        Figure::Fig3 => (
            SweepAxis::Distance,
            linspace(1e-4, 2e-3, points),
            FixedParameters {
                frequency: freq(3e-4),
                geometry: None,
                beam: beam(0.5),
            },
        ),
        Figure::Fig4 => (
            SweepAxis::BeamWidth,
            linspace(0.01, 3.0, points),
            FixedParameters {
                frequency: freq(3e-4),
                geometry: geom(1e-3),
                beam: None,
            },
        ),
    };
    SweepRequest {
        medium_ids: FIGURE_MEDIA.iter().map(|s| s.to_string()).collect(),
        axis,
        grid,
        fixed,
        populations: Vec::new(),
        absorption: AbsorptionWavelength::Guided,
    }
}

/// Spread of the total loss across the sweep axis for one medium.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Attribution {
    pub medium: String,
    pub axis: SweepAxis,
    pub min_db: f64,
    pub max_db: f64,
    pub span_db: f64,
    pub at_min: f64,
    pub at_max: f64,
}

/// Per medium, `max(total_db) − min(total_db)` over the sweep, in medium order.
pub fn component_attribution(result: &SweepResult) -> Vec<Attribution> {
    let mut out: Vec<Attribution> = Vec::new();
    for row in &result.rows {
        let total = row.loss.total_db;
        match out.iter_mut().find(|a| a.medium == row.medium) {
            Some(a) => {
                if total < a.min_db {
                    a.min_db = total;
                    a.at_min = row.axis_value;
                }
                if total > a.max_db {
                    a.max_db = total;
                    a.at_max = row.axis_value;
                }
            }
            None => out.push(Attribution {
                medium: row.medium.clone(),
                axis: result.request.axis,
                min_db: total,
                max_db: total,
                span_db: 0.0,
                at_min: row.axis_value,
                at_max: row.axis_value,
            }),
        }
    }
    for a in &mut out {
        a.span_db = a.max_db - a.min_db;
    }
    out
}
