use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::dielectrics::OpticalState;
use crate::error::{Error, Result};
use crate::scalar::{db_per_neper, Scalar};

/// Radii above this are rejected; the channel model works on sub-millimeter paths.
pub const MAX_PARTICLE_RADIUS_M: f64 = 1e-3;

/// Below this phase delay the diffraction efficiency switches to its Taylor series.
pub const ADT_SERIES_THRESHOLD: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeClass {
    /// Much smaller than the wavelength; Rayleigh efficiency.
    Small,
    /// Comparable to or larger than the wavelength; anomalous diffraction.
    Large,
}

/// A population of identical spherical scatterers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParticlePopulation<T> {
    radius: T,
    volume_fraction: T,
    sigma_abs: T,
    size_class: SizeClass,
}

impl<T: Scalar> ParticlePopulation<T> {
    /// `radius` in m, `volume_fraction` in (0, 1), `sigma_abs` in m².
    pub fn new(radius: T, volume_fraction: T, sigma_abs: T, size_class: SizeClass) -> Result<Self> {
        let pop = ParticlePopulation {
            radius,
            volume_fraction,
            sigma_abs,
            size_class,
        };
        pop.check()
            .map_err(|rule| Error::invalid("particle population", rule))?;
        Ok(pop)
    }

    pub fn check(&self) -> std::result::Result<(), &'static str> {
        if !(self.radius.is_finite() && self.radius > T::zero()) {
            return Err("radius_m > 0");
        }
        if self.radius > T::lit(MAX_PARTICLE_RADIUS_M) {
            return Err("radius_m <= 1e-3");
        }
        if !(self.volume_fraction > T::zero() && self.volume_fraction < T::one()) {
            return Err("0 < volume_fraction < 1");
        }
        if !(self.sigma_abs.is_finite() && self.sigma_abs >= T::zero()) {
            return Err("sigma_abs_m2 >= 0");
        }
        if self.size_class == SizeClass::Large && self.sigma_abs > T::lit(2.0) * self.geometric_cross_section() {
            return Err("sigma_abs_m2 <= 2*pi*radius_m^2 for large particles");
        }
        Ok(())
    }

    pub fn radius(&self) -> T {
        self.radius
    }
    pub fn volume_fraction(&self) -> T {
        self.volume_fraction
    }
    pub fn sigma_abs(&self) -> T {
        self.sigma_abs
    }
    pub fn size_class(&self) -> SizeClass {
        self.size_class
    }

    /// `ρ_v = k / ((4/3)πr³)`, particles per m³.
    pub fn number_density(&self) -> T {
        let r = self.radius;
        self.volume_fraction / (T::lit(4.0) / T::lit(3.0) * T::PI() * r * r * r)
    }

    /// `σ_g = πr²`.
    pub fn geometric_cross_section(&self) -> T {
        T::PI() * self.radius * self.radius
    }
}

/// Scattering quantities of one population at one optical state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringDetail<T> {
    /// Size parameter `2πr/λ_g`.
    pub psi: T,
    /// Phase delay `4πr(n'−1)/λ₀` through the particle center.
    pub p: T,
    pub q_small: T,
    pub q_large: T,
    pub mu_small: T,
    pub mu_large: T,
    /// Set when a negative efficiency was clamped to zero.
    pub clamped: bool,
}

impl<T: Scalar> ScatteringDetail<T> {
    pub fn mu_total(&self) -> T {
        self.mu_small + self.mu_large
    }
}

/// Rayleigh efficiency `Q = (8/3)·ψ⁴·[Re((n²−1)/(n²+2))]²`.
pub fn rayleigh_efficiency<T: Scalar>(psi: T, n: Complex<T>) -> Result<T> {
    if !(psi >= T::zero()) {
        return Err(Error::invalid("size parameter", format!("psi = {psi} must be >= 0")));
    }
    let n2 = n * n;
    let denom = n2 + Complex::new(T::lit(2.0), T::zero());
    if denom.norm() <= T::lit(4.0) * T::epsilon() * (T::one() + n2.norm()) {
        return Err(Error::invalid("refractive index", "n^2 = -2 is a pole of the Rayleigh factor"));
    }
    let factor = ((n2 - Complex::new(T::one(), T::zero())) / denom).re;
    let psi2 = psi * psi;
    Ok(T::lit(8.0) / T::lit(3.0) * psi2 * psi2 * factor * factor)
}

/// Anomalous-diffraction efficiency
/// `Q = 2 − (4/p)·sin p + (4/p²)·(1 − cos p) − σ_abs/σ_g`.
///
/// For `|p| ≤ 1e-4` the oscillatory part is replaced by its series
/// `p²/2 − p⁴/36`, which the closed form cannot resolve in floating point.
pub fn adt_efficiency<T: Scalar>(p: T, sigma_abs: T, sigma_g: T) -> T {
    let absorbed = sigma_abs / sigma_g;
    let p = p.abs();
    let p2 = p * p;
    let diffraction = if p <= T::lit(ADT_SERIES_THRESHOLD) {
        p2 / T::lit(2.0) - p2 * p2 / T::lit(36.0)
    } else {
        // 1 − cos p written as 2·sin²(p/2) to keep precision at small p.
        let half = (p / T::lit(2.0)).sin();
        T::lit(2.0) - T::lit(4.0) / p * p.sin() + T::lit(8.0) * half * half / p2
    };
    diffraction - absorbed
}

/// Scattering coefficient of a population: `μ = ρ_v·Q·σ_g`, using the
/// efficiency that matches its size class. The other efficiency is reported as 0.
pub fn scattering_coefficients<T: Scalar>(
    pop: &ParticlePopulation<T>,
    optical: &OpticalState<T>,
) -> Result<ScatteringDetail<T>> {
    let two_pi_r = T::TAU() * pop.radius;
    let psi = two_pi_r / optical.lambda_g;
    let p = T::lit(2.0) * two_pi_r * (optical.index.n_real - T::one()) / optical.frequency.lambda_0();
    let sigma_g = pop.geometric_cross_section();
    let rho = pop.number_density();

    let (raw_small, raw_large) = match pop.size_class {
        SizeClass::Small => (rayleigh_efficiency(psi, optical.index.to_complex())?, T::zero()),
        SizeClass::Large => (T::zero(), adt_efficiency(p, pop.sigma_abs, sigma_g)),
    };
    let clamped = raw_small < T::zero() || raw_large < T::zero();
    let q_small = raw_small.max(T::zero());
    let q_large = raw_large.max(T::zero());
    Ok(ScatteringDetail {
        psi,
        p,
        q_small,
        q_large,
        mu_small: rho * q_small * sigma_g,
        mu_large: rho * q_large * sigma_g,
        clamped,
    })
}

/// `PL_sca = 10·log10(e)·Σ(μ_small + μ_large)·d` over all populations.
pub fn scattering_loss<T: Scalar>(details: &[ScatteringDetail<T>], geom: &super::ChannelGeometry<T>) -> T {
    let mu = details.iter().fold(T::zero(), |acc, d| acc + d.mu_total());
    db_per_neper::<T>() * mu * geom.distance()
}
