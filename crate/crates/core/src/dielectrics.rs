//! Double-Debye dielectric model and the optical quantities derived from it.
//!
//! Sign convention: the permittivity is `ε = ε' − jε''` and the refractive
//! index `n = n' − jn''`. Both imaginary parts are stored as non-negative
//! magnitudes.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{speed_of_light, Scalar};

/// The five relaxation constants of a double-Debye medium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DebyeParameters<T> {
    eps_inf: T,
    eps_1: T,
    eps_2: T,
    tau_1: T,
    tau_2: T,
}

impl<T: Scalar> DebyeParameters<T> {
    /// `tau_1` and `tau_2` in seconds.
    pub fn new(eps_inf: T, eps_1: T, eps_2: T, tau_1: T, tau_2: T) -> Result<Self> {
        let params = DebyeParameters {
            eps_inf,
            eps_1,
            eps_2,
            tau_1,
            tau_2,
        };
        params
            .check()
            .map_err(|rule| Error::invalid("Debye parameters", rule))?;
        Ok(params)
    }

    /// Returns the first violated invariant, if any.
    pub fn check(&self) -> std::result::Result<(), &'static str> {
        let all = [self.eps_inf, self.eps_1, self.eps_2, self.tau_1, self.tau_2];
        if all.iter().any(|v| !v.is_finite()) {
            return Err("all parameters finite");
        }
        if !(self.tau_1 > T::zero()) {
            return Err("tau_1 > 0");
        }
        if !(self.tau_2 > T::zero()) {
            return Err("tau_2 > 0");
        }
        if !(self.eps_inf >= T::one()) {
            return Err("eps_inf >= 1");
        }
        if !(self.eps_2 >= self.eps_inf) {
            return Err("eps_2 >= eps_inf");
        }
        if !(self.eps_1 >= self.eps_2) {
            return Err("eps_1 >= eps_2");
        }
        Ok(())
    }

    pub fn eps_inf(&self) -> T {
        self.eps_inf
    }
    pub fn eps_1(&self) -> T {
        self.eps_1
    }
    pub fn eps_2(&self) -> T {
        self.eps_2
    }
    pub fn tau_1(&self) -> T {
        self.tau_1
    }
    pub fn tau_2(&self) -> T {
        self.tau_2
    }
}

/// A frequency together with its angular frequency and free-space wavelength.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyPoint<T> {
    f_hz: T,
    omega: T,
    lambda_0: T,
}

impl<T: Scalar> FrequencyPoint<T> {
    pub fn from_hz(f_hz: T) -> Result<Self> {
        if !(f_hz.is_finite() && f_hz > T::zero()) {
            return Err(Error::invalid(
                "frequency",
                format!("expected a finite positive value in Hz, got {}", f_hz),
            ));
        }
        Ok(FrequencyPoint {
            f_hz,
            omega: T::TAU() * f_hz,
            lambda_0: speed_of_light::<T>() / f_hz,
        })
    }

    /// Builds the point from a free-space wavelength in meters.
    pub fn from_lambda0(lambda_0: T) -> Result<Self> {
        if !(lambda_0.is_finite() && lambda_0 > T::zero()) {
            return Err(Error::invalid(
                "free-space wavelength",
                format!("expected a finite positive value in m, got {}", lambda_0),
            ));
        }
        let f_hz = speed_of_light::<T>() / lambda_0;
        Ok(FrequencyPoint {
            f_hz,
            omega: T::TAU() * f_hz,
            lambda_0,
        })
    }

    pub fn hz(&self) -> T {
        self.f_hz
    }
    pub fn omega(&self) -> T {
        self.omega
    }
    pub fn lambda_0(&self) -> T {
        self.lambda_0
    }
}

/// Closed frequency interval `[min_hz, max_hz]` where a medium model is valid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyBand<T> {
    pub min_hz: T,
    pub max_hz: T,
}

impl<T: Scalar> FrequencyBand<T> {
    pub fn new(min_hz: T, max_hz: T) -> Result<Self> {
        let band = FrequencyBand { min_hz, max_hz };
        band.check()
            .map_err(|rule| Error::invalid("frequency band", rule))?;
        Ok(band)
    }

    pub fn check(&self) -> std::result::Result<(), &'static str> {
        if !(self.min_hz.is_finite() && self.max_hz.is_finite() && self.min_hz > T::zero()) {
            return Err("f_min_hz > 0 and finite");
        }
        if !(self.min_hz < self.max_hz) {
            return Err("f_min_hz < f_max_hz");
        }
        Ok(())
    }

    pub fn contains(&self, f_hz: T) -> bool {
        self.min_hz <= f_hz && f_hz <= self.max_hz
    }
}

/// A dispersive medium: Debye constants plus the band they are valid over.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Medium<T> {
    pub debye: DebyeParameters<T>,
    pub band: FrequencyBand<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPermittivity<T> {
    pub eps_real: T,
    pub eps_imag: T,
}

impl<T: Scalar> ComplexPermittivity<T> {
    /// `ε' − jε''` as a complex number.
    pub fn to_complex(&self) -> Complex<T> {
        Complex::new(self.eps_real, -self.eps_imag)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefractiveIndex<T> {
    pub n_real: T,
    pub n_imag: T,
}

impl<T: Scalar> RefractiveIndex<T> {
    /// `n' − jn''` as a complex number.
    pub fn to_complex(&self) -> Complex<T> {
        Complex::new(self.n_real, -self.n_imag)
    }
}

/// Which wavelength divides `4π·n''` in the absorption coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AbsorptionWavelength {
    /// Medium wavelength `λ_g = λ₀/n'`.
    #[default]
    Guided,
    /// Free-space wavelength `λ₀`.
    FreeSpace,
}

impl AbsorptionWavelength {
    pub fn select<T>(self, lambda_g: T, lambda_0: T) -> T {
        match self {
            AbsorptionWavelength::Guided => lambda_g,
            AbsorptionWavelength::FreeSpace => lambda_0,
        }
    }
}

impl fmt::Display for AbsorptionWavelength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AbsorptionWavelength::Guided => "guided",
            AbsorptionWavelength::FreeSpace => "free-space",
        })
    }
}

impl FromStr for AbsorptionWavelength {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "guided" => Ok(AbsorptionWavelength::Guided),
            "free-space" => Ok(AbsorptionWavelength::FreeSpace),
            other => Err(format!(
                "unknown absorption wavelength '{other}' (expected guided or free-space)"
            )),
        }
    }
}

/// Per-frequency optical quantities of a medium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpticalState<T> {
    pub frequency: FrequencyPoint<T>,
    pub permittivity: ComplexPermittivity<T>,
    pub index: RefractiveIndex<T>,
    /// Guided (medium) wavelength, m.
    pub lambda_g: T,
    /// Molecular absorption coefficient, 1/m.
    pub mu_abs: T,
}

/// Evaluates the double-Debye permittivity at `freq`.
///
/// ```text
/// ε'  = ε∞ + (ε₁−ε₂)/(1+(ωτ₁)²) + (ε₂−ε∞)/(1+(ωτ₂)²)
/// ε'' = (ε₁−ε₂)ωτ₁/(1+(ωτ₁)²) + (ε₂−ε∞)ωτ₂/(1+(ωτ₂)²)
/// ```
pub fn complex_permittivity<T: Scalar>(
    params: &DebyeParameters<T>,
    freq: &FrequencyPoint<T>,
) -> ComplexPermittivity<T> {
    let x1 = freq.omega * params.tau_1;
    let x2 = freq.omega * params.tau_2;
    let d1 = T::one() + x1 * x1;
    let d2 = T::one() + x2 * x2;
    let s1 = params.eps_1 - params.eps_2;
    let s2 = params.eps_2 - params.eps_inf;
    ComplexPermittivity {
        eps_real: params.eps_inf + s1 / d1 + s2 / d2,
        eps_imag: s1 * x1 / d1 + s2 * x2 / d2,
    }
}

/// Complex refractive index with `(n' − jn'')² = ε' − jε''` and `n', n'' ≥ 0`.
///
/// `n' = sqrt((|ε| + ε')/2)`. `n''` is algebraically `sqrt((|ε| − ε')/2)`;
/// it is evaluated as `ε''/(2n')`, which is the same quantity without the
/// cancellation in `|ε| − ε'` for weakly lossy media.
pub fn refractive_index<T: Scalar>(eps: &ComplexPermittivity<T>) -> Result<RefractiveIndex<T>> {
    let (re, im) = (eps.eps_real, eps.eps_imag);
    if !(re.is_finite() && im.is_finite()) {
        return Err(Error::invalid("permittivity", "components must be finite"));
    }
    if re < T::zero() {
        return Err(Error::invalid(
            "permittivity",
            format!("eps_real = {re} is negative, outside the model's validity"),
        ));
    }
    if im < T::zero() {
        return Err(Error::invalid(
            "permittivity",
            format!("eps_imag = {im} is negative (passive media have eps_imag >= 0)"),
        ));
    }
    let two = T::lit(2.0);
    let modulus = re.hypot(im);
    let n_real = ((modulus + re) / two).sqrt();
    let n_imag = if n_real > T::zero() {
        im / (two * n_real)
    } else {
        T::zero()
    };
    Ok(RefractiveIndex { n_real, n_imag })
}

/// `λ_g = λ₀/n'`. Requires `n' > 0`.
pub fn guided_wavelength<T: Scalar>(freq: &FrequencyPoint<T>, index: &RefractiveIndex<T>) -> T {
    freq.lambda_0 / index.n_real
}

/// `μ_abs = 4π·n''/λ`, with `λ` chosen by the caller (see [`AbsorptionWavelength`]).
pub fn absorption_coefficient<T: Scalar>(index: &RefractiveIndex<T>, wavelength: T) -> T {
    T::lit(4.0) * T::PI() * index.n_imag / wavelength
}

/// Full dielectric pipeline: permittivity, index, guided wavelength, absorption.
pub fn optical_state<T: Scalar>(
    params: &DebyeParameters<T>,
    freq: &FrequencyPoint<T>,
    absorption: AbsorptionWavelength,
) -> Result<OpticalState<T>> {
    let permittivity = complex_permittivity(params, freq);
    let index = refractive_index(&permittivity)?;
    let lambda_g = guided_wavelength(freq, &index);
    let mu_abs = absorption_coefficient(&index, absorption.select(lambda_g, freq.lambda_0));
    Ok(OpticalState {
        frequency: *freq,
        permittivity,
        index,
        lambda_g,
        mu_abs,
    })
}
