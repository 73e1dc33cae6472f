//! Independent reference evaluations used by the integration and acceptance
//! tests. Nothing here calls into the library's numeric code.

#![allow(dead_code)]

use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};

/// Decimal digits after the point carried by [`Fixed`].
const DIGITS: u32 = 70;

const PI_DIGITS: &str = "3141592653589793238462643383279502884197169399375105820974944592307816406286";

fn scale() -> BigInt {
    BigInt::from(10u32).pow(DIGITS)
}

/// Fixed-point decimal with [`DIGITS`] fractional digits. Products and
/// quotients truncate, so each operation is exact to about 1e-70 absolute.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed(BigInt);

impl Fixed {
    pub fn int(n: i64) -> Self {
        Fixed(BigInt::from(n) * scale())
    }

    /// Exact value of an `f64`, truncated to the fixed grid.
    pub fn from_f64(x: f64) -> Self {
        let r = BigRational::from_float(x).expect("finite");
        Fixed(r.numer() * scale() / r.denom())
    }

    pub fn to_f64(&self) -> f64 {
        BigRational::new(self.0.clone(), scale()).to_f64().expect("representable")
    }

    pub fn pi() -> Self {
        let extra = PI_DIGITS.len() as u32 - 1 - DIGITS;
        Fixed(PI_DIGITS.parse::<BigInt>().unwrap() / BigInt::from(10u32).pow(extra))
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.0.is_negative(), "sqrt of negative value");
        Fixed((&self.0 * scale()).sqrt())
    }

    pub fn abs(&self) -> Self {
        Fixed(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn powi(&self, n: u32) -> Self {
        (0..n).fold(Fixed::int(1), |acc, _| &acc * self)
    }
}

impl Add for &Fixed {
    type Output = Fixed;
    fn add(self, o: &Fixed) -> Fixed {
        Fixed(&self.0 + &o.0)
    }
}
impl Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, o: &Fixed) -> Fixed {
        Fixed(&self.0 - &o.0)
    }
}
impl Mul for &Fixed {
    type Output = Fixed;
    fn mul(self, o: &Fixed) -> Fixed {
        Fixed(&self.0 * &o.0 / scale())
    }
}
impl Div for &Fixed {
    type Output = Fixed;
    fn div(self, o: &Fixed) -> Fixed {
        Fixed(&self.0 * scale() / &o.0)
    }
}
impl Neg for &Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed(-&self.0)
    }
}

/// `|approx − exact| / |exact|`.
pub fn rel_err(approx: f64, exact: &Fixed) -> f64 {
    let diff = (&Fixed::from_f64(approx) - exact).abs();
    if exact.is_zero() {
        return diff.to_f64();
    }
    (&diff / &exact.abs()).to_f64()
}

/// Exact-enough optical state of a double-Debye medium.
#[derive(Clone, Debug)]
pub struct ExactOptics {
    pub eps_real: Fixed,
    pub eps_imag: Fixed,
    pub n_real: Fixed,
    pub n_imag: Fixed,
}

/// Evaluates `ε = ε∞ + Δ₁/(1 + jωτ₁) + Δ₂/(1 + jωτ₂)` as a complex sum (the
/// engineering `−j` convention makes `ε''` the negated imaginary part), then
/// `n' = sqrt((|ε|+ε')/2)` and `n'' = sqrt((|ε|−ε')/2)`.
pub fn exact_optics(eps_inf: f64, eps_1: f64, eps_2: f64, tau_1: f64, tau_2: f64, f_hz: f64) -> ExactOptics {
    let one = Fixed::int(1);
    let two = Fixed::int(2);
    let omega = &(&two * &Fixed::pi()) * &Fixed::from_f64(f_hz);
    // strength / (1 + jx) = strength·(1 − jx) / (1 + x²)
    let relax = |strength: Fixed, tau: f64| -> (Fixed, Fixed) {
        let x = &omega * &Fixed::from_f64(tau);
        let den = &one + &(&x * &x);
        (&strength / &den, -&(&(&strength * &x) / &den))
    };
    let (fe1, fe2, fei) = (Fixed::from_f64(eps_1), Fixed::from_f64(eps_2), Fixed::from_f64(eps_inf));
    let (r1, i1) = relax(&fe1 - &fe2, tau_1);
    let (r2, i2) = relax(&fe2 - &fei, tau_2);
    let eps_real = &(&fei + &r1) + &r2;
    let eps_imag = -&(&i1 + &i2);
    let modulus = (&(&eps_real * &eps_real) + &(&eps_imag * &eps_imag)).sqrt();
    let n_real = (&(&modulus + &eps_real) / &two).sqrt();
    let n_imag = (&(&modulus - &eps_real) / &two).sqrt();
    ExactOptics {
        eps_real,
        eps_imag,
        n_real,
        n_imag,
    }
}

/// Taylor series of sin and cos about 0; `terms` terms of each.
fn sin_cos(p: &Fixed, terms: u32) -> (Fixed, Fixed) {
    let mut s = Fixed::int(0);
    let mut c = Fixed::int(0);
    let mut term = Fixed::int(1);
    let p2 = p * p;
    for k in 0..terms {
        // term = (−1)^k p^{2k} / (2k)!
        c = &c + &term;
        let odd = &(&term * p) / &Fixed::int(2 * k as i64 + 1);
        s = &s + &odd;
        term = -&(&(&term * &p2) / &Fixed::int(((2 * k + 1) * (2 * k + 2)) as i64));
    }
    (s, c)
}

/// Closed-form diffraction efficiency `2 − (4/p)sin p + (4/p²)(1 − cos p)`
/// for small `p` (|p| < 1).
pub fn exact_adt(p: f64) -> Fixed {
    let pf = Fixed::from_f64(p);
    let (s, c) = sin_cos(&pf, 30);
    let four = Fixed::int(4);
    let one_minus_cos = &Fixed::int(1) - &c;
    &(&Fixed::int(2) - &(&(&four / &pf) * &s)) + &(&(&four / &(&pf * &pf)) * &one_minus_cos)
}

/// Scattering loss computed from first principles for a Rayleigh population:
/// particle count per volume, per-particle cross section, Beer-Lambert
/// transmittance, then dB. Uses `n = n' − jn''` of the host medium.
pub fn brute_force_rayleigh_loss_db(
    radius: f64,
    volume_fraction: f64,
    n_real: f64,
    n_imag: f64,
    lambda_g: f64,
    distance: f64,
) -> f64 {
    use num::complex::Complex64;
    let particle_volume = 4.0 / 3.0 * std::f64::consts::PI * radius.powi(3);
    let count_per_m3 = volume_fraction / particle_volume;
    let geometric = std::f64::consts::PI * radius.powi(2);
    let size = 2.0 * std::f64::consts::PI * radius / lambda_g;
    let n = Complex64::new(n_real, -n_imag);
    let lorentz = (n * n - 1.0) / (n * n + 2.0);
    let efficiency = 8.0 / 3.0 * size.powi(4) * lorentz.re.powi(2);
    let extinction_per_m = count_per_m3 * efficiency * geometric;
    let transmittance = (-extinction_per_m * distance).exp();
    -10.0 * transmittance.log10()
}

/// Bundled medium parameters as text, so oracles do not go through the loader.
pub fn bundled_parameters() -> Vec<(String, [f64; 7])> {
    let text = include_str!("../../data/media.toml");
    let doc: toml_lite::Doc = toml_lite::parse(text);
    doc
}

mod toml_lite {
    //! Just enough parsing for `[[medium]]` key = number lines.
    pub type Doc = Vec<(String, [f64; 7])>;

    pub fn parse(text: &str) -> Doc {
        let keys = ["eps_inf", "eps_1", "eps_2", "tau_1_s", "tau_2_s", "f_min_hz", "f_max_hz"];
        let mut out: Doc = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line == "[[medium]]" {
                out.push((String::new(), [f64::NAN; 7]));
                continue;
            }
            let Some((k, v)) = line.split_once('=') else { continue };
            let (k, v) = (k.trim(), v.trim());
            let Some(cur) = out.last_mut() else { continue };
            if k == "id" {
                cur.0 = v.trim_matches('"').to_string();
            } else if let Some(i) = keys.iter().position(|x| *x == k) {
                cur.1[i] = v.parse().expect("numeric field");
            }
        }
        out
    }
}
