//! Floating-point abstraction shared by the physics modules.
//!
//! The dielectric and path-loss math is written once against [`Scalar`] and
//! instantiated for `f32` and `f64`. Data loading, sweeps and the CLI work in
//! `f64` through the aliases exported at the crate root.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar usable by the channel model.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Lossy view as `f64`, used for diagnostics.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Speed of light in vacuum, m/s (exact by SI definition).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[inline]
pub fn speed_of_light<T: Scalar>() -> T {
    T::lit(SPEED_OF_LIGHT)
}

/// dB per neper of power attenuation: `10·log10(e)`.
#[inline]
pub fn db_per_neper<T: Scalar>() -> T {
    T::lit(10.0) * T::one().exp().log10()
}
