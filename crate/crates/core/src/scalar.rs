//! Scalar and coefficient traits shared by every module.
//!
//! Real parameters (λ, α, t, μ) only need ordered field arithmetic, so the
//! Chebyshev and Ψ evaluators work over exact rationals as well as floats.
//! Anything involving a square root is restricted to [`Real`].

use std::fmt::Debug;

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive};

/// An ordered field: `f32`, `f64`, or an exact rational.
pub trait Scalar: Num + Signed + PartialOrd + Clone + Debug + FromPrimitive {
    /// Small non-negative integer embedded in the field.
    fn int(n: u32) -> Self {
        Self::from_u32(n).expect("small integers are representable")
    }
}

impl<T> Scalar for T where T: Num + Signed + PartialOrd + Clone + Debug + FromPrimitive {}

/// A floating-point [`Scalar`].
pub trait Real: Scalar + Float {
    /// `|x|`; `Float` and `Signed` both provide `abs`, this picks one.
    fn magnitude(self) -> Self {
        Float::abs(self)
    }
}

impl<T> Real for T where T: Scalar + Float {}

/// Power-series coefficient: any commutative ring element we can measure.
pub trait Coefficient: Num + Clone + Debug {
    /// Magnitude used for tolerance comparisons.
    fn modulus(&self) -> f64;
}

impl Coefficient for f64 {
    fn modulus(&self) -> f64 {
        self.abs()
    }
}

impl Coefficient for f32 {
    fn modulus(&self) -> f64 {
        f64::from(self.abs())
    }
}

impl Coefficient for Complex<f64> {
    fn modulus(&self) -> f64 {
        self.norm()
    }
}

impl Coefficient for Complex<f32> {
    fn modulus(&self) -> f64 {
        f64::from(self.norm())
    }
}

impl Coefficient for Ratio<i64> {
    fn modulus(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

impl Coefficient for Ratio<i128> {
    fn modulus(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}
