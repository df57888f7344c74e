//! Coefficient bounds for bi-prestarlike functions subordinate to the
//! Chebyshev generating function `Φ(z, t) = 1/(1 − 2tz + z²)`.
//!
//! The crate has two halves. [`bounds`] evaluates the closed-form estimates
//! for `|a₂|`, `|a₃|` and `|a₃ − μa₂²|` over the class `R_Σ(λ, α, Φ)`.
//! [`verifier`] checks them independently: it samples Schwarz-function
//! coefficients, rebuilds `(a₂, a₃)` and compares, and it re-derives the
//! coefficient relations by pushing actual power series through
//! [`prestarlike::operator_l`].
//!
//! The algebra is generic over the scalar type; the aliases below fix it to
//! `f64` (and complex `f64` coefficients) for everyday use.

pub mod bounds;
pub mod chebyshev;
pub mod prestarlike;
pub mod scalar;
pub mod series;
pub mod verifier;

pub use num_complex::Complex64;

pub use bounds::{Branch, BoundsError};
pub use scalar::{Coefficient, Real, Scalar};
pub use series::{SeriesError, TruncatedSeries};
pub use verifier::{Mode, SchwarzSample, VerifyError, VerifyReport};

/// Complex power series, the carrier for f, F, G, u and v.
pub type Series = TruncatedSeries<Complex64>;
/// Real power series (Chebyshev generating functions, the extremal function).
pub type RealSeries = TruncatedSeries<f64>;
pub type ClassParams = bounds::ClassParams<f64>;
pub type BoundReport = bounds::BoundReport<f64>;
pub type FeketeSzegoReport = bounds::FeketeSzegoReport<f64>;
pub type PrestarlikeOrder = prestarlike::PrestarlikeOrder<f64>;
pub type OperatorParams = prestarlike::OperatorParams<f64>;
