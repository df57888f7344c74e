//! Prestarlike convolution and the subordination operator.
//!
//! `s(z; α) = z/(1 − z)^{2(1−α)} = z + Σ Ψ_n(α) zⁿ` is the extremal starlike
//! function of order α. A function `f` is transformed to `F = s ∗ f` and its
//! inverse `g = f⁻¹` to `G = s ∗ g`; the class is defined by subordinating
//!
//! ```text
//! L_λ[F] = (1 − λ)·zF'/F + λ·(1 + zF''/F')
//! ```
//!
//! to the Chebyshev generating function.

use thiserror::Error;

use crate::scalar::{Coefficient, Scalar};
use crate::series::{SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PrestarlikeError {
    #[error("Ψ_n is defined for n >= 2, got n = {0}")]
    BadIndex(usize),
    #[error("prestarlike order α = {0} outside [0, 1)")]
    AlphaOutOfRange(String),
    #[error("operator weight λ = {0} outside [0, 1]")]
    LambdaOutOfRange(String),
    #[error("expansion needs order >= {needed}, got {got}")]
    OrderTooLow { needed: usize, got: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Order of prestarlikeness α ∈ [0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PrestarlikeOrder<S>(S);

impl<S: Scalar> PrestarlikeOrder<S> {
    pub fn new(alpha: S) -> Result<Self, PrestarlikeError> {
        if alpha >= S::zero() && alpha < S::one() {
            Ok(Self(alpha))
        } else {
            Err(PrestarlikeError::AlphaOutOfRange(format!("{alpha:?}")))
        }
    }

    pub fn get(&self) -> &S {
        &self.0
    }
}

/// Convex-combination weight λ ∈ [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct OperatorParams<S>(S);

impl<S: Scalar> OperatorParams<S> {
    pub fn new(lambda: S) -> Result<Self, PrestarlikeError> {
        if lambda >= S::zero() && lambda <= S::one() {
            Ok(Self(lambda))
        } else {
            Err(PrestarlikeError::LambdaOutOfRange(format!("{lambda:?}")))
        }
    }

    pub fn get(&self) -> &S {
        &self.0
    }
}

/// `Ψ_n(α) = ∏_{k=2}^{n} (k − 2α) / (n − 1)!`, accumulated as
/// `∏_{k=2}^{n} (k − 2α)/(k − 1)` so rationals stay exact.
pub fn psi<S: Scalar>(n: usize, alpha: &PrestarlikeOrder<S>) -> Result<S, PrestarlikeError> {
    if n < 2 {
        return Err(PrestarlikeError::BadIndex(n));
    }
    let two_alpha = S::int(2) * alpha.0.clone();
    let mut k = S::one();
    let mut value = S::one();
    for _ in 2..=n {
        let prev = k.clone();
        k = k + S::one();
        value = value * (k.clone() - two_alpha.clone()) / prev;
    }
    Ok(value)
}

/// `z + Σ_{n=2}^{order} Ψ_n(α) zⁿ`.
pub fn extremal_series<S: Scalar + Coefficient>(
    alpha: &PrestarlikeOrder<S>,
    order: usize,
) -> TruncatedSeries<S> {
    let mut s = TruncatedSeries::identity(order);
    for n in 2..=order {
        s.set_coeff(n, psi(n, alpha).expect("n >= 2"));
    }
    s
}

fn lifted_extremal<S, C>(alpha: &PrestarlikeOrder<S>, order: usize) -> TruncatedSeries<C>
where
    S: Scalar + Coefficient,
    C: Coefficient + From<S>,
{
    extremal_series(alpha, order).map(|c| C::from(c.clone()))
}

/// `F = s ∗ f`; coefficient n is `Ψ_n(α)·a_n`.
pub fn transform_f<S, C>(
    f: &TruncatedSeries<C>,
    alpha: &PrestarlikeOrder<S>,
) -> Result<TruncatedSeries<C>, PrestarlikeError>
where
    S: Scalar + Coefficient,
    C: Coefficient + From<S>,
{
    if !f.is_normalized() {
        return Err(SeriesError::NotNormalized.into());
    }
    Ok(lifted_extremal(alpha, f.order()).hadamard(f))
}

/// Undo [`transform_f`] by dividing coefficient n by `Ψ_n(α)` (all `Ψ_n > 0`
/// for α < 1).
pub fn untransform_f<S, C>(
    big_f: &TruncatedSeries<C>,
    alpha: &PrestarlikeOrder<S>,
) -> Result<TruncatedSeries<C>, PrestarlikeError>
where
    S: Scalar + Coefficient,
    C: Coefficient + From<S>,
{
    if !big_f.is_normalized() {
        return Err(SeriesError::NotNormalized.into());
    }
    let ext = lifted_extremal::<S, C>(alpha, big_f.order());
    let mut out = big_f.clone();
    for n in 2..=big_f.order() {
        out.set_coeff(n, big_f.coeffs()[n].clone() / ext.coeffs()[n].clone());
    }
    Ok(out)
}

/// `G = s ∗ f⁻¹` for `f = z + a₂z² + a₃z³`:
///
/// ```text
/// G(w) = w − Ψ₂a₂w² + Ψ₃(2a₂² − a₃)w³ + …
/// ```
///
/// The first three terms are the closed form; higher ones (order > 3) come
/// from series reversion of the cubic `f`.
pub fn transform_g<S, C>(
    a2: C,
    a3: C,
    alpha: &PrestarlikeOrder<S>,
    order: usize,
) -> Result<TruncatedSeries<C>, PrestarlikeError>
where
    S: Scalar + Coefficient,
    C: Coefficient + From<S>,
{
    if order < 3 {
        return Err(PrestarlikeError::OrderTooLow { needed: 3, got: order });
    }
    let psi2 = C::from(psi(2, alpha)?);
    let psi3 = C::from(psi(3, alpha)?);
    let two = C::one() + C::one();

    let mut g = if order > 3 {
        let f = TruncatedSeries::from_poly(&[C::zero(), C::one(), a2.clone(), a3.clone()], order);
        lifted_extremal::<S, C>(alpha, order).hadamard(&f.revert()?)
    } else {
        TruncatedSeries::identity(order)
    };
    g.set_coeff(2, C::zero() - psi2 * a2.clone());
    g.set_coeff(3, psi3 * (two * a2.clone() * a2 - a3));
    Ok(g)
}

/// `(1 − λ)·zF'/F + λ·(1 + zF''/F')`, known through order `N − 1`.
pub fn operator_l<S, C>(
    big_f: &TruncatedSeries<C>,
    lambda: &OperatorParams<S>,
) -> Result<TruncatedSeries<C>, PrestarlikeError>
where
    S: Scalar,
    C: Coefficient + From<S>,
{
    if !big_f.is_normalized() {
        return Err(SeriesError::NotNormalized.into());
    }
    let d1 = big_f.derivative();
    let d2 = d1.derivative();
    let starlike = d1.shift_up().div(big_f)?;
    let convex = TruncatedSeries::one(d1.order()).add(&d2.shift_up().div(&d1)?);

    let weight = C::from(lambda.0.clone());
    let rest = C::one() - weight.clone();
    Ok(starlike.scale(&rest).add(&convex.scale(&weight)))
}
