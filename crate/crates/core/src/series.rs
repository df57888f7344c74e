//! Truncated power series `c₀ + c₁z + … + c_N z^N`.
//!
//! Every function in the library (f, the extremal function s, F = s∗f, G,
//! the Schwarz functions u and v, the Chebyshev generating function) is
//! carried as a [`TruncatedSeries`]. Binary operations keep the smaller of the
//! two truncation orders; the only exception is [`TruncatedSeries::hadamard`],
//! which treats the shorter operand as a polynomial and pads it with zeros.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Coefficient;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 5;

/// Default per-coefficient absolute tolerance for series comparison.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("division by a series whose leading coefficient vanishes after cancelling common factors of z")]
    DivisionBySingular,
    #[error("inner series of a composition has a nonzero constant term")]
    CompositionConstantTerm,
    #[error("series is not normalized (expected 0 + z + …)")]
    NotNormalized,
}

/// Power series known through `z^order`. `coeffs[n]` is the coefficient of `zⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    /// # Panics
    ///
    /// If `coeffs` is empty: a series always knows at least its constant term.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        Self { coeffs }
    }

    /// Polynomial given by `coeffs`, zero-padded (or truncated) to `order`.
    pub fn from_poly(coeffs: &[C], order: usize) -> Self {
        let mut out = vec![C::zero(); order + 1];
        for (dst, src) in out.iter_mut().zip(coeffs) {
            *dst = src.clone();
        }
        Self { coeffs: out }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![C::zero(); order + 1] }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    /// The identity function `z`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = C::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `zⁿ`, or `None` beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&C> {
        self.coeffs.get(n)
    }

    pub fn set_coeff(&mut self, n: usize, c: C) {
        self.coeffs[n] = c;
    }

    /// Lowest index with a nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `coeffs[0] = 0` and `coeffs[1] = 1`.
    pub fn is_normalized(&self) -> bool {
        self.order() >= 1 && self.coeffs[0].is_zero() && self.coeffs[1].is_one()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_poly(&self.coeffs, order)
    }

    pub fn map<D: Coefficient>(&self, f: impl FnMut(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// Multiplication by `z`; the order grows by one.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Division by `z`, discarding the constant term; the order drops by one.
    /// `None` for an order-0 series.
    fn shift_down(&self) -> Option<Self> {
        (self.order() > 0).then(|| Self { coeffs: self.coeffs[1..].to_vec() })
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
        Self { coeffs }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(C::zero(), |acc, k| {
                    acc + self.coeffs[k].clone() * other.coeffs[n - k].clone()
                })
            })
            .collect();
        Self { coeffs }
    }

    /// Quotient `self / divisor`.
    ///
    /// A divisor with nonzero constant term divides directly. When both
    /// operands vanish at the origin the common factor `z` is cancelled once
    /// (the `zF'/F` shape), which lowers the result order by one.
    pub fn div(&self, divisor: &Self) -> Result<Self, SeriesError> {
        if !divisor.coeffs[0].is_zero() {
            return Ok(self.div_regular(divisor));
        }
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::DivisionBySingular);
        }
        let (num, den) = match (self.shift_down(), divisor.shift_down()) {
            (Some(num), Some(den)) => (num, den),
            _ => return Err(SeriesError::DivisionBySingular),
        };
        if den.coeffs[0].is_zero() {
            return Err(SeriesError::DivisionBySingular);
        }
        Ok(num.div_regular(&den))
    }

    fn div_regular(&self, divisor: &Self) -> Self {
        let order = self.order().min(divisor.order());
        let lead = divisor.coeffs[0].clone();
        let mut q: Vec<C> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let known = (1..=n).fold(C::zero(), |acc, k| {
                acc + divisor.coeffs[k].clone() * q[n - k].clone()
            });
            q.push((self.coeffs[n].clone() - known) / lead.clone());
        }
        Self { coeffs: q }
    }

    /// Termwise derivative, order `N − 1` (the derivative of an order-0
    /// series is the order-0 zero series).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let mut n = C::zero();
        let coeffs = self.coeffs[1..]
            .iter()
            .map(|c| {
                n = n.clone() + C::one();
                c.clone() * n.clone()
            })
            .collect();
        Self { coeffs }
    }

    /// Coefficientwise (Hadamard) product; the shorter operand is zero-padded.
    pub fn hadamard(&self, other: &Self) -> Self {
        let order = self.order().max(other.order());
        let coeffs = (0..=order)
            .map(|n| match (self.coeffs.get(n), other.coeffs.get(n)) {
                (Some(a), Some(b)) => a.clone() * b.clone(),
                _ => C::zero(),
            })
            .collect();
        Self { coeffs }
    }

    /// `self(inner(z))`.
    ///
    /// The result is exact through
    /// `min(inner.order, (self.order + 1)·val(inner) − 1)`: terms of `self`
    /// beyond its truncation can only appear at or above `(N+1)·val(inner)`.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::CompositionConstantTerm);
        }
        let order = match inner.valuation() {
            None => inner.order(),
            Some(v) => inner.order().min((self.order() + 1) * v - 1),
        };
        let inner = inner.truncate(order);
        let mut acc = Self::constant(self.coeffs[self.order()].clone(), order);
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        Ok(acc)
    }

    /// Compositional inverse of a normalized series, same order.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        if !self.is_normalized() {
            return Err(SeriesError::NotNormalized);
        }
        // Coefficient k of self∘b depends on b_k only through a₁·b_k = b_k,
        // so each b_k is fixed by cancelling the residual at degree k.
        let mut b = Self::identity(self.order());
        for k in 2..=self.order() {
            let residual = self.compose(&b)?.coeffs[k].clone();
            b.coeffs[k] = b.coeffs[k].clone() - residual;
        }
        Ok(b)
    }

    /// Largest coefficientwise distance over the common order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a.clone() - b.clone()).modulus())
            .fold(0.0, f64::max)
    }

    /// Same order and every coefficient within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.order() == other.order() && self.max_abs_diff(other) <= tol
    }
}

impl<C: Coefficient> Add for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn add(self, rhs: Self) -> TruncatedSeries<C> {
        TruncatedSeries::add(self, rhs)
    }
}

impl<C: Coefficient> Sub for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn sub(self, rhs: Self) -> TruncatedSeries<C> {
        TruncatedSeries::sub(self, rhs)
    }
}

impl<C: Coefficient> Mul for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn mul(self, rhs: Self) -> TruncatedSeries<C> {
        TruncatedSeries::mul(self, rhs)
    }
}

impl<C: Coefficient> Neg for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn neg(self) -> TruncatedSeries<C> {
        self.map(|c| C::zero() - c.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn s(c: &[f64]) -> TruncatedSeries<f64> {
        TruncatedSeries::new(c.to_vec())
    }

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn add_examples() {
        assert_eq!(s(&[1.0, 1.0]).add(&s(&[1.0, -1.0])), s(&[2.0, 0.0]));
        assert_eq!(s(&[0.0, 1.0, 1.0]).add(&TruncatedSeries::zero(2)), s(&[0.0, 1.0, 1.0]));
        assert_eq!(&s(&[0.0, 1.0, 2.0]) + &s(&[0.0, 1.0, 3.0]), s(&[0.0, 2.0, 5.0]));
    }

    #[test]
    fn add_keeps_min_order() {
        assert_eq!(s(&[1.0, 2.0, 3.0]).add(&s(&[1.0, 1.0])).order(), 1);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(s(&[1.0, 1.0, 0.0]).mul(&s(&[1.0, -1.0, 0.0])), s(&[1.0, 0.0, -1.0]));
        let z = TruncatedSeries::<f64>::identity(3);
        assert_eq!(z.mul(&z), s(&[0.0, 0.0, 1.0, 0.0]));
    }

    #[test]
    fn div_examples() {
        let z = TruncatedSeries::<f64>::identity(3);
        assert_eq!(z.div(&z).unwrap(), s(&[1.0, 0.0, 0.0]));

        let geometric = TruncatedSeries::<f64>::one(3).div(&s(&[1.0, -1.0, 0.0, 0.0])).unwrap();
        assert_eq!(geometric, s(&[1.0, 1.0, 1.0, 1.0]));

        // zF'/F for F = z + 2z²: z(1+4z)/(z(1+2z)) = 1 + 2z + O(z²).
        let f = s(&[0.0, 1.0, 2.0]);
        let zfp = f.derivative().shift_up();
        assert_eq!(zfp.div(&f).unwrap(), s(&[1.0, 2.0]));
    }

    #[test]
    fn div_singular_cases() {
        let one = TruncatedSeries::<f64>::one(2);
        assert_eq!(one.div(&s(&[0.0, 1.0, 0.0])), Err(SeriesError::DivisionBySingular));
        let z2 = s(&[0.0, 0.0, 1.0]);
        assert_eq!(z2.div(&z2), Err(SeriesError::DivisionBySingular));
        let zero0 = s(&[0.0]);
        assert_eq!(zero0.div(&zero0), Err(SeriesError::DivisionBySingular));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(s(&[0.0, 1.0, 1.0]).derivative(), s(&[1.0, 2.0]));
        assert_eq!(s(&[5.0, 0.0]).derivative(), s(&[0.0]));
        assert_eq!(s(&[5.0]).derivative(), s(&[0.0]));
    }

    #[test]
    fn hadamard_examples() {
        assert_eq!(s(&[0.0, 1.0, 2.0]).hadamard(&s(&[0.0, 1.0, 3.0])), s(&[0.0, 1.0, 6.0]));
        // Shorter operand is a polynomial, padded with zeros.
        let ext = s(&[0.0, 1.0, 2.0, 3.0, 4.0]);
        assert_eq!(ext.hadamard(&s(&[0.0, 1.0])), s(&[0.0, 1.0, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn compose_examples() {
        let outer = s(&[1.0, 1.0]);
        let inner = s(&[0.0, 0.0, 1.0]);
        assert_eq!(outer.compose(&inner).unwrap(), s(&[1.0, 0.0, 1.0]));

        let anything = s(&[3.0, 1.0, -2.0, 7.0]);
        let zero = TruncatedSeries::<f64>::zero(4);
        assert_eq!(anything.compose(&zero).unwrap(), s(&[3.0, 0.0, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn compose_rejects_constant_inner() {
        let r = s(&[1.0, 1.0]).compose(&s(&[0.5, 1.0]));
        assert_eq!(r, Err(SeriesError::CompositionConstantTerm));
    }

    #[test]
    fn compose_order_is_limited_by_outer_truncation() {
        // Outer known through w², inner z: z³ is unknown.
        let r = s(&[1.0, 1.0, 1.0]).compose(&TruncatedSeries::identity(5)).unwrap();
        assert_eq!(r.order(), 2);
    }

    #[test]
    fn revert_examples() {
        let z = TruncatedSeries::<f64>::identity(3);
        assert_eq!(z.revert().unwrap(), z);

        let f = s(&[0.0, 1.0, 0.1, 0.02]);
        let g = f.revert().unwrap();
        assert!(g.approx_eq(&s(&[0.0, 1.0, -0.1, 0.0]), 1e-15));
    }

    #[test]
    fn revert_exact_third_coefficient() {
        for (a2, a3) in [(q(1, 3), q(-2, 5)), (q(7, 2), q(1, 9)), (q(0, 1), q(4, 1))] {
            let f = TruncatedSeries::new(vec![q(0, 1), q(1, 1), a2, a3]);
            let g = f.revert().unwrap();
            assert_eq!(g.coeffs()[2], -a2);
            assert_eq!(g.coeffs()[3], q(2, 1) * a2 * a2 - a3);
        }
    }

    #[test]
    fn revert_exact_round_trip_order_five() {
        let f = TruncatedSeries::new(vec![q(0, 1), q(1, 1), q(1, 2), q(-1, 3), q(2, 7), q(5, 11)]);
        let g = f.revert().unwrap();
        assert_eq!(f.compose(&g).unwrap(), TruncatedSeries::identity(5));
        assert_eq!(g.compose(&f).unwrap(), TruncatedSeries::identity(5));
    }

    #[test]
    fn revert_complex_third_coefficient() {
        let a2 = Complex64::new(0.3, -0.7);
        let a3 = Complex64::new(-0.2, 0.45);
        let f = TruncatedSeries::new(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), a2, a3]);
        let g = f.revert().unwrap();
        assert!((g.coeffs()[3] - (2.0 * a2 * a2 - a3)).norm() < 1e-12);
    }

    #[test]
    fn revert_requires_normalization() {
        assert_eq!(s(&[0.0, 2.0, 1.0]).revert(), Err(SeriesError::NotNormalized));
        assert_eq!(s(&[1.0, 1.0, 1.0]).revert(), Err(SeriesError::NotNormalized));
    }

    #[test]
    fn neg_and_sub() {
        let a = s(&[1.0, 2.0]);
        assert_eq!(&a - &a, TruncatedSeries::zero(1));
        assert_eq!(-&a, s(&[-1.0, -2.0]));
    }
}
