//! Chebyshev polynomials of the first and second kinds.
//!
//! `U_n` and `T_n` are evaluated by the three-term recurrence; the
//! generating functions `1/(1 − 2tz + z²)` and `(1 − tz)/(1 − 2tz + z²)` are
//! built by series division, which gives an independent route to the same
//! coefficients.

use thiserror::Error;

use crate::scalar::{Coefficient, Scalar};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChebyshevError {
    #[error("Chebyshev argument {0} outside the open interval (-1, 1)")]
    ArgOutOfRange(String),
}

/// Chebyshev argument `t` with `|t| < 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ChebParam<S>(S);

impl<S: Scalar> ChebParam<S> {
    pub fn new(t: S) -> Result<Self, ChebyshevError> {
        if t.abs() < S::one() {
            Ok(Self(t))
        } else {
            Err(ChebyshevError::ArgOutOfRange(format!("{t:?}")))
        }
    }

    pub fn get(&self) -> &S {
        &self.0
    }

    pub fn into_inner(self) -> S {
        self.0
    }
}

/// Runs `P_n = 2t·P_{n-1} − P_{n-2}` from the seeds `(p0, p1)`, returning `P_0..=P_n`.
fn recurrence<S: Scalar>(n: usize, t: &S, p0: S, p1: S) -> Vec<S> {
    let two_t = S::int(2) * t.clone();
    let mut out = Vec::with_capacity(n + 1);
    out.push(p0);
    if n >= 1 {
        out.push(p1);
    }
    for k in 2..=n {
        let next = two_t.clone() * out[k - 1].clone() - out[k - 2].clone();
        out.push(next);
    }
    out
}

/// `U_0(t), …, U_n(t)`.
pub fn u_values<S: Scalar>(n: usize, t: S) -> Result<Vec<S>, ChebyshevError> {
    let t = ChebParam::new(t)?.into_inner();
    let u1 = S::int(2) * t.clone();
    Ok(recurrence(n, &t, S::one(), u1))
}

/// `T_0(t), …, T_n(t)`.
pub fn t_values<S: Scalar>(n: usize, t: S) -> Result<Vec<S>, ChebyshevError> {
    let t = ChebParam::new(t)?.into_inner();
    Ok(recurrence(n, &t, S::one(), t.clone()))
}

/// Second-kind polynomial `U_n(t)`.
pub fn u_eval<S: Scalar>(n: usize, t: S) -> Result<S, ChebyshevError> {
    Ok(u_values(n, t)?.swap_remove(n))
}

/// First-kind polynomial `T_n(t)`.
pub fn t_eval<S: Scalar>(n: usize, t: S) -> Result<S, ChebyshevError> {
    Ok(t_values(n, t)?.swap_remove(n))
}

fn denominator<S: Scalar + Coefficient>(t: &S, order: usize) -> TruncatedSeries<S> {
    let two_t = S::int(2) * t.clone();
    TruncatedSeries::from_poly(&[S::one(), S::zero() - two_t, S::one()], order)
}

/// `Φ(z, t) = 1/(1 − 2tz + z²) = Σ U_n(t) zⁿ` through `z^order`.
pub fn phi_series<S: Scalar + Coefficient>(
    t: S,
    order: usize,
) -> Result<TruncatedSeries<S>, ChebyshevError> {
    let t = ChebParam::new(t)?.into_inner();
    let q = TruncatedSeries::one(order)
        .div(&denominator(&t, order))
        .expect("denominator has constant term 1");
    Ok(q)
}

/// `(1 − tz)/(1 − 2tz + z²) = Σ T_n(t) zⁿ` through `z^order`.
pub fn t_generating_series<S: Scalar + Coefficient>(
    t: S,
    order: usize,
) -> Result<TruncatedSeries<S>, ChebyshevError> {
    let t = ChebParam::new(t)?.into_inner();
    let num = TruncatedSeries::from_poly(&[S::one(), S::zero() - t.clone()], order);
    let q = num.div(&denominator(&t, order)).expect("denominator has constant term 1");
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    #[test]
    fn low_degree_values() {
        for &t in &[-0.9, -0.3, 0.0, 0.25, 0.5, 0.77] {
            assert_eq!(u_eval(0, t).unwrap(), 1.0);
            assert_eq!(u_eval(1, t).unwrap(), 2.0 * t);
        }
        assert_eq!(u_eval(2, 0.5).unwrap(), 0.0);
        assert_eq!(u_eval(3, 0.5).unwrap(), -1.0);
        assert_eq!(t_eval(0, 0.3).unwrap(), 1.0);
    }

    #[test]
    fn exact_over_rationals() {
        let t = Q::new(3, 7);
        assert_eq!(u_eval(2, t).unwrap(), Q::from(4) * t * t - Q::from(1));
        assert_eq!(u_eval(3, t).unwrap(), Q::from(8) * t * t * t - Q::from(4) * t);
        assert_eq!(t_eval(2, t).unwrap(), Q::from(2) * t * t - Q::from(1));
        assert_eq!(u_eval(2, Q::new(1, 2)).unwrap(), Q::from(0));
    }

    #[test]
    fn out_of_range() {
        assert!(u_eval(2, 1.0).is_err());
        assert!(u_eval(2, -1.0).is_err());
        assert!(t_eval(0, 1.5).is_err());
        assert!(phi_series(1.0, 3).is_err());
        assert!(t_generating_series(-2.0, 3).is_err());
        assert!(matches!(ChebParam::new(1.0f64), Err(ChebyshevError::ArgOutOfRange(_))));
    }

    #[test]
    fn phi_series_examples() {
        let t = 0.37f64;
        let s = phi_series(t, 2).unwrap();
        assert_eq!(s.coeffs()[0], 1.0);
        assert!((s.coeffs()[1] - 2.0 * t).abs() < 1e-15);
        assert!((s.coeffs()[2] - (4.0 * t * t - 1.0)).abs() < 1e-15);

        assert_eq!(phi_series(0.0, 4).unwrap().coeffs(), &[1.0, 0.0, -1.0, 0.0, 1.0]);
    }

    #[test]
    fn phi_series_times_denominator_is_one() {
        for &t in &[-0.8, -0.1, 0.2, 0.6, 0.95] {
            let n = 12;
            let prod = phi_series(t, n).unwrap().mul(&denominator(&t, n));
            assert!(prod.approx_eq(&TruncatedSeries::one(n), 1e-12), "t = {t}");
        }
    }

    #[test]
    fn t_generating_examples() {
        let s = t_generating_series(0.6f64, 3).unwrap();
        assert_eq!(s.coeffs()[0], 1.0);
        assert!((s.coeffs()[1] - 0.6).abs() < 1e-15);
        let s = t_generating_series(0.4f64, 10).unwrap();
        let t = t_values(10, 0.4f64).unwrap();
        for (n, tn) in t.iter().enumerate() {
            assert!((s.coeffs()[n] - tn).abs() < 1e-12);
        }
    }
}
