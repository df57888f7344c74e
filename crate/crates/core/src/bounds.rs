//! Closed-form coefficient bounds for `R_Σ(λ, α, Φ(z, t))`.
//!
//! With `Ψ₂ = Ψ₂(α)`, `Ψ₃ = Ψ₃(α)` and
//!
//! ```text
//! D(λ, α, t) = [2(1+2λ)Ψ₃ − (λ²+5λ+2)Ψ₂²]·4t² + (1+λ)²Ψ₂²
//! ```
//!
//! the second coefficient satisfies `|a₂| ≤ 2t√(2t)/√|D|`, the third
//! `|a₃| ≤ 4t²/((1+λ)²Ψ₂²) + t/((1+2λ)Ψ₃)`, and the Fekete–Szegő functional
//! `|a₃ − μa₂²|` is bounded piecewise in μ. `D` vanishes at one value of t
//! (when the bracket is negative); such parameters are reported as degenerate.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chebyshev;
use crate::prestarlike::{psi, OperatorParams, PrestarlikeOrder};
use crate::scalar::Real;

/// Below this `|D|` the `|a₂|` bound is reported as degenerate.
pub const DEGENERACY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("{name} = {value} is outside {range}")]
    OutOfRange { name: &'static str, value: f64, range: &'static str },
    #[error("degenerate parameters at t = {t}: the |a2| bound denominator vanishes (excluded point t = {})", fmt_exclusion(*.exclusion_t))]
    DegenerateDenominator { t: f64, exclusion_t: Option<f64> },
    #[error("Fekete-Szego branch selectors disagree at mu = {mu}: |h(mu)| form says {by_h}, |mu - 1| threshold form says {by_threshold}")]
    BranchMismatch { mu: f64, by_h: Branch, by_threshold: Branch },
}

fn fmt_exclusion(t: Option<f64>) -> String {
    t.map_or_else(|| "none".to_owned(), |t| format!("{t:.17}"))
}

fn f64_of<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn lit<T: Real>(x: f64) -> T {
    <T as num_traits::NumCast>::from(x).expect("literal representable")
}

/// Parameters `(λ, α, t)` of one class instance, validated against
/// `λ ∈ [0, 1]`, `α ∈ [0, 1)`, `t ∈ (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassParams<T> {
    lambda: T,
    alpha: T,
    t: T,
}

impl<T: Real> ClassParams<T> {
    pub fn new(lambda: T, alpha: T, t: T) -> Result<Self, BoundsError> {
        let out = |name, value: T, range| BoundsError::OutOfRange { name, value: f64_of(value), range };
        if OperatorParams::new(lambda).is_err() {
            return Err(out("lambda", lambda, "[0, 1]"));
        }
        if PrestarlikeOrder::new(alpha).is_err() {
            return Err(out("alpha", alpha, "[0, 1)"));
        }
        if !(t > T::zero() && t < T::one()) {
            return Err(out("t", t, "(0, 1)"));
        }
        Ok(Self { lambda, alpha, t })
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn t(&self) -> T {
        self.t
    }

    pub fn with_lambda(&self, lambda: T) -> Result<Self, BoundsError> {
        Self::new(lambda, self.alpha, self.t)
    }

    pub fn with_alpha(&self, alpha: T) -> Result<Self, BoundsError> {
        Self::new(self.lambda, alpha, self.t)
    }

    pub fn with_t(&self, t: T) -> Result<Self, BoundsError> {
        Self::new(self.lambda, self.alpha, t)
    }

    pub fn order(&self) -> PrestarlikeOrder<T> {
        PrestarlikeOrder::new(self.alpha).expect("validated")
    }

    pub fn weight(&self) -> OperatorParams<T> {
        OperatorParams::new(self.lambda).expect("validated")
    }

    pub fn psi2(&self) -> T {
        psi(2, &self.order()).expect("n = 2")
    }

    pub fn psi3(&self) -> T {
        psi(3, &self.order()).expect("n = 3")
    }

    /// `(U₁(t), U₂(t))`.
    pub fn u12(&self) -> (T, T) {
        let u = chebyshev::u_values(2, self.t).expect("t in (0, 1)");
        (u[1], u[2])
    }

    /// Human-readable name of the class these parameters select.
    pub fn class_name(&self) -> &'static str {
        let half = lit::<T>(0.5);
        match (self.lambda.is_zero(), self.lambda == T::one(), self.alpha == half) {
            (true, _, true) => "S*_Sigma(1/2, Phi(z,t))",
            (_, true, true) => "K*_Sigma(1/2, Phi(z,t))",
            (true, _, false) => "PS*_Sigma(alpha, Phi(z,t))",
            (_, true, false) => "K*_Sigma(alpha, Phi(z,t))",
            _ => "R_Sigma(lambda, alpha, Phi(z,t))",
        }
    }
}

/// `D(λ, α, t)`, the quantity under the absolute value in the `|a₂|` bound.
pub fn a2_denominator<T: Real>(p: &ClassParams<T>) -> T {
    let (l, t) = (p.lambda, p.t);
    let (p2, p3) = (p.psi2(), p.psi3());
    let one = T::one();
    let two = lit::<T>(2.0);
    let bracket = two * (one + two * l) * p3 - (l * l + lit::<T>(5.0) * l + two) * p2 * p2;
    bracket * lit::<T>(4.0) * t * t + (one + l) * (one + l) * p2 * p2
}

/// The same quantity written through Chebyshev values, as it arises when
/// the two second-order relations are added:
/// `(2(1+2λ)Ψ₃ − (1+3λ)Ψ₂²)U₁² − (1+λ)²Ψ₂²U₂`.
pub fn proof_denominator<T: Real>(p: &ClassParams<T>) -> T {
    let l = p.lambda;
    let (p2, p3) = (p.psi2(), p.psi3());
    let (u1, u2) = p.u12();
    let one = T::one();
    let two = lit::<T>(2.0);
    (two * (one + two * l) * p3 - (one + lit::<T>(3.0) * l) * p2 * p2) * u1 * u1
        - (one + l) * (one + l) * p2 * p2 * u2
}

/// `R = (λ²+5λ+2)Ψ₂² − 2(1+2λ)Ψ₃`; `D = (1+λ)²Ψ₂² − 4t²R`.
fn exclusion_radicand<T: Real>(p: &ClassParams<T>) -> T {
    let l = p.lambda;
    let (p2, p3) = (p.psi2(), p.psi3());
    let two = lit::<T>(2.0);
    (l * l + lit::<T>(5.0) * l + two) * p2 * p2 - two * (T::one() + two * l) * p3
}

/// The t at which `D` vanishes, `(1+λ)Ψ₂/(2√R)`, when `R > 0`. The value
/// may lie outside (0, 1).
pub fn exclusion_t<T: Real>(p: &ClassParams<T>) -> Option<T> {
    let r = exclusion_radicand(p);
    (r > T::zero()).then(|| (T::one() + p.lambda) * p.psi2() / (lit::<T>(2.0) * r.sqrt()))
}

/// Fails with [`BoundsError::DegenerateDenominator`] at the excluded t.
pub fn ensure_nondegenerate<T: Real>(p: &ClassParams<T>) -> Result<(), BoundsError> {
    check_degenerate(p, a2_denominator(p))
}

fn check_degenerate<T: Real>(p: &ClassParams<T>, d: T) -> Result<(), BoundsError> {
    if d.magnitude() < lit::<T>(DEGENERACY_TOLERANCE) {
        Err(BoundsError::DegenerateDenominator {
            t: f64_of(p.t),
            exclusion_t: exclusion_t(p).map(f64_of),
        })
    } else {
        Ok(())
    }
}

/// `|a₂| ≤ 2t√(2t) / √|D|`.
pub fn a2_bound<T: Real>(p: &ClassParams<T>) -> Result<T, BoundsError> {
    let d = a2_denominator(p);
    check_degenerate(p, d)?;
    let two_t = lit::<T>(2.0) * p.t;
    Ok(two_t * two_t.sqrt() / d.magnitude().sqrt())
}

/// `|a₃| ≤ 4t²/((1+λ)²Ψ₂²) + t/((1+2λ)Ψ₃)`.
pub fn a3_bound<T: Real>(p: &ClassParams<T>) -> T {
    let (l, t) = (p.lambda, p.t);
    let (p2, p3) = (p.psi2(), p.psi3());
    let one = T::one();
    let four = lit::<T>(4.0);
    four * t * t / ((one + l) * (one + l) * p2 * p2) + t / ((one + lit::<T>(2.0) * l) * p3)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport<T> {
    /// `None` exactly when `degenerate`.
    pub a2_bound: Option<T>,
    pub a3_bound: T,
    pub exclusion_t: Option<T>,
    pub degenerate: bool,
}

pub fn bound_report<T: Real>(p: &ClassParams<T>) -> BoundReport<T> {
    let a2 = a2_bound(p).ok();
    BoundReport {
        a2_bound: a2,
        a3_bound: a3_bound(p),
        exclusion_t: exclusion_t(p),
        degenerate: a2.is_none(),
    }
}

/// `1/(4(1+2λ)Ψ₃)`, the |h(μ)| level at which the Fekete–Szegő bound
/// switches branch.
pub fn h_critical<T: Real>(p: &ClassParams<T>) -> T {
    T::one() / (lit::<T>(4.0) * (T::one() + lit::<T>(2.0) * p.lambda) * p.psi3())
}

/// `h(μ) = (1 − μ)U₁² / (2[(2(1+2λ)Ψ₃ − (1+3λ)Ψ₂²)U₁² − (1+λ)²Ψ₂²U₂])`.
pub fn h_mu<T: Real>(p: &ClassParams<T>, mu: T) -> Result<T, BoundsError> {
    let d = proof_denominator(p);
    check_degenerate(p, d)?;
    let (u1, _) = p.u12();
    Ok((T::one() - mu) * u1 * u1 / (lit::<T>(2.0) * d))
}

/// Cut-off on `|μ − 1|` between the two branches, in the closed form
/// `|(1+λ)²Ψ₂²/(4t²) + 2(1+2λ)Ψ₃ − (λ²+5λ+2)Ψ₂²| / (2(1+2λ)Ψ₃)`.
pub fn fekete_threshold<T: Real>(p: &ClassParams<T>) -> T {
    let (l, t) = (p.lambda, p.t);
    let (p2, p3) = (p.psi2(), p.psi3());
    let one = T::one();
    let two = lit::<T>(2.0);
    let inner = (one + l) * (one + l) * p2 * p2 / (lit::<T>(4.0) * t * t) + two * (one + two * l) * p3
        - (l * l + lit::<T>(5.0) * l + two) * p2 * p2;
    inner.magnitude() / (two * (one + two * l) * p3)
}

/// Bound on the branch `|μ − 1| ≤ threshold`: `t/((1+2λ)Ψ₃)`.
pub fn fekete_flat_value<T: Real>(p: &ClassParams<T>) -> T {
    p.t / ((T::one() + lit::<T>(2.0) * p.lambda) * p.psi3())
}

/// Bound on the branch `|μ − 1| ≥ threshold`: `8|1 − μ|t³ / |D|`.
pub fn fekete_slope_value<T: Real>(p: &ClassParams<T>, mu: T) -> Result<T, BoundsError> {
    let d = a2_denominator(p);
    check_degenerate(p, d)?;
    let t = p.t;
    Ok(lit::<T>(8.0) * (T::one() - mu).magnitude() * t * t * t / d.magnitude())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Flat,
    Slope,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Branch::Flat => "flat",
            Branch::Slope => "slope",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeketeSzegoReport<T> {
    pub mu: T,
    pub value: T,
    pub branch: Branch,
    pub h_mu: T,
    pub threshold: T,
}

/// Relative band around the threshold that counts as the boundary.
const SELECTOR_SLACK: f64 = 1e-9;

/// Piecewise Fekete–Szegő bound for real μ. The branch is chosen by
/// comparing `|h(μ)|` with [`h_critical`]; the closed-form `|μ − 1|`
/// threshold is reported alongside and must agree away from the boundary.
/// On the boundary (within the band) the flat branch is reported.
pub fn fekete_szego_bound<T: Real>(p: &ClassParams<T>, mu: T) -> Result<FeketeSzegoReport<T>, BoundsError> {
    let h = h_mu(p, mu)?;
    let threshold = fekete_threshold(p);
    let by_h = if h.magnitude() <= h_critical(p) { Branch::Flat } else { Branch::Slope };
    let gap = (mu - T::one()).magnitude() - threshold;
    let by_threshold = if gap <= T::zero() { Branch::Flat } else { Branch::Slope };
    let slack = lit::<T>(SELECTOR_SLACK) * threshold.max(T::one());
    let branch = match (gap.magnitude() <= slack, by_h == by_threshold) {
        (true, _) => Branch::Flat,
        (false, true) => by_h,
        (false, false) => return Err(BoundsError::BranchMismatch { mu: f64_of(mu), by_h, by_threshold }),
    };
    let value = match branch {
        Branch::Flat => fekete_flat_value(p),
        Branch::Slope => fekete_slope_value(p, mu)?,
    };
    Ok(FeketeSzegoReport { mu, value, branch, h_mu: h, threshold })
}

/// The bounds written out for the named subclasses, each as a formula in
/// its own right (not by delegating to the general evaluator), so they can
/// be checked against it.
pub mod special {
    use super::lit;
    use crate::prestarlike::{psi, PrestarlikeOrder};
    use crate::scalar::Real;

    fn psis<T: Real>(alpha: T) -> (T, T) {
        let a = PrestarlikeOrder::new(alpha).expect("alpha in [0, 1)");
        (psi(2, &a).expect("n = 2"), psi(3, &a).expect("n = 3"))
    }

    fn two_t_root<T: Real>(t: T) -> T {
        let two_t = lit::<T>(2.0) * t;
        two_t * two_t.sqrt()
    }

    /// λ = 0: `PS*_Σ(α, Φ)`.
    pub mod prestarlike_starlike {
        use super::*;

        pub fn a2<T: Real>(alpha: T, t: T) -> T {
            let (p2, p3) = psis(alpha);
            two_t_root(t) / ((p3 - p2 * p2) * lit::<T>(8.0) * t * t + p2 * p2).magnitude().sqrt()
        }

        pub fn a3<T: Real>(alpha: T, t: T) -> T {
            let (p2, p3) = psis(alpha);
            lit::<T>(4.0) * t * t / (p2 * p2) + t / p3
        }

        /// `Ψ₂ / (2√(2Ψ₂² − 2Ψ₃))`, when the radicand is positive.
        pub fn exclusion_t<T: Real>(alpha: T) -> Option<T> {
            let (p2, p3) = psis(alpha);
            let r = lit::<T>(2.0) * p2 * p2 - lit::<T>(2.0) * p3;
            (r > T::zero()).then(|| p2 / (lit::<T>(2.0) * r.sqrt()))
        }

        pub fn fekete_threshold<T: Real>(alpha: T, t: T) -> T {
            let (p2, p3) = psis(alpha);
            (p2 * p2 / (lit::<T>(8.0) * t * t) + p3 - p2 * p2).magnitude() / p3
        }

        pub fn fekete<T: Real>(alpha: T, t: T, mu: T) -> T {
            let (p2, p3) = psis(alpha);
            if (mu - T::one()).magnitude() <= fekete_threshold(alpha, t) {
                t / p3
            } else {
                lit::<T>(8.0) * (T::one() - mu).magnitude() * t * t * t
                    / ((p3 - p2 * p2) * lit::<T>(8.0) * t * t + p2 * p2).magnitude()
            }
        }
    }

    /// λ = 1: `K*_Σ(α, Φ)`.
    pub mod prestarlike_convex {
        use super::*;

        pub fn a2<T: Real>(alpha: T, t: T) -> T {
            let (p2, p3) = psis(alpha);
            let d = (lit::<T>(3.0) * p3 - lit::<T>(4.0) * p2 * p2) * lit::<T>(8.0) * t * t
                + lit::<T>(4.0) * p2 * p2;
            two_t_root(t) / d.magnitude().sqrt()
        }

        pub fn a3<T: Real>(alpha: T, t: T) -> T {
            let (p2, p3) = psis(alpha);
            t * t / (p2 * p2) + t / (lit::<T>(3.0) * p3)
        }

        /// `Ψ₂ / √(8Ψ₂² − 6Ψ₃)`, when the radicand is positive.
        pub fn exclusion_t<T: Real>(alpha: T) -> Option<T> {
            let (p2, p3) = psis(alpha);
            let r = lit::<T>(8.0) * p2 * p2 - lit::<T>(6.0) * p3;
            (r > T::zero()).then(|| p2 / r.sqrt())
        }

        pub fn fekete_threshold<T: Real>(alpha: T, t: T) -> T {
            let (p2, p3) = psis(alpha);
            (p2 * p2 / (lit::<T>(2.0) * t * t) + lit::<T>(3.0) * p3 - lit::<T>(4.0) * p2 * p2).magnitude()
                / (lit::<T>(3.0) * p3)
        }

        pub fn fekete<T: Real>(alpha: T, t: T, mu: T) -> T {
            let (p2, p3) = psis(alpha);
            if (mu - T::one()).magnitude() <= fekete_threshold(alpha, t) {
                t / (lit::<T>(3.0) * p3)
            } else {
                let d = (lit::<T>(3.0) * p3 - lit::<T>(4.0) * p2 * p2) * lit::<T>(2.0) * t * t + p2 * p2;
                lit::<T>(2.0) * (T::one() - mu).magnitude() * t * t * t / d.magnitude()
            }
        }
    }

    /// α = 0 (Ψ₂ = 2, Ψ₃ = 3), any λ.
    pub mod order_zero {
        use super::*;

        pub fn a2<T: Real>(lambda: T, t: T) -> T {
            let one = T::one();
            let two = lit::<T>(2.0);
            let d = (one + lambda) * (one + lambda)
                - two * (two * lambda * lambda + lit::<T>(4.0) * lambda + one) * t * t;
            t * (two * t).sqrt() / d.magnitude().sqrt()
        }

        pub fn a3<T: Real>(lambda: T, t: T) -> T {
            let one = T::one();
            t * t / ((one + lambda) * (one + lambda)) + t / (lit::<T>(3.0) * (one + lit::<T>(2.0) * lambda))
        }

        /// Zero of the `|a₂|` denominator: `(1+λ)/√(2(2λ²+4λ+1))`.
        pub fn exclusion_t<T: Real>(lambda: T) -> T {
            let two = lit::<T>(2.0);
            (T::one() + lambda) / (two * (two * lambda * lambda + lit::<T>(4.0) * lambda + T::one())).sqrt()
        }
    }

    /// λ = 0, α = 1/2: `S*_Σ(1/2, Φ)`.
    pub mod starlike_half {
        use super::*;

        pub fn a2<T: Real>(t: T) -> T {
            two_t_root(t)
        }

        pub fn a3<T: Real>(t: T) -> T {
            lit::<T>(4.0) * t * t + t
        }

        /// `|a₃ − a₂²|` bound.
        pub fn fekete_mu_one<T: Real>(t: T) -> T {
            t
        }
    }

    /// λ = 1, α = 1/2: `K*_Σ(1/2, Φ)`.
    pub mod convex_half {
        use super::*;

        pub fn a2<T: Real>(t: T) -> T {
            two_t_root(t) / (lit::<T>(4.0) - lit::<T>(8.0) * t * t).magnitude().sqrt()
        }

        pub fn a3<T: Real>(t: T) -> T {
            t * t + t / lit::<T>(3.0)
        }

        pub fn exclusion_t<T: Real>() -> T {
            T::one() / lit::<T>(2.0).sqrt()
        }

        /// `|a₃ − a₂²|` bound.
        pub fn fekete_mu_one<T: Real>(t: T) -> T {
            t / lit::<T>(3.0)
        }
    }
}
