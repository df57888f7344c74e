//! Empirical certification of the coefficient bounds.
//!
//! A class member is described, to second order, by the leading
//! coefficients of two Schwarz functions `u(z) = c₁z + c₂z² + …` and
//! `v(w) = d₁w + d₂w² + …`. Matching `L_λ[F] = Φ(u(z), t)` and
//! `L_λ[G] = Φ(v(w), t)` through second order gives four relations, from
//! which `a₂²` and `a₃` are solved in closed form ([`reconstruct`]). The
//! verifier streams admissible `(c₁, c₂, d₁, d₂)`, rebuilds the coefficients
//! and compares them with [`crate::bounds`].
//!
//! Three admissibility modes are supported:
//!
//! * [`Mode::Paper`]: `|c_j|, |d_j| ≤ 1` and `d₁ = −c₁`, exactly the
//!   hypotheses under which the bounds are derived;
//! * [`Mode::Pick`]: additionally `|c₂| ≤ 1 − |c₁|²`, `|d₂| ≤ 1 − |d₁|²`;
//! * [`Mode::Consistent`]: Pick constraints, with `d₂` solved from `(c₁, c₂)`
//!   so that all four relations hold simultaneously.
//!
//! The random part of the stream is split into fixed-size chunks, chunk `i`
//! drawing from ChaCha8 on stream `i` of the seed, so chunks can be evaluated
//! on any number of threads and merged into the same report.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{self, BoundsError, ClassParams};
use crate::chebyshev;
use crate::prestarlike::{operator_l, transform_f, transform_g, PrestarlikeError};
use crate::series::TruncatedSeries;

/// Absolute slack on every bound comparison.
pub const VIOLATION_TOLERANCE: f64 = 1e-9;
/// Slack on admissibility constraints for externally supplied samples.
pub const CONSTRAINT_SLACK: f64 = 1e-12;
/// Agreement required between the series pipeline and the closed-form relations.
pub const RELATION_TOLERANCE: f64 = 1e-9;
/// Random samples per RNG stream.
pub const CHUNK_SIZE: usize = 4096;
/// Violations kept verbatim in a report (lowest sample indices first).
pub const MAX_REPORTED_VIOLATIONS: usize = 64;

const MAX_REJECTIONS: usize = 1 << 16;

type Series = TruncatedSeries<Complex64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Prestarlike(#[from] PrestarlikeError),
    #[error("inadmissible Schwarz sample: {0}")]
    Inadmissible(String),
    #[error("could not draw an admissible consistent-mode sample after {0} attempts")]
    SamplingExhausted(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Paper,
    Pick,
    Consistent,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Paper => "paper",
            Mode::Pick => "pick",
            Mode::Consistent => "consistent",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(Mode::Paper),
            "pick" => Ok(Mode::Pick),
            "consistent" => Ok(Mode::Consistent),
            other => Err(format!("unknown mode '{other}' (expected paper, pick or consistent)")),
        }
    }
}

/// Leading Schwarz coefficients `(c₁, c₂)` of `u` and `(d₁, d₂)` of `v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchwarzSample {
    c1: Complex64,
    c2: Complex64,
    d1: Complex64,
    d2: Complex64,
    mode: Mode,
}

/// `d₂ = −c₂ + K·c₁²` is the consistent-mode completion; `K` depends only on
/// the class parameters.
pub fn compatibility_factor(p: &ClassParams<f64>) -> f64 {
    let (l, p2) = (p.lambda(), p.psi2());
    let (u1, _) = p.u12();
    2.0 * bounds::proof_denominator(p) / ((1.0 + l) * (1.0 + l) * p2 * p2 * u1)
}

impl SchwarzSample {
    /// Checks the parameter-free constraints of `mode`. Consistent-mode
    /// samples are additionally checked against class parameters by
    /// [`SchwarzSample::check_admissible`].
    pub fn new(
        c1: Complex64,
        c2: Complex64,
        d1: Complex64,
        d2: Complex64,
        mode: Mode,
    ) -> Result<Self, VerifyError> {
        let s = Self { c1, c2, d1, d2, mode };
        s.check_shape()?;
        Ok(s)
    }

    /// Paper-mode sample with `d₁ = −c₁`.
    pub fn paper(c1: Complex64, c2: Complex64, d2: Complex64) -> Result<Self, VerifyError> {
        Self::new(c1, c2, -c1, d2, Mode::Paper)
    }

    /// Consistent-mode sample: `d₁ = −c₁` and `d₂` solved so that the four
    /// second-order relations are simultaneously satisfiable.
    pub fn consistent(c1: Complex64, c2: Complex64, p: &ClassParams<f64>) -> Result<Self, VerifyError> {
        bounds::ensure_nondegenerate(p)?;
        let d2 = -c2 + compatibility_factor(p) * c1 * c1;
        Self::new(c1, c2, -c1, d2, Mode::Consistent)
    }

    pub fn c1(&self) -> Complex64 {
        self.c1
    }

    pub fn c2(&self) -> Complex64 {
        self.c2
    }

    pub fn d1(&self) -> Complex64 {
        self.d1
    }

    pub fn d2(&self) -> Complex64 {
        self.d2
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    fn check_shape(&self) -> Result<(), VerifyError> {
        let bad = |msg: String| Err(VerifyError::Inadmissible(msg));
        for (name, z) in [("c1", self.c1), ("c2", self.c2), ("d1", self.d1), ("d2", self.d2)] {
            if z.norm().is_nan() || z.norm() > 1.0 + CONSTRAINT_SLACK {
                return bad(format!("|{name}| = {} exceeds 1", z.norm()));
            }
        }
        if (self.c1 + self.d1).norm() > CONSTRAINT_SLACK {
            return bad(format!("d1 = {} is not -c1 = {}", self.d1, -self.c1));
        }
        if self.mode != Mode::Paper {
            let c_cap = 1.0 - self.c1.norm_sqr();
            let d_cap = 1.0 - self.d1.norm_sqr();
            if self.c2.norm() > c_cap + CONSTRAINT_SLACK {
                return bad(format!("|c2| = {} exceeds 1 - |c1|^2 = {c_cap}", self.c2.norm()));
            }
            if self.d2.norm() > d_cap + CONSTRAINT_SLACK {
                return bad(format!("|d2| = {} exceeds 1 - |d1|^2 = {d_cap}", self.d2.norm()));
            }
        }
        Ok(())
    }

    /// Full admissibility for `p`, including the consistent-mode completion.
    pub fn check_admissible(&self, p: &ClassParams<f64>) -> Result<(), VerifyError> {
        self.check_shape()?;
        if self.mode == Mode::Consistent {
            bounds::ensure_nondegenerate(p)?;
            let expected = -self.c2 + compatibility_factor(p) * self.c1 * self.c1;
            if (expected - self.d2).norm() > RELATION_TOLERANCE {
                return Err(VerifyError::Inadmissible(format!(
                    "d2 = {} does not complete (c1, c2); expected {expected}",
                    self.d2
                )));
            }
        }
        Ok(())
    }
}

/// `a₂²` and `a₃` rebuilt from a sample; `a2` is the principal square root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReconstructedCoeffs {
    pub a2_sq: Complex64,
    pub a3: Complex64,
    pub a2: Complex64,
}

/// Solve the second-order relations for `(a₂², a₃)`:
///
/// ```text
/// a₂² = U₁³(c₂ + d₂) / (2[(2(1+2λ)Ψ₃ − (1+3λ)Ψ₂²)U₁² − (1+λ)²Ψ₂²U₂])
/// a₃  = U₁²(c₁² + d₁²) / (2(1+λ)²Ψ₂²) + U₁(c₂ − d₂) / (4(1+2λ)Ψ₃)
/// ```
pub fn reconstruct(s: &SchwarzSample, p: &ClassParams<f64>) -> Result<ReconstructedCoeffs, VerifyError> {
    bounds::ensure_nondegenerate(p)?;
    let (l, p2, p3) = (p.lambda(), p.psi2(), p.psi3());
    let (u1, _) = p.u12();
    let den = bounds::proof_denominator(p);
    let a2_sq = u1 * u1 * u1 * (s.c2 + s.d2) / (2.0 * den);
    let a3 = u1 * u1 * (s.c1 * s.c1 + s.d1 * s.d1) / (2.0 * (1.0 + l) * (1.0 + l) * p2 * p2)
        + u1 * (s.c2 - s.d2) / (4.0 * (1.0 + 2.0 * l) * p3);
    Ok(ReconstructedCoeffs { a2_sq, a3, a2: a2_sq.sqrt() })
}

/// `a₃ − μa₂² = U₁[(h(μ) + κ)c₂ + (h(μ) − κ)d₂]` with `κ = 1/(4(1+2λ)Ψ₃)`.
pub fn fekete_from_sample(s: &SchwarzSample, p: &ClassParams<f64>, mu: f64) -> Result<Complex64, VerifyError> {
    let h = bounds::h_mu(p, mu)?;
    let kappa = bounds::h_critical(p);
    let (u1, _) = p.u12();
    Ok(u1 * ((h + kappa) * s.c2 + (h - kappa) * s.d2))
}

/// Right-hand side `Φ(w(z), t) = 1 + U₁w + U₂w² + …` for `w = k₁z + k₂z²`.
fn subordinate_rhs(k1: Complex64, k2: Complex64, t: f64, order: usize) -> Result<Series, VerifyError> {
    let phi = chebyshev::phi_series(t, order)
        .expect("t validated in (0, 1)")
        .map(|&x| Complex64::new(x, 0.0));
    let w = TruncatedSeries::from_poly(&[Complex64::new(0.0, 0.0), k1, k2], order);
    Ok(phi.compose(&w).map_err(PrestarlikeError::from)?)
}

fn agree_through_second_order(lhs: &Series, rhs: &Series) -> bool {
    (0..=2).all(|n| match (lhs.coeff(n), rhs.coeff(n)) {
        (Some(a), Some(b)) => (a - b).norm() <= RELATION_TOLERANCE,
        _ => false,
    })
}

/// Push `f = z + a₂z² + a₃z³` through `F = s ∗ f`, `G = s ∗ f⁻¹` and the
/// operator, and compare with `Φ(u, t)`, `Φ(v, t)` through second order.
pub fn proof_relations_hold(
    s: &SchwarzSample,
    p: &ClassParams<f64>,
    a2: Complex64,
    a3: Complex64,
    order: usize,
) -> Result<bool, VerifyError> {
    if order < 3 {
        return Err(PrestarlikeError::OrderTooLow { needed: 3, got: order }.into());
    }
    let alpha = p.order();
    let weight = p.weight();
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);

    let f = TruncatedSeries::from_poly(&[zero, one, a2, a3], order);
    let lhs_f = operator_l(&transform_f(&f, &alpha)?, &weight)?;
    let rhs_f = subordinate_rhs(s.c1, s.c2, p.t(), order)?;

    let g = transform_g(a2, a3, &alpha, order)?;
    let lhs_g = operator_l(&g, &weight)?;
    let rhs_g = subordinate_rhs(s.d1, s.d2, p.t(), order)?;

    Ok(agree_through_second_order(&lhs_f, &rhs_f) && agree_through_second_order(&lhs_g, &rhs_g))
}

/// Reconstruct `(a₂, a₃)` from a consistent-mode sample and run
/// [`proof_relations_hold`]. The square-root branch of `a₂` is the one with
/// `(1+λ)Ψ₂a₂ = U₁c₁`.
pub fn proof_relation_check(s: &SchwarzSample, p: &ClassParams<f64>, order: usize) -> Result<bool, VerifyError> {
    if s.mode != Mode::Consistent {
        return Err(VerifyError::Inadmissible(format!(
            "proof relations need a consistent-mode sample, got {} mode",
            s.mode
        )));
    }
    s.check_admissible(p)?;
    let r = reconstruct(s, p)?;
    let (u1, _) = p.u12();
    let target = u1 * s.c1 / ((1.0 + p.lambda()) * p.psi2());
    let a2 = if (r.a2 - target).norm() <= (-r.a2 - target).norm() { r.a2 } else { -r.a2 };
    proof_relations_hold(s, p, a2, r.a3, order)
}

fn unit(k: usize) -> Complex64 {
    [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, -1.0),
    ][k]
}

/// Deterministic corner samples `c₁, c₂, d₂ ∈ {0, ±1, ±i}` (with `d₁ = −c₁`)
/// admissible in `mode`. For consistent mode `d₂` is solved instead of
/// enumerated.
pub fn boundary_samples(mode: Mode, p: &ClassParams<f64>) -> Vec<SchwarzSample> {
    let mut out = Vec::new();
    for i in 0..5 {
        for j in 0..5 {
            let (c1, c2) = (unit(i), unit(j));
            if mode == Mode::Consistent {
                if let Ok(s) = SchwarzSample::consistent(c1, c2, p) {
                    out.push(s);
                }
                continue;
            }
            for k in 0..5 {
                if let Ok(s) = SchwarzSample::new(c1, c2, -c1, unit(k), mode) {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// Point in the disk `|z| ≤ radius`: on the rim a quarter of the time,
/// otherwise uniform by area.
fn disk_point(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let rim: bool = rng.random_bool(0.25);
    let u: f64 = rng.random();
    let theta = TAU * rng.random::<f64>();
    let r = if rim { radius } else { radius * u.sqrt() };
    Complex64::from_polar(r, theta)
}

fn uniform_disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    Complex64::from_polar(r, TAU * rng.random::<f64>())
}

fn clamp_unit(z: Complex64) -> Complex64 {
    if z.norm() > 1.0 {
        z / z.norm()
    } else {
        z
    }
}

fn random_sample(rng: &mut ChaCha8Rng, mode: Mode, p: &ClassParams<f64>) -> Result<SchwarzSample, VerifyError> {
    match mode {
        Mode::Paper => {
            let c1 = clamp_unit(disk_point(rng, 1.0));
            let c2 = clamp_unit(disk_point(rng, 1.0));
            let d2 = clamp_unit(disk_point(rng, 1.0));
            Ok(SchwarzSample { c1, c2, d1: -c1, d2, mode })
        }
        Mode::Pick => {
            let c1 = clamp_unit(disk_point(rng, 1.0));
            let cap = (1.0 - c1.norm_sqr()).max(0.0);
            let c2 = disk_point(rng, cap);
            let d2 = disk_point(rng, cap);
            Ok(SchwarzSample { c1, c2, d1: -c1, d2, mode })
        }
        Mode::Consistent => {
            let k = compatibility_factor(p);
            // An admissible d₂ exists only when |K|·|c₁|² ≤ 2(1 − |c₁|²).
            let reach = (2.0 / (k.abs() + 2.0)).sqrt();
            for _ in 0..MAX_REJECTIONS {
                let c1 = uniform_disk(rng, reach);
                let cap = 1.0 - c1.norm_sqr();
                let c2 = uniform_disk(rng, cap);
                let d2 = -c2 + k * c1 * c1;
                if d2.norm() <= cap {
                    return Ok(SchwarzSample { c1, c2, d1: -c1, d2, mode });
                }
            }
            Err(VerifyError::SamplingExhausted(MAX_REJECTIONS))
        }
    }
}

fn chunk_rng(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    rng
}

fn chunk_len(count: usize, chunk: usize) -> usize {
    CHUNK_SIZE.min(count - chunk * CHUNK_SIZE)
}

fn random_chunk(mode: Mode, p: &ClassParams<f64>, seed: u64, chunk: usize, len: usize) -> Result<Vec<SchwarzSample>, VerifyError> {
    let mut rng = chunk_rng(seed, chunk);
    (0..len).map(|_| random_sample(&mut rng, mode, p)).collect()
}

/// The deterministic boundary prefix followed by `count` random samples.
///
/// Paper and Pick sampling ignore `p`; Consistent sampling needs it to solve
/// for `d₂`.
pub fn sample_schwarz(
    mode: Mode,
    p: &ClassParams<f64>,
    seed: u64,
    count: usize,
) -> Result<Vec<SchwarzSample>, VerifyError> {
    if mode == Mode::Consistent {
        bounds::ensure_nondegenerate(p)?;
    }
    let mut out = boundary_samples(mode, p);
    for chunk in 0..count.div_ceil(CHUNK_SIZE) {
        out.extend(random_chunk(mode, p, seed, chunk, chunk_len(count, chunk))?);
    }
    Ok(out)
}

/// Which inequality a measurement refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Functional {
    A2,
    A3,
    FeketeSzego,
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Functional::A2 => "|a2|",
            Functional::A3 => "|a3|",
            Functional::FeketeSzego => "|a3 - mu a2^2|",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub index: u64,
    pub sample: SchwarzSample,
    pub functional: Functional,
    pub observed: f64,
    pub bound: f64,
}

/// Bounds a run is checked against. Normally straight from
/// [`crate::bounds`]; the CLI self-test perturbs them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Targets {
    pub a2: f64,
    pub a3: f64,
    pub fekete: Option<(f64, f64)>,
}

impl Targets {
    pub fn from_bounds(p: &ClassParams<f64>, mu: Option<f64>) -> Result<Self, VerifyError> {
        let fekete = match mu {
            Some(mu) => Some((mu, bounds::fekete_szego_bound(p, mu)?.value)),
            None => None,
        };
        Ok(Self { a2: bounds::a2_bound(p)?, a3: bounds::a3_bound(p), fekete })
    }
}

/// Largest observation of one functional and the sample attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub observed: f64,
    pub ratio: f64,
    pub index: u64,
    pub sample: SchwarzSample,
}

impl Extremum {
    /// Larger ratio wins; ties go to the lower index so merges commute.
    fn better(self, other: Self) -> Self {
        match self.ratio.total_cmp(&other.ratio) {
            std::cmp::Ordering::Greater => self,
            std::cmp::Ordering::Less => other,
            std::cmp::Ordering::Equal if self.index <= other.index => self,
            std::cmp::Ordering::Equal => other,
        }
    }
}

fn merge_extremum(a: Option<Extremum>, b: Option<Extremum>) -> Option<Extremum> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.better(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
struct Tally {
    samples: u64,
    a2: Option<Extremum>,
    a3: Option<Extremum>,
    fekete: Option<Extremum>,
    violation_count: u64,
    violations: Vec<Violation>,
}

impl Tally {
    fn record(&mut self, functional: Functional, index: u64, sample: SchwarzSample, observed: f64, bound: f64) {
        let ext = Extremum { observed, ratio: observed / bound, index, sample };
        let slot = match functional {
            Functional::A2 => &mut self.a2,
            Functional::A3 => &mut self.a3,
            Functional::FeketeSzego => &mut self.fekete,
        };
        *slot = merge_extremum(*slot, Some(ext));
        if observed.is_nan() || observed > bound + VIOLATION_TOLERANCE {
            self.violation_count += 1;
            if self.violations.len() < MAX_REPORTED_VIOLATIONS {
                self.violations.push(Violation { index, sample, functional, observed, bound });
            }
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.samples += other.samples;
        self.a2 = merge_extremum(self.a2, other.a2);
        self.a3 = merge_extremum(self.a3, other.a3);
        self.fekete = merge_extremum(self.fekete, other.fekete);
        self.violation_count += other.violation_count;
        self.violations.extend(other.violations);
        self.violations.sort_by_key(|v| (v.index, v.functional as u8));
        self.violations.truncate(MAX_REPORTED_VIOLATIONS);
        self
    }
}

fn evaluate(
    tally: &mut Tally,
    index: u64,
    s: &SchwarzSample,
    p: &ClassParams<f64>,
    targets: &Targets,
) -> Result<(), VerifyError> {
    let r = reconstruct(s, p)?;
    tally.samples += 1;
    tally.record(Functional::A2, index, *s, r.a2_sq.norm().sqrt(), targets.a2);
    tally.record(Functional::A3, index, *s, r.a3.norm(), targets.a3);
    if let Some((mu, bound)) = targets.fekete {
        let fs = fekete_from_sample(s, p, mu)?;
        tally.record(Functional::FeketeSzego, index, *s, fs.norm(), bound);
    }
    Ok(())
}

/// Outcome of a verification run or a tightness search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub params: ClassParams<f64>,
    pub mu: Option<f64>,
    pub mode: Mode,
    pub seed: u64,
    /// Random samples requested (the boundary prefix comes on top).
    pub count: u64,
    /// Samples actually evaluated.
    pub samples: u64,
    pub targets: Targets,
    pub max_ratio_a2: f64,
    pub max_ratio_a3: f64,
    pub max_ratio_fs: Option<f64>,
    pub max_abs_a2: f64,
    pub max_abs_a3: f64,
    pub max_abs_fs: Option<f64>,
    pub extremal_a2: Option<Extremum>,
    pub extremal_a3: Option<Extremum>,
    pub extremal_fs: Option<Extremum>,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    fn from_tally(
        tally: Tally,
        p: &ClassParams<f64>,
        mu: Option<f64>,
        mode: Mode,
        seed: u64,
        count: u64,
        targets: Targets,
    ) -> Self {
        let ratio = |e: Option<Extremum>| e.map_or(0.0, |e| e.ratio);
        let abs = |e: Option<Extremum>| e.map_or(0.0, |e| e.observed);
        Self {
            params: *p,
            mu,
            mode,
            seed,
            count,
            samples: tally.samples,
            targets,
            max_ratio_a2: ratio(tally.a2),
            max_ratio_a3: ratio(tally.a3),
            max_ratio_fs: targets.fekete.map(|_| ratio(tally.fekete)),
            max_abs_a2: abs(tally.a2),
            max_abs_a3: abs(tally.a3),
            max_abs_fs: targets.fekete.map(|_| abs(tally.fekete)),
            extremal_a2: tally.a2,
            extremal_a3: tally.a3,
            extremal_fs: tally.fekete,
            violation_count: tally.violation_count,
            violations: tally.violations,
        }
    }

    /// No sample exceeded any bound.
    pub fn certified(&self) -> bool {
        self.violation_count == 0
    }
}

/// Check `targets` against the boundary prefix plus `count` random samples.
/// Chunks run in parallel; the report does not depend on the thread count.
pub fn verify_against(
    p: &ClassParams<f64>,
    targets: Targets,
    mode: Mode,
    seed: u64,
    count: usize,
) -> Result<VerifyReport, VerifyError> {
    bounds::ensure_nondegenerate(p)?;
    let boundary = boundary_samples(mode, p);
    let offset = boundary.len() as u64;

    let mut head = Tally::default();
    for (i, s) in boundary.iter().enumerate() {
        evaluate(&mut head, i as u64, s, p, &targets)?;
    }

    let chunks: Vec<Tally> = (0..count.div_ceil(CHUNK_SIZE))
        .into_par_iter()
        .map(|chunk| {
            let samples = random_chunk(mode, p, seed, chunk, chunk_len(count, chunk))?;
            let base = offset + (chunk * CHUNK_SIZE) as u64;
            let mut tally = Tally::default();
            for (j, s) in samples.iter().enumerate() {
                evaluate(&mut tally, base + j as u64, s, p, &targets)?;
            }
            Ok(tally)
        })
        .collect::<Result<_, VerifyError>>()?;
    let tally = chunks.into_iter().fold(head, Tally::merge);

    let mu = targets.fekete.map(|(mu, _)| mu);
    Ok(VerifyReport::from_tally(tally, p, mu, mode, seed, count as u64, targets))
}

/// Check the published bounds for `p` (and the Fekete–Szegő bound at `mu`).
pub fn verify_bounds(
    p: &ClassParams<f64>,
    mu: Option<f64>,
    mode: Mode,
    seed: u64,
    count: usize,
) -> Result<VerifyReport, VerifyError> {
    let targets = Targets::from_bounds(p, mu)?;
    verify_against(p, targets, mode, seed, count)
}

/// Single-threaded reference: evaluate the materialized stream in order.
pub fn verify_sequential(
    p: &ClassParams<f64>,
    targets: Targets,
    mode: Mode,
    seed: u64,
    count: usize,
) -> Result<VerifyReport, VerifyError> {
    bounds::ensure_nondegenerate(p)?;
    let mut tally = Tally::default();
    for (i, s) in sample_schwarz(mode, p, seed, count)?.iter().enumerate() {
        evaluate(&mut tally, i as u64, s, p, &targets)?;
    }
    let mu = targets.fekete.map(|(mu, _)| mu);
    Ok(VerifyReport::from_tally(tally, p, mu, mode, seed, count as u64, targets))
}

/// Paper-mode search point: `(|c₁|, arg c₁, |c₂|, arg c₂, |d₂|, arg d₂)`.
#[derive(Debug, Clone, Copy)]
struct Polar([f64; 6]);

impl Polar {
    fn random(rng: &mut ChaCha8Rng) -> Self {
        let mut x = [0.0; 6];
        for k in 0..3 {
            x[2 * k] = rng.random::<f64>().sqrt();
            x[2 * k + 1] = TAU * rng.random::<f64>();
        }
        Self(x)
    }

    fn from_sample(s: &SchwarzSample) -> Self {
        let (r1, t1) = s.c1.to_polar();
        let (r2, t2) = s.c2.to_polar();
        let (r3, t3) = s.d2.to_polar();
        Self([r1, t1, r2, t2, r3, t3])
    }

    fn sample(&self) -> SchwarzSample {
        let x = &self.0;
        let c1 = Complex64::from_polar(x[0], x[1]);
        SchwarzSample {
            c1,
            c2: Complex64::from_polar(x[2], x[3]),
            d1: -c1,
            d2: Complex64::from_polar(x[4], x[5]),
            mode: Mode::Paper,
        }
    }

    fn step(&self, coord: usize, delta: f64) -> Self {
        let mut x = self.0;
        if coord.is_multiple_of(2) {
            x[coord] = (x[coord] + delta).clamp(0.0, 1.0);
        } else {
            x[coord] = (x[coord] + TAU * delta).rem_euclid(TAU);
        }
        Self(x)
    }
}

const SEARCH_INITIAL_STEP: f64 = 0.25;
const SEARCH_MIN_STEP: f64 = 1e-10;
const SEARCH_MAX_SWEEPS: usize = 400;

fn functional_value(f: Functional, s: &SchwarzSample, p: &ClassParams<f64>, mu: Option<f64>) -> Result<f64, VerifyError> {
    Ok(match f {
        Functional::A2 => reconstruct(s, p)?.a2_sq.norm().sqrt(),
        Functional::A3 => reconstruct(s, p)?.a3.norm(),
        Functional::FeketeSzego => fekete_from_sample(s, p, mu.expect("mu present"))?.norm(),
    })
}

/// Coordinatewise hill climb from `start`; returns the best point, its
/// value and the number of evaluations spent.
fn refine(
    f: Functional,
    start: Polar,
    p: &ClassParams<f64>,
    mu: Option<f64>,
) -> Result<(Polar, f64, u64), VerifyError> {
    let mut best = start;
    let mut best_val = functional_value(f, &best.sample(), p, mu)?;
    let mut evals = 1;
    let mut delta = SEARCH_INITIAL_STEP;
    for _ in 0..SEARCH_MAX_SWEEPS {
        if delta < SEARCH_MIN_STEP {
            break;
        }
        let mut improved = false;
        for coord in 0..6 {
            for dir in [1.0, -1.0] {
                let cand = best.step(coord, dir * delta);
                let val = functional_value(f, &cand.sample(), p, mu)?;
                evals += 1;
                if val > best_val {
                    best = cand;
                    best_val = val;
                    improved = true;
                }
            }
        }
        if !improved {
            delta *= 0.5;
        }
    }
    Ok((best, best_val, evals))
}

/// Random restarts plus coordinatewise refinement over paper-mode samples,
/// maximizing each functional separately. `budget` is the number of random
/// restarts per functional; the best boundary witness is always refined too.
pub fn tightness_search(
    p: &ClassParams<f64>,
    mu: Option<f64>,
    budget: usize,
    seed: u64,
) -> Result<VerifyReport, VerifyError> {
    let targets = Targets::from_bounds(p, mu)?;
    let boundary = boundary_samples(Mode::Paper, p);
    let mut functionals = vec![Functional::A2, Functional::A3];
    if mu.is_some() {
        functionals.push(Functional::FeketeSzego);
    }

    let mut tally = Tally::default();
    for (k, &f) in functionals.iter().enumerate() {
        let mut starts = Vec::with_capacity(budget + 1);
        let mut witness = (Polar::from_sample(&boundary[0]), f64::NEG_INFINITY);
        for s in &boundary {
            let v = functional_value(f, s, p, mu)?;
            if v > witness.1 {
                witness = (Polar::from_sample(s), v);
            }
        }
        starts.push(witness.0);
        let mut rng = chunk_rng(seed, k);
        starts.extend((0..budget).map(|_| Polar::random(&mut rng)));

        let results: Vec<(Polar, f64, u64)> = starts
            .par_iter()
            .map(|&x| refine(f, x, p, mu))
            .collect::<Result<_, VerifyError>>()?;
        for (i, (x, _, evals)) in results.into_iter().enumerate() {
            let index = (k * (budget + 1) + i) as u64;
            let s = x.sample();
            tally.samples += evals;
            let r = reconstruct(&s, p)?;
            let bound = match f {
                Functional::A2 => targets.a2,
                Functional::A3 => targets.a3,
                Functional::FeketeSzego => targets.fekete.expect("mu present").1,
            };
            let observed = match f {
                Functional::A2 => r.a2_sq.norm().sqrt(),
                Functional::A3 => r.a3.norm(),
                Functional::FeketeSzego => fekete_from_sample(&s, p, mu.expect("mu present"))?.norm(),
            };
            tally.record(f, index, s, observed, bound);
        }
    }
    Ok(VerifyReport::from_tally(tally, p, mu, Mode::Paper, seed, budget as u64, targets))
}

/// The 27-point grid λ, α ∈ {0, ½, 1} × {0, ¼, ½}, t ∈ {0.2, 0.5, 0.8}.
pub fn default_grid() -> Vec<ClassParams<f64>> {
    let mut out = Vec::with_capacity(27);
    for &l in &[0.0, 0.5, 1.0] {
        for &a in &[0.0, 0.25, 0.5] {
            for &t in &[0.2, 0.5, 0.8] {
                out.push(ClassParams::new(l, a, t).expect("grid inside parameter ranges"));
            }
        }
    }
    out
}

/// μ values exercised by the default grid.
pub const GRID_MUS: [f64; 4] = [0.0, 0.5, 1.0, 2.0];
