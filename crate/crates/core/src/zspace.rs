//! Points of a finite section of `Z_α` and the quasi-norm
//! `‖(x, y)‖_α = ‖x‖₂ + ‖y − Ω_α(x)‖₂`.
//!
//! Points carrying different `α` never combine arithmetically; the only map
//! that changes `α` is [`conjugate_point`], which sends `Z_α` to `Z_{−α}`.
//! Sections have a fixed length and are never broadcast: use [`pad`].

use alloc::string::String;
use alloc::vec::Vec;

use crate::cartesian::{self, DiagonalMultiplier};
use crate::centralizer::{omega, quasilinearity_ratio, Alpha, Best};
use crate::linalg::{Complex, ComplexVector, Family};
use crate::sampling::TrialSampler;
use crate::Error;

/// A pair `(x, y)` of equal-length vectors in the section of `Z_α`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(try_from = "RawPoint")
)]
pub struct ZPoint {
    x: ComplexVector,
    y: ComplexVector,
    alpha: Alpha,
}

#[cfg(feature = "serde")]
#[derive(serde::Deserialize)]
struct RawPoint {
    x: ComplexVector,
    y: ComplexVector,
    alpha: Alpha,
}

#[cfg(feature = "serde")]
impl TryFrom<RawPoint> for ZPoint {
    type Error = Error;

    fn try_from(raw: RawPoint) -> Result<Self, Error> {
        ZPoint::new(raw.x, raw.y, raw.alpha)
    }
}

impl ZPoint {
    pub fn new(x: ComplexVector, y: ComplexVector, alpha: Alpha) -> Result<Self, Error> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: y.len(),
            });
        }
        Ok(Self { x, y, alpha })
    }

    pub fn zero(len: usize, alpha: Alpha) -> Self {
        Self {
            x: ComplexVector::zeros(len),
            y: ComplexVector::zeros(len),
            alpha,
        }
    }

    pub fn x(&self) -> &ComplexVector {
        &self.x
    }

    pub fn y(&self) -> &ComplexVector {
        &self.y
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    /// Section length `n` (each of `x`, `y` has `n` coordinates).
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn into_parts(self) -> (ComplexVector, ComplexVector, Alpha) {
        (self.x, self.y, self.alpha)
    }

    pub fn znorm(&self) -> f64 {
        znorm(self)
    }
}

/// `‖x‖₂ + ‖y − Ω_α(x)‖₂`.
pub fn znorm(p: &ZPoint) -> f64 {
    let twisted =
        p.y.sub(&omega(&p.x, p.alpha))
            .expect("ZPoint halves have equal length");
    p.x.l2_norm() + twisted.l2_norm()
}

/// `(x̄, ȳ)` as a point of `Z_{−α}`.
pub fn conjugate_point(p: &ZPoint) -> ZPoint {
    ZPoint {
        x: p.x.conj(),
        y: p.y.conj(),
        alpha: -p.alpha,
    }
}

fn check_compatible(p: &ZPoint, q: &ZPoint) -> Result<(), Error> {
    if p.alpha != q.alpha {
        return Err(Error::AlphaMismatch {
            left: p.alpha.value(),
            right: q.alpha.value(),
        });
    }
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            found: q.len(),
        });
    }
    Ok(())
}

pub fn add(p: &ZPoint, q: &ZPoint) -> Result<ZPoint, Error> {
    check_compatible(p, q)?;
    Ok(ZPoint {
        x: p.x.add(&q.x)?,
        y: p.y.add(&q.y)?,
        alpha: p.alpha,
    })
}

pub fn scale(lambda: Complex, p: &ZPoint) -> ZPoint {
    ZPoint {
        x: p.x.scale(lambda),
        y: p.y.scale(lambda),
        alpha: p.alpha,
    }
}

/// Appends zero coordinates to both halves; `len` must not shrink the point.
pub fn pad(p: &ZPoint, len: usize) -> Result<ZPoint, Error> {
    Ok(ZPoint {
        x: p.x.padded(len)?,
        y: p.y.padded(len)?,
        alpha: p.alpha,
    })
}

/// The quasi-norm of `p ⊕ q`, taken as `znorm(p) + znorm(q)`.
///
/// The halves may have different lengths but must share `α`.
pub fn direct_sum_norm(p: &ZPoint, q: &ZPoint) -> Result<f64, Error> {
    if p.alpha != q.alpha {
        return Err(Error::AlphaMismatch {
            left: p.alpha.value(),
            right: q.alpha.value(),
        });
    }
    Ok(znorm(p) + znorm(q))
}

/// `znorm(p + q) / (znorm(p) + znorm(q))`, `None` for a zero denominator.
pub fn quasi_triangle_ratio(p: &ZPoint, q: &ZPoint) -> Result<Option<f64>, Error> {
    let denom = direct_sum_norm(p, q)?;
    if denom == 0.0 {
        return Ok(None);
    }
    Ok(Some(znorm(&add(p, q)?) / denom))
}

pub const QUASI_TRIANGLE: &str = "quasi_triangle";

/// Every eighth trial (starting with trial 0) pairs a point with itself.
const DUPLICATE_EVERY: u64 = 8;

/// Empirical lower bound for the quasi-triangle constant of `‖·‖_α`.
///
/// Trial 0 is a duplicated pair, so the estimate is at least 1.
pub fn quasi_triangle_estimate(config: &EstimatorConfig) -> Result<ConstantReport, Error> {
    config.validate()?;
    let mut best = Best::default();
    for trial in 0..config.trials {
        let mut sampler = TrialSampler::new(config, trial);
        let p = sampler.point(config.dim);
        let q = if trial % DUPLICATE_EVERY == 0 {
            p.clone()
        } else {
            sampler.point(config.dim)
        };
        if let Some(r) = quasi_triangle_ratio(&p, &q)? {
            best.offer(r, || EstimateWitness::QuasiTriangle { p, q });
        }
    }
    Ok(best.into_report(QUASI_TRIANGLE, config))
}

/// Parameters shared by every constant estimator.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimatorConfig {
    pub dim: usize,
    pub alpha: Alpha,
    pub trials: u64,
    pub seed: u64,
    pub families: Vec<Family>,
}

impl EstimatorConfig {
    /// A configuration drawing from all four families.
    pub fn new(dim: usize, alpha: Alpha, trials: u64, seed: u64) -> Result<Self, Error> {
        let config = Self {
            dim,
            alpha,
            trials,
            seed,
            families: Family::ALL.to_vec(),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_families(mut self, families: Vec<Family>) -> Result<Self, Error> {
        self.families = families;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if self.trials == 0 {
            return Err(Error::ZeroTrials);
        }
        if self.families.is_empty() {
            return Err(Error::NoFamilies);
        }
        Ok(())
    }
}

/// The inputs that achieved an estimate; [`EstimateWitness::ratio`] replays it.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(tag = "kind", rename_all = "snake_case")
)]
pub enum EstimateWitness {
    QuasiLinear { x: ComplexVector, y: ComplexVector },
    QuasiTriangle { p: ZPoint, q: ZPoint },
    Multiplier { s: DiagonalMultiplier, p: ZPoint },
    SplitForward { p: ZPoint },
    MergeInverse { odd: ZPoint, even: ZPoint },
}

impl EstimateWitness {
    /// Recomputes the ratio these inputs contribute to their estimator.
    pub fn ratio(&self, alpha: Alpha) -> Result<Option<f64>, Error> {
        match self {
            EstimateWitness::QuasiLinear { x, y } => quasilinearity_ratio(x, y, alpha),
            EstimateWitness::QuasiTriangle { p, q } => quasi_triangle_ratio(p, q),
            EstimateWitness::Multiplier { s, p } => cartesian::multiplier_ratio(s, p),
            EstimateWitness::SplitForward { p } => Ok(cartesian::split_ratio(p)),
            EstimateWitness::MergeInverse { odd, even } => cartesian::merge_ratio(odd, even),
        }
    }
}

/// An empirical constant together with the inputs that achieved it.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConstantReport {
    pub constant_name: String,
    pub alpha: Alpha,
    pub dim: usize,
    pub trials: u64,
    pub seed: u64,
    pub estimate: f64,
    pub witness: Option<EstimateWitness>,
}

impl ConstantReport {
    /// The ratio replayed from the stored witness.
    pub fn recompute(&self) -> Result<Option<f64>, Error> {
        match &self.witness {
            Some(w) => w.ratio(self.alpha),
            None => Ok(None),
        }
    }
}
