//! The scalar twist `f_α(t) = t^{1+iα}` and the centralizer `Ω_α`.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Neg;

use num_traits::Float;

use crate::linalg::{Complex, ComplexVector};
use crate::sampling::TrialSampler;
use crate::zspace::{ConstantReport, EstimateWitness, EstimatorConfig};
use crate::Error;

/// Coordinates with `|ξ_k| / ‖x‖₂` below this are treated as zero.
pub const NEGLIGIBLE_RATIO: f64 = 1e-300;

/// The real twist parameter `α`. Finite; zero and negative values allowed.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(try_from = "f64", into = "f64")
)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Self, Error> {
        if value.is_finite() {
            Ok(Self(value))
        } else {
            Err(Error::NonFinite("alpha"))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Neg for Alpha {
    type Output = Alpha;

    fn neg(self) -> Alpha {
        Alpha(-self.0)
    }
}

impl TryFrom<f64> for Alpha {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self, Error> {
        Self::new(value)
    }
}

impl From<Alpha> for f64 {
    fn from(a: Alpha) -> f64 {
        a.0
    }
}

/// `f_α(t) = t^{1+iα} = t·e^{iα ln t}` for `t > 0`, and `0` at `t = 0`.
pub fn f_alpha(t: f64, alpha: Alpha) -> Result<Complex, Error> {
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeArgument(t));
    }
    Ok(twist(t, alpha))
}

// t ≥ 0 already established.
fn twist(t: f64, alpha: Alpha) -> Complex {
    if t == 0.0 {
        return Complex::new(0.0, 0.0);
    }
    Complex::from_polar(t, alpha.0 * Float::ln(t))
}

/// The centralizer: `Ω_α(x)_k = ξ_k · f_α(ln(‖x‖₂ / |ξ_k|))`, or `0` where `ξ_k = 0`.
pub fn omega(x: &ComplexVector, alpha: Alpha) -> ComplexVector {
    let entries = x
        .iter()
        .zip(log_ratios(x))
        .map(|(&xi, t)| match t {
            Some(t) => xi * twist(t, alpha),
            None => Complex::new(0.0, 0.0),
        })
        .collect();
    ComplexVector::from_vec_unchecked(entries)
}

/// `ln(‖x‖₂ / |ξ_k|)` per coordinate, `None` for zero or negligible `ξ_k`.
///
/// Evaluated as `ln(m / |ξ_k|) + ½·ln(1 + Σ_{j≠top} (|ξ_j| / m)²)` with `m`
/// the largest modulus, so the result is exactly `0` for a single nonzero
/// coordinate and keeps full relative accuracy near it.
fn log_ratios(x: &ComplexVector) -> Vec<Option<f64>> {
    let moduli: Vec<f64> = x.iter().map(|z| z.norm()).collect();
    let mut top = 0;
    for (k, &v) in moduli.iter().enumerate() {
        if v > moduli[top] {
            top = k;
        }
    }
    let m = moduli.get(top).copied().unwrap_or(0.0);
    if m == 0.0 {
        return alloc::vec![None; moduli.len()];
    }
    let rest: f64 = moduli
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != top)
        .map(|(_, &v)| (v / m) * (v / m))
        .sum();
    let shift = 0.5 * Float::ln_1p(rest);
    let cutoff = -Float::ln(NEGLIGIBLE_RATIO);
    moduli
        .iter()
        .map(|&v| {
            if v == 0.0 {
                return None;
            }
            let t = Float::ln(m / v) + shift;
            (t <= cutoff).then_some(t)
        })
        .collect()
}

/// `‖Ω(x+y) − Ω(x) − Ω(y)‖₂ / (‖x‖₂ + ‖y‖₂)`, or `None` when `x = y = 0`.
pub fn quasilinearity_ratio(
    x: &ComplexVector,
    y: &ComplexVector,
    alpha: Alpha,
) -> Result<Option<f64>, Error> {
    let denom = x.l2_norm() + y.l2_norm();
    if denom == 0.0 {
        return Ok(None);
    }
    let deviation = omega(&x.add(y)?, alpha)
        .sub(&omega(x, alpha))?
        .sub(&omega(y, alpha))?;
    Ok(Some(deviation.l2_norm() / denom))
}

/// Empirical lower bound for the quasi-linearity constant of `Ω_α`.
///
/// Trial `i` draws its pair from the substream `(seed, i)`, so running more
/// trials with the same seed only ever adds candidates.
pub fn quasilinearity_estimate(config: &EstimatorConfig) -> Result<ConstantReport, Error> {
    config.validate()?;
    let mut best = Best::default();
    for trial in 0..config.trials {
        let mut sampler = TrialSampler::new(config, trial);
        let x = sampler.vector(config.dim);
        let y = sampler.vector(config.dim);
        if let Some(r) = quasilinearity_ratio(&x, &y, config.alpha)? {
            best.offer(r, || EstimateWitness::QuasiLinear { x, y });
        }
    }
    Ok(best.into_report(QUASI_LINEARITY, config))
}

pub const QUASI_LINEARITY: &str = "quasi_linearity";

/// Running maximum with first-occurrence argmax.
#[derive(Default)]
pub(crate) struct Best {
    estimate: f64,
    witness: Option<EstimateWitness>,
}

impl Best {
    pub(crate) fn offer(&mut self, ratio: f64, witness: impl FnOnce() -> EstimateWitness) {
        if self.witness.is_none() || ratio > self.estimate {
            self.estimate = ratio;
            self.witness = Some(witness());
        }
    }

    pub(crate) fn into_report(self, name: &str, config: &EstimatorConfig) -> ConstantReport {
        ConstantReport {
            constant_name: String::from(name),
            alpha: config.alpha,
            dim: config.dim,
            trials: config.trials,
            seed: config.seed,
            estimate: self.estimate,
            witness: self.witness,
        }
    }
}

/// Pointwise `|ξ_k| · ln(‖x‖₂ / |ξ_k|)`, the modulus `|Ω_α(x)_k|` for every `α`.
pub fn omega_modulus(x: &ComplexVector) -> Vec<f64> {
    x.iter()
        .zip(log_ratios(x))
        .map(|(xi, t)| t.map_or(0.0, |t| xi.norm() * t))
        .collect()
}
