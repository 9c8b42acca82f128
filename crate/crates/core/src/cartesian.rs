//! The splitting `U(x, y) = (U^odd x, U^odd y) ⊕ (U^even x, U^even y)` of a
//! `Z_α` section onto its Cartesian square, and diagonal multipliers.
//!
//! Indices are 1-based as in `U^odd x = (ξ_{2k−1})`: the odd part holds
//! `ξ₁, ξ₃, …`, which are the even 0-based positions.

use alloc::vec::Vec;

use crate::centralizer::Best;
use crate::linalg::{Complex, ComplexVector};
use crate::sampling::TrialSampler;
use crate::zspace::{
    direct_sum_norm, znorm, ConstantReport, EstimateWitness, EstimatorConfig, ZPoint,
};
use crate::Error;

/// A bounded sequence `s` acting coordinatewise by `(x, y) ↦ (s·x, s·y)`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(transparent)
)]
pub struct DiagonalMultiplier {
    s: ComplexVector,
}

impl DiagonalMultiplier {
    pub fn new(s: ComplexVector) -> Self {
        Self { s }
    }

    pub fn ones(len: usize) -> Self {
        Self::new(ComplexVector::ones(len))
    }

    /// Indicator of the 1-based odd coordinates `1, 3, 5, …`.
    pub fn odd_indicator(len: usize) -> Self {
        Self::indicator(len, 0)
    }

    /// Indicator of the 1-based even coordinates `2, 4, 6, …`.
    pub fn even_indicator(len: usize) -> Self {
        Self::indicator(len, 1)
    }

    fn indicator(len: usize, parity: usize) -> Self {
        let v = (0..len)
            .map(|k| Complex::new(if k % 2 == parity { 1.0 } else { 0.0 }, 0.0))
            .collect();
        Self::new(ComplexVector::from_vec_unchecked(v))
    }

    pub fn sequence(&self) -> &ComplexVector {
        &self.s
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn linf_norm(&self) -> f64 {
        self.s.linf_norm()
    }

    /// The multiplier `s·s'`.
    pub fn product(&self, other: &Self) -> Result<Self, Error> {
        Ok(Self::new(self.s.hadamard(&other.s)?))
    }
}

/// Splits `p` into its 1-based odd and even coordinates.
///
/// An odd-length point is first padded with one zero coordinate.
pub fn u_split(p: &ZPoint) -> (ZPoint, ZPoint) {
    let alpha = p.alpha();
    let (x_odd, x_even) = deinterleave(p.x());
    let (y_odd, y_even) = deinterleave(p.y());
    (
        ZPoint::new(x_odd, y_odd, alpha).expect("halves split alike"),
        ZPoint::new(x_even, y_even, alpha).expect("halves split alike"),
    )
}

fn deinterleave(v: &ComplexVector) -> (ComplexVector, ComplexVector) {
    let half = v.len().div_ceil(2);
    let mut odd = Vec::with_capacity(half);
    let mut even = Vec::with_capacity(half);
    for pair in v.as_slice().chunks(2) {
        odd.push(pair[0]);
        even.push(pair.get(1).copied().unwrap_or(Complex::new(0.0, 0.0)));
    }
    (
        ComplexVector::from_vec_unchecked(odd),
        ComplexVector::from_vec_unchecked(even),
    )
}

/// Interleaves two halves of equal length: the inverse of [`u_split`].
pub fn u_merge(odd: &ZPoint, even: &ZPoint) -> Result<ZPoint, Error> {
    if odd.alpha() != even.alpha() {
        return Err(Error::AlphaMismatch {
            left: odd.alpha().value(),
            right: even.alpha().value(),
        });
    }
    if odd.len() != even.len() {
        return Err(Error::DimensionMismatch {
            expected: odd.len(),
            found: even.len(),
        });
    }
    ZPoint::new(
        interleave(odd.x(), even.x()),
        interleave(odd.y(), even.y()),
        odd.alpha(),
    )
}

fn interleave(odd: &ComplexVector, even: &ComplexVector) -> ComplexVector {
    let v = odd
        .iter()
        .zip(even.iter())
        .flat_map(|(&a, &b)| [a, b])
        .collect();
    ComplexVector::from_vec_unchecked(v)
}

/// `(s·x, s·y)`.
pub fn multiplier_apply(m: &DiagonalMultiplier, p: &ZPoint) -> Result<ZPoint, Error> {
    if m.len() != p.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            found: m.len(),
        });
    }
    ZPoint::new(m.s.hadamard(p.x())?, m.s.hadamard(p.y())?, p.alpha())
}

/// `znorm(s·p) / znorm(p)`, `None` for `p = 0`.
///
/// Not normalized by `‖s‖_∞`; estimators only draw `‖s‖_∞ ≤ 1`.
pub fn multiplier_ratio(m: &DiagonalMultiplier, p: &ZPoint) -> Result<Option<f64>, Error> {
    let denom = znorm(p);
    if denom == 0.0 {
        return Ok(None);
    }
    Ok(Some(znorm(&multiplier_apply(m, p)?) / denom))
}

/// `direct_sum_norm(u_split(p)) / znorm(p)`, `None` for `p = 0`.
pub fn split_ratio(p: &ZPoint) -> Option<f64> {
    let denom = znorm(p);
    if denom == 0.0 {
        return None;
    }
    let (odd, even) = u_split(p);
    Some((znorm(&odd) + znorm(&even)) / denom)
}

/// `znorm(u_merge(odd, even)) / direct_sum_norm(odd, even)`, `None` for a zero pair.
pub fn merge_ratio(odd: &ZPoint, even: &ZPoint) -> Result<Option<f64>, Error> {
    let denom = direct_sum_norm(odd, even)?;
    if denom == 0.0 {
        return Ok(None);
    }
    Ok(Some(znorm(&u_merge(odd, even)?) / denom))
}

pub const MULTIPLIER: &str = "multiplier";
pub const U_FORWARD: &str = "u_forward";
pub const U_INVERSE: &str = "u_inverse";

/// Multipliers cycle through: all-ones, odd indicator, even indicator, a
/// random 0/1 mask, random unimodular phases.
fn multiplier_for_trial(
    sampler: &mut TrialSampler<'_>,
    trial: u64,
    dim: usize,
) -> DiagonalMultiplier {
    match trial % 5 {
        0 => DiagonalMultiplier::ones(dim),
        1 => DiagonalMultiplier::odd_indicator(dim),
        2 => DiagonalMultiplier::even_indicator(dim),
        3 => DiagonalMultiplier::new(sampler.mask(dim)),
        _ => DiagonalMultiplier::new(sampler.phases(dim)),
    }
}

/// Empirical lower bound for `C` in `‖(sx, sy)‖_α ≤ C‖s‖_∞‖(x, y)‖_α`.
pub fn multiplier_constant_estimate(config: &EstimatorConfig) -> Result<ConstantReport, Error> {
    config.validate()?;
    let mut best = Best::default();
    for trial in 0..config.trials {
        let mut sampler = TrialSampler::new(config, trial);
        let p = sampler.point(config.dim);
        let s = multiplier_for_trial(&mut sampler, trial, config.dim);
        if let Some(r) = multiplier_ratio(&s, &p)? {
            best.offer(r, || EstimateWitness::Multiplier { s, p });
        }
    }
    Ok(best.into_report(MULTIPLIER, config))
}

/// Both directions of the splitting isomorphism.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UNormReport {
    /// `max direct_sum_norm(u_split(p)) / znorm(p)`.
    pub forward: ConstantReport,
    /// `max znorm(u_merge(a, b)) / direct_sum_norm(a, b)`.
    pub inverse: ConstantReport,
}

/// Empirical norms of `U` and `U⁻¹` on a section of even length `dim`.
pub fn u_norm_estimate(config: &EstimatorConfig) -> Result<UNormReport, Error> {
    config.validate()?;
    if !config.dim.is_multiple_of(2) {
        return Err(Error::OddDimension(config.dim));
    }
    let half = config.dim / 2;
    let mut forward = Best::default();
    let mut inverse = Best::default();
    for trial in 0..config.trials {
        let mut sampler = TrialSampler::new(config, trial);
        let p = sampler.point(config.dim);
        if let Some(r) = split_ratio(&p) {
            forward.offer(r, || EstimateWitness::SplitForward { p });
        }
        let odd = sampler.point(half);
        let even = sampler.point(half);
        if let Some(r) = merge_ratio(&odd, &even)? {
            inverse.offer(r, || EstimateWitness::MergeInverse { odd, even });
        }
    }
    Ok(UNormReport {
        forward: forward.into_report(U_FORWARD, config),
        inverse: inverse.into_report(U_INVERSE, config),
    })
}
