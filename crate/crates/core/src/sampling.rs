//! Per-trial random streams shared by the estimators.
//!
//! Trial `i` of a run with seed `s` reads only from ChaCha stream `i` keyed
//! by `s`, so results do not depend on how trials are scheduled.

use alloc::vec::Vec;

use num_traits::Float;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::centralizer::omega;
use crate::linalg::{sample, Complex, ComplexVector, Family, RandomSpec};
use crate::zspace::{EstimatorConfig, ZPoint};

pub(crate) struct TrialSampler<'a> {
    rng: ChaCha8Rng,
    config: &'a EstimatorConfig,
}

impl<'a> TrialSampler<'a> {
    pub(crate) fn new(config: &'a EstimatorConfig, trial: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(trial);
        Self { rng, config }
    }

    fn phase(&mut self) -> Complex {
        let theta = self.rng.random_range(0.0..core::f64::consts::TAU);
        Complex::from_polar(1.0, theta)
    }

    /// A vector from one of the configured families.
    ///
    /// Structured families get a random support length, cyclic shift, phase
    /// and power-of-two-spread scale so that pairs are not all identical.
    pub(crate) fn vector(&mut self, dim: usize) -> ComplexVector {
        let families = &self.config.families;
        let family = families[self.rng.random_range(0..families.len())];
        let spec = RandomSpec {
            seed: self.rng.next_u64(),
            family,
            dim,
        };
        let base = sample(spec).expect("dim is validated positive");
        let scale = Float::powf(2.0, self.rng.random_range(-4.0..4.0));
        match family {
            Family::Gaussian => base.scale(Complex::new(scale, 0.0)),
            Family::Spike => {
                let shift = self.rng.random_range(0..dim);
                base.rotated(shift).scale(self.phase() * scale)
            }
            Family::Flat | Family::GeometricDecay => {
                let support = self.rng.random_range(1..=dim);
                let shift = self.rng.random_range(0..dim);
                let mut entries = base.into_vec();
                entries[support..].fill(Complex::new(0.0, 0.0));
                ComplexVector::from_vec_unchecked(entries)
                    .rotated(shift)
                    .scale(self.phase() * scale)
            }
        }
    }

    /// A point of the section: `y` is independent of `x`, exactly `Ω_α(x)`,
    /// or `Ω_α(x)` plus a small perturbation, in equal proportion.
    pub(crate) fn point(&mut self, dim: usize) -> ZPoint {
        let alpha = self.config.alpha;
        let x = self.vector(dim);
        let y = match self.rng.random_range(0..3u8) {
            0 => self.vector(dim),
            1 => omega(&x, alpha),
            _ => {
                let eps = Float::powf(2.0, self.rng.random_range(-12.0..0.0));
                let noise = self.vector(dim).scale(Complex::new(eps * x.l2_norm(), 0.0));
                omega(&x, alpha).add(&noise).expect("equal lengths")
            }
        };
        ZPoint::new(x, y, alpha).expect("equal lengths")
    }

    /// A 0/1 mask with independent fair bits.
    pub(crate) fn mask(&mut self, dim: usize) -> ComplexVector {
        let bits: Vec<Complex> = (0..dim)
            .map(|_| Complex::new(if self.rng.random::<bool>() { 1.0 } else { 0.0 }, 0.0))
            .collect();
        ComplexVector::from_vec_unchecked(bits)
    }

    /// Independent uniform unimodular phases.
    pub(crate) fn phases(&mut self, dim: usize) -> ComplexVector {
        let v: Vec<Complex> = (0..dim).map(|_| self.phase()).collect();
        ComplexVector::from_vec_unchecked(v)
    }
}
