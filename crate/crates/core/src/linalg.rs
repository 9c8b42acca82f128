//! Complex vectors, dense operators and seeded sample generation.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;
use core::str::FromStr;

use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::Error;

pub type Complex = num_complex::Complex64;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

/// A finite complex sequence, standing in for a truncated element of `ℓ₂`.
///
/// Entries are always finite.
#[derive(Clone, Debug, Default, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(try_from = "Vec<Complex>", into = "Vec<Complex>")
)]
pub struct ComplexVector(Vec<Complex>);

impl ComplexVector {
    pub fn new(entries: Vec<Complex>) -> Result<Self, Error> {
        if entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(Self(entries))
        } else {
            Err(Error::NonFinite("vector entry"))
        }
    }

    pub fn from_real(entries: &[f64]) -> Result<Self, Error> {
        Self::new(entries.iter().map(|&r| Complex::new(r, 0.0)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![ZERO; len])
    }

    pub fn ones(len: usize) -> Self {
        Self(vec![ONE; len])
    }

    /// The standard basis vector `e_k` (0-based `k`).
    pub fn basis(len: usize, k: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[k] = ONE;
        v
    }

    /// Callers guarantee finiteness: results of arithmetic on finite inputs.
    pub(crate) fn from_vec_unchecked(entries: Vec<Complex>) -> Self {
        Self(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.0
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Complex> {
        self.0.iter()
    }

    pub fn into_vec(self) -> Vec<Complex> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| *z == ZERO)
    }

    /// `sqrt(Σ |ξ_k|²)`.
    pub fn l2_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |ξ_k|`, zero for the empty vector.
    pub fn linf_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn conj(&self) -> Self {
        Self(self.0.iter().map(|z| z.conj()).collect())
    }

    pub fn scale(&self, lambda: Complex) -> Self {
        Self(self.0.iter().map(|z| lambda * z).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_len(other.len())?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.check_len(other.len())?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Coordinatewise product.
    pub fn hadamard(&self, other: &Self) -> Result<Self, Error> {
        self.check_len(other.len())?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect(),
        ))
    }

    /// Appends zeros up to `len`.
    pub fn padded(&self, len: usize) -> Result<Self, Error> {
        if len < self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: len,
            });
        }
        let mut entries = self.0.clone();
        entries.resize(len, ZERO);
        Ok(Self(entries))
    }

    /// Cyclic shift by `k` positions towards higher indices.
    pub fn rotated(&self, k: usize) -> Self {
        let mut entries = self.0.clone();
        if !entries.is_empty() {
            let k = k % entries.len();
            entries.rotate_right(k);
        }
        Self(entries)
    }

    fn check_len(&self, found: usize) -> Result<(), Error> {
        if self.len() == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.len(),
                found,
            })
        }
    }
}

impl TryFrom<Vec<Complex>> for ComplexVector {
    type Error = Error;

    fn try_from(entries: Vec<Complex>) -> Result<Self, Error> {
        Self::new(entries)
    }
}

impl From<ComplexVector> for Vec<Complex> {
    fn from(v: ComplexVector) -> Self {
        v.0
    }
}

impl Index<usize> for ComplexVector {
    type Output = Complex;

    fn index(&self, k: usize) -> &Complex {
        &self.0[k]
    }
}

impl<'a> IntoIterator for &'a ComplexVector {
    type Item = &'a Complex;
    type IntoIter = core::slice::Iter<'a, Complex>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Free-function form of [`ComplexVector::l2_norm`].
pub fn l2_norm(x: &ComplexVector) -> f64 {
    x.l2_norm()
}

/// Free-function form of [`ComplexVector::linf_norm`].
pub fn linf_norm(s: &ComplexVector) -> f64 {
    s.linf_norm()
}

/// A dense `rows × cols` complex matrix stored row-major.
///
/// With the `serde` feature it serializes as an array of rows, each row an
/// array of `[re, im]` pairs. A matrix with zero rows serializes as `[]` and
/// reads back as `0 × 0`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(try_from = "Vec<Vec<Complex>>", into = "Vec<Vec<Complex>>")
)]
pub struct DenseOperator {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl DenseOperator {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if !data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("matrix entry"));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Complex>>) -> Result<Self, Error> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::RaggedMatrix);
        }
        Self::new(m, n, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut op = Self::zeros(n, n);
        for k in 0..n {
            op.data[k * n + k] = ONE;
        }
        op
    }

    /// Builds an operator from a function of `(row, col)`.
    pub(crate) fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.data[row * self.cols + col]
    }

    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn apply(&self, x: &ComplexVector) -> Result<ComplexVector, Error> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let out = (0..self.rows)
            .map(|i| self.row(i).iter().zip(x.iter()).map(|(a, b)| a * b).sum())
            .collect();
        Ok(ComplexVector::from_vec_unchecked(out))
    }

    /// The product `self · rhs`.
    pub fn matmul(&self, rhs: &Self) -> Result<Self, Error> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch("inner dimensions of product differ"));
        }
        let mut data = vec![ZERO; self.rows * rhs.cols];
        for i in 0..self.rows {
            let out = &mut data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, a) in self.row(i).iter().enumerate() {
                if *a == ZERO {
                    continue;
                }
                for (o, b) in out.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, Error> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, Error> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, lambda: Complex) -> Self {
        self.map(|z| lambda * z)
    }

    /// Entrywise complex conjugate (not the adjoint).
    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Stacks `self` on top of `below`.
    pub fn vstack(&self, below: &Self) -> Result<Self, Error> {
        if self.cols != below.cols {
            return Err(Error::ShapeMismatch("vstack column counts differ"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Ok(Self {
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        })
    }

    /// Places `right` to the right of `self`.
    pub fn hstack(&self, right: &Self) -> Result<Self, Error> {
        if self.rows != right.rows {
            return Err(Error::ShapeMismatch("hstack row counts differ"));
        }
        Ok(Self::from_fn(self.rows, self.cols + right.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                right.get(i, j - self.cols)
            }
        }))
    }

    fn map(&self, f: impl Fn(Complex) -> Complex) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex, Complex) -> Complex) -> Result<Self, Error> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch("operand shapes differ"));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }
}

impl TryFrom<Vec<Vec<Complex>>> for DenseOperator {
    type Error = Error;

    fn try_from(rows: Vec<Vec<Complex>>) -> Result<Self, Error> {
        Self::from_rows(rows)
    }
}

impl From<DenseOperator> for Vec<Vec<Complex>> {
    fn from(op: DenseOperator) -> Self {
        if op.cols == 0 {
            return vec![Vec::new(); op.rows];
        }
        op.data.chunks(op.cols).map(<[Complex]>::to_vec).collect()
    }
}

/// Free-function form of [`DenseOperator::apply`].
pub fn apply(t: &DenseOperator, x: &ComplexVector) -> Result<ComplexVector, Error> {
    t.apply(x)
}

/// Families of random and structured vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Family {
    /// I.i.d. standard complex normal entries (`E|z|² = 1`).
    Gaussian,
    /// All ones.
    Flat,
    /// The first basis vector.
    Spike,
    /// Entries `2^(-k/2)` for `k = 0, 1, …`.
    GeometricDecay,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Gaussian,
        Family::Flat,
        Family::Spike,
        Family::GeometricDecay,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Gaussian => "gaussian",
            Family::Flat => "flat",
            Family::Spike => "spike",
            Family::GeometricDecay => "geometric-decay",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown vector family `{0}`")]
pub struct UnknownFamily(pub alloc::string::String);

impl FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| UnknownFamily(s.into()))
    }
}

/// Everything needed to reproduce one sampled vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    pub seed: u64,
    pub family: Family,
    pub dim: usize,
}

/// Draws one vector; identical specs give identical vectors.
pub fn sample(spec: RandomSpec) -> Result<ComplexVector, Error> {
    if spec.dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let n = spec.dim;
    let v = match spec.family {
        Family::Gaussian => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let s = core::f64::consts::FRAC_1_SQRT_2;
            (0..n)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex::new(s * re, s * im)
                })
                .collect()
        }
        Family::Flat => vec![ONE; n],
        Family::Spike => {
            let mut v = vec![ZERO; n];
            v[0] = ONE;
            v
        }
        Family::GeometricDecay => (0..n)
            .map(|k| Complex::new(Float::powf(2.0, -(k as f64) / 2.0), 0.0))
            .collect(),
    };
    Ok(ComplexVector(v))
}
