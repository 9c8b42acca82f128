//! Factorization certificates: `T = B∘A` with `A` into and `B` out of a
//! section of `Z_α`.
//!
//! A section of half-length `n` has `2n` complex coordinates ordered as
//! `(x₁, …, x_n, y₁, …, y_n)`. The `α` tag is carried as data; nothing here
//! can distinguish factoring through `Z_α` from factoring through `Z_{−α}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::centralizer::Alpha;
use crate::linalg::{Complex, DenseOperator};
use crate::Error;

/// Relative Frobenius tolerance used by [`verify_certificate`].
pub const VERIFY_TOLERANCE: f64 = 1e-9;

/// A witness that `t` factors as `b · a` through a `Z_α` section of half-length `zdim`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FactorizationCertificate {
    pub alpha: Alpha,
    pub zdim: usize,
    #[cfg_attr(feature = "serde", serde(rename = "T"))]
    pub t: DenseOperator,
    #[cfg_attr(feature = "serde", serde(rename = "A"))]
    pub a: DenseOperator,
    #[cfg_attr(feature = "serde", serde(rename = "B"))]
    pub b: DenseOperator,
}

impl FactorizationCertificate {
    /// Builds a certificate, checking shapes (not the factorization itself).
    pub fn new(
        t: DenseOperator,
        a: DenseOperator,
        b: DenseOperator,
        alpha: Alpha,
        zdim: usize,
    ) -> Result<Self, Error> {
        let c = Self {
            alpha,
            zdim,
            t,
            a,
            b,
        };
        c.check_shapes()?;
        Ok(c)
    }

    /// Certificate for `b · a` with `T` computed from the factors.
    pub fn from_factors(a: DenseOperator, b: DenseOperator, alpha: Alpha) -> Result<Self, Error> {
        if !a.rows().is_multiple_of(2) {
            return Err(Error::ShapeMismatch(
                "A must map into a section of even dimension",
            ));
        }
        let zdim = a.rows() / 2;
        let t = b.matmul(&a)?;
        Self::new(t, a, b, alpha, zdim)
    }

    pub fn check_shapes(&self) -> Result<(), Error> {
        let section = 2 * self.zdim;
        if self.a.rows() != section {
            return Err(Error::ShapeMismatch("A does not map into the Z section"));
        }
        if self.b.cols() != section {
            return Err(Error::ShapeMismatch("B does not map out of the Z section"));
        }
        if self.a.cols() != self.t.cols() {
            return Err(Error::ShapeMismatch("domain of A differs from domain of T"));
        }
        if self.b.rows() != self.t.rows() {
            return Err(Error::ShapeMismatch(
                "codomain of B differs from codomain of T",
            ));
        }
        Ok(())
    }

    /// `‖B·A − T‖_F / (1 + ‖T‖_F)`.
    pub fn residual(&self) -> Result<f64, Error> {
        self.check_shapes()?;
        let diff = self.b.matmul(&self.a)?.sub(&self.t)?;
        Ok(diff.frobenius_norm() / (1.0 + self.t.frobenius_norm()))
    }
}

/// `true` iff `‖B·A − T‖_F ≤ 1e−9·(1 + ‖T‖_F)`; shape errors are reported as `Err`.
pub fn verify_certificate(c: &FactorizationCertificate) -> Result<bool, Error> {
    verify_certificate_within(c, VERIFY_TOLERANCE)
}

pub fn verify_certificate_within(c: &FactorizationCertificate, tol: f64) -> Result<bool, Error> {
    Ok(c.residual()? <= tol)
}

/// The trivial certificate for `Id` on `C^n`: embed `x ↦ (x, 0)`, project back.
pub fn identity_certificate(n: usize, alpha: Alpha) -> FactorizationCertificate {
    let one = Complex::new(1.0, 0.0);
    let zero = Complex::new(0.0, 0.0);
    let a = DenseOperator::from_fn(2 * n, n, |i, j| if i == j { one } else { zero });
    let b = DenseOperator::from_fn(n, 2 * n, |i, j| if i == j { one } else { zero });
    FactorizationCertificate {
        alpha,
        zdim: n,
        t: DenseOperator::identity(n),
        a,
        b,
    }
}

/// Certificate for `R∘T∘S` with factors `A∘S` and `R∘B`.
pub fn compose_certificate(
    r: &DenseOperator,
    c: &FactorizationCertificate,
    s: &DenseOperator,
) -> Result<FactorizationCertificate, Error> {
    c.check_shapes()?;
    if r.cols() != c.t.rows() {
        return Err(Error::ShapeMismatch("R does not accept the codomain of T"));
    }
    if s.rows() != c.t.cols() {
        return Err(Error::ShapeMismatch("S does not land in the domain of T"));
    }
    Ok(FactorizationCertificate {
        alpha: c.alpha,
        zdim: c.zdim,
        t: r.matmul(&c.t)?.matmul(s)?,
        a: c.a.matmul(s)?,
        b: r.matmul(&c.b)?,
    })
}

/// Coordinate permutation from `Z_{n₁} ⊕ Z_{n₂}` (ordered `x¹, y¹, x², y²`)
/// onto one section of half-length `n₁ + n₂`.
///
/// Each half is interleaved as by [`crate::cartesian::u_merge`]; when
/// `n₁ ≠ n₂` the surplus coordinates of the longer summand follow the
/// interleaved block in order.
pub fn interleave_permutation(n1: usize, n2: usize) -> DenseOperator {
    let n = n1 + n2;
    // target[i] = source coordinate landing at position i of one half
    let mut half = alloc::vec::Vec::with_capacity(n);
    let common = n1.min(n2);
    for k in 0..common {
        half.push((0, k));
        half.push((1, k));
    }
    for k in common..n1 {
        half.push((0, k));
    }
    for k in common..n2 {
        half.push((1, k));
    }
    let source_index = |row: usize| -> usize {
        let (part, offset) = if row < n { (0, row) } else { (1, row - n) };
        let (summand, k) = half[offset];
        // summand 0 occupies [0, 2n1), summand 1 occupies [2n1, 2n1 + 2n2)
        let (base, len) = if summand == 0 { (0, n1) } else { (2 * n1, n2) };
        base + part * len + k
    };
    let one = Complex::new(1.0, 0.0);
    let zero = Complex::new(0.0, 0.0);
    DenseOperator::from_fn(
        2 * n,
        2 * n,
        |i, j| if source_index(i) == j { one } else { zero },
    )
}

/// Certificate for `T₁ + T₂` through one section of half-length `zdim₁ + zdim₂`.
///
/// `x ↦ (A₁x, A₂x)` lands in the direct sum of the two sections, the
/// interleaving `P` merges them, and `B' = [B₁ B₂]·Pᵀ` undoes it.
pub fn sum_certificate(
    c1: &FactorizationCertificate,
    c2: &FactorizationCertificate,
) -> Result<FactorizationCertificate, Error> {
    c1.check_shapes()?;
    c2.check_shapes()?;
    if c1.alpha != c2.alpha {
        return Err(Error::AlphaMismatch {
            left: c1.alpha.value(),
            right: c2.alpha.value(),
        });
    }
    if c1.t.rows() != c2.t.rows() || c1.t.cols() != c2.t.cols() {
        return Err(Error::ShapeMismatch(
            "summands act between different spaces",
        ));
    }
    let p = interleave_permutation(c1.zdim, c2.zdim);
    let a = p.matmul(&c1.a.vstack(&c2.a)?)?;
    let b = c1.b.hstack(&c2.b)?.matmul(&p.transpose())?;
    Ok(FactorizationCertificate {
        alpha: c1.alpha,
        zdim: c1.zdim + c2.zdim,
        t: c1.t.add(&c2.t)?,
        a,
        b,
    })
}

/// Entrywise conjugate factors, factoring `T̄` through `Z_{−α}`.
pub fn conjugate_certificate(c: &FactorizationCertificate) -> FactorizationCertificate {
    FactorizationCertificate {
        alpha: -c.alpha,
        zdim: c.zdim,
        t: c.t.conj(),
        a: c.a.conj(),
        b: c.b.conj(),
    }
}

/// A random valid certificate `T := B·A` from `C^cols` to `C^rows`, with
/// standard complex normal factor entries.
pub fn random_certificate(
    rows: usize,
    cols: usize,
    zdim: usize,
    alpha: Alpha,
    seed: u64,
) -> FactorizationCertificate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_operator(&mut rng, 2 * zdim, cols);
    let b = random_operator(&mut rng, rows, 2 * zdim);
    FactorizationCertificate::from_factors(a, b, alpha).expect("shapes agree by construction")
}

/// A dense operator with i.i.d. standard complex normal entries.
pub fn random_operator(rng: &mut impl Rng, rows: usize, cols: usize) -> DenseOperator {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let data = (0..rows * cols)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex::new(s * re, s * im)
        })
        .collect();
    DenseOperator::new(rows, cols, data).expect("finite samples")
}
