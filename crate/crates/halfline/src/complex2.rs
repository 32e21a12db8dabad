//! Closed-form 2×2 complex linear algebra.
//!
//! The two-half-line geometry fixes the boundary space to `C^2`, so every
//! decomposition here (determinant, inverse, SVD, Hermitian eigenvalues) is
//! written out in closed form instead of calling an iterative solver. That
//! keeps rank and kernel decisions deterministic and easy to test.

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Double-precision complex scalar used throughout the crate.
pub type C64 = Complex<f64>;

/// Shorthand for a real complex constant.
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Complex2Error {
    /// The matrix is singular relative to the rank tolerance.
    #[error("matrix is numerically singular")]
    Singular,
    /// `ortho_projector` was handed vectors that are not orthonormal.
    #[error("input vectors are not orthonormal")]
    NonOrthonormalInput,
}

/// Tolerances that govern all discrete decisions (rank, root residuals).
///
/// `rank_rel_tol` is a relative singular-value cutoff; `root_abs_tol` bounds
/// the determinant residual accepted when matching polynomial roots. Both
/// must be strictly positive and below `1e-6`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub rank_rel_tol: f64,
    pub root_abs_tol: f64,
}

impl TolerancePolicy {
    pub fn new(rank_rel_tol: f64, root_abs_tol: f64) -> Option<Self> {
        let ok = |t: f64| t > 0.0 && t < 1e-6;
        if ok(rank_rel_tol) && ok(root_abs_tol) {
            Some(Self {
                rank_rel_tol,
                root_abs_tol,
            })
        } else {
            None
        }
    }

    pub fn strict() -> Self {
        Self {
            rank_rel_tol: 1e-12,
            root_abs_tol: 1e-11,
        }
    }

    pub fn loose() -> Self {
        Self {
            rank_rel_tol: 1e-8,
            root_abs_tol: 1e-7,
        }
    }
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            rank_rel_tol: 1e-10,
            root_abs_tol: 1e-9,
        }
    }
}

/// A vector in the boundary space `C^2` (traces `ψ(0)`, `ψ'(0)`, eigenvector
/// coefficients).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2 {
    pub e: [C64; 2],
}

impl Vec2 {
    pub fn new(a: C64, b: C64) -> Self {
        Self { e: [a, b] }
    }

    pub fn zero() -> Self {
        Self::new(C64::ZERO, C64::ZERO)
    }

    pub fn is_finite(&self) -> bool {
        self.e.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Hermitian inner product `<self, other> = Σ self_i conj(other_i)`.
    pub fn dot(&self, other: &Vec2) -> C64 {
        self.e[0] * other.e[0].conj() + self.e[1] * other.e[1].conj()
    }

    pub fn norm(&self) -> f64 {
        (self.e[0].norm_sqr() + self.e[1].norm_sqr()).sqrt()
    }

    pub fn scale(&self, s: C64) -> Vec2 {
        Vec2::new(self.e[0] * s, self.e[1] * s)
    }

    pub fn sub(&self, other: &Vec2) -> Vec2 {
        Vec2::new(self.e[0] - other.e[0], self.e[1] - other.e[1])
    }

    pub fn normalized(&self) -> Vec2 {
        let n = self.norm();
        self.scale(c(1.0 / n, 0.0))
    }

    /// Unit vector orthogonal to `self` (assumed nonzero).
    pub fn orthogonal_complement(&self) -> Vec2 {
        Vec2::new(-self.e[1].conj(), self.e[0].conj()).normalized()
    }
}

/// A 2×2 complex matrix; row-major entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub e: [[C64; 2]; 2],
}

impl Mat2 {
    pub fn new(a11: C64, a12: C64, a21: C64, a22: C64) -> Self {
        Self {
            e: [[a11, a12], [a21, a22]],
        }
    }

    pub fn zero() -> Self {
        Self::new(C64::ZERO, C64::ZERO, C64::ZERO, C64::ZERO)
    }

    pub fn identity() -> Self {
        Self::new(C64::ONE, C64::ZERO, C64::ZERO, C64::ONE)
    }

    pub fn diag(a: C64, b: C64) -> Self {
        Self::new(a, C64::ZERO, C64::ZERO, b)
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        Self::new(
            c(m[0][0], 0.0),
            c(m[0][1], 0.0),
            c(m[1][0], 0.0),
            c(m[1][1], 0.0),
        )
    }

    pub fn is_finite(&self) -> bool {
        self.e
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn det(&self) -> C64 {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.e[0][0] + self.e[1][1]
    }

    pub fn adjoint(&self) -> Mat2 {
        Mat2::new(
            self.e[0][0].conj(),
            self.e[1][0].conj(),
            self.e[0][1].conj(),
            self.e[1][1].conj(),
        )
    }

    /// Adjugate, so that `M * adj(M) = det(M) * I` exactly.
    pub fn adjugate(&self) -> Mat2 {
        Mat2::new(self.e[1][1], -self.e[0][1], -self.e[1][0], self.e[0][0])
    }

    pub fn scale(&self, s: C64) -> Mat2 {
        let mut out = *self;
        for row in &mut out.e {
            for v in row {
                *v *= s;
            }
        }
        out
    }

    pub fn add(&self, other: &Mat2) -> Mat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] += other.e[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &Mat2) -> Mat2 {
        self.add(&other.scale(c(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = self.e[i][0] * other.e[0][j] + self.e[i][1] * other.e[1][j];
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &Vec2) -> Vec2 {
        Vec2::new(
            self.e[0][0] * v.e[0] + self.e[0][1] * v.e[1],
            self.e[1][0] * v.e[0] + self.e[1][1] * v.e[1],
        )
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Singular values in descending order. The large one comes from the top
    /// eigenvalue of `M* M`; the small one uses `σ1 σ2 = |det M|`, which
    /// avoids the half-precision floor of the subtracted Gram eigenvalue and
    /// keeps rank decisions sharp down to the `1e-10` tolerance.
    pub fn singular_values(&self) -> (f64, f64) {
        let h = self.adjoint().mul(self);
        let (l1, _) = hermitian_eigenvalues(&h);
        let s1 = l1.max(0.0).sqrt();
        if s1 == 0.0 {
            return (0.0, 0.0);
        }
        let s2 = (self.det().norm() / s1).min(s1);
        (s1, s2)
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        self.singular_values().0
    }

    /// `(M + M*) / 2`.
    pub fn hermitian_part(&self) -> Mat2 {
        self.add(&self.adjoint()).scale(c(0.5, 0.0))
    }

    /// `max Re <Mx, x>` over unit vectors: the top eigenvalue of the
    /// Hermitian part.
    pub fn max_real_numerical_range(&self) -> f64 {
        hermitian_eigenvalues(&self.hermitian_part()).0
    }

    /// Inverse, failing when the smaller singular value drops below
    /// `rank_rel_tol` times the larger.
    pub fn inverse(&self, tol: &TolerancePolicy) -> Result<Mat2, Complex2Error> {
        let (s1, s2) = self.singular_values();
        if s1 == 0.0 || s2 <= tol.rank_rel_tol * s1 {
            return Err(Complex2Error::Singular);
        }
        let d = self.det();
        Ok(self.adjugate().scale(C64::ONE / d))
    }

    /// Numerical rank: the number of singular values above
    /// `rank_rel_tol * σ_max`. The zero matrix has rank 0.
    pub fn rank(&self, tol: &TolerancePolicy) -> usize {
        let (s1, s2) = self.singular_values();
        if s1 == 0.0 {
            return 0;
        }
        let cut = tol.rank_rel_tol * s1;
        // s1 > 0 survives its own cutoff by construction.
        1 + usize::from(s2 > cut)
    }

    /// Orthonormal basis of the numerical null space; its length is
    /// `2 - rank`.
    pub fn kernel_basis(&self, tol: &TolerancePolicy) -> Vec<Vec2> {
        let (s1, _) = self.singular_values();
        self.kernel_basis_scaled(s1, tol)
    }

    /// Null-space basis with singular values measured against an external
    /// `scale` instead of the matrix's own largest singular value. At a
    /// determinant root the pencil `A + ikB` collapses to rounding noise, so
    /// only the problem scale `‖A‖ + |k| ‖B‖` gives a meaningful cutoff.
    pub fn kernel_basis_scaled(&self, scale: f64, tol: &TolerancePolicy) -> Vec<Vec2> {
        let (s1, s2) = self.singular_values();
        let cut = tol.rank_rel_tol * scale.max(f64::MIN_POSITIVE);
        if s1 <= cut {
            vec![
                Vec2::new(C64::ONE, C64::ZERO),
                Vec2::new(C64::ZERO, C64::ONE),
            ]
        } else if s2 <= cut {
            let h = self.adjoint().mul(self);
            vec![hermitian_eigenvector(&h, s2 * s2)]
        } else {
            Vec::new()
        }
    }
}

/// Eigenvalues of a Hermitian 2×2 matrix, descending. Only the Hermitian
/// part of the input is consulted.
fn hermitian_eigenvalues(h: &Mat2) -> (f64, f64) {
    let a = h.e[0][0].re;
    let d = h.e[1][1].re;
    let b = (h.e[0][1] + h.e[1][0].conj()).scale(0.5);
    let mean = 0.5 * (a + d);
    let disc = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    (mean + disc, mean - disc)
}

/// Unit eigenvector of a Hermitian matrix for the given eigenvalue. Picks the
/// better-conditioned of the two closed-form expressions.
fn hermitian_eigenvector(h: &Mat2, lambda: f64) -> Vec2 {
    let a = h.e[0][0].re;
    let d = h.e[1][1].re;
    let b = h.e[0][1];
    let v1 = Vec2::new(-b, c(a - lambda, 0.0));
    let v2 = Vec2::new(c(lambda - d, 0.0), b.conj());
    let pick = if v1.norm() >= v2.norm() { v1 } else { v2 };
    if pick.norm() == 0.0 {
        // H is a multiple of the identity; any unit vector works.
        return Vec2::new(C64::ONE, C64::ZERO);
    }
    pick.normalized()
}

/// Rank of the 2×4 block matrix `(A B)`, using that `(A B)(A B)* = AA* + BB*`
/// shares its nonzero singular values with the block itself. The Gram
/// determinant is expanded by Cauchy–Binet into a sum of squared 2×2 minors,
/// which is free of cancellation and keeps the small singular value accurate.
pub fn rank24(a: &Mat2, b: &Mat2, tol: &TolerancePolicy) -> usize {
    let gram = a.mul(&a.adjoint()).add(&b.mul(&b.adjoint()));
    let (l1, _) = hermitian_eigenvalues(&gram);
    let s1 = l1.max(0.0).sqrt();
    if s1 == 0.0 {
        return 0;
    }
    let cols: Vec<Vec2> = (0..4)
        .map(|j| {
            let m = if j < 2 { a } else { b };
            Vec2::new(m.e[0][j % 2], m.e[1][j % 2])
        })
        .collect();
    let mut gram_det = 0.0f64;
    for i in 0..4 {
        for j in (i + 1)..4 {
            gram_det += (cols[i].e[0] * cols[j].e[1] - cols[i].e[1] * cols[j].e[0]).norm_sqr();
        }
    }
    let s2 = (gram_det.max(0.0) / l1.max(f64::MIN_POSITIVE)).sqrt().min(s1);
    1 + usize::from(s2 > tol.rank_rel_tol * s1)
}

/// Orthogonal projector onto the span of an orthonormal family.
pub fn ortho_projector(vs: &[Vec2]) -> Result<Mat2, Complex2Error> {
    for (i, u) in vs.iter().enumerate() {
        for (j, v) in vs.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            if (u.dot(v) - c(want, 0.0)).norm() > 1e-10 {
                return Err(Complex2Error::NonOrthonormalInput);
            }
        }
    }
    let mut p = Mat2::zero();
    for v in vs {
        for i in 0..2 {
            for j in 0..2 {
                p.e[i][j] += v.e[i] * v.e[j].conj();
            }
        }
    }
    Ok(p)
}
