//! The Cayley transform `S(k; A, B) = -(A + ikB)^{-1}(A - ikB)`.
//!
//! For a regular pair the transform is a rational matrix function of `k` with
//! at most two singularities, the roots of `det(A + ikB)`. Both the
//! determinant polynomial and the adjugate-product matrix polynomial are
//! quadratic in `w = ik`, so their coefficients are recovered exactly from
//! evaluations at `w ∈ {0, 1, -1}` — no symbolic expansion, no sign traps.

use thiserror::Error;

use crate::boundary::{self, BCPair, CayleyClass};
use crate::complex2::{c, Mat2, TolerancePolicy, C64};
use crate::numutil::loglog_slope;

#[derive(Debug, Error, PartialEq)]
pub enum CayleyError {
    /// `k` is a root of `det(A + ikB)`.
    #[error("k = {0} is a pole of the Cayley transform")]
    AtPole(C64),
    /// `det(A + ikB)` vanishes identically: irregular boundary conditions.
    #[error("det(A + ikB) vanishes identically (irregular boundary conditions)")]
    IdenticallySingular,
}

/// Coefficients of `det(A + ikB) = c0 + c1 (ik) + c2 (ik)^2`.
///
/// By expansion `c0 = det A` and `c2 = det B`; `c1` carries the mixed terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetPoly {
    pub c0: C64,
    pub c1: C64,
    pub c2: C64,
    /// `(‖A‖ + ‖B‖)^2`, the natural magnitude of the coefficients.
    pub scale: f64,
}

impl DetPoly {
    /// Evaluate at the variable `w = ik`.
    pub fn eval_w(&self, w: C64) -> C64 {
        self.c0 + self.c1 * w + self.c2 * w * w
    }

    /// Evaluate `det(A + ikB)` at `k`.
    pub fn eval(&self, k: C64) -> C64 {
        self.eval_w(C64::i() * k)
    }

    /// All coefficients negligible relative to the pair's scale.
    pub fn is_identically_zero(&self, tol: &TolerancePolicy) -> bool {
        let cut = tol.root_abs_tol * self.scale.max(f64::MIN_POSITIVE);
        self.c0.norm() <= cut && self.c1.norm() <= cut && self.c2.norm() <= cut
    }

    /// Roots in the `w = ik` variable, each with its multiplicity. Returns
    /// `None` when the polynomial vanishes identically.
    pub fn roots_w(&self, tol: &TolerancePolicy) -> Option<Vec<(C64, usize)>> {
        if self.is_identically_zero(tol) {
            return None;
        }
        let cut = tol.root_abs_tol * self.scale.max(f64::MIN_POSITIVE);
        if self.c2.norm() > cut {
            let disc = (self.c1 * self.c1 - c(4.0, 0.0) * self.c2 * self.c0).sqrt();
            // Pick the sign that avoids cancellation in -c1 ∓ disc.
            let q = if (self.c1 + disc).norm() >= (self.c1 - disc).norm() {
                -(self.c1 + disc) * c(0.5, 0.0)
            } else {
                -(self.c1 - disc) * c(0.5, 0.0)
            };
            let w1 = q / self.c2;
            let w2 = if q.norm() > 0.0 { self.c0 / q } else { w1 };
            let sep = 1e-7 * w1.norm().max(w2.norm()).max(1.0);
            if (w1 - w2).norm() <= sep {
                Some(vec![((w1 + w2) * c(0.5, 0.0), 2)])
            } else {
                Some(vec![(w1, 1), (w2, 1)])
            }
        } else if self.c1.norm() > cut {
            Some(vec![(-self.c0 / self.c1, 1)])
        } else {
            Some(Vec::new())
        }
    }

    /// Roots as `k`-values (`k = -i w`).
    pub fn roots_k(&self, tol: &TolerancePolicy) -> Option<Vec<(C64, usize)>> {
        self.roots_w(tol).map(|rs| {
            rs.into_iter()
                .map(|(w, m)| (-C64::i() * w, m))
                .collect()
        })
    }
}

/// Determinant polynomial via exact interpolation at `w ∈ {0, ±1}`.
pub fn det_poly(bc: &BCPair) -> DetPoly {
    let at = |w: C64| bc.a.add(&bc.b.scale(w)).det();
    let p0 = at(C64::ZERO);
    let p1 = at(C64::ONE);
    let pm1 = at(-C64::ONE);
    DetPoly {
        c0: p0,
        c1: (p1 - pm1) * c(0.5, 0.0),
        c2: (p1 + pm1) * c(0.5, 0.0) - p0,
        scale: bc.scale() * bc.scale(),
    }
}

/// One singularity of `k ↦ S(k; A, B)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    pub k: C64,
    /// Multiplicity of `k` as a root of the determinant polynomial.
    pub order: usize,
    /// Whether `S` extends holomorphically through the root.
    pub removable: bool,
}

/// The singularities of the transform.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PoleSet {
    pub poles: Vec<Pole>,
    pub identically_singular: bool,
}

impl PoleSet {
    /// Non-removable poles only.
    pub fn genuine(&self) -> impl Iterator<Item = &Pole> {
        self.poles.iter().filter(|p| !p.removable)
    }

    pub fn min_distance(&self, k: C64) -> f64 {
        self.genuine()
            .map(|p| (p.k - k).norm())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Matrix numerator `N(w) = adj(A + wB) (A - wB)` with `w = ik`, so that
/// `S(k) = -N(ik) / det(A + ikB)`. Quadratic in `w`; coefficients recovered
/// exactly from three evaluations.
struct NumeratorPoly {
    n0: Mat2,
    n1: Mat2,
    n2: Mat2,
}

impl NumeratorPoly {
    fn of(bc: &BCPair) -> Self {
        let at = |w: C64| {
            bc.a.add(&bc.b.scale(w))
                .adjugate()
                .mul(&bc.a.sub(&bc.b.scale(w)))
        };
        let p0 = at(C64::ZERO);
        let p1 = at(C64::ONE);
        let pm1 = at(-C64::ONE);
        NumeratorPoly {
            n0: p0,
            n1: p1.sub(&pm1).scale(c(0.5, 0.0)),
            n2: p1.add(&pm1).scale(c(0.5, 0.0)).sub(&p0),
        }
    }

    fn eval(&self, w: C64) -> Mat2 {
        self.n0.add(&self.n1.scale(w)).add(&self.n2.scale(w * w))
    }

    fn eval_derivative(&self, w: C64) -> Mat2 {
        self.n1.add(&self.n2.scale(w * c(2.0, 0.0)))
    }
}

/// Locate the roots of the determinant polynomial and flag each as removable
/// or genuine.
///
/// A simple root `k0` is removable iff `N(ik0) = 0` (the adjugate product
/// cancels the determinant zero); a double root additionally requires
/// `N'(ik0) = 0`. Thresholds are relative to `(‖A‖ + |k0| ‖B‖)^2`.
pub fn poles(bc: &BCPair, tol: &TolerancePolicy) -> Result<PoleSet, CayleyError> {
    let det = det_poly(bc);
    let roots = det
        .roots_k(tol)
        .ok_or(CayleyError::IdenticallySingular)?;
    let numerator = NumeratorPoly::of(bc);
    let na = bc.a.operator_norm();
    let nb = bc.b.operator_norm();
    let poles = roots
        .into_iter()
        .map(|(k, order)| {
            let w = C64::i() * k;
            let local = (na + k.norm() * nb).powi(2).max(f64::MIN_POSITIVE);
            let mut removable = numerator.eval(w).operator_norm() <= 1e-9 * local;
            if order == 2 {
                let dscale = local / k.norm().max(1.0);
                removable = removable
                    && numerator.eval_derivative(w).operator_norm() <= 1e-9 * dscale;
            }
            Pole { k, order, removable }
        })
        .collect();
    Ok(PoleSet {
        poles,
        identically_singular: false,
    })
}

/// The transform evaluated at one admissible `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CayleyEvaluation {
    pub k: C64,
    pub s: Mat2,
    /// Condition number `σ_max/σ_min` of `A + ikB`.
    pub cond: f64,
}

/// Scale of `det(A + ikB)` used for the at-pole test.
fn det_scale(bc: &BCPair, k: C64) -> f64 {
    let s = bc.a.operator_norm() + k.norm() * bc.b.operator_norm();
    (s * s).max(f64::MIN_POSITIVE)
}

/// Evaluate `S(k) = -(A + ikB)^{-1}(A - ikB)`.
pub fn eval(bc: &BCPair, k: C64, tol: &TolerancePolicy) -> Result<CayleyEvaluation, CayleyError> {
    let pencil = bc.pencil(k);
    if pencil.det().norm() <= tol.root_abs_tol * det_scale(bc, k) {
        return Err(CayleyError::AtPole(k));
    }
    let inv = pencil
        .inverse(tol)
        .map_err(|_| CayleyError::AtPole(k))?;
    let anti = bc.a.sub(&bc.b.scale(C64::i() * k));
    let s = inv.mul(&anti).scale(c(-1.0, 0.0));
    let (s1, s2) = pencil.singular_values();
    Ok(CayleyEvaluation {
        k,
        s,
        cond: s1 / s2,
    })
}

/// `S(-conj(k); A, B)^*`, the reflected-adjoint companion whose poles mirror
/// those of `S` across the imaginary axis.
pub fn eval_adjoint_reflected(
    bc: &BCPair,
    k: C64,
    tol: &TolerancePolicy,
) -> Result<Mat2, CayleyError> {
    Ok(eval(bc, -k.conj(), tol)?.s.adjoint())
}

/// Growth class per the pair's classification.
pub fn growth_class(bc: &BCPair, tol: &TolerancePolicy) -> CayleyClass {
    boundary::classify(bc, tol).cayley_class
}

/// Empirical growth exponent: least-squares slope of `log ‖S(k)‖` against
/// `log |k|` over `|k| ∈ {1e2, 1e3, 1e4}` on a ray avoiding the poles.
/// `None` for irregular pairs.
pub fn empirical_growth_exponent(bc: &BCPair, tol: &TolerancePolicy) -> Option<f64> {
    let direction = c(0.6, 0.8);
    let radii = [1e2, 1e3, 1e4];
    let mut norms = Vec::new();
    for &r in &radii {
        let k = direction * r;
        let s = eval(bc, k, tol).ok()?.s;
        norms.push(s.operator_norm().max(f64::MIN_POSITIVE));
    }
    Some(loglog_slope(&radii, &norms))
}
