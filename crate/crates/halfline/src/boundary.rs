//! Boundary-condition pairs `(A, B)` and their classification.
//!
//! A pair is *admissible* when the 2×4 block `(A B)` has rank 2 (two genuine
//! boundary conditions) and *regular* when additionally `Ker A ∩ Ker B = {0}`,
//! which is equivalent to `A + ikB` being invertible for some `k`. The
//! classification records the kernel dimensions of `A` and `B`, the canonical
//! table row they select, the m-sectorial normal form when one exists, and
//! the growth class of the Cayley transform.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex2::{c, ortho_projector, rank24, Mat2, TolerancePolicy, Vec2, C64};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundaryError {
    /// `(A B)` has rank below 2, so there is no canonical representative.
    #[error("the block (A B) is rank deficient")]
    RankDeficient,
}

/// A boundary-condition pair. Construction never fails: pairs violating the
/// rank condition are representable and simply classified as inadmissible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BCPair {
    pub a: Mat2,
    pub b: Mat2,
    rank_ok: bool,
}

impl BCPair {
    pub fn new(a: Mat2, b: Mat2, tol: &TolerancePolicy) -> Self {
        assert!(a.is_finite() && b.is_finite(), "matrix entries must be finite");
        let rank_ok = rank24(&a, &b, tol) == 2;
        Self { a, b, rank_ok }
    }

    pub fn rank_ok(&self) -> bool {
        self.rank_ok
    }

    /// `A + ikB`.
    pub fn pencil(&self, k: C64) -> Mat2 {
        let ik = C64::i() * k;
        self.a.add(&self.b.scale(ik))
    }

    /// Joint scale `‖A‖ + ‖B‖` used for relative thresholds.
    pub fn scale(&self) -> f64 {
        self.a.operator_norm() + self.b.operator_norm()
    }
}

/// Dimension of `Ker A ∩ Ker B`. For two one-dimensional kernels the
/// comparison is an angle test with threshold `1e-10`.
pub fn kernel_intersection_dim(a: &Mat2, b: &Mat2, tol: &TolerancePolicy) -> usize {
    let ka = a.kernel_basis(tol);
    let kb = b.kernel_basis(tol);
    match (ka.len(), kb.len()) {
        (0, _) | (_, 0) => 0,
        (2, n) => n,
        (n, 2) => n,
        (1, 1) => {
            let overlap = ka[0].dot(&kb[0]).norm();
            usize::from(1.0 - overlap <= 1e-10)
        }
        _ => unreachable!(),
    }
}

/// `true` iff the pair is admissible and `Ker A ∩ Ker B = {0}` — equivalently,
/// `det(A + ikB)` is not identically zero in `k`.
pub fn is_regular(bc: &BCPair, tol: &TolerancePolicy) -> bool {
    bc.rank_ok && kernel_intersection_dim(&bc.a, &bc.b, tol) == 0
}

/// Rows of the kernel-dimension classification table. The combinations
/// `(1,2)`, `(2,1)` and `(2,2)` are incompatible with the rank condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableRow {
    /// `dim Ker B = 0` (any `dim Ker A`): equivalent to `B' = 1`.
    KerB0,
    /// `dim Ker A = 0`, `dim Ker B = 2`: equivalent to `A' = 1`, `B' = 0`.
    KerA0KerB2,
    /// `dim Ker A = 0`, `dim Ker B = 1`.
    KerA0KerB1,
    /// `dim Ker A = dim Ker B = 1`.
    KerA1KerB1,
}

/// Growth class of the Cayley transform away from its poles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CayleyClass {
    UniformlyBounded,
    LinearGrowth,
    /// Irregular pair: the transform exists for no `k`.
    Infinite,
}

/// The canonical m-sectorial representative `A' = L + P`, `B' = P⊥` with `P`
/// an orthogonal projector and `L = P⊥ L P⊥`, together with the invertible
/// factor `C` with `CA = L + P`, `CB = P⊥`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MSectorialForm {
    pub p: Mat2,
    pub l: Mat2,
    pub c: Mat2,
}

impl MSectorialForm {
    pub fn p_perp(&self) -> Mat2 {
        Mat2::identity().sub(&self.p)
    }
}

/// Full classification of a pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub rank_ok: bool,
    pub regular: bool,
    pub dim_ker_a: usize,
    pub dim_ker_b: usize,
    /// `None` exactly when the rank condition fails.
    pub table_row: Option<TableRow>,
    pub msectorial: Option<MSectorialForm>,
    pub cayley_class: CayleyClass,
    /// Orthogonal projector onto `Ker B`.
    pub p: Mat2,
    /// Orthogonal projector onto `Ran A`.
    pub q_perp: Mat2,
}

impl Classification {
    pub fn p_perp(&self) -> Mat2 {
        Mat2::identity().sub(&self.p)
    }

    /// The non-generator class: `dim Ker A = 0`, `dim Ker B = 1`,
    /// `P⊥ A^{-1} B P⊥ = 0`.
    pub fn zero_one_degenerate(&self) -> bool {
        self.regular
            && self.table_row == Some(TableRow::KerA0KerB1)
            && self.cayley_class == CayleyClass::LinearGrowth
    }
}

fn projector_onto_kernel(m: &Mat2, tol: &TolerancePolicy) -> Mat2 {
    let basis = m.kernel_basis(tol);
    ortho_projector(&basis).expect("kernel basis is orthonormal by construction")
}

fn projector_onto_range(m: &Mat2, tol: &TolerancePolicy) -> Mat2 {
    // Ran M is the orthogonal complement of Ker M*.
    let coker = m.adjoint().kernel_basis(tol);
    let q = ortho_projector(&coker).expect("kernel basis is orthonormal by construction");
    Mat2::identity().sub(&q)
}

/// The m-sectorial normal form, present exactly for the table rows
/// `KerB0` (`P = 0`, `L = B^{-1}A`, `C = B^{-1}`) and `KerA0KerB2`
/// (`P = 1`, `L = 0`, `C = A^{-1}`).
pub fn msectorial_form(bc: &BCPair, tol: &TolerancePolicy) -> Option<MSectorialForm> {
    let dim_ker_b = 2 - bc.b.rank(tol);
    let dim_ker_a = 2 - bc.a.rank(tol);
    if dim_ker_b == 0 {
        let binv = bc.b.inverse(tol).ok()?;
        Some(MSectorialForm {
            p: Mat2::zero(),
            l: binv.mul(&bc.a),
            c: binv,
        })
    } else if dim_ker_a == 0 && dim_ker_b == 2 {
        let ainv = bc.a.inverse(tol).ok()?;
        Some(MSectorialForm {
            p: Mat2::identity(),
            l: Mat2::zero(),
            c: ainv,
        })
    } else {
        None
    }
}

/// Scalar `P⊥ A^{-1} B P⊥` (a rank-one operator) for the `(0,1)` row, as the
/// coefficient on the unit vector spanning `Ran P⊥`. Returns `None` outside
/// that row.
pub fn zero_one_coupling(bc: &BCPair, tol: &TolerancePolicy) -> Option<C64> {
    let ainv = bc.a.inverse(tol).ok()?;
    let bprime = ainv.mul(&bc.b);
    let kernel = bc.b.kernel_basis(tol);
    if kernel.len() != 1 {
        return None;
    }
    let p1 = kernel[0].orthogonal_complement();
    Some(bprime.mul_vec(&p1).dot(&p1))
}

/// Classify a pair: kernel dimensions, regularity, table row, m-sectorial
/// form, Cayley growth class and the two projectors.
pub fn classify(bc: &BCPair, tol: &TolerancePolicy) -> Classification {
    let dim_ker_a = 2 - bc.a.rank(tol);
    let dim_ker_b = 2 - bc.b.rank(tol);
    let regular = is_regular(bc, tol);
    let p = projector_onto_kernel(&bc.b, tol);
    let q_perp = projector_onto_range(&bc.a, tol);

    let table_row = if bc.rank_ok {
        Some(match (dim_ker_a, dim_ker_b) {
            (_, 0) => TableRow::KerB0,
            (0, 2) => TableRow::KerA0KerB2,
            (0, 1) => TableRow::KerA0KerB1,
            (1, 1) => TableRow::KerA1KerB1,
            other => unreachable!("kernel dims {other:?} violate the rank condition"),
        })
    } else {
        None
    };

    let msectorial = if bc.rank_ok {
        msectorial_form(bc, tol)
    } else {
        None
    };

    let cayley_class = if !regular {
        CayleyClass::Infinite
    } else {
        match table_row {
            Some(TableRow::KerA0KerB1) => {
                let coupling = zero_one_coupling(bc, tol)
                    .expect("the (0,1) row always has the coupling scalar");
                let bprime_norm = bc
                    .a
                    .inverse(tol)
                    .map(|ai| ai.mul(&bc.b).operator_norm())
                    .unwrap_or(1.0);
                if coupling.norm() <= 1e-10 * bprime_norm.max(1e-300) {
                    CayleyClass::LinearGrowth
                } else {
                    CayleyClass::UniformlyBounded
                }
            }
            _ => CayleyClass::UniformlyBounded,
        }
    };

    Classification {
        rank_ok: bc.rank_ok,
        regular,
        dim_ker_a,
        dim_ker_b,
        table_row,
        msectorial,
        cayley_class,
        p,
        q_perp,
    }
}

/// Canonical representative of the equivalence orbit `{(CA, CB)}`: the
/// reduced row echelon form of the 2×4 block with leftmost pivot columns.
/// Rank decisions use singular values; sub-tolerance columns are zeroed so
/// the map is exactly idempotent.
pub fn canonicalize(bc: &BCPair, tol: &TolerancePolicy) -> Result<BCPair, BoundaryError> {
    if !bc.rank_ok {
        return Err(BoundaryError::RankDeficient);
    }
    let cols: Vec<Vec2> = (0..4)
        .map(|j| {
            let m = if j < 2 { &bc.a } else { &bc.b };
            Vec2::new(m.e[0][j % 2], m.e[1][j % 2])
        })
        .collect();
    let scale = cols.iter().map(Vec2::norm).fold(0.0f64, f64::max);
    let j1 = cols
        .iter()
        .position(|v| v.norm() > tol.rank_rel_tol * scale)
        .ok_or(BoundaryError::RankDeficient)?;
    let j2 = (j1 + 1..4)
        .find(|&j| {
            let t = Mat2::new(cols[j1].e[0], cols[j].e[0], cols[j1].e[1], cols[j].e[1]);
            let (s1, s2) = t.singular_values();
            s2 > tol.rank_rel_tol * s1
        })
        .ok_or(BoundaryError::RankDeficient)?;

    let t = Mat2::new(cols[j1].e[0], cols[j2].e[0], cols[j1].e[1], cols[j2].e[1]);
    let tinv = t.inverse(tol).map_err(|_| BoundaryError::RankDeficient)?;

    let mut new_cols = [Vec2::zero(); 4];
    for (j, col) in cols.iter().enumerate() {
        let v = tinv.mul_vec(col);
        new_cols[j] = if v.norm() <= tol.rank_rel_tol {
            Vec2::zero()
        } else {
            v
        };
    }
    new_cols[j1] = Vec2::new(C64::ONE, C64::ZERO);
    new_cols[j2] = Vec2::new(C64::ZERO, C64::ONE);

    let pick = |j: usize| (new_cols[j].e[0], new_cols[j].e[1]);
    let (a11, a21) = pick(0);
    let (a12, a22) = pick(1);
    let (b11, b21) = pick(2);
    let (b12, b22) = pick(3);
    Ok(BCPair::new(
        Mat2::new(a11, a12, a21, a22),
        Mat2::new(b11, b12, b21, b22),
        tol,
    ))
}

/// Scalar `<p2, B' p1>` of the normalized pair `A' = 1`, `B' = A^{-1}B` in the
/// orthonormal basis `p1 ∈ (Ker B)⊥`, `p2 ∈ Ker B`. This is the coupling
/// coefficient that drives the `O(|k|)` growth in the degenerate `(0,1)` row.
pub fn degenerate_coupling_p2_b_p1(bc: &BCPair, tol: &TolerancePolicy) -> Option<C64> {
    let ainv = bc.a.inverse(tol).ok()?;
    let bprime = ainv.mul(&bc.b);
    let kernel = bc.b.kernel_basis(tol);
    if kernel.len() != 1 {
        return None;
    }
    let p2 = kernel[0];
    let p1 = p2.orthogonal_complement();
    Some(bprime.mul_vec(&p1).dot(&p2))
}

pub fn random_invertible(rng: &mut impl rand::Rng, _tol: &TolerancePolicy) -> Mat2 {
    loop {
        let mut g = || c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let m = Mat2::new(g(), g(), g(), g());
        let (s1, s2) = m.singular_values();
        if s2 > 0.1 * s1 && s1 > 0.2 {
            return m;
        }
    }
}
