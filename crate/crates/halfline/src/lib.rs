//! Spectral analysis of the Laplacian with a point interaction coupling two
//! half-lines `[0, ∞) ⊔ [0, ∞)`.
//!
//! The operator acts as the second derivative on each edge; a pair of complex
//! 2×2 matrices `(A, B)` couples the edges through the boundary condition
//! `A ψ(0) + B ψ'(0) = 0` at the junction. Everything in this crate is driven
//! by that pair:
//!
//! * [`boundary`] — validity, regularity and the coarse classification of a
//!   pair, including its m-sectorial canonical form when one exists.
//! * [`cayley`] — the transform `S(k) = -(A + ikB)^{-1}(A - ikB)`, its poles
//!   (with removability flags) and its growth class.
//! * [`spectral`] — eigenvalues, essential spectrum and the semigroup
//!   generation verdict.
//! * [`resolvent`] — the explicit Green's kernel and resolvent application by
//!   panel quadrature, plus resolvent-norm probes.
//! * [`semigroup`] — heat evolution by contour quadrature and the invariance
//!   suite (reality, positivity, sup-norm contraction, asymptotic positivity).
//! * [`oracle`] — an independent finite-difference discretization used to
//!   cross-check eigenvalues, resolvents and evolved states.
//!
//! All types are immutable values and all operations are pure functions, so
//! the API is safe to drive from any number of threads without coordination.

pub mod boundary;
pub mod cayley;
pub mod complex2;
pub mod numutil;
pub mod oracle;
pub mod presets;
pub mod report;
pub mod resolvent;
pub mod semigroup;
pub mod spectral;

pub use complex2::{Mat2, TolerancePolicy, Vec2, C64};
