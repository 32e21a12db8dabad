//! Spectrum and semigroup-generation verdicts.
//!
//! For a regular pair the essential spectrum of `-Δ(A,B)` is `[0, ∞)`, the
//! residual spectrum is empty, and `λ = k²` is an eigenvalue exactly when `k`
//! with `Im k > 0` solves `det(A + ikB) = 0`, with geometric multiplicity
//! `dim Ker(A + ikB)`. Generation of a heat semigroup fails precisely for
//! irregular pairs and for the degenerate `(0,1)` class; every generator here
//! yields an analytic semigroup.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boundary::{self, BCPair};
use crate::cayley;
use crate::complex2::{TolerancePolicy, Vec2, C64};
use crate::resolvent::{self, ResolventError};

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("k = {0} is not an eigenvalue parameter (Im k > 0 and det(A+ikB) = 0 required)")]
    NotAnEigenparameter(C64),
    #[error("boundary conditions are not m-sectorial")]
    NotMSectorial,
    #[error(transparent)]
    Resolvent(#[from] ResolventError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EssentialSpectrum {
    /// `[0, ∞)` as a subset of the `-Δ` spectral plane.
    HalfLine,
    /// The whole complex plane (irregular or rank-deficient pairs).
    WholePlane,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ResidualSpectrum {
    Empty,
    Undetermined,
}

/// One eigenvalue record. Conventions are stored explicitly to keep the two
/// sign conventions apart: `lambda_minus_delta = k²` is the eigenvalue of
/// `-Δ`, and `delta_eigenvalue = -k²` the eigenvalue of `Δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenvalue {
    pub k: C64,
    pub lambda_minus_delta: C64,
    pub delta_eigenvalue: C64,
    pub multiplicity: usize,
    pub eigenvectors: Vec<Vec2>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub essential: EssentialSpectrum,
    pub residual: ResidualSpectrum,
    pub eigenvalues: Vec<Eigenvalue>,
}

/// Compute the spectrum decomposition of `-Δ(A,B)`.
pub fn spectrum(bc: &BCPair, tol: &TolerancePolicy) -> SpectrumReport {
    if !boundary::is_regular(bc, tol) {
        return SpectrumReport {
            essential: EssentialSpectrum::WholePlane,
            residual: ResidualSpectrum::Undetermined,
            eigenvalues: Vec::new(),
        };
    }
    let det = cayley::det_poly(bc);
    let mut eigenvalues = Vec::new();
    if let Some(roots) = det.roots_k(tol) {
        for (k, _) in roots {
            if k.im <= 1e-12 * (1.0 + k.norm()) {
                continue;
            }
            let scale = bc.a.operator_norm() + k.norm() * bc.b.operator_norm();
            let eigenvectors = bc.pencil(k).kernel_basis_scaled(scale, tol);
            let multiplicity = eigenvectors.len().max(1);
            eigenvalues.push(Eigenvalue {
                k,
                lambda_minus_delta: k * k,
                delta_eigenvalue: -k * k,
                multiplicity,
                eigenvectors,
            });
        }
    }
    SpectrumReport {
        essential: EssentialSpectrum::HalfLine,
        residual: ResidualSpectrum::Empty,
        eigenvalues,
    }
}

/// Orthonormal basis of `Ker(A + ikB)` for an eigenvalue parameter `k`, i.e.
/// the boundary coefficients of the eigenfunctions `x ↦ α e^{ikx}`.
pub fn eigenfunction_coeffs(
    bc: &BCPair,
    k: C64,
    tol: &TolerancePolicy,
) -> Result<Vec<Vec2>, SpectralError> {
    let det = cayley::det_poly(bc);
    let scale = {
        let s = bc.a.operator_norm() + k.norm() * bc.b.operator_norm();
        (s * s).max(f64::MIN_POSITIVE)
    };
    if k.im <= 0.0 || det.eval(k).norm() > tol.root_abs_tol * scale {
        return Err(SpectralError::NotAnEigenparameter(k));
    }
    let basis = bc
        .pencil(k)
        .kernel_basis_scaled(bc.a.operator_norm() + k.norm() * bc.b.operator_norm(), tol);
    if basis.is_empty() {
        return Err(SpectralError::NotAnEigenparameter(k));
    }
    Ok(basis)
}

/// Why generation fails, when it does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeneratorReason {
    /// Irregular (or rank-deficient) pair: empty resolvent set.
    Irregular,
    /// `dim Ker A = 0`, `dim Ker B = 1`, `P⊥ A^{-1} B P⊥ = 0`: the resolvent
    /// decays too slowly along the positive real axis.
    ZeroOneDegenerate,
    Generates,
}

/// The generation verdict with the auxiliary sufficient-condition flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorVerdict {
    pub generates: bool,
    pub reason: GeneratorReason,
    /// Generators here always extend to analytic semigroups.
    pub analytic: bool,
    /// Sufficient test for a uniformly bounded semigroup: every genuine pole
    /// `s` of `S(k)` or of `S(-conj k)^*` with `Im s > 0` has `Re s > 0`, and
    /// 0 is a pole of neither. `None` for non-generators.
    pub uniformly_bounded_sufficient: Option<bool>,
    /// Whether the pair admits the m-sectorial normal form, which upgrades
    /// the semigroup to a cosine operator function (analytic of angle π/2).
    pub cosine_function: bool,
    /// For m-sectorial pairs: whether the numerical range of `L` lies in the
    /// closed left half-plane, which makes the semigroup contractive.
    pub contractive_sufficient: Option<bool>,
    /// Cosine-function generators are always quasi-contractive.
    pub quasi_contractive: bool,
}

/// Decide semigroup generation and the related sufficient conditions.
pub fn generator_verdict(bc: &BCPair, tol: &TolerancePolicy) -> GeneratorVerdict {
    let cls = boundary::classify(bc, tol);
    if !cls.regular {
        return GeneratorVerdict {
            generates: false,
            reason: GeneratorReason::Irregular,
            analytic: false,
            uniformly_bounded_sufficient: None,
            cosine_function: false,
            contractive_sufficient: None,
            quasi_contractive: false,
        };
    }
    if cls.zero_one_degenerate() {
        return GeneratorVerdict {
            generates: false,
            reason: GeneratorReason::ZeroOneDegenerate,
            analytic: false,
            uniformly_bounded_sufficient: None,
            cosine_function: false,
            contractive_sufficient: None,
            quasi_contractive: false,
        };
    }

    let poles = cayley::poles(bc, tol).expect("regular pairs have a determinant polynomial");
    let mut bounded = true;
    for pole in poles.genuine() {
        // Poles of the reflected-adjoint map mirror across the imaginary
        // axis, so both s and -conj(s) are constrained.
        for s in [pole.k, -pole.k.conj()] {
            if s.im > 1e-12 * (1.0 + s.norm()) && s.re <= 1e-12 * (1.0 + s.norm()) {
                bounded = false;
            }
        }
        if pole.k.norm() <= 1e-9 {
            bounded = false;
        }
    }

    let cosine = cls.msectorial.is_some();
    let contractive = cls
        .msectorial
        .as_ref()
        .map(|form| form.l.max_real_numerical_range() <= 1e-12);

    GeneratorVerdict {
        generates: true,
        reason: GeneratorReason::Generates,
        analytic: true,
        uniformly_bounded_sufficient: Some(bounded),
        cosine_function: cosine,
        contractive_sufficient: contractive,
        quasi_contractive: cosine,
    }
}

/// Largest real part in the `Δ`-spectrum: 0 from the essential part, pushed
/// up by any eigenvalues `-k²`.
pub fn spectral_bound(bc: &BCPair, tol: &TolerancePolicy) -> f64 {
    spectrum(bc, tol)
        .eigenvalues
        .iter()
        .map(|ev| ev.delta_eigenvalue.re)
        .fold(0.0, f64::max)
}

/// Result of probing `‖λ (Δ - λ²)^{-1}‖ ≤ C / (Re λ - ω)` on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParabolaReport {
    pub omega: f64,
    /// Fitted constant: max over the grid of `‖λ R‖ (Re λ - ω)`.
    pub c_fit: f64,
    /// Largest ratio against the fitted bound (1 by construction).
    pub worst_ratio: f64,
    /// Whether the constant is stable as the grid extends to larger `Re λ`.
    pub pass: bool,
    pub samples: Vec<(f64, f64, f64)>,
}

/// Probe the m-sectorial resolvent estimate on a grid of `λ` with
/// `Re λ > ω`. Each probe evaluates `‖(Δ - λ²)^{-1}‖ = ‖(-Δ - k²)^{-1}‖` at
/// `k = iλ` through quadrature lower bounds.
pub fn parabola_check(
    bc: &BCPair,
    lambdas: &[C64],
    omega: Option<f64>,
    tol: &TolerancePolicy,
) -> Result<ParabolaReport, SpectralError> {
    if boundary::classify(bc, tol).msectorial.is_none() {
        return Err(SpectralError::NotMSectorial);
    }
    let sb = spectral_bound(bc, tol);
    let omega = omega.unwrap_or(if sb > 0.0 { sb.sqrt() + 0.5 } else { 0.0 });

    let mut samples = Vec::new();
    for &lambda in lambdas {
        if lambda.re <= omega {
            continue;
        }
        let k = C64::i() * lambda;
        let probe = resolvent::resolvent_norm_probe(bc, k, 4, tol)?;
        let weighted = lambda.norm() * probe.lower_bound * (lambda.re - omega);
        samples.push((lambda.re, lambda.norm() * probe.lower_bound, weighted));
    }
    let c_fit = samples.iter().map(|s| s.2).fold(0.0f64, f64::max);
    // Stability: the weighted values on the outer half of the grid must not
    // outgrow the inner half, otherwise no constant works for this ω.
    let mid = samples.len() / 2;
    let inner = samples[..mid].iter().map(|s| s.2).fold(0.0f64, f64::max);
    let outer = samples[mid..].iter().map(|s| s.2).fold(0.0f64, f64::max);
    let pass = c_fit.is_finite() && outer <= 1.5 * inner.max(1e-12);
    let worst_ratio = if c_fit > 0.0 {
        samples.iter().map(|s| s.2 / c_fit).fold(0.0f64, f64::max)
    } else {
        0.0
    };
    Ok(ParabolaReport {
        omega,
        c_fit,
        worst_ratio,
        pass,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::random_invertible;
    use crate::complex2::{c, Mat2};
    use crate::presets;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn spectrum_robin_bound_state() {
        let bc = presets::example_3_2(C64::ONE, C64::ZERO, &tol());
        let report = spectrum(&bc, &tol());
        assert_eq!(report.essential, EssentialSpectrum::HalfLine);
        assert_eq!(report.residual, ResidualSpectrum::Empty);
        assert_eq!(report.eigenvalues.len(), 1);
        let ev = &report.eigenvalues[0];
        assert!((ev.k - c(0.0, 1.0)).norm() <= 1e-12);
        assert!((ev.lambda_minus_delta + C64::ONE).norm() <= 1e-12);
        assert!((ev.delta_eigenvalue - C64::ONE).norm() <= 1e-12);
        assert_eq!(ev.multiplicity, 1);
    }

    #[test]
    fn spectrum_phase_coupled_is_empty() {
        for tau in [0.0, 0.4, 1.2] {
            let bc = presets::example_3_3(tau, &tol());
            let report = spectrum(&bc, &tol());
            assert!(report.eigenvalues.is_empty(), "tau = {tau}");
        }
    }

    #[test]
    fn spectrum_antidiagonal_coupling() {
        let bc = presets::example_6_6(&tol());
        let report = spectrum(&bc, &tol());
        assert_eq!(report.eigenvalues.len(), 1);
        let ev = &report.eigenvalues[0];
        assert!((ev.k - c(0.0, 1.0)).norm() <= 1e-12);
        assert!((ev.delta_eigenvalue - C64::ONE).norm() <= 1e-12);
        assert_eq!(ev.multiplicity, 1);
    }

    #[test]
    fn spectrum_irregular_is_whole_plane() {
        let bc = presets::example_3_5(&tol());
        let report = spectrum(&bc, &tol());
        assert_eq!(report.essential, EssentialSpectrum::WholePlane);
        assert_eq!(report.residual, ResidualSpectrum::Undetermined);
        assert!(report.eigenvalues.is_empty());
    }

    #[test]
    fn eigenfunction_coeff_examples() {
        // Robin family at k = i: pencil is [[0,0],[0,-1]], kernel (1,0).
        let bc = presets::example_3_2(C64::ONE, C64::ZERO, &tol());
        let basis = eigenfunction_coeffs(&bc, c(0.0, 1.0), &tol()).unwrap();
        assert_eq!(basis.len(), 1);
        assert!((basis[0].e[0].norm() - 1.0).abs() <= 1e-12);
        assert!(basis[0].e[1].norm() <= 1e-12);

        // Scalar pair A = 1, B = 1 at k = i: the pencil vanishes entirely.
        let scalar = BCPair::new(Mat2::identity(), Mat2::identity(), &tol());
        let basis = eigenfunction_coeffs(&scalar, c(0.0, 1.0), &tol()).unwrap();
        assert_eq!(basis.len(), 2);

        // No eigenvalues for the phase-coupled family.
        let ex33 = presets::example_3_3(0.5, &tol());
        assert!(matches!(
            eigenfunction_coeffs(&ex33, c(0.3, 0.8), &tol()),
            Err(SpectralError::NotAnEigenparameter(_))
        ));
    }

    #[test]
    fn eigenvalue_residuals_and_trace_condition() {
        let cases = [
            presets::example_3_2(c(1.0, 0.0), c(0.5, 0.0), &tol()),
            presets::example_3_2(c(0.7, 0.3), c(0.0, -0.4), &tol()),
            presets::example_6_6(&tol()),
        ];
        for bc in cases {
            let det = cayley::det_poly(&bc);
            for ev in spectrum(&bc, &tol()).eigenvalues {
                let scale = {
                    let s = bc.a.operator_norm() + ev.k.norm() * bc.b.operator_norm();
                    s * s
                };
                assert!(det.eval(ev.k).norm() <= 1e-9 * scale);
                for alpha in &ev.eigenvectors {
                    // Aα + ikBα = 0 is the trace condition of α e^{ikx}.
                    let r = bc
                        .a
                        .mul_vec(alpha)
                        .e
                        .iter()
                        .zip(bc.b.mul_vec(alpha).scale(C64::i() * ev.k).e.iter())
                        .map(|(p, q)| (p + q).norm_sqr())
                        .sum::<f64>()
                        .sqrt();
                    assert!(r <= 1e-10 * scale.sqrt().max(1.0));
                }
            }
        }
    }

    #[test]
    fn multiplicity_two_iff_scalar_pair() {
        // A = l·1, B = 1 with Re l > 0 carries the unique double eigenvalue.
        let l = c(0.9, 0.2);
        let bc = BCPair::new(Mat2::diag(l, l), Mat2::identity(), &tol());
        let report = spectrum(&bc, &tol());
        assert_eq!(report.eigenvalues.len(), 1);
        assert_eq!(report.eigenvalues[0].multiplicity, 2);
        let canon = boundary::canonicalize(&bc, &tol()).unwrap();
        // Canonical form is (1, (1/l)·1).
        assert!(canon.a.sub(&Mat2::identity()).operator_norm() <= 1e-12);
        let ratio = canon.b.e[0][0];
        assert!(canon.b.sub(&Mat2::diag(ratio, ratio)).operator_norm() <= 1e-12);
        assert!((C64::ONE / ratio - l).norm() <= 1e-12);

        // Any multiplicity-1 case keeps a nontrivial pencil.
        let simple = presets::example_3_2(C64::ONE, C64::ZERO, &tol());
        for ev in spectrum(&simple, &tol()).eigenvalues {
            assert_eq!(ev.multiplicity, 1);
            assert!(simple.pencil(ev.k).operator_norm() > 1e-6);
        }
    }

    #[test]
    fn verdict_examples() {
        let t = tol();
        // Degenerate (0,1): no generation.
        let v = generator_verdict(&presets::example_3_4(&t), &t);
        assert!(!v.generates);
        assert_eq!(v.reason, GeneratorReason::ZeroOneDegenerate);
        assert!(!v.analytic && !v.cosine_function);

        // Dissipative Robin: cosine function, contractive.
        let v = generator_verdict(&presets::example_3_2(c(-1.0, 0.0), C64::ZERO, &t), &t);
        assert!(v.generates && v.analytic && v.cosine_function && v.quasi_contractive);
        assert_eq!(v.contractive_sufficient, Some(true));
        assert_eq!(v.uniformly_bounded_sufficient, Some(true));

        // The numerical range of L leaves the left half-plane once the
        // off-diagonal coupling is on.
        let v = generator_verdict(&presets::example_3_2(c(-1.0, 0.0), c(2.0, 0.0), &t), &t);
        assert_eq!(v.contractive_sufficient, Some(false));

        // Irregular pair.
        let v = generator_verdict(&presets::example_3_5(&t), &t);
        assert!(!v.generates);
        assert_eq!(v.reason, GeneratorReason::Irregular);

        // Phase-coupled pair: generator without a sectorial form; its only
        // singularity (at 0) is removable, so the bounded test passes.
        let v = generator_verdict(&presets::example_3_3(std::f64::consts::FRAC_PI_4, &t), &t);
        assert!(v.generates && v.analytic);
        assert!(!v.cosine_function && !v.quasi_contractive);
        assert_eq!(v.uniformly_bounded_sufficient, Some(true));
        assert_eq!(v.contractive_sufficient, None);
    }

    #[test]
    fn bounded_sufficient_tracks_pole_half_plane() {
        let t = tol();
        // Re a11 < 0 puts the genuine pole i·a11 in the lower half-plane.
        let v = generator_verdict(&presets::example_3_2(c(-1.0, 0.0), C64::ZERO, &t), &t);
        assert_eq!(v.uniformly_bounded_sufficient, Some(true));
        let poles = cayley::poles(&presets::example_3_2(c(-1.0, 0.0), C64::ZERO, &t), &t).unwrap();
        let genuine: Vec<_> = poles.genuine().collect();
        assert_eq!(genuine.len(), 1);
        assert!((genuine[0].k - c(0.0, -1.0)).norm() <= 1e-12);

        // Re a11 > 0 lifts it onto the positive imaginary axis: the test
        // must fail (there is a growing eigenmode).
        let v = generator_verdict(&presets::example_3_2(c(1.0, 0.0), C64::ZERO, &t), &t);
        assert_eq!(v.uniformly_bounded_sufficient, Some(false));

        // Neumann: only a removable singularity at 0.
        let v = generator_verdict(&presets::neumann(&t), &t);
        assert_eq!(v.uniformly_bounded_sufficient, Some(true));
    }

    #[test]
    fn verdict_is_equivalence_invariant() {
        let t = tol();
        let mut rng = StdRng::seed_from_u64(67);
        let cases = [
            presets::example_3_2(c(1.0, 0.0), c(0.5, 0.0), &t),
            presets::example_3_3(0.8, &t),
            presets::example_3_4(&t),
            presets::example_3_5(&t),
            presets::example_6_6(&t),
        ];
        for bc in cases {
            let v = generator_verdict(&bc, &t);
            for _ in 0..20 {
                let cm = random_invertible(&mut rng, &t);
                let moved = BCPair::new(cm.mul(&bc.a), cm.mul(&bc.b), &t);
                let vm = generator_verdict(&moved, &t);
                assert_eq!(vm.generates, v.generates);
                assert_eq!(vm.reason, v.reason);
                assert_eq!(vm.cosine_function, v.cosine_function);
                assert_eq!(vm.uniformly_bounded_sufficient, v.uniformly_bounded_sufficient);
            }
        }
    }

    #[test]
    fn parabola_check_dirichlet_passes_with_zero_shift() {
        let t = tol();
        let lambdas: Vec<C64> = (0..10)
            .map(|i| c(0.5 + 0.83 * i as f64, 0.0))
            .chain([c(1.0, 0.5), c(3.0, 1.0)])
            .collect();
        let report = parabola_check(&presets::dirichlet(&t), &lambdas, Some(0.0), &t).unwrap();
        assert!(report.pass, "stability check failed: {report:?}");
        assert!(report.c_fit <= 5.0, "c_fit {}", report.c_fit);
        assert!(report.worst_ratio <= 1.0 + 1e-12);
    }

    #[test]
    fn parabola_check_dissipative_robin() {
        let t = tol();
        let bc = presets::example_3_2(c(-1.0, 0.0), C64::ZERO, &t);
        let lambdas: Vec<C64> = (0..8).map(|i| c(0.6 + i as f64, 0.0)).collect();
        let report = parabola_check(&bc, &lambdas, None, &t).unwrap();
        // Spectral bound 0 for the dissipative case: ω defaults to 0.
        assert_eq!(report.omega, 0.0);
        assert!(report.pass);
        let l_norm = bc.a.operator_norm();
        assert!(report.omega <= 1.0 + l_norm);
    }

    #[test]
    fn parabola_check_rejects_nonsectorial() {
        let t = tol();
        assert!(matches!(
            parabola_check(&presets::example_3_4(&t), &[c(1.0, 0.0)], None, &t),
            Err(SpectralError::NotMSectorial)
        ));
    }
}
