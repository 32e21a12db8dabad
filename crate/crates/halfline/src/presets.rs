//! Named boundary-condition presets used by the CLI and the test suite.

use serde::{Deserialize, Serialize};

use crate::boundary::BCPair;
use crate::complex2::{c, Mat2, TolerancePolicy, C64};

/// Decoupled Dirichlet conditions `ψ1(0) = ψ2(0) = 0`: `A = 1`, `B = 0`.
pub fn dirichlet(tol: &TolerancePolicy) -> BCPair {
    BCPair::new(Mat2::identity(), Mat2::zero(), tol)
}

/// Decoupled Neumann conditions `ψ1'(0) = ψ2'(0) = 0`: `A = 0`, `B = 1`.
pub fn neumann(tol: &TolerancePolicy) -> BCPair {
    BCPair::new(Mat2::zero(), Mat2::identity(), tol)
}

/// Robin-type family `A = [[a11, 0], [a21, 0]]`, `B = 1`, i.e.
/// `a11 ψ1(0) + ψ1'(0) = 0` and `a21 ψ1(0) + ψ2'(0) = 0`.
pub fn example_3_2(a11: C64, a21: C64, tol: &TolerancePolicy) -> BCPair {
    let a = Mat2::new(a11, C64::ZERO, a21, C64::ZERO);
    BCPair::new(a, Mat2::identity(), tol)
}

/// Phase-coupled family `ψ1(0) = e^{iτ} ψ2(0)`, `ψ1'(0) = -e^{-iτ} ψ2'(0)`
/// for `τ ∈ [0, π/2)`; degenerates to an irregular pair at `τ = π/2`.
pub fn example_3_3(tau: f64, tol: &TolerancePolicy) -> BCPair {
    let eit = C64::new(0.0, tau).exp();
    let emit = C64::new(0.0, -tau).exp();
    let a = Mat2::new(C64::ONE, -eit, C64::ZERO, C64::ZERO);
    let b = Mat2::new(C64::ZERO, C64::ZERO, C64::ONE, emit);
    BCPair::new(a, b, tol)
}

/// Intermediate conditions `ψ1(0) = 0`, `ψ1'(0) = ψ2(0)`: regular but not a
/// semigroup generator.
pub fn example_3_4(tol: &TolerancePolicy) -> BCPair {
    let b = Mat2::new(C64::ZERO, C64::ZERO, c(-1.0, 0.0), C64::ZERO);
    BCPair::new(Mat2::identity(), b, tol)
}

/// Totally degenerate conditions: rank`(A B) = 2` but `det(A + ikB) ≡ 0`.
pub fn example_3_5(tol: &TolerancePolicy) -> BCPair {
    let a = Mat2::new(C64::ONE, C64::ZERO, C64::ZERO, C64::ZERO);
    let b = Mat2::new(C64::ZERO, C64::ZERO, C64::ONE, C64::ZERO);
    BCPair::new(a, b, tol)
}

/// Antidiagonal coupling `A = [[0, -1], [-1, 0]]`, `B = 1`: one simple
/// eigenvalue and an asymptotically positive (but not positive) semigroup.
pub fn example_6_6(tol: &TolerancePolicy) -> BCPair {
    let a = Mat2::new(C64::ZERO, c(-1.0, 0.0), c(-1.0, 0.0), C64::ZERO);
    BCPair::new(a, Mat2::identity(), tol)
}

/// Preset names accepted by the CLI and the FFI layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    Dirichlet,
    Neumann,
    #[serde(rename = "example-3.2")]
    Example32,
    #[serde(rename = "example-3.3")]
    Example33,
    #[serde(rename = "example-3.4")]
    Example34,
    #[serde(rename = "example-3.5")]
    Example35,
    #[serde(rename = "example-6.6")]
    Example66,
}

impl Preset {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "dirichlet" => Preset::Dirichlet,
            "neumann" => Preset::Neumann,
            "example-3.2" => Preset::Example32,
            "example-3.3" => Preset::Example33,
            "example-3.4" => Preset::Example34,
            "example-3.5" => Preset::Example35,
            "example-6.6" => Preset::Example66,
            _ => return None,
        })
    }

    pub const ALL_NAMES: &'static [&'static str] = &[
        "dirichlet",
        "neumann",
        "example-3.2",
        "example-3.3",
        "example-3.4",
        "example-3.5",
        "example-6.6",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Dirichlet => "dirichlet",
            Preset::Neumann => "neumann",
            Preset::Example32 => "example-3.2",
            Preset::Example33 => "example-3.3",
            Preset::Example34 => "example-3.4",
            Preset::Example35 => "example-3.5",
            Preset::Example66 => "example-6.6",
        }
    }
}

/// Parameters consumed by the parametric presets; unused fields are ignored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct PresetParams {
    pub a11: Option<[f64; 2]>,
    pub a21: Option<[f64; 2]>,
    pub tau: Option<f64>,
}

impl PresetParams {
    fn a11(&self) -> C64 {
        let [re, im] = self.a11.unwrap_or([1.0, 0.0]);
        c(re, im)
    }

    fn a21(&self) -> C64 {
        let [re, im] = self.a21.unwrap_or([0.0, 0.0]);
        c(re, im)
    }

    fn tau(&self) -> f64 {
        self.tau.unwrap_or(std::f64::consts::FRAC_PI_4)
    }
}

pub fn build(preset: Preset, params: &PresetParams, tol: &TolerancePolicy) -> BCPair {
    match preset {
        Preset::Dirichlet => dirichlet(tol),
        Preset::Neumann => neumann(tol),
        Preset::Example32 => example_3_2(params.a11(), params.a21(), tol),
        Preset::Example33 => example_3_3(params.tau(), tol),
        Preset::Example34 => example_3_4(tol),
        Preset::Example35 => example_3_5(tol),
        Preset::Example66 => example_6_6(tol),
    }
}
