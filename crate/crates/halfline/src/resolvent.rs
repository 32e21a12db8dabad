//! The explicit resolvent kernel of `(-Δ(A,B) - k²)^{-1}` and its
//! application by quadrature.
//!
//! For `Im k > 0` off the poles of the Cayley transform, the resolvent is an
//! integral operator with kernel
//!
//! ```text
//! r(x, y; k) = (i/2k) { δ_edges e^{ik|x-y|} + e^{ikx} S(k) e^{iky} }
//! ```
//!
//! Functions live on two truncated half-lines sampled by composite 16-point
//! Gauss–Legendre panels. Applying the kernel costs `O(n)`: the boundary term
//! is rank one per edge pair, and the `|x-y|` convolution splits into prefix
//! and suffix sums whose recursions only ever multiply by decaying
//! exponentials. The kink at `y = x` is honored by re-integrating the two
//! sub-panels against the panel's polynomial interpolant.


use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boundary::{self, BCPair};
use crate::cayley::{self, CayleyError};
use crate::complex2::{c, Mat2, TolerancePolicy, Vec2, C64};
use crate::numutil::dist_to_nonneg_ray;

/// Truncation admissibility threshold: `e^{-Im k · x_max}` must not exceed
/// this.
pub const TRUNCATION_EPS: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum ResolventError {
    #[error("resolvent kernel requires Im k > 0, got k = {0}")]
    LowerHalfPlane(C64),
    #[error("k = {0} is a pole of the Cayley transform")]
    AtPole(C64),
    #[error("det(A + ikB) vanishes identically (irregular boundary conditions)")]
    IdenticallySingular,
    #[error("grid reaches x_max = {x_max} but Im k = {im_k} needs x_max ≥ {needed}")]
    TruncationTooShort { x_max: f64, im_k: f64, needed: f64 },
    #[error("boundary conditions are not in the degenerate (0,1) class")]
    WrongClass,
}

impl From<CayleyError> for ResolventError {
    fn from(e: CayleyError) -> Self {
        match e {
            CayleyError::AtPole(k) => ResolventError::AtPole(k),
            CayleyError::IdenticallySingular => ResolventError::IdenticallySingular,
        }
    }
}

/// One of the two half-line edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Edge {
    One,
    Two,
}

impl Edge {
    pub fn index(self) -> usize {
        match self {
            Edge::One => 0,
            Edge::Two => 1,
        }
    }

    pub const BOTH: [Edge; 2] = [Edge::One, Edge::Two];
}

/// A point on the glued half-lines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgePoint {
    pub edge: Edge,
    pub x: f64,
}

impl EdgePoint {
    pub fn new(edge: Edge, x: f64) -> Self {
        assert!(x.is_finite() && x >= 0.0, "positions live on [0, ∞)");
        Self { edge, x }
    }
}

/// The full 2×2 kernel at one pair of positions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub k: C64,
    /// Entry `(i, j)`: kernel between edge `i` at `x` and edge `j` at `y`.
    pub entries: Mat2,
}

// 16-point Gauss–Legendre rule on [-1, 1].
const GL_NODES: [f64; 8] = [
    0.0950125098376374401853193,
    0.2816035507792589132304605,
    0.4580167776572273863424194,
    0.6178762444026437484466718,
    0.7554044083550030338951012,
    0.8656312023878317438804679,
    0.9445750230732325760779884,
    0.9894009349916499325961542,
];
const GL_WEIGHTS: [f64; 8] = [
    0.1894506104550684962853967,
    0.1826034150449235888667637,
    0.1691565193950025381893121,
    0.1495959888165767320815017,
    0.1246289712555338720524763,
    0.0951585116824927848099251,
    0.0622535239386478928628438,
    0.0271524594117540948517806,
];

pub const PANEL_ORDER: usize = 16;

fn gl16() -> ([f64; 16], [f64; 16]) {
    let mut nodes = [0.0; 16];
    let mut weights = [0.0; 16];
    for i in 0..8 {
        nodes[i] = -GL_NODES[7 - i];
        nodes[15 - i] = GL_NODES[7 - i];
        weights[i] = GL_WEIGHTS[7 - i];
        weights[15 - i] = GL_WEIGHTS[7 - i];
    }
    (nodes, weights)
}

/// Barycentric weights for the 16 reference nodes (scale-free).
fn barycentric_weights(nodes: &[f64; 16]) -> [f64; 16] {
    let mut w = [1.0f64; 16];
    for j in 0..16 {
        for m in 0..16 {
            if m != j {
                w[j] /= nodes[j] - nodes[m];
            }
        }
    }
    let norm = w[0].abs();
    for v in &mut w {
        *v /= norm;
    }
    w
}

struct Reference {
    nodes: [f64; 16],
    weights: [f64; 16],
    bary: [f64; 16],
}

fn reference() -> &'static Reference {
    use std::sync::OnceLock;
    static REF: OnceLock<Reference> = OnceLock::new();
    REF.get_or_init(|| {
        let (nodes, weights) = gl16();
        let bary = barycentric_weights(&nodes);
        Reference {
            nodes,
            weights,
            bary,
        }
    })
}

/// A complex function sampled on both edges over `[0, x_max]` with a shared
/// composite Gauss–Legendre panel structure.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub x_max: f64,
    pub panel_width: f64,
    pub n_panels: usize,
    /// Panel-major node positions, strictly increasing.
    pub nodes: Vec<f64>,
    /// Quadrature weights matching `nodes`.
    pub weights: Vec<f64>,
    /// Sample values per edge.
    pub values: [Vec<C64>; 2],
}

impl GridFunction {
    /// Sample two profiles on a grid of `ceil(x_max / width)` panels.
    pub fn sample(
        x_max: f64,
        width: f64,
        f1: impl Fn(f64) -> C64,
        f2: impl Fn(f64) -> C64,
    ) -> Self {
        assert!(x_max > 0.0 && width > 0.0);
        let n_panels = (x_max / width).ceil().max(1.0) as usize;
        let w = x_max / n_panels as f64;
        let r = reference();
        let mut nodes = Vec::with_capacity(n_panels * PANEL_ORDER);
        let mut weights = Vec::with_capacity(n_panels * PANEL_ORDER);
        for p in 0..n_panels {
            let a = p as f64 * w;
            for j in 0..PANEL_ORDER {
                nodes.push(a + 0.5 * w * (r.nodes[j] + 1.0));
                weights.push(0.5 * w * r.weights[j]);
            }
        }
        let v1 = nodes.iter().map(|&x| f1(x)).collect();
        let v2 = nodes.iter().map(|&x| f2(x)).collect();
        Self {
            x_max,
            panel_width: w,
            n_panels,
            nodes,
            weights,
            values: [v1, v2],
        }
    }

    pub fn zeros_like(other: &GridFunction) -> Self {
        let n = other.nodes.len();
        Self {
            values: [vec![C64::ZERO; n], vec![C64::ZERO; n]],
            nodes: other.nodes.clone(),
            weights: other.weights.clone(),
            ..*other
        }
    }

    pub fn l2_norm(&self) -> f64 {
        let mut acc = 0.0;
        for e in 0..2 {
            for (v, w) in self.values[e].iter().zip(&self.weights) {
                acc += w * v.norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .map(|v| v.im.abs())
            .fold(0.0, f64::max)
    }

    /// Total integral over both edges.
    pub fn mass(&self) -> C64 {
        let mut acc = C64::ZERO;
        for e in 0..2 {
            for (v, w) in self.values[e].iter().zip(&self.weights) {
                acc += v * w;
            }
        }
        acc
    }

    /// `L²` norm of the negative part of the real part.
    pub fn negative_part_norm(&self) -> f64 {
        let mut acc = 0.0;
        for e in 0..2 {
            for (v, w) in self.values[e].iter().zip(&self.weights) {
                let neg = (-v.re).max(0.0);
                acc += w * neg * neg;
            }
        }
        acc.sqrt()
    }

    pub fn scale(&mut self, s: C64) {
        for e in 0..2 {
            for v in &mut self.values[e] {
                *v *= s;
            }
        }
    }

    /// `self += s * other` (grids must match).
    pub fn add_scaled(&mut self, s: C64, other: &GridFunction) {
        assert_eq!(self.nodes.len(), other.nodes.len());
        for e in 0..2 {
            for (v, o) in self.values[e].iter_mut().zip(&other.values[e]) {
                *v += s * o;
            }
        }
    }

    pub fn sub(&self, other: &GridFunction) -> GridFunction {
        let mut out = self.clone();
        out.add_scaled(c(-1.0, 0.0), other);
        out
    }

    fn panel_of(&self, x: f64) -> usize {
        ((x / self.panel_width) as usize).min(self.n_panels - 1)
    }

    fn panel_values(&self, edge: usize, p: usize) -> &[C64] {
        &self.values[edge][p * PANEL_ORDER..(p + 1) * PANEL_ORDER]
    }

    /// Evaluate by barycentric interpolation on the containing panel.
    pub fn eval_at(&self, edge: Edge, x: f64) -> C64 {
        assert!((0.0..=self.x_max + 1e-12).contains(&x));
        let p = self.panel_of(x);
        let a = p as f64 * self.panel_width;
        let xi = 2.0 * (x - a) / self.panel_width - 1.0;
        interpolate(xi, self.panel_values(edge.index(), p))
    }
}

/// Barycentric interpolation at reference coordinate `xi ∈ [-1, 1]`.
fn interpolate(xi: f64, values: &[C64]) -> C64 {
    let r = reference();
    let mut num = C64::ZERO;
    let mut den = 0.0;
    for j in 0..PANEL_ORDER {
        let d = xi - r.nodes[j];
        if d.abs() < 1e-14 {
            return values[j];
        }
        let t = r.bary[j] / d;
        num += values[j] * t;
        den += t;
    }
    num / den
}

/// Pointwise kernel entry between `x` and `y`.
pub fn kernel(
    bc: &BCPair,
    x: EdgePoint,
    y: EdgePoint,
    k: C64,
    tol: &TolerancePolicy,
) -> Result<C64, ResolventError> {
    let entries = kernel_matrix(bc, x.x, y.x, k, tol)?.entries;
    Ok(entries.e[x.edge.index()][y.edge.index()])
}

/// All four kernel entries at positions `x` (output) and `y` (source).
pub fn kernel_matrix(
    bc: &BCPair,
    x: f64,
    y: f64,
    k: C64,
    tol: &TolerancePolicy,
) -> Result<KernelValue, ResolventError> {
    let s = checked_transform(bc, k, tol)?;
    Ok(kernel_matrix_with(&s, x, y, k))
}

/// Kernel entries built from the reflected-adjoint transform `S(-conj k)^*`,
/// i.e. the kernel of the adjoint resolvent.
pub fn kernel_matrix_adjoint(
    bc: &BCPair,
    x: f64,
    y: f64,
    k: C64,
    tol: &TolerancePolicy,
) -> Result<KernelValue, ResolventError> {
    if k.im <= 0.0 {
        return Err(ResolventError::LowerHalfPlane(k));
    }
    let s = cayley::eval_adjoint_reflected(bc, k, tol)?;
    Ok(kernel_matrix_with(&s, x, y, k))
}

fn kernel_matrix_with(s: &Mat2, x: f64, y: f64, k: C64) -> KernelValue {
    let ik = C64::i() * k;
    let pre = C64::i() / (k * c(2.0, 0.0));
    let free = (ik * (x - y).abs()).exp();
    let ex = (ik * x).exp();
    let ey = (ik * y).exp();
    let mut entries = Mat2::zero();
    for i in 0..2 {
        for j in 0..2 {
            let diag = if i == j { free } else { C64::ZERO };
            entries.e[i][j] = pre * (diag + ex * s.e[i][j] * ey);
        }
    }
    KernelValue { k, entries }
}

fn checked_transform(bc: &BCPair, k: C64, tol: &TolerancePolicy) -> Result<Mat2, ResolventError> {
    if k.im <= 0.0 {
        return Err(ResolventError::LowerHalfPlane(k));
    }
    Ok(cayley::eval(bc, k, tol)?.s)
}

/// A prepared application of the resolvent to a fixed grid function at a
/// fixed `k`; evaluation at arbitrary points is then `O(panel order)`.
pub struct ResolventApplication<'a> {
    f: &'a GridFunction,
    k: C64,
    pre: C64,
    s_moment: [C64; 2],
    /// Prefix sums `W_q` and suffix sums `V_q` per edge and panel.
    prefix: [Vec<C64>; 2],
    suffix: [Vec<C64>; 2],
}

impl<'a> ResolventApplication<'a> {
    pub fn new(
        bc: &BCPair,
        f: &'a GridFunction,
        k: C64,
        tol: &TolerancePolicy,
    ) -> Result<Self, ResolventError> {
        let s = checked_transform(bc, k, tol)?;
        let decay = (-k.im * f.x_max).exp();
        if decay > TRUNCATION_EPS {
            return Err(ResolventError::TruncationTooShort {
                x_max: f.x_max,
                im_k: k.im,
                needed: -TRUNCATION_EPS.ln() / k.im,
            });
        }
        let ik = C64::i() * k;
        let w = f.panel_width;
        let step = (ik * w).exp();
        let r = reference();

        let mut moments = [C64::ZERO; 2];
        let mut prefix: [Vec<C64>; 2] = [Vec::new(), Vec::new()];
        let mut suffix: [Vec<C64>; 2] = [Vec::new(), Vec::new()];

        for e in 0..2 {
            let mut j_minus = vec![C64::ZERO; f.n_panels];
            let mut j_plus = vec![C64::ZERO; f.n_panels];
            for p in 0..f.n_panels {
                let a = p as f64 * w;
                let b = a + w;
                let vals = f.panel_values(e, p);
                let mut jm = C64::ZERO;
                let mut jp = C64::ZERO;
                for (j, v) in vals.iter().enumerate() {
                    let y = a + 0.5 * w * (r.nodes[j] + 1.0);
                    let wq = 0.5 * w * r.weights[j];
                    jm += v * (ik * (b - y)).exp() * wq;
                    jp += v * (ik * (y - a)).exp() * wq;
                }
                j_minus[p] = jm;
                j_plus[p] = jp;
            }
            // W_0 = 0, W_{q+1} = e^{ikw} W_q + J⁻_q.
            let mut wq = vec![C64::ZERO; f.n_panels + 1];
            for q in 0..f.n_panels {
                wq[q + 1] = step * wq[q] + j_minus[q];
            }
            // V_{last} = 0, V_q = e^{ikw} V_{q+1} + J⁺_{q+1}.
            let mut vq = vec![C64::ZERO; f.n_panels];
            for q in (0..f.n_panels.saturating_sub(1)).rev() {
                vq[q] = step * vq[q + 1] + j_plus[q + 1];
            }
            // m_e = Σ_p e^{ik a_p} J⁺_p; all factors decay with p.
            let mut m = C64::ZERO;
            for p in 0..f.n_panels {
                m += (ik * (p as f64 * w)).exp() * j_plus[p];
            }
            moments[e] = m;
            prefix[e] = wq;
            suffix[e] = vq;
        }

        let s_moment = [
            s.e[0][0] * moments[0] + s.e[0][1] * moments[1],
            s.e[1][0] * moments[0] + s.e[1][1] * moments[1],
        ];

        Ok(Self {
            f,
            k,
            pre: C64::i() / (k * c(2.0, 0.0)),
            s_moment,
            prefix,
            suffix,
        })
    }

    /// Gauss quadrature of `e^{ik·sign·(y-x)} f̃(y)` over `[lo, hi] ⊆` panel
    /// `p`; the exponent argument stays within one panel so it never grows.
    fn partial(&self, edge: usize, p: usize, lo: f64, hi: f64, x: f64, sign: f64) -> C64 {
        if hi - lo <= 0.0 {
            return C64::ZERO;
        }
        let r = reference();
        let ik = C64::i() * self.k;
        let w = self.f.panel_width;
        let a = p as f64 * w;
        let vals = self.f.panel_values(edge, p);
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = C64::ZERO;
        for j in 0..PANEL_ORDER {
            let y = mid + half * r.nodes[j];
            let xi = 2.0 * (y - a) / w - 1.0;
            let fy = interpolate(xi, vals);
            acc += fy * (ik * (sign * (y - x))).exp() * (half * r.weights[j]);
        }
        acc
    }

    /// Evaluate the resolvent image at `x` on the given edge.
    pub fn eval(&self, edge: Edge, x: f64) -> C64 {
        let e = edge.index();
        let w = self.f.panel_width;
        let q = self.f.panel_of(x);
        let a = q as f64 * w;
        let b = a + w;
        let ik = C64::i() * self.k;

        // Free-line convolution on the same edge, split at y = x.
        let f_minus = (ik * (x - a)).exp() * self.prefix[e][q] + self.partial(e, q, a, x, x, -1.0);
        let f_plus = self.partial(e, q, x, b, x, 1.0) + (ik * (b - x)).exp() * self.suffix[e][q];

        // Rank-one boundary correction.
        let boundary = (ik * x).exp() * self.s_moment[e];

        self.pre * (f_minus + f_plus + boundary)
    }
}

/// Apply the resolvent and return the image sampled on the input grid.
pub fn apply_resolvent(
    bc: &BCPair,
    f: &GridFunction,
    k: C64,
    tol: &TolerancePolicy,
) -> Result<GridFunction, ResolventError> {
    let app = ResolventApplication::new(bc, f, k, tol)?;
    let mut out = GridFunction::zeros_like(f);
    for edge in Edge::BOTH {
        let e = edge.index();
        for (i, &x) in f.nodes.iter().enumerate() {
            out.values[e][i] = app.eval(edge, x);
        }
    }
    Ok(out)
}

/// Residuals of the defining equations of `ψ = (-Δ - k²)^{-1} f`:
/// `-ψ'' - k²ψ = f` in the interior (5-point fourth-order stencil on a
/// uniform evaluation grid) and `Aψ(0) + Bψ'(0) = 0` at the junction
/// (one-sided fourth-order stencils). Both are sup-norms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DefectReport {
    pub pde_residual: f64,
    pub bc_residual: f64,
    pub grid_h: f64,
}

pub fn defect_check(
    bc: &BCPair,
    f: &GridFunction,
    k: C64,
    grid_h: f64,
    tol: &TolerancePolicy,
) -> Result<DefectReport, ResolventError> {
    let app = ResolventApplication::new(bc, f, k, tol)?;
    let h = grid_h;
    let m = (f.x_max / h).floor() as usize - 1;
    assert!(m >= 6, "evaluation grid too short for the stencils");
    let k2 = k * k;

    let mut pde = 0.0f64;
    let mut traces = [Vec2::zero(); 2]; // ψ(0), ψ'(0)
    for edge in Edge::BOTH {
        let e = edge.index();
        let psi: Vec<C64> = (0..=m).map(|i| app.eval(edge, i as f64 * h)).collect();
        for i in 2..=m - 2 {
            let second = (-psi[i - 2] + psi[i - 1] * c(16.0, 0.0) - psi[i] * c(30.0, 0.0)
                + psi[i + 1] * c(16.0, 0.0)
                - psi[i + 2])
                / c(12.0 * h * h, 0.0);
            let fx = f.eval_at(edge, i as f64 * h);
            pde = pde.max((-second - k2 * psi[i] - fx).norm());
        }
        traces[0].e[e] = psi[0];
        traces[1].e[e] = (psi[0] * c(-25.0, 0.0) + psi[1] * c(48.0, 0.0) - psi[2] * c(36.0, 0.0)
            + psi[3] * c(16.0, 0.0)
            - psi[4] * c(3.0, 0.0))
            / c(12.0 * h, 0.0);
    }
    let bc_res = bc
        .a
        .mul_vec(&traces[0])
        .e
        .iter()
        .zip(bc.b.mul_vec(&traces[1]).e.iter())
        .map(|(x, y)| (x + y).norm_sqr())
        .sum::<f64>()
        .sqrt();

    Ok(DefectReport {
        pde_residual: pde,
        bc_residual: bc_res,
        grid_h: h,
    })
}

/// Grid parameters adequate for wavenumber `k`: truncation long enough for
/// the decay requirement and panels short enough for the oscillation.
pub fn grid_for_wavenumber(k: C64) -> (f64, f64) {
    let x_max = 20.0f64.max(-TRUNCATION_EPS.ln() / k.im * 1.05);
    let width = 1.0f64.min(1.0 / k.norm());
    (x_max, width)
}

/// Probe report for the resolvent operator norm at one `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    /// Max of `‖Rf‖/‖f‖` over the probes: a lower bound for the norm.
    pub lower_bound: f64,
    /// `1 / dist(k², [0, ∞))`, the free-line part of the norm estimate.
    pub free_term: f64,
    /// `1 / (|k| · Im k · dist(S, k))` with `S` the genuine poles in the
    /// closed upper half-plane; zero when there are none.
    pub boundary_term: f64,
}

/// Lower-bound the operator norm of `(-Δ - k²)^{-1}` with random unit-norm
/// grid functions plus the deterministic indicator of `[0,1]` on edge one.
pub fn resolvent_norm_probe(
    bc: &BCPair,
    k: C64,
    n_probes: usize,
    tol: &TolerancePolicy,
) -> Result<ProbeReport, ResolventError> {
    let (x_max, width) = grid_for_wavenumber(k);
    let mut best: f64 = 0.0;
    let mut rng = StdRng::seed_from_u64(0x5eed_cafe);

    let chi = GridFunction::sample(
        x_max,
        width,
        |x| if x <= 1.0 { C64::ONE } else { C64::ZERO },
        |_| C64::ZERO,
    );
    let mut probes = vec![chi];
    for _ in 0..n_probes {
        let mut g = GridFunction::sample(x_max, width, |_| C64::ZERO, |_| C64::ZERO);
        for e in 0..2 {
            for v in &mut g.values[e] {
                *v = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        probes.push(g);
    }
    for f in &probes {
        let nf = f.l2_norm();
        if nf == 0.0 {
            continue;
        }
        let image = apply_resolvent(bc, f, k, tol)?;
        best = best.max(image.l2_norm() / nf);
    }

    let free_term = 1.0 / dist_to_nonneg_ray(k * k).max(f64::MIN_POSITIVE);
    let poles = cayley::poles(bc, tol)?;
    let dist_s = poles
        .genuine()
        .filter(|p| p.k.im > 0.0 || (p.k.im.abs() < 1e-12 && p.k.re >= -1e-12))
        .map(|p| (p.k - k).norm())
        .fold(f64::INFINITY, f64::min);
    let boundary_term = if dist_s.is_finite() {
        1.0 / (k.norm() * k.im * dist_s).max(f64::MIN_POSITIVE)
    } else {
        0.0
    };

    Ok(ProbeReport {
        lower_bound: best,
        free_term,
        boundary_term,
    })
}

/// Closed-form lower bound
/// `‖(-Δ + κ²)^{-1}‖ ≥ |b21| (1 - e^{-κ}) κ^{-1} (2κ)^{-1/2}`
/// for the degenerate `(0,1)` class, evaluated on the given `κ` list.
/// The coefficient `b21 = <p2, A^{-1}B p1>` is taken in the orthonormal
/// basis aligned with `Ker B`.
pub fn nongenerator_lower_bound(
    bc: &BCPair,
    kappas: &[f64],
    tol: &TolerancePolicy,
) -> Result<Vec<(f64, f64)>, ResolventError> {
    let cls = boundary::classify(bc, tol);
    if !cls.zero_one_degenerate() {
        return Err(ResolventError::WrongClass);
    }
    let b21 = boundary::degenerate_coupling_p2_b_p1(bc, tol)
        .expect("degenerate class implies the coupling scalar exists")
        .norm();
    Ok(kappas
        .iter()
        .map(|&kappa| {
            let bound = b21 * (1.0 - (-kappa).exp()) / kappa / (2.0 * kappa).sqrt();
            (kappa, bound)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numutil::loglog_slope;
    use crate::presets;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn quadrature_rule_sanity() {
        let (nodes, weights) = gl16();
        assert!((weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // Exact for degree ≤ 31: check a few monomials and an entire function.
        for deg in [2usize, 10, 20, 30] {
            let exact = 2.0 / (deg as f64 + 1.0);
            let got: f64 = nodes
                .iter()
                .zip(&weights)
                .map(|(x, w)| w * x.powi(deg as i32))
                .sum();
            assert!((got - exact).abs() < 1e-13, "degree {deg}");
        }
        let got: f64 = nodes.iter().zip(&weights).map(|(x, w)| w * x.exp()).sum();
        assert!((got - (1.0f64.exp() - (-1.0f64).exp())).abs() < 1e-14);
    }

    #[test]
    fn grid_function_interpolation_and_integrals() {
        let g = GridFunction::sample(10.0, 0.5, |x| c((-x).exp(), 0.0), |x| c(x.sin(), 0.0));
        // Mass = ∫ e^{-x} + ∫ sin over [0,10].
        let exact = (1.0 - (-10.0f64).exp()) + (1.0 - 10.0f64.cos());
        assert!((g.mass().re - exact).abs() < 1e-12);
        for &x in &[0.0, 0.123, 3.456, 9.999] {
            assert!((g.eval_at(Edge::One, x) - c((-x).exp(), 0.0)).norm() < 1e-12);
            assert!((g.eval_at(Edge::Two, x) - c(x.sin(), 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn kernel_examples() {
        let t = tol();
        let at_origin = |bc: &BCPair, k: C64| {
            kernel(
                bc,
                EdgePoint::new(Edge::One, 0.0),
                EdgePoint::new(Edge::One, 0.0),
                k,
                &t,
            )
            .unwrap()
        };
        // Neumann: method of images doubles the free kernel at the boundary.
        let neumann = presets::neumann(&t);
        assert!((at_origin(&neumann, c(0.0, 1.0)) - C64::ONE).norm() < 1e-13);
        // Dirichlet: image cancellation kills the boundary value.
        let dirichlet = presets::dirichlet(&t);
        assert!(at_origin(&dirichlet, c(0.3, 1.7)).norm() < 1e-13);
        // Cross-edge entry of the intermediate pair at k = i.
        let ex34 = presets::example_3_4(&t);
        let v = kernel(
            &ex34,
            EdgePoint::new(Edge::Two, 0.0),
            EdgePoint::new(Edge::One, 0.0),
            c(0.0, 1.0),
            &t,
        )
        .unwrap();
        assert!((v - C64::ONE).norm() < 1e-13);
    }

    #[test]
    fn kernel_rejects_bad_k() {
        let t = tol();
        let bc = presets::example_3_2(C64::ONE, C64::ZERO, &t);
        let x = EdgePoint::new(Edge::One, 0.5);
        assert!(matches!(
            kernel(&bc, x, x, c(1.0, -0.2), &t),
            Err(ResolventError::LowerHalfPlane(_))
        ));
        assert!(matches!(
            kernel(&bc, x, x, c(0.0, 1.0), &t),
            Err(ResolventError::AtPole(_))
        ));
    }

    #[test]
    fn apply_resolvent_zero_is_zero() {
        let t = tol();
        let bc = presets::neumann(&t);
        let f = GridFunction::sample(30.0, 0.5, |_| C64::ZERO, |_| C64::ZERO);
        let out = apply_resolvent(&bc, &f, c(0.0, 1.3), &t).unwrap();
        assert_eq!(out.sup_norm(), 0.0);
    }

    #[test]
    fn apply_resolvent_matches_neumann_ode_solution() {
        // -ψ'' + 2ψ = e^{-y} with ψ'(0) = 0 has ψ(y) = e^{-y} - e^{-√2 y}/√2.
        let t = tol();
        let bc = presets::neumann(&t);
        let k = c(0.0, std::f64::consts::SQRT_2);
        let (x_max, width) = grid_for_wavenumber(k);
        let f = GridFunction::sample(x_max, width, |y| c((-y).exp(), 0.0), |_| C64::ZERO);
        let psi = apply_resolvent(&bc, &f, k, &t).unwrap();
        let mut err = 0.0f64;
        for (i, &x) in f.nodes.iter().enumerate() {
            let exact =
                (-x).exp() - (-std::f64::consts::SQRT_2 * x).exp() / std::f64::consts::SQRT_2;
            err = err.max((psi.values[0][i] - c(exact, 0.0)).norm());
            err = err.max(psi.values[1][i].norm());
        }
        assert!(err <= 1e-8, "sup error {err}");
    }

    #[test]
    fn apply_resolvent_matches_degenerate_closed_form() {
        // Image second component is (1 - e^{-κ}) κ^{-1} e^{-κ x} for the
        // indicator source on edge one.
        let t = tol();
        let bc = presets::example_3_4(&t);
        let kappa = 1.5;
        let k = c(0.0, kappa);
        let (x_max, width) = grid_for_wavenumber(k);
        let f = GridFunction::sample(
            x_max,
            width,
            |y| if y <= 1.0 { C64::ONE } else { C64::ZERO },
            |_| C64::ZERO,
        );
        let psi = apply_resolvent(&bc, &f, k, &t).unwrap();
        // The indicator is discontinuous inside one panel, so compare in L²
        // where the interpolation error of that panel is diluted.
        let mut num = 0.0;
        let mut den = 0.0;
        for (i, &x) in f.nodes.iter().enumerate() {
            let exact = (1.0 - (-kappa).exp()) / kappa * (-kappa * x).exp();
            num += f.weights[i] * (psi.values[1][i] - c(exact, 0.0)).norm_sqr();
            den += f.weights[i] * exact * exact;
        }
        let rel = num.sqrt() / den.sqrt();
        assert!(rel <= 2e-3, "rel L2 err {rel}");
    }

    #[test]
    fn truncation_guard_fires() {
        let t = tol();
        let bc = presets::neumann(&t);
        let f = GridFunction::sample(5.0, 0.5, |_| C64::ONE, |_| C64::ZERO);
        assert!(matches!(
            apply_resolvent(&bc, &f, c(0.0, 1.0), &t),
            Err(ResolventError::TruncationTooShort { .. })
        ));
    }

    fn gaussian_bump(x: f64) -> C64 {
        c((-(x - 3.0) * (x - 3.0)).exp(), 0.0)
    }

    #[test]
    fn defect_residuals_small_and_converging() {
        let t = tol();
        let cases = [
            (presets::neumann(&t), c(0.0, 1.0)),
            (
                presets::example_3_2(c(-1.0, 0.0), c(2.0, 0.0), &t),
                c(0.0, 2.0),
            ),
        ];
        for (bc, k) in cases {
            let (x_max, width) = grid_for_wavenumber(k);
            let f = GridFunction::sample(x_max, width, gaussian_bump, gaussian_bump);
            let coarse = defect_check(&bc, &f, k, 0.02, &t).unwrap();
            let fine = defect_check(&bc, &f, k, 0.01, &t).unwrap();
            assert!(fine.pde_residual <= 1e-6, "pde {}", fine.pde_residual);
            assert!(fine.bc_residual <= 1e-6, "bc {}", fine.bc_residual);
            // Fourth-order stencils: residual drops by ~16 per halving.
            assert!(
                fine.pde_residual <= coarse.pde_residual / 8.0,
                "no fourth-order decay: {} vs {}",
                coarse.pde_residual,
                fine.pde_residual
            );
        }
    }

    #[test]
    fn dirichlet_kernel_enforces_zero_trace() {
        let t = tol();
        let bc = presets::dirichlet(&t);
        let k = c(0.0, 1.0);
        let (x_max, width) = grid_for_wavenumber(k);
        // f does not vanish at the origin; the image still must.
        let f = GridFunction::sample(x_max, width, |x| c((-x * 0.3).exp(), 0.0), |_| C64::ZERO);
        let report = defect_check(&bc, &f, k, 0.01, &t).unwrap();
        assert!(report.bc_residual <= 1e-6, "bc {}", report.bc_residual);
    }

    #[test]
    fn first_resolvent_identity() {
        let t = tol();
        let bc = presets::example_3_2(c(-1.0, 0.0), c(0.5, 0.0), &t);
        let k1 = c(0.0, 1.5);
        let k2 = c(0.4, 2.0);
        let (x_max, width) = grid_for_wavenumber(c(0.0, 1.0));
        let f = GridFunction::sample(x_max, width, gaussian_bump, |x| {
            c(0.0, 1.0) * gaussian_bump(x)
        });
        let r1 = apply_resolvent(&bc, &f, k1, &t).unwrap();
        let r2 = apply_resolvent(&bc, &f, k2, &t).unwrap();
        let r12 = apply_resolvent(&bc, &r2, k1, &t).unwrap();
        // R(k1) - R(k2) = (k1² - k2²) R(k1) R(k2).
        let mut lhs = r1.sub(&r2);
        lhs.add_scaled(-(k1 * k1 - k2 * k2), &r12);
        assert!(lhs.l2_norm() <= 1e-7 * f.l2_norm(), "defect {}", lhs.l2_norm());
    }

    #[test]
    fn adjoint_kernel_relation() {
        let t = tol();
        let cases = [
            presets::example_3_2(c(1.0, 0.0), c(0.5, -0.2), &t),
            presets::example_3_3(0.8, &t),
            presets::example_3_4(&t),
        ];
        let k = c(0.7, 1.3);
        for bc in cases {
            for &(x, y) in &[(0.0, 0.5), (1.2, 0.3), (2.0, 2.0)] {
                let direct = kernel_matrix(&bc, x, y, k, &t).unwrap().entries;
                let adj = kernel_matrix_adjoint(&bc, y, x, -k.conj(), &t)
                    .unwrap()
                    .entries;
                // r(x,y;k) = conj(r_adj(y,x;-conj k)) with transposed edges.
                for i in 0..2 {
                    for j in 0..2 {
                        let lhs = direct.e[i][j];
                        let rhs = adj.e[j][i].conj();
                        assert!((lhs - rhs).norm() <= 1e-11, "entry ({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_equivalence_invariance() {
        use crate::boundary::random_invertible;
        let t = tol();
        let bc = presets::example_3_3(0.5, &t);
        let k = c(0.3, 1.1);
        let mut rng = StdRng::seed_from_u64(57);
        let base = kernel_matrix(&bc, 0.7, 1.9, k, &t).unwrap().entries;
        for _ in 0..20 {
            let cm = random_invertible(&mut rng, &t);
            let moved = BCPair::new(cm.mul(&bc.a), cm.mul(&bc.b), &t);
            let got = kernel_matrix(&moved, 0.7, 1.9, k, &t).unwrap().entries;
            assert!(got.sub(&base).operator_norm() <= 1e-11);
        }
    }

    #[test]
    fn kernel_bounded_and_continuous() {
        let t = tol();
        let bc = presets::example_6_6(&t);
        let k = c(0.5, 0.9);
        let mut sup = 0.0f64;
        let mut moduli = Vec::new();
        for step in [0.1, 0.05] {
            let n = (6.0 / step) as usize;
            let mut max_jump = 0.0f64;
            for i in 0..n {
                for j in 0..n {
                    let (x, y) = (i as f64 * step, j as f64 * step);
                    let v = kernel_matrix(&bc, x, y, k, &t).unwrap().entries;
                    sup = sup.max(v.operator_norm());
                    let v2 = kernel_matrix(&bc, x + step, y, k, &t).unwrap().entries;
                    max_jump = max_jump.max(v2.sub(&v).operator_norm());
                }
            }
            moduli.push(max_jump);
        }
        assert!(sup.is_finite() && sup > 0.0);
        assert!(moduli[1] <= 0.6 * moduli[0], "{} vs {}", moduli[1], moduli[0]);
    }

    #[test]
    fn norm_probe_examples() {
        let t = tol();
        // Self-adjoint Neumann at k = i: ‖R‖ = 1/dist(-1, [0,∞)) = 1.
        let report = resolvent_norm_probe(&presets::neumann(&t), c(0.0, 1.0), 6, &t).unwrap();
        assert!(
            (0.5..=1.0 + 1e-9).contains(&report.lower_bound),
            "probe {}",
            report.lower_bound
        );
        assert!((report.free_term - 1.0).abs() < 1e-12);

        // Dirichlet at k = 2i: ‖R‖ = 1/4; probes stay at or below it.
        let report = resolvent_norm_probe(&presets::dirichlet(&t), c(0.0, 2.0), 6, &t).unwrap();
        assert!(report.lower_bound <= 0.25 + 1e-9);
        assert!(report.lower_bound >= 0.1);

        // Probing at a pole is rejected.
        let bc = presets::example_3_2(C64::ONE, C64::ZERO, &t);
        assert!(matches!(
            resolvent_norm_probe(&bc, c(0.0, 1.0), 2, &t),
            Err(ResolventError::AtPole(_))
        ));
    }

    #[test]
    fn lemma_estimate_dominates_probes_for_bounded_transforms() {
        let t = tol();
        let bc = presets::example_3_2(c(1.0, 0.0), c(0.4, 0.0), &t);
        // Fit the constant over the sample, then check domination.
        let ks = [c(0.3, 1.2), c(0.0, 2.0), c(-0.8, 1.6), c(0.5, 3.0)];
        let mut c_fit = 0.0f64;
        let mut reports = Vec::new();
        for &k in &ks {
            let r = resolvent_norm_probe(&bc, k, 4, &t).unwrap();
            if r.boundary_term > 0.0 {
                c_fit = c_fit.max((r.lower_bound - r.free_term).max(0.0) / r.boundary_term);
            }
            reports.push((k, r));
        }
        for (k, r) in reports {
            let bound = r.free_term + c_fit * r.boundary_term;
            assert!(
                r.lower_bound <= bound + 1e-9,
                "at k = {k}: probe {} exceeds fitted bound {bound}",
                r.lower_bound
            );
        }
    }

    #[test]
    fn nongenerator_bound_values_and_slope() {
        let t = tol();
        let bc = presets::example_3_4(&t);
        let seq = nongenerator_lower_bound(&bc, &[1.0], &t).unwrap();
        // |b21| (1 - e^{-1}) / 1 · 2^{-1/2} ≈ 0.4470.
        assert!((seq[0].1 - 0.44700).abs() < 5e-5, "value {}", seq[0].1);

        let kappas: Vec<f64> = (1..=8).map(|i| 2.0f64.powi(i)).collect();
        let seq = nongenerator_lower_bound(&bc, &kappas, &t).unwrap();
        let xs: Vec<f64> = seq.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = seq.iter().map(|p| p.1).collect();
        let slope = loglog_slope(&xs, &ys);
        assert!((slope + 1.5).abs() <= 0.05, "slope {slope}");

        let robin = presets::example_3_2(C64::ONE, C64::ZERO, &t);
        assert_eq!(
            nongenerator_lower_bound(&robin, &[1.0], &t),
            Err(ResolventError::WrongClass)
        );
    }

    #[test]
    fn smart_convolution_matches_brute_force() {
        // Validate the prefix/suffix machinery against a direct double sum
        // that shares only the panel-splitting idea.
        let t = tol();
        let bc = presets::example_3_3(0.6, &t);
        let k = c(0.4, 1.2);
        let (x_max, width) = grid_for_wavenumber(k);
        let f = GridFunction::sample(x_max, width, gaussian_bump, |x| {
            c((x * 0.7).cos() * (-(x - 1.0) * (x - 1.0) * 0.5).exp(), 0.1)
        });
        let fast = apply_resolvent(&bc, &f, k, &t).unwrap();

        let s = cayley::eval(&bc, k, &t).unwrap().s;
        let pre = C64::i() / (k * c(2.0, 0.0));
        let ik = C64::i() * k;
        let r = reference();
        for &(edge, idx) in &[(Edge::One, 37usize), (Edge::Two, 3usize), (Edge::One, 200usize)] {
            let x = f.nodes[idx];
            let e = edge.index();
            let mut total = C64::ZERO;
            // Boundary term: plain quadrature, no kink.
            for e2 in 0..2 {
                let mut m = C64::ZERO;
                for (j, &y) in f.nodes.iter().enumerate() {
                    m += f.values[e2][j] * (ik * y).exp() * f.weights[j];
                }
                total += (ik * x).exp() * s.e[e][e2] * m;
            }
            // Free term: split the panel containing x.
            let q = (x / f.panel_width) as usize;
            for p in 0..f.n_panels {
                let a = p as f64 * f.panel_width;
                let b = a + f.panel_width;
                if p != q {
                    for j in 0..PANEL_ORDER {
                        let y = a + 0.5 * f.panel_width * (r.nodes[j] + 1.0);
                        let w = 0.5 * f.panel_width * r.weights[j];
                        total +=
                            f.values[e][p * PANEL_ORDER + j] * (ik * (x - y).abs()).exp() * w;
                    }
                } else {
                    for (lo, hi) in [(a, x), (x, b)] {
                        let half = 0.5 * (hi - lo);
                        let mid = 0.5 * (hi + lo);
                        for j in 0..PANEL_ORDER {
                            let y = mid + half * r.nodes[j];
                            let xi = 2.0 * (y - a) / f.panel_width - 1.0;
                            let fy = interpolate(xi, f.panel_values(e, p));
                            total += fy * (ik * (x - y).abs()).exp() * (half * r.weights[j]);
                        }
                    }
                }
            }
            let brute = pre * total;
            let got = fast.values[e][idx];
            assert!(
                (got - brute).norm() <= 1e-12 * (1.0 + brute.norm()),
                "mismatch at {edge:?} x={x}: {got} vs {brute}"
            );
        }
    }
}
