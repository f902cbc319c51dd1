//! Floating-point evaluation of helicoidal surfaces.
//!
//! Derivatives in `t` come from the group law `φ_{t+τ} = φ_t ∘ φ_τ`: at any
//! `t` they are the linear part of `φ_t` applied to the jet at the identity.
//! Derivatives in `s` come from the generating curve, differentiated exactly.

use rayon::prelude::*;
use thiserror::Error;

use crate::minkowski::{lorentz_cross, minkowski_dot, motion, motion_jet, AxisKind, MinkVec3, MotionJet};
use crate::surface::{build_curve, HelicoidalSpec, SurfaceError};
use crate::symbolic::expr::rational_to_f64;
use crate::symbolic::SymExpr;

/// Points with `|W|` at or below this are treated as lightlike.
pub const DEGENERATE_W: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericError {
    #[error("surface has symbolic parameters; numeric evaluation needs concrete values")]
    NotConcrete,
    #[error("degenerate metric at s = {s}, t = {t}: W = {w:e}")]
    DegenerateMetric { s: f64, t: f64, w: f64 },
    #[error("finite-difference step {0} outside [1e-6, 1e-3]")]
    StepOutOfRange(f64),
    #[error("grid needs at least 2 samples per direction, got {0} x {1}")]
    GridTooSmall(usize, usize),
    #[error("empty parameter range [{0}, {1}]")]
    EmptyRange(f64, f64),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

type V = MinkVec3<f64>;

/// A concrete surface prepared for repeated evaluation.
#[derive(Clone, Debug)]
pub struct NumericSurface {
    axis: AxisKind,
    h: f64,
    /// `γ`, `γ'`, `γ''`, componentwise.
    curve: [[SymExpr; 3]; 3],
    jet: MotionJet<f64>,
}

impl NumericSurface {
    pub fn new(spec: &HelicoidalSpec) -> Result<Self, NumericError> {
        let h = spec.h.as_constant().ok_or(NumericError::NotConcrete)?;
        let g0 = build_curve(&spec.curve, spec.axis)?;
        let concrete = g0
            .iter()
            .all(|e| e.extract_coefficients().iter().all(|(_, p)| p.as_constant().is_some()));
        if !concrete {
            return Err(NumericError::NotConcrete);
        }
        let g1 = g0.clone().map(|e| e.diff());
        let g2 = g1.clone().map(|e| e.diff());
        let h = rational_to_f64(&h);
        Ok(Self { axis: spec.axis, h, curve: [g0, g1, g2], jet: motion_jet(spec.axis, &h) })
    }

    pub fn axis(&self) -> AxisKind {
        self.axis
    }

    fn curve_at(&self, k: usize, s: f64) -> V {
        let ev = |e: &SymExpr| e.eval_f64(s, &|_| f64::NAN);
        let c = &self.curve[k];
        MinkVec3::new(ev(&c[0]), ev(&c[1]), ev(&c[2]))
    }

    pub fn point(&self, s: f64, t: f64) -> V {
        motion(self.axis, self.h, t).apply(&self.curve_at(0, s))
    }

    /// Analytic frame at `(s, t)`.
    pub fn frame(&self, s: f64, t: f64) -> Result<NumericFrame, NumericError> {
        let phi = motion(self.axis, self.h, t);
        let l = &phi.linear;
        let (g0, g1, g2) = (self.curve_at(0, s), self.curve_at(1, s), self.curve_at(2, s));
        let j = &self.jet;
        let derivs = Derivatives {
            x: phi.apply(&g0),
            x_s: l.apply(&g1),
            x_t: l.apply(&(j.a1.apply(&g0) + j.v1.clone())),
            x_ss: l.apply(&g2),
            x_st: l.apply(&j.a1.apply(&g1)),
            x_tt: l.apply(&(j.a2.apply(&g0) + j.v2.clone())),
        };
        derivs.frame(s, t)
    }
}

/// Position and partial derivatives at one parameter point.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivatives {
    pub x: V,
    pub x_s: V,
    pub x_t: V,
    pub x_ss: V,
    pub x_st: V,
    pub x_tt: V,
}

impl Derivatives {
    fn frame(self, s: f64, t: f64) -> Result<NumericFrame, NumericError> {
        let e = minkowski_dot(&self.x_s, &self.x_s);
        let f = minkowski_dot(&self.x_s, &self.x_t);
        let g = minkowski_dot(&self.x_t, &self.x_t);
        let w = e * g - f * f;
        if !(w.abs() > DEGENERATE_W) {
            return Err(NumericError::DegenerateMetric { s, t, w });
        }
        let epsilon: i8 = if w < 0.0 { 1 } else { -1 };
        let n = lorentz_cross(&self.x_s, &self.x_t).scale(&(1.0 / w.abs().sqrt()));
        let second = FundamentalForm {
            e: minkowski_dot(&n, &self.x_ss),
            f: minkowski_dot(&n, &self.x_st),
            g: minkowski_dot(&n, &self.x_tt),
        };
        Ok(NumericFrame { d: self, n, first: FundamentalForm { e, f, g }, second, w, epsilon })
    }
}

/// Coefficients `(E, F, G)` or `(e, f, g)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FundamentalForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericFrame {
    pub d: Derivatives,
    /// Unit normal `X_s × X_t / sqrt(-εW)`.
    pub n: V,
    pub first: FundamentalForm,
    pub second: FundamentalForm,
    pub w: f64,
    /// `<N, N>`; `+1` on timelike surfaces.
    pub epsilon: i8,
}

impl NumericFrame {
    pub fn curvatures(&self) -> Curvatures {
        let (i, ii) = (self.first, self.second);
        let eps = f64::from(self.epsilon);
        let mean = eps * (ii.e * i.g - 2.0 * ii.f * i.f + ii.g * i.e) / (2.0 * self.w);
        let gauss = eps * (ii.e * ii.g - ii.f * ii.f) / self.w;
        Curvatures { mean, gauss, epsilon: self.epsilon }
    }

    /// `A = II · I⁻¹` in the `(X_s, X_t)` basis.
    pub fn weingarten(&self) -> WeingartenMatrix {
        let (i, ii) = (self.first, self.second);
        let w = self.w;
        let a = [
            [(ii.e * i.g - ii.f * i.f) / w, (ii.f * i.e - ii.e * i.f) / w],
            [(ii.f * i.g - ii.g * i.f) / w, (ii.g * i.e - ii.f * i.f) / w],
        ];
        WeingartenMatrix::new(a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Curvatures {
    /// Signed; the sign follows the orientation of `N`.
    pub mean: f64,
    pub gauss: f64,
    pub epsilon: i8,
}

impl Curvatures {
    pub fn abs_mean(&self) -> f64 {
        self.mean.abs()
    }

    /// `H² - εK`, the discriminant of the shape operator.
    pub fn discriminant(&self) -> f64 {
        self.mean * self.mean - f64::from(self.epsilon) * self.gauss
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeingartenMatrix {
    pub a: [[f64; 2]; 2],
    pub trace: f64,
    pub det: f64,
    /// `(trace/2)² - det`.
    pub discriminant: f64,
    /// `‖A - (trace/2) I‖`, Frobenius.
    pub deviation: f64,
    /// A single real eigenvalue without a full eigenbasis.
    pub non_diagonalizable: bool,
}

impl WeingartenMatrix {
    fn new(a: [[f64; 2]; 2]) -> Self {
        let trace = a[0][0] + a[1][1];
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        let half = trace / 2.0;
        let discriminant = half * half - det;
        let deviation =
            ((a[0][0] - half).powi(2) + a[0][1].powi(2) + a[1][0].powi(2) + (a[1][1] - half).powi(2)).sqrt();
        let non_diagonalizable = discriminant.abs() < 1e-8 && deviation > 1e-6;
        Self { a, trace, det, discriminant, deviation, non_diagonalizable }
    }
}

pub fn eval_surface(spec: &HelicoidalSpec, s: f64, t: f64) -> Result<V, NumericError> {
    Ok(NumericSurface::new(spec)?.point(s, t))
}

pub fn numeric_frame(spec: &HelicoidalSpec, s: f64, t: f64) -> Result<NumericFrame, NumericError> {
    NumericSurface::new(spec)?.frame(s, t)
}

pub fn numeric_curvatures(spec: &HelicoidalSpec, s: f64, t: f64) -> Result<Curvatures, NumericError> {
    Ok(numeric_frame(spec, s, t)?.curvatures())
}

pub fn weingarten(spec: &HelicoidalSpec, s: f64, t: f64) -> Result<WeingartenMatrix, NumericError> {
    Ok(numeric_frame(spec, s, t)?.weingarten())
}

/// The frame rebuilt from central differences of [`eval_surface`].
pub fn fd_oracle(spec: &HelicoidalSpec, s: f64, t: f64, step: f64) -> Result<NumericFrame, NumericError> {
    if !(1e-6..=1e-3).contains(&step) {
        return Err(NumericError::StepOutOfRange(step));
    }
    let surf = NumericSurface::new(spec)?;
    let p = |ds: f64, dt: f64| surf.point(s + ds * step, t + dt * step);
    let x = p(0.0, 0.0);
    let k1 = 1.0 / (2.0 * step);
    let k2 = 1.0 / (step * step);
    let k11 = 1.0 / (4.0 * step * step);
    let derivs = Derivatives {
        x_s: (p(1.0, 0.0) - p(-1.0, 0.0)).scale(&k1),
        x_t: (p(0.0, 1.0) - p(0.0, -1.0)).scale(&k1),
        x_ss: (p(1.0, 0.0) + p(-1.0, 0.0) - x.scale(&2.0)).scale(&k2),
        x_tt: (p(0.0, 1.0) + p(0.0, -1.0) - x.scale(&2.0)).scale(&k2),
        x_st: (p(1.0, 1.0) - p(1.0, -1.0) - p(-1.0, 1.0) + p(-1.0, -1.0)).scale(&k11),
        x,
    };
    derivs.frame(s, t)
}

/// `n` evenly spaced values from `lo` to `hi`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Row-major samples: `points[i * n_t + j] = X(s_i, t_j)`.
pub fn sample_grid(
    spec: &HelicoidalSpec,
    s_range: (f64, f64),
    t_range: (f64, f64),
    n_s: usize,
    n_t: usize,
) -> Result<Vec<V>, NumericError> {
    if n_s < 2 || n_t < 2 {
        return Err(NumericError::GridTooSmall(n_s, n_t));
    }
    for (lo, hi) in [s_range, t_range] {
        if !(hi > lo) {
            return Err(NumericError::EmptyRange(lo, hi));
        }
    }
    let surf = NumericSurface::new(spec)?;
    let ts = linspace(t_range.0, t_range.1, n_t);
    let rows: Vec<Vec<V>> = linspace(s_range.0, s_range.1, n_s)
        .into_par_iter()
        .map(|s| ts.iter().map(|&t| surf.point(s, t)).collect())
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

/// Triangle mesh over a sample grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<V>,
    /// Zero-based vertex indices.
    pub triangles: Vec<[usize; 3]>,
}

/// Each grid quad split into two triangles, wound by increasing `(s, t)`.
pub fn mesh(
    spec: &HelicoidalSpec,
    s_range: (f64, f64),
    t_range: (f64, f64),
    n_s: usize,
    n_t: usize,
) -> Result<Mesh, NumericError> {
    let vertices = sample_grid(spec, s_range, t_range, n_s, n_t)?;
    let idx = |i: usize, j: usize| i * n_t + j;
    let mut triangles = Vec::with_capacity(2 * (n_s - 1) * (n_t - 1));
    for i in 0..n_s - 1 {
        for j in 0..n_t - 1 {
            triangles.push([idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)]);
            triangles.push([idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)]);
        }
    }
    Ok(Mesh { vertices, triangles })
}

/// Points `φ_t(p)` for the given parameters.
pub fn orbit(axis: AxisKind, h: f64, p: &V, ts: &[f64]) -> Vec<V> {
    ts.iter().map(|&t| motion(axis, h, t).apply(p)).collect()
}
