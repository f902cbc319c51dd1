//! Generating curves, helicoidal surfaces and their exact curvature data at
//! `t = 0`.
//!
//! Everything is expressed through `W = EG - F²` and the determinant forms
//! `H1 = G det(X_s,X_t,X_ss) - 2F det(X_s,X_t,X_st) + E det(X_s,X_t,X_tt)` and
//! `K1 = det(X_s,X_t,X_ss) det(X_s,X_t,X_tt) - det(X_s,X_t,X_st)²`, so no
//! square roots ever appear. With `ε = -sign W`,
//! `H = ε H1 / (2 W sqrt(-εW))` and `K = -K1 / W²`.

use std::fmt;

use thiserror::Error;

use crate::minkowski::{motion_jet, AxisKind, Mat3};
use crate::symbolic::{BasisTerm, ExprError, Param, ParamPoly, SymExpr};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("a {curve} cannot generate a surface about a {axis} axis")]
    Incompatible { axis: AxisKind, curve: &'static str },
    #[error("the pitch must be nonzero")]
    ZeroPitch,
    #[error("the {0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("a polynomial graph needs at least one coefficient")]
    EmptyPolynomial,
    #[error("polynomial degree {0} exceeds the supported maximum {max}", max = crate::symbolic::MAX_COEF_INDEX)]
    DegreeTooHigh(usize),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// `(λ + r cosh u, μ + r sinh u)` in the profile plane.
    Plus,
    /// `(λ + r sinh u, μ + r cosh u)`.
    Minus,
}

impl Branch {
    pub fn symbol(self) -> char {
        match self {
            Branch::Plus => '+',
            Branch::Minus => '-',
        }
    }
}

/// A planar generating curve. Parameters are symbolic or constant
/// [`ParamPoly`] values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveSpec {
    /// Graph of `f(s) = Σ a_n s^n`; the leading coefficient is assumed nonzero.
    PolyGraph { coeffs: Vec<ParamPoly> },
    /// Lorentzian circle in a timelike profile plane, phase absorbed into `u`.
    Circle { branch: Branch, r: ParamPoly, lambda: ParamPoly, mu: ParamPoly },
    /// Lorentzian circle (a parabola) in the degenerate plane `x = z`.
    NullCircle { c: ParamPoly, theta: ParamPoly, lambda: ParamPoly, mu: ParamPoly },
    /// Line parallel to the profile's vertical direction, for timelike or
    /// spacelike axes.
    VerticalLine { offset: ParamPoly },
    /// The null line `(s, b, s)` for the lightlike axis.
    HorizontalLine { offset: ParamPoly },
}

impl CurveSpec {
    /// `a_0 + a_1 s + ... + a_m s^m` with symbolic coefficients.
    pub fn symbolic_poly(m: usize) -> Self {
        CurveSpec::PolyGraph { coeffs: (0..=m).map(|n| ParamPoly::var(Param::coef(n))).collect() }
    }

    pub fn symbolic_circle(branch: Branch) -> Self {
        CurveSpec::Circle {
            branch,
            r: Param::Radius.into(),
            lambda: Param::Lambda.into(),
            mu: Param::Mu.into(),
        }
    }

    pub fn symbolic_null_circle() -> Self {
        CurveSpec::NullCircle {
            c: Param::Scale.into(),
            theta: Param::Phase.into(),
            lambda: Param::Lambda.into(),
            mu: Param::Mu.into(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            CurveSpec::PolyGraph { .. } => "polynomial graph",
            CurveSpec::Circle { .. } => "Lorentzian circle",
            CurveSpec::NullCircle { .. } => "null-plane circle",
            CurveSpec::VerticalLine { .. } => "vertical line",
            CurveSpec::HorizontalLine { .. } => "horizontal null line",
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            CurveSpec::PolyGraph { coeffs } => Some(coeffs.len().saturating_sub(1)),
            _ => None,
        }
    }

    fn compatible(&self, axis: AxisKind) -> bool {
        match self {
            CurveSpec::PolyGraph { .. } => true,
            CurveSpec::Circle { .. } | CurveSpec::VerticalLine { .. } => axis != AxisKind::Lightlike,
            CurveSpec::NullCircle { .. } | CurveSpec::HorizontalLine { .. } => axis == AxisKind::Lightlike,
        }
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[&ParamPoly]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
        match self {
            CurveSpec::PolyGraph { coeffs } => write!(f, "poly:{}", join(&coeffs.iter().collect::<Vec<_>>())),
            CurveSpec::Circle { branch, r, lambda, mu } => {
                write!(f, "circle:{}[r={r},lambda={lambda},mu={mu}]", branch.symbol())
            }
            CurveSpec::NullCircle { c, theta, lambda, mu } => {
                write!(f, "nullcircle[c={c},theta={theta},lambda={lambda},mu={mu}]")
            }
            CurveSpec::VerticalLine { offset } => write!(f, "vline:{offset}"),
            CurveSpec::HorizontalLine { offset } => write!(f, "hline:{offset}"),
        }
    }
}

/// Axis, pitch and generating curve of a helicoidal surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HelicoidalSpec {
    pub axis: AxisKind,
    pub h: ParamPoly,
    pub curve: CurveSpec,
}

impl HelicoidalSpec {
    pub fn new(axis: AxisKind, h: ParamPoly, curve: CurveSpec) -> Result<Self, SurfaceError> {
        if !curve.compatible(axis) {
            return Err(SurfaceError::Incompatible { axis, curve: curve.kind_name() });
        }
        if h.is_zero() {
            return Err(SurfaceError::ZeroPitch);
        }
        match &curve {
            CurveSpec::PolyGraph { coeffs } if coeffs.is_empty() => return Err(SurfaceError::EmptyPolynomial),
            CurveSpec::PolyGraph { coeffs } if coeffs.len() > crate::symbolic::MAX_COEF_INDEX + 1 => {
                return Err(SurfaceError::DegreeTooHigh(coeffs.len() - 1))
            }
            CurveSpec::Circle { r, .. } if r.is_zero() => return Err(SurfaceError::ZeroParameter("radius")),
            CurveSpec::NullCircle { c, .. } if c.is_zero() => return Err(SurfaceError::ZeroParameter("scale")),
            CurveSpec::VerticalLine { offset } if offset.is_zero() && axis == AxisKind::Timelike => {
                return Err(SurfaceError::ZeroParameter("cylinder radius"))
            }
            _ => {}
        }
        Ok(Self { axis, h, curve })
    }

    /// Symbolic pitch `h` with the given curve.
    pub fn symbolic(axis: AxisKind, curve: CurveSpec) -> Result<Self, SurfaceError> {
        Self::new(axis, Param::Pitch.into(), curve)
    }
}

pub type Vec3 = [SymExpr; 3];

/// `γ(s)` as three exact expressions.
pub fn build_curve(curve: &CurveSpec, axis: AxisKind) -> Result<Vec3, SurfaceError> {
    if !curve.compatible(axis) {
        return Err(SurfaceError::Incompatible { axis, curve: curve.kind_name() });
    }
    let zero = SymExpr::zero;
    let k = |p: &ParamPoly| SymExpr::constant(p.clone());
    Ok(match curve {
        CurveSpec::PolyGraph { coeffs } => {
            let f = SymExpr::poly(coeffs.clone());
            match axis {
                AxisKind::Timelike => [SymExpr::s(), zero(), f],
                AxisKind::Spacelike => [zero(), SymExpr::s(), f],
                AxisKind::Lightlike => [f.clone(), SymExpr::s(), f],
            }
        }
        CurveSpec::Circle { branch, r, lambda, mu } => {
            let (first, second) = match branch {
                Branch::Plus => (SymExpr::cosh(1), SymExpr::sinh(1)),
                Branch::Minus => (SymExpr::sinh(1), SymExpr::cosh(1)),
            };
            let p = k(lambda).try_add(&first.scale(r))?;
            let q = k(mu).try_add(&second.scale(r))?;
            match axis {
                AxisKind::Timelike => [p, zero(), q],
                _ => [zero(), p, q],
            }
        }
        CurveSpec::NullCircle { c, theta, lambda, mu } => {
            let half_c = c.scale(&crate::symbolic::rat(1, 2));
            let outer = SymExpr::poly(vec![lambda.clone(), c * theta, half_c]);
            let middle = SymExpr::poly(vec![mu.clone(), c.clone()]);
            [outer.clone(), middle, outer]
        }
        CurveSpec::VerticalLine { offset } => match axis {
            AxisKind::Timelike => [k(offset), zero(), SymExpr::s()],
            _ => [zero(), k(offset), SymExpr::s()],
        },
        CurveSpec::HorizontalLine { offset } => [SymExpr::s(), k(offset), SymExpr::s()],
    })
}

fn add3(a: &Vec3, b: &Vec3) -> Result<Vec3, ExprError> {
    Ok([a[0].try_add(&b[0])?, a[1].try_add(&b[1])?, a[2].try_add(&b[2])?])
}

fn apply(m: &Mat3<ParamPoly>, v: &Vec3) -> Result<Vec3, ExprError> {
    let row = |i: usize| -> Result<SymExpr, ExprError> {
        let mut acc = SymExpr::zero();
        for (j, vj) in v.iter().enumerate() {
            if !m.0[i][j].is_zero() {
                acc = acc.try_add(&vj.scale(&m.0[i][j]))?;
            }
        }
        Ok(acc)
    };
    Ok([row(0)?, row(1)?, row(2)?])
}

fn constant3(v: &crate::minkowski::MinkVec3<ParamPoly>) -> Vec3 {
    [SymExpr::constant(v.x.clone()), SymExpr::constant(v.y.clone()), SymExpr::constant(v.z.clone())]
}

/// `<u, v>` in signature `(+,+,-)`.
pub fn dot(u: &Vec3, v: &Vec3) -> Result<SymExpr, ExprError> {
    u[0].try_mul(&v[0])?.try_add(&u[1].try_mul(&v[1])?)?.try_sub(&u[2].try_mul(&v[2])?)
}

/// Lorentzian cross product, `<u × v, w> = det(u, v, w)`.
pub fn cross(u: &Vec3, v: &Vec3) -> Result<Vec3, ExprError> {
    let m = |a: &SymExpr, b: &SymExpr| a.try_mul(b);
    Ok([
        m(&u[1], &v[2])?.try_sub(&m(&u[2], &v[1])?)?,
        m(&u[2], &v[0])?.try_sub(&m(&u[0], &v[2])?)?,
        m(&u[1], &v[0])?.try_sub(&m(&u[0], &v[1])?)?,
    ])
}

/// Partial derivatives of `X(s,t) = φ_t(γ(s))` at `t = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameT0 {
    pub x_s: Vec3,
    pub x_t: Vec3,
    pub x_ss: Vec3,
    pub x_st: Vec3,
    pub x_tt: Vec3,
}

pub fn frame_t0(spec: &HelicoidalSpec) -> Result<FrameT0, SurfaceError> {
    let gamma = build_curve(&spec.curve, spec.axis)?;
    let d1 = [gamma[0].diff(), gamma[1].diff(), gamma[2].diff()];
    let d2 = [d1[0].diff(), d1[1].diff(), d1[2].diff()];
    let jet = motion_jet::<ParamPoly>(spec.axis, &spec.h);
    Ok(FrameT0 {
        x_t: add3(&apply(&jet.a1, &gamma)?, &constant3(&jet.v1))?,
        x_st: apply(&jet.a1, &d1)?,
        x_tt: add3(&apply(&jet.a2, &gamma)?, &constant3(&jet.v2))?,
        x_s: d1,
        x_ss: d2,
    })
}

/// Exact first fundamental form, determinant forms and curvature numerators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureBundle {
    /// `E = <X_s, X_s>`
    pub e: SymExpr,
    /// `F = <X_s, X_t>`
    pub f: SymExpr,
    /// `G = <X_t, X_t>`
    pub g: SymExpr,
    pub w: SymExpr,
    pub d_uu: SymExpr,
    pub d_uv: SymExpr,
    pub d_vv: SymExpr,
    pub h1: SymExpr,
    pub k1: SymExpr,
}

impl CurvatureBundle {
    /// `ε = -sign W` when `W` does not depend on `s` and has a definite sign
    /// for nonzero `h`, `r`, `c`.
    pub fn epsilon(&self) -> Option<i8> {
        let w = self.w.as_constant()?;
        w.definite_sign(&|p| matches!(p, Param::Pitch | Param::Radius | Param::Scale)).map(|s| -s)
    }
}

pub fn curvature_bundle(spec: &HelicoidalSpec) -> Result<CurvatureBundle, SurfaceError> {
    let fr = frame_t0(spec)?;
    let e = dot(&fr.x_s, &fr.x_s)?;
    let f = dot(&fr.x_s, &fr.x_t)?;
    let g = dot(&fr.x_t, &fr.x_t)?;
    let w = e.try_mul(&g)?.try_sub(&f.try_mul(&f)?)?;
    let n = cross(&fr.x_s, &fr.x_t)?;
    let d_uu = dot(&n, &fr.x_ss)?;
    let d_uv = dot(&n, &fr.x_st)?;
    let d_vv = dot(&n, &fr.x_tt)?;
    let h1 = g
        .try_mul(&d_uu)?
        .try_sub(&f.try_mul(&d_uv)?.scale(&ParamPoly::int(2)))?
        .try_add(&e.try_mul(&d_vv)?)?;
    let k1 = d_uu.try_mul(&d_vv)?.try_sub(&d_uv.try_mul(&d_uv)?)?;
    Ok(CurvatureBundle { e, f, g, w, d_uu, d_uv, d_vv, h1, k1 })
}

/// The curvature equations, each an expression that must vanish identically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// `H = 0`: `H1`.
    MeanZero,
    /// `H` a nonzero constant, with `|W|³ = σ W³`: `4H²σW³ - H1²`.
    MeanConstant { sigma: i8 },
    /// `K` constant: `K W² + K1`.
    GaussConstant,
    /// `H² = K` on a timelike surface: `H1² - 4 W K1`.
    MeanSquaredEqualsGauss,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::MeanZero => f.write_str("H = 0"),
            Condition::MeanConstant { sigma } => {
                let kind = if *sigma > 0 { "spacelike" } else { "timelike" };
                write!(f, "H constant nonzero ({kind} surface)")
            }
            Condition::GaussConstant => f.write_str("K constant"),
            Condition::MeanSquaredEqualsGauss => f.write_str("H^2 = K"),
        }
    }
}

pub fn condition_cmc_zero(b: &CurvatureBundle) -> SymExpr {
    b.h1.clone()
}

pub fn condition_cmc_nonzero(b: &CurvatureBundle, sigma: i8) -> Result<SymExpr, SurfaceError> {
    condition(b, Condition::MeanConstant { sigma })
}

pub fn condition_cgc(b: &CurvatureBundle) -> Result<SymExpr, SurfaceError> {
    condition(b, Condition::GaussConstant)
}

pub fn condition_hk_equal(b: &CurvatureBundle) -> Result<SymExpr, SurfaceError> {
    condition(b, Condition::MeanSquaredEqualsGauss)
}

pub fn condition(b: &CurvatureBundle, c: Condition) -> Result<SymExpr, SurfaceError> {
    Ok(match c {
        Condition::MeanZero => b.h1.clone(),
        Condition::MeanConstant { sigma } => {
            let w3 = b.w.try_mul(&b.w)?.try_mul(&b.w)?;
            w3.scale(&mean_weight(sigma)).try_sub(&b.h1.try_mul(&b.h1)?)?
        }
        Condition::GaussConstant => {
            b.w.try_mul(&b.w)?.scale(&Param::GaussCurvature.into()).try_add(&b.k1)?
        }
        Condition::MeanSquaredEqualsGauss => {
            b.h1.try_mul(&b.h1)?.try_sub(&b.w.try_mul(&b.k1)?.scale(&ParamPoly::int(4)))?
        }
    })
}

fn mean_weight(sigma: i8) -> ParamPoly {
    ParamPoly::int(4 * sigma as i64) * ParamPoly::var(Param::MeanCurvature).pow(2)
}

/// Polynomial-mode condition whose coefficients are exact from index `low`
/// upward and zero below.
fn condition_from(b: &CurvatureBundle, c: Condition, low: usize) -> Result<SymExpr, SurfaceError> {
    let dw = b.w.degree() as usize;
    Ok(match c {
        Condition::MeanZero => b.h1.clone(),
        Condition::MeanConstant { sigma } => {
            let w2 = b.w.mul_from(&b.w, low.saturating_sub(dw))?;
            let w3 = w2.mul_from(&b.w, low)?;
            w3.scale(&mean_weight(sigma)).try_sub(&b.h1.mul_from(&b.h1, low)?)?
        }
        Condition::GaussConstant => {
            let w2 = b.w.mul_from(&b.w, low)?;
            w2.scale(&Param::GaussCurvature.into()).try_add(&b.k1)?
        }
        Condition::MeanSquaredEqualsGauss => {
            let h1sq = b.h1.mul_from(&b.h1, low)?;
            h1sq.try_sub(&b.w.mul_from(&b.k1, low)?.scale(&ParamPoly::int(4)))?
        }
    })
}

/// Leading term of a condition without expanding lower coefficients when the
/// expressions are polynomial in `s`. `fixed` is substituted first (for
/// example `K = 0`).
pub fn condition_leading(
    b: &CurvatureBundle,
    c: Condition,
    fixed: &std::collections::BTreeMap<Param, ParamPoly>,
) -> Result<(BasisTerm, ParamPoly), SurfaceError> {
    let polynomial = [&b.w, &b.h1, &b.k1].iter().all(|e| e.mode() != Some(crate::symbolic::Mode::Hyp));
    if !polynomial {
        return Ok(condition(b, c)?.substitute(fixed).leading_term()?);
    }
    let nominal = match c {
        Condition::MeanZero => b.h1.degree(),
        Condition::MeanConstant { .. } => (3 * b.w.degree()).max(2 * b.h1.degree()),
        Condition::GaussConstant => (2 * b.w.degree()).max(b.k1.degree()),
        Condition::MeanSquaredEqualsGauss => (2 * b.h1.degree()).max(b.w.degree() + b.k1.degree()),
    } as usize;
    let mut window = 2usize;
    loop {
        let low = nominal.saturating_sub(window - 1);
        let e = condition_from(b, c, low)?.substitute(fixed);
        if !e.is_zero() && e.degree() as usize >= low {
            return Ok(e.leading_term()?);
        }
        if low == 0 {
            return Err(ExprError::NoLeadingTerm.into());
        }
        window *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse::{parse_expr, parse_poly};

    fn sym(axis: AxisKind, curve: CurveSpec) -> HelicoidalSpec {
        HelicoidalSpec::symbolic(axis, curve).unwrap()
    }

    /// `f`, `f'`, `f''` for a symbolic graph of degree `m`, as expressions.
    fn f_and_derivs(m: usize) -> (SymExpr, SymExpr, SymExpr) {
        let f = SymExpr::poly((0..=m).map(|n| ParamPoly::var(Param::coef(n))).collect());
        let f1 = f.diff();
        let f2 = f1.diff();
        (f, f1, f2)
    }

    fn e(src: &str) -> SymExpr {
        parse_expr(src).unwrap()
    }

    #[test]
    fn curves() {
        let c = build_curve(&CurveSpec::PolyGraph { coeffs: vec![Param::coef(0).into()] }, AxisKind::Timelike).unwrap();
        assert_eq!(c, [SymExpr::s(), SymExpr::zero(), SymExpr::param(Param::coef(0))]);
        let circ = CurveSpec::Circle {
            branch: Branch::Plus,
            r: Param::Radius.into(),
            lambda: ParamPoly::zero(),
            mu: ParamPoly::zero(),
        };
        let c = build_curve(&circ, AxisKind::Spacelike).unwrap();
        assert_eq!(c[1], e("r*cosh(u)"));
        assert_eq!(c[2], e("r*sinh(u)"));
        let c = build_curve(&CurveSpec::symbolic_null_circle(), AxisKind::Lightlike).unwrap();
        assert_eq!(c[1], e("c*s + mu"));
        assert_eq!(c[0], e("c*s^2/2 + c*theta*s + lambda"));
        assert!(build_curve(&circ, AxisKind::Lightlike).is_err());
        assert!(HelicoidalSpec::new(AxisKind::Spacelike, ParamPoly::zero(), circ).is_err());
    }

    #[test]
    fn frames() {
        let fr = frame_t0(&sym(AxisKind::Timelike, CurveSpec::symbolic_poly(2))).unwrap();
        let (_, f1, f2) = f_and_derivs(2);
        assert_eq!(fr.x_s, [SymExpr::int(1), SymExpr::zero(), f1]);
        assert_eq!(fr.x_t, [SymExpr::zero(), SymExpr::s(), SymExpr::param(Param::Pitch)]);
        assert_eq!(fr.x_ss, [SymExpr::zero(), SymExpr::zero(), f2]);
        assert_eq!(fr.x_st, [SymExpr::zero(), SymExpr::int(1), SymExpr::zero()]);
        assert_eq!(fr.x_tt, [SymExpr::s().neg(), SymExpr::zero(), SymExpr::zero()]);

        let fr = frame_t0(&sym(AxisKind::Lightlike, CurveSpec::symbolic_poly(2))).unwrap();
        assert_eq!(fr.x_t, [e("s - h"), SymExpr::zero(), e("s + h")]);
        assert_eq!(fr.x_tt, [SymExpr::zero(), e("2*h"), SymExpr::zero()]);
        assert_eq!(fr.x_st, [SymExpr::int(1), SymExpr::zero(), SymExpr::int(1)]);

        let fr = frame_t0(&sym(AxisKind::Spacelike, CurveSpec::symbolic_poly(1))).unwrap();
        assert_eq!(fr.x_t, [e("h"), e("a0 + a1*s"), SymExpr::s()]);
    }

    #[test]
    fn timelike_bundle_matches_closed_forms() {
        for m in 0..=3 {
            let b = curvature_bundle(&sym(AxisKind::Timelike, CurveSpec::symbolic_poly(m))).unwrap();
            let (_, f1, f2) = f_and_derivs(m);
            let s = SymExpr::s();
            let s2 = s.try_mul(&s).unwrap();
            let f1sq = f1.try_mul(&f1).unwrap();
            let one_minus = SymExpr::int(1).try_sub(&f1sq).unwrap();
            let w = e("-h^2").try_add(&s2.try_mul(&one_minus).unwrap()).unwrap();
            assert_eq!(b.w, w);
            let h1 = s2
                .try_mul(&f1)
                .unwrap()
                .try_mul(&one_minus)
                .unwrap()
                .try_add(&s.try_mul(&e("s^2 - h^2")).unwrap().try_mul(&f2).unwrap())
                .unwrap()
                .try_sub(&f1.scale(&parse_poly("2*h^2").unwrap()))
                .unwrap();
            assert_eq!(b.h1, h1);
            let k1 = e("-h^2").try_add(&s2.try_mul(&s).unwrap().try_mul(&f1).unwrap().try_mul(&f2).unwrap()).unwrap();
            assert_eq!(b.k1, k1);
        }
    }

    #[test]
    fn spacelike_and_lightlike_metric() {
        let (f, f1, _) = f_and_derivs(2);
        let b = curvature_bundle(&sym(AxisKind::Spacelike, CurveSpec::symbolic_poly(2))).unwrap();
        let s = SymExpr::s();
        let m = |a: &SymExpr, b: &SymExpr| a.try_mul(b).unwrap();
        let ff1 = m(&f, &f1);
        let w = e("h^2 - s^2")
            .try_add(&m(&s, &ff1).scale(&ParamPoly::int(2)))
            .unwrap()
            .try_sub(&m(&e("h^2").try_add(&m(&f, &f)).unwrap(), &m(&f1, &f1)))
            .unwrap();
        assert_eq!(b.w, w);

        let b = curvature_bundle(&sym(AxisKind::Lightlike, CurveSpec::symbolic_poly(2))).unwrap();
        let (_, f1, f2) = f_and_derivs(2);
        let w = e("-4*h*s").try_sub(&m(&f1, &f1).scale(&parse_poly("4*h^2").unwrap())).unwrap();
        assert_eq!(b.w, w);
        let k1 = e("-4*h^2").try_sub(&m(&f1, &f2).scale(&parse_poly("8*h^3").unwrap())).unwrap();
        assert_eq!(b.k1, k1);
        let h1 = f1.try_sub(&m(&s, &f2).scale(&ParamPoly::int(2))).unwrap().scale(&parse_poly("4*h^2").unwrap());
        assert_eq!(b.h1, h1);
    }

    #[test]
    fn conditions_on_examples() {
        let b = curvature_bundle(&sym(AxisKind::Timelike, CurveSpec::symbolic_poly(0))).unwrap();
        assert!(condition_cmc_zero(&b).is_zero());

        let b = curvature_bundle(&sym(AxisKind::Lightlike, CurveSpec::symbolic_poly(1))).unwrap();
        let c = condition_cgc(&b).unwrap().substitute(&[(Param::GaussCurvature, ParamPoly::zero())].into());
        assert_eq!(c, e("-4*h^2"));

        let b = curvature_bundle(&sym(AxisKind::Spacelike, CurveSpec::symbolic_poly(0))).unwrap();
        let c = condition_cgc(&b).unwrap().substitute(&[(Param::GaussCurvature, ParamPoly::zero())].into());
        assert_eq!(c, e("-h^2"));
    }

    #[test]
    fn windowed_leading_term_agrees_with_full_expansion() {
        let none = Default::default();
        for axis in AxisKind::ALL {
            for cond in [
                Condition::MeanZero,
                Condition::MeanConstant { sigma: 1 },
                Condition::MeanConstant { sigma: -1 },
                Condition::GaussConstant,
                Condition::MeanSquaredEqualsGauss,
            ] {
                for m in 0..=3 {
                    let b = curvature_bundle(&sym(axis, CurveSpec::symbolic_poly(m))).unwrap();
                    let full = condition(&b, cond).unwrap();
                    match full.leading_term() {
                        Ok(lt) => assert_eq!(condition_leading(&b, cond, &none).unwrap(), lt, "{axis} {cond} m={m}"),
                        Err(_) => assert!(condition_leading(&b, cond, &none).is_err()),
                    }
                }
            }
        }
    }

    #[test]
    fn h1_and_k1_identities() {
        let b = curvature_bundle(&sym(AxisKind::Spacelike, CurveSpec::symbolic_circle(Branch::Minus))).unwrap();
        let m = |a: &SymExpr, b: &SymExpr| a.try_mul(b).unwrap();
        let h1 = m(&b.g, &b.d_uu)
            .try_sub(&m(&b.f, &b.d_uv).scale(&ParamPoly::int(2)))
            .unwrap()
            .try_add(&m(&b.e, &b.d_vv))
            .unwrap();
        assert_eq!(b.h1, h1);
        assert_eq!(b.k1, m(&b.d_uu, &b.d_vv).try_sub(&m(&b.d_uv, &b.d_uv)).unwrap());
    }
}
