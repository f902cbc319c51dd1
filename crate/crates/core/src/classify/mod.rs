//! Mechanical classification of helicoidal surfaces with constant curvature.
//!
//! A curvature condition is expanded in `s` (or in `cosh(ku)`, `sinh(ku)`)
//! and every coefficient must vanish. High-degree polynomial graphs are
//! excluded by the leading coefficient alone; low degrees, circles and the
//! degenerate lines go through the factor search in [`solver`].

pub mod catalog;
pub mod reference;
pub mod report;
pub mod solver;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::minkowski::AxisKind;
use crate::surface::{self, Branch, Condition, CurveSpec, HelicoidalSpec, SurfaceError};
use crate::symbolic::parse::{parse_expr, parse_poly};
use crate::symbolic::{gcd, BasisTerm, Param, ParamPoly, SymExpr, MAX_COEF_INDEX};

use reference::{DegreeFormula, Probe, Target};
pub use report::{CaseReport, ClassificationReport, ProbeReport, SectionReport, Status, Verdict};
pub use solver::{Binding, Certificate, Family, Leaf, Problem, Reason};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("maximum degree must be between 2 and {MAX_COEF_INDEX}, got {0}")]
    MaxDegree(usize),
    #[error("unknown theorem `{0}`; expected t1, t2, t3 or t4")]
    UnknownTheorem(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// The four classification statements that can be verified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// Constant mean curvature, polynomial generating curves.
    T1,
    /// Constant mean curvature, Lorentzian circles.
    T2,
    /// Constant Gauss curvature, polynomials and circles.
    T3,
    /// `H² = K` on timelike surfaces with polynomial generating curves.
    T4,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [Theorem::T1, Theorem::T2, Theorem::T3, Theorem::T4];

    pub fn title(self) -> &'static str {
        match self {
            Theorem::T1 => "constant mean curvature, polynomial generating curves",
            Theorem::T2 => "constant mean curvature, Lorentzian circles",
            Theorem::T3 => "constant Gauss curvature",
            Theorem::T4 => "H^2 = K on timelike surfaces",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            Theorem::T1 => 1,
            Theorem::T2 => 2,
            Theorem::T3 => 3,
            Theorem::T4 => 4,
        };
        write!(f, "t{n}")
    }
}

impl FromStr for Theorem {
    type Err = ClassifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "t1" | "1" => Ok(Theorem::T1),
            "t2" | "2" => Ok(Theorem::T2),
            "t3" | "3" => Ok(Theorem::T3),
            "t4" | "4" => Ok(Theorem::T4),
            _ => Err(ClassifyError::UnknownTheorem(s.to_string())),
        }
    }
}

/// Whether the mean curvature is zero or a nonzero constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeanMode {
    Zero,
    Constant,
}

impl MeanMode {
    fn equations(self) -> Vec<Equation> {
        match self {
            MeanMode::Zero => vec![Equation::MeanZero],
            MeanMode::Constant => vec![Equation::MeanConstant { sigma: 1 }, Equation::MeanConstant { sigma: -1 }],
        }
    }
}

/// The curvature equation under study.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Equation {
    MeanZero,
    /// Nonzero constant `H`; `sigma` is the sign of `W` on the surface.
    MeanConstant { sigma: i8 },
    GaussZero,
    GaussConstant,
    /// `H² = K` on a timelike surface.
    MeanSquaredEqualsGauss,
}

impl Equation {
    pub fn condition(self) -> Condition {
        match self {
            Equation::MeanZero => Condition::MeanZero,
            Equation::MeanConstant { sigma } => Condition::MeanConstant { sigma },
            Equation::GaussZero | Equation::GaussConstant => Condition::GaussConstant,
            Equation::MeanSquaredEqualsGauss => Condition::MeanSquaredEqualsGauss,
        }
    }

    pub fn fixed(self) -> BTreeMap<Param, ParamPoly> {
        let mut m = BTreeMap::new();
        if self == Equation::GaussZero {
            m.insert(Param::GaussCurvature, ParamPoly::zero());
        }
        m
    }

    /// The curvature constant, when it is a nonzero unknown.
    pub fn constant(self) -> Option<Param> {
        match self {
            Equation::MeanConstant { .. } => Some(Param::MeanCurvature),
            Equation::GaussConstant => Some(Param::GaussCurvature),
            _ => None,
        }
    }

    pub fn sigma(self) -> Option<i8> {
        match self {
            Equation::MeanConstant { sigma } => Some(sigma),
            Equation::MeanSquaredEqualsGauss => Some(-1),
            _ => None,
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Equation::MeanZero => f.write_str("H = 0"),
            Equation::MeanConstant { sigma: 1 } => f.write_str("H constant nonzero, W > 0"),
            Equation::MeanConstant { .. } => f.write_str("H constant nonzero, W < 0"),
            Equation::GaussZero => f.write_str("K = 0"),
            Equation::GaussConstant => f.write_str("K constant nonzero"),
            Equation::MeanSquaredEqualsGauss => f.write_str("H^2 = K, W < 0"),
        }
    }
}

/// Which generating curve a case refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveCase {
    Poly(usize),
    Circle(Branch),
    NullCircle,
    /// The non-graph line of each axis: `(r,0,s)`, `(0,b,s)` or `(s,b,s)`.
    Line,
}

impl CurveCase {
    pub fn spec(self, axis: AxisKind) -> Result<HelicoidalSpec, SurfaceError> {
        let curve = match self {
            CurveCase::Poly(m) => CurveSpec::symbolic_poly(m),
            CurveCase::Circle(b) => CurveSpec::symbolic_circle(b),
            CurveCase::NullCircle => CurveSpec::symbolic_null_circle(),
            CurveCase::Line => match axis {
                AxisKind::Timelike => CurveSpec::VerticalLine { offset: Param::Radius.into() },
                AxisKind::Spacelike => CurveSpec::VerticalLine { offset: Param::Offset.into() },
                AxisKind::Lightlike => CurveSpec::HorizontalLine { offset: Param::Offset.into() },
            },
        };
        HelicoidalSpec::symbolic(axis, curve)
    }

    /// Parameters assumed nonzero and parameters to solve for.
    fn roles(self, axis: AxisKind) -> (Vec<Param>, Vec<Param>) {
        let mut nonzero = vec![Param::Pitch];
        let unknowns = match self {
            CurveCase::Poly(m) => {
                if m >= 1 {
                    nonzero.push(Param::coef(m));
                }
                (0..=m).map(Param::coef).collect()
            }
            CurveCase::Circle(_) => {
                nonzero.push(Param::Radius);
                vec![Param::Lambda, Param::Mu]
            }
            CurveCase::NullCircle => {
                nonzero.push(Param::Scale);
                vec![Param::Lambda, Param::Mu, Param::Phase]
            }
            CurveCase::Line if axis == AxisKind::Timelike => {
                nonzero.push(Param::Radius);
                vec![]
            }
            CurveCase::Line => vec![Param::Offset],
        };
        (nonzero, unknowns)
    }
}

impl fmt::Display for CurveCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveCase::Poly(m) => write!(f, "m = {m}"),
            CurveCase::Circle(b) => write!(f, "circle {}", b.symbol()),
            CurveCase::NullCircle => f.write_str("null-plane circle"),
            CurveCase::Line => f.write_str("non-graph line"),
        }
    }
}

/// Builds the factor-search problem for one case.
pub fn problem(axis: AxisKind, case: CurveCase, eq: Equation) -> Result<Problem, SurfaceError> {
    let spec = case.spec(axis)?;
    let bundle = surface::curvature_bundle(&spec)?;
    let cond = surface::condition(&bundle, eq.condition())?.substitute(&eq.fixed());
    let (mut nonzero, mut unknowns) = case.roles(axis);
    if let Some(c) = eq.constant() {
        nonzero.push(c);
        unknowns.push(c);
    }
    Ok(Problem::new(&cond, &bundle.w, nonzero, unknowns, eq.sigma()))
}

/// Leading-coefficient certificate for a polynomial graph of degree `m`.
/// Returns the raw leading term when it is not a certificate.
pub fn leading_certificate(axis: AxisKind, m: usize, eq: Equation) -> Result<Result<Certificate, (BasisTerm, ParamPoly)>, SurfaceError> {
    let spec = CurveCase::Poly(m).spec(axis)?;
    let bundle = surface::curvature_bundle(&spec)?;
    let (basis, coeff) = surface::condition_leading(&bundle, eq.condition(), &eq.fixed())?;
    let (mut nonzero, _) = CurveCase::Poly(m).roles(axis);
    nonzero.extend(eq.constant());
    let mut given = Vec::new();
    for (f, _) in gcd::factor(&coeff).factors {
        match f.leading() {
            Some((mono, _)) if f.is_monomial() && mono.vars().count() == 1 => {
                let (p, _) = mono.vars().next().expect("one variable");
                if !nonzero.contains(&p) {
                    return Ok(Err((basis, coeff)));
                }
                given.push(Reason::Param(p));
            }
            _ => return Ok(Err((basis, coeff))),
        }
    }
    Ok(Ok(Certificate { basis, coefficient: coeff, bindings: Vec::new(), given }))
}

fn check_max_degree(m_max: usize) -> Result<(), ClassifyError> {
    if (2..=MAX_COEF_INDEX).contains(&m_max) {
        Ok(())
    } else {
        Err(ClassifyError::MaxDegree(m_max))
    }
}

fn poly_cases(m_max: usize) -> Vec<CurveCase> {
    (0..=m_max).map(CurveCase::Poly).chain([CurveCase::Line]).collect()
}

fn circle_cases(axis: AxisKind) -> Vec<CurveCase> {
    match axis {
        AxisKind::Lightlike => vec![CurveCase::NullCircle],
        _ => vec![CurveCase::Circle(Branch::Plus), CurveCase::Circle(Branch::Minus)],
    }
}

pub fn classify_poly_cmc(axis: AxisKind, m_max: usize, mode: MeanMode) -> Result<ClassificationReport, ClassifyError> {
    check_max_degree(m_max)?;
    let cases = poly_cases(m_max);
    let sections = mode.equations().into_iter().map(|eq| section(Theorem::T1, axis, eq, &cases)).collect::<Result<_, _>>()?;
    Ok(ClassificationReport::new(Theorem::T1, sections))
}

pub fn classify_circle_cmc(axis: AxisKind, mode: MeanMode) -> Result<ClassificationReport, ClassifyError> {
    let cases = circle_cases(axis);
    let sections = mode.equations().into_iter().map(|eq| section(Theorem::T2, axis, eq, &cases)).collect::<Result<_, _>>()?;
    Ok(ClassificationReport::new(Theorem::T2, sections))
}

pub fn classify_poly_cgc(axis: AxisKind, m_max: usize) -> Result<ClassificationReport, ClassifyError> {
    check_max_degree(m_max)?;
    let cases = poly_cases(m_max);
    let sections = [Equation::GaussZero, Equation::GaussConstant]
        .into_iter()
        .map(|eq| section(Theorem::T3, axis, eq, &cases))
        .collect::<Result<_, _>>()?;
    Ok(ClassificationReport::new(Theorem::T3, sections))
}

pub fn classify_circle_cgc(axis: AxisKind) -> Result<ClassificationReport, ClassifyError> {
    let cases = circle_cases(axis);
    let sections = [Equation::GaussZero, Equation::GaussConstant]
        .into_iter()
        .map(|eq| section(Theorem::T3, axis, eq, &cases))
        .collect::<Result<_, _>>()?;
    Ok(ClassificationReport::new(Theorem::T3, sections))
}

pub fn classify_hk_timelike(axis: AxisKind, m_max: usize) -> Result<ClassificationReport, ClassifyError> {
    check_max_degree(m_max)?;
    let sec = section(Theorem::T4, axis, Equation::MeanSquaredEqualsGauss, &poly_cases(m_max))?;
    Ok(ClassificationReport::new(Theorem::T4, vec![sec]))
}

/// Every axis and branch of one theorem.
pub fn verify(theorem: Theorem, m_max: usize) -> Result<ClassificationReport, ClassifyError> {
    let mut sections = Vec::new();
    for axis in AxisKind::ALL {
        let parts = match theorem {
            Theorem::T1 => {
                let mut r = classify_poly_cmc(axis, m_max, MeanMode::Zero)?.sections;
                r.extend(classify_poly_cmc(axis, m_max, MeanMode::Constant)?.sections);
                r
            }
            Theorem::T2 => {
                let mut r = classify_circle_cmc(axis, MeanMode::Zero)?.sections;
                r.extend(classify_circle_cmc(axis, MeanMode::Constant)?.sections);
                r
            }
            Theorem::T3 => {
                check_max_degree(m_max)?;
                let poly = poly_cases(m_max);
                let all: Vec<CurveCase> = poly.into_iter().chain(circle_cases(axis)).collect();
                [Equation::GaussZero, Equation::GaussConstant]
                    .into_iter()
                    .map(|eq| section(Theorem::T3, axis, eq, &all))
                    .collect::<Result<_, _>>()?
            }
            Theorem::T4 => classify_hk_timelike(axis, m_max)?.sections,
        };
        sections.extend(parts);
    }
    Ok(ClassificationReport::new(theorem, sections))
}

fn section(theorem: Theorem, axis: AxisKind, eq: Equation, cases: &[CurveCase]) -> Result<SectionReport, ClassifyError> {
    let reports: Vec<CaseReport> = cases.par_iter().map(|&c| run_case(axis, eq, c)).collect::<Result<_, _>>()?;
    let probes = reference::PROBES
        .iter()
        .filter(|p| p.theorem == theorem && p.axis == axis && p.eq == eq && cases.contains(&p.case))
        .map(run_probe)
        .collect::<Result<_, _>>()?;
    Ok(SectionReport { axis, equation: eq, cases: reports, probes })
}

/// `a == ±b`.
fn same_up_to_sign(a: &SymExpr, b: &SymExpr) -> bool {
    a == b || *a == b.neg()
}

fn compare(found: &SymExpr, printed: &SymExpr, erratum: Option<&SymExpr>, scale: &ParamPoly) -> Verdict {
    if same_up_to_sign(found, &printed.scale(scale)) {
        return Verdict::Match;
    }
    if let Some(e) = erratum {
        if same_up_to_sign(found, &e.scale(scale)) {
            return Verdict::Erratum { printed: printed.to_string(), corrected: e.to_string() };
        }
    }
    Verdict::Mismatch { expected: printed.to_string(), found: display_unscaled(found, scale) }
}

/// `e / scale` for display when the division is exact.
fn display_unscaled(e: &SymExpr, scale: &ParamPoly) -> String {
    let parts: Option<Vec<(BasisTerm, ParamPoly)>> =
        e.extract_coefficients().iter().map(|(b, p)| p.exact_div(scale).map(|q| (b, q))).collect();
    match parts {
        Some(parts) => parts
            .into_iter()
            .fold(SymExpr::zero(), |acc, (b, p)| acc.try_add(&solver::basis_expr(b).scale(&p)).expect("same mode"))
            .to_string(),
        None => format!("({e}) / ({scale})"),
    }
}

fn run_case(axis: AxisKind, eq: Equation, case: CurveCase) -> Result<CaseReport, ClassifyError> {
    if let CurveCase::Poly(m) = case {
        if m >= 2 {
            return run_certificate(axis, eq, m);
        }
    }
    let leaves = problem(axis, case, eq)?.solve();
    let expected = reference::expected_families(axis, eq, case);
    let mut surfaces = Vec::new();
    let mut found = Vec::new();
    for l in &leaves {
        match l {
            Leaf::Family(f) => {
                let key = (f.binding_texts(), f.residual_texts());
                let name = expected.iter().find(|e| family_key(e) == key).map(|e| e.surface.to_string());
                surfaces.push(name.unwrap_or_else(|| "unexpected".into()));
                found.push(key);
            }
            Leaf::Contradiction(c) if !c.check() => {
                let verdict = Verdict::Mismatch { expected: "valid certificate".into(), found: c.to_string() };
                return Ok(CaseReport { case, leaves, verdict, surfaces });
            }
            _ => {}
        }
    }
    let unresolved: Vec<String> =
        leaves.iter().filter(|l| matches!(l, Leaf::Unresolved { .. })).map(|l| l.to_string()).collect();
    let mut want: Vec<_> = expected.iter().map(family_key).collect();
    want.sort();
    found.sort();
    let verdict = if !unresolved.is_empty() {
        Verdict::Unresolved(unresolved.join("; "))
    } else if want == found {
        Verdict::Match
    } else {
        Verdict::Mismatch { expected: show_families(&want), found: show_families(&found) }
    };
    Ok(CaseReport { case, leaves, verdict, surfaces })
}

type FamilyKey = (Vec<String>, Vec<String>);

fn family_key(e: &reference::ExpectedFamily) -> FamilyKey {
    let mut b: Vec<String> = e.bindings.iter().map(|s| s.to_string()).collect();
    let mut r: Vec<String> = e.residual.iter().map(|s| s.to_string()).collect();
    b.sort();
    r.sort();
    (b, r)
}

fn show_families(v: &[FamilyKey]) -> String {
    if v.is_empty() {
        return "no families".into();
    }
    let items: Vec<String> = v
        .iter()
        .map(|(b, r)| {
            let b = if b.is_empty() { "no constraint".to_string() } else { b.join(", ") };
            if r.is_empty() {
                format!("{{{b}}}")
            } else {
                format!("{{{b} with {}}}", r.join(", "))
            }
        })
        .collect();
    items.join(" ")
}

fn run_certificate(axis: AxisKind, eq: Equation, m: usize) -> Result<CaseReport, ClassifyError> {
    let case = CurveCase::Poly(m);
    let cert = match leading_certificate(axis, m, eq)? {
        Ok(c) => c,
        Err((b, p)) => {
            let verdict = Verdict::Mismatch { expected: "leading-coefficient certificate".into(), found: format!("{b}: {p}") };
            return Ok(CaseReport { case, leaves: vec![], verdict, surfaces: vec![] });
        }
    };
    let verdict = match reference::degree_formula(axis, eq) {
        _ if !cert.check() => Verdict::Mismatch { expected: "valid certificate".into(), found: cert.to_string() },
        None => Verdict::Verified,
        Some(f) => compare_certificate(&cert, &f, m),
    };
    Ok(CaseReport { case, leaves: vec![Leaf::Contradiction(cert)], verdict, surfaces: vec![] })
}

fn compare_certificate(cert: &Certificate, f: &DegreeFormula, m: usize) -> Verdict {
    let degree = (f.degree)(m);
    if cert.basis_index() as usize != degree {
        return Verdict::Mismatch {
            expected: format!("degree {} = {degree}", f.degree_text),
            found: format!("degree {}", cert.basis_index()),
        };
    }
    let scale = parse_poly(f.normalizer).expect("normalizer");
    let found = SymExpr::constant(cert.coefficient.clone());
    let printed = SymExpr::constant(DegreeFormula::instantiate(f.coeff, m));
    let erratum = f.erratum.map(|e| SymExpr::constant(DegreeFormula::instantiate(e, m)));
    compare(&found, &printed, erratum.as_ref(), &scale)
}

fn run_probe(p: &Probe) -> Result<ProbeReport, ClassifyError> {
    let spec = p.case.spec(p.axis)?;
    let bundle = surface::curvature_bundle(&spec)?;
    let expr = match p.target {
        Target::Metric => bundle.w.clone(),
        _ => surface::condition(&bundle, p.eq.condition())?.substitute(&p.eq.fixed()),
    };
    let bindings: Vec<Binding> = p
        .bindings
        .iter()
        .map(|(name, k, n, d)| {
            let param: Param = name.parse().expect("reference parameter");
            Binding::new(param, *k, parse_poly(n).expect("reference value"), parse_poly(d).expect("reference value"))
        })
        .collect();
    let (sub, powers) = solver::substitute_cleared(&expr, &bindings);
    let mut scale = parse_poly(p.normalizer).expect("normalizer");
    for (b, q) in bindings.iter().zip(&powers) {
        scale = &scale * &b.den.pow(*q);
    }
    let printed = parse_expr(p.printed).expect("reference expression");
    let erratum = p.erratum.map(|e| parse_expr(e).expect("reference expression"));
    let (found, verdict) = match p.target {
        Target::Leading(d) => match sub.leading_term() {
            Ok((basis, c)) if basis.index() == d => {
                let found = SymExpr::constant(c);
                let v = compare(&found, &printed, erratum.as_ref(), &scale);
                (found, v)
            }
            Ok((basis, c)) => {
                let found = SymExpr::constant(c);
                let v = Verdict::Mismatch { expected: format!("degree {d}"), found: format!("{basis}") };
                (found, v)
            }
            Err(_) => {
                let v = Verdict::Mismatch { expected: p.printed.into(), found: "0".into() };
                (SymExpr::zero(), v)
            }
        },
        Target::Coeff(b) => {
            let found = SymExpr::constant(sub.coeff(b));
            let v = compare(&found, &printed, erratum.as_ref(), &scale);
            (found, v)
        }
        Target::Whole | Target::Metric => {
            let v = compare(&sub, &printed, erratum.as_ref(), &scale);
            (sub, v)
        }
    };
    Ok(ProbeReport {
        case: p.case,
        label: p.label.to_string(),
        bindings: bindings.iter().map(|b| b.to_string()).collect(),
        computed: display_unscaled(&found, &scale),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[ignore]
    fn print_reports() {
        for t in Theorem::ALL {
            println!("{}", verify(t, 4).unwrap());
        }
    }
}
