//! Published values the classification is checked against: leading
//! coefficients as functions of the degree `m`, intermediate coefficients of
//! the low-degree and circle eliminations, and the expected solution
//! families.
//!
//! Comparisons are exact up to a global sign (the sign of `H1` depends on
//! the orientation of the normal) and a declared positive normalizer when
//! the published equation was divided by a power of `h`.

use crate::minkowski::AxisKind;
use crate::surface::Branch;
use crate::symbolic::parse::parse_poly;
use crate::symbolic::{BasisTerm, ParamPoly};

use super::{CurveCase, Equation, Theorem};

/// Leading coefficient of a condition for a polynomial graph of degree `m`.
#[derive(Clone, Copy, Debug)]
pub struct DegreeFormula {
    pub degree: fn(usize) -> usize,
    pub degree_text: &'static str,
    /// Template in `m` and `a_m`, e.g. `-m^3*a_m^3`.
    pub coeff: &'static str,
    pub normalizer: &'static str,
    /// The value the computation supports when the published one differs.
    pub erratum: Option<&'static str>,
}

impl DegreeFormula {
    pub fn instantiate(template: &str, m: usize) -> ParamPoly {
        let src = template.replace("a_m", "\u{1}").replace('m', &format!("({m})")).replace('\u{1}', &format!("a{m}"));
        parse_poly(&src).expect("well-formed template")
    }
}

pub fn degree_formula(axis: AxisKind, eq: Equation) -> Option<DegreeFormula> {
    use AxisKind::*;
    let f = |degree, degree_text, coeff| DegreeFormula { degree, degree_text, coeff, normalizer: "1", erratum: None };
    Some(match (axis, eq) {
        (Timelike, Equation::MeanZero) => f(|m| 3 * m - 1, "3m-1", "-m^3*a_m^3"),
        (Timelike, Equation::MeanConstant { .. }) => f(|m| 6 * m, "6m", "4*H^2*m^6*a_m^6"),
        (Spacelike, Equation::MeanZero) => f(|m| 3 * m - 2, "3m-2", "h*a_m^3*m*(m-1)^2"),
        (Spacelike, Equation::MeanConstant { .. }) => f(|m| 12 * m - 6, "12m-6", "4*H^2*m^6*a_m^12"),
        (Lightlike, Equation::MeanZero) => f(|m| m - 1, "m-1", "-4*h^2*m*a_m*(2*m-3)"),
        (Lightlike, Equation::MeanConstant { .. }) => f(|m| 6 * m - 6, "6m-6", "-256*H^2*h^6*m^6*a_m^6"),
        (Timelike, Equation::GaussZero) => f(|m| 2 * m, "2m", "-m^2*(m-1)*a_m^2"),
        (Timelike, Equation::GaussConstant) => f(|m| 4 * m, "4m", "m^4*a_m^4*K"),
        (Spacelike, Equation::GaussZero) => f(|m| 4 * m - 4, "4m-4", "-h^2*m^4*a_m^4"),
        (Spacelike, Equation::GaussConstant) => f(|m| 8 * m - 4, "8m-4", "m^4*a_m^8*K"),
        (Lightlike, Equation::GaussZero) => f(|m| 2 * m - 3, "2m-3", "-8*h^3*m^2*(m-1)*a_m^2"),
        (Lightlike, Equation::GaussConstant) => f(|m| 4 * m - 4, "4m-4", "16*h^4*m^4*a_m^4*K"),
        (Timelike, Equation::MeanSquaredEqualsGauss) => f(|m| 6 * m - 2, "6m-2", "m^6*a_m^6"),
        (Spacelike, Equation::MeanSquaredEqualsGauss) => DegreeFormula {
            degree: |m| 8 * m - 6,
            degree_text: "8m-6",
            coeff: "-4*h*m^6*a_m^6",
            normalizer: "h",
            erratum: Some("-4*h*m^6*a_m^8"),
        },
        (Lightlike, Equation::MeanSquaredEqualsGauss) => DegreeFormula {
            degree: |m| 4 * m - 5,
            degree_text: "4m-5",
            coeff: "-8*h^2*m^4*(m-1)*a_m^4",
            normalizer: "16*h^3",
            erratum: None,
        },
    })
}

/// What part of the condition a probe inspects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// Leading term, with its index.
    Leading(u32),
    Coeff(BasisTerm),
    /// The whole condition as an expression in `s` or `u`.
    Whole,
    /// The metric determinant `W`.
    Metric,
}

/// `(parameter, power, numerator, denominator)`.
pub type BindingSpec = (&'static str, u8, &'static str, &'static str);

/// One published intermediate value.
#[derive(Clone, Copy, Debug)]
pub struct Probe {
    pub theorem: Theorem,
    pub axis: AxisKind,
    pub eq: Equation,
    pub case: CurveCase,
    pub bindings: &'static [BindingSpec],
    pub target: Target,
    pub printed: &'static str,
    pub normalizer: &'static str,
    pub erratum: Option<&'static str>,
    pub label: &'static str,
}

const HZ: Equation = Equation::MeanZero;
const HP: Equation = Equation::MeanConstant { sigma: 1 };
const HN: Equation = Equation::MeanConstant { sigma: -1 };
const KZ: Equation = Equation::GaussZero;
const KC: Equation = Equation::GaussConstant;
const HK: Equation = Equation::MeanSquaredEqualsGauss;
const T: AxisKind = AxisKind::Timelike;
const S: AxisKind = AxisKind::Spacelike;
const L: AxisKind = AxisKind::Lightlike;
const P0: CurveCase = CurveCase::Poly(0);
const P1: CurveCase = CurveCase::Poly(1);
const CP: CurveCase = CurveCase::Circle(Branch::Plus);
const NC: CurveCase = CurveCase::NullCircle;

const A1P: &[BindingSpec] = &[("a1", 1, "1", "1")];
const A1M: &[BindingSpec] = &[("a1", 1, "-1", "1")];
const CENTERED: &[BindingSpec] = &[("lambda", 1, "0", "1"), ("mu", 1, "0", "1")];
const H_TIMELIKE_CIRCLE: &[BindingSpec] = &[("H", 2, "1", "h^2 + r^2")];
const H_TIMELIKE_CIRCLE_CENTERED: &[BindingSpec] = &[("H", 2, "1", "h^2 + r^2"), ("lambda", 1, "0", "1")];

const fn probe(
    theorem: Theorem,
    axis: AxisKind,
    eq: Equation,
    case: CurveCase,
    bindings: &'static [BindingSpec],
    target: Target,
    printed: &'static str,
    label: &'static str,
) -> Probe {
    Probe { theorem, axis, eq, case, bindings, target, printed, normalizer: "1", erratum: None, label }
}

const fn with_normalizer(p: Probe, normalizer: &'static str) -> Probe {
    Probe { normalizer, ..p }
}

const fn with_erratum(p: Probe, erratum: &'static str) -> Probe {
    Probe { erratum: Some(erratum), ..p }
}

use Target::{Coeff, Leading, Metric, Whole};
use Theorem::{T1, T2, T3, T4};

pub const PROBES: &[Probe] = &[
    // constant mean curvature, polynomial graphs
    probe(T1, T, HZ, P1, &[], Leading(2), "a1*(1 - a1^2)", "leading coefficient"),
    probe(T1, T, HZ, P1, A1P, Whole, "2*h^2", "H1"),
    probe(T1, T, HZ, P1, A1M, Whole, "2*h^2", "H1"),
    probe(T1, T, HP, P1, &[], Leading(6), "4*H^2*(1 - a1^2)^3", "leading coefficient"),
    probe(T1, T, HN, P1, &[], Leading(6), "4*H^2*(1 - a1^2)^3", "leading coefficient"),
    probe(T1, T, HN, P1, A1P, Metric, "-h^2", "W"),
    probe(T1, T, HN, P1, A1M, Metric, "-h^2", "W"),
    probe(T1, T, HN, P1, A1P, Whole, "4*h^4*(-1 + h^2*H^2)", "condition"),
    probe(T1, T, HN, P1, A1M, Whole, "4*h^4*(-1 + h^2*H^2)", "condition"),
    probe(T1, S, HZ, P0, &[], Whole, "h*a0", "H1"),
    with_erratum(probe(T1, S, HZ, P1, &[], Whole, "h*a0*(1 - a1)^2", "H1"), "h*a0*(1 - a1^2)"),
    probe(T1, S, HZ, P1, A1P, Metric, "-a0^2", "W"),
    probe(T1, S, HZ, P1, A1M, Metric, "-a0^2", "W"),
    probe(T1, S, HP, P1, &[], Leading(6), "4*H^2*(a1^2 - 1)^6", "leading coefficient"),
    probe(T1, S, HN, P1, &[], Leading(6), "4*H^2*(a1^2 - 1)^6", "leading coefficient"),
    probe(T1, L, HZ, P1, &[], Leading(0), "-4*h^2*a1*(2 - 3)", "leading coefficient"),
    probe(T1, L, HP, P1, &[], Leading(3), "256*h^3*H^2", "leading coefficient"),
    probe(T1, L, HN, P1, &[], Leading(3), "256*h^3*H^2", "leading coefficient"),
    // circles
    probe(T2, T, HZ, CP, &[], Coeff(BasisTerm::Cosh(3)), "1/2*r^3*(h^2 + r^2)", "A3"),
    probe(T2, T, HP, CP, &[], Coeff(BasisTerm::Cosh(6)), "-1/8*r^6*(h^2 + r^2)^2*(1 + H^2*(h^2 + r^2))", "A6"),
    probe(T2, T, HN, CP, &[], Coeff(BasisTerm::Cosh(6)), "-1/8*r^6*(h^2 + r^2)^2*(-1 + H^2*(h^2 + r^2))", "A6"),
    probe(T2, T, HN, CP, H_TIMELIKE_CIRCLE, Coeff(BasisTerm::Cosh(5)), "lambda*r^7*(h^2 + r^2)/4", "A5"),
    probe(T2, T, HN, CP, H_TIMELIKE_CIRCLE_CENTERED, Coeff(BasisTerm::Cosh(2)), "3*h^4*r^6/2", "A2"),
    probe(
        T2,
        S,
        HZ,
        CP,
        &[],
        Whole,
        "h*r^2*(-lambda^2 + mu^2 + h^2 - r*lambda*cosh(u) + r*mu*sinh(u))",
        "H1",
    ),
    probe(T2, S, HZ, CP, CENTERED, Whole, "h^3*r^2", "H1 centered"),
    probe(
        T2,
        S,
        HP,
        CP,
        &[],
        Coeff(BasisTerm::Cosh(6)),
        "-1/8*(lambda^2 + mu^2)*(lambda^4 + 14*lambda^2*mu^2 + mu^4)*H^2*r^6",
        "A6",
    ),
    probe(
        T2,
        S,
        HN,
        CP,
        &[],
        Coeff(BasisTerm::Cosh(6)),
        "-1/8*(lambda^2 + mu^2)*(lambda^4 + 14*lambda^2*mu^2 + mu^4)*H^2*r^6",
        "A6",
    ),
    probe(T2, S, HN, CP, CENTERED, Whole, "h^6*r^4*(-1 + 4*H^2*r^2)", "condition centered"),
    with_erratum(
        probe(T2, L, HZ, NC, &[], Whole, "4*c^2*h^2*(-2*mu + c*theta - c*h*s)", "H1"),
        "4*c^2*h^2*(-2*mu + c*theta - c*s)",
    ),
    probe(T2, L, HP, NC, &[], Leading(6), "-256*c^6*h^6*H^2", "leading coefficient"),
    probe(T2, L, HN, NC, &[], Leading(6), "-256*c^6*h^6*H^2", "leading coefficient"),
    // constant Gauss curvature
    probe(T3, T, KZ, P0, &[], Whole, "h^2", "K W^2 + K1"),
    probe(T3, T, KZ, P1, &[], Whole, "h^2", "K W^2 + K1"),
    probe(T3, T, KC, P1, &[], Leading(4), "K*(1 - a1^2)^2", "A4"),
    probe(T3, T, KC, P1, A1P, Whole, "h^2*(-1 + h^2*K)", "condition"),
    probe(T3, T, KC, P1, A1M, Whole, "h^2*(-1 + h^2*K)", "condition"),
    probe(T3, T, KC, P0, &[], Leading(4), "K", "A4"),
    with_erratum(probe(T3, S, KZ, P1, &[], Whole, "h^2*(1 - a1^2)", "K1"), "h^2*(1 - a1^2)^2"),
    probe(T3, S, KZ, P0, &[], Whole, "-h^2", "K1"),
    probe(T3, S, KC, P1, &[], Leading(4), "K*(1 - a1^2)^4", "A4"),
    probe(T3, S, KC, P1, A1P, Whole, "K*a0^4", "condition"),
    probe(T3, S, KC, P1, A1M, Whole, "K*a0^4", "condition"),
    probe(T3, S, KC, P1, &[("a1", 1, "1", "1"), ("a0", 1, "0", "1")], Metric, "0", "W with a1 = 1, a0 = 0"),
    probe(T3, S, KC, P0, &[], Leading(4), "K", "A4"),
    probe(T3, L, KZ, P0, &[], Whole, "-4*h^2", "K1"),
    probe(T3, L, KZ, P1, &[], Whole, "-4*h^2", "K1"),
    probe(T3, L, KC, P0, &[], Leading(2), "16*h^2*K", "A2"),
    probe(T3, L, KC, P1, &[], Leading(2), "16*h^2*K", "A2"),
    // H^2 = K
    probe(T4, T, HK, P1, &[], Leading(4), "a1^2*(1 - a1^2)^2", "A4"),
    probe(T4, T, HK, P1, A1P, Metric, "-h^2", "W"),
    probe(T4, S, HK, P1, &[], Leading(2), "4*h^2*(1 - a1^2)^4", "A2"),
    with_normalizer(probe(T4, S, HK, P0, &[], Whole, "-4*s^2 + 4*h^2 + a0^2", "condition"), "h^2"),
    with_normalizer(probe(T4, L, HK, P1, &[], Whole, "3*h*a1^2 + 4*s", "condition"), "16*h^3"),
    with_erratum(with_normalizer(probe(T4, L, HK, P0, &[], Whole, "h*s", "condition"), "16*h^3"), "4*s"),
];

/// A solution family the theorems predict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpectedFamily {
    pub bindings: &'static [&'static str],
    pub residual: &'static [&'static str],
    pub surface: &'static str,
}

const fn fam(bindings: &'static [&'static str], residual: &'static [&'static str], surface: &'static str) -> ExpectedFamily {
    ExpectedFamily { bindings, residual, surface }
}

pub fn expected_families(axis: AxisKind, eq: Equation, case: CurveCase) -> Vec<ExpectedFamily> {
    use CurveCase::*;
    const TIMELIKE_RULED: &str = "timelike-axis ruled surface";
    const SPACELIKE_RULED: &str = "spacelike-axis ruled surface";
    const HYP_PLUS: &str = "hyperbolic cylinder y^2 - z^2 = r^2";
    const HYP_MINUS: &str = "hyperbolic cylinder y^2 - z^2 = -r^2";
    const NULL_CYLINDER: &str = "parabolic null cylinder";
    let spacelike_ruled = || {
        vec![fam(&["a1 = -1"], &["a0 ≠ 0"], SPACELIKE_RULED), fam(&["a1 = 1"], &["a0 ≠ 0"], SPACELIKE_RULED)]
    };
    match (axis, eq, case) {
        (T, HZ, Poly(0)) => vec![fam(&[], &[], "helicoid of the first kind")],
        (T, HN, Poly(1)) => vec![
            fam(&["H^2 = 1/h^2", "a1 = -1"], &[], TIMELIKE_RULED),
            fam(&["H^2 = 1/h^2", "a1 = 1"], &[], TIMELIKE_RULED),
        ],
        (T, HN, Line) => vec![fam(&["H^2 = 1/(4*r^2)"], &[], "Lorentzian cylinder")],
        (S, HZ, Poly(0)) => vec![fam(&["a0 = 0"], &[], "helicoid of the second kind")],
        (S, HZ, Poly(1)) => {
            let mut v = vec![fam(&["a0 = 0"], &["a1 + 1 ≠ 0", "a1 - 1 ≠ 0"], "helicoid of the second or third kind")];
            v.extend(spacelike_ruled());
            v
        }
        (S, HZ, Line) => vec![fam(&["b = 0"], &[], "helicoid of the third kind")],
        (L, HZ, Poly(0)) => vec![fam(&[], &[], "Cayley surface")],
        (L, HZ, Line) => vec![fam(&[], &[], NULL_CYLINDER)],
        (S, HN, Circle(Branch::Plus)) => vec![fam(&["H^2 = 1/(4*r^2)", "lambda = 0", "mu = 0"], &[], HYP_PLUS)],
        (S, HP, Circle(Branch::Minus)) => vec![fam(&["H^2 = 1/(4*r^2)", "lambda = 0", "mu = 0"], &[], HYP_MINUS)],
        (T, KZ, Line) => vec![fam(&[], &[], "Lorentzian cylinder")],
        (T, KC, Poly(1)) => {
            vec![fam(&["K = 1/h^2", "a1 = -1"], &[], TIMELIKE_RULED), fam(&["K = 1/h^2", "a1 = 1"], &[], TIMELIKE_RULED)]
        }
        (S, KZ, Poly(1)) => spacelike_ruled(),
        (L, KZ, Line) => vec![fam(&[], &[], NULL_CYLINDER)],
        (S, KZ, Circle(Branch::Plus)) => vec![fam(&["lambda = 0", "mu = 0"], &[], HYP_PLUS)],
        (S, KZ, Circle(Branch::Minus)) => vec![fam(&["lambda = 0", "mu = 0"], &[], HYP_MINUS)],
        (T, HK, Poly(1)) => vec![fam(&["a1 = -1"], &[], TIMELIKE_RULED), fam(&["a1 = 1"], &[], TIMELIKE_RULED)],
        (S, HK, Poly(1)) => spacelike_ruled(),
        (L, HK, Line) => vec![fam(&[], &[], NULL_CYLINDER)],
        _ => vec![],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn templates_instantiate() {
        assert_eq!(DegreeFormula::instantiate("-m^3*a_m^3", 2), parse_poly("-8*a2^3").unwrap());
        assert_eq!(DegreeFormula::instantiate("-4*h^2*m*a_m*(2*m-3)", 3), parse_poly("-36*h^2*a3").unwrap());
        assert_eq!(DegreeFormula::instantiate("h*a_m^3*m*(m-1)^2", 12), parse_poly("1452*h*a12^3").unwrap());
    }

    #[test]
    fn probes_parse() {
        for p in PROBES {
            assert!(crate::symbolic::parse::parse_expr(p.printed).is_ok(), "{}", p.printed);
            assert!(parse_poly(p.normalizer).is_ok());
            for (name, _, n, d) in p.bindings {
                assert!(name.parse::<crate::symbolic::Param>().is_ok());
                assert!(parse_poly(n).is_ok() && parse_poly(d).is_ok());
            }
        }
    }
}
