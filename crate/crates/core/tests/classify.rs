use helicoid::classify::reference::degree_formula;
use helicoid::classify::solver::substitute_cleared;
use helicoid::classify::*;
use helicoid::minkowski::AxisKind;
use helicoid::surface::{condition, curvature_bundle, Branch};
use helicoid::symbolic::parse::parse_poly;

fn families(axis: AxisKind, case: CurveCase, eq: Equation) -> Vec<Family> {
    problem(axis, case, eq)
        .unwrap()
        .solve()
        .into_iter()
        .filter_map(|l| match l {
            Leaf::Family(f) => Some(f),
            _ => None,
        })
        .collect()
}

#[test]
fn theorem_names_parse() {
    for t in Theorem::ALL {
        assert_eq!(t.to_string().parse::<Theorem>().unwrap(), t);
    }
    assert_eq!("T3".parse::<Theorem>().unwrap(), Theorem::T3);
    assert!("t5".parse::<Theorem>().is_err());
}

#[test]
fn max_degree_is_validated() {
    assert_eq!(verify(Theorem::T1, 1).unwrap_err(), ClassifyError::MaxDegree(1));
    assert!(classify_poly_cgc(AxisKind::Timelike, 99).is_err());
}

#[test]
fn every_theorem_agrees_up_to_recorded_errata() {
    for t in Theorem::ALL {
        let r = verify(t, 6).unwrap();
        assert!(r.status.is_ok(), "{t}: {}", r);
        assert_eq!(r.axes(), AxisKind::ALL.to_vec());
    }
}

#[test]
fn every_degree_is_accounted_for() {
    let r = verify(Theorem::T1, 6).unwrap();
    for sec in &r.sections {
        let polys: Vec<usize> = sec
            .cases
            .iter()
            .filter_map(|c| match c.case {
                CurveCase::Poly(m) => Some(m),
                _ => None,
            })
            .collect();
        assert_eq!(polys, (0..=6).collect::<Vec<_>>());
        assert!(sec.cases.iter().any(|c| c.case == CurveCase::Line));
    }
}

#[test]
fn certificates_follow_the_degree_formulas() {
    let eqs = [
        Equation::MeanZero,
        Equation::MeanConstant { sigma: 1 },
        Equation::MeanConstant { sigma: -1 },
        Equation::GaussZero,
        Equation::GaussConstant,
        Equation::MeanSquaredEqualsGauss,
    ];
    for axis in AxisKind::ALL {
        for eq in eqs {
            let f = degree_formula(axis, eq).expect("formula");
            for m in 2..=6 {
                let cert = leading_certificate(axis, m, eq).unwrap().expect("certificate");
                assert!(cert.check(), "{axis} {eq} m = {m}: {cert}");
                assert_eq!(cert.basis_index() as usize, (f.degree)(m), "{axis} {eq} m = {m}");
            }
        }
    }
}

#[test]
fn timelike_mean_zero_certificates() {
    for m in 2..=6 {
        let cert = leading_certificate(AxisKind::Timelike, m, Equation::MeanZero).unwrap().unwrap();
        assert_eq!(cert.basis_index() as usize, 3 * m - 1);
        let a = format!("a{m}");
        let expected = parse_poly(&format!("-{}*{a}^3", m * m * m)).unwrap();
        assert_eq!(cert.coefficient, expected);
    }
}

#[test]
fn lightlike_mean_zero_certificates() {
    for m in 2..=6 {
        let cert = leading_certificate(AxisKind::Lightlike, m, Equation::MeanZero).unwrap().unwrap();
        let c = -4 * (m as i64) * (2 * m as i64 - 3);
        assert_eq!(cert.coefficient, parse_poly(&format!("{c}*h^2*a{m}")).unwrap());
    }
}

#[test]
fn timelike_linear_minimal_graphs_are_rejected() {
    let leaves = problem(AxisKind::Timelike, CurveCase::Poly(1), Equation::MeanZero).unwrap().solve();
    assert_eq!(leaves.len(), 2);
    for l in leaves {
        let Leaf::Contradiction(c) = l else { panic!("{l}") };
        assert_eq!(c.coefficient, parse_poly("h^2").unwrap());
    }
}

#[test]
fn expected_families_appear() {
    let f = families(AxisKind::Spacelike, CurveCase::Circle(Branch::Plus), Equation::MeanConstant { sigma: -1 });
    assert_eq!(f.len(), 1);
    assert_eq!(f[0].binding_texts(), ["H^2 = 1/(4*r^2)", "lambda = 0", "mu = 0"]);
    let f = families(AxisKind::Timelike, CurveCase::Poly(1), Equation::GaussConstant);
    assert_eq!(f.len(), 2);
    assert!(f.iter().all(|x| x.binding_texts().contains(&"K = 1/h^2".to_string())));
    let f = families(AxisKind::Timelike, CurveCase::Line, Equation::MeanConstant { sigma: -1 });
    assert_eq!(f[0].binding_texts(), ["H^2 = 1/(4*r^2)"]);
    assert!(families(AxisKind::Lightlike, CurveCase::NullCircle, Equation::MeanZero).is_empty());
    assert!(families(AxisKind::Spacelike, CurveCase::Poly(1), Equation::GaussConstant).is_empty());
}

#[test]
fn families_substitute_to_zero() {
    let eqs = [
        Equation::MeanZero,
        Equation::MeanConstant { sigma: 1 },
        Equation::MeanConstant { sigma: -1 },
        Equation::GaussZero,
        Equation::GaussConstant,
        Equation::MeanSquaredEqualsGauss,
    ];
    for axis in AxisKind::ALL {
        let mut cases = vec![CurveCase::Poly(0), CurveCase::Poly(1), CurveCase::Line];
        match axis {
            AxisKind::Lightlike => cases.push(CurveCase::NullCircle),
            _ => cases.extend([CurveCase::Circle(Branch::Plus), CurveCase::Circle(Branch::Minus)]),
        }
        for eq in eqs {
            for &case in &cases {
                let b = curvature_bundle(&case.spec(axis).unwrap()).unwrap();
                let cond = condition(&b, eq.condition()).unwrap().substitute(&eq.fixed());
                for l in problem(axis, case, eq).unwrap().solve() {
                    match &l {
                        Leaf::Family(f) => {
                            assert!(substitute_cleared(&cond, &f.bindings).0.is_zero(), "{axis} {eq} {case}: {l}")
                        }
                        Leaf::Contradiction(c) => assert!(c.check(), "{axis} {eq} {case}: {l}"),
                        Leaf::Unresolved { .. } => panic!("{axis} {eq} {case}: {l}"),
                        _ => {}
                    }
                }
            }
        }
    }
}

#[test]
fn circle_probes_match_exactly() {
    let t2 = verify(Theorem::T2, 2).unwrap();
    let exact = t2.all_probes().filter(|p| p.verdict.is_exact()).count();
    assert!(exact >= 6, "{t2}");
    let errata: Vec<_> = t2.all_probes().filter(|p| !p.verdict.is_exact()).collect();
    assert_eq!(errata.len(), 1);
    assert_eq!(errata[0].case, CurveCase::NullCircle);
}

#[test]
fn report_lists_certificates() {
    let text = verify(Theorem::T1, 3).unwrap().to_string();
    assert!(text.contains("degree 5: coeff = -8*a2^3 ≠ 0 given {a2 ≠ 0}"), "{text}");
    assert!(text.contains("[Lorentzian cylinder]"));
}

#[test]
fn catalog_entries_pass() {
    let checks = catalog::check_catalog();
    assert_eq!(checks.len(), 10);
    assert!(checks.iter().all(|c| c.passed()));
}
