use helicoid::surface::{Branch, CurveSpec};
use helicoid::symbolic::{rat, ParamPoly};
use helicoid_cli::descriptor::{parse_curve, parse_rational, CurveParams};
use proptest::prelude::*;

fn q() -> impl Strategy<Value = ParamPoly> {
    (-50i64..50, 1i64..12).prop_map(|(n, d)| ParamPoly::constant(rat(n, d)))
}

fn nonzero_q() -> impl Strategy<Value = ParamPoly> {
    q().prop_filter("nonzero", |p| !p.is_zero())
}

fn curve() -> impl Strategy<Value = CurveSpec> {
    prop_oneof![
        prop::collection::vec(q(), 1..6).prop_map(|coeffs| CurveSpec::PolyGraph { coeffs }),
        (any::<bool>(), nonzero_q(), q(), q()).prop_map(|(plus, r, lambda, mu)| CurveSpec::Circle {
            branch: if plus { Branch::Plus } else { Branch::Minus },
            r,
            lambda,
            mu
        }),
        (nonzero_q(), q(), q(), q()).prop_map(|(c, theta, lambda, mu)| CurveSpec::NullCircle { c, theta, lambda, mu }),
        q().prop_map(|offset| CurveSpec::VerticalLine { offset }),
        q().prop_map(|offset| CurveSpec::HorizontalLine { offset }),
    ]
}

proptest! {
    #[test]
    fn canonical_descriptor_round_trips(c in curve()) {
        let text = c.to_string();
        let parsed = parse_curve(&text, &CurveParams::default()).unwrap();
        prop_assert_eq!(&parsed, &c);
        prop_assert_eq!(parsed.to_string(), text);
    }

    #[test]
    fn decimals_are_exact(n in -100_000i64..100_000, places in 0u32..5) {
        let d = 10i64.pow(places);
        let text = format!("{}{}.{:0width$}", if n < 0 { "-" } else { "" }, n.abs() / d, n.abs() % d, width = places as usize);
        prop_assert_eq!(parse_rational(&text).unwrap(), rat(n, d));
    }
}

#[test]
fn flags_and_brackets_agree() {
    let flags = CurveParams { r: Some(rat(3, 2)), mu: Some(rat(-1, 1)), ..Default::default() };
    let a = parse_curve("circle:+", &flags).unwrap();
    let b = parse_curve("circle:+[r=1.5,lambda=0,mu=-1]", &CurveParams::default()).unwrap();
    assert_eq!(a, b);
    assert_eq!(parse_curve(&a.to_string(), &flags).unwrap(), a);
}
