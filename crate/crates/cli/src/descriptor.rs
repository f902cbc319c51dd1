//! Curve descriptors and exact number parsing.
//!
//! ```text
//! poly:a0,a1,...,am
//! circle:+            circle:-[r=2,lambda=0,mu=0]
//! nullcircle          nullcircle[c=1,theta=0,lambda=0,mu=0]
//! vline:r             hline:b
//! ```
//!
//! Circle parameters may come from the bracket or from separate flags. The
//! `Display` form of the parsed [`CurveSpec`] is the canonical descriptor.

use std::str::FromStr;

use helicoid::surface::{Branch, CurveSpec};
use helicoid::symbolic::{ParamPoly, Rational};
use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DescriptorError {
    #[error("invalid number `{0}`; use an integer, p/q or a decimal")]
    Number(String),
    #[error("unknown curve kind in `{0}`; expected poly:, circle:+, circle:-, nullcircle, vline: or hline:")]
    Kind(String),
    #[error("circle branch must be + or -, got `{0}`")]
    Branch(String),
    #[error("missing {0}")]
    Missing(&'static str),
    #[error("{0} given twice with different values")]
    Conflict(&'static str),
    #[error("unknown parameter `{0}`")]
    UnknownParam(String),
    #[error("malformed parameter list in `{0}`")]
    Malformed(String),
    #[error("expected {0} comma-separated numbers, got `{1}`")]
    Tuple(usize, String),
}

/// Exact value of `7`, `-3/4`, `2.125` or `1e-3`.
pub fn parse_rational(src: &str) -> Result<Rational, DescriptorError> {
    let bad = || DescriptorError::Number(src.to_string());
    let s = src.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if s.contains('/') {
        let r = Rational::from_str(s).map_err(|_| bad())?;
        return Ok(r);
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Rational::from_integer(all * Pow::pow(&ten, scale as u32))
    } else {
        Rational::new(all, Pow::pow(&ten, scale.unsigned_abs()))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// `n` comma-separated floats, e.g. `0.3,0.7`.
pub fn parse_floats<const N: usize>(src: &str) -> Result<[f64; N], DescriptorError> {
    let bad = || DescriptorError::Tuple(N, src.to_string());
    let v: Vec<f64> = src.split(',').map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
    let arr: [f64; N] = v.try_into().map_err(|_| bad())?;
    if arr.iter().all(|x| x.is_finite()) {
        Ok(arr)
    } else {
        Err(bad())
    }
}

/// Circle parameters given as separate flags.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CurveParams {
    pub r: Option<Rational>,
    pub lambda: Option<Rational>,
    pub mu: Option<Rational>,
    pub c: Option<Rational>,
    pub theta: Option<Rational>,
}

fn constant(q: Rational) -> ParamPoly {
    ParamPoly::constant(q)
}

/// Splits `kind[k=v,...]` into the kind and its bracket entries.
fn split_bracket(src: &str) -> Result<(&str, Vec<(&str, &str)>), DescriptorError> {
    let Some(open) = src.find('[') else {
        return Ok((src, vec![]));
    };
    let inner = src[open + 1..].strip_suffix(']').ok_or_else(|| DescriptorError::Malformed(src.to_string()))?;
    let entries = inner
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.split_once('=').map(|(k, v)| (k.trim(), v.trim())))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| DescriptorError::Malformed(src.to_string()))?;
    Ok((&src[..open], entries))
}

fn merge(
    name: &'static str,
    flag: &Option<Rational>,
    bracket: &[(&str, &str)],
) -> Result<Option<Rational>, DescriptorError> {
    let mut found: Option<Rational> = None;
    for (k, v) in bracket {
        if *k == name {
            if found.is_some() {
                return Err(DescriptorError::Conflict(name));
            }
            found = Some(parse_rational(v)?);
        }
    }
    match (found, flag) {
        (Some(a), Some(b)) if &a != b => Err(DescriptorError::Conflict(name)),
        (Some(a), _) => Ok(Some(a)),
        (None, b) => Ok(b.clone()),
    }
}

fn check_keys(bracket: &[(&str, &str)], allowed: &[&str]) -> Result<(), DescriptorError> {
    match bracket.iter().find(|(k, _)| !allowed.contains(k)) {
        Some((k, _)) => Err(DescriptorError::UnknownParam(k.to_string())),
        None => Ok(()),
    }
}

pub fn parse_curve(src: &str, flags: &CurveParams) -> Result<CurveSpec, DescriptorError> {
    let src = src.trim();
    if let Some(list) = src.strip_prefix("poly:") {
        let coeffs = list.split(',').map(|c| parse_rational(c).map(constant)).collect::<Result<Vec<_>, _>>()?;
        return Ok(CurveSpec::PolyGraph { coeffs });
    }
    if let Some(v) = src.strip_prefix("vline:") {
        return Ok(CurveSpec::VerticalLine { offset: constant(parse_rational(v)?) });
    }
    if let Some(v) = src.strip_prefix("hline:") {
        return Ok(CurveSpec::HorizontalLine { offset: constant(parse_rational(v)?) });
    }
    let zero = || Rational::zero();
    if let Some(rest) = src.strip_prefix("circle:") {
        let (sign, bracket) = split_bracket(rest)?;
        let branch = match sign {
            "+" => Branch::Plus,
            "-" => Branch::Minus,
            other => return Err(DescriptorError::Branch(other.to_string())),
        };
        check_keys(&bracket, &["r", "lambda", "mu"])?;
        let r = merge("r", &flags.r, &bracket)?.ok_or(DescriptorError::Missing("circle radius r"))?;
        let lambda = merge("lambda", &flags.lambda, &bracket)?.unwrap_or_else(zero);
        let mu = merge("mu", &flags.mu, &bracket)?.unwrap_or_else(zero);
        return Ok(CurveSpec::Circle { branch, r: constant(r), lambda: constant(lambda), mu: constant(mu) });
    }
    if src.starts_with("nullcircle") {
        let (kind, bracket) = split_bracket(src)?;
        if kind != "nullcircle" {
            return Err(DescriptorError::Kind(src.to_string()));
        }
        check_keys(&bracket, &["c", "theta", "lambda", "mu"])?;
        let c = merge("c", &flags.c, &bracket)?.ok_or(DescriptorError::Missing("null circle scale c"))?;
        let theta = merge("theta", &flags.theta, &bracket)?.unwrap_or_else(zero);
        let lambda = merge("lambda", &flags.lambda, &bracket)?.unwrap_or_else(zero);
        let mu = merge("mu", &flags.mu, &bracket)?.unwrap_or_else(zero);
        return Ok(CurveSpec::NullCircle {
            c: constant(c),
            theta: constant(theta),
            lambda: constant(lambda),
            mu: constant(mu),
        });
    }
    Err(DescriptorError::Kind(src.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use helicoid::symbolic::rat;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("2.125").unwrap(), rat(17, 8));
        assert_eq!(parse_rational("-.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_rational("2.5E2").unwrap(), rat(250, 1));
        for bad in ["", "x", "1/0", "1.2.3", "--1", "1e", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn descriptors() {
        let none = CurveParams::default();
        assert_eq!(parse_curve("poly:1,1/2", &none).unwrap().to_string(), "poly:1,1/2");
        assert_eq!(parse_curve("vline:0.5", &none).unwrap().to_string(), "vline:1/2");
        let flags = CurveParams { r: Some(rat(2, 1)), ..Default::default() };
        assert_eq!(parse_curve("circle:+", &flags).unwrap().to_string(), "circle:+[r=2,lambda=0,mu=0]");
        assert_eq!(
            parse_curve("circle:-[r=2,mu=1]", &flags).unwrap().to_string(),
            "circle:-[r=2,lambda=0,mu=1]"
        );
        assert_eq!(parse_curve("circle:+", &none), Err(DescriptorError::Missing("circle radius r")));
        assert_eq!(parse_curve("circle:+[r=3]", &flags), Err(DescriptorError::Conflict("r")));
        assert_eq!(parse_curve("circle:*", &flags), Err(DescriptorError::Branch("*".into())));
        assert!(matches!(parse_curve("circle:+[q=1]", &flags), Err(DescriptorError::UnknownParam(_))));
        assert!(matches!(parse_curve("spiral:1", &none), Err(DescriptorError::Kind(_))));
    }

    #[test]
    fn float_tuples() {
        assert_eq!(parse_floats::<2>("0.3, 0.7").unwrap(), [0.3, 0.7]);
        assert!(parse_floats::<2>("0.3").is_err());
        assert!(parse_floats::<3>("1,2,nan").is_err());
    }
}
