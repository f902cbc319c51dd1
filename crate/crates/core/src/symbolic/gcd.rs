//! Multivariate gcd over ℚ by recursive primitive remainder sequences, and a
//! restricted factorization: rational and monomial content, content splitting
//! per variable, squarefree decomposition and rational roots of univariate
//! factors. Irreducible multivariate factors are returned as they are.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::param::{Monomial, Param};
use super::poly::{ParamPoly, Rational};

/// Scales `p` to coprime integer coefficients with positive leading term.
pub fn normalize(p: &ParamPoly) -> ParamPoly {
    if p.is_zero() {
        return ParamPoly::zero();
    }
    p.scale(&p.rational_content().recip())
}

pub fn gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return ParamPoly::one();
    }
    let mono = a.monomial_content().gcd(&b.monomial_content());
    let a = strip_monomial(a);
    let b = strip_monomial(b);
    let g = gcd_stripped(&a, &b);
    normalize(&g.mul_term(&mono, &Rational::one()))
}

fn strip_monomial(p: &ParamPoly) -> ParamPoly {
    let m = p.monomial_content();
    if m.is_one() {
        p.clone()
    } else {
        p.exact_div(&ParamPoly::term(m, Rational::one())).expect("monomial content divides")
    }
}

fn gcd_stripped(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return ParamPoly::one();
    }
    let av = a.vars();
    let bv = b.vars();
    let v = *av.iter().chain(bv.iter()).min().expect("nonconstant");
    match (a.contains(v), b.contains(v)) {
        (true, false) => return gcd(&content_in(a, v), b),
        (false, true) => return gcd(a, &content_in(b, v)),
        _ => {}
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let mut p = a.exact_div(&ca).expect("content divides");
    let mut q = b.exact_div(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        let r = pseudo_rem(&p, &q, v);
        p = q;
        q = if r.is_zero() { r } else { primitive_part(&r, v) };
        if !q.is_zero() && q.as_constant().is_some() {
            return c;
        }
    }
    let g = primitive_part(&p, v);
    normalize(&(&c * &g))
}

/// gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &ParamPoly, v: Param) -> ParamPoly {
    let mut g = ParamPoly::zero();
    for c in p.coeffs_in(v).iter().rev() {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.as_constant().is_some() {
            return ParamPoly::one();
        }
    }
    g
}

pub fn primitive_part(p: &ParamPoly, v: Param) -> ParamPoly {
    let c = content_in(p, v);
    normalize(&p.exact_div(&c).expect("content divides"))
}

/// A remainder of `lc(b)^k a` modulo `b` in the variable `v`.
fn pseudo_rem(a: &ParamPoly, b: &ParamPoly, v: Param) -> ParamPoly {
    let bc = b.coeffs_in(v);
    let db = bc.len() - 1;
    let lb = &bc[db];
    let mut r = a.coeffs_in(v);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for x in r.iter_mut() {
            *x = &*x * lb;
        }
        for (i, bi) in bc.iter().enumerate() {
            r[i + shift] -= &lr * bi;
        }
        debug_assert!(r[dr].is_zero());
        while r.last().is_some_and(ParamPoly::is_zero) {
            r.pop();
        }
    }
    ParamPoly::from_coeffs_in(v, &r)
}

/// `unit * Π factor^mult`, each factor normalized and nonconstant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(ParamPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> ParamPoly {
        self.factors
            .iter()
            .fold(ParamPoly::constant(self.unit.clone()), |acc, (f, e)| &acc * &f.pow(*e))
    }
}

pub fn factor(p: &ParamPoly) -> Factorization {
    if p.is_zero() {
        return Factorization { unit: Rational::zero(), factors: Vec::new() };
    }
    let unit = p.rational_content();
    let q = p.scale(&unit.recip());
    let mono = q.monomial_content();
    let mut out: Vec<(ParamPoly, u32)> =
        mono.vars().map(|(v, e)| (ParamPoly::var(v), e as u32)).collect();
    split(&strip_monomial(&q), 1, &mut out);

    let mut merged: Vec<(ParamPoly, u32)> = Vec::new();
    for (f, e) in out {
        let f = normalize(&f);
        if f.as_constant().is_some() {
            continue;
        }
        match merged.iter_mut().find(|(g, _)| *g == f) {
            Some(slot) => slot.1 += e,
            None => merged.push((f, e)),
        }
    }
    merged.sort_by_cached_key(|(f, _)| (f.total_degree(), f.len(), f.to_string()));
    // normalization may have moved signs into the unit
    let check = merged.iter().fold(ParamPoly::one(), |acc, (f, e)| &acc * &f.pow(*e));
    let (_, lead_p) = p.leading().expect("nonzero");
    let (_, lead_c) = check.leading().expect("nonzero");
    Factorization { unit: lead_p / lead_c, factors: merged }
}

fn split(q: &ParamPoly, mult: u32, out: &mut Vec<(ParamPoly, u32)>) {
    if q.as_constant().is_some() {
        return;
    }
    for v in q.vars() {
        let c = content_in(q, v);
        if c.as_constant().is_none() {
            let rest = q.exact_div(&c).expect("content divides");
            split(&c, mult, out);
            split(&rest, mult, out);
            return;
        }
    }
    let v = q.vars()[0];
    for (piece, e) in squarefree(q, v) {
        if piece.vars().len() == 1 {
            for lin in rational_linear_factors(&piece, v) {
                out.push((lin, e * mult));
            }
        } else {
            out.push((piece, e * mult));
        }
    }
}

/// Yun's algorithm in `v` for a polynomial primitive in every variable.
fn squarefree(p: &ParamPoly, v: Param) -> Vec<(ParamPoly, u32)> {
    let dp = p.derivative(v);
    let g = gcd(p, &dp);
    if g.as_constant().is_some() {
        return vec![(p.clone(), 1)];
    }
    let mut out = Vec::new();
    let mut b = p.exact_div(&g).expect("gcd divides");
    let mut c = dp.exact_div(&g).expect("gcd divides");
    let mut i = 1;
    loop {
        let d = &c - &b.derivative(v);
        if d.is_zero() {
            if b.as_constant().is_none() {
                out.push((b, i));
            }
            break;
        }
        let a = gcd(&b, &d);
        if a.as_constant().is_none() {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        c = d.exact_div(&a).expect("gcd divides");
        i += 1;
        if b.as_constant().is_some() {
            break;
        }
    }
    out
}

/// Splits off linear factors `q v - p` for rational roots `p/q` of a
/// univariate polynomial; the unsplit remainder is returned last.
fn rational_linear_factors(p: &ParamPoly, v: Param) -> Vec<ParamPoly> {
    let mut rest = normalize(p);
    let mut out = Vec::new();
    loop {
        if rest.degree_in(v) <= 1 {
            break;
        }
        let coeffs: Vec<BigInt> = rest
            .coeffs_in(v)
            .iter()
            .map(|c| c.as_constant().map(|q| q.to_integer()).unwrap_or_default())
            .collect();
        let Some(root) = find_rational_root(&coeffs) else {
            break;
        };
        let lin = normalize(&ParamPoly::from_coeffs_in(
            v,
            &[ParamPoly::constant(-Rational::from_integer(root.numer().clone())), ParamPoly::constant(Rational::from_integer(root.denom().clone()))],
        ));
        rest = normalize(&rest.exact_div(&lin).expect("root divides"));
        out.push(lin);
    }
    if rest.as_constant().is_none() {
        out.push(rest);
    }
    out
}

const DIVISOR_LIMIT: i64 = 1_000_000;

fn find_rational_root(coeffs: &[BigInt]) -> Option<Rational> {
    let lead = coeffs.last()?.abs().to_i64()?;
    let k = coeffs.iter().position(|c| !c.is_zero())?;
    if k > 0 {
        return Some(Rational::zero());
    }
    let tail = coeffs[0].abs().to_i64()?;
    if lead > DIVISOR_LIMIT || tail > DIVISOR_LIMIT {
        return None;
    }
    let divisors = |n: i64| (1..=n).filter(move |d| n % d == 0);
    for q in divisors(lead) {
        for p in divisors(tail) {
            if p.gcd(&q) != 1 {
                continue;
            }
            for sign in [1, -1] {
                let cand = Rational::new(BigInt::from(sign * p), BigInt::from(q));
                let val = coeffs
                    .iter()
                    .rev()
                    .fold(Rational::zero(), |acc, c| acc * &cand + Rational::from_integer(c.clone()));
                if val.is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// Drops every factor that is a power of a variable in `vars`.
pub fn without_monomial_factors(f: &Factorization, vars: &[Param]) -> Vec<(ParamPoly, u32)> {
    f.factors
        .iter()
        .filter(|(p, _)| {
            !(p.is_monomial() && p.leading().is_some_and(|(m, _)| m.vars().all(|(v, _)| vars.contains(&v))))
        })
        .cloned()
        .collect()
}

/// True when the monomial only involves variables from `vars`.
pub fn monomial_within(m: &Monomial, vars: &[Param]) -> bool {
    m.vars().all(|(v, _)| vars.contains(&v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse::parse_poly;

    fn p(s: &str) -> ParamPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&p("(h+a0)*(h-a1)"), &p("(h+a0)*(h+a1)")), p("h+a0"));
        assert_eq!(gcd(&p("6*h^2*a1"), &p("4*h*a1^2")), p("h*a1"));
        assert_eq!(gcd(&p("a1^2-1"), &p("a1^3-a1")), p("a1^2-1"));
        assert_eq!(gcd(&p("h+1"), &p("h+2")), ParamPoly::one());
        assert_eq!(gcd(&p("2*(r^2+h^2)*mu"), &p("-3*(r^2+h^2)*lambda")), p("r^2+h^2"));
    }

    #[test]
    fn factor_examples() {
        let f = factor(&p("4*H^2*(a1^2-1)^6"));
        assert_eq!(f.unit, Rational::from_integer(4.into()));
        assert_eq!(
            f.factors,
            vec![(p("H"), 2), (p("a1 + 1"), 6), (p("a1 - 1"), 6)]
        );

        let f = factor(&p("-h*a0*(1-a1^2)"));
        assert_eq!(f.expand(), p("-h*a0*(1-a1^2)"));
        assert_eq!(f.factors.len(), 4);

        let f = factor(&p("-1/8*r^6*(h^2+r^2)^2*(1+H^2*(h^2+r^2))"));
        assert_eq!(f.unit, Rational::new((-1).into(), 8.into()));
        assert!(f.factors.contains(&(p("h^2+r^2"), 2)));
        assert!(f.factors.contains(&(p("H^2*h^2 + H^2*r^2 + 1"), 1)));

        let f = factor(&p("(2*a1-3)^2*(a0*h + 1)"));
        assert_eq!(f.factors, vec![(p("2*a1 - 3"), 2), (p("h*a0 + 1"), 1)]);
    }

    #[test]
    fn factor_round_trips() {
        for s in [
            "4*c^2*h^2*(-2*mu + c*theta)",
            "(lambda^2+mu^2)*(lambda^4+14*lambda^2*mu^2+mu^4)*H^2*r^6",
            "h^6*r^4*(-1+4*H^2*r^2)",
            "3*h^4*r^6/2",
            "-16*h^3*(3*h*a1^2+4)",
        ] {
            let q = p(s);
            assert_eq!(factor(&q).expand(), q, "{s}");
        }
    }
}
