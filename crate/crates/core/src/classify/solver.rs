//! Branching factor search over the coefficient equations of a condition.
//!
//! Each step takes the first remaining equation, factors it, and either
//! certifies every factor as nonzero (a contradiction) or branches on the
//! factors that may vanish, deriving a binding from each. Anything that does
//! not fit the supported shapes is reported as unresolved.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::symbolic::gcd::{self, factor};
use crate::symbolic::{BasisTerm, Param, ParamPoly, Rational, SymExpr};

const MAX_DEPTH: usize = 12;

/// Parameters that may be solved for as a last resort even though they are
/// assumed nonzero.
const LAST_RESORT: [Param; 2] = [Param::Radius, Param::Scale];

/// `param^power = num / den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binding {
    pub param: Param,
    pub power: u8,
    pub num: ParamPoly,
    pub den: ParamPoly,
}

impl Binding {
    pub fn new(param: Param, power: u8, num: ParamPoly, den: ParamPoly) -> Self {
        let (num, den) = reduce_fraction(num, den);
        Self { param, power, num, den }
    }

    pub fn value(param: Param, v: ParamPoly) -> Self {
        Self::new(param, 1, v, ParamPoly::one())
    }

    /// Substitutes into `p` and clears the denominator. Returns the numerator
    /// and the power of `den` it was multiplied by; with `even` that power is
    /// rounded up to an even number so signs are preserved.
    pub fn apply(&self, p: &ParamPoly, even: bool) -> (ParamPoly, u32) {
        if !p.contains(self.param) {
            return (p.clone(), 0);
        }
        let k = self.power as usize;
        let coeffs = p.coeffs_in(self.param);
        let mut q = ((coeffs.len() - 1) / k) as u32;
        if even && q % 2 == 1 && self.den.as_constant().is_none() {
            q += 1;
        }
        let mut out = ParamPoly::zero();
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = ParamPoly::var(self.param).pow((j % k) as u32);
            let t = (j / k) as u32;
            out += &(&(c * &v) * &self.num.pow(t)) * &self.den.pow(q - t);
        }
        (out, q)
    }

    /// Substitutes another binding into this one's value.
    fn rebind(&self, b: &Binding) -> Binding {
        let (n, qn) = b.apply(&self.num, false);
        let (d, qd) = b.apply(&self.den, false);
        let q = qn.max(qd);
        Binding::new(self.param, self.power, &n * &b.den.pow(q - qn), &d * &b.den.pow(q - qd))
    }

    fn value_text(&self) -> String {
        let n = self.num.to_string();
        if self.den.is_one() {
            return n;
        }
        let wrap = |p: &ParamPoly, s: String| if p.len() > 1 || s.contains('*') { format!("({s})") } else { s };
        format!("{}/{}", wrap(&self.num, n), wrap(&self.den, self.den.to_string()))
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.power == 1 {
            write!(f, "{} = {}", self.param, self.value_text())
        } else {
            write!(f, "{}^{} = {}", self.param, self.power, self.value_text())
        }
    }
}

/// Integer coefficients, no common integer factor, positive leading
/// denominator term, constant denominators folded into the numerator.
fn reduce_fraction(num: ParamPoly, den: ParamPoly) -> (ParamPoly, ParamPoly) {
    if let Some(d) = den.as_constant() {
        return (num.scale(&d.recip()), ParamPoly::one());
    }
    let c = den.rational_content();
    let (num, den) = (num.scale(&c.recip()), den.scale(&c.recip()));
    let lcm = num.terms().iter().fold(num_bigint::BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let l = Rational::from_integer(lcm);
    let (num, den) = (num.scale(&l), den.scale(&l));
    let g = num.terms().iter().chain(den.terms()).fold(num_bigint::BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()));
    let g = Rational::from_integer(g).recip();
    (num.scale(&g), den.scale(&g))
}

/// Why a factor of a certificate cannot vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    Param(Param),
    Assumed(ParamPoly),
    /// Even powers with positive weights and a nonzero anchor term.
    Positive(ParamPoly),
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::Param(p) => write!(f, "{p} ≠ 0"),
            Reason::Assumed(p) => write!(f, "{p} ≠ 0"),
            Reason::Positive(p) => write!(f, "{p} > 0"),
        }
    }
}

/// A coefficient that must vanish but is provably nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub basis: BasisTerm,
    pub coefficient: ParamPoly,
    pub bindings: Vec<Binding>,
    pub given: Vec<Reason>,
}

impl Certificate {
    pub fn basis_index(&self) -> u32 {
        self.basis.index()
    }

    /// Re-derives the certificate: every factor of the coefficient must be
    /// covered by one of the stated reasons.
    pub fn check(&self) -> bool {
        if self.coefficient.is_zero() {
            return false;
        }
        let fac = factor(&self.coefficient);
        fac.factors.iter().all(|(f, _)| {
            self.given.iter().any(|r| match r {
                Reason::Param(p) => *f == ParamPoly::var(*p),
                Reason::Assumed(a) => a == f,
                Reason::Positive(a) => {
                    a == f && f.definite_sign(&|p| self.given.contains(&Reason::Param(p))).is_some()
                }
            })
        }) && fac.expand() == self.coefficient
    }

    pub fn nonzero_assumptions(&self) -> Vec<String> {
        self.given.iter().map(|r| r.to_string()).collect()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: coeff = {} ≠ 0 given {{{}}}", basis_label(self.basis), self.coefficient, self.nonzero_assumptions().join(", "))?;
        if !self.bindings.is_empty() {
            write!(f, " under {}", join(&self.bindings))?;
        }
        Ok(())
    }
}

pub fn basis_label(b: BasisTerm) -> String {
    match b {
        BasisTerm::Power(k) => format!("degree {k}"),
        other => format!("term {other}"),
    }
}

fn join<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// Bindings under which the condition vanishes identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub bindings: Vec<Binding>,
    /// Polynomials that must stay nonzero, from branch assumptions and from
    /// keeping `W` away from zero.
    pub residual: Vec<ParamPoly>,
}

impl Family {
    pub fn binding_texts(&self) -> Vec<String> {
        let mut v: Vec<String> = self.bindings.iter().map(|b| b.to_string()).collect();
        v.sort();
        v
    }

    pub fn residual_texts(&self) -> Vec<String> {
        let mut v: Vec<String> = self.residual.iter().map(|p| format!("{p} ≠ 0")).collect();
        v.sort();
        v
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bindings.is_empty() {
            f.write_str("no constraint")?;
        } else {
            f.write_str(&self.binding_texts().join(", "))?;
        }
        if !self.residual.is_empty() {
            write!(f, " with {}", self.residual_texts().join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Leaf {
    Contradiction(Certificate),
    /// `W` vanishes identically: the surface is degenerate.
    Degenerate { bindings: Vec<Binding> },
    /// `W` has a fixed sign opposite to the branch being examined.
    WrongSign { bindings: Vec<Binding>, metric: ParamPoly },
    Family(Family),
    Unresolved { bindings: Vec<Binding>, equations: Vec<(BasisTerm, ParamPoly)> },
}

impl Leaf {
    pub fn is_closed(&self) -> bool {
        matches!(self, Leaf::Contradiction(_) | Leaf::Degenerate { .. } | Leaf::WrongSign { .. })
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let under = |b: &[Binding]| if b.is_empty() { String::new() } else { format!(" under {}", join(b)) };
        match self {
            Leaf::Contradiction(c) => write!(f, "{c}"),
            Leaf::Degenerate { bindings } => write!(f, "W = 0{}", under(bindings)),
            Leaf::WrongSign { bindings, metric } => write!(f, "W = {metric} has the wrong sign{}", under(bindings)),
            Leaf::Family(fam) => write!(f, "family: {fam}"),
            Leaf::Unresolved { bindings, equations } => {
                write!(f, "unresolved{}: ", under(bindings))?;
                let eqs: Vec<String> = equations.iter().map(|(b, p)| format!("[{b}] {p} = 0")).collect();
                f.write_str(&eqs.join("; "))
            }
        }
    }
}

/// The equations of one condition together with the metric and the
/// parameter roles.
#[derive(Clone, Debug)]
pub struct Problem {
    pub equations: Vec<(BasisTerm, ParamPoly)>,
    pub metric: Vec<(BasisTerm, ParamPoly)>,
    /// Parameters assumed nonzero.
    pub nonzero: Vec<Param>,
    /// Parameters that may be solved for, in order of preference.
    pub unknowns: Vec<Param>,
    /// Required sign of `W` when it turns out constant.
    pub sigma: Option<i8>,
}

#[derive(Clone, Debug)]
struct State {
    equations: Vec<(BasisTerm, ParamPoly)>,
    metric: Vec<(BasisTerm, ParamPoly)>,
    bindings: Vec<Binding>,
    assumed: Vec<ParamPoly>,
    depth: usize,
}

impl Problem {
    pub fn new(condition: &SymExpr, metric: &SymExpr, nonzero: Vec<Param>, unknowns: Vec<Param>, sigma: Option<i8>) -> Self {
        let equations = condition
            .extract_coefficients()
            .iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(b, p)| (b, gcd::normalize(p)))
            .collect();
        let metric = metric.extract_coefficients().iter().map(|(b, p)| (b, p.clone())).collect();
        Self { equations, metric, nonzero, unknowns, sigma }
    }

    pub fn solve(&self) -> Vec<Leaf> {
        let mut out = Vec::new();
        let st = State {
            equations: self.equations.clone(),
            metric: self.metric.clone(),
            bindings: Vec::new(),
            assumed: Vec::new(),
            depth: 0,
        };
        self.step(st, &mut out);
        dedup_families(out)
    }

    fn certify(&self, f: &ParamPoly, assumed: &[ParamPoly]) -> Option<Reason> {
        if f.is_monomial() {
            let (m, _) = f.leading()?;
            let vars: Vec<(Param, u8)> = m.vars().collect();
            if let [(p, _)] = vars[..] {
                if self.nonzero.contains(&p) {
                    return Some(Reason::Param(p));
                }
            }
        }
        if assumed.contains(f) {
            return Some(Reason::Assumed(f.clone()));
        }
        f.definite_sign(&|p| self.nonzero.contains(&p)).map(|_| Reason::Positive(f.clone()))
    }

    fn certified(&self, p: &ParamPoly, assumed: &[ParamPoly]) -> bool {
        if p.is_zero() {
            return false;
        }
        factor(p).factors.iter().all(|(f, _)| self.certify(f, assumed).is_some())
    }

    fn step(&self, st: State, out: &mut Vec<Leaf>) {
        let Some((basis, eq)) = st.equations.first().cloned() else {
            out.push(self.family_leaf(st));
            return;
        };
        if st.depth >= MAX_DEPTH {
            out.push(Leaf::Unresolved { bindings: st.bindings, equations: st.equations });
            return;
        }
        let fac = factor(&eq);
        let mut given = Vec::new();
        let mut open = Vec::new();
        for (f, _) in &fac.factors {
            match self.certify(f, &st.assumed) {
                Some(r) => given.push(r),
                None => open.push(f.clone()),
            }
        }
        let anchors: Vec<Param> = given
            .iter()
            .filter_map(|r| match r {
                Reason::Positive(f) => Some(f.vars()),
                _ => None,
            })
            .flatten()
            .filter(|p| self.nonzero.contains(p))
            .collect();
        for p in anchors {
            if !given.contains(&Reason::Param(p)) {
                given.insert(0, Reason::Param(p));
            }
        }
        if open.is_empty() {
            out.push(Leaf::Contradiction(Certificate { basis, coefficient: eq, bindings: st.bindings, given }));
            return;
        }
        for (i, f) in open.iter().enumerate() {
            let mut next = st.clone();
            next.depth += 1;
            next.assumed.extend(open[..i].iter().cloned());
            let Some(bindings) = self.bindings_for(f, &next.assumed) else {
                out.push(Leaf::Unresolved { bindings: st.bindings.clone(), equations: st.equations.clone() });
                continue;
            };
            let next = bindings.iter().try_fold(next, |acc, b| self.apply(acc, b));
            if let Some(next) = next {
                self.step(next, out);
            }
        }
    }

    /// Ways of making the factor vanish, as a list of simultaneous bindings.
    fn bindings_for(&self, f: &ParamPoly, assumed: &[ParamPoly]) -> Option<Vec<Binding>> {
        if f.definite_sign(&|_| true).is_some() {
            // a sum of even powers with one sign: every term vanishes, and
            // terms in a single unknown force that unknown to zero
            let free = |m: &crate::symbolic::Monomial| -> Vec<Param> {
                m.vars().map(|(p, _)| p).filter(|p| !self.nonzero.contains(p)).collect()
            };
            let mut vars = Vec::new();
            for (m, _) in f.terms() {
                if let [p] = free(m)[..] {
                    if self.unknowns.contains(&p) && !vars.contains(&p) {
                        vars.push(p);
                    }
                }
            }
            if f.terms().iter().any(|(m, _)| !free(m).iter().any(|p| vars.contains(p))) {
                return None;
            }
            return Some(vars.into_iter().map(|p| Binding::value(p, ParamPoly::zero())).collect());
        }
        let candidates = self.unknowns.iter().chain(LAST_RESORT.iter());
        for &v in candidates.filter(|&&v| f.contains(v)) {
            let cs = f.coeffs_in(v);
            let k = cs.len() - 1;
            if cs[1..k].iter().any(|c| !c.is_zero()) {
                continue;
            }
            let (alpha, beta) = (&cs[k], &cs[0]);
            if !self.certified(alpha, assumed) {
                continue;
            }
            let num = -beta;
            if num.is_zero() && self.nonzero.contains(&v) {
                continue;
            }
            if k % 2 == 0 {
                let nz = |p: Param| self.nonzero.contains(&p);
                if let (Some(a), Some(b)) = (num.definite_sign(&nz), alpha.definite_sign(&nz)) {
                    if a != b {
                        continue;
                    }
                }
            }
            return Some(vec![Binding::new(v, k as u8, num, alpha.clone())]);
        }
        None
    }

    fn apply(&self, mut st: State, b: &Binding) -> Option<State> {
        st.equations = st
            .equations
            .iter()
            .map(|(basis, p)| (*basis, gcd::normalize(&b.apply(p, true).0)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        st.metric = st.metric.iter().map(|(basis, p)| (*basis, b.apply(p, true).0)).collect();
        let mut assumed = Vec::new();
        for a in &st.assumed {
            let v = b.apply(a, true).0;
            if v.is_zero() {
                return None;
            }
            for (f, _) in factor(&v).factors {
                if self.certify(&f, &assumed).is_none() && !assumed.contains(&f) {
                    assumed.push(f);
                }
            }
        }
        st.assumed = assumed;
        st.bindings = st.bindings.iter().map(|old| old.rebind(b)).collect();
        st.bindings.push(b.clone());
        Some(st)
    }

    fn family_leaf(&self, st: State) -> Leaf {
        let nonzero_coeffs: Vec<&ParamPoly> = st.metric.iter().map(|(_, p)| p).filter(|p| !p.is_zero()).collect();
        if nonzero_coeffs.is_empty() {
            return Leaf::Degenerate { bindings: st.bindings };
        }
        let constant = st.metric.iter().all(|(b, p)| p.is_zero() || b.index() == 0);
        if let (Some(sigma), true) = (self.sigma, constant) {
            let w = nonzero_coeffs[0];
            if let Some(sign) = w.definite_sign(&|p| self.nonzero.contains(&p)) {
                if sign != sigma {
                    return Leaf::WrongSign { bindings: st.bindings, metric: w.clone() };
                }
            }
        }
        let g = nonzero_coeffs.iter().fold(ParamPoly::zero(), |acc, p| gcd::gcd(&acc, p));
        let mut residual = st.assumed.clone();
        for (f, _) in factor(&g).factors {
            if self.certify(&f, &[]).is_none() && !residual.contains(&f) {
                residual.push(f);
            }
        }
        residual.sort_by_cached_key(|p| p.to_string());
        Leaf::Family(Family { bindings: st.bindings, residual })
    }
}

fn dedup_families(leaves: Vec<Leaf>) -> Vec<Leaf> {
    let mut out: Vec<Leaf> = Vec::new();
    for l in leaves {
        if let Leaf::Family(f) = &l {
            let key = (f.binding_texts(), f.residual_texts());
            if out.iter().any(|o| matches!(o, Leaf::Family(g) if (g.binding_texts(), g.residual_texts()) == key)) {
                continue;
            }
        }
        out.push(l);
    }
    out
}

/// Applies all bindings to every coefficient of `e`, clearing denominators
/// with the smallest common power. Returns the cleared expression and, per
/// binding, the power of its denominator that was multiplied in.
pub fn substitute_cleared(e: &SymExpr, bindings: &[Binding]) -> (SymExpr, Vec<u32>) {
    let mut cur = e.clone();
    let mut powers = Vec::new();
    for b in bindings {
        let sys = cur.extract_coefficients();
        let parts: Vec<(ParamPoly, u32)> = sys.iter().map(|(_, p)| b.apply(p, false)).collect();
        let q = parts.iter().map(|(_, q)| *q).max().unwrap_or(0);
        let mut acc = SymExpr::zero();
        for ((basis, _), (p, qi)) in sys.iter().zip(parts) {
            let p = &p * &b.den.pow(q - qi);
            acc = acc.try_add(&basis_expr(basis).scale(&p)).expect("same mode");
        }
        cur = acc;
        powers.push(q);
    }
    (cur, powers)
}

pub fn basis_expr(b: BasisTerm) -> SymExpr {
    match b {
        BasisTerm::Power(k) => {
            let mut v = vec![ParamPoly::zero(); k as usize + 1];
            v[k as usize] = ParamPoly::one();
            SymExpr::poly(v)
        }
        BasisTerm::Cosh(k) => SymExpr::cosh(k),
        BasisTerm::Sinh(k) => SymExpr::sinh(k),
    }
}

/// `Some(sign)` when `a = sign * b`.
pub fn equal_up_to_sign(a: &ParamPoly, b: &ParamPoly) -> Option<i8> {
    if a == b {
        Some(1)
    } else if *a == -b {
        Some(-1)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse::parse_poly;

    fn p(s: &str) -> ParamPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn binding_display_and_apply() {
        let b = Binding::new(Param::MeanCurvature, 2, p("1/4"), p("r^2"));
        assert_eq!(b.to_string(), "H^2 = 1/(4*r^2)");
        let (v, q) = b.apply(&p("4*H^2*r^2 - 1"), false);
        assert_eq!((v, q), (ParamPoly::zero(), 1));
        let (v, q) = b.apply(&p("H^2 + 1"), true);
        assert_eq!(q, 2);
        assert_eq!(v, p("4*r^2*(1 + 4*r^2)"));
        assert_eq!(Binding::value(Param::coef(1), p("-1")).to_string(), "a1 = -1");
        let b = Binding::new(Param::GaussCurvature, 1, p("2"), p("2*h^2 + 2*r^2"));
        assert_eq!(b.to_string(), "K = 1/(h^2 + r^2)");
    }

    #[test]
    fn solves_small_systems() {
        // a1 (1 - a1^2) = 0 and then 2 h^2 a1 = 0, with a1 and h nonzero
        let cond = SymExpr::poly(vec![p("2*h^2*a1"), p("0"), p("a1 - a1^3")]);
        let w = SymExpr::constant(p("-h^2"));
        let pr = Problem::new(&cond, &w, vec![Param::Pitch, Param::coef(1)], vec![Param::coef(1)], None);
        let leaves = pr.solve();
        assert_eq!(leaves.len(), 2);
        for l in &leaves {
            let Leaf::Contradiction(c) = l else { panic!("{l}") };
            assert!(c.check());
            assert_eq!(c.basis_index(), 0);
        }
        assert_eq!(leaves[0].to_string(), "degree 0: coeff = h^2 ≠ 0 given {h ≠ 0} under a1 = -1");

        // h a0 (1 - a1^2) = 0 with W = (1 - a1^2)(h^2 - s^2) when a0 = 0
        let cond = SymExpr::constant(p("h*a0*(1 - a1^2)"));
        let w = SymExpr::poly(vec![p("h^2 - a0^2 - h^2*a1^2"), p("2*a0*a1"), p("a1^2 - 1")]);
        let pr = Problem::new(&cond, &w, vec![Param::Pitch, Param::coef(1)], vec![Param::coef(0), Param::coef(1)], None);
        let fams: Vec<String> = pr.solve().iter().map(|l| l.to_string()).collect();
        assert_eq!(
            fams,
            [
                "family: a0 = 0 with a1 + 1 ≠ 0, a1 - 1 ≠ 0",
                "family: a1 = -1 with a0 ≠ 0",
                "family: a1 = 1 with a0 ≠ 0",
            ]
        );
    }

    #[test]
    fn even_sums_and_pruning() {
        let cond = SymExpr::poly(vec![p("lambda^2*mu"), p("(lambda^2 + mu^2)*(lambda^4 + mu^4)")]);
        let w = SymExpr::constant(p("-r^2"));
        let pr = Problem::new(&cond, &w, vec![Param::Radius], vec![Param::Lambda, Param::Mu], Some(-1));
        let leaves = pr.solve();
        assert_eq!(leaves.len(), 1);
        assert_eq!(leaves[0].to_string(), "family: lambda = 0, mu = 0");
        let pr = Problem { sigma: Some(1), ..pr };
        assert!(matches!(pr.solve()[..], [Leaf::WrongSign { .. }]));
    }

    #[test]
    fn certificate_check_rejects_unjustified_factors() {
        let c = Certificate {
            basis: BasisTerm::Power(2),
            coefficient: p("2*h^2*(h^2 + r^2)"),
            bindings: vec![],
            given: vec![Reason::Param(Param::Pitch), Reason::Positive(p("h^2 + r^2"))],
        };
        assert!(c.check());
        let bad = Certificate { given: vec![Reason::Param(Param::Pitch)], ..c.clone() };
        assert!(!bad.check());
        let bad = Certificate { coefficient: p("h*(h^2 - r^2)"), ..c };
        assert!(!bad.check());
    }
}
