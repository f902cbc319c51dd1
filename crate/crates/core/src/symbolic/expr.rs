use std::collections::BTreeMap;
use std::fmt;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::param::Param;
use super::poly::{rat, ParamPoly, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("cannot combine a polynomial in s with a hyperbolic expression in u")]
    ModeMismatch,
    #[error("no leading term: the expression is identically zero")]
    NoLeadingTerm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Polynomial in `s`.
    Poly,
    /// Linear combination of `cosh(k u)`, `sinh(k u)`.
    Hyp,
}

/// A basis function of one of the two expression modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisTerm {
    Power(u32),
    Cosh(u32),
    Sinh(u32),
}

impl BasisTerm {
    pub fn index(self) -> u32 {
        match self {
            BasisTerm::Power(k) | BasisTerm::Cosh(k) | BasisTerm::Sinh(k) => k,
        }
    }
}

impl fmt::Display for BasisTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisTerm::Power(0) | BasisTerm::Cosh(0) => f.write_str("1"),
            BasisTerm::Power(1) => f.write_str("s"),
            BasisTerm::Power(k) => write!(f, "s^{k}"),
            BasisTerm::Cosh(1) => f.write_str("cosh(u)"),
            BasisTerm::Cosh(k) => write!(f, "cosh({k}u)"),
            BasisTerm::Sinh(1) => f.write_str("sinh(u)"),
            BasisTerm::Sinh(k) => write!(f, "sinh({k}u)"),
        }
    }
}

/// Exact expression: a polynomial in `s`, or a finite sum
/// `Σ A_k cosh(k u) + B_k sinh(k u)`, with coefficients in [`ParamPoly`].
///
/// Trailing zeros are trimmed and a hyperbolic sum with only a constant term
/// is stored as a polynomial, so constants are shared by both modes and
/// equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum SymExpr {
    Poly(Vec<ParamPoly>),
    /// Entry `k` is `(A_k, B_k)`; `B_0` is always zero.
    Hyp(Vec<(ParamPoly, ParamPoly)>),
}

impl Default for SymExpr {
    fn default() -> Self {
        SymExpr::zero()
    }
}

impl SymExpr {
    pub fn zero() -> Self {
        SymExpr::Poly(Vec::new())
    }

    pub fn constant(c: ParamPoly) -> Self {
        SymExpr::Poly(vec![c]).canonical()
    }

    pub fn int(n: i64) -> Self {
        Self::constant(ParamPoly::int(n))
    }

    pub fn param(p: Param) -> Self {
        Self::constant(ParamPoly::var(p))
    }

    pub fn s() -> Self {
        SymExpr::Poly(vec![ParamPoly::zero(), ParamPoly::one()])
    }

    pub fn poly(coeffs: Vec<ParamPoly>) -> Self {
        SymExpr::Poly(coeffs).canonical()
    }

    pub fn hyp(pairs: Vec<(ParamPoly, ParamPoly)>) -> Self {
        SymExpr::Hyp(pairs).canonical()
    }

    pub fn cosh(k: u32) -> Self {
        let mut pairs = vec![(ParamPoly::zero(), ParamPoly::zero()); k as usize + 1];
        pairs[k as usize].0 = ParamPoly::one();
        Self::hyp(pairs)
    }

    pub fn sinh(k: u32) -> Self {
        let mut pairs = vec![(ParamPoly::zero(), ParamPoly::zero()); k as usize + 1];
        pairs[k as usize].1 = ParamPoly::one();
        Self::hyp(pairs)
    }

    fn canonical(self) -> Self {
        match self {
            SymExpr::Poly(mut c) => {
                while c.last().is_some_and(ParamPoly::is_zero) {
                    c.pop();
                }
                SymExpr::Poly(c)
            }
            SymExpr::Hyp(mut p) => {
                if let Some(first) = p.first_mut() {
                    first.1 = ParamPoly::zero();
                }
                while p.last().is_some_and(|(a, b)| a.is_zero() && b.is_zero()) {
                    p.pop();
                }
                if p.len() <= 1 {
                    SymExpr::Poly(p.into_iter().map(|(a, _)| a).collect()).canonical()
                } else {
                    SymExpr::Hyp(p)
                }
            }
        }
    }

    /// `None` for constants, which belong to both modes.
    pub fn mode(&self) -> Option<Mode> {
        match self {
            SymExpr::Poly(c) if c.len() <= 1 => None,
            SymExpr::Poly(_) => Some(Mode::Poly),
            SymExpr::Hyp(_) => Some(Mode::Hyp),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SymExpr::Poly(c) if c.is_empty())
    }

    pub fn as_constant(&self) -> Option<&ParamPoly> {
        match self {
            SymExpr::Poly(c) if c.len() == 1 => Some(&c[0]),
            _ => None,
        }
    }

    /// Highest stored index (power of `s` or frequency); zero for constants.
    pub fn degree(&self) -> u32 {
        match self {
            SymExpr::Poly(c) => c.len().saturating_sub(1) as u32,
            SymExpr::Hyp(p) => p.len().saturating_sub(1) as u32,
        }
    }

    pub fn coeff(&self, basis: BasisTerm) -> ParamPoly {
        let get = |k: u32| k as usize;
        match (self, basis) {
            (SymExpr::Poly(c), BasisTerm::Power(k)) => c.get(get(k)).cloned().unwrap_or_default(),
            (SymExpr::Poly(c), BasisTerm::Cosh(0)) => c.first().cloned().unwrap_or_default(),
            (SymExpr::Hyp(p), BasisTerm::Power(0)) => p[0].0.clone(),
            (SymExpr::Hyp(p), BasisTerm::Cosh(k)) => p.get(get(k)).map(|x| x.0.clone()).unwrap_or_default(),
            (SymExpr::Hyp(p), BasisTerm::Sinh(k)) => p.get(get(k)).map(|x| x.1.clone()).unwrap_or_default(),
            _ => ParamPoly::zero(),
        }
    }

    fn hyp_pairs(&self) -> Vec<(ParamPoly, ParamPoly)> {
        match self {
            SymExpr::Hyp(p) => p.clone(),
            SymExpr::Poly(c) => c.iter().take(1).map(|a| (a.clone(), ParamPoly::zero())).collect(),
        }
    }

    fn check_modes(&self, other: &SymExpr) -> Result<Mode, ExprError> {
        match (self.mode(), other.mode()) {
            (Some(a), Some(b)) if a != b => Err(ExprError::ModeMismatch),
            (Some(a), _) | (None, Some(a)) => Ok(a),
            (None, None) => Ok(Mode::Poly),
        }
    }

    pub fn try_add(&self, other: &SymExpr) -> Result<SymExpr, ExprError> {
        self.combine(other, false)
    }

    pub fn try_sub(&self, other: &SymExpr) -> Result<SymExpr, ExprError> {
        self.combine(other, true)
    }

    fn combine(&self, other: &SymExpr, negate: bool) -> Result<SymExpr, ExprError> {
        let op = |a: &ParamPoly, b: &ParamPoly| if negate { a - b } else { a + b };
        match self.check_modes(other)? {
            Mode::Poly => {
                let (SymExpr::Poly(a), SymExpr::Poly(b)) = (self, other) else { unreachable!() };
                let n = a.len().max(b.len());
                let zero = ParamPoly::zero();
                let out = (0..n).map(|i| op(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero))).collect();
                Ok(SymExpr::poly(out))
            }
            Mode::Hyp => {
                let (a, b) = (self.hyp_pairs(), other.hyp_pairs());
                let n = a.len().max(b.len());
                let zero = (ParamPoly::zero(), ParamPoly::zero());
                let out = (0..n)
                    .map(|i| {
                        let (x, y) = (a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero));
                        (op(&x.0, &y.0), op(&x.1, &y.1))
                    })
                    .collect();
                Ok(SymExpr::hyp(out))
            }
        }
    }

    pub fn try_mul(&self, other: &SymExpr) -> Result<SymExpr, ExprError> {
        if let Some(c) = other.as_constant() {
            return Ok(self.scale(c));
        }
        if let Some(c) = self.as_constant() {
            return Ok(other.scale(c));
        }
        match self.check_modes(other)? {
            Mode::Poly => {
                let (SymExpr::Poly(a), SymExpr::Poly(b)) = (self, other) else { unreachable!() };
                Ok(SymExpr::poly(convolve(a, b)))
            }
            Mode::Hyp => Ok(hyp_product(&self.hyp_pairs(), &other.hyp_pairs())),
        }
    }

    /// Polynomial-mode product in which only the coefficients of index
    /// `>= low` are computed; lower ones are left at zero.
    pub fn mul_from(&self, other: &SymExpr, low: usize) -> Result<SymExpr, ExprError> {
        if self.check_modes(other)? != Mode::Poly {
            return Err(ExprError::ModeMismatch);
        }
        let (SymExpr::Poly(a), SymExpr::Poly(b)) = (self, other) else { unreachable!() };
        if a.is_empty() || b.is_empty() {
            return Ok(SymExpr::zero());
        }
        let top = a.len() + b.len() - 2;
        let mut out = vec![ParamPoly::zero(); top + 1];
        for (k, slot) in out.iter_mut().enumerate().skip(low) {
            let lo = k.saturating_sub(b.len() - 1);
            let hi = k.min(a.len() - 1);
            for i in lo..=hi {
                if !a[i].is_zero() && !b[k - i].is_zero() {
                    *slot += &a[i] * &b[k - i];
                }
            }
        }
        Ok(SymExpr::poly(out))
    }

    pub fn scale(&self, k: &ParamPoly) -> SymExpr {
        match self {
            SymExpr::Poly(c) => SymExpr::poly(c.iter().map(|x| x * k).collect()),
            SymExpr::Hyp(p) => SymExpr::hyp(p.iter().map(|(a, b)| (a * k, b * k)).collect()),
        }
    }

    pub fn neg(&self) -> SymExpr {
        self.scale(&ParamPoly::int(-1))
    }

    pub fn pow(&self, n: u32) -> Result<SymExpr, ExprError> {
        let mut acc = SymExpr::int(1);
        for _ in 0..n {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// `d/ds`; in hyperbolic mode `du/ds = 1`.
    pub fn diff(&self) -> SymExpr {
        match self {
            SymExpr::Poly(c) => SymExpr::poly(
                c.iter().enumerate().skip(1).map(|(n, a)| a.scale(&rat(n as i64, 1))).collect(),
            ),
            SymExpr::Hyp(p) => SymExpr::hyp(
                p.iter()
                    .enumerate()
                    .map(|(k, (a, b))| {
                        let k = rat(k as i64, 1);
                        (b.scale(&k), a.scale(&k))
                    })
                    .collect(),
            ),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> SymExpr {
        match self {
            SymExpr::Poly(c) => SymExpr::poly(c.iter().map(&f).collect()),
            SymExpr::Hyp(p) => SymExpr::hyp(p.iter().map(|(a, b)| (f(a), f(b))).collect()),
        }
    }

    pub fn substitute(&self, bindings: &BTreeMap<Param, ParamPoly>) -> SymExpr {
        self.map_coeffs(|c| c.substitute(bindings))
    }

    /// Evaluates at `s` (polynomial mode) or `u` (hyperbolic mode).
    pub fn eval_f64(&self, x: f64, value: &dyn Fn(Param) -> f64) -> f64 {
        match self {
            SymExpr::Poly(c) => c.iter().rev().fold(0.0, |acc, a| acc * x + a.eval_f64(value)),
            SymExpr::Hyp(p) => p
                .iter()
                .enumerate()
                .map(|(k, (a, b))| {
                    let kx = k as f64 * x;
                    a.eval_f64(value) * kx.cosh() + b.eval_f64(value) * kx.sinh()
                })
                .sum(),
        }
    }

    /// Exact value of a polynomial-mode expression at rational `s`.
    pub fn eval_exact(&self, s: &Rational, values: &BTreeMap<Param, Rational>) -> Option<Rational> {
        match self {
            SymExpr::Poly(c) => {
                let mut acc = Rational::zero();
                for a in c.iter().rev() {
                    acc = acc * s + a.eval_exact(values)?;
                }
                Some(acc)
            }
            SymExpr::Hyp(_) => None,
        }
    }

    pub fn extract_coefficients(&self) -> CoefficientSystem {
        let mut sys = CoefficientSystem::default();
        match self {
            SymExpr::Poly(c) => {
                for (k, a) in c.iter().enumerate().rev() {
                    sys.push(BasisTerm::Power(k as u32), a.clone());
                }
            }
            SymExpr::Hyp(p) => {
                for (k, (a, b)) in p.iter().enumerate().rev() {
                    sys.push(BasisTerm::Cosh(k as u32), a.clone());
                    sys.push(BasisTerm::Sinh(k as u32), b.clone());
                }
            }
        }
        sys
    }

    /// Highest nonzero basis coefficient; at equal frequency cosh wins.
    pub fn leading_term(&self) -> Result<(BasisTerm, ParamPoly), ExprError> {
        self.leading_terms().into_iter().next().ok_or(ExprError::NoLeadingTerm)
    }

    /// All nonzero coefficients at the top index: one entry in polynomial
    /// mode, up to two (cosh, then sinh) in hyperbolic mode.
    pub fn leading_terms(&self) -> Vec<(BasisTerm, ParamPoly)> {
        match self {
            SymExpr::Poly(c) => c
                .last()
                .map(|a| vec![(BasisTerm::Power(c.len() as u32 - 1), a.clone())])
                .unwrap_or_default(),
            SymExpr::Hyp(p) => {
                let k = p.len() as u32 - 1;
                let (a, b) = p.last().expect("canonical hyperbolic sums are nonempty");
                let mut out = Vec::new();
                if !a.is_zero() {
                    out.push((BasisTerm::Cosh(k), a.clone()));
                }
                if !b.is_zero() {
                    out.push((BasisTerm::Sinh(k), b.clone()));
                }
                out
            }
        }
    }
}

fn convolve(a: &[ParamPoly], b: &[ParamPoly]) -> Vec<ParamPoly> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ParamPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn hyp_product(a: &[(ParamPoly, ParamPoly)], b: &[(ParamPoly, ParamPoly)]) -> SymExpr {
    let n = a.len() + b.len();
    let mut cosh = vec![ParamPoly::zero(); n];
    let mut sinh = vec![ParamPoly::zero(); n];
    let half = rat(1, 2);
    for (i, (ai, bi)) in a.iter().enumerate() {
        for (j, (aj, bj)) in b.iter().enumerate() {
            let sum = i + j;
            let diff = i.abs_diff(j);
            // sign of sinh((i - j) u) relative to sinh(|i - j| u)
            let flip = i < j;
            if !ai.is_zero() && !aj.is_zero() {
                let p = (ai * aj).scale(&half);
                cosh[sum] += p.clone();
                cosh[diff] += p;
            }
            if !bi.is_zero() && !bj.is_zero() {
                let p = (bi * bj).scale(&half);
                cosh[sum] += p.clone();
                cosh[diff] -= p;
            }
            // sinh(i) cosh(j) = (sinh(i+j) + sinh(i-j)) / 2
            if !bi.is_zero() && !aj.is_zero() {
                let p = (bi * aj).scale(&half);
                sinh[sum] += p.clone();
                if flip {
                    sinh[diff] -= p;
                } else {
                    sinh[diff] += p;
                }
            }
            if !ai.is_zero() && !bj.is_zero() {
                let p = (ai * bj).scale(&half);
                sinh[sum] += p.clone();
                if flip {
                    sinh[diff] += p;
                } else {
                    sinh[diff] -= p;
                }
            }
        }
    }
    SymExpr::hyp(cosh.into_iter().zip(sinh).collect())
}

/// One equation per nonzero basis coefficient, leading basis term first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoefficientSystem {
    pub equations: Vec<ParamPoly>,
    pub provenance: Vec<BasisTerm>,
}

impl CoefficientSystem {
    fn push(&mut self, basis: BasisTerm, eq: ParamPoly) {
        if !eq.is_zero() {
            self.equations.push(eq);
            self.provenance.push(basis);
        }
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisTerm, &ParamPoly)> {
        self.provenance.iter().copied().zip(self.equations.iter())
    }

    pub fn get(&self, basis: BasisTerm) -> Option<&ParamPoly> {
        self.iter().find(|(b, _)| *b == basis).map(|(_, e)| e)
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (basis, c) in self.extract_coefficients().iter() {
            let basis_str = basis.to_string();
            let coeff = if c.len() > 1 { format!("({c})") } else { c.to_string() };
            terms.push(match basis_str.as_str() {
                "1" => coeff,
                _ if coeff == "1" => basis_str,
                _ if coeff == "-1" => format!("-{basis_str}"),
                _ => format!("{coeff}*{basis_str}"),
            });
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymExpr({self})")
    }
}

impl From<ParamPoly> for SymExpr {
    fn from(c: ParamPoly) -> Self {
        SymExpr::constant(c)
    }
}

/// Float value of a rational, for evaluation helpers.
pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: Param) -> ParamPoly {
        ParamPoly::var(x)
    }

    #[test]
    fn poly_product() {
        let one = SymExpr::int(1);
        let a = one.try_add(&SymExpr::s()).unwrap();
        let b = one.try_sub(&SymExpr::s()).unwrap();
        let expected = SymExpr::poly(vec![ParamPoly::one(), ParamPoly::zero(), ParamPoly::int(-1)]);
        assert_eq!(a.try_mul(&b).unwrap(), expected);
    }

    #[test]
    fn product_to_sum() {
        let c = SymExpr::cosh(1);
        let expected = SymExpr::hyp(vec![
            (ParamPoly::constant(rat(1, 2)), ParamPoly::zero()),
            (ParamPoly::zero(), ParamPoly::zero()),
            (ParamPoly::constant(rat(1, 2)), ParamPoly::zero()),
        ]);
        assert_eq!(c.try_mul(&c).unwrap(), expected);

        let r = p(Param::Radius);
        let lhs = SymExpr::cosh(1).scale(&r).try_mul(&SymExpr::sinh(1).scale(&r)).unwrap();
        assert_eq!(lhs, SymExpr::sinh(2).scale(&(&r * &r).scale(&rat(1, 2))));

        // sinh^2 = (cosh 2u - 1)/2 and cosh u sinh 2u = (sinh 3u + sinh u)/2
        let s2 = SymExpr::sinh(1).try_mul(&SymExpr::sinh(1)).unwrap();
        assert_eq!(s2, SymExpr::cosh(2).try_sub(&SymExpr::int(1)).unwrap().scale(&ParamPoly::constant(rat(1, 2))));
        let m = SymExpr::cosh(1).try_mul(&SymExpr::sinh(2)).unwrap();
        let e = SymExpr::sinh(3).try_add(&SymExpr::sinh(1)).unwrap().scale(&ParamPoly::constant(rat(1, 2)));
        assert_eq!(m, e);
    }

    #[test]
    fn modes_do_not_mix() {
        assert_eq!(SymExpr::s().try_add(&SymExpr::cosh(1)), Err(ExprError::ModeMismatch));
        assert_eq!(SymExpr::s().try_mul(&SymExpr::sinh(2)), Err(ExprError::ModeMismatch));
        assert!(SymExpr::int(3).try_mul(&SymExpr::cosh(1)).is_ok());
    }

    #[test]
    fn derivatives() {
        let f = SymExpr::poly(vec![p(Param::coef(0)), p(Param::coef(1)), p(Param::coef(2))]);
        let df = SymExpr::poly(vec![p(Param::coef(1)), ParamPoly::int(2) * p(Param::coef(2))]);
        assert_eq!(f.diff(), df);
        let r = p(Param::Radius);
        assert_eq!(SymExpr::cosh(1).scale(&r).diff(), SymExpr::sinh(1).scale(&r));
        assert_eq!(SymExpr::sinh(1).scale(&r).diff().diff(), SymExpr::sinh(1).scale(&r));
    }

    #[test]
    fn coefficients_and_leading_terms() {
        let h = p(Param::Pitch);
        let a = SymExpr::poly(vec![
            ParamPoly::zero(),
            ParamPoly::int(2) * h.clone(),
            ParamPoly::zero(),
            &(&h * &h) - &ParamPoly::one(),
        ]);
        let sys = a.extract_coefficients();
        assert_eq!(sys.provenance, vec![BasisTerm::Power(3), BasisTerm::Power(1)]);
        assert_eq!(sys.equations[1], ParamPoly::int(2) * h.clone());
        assert!(SymExpr::zero().extract_coefficients().is_empty());
        assert_eq!(SymExpr::zero().leading_term(), Err(ExprError::NoLeadingTerm));
        let b = SymExpr::poly(vec![ParamPoly::zero(), ParamPoly::int(2) * h.clone()]);
        assert_eq!(b.leading_term(), Ok((BasisTerm::Power(1), ParamPoly::int(2) * h)));
    }

    #[test]
    fn windowed_product_matches_full_product() {
        let f = SymExpr::poly((0..5).map(|n| p(Param::coef(n))).collect());
        let full = f.try_mul(&f).unwrap();
        let top = f.mul_from(&f, 6).unwrap();
        for k in 6..=8 {
            assert_eq!(top.coeff(BasisTerm::Power(k)), full.coeff(BasisTerm::Power(k)));
        }
        assert!(top.coeff(BasisTerm::Power(5)).is_zero());
    }
}
