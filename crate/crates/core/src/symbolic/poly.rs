use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use super::param::{Monomial, Param};
use crate::minkowski::Scalar;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Multivariate polynomial over ℚ in the fixed parameter set.
///
/// Terms are kept sorted by descending lexicographic monomial order with no
/// zero coefficients, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn var(p: Param) -> Self {
        Self::term(Monomial::var(p), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        Self { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect() }
    }

    /// Multiplies by a single term; monomial multiplication preserves order.
    pub fn mul_term(&self, m: &Monomial, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(mm, c)| (mm.mul(m), c * k)).collect() }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn vars(&self) -> Vec<Param> {
        let mut seen = Monomial::ONE;
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                seen.0[i] |= (e > 0) as u8;
            }
        }
        seen.vars().map(|(p, _)| p).collect()
    }

    pub fn contains(&self, p: Param) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(p) > 0)
    }

    pub fn degree_in(&self, p: Param) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(p) as u32).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }

    /// View as a univariate polynomial in `p`: entry `k` is the coefficient of `p^k`.
    pub fn coeffs_in(&self, p: Param) -> Vec<ParamPoly> {
        let deg = self.degree_in(p) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(p) as usize].push((m.without(p), c.clone()));
        }
        // Removing one variable keeps the relative order of the remaining terms.
        buckets.into_iter().map(|terms| ParamPoly { terms }).collect()
    }

    pub fn from_coeffs_in(p: Param, coeffs: &[ParamPoly]) -> Self {
        let mut out = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out += c.mul_term(&Monomial::var_pow(p, k as u8), &Rational::one());
            }
        }
        out
    }

    pub fn derivative(&self, p: Param) -> Self {
        let slot = p.slot();
        Self::from_terms(self.terms.iter().filter(|(m, _)| m.0[slot] > 0).map(|(m, c)| {
            let mut mm = *m;
            let e = mm.0[slot];
            mm.0[slot] -= 1;
            (mm, c * Rational::from_integer(e.into()))
        }))
    }

    /// Replaces each bound parameter by a polynomial.
    pub fn substitute(&self, bindings: &BTreeMap<Param, ParamPoly>) -> Self {
        if bindings.is_empty() || self.is_zero() {
            return self.clone();
        }
        let mut powers: FxHashMap<(Param, u8), ParamPoly> = FxHashMap::default();
        let mut groups: FxHashMap<Vec<(Param, u8)>, Vec<(Monomial, Rational)>> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut key = Vec::new();
            for (&p, _) in bindings {
                let e = m.exp(p);
                if e > 0 {
                    key.push((p, e));
                    rest = rest.without(p);
                }
            }
            groups.entry(key).or_default().push((rest, c.clone()));
        }
        let mut out = Self::zero();
        for (key, terms) in groups {
            let mut factor = Self::one();
            for (p, e) in key {
                let pw = powers.entry((p, e)).or_insert_with(|| bindings[&p].pow(e as u32));
                factor = &factor * pw;
            }
            out += &factor * &Self::from_terms(terms);
        }
        out
    }

    pub fn substitute_one(&self, p: Param, value: &ParamPoly) -> Self {
        let mut b = BTreeMap::new();
        b.insert(p, value.clone());
        self.substitute(&b)
    }

    pub fn eval_f64(&self, value: &dyn Fn(Param) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.to_f64().unwrap_or(f64::NAN);
                for (p, e) in m.vars() {
                    v *= value(p).powi(e as i32);
                }
                v
            })
            .sum()
    }

    /// Exact value when every occurring parameter is bound.
    pub fn eval_exact(&self, values: &BTreeMap<Param, Rational>) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (p, e) in m.vars() {
                v *= num_traits::pow(values.get(&p)?.clone(), e as usize);
            }
            acc += v;
        }
        Some(acc)
    }

    /// `self / d` when the division is exact.
    pub fn exact_div(&self, d: &ParamPoly) -> Option<ParamPoly> {
        let (dm, dc) = d.leading()?;
        if d.is_monomial() {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.div(dm)?, c / dc));
            }
            return Some(ParamPoly { terms });
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.leading().cloned() {
            let qm = rm.div(dm)?;
            let qc = rc / dc;
            rem -= d.mul_term(&qm, &qc);
            quot.push((qm, qc));
        }
        Some(ParamPoly::from_terms(quot))
    }

    /// Positive rational `c` with `self / c` having coprime integer coefficients
    /// and a positive leading coefficient; zero for the zero polynomial.
    pub fn rational_content(&self) -> Rational {
        let Some((_, lead)) = self.leading() else {
            return Rational::zero();
        };
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let content = Rational::new(num, den);
        if lead.is_negative() {
            -content
        } else {
            content
        }
    }

    /// Sign shared by every real value of the polynomial when all its terms
    /// are even powers with the same sign and at least one term only involves
    /// parameters for which `nonzero` holds.
    pub fn definite_sign(&self, nonzero: &dyn Fn(Param) -> bool) -> Option<i8> {
        let (_, first) = self.terms.first()?;
        let sign = if first.is_positive() { 1 } else { -1 };
        let mut anchored = false;
        for (m, c) in &self.terms {
            if c.is_positive() != (sign == 1) || m.vars().any(|(_, e)| e % 2 == 1) {
                return None;
            }
            anchored |= m.vars().all(|(p, _)| nonzero(p));
        }
        anchored.then_some(sign)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::ONE;
        };
        it.fold(*first, |acc, (m, _)| acc.gcd(m))
    }

    /// Integer form `self = scale * ints` with each entry fitting in `i64`.
    fn as_small_ints(&self) -> Option<(Vec<i64>, BigInt)> {
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            if !c.denom().is_one() {
                den = den.lcm(c.denom());
            }
        }
        let mut out = Vec::with_capacity(self.terms.len());
        for (_, c) in &self.terms {
            let v = if den.is_one() { c.numer().clone() } else { c.numer() * (&den / c.denom()) };
            out.push(v.to_i64()?);
        }
        Some((out, den))
    }

    fn mul_general(&self, rhs: &ParamPoly) -> ParamPoly {
        if let (Some((a, da)), Some((b, db))) = (self.as_small_ints(), rhs.as_small_ints()) {
            if let Some(p) = self.mul_small(rhs, &a, &b, &(da * db)) {
                return p;
            }
        }
        let mut acc: FxHashMap<Monomial, Rational> =
            FxHashMap::with_capacity_and_hasher(self.len() * rhs.len(), Default::default());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Self::from_sorted_map(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    fn mul_small(&self, rhs: &ParamPoly, a: &[i64], b: &[i64], den: &BigInt) -> Option<ParamPoly> {
        let mut acc: FxHashMap<Monomial, i128> =
            FxHashMap::with_capacity_and_hasher(self.len() * rhs.len(), Default::default());
        for ((ma, _), &ca) in self.terms.iter().zip(a) {
            for ((mb, _), &cb) in rhs.terms.iter().zip(b) {
                let slot = acc.entry(ma.mul(mb)).or_insert(0);
                *slot = slot.checked_add(ca as i128 * cb as i128)?;
            }
        }
        let den_one = den.is_one();
        Some(Self::from_sorted_map(
            acc.into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(m, c)| {
                    let c = if den_one {
                        Rational::from_integer(BigInt::from(c))
                    } else {
                        Rational::new(BigInt::from(c), den.clone())
                    };
                    (m, c)
                })
                .collect(),
        ))
    }

    fn from_sorted_map(mut terms: Vec<(Monomial, Rational)>) -> ParamPoly {
        terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        ParamPoly { terms }
    }

    fn merge(&self, rhs: &ParamPoly, negate: bool) -> ParamPoly {
        let mut out = Vec::with_capacity(self.len() + rhs.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        let sign = |c: &Rational| if negate { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0, sign(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, sign(c))));
        ParamPoly { terms: out }
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}

impl<'a> Add<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        self.merge(rhs, false)
    }
}

impl<'a> Sub<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        self.merge(rhs, true)
    }
}

impl<'a> Mul<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        match (self.terms.as_slice(), rhs.terms.as_slice()) {
            ([], _) | (_, []) => ParamPoly::zero(),
            ([(m, c)], _) => rhs.mul_term(m, c),
            (_, [(m, c)]) => self.mul_term(m, c),
            _ => self.mul_general(rhs),
        }
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: ParamPoly) -> ParamPoly {
        &self + &rhs
    }
}

impl Sub for ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: ParamPoly) -> ParamPoly {
        &self - &rhs
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: ParamPoly) -> ParamPoly {
        &self * &rhs
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(mut self) -> ParamPoly {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl AddAssign for ParamPoly {
    fn add_assign(&mut self, rhs: ParamPoly) {
        *self = &*self + &rhs;
    }
}

impl SubAssign for ParamPoly {
    fn sub_assign(&mut self, rhs: ParamPoly) {
        *self = &*self - &rhs;
    }
}

impl Zero for ParamPoly {
    fn zero() -> Self {
        ParamPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ParamPoly {
    fn one() -> Self {
        ParamPoly::one()
    }
}

impl Scalar for ParamPoly {
    fn ratio(num: i64, den: i64) -> Self {
        ParamPoly::constant(rat(num, den))
    }
}

impl From<Param> for ParamPoly {
    fn from(p: Param) -> Self {
        ParamPoly::var(p)
    }
}

impl From<Rational> for ParamPoly {
    fn from(c: Rational) -> Self {
        ParamPoly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> ParamPoly {
        ParamPoly::var(Param::Pitch)
    }
    fn a(n: usize) -> ParamPoly {
        ParamPoly::var(Param::coef(n))
    }

    #[test]
    fn difference_of_squares() {
        let one = ParamPoly::one();
        let p = &(&one + &a(1)) * &(&one - &a(1));
        assert_eq!(p, &one - &a(1).pow(2));
        assert_eq!(p.to_string(), "-a1^2 + 1");
    }

    #[test]
    fn substitution_and_eval() {
        let p = ParamPoly::int(-8) * a(2).pow(3);
        let q = p.substitute_one(Param::coef(2), &ParamPoly::int(3));
        assert_eq!(q.as_constant(), Some(rat(-216, 1)));
        let z = (ParamPoly::one() - a(1).pow(2)).substitute_one(Param::coef(1), &ParamPoly::one());
        assert!(z.is_zero());
        let v = p.eval_f64(&|_| 0.5);
        assert_eq!(v, -1.0);
    }

    #[test]
    fn exact_division() {
        let x = &h() + &a(0);
        let y = h() - ParamPoly::constant(rat(1, 2)) * a(1);
        let p = &x * &y;
        assert_eq!(p.exact_div(&x), Some(y.clone()));
        assert_eq!(p.exact_div(&y), Some(x.clone()));
        assert_eq!(p.exact_div(&(&h() + &ParamPoly::one())), None);
    }

    #[test]
    fn contents() {
        let p = ParamPoly::constant(rat(-4, 3)) * h().pow(2) * a(1) + ParamPoly::constant(rat(2, 1)) * h().pow(3);
        assert_eq!(p.rational_content(), rat(2, 3));
        assert_eq!(p.monomial_content(), Monomial::var_pow(Param::Pitch, 2));
    }

    #[test]
    fn small_path_matches_big_path() {
        let big = ParamPoly::int(i64::MAX) * h() + ParamPoly::constant(rat(1, 3)) * a(0);
        let p = &big * &big;
        let expected = ParamPoly::from_terms(vec![
            (Monomial::var_pow(Param::Pitch, 2), Rational::from_integer(BigInt::from(i64::MAX).pow(2))),
            (Monomial::var(Param::Pitch).mul(&Monomial::var(Param::coef(0))), Rational::new(BigInt::from(i64::MAX) * 2, 3.into())),
            (Monomial::var_pow(Param::coef(0), 2), rat(1, 9)),
        ]);
        assert_eq!(p, expected);
    }

    #[test]
    fn univariate_view_round_trips() {
        let p = h().pow(3) * a(0) - ParamPoly::int(2) * h() + a(1);
        let c = p.coeffs_in(Param::Pitch);
        assert_eq!(c.len(), 4);
        assert_eq!(ParamPoly::from_coeffs_in(Param::Pitch, &c), p);
        assert_eq!(p.derivative(Param::Pitch), ParamPoly::int(3) * h().pow(2) * a(0) - ParamPoly::int(2));
    }
}
