use std::fmt;
use std::str::FromStr;

/// Highest polynomial coefficient index `a_n` that has a slot.
pub const MAX_COEF_INDEX: usize = 15;

const NAMED: usize = 9;

/// Number of exponent slots in a [`Monomial`].
pub const SLOTS: usize = NAMED + MAX_COEF_INDEX + 1;

/// A named symbol of the parameter ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    /// Pitch `h`.
    Pitch,
    /// Target mean curvature `H`.
    MeanCurvature,
    /// Target Gauss curvature `K`.
    GaussCurvature,
    /// Circle or cylinder radius `r`.
    Radius,
    Lambda,
    Mu,
    /// Scale `c` of the null-axis parabola.
    Scale,
    /// Phase `theta`, only used where it is not absorbed into `u = s + theta`.
    Phase,
    /// Offset `b` of a degenerate line.
    Offset,
    /// Polynomial coefficient `a_n`.
    Coef(u8),
}

impl Param {
    pub const fn slot(self) -> usize {
        match self {
            Param::Pitch => 0,
            Param::MeanCurvature => 1,
            Param::GaussCurvature => 2,
            Param::Radius => 3,
            Param::Lambda => 4,
            Param::Mu => 5,
            Param::Scale => 6,
            Param::Phase => 7,
            Param::Offset => 8,
            Param::Coef(n) => NAMED + n as usize,
        }
    }

    pub fn from_slot(slot: usize) -> Param {
        match slot {
            0 => Param::Pitch,
            1 => Param::MeanCurvature,
            2 => Param::GaussCurvature,
            3 => Param::Radius,
            4 => Param::Lambda,
            5 => Param::Mu,
            6 => Param::Scale,
            7 => Param::Phase,
            8 => Param::Offset,
            n => {
                assert!(n < SLOTS, "slot {n} out of range");
                Param::Coef((n - NAMED) as u8)
            }
        }
    }

    pub fn coef(n: usize) -> Param {
        assert!(n <= MAX_COEF_INDEX, "a{n} exceeds the supported degree");
        Param::Coef(n as u8)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Pitch => f.write_str("h"),
            Param::MeanCurvature => f.write_str("H"),
            Param::GaussCurvature => f.write_str("K"),
            Param::Radius => f.write_str("r"),
            Param::Lambda => f.write_str("lambda"),
            Param::Mu => f.write_str("mu"),
            Param::Scale => f.write_str("c"),
            Param::Phase => f.write_str("theta"),
            Param::Offset => f.write_str("b"),
            Param::Coef(n) => write!(f, "a{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown parameter `{0}`")]
pub struct UnknownParam(pub String);

impl FromStr for Param {
    type Err = UnknownParam;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "h" => Param::Pitch,
            "H" => Param::MeanCurvature,
            "K" => Param::GaussCurvature,
            "r" => Param::Radius,
            "lambda" => Param::Lambda,
            "mu" => Param::Mu,
            "c" => Param::Scale,
            "theta" => Param::Phase,
            "b" => Param::Offset,
            other => {
                let n = other
                    .strip_prefix('a')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&n| n <= MAX_COEF_INDEX)
                    .ok_or_else(|| UnknownParam(other.to_string()))?;
                Param::Coef(n as u8)
            }
        })
    }
}

/// Exponent vector over all parameter slots. The derived order is
/// lexicographic with `h` most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [u8; SLOTS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; SLOTS]);

    pub fn var(p: Param) -> Self {
        Self::var_pow(p, 1)
    }

    pub fn var_pow(p: Param, e: u8) -> Self {
        let mut m = Self::ONE;
        m.0[p.slot()] = e;
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exp(&self, p: Param) -> u8 {
        self.0[p.slot()]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u8; SLOTS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].checked_add(other.0[i]).expect("exponent overflow");
        }
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = [0u8; SLOTS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(out))
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = [0u8; SLOTS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].min(other.0[i]);
        }
        Monomial(out)
    }

    pub fn without(&self, p: Param) -> Monomial {
        let mut m = *self;
        m.0[p.slot()] = 0;
        m
    }

    pub fn vars(&self) -> impl Iterator<Item = (Param, u8)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Param::from_slot(i), e))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (p, e) in self.vars() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}
