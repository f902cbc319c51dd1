//! Linear algebra of Lorentz-Minkowski 3-space with the `(+, +, -)` inner
//! product, and the canonical helicoidal motion groups.
//!
//! Everything here is generic over [`Scalar`], a commutative ring with small
//! rational constants. `f64`, [`BigRational`] and
//! [`ParamPoly`](crate::symbolic::ParamPoly) all qualify, so the same code
//! drives the float, exact and symbolic pipelines.

use std::fmt::{self, Debug};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("a helicoidal motion group needs a nonzero pitch")]
    ZeroPitch,
    #[error("({0}, {1}) is not a point of the unit {2}")]
    InvalidTrigPair(String, String, &'static str),
}

/// Commutative ring with exact small rational constants.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// The constant `num / den`. `den` must be nonzero.
    fn ratio(num: i64, den: i64) -> Self;
}

impl Scalar for f64 {
    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
}

impl Scalar for BigRational {
    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MinkVec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Debug> Debug for MinkVec3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}, {:?})", self.x, self.y, self.z)
    }
}

impl<T> MinkVec3<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn map<U>(self, mut f: impl FnMut(T) -> U) -> MinkVec3<U> {
        MinkVec3::new(f(self.x), f(self.y), f(self.z))
    }

    pub fn to_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }
}

impl<T: Scalar> MinkVec3<T> {
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(
            k.clone() * self.x.clone(),
            k.clone() * self.y.clone(),
            k.clone() * self.z.clone(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

impl MinkVec3<f64> {
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn euclidean_norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

impl<T: Scalar> Add for MinkVec3<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl<T: Scalar> Sub for MinkVec3<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl<T: Scalar> Neg for MinkVec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

/// `u.x v.x + u.y v.y - u.z v.z`
pub fn minkowski_dot<T: Scalar>(u: &MinkVec3<T>, v: &MinkVec3<T>) -> T {
    u.x.clone() * v.x.clone() + u.y.clone() * v.y.clone() - u.z.clone() * v.z.clone()
}

/// Euclidean determinant of the matrix with rows `u`, `v`, `w`.
pub fn det3<T: Scalar>(u: &MinkVec3<T>, v: &MinkVec3<T>, w: &MinkVec3<T>) -> T {
    u.x.clone() * (v.y.clone() * w.z.clone() - v.z.clone() * w.y.clone())
        - u.y.clone() * (v.x.clone() * w.z.clone() - v.z.clone() * w.x.clone())
        + u.z.clone() * (v.x.clone() * w.y.clone() - v.y.clone() * w.x.clone())
}

/// The Lorentzian cross product, characterised by `<u x v, w> = det(u, v, w)`.
pub fn lorentz_cross<T: Scalar>(u: &MinkVec3<T>, v: &MinkVec3<T>) -> MinkVec3<T> {
    MinkVec3::new(
        u.y.clone() * v.z.clone() - u.z.clone() * v.y.clone(),
        u.z.clone() * v.x.clone() - u.x.clone() * v.z.clone(),
        -(u.x.clone() * v.y.clone() - u.y.clone() * v.x.clone()),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
}

/// Exact classification. The zero vector counts as spacelike.
pub fn causal_character<T: Scalar + PartialOrd>(v: &MinkVec3<T>) -> CausalCharacter {
    let q = minkowski_dot(v, v);
    if q > T::zero() || v.is_zero() {
        CausalCharacter::Spacelike
    } else if q < T::zero() {
        CausalCharacter::Timelike
    } else {
        CausalCharacter::Lightlike
    }
}

/// Float classification where `|<v,v>| <= tol` counts as null.
pub fn causal_character_tol(v: &MinkVec3<f64>, tol: f64) -> CausalCharacter {
    let q = minkowski_dot(v, v);
    if v.is_zero() || q > tol {
        CausalCharacter::Spacelike
    } else if q < -tol {
        CausalCharacter::Timelike
    } else {
        CausalCharacter::Lightlike
    }
}

/// Causal character of the rotation axis; each kind has one canonical axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxisKind {
    Timelike,
    Spacelike,
    Lightlike,
}

impl AxisKind {
    pub const ALL: [AxisKind; 3] = [AxisKind::Timelike, AxisKind::Spacelike, AxisKind::Lightlike];

    /// `(0,0,1)`, `(1,0,0)` and `(1,0,1)` respectively.
    pub fn direction<T: Scalar>(self) -> MinkVec3<T> {
        let (x, y, z) = match self {
            AxisKind::Timelike => (0, 0, 1),
            AxisKind::Spacelike => (1, 0, 0),
            AxisKind::Lightlike => (1, 0, 1),
        };
        MinkVec3::new(T::ratio(x, 1), T::ratio(y, 1), T::ratio(z, 1))
    }

    pub fn name(self) -> &'static str {
        match self {
            AxisKind::Timelike => "timelike",
            AxisKind::Spacelike => "spacelike",
            AxisKind::Lightlike => "lightlike",
        }
    }
}

impl fmt::Display for AxisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for AxisKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "timelike" | "T" => Ok(AxisKind::Timelike),
            "spacelike" | "S" => Ok(AxisKind::Spacelike),
            "lightlike" | "L" => Ok(AxisKind::Lightlike),
            other => Err(format!("unknown axis kind `{other}`")),
        }
    }
}

/// Row-major 3x3 matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat3<T>(pub [[T; 3]; 3]);

impl<T: Scalar> Mat3<T> {
    pub fn zero() -> Self {
        Mat3(std::array::from_fn(|_| std::array::from_fn(|_| T::zero())))
    }

    pub fn identity() -> Self {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { T::one() } else { T::zero() })
        }))
    }

    pub fn from_ints(rows: [[i64; 3]; 3]) -> Self {
        Mat3(rows.map(|row| row.map(|v| T::ratio(v, 1))))
    }

    pub fn row(&self, i: usize) -> MinkVec3<T> {
        let [a, b, c] = self.0[i].clone();
        MinkVec3::new(a, b, c)
    }

    pub fn col(&self, j: usize) -> MinkVec3<T> {
        MinkVec3::new(self.0[0][j].clone(), self.0[1][j].clone(), self.0[2][j].clone())
    }

    pub fn apply(&self, v: &MinkVec3<T>) -> MinkVec3<T> {
        let r = |i: usize| {
            self.0[i][0].clone() * v.x.clone()
                + self.0[i][1].clone() * v.y.clone()
                + self.0[i][2].clone() * v.z.clone()
        };
        MinkVec3::new(r(0), r(1), r(2))
    }

    pub fn compose(&self, rhs: &Mat3<T>) -> Mat3<T> {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).fold(T::zero(), |acc, k| acc + self.0[i][k].clone() * rhs.0[k][j].clone())
            })
        }))
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat3<U> {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| f(&self.0[i][j]))))
    }
}

/// `p -> linear * p + translation`.
#[derive(Clone, Debug, PartialEq)]
pub struct RigidMotion<T> {
    pub linear: Mat3<T>,
    pub translation: MinkVec3<T>,
}

impl<T: Scalar> RigidMotion<T> {
    pub fn identity() -> Self {
        Self { linear: Mat3::identity(), translation: MinkVec3::zero() }
    }

    pub fn apply(&self, p: &MinkVec3<T>) -> MinkVec3<T> {
        self.linear.apply(p) + self.translation.clone()
    }

    /// `self ∘ rhs`
    pub fn compose(&self, rhs: &RigidMotion<T>) -> RigidMotion<T> {
        RigidMotion {
            linear: self.linear.compose(&rhs.linear),
            translation: self.linear.apply(&rhs.translation) + self.translation.clone(),
        }
    }

    /// True when `<Mu, Mv> = <u, v>` on every pair of basis vectors.
    pub fn preserves_metric(&self) -> bool {
        (0..3).all(|i| {
            (0..3).all(|j| {
                let mi = self.linear.col(i);
                let mj = self.linear.col(j);
                let expected = match (i, j) {
                    (2, 2) => -T::one(),
                    (a, b) if a == b => T::one(),
                    _ => T::zero(),
                };
                minkowski_dot(&mi, &mj) == expected
            })
        })
    }
}

/// Helicoidal motion `φ_t` of pitch `h` about the canonical axis, built from a
/// precomputed trigonometric pair.
///
/// `pair` is `(cos t, sin t)` for the timelike axis and `(cosh t, sinh t)` for
/// the spacelike axis; it is ignored for the lightlike axis, whose matrix is
/// polynomial in `t`. Passing the pair separately lets exact backends use
/// rational points on the unit circle or hyperbola.
pub fn motion_from_pair<T: Scalar>(axis: AxisKind, h: &T, t: &T, pair: (T, T)) -> RigidMotion<T> {
    let zero = T::zero;
    let one = T::one;
    match axis {
        AxisKind::Timelike => {
            let (c, s) = pair;
            RigidMotion {
                linear: Mat3([
                    [c.clone(), -s.clone(), zero()],
                    [s, c, zero()],
                    [zero(), zero(), one()],
                ]),
                translation: MinkVec3::new(zero(), zero(), h.clone() * t.clone()),
            }
        }
        AxisKind::Spacelike => {
            let (ch, sh) = pair;
            RigidMotion {
                linear: Mat3([
                    [one(), zero(), zero()],
                    [zero(), ch.clone(), sh.clone()],
                    [zero(), sh, ch],
                ]),
                translation: MinkVec3::new(h.clone() * t.clone(), zero(), zero()),
            }
        }
        AxisKind::Lightlike => lightlike_motion(h, t),
    }
}

/// The lightlike-axis motion; polynomial in `t`, hence exact in any backend.
pub fn lightlike_motion<T: Scalar>(h: &T, t: &T) -> RigidMotion<T> {
    let half = T::ratio(1, 2);
    let third = T::ratio(1, 3);
    let t2 = t.clone() * t.clone();
    let t3 = t2.clone() * t.clone();
    let q = half * t2.clone();
    RigidMotion {
        linear: Mat3([
            [T::one() - q.clone(), t.clone(), q.clone()],
            [-t.clone(), T::one(), t.clone()],
            [-q.clone(), t.clone(), T::one() + q],
        ]),
        translation: MinkVec3::new(
            h.clone() * (third.clone() * t3.clone() - t.clone()),
            h.clone() * t2,
            h.clone() * (third * t3 + t.clone()),
        ),
    }
}

/// Float helicoidal motion. `h = 0` gives the rotation group about the axis.
pub fn motion(axis: AxisKind, h: f64, t: f64) -> RigidMotion<f64> {
    let pair = match axis {
        AxisKind::Timelike => (t.cos(), t.sin()),
        AxisKind::Spacelike => (t.cosh(), t.sinh()),
        AxisKind::Lightlike => (1.0, 0.0),
    };
    motion_from_pair(axis, &h, &t, pair)
}

/// Like [`motion`] but rejects the rotational case `h = 0`.
pub fn helicoidal_motion(axis: AxisKind, h: f64, t: f64) -> Result<RigidMotion<f64>, GeometryError> {
    if h == 0.0 {
        return Err(GeometryError::ZeroPitch);
    }
    Ok(motion(axis, h, t))
}

/// Exact linear part of the timelike or spacelike rotation from a rational
/// trigonometric pair, validated against `c² + s² = 1` or `c² - s² = 1`.
pub fn exact_rotation(
    axis: AxisKind,
    pair: (BigRational, BigRational),
) -> Result<Mat3<BigRational>, GeometryError> {
    let (c, s) = pair;
    let one = BigRational::one();
    let (ok, kind) = match axis {
        AxisKind::Timelike => (&c * &c + &s * &s == one, "circle"),
        AxisKind::Spacelike => (&c * &c - &s * &s == one, "hyperbola"),
        AxisKind::Lightlike => (true, ""),
    };
    if !ok {
        return Err(GeometryError::InvalidTrigPair(c.to_string(), s.to_string(), kind));
    }
    let zero = BigRational::zero();
    Ok(motion_from_pair(axis, &zero, &zero, (c, s)).linear)
}

/// First and second `t`-derivatives of `φ_t` at `t = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct MotionJet<T> {
    pub a1: Mat3<T>,
    pub v1: MinkVec3<T>,
    pub a2: Mat3<T>,
    pub v2: MinkVec3<T>,
}

pub fn motion_jet<T: Scalar>(axis: AxisKind, h: &T) -> MotionJet<T> {
    let hv = |x: i64, y: i64, z: i64| MinkVec3::new(T::ratio(x, 1), T::ratio(y, 1), T::ratio(z, 1)).scale(h);
    match axis {
        AxisKind::Timelike => MotionJet {
            a1: Mat3::from_ints([[0, -1, 0], [1, 0, 0], [0, 0, 0]]),
            v1: hv(0, 0, 1),
            a2: Mat3::from_ints([[-1, 0, 0], [0, -1, 0], [0, 0, 0]]),
            v2: MinkVec3::zero(),
        },
        AxisKind::Spacelike => MotionJet {
            a1: Mat3::from_ints([[0, 0, 0], [0, 0, 1], [0, 1, 0]]),
            v1: hv(1, 0, 0),
            a2: Mat3::from_ints([[0, 0, 0], [0, 1, 0], [0, 0, 1]]),
            v2: MinkVec3::zero(),
        },
        AxisKind::Lightlike => MotionJet {
            a1: Mat3::from_ints([[0, 1, 0], [-1, 0, 1], [0, 1, 0]]),
            v1: hv(-1, 0, 1),
            a2: Mat3::from_ints([[-1, 0, 1], [0, 0, 0], [-1, 0, 1]]),
            v2: hv(0, 2, 0),
        },
    }
}

/// Orbit of `p` under the rotation group (pitch zero) about the axis.
pub fn rotation_orbit(axis: AxisKind, p: &MinkVec3<f64>, t: f64) -> MinkVec3<f64> {
    motion(axis, 0.0, t).apply(p)
}

/// Exact orbit point for the lightlike axis, where the group is polynomial.
pub fn lightlike_orbit<T: Scalar>(p: &MinkVec3<T>, t: &T) -> MinkVec3<T> {
    lightlike_motion(&T::zero(), t).apply(p)
}

/// `<p - π(p), p - π(p)>` where `π` is the metric projection onto a non-null
/// axis. For the null axis no projection exists and `None` is returned.
pub fn axial_radius_sq<T: Scalar>(axis: AxisKind, p: &MinkVec3<T>) -> Option<T> {
    let d: MinkVec3<T> = axis.direction();
    let dd = minkowski_dot(&d, &d);
    if dd.is_zero() {
        return None;
    }
    // <d,d> = ±1 for the canonical axes, so 1/<d,d> = <d,d>.
    let pd = minkowski_dot(p, &d);
    let proj = d.scale(&(pd * dd));
    let q = p.clone() - proj;
    Some(minkowski_dot(&q, &q))
}
