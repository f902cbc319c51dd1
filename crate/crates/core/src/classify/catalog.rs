//! Named surfaces with known curvature.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::minkowski::AxisKind;
use crate::numeric::{NumericError, NumericSurface};
use crate::surface::{self, Branch, CurveSpec, HelicoidalSpec};
use crate::symbolic::expr::rational_to_f64;
use crate::symbolic::{rat, Param, ParamPoly, Rational};

use super::solver::{substitute_cleared, Binding};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    /// Short identifier accepted by the command line.
    pub id: &'static str,
    pub name: &'static str,
    pub spec: HelicoidalSpec,
    /// `|H|` when it is constant.
    pub mean: Option<Rational>,
    /// `K` when it is constant.
    pub gauss: Option<Rational>,
    /// `<N, N>` when it does not change over the surface.
    pub epsilon: Option<i8>,
    pub ruled: bool,
    /// `H² = K` everywhere.
    pub hk_equal: bool,
}

fn k(n: i64) -> ParamPoly {
    ParamPoly::int(n)
}

fn spec(axis: AxisKind, h: i64, curve: CurveSpec) -> HelicoidalSpec {
    HelicoidalSpec::new(axis, k(h), curve).expect("catalog spec")
}

fn poly(coeffs: &[i64]) -> CurveSpec {
    CurveSpec::PolyGraph { coeffs: coeffs.iter().map(|&c| k(c)).collect() }
}

pub fn hyperbolic_cylinder(branch: Branch, r: i64) -> HelicoidalSpec {
    spec(AxisKind::Spacelike, 1, CurveSpec::Circle { branch, r: k(r), lambda: k(0), mu: k(0) })
}

/// `X = (s cos t, s sin t, s + a0 + ht)`.
pub fn timelike_ruled(h: i64, a0: i64) -> HelicoidalSpec {
    spec(AxisKind::Timelike, h, poly(&[a0, 1]))
}

pub fn spacelike_ruled(h: i64, a0: i64) -> HelicoidalSpec {
    spec(AxisKind::Spacelike, h, poly(&[a0, 1]))
}

pub fn lorentzian_cylinder(r: i64) -> HelicoidalSpec {
    spec(AxisKind::Timelike, 1, CurveSpec::VerticalLine { offset: k(r) })
}

pub fn catalog() -> Vec<CatalogEntry> {
    use AxisKind::*;
    let entry = |id, name, spec, mean: Option<Rational>, gauss: Option<Rational>, epsilon, ruled, hk_equal| {
        CatalogEntry { id, name, spec, mean, gauss, epsilon, ruled, hk_equal }
    };
    let zero = || Some(rat(0, 1));
    vec![
        entry("helicoid1", "helicoid of the first kind", spec(Timelike, 1, poly(&[0])), zero(), None, None, true, false),
        entry("helicoid2", "helicoid of the second kind", spec(Spacelike, 1, poly(&[0])), zero(), None, None, true, false),
        entry(
            "helicoid3",
            "helicoid of the third kind",
            spec(Spacelike, 1, CurveSpec::VerticalLine { offset: k(0) }),
            zero(),
            None,
            None,
            true,
            false,
        ),
        entry("cayley", "Cayley surface", spec(Lightlike, 1, poly(&[0])), zero(), None, None, true, false),
        entry(
            "null-cylinder",
            "parabolic null cylinder",
            spec(Lightlike, 1, CurveSpec::HorizontalLine { offset: k(1) }),
            zero(),
            zero(),
            Some(1),
            true,
            true,
        ),
        entry("lorentzian-cylinder", "Lorentzian cylinder", lorentzian_cylinder(1), Some(rat(1, 2)), zero(), Some(1), true, false),
        entry(
            "hyperbolic-plus",
            "hyperbolic cylinder y^2 - z^2 = r^2",
            hyperbolic_cylinder(Branch::Plus, 2),
            Some(rat(1, 4)),
            zero(),
            Some(1),
            true,
            false,
        ),
        entry(
            "hyperbolic-minus",
            "hyperbolic cylinder y^2 - z^2 = -r^2",
            hyperbolic_cylinder(Branch::Minus, 2),
            Some(rat(1, 4)),
            zero(),
            Some(-1),
            true,
            false,
        ),
        entry(
            "timelike-ruled",
            "timelike-axis ruled surface",
            timelike_ruled(2, 1),
            Some(rat(1, 2)),
            Some(rat(1, 4)),
            Some(1),
            true,
            true,
        ),
        entry("spacelike-ruled", "spacelike-axis ruled surface", spacelike_ruled(1, 1), zero(), zero(), Some(1), true, true),
    ]
}

pub fn find(id: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.id == id)
}

/// Worst deviations over the numeric samples.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericCheck {
    pub samples: usize,
    pub mean_error: f64,
    pub gauss_error: f64,
    pub epsilon_ok: bool,
    /// Last value seen, for display.
    pub mean: f64,
    pub gauss: f64,
}

#[derive(Clone, Debug)]
pub struct CatalogCheck {
    pub entry: CatalogEntry,
    /// Exact identities that failed.
    pub symbolic_failures: Vec<String>,
    pub numeric: Result<NumericCheck, NumericError>,
}

/// Numeric tolerance for constant curvatures.
pub const TOLERANCE: f64 = 1e-9;

impl CatalogCheck {
    pub fn passed(&self) -> bool {
        self.symbolic_failures.is_empty()
            && matches!(&self.numeric, Ok(n) if n.mean_error < TOLERANCE && n.gauss_error < TOLERANCE && n.epsilon_ok)
    }
}

pub fn check_catalog() -> Vec<CatalogCheck> {
    catalog().into_iter().map(check_entry).collect()
}

pub fn check_entry(entry: CatalogEntry) -> CatalogCheck {
    let symbolic_failures = symbolic_failures(&entry);
    let numeric = numeric_check(&entry, 20, 0x5eed);
    CatalogCheck { entry, symbolic_failures, numeric }
}

fn binding(param: Param, power: u8, q: &Rational) -> Binding {
    Binding::new(param, power, ParamPoly::constant(q.numer().clone().into()), ParamPoly::constant(q.denom().clone().into()))
}

fn symbolic_failures(entry: &CatalogEntry) -> Vec<String> {
    let mut out = Vec::new();
    let b = match surface::curvature_bundle(&entry.spec) {
        Ok(b) => b,
        Err(e) => return vec![e.to_string()],
    };
    if let Some(eps) = entry.epsilon {
        if b.epsilon() != Some(eps) {
            out.push(format!("epsilon {:?}, expected {eps}", b.epsilon()));
        }
    }
    match &entry.mean {
        Some(q) if q == &rat(0, 1) => {
            if !b.h1.is_zero() {
                out.push(format!("H1 = {}", b.h1));
            }
        }
        Some(q) => {
            let sigma = entry.epsilon.map_or(-1, |e| -e);
            let ok = surface::condition_cmc_nonzero(&b, sigma)
                .map(|c| substitute_cleared(&c, &[binding(Param::MeanCurvature, 2, &(q * q))]).0.is_zero());
            if ok != Ok(true) {
                out.push(format!("4 H^2 sigma W^3 - H1^2 with |H| = {q}"));
            }
        }
        None => {}
    }
    if let Some(q) = &entry.gauss {
        let ok = surface::condition_cgc(&b)
            .map(|c| substitute_cleared(&c, &[binding(Param::GaussCurvature, 1, q)]).0.is_zero());
        if ok != Ok(true) {
            out.push(format!("K W^2 + K1 with K = {q}"));
        }
    }
    if entry.hk_equal && surface::condition_hk_equal(&b).map(|c| c.is_zero()) != Ok(true) {
        out.push("H1^2 - 4 W K1".into());
    }
    out
}

/// Compares `|H|` and `K` at `n` seeded random points.
pub fn numeric_check(entry: &CatalogEntry, n: usize, seed: u64) -> Result<NumericCheck, NumericError> {
    let surf = NumericSurface::new(&entry.spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut check =
        NumericCheck { samples: 0, mean_error: 0.0, gauss_error: 0.0, epsilon_ok: true, mean: 0.0, gauss: 0.0 };
    while check.samples < n {
        let s = rng.gen_range(-2.0..2.0);
        let t = rng.gen_range(-1.0..1.0);
        let c = match surf.frame(s, t) {
            Ok(f) => f.curvatures(),
            Err(NumericError::DegenerateMetric { .. }) => continue,
            Err(e) => return Err(e),
        };
        if let Some(q) = &entry.mean {
            check.mean_error = check.mean_error.max((c.abs_mean() - rational_to_f64(q)).abs());
        }
        if let Some(q) = &entry.gauss {
            check.gauss_error = check.gauss_error.max((c.gauss - rational_to_f64(q)).abs());
        }
        if let Some(e) = entry.epsilon {
            check.epsilon_ok &= c.epsilon == e;
        }
        check.mean = c.abs_mean();
        check.gauss = c.gauss;
        check.samples += 1;
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_passes() {
        for c in check_catalog() {
            assert!(c.passed(), "{}: {:?} {:?}", c.entry.name, c.symbolic_failures, c.numeric);
        }
    }

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = catalog().iter().map(|e| e.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), catalog().len());
    }
}
