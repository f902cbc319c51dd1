use std::f64::consts::FRAC_PI_2;

use helicoid::classify::catalog::{self, catalog};
use helicoid::minkowski::{minkowski_dot, AxisKind, MinkVec3};
use helicoid::numeric::*;
use helicoid::surface::{curvature_bundle, Branch, CurveSpec, HelicoidalSpec};
use helicoid::symbolic::ParamPoly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn k(n: i64) -> ParamPoly {
    ParamPoly::int(n)
}

fn poly_spec(axis: AxisKind, h: i64, coeffs: &[i64]) -> HelicoidalSpec {
    HelicoidalSpec::new(axis, k(h), CurveSpec::PolyGraph { coeffs: coeffs.iter().map(|&c| k(c)).collect() }).unwrap()
}

fn close(a: &MinkVec3<f64>, b: &MinkVec3<f64>, tol: f64) -> bool {
    (a.clone() - b.clone()).euclidean_norm() <= tol
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn eval_surface_examples() {
    let p = eval_surface(&poly_spec(AxisKind::Timelike, 1, &[0]), 1.0, 0.0).unwrap();
    assert!(close(&p, &MinkVec3::new(1.0, 0.0, 0.0), 1e-15));
    let p = eval_surface(&poly_spec(AxisKind::Timelike, 1, &[1, 1]), 0.0, FRAC_PI_2).unwrap();
    assert!(close(&p, &MinkVec3::new(0.0, 0.0, 1.0 + FRAC_PI_2), 1e-15));
    let p = eval_surface(&catalog::hyperbolic_cylinder(Branch::Plus, 1), 0.0, 0.0).unwrap();
    assert!(close(&p, &MinkVec3::new(0.0, 1.0, 0.0), 1e-15));
}

#[test]
fn symbolic_specs_are_rejected() {
    let spec = HelicoidalSpec::symbolic(AxisKind::Timelike, CurveSpec::symbolic_poly(1)).unwrap();
    assert_eq!(eval_surface(&spec, 0.0, 0.0), Err(NumericError::NotConcrete));
}

#[test]
fn frame_examples() {
    let f = numeric_frame(&catalog::hyperbolic_cylinder(Branch::Plus, 2), 0.3, 0.7).unwrap();
    assert!(f.w < 0.0);
    assert_eq!(f.epsilon, 1);
    let f = numeric_frame(&catalog::spacelike_ruled(1, 2), 0.4, -0.2).unwrap();
    assert!((f.w + 4.0).abs() < 1e-12);
    let f = numeric_frame(&catalog::timelike_ruled(3, 0), 1.5, 0.9).unwrap();
    assert!((f.w + 9.0).abs() < 1e-12);
}

#[test]
fn degenerate_points_are_errors() {
    // W = s^2 - h^2 on the helicoid of the first kind.
    let spec = poly_spec(AxisKind::Timelike, 1, &[0]);
    assert!(matches!(numeric_frame(&spec, 1.0, 0.3), Err(NumericError::DegenerateMetric { .. })));
    // |a1| = 1 on the spacelike axis with a0 = 0.
    let spec = poly_spec(AxisKind::Spacelike, 1, &[0, 1]);
    assert!(matches!(numeric_curvatures(&spec, 0.5, 0.0), Err(NumericError::DegenerateMetric { .. })));
}

#[test]
fn curvature_examples() {
    let c = numeric_curvatures(&catalog::hyperbolic_cylinder(Branch::Plus, 2), 0.3, 0.7).unwrap();
    assert!((c.abs_mean() - 0.25).abs() < 1e-9 && c.gauss.abs() < 1e-9);
    let c = numeric_curvatures(&catalog::timelike_ruled(2, 1), 1.0, 0.0).unwrap();
    assert!((c.abs_mean() - 0.5).abs() < 1e-9 && (c.gauss - 0.25).abs() < 1e-9);
    let c = numeric_curvatures(&poly_spec(AxisKind::Lightlike, 1, &[5]), 1.0, 1.0).unwrap();
    assert!(c.mean.abs() < 1e-9);
}

#[test]
fn frame_invariants_on_catalog() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for e in catalog() {
        let surf = NumericSurface::new(&e.spec).unwrap();
        for _ in 0..20 {
            let (s, t) = (rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0));
            let Ok(f) = surf.frame(s, t) else { continue };
            assert!((minkowski_dot(&f.n, &f.n) - f64::from(f.epsilon)).abs() < 1e-10, "{}", e.name);
            assert!(minkowski_dot(&f.n, &f.d.x_s).abs() < 1e-10, "{}", e.name);
            assert!(minkowski_dot(&f.n, &f.d.x_t).abs() < 1e-10, "{}", e.name);
            assert_eq!(f.w.signum(), -f64::from(f.epsilon));
            let c = f.curvatures();
            let a = f.weingarten();
            assert!((a.trace - 2.0 * f64::from(f.epsilon) * c.mean).abs() < 1e-8);
            assert!((a.det - f64::from(f.epsilon) * c.gauss).abs() < 1e-8);
        }
    }
}

#[test]
fn analytic_frame_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for e in catalog() {
        let surf = NumericSurface::new(&e.spec).unwrap();
        let mut n = 0;
        while n < 20 {
            let (s, t) = (rng.gen_range(-1.5..1.5), rng.gen_range(-1.0..1.0));
            let Ok(a) = surf.frame(s, t) else { continue };
            let b = fd_oracle(&e.spec, s, t, 1e-4).unwrap();
            let pairs = [
                (&a.d.x_s, &b.d.x_s),
                (&a.d.x_t, &b.d.x_t),
                (&a.d.x_ss, &b.d.x_ss),
                (&a.d.x_st, &b.d.x_st),
                (&a.d.x_tt, &b.d.x_tt),
            ];
            for (u, v) in pairs {
                for (x, y) in u.clone().to_array().into_iter().zip(v.clone().to_array()) {
                    assert!(rel_close(y, x, 1e-6), "{} at ({s}, {t}): {x} vs {y}", e.name);
                }
            }
            n += 1;
        }
    }
}

#[test]
fn fd_step_is_range_checked() {
    let spec = poly_spec(AxisKind::Spacelike, 1, &[0]);
    assert_eq!(fd_oracle(&spec, 0.5, 0.5, 1e-2), Err(NumericError::StepOutOfRange(1e-2)));
    assert_eq!(fd_oracle(&spec, 0.5, 0.5, 1e-7), Err(NumericError::StepOutOfRange(1e-7)));
    assert!(fd_oracle(&spec, 0.5, 0.5, 1e-6).is_ok());
}

#[test]
fn curvature_is_constant_along_orbits() {
    for e in catalog() {
        let surf = NumericSurface::new(&e.spec).unwrap();
        for s in linspace(-1.7, 1.9, 10) {
            let Ok(base) = surf.frame(s, 0.0) else { continue };
            let base = base.curvatures();
            for t in linspace(-1.0, 1.0, 10) {
                let c = surf.frame(s, t).unwrap().curvatures();
                assert!((c.mean - base.mean).abs() < 1e-9, "{} H at ({s}, {t})", e.name);
                assert!((c.gauss - base.gauss).abs() < 1e-9, "{} K at ({s}, {t})", e.name);
            }
        }
    }
}

#[test]
fn symbolic_bundle_matches_numeric_frame_at_t0() {
    for e in catalog() {
        let b = curvature_bundle(&e.spec).unwrap();
        let surf = NumericSurface::new(&e.spec).unwrap();
        for s in [-1.3, -0.4, 0.25, 0.9, 1.7] {
            let Ok(f) = surf.frame(s, 0.0) else { continue };
            let ev = |x: &helicoid::symbolic::SymExpr| x.eval_f64(s, &|_| f64::NAN);
            let root = f.w.abs().sqrt();
            assert!(rel_close(ev(&b.e), f.first.e, 1e-10), "{}", e.name);
            assert!(rel_close(ev(&b.f), f.first.f, 1e-10), "{}", e.name);
            assert!(rel_close(ev(&b.g), f.first.g, 1e-10), "{}", e.name);
            assert!(rel_close(ev(&b.w), f.w, 1e-10), "{}", e.name);
            assert!(rel_close(ev(&b.d_uu), f.second.e * root, 1e-10), "{}", e.name);
            assert!(rel_close(ev(&b.d_uv), f.second.f * root, 1e-10), "{}", e.name);
            assert!(rel_close(ev(&b.d_vv), f.second.g * root, 1e-10), "{}", e.name);
        }
    }
}

#[test]
fn weingarten_examples() {
    let a = weingarten(&catalog::timelike_ruled(1, 0), 0.7, 0.2).unwrap();
    assert!(a.non_diagonalizable);
    assert!(a.discriminant.abs() < 1e-8);
    let a = weingarten(&catalog::spacelike_ruled(1, 1), 0.7, 0.2).unwrap();
    assert!(a.non_diagonalizable);
    assert!(a.trace.abs() < 1e-9 && a.det.abs() < 1e-9);
    let a = weingarten(&catalog::lorentzian_cylinder(1), 0.3, 0.1).unwrap();
    assert!((a.trace.abs() - 1.0).abs() < 1e-9);
    assert!(a.det.abs() < 1e-9);
    assert!(!a.non_diagonalizable);
}

#[test]
fn sample_grid_layout() {
    let spec = poly_spec(AxisKind::Timelike, 1, &[0, 0, 1]);
    let g = sample_grid(&spec, (-1.0, 2.0), (0.0, 3.0), 2, 2).unwrap();
    let corners = [(-1.0, 0.0), (-1.0, 3.0), (2.0, 0.0), (2.0, 3.0)];
    for (p, (s, t)) in g.iter().zip(corners) {
        assert!(close(p, &eval_surface(&spec, s, t).unwrap(), 1e-15));
    }
    assert_eq!(sample_grid(&spec, (-1.0, 1.0), (-1.0, 1.0), 50, 50).unwrap().len(), 2500);
    assert_eq!(sample_grid(&spec, (1.0, 1.0), (0.0, 1.0), 3, 3), Err(NumericError::EmptyRange(1.0, 1.0)));
    assert_eq!(sample_grid(&spec, (0.0, 1.0), (0.0, 1.0), 1, 3), Err(NumericError::GridTooSmall(1, 3)));
}

#[test]
fn mesh_counts() {
    let m = mesh(&catalog::find("cayley").unwrap().spec, (-1.0, 1.0), (-1.0, 1.0), 10, 10).unwrap();
    assert_eq!(m.vertices.len(), 100);
    assert_eq!(m.triangles.len(), 162);
    assert_eq!(m.triangles[0], [0, 10, 11]);
}

#[test]
fn lightlike_orbit_stays_in_plane() {
    let p = MinkVec3::new(1.0, 0.0, 3.0);
    for q in orbit(AxisKind::Lightlike, 0.0, &p, &linspace(-2.0, 2.0, 5)) {
        assert!((q.x - q.z + 2.0).abs() < 1e-12);
    }
}
