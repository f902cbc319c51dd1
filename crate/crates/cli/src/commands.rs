//! The subcommands, independent of argument parsing.

use helicoid::classify::catalog::{check_catalog, CatalogEntry};
use helicoid::classify::{verify, ClassificationReport, Leaf, Theorem};
use helicoid::minkowski::{AxisKind, MinkVec3};
use helicoid::numeric::{self, linspace, NumericSurface};
use helicoid::surface::{curvature_bundle, HelicoidalSpec};
use helicoid::symbolic::{ParamPoly, Rational};
use serde_json::{json, Map, Value};

use crate::descriptor::{parse_curve, CurveParams};
use crate::output::{json_num, num, obj};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Rendered output and, when the command found a problem, its summary.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub failure: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, failure: None }
    }
}

/// Axis, pitch and curve descriptor as given on the command line.
#[derive(Clone, Debug)]
pub struct SurfaceArgs {
    pub axis: AxisKind,
    pub curve: String,
    pub h: Rational,
    pub params: CurveParams,
}

impl SurfaceArgs {
    pub fn spec(&self) -> Result<HelicoidalSpec, CliError> {
        let curve = parse_curve(&self.curve, &self.params)?;
        Ok(HelicoidalSpec::new(self.axis, ParamPoly::constant(self.h.clone()), curve)?)
    }
}

pub struct CurvatureArgs {
    pub surface: SurfaceArgs,
    pub samples: Vec<[f64; 2]>,
    pub format: Format,
}

pub fn curvature(args: &CurvatureArgs) -> Result<Outcome, CliError> {
    let spec = args.surface.spec()?;
    let b = curvature_bundle(&spec)?;
    let surf = NumericSurface::new(&spec)?;
    let mut samples = Vec::new();
    for &[s, t] in &args.samples {
        let c = surf.frame(s, t)?.curvatures();
        samples.push((s, t, c));
    }
    let text = match args.format {
        Format::Json => {
            let rows: Vec<Value> = samples
                .iter()
                .map(|(s, t, c)| {
                    json!({"s": json_num(*s), "t": json_num(*t), "H": json_num(c.mean), "K": json_num(c.gauss), "epsilon": c.epsilon})
                })
                .collect();
            let doc = json!({
                "axis": spec.axis.name(),
                "curve": spec.curve.to_string(),
                "W": b.w.to_string(),
                "H1": b.h1.to_string(),
                "K1": b.k1.to_string(),
                "samples": rows,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Format::Text => {
            let mut s = format!("axis {}, curve {}, h = {}\n", spec.axis, spec.curve, spec.h);
            s.push_str(&format!("W  = {}\nH1 = {}\nK1 = {}\n", b.w, b.h1, b.k1));
            for (ps, pt, c) in &samples {
                s.push_str(&format!(
                    "s = {}, t = {}: H = {}, |H| = {}, K = {}, epsilon = {}\n",
                    num(*ps),
                    num(*pt),
                    num(c.mean),
                    num(c.abs_mean()),
                    num(c.gauss),
                    c.epsilon
                ));
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

pub fn verify_theorem(theorem: Theorem, m_max: usize, format: Format) -> Result<Outcome, CliError> {
    let report = verify(theorem, m_max)?;
    let text = match format {
        Format::Text => report.to_string(),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report_json(&report)).expect("json")),
    };
    let failure = (!report.status.is_ok()).then(|| format!("{theorem}: {}", report.status));
    Ok(Outcome { text, failure })
}

fn leaf_json(l: &Leaf) -> Value {
    let kind = match l {
        Leaf::Contradiction(_) => "contradiction",
        Leaf::Degenerate { .. } => "degenerate",
        Leaf::WrongSign { .. } => "wrong-sign",
        Leaf::Family(_) => "family",
        Leaf::Unresolved { .. } => "unresolved",
    };
    let mut m = Map::new();
    m.insert("kind".into(), kind.into());
    m.insert("text".into(), l.to_string().into());
    if let Leaf::Contradiction(c) = l {
        m.insert("degree".into(), c.basis_index().into());
        m.insert("coefficient".into(), c.coefficient.to_string().into());
        m.insert("given".into(), c.nonzero_assumptions().into());
    }
    if let Leaf::Family(f) = l {
        m.insert("bindings".into(), f.binding_texts().into());
        m.insert("residual".into(), f.residual_texts().into());
    }
    Value::Object(m)
}

fn report_json(r: &ClassificationReport) -> Value {
    let sections: Vec<Value> = r
        .sections
        .iter()
        .map(|sec| {
            let cases: Vec<Value> = sec
                .cases
                .iter()
                .map(|c| {
                    json!({
                        "case": c.case.to_string(),
                        "verdict": c.verdict.to_string(),
                        "leaves": c.leaves.iter().map(leaf_json).collect::<Vec<_>>(),
                        "surfaces": c.surfaces,
                    })
                })
                .collect();
            let probes: Vec<Value> = sec
                .probes
                .iter()
                .map(|p| {
                    json!({
                        "case": p.case.to_string(),
                        "label": p.label,
                        "bindings": p.bindings,
                        "computed": p.computed,
                        "verdict": p.verdict.to_string(),
                    })
                })
                .collect();
            json!({"axis": sec.axis.name(), "equation": sec.equation.to_string(), "cases": cases, "checks": probes})
        })
        .collect();
    let status = match &r.status {
        helicoid::classify::Status::Matches => "matches",
        helicoid::classify::Status::MatchesWithErrata(_) => "matches-with-errata",
        helicoid::classify::Status::Mismatch(_) => "mismatch",
        helicoid::classify::Status::Unresolved(_) => "unresolved",
    };
    json!({
        "theorem": r.theorem.to_string(),
        "title": r.theorem.title(),
        "status": status,
        "notes": r.errata(),
        "sections": sections,
    })
}

fn expected_text(q: &Option<Rational>) -> String {
    q.as_ref().map_or_else(|| "varies".into(), |q| q.to_string())
}

fn entry_line(e: &CatalogEntry) -> String {
    format!("{} (axis {}, {}, h = {})", e.id, e.spec.axis, e.spec.curve, e.spec.h)
}

pub fn catalog() -> Outcome {
    let mut text = String::new();
    let mut failed = Vec::new();
    let checks = check_catalog();
    for c in &checks {
        let e = &c.entry;
        let pass = c.passed();
        text.push_str(&format!("{} {}\n  {}\n", if pass { "PASS" } else { "FAIL" }, e.name, entry_line(e)));
        let computed = match &c.numeric {
            Ok(n) => format!("|H| = {}, K = {} (max error {:e}, {:e})", num(n.mean), num(n.gauss), n.mean_error, n.gauss_error),
            Err(err) => err.to_string(),
        };
        text.push_str(&format!(
            "  expected |H| = {}, K = {}; computed {}\n",
            expected_text(&e.mean),
            expected_text(&e.gauss),
            computed
        ));
        for f in &c.symbolic_failures {
            text.push_str(&format!("  identity fails: {f}\n"));
        }
        if !pass {
            failed.push(e.id);
        }
    }
    text.push_str(&format!("{} entries, {} pass\n", checks.len(), checks.len() - failed.len()));
    let failure = (!failed.is_empty()).then(|| format!("catalog entries failed: {}", failed.join(", ")));
    Outcome { text, failure }
}

pub struct OrbitArgs {
    pub axis: AxisKind,
    pub point: [f64; 3],
    pub h: f64,
    pub steps: usize,
    pub t_range: [f64; 2],
}

pub fn orbit(args: &OrbitArgs) -> Result<Outcome, CliError> {
    if args.steps == 0 {
        return Err(CliError::Invalid("--steps must be at least 1".into()));
    }
    let ts = if args.steps == 1 { vec![args.t_range[0]] } else { linspace(args.t_range[0], args.t_range[1], args.steps) };
    let [x, y, z] = args.point;
    let pts = numeric::orbit(args.axis, args.h, &MinkVec3::new(x, y, z), &ts);
    let mut text = String::from("t,x,y,z\n");
    for (t, p) in ts.iter().zip(pts) {
        text.push_str(&format!("{},{},{},{}\n", num(*t), num(p.x), num(p.y), num(p.z)));
    }
    Ok(Outcome::ok(text))
}

pub enum MeshSource {
    Catalog(String),
    Surface(SurfaceArgs),
}

pub struct MeshArgs {
    pub source: MeshSource,
    pub n: usize,
    pub s_range: [f64; 2],
    pub t_range: [f64; 2],
}

pub fn mesh(args: &MeshArgs) -> Result<Outcome, CliError> {
    let spec = match &args.source {
        MeshSource::Catalog(id) => helicoid::classify::catalog::find(id)
            .ok_or_else(|| {
                let ids: Vec<&str> = helicoid::classify::catalog::catalog().iter().map(|e| e.id).collect();
                CliError::Invalid(format!("unknown surface `{id}`; known: {}", ids.join(", ")))
            })?
            .spec,
        MeshSource::Surface(s) => s.spec()?,
    };
    let m = numeric::mesh(
        &spec,
        (args.s_range[0], args.s_range[1]),
        (args.t_range[0], args.t_range[1]),
        args.n,
        args.n,
    )?;
    let comment = format!("helicoidal surface, axis {}, {}, h = {}, {}x{} grid", spec.axis, spec.curve, spec.h, args.n, args.n);
    Ok(Outcome::ok(obj(&m, &comment)))
}
