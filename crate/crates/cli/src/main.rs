use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use helicoid::classify::Theorem;
use helicoid::minkowski::AxisKind;
use helicoid::symbolic::Rational;
use helicoid_cli::commands::{self, CurvatureArgs, Format, MeshArgs, MeshSource, OrbitArgs, Outcome, SurfaceArgs};
use helicoid_cli::descriptor::{parse_floats, parse_rational, CurveParams};
use helicoid_cli::output::emit;
use helicoid_cli::CliError;

/// Helicoidal surfaces in Lorentz-Minkowski space.
#[derive(Parser)]
#[command(name = "helicoid", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Symbolic W, H1, K1 and numeric H, K at sample points.
    Curvature {
        #[command(flatten)]
        surface: SurfaceOpts,
        /// Sample point `s,t`; repeatable.
        #[arg(long = "sample", value_parser = floats::<2>)]
        samples: Vec<[f64; 2]>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatOpt,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Mechanically check one of the classification theorems.
    Verify {
        /// t1, t2, t3 or t4.
        #[arg(value_parser = theorem)]
        theorem: Theorem,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatOpt,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check every catalog surface symbolically and numerically.
    Catalog {
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// CSV samples `t,x,y,z` of the orbit of a point.
    Orbit {
        #[arg(long, value_parser = axis)]
        axis: AxisKind,
        #[arg(long, value_parser = floats::<3>, allow_hyphen_values = true)]
        point: [f64; 3],
        /// Pitch; 0 gives the rotation orbit.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        h: f64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, value_parser = floats::<2>, default_value = "0,1", allow_hyphen_values = true)]
        t_range: [f64; 2],
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Triangulated OBJ mesh of a catalog surface or of a given surface.
    Mesh {
        /// Catalog identifier, e.g. `cayley`.
        #[arg(long, conflicts_with_all = ["axis", "curve"])]
        surface: Option<String>,
        #[arg(long, value_parser = axis, requires = "curve")]
        axis: Option<AxisKind>,
        #[arg(long, requires = "axis", allow_hyphen_values = true)]
        curve: Option<String>,
        #[command(flatten)]
        params: ParamOpts,
        /// Samples per direction.
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, value_parser = floats::<2>, default_value = "-1,1", allow_hyphen_values = true)]
        s_range: [f64; 2],
        #[arg(long, value_parser = floats::<2>, default_value = "-1,1", allow_hyphen_values = true)]
        t_range: [f64; 2],
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SurfaceOpts {
    #[arg(long, value_parser = axis)]
    axis: AxisKind,
    /// poly:a0,a1,..  circle:+|-  nullcircle  vline:r  hline:b
    #[arg(long, allow_hyphen_values = true)]
    curve: String,
    #[command(flatten)]
    params: ParamOpts,
}

#[derive(Args)]
struct ParamOpts {
    /// Pitch.
    #[arg(long, value_parser = rational, default_value = "1", allow_hyphen_values = true)]
    h: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    r: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    lambda: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    mu: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    c: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    theta: Option<Rational>,
}

impl ParamOpts {
    fn surface(self, axis: AxisKind, curve: String) -> SurfaceArgs {
        let params = CurveParams { r: self.r, lambda: self.lambda, mu: self.mu, c: self.c, theta: self.theta };
        SurfaceArgs { axis, curve, h: self.h, params }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatOpt {
    Text,
    Json,
}

impl From<FormatOpt> for Format {
    fn from(f: FormatOpt) -> Self {
        match f {
            FormatOpt::Text => Format::Text,
            FormatOpt::Json => Format::Json,
        }
    }
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn floats<const N: usize>(s: &str) -> Result<[f64; N], String> {
    parse_floats::<N>(s).map_err(|e| e.to_string())
}

fn axis(s: &str) -> Result<AxisKind, String> {
    s.parse::<AxisKind>().map_err(|e| e.to_string())
}

fn theorem(s: &str) -> Result<Theorem, String> {
    s.parse::<Theorem>().map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (outcome, output): (Outcome, Option<PathBuf>) = match cli.command {
        Command::Curvature { surface, samples, format, output } => {
            let surface = surface.params.surface(surface.axis, surface.curve);
            (commands::curvature(&CurvatureArgs { surface, samples, format: format.into() })?, output)
        }
        Command::Verify { theorem, max_degree, format, output } => {
            (commands::verify_theorem(theorem, max_degree, format.into())?, output)
        }
        Command::Catalog { output } => (commands::catalog(), output),
        Command::Orbit { axis, point, h, steps, t_range, output } => {
            (commands::orbit(&OrbitArgs { axis, point, h, steps, t_range })?, output)
        }
        Command::Mesh { surface, axis, curve, params, n, s_range, t_range, output } => {
            let source = match (surface, axis, curve) {
                (Some(id), _, _) => MeshSource::Catalog(id),
                (None, Some(axis), Some(curve)) => MeshSource::Surface(params.surface(axis, curve)),
                _ => return Err(CliError::Invalid("mesh needs --surface or both --axis and --curve".into())),
            };
            (commands::mesh(&MeshArgs { source, n, s_range, t_range })?, output)
        }
    };
    emit(output.as_deref(), &outcome.text)?;
    match outcome.failure {
        Some(f) => Err(CliError::Failed(f)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
