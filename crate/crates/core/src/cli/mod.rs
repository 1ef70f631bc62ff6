//! The `hyperjulia` command line.
//!
//! Exit codes: 0 success, 1 a `verify-paper` check failed, 2 bad input,
//! 3 no square-inequality constant and `--uncertified` not given.

mod source;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{Element, StructureConstants};
use crate::analysis::{classify_with_budget, eta_certificate, EtaOutcome, DEFAULT_ETA_BUDGET};
use crate::dynamics::{
    classify_orbit, escape_radius, format_trace_line, orbit_trace, DynamicsError, EscapeRadius,
    OrbitKind, Threshold, UNCERTIFIED_BAILOUT,
};
use crate::raster::{
    render_metadata, render_with_workers, write_meta, write_pgm, RasterJob, RenderMode, SliceSpec,
    Window,
};

pub use source::{parse_coords, parse_resolution, resolve_algebra};
pub use verify::{run_checks, verify_paper, CheckResult, VerifyHooks};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNCERTIFIED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "hyperjulia",
    version,
    about = "Quadratic dynamics over real nonassociative algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the product bound, square-inequality constant and 2-D structure
    Analyze(AnalyzeArgs),
    /// Render a filled Julia or Mandelbrot set to a PGM image
    Render(RenderArgs),
    /// Print the orbit of one point
    Orbit(OrbitArgs),
    /// Re-run the built-in checklist of worked examples
    VerifyPaper,
}

#[derive(Args, Debug)]
struct AlgebraArg {
    /// `builtin:complex|perplex|dual|cd:<n>|table2:<family>:<values>` or a file path
    #[arg(long)]
    algebra: String,
    /// Unit-sphere samples for eta when no closed form applies
    #[arg(long, default_value_t = DEFAULT_ETA_BUDGET)]
    eta_budget: u64,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: AlgebraArg,
    /// Only print the `key = value` block
    #[arg(long)]
    kv: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Mandelbrot,
    Julia,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(value_enum)]
    mode: ModeArg,
    #[command(flatten)]
    source: AlgebraArg,
    /// `xmin,xmax,ymin,ymax`
    #[arg(long, allow_hyphen_values = true)]
    window: String,
    /// `WxH`
    #[arg(long)]
    res: String,
    #[arg(long, default_value_t = 100)]
    max_iter: usize,
    /// Julia parameter `a1,…,am`
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Slice origin (required with the axes for dimension > 2)
    #[arg(long, allow_hyphen_values = true)]
    origin: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    axis1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    axis2: Option<String>,
    #[arg(long)]
    out: PathBuf,
    /// Render with a heuristic bailout when eta is unavailable
    #[arg(long)]
    uncertified: bool,
    /// Worker threads, 0 for one per core
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

#[derive(Args, Debug)]
struct OrbitArgs {
    #[command(flatten)]
    source: AlgebraArg,
    #[arg(long, allow_hyphen_values = true)]
    c: String,
    /// Starting point, zero if omitted
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    /// Number of iterates to print
    #[arg(long, default_value_t = 20)]
    steps: usize,
    /// Classify with the parameter-plane threshold 2/eta (the start is 0)
    #[arg(long)]
    mandelbrot: bool,
}

struct Failure {
    code: i32,
    message: String,
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: e.to_string(),
    }
}

fn element(sc: &StructureConstants, flag: &str, text: &str) -> Result<Element, Failure> {
    let v = parse_coords(text).map_err(|e| input(format!("--{flag}: {e}")))?;
    if v.len() != sc.dim() {
        return Err(input(format!(
            "--{flag} has {} coordinates, the algebra has dimension {}",
            v.len(),
            sc.dim()
        )));
    }
    Ok(Element::new(v))
}

/// Runs the command line `args` (including the program name), writing
/// normal output to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze(a) => analyze(a, out),
        Command::Render(a) => render_cmd(a, out),
        Command::Orbit(a) => orbit(a, out),
        Command::VerifyPaper => match verify_paper(VerifyHooks::default(), out) {
            Ok(true) => Ok(()),
            Ok(false) => Err(Failure {
                code: EXIT_VERIFY_FAILED,
                message: "verification failed".into(),
            }),
            Err(e) => Err(input(e)),
        },
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn analyze(a: AnalyzeArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let sc = resolve_algebra(&a.source.algebra).map_err(input)?;
    let report = classify_with_budget(&sc, a.source.eta_budget);
    let text = if a.kv {
        report.to_key_values()
    } else {
        format!("{report}\n{}", report.to_key_values())
    };
    out.write_all(text.as_bytes()).map_err(input)
}

fn render_cmd(a: RenderArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let sc = resolve_algebra(&a.source.algebra).map_err(input)?;
    let window: Window = a
        .window
        .parse()
        .map_err(|e| input(format!("--window: {e}")))?;
    let (width, height) = parse_resolution(&a.res).map_err(|e| input(format!("--res: {e}")))?;
    let mode = match (a.mode, &a.c) {
        (ModeArg::Julia, Some(c)) => RenderMode::Julia {
            c: element(&sc, "c", c)?,
        },
        (ModeArg::Julia, None) => return Err(input("julia rendering needs --c")),
        (ModeArg::Mandelbrot, Some(_)) => {
            return Err(input("--c is only used for julia rendering"))
        }
        (ModeArg::Mandelbrot, None) => RenderMode::Mandelbrot,
    };
    let slice = match (&a.origin, &a.axis1, &a.axis2) {
        (Some(o), Some(x), Some(y)) => SliceSpec::new(
            element(&sc, "origin", o)?,
            element(&sc, "axis1", x)?,
            element(&sc, "axis2", y)?,
        )
        .map_err(input)?,
        (None, None, None) if sc.dim() == 2 => SliceSpec::identity(2),
        (None, None, None) => {
            return Err(input(format!(
                "dimension {} needs --origin, --axis1 and --axis2",
                sc.dim()
            )))
        }
        _ => return Err(input("--origin, --axis1 and --axis2 go together")),
    };

    let mut job = RasterJob::new(sc, mode, window, width, height, a.max_iter).with_slice(slice);
    match eta_certificate(&job.algebra, a.source.eta_budget) {
        EtaOutcome::Bound(cert) if cert.is_certified() => job = job.with_eta(cert),
        outcome => {
            if !a.uncertified {
                let why = match outcome {
                    EtaOutcome::NoSquareInequality { witness } => format!("{witness}² = 0"),
                    EtaOutcome::Bound(c) => format!(
                        "only an uncertified estimate {} is available",
                        c.sampled_min
                    ),
                };
                return Err(Failure {
                    code: EXIT_UNCERTIFIED,
                    message: format!("no square-inequality constant ({why}); pass --uncertified to render anyway"),
                });
            }
            job = job.with_uncertified_bailout(UNCERTIFIED_BAILOUT);
        }
    }
    let radius = job.escape_radius().map_err(input)?;
    let grid = render_with_workers(&job, a.workers).map_err(input)?;
    write_pgm(&grid, &a.out).map_err(input)?;
    let meta = write_meta(&a.out, &render_metadata(&job, &radius, &grid)).map_err(input)?;
    let lambda = match job.mode {
        RenderMode::Julia { .. } => radius.lambda,
        RenderMode::Mandelbrot => radius.mandelbrot_threshold,
    };
    writeln!(out, "lambda = {lambda:?}").map_err(input)?;
    writeln!(out, "certified = {}", radius.certified).map_err(input)?;
    writeln!(out, "bounded_pixels = {}", grid.bounded_count()).map_err(input)?;
    writeln!(out, "image = {}", a.out.display()).map_err(input)?;
    writeln!(out, "meta = {}", meta.display()).map_err(input)
}

fn orbit(a: OrbitArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let sc = resolve_algebra(&a.source.algebra).map_err(input)?;
    let c = element(&sc, "c", &a.c)?;
    let u = match (&a.u, a.mandelbrot) {
        (Some(_), true) => return Err(input("--u is not used with --mandelbrot")),
        (Some(u), false) => element(&sc, "u", u)?,
        (None, _) => Element::zero(sc.dim()),
    };
    if a.steps == 0 {
        return Err(input("--steps must be at least 1"));
    }
    let (trace, overflow) = match orbit_trace(&sc, &c, &u, a.steps) {
        Ok(t) => (t, None),
        Err(DynamicsError::OverflowAt { k, trace }) => (trace, Some(k)),
        Err(e) => return Err(input(e)),
    };
    for (k, x) in trace.iter().enumerate() {
        writeln!(out, "{}", format_trace_line(k + 1, x)).map_err(input)?;
    }
    if let Some(k) = overflow {
        writeln!(out, "overflow at n= {k}").map_err(input)?;
    }

    let radius = match eta_certificate(&sc, a.source.eta_budget) {
        EtaOutcome::Bound(cert) if cert.is_certified() => {
            escape_radius(&cert, &c).map_err(input)?
        }
        _ => EscapeRadius::uncertified(UNCERTIFIED_BAILOUT),
    };
    let threshold = if a.mandelbrot {
        Threshold::Mandelbrot
    } else {
        Threshold::Julia
    };
    let outcome = classify_orbit(&sc, &c, &u, &radius, a.steps, threshold).map_err(input)?;
    writeln!(out, "threshold = {:?}", outcome.lambda_used).map_err(input)?;
    writeln!(out, "certified = {}", outcome.certified).map_err(input)?;
    let verdict = match outcome.kind {
        OrbitKind::Escaped { n, norm_at_escape } => {
            format!("escaped at n= {n} with norm {norm_at_escape:?}")
        }
        OrbitKind::BoundedUpTo { max_iter, max_norm } => {
            format!("no escape within {max_iter} steps, max norm {max_norm:?}")
        }
        OrbitKind::DegenerateFixed => "constant at c (u² = 0 and c² = 0)".into(),
    };
    writeln!(out, "outcome = {verdict}").map_err(input)
}
