//! Fixed checklist behind `verify-paper`: every worked example and
//! per-family statement of the theory, re-run numerically.
//!
//! Output is deterministic: the same build always prints the same lines.

use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{cayley_dickson, Element, StructureConstants, Table2D, TableFamily};
use crate::analysis::{
    canonicalize, eta_certificate, eta_closed_form_2d, eta_sampled, find_nilpotents_2d,
    square_inequality_hypothesis, square_property_check, AnalysisError, EtaOutcome,
    DEFAULT_ETA_BUDGET,
};
use crate::dynamics::{
    classify_orbit, escape_radius, orbit_trace, DynamicsError, EscapeRadius, Threshold,
};
use crate::raster::{render, RasterJob, RenderMode, Window};

/// Replaceable pieces of the computation, so tests can check that the
/// harness notices a wrong constant.
#[derive(Clone, Copy)]
pub struct VerifyHooks {
    pub weak_submul: fn(&StructureConstants) -> f64,
}

impl Default for VerifyHooks {
    fn default() -> Self {
        Self {
            weak_submul: |sc| sc.weak_submul_constant().value,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

struct Checklist {
    results: Vec<CheckResult>,
}

impl Checklist {
    fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.results.push(CheckResult {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

fn el(v: &[f64]) -> Element {
    Element::new(v.to_vec())
}

fn ball_point(rng: &mut ChaCha8Rng, dim: usize, radius: f64) -> Element {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 <= 1.0 && n2 > 0.0 {
            return Element::new(v.into_iter().map(|x| x * radius).collect());
        }
    }
}

fn closed_eta(t: &Table2D) -> f64 {
    eta_closed_form_2d(t).expect("idempotent family").eta()
}

pub fn run_checks(hooks: VerifyHooks) -> Vec<CheckResult> {
    let mut list = Checklist {
        results: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let complex = Table2D::complex().to_structure_constants();
    let perplex = Table2D::perplex().to_structure_constants();
    let dual = Table2D::dual().to_structure_constants();
    let quaternion = cayley_dickson(2).expect("level 2");

    // product bound constants
    let builtins = [
        ("complex", &complex, 2.0),
        ("perplex", &perplex, 2.0),
        ("dual", &dual, 3f64.sqrt()),
        ("cd:2", &quaternion, 4.0),
    ];
    for (name, sc, want) in builtins {
        let m = (hooks.weak_submul)(sc);
        list.record(
            format!("product bound M({name}) = {want:.12}"),
            (m - want).abs() <= 1e-12,
            format!("computed {m:?}"),
        );
    }
    for (name, sc, _) in builtins {
        let m = (hooks.weak_submul)(sc);
        let mut worst: f64 = 0.0;
        for _ in 0..10_000 {
            let u = ball_point(&mut rng, sc.dim(), 10.0);
            let v = ball_point(&mut rng, sc.dim(), 10.0);
            let lhs = sc.mul(&u, &v).expect("same dimension").norm();
            worst = worst.max(lhs / (u.norm() * v.norm()));
        }
        list.record(
            format!("product bound |uv| <= M|u||v| on 10000 pairs in {name}"),
            worst <= m * (1.0 + 1e-12),
            format!("max ratio {worst:?}, M = {m:?}"),
        );
    }

    // square property of the doubling tower
    for level in 1..=4 {
        let v = square_property_check(&cayley_dickson(level).expect("level"), 1000);
        list.record(
            format!("square property of cd:{level}"),
            v.holds,
            format!("max defect {:e}", v.max_defect),
        );
    }

    // closed-form eta values
    for (name, t, want) in [
        ("complex", Table2D::complex(), 1.0),
        ("perplex", Table2D::perplex(), 1.0),
        (
            "table VI with A = B = 0",
            Table2D::with_sums(TableFamily::TwoIdempotents, 0.0, 0.0, 0.0, 0.0),
            0.5f64.sqrt(),
        ),
    ] {
        let eta = closed_eta(&t);
        list.record(
            format!("eta({name}) = {want:.12}"),
            (eta - want).abs() <= 1e-9,
            format!("computed {eta:?}"),
        );
        let s = eta_sampled(&t.to_structure_constants(), DEFAULT_ETA_BUDGET);
        let slack = s.lipschitz_bound * s.covering_radius;
        list.record(
            format!("sampled eta bound for {name} within 2M*delta of closed form"),
            s.eta <= eta + 1e-12 && eta - s.eta <= slack + 1e-12,
            format!("certified {:?}, closed {eta:?}, slack {slack:?}", s.eta),
        );
    }

    // per-family hypotheses: eta > 0 exactly when no nilpotent exists,
    // exactly when the hypothesis holds
    let grid: Vec<f64> = (0..=12).map(|i| -3.0 + 0.5 * i as f64).collect();
    for family in [
        TableFamily::MinusUnit,
        TableFamily::PlusUnit,
        TableFamily::TwoIdempotents,
    ] {
        let mut mismatches = Vec::new();
        for &a in &grid {
            for &b in &grid {
                let t = Table2D::with_sums(family, a, b, 0.0, 0.0);
                let positive = closed_eta(&t) > 0.0;
                let free = find_nilpotents_2d(&t)
                    .expect("idempotent family")
                    .is_empty();
                let hyp = square_inequality_hypothesis(&t).expect("decided family");
                if positive != free || positive != hyp {
                    mismatches.push(format!("(A={a}, B={b})"));
                }
            }
        }
        list.record(
            format!("table {family}: eta > 0 iff nilpotent-free iff hypothesis, 13x13 grid"),
            mismatches.is_empty(),
            mismatches.join(" "),
        );
    }
    {
        let mut bad = Vec::new();
        for (a, a22, b22) in [
            (0.0, 1.0, 1.0),
            (1.5, -2.0, 0.5),
            (-3.0, 0.0, -1.0),
            (2.0, 0.75, 1.0),
        ] {
            let t = Table2D::with_sums(TableFamily::SingleIdempotent, a, 0.0, a22, b22);
            let positive = closed_eta(&t) > 0.0;
            let free = find_nilpotents_2d(&t)
                .expect("idempotent family")
                .is_empty();
            if !(positive && free && square_inequality_hypothesis(&t) == Some(true)) {
                bad.push(format!("(A={a}, a22={a22}, b22={b22})"));
            }
        }
        list.record(
            "table II with b22 != 0 and B = 0: eta > 0 and nilpotent-free",
            bad.is_empty(),
            bad.join(" "),
        );
    }
    for (a, b) in [(0.0, 2.0), (1.0, -1.0), (-2.5, 0.0)] {
        let t = Table2D::with_sums(TableFamily::Nilpotent, a, b, 0.0, 0.0);
        list.record(
            format!("table V (A={a}, B={b}): no square inequality"),
            matches!(
                eta_closed_form_2d(&t),
                Ok(EtaOutcome::NoSquareInequality { .. })
            ),
            "",
        );
    }

    // nilpotent elements and their constant orbits
    let degenerate = [
        (
            "table III, A = B = 0",
            Table2D::with_sums(TableFamily::MinusUnit, 0.0, 0.0, 0.0, 0.0),
            [1.0, 1.0],
        ),
        (
            "table IV, A = 2, B = 0",
            Table2D::with_sums(TableFamily::PlusUnit, 2.0, 0.0, 0.0, 0.0),
            [-1.0, 1.0],
        ),
        (
            "table II, A = B = 2, a22 = 3/4, b22 = 1",
            Table2D::with_sums(TableFamily::SingleIdempotent, 2.0, 2.0, 0.75, 1.0),
            [1.0, -2.0],
        ),
        ("table V (dual numbers)", Table2D::dual(), [0.0, 1.0]),
        (
            "table VI, A = B = 1",
            Table2D::with_sums(TableFamily::TwoIdempotents, 1.0, 1.0, 0.0, 0.0),
            [1.0, -1.0],
        ),
    ];
    for (name, t, d) in degenerate {
        let sc = t.to_structure_constants();
        let u = el(&d);
        let sq = sc.square(&u).expect("dim 2").norm();
        let found = find_nilpotents_2d(&t)
            .expect("idempotent family")
            .iter()
            .any(|n| {
                (n.direction[0] * d[1] - n.direction[1] * d[0]).abs()
                    <= 1e-12 * n.direction.norm() * u.norm()
            });
        list.record(
            format!("{name}: u = {u} has u^2 = 0 and is found by the nilpotent solver"),
            sq <= 1e-12 && found,
            format!("|u^2| = {sq:e}, solver found it: {found}"),
        );
        let c = u.scale(1.5);
        let trace = orbit_trace(&sc, &c, &u, 50).expect("finite orbit");
        list.record(
            format!("{name}: f_c^n(u) = c for n <= 50 with c = {c}"),
            trace.iter().all(|x| *x == c),
            "",
        );
    }

    // empty filled Julia sets
    let empty = [
        ("perplex, c = (1.5, 0.3)", Table2D::perplex(), [1.5, 0.3]),
        (
            "table VI A = B = 0, c = (1.5, 0.5)",
            Table2D::with_sums(TableFamily::TwoIdempotents, 0.0, 0.0, 0.0, 0.0),
            [1.5, 0.5],
        ),
    ];
    for (name, t, c) in empty {
        let sc = t.to_structure_constants();
        let cert = eta_closed_form_2d(&t).expect("idempotent family");
        let cert = cert.certificate().expect("square inequality").clone();
        let c = el(&c);
        let radius = escape_radius(&cert, &c).expect("certified");
        let stayed = (0..10_000)
            .filter(|_| {
                let u = ball_point(&mut rng, 2, 10.0);
                let out =
                    classify_orbit(&sc, &c, &u, &radius, 60, Threshold::Julia).expect("dim 2");
                !out.escaped()
            })
            .count();
        list.record(
            format!("{name}: 10000 starts with |u| <= 10 escape within 60 steps"),
            stayed == 0,
            format!("{stayed} did not escape"),
        );
        let job = RasterJob::new(
            sc,
            RenderMode::Julia { c },
            Window::new(-2.0, 2.0, -2.0, 2.0).expect("window"),
            64,
            64,
            100,
        )
        .with_eta(cert);
        let bounded = render(&job).map(|g| g.bounded_count());
        list.record(
            format!("{name}: 64x64 Julia raster has no bounded pixel"),
            matches!(bounded, Ok(0)),
            format!("{bounded:?}"),
        );
    }

    // escape certificates
    let one = eta_certificate(&complex, DEFAULT_ETA_BUDGET);
    let one = one.certificate().expect("complex eta").clone();
    for (name, sc) in [("complex", &complex), ("perplex", &perplex)] {
        let mut bad = 0;
        for _ in 0..500 {
            let c = ball_point(&mut rng, 2, 2.0);
            let radius = escape_radius(&one, &c).expect("certified");
            let dir = ball_point(&mut rng, 2, 1.0);
            let u = dir.scale(radius.lambda * (1.0 + 1e-6 + rng.gen::<f64>()) / dir.norm());
            let out = classify_orbit(sc, &c, &u, &radius, 100, Threshold::Julia).expect("dim 2");
            // beyond overflow only the finite prefix can be compared
            let trace = match orbit_trace(sc, &c, &u, 21) {
                Ok(t) => t,
                Err(DynamicsError::OverflowAt { trace, .. }) => trace,
                Err(e) => panic!("{e}"),
            };
            let growing = trace.windows(2).all(|w| w[1].norm() > w[0].norm());
            if out.escape_index().is_none_or(|n| n > 1) || !growing {
                bad += 1;
            }
        }
        list.record(
            format!("{name}: |u| > lambda escapes at n <= 1 and the norm grows for 20 steps"),
            bad == 0,
            format!("{bad} of 500 failed"),
        );
    }
    {
        let mut bad = 0;
        for _ in 0..1000 {
            let dir = ball_point(&mut rng, 2, 1.0);
            let c = dir.scale((2.0 + 1e-9 + 3.0 * rng.gen::<f64>()) / dir.norm());
            let radius = escape_radius(&one, &c).expect("certified");
            let out = classify_orbit(
                &complex,
                &c,
                &Element::zero(2),
                &radius,
                100,
                Threshold::Mandelbrot,
            )
            .expect("dim 2");
            if !out.escaped() {
                bad += 1;
            }
        }
        list.record(
            "complex: |c| > 2/eta leaves the Mandelbrot set",
            bad == 0,
            format!("{bad} stayed"),
        );
    }
    for (c, want) in [
        ([1.0, 0.0], Some(3)),
        ([-1.0, 0.0], None),
        ([-2.0, 0.0], None),
    ] {
        let c = el(&c);
        let radius = escape_radius(&one, &c).expect("certified");
        let out = classify_orbit(
            &complex,
            &c,
            &Element::zero(2),
            &radius,
            1000,
            Threshold::Mandelbrot,
        )
        .expect("dim 2");
        list.record(
            format!("complex Mandelbrot orbit of c = {c}: escape index {want:?}"),
            out.escape_index() == want,
            format!("got {:?}", out.kind),
        );
    }

    // boundedness of the rendered sets
    {
        let window = Window::new(-2.0, 1.0, -1.5, 1.5).expect("window");
        let job = RasterJob::new(complex.clone(), RenderMode::Mandelbrot, window, 64, 64, 100)
            .with_eta(one.clone());
        let grid = render(&job).expect("certified");
        let mut worst: f64 = 0.0;
        for py in 0..64 {
            for px in 0..64 {
                if !grid.get(px, py).escaped {
                    worst = worst.max(
                        crate::raster::pixel_to_element(&job, px, py)
                            .expect("in range")
                            .norm(),
                    );
                }
            }
        }
        list.record(
            "complex Mandelbrot raster: bounded pixels have |c| <= 2",
            worst <= 2.0 + 1e-9,
            format!("max |c| = {worst:?}"),
        );

        let c = el(&[-1.0, 0.0]);
        let radius: EscapeRadius = escape_radius(&one, &c).expect("certified");
        let window = Window::new(-2.0, 2.0, -2.0, 2.0).expect("window");
        let job = RasterJob::new(
            complex.clone(),
            RenderMode::Julia { c },
            window,
            64,
            64,
            100,
        )
        .with_eta(one.clone());
        let grid = render(&job).expect("certified");
        let mut worst: f64 = 0.0;
        for py in 0..64 {
            for px in 0..64 {
                if !grid.get(px, py).escaped {
                    worst = worst.max(
                        crate::raster::pixel_to_element(&job, px, py)
                            .expect("in range")
                            .norm(),
                    );
                }
            }
        }
        list.record(
            "complex Julia raster, c = (-1, 0): bounded pixels have |u| <= lambda + pixel diagonal",
            worst <= radius.lambda + job.pixel_diagonal(),
            format!("max |u| = {worst:?}, lambda = {:?}", radius.lambda),
        );
    }

    // normal forms of table II
    {
        let t = Table2D::new(TableFamily::SingleIdempotent, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0);
        let ok = canonicalize(&t).ok().and_then(|c| {
            let sq = t.to_structure_constants().square(&c.f2()).ok()?;
            Some((sq.distance(&el(&[1.0, 0.0])), c.table.family()))
        });
        list.record(
            "table II (A = B = 1, a22 = b22 = 1): f2 = e1 - e2 with f2^2 = e1",
            matches!(ok, Some((d, TableFamily::PlusUnit)) if d <= 1e-12),
            format!("{ok:?}"),
        );
        let t = Table2D::new(TableFamily::SingleIdempotent, 0.0, 0.0, 0.0, 0.0, -4.0, 0.0);
        let ok = canonicalize(&t).ok().and_then(|c| {
            let sq = t.to_structure_constants().square(&c.f2()).ok()?;
            Some((sq.distance(&el(&[-1.0, 0.0])), c.table.family()))
        });
        list.record(
            "table II (b22 = 0, a22 = -4): f2 = e2/2 with f2^2 = -e1",
            matches!(ok, Some((d, TableFamily::MinusUnit)) if d <= 1e-12),
            format!("{ok:?}"),
        );
        let t = Table2D::with_sums(TableFamily::SingleIdempotent, 2.0, 2.0, 0.75, 1.0);
        let r = canonicalize(&t);
        list.record(
            "table II (A = B = 2, a22 = 3/4, b22 = 1): not normalizable",
            matches!(r, Err(AnalysisError::NotNormalizable { .. })),
            format!("{r:?}"),
        );
    }

    list.results
}

/// Prints one line per check and a summary; returns whether all passed.
pub fn verify_paper(hooks: VerifyHooks, out: &mut dyn Write) -> io::Result<bool> {
    let results = run_checks(hooks);
    for r in &results {
        if r.passed {
            writeln!(out, "PASS  {}", r.name)?;
        } else {
            writeln!(out, "FAIL  {}  [{}]", r.name, r.detail)?;
        }
    }
    let failed: Vec<&CheckResult> = results.iter().filter(|r| !r.passed).collect();
    writeln!(
        out,
        "{} of {} checks passed",
        results.len() - failed.len(),
        results.len()
    )?;
    if !failed.is_empty() {
        writeln!(out, "failed checks:")?;
        for r in &failed {
            writeln!(out, "  {}", r.name)?;
        }
    }
    Ok(failed.is_empty())
}
