//! Exit criteria, one `[PASS]`/`[FAIL]` line each. Exits nonzero if any fail.

use std::process::ExitCode;

use hyperjulia::algebra::{cayley_dickson, Element, StructureConstants, Table2D, TableFamily};
use hyperjulia::analysis::{
    canonicalize, eta_closed_form_2d, eta_sampled, find_nilpotents_2d, AnalysisError,
    EtaCertificate, DEFAULT_ETA_BUDGET,
};
use hyperjulia::cli;
use hyperjulia::dynamics::{classify_orbit, escape_radius, orbit_trace, DynamicsError, Threshold};
use hyperjulia::raster::{
    pixel_to_element, render_with_workers, EscapeGrid, RasterJob, RenderMode, Window,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

struct Outcome {
    passed: bool,
    details: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            passed: true,
            details: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn note(&mut self, what: String) {
        self.notes.push(what);
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.passed = false;
            self.details.push(what.into());
        }
    }
}

fn el(v: &[f64]) -> Element {
    Element::new(v.to_vec())
}

fn gaussian(rng: &mut ChaCha8Rng, dim: usize) -> Element {
    let scale = 10f64.powf(rng.gen_range(-3.0..3.0));
    Element::new(
        (0..dim)
            .map(|_| scale * rng.sample::<f64, _>(StandardNormal))
            .collect(),
    )
}

fn ball(rng: &mut ChaCha8Rng, dim: usize, radius: f64) -> Element {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-radius..radius)).collect();
        if v.iter().map(|x| x * x).sum::<f64>() <= radius * radius {
            return Element::new(v);
        }
    }
}

fn unit(rng: &mut ChaCha8Rng, dim: usize) -> Element {
    loop {
        let v: Vec<f64> = (0..dim)
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            return Element::new(v.into_iter().map(|x| x / n).collect());
        }
    }
}

fn certificate(t: &Table2D) -> EtaCertificate {
    eta_closed_form_2d(t)
        .expect("idempotent family")
        .certificate()
        .expect("square inequality")
        .clone()
}

/// `min ‖u²‖` over the unit circle by dense angle sampling, for 2-D tables.
fn circle_min_oracle(t: &Table2D) -> f64 {
    let (e1, e2, e12, e21) = (t.cell(1, 1), t.cell(2, 2), t.cell(1, 2), t.cell(2, 1));
    let n = 2_000_000;
    (0..n)
        .map(|i| {
            let th = std::f64::consts::PI * i as f64 / n as f64;
            let (a, b) = (th.cos(), th.sin());
            let x = a * a * e1.0 + b * b * e2.0 + a * b * (e12.0 + e21.0);
            let y = a * a * e1.1 + b * b * e2.1 + a * b * (e12.1 + e21.1);
            x.hypot(y)
        })
        .fold(f64::INFINITY, f64::min)
}

fn builtins() -> Vec<(String, StructureConstants)> {
    let mut v = vec![
        (
            "complex".to_string(),
            Table2D::complex().to_structure_constants(),
        ),
        (
            "perplex".to_string(),
            Table2D::perplex().to_structure_constants(),
        ),
        ("dual".to_string(), Table2D::dual().to_structure_constants()),
    ];
    for level in 1..=4 {
        v.push((format!("cd:{level}"), cayley_dickson(level).unwrap()));
    }
    v
}

fn product_bound() -> Outcome {
    let mut out = Outcome::new();
    // every structure constant of these tables is 0 or ±1, so M² counts the
    // nonzero basis-product coefficients
    let expected = [
        (
            "complex",
            Table2D::complex().to_structure_constants(),
            4.0f64.sqrt(),
        ),
        (
            "dual",
            Table2D::dual().to_structure_constants(),
            3.0f64.sqrt(),
        ),
        ("quaternion", cayley_dickson(2).unwrap(), 16.0f64.sqrt()),
    ];
    for (name, sc, want) in expected {
        let got = sc.weak_submul_constant().value;
        out.check(
            (got - want).abs() <= 1e-12,
            format!("M({name}) = {got}, expected {want}"),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (name, sc) in builtins() {
        let m = sc.weak_submul_constant().value;
        let mut worst: f64 = 0.0;
        for _ in 0..10_000 {
            let u = gaussian(&mut rng, sc.dim());
            let v = gaussian(&mut rng, sc.dim());
            let uv = sc.mul(&u, &v).unwrap().norm();
            worst = worst.max(uv / (m * u.norm() * v.norm()));
        }
        out.check(
            worst <= 1.0 + 1e-12,
            format!("{name}: max |uv|/(M|u||v|) = {worst}"),
        );
    }
    out
}

fn square_property() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for level in 1..=4 {
        let sc = cayley_dickson(level).unwrap();
        for _ in 0..1000 {
            let u = gaussian(&mut rng, sc.dim());
            let n2 = u.norm_sq();
            let defect = (sc.square(&u).unwrap().norm() - n2).abs();
            if defect > 1e-9 * (1.0 + n2) {
                out.check(
                    false,
                    format!("CD({level}): defect {defect:e} at |u|^2 = {n2:e}"),
                );
                break;
            }
        }
    }
    out
}

fn eta_values() -> Outcome {
    let mut out = Outcome::new();
    let cases = [
        ("complex", Table2D::complex(), 1.0),
        ("perplex", Table2D::perplex(), 1.0),
        (
            "table VI, A = B = 0",
            Table2D::with_sums(TableFamily::TwoIdempotents, 0.0, 0.0, 0.0, 0.0),
            1.0,
        ),
    ];
    for (name, t, want) in cases {
        let eta = certificate(&t).eta;
        let oracle = circle_min_oracle(&t);
        out.check(
            (eta - want).abs() <= 1e-9,
            format!("eta({name}) = {eta:.12}, expected {want} (angle-sampling oracle gives {oracle:.12})"),
        );
        let sc = t.to_structure_constants();
        let sampled = eta_sampled(&sc, DEFAULT_ETA_BUDGET);
        let slack = sampled.lipschitz_bound * sampled.covering_radius;
        let gap = sampled.sampled_min - eta;
        out.check(
            (-1e-12..=slack).contains(&gap),
            format!(
                "{name}: sampled minimum {} vs closed form {eta}, allowed gap {slack:e}",
                sampled.sampled_min
            ),
        );
        out.check(
            sampled.eta <= eta + 1e-12,
            format!(
                "{name}: certified sampled bound {} exceeds {eta}",
                sampled.eta
            ),
        );
    }
    out
}

fn dichotomy() -> Outcome {
    let mut out = Outcome::new();
    type Hypothesis = fn(f64, f64) -> bool;
    let families: [(TableFamily, Hypothesis); 3] = [
        (TableFamily::MinusUnit, |_, b| b != 0.0),
        (TableFamily::PlusUnit, |a, b| a.abs() < 2.0 || b != 0.0),
        (TableFamily::TwoIdempotents, |a, b| a * b != 1.0),
    ];
    for (family, hypothesis) in families {
        let mut mismatches = 0;
        for i in 0..21 {
            for j in 0..21 {
                let a = (i as f64 - 10.0) * 0.3;
                let b = (j as f64 - 10.0) * 0.3;
                let t = Table2D::with_sums(family, a, b, 0.0, 0.0);
                let positive = eta_closed_form_2d(&t).unwrap().eta() > 0.0;
                let free = find_nilpotents_2d(&t).unwrap().is_empty();
                let hyp = hypothesis(a, b);
                if positive != free || free != hyp {
                    mismatches += 1;
                    if mismatches <= 3 {
                        out.check(
                            false,
                            format!("table {family} A = {a} B = {b}: eta > 0 {positive}, no nilpotent {free}, hypothesis {hyp}"),
                        );
                    }
                }
            }
        }
        out.check(
            mismatches == 0,
            format!("table {family}: {mismatches} mismatches"),
        );
    }
    out
}

fn degenerate_orbits() -> Outcome {
    let mut out = Outcome::new();
    // (table, u(s), c(s)) with u and c on the same nilpotent line; every
    // input is dyadic so u² vanishes exactly
    let mut cases: Vec<(String, Table2D, Box<dyn Fn(f64) -> [f64; 2]>)> = Vec::new();
    for a in [0.0, 1.5, -1.5] {
        // III, B = 0: ((−A s ± √((A²+4)s²))/2, s)
        let r = (a * a + 4.0f64).sqrt();
        for sign in [1.0, -1.0] {
            cases.push((
                format!("table III A = {a} B = 0, root {sign:+}"),
                Table2D::with_sums(TableFamily::MinusUnit, a, 0.0, 0.0, 0.0),
                Box::new(move |s: f64| [(-a * s + sign * r * s.abs()) / 2.0, s]),
            ));
        }
    }
    for a in [2.0, -2.0, 2.5, -2.5] {
        // IV, |A| ≥ 2, B = 0: ((−A s ± √((A²−4)s²))/2, s)
        let r = (a * a - 4.0f64).sqrt();
        for sign in [1.0, -1.0] {
            cases.push((
                format!("table IV A = {a} B = 0, root {sign:+}"),
                Table2D::with_sums(TableFamily::PlusUnit, a, 0.0, 0.0, 0.0),
                Box::new(move |s: f64| [(-a * s + sign * r * s.abs()) / 2.0, s]),
            ));
        }
    }
    cases.push((
        "table II A = B = 2, a22 = 3/4, b22 = 1".into(),
        Table2D::with_sums(TableFamily::SingleIdempotent, 2.0, 2.0, 0.75, 1.0),
        Box::new(|s: f64| [s, -2.0 * s]),
    ));
    for (a, b) in [(0.0, 2.0), (1.0, -3.0), (0.5, 0.25)] {
        cases.push((
            format!("table V A = {a} B = {b}"),
            Table2D::with_sums(TableFamily::Nilpotent, a, b, 0.0, 0.0),
            Box::new(|s: f64| [0.0, s]),
        ));
    }
    for (a, b) in [(1.0, 1.0), (2.0, 0.5), (-4.0, -0.25)] {
        cases.push((
            format!("table VI A = {a} B = {b}"),
            Table2D::with_sums(TableFamily::TwoIdempotents, a, b, 0.0, 0.0),
            Box::new(move |s: f64| [s, -b * s]),
        ));
    }
    for (name, t, line) in cases {
        let sc = t.to_structure_constants();
        for (su, sc_) in [(1.0, 1.0), (-2.0, 0.5), (0.75, -3.0)] {
            let u = el(&line(su));
            let c = el(&line(sc_));
            let sq = sc.square(&u).unwrap().norm();
            out.check(sq <= 1e-12, format!("{name}: |u^2| = {sq:e} for u = {u}"));
            let trace = orbit_trace(&sc, &c, &u, 50).unwrap();
            out.check(
                trace.iter().all(|x| *x == c),
                format!("{name}: orbit of {u} leaves c = {c}"),
            );
        }
    }
    out
}

fn empty_julia() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cases = [
        ("perplex, c = (1.5, 0.3)", Table2D::perplex(), [1.5, 0.3]),
        (
            "table VI A = B = 0, c = (1.5, 0.5)",
            Table2D::with_sums(TableFamily::TwoIdempotents, 0.0, 0.0, 0.0, 0.0),
            [1.5, 0.5],
        ),
    ];
    for (name, t, c) in cases {
        let sc = t.to_structure_constants();
        let cert = certificate(&t);
        let c = el(&c);
        let radius = escape_radius(&cert, &c).unwrap();
        let mut misses = 0;
        for _ in 0..10_000 {
            let u = ball(&mut rng, 2, 10.0);
            let o = classify_orbit(&sc, &c, &u, &radius, 60, Threshold::Julia).unwrap();
            if !o.escaped() {
                misses += 1;
            }
        }
        out.check(
            misses == 0,
            format!("{name}: {misses} of 10000 points did not escape within 60 steps"),
        );
        let job = RasterJob::new(
            sc,
            RenderMode::Julia { c },
            Window::new(-10.0, 10.0, -10.0, 10.0).unwrap(),
            64,
            64,
            100,
        )
        .with_eta(cert);
        let bounded = render_with_workers(&job, 0).unwrap().bounded_count();
        out.check(bounded == 0, format!("{name}: {bounded} bounded pixels"));
    }
    out
}

fn mandelbrot_job(workers: usize) -> (RasterJob, EscapeGrid) {
    let t = Table2D::complex();
    let job = RasterJob::new(
        t.to_structure_constants(),
        RenderMode::Mandelbrot,
        Window::new(-2.0, 1.0, -1.5, 1.5).unwrap(),
        64,
        64,
        100,
    )
    .with_eta(certificate(&t));
    let grid = render_with_workers(&job, workers).unwrap();
    (job, grid)
}

/// Escape count of `z ↦ z² + c` from `z = 0` with `|z|² > 4`, or `None`.
fn scalar_escape(cr: f64, ci: f64, max_iter: u32) -> Option<u32> {
    let (mut x, mut y) = (0.0f64, 0.0f64);
    for n in 1..=max_iter {
        let nx = x * x - y * y + cr;
        y = 2.0 * x * y + ci;
        x = nx;
        if x * x + y * y > 4.0 {
            return Some(n);
        }
    }
    None
}

fn classical_oracle() -> Outcome {
    let mut out = Outcome::new();
    let (_, grid) = mandelbrot_job(0);
    let mut mismatches = 0;
    for py in 0..64 {
        for px in 0..64 {
            let cr = -2.0 + (px as f64 + 0.5) * 3.0 / 64.0;
            let ci = 1.5 - (py as f64 + 0.5) * 3.0 / 64.0;
            let want = scalar_escape(cr, ci, 100);
            let cell = grid.get(px, py);
            let got = cell.escaped.then_some(cell.n);
            if got != want || (!cell.escaped && cell.n != 100) {
                mismatches += 1;
                if mismatches <= 3 {
                    out.check(
                        false,
                        format!("pixel ({px}, {py}) c = ({cr}, {ci}): {got:?} vs oracle {want:?}"),
                    );
                }
            }
        }
    }
    out.check(
        mismatches == 0,
        format!("{mismatches} of 4096 pixels differ"),
    );

    let t = Table2D::complex();
    let sc = t.to_structure_constants();
    let cert = certificate(&t);
    for (c, want) in [
        ([-1.0, 0.0], None),
        ([1.0, 0.0], Some(3)),
        ([-2.0, 0.0], None),
    ] {
        let c = el(&c);
        let radius = escape_radius(&cert, &c).unwrap();
        let o = classify_orbit(
            &sc,
            &c,
            &Element::zero(2),
            &radius,
            100,
            Threshold::Mandelbrot,
        )
        .unwrap();
        out.check(
            o.escape_index() == want && scalar_escape(c[0], c[1], 100).map(|n| n as usize) == want,
            format!(
                "c = {c}: escape index {:?}, expected {want:?}",
                o.escape_index()
            ),
        );
    }
    out
}

fn escape_certification() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let algebras = [Table2D::complex(), Table2D::perplex()];
    let certs: Vec<EtaCertificate> = algebras.iter().map(certificate).collect();
    let mut overflowed = 0;
    for trial in 0..1000 {
        let which = trial % 2;
        let sc = algebras[which].to_structure_constants();
        let c = ball(&mut rng, 2, 2.0);
        let radius = escape_radius(&certs[which], &c).unwrap();
        let excess = 10f64.powf(-rng.gen_range(1.0..8.0));
        let u = unit(&mut rng, 2).scale(radius.lambda * (1.0 + excess));
        let o = classify_orbit(&sc, &c, &u, &radius, 100, Threshold::Julia).unwrap();
        let n = o.escape_index();
        if !matches!(n, Some(k) if k <= 1) {
            out.check(false, format!("u = {u}, c = {c}: escape index {n:?}"));
            continue;
        }
        // past the f64 range the norm is +inf, which still exceeds every
        // finite predecessor
        let trace = match orbit_trace(&sc, &c, &u, 20) {
            Ok(t) => t,
            Err(DynamicsError::OverflowAt { trace, .. }) => {
                overflowed += 1;
                trace
            }
            Err(e) => panic!("{e}"),
        };
        let mut prev = u[0].hypot(u[1]);
        for (k, x) in trace.iter().enumerate() {
            let r = x[0].hypot(x[1]);
            if !(r > prev) {
                out.check(
                    false,
                    format!("u = {u}, c = {c}: |f^{}| = {r} after {prev}", k + 1),
                );
                break;
            }
            prev = r;
        }
    }
    out.note(format!("{overflowed} of 1000 orbits left the f64 range before 20 steps"));
    out
}

fn boundedness() -> Outcome {
    let mut out = Outcome::new();
    let (job, grid) = mandelbrot_job(0);
    for py in 0..64 {
        for px in 0..64 {
            if !grid.get(px, py).escaped {
                let c = pixel_to_element(&job, px, py).unwrap();
                out.check(
                    c.norm() <= 2.0 + 1e-9,
                    format!("bounded Mandelbrot pixel c = {c}"),
                );
            }
        }
    }
    let t = Table2D::complex();
    let c = el(&[-1.0, 0.0]);
    let cert = certificate(&t);
    let lambda = escape_radius(&cert, &c).unwrap().lambda;
    let job = RasterJob::new(
        t.to_structure_constants(),
        RenderMode::Julia { c },
        Window::new(-2.0, 2.0, -2.0, 2.0).unwrap(),
        64,
        64,
        100,
    )
    .with_eta(cert);
    let grid = render_with_workers(&job, 0).unwrap();
    let limit = lambda + job.pixel_diagonal();
    for py in 0..64 {
        for px in 0..64 {
            if !grid.get(px, py).escaped {
                let u = pixel_to_element(&job, px, py).unwrap();
                out.check(
                    u.norm() <= limit,
                    format!("bounded Julia pixel u = {u}, limit {limit}"),
                );
            }
        }
    }
    out.check(
        grid.bounded_count() > 0,
        "Julia render of c = -1 has no bounded pixels",
    );
    out
}

fn canonical_forms() -> Outcome {
    let mut out = Outcome::new();
    let mut check = |name: &str, t: Table2D, target: [f64; 2]| match canonicalize(&t) {
        Ok(c) => {
            let f2 = c.f2();
            let sq = t.to_structure_constants().square(&f2).unwrap();
            let err = sq.distance(&el(&target));
            out.check(
                err <= 1e-12,
                format!("{name}: f2 = {f2}, |f2^2 - target| = {err:e}"),
            );
        }
        Err(e) => out.check(false, format!("{name}: {e}")),
    };
    check(
        "A = B = 1, a22 = b22 = 1",
        Table2D::with_sums(TableFamily::SingleIdempotent, 1.0, 1.0, 1.0, 1.0),
        [1.0, 0.0],
    );
    for (a, b) in [(0.0, 0.0), (1.0, 2.0), (-0.5, 3.0)] {
        check(
            &format!("A = {a}, B = {b}, a22 = -4, b22 = 0"),
            Table2D::with_sums(TableFamily::SingleIdempotent, a, b, -4.0, 0.0),
            [-1.0, 0.0],
        );
    }
    let r = canonicalize(&Table2D::with_sums(
        TableFamily::SingleIdempotent,
        2.0,
        2.0,
        0.75,
        1.0,
    ));
    out.check(
        matches!(r, Err(AnalysisError::NotNormalizable { .. })),
        format!("A = B = 2, a22 = 3/4, b22 = 1 gave {r:?}"),
    );
    out
}

fn determinism() -> Outcome {
    let mut out = Outcome::new();
    let (_, one) = mandelbrot_job(1);
    let (_, eight) = mandelbrot_job(8);
    out.check(
        one.to_pgm_bytes() == eight.to_pgm_bytes(),
        "PGM differs between 1 and 8 workers",
    );

    let run = || {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = cli::run(["hyperjulia", "verify-paper"], &mut o, &mut e);
        (code, o)
    };
    let (c1, o1) = run();
    let (c2, o2) = run();
    out.check(
        c1 == 0 && c2 == 0,
        format!("verify-paper exit codes {c1}, {c2}"),
    );
    out.check(o1 == o2, "verify-paper output differs between runs");
    out
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        (
            "product bound M and weak submultiplicativity",
            product_bound,
        ),
        (
            "square property of Cayley-Dickson algebras",
            square_property,
        ),
        ("closed-form and sampled eta", eta_values),
        ("2-D dichotomy over the (A, B) grid", dichotomy),
        ("constant orbits through nilpotents", degenerate_orbits),
        ("empty filled Julia sets", empty_julia),
        (
            "complex Mandelbrot against a scalar oracle",
            classical_oracle,
        ),
        ("escape certification above lambda", escape_certification),
        ("bounded pixels lie inside the bound", boundedness),
        ("canonical bases for table II", canonical_forms),
        ("deterministic rendering and checklist", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {}: {name} ({secs:.1}s)", i + 1);
        for d in outcome.details.iter().chain(&outcome.notes) {
            println!("    {d}");
        }
        if !outcome.passed {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
