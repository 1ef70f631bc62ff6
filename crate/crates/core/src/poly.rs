//! Real roots of low-degree polynomials.

/// Real roots of `a t² + b t + c`, ascending, repeated roots once. Falls
/// back to the linear case when `a == 0`; an identically zero polynomial
/// has no isolated roots and returns empty.
pub(crate) fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        if b == 0.0 {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    if disc == 0.0 {
        return vec![-b / (2.0 * a)];
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut roots = if q == 0.0 {
        // b == 0 and c == 0 would have disc == 0, so here b == 0, a*c < 0
        let r = (-c / a).sqrt();
        vec![-r, r]
    } else {
        vec![q / a, c / q]
    };
    roots.sort_by(f64::total_cmp);
    roots
}

/// Real roots of `a t³ + b t² + c t + d`, ascending and deduplicated,
/// each polished with Newton steps.
pub(crate) fn cubic_roots(a: f64, b: f64, c: f64, d: f64) -> Vec<f64> {
    if a == 0.0 {
        return quadratic_roots(b, c, d);
    }
    let (p2, p1, p0) = (b / a, c / a, d / a);
    // t = x - p2/3 gives x³ + px + q
    let shift = p2 / 3.0;
    let p = p1 - p2 * p2 / 3.0;
    let q = 2.0 * p2 * p2 * p2 / 27.0 - p2 * p1 / 3.0 + p0;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);

    let mut roots: Vec<f64> = if p == 0.0 && q == 0.0 {
        vec![0.0]
    } else if disc > 0.0 {
        let s = disc.sqrt();
        vec![(-q / 2.0 + s).cbrt() + (-q / 2.0 - s).cbrt()]
    } else {
        let r = (-p / 3.0).sqrt();
        let arg = if r == 0.0 {
            0.0
        } else {
            (-q / (2.0 * r * r * r)).clamp(-1.0, 1.0)
        };
        let phi = arg.acos();
        (0..3)
            .map(|k| 2.0 * r * ((phi - 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos())
            .collect()
    };
    for x in roots.iter_mut() {
        *x -= shift;
    }

    let f = |t: f64| ((a * t + b) * t + c) * t + d;
    let df = |t: f64| (3.0 * a * t + 2.0 * b) * t + c;
    for x in roots.iter_mut() {
        for _ in 0..4 {
            let g = df(*x);
            if g == 0.0 {
                break;
            }
            let next = *x - f(*x) / g;
            if !next.is_finite() || f(next).abs() > f(*x).abs() {
                break;
            }
            *x = next;
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-9 * (1.0 + y.abs()));
    roots
}
