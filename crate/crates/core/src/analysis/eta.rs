use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::plane::{find_nilpotents_2d, nilpotent_lines_general};
use super::sphere::CubeSphereGrid;
use super::{AnalysisError, EtaCertificate, EtaMethod, EtaOutcome};
use crate::algebra::{g_norm, Element, StructureConstants, Table2D, TableFamily};

/// Angle samples on `[0, π)` for the 2-D minimization.
pub const CLOSED_FORM_SAMPLES: usize = 100_000;

/// Sphere-sample budget used when no closed form applies.
pub const DEFAULT_ETA_BUDGET: u64 = 100_000;

const SAMPLE_SEED: u64 = 0x5eed_e7a0;

/// `‖u²‖` for unit `u(θ) = (cos θ, sin θ)`.
fn circle_value(sc: &StructureConstants, theta: f64, buf: &mut [f64; 2]) -> f64 {
    let u = [theta.cos(), theta.sin()];
    sc.mul_into(&u, &u, buf);
    g_norm(buf)
}

fn golden_section(mut lo: f64, mut hi: f64, f: &mut impl FnMut(f64) -> f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-12 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Minimum of `‖u²‖` over the unit circle of a 2-D algebra: dense angle
/// sampling of the half circle (the square map is even) and golden-section
/// refinement of every near-optimal local minimum.
pub(crate) fn circle_certificate(sc: &StructureConstants) -> EtaCertificate {
    debug_assert_eq!(sc.dim(), 2);
    let n = CLOSED_FORM_SAMPLES;
    let step = std::f64::consts::PI / n as f64;
    let mut buf = [0.0; 2];
    let values: Vec<f64> = (0..n)
        .map(|i| circle_value(sc, i as f64 * step, &mut buf))
        .collect();
    let (best_idx, best) =
        values
            .iter()
            .copied()
            .enumerate()
            .fold(
                (0, f64::INFINITY),
                |acc, (i, v)| if v < acc.1 { (i, v) } else { acc },
            );

    let mut theta_min = best_idx as f64 * step;
    let mut value_min = best;
    let margin = 1e-6 * (1.0 + best);
    let mut f = |theta: f64| circle_value(sc, theta, &mut buf);
    for i in 0..n {
        let v = values[i];
        if v > best + margin {
            continue;
        }
        let prev = values[(i + n - 1) % n];
        let next = values[(i + 1) % n];
        if v > prev || v > next {
            continue;
        }
        let centre = i as f64 * step;
        let (theta, value) = golden_section(centre - step, centre + step, &mut f);
        if value < value_min {
            theta_min = theta;
            value_min = value;
        }
    }

    // the circle values are 1 up to rounding
    if has_cayley_dickson_square(sc) {
        value_min = 1.0;
    }
    let m = sc.weak_submul_constant().value;
    EtaCertificate {
        eta: value_min,
        method: EtaMethod::ClosedForm2D,
        sampled_min: best,
        sample_count: n as u64,
        // chord between neighbouring angles, halved
        covering_radius: 2.0 * (step / 4.0).sin(),
        lipschitz_bound: 2.0 * m,
        minimizer: Element::new(vec![theta_min.cos(), theta_min.sin()]),
    }
}

/// Square-inequality constant for the idempotent table families II–VI.
///
/// The table admits `η > 0` exactly when it has no nonzero nilpotent, which
/// is decided by [`find_nilpotents_2d`]; when one exists it is returned as
/// the witness. Otherwise `η = min_{‖u‖=1} ‖u²‖ = 1/sqrt(sup h)`.
pub fn eta_closed_form_2d(t: &Table2D) -> Result<EtaOutcome, AnalysisError> {
    if t.family() == TableFamily::General {
        return Err(AnalysisError::UnsupportedFamily(TableFamily::General));
    }
    let nilpotents = find_nilpotents_2d(t)?;
    if let Some(first) = nilpotents.into_iter().next() {
        return Ok(EtaOutcome::NoSquareInequality {
            witness: first.direction,
        });
    }
    Ok(EtaOutcome::Bound(circle_certificate(
        &t.to_structure_constants(),
    )))
}

/// `h(s) = ‖(s,1)‖⁴ / ‖(s,1)²‖²`, evaluated through the table itself on
/// the chart `u = s·e₁ + e₂`.
pub fn h_ratio(t: &Table2D, s: f64) -> f64 {
    let sc = t.to_structure_constants();
    let u = [s, 1.0];
    let mut sq = [0.0; 2];
    sc.mul_into(&u, &u, &mut sq);
    (s * s + 1.0).powi(2) / (sq[0] * sq[0] + sq[1] * sq[1])
}

/// The same `h` from the per-family expansion of `u²`:
/// III `(s²+As−1)² + B²s²`, IV `(s²+As+1)² + B²s²`,
/// II `(s²+As+a₂₂)² + (Bs+b₂₂)²`, V `(s²+As)² + B²s²`,
/// VI `(s²+As)² + (Bs+1)²` in the denominator.
pub fn h_table_formula(t: &Table2D, s: f64) -> Option<f64> {
    let (a, b) = (t.a_sum(), t.b_sum());
    let denom = match t.family() {
        TableFamily::General => return None,
        TableFamily::MinusUnit => (s * s + a * s - 1.0).powi(2) + b * b * s * s,
        TableFamily::PlusUnit => (s * s + a * s + 1.0).powi(2) + b * b * s * s,
        TableFamily::SingleIdempotent => {
            let (a22, b22) = t.e2_square();
            (s * s + a * s + a22).powi(2) + (b * s + b22).powi(2)
        }
        TableFamily::Nilpotent => (s * s + a * s).powi(2) + b * b * s * s,
        TableFamily::TwoIdempotents => (s * s + a * s).powi(2) + (b * s + 1.0).powi(2),
    };
    Some((s * s + 1.0).powi(2) / denom)
}

/// Sufficient condition for the square inequality by family: III `B ≠ 0`,
/// IV `|A| < 2 or B ≠ 0`, VI `AB ≠ 1`; V never. For II, `Some(true)` when
/// `b₂₂ ≠ 0` and `B = 0`, `None` otherwise (no closed condition is known for
/// the remaining Table II cases).
pub fn square_inequality_hypothesis(t: &Table2D) -> Option<bool> {
    let (a, b) = (t.a_sum(), t.b_sum());
    match t.family() {
        TableFamily::General => None,
        TableFamily::MinusUnit => Some(b != 0.0),
        TableFamily::PlusUnit => Some(a.abs() < 2.0 || b != 0.0),
        TableFamily::Nilpotent => Some(false),
        TableFamily::TwoIdempotents => Some(a * b != 1.0),
        TableFamily::SingleIdempotent => {
            let (_, b22) = t.e2_square();
            (b22 != 0.0 && b == 0.0).then_some(true)
        }
    }
}

/// Sampling estimate with a certified lower bound for any dimension.
///
/// Samples a [`CubeSphereGrid`] sized to `budget` (raised to at least 1000)
/// and returns `eta = max(0, sampled_min − 2M·δ)`: for unit `u, v`,
/// `‖u² − v²‖ = ‖u(u − v) + (u − v)v‖ ≤ 2M‖u − v‖`. When no grid fits the
/// budget (high dimensions), seeded Gaussian directions are sampled instead
/// and the result is an uncertified [`EtaMethod::Sampled`] estimate with
/// `eta = 0`.
pub fn eta_sampled(sc: &StructureConstants, budget: u64) -> EtaCertificate {
    let budget = budget.max(1000);
    let dim = sc.dim();
    let lipschitz = 2.0 * sc.weak_submul_constant().value;
    let mut sq = vec![0.0; dim];
    let mut best = f64::INFINITY;
    let mut minimizer = vec![0.0; dim];

    match CubeSphereGrid::with_budget(dim, budget) {
        Some(grid) => {
            grid.for_each(|_, p| {
                sc.mul_into(p, p, &mut sq);
                let v = g_norm(&sq);
                if v < best {
                    best = v;
                    minimizer.copy_from_slice(p);
                }
            });
            let delta = grid.covering_radius();
            EtaCertificate {
                eta: (best - lipschitz * delta).max(0.0),
                method: EtaMethod::CertifiedLowerBound,
                sampled_min: best,
                sample_count: grid.len(),
                covering_radius: delta,
                lipschitz_bound: lipschitz,
                minimizer: Element::new(minimizer),
            }
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            let mut p = vec![0.0; dim];
            for _ in 0..budget {
                for x in p.iter_mut() {
                    *x = rng.sample(StandardNormal);
                }
                let n = g_norm(&p);
                p.iter_mut().for_each(|x| *x /= n);
                sc.mul_into(&p, &p, &mut sq);
                let v = g_norm(&sq);
                if v < best {
                    best = v;
                    minimizer.copy_from_slice(&p);
                }
            }
            EtaCertificate {
                eta: 0.0,
                method: EtaMethod::Sampled,
                sampled_min: best,
                sample_count: budget,
                covering_radius: f64::INFINITY,
                lipschitz_bound: lipschitz,
                minimizer: Element::new(minimizer),
            }
        }
    }
}

/// Whether the square map is exactly `(a₀² − Σ_{k≥1} a_k²)e₀ + Σ_{k≥1} 2a₀a_k e_k`,
/// checked on the symmetrized structure constants `α_ijk + α_jik`. This is
/// the expansion every Cayley–Dickson table obeys, and it implies the
/// square property `‖u²‖ = ‖u‖²`.
pub fn has_cayley_dickson_square(sc: &StructureConstants) -> bool {
    let m = sc.dim();
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-12;
    for k in 0..m {
        for i in 0..m {
            for j in i..m {
                let coef = if i == j {
                    sc.get(i, i, k)
                } else {
                    sc.get(i, j, k) + sc.get(j, i, k)
                };
                let want = match (k, i, j) {
                    (0, 0, 0) => 1.0,
                    (0, i, j) if i == j => -1.0,
                    (k, 0, j) if k > 0 && j == k => 2.0,
                    _ => 0.0,
                };
                if !close(coef, want) {
                    return false;
                }
            }
        }
    }
    true
}

/// Best available square-inequality result for any algebra: the 2-D circle
/// minimization (with an exact nilpotent check) in dimension 2, the exact
/// square expansion when it applies, and the certified sampling bound
/// otherwise.
pub fn eta_certificate(sc: &StructureConstants, budget: u64) -> EtaOutcome {
    if let Some(t) = Table2D::from_structure_constants(sc) {
        if t.family() != TableFamily::General {
            return eta_closed_form_2d(&t).expect("idempotent family");
        }
        if let Some(first) = nilpotent_lines_general(&t).into_iter().next() {
            return EtaOutcome::NoSquareInequality {
                witness: first.direction,
            };
        }
        return EtaOutcome::Bound(circle_certificate(sc));
    }
    if has_cayley_dickson_square(sc) {
        return EtaOutcome::Bound(EtaCertificate {
            eta: 1.0,
            method: EtaMethod::SquareExpansion,
            sampled_min: 1.0,
            sample_count: 0,
            covering_radius: 0.0,
            lipschitz_bound: 2.0 * sc.weak_submul_constant().value,
            minimizer: Element::basis(sc.dim(), 0),
        });
    }
    EtaOutcome::Bound(eta_sampled(sc, budget))
}

/// `|‖u²‖ − ‖u‖²| / (1 + ‖u‖²)`.
pub fn square_defect(sc: &StructureConstants, u: &Element) -> f64 {
    let sq = sc.square(u).expect("element matches algebra");
    let n2 = u.norm_sq();
    (sq.norm() - n2).abs() / (1.0 + n2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SquarePropertyVerdict {
    /// Max relative defect ≤ 1e-9 on every sample. A sampling verdict,
    /// not a proof.
    pub holds: bool,
    pub max_defect: f64,
    pub witness: Element,
    pub samples: usize,
}

/// Tests `‖u²‖ = ‖u‖²` on the basis vectors, the all-ones vector, and
/// seeded random elements with `‖u‖ ≤ 10` (at least 100 points in total).
pub fn square_property_check(sc: &StructureConstants, samples: usize) -> SquarePropertyVerdict {
    let dim = sc.dim();
    let samples = samples.max(100);
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED ^ 0x5a);
    let mut points: Vec<Element> = (0..dim).map(|i| Element::basis(dim, i)).collect();
    points.push(Element::new(vec![1.0; dim]));
    while points.len() < samples {
        let dir: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let r = 10.0 * rng.gen::<f64>() / g_norm(&dir);
        points.push(Element::new(dir.into_iter().map(|x| x * r).collect()));
    }
    let mut max_defect = 0.0;
    let mut witness = points[0].clone();
    for u in &points {
        let d = square_defect(sc, u);
        if d > max_defect {
            max_defect = d;
            witness = u.clone();
        }
    }
    SquarePropertyVerdict {
        holds: max_defect <= 1e-9,
        max_defect,
        witness,
        samples: points.len(),
    }
}
