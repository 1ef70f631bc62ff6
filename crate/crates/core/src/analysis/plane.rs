//! Exact structure of 2-D tables: nilpotent lines, idempotents, and the
//! change of basis taking Table II to Tables III/IV/V.
//!
//! Throughout, `u = (a, b)` and
//! `u² = (a₁₁a² + A·ab + P·b²)e₁ + (b₁₁a² + B·ab + Q·b²)e₂`
//! where `(P, Q)` is the `e₂²` cell and `(a₁₁, b₁₁) = (1, 0)` outside Table I.

use super::AnalysisError;
use crate::algebra::{Element, StructureConstants, Table2D, TableFamily};
use crate::poly::{cubic_roots, quadratic_roots};

/// A line `{λ·direction}` of elements squaring to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct NilpotentDirection {
    pub direction: Element,
    pub description: String,
}

fn square_of(sc: &StructureConstants, d: [f64; 2]) -> [f64; 2] {
    let mut out = [0.0; 2];
    sc.mul_into(&d, &d, &mut out);
    out
}

fn is_nilpotent(sc: &StructureConstants, d: [f64; 2]) -> bool {
    let sq = square_of(sc, d);
    (sq[0] * sq[0] + sq[1] * sq[1]).sqrt() <= 1e-12 * (d[0] * d[0] + d[1] * d[1])
}

fn direction(d: [f64; 2], description: String) -> NilpotentDirection {
    NilpotentDirection {
        direction: Element::new(d.to_vec()),
        description,
    }
}

fn push_verified(
    sc: &StructureConstants,
    out: &mut Vec<NilpotentDirection>,
    d: [f64; 2],
    description: String,
) {
    // drop negative zeros so directions print cleanly
    let d = [d[0] + 0.0, d[1] + 0.0];
    let parallel =
        |e: &Element| (e[0] * d[1] - e[1] * d[0]).abs() <= 1e-12 * e.norm() * (d[0].hypot(d[1]));
    if is_nilpotent(sc, d) && !out.iter().any(|n| parallel(&n.direction)) {
        out.push(direction(d, description));
    }
}

/// Nilpotent lines of a Table II–VI algebra, by the case analysis on `B`:
///
/// * `B ≠ 0`: the `e₂` coefficient forces `a = −Qb/B`; substituting gives
///   `b²(Q² − ABQ + PB²)/B² = 0`, so a line exists iff that resultant
///   vanishes, with direction `(−Q/B, 1)`.
/// * `B = 0`: the `e₂` coefficient is `Q·b²`, so `Q = 0` is needed; then
///   `a² + A·ab + P·b² = 0` has the real directions
///   `((−A ± √(A² − 4P))/2, 1)` when `A² ≥ 4P`.
///
/// `b = 0` never works because `e₁² = e₁`. Zero tests on the resultant and
/// discriminant use a relative tolerance of a few ulps, and every returned
/// direction is verified to satisfy `‖d²‖ ≤ 1e-12‖d‖²`.
pub fn find_nilpotents_2d(t: &Table2D) -> Result<Vec<NilpotentDirection>, AnalysisError> {
    if t.family() == TableFamily::General {
        return Err(AnalysisError::UnsupportedFamily(TableFamily::General));
    }
    let sc = t.to_structure_constants();
    let (a, b) = (t.a_sum(), t.b_sum());
    let (p, q) = t.e2_square();
    let eps = 8.0 * f64::EPSILON;
    let mut out = Vec::new();
    if b != 0.0 {
        let r = q * q - a * b * q + p * b * b;
        let scale = q * q + (a * b * q).abs() + p.abs() * b * b;
        if r.abs() <= eps * scale {
            push_verified(
                &sc,
                &mut out,
                [-q / b, 1.0],
                format!("b·({:?}, 1): Q² − ABQ + PB² = 0", -q / b),
            );
        }
    } else if q == 0.0 {
        let mut disc = a * a - 4.0 * p;
        if disc.abs() <= eps * (a * a + 4.0 * p.abs()) {
            disc = 0.0;
        }
        if disc >= 0.0 {
            let root = disc.sqrt();
            for s in [(-a + root) / 2.0, (-a - root) / 2.0] {
                push_verified(
                    &sc,
                    &mut out,
                    [s, 1.0],
                    format!("b·({s:?}, 1): B = 0, Q = 0, A² ≥ 4P"),
                );
            }
        }
    }
    Ok(out)
}

/// Nilpotent lines of an arbitrary 2-D table: common real roots of the two
/// binary quadratic forms of `u²`.
pub(crate) fn nilpotent_lines_general(t: &Table2D) -> Vec<NilpotentDirection> {
    let sc = t.to_structure_constants();
    let (a11, b11) = t.e1_square();
    let (p, q) = t.e2_square();
    let (a, b) = (t.a_sum(), t.b_sum());
    let mut out = Vec::new();
    push_verified(&sc, &mut out, [1.0, 0.0], "a·(1, 0): e₁² = 0".into());
    let first = [a11, a, p];
    let lead = if first.iter().any(|&x| x != 0.0) {
        first
    } else {
        [b11, b, q]
    };
    if lead.iter().all(|&x| x == 0.0) {
        // every element squares to zero
        push_verified(&sc, &mut out, [0.0, 1.0], "b·(0, 1): zero product".into());
        return out;
    }
    for s in quadratic_roots(lead[0], lead[1], lead[2]) {
        push_verified(&sc, &mut out, [s, 1.0], format!("b·({s:?}, 1)"));
    }
    out
}

/// Set of nonzero idempotents; `line` is set when they form a continuum.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Idempotents {
    pub points: Vec<Element>,
    pub line: Option<IdempotentLine>,
}

/// The affine line `{point + t·direction}`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdempotentLine {
    pub point: Element,
    pub direction: Element,
}

fn polish_idempotent(sc: &StructureConstants, mut u: [f64; 2]) -> [f64; 2] {
    for _ in 0..4 {
        let sq = square_of(sc, u);
        let g = [sq[0] - u[0], sq[1] - u[1]];
        // Jacobian of u ↦ u² − u
        let mut jac = [[0.0; 2]; 2];
        for (k, row) in jac.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..2)
                    .map(|i| (sc.get(i, j, k) + sc.get(j, i, k)) * u[i])
                    .sum::<f64>()
                    - if j == k { 1.0 } else { 0.0 };
            }
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let step = [
            (jac[1][1] * g[0] - jac[0][1] * g[1]) / det,
            (jac[0][0] * g[1] - jac[1][0] * g[0]) / det,
        ];
        let next = [u[0] - step[0], u[1] - step[1]];
        let residual = |v: [f64; 2]| {
            let s = square_of(sc, v);
            (s[0] - v[0]).hypot(s[1] - v[1])
        };
        if !(residual(next) < residual(u)) {
            break;
        }
        u = next;
    }
    u
}

/// Solves `u² = u`, `u ≠ 0`.
///
/// A solution `u = t·d` needs `d² = d/t`, so `d² ∥ d`. For `d = (s, 1)` the
/// cross product `d²ₓ − s·d²ᵧ` is the cubic
/// `b₁₁s³ + (B − a₁₁)s² + (Q − A)s − P` (with sign flipped), and `d = (1, 0)`
/// works iff `b₁₁ = 0`. Each direction with `d²·d ≠ 0` gives exactly one
/// idempotent `d·‖d‖²/(d²·d)`. When the cubic vanishes identically,
/// `u² = (a₁₁a + A·b)·u` and the idempotents are the line `a₁₁a + A·b = 1`.
pub fn find_idempotents_2d(t: &Table2D) -> Idempotents {
    let sc = t.to_structure_constants();
    let (a11, b11) = t.e1_square();
    let (p, q) = t.e2_square();
    let (a, b) = (t.a_sum(), t.b_sum());
    let cubic = [b11, b - a11, q - a, -p];

    if cubic.iter().all(|&c| c == 0.0) {
        let n2 = a11 * a11 + a * a;
        if n2 == 0.0 {
            return Idempotents::default();
        }
        return Idempotents {
            points: Vec::new(),
            line: Some(IdempotentLine {
                point: Element::new(vec![a11 / n2, a / n2]),
                direction: Element::new(vec![-a, a11]),
            }),
        };
    }

    let mut dirs: Vec<[f64; 2]> = cubic_roots(cubic[0], cubic[1], cubic[2], cubic[3])
        .into_iter()
        .map(|s| [s, 1.0])
        .collect();
    if b11 == 0.0 {
        dirs.push([1.0, 0.0]);
    }

    let mut points: Vec<Element> = Vec::new();
    for d in dirs {
        let sq = square_of(&sc, d);
        let dd = d[0] * d[0] + d[1] * d[1];
        let lambda = (sq[0] * d[0] + sq[1] * d[1]) / dd;
        if lambda.abs() <= 1e-12 * (sq[0].hypot(sq[1])).max(dd) {
            continue;
        }
        let u = polish_idempotent(&sc, [d[0] / lambda, d[1] / lambda]);
        let s = square_of(&sc, u);
        let n2 = u[0] * u[0] + u[1] * u[1];
        if (s[0] - u[0]).hypot(s[1] - u[1]) > 1e-9 * (1.0 + n2) || n2 == 0.0 {
            continue;
        }
        let u = Element::new(u.to_vec());
        if !points
            .iter()
            .any(|p| p.distance(&u) <= 1e-9 * (1.0 + u.norm()))
        {
            points.push(u);
        }
    }
    points.sort_by(|x, y| x[0].total_cmp(&y[0]).then(x[1].total_cmp(&y[1])));
    Idempotents { points, line: None }
}

/// A Table III/IV/V presentation of a Table II algebra in the basis
/// `{e₁, f₂}`, `f₂ = α·e₁ + β·e₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct Canonical {
    pub table: Table2D,
    pub alpha: f64,
    pub beta: f64,
}

impl Canonical {
    /// `f₂` in the original basis.
    pub fn f2(&self) -> Element {
        Element::new(vec![self.alpha, self.beta])
    }
}

/// Finds `f₂ = αe₁ + βe₂` with `f₂² = ±e₁` (or keeps `e₂` when `e₂² = 0`).
///
/// `f₂² = (α² + αβA + β²a₂₂)e₁ + (αβB + β²b₂₂)e₂`. With `b₂₂ = 0` take
/// `α = 0, β = 1/√|a₂₂|`. With `b₂₂ ≠ 0` the `e₂` part vanishes for
/// `β = −Bα/b₂₂`, which leaves `α²·D` with `D = 1 − AB/b₂₂ + B²a₂₂/b₂₂²`, so
/// `α = 1/√|D|` and the sign of `D` picks Table IV or III. The new table
/// is recomputed from the products `e₁f₂`, `f₂e₁` and checked against the
/// original multiplication.
pub fn canonicalize(t: &Table2D) -> Result<Canonical, AnalysisError> {
    if t.family() != TableFamily::SingleIdempotent {
        return Err(AnalysisError::UnsupportedFamily(t.family()));
    }
    let (a, b) = (t.a_sum(), t.b_sum());
    let (a22, b22) = t.e2_square();

    let (family, alpha, beta) = if a22 == 0.0 && b22 == 0.0 {
        (TableFamily::Nilpotent, 0.0, 1.0)
    } else if b22 == 0.0 {
        let family = if a22 > 0.0 {
            TableFamily::PlusUnit
        } else {
            TableFamily::MinusUnit
        };
        (family, 0.0, 1.0 / a22.abs().sqrt())
    } else {
        if b == 0.0 {
            return Err(AnalysisError::NotNormalizable {
                reason: "b22 ≠ 0 and B = 0: the e2 part β²·b22 of f2² cannot vanish".into(),
            });
        }
        let terms = [1.0, -a * b / b22, b * b * a22 / (b22 * b22)];
        let d: f64 = terms.iter().sum();
        let scale: f64 = terms.iter().map(|x| x.abs()).sum();
        if d.abs() <= 8.0 * f64::EPSILON * scale {
            let nilpotent = find_nilpotents_2d(t)?
                .first()
                .map(|n| format!("; nilpotent direction {}", n.direction))
                .unwrap_or_default();
            return Err(AnalysisError::NotNormalizable {
                reason: format!("1 − AB/b22 + B²a22/b22² = 0{nilpotent}"),
            });
        }
        let alpha = 1.0 / d.abs().sqrt();
        let family = if d > 0.0 {
            TableFamily::PlusUnit
        } else {
            TableFamily::MinusUnit
        };
        (family, alpha, -b * alpha / b22)
    };

    // x·e1 + y·e2 = (x − α·y/β)·e1 + (y/β)·f2
    let rebase = |(x, y): (f64, f64)| -> (f64, f64) {
        let y2 = y / beta;
        (x - alpha * y2, y2)
    };
    let (a12, b12) = t.cell(1, 2);
    let (a21, b21) = t.cell(2, 1);
    let (na12, nb12) = rebase((alpha + beta * a12, beta * b12));
    let (na21, nb21) = rebase((alpha + beta * a21, beta * b21));
    let table = Table2D::new(family, na12, nb12, na21, nb21, 0.0, 0.0);

    let sc = t.to_structure_constants();
    let sq = square_of(&sc, [alpha, beta]);
    let (want, _) = family.fixed_e2_square().expect("fixed family");
    let err = (sq[0] - want).hypot(sq[1]);
    let tol = 1e-12
        * (1.0 + alpha * alpha + beta * beta)
        * (1.0 + a.abs() + b.abs() + a22.abs() + b22.abs());
    if err > tol {
        return Err(AnalysisError::NotNormalizable {
            reason: format!("f2² misses ±e1 by {err:e}"),
        });
    }
    Ok(Canonical { table, alpha, beta })
}
