//! Orbits of `f_c(u) = u² + c`.
//!
//! If `‖u²‖ ≥ η‖u‖²` with `η > 0` and `‖u‖ > λ = max(2/η, ‖c‖)`, then
//! `‖f_c(u)‖ ≥ η‖u‖² − ‖c‖ > ‖u‖(1 + δ)` with `δ = η‖u‖ − 2 > 0`, so the
//! orbit grows geometrically. An orbit that exceeds `λ` is therefore
//! unbounded, and the first exceedance index is a certificate. For the
//! parameter plane the orbit of `0` is used, whose first term is `c`, and
//! the threshold `2/η` suffices: it equals `λ` when `‖c‖ ≤ 2/η`, and when
//! `‖c‖ > 2/η` the second term has `‖c² + c‖ ≥ ‖c‖(η‖c‖ − 1) > ‖c‖ = λ`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{g_norm, Element, StructureConstants};
use crate::analysis::EtaCertificate;

/// Bailout used when no square-inequality constant is available.
pub const UNCERTIFIED_BAILOUT: f64 = 1e6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("no square-inequality constant (eta = 0): escape cannot be certified")]
    SquareInequalityUnavailable,
    #[error("element has dimension {found}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("iteration count must be at least 1")]
    ZeroIterations,
    #[error("coordinates became non-finite at step {k}")]
    OverflowAt { k: usize, trace: Vec<Element> },
}

/// Escape thresholds for one parameter `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EscapeRadius {
    /// Filled-Julia threshold `max(2/η, ‖c‖)`.
    pub lambda: f64,
    /// Parameter-plane threshold `2/η`.
    pub mandelbrot_threshold: f64,
    pub eta: f64,
    /// False for heuristic bailouts, whose escapes prove nothing.
    pub certified: bool,
}

impl EscapeRadius {
    pub fn uncertified(bailout: f64) -> Self {
        Self {
            lambda: bailout,
            mandelbrot_threshold: bailout,
            eta: 0.0,
            certified: false,
        }
    }
}

pub fn escape_radius(eta: &EtaCertificate, c: &Element) -> Result<EscapeRadius, DynamicsError> {
    if !eta.is_certified() {
        return Err(DynamicsError::SquareInequalityUnavailable);
    }
    let m = 2.0 / eta.eta;
    Ok(EscapeRadius {
        lambda: m.max(c.norm()),
        mandelbrot_threshold: m,
        eta: eta.eta,
        certified: true,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Threshold {
    Julia,
    Mandelbrot,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrbitKind {
    /// `n` is the first index with `‖f_cⁿ(u)‖ > threshold`, or the step at
    /// which a coordinate overflowed; `norm_at_escape` is then the last
    /// finite norm.
    Escaped { n: usize, norm_at_escape: f64 },
    /// No escape within `max_iter` steps. Not a membership proof.
    BoundedUpTo { max_iter: usize, max_norm: f64 },
    /// `u² = 0` and `c² = 0`: every iterate equals `c`.
    DegenerateFixed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitOutcome {
    pub kind: OrbitKind,
    pub lambda_used: f64,
    pub certified: bool,
}

impl OrbitOutcome {
    pub fn escape_index(&self) -> Option<usize> {
        match self.kind {
            OrbitKind::Escaped { n, .. } => Some(n),
            _ => None,
        }
    }

    pub fn escaped(&self) -> bool {
        self.escape_index().is_some()
    }
}

fn check_dim(sc: &StructureConstants, u: &Element) -> Result<(), DynamicsError> {
    sc.check(u).map_err(|_| DynamicsError::DimensionMismatch {
        expected: sc.dim(),
        found: u.dim(),
    })
}

/// Reusable buffers for iterating one algebra; the raster workers keep one
/// per thread.
pub(crate) struct OrbitBuffers {
    cur: Vec<f64>,
    sq: Vec<f64>,
}

impl OrbitBuffers {
    pub(crate) fn new(dim: usize) -> Self {
        Self {
            cur: vec![0.0; dim],
            sq: vec![0.0; dim],
        }
    }

    /// `cur ← cur² + c`; returns `‖cur‖²`.
    fn step(&mut self, sc: &StructureConstants, c: &[f64]) -> f64 {
        sc.mul_into(&self.cur, &self.cur, &mut self.sq);
        let mut n2 = 0.0;
        for (x, (s, ci)) in self.cur.iter_mut().zip(self.sq.iter().zip(c)) {
            *x = s + ci;
            n2 += *x * *x;
        }
        n2
    }

    /// The classification loop shared by [`classify_orbit`] and the raster.
    pub(crate) fn classify(
        &mut self,
        sc: &StructureConstants,
        c: &[f64],
        start: &[f64],
        threshold: f64,
        max_iter: usize,
        include_start: bool,
    ) -> OrbitKind {
        self.cur.copy_from_slice(start);
        let t2 = threshold * threshold;
        let mut max_n2: f64 = if include_start {
            start.iter().fold(0.0, |acc, x| acc + x * x)
        } else {
            0.0
        };
        let mut last_finite = max_n2.sqrt();
        for n in 1..=max_iter {
            let n2 = self.step(sc, c);
            if !n2.is_finite() {
                // a coordinate or the squared norm overflowed
                return OrbitKind::Escaped {
                    n,
                    norm_at_escape: last_finite,
                };
            }
            if n2 > t2 {
                return OrbitKind::Escaped {
                    n,
                    norm_at_escape: n2.sqrt(),
                };
            }
            if n == 1 && self.sq.iter().all(|&x| x == 0.0) {
                // u² = 0, so cur = c; constant from here on iff c² = 0
                sc.mul_into(c, c, &mut self.sq);
                if self.sq.iter().all(|&x| x == 0.0) {
                    return OrbitKind::DegenerateFixed;
                }
            }
            last_finite = n2.sqrt();
            max_n2 = max_n2.max(n2);
        }
        OrbitKind::BoundedUpTo {
            max_iter,
            max_norm: max_n2.sqrt(),
        }
    }
}

/// Iterates `u_{n+1} = u_n² + c` from `u` (Julia) or from `u_1 = c`
/// (Mandelbrot, `u` ignored) and stops at the first strict exceedance of
/// the threshold.
pub fn classify_orbit(
    sc: &StructureConstants,
    c: &Element,
    u: &Element,
    radius: &EscapeRadius,
    max_iter: usize,
    threshold: Threshold,
) -> Result<OrbitOutcome, DynamicsError> {
    check_dim(sc, c)?;
    if max_iter == 0 {
        return Err(DynamicsError::ZeroIterations);
    }
    let (start, limit, include_start) = match threshold {
        Threshold::Julia => {
            check_dim(sc, u)?;
            (u.coords().to_vec(), radius.lambda, true)
        }
        Threshold::Mandelbrot => (vec![0.0; sc.dim()], radius.mandelbrot_threshold, false),
    };
    let kind = OrbitBuffers::new(sc.dim()).classify(
        sc,
        c.coords(),
        &start,
        limit,
        max_iter,
        include_start,
    );
    Ok(OrbitOutcome {
        kind,
        lambda_used: limit,
        certified: radius.certified,
    })
}

/// `f_c¹(u), …, f_cⁿ(u)`, computed exactly as [`classify_orbit`] does.
pub fn orbit_trace(
    sc: &StructureConstants,
    c: &Element,
    u: &Element,
    n: usize,
) -> Result<Vec<Element>, DynamicsError> {
    check_dim(sc, c)?;
    check_dim(sc, u)?;
    if n == 0 {
        return Err(DynamicsError::ZeroIterations);
    }
    let mut it = OrbitBuffers::new(sc.dim());
    it.cur.copy_from_slice(u.coords());
    let mut trace = Vec::with_capacity(n.min(1 << 20));
    for k in 1..=n {
        it.step(sc, c.coords());
        if !it.cur.iter().all(|x| x.is_finite()) {
            return Err(DynamicsError::OverflowAt { k, trace });
        }
        trace.push(Element::new(it.cur.clone()));
    }
    Ok(trace)
}

/// `n= k  coords= a1 … am  norm= r`, 17 significant digits.
pub fn format_trace_line(k: usize, u: &Element) -> String {
    let mut line = format!("n= {k}  coords=");
    for x in u.coords() {
        let _ = write!(line, " {x:.16e}");
    }
    let _ = write!(line, "  norm= {:.16e}", g_norm(u.coords()));
    line
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Table2D, TableFamily};
    use crate::analysis::{eta_closed_form_2d, EtaMethod};

    fn cert(eta: f64) -> EtaCertificate {
        EtaCertificate {
            eta,
            method: EtaMethod::ClosedForm2D,
            sampled_min: eta,
            sample_count: 1,
            covering_radius: 0.0,
            lipschitz_bound: 4.0,
            minimizer: Element::basis(2, 0),
        }
    }

    fn el(x: f64, y: f64) -> Element {
        Element::new(vec![x, y])
    }

    #[test]
    fn radius_examples() {
        assert_eq!(
            escape_radius(&cert(1.0), &el(-1.0, 0.0)).unwrap().lambda,
            2.0
        );
        assert_eq!(
            escape_radius(&cert(1.0), &el(3.0, 0.0)).unwrap().lambda,
            3.0
        );
        assert_eq!(
            escape_radius(&cert(0.5), &el(3.0, 0.0))
                .unwrap()
                .mandelbrot_threshold,
            4.0
        );
        assert_eq!(
            escape_radius(&cert(0.0), &el(0.0, 0.0)),
            Err(DynamicsError::SquareInequalityUnavailable)
        );
        assert!(eta_closed_form_2d(&Table2D::dual())
            .unwrap()
            .certificate()
            .is_none());
    }

    fn mandel(c: Element, max_iter: usize) -> OrbitKind {
        let sc = Table2D::complex().to_structure_constants();
        let r = escape_radius(&cert(1.0), &c).unwrap();
        classify_orbit(
            &sc,
            &c,
            &Element::zero(2),
            &r,
            max_iter,
            Threshold::Mandelbrot,
        )
        .unwrap()
        .kind
    }

    #[test]
    fn real_axis_mandelbrot_orbits() {
        assert!(
            matches!(mandel(el(1.0, 0.0), 100), OrbitKind::Escaped { n: 3, norm_at_escape } if norm_at_escape == 5.0)
        );
        assert_eq!(
            mandel(el(-1.0, 0.0), 1000),
            OrbitKind::BoundedUpTo {
                max_iter: 1000,
                max_norm: 1.0
            }
        );
        assert_eq!(
            mandel(el(-2.0, 0.0), 1000),
            OrbitKind::BoundedUpTo {
                max_iter: 1000,
                max_norm: 2.0
            }
        );
    }

    #[test]
    fn nilpotent_start_is_degenerate() {
        let t = Table2D::with_sums(TableFamily::MinusUnit, 0.0, 0.0, 0.0, 0.0);
        let sc = t.to_structure_constants();
        let c = el(1.0, 1.0);
        let r = EscapeRadius::uncertified(UNCERTIFIED_BAILOUT);
        let out = classify_orbit(&sc, &c, &el(1.0, 1.0), &r, 100, Threshold::Julia).unwrap();
        assert_eq!(out.kind, OrbitKind::DegenerateFixed);
        assert!(!out.certified);
    }

    #[test]
    fn traces() {
        let complex = Table2D::complex().to_structure_constants();
        let t = orbit_trace(&complex, &el(0.0, 0.0), &el(2.0, 0.0), 3).unwrap();
        assert_eq!(t, vec![el(4.0, 0.0), el(16.0, 0.0), el(256.0, 0.0)]);

        let perplex = Table2D::perplex().to_structure_constants();
        let t = orbit_trace(&perplex, &el(1.5, 0.0), &el(0.0, 0.0), 2).unwrap();
        assert_eq!(t, vec![el(1.5, 0.0), el(3.75, 0.0)]);

        let dual = Table2D::dual().to_structure_constants();
        let t = orbit_trace(&dual, &el(0.0, 1.0), &el(0.0, 5.0), 2).unwrap();
        assert_eq!(t, vec![el(0.0, 1.0), el(0.0, 1.0)]);

        match orbit_trace(&complex, &el(0.0, 0.0), &el(1e100, 0.0), 10) {
            Err(DynamicsError::OverflowAt { k, trace }) => {
                assert_eq!(k, 2);
                assert_eq!(trace.len(), 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn overflow_counts_as_escape() {
        let sc = Table2D::complex().to_structure_constants();
        let r = EscapeRadius::uncertified(f64::MAX);
        let out = classify_orbit(
            &sc,
            &el(0.0, 0.0),
            &el(1e150, 0.0),
            &r,
            10,
            Threshold::Julia,
        )
        .unwrap();
        assert_eq!(
            out.kind,
            OrbitKind::Escaped {
                n: 1,
                norm_at_escape: 1e150
            }
        );
    }

    #[test]
    fn dimension_errors() {
        let sc = Table2D::complex().to_structure_constants();
        let r = EscapeRadius::uncertified(10.0);
        let bad = Element::zero(3);
        assert_eq!(
            classify_orbit(&sc, &bad, &el(0.0, 0.0), &r, 1, Threshold::Julia),
            Err(DynamicsError::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
        assert!(orbit_trace(&sc, &el(0.0, 0.0), &bad, 1).is_err());
        assert_eq!(
            classify_orbit(&sc, &el(0.0, 0.0), &el(0.0, 0.0), &r, 0, Threshold::Julia),
            Err(DynamicsError::ZeroIterations)
        );
    }

    #[test]
    fn trace_line_format() {
        assert_eq!(
            format_trace_line(2, &el(3.0, -4.0)),
            "n= 2  coords= 3.0000000000000000e0 -4.0000000000000000e0  norm= 5.0000000000000000e0"
        );
    }
}
