//! Norm constants and structural features the dynamics depends on.
//!
//! The central quantity is the square-inequality constant
//! `η = inf_{‖u‖=1} ‖u²‖`. By degree-2 homogeneity of squaring,
//! `‖u²‖ ≥ η‖u‖²` holds for every `u` exactly when it holds on the unit
//! sphere, and no larger constant works. `η > 0` is what makes escape radii
//! certifiable; `η = 0` happens precisely when some nonzero `u` has `u² = 0`
//! (the sphere is compact).

mod eta;
mod plane;
mod report;
pub mod sphere;

use std::fmt;

use thiserror::Error;

use crate::algebra::{Element, TableFamily};

pub use eta::{
    eta_certificate, eta_closed_form_2d, eta_sampled, h_ratio, h_table_formula,
    has_cayley_dickson_square, square_defect, square_inequality_hypothesis, square_property_check,
    SquarePropertyVerdict, CLOSED_FORM_SAMPLES, DEFAULT_ETA_BUDGET,
};
pub use plane::{
    canonicalize, find_idempotents_2d, find_nilpotents_2d, Canonical, IdempotentLine, Idempotents,
    NilpotentDirection,
};
pub use report::{classify, classify_with_budget, ClassificationReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("operation is not defined for table family {0}")]
    UnsupportedFamily(TableFamily),
    #[error("no basis {{e1, f2}} with f2² = ±e1: {reason}")]
    NotNormalizable { reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EtaMethod {
    /// Minimum of `‖u²‖` over the unit circle of a 2-D table, by dense angle
    /// sampling plus golden-section refinement.
    ClosedForm2D,
    /// Sampling minimum only; carries no lower-bound guarantee, so the
    /// certificate's `eta` is 0.
    Sampled,
    /// `max(0, sampled_min − L·δ)` over a grid with covering radius `δ`,
    /// using `‖u² − v²‖ ≤ 2M‖u − v‖` on the unit sphere.
    CertifiedLowerBound,
    /// The square map matches `(a₀² − Σa_k²)e₀ + Σ2a₀a_k e_k` coefficient by
    /// coefficient, which forces `‖u²‖ = ‖u‖²` and `η = 1` exactly.
    SquareExpansion,
}

impl EtaMethod {
    pub fn label(self) -> &'static str {
        match self {
            EtaMethod::ClosedForm2D => "closed-form-2d",
            EtaMethod::Sampled => "sampled",
            EtaMethod::CertifiedLowerBound => "certified-lower-bound",
            EtaMethod::SquareExpansion => "square-expansion",
        }
    }
}

impl fmt::Display for EtaMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A value `η` with `‖u²‖ ≥ η‖u‖²` and how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaCertificate {
    pub eta: f64,
    pub method: EtaMethod,
    /// Smallest `‖u²‖` seen over the unit-sphere samples.
    pub sampled_min: f64,
    pub sample_count: u64,
    /// δ: distance bound from any unit vector to the nearest sample.
    pub covering_radius: f64,
    /// L = 2M, the Lipschitz constant of `u ↦ ‖u²‖` on the unit sphere.
    pub lipschitz_bound: f64,
    /// Unit vector attaining `sampled_min` (first one in sample order).
    pub minimizer: Element,
}

impl EtaCertificate {
    /// Whether escape radii derived from this certificate are proofs.
    pub fn is_certified(&self) -> bool {
        self.eta > 0.0 && self.method != EtaMethod::Sampled
    }
}

/// Result of a square-inequality computation.
#[derive(Debug, Clone, PartialEq)]
pub enum EtaOutcome {
    Bound(EtaCertificate),
    /// A nonzero `witness` with `witness² = 0`, so no `η > 0` exists.
    NoSquareInequality {
        witness: Element,
    },
}

impl EtaOutcome {
    pub fn certificate(&self) -> Option<&EtaCertificate> {
        match self {
            EtaOutcome::Bound(c) => Some(c),
            EtaOutcome::NoSquareInequality { .. } => None,
        }
    }

    /// `η`, or 0 when the square inequality fails.
    pub fn eta(&self) -> f64 {
        self.certificate().map_or(0.0, |c| c.eta)
    }
}
