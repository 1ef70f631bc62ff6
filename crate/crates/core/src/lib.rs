//! Quadratic dynamics `f_c(u) = u² + c` over finite-dimensional real
//! nonassociative algebras.
//!
//! An algebra is given by its structure constants `α_ijk` (`e_i·e_j = Σ_k α_ijk e_k`)
//! and normed with the Euclidean norm that makes the chosen basis orthonormal.
//! The crate computes the constants the dynamics needs (the product bound `M`
//! and the square-inequality constant `η` with `‖u²‖ ≥ η‖u‖²`), turns them
//! into certified escape radii, classifies orbits, and renders escape-time
//! rasters of generalized filled Julia and Mandelbrot sets.
//!
//! ```
//! use hyperjulia::algebra::{Element, Table2D};
//! use hyperjulia::analysis::eta_closed_form_2d;
//! use hyperjulia::dynamics::{classify_orbit, escape_radius, Threshold};
//!
//! let complex = Table2D::complex();
//! let eta = eta_closed_form_2d(&complex).unwrap().certificate().unwrap().clone();
//! let c = Element::new(vec![1.0, 0.0]);
//! let radius = escape_radius(&eta, &c).unwrap();
//! let alg = complex.to_structure_constants();
//! let outcome = classify_orbit(&alg, &c, &Element::zero(2), &radius, 100, Threshold::Mandelbrot).unwrap();
//! assert_eq!(outcome.escape_index(), Some(3));
//! ```

pub mod algebra;
pub mod analysis;
pub mod cli;
pub mod dynamics;
mod poly;
pub mod raster;

pub use algebra::{AlgebraError, Element, StructureConstants, Table2D, TableFamily};
pub use analysis::{ClassificationReport, EtaCertificate, EtaMethod, EtaOutcome};
pub use dynamics::{EscapeRadius, OrbitOutcome, Threshold};
pub use raster::{EscapeGrid, RasterJob, RenderMode, SliceSpec, Window};
