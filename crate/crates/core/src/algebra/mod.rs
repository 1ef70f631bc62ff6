//! Finite-dimensional real algebras given by multiplication tables.
//!
//! A [`StructureConstants`] value owns the dense table `α_ijk` of an
//! `m`-dimensional algebra with `e_i · e_j = Σ_k α_ijk e_k`. Multiplication is
//! the bilinear extension of the table, evaluated in a fixed order so that
//! products are bit-for-bit reproducible. Indices are zero-based in the API
//! and one-based in the text file format.

mod cayley_dickson;
mod element;
mod format;
mod table2d;

use sha2::{Digest, Sha256};
use thiserror::Error;

pub use cayley_dickson::{cayley_dickson, MAX_CAYLEY_DICKSON_LEVEL};
pub use element::{g_norm, Element};
pub(crate) use format::table2_from_values;
pub use format::{parse_algebra, write_algebra, ParseError};
pub use table2d::{Table2D, TableFamily};

/// Largest supported dimension (dense `m³` storage).
pub const MAX_DIM: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("algebra dimension {dim} is below the minimum of 2")]
    DimensionTooSmall { dim: usize },
    #[error("algebra dimension {dim} exceeds the supported maximum of {MAX_DIM}")]
    DimensionTooLarge { dim: usize },
    #[error("expected {expected} structure constants, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("structure constant alpha[{i}][{j}][{k}] is not finite")]
    NonFiniteEntry { i: usize, j: usize, k: usize },
    #[error("element of dimension {found} used with an algebra of dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("Cayley-Dickson level {level} is outside the supported range 1..={MAX_CAYLEY_DICKSON_LEVEL}")]
    LevelTooLarge { level: u32 },
}

/// One nonzero entry of the table, stored for the multiplication kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Term {
    i: usize,
    j: usize,
    coef: f64,
}

/// The multiplication table of a finite-dimensional real algebra.
///
/// Immutable once built; safe to share between threads.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    dim: usize,
    alpha: Vec<f64>,
    // nonzero entries grouped by output coordinate k, each group in (i, j) order
    terms: Vec<Term>,
    term_offsets: Vec<usize>,
}

/// The Cauchy–Schwarz product bound `M = sqrt(Σ_k Σ_i Σ_j α_ijk²)` with
/// `‖uv‖ ≤ M‖u‖‖v‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubmulConstant {
    pub value: f64,
    /// Set when every structure constant vanishes, so `M = 0` and the
    /// product is identically zero.
    pub degenerate: bool,
}

/// Validated constructor: `alpha` is laid out as `alpha[(i*m + j)*m + k]`.
pub fn make_algebra(dim: usize, alpha: Vec<f64>) -> Result<StructureConstants, AlgebraError> {
    StructureConstants::new(dim, alpha)
}

impl StructureConstants {
    pub fn new(dim: usize, alpha: Vec<f64>) -> Result<Self, AlgebraError> {
        if dim < 2 {
            return Err(AlgebraError::DimensionTooSmall { dim });
        }
        if dim > MAX_DIM {
            return Err(AlgebraError::DimensionTooLarge { dim });
        }
        let expected = dim * dim * dim;
        if alpha.len() != expected {
            return Err(AlgebraError::EntryCount {
                expected,
                found: alpha.len(),
            });
        }
        if let Some(pos) = alpha.iter().position(|a| !a.is_finite()) {
            let (i, j, k) = (pos / (dim * dim), (pos / dim) % dim, pos % dim);
            return Err(AlgebraError::NonFiniteEntry { i, j, k });
        }

        let mut terms = Vec::new();
        let mut term_offsets = Vec::with_capacity(dim + 1);
        for k in 0..dim {
            term_offsets.push(terms.len());
            for i in 0..dim {
                for j in 0..dim {
                    let coef = alpha[(i * dim + j) * dim + k];
                    if coef != 0.0 {
                        terms.push(Term { i, j, coef });
                    }
                }
            }
        }
        term_offsets.push(terms.len());

        Ok(Self {
            dim,
            alpha,
            terms,
            term_offsets,
        })
    }

    /// Builds a table from `f(i, j, k) = α_ijk`.
    pub fn from_fn(
        dim: usize,
        mut f: impl FnMut(usize, usize, usize) -> f64,
    ) -> Result<Self, AlgebraError> {
        let mut alpha = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    alpha.push(f(i, j, k));
                }
            }
        }
        Self::new(dim, alpha)
    }

    /// The zero-product algebra of dimension `dim`.
    pub fn zero(dim: usize) -> Result<Self, AlgebraError> {
        Self::new(dim, vec![0.0; dim * dim * dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `α_ijk`, zero-based.
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.alpha[(i * self.dim + j) * self.dim + k]
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// The product `e_i · e_j` as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Element {
        let start = (i * self.dim + j) * self.dim;
        Element::new(self.alpha[start..start + self.dim].to_vec())
    }

    pub fn mul(&self, u: &Element, v: &Element) -> Result<Element, AlgebraError> {
        self.check(u)?;
        self.check(v)?;
        let mut out = vec![0.0; self.dim];
        self.mul_into(u.coords(), v.coords(), &mut out);
        Ok(Element::new(out))
    }

    pub fn square(&self, u: &Element) -> Result<Element, AlgebraError> {
        self.mul(u, u)
    }

    /// Allocation-free kernel: `out_k = Σ_i Σ_j α_ijk u_i v_j`, accumulated
    /// sequentially with `i` outer and `j` inner. Zero coefficients are
    /// skipped; for finite inputs that can only change the sign of a zero.
    ///
    /// Slices must all have length `dim`.
    #[inline]
    pub fn mul_into(&self, u: &[f64], v: &[f64], out: &mut [f64]) {
        debug_assert!(u.len() == self.dim && v.len() == self.dim && out.len() == self.dim);
        for (k, slot) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for t in &self.terms[self.term_offsets[k]..self.term_offsets[k + 1]] {
                acc += t.coef * u[t.i] * v[t.j];
            }
            *slot = acc;
        }
    }

    pub fn weak_submul_constant(&self) -> SubmulConstant {
        let mut total = 0.0;
        for k in 0..self.dim {
            let mut inner = 0.0;
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let a = self.get(i, j, k);
                    inner += a * a;
                }
            }
            total += inner;
        }
        SubmulConstant {
            value: total.sqrt(),
            degenerate: total == 0.0,
        }
    }

    /// Short stable hash of the table, used in render metadata.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.dim as u64).to_le_bytes());
        for a in &self.alpha {
            hasher.update(a.to_bits().to_le_bytes());
        }
        hex::encode(&hasher.finalize()[..8])
    }

    pub fn check(&self, u: &Element) -> Result<(), AlgebraError> {
        if u.dim() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: u.dim(),
            });
        }
        Ok(())
    }
}

/// Free-function form of [`StructureConstants::mul`].
pub fn mul(
    algebra: &StructureConstants,
    u: &Element,
    v: &Element,
) -> Result<Element, AlgebraError> {
    algebra.mul(u, v)
}

/// Free-function form of [`StructureConstants::weak_submul_constant`].
pub fn weak_submul_constant(algebra: &StructureConstants) -> SubmulConstant {
    algebra.weak_submul_constant()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex_alpha() -> Vec<f64> {
        // e1² = e1, e1e2 = e2, e2e1 = e2, e2² = -e1
        let mut a = vec![0.0; 8];
        let idx = |i: usize, j: usize, k: usize| (i * 2 + j) * 2 + k;
        a[idx(0, 0, 0)] = 1.0;
        a[idx(0, 1, 1)] = 1.0;
        a[idx(1, 0, 1)] = 1.0;
        a[idx(1, 1, 0)] = -1.0;
        a
    }

    #[test]
    fn make_algebra_complex_is_table_three() {
        let sc = make_algebra(2, complex_alpha()).unwrap();
        let t = Table2D::from_structure_constants(&sc).unwrap();
        assert_eq!(t.family(), TableFamily::MinusUnit);
        assert_eq!(t.a_sum(), 0.0);
        assert_eq!(t.b_sum(), 2.0);
    }

    #[test]
    fn zero_algebra_is_valid() {
        let sc = make_algebra(2, vec![0.0; 8]).unwrap();
        let m = sc.weak_submul_constant();
        assert_eq!(m.value, 0.0);
        assert!(m.degenerate);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            make_algebra(1, vec![0.0]),
            Err(AlgebraError::DimensionTooSmall { dim: 1 })
        );
        assert_eq!(
            make_algebra(2, vec![0.0; 7]),
            Err(AlgebraError::EntryCount {
                expected: 8,
                found: 7
            })
        );
        let mut a = vec![0.0; 8];
        a[(1 * 2 + 0) * 2 + 1] = f64::NAN;
        assert_eq!(
            make_algebra(2, a),
            Err(AlgebraError::NonFiniteEntry { i: 1, j: 0, k: 1 })
        );
    }

    #[test]
    fn products_of_the_three_number_systems() {
        let complex = make_algebra(2, complex_alpha()).unwrap();
        let one_one = Element::new(vec![1.0, 1.0]);
        assert_eq!(
            complex.mul(&one_one, &one_one).unwrap().coords(),
            &[0.0, 2.0]
        );

        let i = Element::new(vec![0.0, 1.0]);
        let perplex = Table2D::perplex().to_structure_constants();
        assert_eq!(perplex.mul(&i, &i).unwrap().coords(), &[1.0, 0.0]);
        let dual = Table2D::dual().to_structure_constants();
        assert_eq!(dual.mul(&i, &i).unwrap().coords(), &[0.0, 0.0]);
    }

    #[test]
    fn mul_dimension_mismatch() {
        let sc = StructureConstants::zero(2).unwrap();
        let err = sc.mul(&Element::zero(3), &Element::zero(2)).unwrap_err();
        assert_eq!(
            err,
            AlgebraError::DimensionMismatch {
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn submul_constants_by_hand() {
        let complex = make_algebra(2, complex_alpha()).unwrap();
        assert_eq!(complex.weak_submul_constant().value, 2.0);
        let dual = Table2D::dual().to_structure_constants();
        assert_eq!(dual.weak_submul_constant().value, 3f64.sqrt());
        assert!(!dual.weak_submul_constant().degenerate);
    }

    #[test]
    fn fingerprint_distinguishes_tables() {
        let a = Table2D::complex().to_structure_constants();
        let b = Table2D::perplex().to_structure_constants();
        assert_eq!(a.fingerprint(), a.clone().fingerprint());
        assert_ne!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.fingerprint().len(), 16);
    }
}
