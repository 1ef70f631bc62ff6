//! Cayley–Dickson doubling over the reals.
//!
//! Elements of level `n` are pairs of level `n-1` elements, multiplied by
//! `(a, b)(c, d) = (ac − d̄b, da + bc̄)` with conjugation `(a, b)̄ = (ā, −b)`.
//! Level 1 is the complex numbers, level 2 the quaternions, level 3 the
//! octonions. Every level squares as
//! `u² = (a₀² − Σ_{k≥1} a_k²) e₀ + Σ_{k≥1} 2a₀a_k e_k`.

use super::{AlgebraError, StructureConstants};

/// Level 6 gives dimension 64, the largest dense table supported.
pub const MAX_CAYLEY_DICKSON_LEVEL: u32 = 6;

/// The `2ⁿ`-dimensional Cayley–Dickson table, basis `e₀ = 1, e₁, …`.
///
/// Level 0 (the reals) is one-dimensional and rejected like any other
/// one-dimensional algebra.
pub fn cayley_dickson(level: u32) -> Result<StructureConstants, AlgebraError> {
    if level > MAX_CAYLEY_DICKSON_LEVEL {
        return Err(AlgebraError::LevelTooLarge { level });
    }
    if level == 0 {
        return Err(AlgebraError::DimensionTooSmall { dim: 1 });
    }
    let dim = 1usize << level;
    let mut alpha = vec![0.0; dim * dim * dim];
    let mut ei = vec![0.0; dim];
    let mut ej = vec![0.0; dim];
    for i in 0..dim {
        ei.fill(0.0);
        ei[i] = 1.0;
        for j in 0..dim {
            ej.fill(0.0);
            ej[j] = 1.0;
            let prod = cd_mul(&ei, &ej);
            let start = (i * dim + j) * dim;
            alpha[start..start + dim].copy_from_slice(&prod);
        }
    }
    StructureConstants::new(dim, alpha)
}

fn conj(x: &[f64]) -> Vec<f64> {
    if x.len() == 1 {
        return x.to_vec();
    }
    let h = x.len() / 2;
    let mut out = conj(&x[..h]);
    out.extend(x[h..].iter().map(|v| -v));
    out
}

fn cd_mul(x: &[f64], y: &[f64]) -> Vec<f64> {
    if x.len() == 1 {
        return vec![x[0] * y[0]];
    }
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c);
    let db = cd_mul(&conj(d), b);
    let da = cd_mul(d, a);
    let bc = cd_mul(b, &conj(c));
    let mut out: Vec<f64> = ac.iter().zip(&db).map(|(p, q)| p - q).collect();
    out.extend(da.iter().zip(&bc).map(|(p, q)| p + q));
    out
}
