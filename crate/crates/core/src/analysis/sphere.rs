//! Deterministic point sets on the unit sphere with a provable covering
//! radius.
//!
//! Points are the grid `{−1, −1 + 2/n, …, 1}^{m−1}` on each face `x_i = 1`
//! of the cube `[−1, 1]^m`, projected radially onto the sphere. Only the
//! `m` positive faces are used: the square map is even, so `u` and `−u`
//! give the same `‖u²‖` and the antipodal half of the sphere is covered by
//! symmetry.
//!
//! Covering bound: a unit vector `u` whose largest coordinate (in absolute
//! value, after flipping sign) is `u_i > 0` maps to `p = u / u_i` on face
//! `i`. The nearest grid point `g` is within `1/n` in each of the `m − 1`
//! free coordinates, so `‖p − g‖ ≤ √(m−1)/n`. Radial projection of points
//! with norm ≥ 1 onto the unit sphere is the metric projection onto the
//! unit ball, which is nonexpansive, hence `‖u − g/‖g‖‖ ≤ √(m−1)/n`.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubeSphereGrid {
    dim: usize,
    /// Subdivisions per face edge.
    divisions: usize,
}

impl CubeSphereGrid {
    pub fn new(dim: usize, divisions: usize) -> Self {
        assert!(dim >= 2 && divisions >= 1);
        Self { dim, divisions }
    }

    /// Finest grid whose point count does not exceed `budget`, or `None`
    /// when even one subdivision does not fit.
    pub fn with_budget(dim: usize, budget: u64) -> Option<Self> {
        let count = |n: u64| -> Option<u64> {
            (n + 1)
                .checked_pow(u32::try_from(dim - 1).ok()?)?
                .checked_mul(dim as u64)
        };
        if count(1).is_none_or(|c| c > budget) {
            return None;
        }
        let (mut lo, mut hi) = (1u64, budget.max(1));
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            match count(mid) {
                Some(c) if c <= budget => lo = mid,
                _ => hi = mid - 1,
            }
        }
        Some(Self::new(dim, lo as usize))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> u64 {
        (self.dim as u64) * ((self.divisions + 1) as u64).pow((self.dim - 1) as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Upper bound on the distance from any unit vector (up to sign) to the
    /// nearest grid point.
    pub fn covering_radius(&self) -> f64 {
        ((self.dim - 1) as f64).sqrt() / self.divisions as f64
    }

    /// Calls `visit(index, unit_point)` for every point in a fixed order.
    pub fn for_each(&self, mut visit: impl FnMut(u64, &[f64])) {
        let m = self.dim;
        let n = self.divisions;
        let step = 2.0 / n as f64;
        let mut digits = vec![0usize; m - 1];
        let mut point = vec![0.0; m];
        let mut index = 0u64;
        for face in 0..m {
            digits.fill(0);
            loop {
                let mut d = 0;
                let mut norm_sq = 0.0;
                for (c, slot) in point.iter_mut().enumerate() {
                    *slot = if c == face {
                        1.0
                    } else {
                        let v = -1.0 + step * digits[d] as f64;
                        d += 1;
                        v
                    };
                    norm_sq += *slot * *slot;
                }
                let inv = 1.0 / norm_sq.sqrt();
                for slot in point.iter_mut() {
                    *slot *= inv;
                }
                visit(index, &point);
                index += 1;

                // mixed-radix increment
                let mut pos = 0;
                loop {
                    if pos == m - 1 {
                        break;
                    }
                    digits[pos] += 1;
                    if digits[pos] <= n {
                        break;
                    }
                    digits[pos] = 0;
                    pos += 1;
                }
                if pos == m - 1 {
                    break;
                }
            }
        }
    }
}
