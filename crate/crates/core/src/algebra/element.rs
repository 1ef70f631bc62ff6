use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

/// Coordinates of an algebra element in the algebra's fixed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Element(Vec<f64>);

/// The g-induced norm `sqrt(Σ u_i²)`: the Euclidean norm in which the basis
/// is orthonormal.
pub fn g_norm(coords: &[f64]) -> f64 {
    norm_sq(coords).sqrt()
}

#[inline]
pub(crate) fn norm_sq(coords: &[f64]) -> f64 {
    let mut acc = 0.0;
    for x in coords {
        acc += x * x;
    }
    acc
}

impl Element {
    pub fn new(coords: Vec<f64>) -> Self {
        Self(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    /// The basis vector `e_i` (zero-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        g_norm(&self.0)
    }

    pub fn norm_sq(&self) -> f64 {
        norm_sq(&self.0)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0.0)
    }

    pub fn scale(&self, a: f64) -> Self {
        Self(self.0.iter().map(|x| a * x).collect())
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (self - other).norm()
    }
}

impl From<Vec<f64>> for Element {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

impl From<&[f64]> for Element {
    fn from(v: &[f64]) -> Self {
        Self(v.to_vec())
    }
}

impl Index<usize> for Element {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimensions differ");
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimensions differ");
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element(self.0.iter().map(|x| -x).collect())
    }
}

impl Mul<&Element> for f64 {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        rhs.scale(self)
    }
}

impl fmt::Display for Element {
    /// Comma-separated coordinates, shortest round-trip form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
