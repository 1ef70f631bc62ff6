//! Two-dimensional multiplication tables in the normal forms used for
//! algebras with an idempotent `e₁`.
//!
//! Every family except [`TableFamily::General`] has `e₁² = e₁`. The products
//! `e₁e₂ = a₁₂e₁ + b₁₂e₂` and `e₂e₁ = a₂₁e₁ + b₂₁e₂` are free, as is `e₂²` for
//! [`TableFamily::SingleIdempotent`]; the other families fix `e₂²`.

use std::fmt;
use std::str::FromStr;

use super::StructureConstants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableFamily {
    /// Table I: arbitrary products, no idempotent assumed.
    General,
    /// Table II: `e₁² = e₁`, `e₂² = a₂₂e₁ + b₂₂e₂`.
    SingleIdempotent,
    /// Table III: `e₂² = −e₁`.
    MinusUnit,
    /// Table IV: `e₂² = e₁`.
    PlusUnit,
    /// Table V: `e₂² = 0`.
    Nilpotent,
    /// Table VI: `e₂² = e₂`.
    TwoIdempotents,
}

impl TableFamily {
    pub const ALL: [TableFamily; 6] = [
        TableFamily::General,
        TableFamily::SingleIdempotent,
        TableFamily::MinusUnit,
        TableFamily::PlusUnit,
        TableFamily::Nilpotent,
        TableFamily::TwoIdempotents,
    ];

    /// Roman-numeral table label, `I` through `VI`.
    pub fn numeral(self) -> &'static str {
        match self {
            TableFamily::General => "I",
            TableFamily::SingleIdempotent => "II",
            TableFamily::MinusUnit => "III",
            TableFamily::PlusUnit => "IV",
            TableFamily::Nilpotent => "V",
            TableFamily::TwoIdempotents => "VI",
        }
    }

    /// The fixed `e₂²` cell `(a₂₂, b₂₂)`, if the family has one.
    pub fn fixed_e2_square(self) -> Option<(f64, f64)> {
        match self {
            TableFamily::MinusUnit => Some((-1.0, 0.0)),
            TableFamily::PlusUnit => Some((1.0, 0.0)),
            TableFamily::Nilpotent => Some((0.0, 0.0)),
            TableFamily::TwoIdempotents => Some((0.0, 1.0)),
            TableFamily::General | TableFamily::SingleIdempotent => None,
        }
    }
}

impl fmt::Display for TableFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.numeral())
    }
}

impl FromStr for TableFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        TableFamily::ALL
            .into_iter()
            .find(|f| f.numeral().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown table family `{s}` (expected I, II, III, IV, V or VI)"))
    }
}

/// A 2-D multiplication table. Cells are `(e₁-coefficient, e₂-coefficient)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table2D {
    family: TableFamily,
    a11: f64,
    b11: f64,
    a12: f64,
    b12: f64,
    a21: f64,
    b21: f64,
    a22: f64,
    b22: f64,
}

impl Table2D {
    /// Table in one of the idempotent normal forms. For families III–VI the
    /// `e₂²` arguments are ignored and the fixed cell is stored instead.
    /// `General` gets `e₁² = 0`; use [`Table2D::general`] to set it.
    pub fn new(
        family: TableFamily,
        a12: f64,
        b12: f64,
        a21: f64,
        b21: f64,
        a22: f64,
        b22: f64,
    ) -> Self {
        let (a22, b22) = family.fixed_e2_square().unwrap_or((a22, b22));
        let (a11, b11) = if family == TableFamily::General {
            (0.0, 0.0)
        } else {
            (1.0, 0.0)
        };
        Self {
            family,
            a11,
            b11,
            a12,
            b12,
            a21,
            b21,
            a22,
            b22,
        }
    }

    /// Table I with every cell free.
    #[allow(clippy::too_many_arguments)]
    pub fn general(
        a11: f64,
        b11: f64,
        a12: f64,
        b12: f64,
        a21: f64,
        b21: f64,
        a22: f64,
        b22: f64,
    ) -> Self {
        Self {
            family: TableFamily::General,
            a11,
            b11,
            a12,
            b12,
            a21,
            b21,
            a22,
            b22,
        }
    }

    /// Off-diagonal products chosen so that `A = a₁₂ + a₂₁` and
    /// `B = b₁₂ + b₂₁` take the given values (`e₁e₂ = ½(A, B) = e₂e₁`).
    pub fn with_sums(family: TableFamily, a: f64, b: f64, a22: f64, b22: f64) -> Self {
        Self::new(family, a / 2.0, b / 2.0, a / 2.0, b / 2.0, a22, b22)
    }

    /// Complex numbers `1 = e₁, i = e₂`: Table III with `A = 0, B = 2`.
    pub fn complex() -> Self {
        Self::new(TableFamily::MinusUnit, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0)
    }

    /// Perplex (hyperbolic) numbers, `i² = 1`: Table IV with `A = 0, B = 2`.
    pub fn perplex() -> Self {
        Self::new(TableFamily::PlusUnit, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0)
    }

    /// Dual numbers, `i² = 0`: Table V with `A = 0, B = 2`.
    pub fn dual() -> Self {
        Self::new(TableFamily::Nilpotent, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0)
    }

    pub fn family(&self) -> TableFamily {
        self.family
    }

    /// `A = a₁₂ + a₂₁`.
    pub fn a_sum(&self) -> f64 {
        self.a12 + self.a21
    }

    /// `B = b₁₂ + b₂₁`.
    pub fn b_sum(&self) -> f64 {
        self.b12 + self.b21
    }

    /// The cell `e_i · e_j` for `i, j ∈ {1, 2}`.
    pub fn cell(&self, i: usize, j: usize) -> (f64, f64) {
        match (i, j) {
            (1, 1) => (self.a11, self.b11),
            (1, 2) => (self.a12, self.b12),
            (2, 1) => (self.a21, self.b21),
            (2, 2) => (self.a22, self.b22),
            _ => panic!("table cell ({i}, {j}) out of range"),
        }
    }

    pub fn e1_square(&self) -> (f64, f64) {
        self.cell(1, 1)
    }

    pub fn e2_square(&self) -> (f64, f64) {
        self.cell(2, 2)
    }

    pub fn to_structure_constants(&self) -> StructureConstants {
        let mut alpha = vec![0.0; 8];
        for i in 0..2 {
            for j in 0..2 {
                let (a, b) = self.cell(i + 1, j + 1);
                alpha[(i * 2 + j) * 2] = a;
                alpha[(i * 2 + j) * 2 + 1] = b;
            }
        }
        StructureConstants::new(2, alpha).expect("2-D table with finite cells")
    }

    /// Reads a 2-D table back, detecting the most specific family:
    /// `e₁² = e₁` selects II–VI by the `e₂²` cell, anything else is Table I.
    /// Returns `None` for other dimensions.
    pub fn from_structure_constants(sc: &StructureConstants) -> Option<Self> {
        if sc.dim() != 2 {
            return None;
        }
        let cell = |i: usize, j: usize| (sc.get(i, j, 0), sc.get(i, j, 1));
        let (a11, b11) = cell(0, 0);
        let (a12, b12) = cell(0, 1);
        let (a21, b21) = cell(1, 0);
        let (a22, b22) = cell(1, 1);
        if (a11, b11) != (1.0, 0.0) {
            return Some(Self::general(a11, b11, a12, b12, a21, b21, a22, b22));
        }
        let family = [
            TableFamily::MinusUnit,
            TableFamily::PlusUnit,
            TableFamily::Nilpotent,
            TableFamily::TwoIdempotents,
        ]
        .into_iter()
        .find(|f| f.fixed_e2_square() == Some((a22, b22)))
        .unwrap_or(TableFamily::SingleIdempotent);
        Some(Self::new(family, a12, b12, a21, b21, a22, b22))
    }

    /// The same products relabelled as Table II (or Table I).
    pub fn as_single_idempotent(&self) -> Self {
        match self.family {
            TableFamily::General => *self,
            _ => Self {
                family: TableFamily::SingleIdempotent,
                ..*self
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Element;
    use proptest::prelude::*;

    #[test]
    fn named_systems_have_a_zero_b_two() {
        for t in [Table2D::complex(), Table2D::perplex(), Table2D::dual()] {
            assert_eq!((t.a_sum(), t.b_sum()), (0.0, 2.0));
        }
        assert_eq!(Table2D::complex().family(), TableFamily::MinusUnit);
        assert_eq!(Table2D::dual().family(), TableFamily::Nilpotent);
    }

    #[test]
    fn split_table_six() {
        let t = Table2D::new(TableFamily::TwoIdempotents, 0.0, 0.0, 0.0, 0.0, 7.0, 7.0);
        assert_eq!((t.a_sum(), t.b_sum()), (0.0, 0.0));
        let sc = t.to_structure_constants();
        let e1 = Element::basis(2, 0);
        let e2 = Element::basis(2, 1);
        assert_eq!(sc.mul(&e1, &e1).unwrap(), e1);
        assert_eq!(sc.mul(&e2, &e2).unwrap(), e2);
        assert!(sc.mul(&e1, &e2).unwrap().is_zero());
        assert!(sc.mul(&e2, &e1).unwrap().is_zero());
    }

    #[test]
    fn family_numerals_parse() {
        for f in TableFamily::ALL {
            assert_eq!(f.numeral().parse::<TableFamily>().unwrap(), f);
        }
        assert!("VII".parse::<TableFamily>().is_err());
    }

    #[test]
    fn detects_family_from_constants() {
        let t = Table2D::new(TableFamily::SingleIdempotent, 1.0, 2.0, 3.0, 4.0, 0.75, 1.0);
        let back = Table2D::from_structure_constants(&t.to_structure_constants()).unwrap();
        assert_eq!(back, t);
        let g = Table2D::general(0.5, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0);
        let back = Table2D::from_structure_constants(&g.to_structure_constants()).unwrap();
        assert_eq!(back.family(), TableFamily::General);
    }

    fn family() -> impl Strategy<Value = TableFamily> {
        prop::sample::select(TableFamily::ALL.to_vec())
    }

    proptest! {
        #[test]
        fn round_trip_reproduces_cells(
            f in family(),
            cells in prop::collection::vec(-10.0f64..10.0, 8),
        ) {
            let t = if f == TableFamily::General {
                Table2D::general(cells[0], cells[1], cells[2], cells[3], cells[4], cells[5], cells[6], cells[7])
            } else {
                Table2D::new(f, cells[2], cells[3], cells[4], cells[5], cells[6], cells[7])
            };
            prop_assert_eq!(t.a_sum(), t.cell(1, 2).0 + t.cell(2, 1).0);
            prop_assert_eq!(t.b_sum(), t.cell(1, 2).1 + t.cell(2, 1).1);
            let sc = t.to_structure_constants();
            for i in 1..=2 {
                for j in 1..=2 {
                    let (a, b) = t.cell(i, j);
                    prop_assert_eq!(sc.get(i - 1, j - 1, 0), a);
                    prop_assert_eq!(sc.get(i - 1, j - 1, 1), b);
                }
            }
            if f != TableFamily::General {
                prop_assert_eq!(t.e1_square(), (1.0, 0.0));
            }
        }
    }
}
