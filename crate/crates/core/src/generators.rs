//! Realizations of the standard generators `x_k` as piecewise-linear maps.
//!
//! The rectangle-diagram pictures of `x0` and `x1` fix the maps only up to
//! the choice of composition order. [`GeneratorTable::calibrate`] resolves it
//! by testing the two defining relations of the finite presentation together
//! with two support facts that pin the convention:
//!
//! * `x1` is the identity on `[0, 1/2]`;
//! * `x0 x1 x0⁻²` is the identity on `[1/2, 1]`.
//!
//! Under the right action the rectangle maps fail these checks and their
//! inverses pass; inverting every generator is the same as reversing the
//! composition order, since `f ↦ f⁻¹` is an anti-isomorphism.

use std::sync::OnceLock;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::plmap::PlMap;

pub type Element = PlMap<Dyadic>;

fn dyadic_map(points: &[(i64, u32, i64, u32)]) -> Element {
    PlMap::from_breakpoints(
        points
            .iter()
            .map(|&(xn, xe, yn, ye)| (Dyadic::new(xn, xe), Dyadic::new(yn, ye)))
            .collect(),
    )
    .expect("hard-coded generator is a valid PL map")
}

/// `x0` as drawn in a rectangle diagram: slopes 1/2, 1, 2.
pub fn rectangle_x0() -> Element {
    dyadic_map(&[(0, 0, 0, 0), (1, 1, 1, 2), (3, 2, 1, 1), (1, 0, 1, 0)])
}

/// `x1` as drawn in a rectangle diagram: identity on `[0,1/2]`, a half-scale
/// copy of [`rectangle_x0`] on `[1/2,1]`.
pub fn rectangle_x1() -> Element {
    dyadic_map(&[(0, 0, 0, 0), (1, 1, 1, 1), (3, 2, 5, 3), (7, 3, 3, 2), (1, 0, 1, 0)])
}

/// Which composition convention a table realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Rectangle maps used as drawn.
    AsDrawn,
    /// Rectangle maps inverted, i.e. composition order reversed.
    Flipped,
}

/// A named pass/fail line from the calibration suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub name: &'static str,
    pub passed: bool,
}

pub const RELATION_NAMES: [&str; 2] = [
    "x1^(x0^2) = x1^(x0 x1)",
    "x1^(x0^3) = x1^(x0^2 x1)",
];

pub const SUPPORT_FACT_NAMES: [&str; 2] = [
    "x1 is the identity on [0,1/2]",
    "x0 x1 x0^-2 is the identity on [1/2,1]",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTable {
    x0: Element,
    x1: Element,
    orientation: Orientation,
}

impl GeneratorTable {
    pub fn from_maps(x0: Element, x1: Element, orientation: Orientation) -> Self {
        GeneratorTable { x0, x1, orientation }
    }

    pub fn rectangle(orientation: Orientation) -> Self {
        match orientation {
            Orientation::AsDrawn => Self::from_maps(rectangle_x0(), rectangle_x1(), orientation),
            Orientation::Flipped => Self::from_maps(
                rectangle_x0().inverse(),
                rectangle_x1().inverse(),
                orientation,
            ),
        }
    }

    /// Tries the rectangle maps as drawn, then flipped once; returns the
    /// first table that passes every calibration check.
    pub fn calibrate() -> Result<Self> {
        for orientation in [Orientation::AsDrawn, Orientation::Flipped] {
            let table = Self::rectangle(orientation);
            if table.calibration_lines().iter().all(|l| l.passed) {
                return Ok(table);
            }
        }
        let failing = Self::rectangle(Orientation::Flipped)
            .calibration_lines()
            .into_iter()
            .filter(|l| !l.passed)
            .map(|l| l.name)
            .collect::<Vec<_>>();
        Err(Error::CommutationFailed(format!(
            "no composition order satisfies the calibration checks; failing: {failing:?}"
        )))
    }

    /// The calibrated table, computed once per process.
    pub fn standard() -> &'static GeneratorTable {
        static TABLE: OnceLock<GeneratorTable> = OnceLock::new();
        TABLE.get_or_init(|| Self::calibrate().expect("generator calibration"))
    }

    /// A deliberately broken table (x1 replaced by x1²) for exercising the
    /// failure paths of the check suite.
    pub fn corrupted() -> Self {
        let good = Self::standard();
        Self::from_maps(good.x0.clone(), good.x1.pow(2), good.orientation)
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn x0(&self) -> &Element {
        &self.x0
    }

    pub fn x1(&self) -> &Element {
        &self.x1
    }

    /// `x_k`; for `k >= 1` this is `x0^-(k-1) x1 x0^(k-1)`.
    pub fn generator(&self, k: usize) -> Element {
        match k {
            0 => self.x0.clone(),
            _ => {
                let shift = self.x0.pow(k as i64 - 1);
                self.x1.conjugate_by(&shift)
            }
        }
    }

    /// `v = x0 x1 x0⁻²`.
    pub fn standard_v(&self) -> Element {
        self.x0.then(&self.x1).then(&self.x0.inverse().pow(2))
    }

    /// Both relations of the two-generator presentation, checked structurally.
    pub fn relation_lines(&self) -> Vec<CheckLine> {
        let (x0, x1) = (&self.x0, &self.x1);
        let lhs1 = x1.conjugate_by(&x0.pow(2));
        let rhs1 = x1.conjugate_by(&x0.then(x1));
        let lhs2 = x1.conjugate_by(&x0.pow(3));
        let rhs2 = x1.conjugate_by(&x0.pow(2).then(x1));
        vec![
            CheckLine { name: RELATION_NAMES[0], passed: lhs1 == rhs1 },
            CheckLine { name: RELATION_NAMES[1], passed: lhs2 == rhs2 },
        ]
    }

    pub fn support_fact_lines(&self) -> Vec<CheckLine> {
        let half = Dyadic::half();
        let zero = Dyadic::from_int(0);
        let one = Dyadic::from_int(1);
        let x1_low = self.x1.is_identity_on(&zero, &half).unwrap_or(false);
        let v_high = self.standard_v().is_identity_on(&half, &one).unwrap_or(false);
        vec![
            CheckLine { name: SUPPORT_FACT_NAMES[0], passed: x1_low },
            CheckLine { name: SUPPORT_FACT_NAMES[1], passed: v_high },
        ]
    }

    pub fn calibration_lines(&self) -> Vec<CheckLine> {
        let mut lines = self.relation_lines();
        lines.extend(self.support_fact_lines());
        lines
    }
}

/// `x_k` from the calibrated table.
pub fn generator_map(k: usize) -> Element {
    GeneratorTable::standard().generator(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn drawn_orientation_fails_calibration() {
        let lines = GeneratorTable::rectangle(Orientation::AsDrawn).calibration_lines();
        assert!(lines.iter().any(|l| !l.passed));
    }

    #[test]
    fn calibration_flips_once() {
        let table = GeneratorTable::calibrate().unwrap();
        assert_eq!(table.orientation(), Orientation::Flipped);
        assert!(table.calibration_lines().iter().all(|l| l.passed));
    }

    #[test]
    fn calibrated_x0_moves_half_up() {
        // Flipped x0: slopes 2, 1, 1/2 on [0,1/4], [1/4,1/2], [1/2,1].
        let x0 = generator_map(0);
        assert_eq!(x0.apply(&d("1/2")).unwrap(), d("3/4"));
        assert_eq!(x0.apply(&d("1/4")).unwrap(), d("1/2"));
        assert_eq!(x0.slopes(), &[1, 0, -1]);
    }

    #[test]
    fn x1_fixes_lower_half() {
        let x1 = generator_map(1);
        assert_eq!(x1.apply(&d("1/4")).unwrap(), d("1/4"));
        assert!(x1.is_identity_on(&d("0"), &d("1/2")).unwrap());
        assert!(!x1.is_identity_on(&d("0"), &d("1")).unwrap());
        let s = x1.support();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].lo, d("1/2").to_rational());
    }

    #[test]
    fn x2_is_supported_above_three_quarters() {
        let x2 = generator_map(2);
        assert!(x2.is_identity_on(&d("0"), &d("3/4")).unwrap());
        assert!(!x2.is_identity());
        // x_k is supported on (1 - 2^-k, 1).
        for k in 1..=6 {
            let xk = generator_map(k);
            let s = xk.support();
            assert_eq!(s.len(), 1, "x{k}");
            assert_eq!(s[0].lo, (Dyadic::from_int(1) - Dyadic::pow2(-(k as i64))).to_rational());
        }
    }

    #[test]
    fn infinite_presentation_relations() {
        let xs: Vec<Element> = (0..=7).map(generator_map).collect();
        for j in 1..=6 {
            for i in 0..j {
                assert_eq!(xs[j].then(&xs[i]), xs[i].then(&xs[j + 1]), "x{j} x{i} = x{i} x{}", j + 1);
            }
        }
    }

    #[test]
    fn corrupted_table_fails_a_relation() {
        let lines = GeneratorTable::corrupted().relation_lines();
        assert!(lines.iter().any(|l| !l.passed));
    }
}
