//! Closed-form graded dimensions for the closed-up surfaces `F_{g,p}`.

use std::fmt;

use crate::grading::{rat, Rational};
use crate::laurent::LaurentPoly;

/// Graded dimension formulas for `F_{g,p}`. Only `Modified` describes the
/// state spaces computed here; the others are for generic local systems
/// and are printed for comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReferenceFormula {
    /// `(-1)^g t^{-p/2 + 1/2} (t^{1/2} - t^{-1/2})^h` with `h = 2g - 1 + p`.
    Modified,
    /// `(-1)^{g-1} t^{-p/2} (t^{1/2} - t^{-1/2})^h`.
    Unmodified,
    /// `t^N (t^{1/2} - t^{-1/2})^{2g - 2 + p}` with `N = Σ (n_i - 1/2)`.
    ChernSimonsGeneric,
    /// `(-1)^{g-1} t^N (t^{1/2} - t^{-1/2})^{2g - 2 + p}`.
    NonSemisimpleGeneric,
}

impl ReferenceFormula {
    pub const ALL: [ReferenceFormula; 4] = [
        ReferenceFormula::Modified,
        ReferenceFormula::Unmodified,
        ReferenceFormula::ChernSimonsGeneric,
        ReferenceFormula::NonSemisimpleGeneric,
    ];

    /// Whether the formula concerns generic local systems, which these
    /// state spaces do not model.
    pub fn is_generic(self) -> bool {
        matches!(
            self,
            ReferenceFormula::ChernSimonsGeneric | ReferenceFormula::NonSemisimpleGeneric
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            ReferenceFormula::Modified => "modified",
            ReferenceFormula::Unmodified => "unmodified",
            ReferenceFormula::ChernSimonsGeneric => "chern-simons-generic",
            ReferenceFormula::NonSemisimpleGeneric => "non-semisimple-generic",
        }
    }

    /// Evaluates the formula. `labels` are the puncture labels `n_i` used by
    /// the generic formulas (missing labels count as 0). Returns `None` when
    /// the exponent of `t^{1/2} - t^{-1/2}` would be negative.
    pub fn evaluate(self, g: u32, p: u32, labels: &[i64]) -> Option<LaurentPoly> {
        let sign = |e: i64| if e.rem_euclid(2) == 0 { 1 } else { -1 };
        let g = i64::from(g);
        let p_i = i64::from(p);
        let h = 2 * g - 1 + p_i;
        let n: Rational = (0..p as usize)
            .map(|i| Rational::from_integer(labels.get(i).copied().unwrap_or(0).into()) - rat(1, 2))
            .sum();
        let (c, shift, power) = match self {
            ReferenceFormula::Modified => (sign(g), rat(1 - p_i, 2), h),
            ReferenceFormula::Unmodified => (sign(g - 1), rat(-p_i, 2), h),
            ReferenceFormula::ChernSimonsGeneric => (1, n, h - 1),
            ReferenceFormula::NonSemisimpleGeneric => (sign(g - 1), n, h - 1),
        };
        let power = u32::try_from(power).ok()?;
        Some(LaurentPoly::monomial(c, shift) * LaurentPoly::half_difference().pow(power))
    }
}

impl fmt::Display for ReferenceFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `(-1)^g t^{-p/2 + 1/2} (t^{1/2} - t^{-1/2})^{2g - 1 + p}` for `p >= 1`.
pub fn reference_dimension_fgp(g: u32, p: u32) -> LaurentPoly {
    assert!(p >= 1, "the formula needs at least one boundary circle");
    ReferenceFormula::Modified
        .evaluate(g, p, &[])
        .expect("2g - 1 + p is nonnegative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::poly;

    #[test]
    fn small_values() {
        assert_eq!(reference_dimension_fgp(0, 1), LaurentPoly::one());
        assert_eq!(reference_dimension_fgp(1, 1), poly(&[(-1, 1), (2, 0), (-1, -1)]));
    }

    #[test]
    fn integrality() {
        for g in 0..=3 {
            for p in 1..=4 {
                assert!(reference_dimension_fgp(g, p).exponents_integral());
                assert!(ReferenceFormula::NonSemisimpleGeneric
                    .evaluate(g, p, &[])
                    .is_none_or(|x| x.exponents_integral()));
            }
        }
        // the unmodified formula has half-integral powers for F_{0,2}
        assert!(!ReferenceFormula::Unmodified.evaluate(0, 2, &[]).unwrap().exponents_integral());
    }

    #[test]
    fn modified_is_minus_t_half_times_unmodified() {
        let minus_root = LaurentPoly::monomial(-1, rat(1, 2));
        for g in 0..=2 {
            for p in 1..=3 {
                let u = ReferenceFormula::Unmodified.evaluate(g, p, &[]).unwrap();
                assert_eq!(minus_root.clone() * u, reference_dimension_fgp(g, p));
            }
        }
    }
}
