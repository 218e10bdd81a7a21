use super::mismatch;
use crate::error::{Error, Result};
use crate::grading::{Grading, ParityRule, Rational};
use crate::linalg::SparseMatrix;
use crate::statespace::StateSpace;
use crate::superalg::{coproduct_left, is_graded_iso, GradedIso};
use crate::surface::open_pants;

/// Signs relating the canonical arcs of the open pants to the arcs that
/// match the coproduct: arc `i` (1-based) is flipped when `p - i` is odd.
pub fn pants_arc_signs(p: usize) -> Vec<i64> {
    (1..=p).map(|i| if (p - i) % 2 == 0 { 1 } else { -1 }).collect()
}

/// `Z(P_p)` as the bimodule `A(1) → A(p)` of the coproduct `E ↦ Σ E_i`.
///
/// Needs unit slope on the rank of `H1` and a linear parity rule that
/// ignores the number of `S+` intervals, so that the pants sit in degree
/// `-p` with parity `p`.
pub fn pants_iso(p: usize, grading: &Grading) -> Result<GradedIso> {
    let unit_slope = grading.shift.a1 == Rational::from_integer(1.into());
    let linear = matches!(grading.parity, ParityRule::Linear(n) if !n.n3);
    if !unit_slope || !linear {
        return Err(Error::ParameterConstraintViolated(
            "the pants isomorphism needs a1 = 1 and a linear parity rule with n3 = 0".into(),
        ));
    }
    let s = StateSpace::build(&open_pants(p), grading)?;
    let target = coproduct_left(p);
    let signs = pants_arc_signs(p);
    let full = (1u32 << p) - 1;
    let cols = s
        .monomials
        .masks()
        .iter()
        .map(|&mask| {
            let sign: i64 = (0..p).filter(|i| mask >> i & 1 == 1).map(|i| signs[i]).product();
            vec![(s.monomials.index_of(full & !mask), sign)]
        })
        .collect();
    let phi = SparseMatrix::from_columns(target.dim(), cols);
    is_graded_iso(&phi, &s.bimodule()?, &target).map_err(|failure| mismatch(format!("pants P_{p}: {failure}")))
}
