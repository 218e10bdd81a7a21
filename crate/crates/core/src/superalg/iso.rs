use std::collections::BTreeMap;
use std::fmt;

use super::bimodule::{Bimodule, TensorProduct};
use crate::error::{Error, Result};
use crate::exterior::MonomialBasis;
use crate::grading::{format_rational, Rational};
use crate::linalg::{is_unimodular, SparseMatrix, SparseVec};

/// A verified isomorphism of graded bimodules: even, of degree 0,
/// unimodular on every graded block, and intertwining every generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIso {
    pub matrix: SparseMatrix,
    /// `(degree, parity, rank)` of each block, in increasing order.
    pub block_ranks: Vec<(Rational, u8, usize)>,
}

/// Why a matrix is not a graded isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoFailure {
    Shape(String),
    /// An entry joins basis elements of different degree or parity.
    BlockMismatch { source: usize, target: usize },
    NotUnimodular { degree: Rational, parity: u8 },
    Intertwining {
        side: &'static str,
        generator: usize,
        row: usize,
        col: usize,
        lhs: i64,
        rhs: i64,
    },
}

impl fmt::Display for IsoFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoFailure::Shape(s) => write!(f, "shape: {s}"),
            IsoFailure::BlockMismatch { source, target } => {
                write!(f, "block mismatch: basis {source} maps to basis {target} of another degree or parity")
            }
            IsoFailure::NotUnimodular { degree, parity } => {
                write!(f, "not unimodular on block degree {} parity {parity}", format_rational(degree))
            }
            IsoFailure::Intertwining {
                side,
                generator,
                row,
                col,
                lhs,
                rhs,
            } => write!(
                f,
                "{side} generator {generator}: (phi*E)[{row},{col}] = {lhs} but (E*phi)[{row},{col}] = {rhs}"
            ),
        }
    }
}

impl std::error::Error for IsoFailure {}

/// Checks that `phi` (columns indexed by the basis of `x`) is a graded
/// bimodule isomorphism from `x` to `y`.
pub fn is_graded_iso(phi: &SparseMatrix, x: &Bimodule, y: &Bimodule) -> std::result::Result<GradedIso, IsoFailure> {
    if phi.cols() != x.dim() || phi.rows() != y.dim() {
        return Err(IsoFailure::Shape(format!(
            "matrix is {}x{}, modules have ranks {} and {}",
            phi.rows(),
            phi.cols(),
            x.dim(),
            y.dim()
        )));
    }
    if x.left != y.left || x.right != y.right {
        return Err(IsoFailure::Shape(format!(
            "algebras (A({}), A({})) against (A({}), A({}))",
            x.left.generators, x.right.generators, y.left.generators, y.right.generators
        )));
    }
    let shift = &y.grades.base - &x.grades.base;
    if !shift.is_integer() && phi.nnz() > 0 {
        return Err(IsoFailure::Shape(format!(
            "base degrees differ by {}",
            format_rational(&shift)
        )));
    }
    let d: i64 = shift.to_integer().try_into().expect("degree shift fits in i64");
    let target_key = |c: usize| (x.grades.offsets[c] - d, x.grades.parities[c]);
    for c in 0..phi.cols() {
        for &(r, _) in phi.column(c) {
            if y.grades.block(r) != target_key(c) {
                return Err(IsoFailure::BlockMismatch { source: c, target: r });
            }
        }
    }
    let xb = x.grades.blocks();
    let yb = y.grades.blocks();
    let mut mapped: BTreeMap<(i64, u8), Vec<usize>> = BTreeMap::new();
    for (key, members) in &xb {
        mapped.insert((key.0 - d, key.1), members.clone());
    }
    if mapped.keys().ne(yb.keys()) {
        return Err(IsoFailure::Shape("graded pieces differ".into()));
    }
    let mut block_ranks = Vec::new();
    for (key, cols) in &mapped {
        let rows = &yb[key];
        let degree = y.grades.base.clone() + Rational::from_integer(key.0.into());
        if rows.len() != cols.len() {
            return Err(IsoFailure::Shape(format!(
                "block degree {} parity {} has ranks {} and {}",
                format_rational(&degree),
                key.1,
                cols.len(),
                rows.len()
            )));
        }
        if !is_unimodular(&phi.submatrix(rows, cols)) {
            return Err(IsoFailure::NotUnimodular { degree, parity: key.1 });
        }
        block_ranks.push((degree, key.1, rows.len()));
    }
    for (side, xs, ys) in [
        ("left", &x.left_actions, &y.left_actions),
        ("right", &x.right_actions, &y.right_actions),
    ] {
        for (g, (ax, ay)) in xs.iter().zip(ys.iter()).enumerate() {
            let lhs = phi.mul(ax);
            let rhs = ay.mul(phi);
            if let Some((row, col, a, b)) = lhs.first_difference(&rhs) {
                return Err(IsoFailure::Intertwining {
                    side,
                    generator: g,
                    row,
                    col,
                    lhs: a,
                    rhs: b,
                });
            }
        }
    }
    Ok(GradedIso {
        matrix: phi.clone(),
        block_ranks,
    })
}

/// The map `x0 · a ↦ y0 · a` for `x` free of rank one over its right
/// algebra on the generator `x0`.
pub fn cyclic_witness(x: &Bimodule, x0: usize, y: &Bimodule, y0: usize) -> Result<SparseMatrix> {
    if x.right != y.right || x.dim() != x.right.rank() {
        return Err(Error::ConventionMismatch(format!(
            "basis {x0} cannot generate a module of rank {} over A({})",
            x.dim(),
            x.right.generators
        )));
    }
    let mut columns: Vec<Option<SparseVec>> = vec![None; x.dim()];
    for mask in 0..x.right.rank() as u32 {
        let vx = x.right_monomial(&[(x0, 1)], mask);
        let vy = y.right_monomial(&[(y0, 1)], mask);
        match vx.as_slice() {
            [(i, s)] if s.abs() == 1 && columns[*i].is_none() => {
                columns[*i] = Some(vy.into_iter().map(|(r, v)| (r, v * s)).collect());
            }
            _ => {
                return Err(Error::ConventionMismatch(format!(
                    "basis {x0} times monomial {mask:#b} is not a distinct basis element"
                )))
            }
        }
    }
    Ok(SparseMatrix::from_columns(
        y.dim(),
        columns.into_iter().map(|c| c.expect("every basis element reached")).collect(),
    ))
}

/// The multiplication map `B ⊗_B X → X`, `b ⊗ x ↦ b · x`, on the quotient
/// `t = tensor_middle(regular(B), x)`.
pub fn left_unitor_witness(x: &Bimodule, t: &TensorProduct) -> SparseMatrix {
    let basis = MonomialBasis::new(x.left.generators);
    let mut cols = Vec::with_capacity(basis.len() * x.dim());
    for &mask in basis.masks() {
        for i in 0..x.dim() {
            cols.push(x.left_monomial(mask, &[(i, 1)]));
        }
    }
    SparseMatrix::from_columns(x.dim(), cols).mul(&t.section)
}

/// The multiplication map `X ⊗_A A → X`, `x ⊗ a ↦ x · a`, on the quotient
/// `t = tensor_middle(x, regular(A))`.
pub fn right_unitor_witness(x: &Bimodule, t: &TensorProduct) -> SparseMatrix {
    let basis = MonomialBasis::new(x.right.generators);
    let mut cols = Vec::with_capacity(basis.len() * x.dim());
    for i in 0..x.dim() {
        for &mask in basis.masks() {
            cols.push(x.right_monomial(&[(i, 1)], mask));
        }
    }
    SparseMatrix::from_columns(x.dim(), cols).mul(&t.section)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::{coproduct_left, regular, symmetrizer, tensor_middle, SuperAlgebra};

    #[test]
    fn identity_is_an_iso() {
        let x = coproduct_left(3);
        let id = SparseMatrix::identity(x.dim());
        let iso = is_graded_iso(&id, &x, &x).unwrap();
        assert_eq!(iso.block_ranks.iter().map(|b| b.2).sum::<usize>(), 8);
    }

    #[test]
    fn shifting_map_fails_on_blocks() {
        let x = regular(SuperAlgebra::new(1));
        // swap 1 and E
        let swap = SparseMatrix::from_dense(&[vec![0, 1], vec![1, 0]]);
        assert!(matches!(is_graded_iso(&swap, &x, &x), Err(IsoFailure::BlockMismatch { .. })));
    }

    #[test]
    fn negated_action_names_the_generator() {
        let x = regular(SuperAlgebra::new(2));
        let mut y = x.clone();
        y.right_actions[1] = y.right_actions[1].neg();
        let id = SparseMatrix::identity(x.dim());
        match is_graded_iso(&id, &x, &y) {
            Err(IsoFailure::Intertwining { side, generator, .. }) => {
                assert_eq!((side, generator), ("right", 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unitors() {
        let x = coproduct_left(2);
        let t = tensor_middle(&regular(x.left), &x).unwrap();
        let w = left_unitor_witness(&x, &t);
        is_graded_iso(&w, &t.module, &x).unwrap();
        let t = tensor_middle(&x, &regular(x.right)).unwrap();
        let w = right_unitor_witness(&x, &t);
        is_graded_iso(&w, &t.module, &x).unwrap();
    }

    #[test]
    fn symmetrizer_squares_to_the_identity_bimodule() {
        let s12 = symmetrizer(1, 2);
        let s21 = symmetrizer(2, 1);
        let t = tensor_middle(&s21, &s12).unwrap();
        let id = regular(SuperAlgebra::new(3));
        // the quotient is cyclic on the class of 1 ⊗ 1
        let one = t.projection.apply(&[(0, 1)]);
        assert_eq!(one.len(), 1);
        let w = cyclic_witness(&t.module, one[0].0, &id, 0).unwrap();
        is_graded_iso(&w, &t.module, &id).unwrap();
    }
}
