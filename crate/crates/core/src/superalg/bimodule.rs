use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{product_sign, AlgebraElement, SuperAlgebra};
use crate::error::{Error, Result};
use crate::exterior::{append_sign, prepend_sign, MonomialBasis};
use crate::grading::{format_rational, Rational};
use crate::laurent::LaurentPoly;
use crate::linalg::{cokernel, SparseMatrix, SparseVec};

/// Degrees and parities of a basis. Element `i` has degree
/// `base + offsets[i]` and parity `parities[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grades {
    pub base: Rational,
    pub offsets: Vec<i64>,
    pub parities: Vec<u8>,
}

impl Grades {
    pub fn new(base: Rational, offsets: Vec<i64>, parities: Vec<u8>) -> Self {
        assert_eq!(offsets.len(), parities.len());
        Grades {
            base,
            offsets,
            parities,
        }
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn block(&self, i: usize) -> (i64, u8) {
        (self.offsets[i], self.parities[i])
    }

    pub fn degree(&self, i: usize) -> Rational {
        &self.base + Rational::from_integer(self.offsets[i].into())
    }

    pub fn sign(&self, i: usize) -> i64 {
        if self.parities[i] == 0 {
            1
        } else {
            -1
        }
    }

    /// Basis indices grouped by `(offset, parity)`.
    pub fn blocks(&self) -> BTreeMap<(i64, u8), Vec<usize>> {
        let mut out: BTreeMap<(i64, u8), Vec<usize>> = BTreeMap::new();
        for i in 0..self.len() {
            out.entry(self.block(i)).or_default().push(i);
        }
        out
    }

    /// Grades of the basis of pairs `(x, y)`, indexed `x * |Y| + y`.
    pub fn tensor(&self, other: &Grades) -> Grades {
        let mut offsets = Vec::with_capacity(self.len() * other.len());
        let mut parities = Vec::with_capacity(self.len() * other.len());
        for i in 0..self.len() {
            for j in 0..other.len() {
                offsets.push(self.offsets[i] + other.offsets[j]);
                parities.push((self.parities[i] + other.parities[j]) % 2);
            }
        }
        Grades::new(&self.base + &other.base, offsets, parities)
    }

    /// `diag((-1)^parity)`
    pub fn parity_operator(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.len(), (0..self.len()).map(|i| vec![(i, self.sign(i))]).collect())
    }

    pub fn superdim(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for i in 0..self.len() {
            p.add_term(self.sign(i), self.degree(i));
        }
        p
    }
}

/// A graded bimodule over `(left, right)`, free over `Z` on a graded basis,
/// with the generators of both algebras acting by matrices.
#[derive(Clone, PartialEq, Eq)]
pub struct Bimodule {
    pub left: SuperAlgebra,
    pub right: SuperAlgebra,
    pub grades: Grades,
    pub left_actions: Vec<SparseMatrix>,
    pub right_actions: Vec<SparseMatrix>,
}

fn anticommutator(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    a.mul(b).add(&b.mul(a))
}

fn commutator(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    a.mul(b).sub(&b.mul(a))
}

impl Bimodule {
    /// Builds a bimodule after checking every action relation.
    pub fn new(grades: Grades, left_actions: Vec<SparseMatrix>, right_actions: Vec<SparseMatrix>) -> Result<Self> {
        let b = Bimodule {
            left: SuperAlgebra::new(left_actions.len()),
            right: SuperAlgebra::new(right_actions.len()),
            grades,
            left_actions,
            right_actions,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.grades.len()
    }

    pub fn superdim(&self) -> LaurentPoly {
        self.grades.superdim()
    }

    fn action_name(side: &str, i: usize) -> String {
        format!("{side} generator {i}")
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let fail = |msg: String| Err(Error::ActionRelationViolation(msg));
        let all = self
            .left_actions
            .iter()
            .enumerate()
            .map(|(i, m)| (Self::action_name("left", i), m))
            .chain(
                self.right_actions
                    .iter()
                    .enumerate()
                    .map(|(i, m)| (Self::action_name("right", i), m)),
            );
        for (name, m) in all {
            if m.rows() != n || m.cols() != n {
                return fail(format!("{name} is {}x{}, expected {n}x{n}", m.rows(), m.cols()));
            }
            for c in 0..n {
                for &(r, _) in m.column(c) {
                    let (oc, pc) = self.grades.block(c);
                    let (or, pr) = self.grades.block(r);
                    if or != oc - 1 || pr == pc {
                        return fail(format!("{name} maps basis {c} to {r}: not odd of degree -1"));
                    }
                }
            }
            if !m.mul(m).is_zero() {
                return fail(format!("{name} does not square to zero"));
            }
        }
        for (side, acts) in [("left", &self.left_actions), ("right", &self.right_actions)] {
            for i in 0..acts.len() {
                for j in i + 1..acts.len() {
                    if !anticommutator(&acts[i], &acts[j]).is_zero() {
                        return fail(format!("{side} generators {i} and {j} do not anticommute"));
                    }
                }
            }
        }
        for (i, l) in self.left_actions.iter().enumerate() {
            for (j, r) in self.right_actions.iter().enumerate() {
                if !commutator(l, r).is_zero() {
                    return fail(format!("left generator {i} and right generator {j} do not commute"));
                }
            }
        }
        Ok(())
    }

    /// Applies `E_S` on the left, factors in increasing order.
    pub fn left_monomial(&self, mask: u32, v: &[(usize, i64)]) -> SparseVec {
        let mut out: SparseVec = v.to_vec();
        for i in (0..self.left.generators).rev() {
            if mask & (1 << i) != 0 {
                out = self.left_actions[i].apply(&out);
            }
        }
        out
    }

    /// Applies `E_S` on the right, factors in increasing order.
    pub fn right_monomial(&self, v: &[(usize, i64)], mask: u32) -> SparseVec {
        let mut out: SparseVec = v.to_vec();
        for i in 0..self.right.generators {
            if mask & (1 << i) != 0 {
                out = self.right_actions[i].apply(&out);
            }
        }
        out
    }
}

impl fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Labeled dump: the basis with degrees and parities, then each action.
impl fmt::Display for Bimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "bimodule over (A({}), A({})), rank {}",
            self.left.generators,
            self.right.generators,
            self.dim()
        )?;
        for i in 0..self.dim() {
            writeln!(
                f,
                "  b{i}: degree {} parity {}",
                format_rational(&self.grades.degree(i)),
                self.grades.parities[i]
            )?;
        }
        for (side, acts) in [("left", &self.left_actions), ("right", &self.right_actions)] {
            for (g, m) in acts.iter().enumerate() {
                write!(f, "  {side} E{g}:")?;
                for c in 0..m.cols() {
                    for &(r, x) in m.column(c) {
                        write!(f, " b{c}->{x}*b{r}")?;
                    }
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

fn algebra_grades(basis: &MonomialBasis) -> Grades {
    let offsets = (0..basis.len()).map(|i| -(basis.degree(i) as i64)).collect();
    let parities = (0..basis.len()).map(|i| (basis.degree(i) % 2) as u8).collect();
    Grades::new(Rational::zero(), offsets, parities)
}

/// Left multiplication by the monomial `t` on `A(m)`.
pub fn left_multiplication(basis: &MonomialBasis, t: u32) -> SparseMatrix {
    let cols = basis
        .masks()
        .iter()
        .map(|&s| match product_sign(t, s) {
            Some(sign) => vec![(basis.index_of(s | t), sign)],
            None => vec![],
        })
        .collect();
    SparseMatrix::from_columns(basis.len(), cols)
}

/// Right multiplication by the monomial `t` on `A(m)`.
pub fn right_multiplication(basis: &MonomialBasis, t: u32) -> SparseMatrix {
    let cols = basis
        .masks()
        .iter()
        .map(|&s| match product_sign(s, t) {
            Some(sign) => vec![(basis.index_of(s | t), sign)],
            None => vec![],
        })
        .collect();
    SparseMatrix::from_columns(basis.len(), cols)
}

fn generator_actions(basis: &MonomialBasis, left: bool) -> Vec<SparseMatrix> {
    (0..basis.generators())
        .map(|i| {
            let cols = basis
                .masks()
                .iter()
                .map(|&s| {
                    let sign = if left { prepend_sign(s, i) } else { append_sign(s, i) };
                    sign.map_or(vec![], |x| vec![(basis.index_of(s | (1 << i)), x)])
                })
                .collect();
            SparseMatrix::from_columns(basis.len(), cols)
        })
        .collect()
}

/// `A(m)` as a bimodule over itself.
pub fn regular(algebra: SuperAlgebra) -> Bimodule {
    let basis = MonomialBasis::new(algebra.generators);
    Bimodule::new(
        algebra_grades(&basis),
        generator_actions(&basis, true),
        generator_actions(&basis, false),
    )
    .expect("regular bimodule relations")
}

/// `A(p)` as a bimodule over `(A(1), A(p))`: right multiplication, and the
/// left generator acting through `E ↦ Σ_i E_i`. For `p = 0` it acts by 0.
pub fn coproduct_left(p: usize) -> Bimodule {
    let basis = MonomialBasis::new(p);
    let lefts = generator_actions(&basis, true);
    let sum = lefts
        .iter()
        .fold(SparseMatrix::zeros(basis.len(), basis.len()), |acc, m| acc.add(m));
    Bimodule::new(algebra_grades(&basis), vec![sum], generator_actions(&basis, false))
        .expect("coproduct bimodule relations")
}

/// `X_f`: the target algebra as a bimodule over `(target, source)` with
/// `b · x · a = b x f(a)`, for `f` given by the images of the source
/// generators.
pub fn hom_bimodule(source: SuperAlgebra, target: SuperAlgebra, images: &[AlgebraElement]) -> Result<Bimodule> {
    if images.len() != source.generators {
        return Err(Error::NotAHomomorphism(format!(
            "{} images for {} generators",
            images.len(),
            source.generators
        )));
    }
    for (i, x) in images.iter().enumerate() {
        if x.algebra() != target {
            return Err(Error::NotAHomomorphism(format!("image of E{i} lies in the wrong algebra")));
        }
        if !x.is_linear() {
            return Err(Error::NotAHomomorphism(format!(
                "image of E{i} is {x}, not odd of degree -1"
            )));
        }
        if !x.multiply(x)?.is_zero() {
            return Err(Error::NotAHomomorphism(format!("image of E{i} does not square to zero")));
        }
        for (j, y) in images.iter().enumerate().skip(i + 1) {
            if !x.multiply(y)?.add(&y.multiply(x)?)?.is_zero() {
                return Err(Error::NotAHomomorphism(format!(
                    "images of E{i} and E{j} do not anticommute"
                )));
            }
        }
    }
    let basis = MonomialBasis::new(target.generators);
    let rights = images
        .iter()
        .map(|x| {
            x.terms().fold(SparseMatrix::zeros(basis.len(), basis.len()), |acc, (t, c)| {
                acc.add_scaled(&right_multiplication(&basis, t), c)
            })
        })
        .collect();
    Bimodule::new(algebra_grades(&basis), generator_actions(&basis, true), rights)
}

/// `X_σ` for the swap `A(m1) ⊗ A(m2) → A(m2) ⊗ A(m1)`, a bimodule over
/// `(A(m2 + m1), A(m1 + m2))`.
pub fn symmetrizer(m1: usize, m2: usize) -> Bimodule {
    let source = SuperAlgebra::new(m1 + m2);
    let target = SuperAlgebra::new(m1 + m2);
    let images: Vec<AlgebraElement> = (0..m1)
        .map(|i| AlgebraElement::generator(target, m2 + i))
        .chain((0..m2).map(|j| AlgebraElement::generator(target, j)))
        .collect();
    hom_bimodule(source, target, &images).expect("the swap is a homomorphism")
}

/// `X ⊗_Z Y` over `(B1 ⊗ B2, A1 ⊗ A2)`, with the Koszul signs
/// `(-1)^{|b2||x| + |a1||y| + |b2||a1|}`. Basis pair `(x, y)` has index
/// `x * |Y| + y`.
pub fn external_tensor(x: &Bimodule, y: &Bimodule) -> Bimodule {
    let ix = SparseMatrix::identity(x.dim());
    let iy = SparseMatrix::identity(y.dim());
    let dx = x.grades.parity_operator();
    let dy = y.grades.parity_operator();
    let left = x
        .left_actions
        .iter()
        .map(|l| l.kron(&iy))
        .chain(y.left_actions.iter().map(|l| dx.kron(l)))
        .collect();
    let right = x
        .right_actions
        .iter()
        .map(|r| r.kron(&dy))
        .chain(y.right_actions.iter().map(|r| ix.kron(r)))
        .collect();
    Bimodule::new(x.grades.tensor(&y.grades), left, right).expect("external tensor relations")
}

/// `X ⊗_B Y` as a free quotient of `X ⊗_Z Y`, with the maps relating it to
/// the ambient pairs basis.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub module: Bimodule,
    /// Quotient map from the pairs basis.
    pub projection: SparseMatrix,
    /// A right inverse of `projection`.
    pub section: SparseMatrix,
}

/// `X ⊗_B Y` for `X` over `(C, B)` and `Y` over `(B, A)`: the quotient of
/// the pairs basis by `x·b ⊗ y - x ⊗ b·y` for the generators `b` of `B`,
/// computed one graded block at a time.
pub fn tensor_middle(x: &Bimodule, y: &Bimodule) -> Result<TensorProduct> {
    if x.right != y.left {
        return Err(Error::AlgebraMismatch(format!(
            "right algebra A({}) against left algebra A({})",
            x.right.generators, y.left.generators
        )));
    }
    let ambient = x.grades.tensor(&y.grades);
    let n = ambient.len();
    let ix = SparseMatrix::identity(x.dim());
    let iy = SparseMatrix::identity(y.dim());
    let relations: Vec<SparseMatrix> = x
        .right_actions
        .iter()
        .zip(&y.left_actions)
        .map(|(r, l)| r.kron(&iy).sub(&ix.kron(l)))
        .collect();

    let blocks = ambient.blocks();
    let mut local = vec![0usize; n];
    for members in blocks.values() {
        for (k, &i) in members.iter().enumerate() {
            local[i] = k;
        }
    }
    // a relation from the source block (o, p) lives in block (o - 1, 1 - p)
    let mut block_relations: BTreeMap<(i64, u8), Vec<SparseVec>> = BTreeMap::new();
    for rel in &relations {
        for c in 0..n {
            let col = rel.column(c);
            if col.is_empty() {
                continue;
            }
            let (o, p) = ambient.block(c);
            let v: SparseVec = col.iter().map(|&(r, v)| (local[r], v)).collect();
            block_relations.entry((o - 1, 1 - p)).or_default().push(v);
        }
    }

    let mut proj_triplets = Vec::new();
    let mut sect_triplets = Vec::new();
    let mut offsets = Vec::new();
    let mut parities = Vec::new();
    for (key, members) in &blocks {
        let rels = block_relations.remove(key).unwrap_or_default();
        let ck = cokernel(members.len(), rels.iter().map(|v| v.as_slice()));
        if !ck.is_free() {
            return Err(Error::TorsionDetected {
                block: format!(
                    "degree {} parity {}",
                    format_rational(&(&ambient.base + Rational::from_integer(key.0.into()))),
                    key.1
                ),
                factors: ck.torsion,
            });
        }
        let start = offsets.len();
        for c in 0..members.len() {
            for &(r, v) in ck.projection.column(c) {
                proj_triplets.push((start + r, members[c], v));
            }
        }
        for c in 0..ck.rank {
            for &(r, v) in ck.section.column(c) {
                sect_triplets.push((members[r], start + c, v));
            }
        }
        offsets.extend(std::iter::repeat_n(key.0, ck.rank));
        parities.extend(std::iter::repeat_n(key.1, ck.rank));
    }
    let rank = offsets.len();
    let projection = SparseMatrix::from_triplets(rank, n, proj_triplets);
    let section = SparseMatrix::from_triplets(n, rank, sect_triplets);
    let induce = |m: &SparseMatrix| projection.mul(&m.mul(&section));
    let left = x.left_actions.iter().map(|l| induce(&l.kron(&iy))).collect();
    let right = y.right_actions.iter().map(|r| induce(&ix.kron(r))).collect();
    let module = Bimodule::new(Grades::new(ambient.base.clone(), offsets, parities), left, right)?;
    Ok(TensorProduct {
        module,
        projection,
        section,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_and_identity_hom_agree() {
        let a = SuperAlgebra::new(3);
        let images: Vec<AlgebraElement> = (0..3).map(|i| AlgebraElement::generator(a, i)).collect();
        assert_eq!(hom_bimodule(a, a, &images).unwrap(), regular(a));
    }

    #[test]
    fn coproduct_small_cases() {
        assert_eq!(coproduct_left(1), regular(SuperAlgebra::new(1)));
        let p0 = coproduct_left(0);
        assert_eq!(p0.dim(), 1);
        assert!(p0.left_actions[0].is_zero());
        // E · (1⊗1) = E⊗1 + 1⊗E
        let p2 = coproduct_left(2);
        assert_eq!(p2.left_actions[0].column(0), &[(1, 1), (2, 1)]);
    }

    #[test]
    fn hom_rejects_non_linear_images() {
        let a = SuperAlgebra::new(2);
        let bad = vec![AlgebraElement::monomial(a, 0b11, 1), AlgebraElement::generator(a, 0)];
        assert!(matches!(hom_bimodule(a, a, &bad), Err(Error::NotAHomomorphism(_))));
    }

    #[test]
    fn symmetrizer_left_action_is_twisted_multiplication() {
        // in X_σ over (A2 ⊗ A1, A1 ⊗ A2) with m1 = m2 = 1: x · (E⊗1) = x · (1⊗E) in the target
        let s = symmetrizer(1, 1);
        let basis = MonomialBasis::new(2);
        assert_eq!(s.right_actions[0], right_multiplication(&basis, 0b10));
        assert_eq!(s.right_actions[1], right_multiplication(&basis, 0b01));
    }

    #[test]
    fn external_tensor_grades_add() {
        let x = regular(SuperAlgebra::new(1));
        let y = coproduct_left(2);
        let t = external_tensor(&x, &y);
        assert_eq!(t.dim(), 8);
        for i in 0..2 {
            for j in 0..4 {
                assert_eq!(t.grades.parities[i * 4 + j], (x.grades.parities[i] + y.grades.parities[j]) % 2);
            }
        }
        assert_eq!(t.superdim(), x.superdim() * y.superdim());
    }

    #[test]
    fn tensor_over_regular_has_the_same_rank() {
        let y = coproduct_left(2);
        let t = tensor_middle(&regular(SuperAlgebra::new(1)), &y).unwrap();
        assert_eq!(t.module.dim(), y.dim());
        assert_eq!(t.module.superdim(), y.superdim());
        let z = tensor_middle(&y, &regular(SuperAlgebra::new(2))).unwrap();
        assert_eq!(z.module.superdim(), y.superdim());
    }

    #[test]
    fn tensor_over_the_ground_ring_is_external() {
        let x = coproduct_left(0);
        let r = regular(SuperAlgebra::new(2));
        let y = Bimodule::new(r.grades.clone(), vec![], r.right_actions.clone()).unwrap();
        let t = tensor_middle(&x, &y).unwrap();
        let e = external_tensor(&x, &y);
        assert_eq!(t.module.dim(), e.dim());
        assert_eq!(t.module.superdim(), e.superdim());
    }

    #[test]
    fn middle_mismatch() {
        let x = regular(SuperAlgebra::new(1));
        let y = regular(SuperAlgebra::new(2));
        assert!(matches!(tensor_middle(&x, &y), Err(Error::AlgebraMismatch(_))));
    }
}
