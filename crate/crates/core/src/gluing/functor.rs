use super::mismatch;
use crate::error::Result;
use crate::grading::Grading;
use crate::linalg::{inverse_unimodular, SparseMatrix};
use crate::statespace::StateSpace;
use crate::superalg::{
    cyclic_witness, external_tensor, is_graded_iso, left_unitor_witness, regular, right_unitor_witness, symmetrizer,
    tensor_middle, Bimodule, GradedIso, SuperAlgebra,
};
use crate::surface::{disjoint_union_with_offset, identity_cobordism, symmetrizer_cobordism, SuturedSurface};

/// The state space of `f` as a bimodule, with the index of its top monomial.
fn top_generated(f: &SuturedSurface, grading: &Grading) -> Result<(Bimodule, usize)> {
    let s = StateSpace::build(f, grading)?;
    let top = s.monomials.index_of(((1u64 << s.h()) - 1) as u32);
    Ok((s.bimodule()?, top))
}

fn checked(phi: &SparseMatrix, x: &Bimodule, y: &Bimodule, what: &str) -> Result<GradedIso> {
    is_graded_iso(phi, x, y).map_err(|failure| mismatch(format!("{what}: {failure}")))
}

/// `Z(id_M) ≅ A(M)` as bimodules, sending the top monomial to `1`.
pub fn identity_witness(n: usize, grading: &Grading) -> Result<GradedIso> {
    let (x, top) = top_generated(&identity_cobordism(n), grading)?;
    let y = regular(SuperAlgebra::new(n));
    let phi = cyclic_witness(&x, top, &y, 0)?;
    checked(&phi, &x, &y, "identity")
}

/// The state space of the symmetrizer cobordism against the bimodule of
/// the block swap `A(M1 ⊔ M2) → A(M2 ⊔ M1)`.
pub fn symmetrizer_witness(n1: usize, n2: usize, grading: &Grading) -> Result<GradedIso> {
    let (x, top) = top_generated(&symmetrizer_cobordism(n1, n2), grading)?;
    let y = symmetrizer(n1, n2);
    let phi = cyclic_witness(&x, top, &y, 0)?;
    checked(&phi, &x, &y, "symmetrizer")
}

/// Both sides of the naturality square for `F ⊔ F'` and the verified map
/// between them.
#[derive(Clone, Debug)]
pub struct NaturalityWitness {
    /// `A(M2 ⊔ M2') ⊗ (Z(F) ⊠ Z(F'))`
    pub source: Bimodule,
    /// `Z(F ⊔ F') ⊗ A(M1 ⊔ M1')`
    pub target: Bimodule,
    pub iso: GradedIso,
}

/// The unitors on either side together with `x ⊗ y ↦ (-1)^{|x| π(F')} x ∧ y`.
pub fn naturality_witness(f: &SuturedSurface, fp: &SuturedSurface, grading: &Grading) -> Result<NaturalityWitness> {
    let a = StateSpace::build(f, grading)?;
    let b = StateSpace::build(fp, grading)?;
    let (union, _) = disjoint_union_with_offset(f, fp);
    let u = StateSpace::build(&union, grading)?;
    let (x, y, w) = (a.bimodule()?, b.bimodule()?, u.bimodule()?);
    if u.h() != a.h() + b.h() {
        return Err(mismatch("H1 of the disjoint union is not the direct sum"));
    }

    let ext = external_tensor(&x, &y);
    let src = tensor_middle(&regular(ext.left), &ext)?;
    let dst = tensor_middle(&w, &regular(w.right))?;
    let left = left_unitor_witness(&ext, &src);
    let right = inverse_unimodular(&right_unitor_witness(&w, &dst))
        .ok_or_else(|| mismatch("right unitor is not invertible"))?;

    let cols = (0..x.dim())
        .flat_map(|ix| {
            let mx = a.monomials.mask(ix);
            let sign = if b.pi % 2 == 1 && mx.count_ones() % 2 == 1 { -1 } else { 1 };
            let (u, b) = (&u, &b);
            let shift = a.h();
            (0..y.dim()).map(move |iy| vec![(u.monomials.index_of(mx | (b.monomials.mask(iy) << shift)), sign)])
        })
        .collect();
    let wedge = SparseMatrix::from_columns(w.dim(), cols);
    let phi = right.mul(&wedge).mul(&left);
    let iso = checked(&phi, &src.module, &dst.module, "naturality")?;
    Ok(NaturalityWitness {
        source: src.module,
        target: dst.module,
        iso,
    })
}
