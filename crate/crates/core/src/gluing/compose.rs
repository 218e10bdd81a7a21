use super::{mismatch, self_glue_iso, GlueIsoResult};
use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::homology::BasisElement;
use crate::linalg::SparseMatrix;
use crate::statespace::StateSpace;
use crate::superalg::{is_graded_iso, tensor_middle, Bimodule, GradedIso, TensorProduct};
use crate::surface::{compose_detailed, Composition, SPlusId, SuturedSurface};

/// `Z(F' ∘ F) ≅ Z(F') ⊗_{A(M2)} Z(F)` with its witness.
#[derive(Clone, Debug)]
pub struct ComposeIsoResult {
    pub composition: Composition,
    pub tensor: TensorProduct,
    pub composite: StateSpace,
    pub composite_module: Bimodule,
    /// From `tensor.module` to `composite_module`.
    pub iso: GradedIso,
    pub steps: Vec<GlueIsoResult>,
}

/// The old basis of `F` as it sits in `F' ⊔ F`.
fn shifted(e: &BasisElement, components: usize, offset: u32) -> BasisElement {
    let id = |s: SPlusId| SPlusId(s.0 + offset);
    match *e {
        BasisElement::Torus { component, index } => BasisElement::Torus {
            component: component + components,
            index,
        },
        BasisElement::Boundary { component, circle } => BasisElement::Boundary {
            component: component + components,
            circle,
        },
        BasisElement::Arc { tail, head } => BasisElement::arc(id(tail), id(head)),
    }
}

/// Builds and verifies `Z(F' ∘ F) ≅ Z(F') ⊗_{A(M2)} Z(F)`.
///
/// Pairs `x ⊗ y` go to `(-1)^{|x| π(F)} x ∧ y` in the state space of
/// `F' ⊔ F` with every interval outgoing; there the relations of the
/// tensor product become `im(E1 + E2)` for each glued pair, and gluing
/// the pairs one at a time carries the quotient onto `Z(F' ∘ F)`.
pub fn compose_iso(fp: &SuturedSurface, f: &SuturedSurface, grading: &Grading) -> Result<ComposeIsoResult> {
    fp.validate()?;
    f.validate()?;
    let composition = compose_detailed(fp, f)?;
    let left = StateSpace::build(fp, grading)?;
    let right = StateSpace::build(f, grading)?;
    let x = left.bimodule()?;
    let y = right.bimodule()?;
    let tensor = tensor_middle(&x, &y)?;

    let union = StateSpace::build(&composition.union_left, grading)?;
    let offset = composition.offset;
    let expected: Vec<BasisElement> = left
        .basis
        .elements
        .iter()
        .copied()
        .chain(
            right
                .basis
                .elements
                .iter()
                .map(|e| shifted(e, fp.components.len(), offset)),
        )
        .collect();
    if union.basis.elements != expected {
        return Err(mismatch("basis of the disjoint union is not the concatenation"));
    }

    // x ⊗ y ↦ (-1)^{|x| π(F)} x ∧ y
    let hx = left.h();
    let cols = (0..x.dim())
        .flat_map(|ix| {
            let mx = left.monomials.mask(ix);
            let sign = if right.pi % 2 == 1 && mx.count_ones() % 2 == 1 { -1 } else { 1 };
            let union = &union;
            let right = &right;
            (0..y.dim()).map(move |iy| {
                let m = mx | (right.monomials.mask(iy) << hx);
                vec![(union.monomials.index_of(m), sign)]
            })
        })
        .collect();
    let mut map = SparseMatrix::from_columns(union.rank(), cols);

    let mut steps = Vec::with_capacity(composition.pairs.len());
    let mut current = composition.union_left.clone();
    for (a, b) in &composition.pairs {
        let step = self_glue_iso(&current, *a, *b, grading)?;
        map = step.matrix.mul(&map);
        current = step.glued.surface.clone();
        steps.push(step);
    }

    let ix = SparseMatrix::identity(x.dim());
    let iy = SparseMatrix::identity(y.dim());
    for (j, (r, l)) in x.right_actions.iter().zip(&y.left_actions).enumerate() {
        if !map.mul(&r.kron(&iy).sub(&ix.kron(l))).is_zero() {
            return Err(mismatch(format!("the relations of middle generator {j} are not killed")));
        }
    }

    let composite = StateSpace::build(&composition.surface, grading)?;
    let last = StateSpace::build(&current, grading)?;
    if composite.basis.elements != last.basis.elements || composite.pi != last.pi || composite.delta != last.delta {
        return Err(mismatch("the glued surface and the composite disagree"));
    }
    let composite_module = composite.bimodule()?;
    let iso = is_graded_iso(&map.mul(&tensor.section), &tensor.module, &composite_module)
        .map_err(|failure| Error::ConventionMismatch(format!("composition: {failure}")))?;
    Ok(ComposeIsoResult {
        composition,
        tensor,
        composite,
        composite_module,
        iso,
        steps,
    })
}
