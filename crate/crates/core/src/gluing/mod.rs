//! Verified isomorphisms for gluing: one pair of intervals at a time, whole
//! compositions, the open pants, and the structure maps of the functor.
//!
//! Every isomorphism returned here has been checked as a matrix identity
//! before it is handed out; a failed check is reported as
//! [`Error::ConventionMismatch`].

mod compose;
mod corpus;
mod functor;
mod pants;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exterior::{exterior_power, MonomialBasis};
use crate::grading::{format_rational, Grading, Rational};
use crate::homology::{adapted_basis, canonical_basis, change_of_basis, express_in, BasisElement, Lead};
use crate::linalg::{cokernel, is_unimodular, SparseMatrix, SparseVec};
use crate::statespace::{Side, StateSpace};
use crate::superalg::{is_graded_iso, Bimodule, Grades, GradedIso};
use crate::surface::{GlueCase, GlueResult, NewCircles, SPlusId, SuturedSurface};

pub use compose::{compose_iso, ComposeIsoResult};
pub use corpus::{glue_corpus, GlueInstance};
pub use functor::{identity_witness, naturality_witness, symmetrizer_witness, NaturalityWitness};
pub use pants::{pants_arc_signs, pants_iso};

/// Knobs for experimenting with conventions the construction leaves open.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GlueOptions {
    /// Sign of the new boundary class when an interval pair on one circle
    /// splits it in two.
    pub split_circle_sign: i64,
}

impl Default for GlueOptions {
    fn default() -> Self {
        GlueOptions { split_circle_sign: 1 }
    }
}

/// Graded pieces of `Z(F) / im(E1 + E2)` computed by Smith normal form.
#[derive(Clone, Debug)]
pub struct QuotientOracle {
    /// `(degree, parity, rank, invariant factors)` per graded piece.
    pub blocks: Vec<(Rational, u8, usize, Vec<BigInt>)>,
    /// The quotient with the actions of the remaining intervals.
    pub module: Bimodule,
    pub projection: SparseMatrix,
    pub section: SparseMatrix,
}

impl QuotientOracle {
    pub fn is_free(&self) -> bool {
        self.blocks.iter().all(|b| b.3.iter().all(BigInt::is_one))
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.2).sum()
    }
}

/// Result of gluing two outgoing intervals of one surface.
#[derive(Clone, Debug)]
pub struct GlueIsoResult {
    pub glued: GlueResult,
    pub source: StateSpace,
    pub target: StateSpace,
    /// The surjection `Z(F) → Z(F̄)` with kernel `im(E1 + E2)`, in the
    /// canonical monomial bases.
    pub matrix: SparseMatrix,
    /// Verified isomorphism from the quotient to `Z(F̄)`.
    pub iso: GradedIso,
    pub oracle: QuotientOracle,
    pub degree_shift: Rational,
    pub parity_shift: u8,
    pub quotient_basis: String,
}

fn mismatch(msg: impl Into<String>) -> Error {
    Error::ConventionMismatch(msg.into())
}

/// Intervals other than `i1` and `i2`, in outgoing order.
fn remaining_intervals(f: &SuturedSurface, i1: SPlusId, i2: SPlusId) -> Vec<SPlusId> {
    f.outgoing_intervals()
        .into_iter()
        .filter(|id| *id != i1 && *id != i2)
        .collect()
}

/// `Z(F) / im(E1 + E2)` block by block, with the induced actions of the
/// remaining intervals.
pub fn quotient_oracle(s: &StateSpace, i1: SPlusId, i2: SPlusId) -> Result<QuotientOracle> {
    let e = s
        .action_matrix(i1, Side::Outgoing)?
        .add(&s.action_matrix(i2, Side::Outgoing)?);
    let grades = s.grades();
    let blocks = grades.blocks();
    let mut local = vec![0usize; s.rank()];
    for members in blocks.values() {
        for (k, &i) in members.iter().enumerate() {
            local[i] = k;
        }
    }
    let mut relations: std::collections::BTreeMap<(i64, u8), Vec<SparseVec>> = Default::default();
    for c in 0..s.rank() {
        let col = e.column(c);
        if !col.is_empty() {
            let (o, p) = grades.block(c);
            relations
                .entry((o - 1, 1 - p))
                .or_default()
                .push(col.iter().map(|&(r, v)| (local[r], v)).collect());
        }
    }
    let mut out_blocks = Vec::new();
    let mut proj = Vec::new();
    let mut sect = Vec::new();
    let mut offsets = Vec::new();
    let mut parities = Vec::new();
    for (key, members) in &blocks {
        let rels = relations.remove(key).unwrap_or_default();
        let ck = cokernel(members.len(), rels.iter().map(|v| v.as_slice()));
        let degree = &s.delta + Rational::from_integer(key.0.into());
        out_blocks.push((degree, key.1, ck.rank, ck.invariant_factors()));
        if !ck.is_free() {
            continue;
        }
        let start = offsets.len();
        for c in 0..members.len() {
            for &(r, v) in ck.projection.column(c) {
                proj.push((start + r, members[c], v));
            }
        }
        for c in 0..ck.rank {
            for &(r, v) in ck.section.column(c) {
                sect.push((members[r], start + c, v));
            }
        }
        offsets.extend(std::iter::repeat_n(key.0, ck.rank));
        parities.extend(std::iter::repeat_n(key.1, ck.rank));
    }
    if let Some(b) = out_blocks.iter().find(|b| !b.3.iter().all(BigInt::is_one)) {
        return Err(Error::TorsionDetected {
            block: format!("degree {} parity {}", format_rational(&b.0), b.1),
            factors: b.3.iter().filter(|x| !x.is_one()).cloned().collect(),
        });
    }
    let rank = offsets.len();
    let projection = SparseMatrix::from_triplets(rank, s.rank(), proj);
    let section = SparseMatrix::from_triplets(s.rank(), rank, sect);
    let mut left = Vec::new();
    for id in remaining_intervals(&s.surface, i1, i2) {
        let a = s.action_matrix(id, Side::Outgoing)?;
        // E_J anticommutes with E1 + E2, so it preserves the image
        if !projection.mul(&a.mul(&e)).is_zero() {
            return Err(mismatch(format!("E_{id} does not preserve im(E1 + E2)")));
        }
        left.push(projection.mul(&a.mul(&section)));
    }
    let module = Bimodule::new(Grades::new(s.delta.clone(), offsets, parities), left, vec![])?;
    Ok(QuotientOracle {
        blocks: out_blocks,
        module,
        projection,
        section,
    })
}

/// The class in `H1(F̄, S+)` of an element of the old basis that survives
/// the gluing.
fn surviving_image(e: &BasisElement, glued: &GlueResult) -> Result<BasisElement> {
    let map = &glued.map;
    Ok(match *e {
        BasisElement::Torus { component, index } => BasisElement::Torus {
            component: map.component[component],
            index: map.torus_offset[component] + index,
        },
        BasisElement::Boundary { component, circle } => match map.circle[component][circle] {
            Some((c, j)) => BasisElement::Boundary { component: c, circle: j },
            // the second circle of a same-component merge becomes a handle curve
            None => match map.new_torus {
                Some((c, index)) if (component, circle) == glued.second => {
                    BasisElement::Torus { component: c, index }
                }
                _ => return Err(mismatch(format!("{e} was cut open but is still in the basis"))),
            },
        },
        BasisElement::Arc { .. } => *e,
    })
}

/// How many leading elements of the adapted basis meet the intervals, and
/// how many new elements lead the glued basis.
fn lead_counts(lead: Lead) -> (usize, usize) {
    match lead {
        Lead::None => (0, 0),
        Lead::One => (1, 0),
        Lead::Two => (2, 1),
        Lead::Joined => (1, 1),
    }
}

/// The identification on monomials: adapted basis of `F` to the glued basis.
fn adapted_identification(lead: Lead, src: &MonomialBasis, dst: &MonomialBasis) -> SparseMatrix {
    let (l, n) = lead_counts(lead);
    let cols = src
        .masks()
        .iter()
        .map(|&mask| {
            let rest = (mask >> l) << n;
            let image = match lead {
                Lead::None | Lead::Joined => Some((mask, 1)),
                Lead::One => (mask & 1 != 0).then_some((rest, 1)),
                Lead::Two => match mask & 0b11 {
                    0b11 => Some((rest | 1, 1)),
                    0b01 => Some((rest, 1)),
                    0b10 => Some((rest, -1)),
                    _ => None,
                },
            };
            image.map_or(vec![], |(m, s)| vec![(dst.index_of(m), s)])
        })
        .collect();
    SparseMatrix::from_columns(dst.len(), cols)
}

fn quotient_description(case: GlueCase) -> &'static str {
    match case {
        GlueCase::C11 => "all monomials",
        GlueCase::C12 => "monomials divisible by e1",
        GlueCase::C13 | GlueCase::C21a | GlueCase::C22a => {
            "monomials divisible by e1, with e2 ω identified with -e1 ω"
        }
        GlueCase::C21b | GlueCase::C22b => "all monomials; E1 + E2 vanishes",
    }
}

/// Glues the outgoing intervals `i1` and `i2` of `f` and returns the
/// verified isomorphism `Z(F) / im(E1 + E2) ≅ Z(F̄)`.
pub fn self_glue_iso(f: &SuturedSurface, i1: SPlusId, i2: SPlusId, grading: &Grading) -> Result<GlueIsoResult> {
    self_glue_iso_with(f, i1, i2, grading, &GlueOptions::default())
}

pub fn self_glue_iso_with(
    f: &SuturedSurface,
    i1: SPlusId,
    i2: SPlusId,
    grading: &Grading,
    options: &GlueOptions,
) -> Result<GlueIsoResult> {
    f.validate()?;
    if let Some(id) = f.incoming_intervals().first() {
        return Err(Error::NotOutgoing(*id));
    }
    let adapted = adapted_basis(f, i1, i2)?;
    let glued = f.glue_intervals(i1, i2)?;
    let source = StateSpace::build(f, grading)?;
    let target = StateSpace::build(&glued.surface, grading)?;
    let (l, _) = lead_counts(adapted.lead);

    // the glued basis: the new element, then the survivors
    let model = &target.basis.model;
    let mut columns: Vec<SparseVec> = Vec::new();
    match glued.case {
        GlueCase::C13 => {
            let (BasisElement::Arc { tail, .. }, BasisElement::Arc { head, .. }) =
                (adapted.basis.elements[0], adapted.basis.elements[1])
            else {
                return Err(mismatch("lead elements are not arcs"));
            };
            columns.push(model.coords(&BasisElement::arc(tail, head))?);
        }
        GlueCase::C21a | GlueCase::C21b => {
            let NewCircles::Split { first, .. } = glued.map.new_circles else {
                return Err(mismatch("a same-circle gluing must split the circle"));
            };
            let sigma = model.coords(&BasisElement::Boundary {
                component: first.0,
                circle: first.1,
            })?;
            columns.push(sigma.into_iter().map(|(r, v)| (r, v * options.split_circle_sign)).collect());
        }
        GlueCase::C22a | GlueCase::C22b => {
            let (c, index) = glued.map.new_torus.ok_or_else(|| mismatch("no new handle"))?;
            columns.push(model.coords(&BasisElement::Torus { component: c, index: index + 1 })?);
        }
        GlueCase::C11 | GlueCase::C12 => {}
    }
    for e in &adapted.basis.elements[l..] {
        columns.push(model.coords(&surviving_image(e, &glued)?)?);
    }
    if columns.len() != target.h() {
        return Err(mismatch(format!(
            "glued basis has {} elements, H1 of the glued surface has rank {}",
            columns.len(),
            target.h()
        )));
    }
    let to_canonical = express_in(&target.basis, columns).map_err(|_| mismatch("glued basis is not a basis"))?;
    if !is_unimodular(&to_canonical) {
        return Err(mismatch("glued basis is not a Z-basis"));
    }
    let to_adapted = change_of_basis(&canonical_basis(f), &adapted.basis)?;
    let adapted_monomials = MonomialBasis::new(adapted.basis.len());
    let glued_monomials = MonomialBasis::new(target.h());
    let matrix = exterior_power(&to_canonical, &glued_monomials, &target.monomials)
        .mul(&adapted_identification(adapted.lead, &adapted_monomials, &glued_monomials))
        .mul(&exterior_power(&to_adapted, &source.monomials, &adapted_monomials));

    // shifts
    let degree_shift = &target.delta - &source.delta;
    let expected = i64::from(glued.case.rank_change() != 0);
    if degree_shift != Rational::from_integer(expected.into()) {
        return Err(mismatch(format!(
            "degree shift {} in case {}, expected {expected}",
            format_rational(&degree_shift),
            glued.case
        )));
    }
    let parity_shift = (target.pi + 2 - source.pi % 2) % 2;
    let rank_drop = (source.h() - target.h()) as u8;
    if parity_shift != rank_drop % 2 {
        return Err(mismatch(format!(
            "parity shift {parity_shift} but rank drops by {rank_drop} in case {}",
            glued.case
        )));
    }

    // the map kills E1 + E2 and intertwines the remaining intervals
    let e1 = source.action_matrix(i1, Side::Outgoing)?;
    let e2 = source.action_matrix(i2, Side::Outgoing)?;
    if !matrix.mul(&e1.add(&e2)).is_zero() {
        return Err(mismatch(format!("case {}: the map does not kill im(E1 + E2)", glued.case)));
    }
    let shift = expected;
    for c in 0..matrix.cols() {
        for &(r, _) in matrix.column(c) {
            let (ds, dt) = (source.monomials.degree(c) as i64, target.monomials.degree(r) as i64);
            if dt + shift != ds || source.parity(c) != target.parity(r) {
                return Err(mismatch(format!(
                    "case {}: monomial {c} maps to monomial {r} of another degree or parity",
                    glued.case
                )));
            }
        }
    }
    for id in remaining_intervals(f, i1, i2) {
        let a = source.action_matrix(id, Side::Outgoing)?;
        let b = target.action_matrix(id, Side::Outgoing)?;
        if let Some((r, c, x, y)) = matrix.mul(&a).first_difference(&b.mul(&matrix)) {
            return Err(mismatch(format!(
                "case {}: E_{id} not intertwined at ({r}, {c}): {x} against {y}",
                glued.case
            )));
        }
    }

    let oracle = quotient_oracle(&source, i1, i2)?;
    let target_module = target.bimodule()?;
    let iso = is_graded_iso(&matrix.mul(&oracle.section), &oracle.module, &target_module)
        .map_err(|failure| mismatch(format!("case {}: {failure}", glued.case)))?;
    Ok(GlueIsoResult {
        quotient_basis: quotient_description(glued.case).to_string(),
        glued,
        source,
        target,
        matrix,
        iso,
        oracle,
        degree_shift,
        parity_shift,
    })
}

#[cfg(test)]
mod tests;
