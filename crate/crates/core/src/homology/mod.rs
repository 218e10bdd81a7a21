//! Ordered bases of `H1(F, S+; Z)`.
//!
//! Each component contributes its torus classes, the classes of all but
//! one boundary circle meeting `S-`, and the arcs of a spanning tree on its
//! `S+` components. Classes are expressed in a fixed coordinate model:
//! per component, `Z^{2g}` for the torus classes, the boundary classes of
//! the `S-`-meeting circles modulo their sum (classes of full `S+` circles
//! vanish), and the sum-zero vectors on the `S+` components. An arc from
//! `u` to `v` has coordinates `v - u` in the last summand and nothing else.

pub mod oracle;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{inverse_unimodular, SparseMatrix, SparseVec};
use crate::surface::{GlueCase, SPlusId, SuturedSurface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    /// One of the `2g` handle curves of a component.
    Torus { component: usize, index: usize },
    /// A boundary circle, oriented as boundary.
    Boundary { component: usize, circle: usize },
    /// An arc from one `S+` component to another.
    Arc { tail: SPlusId, head: SPlusId },
}

impl BasisElement {
    pub fn arc(tail: SPlusId, head: SPlusId) -> Self {
        BasisElement::Arc { tail, head }
    }

    pub fn is_arc(&self) -> bool {
        matches!(self, BasisElement::Arc { .. })
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::Torus { component, index } => write!(f, "torus[c{component}:{index}]"),
            BasisElement::Boundary { component, circle } => {
                write!(f, "boundary[c{component}:{circle}]")
            }
            BasisElement::Arc { tail, head } => write!(f, "arc[{tail}->{head}]"),
        }
    }
}

/// Pairing of the boundary map with the class dual to the `S+` component
/// `i`: circles give 0, an arc gives `[head = i] - [tail = i]`.
pub fn phi(i: SPlusId, e: &BasisElement) -> i64 {
    match e {
        BasisElement::Arc { tail, head } => i64::from(*head == i) - i64::from(*tail == i),
        _ => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct ComponentModel {
    genus: usize,
    torus_offset: usize,
    /// Indices of the boundary circles that meet `S-`.
    sminus_circles: Vec<usize>,
    full_plus_circles: Vec<usize>,
    boundary_offset: usize,
    /// `S+` components in boundary order.
    splus: Vec<SPlusId>,
    k_offset: usize,
}

/// Fixed coordinates on `H1(F, S+)`, independent of any basis choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyModel {
    dim: usize,
    components: Vec<ComponentModel>,
    splus_component: BTreeMap<SPlusId, usize>,
}

impl HomologyModel {
    pub fn new(f: &SuturedSurface) -> Self {
        let mut dim = 0;
        let mut splus_component = BTreeMap::new();
        let components = f
            .components
            .iter()
            .enumerate()
            .map(|(ci, comp)| {
                let genus = comp.genus as usize;
                let torus_offset = dim;
                dim += 2 * genus;
                let sminus_circles: Vec<usize> = (0..comp.boundary.len())
                    .filter(|&j| comp.boundary[j].meets_sminus())
                    .collect();
                let full_plus_circles: Vec<usize> = (0..comp.boundary.len())
                    .filter(|&j| !comp.boundary[j].meets_sminus())
                    .collect();
                let boundary_offset = dim;
                dim += sminus_circles.len().saturating_sub(1);
                let splus = comp.splus_ids();
                for id in &splus {
                    splus_component.insert(*id, ci);
                }
                let k_offset = dim;
                dim += splus.len().saturating_sub(1);
                ComponentModel {
                    genus,
                    torus_offset,
                    sminus_circles,
                    full_plus_circles,
                    boundary_offset,
                    splus,
                    k_offset,
                }
            })
            .collect();
        HomologyModel {
            dim,
            components,
            splus_component,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn component_of(&self, id: SPlusId) -> Option<usize> {
        self.splus_component.get(&id).copied()
    }

    fn k_coord(&self, id: SPlusId) -> Result<Option<usize>> {
        let c = self.component_of(id).ok_or(Error::IncompatibleBases)?;
        let comp = &self.components[c];
        let pos = comp.splus.iter().position(|x| *x == id).unwrap();
        Ok((pos > 0).then(|| comp.k_offset + pos - 1))
    }

    /// Coordinates of a class in the model.
    pub fn coords(&self, e: &BasisElement) -> Result<SparseVec> {
        match *e {
            BasisElement::Torus { component, index } => {
                let comp = self.components.get(component).ok_or(Error::IncompatibleBases)?;
                if index >= 2 * comp.genus {
                    return Err(Error::IncompatibleBases);
                }
                Ok(vec![(comp.torus_offset + index, 1)])
            }
            BasisElement::Boundary { component, circle } => {
                let comp = self.components.get(component).ok_or(Error::IncompatibleBases)?;
                if comp.full_plus_circles.contains(&circle) {
                    return Ok(vec![]);
                }
                let pos = comp
                    .sminus_circles
                    .iter()
                    .position(|&j| j == circle)
                    .ok_or(Error::IncompatibleBases)?;
                if pos == 0 {
                    // the first S- circle is minus the sum of the others
                    Ok((1..comp.sminus_circles.len())
                        .map(|k| (comp.boundary_offset + k - 1, -1))
                        .collect())
                } else {
                    Ok(vec![(comp.boundary_offset + pos - 1, 1)])
                }
            }
            BasisElement::Arc { tail, head } => {
                if self.component_of(tail) != self.component_of(head)
                    || self.component_of(tail).is_none()
                {
                    return Err(Error::IncompatibleBases);
                }
                let mut v = Vec::new();
                if let Some(h) = self.k_coord(head)? {
                    v.push((h, 1));
                }
                if let Some(t) = self.k_coord(tail)? {
                    v.push((t, -1));
                }
                Ok(crate::linalg::normalize(v))
            }
        }
    }
}

/// An ordered basis of `H1(F, S+)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Basis {
    pub model: HomologyModel,
    pub elements: Vec<BasisElement>,
}

impl H1Basis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Model coordinates of the elements, as columns.
    pub fn matrix(&self) -> Result<SparseMatrix> {
        let cols = self
            .elements
            .iter()
            .map(|e| self.model.coords(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix::from_columns(self.model.dim(), cols))
    }

    pub fn index_of(&self, e: &BasisElement) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }
}

impl fmt::Display for H1Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>4}  {:<24} coordinates", "#", "element")?;
        for (i, e) in self.elements.iter().enumerate() {
            let coords = self
                .model
                .coords(e)
                .map(|v| format!("{v:?}"))
                .unwrap_or_else(|err| err.to_string());
            writeln!(f, "{i:>4}  {:<24} {coords}", e.to_string())?;
        }
        Ok(())
    }
}

/// Per-component choices defining a basis.
#[derive(Clone, Debug)]
struct ComponentChoice {
    exception: Option<usize>,
    arcs: Vec<BasisElement>,
}

fn default_choice(f: &SuturedSurface, c: usize) -> ComponentChoice {
    let comp = &f.components[c];
    let exception = (0..comp.boundary.len()).find(|&j| comp.boundary[j].meets_sminus());
    let splus = comp.splus_ids();
    let arcs = match splus.split_first() {
        Some((root, rest)) => rest.iter().map(|p| BasisElement::arc(*root, *p)).collect(),
        None => vec![],
    };
    ComponentChoice { exception, arcs }
}

/// Lays out elements component by component: torus classes, boundary
/// classes except the exception, tree arcs.
fn layout(f: &SuturedSurface, choices: &[ComponentChoice]) -> Vec<BasisElement> {
    let mut out = Vec::new();
    for (c, (comp, choice)) in f.components.iter().zip(choices).enumerate() {
        out.extend((0..2 * comp.genus as usize).map(|index| BasisElement::Torus { component: c, index }));
        out.extend(
            (0..comp.boundary.len())
                .filter(|&j| comp.boundary[j].meets_sminus() && Some(j) != choice.exception)
                .map(|circle| BasisElement::Boundary { component: c, circle }),
        );
        out.extend(choice.arcs.iter().copied());
    }
    out
}

/// The canonical basis: the exception of each component is its first
/// circle meeting `S-`, and the tree is the star from its first `S+`
/// component.
pub fn canonical_basis(f: &SuturedSurface) -> H1Basis {
    let choices: Vec<ComponentChoice> = (0..f.components.len()).map(|c| default_choice(f, c)).collect();
    H1Basis {
        model: HomologyModel::new(f),
        elements: layout(f, &choices),
    }
}

/// How the leading elements of an adapted basis meet the glued intervals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lead {
    /// No basis arc meets either interval.
    None,
    /// One arc, at index 0, meets exactly one of the intervals.
    One,
    /// Arcs at indices 0 and 1: the first points into the first interval,
    /// the second points out of the second interval.
    Two,
    /// A single arc at index 0 from the second interval to the first.
    Joined,
}

/// A basis in which the two glued intervals are leaves of the tree.
#[derive(Clone, Debug)]
pub struct AdaptedBasis {
    pub basis: H1Basis,
    pub case: GlueCase,
    pub lead: Lead,
}

/// Basis adapted to gluing `i1` to `i2`: the arcs meeting the intervals come
/// first, and the circles cut open by the gluing are the exceptions.
pub fn adapted_basis(f: &SuturedSurface, i1: SPlusId, i2: SPlusId) -> Result<AdaptedBasis> {
    let glued = f.glue_intervals(i1, i2)?;
    let case = glued.case;
    let (a, c1) = glued.first;
    let (b, c2) = glued.second;
    let mut choices: Vec<ComponentChoice> = (0..f.components.len()).map(|c| default_choice(f, c)).collect();
    let others = |c: usize| -> Vec<SPlusId> {
        f.components[c]
            .splus_ids()
            .into_iter()
            .filter(|id| *id != i1 && *id != i2)
            .collect()
    };
    let mut lead_arcs: Vec<BasisElement> = Vec::new();
    let lead;
    if !case.same_component() {
        choices[a].exception = Some(c1);
        choices[b].exception = Some(c2);
        let oa = others(a);
        let ob = others(b);
        let star = |root: SPlusId, leaves: &[SPlusId]| -> Vec<BasisElement> {
            leaves.iter().filter(|p| **p != root).map(|p| BasisElement::arc(root, *p)).collect()
        };
        choices[a].arcs = oa.first().map_or(vec![], |r| star(*r, &oa));
        choices[b].arcs = ob.first().map_or(vec![], |r| star(*r, &ob));
        match (oa.first(), ob.first()) {
            (None, None) => lead = Lead::None,
            (Some(r), None) => {
                lead_arcs.push(BasisElement::arc(*r, i1));
                lead = Lead::One;
            }
            (None, Some(r)) => {
                lead_arcs.push(BasisElement::arc(*r, i2));
                lead = Lead::One;
            }
            (Some(r), Some(rp)) => {
                lead_arcs.push(BasisElement::arc(*r, i1));
                lead_arcs.push(BasisElement::arc(i2, *rp));
                lead = Lead::Two;
            }
        }
    } else {
        choices[a].exception = Some(c1);
        let o = others(a);
        match o.first() {
            Some(q) => {
                choices[a].arcs = o.iter().skip(1).map(|p| BasisElement::arc(*q, *p)).collect();
                lead_arcs.push(BasisElement::arc(*q, i1));
                lead_arcs.push(BasisElement::arc(i2, *q));
                lead = Lead::Two;
            }
            None => {
                choices[a].arcs = vec![];
                lead_arcs.push(BasisElement::arc(i2, i1));
                lead = Lead::Joined;
            }
        }
    }
    let mut elements = lead_arcs;
    elements.extend(layout(f, &choices));
    Ok(AdaptedBasis {
        basis: H1Basis {
            model: HomologyModel::new(f),
            elements,
        },
        case,
        lead,
    })
}

/// Matrix whose columns express the elements of `from` in `to`.
pub fn change_of_basis(from: &H1Basis, to: &H1Basis) -> Result<SparseMatrix> {
    if from.model != to.model || from.len() != to.len() || to.len() != to.model.dim() {
        return Err(Error::IncompatibleBases);
    }
    let inv = inverse_unimodular(&to.matrix()?).ok_or(Error::IncompatibleBases)?;
    Ok(inv.mul(&from.matrix()?))
}

/// Expresses arbitrary model vectors (columns) in the basis `to`.
pub fn express_in(to: &H1Basis, columns: Vec<SparseVec>) -> Result<SparseMatrix> {
    if to.len() != to.model.dim() {
        return Err(Error::IncompatibleBases);
    }
    let inv = inverse_unimodular(&to.matrix()?).ok_or(Error::IncompatibleBases)?;
    Ok(inv.mul(&SparseMatrix::from_columns(to.model.dim(), columns)))
}
