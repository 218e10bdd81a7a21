//! Combinatorial sutured surfaces, read as morphisms of the open-closed
//! cobordism category.
//!
//! A surface is a list of connected components, each a genus together with
//! its boundary circles. A boundary circle is either entirely in `S+`,
//! entirely in `S-`, or a cyclic word alternating between `S+` arcs
//! (intervals, named by an [`SPlusId`]) and `S-` arcs. Words are read in the
//! boundary orientation. Every `S+` component is labeled incoming or
//! outgoing, and each label class is ordered.

mod builders;
mod glue;
mod text;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

pub use builders::*;
pub use glue::{BoundaryMap, GlueCase, GlueResult, NewCircles};
pub use text::{parse_surface, ParsedSurface};

/// Identifier of one `S+` component (interval or circle).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SPlusId(pub u32);

impl fmt::Display for SPlusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryArc {
    Plus(SPlusId),
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryCircle {
    FullPlus(SPlusId),
    FullMinus,
    Mixed(Vec<BoundaryArc>),
}

impl BoundaryCircle {
    /// Does the circle meet `S-`?
    pub fn meets_sminus(&self) -> bool {
        !matches!(self, BoundaryCircle::FullPlus(_))
    }

    pub fn splus_ids(&self) -> Vec<SPlusId> {
        match self {
            BoundaryCircle::FullPlus(id) => vec![*id],
            BoundaryCircle::FullMinus => vec![],
            BoundaryCircle::Mixed(word) => word
                .iter()
                .filter_map(|a| match a {
                    BoundaryArc::Plus(id) => Some(*id),
                    BoundaryArc::Minus => None,
                })
                .collect(),
        }
    }

    /// Mixed circle with the given intervals, each followed by one `S-` arc.
    pub fn mixed(ids: &[SPlusId]) -> Self {
        let mut word = Vec::with_capacity(2 * ids.len());
        for id in ids {
            word.push(BoundaryArc::Plus(*id));
            word.push(BoundaryArc::Minus);
        }
        BoundaryCircle::Mixed(word)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub genus: u32,
    pub boundary: Vec<BoundaryCircle>,
}

impl Component {
    pub fn is_closed(&self) -> bool {
        self.boundary.is_empty()
    }

    /// `S+` components in order of appearance along the boundary words.
    pub fn splus_ids(&self) -> Vec<SPlusId> {
        self.boundary.iter().flat_map(|c| c.splus_ids()).collect()
    }

    pub fn has_splus(&self) -> bool {
        self.boundary.iter().any(|c| !c.splus_ids().is_empty())
    }

    pub fn has_sminus(&self) -> bool {
        self.boundary.iter().any(BoundaryCircle::meets_sminus)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SuturedSurface {
    pub components: Vec<Component>,
    pub incoming: Vec<SPlusId>,
    pub outgoing: Vec<SPlusId>,
}

/// Where an `S+` component sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Location {
    pub component: usize,
    pub circle: usize,
    /// Index in the circle's word; `None` for a full `S+` circle.
    pub position: Option<usize>,
}

impl Location {
    pub fn is_interval(&self) -> bool {
        self.position.is_some()
    }
}

/// The counts k1..k9 that every degree and parity shift is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct CountVector {
    /// components
    pub k1: u64,
    /// total genus
    pub k2: u64,
    /// closed components
    pub k3: u64,
    /// non-closed components without `S+`
    pub k4: u64,
    /// non-closed components without `S-`
    pub k5: u64,
    /// `S+` intervals
    pub k6: u64,
    /// `S+` circles
    pub k7: u64,
    /// `S-` circles
    pub k8: u64,
    /// boundary circles carrying both `S+` and `S-`
    pub k9: u64,
}

impl CountVector {
    pub fn from_array(k: [u64; 9]) -> Self {
        CountVector {
            k1: k[0],
            k2: k[1],
            k3: k[2],
            k4: k[3],
            k5: k[4],
            k6: k[5],
            k7: k[6],
            k8: k[7],
            k9: k[8],
        }
    }

    pub fn as_array(&self) -> [u64; 9] {
        [
            self.k1, self.k2, self.k3, self.k4, self.k5, self.k6, self.k7, self.k8, self.k9,
        ]
    }

    /// Rank of `H1(F, S+)` as a linear combination of the counts.
    pub fn rank_h(&self) -> i64 {
        let k = self.as_array().map(|x| x as i64);
        -2 * k[0] + 2 * k[1] + 2 * k[2] + k[3] + k[4] + k[5] + k[6] + k[7] + k[8]
    }

    pub fn boundary_circles(&self) -> u64 {
        self.k7 + self.k8 + self.k9
    }

    /// Boundary circles that meet `S-`.
    pub fn sminus_circles(&self) -> u64 {
        self.k8 + self.k9
    }
}

impl std::ops::Add for CountVector {
    type Output = CountVector;

    fn add(self, rhs: CountVector) -> CountVector {
        let (a, b) = (self.as_array(), rhs.as_array());
        CountVector::from_array(std::array::from_fn(|i| a[i] + b[i]))
    }
}

impl SuturedSurface {
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (ci, comp) in self.components.iter().enumerate() {
            for (bi, circle) in comp.boundary.iter().enumerate() {
                if let BoundaryCircle::Mixed(word) = circle {
                    let alternates = !word.is_empty()
                        && word.len() % 2 == 0
                        && (0..word.len()).all(|i| {
                            let here = matches!(word[i], BoundaryArc::Plus(_));
                            let next = matches!(word[(i + 1) % word.len()], BoundaryArc::Plus(_));
                            here != next
                        });
                    if !alternates {
                        return Err(Error::AlternationViolation {
                            component: ci,
                            circle: bi,
                        });
                    }
                }
                for id in circle.splus_ids() {
                    if !seen.insert(id) {
                        return Err(Error::DuplicateSPlusId(id));
                    }
                }
            }
        }
        let mut labeled = BTreeSet::new();
        for id in self.incoming.iter().chain(&self.outgoing) {
            if !labeled.insert(*id) {
                return Err(Error::OrderingMismatch(format!(
                    "{id} is labeled more than once"
                )));
            }
            if !seen.contains(id) {
                return Err(Error::OrderingMismatch(format!(
                    "{id} is labeled but does not occur on the boundary"
                )));
            }
        }
        if let Some(id) = seen.difference(&labeled).next() {
            return Err(Error::OrderingMismatch(format!(
                "{id} is neither incoming nor outgoing"
            )));
        }
        Ok(())
    }

    pub fn counts(&self) -> CountVector {
        let mut k = CountVector::default();
        for comp in &self.components {
            k.k1 += 1;
            k.k2 += comp.genus as u64;
            if comp.is_closed() {
                k.k3 += 1;
            } else {
                if !comp.has_splus() {
                    k.k4 += 1;
                }
                if !comp.has_sminus() {
                    k.k5 += 1;
                }
            }
            for circle in &comp.boundary {
                match circle {
                    BoundaryCircle::FullPlus(_) => k.k7 += 1,
                    BoundaryCircle::FullMinus => k.k8 += 1,
                    BoundaryCircle::Mixed(word) => {
                        k.k9 += 1;
                        k.k6 += (word.len() / 2) as u64;
                    }
                }
            }
        }
        k
    }

    /// Rank of `H1(F, S+; Z)`.
    pub fn rank_h(&self) -> usize {
        let h = self.counts().rank_h();
        debug_assert!(h >= 0);
        h as usize
    }

    /// Euler characteristic of the underlying surface.
    pub fn euler_characteristic(&self) -> i64 {
        let k = self.counts();
        2 * k.k1 as i64 - 2 * k.k2 as i64 - k.boundary_circles() as i64
    }

    pub fn locate(&self, id: SPlusId) -> Option<Location> {
        for (ci, comp) in self.components.iter().enumerate() {
            for (bi, circle) in comp.boundary.iter().enumerate() {
                match circle {
                    BoundaryCircle::FullPlus(x) if *x == id => {
                        return Some(Location {
                            component: ci,
                            circle: bi,
                            position: None,
                        })
                    }
                    BoundaryCircle::Mixed(word) => {
                        if let Some(p) = word.iter().position(|a| *a == BoundaryArc::Plus(id)) {
                            return Some(Location {
                                component: ci,
                                circle: bi,
                                position: Some(p),
                            });
                        }
                    }
                    _ => {}
                }
            }
        }
        None
    }

    pub fn is_interval(&self, id: SPlusId) -> bool {
        self.locate(id).is_some_and(|l| l.is_interval())
    }

    /// All `S+` components in boundary order.
    pub fn splus_ids(&self) -> Vec<SPlusId> {
        self.components.iter().flat_map(|c| c.splus_ids()).collect()
    }

    pub fn incoming_intervals(&self) -> Vec<SPlusId> {
        self.incoming
            .iter()
            .copied()
            .filter(|id| self.is_interval(*id))
            .collect()
    }

    pub fn outgoing_intervals(&self) -> Vec<SPlusId> {
        self.outgoing
            .iter()
            .copied()
            .filter(|id| self.is_interval(*id))
            .collect()
    }

    pub fn is_outgoing(&self, id: SPlusId) -> bool {
        self.outgoing.contains(&id)
    }

    pub fn max_id(&self) -> Option<u32> {
        self.splus_ids().into_iter().map(|id| id.0).max()
    }

    /// The same surface with every `S+` component viewed as outgoing
    /// (outgoing first, then the former incoming ones, each in order).
    pub fn all_outgoing(&self) -> SuturedSurface {
        let mut out = self.clone();
        out.outgoing.extend(out.incoming.drain(..));
        out
    }

    /// Renames every `S+` id by `f`.
    pub fn relabel(&self, f: impl Fn(SPlusId) -> SPlusId) -> SuturedSurface {
        let components = self
            .components
            .iter()
            .map(|comp| Component {
                genus: comp.genus,
                boundary: comp
                    .boundary
                    .iter()
                    .map(|circle| match circle {
                        BoundaryCircle::FullPlus(id) => BoundaryCircle::FullPlus(f(*id)),
                        BoundaryCircle::FullMinus => BoundaryCircle::FullMinus,
                        BoundaryCircle::Mixed(word) => BoundaryCircle::Mixed(
                            word.iter()
                                .map(|a| match a {
                                    BoundaryArc::Plus(id) => BoundaryArc::Plus(f(*id)),
                                    BoundaryArc::Minus => BoundaryArc::Minus,
                                })
                                .collect(),
                        ),
                    })
                    .collect(),
            })
            .collect();
        SuturedSurface {
            components,
            incoming: self.incoming.iter().map(|id| f(*id)).collect(),
            outgoing: self.outgoing.iter().map(|id| f(*id)).collect(),
        }
    }

    /// Multiset of boundary words up to rotation, with ids erased. Two
    /// surfaces that differ only by relabeling have equal signatures.
    pub fn boundary_signature(&self) -> Vec<(u32, Vec<String>)> {
        let mut comps: Vec<(u32, Vec<String>)> = self
            .components
            .iter()
            .map(|comp| {
                let mut words: Vec<String> = comp
                    .boundary
                    .iter()
                    .map(|c| match c {
                        BoundaryCircle::FullPlus(_) => "P".to_string(),
                        BoundaryCircle::FullMinus => "M".to_string(),
                        BoundaryCircle::Mixed(w) => format!("W{}", w.len() / 2),
                    })
                    .collect();
                words.sort();
                (comp.genus, words)
            })
            .collect();
        comps.sort();
        comps
    }
}

/// Disjoint union with `f` first. If the id sets collide, `g` is relabeled
/// by shifting its ids past the largest id of `f`.
pub fn disjoint_union(f: &SuturedSurface, g: &SuturedSurface) -> SuturedSurface {
    disjoint_union_with_offset(f, g).0
}

/// As [`disjoint_union`], also returning the shift applied to `g`'s ids.
pub fn disjoint_union_with_offset(f: &SuturedSurface, g: &SuturedSurface) -> (SuturedSurface, u32) {
    let fids: BTreeSet<SPlusId> = f.splus_ids().into_iter().collect();
    let collides = g.splus_ids().iter().any(|id| fids.contains(id));
    let offset = if collides {
        f.max_id().map_or(0, |m| m + 1)
    } else {
        0
    };
    let g = g.relabel(|id| SPlusId(id.0 + offset));
    let mut out = f.clone();
    out.components.extend(g.components);
    out.incoming.extend(g.incoming);
    out.outgoing.extend(g.outgoing);
    (out, offset)
}

/// Glues the outgoing intervals of `f` to the incoming intervals of `fp`,
/// pairwise in order. The result goes from `f`'s source to `fp`'s target.
pub fn compose(fp: &SuturedSurface, f: &SuturedSurface) -> Result<SuturedSurface> {
    Ok(compose_detailed(fp, f)?.surface)
}

/// Intermediate data of a composition, reused by the gluing isomorphisms.
#[derive(Clone, Debug)]
pub struct Composition {
    /// `fp ⊔ f` with every `S+` component outgoing.
    pub union_left: SuturedSurface,
    /// Interval pairs glued in order (first from `fp`, second from `f`).
    pub pairs: Vec<(SPlusId, SPlusId)>,
    /// Shift applied to the ids of `f` inside the union.
    pub offset: u32,
    /// Surfaces after each gluing step, all outgoing.
    pub steps: Vec<GlueResult>,
    /// The composite with its incoming/outgoing labels restored.
    pub surface: SuturedSurface,
    /// Incoming and outgoing lists of the composite.
    pub incoming: Vec<SPlusId>,
    pub outgoing: Vec<SPlusId>,
}

pub fn compose_detailed(fp: &SuturedSurface, f: &SuturedSurface) -> Result<Composition> {
    if fp.incoming.len() != f.outgoing.len() {
        return Err(Error::ArityMismatch {
            outgoing: f.outgoing.len(),
            incoming: fp.incoming.len(),
        });
    }
    for id in fp.incoming.iter() {
        if !fp.is_interval(*id) {
            return Err(Error::CircleInGluingRegion(*id));
        }
    }
    for id in f.outgoing.iter() {
        if !f.is_interval(*id) {
            return Err(Error::CircleInGluingRegion(*id));
        }
    }
    let (union, offset) = disjoint_union_with_offset(fp, f);
    let shift = |id: SPlusId| SPlusId(id.0 + offset);
    let pairs: Vec<(SPlusId, SPlusId)> = fp
        .incoming
        .iter()
        .zip(&f.outgoing)
        .map(|(a, b)| (*a, shift(*b)))
        .collect();
    let incoming: Vec<SPlusId> = f.incoming.iter().map(|id| shift(*id)).collect();
    let outgoing = fp.outgoing.clone();
    let union_left = union.all_outgoing();
    let mut current = union_left.clone();
    let mut steps = Vec::with_capacity(pairs.len());
    for (a, b) in &pairs {
        let step = current.glue_intervals(*a, *b)?;
        current = step.surface.clone();
        steps.push(step);
    }
    let surface = SuturedSurface {
        components: current.components,
        incoming: incoming.clone(),
        outgoing: outgoing.clone(),
    };
    Ok(Composition {
        union_left,
        pairs,
        offset,
        steps,
        surface,
        incoming,
        outgoing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(n: u32) -> SPlusId {
        SPlusId(n)
    }

    #[test]
    fn minimal_mixed_circle_is_valid() {
        assert_eq!(disk_plus_minus().validate(), Ok(()));
    }

    #[test]
    fn adjacent_plus_arcs_rejected() {
        let f = SuturedSurface {
            components: vec![Component {
                genus: 0,
                boundary: vec![BoundaryCircle::Mixed(vec![
                    BoundaryArc::Plus(id(0)),
                    BoundaryArc::Plus(id(1)),
                ])],
            }],
            incoming: vec![],
            outgoing: vec![id(0), id(1)],
        };
        assert_eq!(
            f.validate(),
            Err(Error::AlternationViolation {
                component: 0,
                circle: 0
            })
        );
    }

    #[test]
    fn id_in_both_label_lists_rejected() {
        let mut f = disk_plus_minus();
        f.incoming.push(id(0));
        assert!(matches!(f.validate(), Err(Error::OrderingMismatch(_))));
    }

    #[test]
    fn duplicate_id_rejected() {
        let f = SuturedSurface {
            components: vec![Component {
                genus: 0,
                boundary: vec![BoundaryCircle::mixed(&[id(0), id(0)])],
            }],
            incoming: vec![],
            outgoing: vec![id(0)],
        };
        assert_eq!(f.validate(), Err(Error::DuplicateSPlusId(id(0))));
    }

    #[test]
    fn counts_of_standard_surfaces() {
        for g in 0..3u64 {
            for p in 1..4u64 {
                let f = surface_fgp(g as u32, p as usize);
                assert_eq!(
                    f.counts().as_array(),
                    [1, g, 0, 0, 1, 0, p, 0, 0],
                    "F_{{{g},{p}}}"
                );
                assert_eq!(f.rank_h() as u64, 2 * g + p - 1);
            }
        }
        assert_eq!(
            closed_surface(2).counts().as_array(),
            [1, 2, 1, 0, 0, 0, 0, 0, 0]
        );
        for g in 0..4 {
            assert_eq!(closed_surface(g).rank_h(), 2 * g as usize);
        }
        for p in 0..5u64 {
            let f = open_pants(p as usize);
            assert_eq!(f.counts().as_array(), [1, 0, 0, 0, 0, p + 1, 0, 0, 1]);
            assert_eq!(f.rank_h() as u64, p);
        }
        assert_eq!(surface_fgp(0, 1).rank_h(), 0);
    }

    #[test]
    fn union_with_empty_is_identity() {
        let f = open_pants(2);
        assert_eq!(disjoint_union(&f, &SuturedSurface::default()), f);
    }

    #[test]
    fn union_relabels_colliding_ids() {
        let f = open_pants(2);
        let u = disjoint_union(&f, &f);
        assert_eq!(u.validate(), Ok(()));
        assert_eq!(u.counts(), f.counts() + f.counts());
        assert_eq!(u.rank_h(), 2 * f.rank_h());
    }

    #[test]
    fn compose_with_identity_preserves_shape() {
        let f = open_pants(2);
        let id2 = identity_cobordism(2);
        let left = compose(&f, &id2).unwrap();
        assert_eq!(left.validate(), Ok(()));
        assert_eq!(left.counts(), f.counts());
        assert_eq!(left.boundary_signature(), f.boundary_signature());
        let right = compose(&identity_cobordism(1), &f).unwrap();
        assert_eq!(right.counts(), f.counts());
        assert_eq!(right.rank_h(), f.rank_h());
        assert_eq!(right.incoming.len(), 2);
        assert_eq!(right.outgoing.len(), 1);
    }

    #[test]
    fn compose_pants_with_two_surfaces() {
        let f = open_pants(1);
        let g = open_pants(2);
        let src = disjoint_union(&f, &g);
        // src has outgoing [0, 3]: one from each component
        let src = SuturedSurface {
            outgoing: src.outgoing.clone(),
            ..src
        };
        let p2 = open_pants(2);
        let out = compose(&p2, &src).unwrap();
        assert_eq!(out.validate(), Ok(()));
        assert_eq!(out.components.len(), 1);
        assert_eq!(out.incoming.len(), 3);
        assert_eq!(out.outgoing.len(), 1);
        // one circle carrying the 3 incoming and 1 outgoing intervals
        assert_eq!(out.counts().k6, 4);
        assert_eq!(out.counts().k9, 1);
    }

    #[test]
    fn compose_rejects_circles_and_arity() {
        let f = surface_fgp(0, 1);
        let p = open_pants(1);
        assert!(matches!(compose(&p, &f), Err(Error::CircleInGluingRegion(_))));
        assert!(matches!(
            compose(&open_pants(2), &open_pants(1)),
            Err(Error::ArityMismatch { .. })
        ));
    }
}
