use std::fmt;

use super::{BoundaryArc, BoundaryCircle, Component, SPlusId, SuturedSurface};
use crate::error::{Error, Result};

/// Which shape an interval gluing takes.
///
/// The first digit says whether the intervals lie on different components
/// (1) or on the same component (2). For case 1 the second digit counts how
/// many of the two components carry further `S+` (1: neither, 2: one,
/// 3: both). For case 2 the second digit says whether the intervals share a
/// boundary circle (1) or not (2), and the letter says whether the component
/// carries further `S+` (a) or not (b).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GlueCase {
    C11,
    C12,
    C13,
    C21a,
    C21b,
    C22a,
    C22b,
}

impl GlueCase {
    pub const ALL: [GlueCase; 7] = [
        GlueCase::C11,
        GlueCase::C12,
        GlueCase::C13,
        GlueCase::C21a,
        GlueCase::C21b,
        GlueCase::C22a,
        GlueCase::C22b,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            GlueCase::C11 => "1-1",
            GlueCase::C12 => "1-2",
            GlueCase::C13 => "1-3",
            GlueCase::C21a => "2-1a",
            GlueCase::C21b => "2-1b",
            GlueCase::C22a => "2-2a",
            GlueCase::C22b => "2-2b",
        }
    }

    /// Change of `rank_h` under the gluing.
    pub fn rank_change(self) -> i64 {
        match self {
            GlueCase::C11 | GlueCase::C21b | GlueCase::C22b => 0,
            _ => -1,
        }
    }

    pub fn same_component(self) -> bool {
        !matches!(self, GlueCase::C11 | GlueCase::C12 | GlueCase::C13)
    }
}

impl fmt::Display for GlueCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Circles of the glued surface that did not exist before.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NewCircles {
    /// The two glued circles merged into one, at `(component, circle)`.
    Merged { at: (usize, usize) },
    /// The glued circle split in two. `first` holds the boundary between
    /// the two intervals that starts right after the first interval.
    Split {
        first: (usize, usize),
        second: (usize, usize),
    },
}

/// How components, torus classes and boundary circles of the old surface
/// sit inside the glued surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMap {
    /// New index of every old component.
    pub component: Vec<usize>,
    /// Offset of every old component's torus classes in its new component.
    pub torus_offset: Vec<usize>,
    /// New position of every old circle; `None` for the circles that were
    /// cut open by the gluing.
    pub circle: Vec<Vec<Option<(usize, usize)>>>,
    pub new_circles: NewCircles,
    /// Component and index of the first of the two torus classes created
    /// when gluing two circles of one component.
    pub new_torus: Option<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct GlueResult {
    pub surface: SuturedSurface,
    pub case: GlueCase,
    pub created_sminus_circles: u8,
    pub map: BoundaryMap,
    /// Old location of the first interval as `(component, circle)`.
    pub first: (usize, usize),
    /// Old location of the second interval as `(component, circle)`.
    pub second: (usize, usize),
}

/// The word of a mixed circle read from just after position `pos`,
/// ending just before it. Starts and ends with an `S-` arc.
fn open_at(word: &[BoundaryArc], pos: usize) -> Vec<BoundaryArc> {
    let n = word.len();
    (1..n).map(|k| word[(pos + k) % n]).collect()
}

/// Closes an open word whose last `S-` arc is glued onto its first one.
fn close(mut open: Vec<BoundaryArc>) -> BoundaryCircle {
    open.pop();
    if open.is_empty() {
        BoundaryCircle::FullMinus
    } else {
        BoundaryCircle::Mixed(open)
    }
}

fn mixed_word(comp: &Component, circle: usize) -> &[BoundaryArc] {
    match &comp.boundary[circle] {
        BoundaryCircle::Mixed(w) => w,
        _ => unreachable!("intervals lie on mixed circles"),
    }
}

impl SuturedSurface {
    /// Glues the outgoing interval `i1` to the outgoing interval `i2`,
    /// reversing orientation. Both disappear from the outgoing list.
    pub fn glue_intervals(&self, i1: SPlusId, i2: SPlusId) -> Result<GlueResult> {
        if i1 == i2 {
            return Err(Error::SameInterval(i1));
        }
        let mut locs = [None, None];
        for (slot, id) in locs.iter_mut().zip([i1, i2]) {
            let loc = self.locate(id).ok_or(Error::NotAnInterval(id))?;
            if !loc.is_interval() {
                return Err(Error::NotAnInterval(id));
            }
            if !self.is_outgoing(id) {
                return Err(Error::NotOutgoing(id));
            }
            *slot = Some(loc);
        }
        let (l1, l2) = (locs[0].unwrap(), locs[1].unwrap());
        let others_on = |c: usize| {
            self.components[c]
                .splus_ids()
                .iter()
                .any(|id| *id != i1 && *id != i2)
        };
        let outgoing: Vec<SPlusId> = self
            .outgoing
            .iter()
            .copied()
            .filter(|id| *id != i1 && *id != i2)
            .collect();

        let mut components = self.components.clone();
        let ncomp = components.len();
        let (case, created, map);
        if l1.component != l2.component {
            let (a, b) = (l1.component, l2.component);
            case = match (others_on(a), others_on(b)) {
                (false, false) => GlueCase::C11,
                (true, true) => GlueCase::C13,
                _ => GlueCase::C12,
            };
            let ca = &self.components[a];
            let cb = &self.components[b];
            let mut word = open_at(mixed_word(ca, l1.circle), l1.position.unwrap());
            word.pop();
            let mut tail = open_at(mixed_word(cb, l2.circle), l2.position.unwrap());
            tail.pop();
            word.extend(tail);
            let merged_circle = if word.is_empty() {
                BoundaryCircle::FullMinus
            } else {
                BoundaryCircle::Mixed(word)
            };
            created = u8::from(merged_circle == BoundaryCircle::FullMinus);

            let mut boundary = ca.boundary.clone();
            boundary[l1.circle] = merged_circle;
            boundary.extend(
                cb.boundary
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != l2.circle)
                    .map(|(_, c)| c.clone()),
            );
            let merged = Component {
                genus: ca.genus + cb.genus,
                boundary,
            };
            let lo = a.min(b);
            let hi = a.max(b);
            components[lo] = merged;
            components.remove(hi);

            let new_index = |c: usize| {
                if c == a || c == b {
                    lo
                } else if c > hi {
                    c - 1
                } else {
                    c
                }
            };
            let component: Vec<usize> = (0..ncomp).map(new_index).collect();
            let torus_offset: Vec<usize> = (0..ncomp)
                .map(|c| if c == b { 2 * ca.genus as usize } else { 0 })
                .collect();
            let nb_a = ca.boundary.len();
            let circle = (0..ncomp)
                .map(|c| {
                    let nc = new_index(c);
                    (0..self.components[c].boundary.len())
                        .map(|j| {
                            if c == a {
                                (j != l1.circle).then_some((nc, j))
                            } else if c == b {
                                match j.cmp(&l2.circle) {
                                    std::cmp::Ordering::Less => Some((nc, nb_a + j)),
                                    std::cmp::Ordering::Equal => None,
                                    std::cmp::Ordering::Greater => Some((nc, nb_a + j - 1)),
                                }
                            } else {
                                Some((nc, j))
                            }
                        })
                        .collect()
                })
                .collect();
            map = BoundaryMap {
                component,
                torus_offset,
                circle,
                new_circles: NewCircles::Merged { at: (lo, l1.circle) },
                new_torus: None,
            };
        } else if l1.circle == l2.circle {
            let c = l1.component;
            case = if others_on(c) {
                GlueCase::C21a
            } else {
                GlueCase::C21b
            };
            let word = mixed_word(&self.components[c], l1.circle);
            let open = open_at(word, l1.position.unwrap());
            let n = word.len();
            let cut = (l2.position.unwrap() + n - l1.position.unwrap() - 1) % n;
            let first = close(open[..cut].to_vec());
            let second = close(open[cut + 1..].to_vec());
            created = u8::from(first == BoundaryCircle::FullMinus)
                + u8::from(second == BoundaryCircle::FullMinus);
            let comp = &mut components[c];
            comp.boundary[l1.circle] = first;
            comp.boundary.push(second);
            let appended = comp.boundary.len() - 1;
            map = BoundaryMap {
                component: (0..ncomp).collect(),
                torus_offset: vec![0; ncomp],
                circle: self
                    .components
                    .iter()
                    .enumerate()
                    .map(|(ci, comp)| {
                        (0..comp.boundary.len())
                            .map(|j| (ci != c || j != l1.circle).then_some((ci, j)))
                            .collect()
                    })
                    .collect(),
                new_circles: NewCircles::Split {
                    first: (c, l1.circle),
                    second: (c, appended),
                },
                new_torus: None,
            };
        } else {
            let c = l1.component;
            case = if others_on(c) {
                GlueCase::C22a
            } else {
                GlueCase::C22b
            };
            let old = &self.components[c];
            let mut word = open_at(mixed_word(old, l1.circle), l1.position.unwrap());
            word.pop();
            let mut tail = open_at(mixed_word(old, l2.circle), l2.position.unwrap());
            tail.pop();
            word.extend(tail);
            let merged_circle = if word.is_empty() {
                BoundaryCircle::FullMinus
            } else {
                BoundaryCircle::Mixed(word)
            };
            created = u8::from(merged_circle == BoundaryCircle::FullMinus);
            let comp = &mut components[c];
            comp.genus += 1;
            comp.boundary[l1.circle] = merged_circle;
            comp.boundary.remove(l2.circle);
            map = BoundaryMap {
                component: (0..ncomp).collect(),
                torus_offset: vec![0; ncomp],
                circle: self
                    .components
                    .iter()
                    .enumerate()
                    .map(|(ci, comp)| {
                        (0..comp.boundary.len())
                            .map(|j| {
                                if ci != c {
                                    Some((ci, j))
                                } else if j == l1.circle || j == l2.circle {
                                    None
                                } else if j > l2.circle {
                                    Some((ci, j - 1))
                                } else {
                                    Some((ci, j))
                                }
                            })
                            .collect()
                    })
                    .collect(),
                new_circles: NewCircles::Merged {
                    at: (
                        c,
                        if l1.circle > l2.circle {
                            l1.circle - 1
                        } else {
                            l1.circle
                        },
                    ),
                },
                new_torus: Some((c, 2 * old.genus as usize)),
            };
        }
        let surface = SuturedSurface {
            components,
            incoming: self.incoming.clone(),
            outgoing,
        };
        debug_assert_eq!(surface.validate(), Ok(()));
        Ok(GlueResult {
            surface,
            case,
            created_sminus_circles: created,
            map,
            first: (l1.component, l1.circle),
            second: (l2.component, l2.circle),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{disjoint_union, disk_plus_minus, open_pants, BoundaryCircle as BC};

    fn id(n: u32) -> SPlusId {
        SPlusId(n)
    }

    #[test]
    fn two_disks_give_a_disk_with_sminus_boundary() {
        let f = disjoint_union(&disk_plus_minus(), &disk_plus_minus());
        let r = f.glue_intervals(id(0), id(1)).unwrap();
        assert_eq!(r.case, GlueCase::C11);
        assert_eq!(r.created_sminus_circles, 1);
        assert_eq!(r.surface.components.len(), 1);
        assert_eq!(r.surface.components[0].boundary, vec![BC::FullMinus]);
        assert_eq!(r.surface.rank_h(), f.rank_h());
    }

    #[test]
    fn self_glued_rectangle_is_an_annulus() {
        let f = open_pants(1).all_outgoing();
        let r = f.glue_intervals(id(0), id(1)).unwrap();
        assert_eq!(r.case, GlueCase::C21b);
        assert_eq!(r.created_sminus_circles, 2);
        assert_eq!(
            r.surface.components[0].boundary,
            vec![BC::FullMinus, BC::FullMinus]
        );
        assert_eq!(r.surface.components[0].genus, 0);
    }

    #[test]
    fn different_circles_add_genus() {
        let f = SuturedSurface {
            components: vec![Component {
                genus: 0,
                boundary: vec![
                    BC::mixed(&[id(0)]),
                    BC::mixed(&[id(1)]),
                    BC::FullPlus(id(2)),
                ],
            }],
            incoming: vec![],
            outgoing: vec![id(0), id(1), id(2)],
        };
        let r = f.glue_intervals(id(0), id(1)).unwrap();
        assert_eq!(r.case, GlueCase::C22a);
        assert_eq!(r.surface.components[0].genus, 1);
        assert_eq!(r.created_sminus_circles, 1);
        assert_eq!(r.map.new_torus, Some((0, 0)));
        assert_eq!(r.map.circle[0][2], Some((0, 1)));
        assert_eq!(r.surface.rank_h() as i64, f.rank_h() as i64 - 1);
    }

    #[test]
    fn split_keeps_the_arcs_between_the_intervals() {
        // word: 0 - 1 - 2 - 3 -, glue 0 to 2
        let f = SuturedSurface {
            components: vec![Component {
                genus: 0,
                boundary: vec![BC::mixed(&[id(0), id(1), id(2), id(3)])],
            }],
            incoming: vec![],
            outgoing: vec![id(0), id(1), id(2), id(3)],
        };
        let r = f.glue_intervals(id(0), id(2)).unwrap();
        assert_eq!(r.case, GlueCase::C21a);
        assert_eq!(r.created_sminus_circles, 0);
        let b = &r.surface.components[0].boundary;
        assert_eq!(b[0], BC::Mixed(vec![BoundaryArc::Minus, BoundaryArc::Plus(id(1))]));
        assert_eq!(b[1], BC::Mixed(vec![BoundaryArc::Minus, BoundaryArc::Plus(id(3))]));
    }

    #[test]
    fn errors_on_bad_arguments() {
        let f = open_pants(2);
        assert_eq!(f.glue_intervals(id(0), id(0)).unwrap_err(), Error::SameInterval(id(0)));
        assert_eq!(f.glue_intervals(id(0), id(1)).unwrap_err(), Error::NotOutgoing(id(1)));
        assert_eq!(f.glue_intervals(id(0), id(9)).unwrap_err(), Error::NotAnInterval(id(9)));
    }

    #[test]
    fn rank_and_euler_changes_match_the_case() {
        let cases = [
            (open_pants(2).all_outgoing(), id(0), id(1)),
            (disjoint_union(&open_pants(1), &open_pants(2)).all_outgoing(), id(0), id(2)),
            (disjoint_union(&open_pants(1), &disk_plus_minus()).all_outgoing(), id(0), id(2)),
        ];
        for (f, a, b) in cases {
            let r = f.glue_intervals(a, b).unwrap();
            assert_eq!(
                r.surface.rank_h() as i64 - f.rank_h() as i64,
                r.case.rank_change(),
                "{}",
                r.case
            );
            assert_eq!(
                r.surface.euler_characteristic(),
                f.euler_characteristic() - 1
            );
        }
    }
}
