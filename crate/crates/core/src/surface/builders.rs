use super::{disjoint_union, BoundaryCircle, Component, SPlusId, SuturedSurface};

fn single(component: Component, incoming: Vec<SPlusId>, outgoing: Vec<SPlusId>) -> SuturedSurface {
    SuturedSurface {
        components: vec![component],
        incoming,
        outgoing,
    }
}

/// Connected genus `g` surface whose boundary is `p` circles entirely in
/// `S+`, all outgoing.
pub fn surface_fgp(g: u32, p: usize) -> SuturedSurface {
    let ids: Vec<SPlusId> = (0..p as u32).map(SPlusId).collect();
    single(
        Component {
            genus: g,
            boundary: ids.iter().map(|id| BoundaryCircle::FullPlus(*id)).collect(),
        },
        vec![],
        ids,
    )
}

/// Closed connected surface of genus `g`.
pub fn closed_surface(g: u32) -> SuturedSurface {
    single(
        Component {
            genus: g,
            boundary: vec![],
        },
        vec![],
        vec![],
    )
}

/// Disk whose boundary is one outgoing interval and one `S-` arc.
pub fn disk_plus_minus() -> SuturedSurface {
    open_pants(0)
}

/// The open `p`-tuple of pants: a disk whose boundary carries the outgoing
/// interval `0` followed by the incoming intervals `1..=p`.
pub fn open_pants(p: usize) -> SuturedSurface {
    let ids: Vec<SPlusId> = (0..=p as u32).map(SPlusId).collect();
    single(
        Component {
            genus: 0,
            boundary: vec![BoundaryCircle::mixed(&ids)],
        },
        ids[1..].to_vec(),
        vec![ids[0]],
    )
}

/// `n` intervals times `[0, 1]`: `n` rectangles, rectangle `i` going from
/// incoming `2i + 1` to outgoing `2i`.
pub fn identity_cobordism(n: usize) -> SuturedSurface {
    (0..n).fold(SuturedSurface::default(), |acc, _| {
        disjoint_union(&acc, &open_pants(1))
    })
}

/// `(M1 ⊔ M2) × [0, 1]` for interval collections of sizes `n1` and `n2`,
/// with the target listed as `M2` then `M1`.
pub fn symmetrizer_cobordism(n1: usize, n2: usize) -> SuturedSurface {
    let mut f = identity_cobordism(n1 + n2);
    f.outgoing.rotate_left(n1);
    f
}

/// Annulus with the given two boundary circles.
pub fn annulus(outer: BoundaryCircle, inner: BoundaryCircle) -> SuturedSurface {
    let mut ids = outer.splus_ids();
    ids.extend(inner.splus_ids());
    single(
        Component {
            genus: 0,
            boundary: vec![outer, inner],
        },
        vec![],
        ids,
    )
}

/// Annulus with both boundary circles in `S+`.
pub fn annulus_plus_plus() -> SuturedSurface {
    surface_fgp(0, 2)
}

/// Annulus with both boundary circles in `S-`.
pub fn annulus_minus_minus() -> SuturedSurface {
    annulus(BoundaryCircle::FullMinus, BoundaryCircle::FullMinus)
}

/// Annulus with one `S+` circle and one `S-` circle.
pub fn annulus_plus_minus() -> SuturedSurface {
    annulus(BoundaryCircle::FullPlus(SPlusId(0)), BoundaryCircle::FullMinus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_are_valid() {
        let all = [
            surface_fgp(2, 3),
            closed_surface(1),
            disk_plus_minus(),
            open_pants(4),
            identity_cobordism(3),
            symmetrizer_cobordism(2, 1),
            annulus_plus_plus(),
            annulus_minus_minus(),
            annulus_plus_minus(),
        ];
        for f in &all {
            assert_eq!(f.validate(), Ok(()), "{f:?}");
        }
    }

    #[test]
    fn open_pants_zero_is_a_disk() {
        let f = open_pants(0);
        assert_eq!(f.rank_h(), 0);
        assert_eq!(f.outgoing.len(), 1);
        assert!(f.incoming.is_empty());
    }

    #[test]
    fn symmetrizer_reverses_target_order() {
        let f = symmetrizer_cobordism(1, 2);
        let id = identity_cobordism(3);
        assert_eq!(f.incoming, id.incoming);
        assert_eq!(f.outgoing, vec![id.outgoing[1], id.outgoing[2], id.outgoing[0]]);
    }

    #[test]
    fn surface_fgp_with_one_circle_is_a_disk() {
        assert_eq!(surface_fgp(0, 1).rank_h(), 0);
    }
}
