use crate::surface::{BoundaryCircle, Component, GlueCase, SPlusId, SuturedSurface};

/// A hand-built gluing exercising one shape.
#[derive(Clone, Debug)]
pub struct GlueInstance {
    pub name: &'static str,
    pub surface: SuturedSurface,
    pub first: SPlusId,
    pub second: SPlusId,
    pub case: GlueCase,
    pub created_sminus_circles: u8,
}

fn mixed(ids: &[u32]) -> BoundaryCircle {
    BoundaryCircle::mixed(&ids.iter().map(|&i| SPlusId(i)).collect::<Vec<_>>())
}

fn component(genus: u32, boundary: Vec<BoundaryCircle>) -> Component {
    Component { genus, boundary }
}

/// Every `S+` component outgoing.
fn outgoing(components: Vec<Component>) -> SuturedSurface {
    let mut out: Vec<SPlusId> = components.iter().flat_map(Component::splus_ids).collect();
    out.sort();
    SuturedSurface {
        components,
        incoming: vec![],
        outgoing: out,
    }
}

fn instance(
    name: &'static str,
    components: Vec<Component>,
    pair: (u32, u32),
    case: GlueCase,
    created: u8,
) -> GlueInstance {
    GlueInstance {
        name,
        surface: outgoing(components),
        first: SPlusId(pair.0),
        second: SPlusId(pair.1),
        case,
        created_sminus_circles: created,
    }
}

/// One instance per gluing shape, with every possible number of new `S-`
/// circles in the shapes that allow several.
pub fn glue_corpus() -> Vec<GlueInstance> {
    vec![
        instance(
            "two disks",
            vec![component(0, vec![mixed(&[0])]), component(0, vec![mixed(&[1])])],
            (0, 1),
            GlueCase::C11,
            1,
        ),
        instance(
            "rectangle and disk",
            vec![component(0, vec![mixed(&[0, 1])]), component(0, vec![mixed(&[2])])],
            (1, 2),
            GlueCase::C12,
            0,
        ),
        instance(
            "two rectangles, one with a handle",
            vec![
                component(1, vec![mixed(&[0, 1])]),
                component(0, vec![mixed(&[2, 3]), BoundaryCircle::FullMinus]),
            ],
            (1, 2),
            GlueCase::C13,
            0,
        ),
        instance(
            "one circle, intervals apart",
            vec![component(0, vec![mixed(&[0, 2, 1, 3])])],
            (0, 1),
            GlueCase::C21a,
            0,
        ),
        instance(
            "one circle, intervals adjacent on one side",
            vec![component(1, vec![mixed(&[0, 1, 2])])],
            (0, 1),
            GlueCase::C21a,
            1,
        ),
        instance(
            "one circle, intervals adjacent on both sides",
            vec![component(0, vec![mixed(&[0, 1]), mixed(&[2])])],
            (0, 1),
            GlueCase::C21a,
            2,
        ),
        instance(
            "rectangle folded onto itself",
            vec![component(0, vec![mixed(&[0, 1])])],
            (0, 1),
            GlueCase::C21b,
            2,
        ),
        instance(
            "two circles with other intervals",
            vec![component(0, vec![mixed(&[0, 2]), mixed(&[1, 3])])],
            (0, 1),
            GlueCase::C22a,
            0,
        ),
        instance(
            "three circles, two of them glued",
            vec![component(0, vec![mixed(&[0]), mixed(&[1]), mixed(&[2])])],
            (0, 1),
            GlueCase::C22a,
            1,
        ),
        instance(
            "annulus with one interval per circle",
            vec![component(0, vec![mixed(&[0]), mixed(&[1])])],
            (0, 1),
            GlueCase::C22b,
            1,
        ),
    ]
}
