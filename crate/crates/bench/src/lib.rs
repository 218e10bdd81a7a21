//! Fixtures shared by the benchmarks.

use sutured_core::random::{random_pair, Bounds};
use sutured_core::surface::{disjoint_union, identity_cobordism, open_pants, SuturedSurface};

/// Composable pairs `(outer, inner)` of increasing size.
pub fn compose_fixtures() -> Vec<(&'static str, SuturedSurface, SuturedSurface)> {
    let id2 = disjoint_union(&identity_cobordism(1), &identity_cobordism(1));
    let (fp, f) = random_pair(42, &Bounds::default());
    vec![
        ("identity", identity_cobordism(1), identity_cobordism(1)),
        ("pants2 after rectangles", open_pants(2), id2),
        ("pants3 after identity3", open_pants(3), identity_cobordism(3)),
        ("random seed 42", fp, f),
    ]
}
