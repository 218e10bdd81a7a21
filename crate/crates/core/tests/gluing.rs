use sutured_core::gluing::{compose_iso, pants_iso, self_glue_iso};
use sutured_core::random::{random_pair, Bounds};
use sutured_core::statespace::StateSpace;
use sutured_core::superalg::{coproduct_left, regular, SuperAlgebra};
use sutured_core::surface::{compose_detailed, disjoint_union, identity_cobordism, open_pants};
use sutured_core::Grading;

#[test]
fn identity_composed_with_itself() {
    let id = identity_cobordism(1);
    let r = compose_iso(&id, &id, &Grading::tensor()).unwrap();
    let reg = regular(SuperAlgebra::new(1));
    assert_eq!(r.composite_module.dim(), reg.dim());
    assert_eq!(r.composite_module.superdim(), r.tensor.module.superdim());
}

#[test]
fn pants_after_two_rectangles_is_the_pants() {
    let id2 = disjoint_union(&identity_cobordism(1), &identity_cobordism(1));
    let r = compose_iso(&open_pants(2), &id2, &Grading::tensor()).unwrap();
    let pants = StateSpace::build(&open_pants(2), &Grading::tensor()).unwrap();
    assert_eq!(r.composite.rank(), 4);
    assert_eq!(r.composite.graded_superdim(), pants.graded_superdim());
}

#[test]
fn pants_edge_cases() {
    // P_0 is Z in degree 0 with E acting by zero
    let p0 = StateSpace::build(&open_pants(0), &Grading::tensor()).unwrap();
    let b = p0.bimodule().unwrap();
    assert_eq!(b.dim(), 1);
    assert!(b.left_actions[0].is_zero());
    assert_eq!(coproduct_left(0).dim(), 1);
    pants_iso(0, &Grading::tensor()).unwrap();
    // P_1 is the regular bimodule
    let iso = pants_iso(1, &Grading::tensor()).unwrap();
    assert_eq!(iso.block_ranks.len(), 2);
}

#[test]
fn gluing_order_does_not_change_the_result() {
    let grading = Grading::tensor();
    for seed in 0..25 {
        let (fp, f) = random_pair(seed, &Bounds::default().with_max_h(5));
        let comp = compose_detailed(&fp, &f).unwrap();
        let mut current = comp.union_left.clone();
        for (a, b) in comp.pairs.iter().rev() {
            current = self_glue_iso(&current, *a, *b, &grading).unwrap().glued.surface;
        }
        let reversed = StateSpace::build(&current, &grading).unwrap();
        let forward = compose_iso(&fp, &f, &grading).unwrap().composite;
        assert_eq!(reversed.graded_superdim(), forward.graded_superdim(), "seed {seed}");
        assert_eq!(current.counts(), comp.surface.counts(), "seed {seed}");
    }
}
