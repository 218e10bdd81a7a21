use super::*;
use crate::grading::{int, ParityParams, ShiftParams};
use crate::surface::{identity_cobordism, open_pants, symmetrizer_cobordism};

fn presets(f: &SuturedSurface) -> Vec<Grading> {
    let mut out = vec![Grading::tensor()];
    if Grading::half().pi(f).is_ok() {
        out.push(Grading::half());
    }
    out
}

#[test]
fn corpus_covers_every_shape() {
    let corpus = glue_corpus();
    for case in GlueCase::ALL {
        assert!(corpus.iter().any(|c| c.case == case), "no instance of {case}");
    }
    for c in &corpus {
        let glued = c.surface.glue_intervals(c.first, c.second).unwrap();
        assert_eq!((glued.case, glued.created_sminus_circles), (c.case, c.created_sminus_circles), "{}", c.name);
    }
}

#[test]
fn every_corpus_gluing_is_verified() {
    for c in glue_corpus() {
        for grading in presets(&c.surface) {
            let r = self_glue_iso(&c.surface, c.first, c.second, &grading)
                .unwrap_or_else(|e| panic!("{} ({}): {e}", c.name, c.case));
            assert!(r.oracle.is_free());
            assert_eq!(r.oracle.rank(), r.target.rank(), "{}", c.name);
            let expected = if c.case.rank_change() == 0 { 0 } else { 1 };
            assert_eq!(r.degree_shift, int(expected), "{}", c.name);
        }
    }
}

#[test]
fn folded_rectangle_has_vanishing_relation() {
    let c = glue_corpus().into_iter().find(|c| c.case == GlueCase::C21b).unwrap();
    let s = StateSpace::build(&c.surface, &Grading::tensor()).unwrap();
    let e = s
        .action_matrix(c.first, Side::Outgoing)
        .unwrap()
        .add(&s.action_matrix(c.second, Side::Outgoing).unwrap());
    assert!(e.is_zero());
    let r = self_glue_iso(&c.surface, c.first, c.second, &Grading::tensor()).unwrap();
    assert_eq!(r.oracle.rank(), s.rank());
}

#[test]
fn two_disks_glue_to_a_disk() {
    let c = &glue_corpus()[0];
    let r = self_glue_iso(&c.surface, c.first, c.second, &Grading::tensor()).unwrap();
    assert_eq!((r.source.rank(), r.target.rank()), (1, 1));
    assert_eq!(r.target.h(), 0);
}

#[test]
fn split_sign_flip_is_still_an_iso() {
    let c = glue_corpus().into_iter().find(|c| c.case == GlueCase::C21a).unwrap();
    let flipped = GlueOptions { split_circle_sign: -1 };
    self_glue_iso_with(&c.surface, c.first, c.second, &Grading::tensor(), &flipped).unwrap();
}

#[test]
fn incoming_intervals_are_rejected() {
    let f = open_pants(2);
    assert_eq!(
        self_glue_iso(&f, SPlusId(0), SPlusId(1), &Grading::tensor()).unwrap_err(),
        Error::NotOutgoing(SPlusId(1))
    );
}

#[test]
fn composing_identities() {
    for n in 1..=2 {
        let id = identity_cobordism(n);
        let r = compose_iso(&id, &id, &Grading::tensor()).unwrap();
        assert_eq!(r.composite.rank(), 1 << n);
        assert_eq!(r.steps.len(), n);
    }
}

#[test]
fn composing_pants_with_an_identity() {
    let g = Grading::tensor();
    compose_iso(&open_pants(2), &identity_cobordism(2), &g).unwrap();
    compose_iso(&identity_cobordism(1), &open_pants(2), &g).unwrap();
    // the half grading needs an even number of intervals on each disk
    let g = Grading::half();
    compose_iso(&open_pants(1), &identity_cobordism(1), &g).unwrap();
    compose_iso(&identity_cobordism(1), &open_pants(1), &g).unwrap();
}

#[test]
fn composing_pants_with_pants() {
    let mut two = open_pants(1);
    two.incoming.clear();
    two.outgoing = vec![SPlusId(0), SPlusId(1)];
    compose_iso(&open_pants(2), &two, &Grading::tensor()).unwrap();
    compose_iso(&open_pants(2), &crate::surface::disjoint_union(&open_pants(1), &open_pants(0)), &Grading::tensor())
        .unwrap();
}

#[test]
fn pants_match_the_coproduct() {
    assert_eq!(pants_arc_signs(3), vec![1, -1, 1]);
    for p in 0..=4 {
        let iso = pants_iso(p, &Grading::tensor()).unwrap();
        assert_eq!(iso.block_ranks.iter().map(|b| b.2).sum::<usize>(), 1 << p);
    }
    let other = Grading::new(
        ShiftParams::new(int(1), int(3), int(-2), int(5)),
        ParityParams::new(true, true, false, true),
    );
    pants_iso(3, &other).unwrap();
}

#[test]
fn pants_reject_other_slopes() {
    assert!(matches!(pants_iso(2, &Grading::half()), Err(Error::ParameterConstraintViolated(_))));
    let n3 = Grading::new(ShiftParams::tensor(), ParityParams::new(false, false, true, false));
    assert!(matches!(pants_iso(2, &n3), Err(Error::ParameterConstraintViolated(_))));
}

#[test]
fn identity_and_symmetrizer_witnesses() {
    for n in 0..=3 {
        identity_witness(n, &Grading::tensor()).unwrap();
    }
    for (n1, n2) in [(1, 1), (1, 2), (2, 1), (0, 2)] {
        symmetrizer_witness(n1, n2, &Grading::tensor()).unwrap();
    }
    assert_eq!(symmetrizer_cobordism(1, 1).outgoing, vec![SPlusId(2), SPlusId(0)]);
}

#[test]
fn naturality_square_commutes() {
    let w = naturality_witness(&open_pants(2), &identity_cobordism(1), &Grading::tensor()).unwrap();
    assert_eq!(w.source.dim(), w.target.dim());
    naturality_witness(&identity_cobordism(1), &open_pants(1), &Grading::tensor()).unwrap();
}
