use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use sutured_core::linalg::{smith_normal_form, DenseMatrix, SparseMatrix};
use sutured_core::random::{random_surface, rng_for, Bounds};
use sutured_core::statespace::StateSpace;
use sutured_core::superalg::{is_graded_iso, tensor_middle, Bimodule};
use sutured_core::surface::{disjoint_union, BoundaryCircle, Component, SPlusId, SuturedSurface};
use sutured_core::Grading;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=12, 1usize..=12).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

/// A connected surface with `m` outgoing and `n` incoming intervals on one
/// circle, in an order chosen by `seed`.
fn interface_surface(m: usize, n: usize, seed: u64) -> SuturedSurface {
    let mut rng = rng_for(seed);
    let mut ids: Vec<SPlusId> = (0..(m + n) as u32).map(SPlusId).collect();
    ids.shuffle(&mut rng);
    let mut boundary = vec![];
    if !ids.is_empty() {
        boundary.push(BoundaryCircle::mixed(&ids));
    }
    if ids.is_empty() || rng.gen_bool(0.3) {
        boundary.push(BoundaryCircle::FullMinus);
    }
    SuturedSurface {
        components: vec![Component {
            genus: u32::from(m + n <= 2 && rng.gen_bool(0.3)),
            boundary,
        }],
        outgoing: (0..m as u32).map(SPlusId).collect(),
        incoming: (m as u32..(m + n) as u32).map(SPlusId).collect(),
    }
}

fn bimodule(m: usize, n: usize, seed: u64) -> Bimodule {
    StateSpace::build(&interface_surface(m, n, seed), &Grading::tensor())
        .and_then(|s| s.bimodule())
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_normal_form_postconditions(rows in matrix()) {
        let m = DenseMatrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.u.determinant().abs().is_one());
        prop_assert!(s.v.determinant().abs().is_one());
        prop_assert_eq!(s.u_inv.mul(&s.u), DenseMatrix::identity(m.rows()));
        prop_assert!(s.d.is_diagonal());
        let diag = s.diagonal();
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        for w in diag.windows(2) {
            // each nonzero factor divides the next; zeros come last
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        let rank = diag.iter().filter(|x| !x.is_zero()).count();
        prop_assert_eq!(rank, s.rank());
        prop_assert!(s.invariant_factors().iter().all(|x| *x > BigInt::zero()));
    }

    #[test]
    fn state_space_relations_hold(seed in any::<u64>()) {
        let f = random_surface(seed, &Bounds::default().with_max_h(6));
        let s = StateSpace::build(&f, &Grading::tensor()).unwrap();
        let b = s.bimodule().unwrap();
        prop_assert_eq!(b.dim(), 1usize << f.rank_h());
        prop_assert_eq!(b.superdim(), s.graded_superdim());
    }

    #[test]
    fn superdim_is_multiplicative(a in any::<u64>(), b in any::<u64>()) {
        let bounds = Bounds::default().with_max_h(5);
        let (f, g) = (random_surface(a, &bounds), random_surface(b, &bounds));
        let sd = |x: &SuturedSurface| StateSpace::build(x, &Grading::tensor()).unwrap().graded_superdim();
        prop_assert_eq!(sd(&disjoint_union(&f, &g)), &sd(&f) * &sd(&g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// `(X ⊗ Y) ⊗ Z ≅ X ⊗ (Y ⊗ Z)` through the common ambient `X ⊗ Y ⊗ Z`.
    #[test]
    fn tensor_middle_is_associative(
        sizes in prop::array::uniform4(0usize..=2),
        seeds in prop::array::uniform3(any::<u64>()),
    ) {
        let [a, b, c, d] = sizes;
        prop_assume!(a + b <= 3 && b + c <= 3 && c + d <= 3);
        let x = bimodule(a, b, seeds[0]);
        let y = bimodule(b, c, seeds[1]);
        let z = bimodule(c, d, seeds[2]);
        let xy = tensor_middle(&x, &y).unwrap();
        let left = tensor_middle(&xy.module, &z).unwrap();
        let yz = tensor_middle(&y, &z).unwrap();
        let right = tensor_middle(&x, &yz.module).unwrap();
        let ix = SparseMatrix::identity(x.dim());
        let iz = SparseMatrix::identity(z.dim());
        let witness = right
            .projection
            .mul(&ix.kron(&yz.projection))
            .mul(&xy.section.kron(&iz))
            .mul(&left.section);
        prop_assert!(is_graded_iso(&witness, &left.module, &right.module).is_ok());
    }
}
