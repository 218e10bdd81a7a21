//! Seeded generation of sutured surfaces and composable pairs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::surface::{BoundaryCircle, Component, SPlusId, SuturedSurface};

/// Size limits for generated surfaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_components: usize,
    pub max_genus: u32,
    pub max_circles: usize,
    pub max_arcs_per_circle: usize,
    pub max_h: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_components: 3,
            max_genus: 2,
            max_circles: 3,
            max_arcs_per_circle: 3,
            max_h: 8,
        }
    }
}

impl Bounds {
    pub fn with_max_h(self, max_h: usize) -> Self {
        Bounds { max_h, ..self }
    }
}

/// The generator used for trial `seed`.
pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_circle(rng: &mut impl Rng, bounds: &Bounds, next_id: &mut u32) -> BoundaryCircle {
    let mut fresh = || {
        let id = SPlusId(*next_id);
        *next_id += 1;
        id
    };
    match rng.gen_range(0..4) {
        0 => BoundaryCircle::FullPlus(fresh()),
        1 => BoundaryCircle::FullMinus,
        _ => {
            let n = rng.gen_range(1..=bounds.max_arcs_per_circle.max(1));
            let ids: Vec<SPlusId> = (0..n).map(|_| fresh()).collect();
            BoundaryCircle::mixed(&ids)
        }
    }
}

/// Components with fresh ids; circle placement ignores the `h` bound.
fn random_components(rng: &mut impl Rng, bounds: &Bounds) -> Vec<Component> {
    let mut next_id = 0;
    let n = rng.gen_range(1..=bounds.max_components.max(1));
    (0..n)
        .map(|_| {
            let genus = rng.gen_range(0..=bounds.max_genus);
            let circles = rng.gen_range(0..=bounds.max_circles);
            Component {
                genus,
                boundary: (0..circles).map(|_| random_circle(rng, bounds, &mut next_id)).collect(),
            }
        })
        .collect()
}

/// A random valid surface within `bounds`. Intervals are split at random
/// between incoming and outgoing, `S+` circles are outgoing.
pub fn random_surface_with(rng: &mut impl Rng, bounds: &Bounds) -> SuturedSurface {
    loop {
        let components = random_components(rng, bounds);
        let mut f = SuturedSurface {
            components,
            incoming: vec![],
            outgoing: vec![],
        };
        if f.rank_h() > bounds.max_h {
            continue;
        }
        let mut ids = f.splus_ids();
        ids.shuffle(rng);
        for id in ids {
            if f.is_interval(id) && rng.gen_bool(0.5) {
                f.incoming.push(id);
            } else {
                f.outgoing.push(id);
            }
        }
        return f;
    }
}

pub fn random_surface(seed: u64, bounds: &Bounds) -> SuturedSurface {
    random_surface_with(&mut rng_for(seed), bounds)
}

/// A surface with at least `m` intervals; `m` of them, in random order,
/// form `side`, everything else goes on the other side.
fn with_interface(rng: &mut impl Rng, bounds: &Bounds, m: usize, interface_outgoing: bool) -> SuturedSurface {
    loop {
        let mut f = random_surface_with(rng, bounds);
        let mut intervals: Vec<SPlusId> = f.splus_ids().into_iter().filter(|id| f.is_interval(*id)).collect();
        if intervals.len() < m {
            continue;
        }
        intervals.shuffle(rng);
        let interface = intervals[..m].to_vec();
        let mut rest: Vec<SPlusId> = f.splus_ids().into_iter().filter(|id| !interface.contains(id)).collect();
        rest.shuffle(rng);
        if interface_outgoing {
            f.outgoing = interface;
            f.incoming = rest;
        } else {
            f.incoming = interface;
            f.outgoing = rest;
        }
        return f;
    }
}

/// A composable pair `(F', F)`: the outgoing intervals of `F` match the
/// incoming intervals of `F'`, at most three of them.
pub fn random_pair_with(rng: &mut impl Rng, bounds: &Bounds) -> (SuturedSurface, SuturedSurface) {
    let m = rng.gen_range(0..=3);
    let f = with_interface(rng, bounds, m, true);
    let fp = with_interface(rng, bounds, m, false);
    (fp, f)
}

pub fn random_pair(seed: u64, bounds: &Bounds) -> (SuturedSurface, SuturedSurface) {
    random_pair_with(&mut rng_for(seed), bounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::compose;

    #[test]
    fn fixed_seed_is_reproducible() {
        let b = Bounds::default();
        assert_eq!(random_surface(7, &b), random_surface(7, &b));
        assert_eq!(random_pair(7, &b), random_pair(7, &b));
    }

    #[test]
    fn generated_surfaces_are_valid_and_bounded() {
        let b = Bounds::default().with_max_h(5);
        for seed in 0..200 {
            let f = random_surface(seed, &b);
            f.validate().unwrap();
            assert!(f.rank_h() <= 5);
            assert!(f.components.len() <= 3);
        }
    }

    #[test]
    fn generated_pairs_compose() {
        let b = Bounds::default();
        for seed in 0..100 {
            let (fp, f) = random_pair(seed, &b);
            assert!(f.outgoing.len() <= 3);
            assert!(f.rank_h() <= 8 && fp.rank_h() <= 8);
            compose(&fp, &f).unwrap().validate().unwrap();
        }
    }
}
