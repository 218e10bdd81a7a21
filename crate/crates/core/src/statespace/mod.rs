//! The graded state space of a sutured surface: the exterior algebra on
//! `H1(F, S+)`, shifted by `δ(F)` in degree and by `π(F)` in parity, with
//! one odd endomorphism `E_I` of degree `-1` per `S+` interval.

mod reference;


use crate::error::{Error, Result};
use crate::exterior::{bits_above, bits_below, MonomialBasis};
use crate::grading::{Grading, Rational};
use crate::homology::{canonical_basis, phi, H1Basis};
use crate::laurent::LaurentPoly;
use crate::linalg::SparseMatrix;
use crate::superalg::{Bimodule, Grades};
use crate::surface::{SPlusId, SuturedSurface};

pub use reference::{reference_dimension_fgp, ReferenceFormula};

/// Which sign convention an interval action uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Removal sign `(-1)^{r-1}` and the outer sign `(-1)^{π(F)}`.
    Outgoing,
    /// Removal sign `(-1)^{k-r}`, no outer sign.
    Incoming,
}

/// An endomorphism of a state space, homogeneous in degree and parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedEndo {
    pub matrix: SparseMatrix,
    pub degree: Rational,
    pub parity: u8,
}

#[derive(Clone, Debug)]
pub struct StateSpace {
    pub surface: SuturedSurface,
    pub grading: Grading,
    pub basis: H1Basis,
    pub monomials: MonomialBasis,
    pub delta: Rational,
    pub pi: u8,
}

impl StateSpace {
    pub fn build(f: &SuturedSurface, grading: &Grading) -> Result<Self> {
        f.validate()?;
        Self::with_basis(f, grading, canonical_basis(f))
    }

    /// The state space on monomials in a chosen basis of `H1(F, S+)`.
    pub fn with_basis(f: &SuturedSurface, grading: &Grading, basis: H1Basis) -> Result<Self> {
        let delta = grading.delta(f);
        let pi = grading.pi(f)?;
        Ok(StateSpace {
            surface: f.clone(),
            grading: grading.clone(),
            monomials: MonomialBasis::new(basis.len()),
            basis,
            delta,
            pi,
        })
    }

    /// Number of basis monomials, `2^h`.
    pub fn rank(&self) -> usize {
        self.monomials.len()
    }

    pub fn h(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> Rational {
        &self.delta + Rational::from_integer(self.monomials.degree(i).into())
    }

    pub fn parity(&self, i: usize) -> u8 {
        ((u32::from(self.pi) + self.monomials.degree(i)) % 2) as u8
    }

    pub fn grades(&self) -> Grades {
        Grades::new(
            self.delta.clone(),
            (0..self.rank()).map(|i| i64::from(self.monomials.degree(i))).collect(),
            (0..self.rank()).map(|i| self.parity(i)).collect(),
        )
    }

    /// The action of `E_I` with the given sign convention, regardless of
    /// whether `I` is listed as incoming or outgoing.
    pub fn action_matrix(&self, id: SPlusId, side: Side) -> Result<SparseMatrix> {
        if !self.surface.is_interval(id) {
            return Err(Error::NotAnInterval(id));
        }
        let values: Vec<i64> = self.basis.elements.iter().map(|e| phi(id, e)).collect();
        let outer = if side == Side::Outgoing && self.pi % 2 == 1 { -1 } else { 1 };
        let cols = self
            .monomials
            .masks()
            .iter()
            .map(|&mask| {
                let mut col = Vec::new();
                let mut rest = mask;
                while rest != 0 {
                    let i = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if values[i] == 0 {
                        continue;
                    }
                    let swaps = match side {
                        Side::Outgoing => bits_below(mask, i),
                        Side::Incoming => bits_above(mask, i),
                    };
                    let sign = if swaps % 2 == 0 { outer } else { -outer };
                    col.push((self.monomials.index_of(mask & !(1 << i)), sign * values[i]));
                }
                col
            })
            .collect();
        Ok(SparseMatrix::from_columns(self.rank(), cols))
    }

    /// `E_I` with the convention matching the side `I` is listed on.
    pub fn e_action(&self, id: SPlusId) -> Result<GradedEndo> {
        if !self.surface.is_interval(id) {
            return Err(Error::NotAnInterval(id));
        }
        let side = if self.surface.is_outgoing(id) {
            Side::Outgoing
        } else {
            Side::Incoming
        };
        Ok(GradedEndo {
            matrix: self.action_matrix(id, side)?,
            degree: Rational::from_integer((-1).into()),
            parity: 1,
        })
    }

    /// The bimodule over `(A(outgoing intervals), A(incoming intervals))`.
    pub fn bimodule(&self) -> Result<Bimodule> {
        let left = self
            .surface
            .outgoing_intervals()
            .into_iter()
            .map(|id| self.e_action(id).map(|e| e.matrix))
            .collect::<Result<Vec<_>>>()?;
        let right = self
            .surface
            .incoming_intervals()
            .into_iter()
            .map(|id| self.e_action(id).map(|e| e.matrix))
            .collect::<Result<Vec<_>>>()?;
        Bimodule::new(self.grades(), left, right)
    }

    /// `Σ_m (-1)^{parity(m)} t^{degree(m)}`
    pub fn graded_superdim(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        let h = self.h() as u32;
        for k in 0..=h {
            let count = binomial(h, k);
            let sign = if (u32::from(self.pi) + k) % 2 == 0 { 1 } else { -1 };
            p.add_term(sign * count, &self.delta + Rational::from_integer(k.into()));
        }
        p
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

/// Graded superdimension of the state space of `f`.
pub fn graded_superdim(f: &SuturedSurface, grading: &Grading) -> Result<LaurentPoly> {
    Ok(StateSpace::build(f, grading)?.graded_superdim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::int;
    use crate::homology::BasisElement;
    use crate::laurent::poly;
    use crate::surface::{identity_cobordism, open_pants, surface_fgp, BoundaryCircle, Component};

    #[test]
    fn identity_cobordism_tensor_preset() {
        let s = StateSpace::build(&identity_cobordism(1), &Grading::tensor()).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!((s.degree(0), s.parity(0)), (int(-1), 1));
        assert_eq!((s.degree(1), s.parity(1)), (int(0), 0));
        assert_eq!(s.graded_superdim().to_string(), "1 - t^-1");
    }

    #[test]
    fn pants_two_degrees() {
        let s = StateSpace::build(&open_pants(2), &Grading::tensor()).unwrap();
        let degrees: Vec<Rational> = (0..s.rank()).map(|i| s.degree(i)).collect();
        assert_eq!(degrees, vec![int(-2), int(-1), int(-1), int(0)]);
    }

    #[test]
    fn superdim_of_f12_half() {
        let s = StateSpace::build(&surface_fgp(1, 2), &Grading::half()).unwrap();
        assert_eq!(s.graded_superdim(), poly(&[(-1, 1), (3, 0), (-3, -1), (1, -2)]));
        assert_eq!(s.graded_superdim(), s.grades().superdim());
    }

    #[test]
    fn no_intervals_means_a_plain_group() {
        let s = StateSpace::build(&surface_fgp(2, 1), &Grading::tensor()).unwrap();
        let b = s.bimodule().unwrap();
        assert_eq!((b.left.generators, b.right.generators), (0, 0));
        assert_eq!(b.dim(), 1 << 4);
    }

    #[test]
    fn empty_monomial_is_killed() {
        let s = StateSpace::build(&open_pants(3), &Grading::tensor()).unwrap();
        let e = s.e_action(SPlusId(2)).unwrap();
        assert!(e.matrix.column(0).is_empty());
        assert!(e.matrix.mul(&e.matrix).is_zero());
        assert_eq!((e.degree, e.parity), (int(-1), 1));
    }

    #[test]
    fn circle_is_not_an_interval() {
        let s = StateSpace::build(&surface_fgp(0, 2), &Grading::tensor()).unwrap();
        assert_eq!(s.e_action(SPlusId(0)).unwrap_err(), Error::NotAnInterval(SPlusId(0)));
    }

    #[test]
    fn removal_signs_follow_the_worked_example() {
        // a1 and a3 are handle curves, a2 leaves I, a4 avoids I
        let (i, p, q) = (SPlusId(0), SPlusId(1), SPlusId(2));
        let f = SuturedSurface {
            components: vec![Component {
                genus: 1,
                boundary: vec![BoundaryCircle::mixed(&[i, p, q])],
            }],
            incoming: vec![],
            outgoing: vec![i, p, q],
        };
        let basis = H1Basis {
            model: crate::homology::HomologyModel::new(&f),
            elements: vec![
                BasisElement::Torus { component: 0, index: 0 },
                BasisElement::arc(i, p),
                BasisElement::Torus { component: 0, index: 1 },
                BasisElement::arc(p, q),
            ],
        };
        let s = StateSpace::with_basis(&f, &Grading::tensor(), basis).unwrap();
        let e = s.e_action(i).unwrap().matrix;
        let sign = if s.pi % 2 == 0 { 1 } else { -1 };
        let top = s.monomials.index_of(0b1111);
        assert_eq!(e.column(top), &[(s.monomials.index_of(0b1101), sign)]);
    }
}
