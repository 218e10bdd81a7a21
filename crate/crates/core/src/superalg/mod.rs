//! The superalgebras `(Z[E]/(E^2))^{⊗m}` and graded bimodules over them.
//!
//! A monomial `E_S` of `A(m)` is the bit mask `S` with factors in increasing
//! order. Each generator is odd of degree `-1`, so `E_S` has degree `-|S|`
//! and parity `|S| mod 2`.

mod bimodule;
mod iso;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{checked_add, checked_mul};

pub use bimodule::{
    coproduct_left, external_tensor, hom_bimodule, left_multiplication, regular, right_multiplication,
    symmetrizer, tensor_middle, Bimodule, Grades, TensorProduct,
};
pub use iso::{
    cyclic_witness, is_graded_iso, left_unitor_witness, right_unitor_witness, GradedIso, IsoFailure,
};

/// `A(m)`, the tensor product of `m` copies of `Z[E]/(E^2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct SuperAlgebra {
    pub generators: usize,
}

impl SuperAlgebra {
    pub fn new(generators: usize) -> Self {
        SuperAlgebra { generators }
    }

    /// The ground ring `Z`.
    pub fn unit() -> Self {
        SuperAlgebra { generators: 0 }
    }

    pub fn rank(&self) -> usize {
        1 << self.generators
    }

    pub fn tensor(&self, other: &SuperAlgebra) -> SuperAlgebra {
        SuperAlgebra::new(self.generators + other.generators)
    }
}

/// Sign of `E_S * E_T` in normal form, `None` when a generator repeats.
pub fn product_sign(s: u32, t: u32) -> Option<i64> {
    if s & t != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = t;
    while rest != 0 {
        let b = rest.trailing_zeros();
        swaps += (s >> (b + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(if swaps % 2 == 0 { 1 } else { -1 })
}

/// An integer combination of monomials of `A(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    algebra: SuperAlgebra,
    terms: BTreeMap<u32, i64>,
}

impl AlgebraElement {
    pub fn zero(algebra: SuperAlgebra) -> Self {
        AlgebraElement {
            algebra,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(algebra: SuperAlgebra) -> Self {
        Self::monomial(algebra, 0, 1)
    }

    pub fn generator(algebra: SuperAlgebra, i: usize) -> Self {
        assert!(i < algebra.generators, "generator {i} out of range");
        Self::monomial(algebra, 1 << i, 1)
    }

    pub fn monomial(algebra: SuperAlgebra, mask: u32, coefficient: i64) -> Self {
        assert!(
            (mask as usize) < algebra.rank(),
            "monomial outside the algebra"
        );
        let mut terms = BTreeMap::new();
        if coefficient != 0 {
            terms.insert(mask, coefficient);
        }
        AlgebraElement { algebra, terms }
    }

    pub fn algebra(&self) -> SuperAlgebra {
        self.algebra
    }

    /// `(mask, coefficient)` pairs in increasing mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mask: u32, c: i64) {
        let entry = self.terms.entry(mask).or_insert(0);
        *entry = checked_add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&mask);
        }
    }

    fn check_same(&self, other: &AlgebraElement) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch(format!(
                "A({}) against A({})",
                self.algebra.generators, other.algebra.generators
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn scale(&self, s: i64) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.algebra);
        for (m, c) in self.terms() {
            out.add_term(m, checked_mul(c, s));
        }
        out
    }

    pub fn multiply(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same(other)?;
        let mut out = AlgebraElement::zero(self.algebra);
        for (s, a) in self.terms() {
            for (t, b) in other.terms() {
                if let Some(sign) = product_sign(s, t) {
                    out.add_term(s | t, checked_mul(checked_mul(a, b), sign));
                }
            }
        }
        Ok(out)
    }

    /// Whether every term is a single generator.
    pub fn is_linear(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() == 1)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (mask, c)) in self.terms().enumerate() {
            if k > 0 {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            let word: Vec<String> = (0..32).filter(|i| mask & (1 << i) != 0).map(|i| format!("E{i}")).collect();
            match (c.abs(), word.is_empty()) {
                (a, true) => write!(f, "{a}")?,
                (1, false) => f.write_str(&word.join("*"))?,
                (a, false) => write!(f, "{a}*{}", word.join("*"))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(m: usize, i: usize) -> AlgebraElement {
        AlgebraElement::generator(SuperAlgebra::new(m), i)
    }

    #[test]
    fn generators_anticommute() {
        let a = SuperAlgebra::new(2);
        let both = AlgebraElement::monomial(a, 0b11, 1);
        assert_eq!(e(2, 0).multiply(&e(2, 1)).unwrap(), both);
        assert_eq!(e(2, 1).multiply(&e(2, 0)).unwrap(), both.scale(-1));
        assert!(e(2, 0).multiply(&e(2, 0)).unwrap().is_zero());
    }

    #[test]
    fn left_multiplication_fills_the_gap_with_sign() {
        // E in slot 1 times E⊗1⊗E moves past one odd factor
        let a = SuperAlgebra::new(3);
        let x = AlgebraElement::monomial(a, 0b101, 1);
        assert_eq!(e(3, 1).multiply(&x).unwrap(), AlgebraElement::monomial(a, 0b111, -1));
        assert_eq!(x.multiply(&e(3, 1)).unwrap(), AlgebraElement::monomial(a, 0b111, -1));
    }

    #[test]
    fn mismatch_and_display() {
        assert!(matches!(e(1, 0).multiply(&e(2, 0)), Err(Error::AlgebraMismatch(_))));
        let x = e(3, 0).add(&AlgebraElement::monomial(SuperAlgebra::new(3), 0b110, -2)).unwrap();
        assert_eq!(x.to_string(), "E0 - 2*E1*E2");
        assert_eq!(AlgebraElement::one(SuperAlgebra::unit()).to_string(), "1");
    }

    #[test]
    fn product_is_associative_on_monomials() {
        let a = SuperAlgebra::new(4);
        for s in 0..16u32 {
            for t in 0..16u32 {
                for u in 0..16u32 {
                    let x = AlgebraElement::monomial(a, s, 1);
                    let y = AlgebraElement::monomial(a, t, 1);
                    let z = AlgebraElement::monomial(a, u, 1);
                    assert_eq!(
                        x.multiply(&y).unwrap().multiply(&z).unwrap(),
                        x.multiply(&y.multiply(&z).unwrap()).unwrap()
                    );
                }
            }
        }
    }
}
