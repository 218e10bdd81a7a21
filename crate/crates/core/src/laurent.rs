//! Laurent polynomials with integer coefficients and exact rational
//! exponents, used for graded superdimensions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::grading::{format_rational, int, rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Rational, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, Rational::zero())
    }

    /// `c * t^e`
    pub fn monomial(c: i64, e: Rational) -> Self {
        let mut p = Self::default();
        p.add_term(c, e);
        p
    }

    /// `t^{1/2} - t^{-1/2}`
    pub fn half_difference() -> Self {
        Self::monomial(1, rat(1, 2)) + Self::monomial(-1, rat(-1, 2))
    }

    pub fn add_term(&mut self, c: i64, e: Rational) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry = entry.checked_add(c).expect("coefficient overflow");
        self.terms.retain(|_, v| *v != 0);
    }

    pub fn coefficient(&self, e: &Rational) -> i64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, i64)> {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn exponents_integral(&self) -> bool {
        self.terms.keys().all(Rational::is_integer)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Value at `t = 1`, when all exponents are integral this is the
    /// Euler characteristic.
    pub fn at_one(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (e, c) in rhs.terms {
            self.add_term(c, e);
        }
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(c1.checked_mul(*c2).expect("coefficient overflow"), e1 + e2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// Highest exponent first, e.g. `-t + 3 - 3*t^-1 + t^-2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, &c)) in self.terms.iter().rev().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let power = if e.is_zero() {
                None
            } else if e.is_one() {
                Some("t".to_string())
            } else {
                Some(format!("t^{}", format_rational(e)))
            };
            match (a, power) {
                (a, None) => write!(f, "{a}")?,
                (1, Some(p)) => f.write_str(&p)?,
                (a, Some(p)) => write!(f, "{a}*{p}")?,
            }
        }
        Ok(())
    }
}

/// `Σ c * t^e` from `(c, e)` pairs with integer exponents.
pub fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
    terms
        .iter()
        .fold(LaurentPoly::zero(), |acc, &(c, e)| acc + LaurentPoly::monomial(c, int(e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(poly(&[(1, 0), (-1, -1)]).to_string(), "1 - t^-1");
        assert_eq!(poly(&[(-1, 1), (3, 0), (-3, -1), (1, -2)]).to_string(), "-t + 3 - 3*t^-1 + t^-2");
        assert_eq!(LaurentPoly::half_difference().to_string(), "t^1/2 - t^-1/2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn square_of_half_difference() {
        let d = LaurentPoly::half_difference();
        assert_eq!(d.pow(2), poly(&[(1, 1), (-2, 0), (1, -1)]));
        assert_eq!(d.pow(0), LaurentPoly::one());
        assert!(d.pow(2).exponents_integral());
        assert!(!d.exponents_integral());
    }
}
