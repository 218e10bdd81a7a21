//! Monomials of exterior algebras as bit masks.
//!
//! A monomial `γ_{i1} ∧ ... ∧ γ_{ik}` with `i1 < ... < ik` is the mask with
//! bits `i1..ik` set. Monomials are ordered by degree, then
//! lexicographically in their sorted index lists.

use crate::linalg::{checked_mul, SparseMatrix, SparseVec};

/// All monomials on `n` generators in the fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    n: usize,
    masks: Vec<u32>,
    index: Vec<u32>,
}

/// Combinations of `k` elements out of `n` in lexicographic order.
fn combinations(n: usize, k: usize, out: &mut Vec<u32>) {
    fn rec(start: usize, n: usize, left: usize, mask: u32, out: &mut Vec<u32>) {
        if left == 0 {
            out.push(mask);
            return;
        }
        for i in start..=n - left {
            rec(i + 1, n, left - 1, mask | (1 << i), out);
        }
    }
    rec(0, n, k, 0, out);
}

impl MonomialBasis {
    pub fn new(n: usize) -> Self {
        assert!(n < 31, "exterior algebra on {n} generators is too large");
        let mut masks = Vec::with_capacity(1 << n);
        for k in 0..=n {
            combinations(n, k, &mut masks);
        }
        let mut index = vec![0; 1 << n];
        for (i, &m) in masks.iter().enumerate() {
            index[m as usize] = i as u32;
        }
        MonomialBasis { n, masks, index }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn mask(&self, i: usize) -> u32 {
        self.masks[i]
    }

    pub fn masks(&self) -> &[u32] {
        &self.masks
    }

    pub fn index_of(&self, mask: u32) -> usize {
        self.index[mask as usize] as usize
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.masks[i].count_ones()
    }
}

/// Number of set bits strictly below `i`.
pub fn bits_below(mask: u32, i: usize) -> u32 {
    (mask & ((1u32 << i) - 1)).count_ones()
}

/// Number of set bits strictly above `i`.
pub fn bits_above(mask: u32, i: usize) -> u32 {
    (mask >> (i + 1)).count_ones()
}

/// Sign of `γ_{i}` written at the end of the monomial `mask`, moved into
/// sorted position; `None` if `i` already occurs.
pub fn append_sign(mask: u32, i: usize) -> Option<i64> {
    if mask & (1 << i) != 0 {
        return None;
    }
    Some(if bits_above(mask, i) % 2 == 0 { 1 } else { -1 })
}

/// Sign of `γ_{i}` written in front of the monomial `mask`, moved into
/// sorted position; `None` if `i` already occurs.
pub fn prepend_sign(mask: u32, i: usize) -> Option<i64> {
    if mask & (1 << i) != 0 {
        return None;
    }
    Some(if bits_below(mask, i) % 2 == 0 { 1 } else { -1 })
}

/// The induced map `∧m` between exterior algebras, on monomials.
pub fn exterior_power(m: &SparseMatrix, src: &MonomialBasis, dst: &MonomialBasis) -> SparseMatrix {
    assert_eq!(m.cols(), src.generators());
    assert_eq!(m.rows(), dst.generators());
    let mut images: Vec<Vec<(u32, i64)>> = Vec::with_capacity(src.len());
    for &mask in src.masks() {
        if mask == 0 {
            images.push(vec![(0, 1)]);
            continue;
        }
        let top = 31 - mask.leading_zeros() as usize;
        let prev = &images[src.index_of(mask & !(1 << top))];
        let mut v: Vec<(u32, i64)> = Vec::new();
        for &(t, x) in prev {
            for &(r, y) in m.column(top) {
                if let Some(s) = append_sign(t, r) {
                    v.push((t | (1 << r), checked_mul(checked_mul(x, y), s)));
                }
            }
        }
        v.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(u32, i64)> = Vec::with_capacity(v.len());
        for (t, x) in v {
            match merged.last_mut() {
                Some((u, y)) if *u == t => *y = y.checked_add(x).expect("integer overflow in exterior power"),
                _ => merged.push((t, x)),
            }
        }
        merged.retain(|e| e.1 != 0);
        images.push(merged);
    }
    let columns: Vec<SparseVec> = images
        .into_iter()
        .map(|img| img.into_iter().map(|(t, x)| (dst.index_of(t), x)).collect())
        .collect();
    SparseMatrix::from_columns(dst.len(), columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_by_degree_then_lex() {
        let b = MonomialBasis::new(3);
        assert_eq!(b.masks(), &[0, 1, 2, 4, 3, 5, 6, 7]);
        for i in 0..b.len() {
            assert_eq!(b.index_of(b.mask(i)), i);
        }
    }

    #[test]
    fn signs() {
        // γ0 ∧ (γ1 ∧ γ2) is already sorted; (γ0 ∧ γ2) ∧ γ1 needs one swap
        assert_eq!(prepend_sign(0b110, 0), Some(1));
        assert_eq!(append_sign(0b101, 1), Some(-1));
        assert_eq!(append_sign(0b101, 0), None);
    }

    #[test]
    fn exterior_power_of_a_swap_is_the_determinant_on_top() {
        let swap = SparseMatrix::from_dense(&[vec![0, 1], vec![1, 0]]);
        let b = MonomialBasis::new(2);
        let w = exterior_power(&swap, &b, &b);
        let top = b.index_of(0b11);
        assert_eq!(w.column(top), &[(top, -1)]);
        let id = exterior_power(&SparseMatrix::identity(2), &b, &b);
        assert!(id.is_identity());
    }

    #[test]
    fn exterior_power_is_functorial() {
        let a = SparseMatrix::from_dense(&[vec![1, 2, 0], vec![0, 1, 0], vec![3, 0, 1]]);
        let c = SparseMatrix::from_dense(&[vec![0, 1, 1], vec![1, 0, 0], vec![1, 1, 0]]);
        let b = MonomialBasis::new(3);
        assert_eq!(
            exterior_power(&a.mul(&c), &b, &b),
            exterior_power(&a, &b, &b).mul(&exterior_power(&c, &b, &b))
        );
    }
}
