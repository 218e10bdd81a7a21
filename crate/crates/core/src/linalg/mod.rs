//! Exact integer linear algebra: sparse matrices with checked `i64`
//! entries, a dense Smith normal form over `BigInt`, and a sparse cokernel
//! engine that falls back to the dense form for the hard part.

mod cokernel;
mod snf;

pub use cokernel::{cokernel, is_unimodular, Cokernel};
pub use snf::{smith_normal_form, DenseMatrix, SmithForm};

use std::fmt;

/// Sparse vector: `(index, value)` pairs, sorted by index, no zeros.
pub type SparseVec = Vec<(usize, i64)>;

pub(crate) fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b)
        .expect("integer overflow in sparse matrix arithmetic")
}

pub(crate) fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b)
        .expect("integer overflow in sparse matrix arithmetic")
}

/// Sorts, merges duplicates and drops zeros.
pub fn normalize(mut v: SparseVec) -> SparseVec {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = checked_add(*y, x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

/// Dense accumulator for building sparse vectors of a fixed length.
pub(crate) struct Accumulator {
    values: Vec<i64>,
    touched: Vec<usize>,
    marked: Vec<bool>,
}

impl Accumulator {
    pub fn new(n: usize) -> Self {
        Accumulator {
            values: vec![0; n],
            touched: Vec::new(),
            marked: vec![false; n],
        }
    }

    pub fn add(&mut self, i: usize, x: i64) {
        if !self.marked[i] {
            self.marked[i] = true;
            self.touched.push(i);
        }
        self.values[i] = checked_add(self.values[i], x);
    }

    pub fn try_add(&mut self, i: usize, x: i64) -> Option<()> {
        if !self.marked[i] {
            self.marked[i] = true;
            self.touched.push(i);
        }
        self.values[i] = self.values[i].checked_add(x)?;
        Some(())
    }

    /// Drains into a sorted sparse vector and resets.
    pub fn take(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            if self.values[i] != 0 {
                out.push((i, self.values[i]));
            }
            self.values[i] = 0;
            self.marked[i] = false;
        }
        self.touched.clear();
        out
    }
}

/// Column-major sparse integer matrix; column `j` is the image of the
/// `j`-th basis vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            columns: (0..n).map(|i| vec![(i, 1)]).collect(),
        }
    }

    /// Columns given as unsorted `(row, value)` lists.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        let columns: Vec<SparseVec> = columns.into_iter().map(normalize).collect();
        debug_assert!(columns.iter().flatten().all(|e| e.0 < rows));
        SparseMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    /// From row-major dense data.
    pub fn from_dense(data: &[Vec<i64>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        let mut columns = vec![Vec::new(); cols];
        for (r, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, &x) in row.iter().enumerate() {
                if x != 0 {
                    columns[c].push((r, x));
                }
            }
        }
        SparseMatrix {
            rows,
            cols,
            columns,
        }
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut columns = vec![Vec::new(); cols];
        for (r, c, x) in triplets {
            columns[c].push((r, x));
        }
        Self::from_columns(rows, columns)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Fixes the shape of a matrix built from possibly empty dense data.
    pub fn with_shape(mut self, rows: usize, cols: usize) -> Self {
        if self.cols == 0 && cols > 0 {
            self.columns = vec![Vec::new(); cols];
        }
        self.rows = rows;
        self.cols = cols;
        self
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.columns[c]
            .binary_search_by_key(&r, |e| e.0)
            .map_or(0, |k| self.columns[c][k].1)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .columns
                .iter()
                .enumerate()
                .all(|(j, c)| c.as_slice() == [(j, 1)])
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, x) in col {
                out[r][c] = x;
            }
        }
        out
    }

    pub fn to_dense_big(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.rows, self.cols);
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, x) in col {
                m.set(r, c, x.into());
            }
        }
        m
    }

    pub fn apply(&self, v: &[(usize, i64)]) -> SparseVec {
        let mut acc = Accumulator::new(self.rows);
        for &(j, x) in v {
            for &(r, y) in &self.columns[j] {
                acc.add(r, checked_mul(x, y));
            }
        }
        acc.take()
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut acc = Accumulator::new(self.rows);
        let columns = other
            .columns
            .iter()
            .map(|col| {
                for &(k, x) in col {
                    for &(r, y) in &self.columns[k] {
                        acc.add(r, checked_mul(x, y));
                    }
                }
                acc.take()
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        }
    }

    pub fn scale(&self, s: i64) -> SparseMatrix {
        if s == 0 {
            return SparseMatrix::zeros(self.rows, self.cols);
        }
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .map(|c| c.iter().map(|&(r, x)| (r, checked_mul(x, s))).collect())
                .collect(),
        }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &SparseMatrix, s: i64) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut v = a.clone();
                v.extend(b.iter().map(|&(r, x)| (r, checked_mul(x, s))));
                normalize(v)
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            columns,
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add_scaled(other, -1)
    }

    pub fn neg(&self) -> SparseMatrix {
        self.scale(-1)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, x) in col {
                columns[r].push((c, x));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            columns,
        }
    }

    /// Rows and columns picked by index lists (rows not listed are dropped).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut row_pos = vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            row_pos[r] = k;
        }
        let columns = cols
            .iter()
            .map(|&c| {
                let mut v: SparseVec = self.columns[c]
                    .iter()
                    .filter(|e| row_pos[e.0] != usize::MAX)
                    .map(|&(r, x)| (row_pos[r], x))
                    .collect();
                v.sort_unstable_by_key(|e| e.0);
                v
            })
            .collect();
        SparseMatrix {
            rows: rows.len(),
            cols: cols.len(),
            columns,
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut columns = self.columns.clone();
        columns.extend(
            other
                .columns
                .iter()
                .map(|c| c.iter().map(|&(r, x)| (r + self.rows, x)).collect()),
        );
        SparseMatrix {
            rows: self.rows + other.rows,
            cols: self.cols + other.cols,
            columns,
        }
    }

    /// Kronecker product with the basis of `self ⊗ other` ordered
    /// `(i, j) ↦ i * other.dim + j`.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut columns = Vec::with_capacity(self.cols * other.cols);
        for a in &self.columns {
            for b in &other.columns {
                let mut v = Vec::with_capacity(a.len() * b.len());
                for &(i, x) in a {
                    for &(j, y) in b {
                        v.push((i * other.rows + j, checked_mul(x, y)));
                    }
                }
                columns.push(v);
            }
        }
        SparseMatrix {
            rows: self.rows * other.rows,
            cols: self.cols * other.cols,
            columns,
        }
    }

    /// First entry where the two matrices differ, as `(row, col, a, b)`.
    pub fn first_difference(&self, other: &SparseMatrix) -> Option<(usize, usize, i64, i64)> {
        let d = self.sub(other);
        d.columns
            .iter()
            .enumerate()
            .find_map(|(c, col)| col.first().map(|&(r, _)| (r, c, self.get(r, c), other.get(r, c))))
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{}", self.rows, self.cols)?;
        if self.rows <= 16 && self.cols <= 16 {
            for row in self.to_dense() {
                writeln!(f, "  {row:?}")?;
            }
        } else {
            for (c, col) in self.columns.iter().enumerate() {
                if !col.is_empty() {
                    writeln!(f, "  col {c}: {col:?}")?;
                }
            }
        }
        Ok(())
    }
}

/// Integer inverse of a unimodular matrix, `None` if the matrix is not
/// invertible over the integers.
pub fn inverse_unimodular(m: &SparseMatrix) -> Option<SparseMatrix> {
    use num_traits::One;
    if m.rows() != m.cols() {
        return None;
    }
    let snf = smith_normal_form(&m.to_dense_big());
    if !snf.diagonal().iter().all(|x| x.is_one()) {
        return None;
    }
    // u m v = 1, so m^-1 = v u
    let inv = snf.v.mul(&snf.u).to_i64_rows()?;
    Some(SparseMatrix::from_dense(&inv).with_shape(m.rows(), m.cols()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_matches_dense() {
        let a = SparseMatrix::from_dense(&[vec![1, 2, 0], vec![0, -1, 3]]);
        let b = SparseMatrix::from_dense(&[vec![1, 0], vec![0, 1], vec![2, -1]]);
        assert_eq!(a.mul(&b).to_dense(), vec![vec![1, 2], vec![6, -4]]);
        assert_eq!(a.transpose().transpose(), a);
        assert!(SparseMatrix::identity(3).mul(&b) == b);
    }

    #[test]
    fn kron_order() {
        let a = SparseMatrix::from_dense(&[vec![0, 1], vec![0, 0]]);
        let i = SparseMatrix::identity(2);
        let k = a.kron(&i);
        assert_eq!(k.get(0, 2), 1);
        assert_eq!(k.get(1, 3), 1);
        assert_eq!(k.nnz(), 2);
    }

    #[test]
    fn submatrix_and_sum() {
        let a = SparseMatrix::from_dense(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.submatrix(&[1], &[0, 1]).to_dense(), vec![vec![3, 4]]);
        let s = a.direct_sum(&SparseMatrix::identity(1));
        assert_eq!(s.to_dense(), vec![vec![1, 2, 0], vec![3, 4, 0], vec![0, 0, 1]]);
        assert_eq!(a.sub(&a), SparseMatrix::zeros(2, 2));
        assert_eq!(a.first_difference(&a.scale(2)), Some((0, 0, 1, 2)));
    }

    #[test]
    fn unimodular_inverse() {
        let m = SparseMatrix::from_dense(&[vec![2, 1], vec![1, 1]]);
        let inv = inverse_unimodular(&m).unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inverse_unimodular(&SparseMatrix::from_dense(&[vec![2, 0], vec![0, 1]])).is_none());
        assert_eq!(inverse_unimodular(&SparseMatrix::zeros(0, 0)), Some(SparseMatrix::zeros(0, 0)));
    }
}
