use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::snf::{smith_normal_form, DenseMatrix};
use super::{normalize, Accumulator, SparseMatrix, SparseVec};

/// The cokernel `Z^n / span(relations)`.
///
/// When the cokernel is free, `projection` (rank × n) is a surjection with
/// kernel exactly the relation span and `section` (n × rank) satisfies
/// `projection * section = 1`.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub n: usize,
    pub rank: usize,
    /// Number of invariant factors equal to 1.
    pub unit_factors: usize,
    /// Invariant factors greater than 1.
    pub torsion: Vec<BigInt>,
    pub projection: SparseMatrix,
    pub section: SparseMatrix,
}

impl Cokernel {
    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// All nonzero invariant factors of the relation matrix.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut f = vec![BigInt::one(); self.unit_factors];
        f.extend(self.torsion.iter().cloned());
        f
    }
}

/// A relation with unit coefficient on its pivot variable. `rest` holds
/// only non-pivot variables, so a single substitution pass reduces any
/// vector.
struct PivotRow {
    unit: i64,
    rest: SparseVec,
}

struct Overflow;

struct Echelon {
    n: usize,
    rows: Vec<PivotRow>,
    pivot_row: Vec<Option<usize>>,
    /// Rows whose `rest` may contain each variable (stale entries allowed).
    occurrences: Vec<Vec<usize>>,
    hard: Vec<SparseVec>,
    acc: Accumulator,
}

impl Echelon {
    fn new(n: usize) -> Self {
        Echelon {
            n,
            rows: Vec::new(),
            pivot_row: vec![None; n],
            occurrences: vec![Vec::new(); n],
            hard: Vec::new(),
            acc: Accumulator::new(n),
        }
    }

    fn reduce(&mut self, v: &[(usize, i64)]) -> Result<SparseVec, Overflow> {
        for &(i, x) in v {
            match self.pivot_row[i] {
                None => self.acc.try_add(i, x).ok_or(Overflow)?,
                Some(r) => {
                    // x_i = -unit * rest
                    let row = &self.rows[r];
                    let k = x.checked_mul(row.unit).ok_or(Overflow)?;
                    for &(j, y) in &row.rest {
                        self.acc
                            .try_add(j, y.checked_mul(k).ok_or(Overflow)?.checked_neg().ok_or(Overflow)?)
                            .ok_or(Overflow)?;
                    }
                }
            }
        }
        Ok(self.acc.take())
    }

    fn insert(&mut self, v: &[(usize, i64)]) -> Result<(), Overflow> {
        let r = self.reduce(v)?;
        if r.is_empty() {
            return Ok(());
        }
        let choice = r
            .iter()
            .filter(|e| e.1.abs() == 1)
            .min_by_key(|e| (self.occurrences[e.0].len(), e.0))
            .copied();
        let Some((p, unit)) = choice else {
            self.hard.push(r);
            return Ok(());
        };
        let rest: SparseVec = r.into_iter().filter(|e| e.0 != p).collect();
        // eliminate p from existing rows
        let users = std::mem::take(&mut self.occurrences[p]);
        for ri in users {
            let Ok(k) = self.rows[ri].rest.binary_search_by_key(&p, |e| e.0) else {
                continue;
            };
            let a = self.rows[ri].rest[k].1;
            // row -= (a * unit) * (unit e_p + rest)
            let f = a.checked_mul(unit).ok_or(Overflow)?;
            let mut merged = std::mem::take(&mut self.rows[ri].rest);
            merged.remove(k);
            for &(j, y) in &rest {
                merged.push((j, f.checked_mul(y).ok_or(Overflow)?.checked_neg().ok_or(Overflow)?));
            }
            let merged = try_normalize(merged)?;
            for &(j, _) in &merged {
                self.occurrences[j].push(ri);
            }
            self.rows[ri].rest = merged;
        }
        let idx = self.rows.len();
        for &(j, _) in &rest {
            self.occurrences[j].push(idx);
        }
        self.pivot_row[p] = Some(idx);
        self.rows.push(PivotRow {
            unit,
            rest,
        });
        Ok(())
    }
}

fn try_normalize(mut v: SparseVec) -> Result<SparseVec, Overflow> {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = y.checked_add(x).ok_or(Overflow)?,
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| e.1 != 0);
    Ok(out)
}

/// Cokernel of the span of `relations` inside `Z^n`.
pub fn cokernel<'a>(n: usize, relations: impl IntoIterator<Item = &'a [(usize, i64)]> + Clone) -> Cokernel {
    let mut ech = Echelon::new(n);
    for r in relations.clone() {
        if ech.insert(r).is_err() {
            return dense_cokernel(n, relations);
        }
    }
    match sparse_finish(ech) {
        Ok(c) => c,
        Err(Overflow) => dense_cokernel(n, relations),
    }
}

fn sparse_finish(mut ech: Echelon) -> Result<Cokernel, Overflow> {
    let n = ech.n;
    let hard_rows: Vec<SparseVec> = std::mem::take(&mut ech.hard);
    let mut hard = Vec::new();
    for h in &hard_rows {
        let r = ech.reduce(h)?;
        if !r.is_empty() {
            hard.push(r);
        }
    }
    let mut in_hard = vec![false; n];
    for r in &hard {
        for &(j, _) in r {
            in_hard[j] = true;
        }
    }
    let hard_vars: Vec<usize> = (0..n).filter(|&j| in_hard[j]).collect();
    let untouched: Vec<usize> = (0..n)
        .filter(|&j| ech.pivot_row[j].is_none() && !in_hard[j])
        .collect();

    // dense part: hard_vars x hard relations
    let mut hard_pos = vec![usize::MAX; n];
    for (k, &j) in hard_vars.iter().enumerate() {
        hard_pos[j] = k;
    }
    let mut dense = DenseMatrix::zeros(hard_vars.len(), hard.len());
    for (c, r) in hard.iter().enumerate() {
        for &(j, x) in r {
            dense.set(hard_pos[j], c, x.into());
        }
    }
    let snf = smith_normal_form(&dense);
    let diag = snf.diagonal();
    let factor = |i: usize| diag.get(i).cloned().unwrap_or_else(BigInt::zero);
    let free_rows: Vec<usize> = (0..hard_vars.len()).filter(|&i| factor(i).is_zero()).collect();
    let torsion: Vec<BigInt> = diag
        .iter()
        .filter(|x| !x.is_zero() && !x.is_one())
        .cloned()
        .collect();
    let unit_factors = ech.rows.len() + diag.iter().filter(|x| x.is_one()).count();

    let rank = untouched.len() + free_rows.len();
    let mut coord = vec![usize::MAX; n];
    for (k, &j) in untouched.iter().enumerate() {
        coord[j] = k;
    }
    // image of every non-pivot variable in cokernel coordinates
    let mut image: Vec<SparseVec> = vec![Vec::new(); n];
    for &j in &untouched {
        image[j] = vec![(coord[j], 1)];
    }
    for (k, &j) in hard_vars.iter().enumerate() {
        let mut v = Vec::new();
        for (slot, &i) in free_rows.iter().enumerate() {
            let x = snf.u.get(i, k).to_i64().ok_or(Overflow)?;
            if x != 0 {
                v.push((untouched.len() + slot, x));
            }
        }
        image[j] = v;
    }
    let mut columns: Vec<SparseVec> = Vec::with_capacity(n);
    for j in 0..n {
        match ech.pivot_row[j] {
            None => columns.push(image[j].clone()),
            Some(r) => {
                let row = &ech.rows[r];
                let mut v = Vec::new();
                for &(f, a) in &row.rest {
                    let k = a.checked_mul(-row.unit).ok_or(Overflow)?;
                    for &(c, x) in &image[f] {
                        v.push((c, x.checked_mul(k).ok_or(Overflow)?));
                    }
                }
                columns.push(try_normalize(v)?);
            }
        }
    }
    let projection = SparseMatrix::from_columns(rank, columns);

    let mut sec: Vec<SparseVec> = untouched.iter().map(|&j| vec![(j, 1)]).collect();
    for &i in &free_rows {
        let mut v = Vec::new();
        for (k, &j) in hard_vars.iter().enumerate() {
            let x = snf.u_inv.get(k, i).to_i64().ok_or(Overflow)?;
            if x != 0 {
                v.push((j, x));
            }
        }
        sec.push(v);
    }
    let section = SparseMatrix::from_columns(n, sec);
    Ok(Cokernel {
        n,
        rank,
        unit_factors,
        torsion,
        projection,
        section,
    })
}

/// Dense fallback: Smith normal form of the whole relation matrix.
fn dense_cokernel<'a>(n: usize, relations: impl IntoIterator<Item = &'a [(usize, i64)]>) -> Cokernel {
    let rels: Vec<SparseVec> = relations.into_iter().map(|r| normalize(r.to_vec())).collect();
    let mut dense = DenseMatrix::zeros(n, rels.len());
    for (c, r) in rels.iter().enumerate() {
        for &(j, x) in r {
            dense.set(j, c, x.into());
        }
    }
    let snf = smith_normal_form(&dense);
    let diag = snf.diagonal();
    let factor = |i: usize| diag.get(i).cloned().unwrap_or_else(BigInt::zero);
    let free_rows: Vec<usize> = (0..n).filter(|&i| factor(i).is_zero()).collect();
    let big = |x: &BigInt| {
        x.to_i64()
            .expect("cokernel coordinates exceed 64 bits")
    };
    let projection = SparseMatrix::from_columns(
        free_rows.len(),
        (0..n)
            .map(|j| {
                free_rows
                    .iter()
                    .enumerate()
                    .map(|(k, &i)| (k, big(snf.u.get(i, j))))
                    .collect()
            })
            .collect(),
    );
    let section = SparseMatrix::from_columns(
        n,
        free_rows
            .iter()
            .map(|&i| (0..n).map(|j| (j, big(snf.u_inv.get(j, i)))).collect())
            .collect(),
    );
    Cokernel {
        n,
        rank: free_rows.len(),
        unit_factors: diag.iter().filter(|x| x.is_one()).count(),
        torsion: diag
            .iter()
            .filter(|x| !x.is_zero() && !x.is_one())
            .cloned()
            .collect(),
        projection,
        section,
    }
}

/// Whether a square matrix is invertible over the integers.
pub fn is_unimodular(m: &SparseMatrix) -> bool {
    if m.rows() != m.cols() {
        return false;
    }
    let c = cokernel(m.rows(), m.columns().iter().map(Vec::as_slice));
    c.rank == 0 && c.is_free()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rels(v: &[SparseVec]) -> Vec<&[(usize, i64)]> {
        v.iter().map(Vec::as_slice).collect()
    }

    fn check_exact(c: &Cokernel, relations: &[SparseVec]) {
        assert!(c.projection.mul(&c.section).is_identity());
        for r in relations {
            assert!(c.projection.apply(r).is_empty());
        }
    }

    #[test]
    fn no_relations() {
        let c = cokernel(3, rels(&[]));
        assert_eq!(c.rank, 3);
        assert!(c.projection.is_identity());
    }

    #[test]
    fn unit_relations() {
        let r = vec![vec![(0, 1), (1, -1)], vec![(1, 1), (2, 1)]];
        let c = cokernel(3, rels(&r));
        assert_eq!(c.rank, 1);
        assert_eq!(c.unit_factors, 2);
        check_exact(&c, &r);
    }

    #[test]
    fn torsion_is_reported() {
        let r = vec![vec![(0, 2)], vec![(1, 3), (2, 3)]];
        let c = cokernel(3, rels(&r));
        assert_eq!(c.rank, 1);
        assert_eq!(c.torsion, vec![BigInt::from(6)]);
    }

    #[test]
    fn hard_part_with_free_quotient() {
        // 2x + 3y has a free cokernel of rank 1 in Z^2
        let r = vec![vec![(0, 2), (1, 3)]];
        let c = cokernel(2, rels(&r));
        assert_eq!(c.rank, 1);
        assert!(c.is_free());
        check_exact(&c, &r);
    }

    #[test]
    fn unimodularity() {
        assert!(is_unimodular(&SparseMatrix::from_dense(&[vec![2, 1], vec![1, 1]])));
        assert!(!is_unimodular(&SparseMatrix::from_dense(&[vec![2, 0], vec![0, 1]])));
        assert!(!is_unimodular(&SparseMatrix::from_dense(&[vec![1, 1], vec![1, 1]])));
    }
}
