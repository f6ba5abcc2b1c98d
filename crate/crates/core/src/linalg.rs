//! Exact linear algebra over fields: echelon forms, rank and kernels.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::ring::Ring;

/// A sparse row: column → nonzero value.
pub type SparseRow<F> = BTreeMap<usize, F>;

/// Incremental Gaussian elimination over a field.
///
/// Rows are reduced against the stored pivots as they arrive; a stored row
/// has leading entry 1 at its pivot column. [`Eliminator::finish`] performs
/// back substitution, giving the reduced row echelon form, which does not
/// depend on the insertion order.
#[derive(Debug, Clone)]
pub struct Eliminator<F: Ring> {
    spec: F::Spec,
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Ring> Eliminator<F> {
    pub fn new(spec: &F::Spec, ncols: usize) -> Self {
        Eliminator {
            spec: spec.clone(),
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces and stores a row; returns whether it raised the rank.
    pub fn insert(&mut self, mut row: SparseRow<F>) -> bool {
        row.retain(|_, v| !v.is_zero());
        let mut col = 0;
        loop {
            let Some((&c, v)) = row.range(col..).next() else {
                return false;
            };
            match self.pivots.get(&c) {
                Some(p) => {
                    let factor = v.clone();
                    for (&j, pv) in p {
                        let cur = row.remove(&j).unwrap_or_else(|| F::zero(&self.spec));
                        let next = cur - factor.clone() * pv.clone();
                        if !next.is_zero() {
                            row.insert(j, next);
                        }
                    }
                    col = c + 1;
                }
                None => {
                    let inv = v.invert_unit().expect("nonzero field element");
                    for x in row.values_mut() {
                        *x = inv.clone() * x.clone();
                    }
                    self.pivots.insert(c, row);
                    return true;
                }
            }
        }
    }

    pub fn insert_dense(&mut self, row: &[F]) -> bool {
        let sparse = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, v.clone()))
            .collect();
        self.insert(sparse)
    }

    /// Reduced row echelon form, rows ordered by pivot column.
    pub fn finish(mut self) -> Rref<F> {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for (idx, &c) in cols.iter().enumerate() {
            let mut row = self.pivots.remove(&c).expect("pivot present");
            // later pivots are already fully reduced
            for &later in cols[..idx].iter().rev() {
                if let Some(v) = row.get(&later).cloned() {
                    let p = &self.pivots[&later];
                    for (&j, pv) in p {
                        let cur = row.remove(&j).unwrap_or_else(|| F::zero(&self.spec));
                        let next = cur - v.clone() * pv.clone();
                        if !next.is_zero() {
                            row.insert(j, next);
                        }
                    }
                }
            }
            self.pivots.insert(c, row);
        }
        Rref {
            spec: self.spec,
            ncols: self.ncols,
            rows: self.pivots,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Rref<F: Ring> {
    spec: F::Spec,
    ncols: usize,
    rows: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Ring> Rref<F> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    pub fn dense_rows(&self) -> Vec<Vec<F>> {
        self.rows
            .values()
            .map(|r| {
                (0..self.ncols)
                    .map(|j| r.get(&j).cloned().unwrap_or_else(|| F::zero(&self.spec)))
                    .collect()
            })
            .collect()
    }

    /// Kernel basis: one vector per free column `f`, with 1 at `f`, zero at
    /// the other free columns; vectors in increasing order of `f`.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        (0..self.ncols)
            .filter(|c| !self.rows.contains_key(c))
            .map(|free| {
                let mut v = vec![F::zero(&self.spec); self.ncols];
                v[free] = F::one(&self.spec);
                for (&p, row) in &self.rows {
                    if let Some(x) = row.get(&free) {
                        v[p] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }
}

pub fn rref<F: Ring>(spec: &F::Spec, ncols: usize, rows: &[Vec<F>]) -> Rref<F> {
    let mut e = Eliminator::new(spec, ncols);
    for r in rows {
        e.insert_dense(r);
    }
    e.finish()
}

pub fn rank<F: Ring>(spec: &F::Spec, ncols: usize, rows: &[Vec<F>]) -> usize {
    let mut e = Eliminator::new(spec, ncols);
    for r in rows {
        e.insert_dense(r);
    }
    e.rank()
}

pub fn kernel<F: Ring>(spec: &F::Spec, ncols: usize, rows: &[Vec<F>]) -> Vec<Vec<F>> {
    rref(spec, ncols, rows).kernel_basis()
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination; equals
/// the rank over ℚ.
pub fn bareiss_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pivot) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pivot);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}
