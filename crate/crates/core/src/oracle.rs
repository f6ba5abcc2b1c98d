//! Brute-force derivation spaces from the Leibniz equations, and the
//! triangular and diagonal decompositions of concrete derivations.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::incalg::IncFunction;
use crate::linalg::Eliminator;
use crate::poset::Preorder;
use crate::ring::Ring;
use crate::table::{poset_basis, BasisElem, BasisTable};

pub type DerivTable<R> = BasisTable<R>;

/// Largest poset accepted by [`brute_derivations`].
pub const BRUTE_FORCE_BOUND: usize = 6;

#[derive(Debug, Clone)]
pub struct BruteReport<F: Ring> {
    pub dim_k: usize,
    pub dim_center: usize,
    pub dim_der: usize,
    pub dim_inn: usize,
    pub dim_out: usize,
    /// Derivations spanning `Der K`, from the reduced echelon kernel.
    pub basis: Vec<DerivTable<F>>,
}

/// `mult[i][j] = Some(k)` when `b_i b_j = b_k`, `None` when it vanishes.
fn structure_constants(basis: &[BasisElem]) -> Vec<Vec<Option<usize>>> {
    let index: BTreeMap<BasisElem, usize> =
        basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let product = |a: BasisElem, b: BasisElem| -> Option<BasisElem> {
        let ((x, y), (z, w)) = (a.pair(), b.pair());
        if y != z {
            return None;
        }
        Some(if x == w {
            BasisElem::Idem(x)
        } else {
            BasisElem::Unit(x, w)
        })
    };
    basis
        .iter()
        .map(|&a| {
            basis
                .iter()
                .map(|&b| product(a, b).map(|c| index[&c]))
                .collect()
        })
        .collect()
}

/// Solves the Leibniz system for `I(X, F)` directly.
#[allow(clippy::needless_range_loop)]
pub fn brute_derivations<F: Ring>(p: &Arc<Preorder>, spec: &F::Spec) -> Result<BruteReport<F>> {
    if !F::is_field(spec) {
        return Err(Error::NotAField);
    }
    if p.len() > BRUTE_FORCE_BOUND {
        return Err(Error::TooLarge {
            what: "poset",
            size: p.len(),
            bound: BRUTE_FORCE_BOUND,
        });
    }
    let basis = poset_basis(p)?;
    let n = basis.len();
    let mult = structure_constants(&basis);
    let one = F::one(spec);
    let var = |a: usize, j: usize| j * n + a;

    // D(b_i b_j) = D(b_i) b_j + b_i D(b_j), coefficient of b_a
    let mut elim = Eliminator::<F>::new(spec, n * n);
    for i in 0..n {
        for j in 0..n {
            let mut rows: Vec<BTreeMap<usize, F>> = vec![BTreeMap::new(); n];
            let mut bump = |a: usize, v: usize, sign: i64| {
                let e = rows[a].entry(v).or_insert_with(|| F::zero(spec));
                *e = e.clone() + F::from_i64(spec, sign);
            };
            if let Some(k) = mult[i][j] {
                for a in 0..n {
                    bump(a, var(a, k), 1);
                }
            }
            for c in 0..n {
                if let Some(a) = mult[c][j] {
                    bump(a, var(c, i), -1);
                }
                if let Some(a) = mult[i][c] {
                    bump(a, var(c, j), -1);
                }
            }
            for row in rows {
                elim.insert(row);
            }
        }
    }
    let rref = elim.finish();
    let dim_der = n * n - rref.rank();

    // center: c with c b_i = b_i c for all i
    let mut center = Eliminator::<F>::new(spec, n);
    for i in 0..n {
        let mut rows: Vec<BTreeMap<usize, F>> = vec![BTreeMap::new(); n];
        for c in 0..n {
            if let Some(a) = mult[c][i] {
                let e = rows[a].entry(c).or_insert_with(|| F::zero(spec));
                *e = e.clone() + one.clone();
            }
            if let Some(a) = mult[i][c] {
                let e = rows[a].entry(c).or_insert_with(|| F::zero(spec));
                *e = e.clone() - one.clone();
            }
        }
        for row in rows {
            center.insert(row);
        }
    }
    let dim_inn = center.rank();
    let dim_center = n - dim_inn;

    let functions: Vec<IncFunction<F>> = basis
        .iter()
        .map(|b| b.function(p, spec))
        .collect::<Result<_>>()?;
    let tables = rref
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let images = basis
                .iter()
                .enumerate()
                .map(|(j, &b)| {
                    let mut img = IncFunction::zero(p, spec);
                    for (a, f) in functions.iter().enumerate() {
                        let coef = &v[var(a, j)];
                        if !coef.is_zero() {
                            img = img.add(&f.scale_left(coef))?;
                        }
                    }
                    Ok((b, img))
                })
                .collect::<Result<Vec<_>>>()?;
            BasisTable::new(p, p, spec, images)
        })
        .collect::<Result<_>>()?;

    Ok(BruteReport {
        dim_k: n,
        dim_center,
        dim_der,
        dim_inn,
        dim_out: dim_der - dim_inn,
        basis: tables,
    })
}

/// `ad(c)(a) = ac − ca`.
pub fn inner_derivation<R: Ring>(c: &IncFunction<R>) -> Result<DerivTable<R>> {
    let p = c.preorder();
    BasisTable::from_map(p, p, c.ring(), |a| a.convolve(c)?.sub(&c.convolve(a)?))
}

/// Leibniz rule on all basis pairs.
pub fn is_derivation<R: Ring>(d: &DerivTable<R>) -> Result<bool> {
    let p = d.source();
    let spec = d.ring();
    let basis: Vec<IncFunction<R>> = d
        .basis()
        .iter()
        .map(|b| b.function(p, spec))
        .collect::<Result<_>>()?;
    for (a, da) in basis.iter().zip(d.images()) {
        for (b, db) in basis.iter().zip(d.images()) {
            let lhs = d.apply(&a.convolve(b)?)?;
            let rhs = da.convolve(b)?.add(&a.convolve(db)?)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `D` split along `K = L ⊕ M`.
#[derive(Debug, Clone)]
pub struct Triangular<R: Ring> {
    /// L-part of `D(e_x)`, per element.
    pub alpha: Vec<IncFunction<R>>,
    /// M-part of `D(e_x)`, per element.
    pub delta: Vec<IncFunction<R>>,
    /// `D(e_xy)` for each matrix unit, which lies in `M`.
    pub beta: Vec<(BasisElem, IncFunction<R>)>,
}

pub fn triangularize_derivation<R: Ring>(d: &DerivTable<R>) -> Result<Triangular<R>> {
    let mut alpha = Vec::new();
    let mut delta = Vec::new();
    let mut beta = Vec::new();
    for (b, img) in d.entries() {
        match b {
            BasisElem::Idem(_) => {
                let (l, m) = img.split();
                alpha.push(l);
                delta.push(m);
            }
            BasisElem::Unit(..) => {
                if !img.l_part().is_zero() {
                    return Err(Error::GammaNonzero(b.to_string()));
                }
                beta.push((*b, img.clone()));
            }
        }
    }
    Ok(Triangular { alpha, delta, beta })
}

/// `g(x, y) = D(e_y)(x, y)` for `x < y`, and `D_diag = D + ad(g)`, which
/// kills every idempotent; `D = −ad(g) + D_diag`.
pub fn diagonalize_derivation<R: Ring>(
    d: &DerivTable<R>,
) -> Result<(IncFunction<R>, DerivTable<R>)> {
    let p = d.source();
    let g = IncFunction::from_fn(p, d.ring(), |x, y| {
        if x == y {
            R::zero(d.ring())
        } else {
            d.image(BasisElem::Idem(y))
                .expect("idempotent in basis")
                .get(x, y)
        }
    });
    let diag = d.add(&inner_derivation(&g)?)?;
    Ok((g, diag))
}
