//! Additive derivations, the matrix of triangular cycles and the dimension
//! formulas for the space of additive cocycles.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::automorph::check_cocycle_domain;
use crate::cocycle::AddCocycle;
use crate::error::{Error, Result};
use crate::incalg::IncFunction;
use crate::linalg::{bareiss_rank, Eliminator};
use crate::poset::{Preorder, QuotientPoset, Skeleton};
use crate::ring::Ring;
use crate::table::BasisTable;

/// `d_c(f)(x, y) = c_[x][y] f(x, y)` off the class diagonal, zero on it.
pub fn apply_deriv<R: Ring>(c: &AddCocycle<R>, f: &IncFunction<R>) -> Result<IncFunction<R>> {
    check_cocycle_domain(c.quotient(), c.ring(), f)?;
    let q = f.preorder().quotient();
    let mut out = IncFunction::zero(f.preorder(), f.ring());
    for (&(s, t), v) in f.m_part().entries() {
        let w = c
            .value(q.class_of(s), q.class_of(t))
            .expect("off-class pairs are edges")
            .clone();
        out.set(s, t, w * v.clone())?;
    }
    Ok(out)
}

/// Table of `d_c` on a poset.
pub fn deriv_table<R: Ring>(c: &AddCocycle<R>, p: &Arc<Preorder>) -> Result<BasisTable<R>> {
    BasisTable::from_map(p, p, c.ring(), |f| apply_deriv(c, f))
}

/// One row per triangle `x < z < y`: `+1` at `(x, y)`, `−1` at `(x, z)` and
/// `(z, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriCycleMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<i8>>,
}

fn require_field<F: Ring>(spec: &F::Spec) -> Result<()> {
    if F::is_field(spec) {
        Ok(())
    } else {
        Err(Error::CenterNotField)
    }
}

/// The matrix `P` over the field `F`.
pub fn triangle_matrix<F: Ring>(q: &QuotientPoset, spec: &F::Spec) -> Result<TriCycleMatrix> {
    require_field::<F>(spec)?;
    Ok(triangle_matrix_of(&Skeleton::new(q)))
}

fn triangle_matrix_of(sk: &Skeleton) -> TriCycleMatrix {
    let cols = sk.graph.m();
    let entries: Vec<Vec<i8>> = sk
        .triangles
        .iter()
        .map(|t| {
            let mut row = vec![0i8; cols];
            row[t.i_xy] = 1;
            row[t.i_xz] = -1;
            row[t.i_zy] = -1;
            row
        })
        .collect();
    TriCycleMatrix {
        rows: entries.len(),
        cols,
        entries,
    }
}

/// Dimensions of the additive-cocycle space `Ψ = ker P`, the potential
/// subspace `Ψ₀` and the outer quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivSpaceReport<F: Ring> {
    pub m: usize,
    pub lambda: usize,
    pub rank: usize,
    pub dim_psi: usize,
    pub dim_psi0: usize,
    pub dim_out: usize,
    pub all_inner: bool,
    /// Reduced-echelon kernel basis of `P`, vectors indexed by edges.
    pub kernel_basis: Vec<Vec<F>>,
}

pub fn derivation_space<F: Ring>(q: &QuotientPoset, spec: &F::Spec) -> Result<DerivSpaceReport<F>> {
    require_field::<F>(spec)?;
    let sk = Skeleton::new(q);
    sk.require_connected()?;
    if F::characteristic(spec) == 2 {
        log::warn!("rank of the triangle matrix computed in characteristic 2");
    }
    let p = triangle_matrix_of(&sk);
    let mut elim = Eliminator::<F>::new(spec, p.cols);
    for row in &p.entries {
        let dense: Vec<F> = row
            .iter()
            .map(|&x| F::from_i64(spec, i64::from(x)))
            .collect();
        elim.insert_dense(&dense);
    }
    let rank = if F::characteristic(spec) == 0 {
        let ints: Vec<Vec<BigInt>> = p
            .entries
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        bareiss_rank(&ints)
    } else {
        elim.rank()
    };
    let kernel_basis = elim.finish().kernel_basis();
    let (m, lambda) = (sk.graph.m(), sk.graph.lambda());
    Ok(DerivSpaceReport {
        m,
        lambda,
        rank,
        dim_psi: m - rank,
        dim_psi0: m - lambda,
        dim_out: lambda - rank,
        all_inner: rank == lambda,
        kernel_basis,
    })
}
