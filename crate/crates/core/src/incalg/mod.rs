//! Elements of the incidence algebra `I(X, R)` and its operations.

mod structural;

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng as RandRng;

use crate::error::{Error, Result};
use crate::poset::Preorder;
use crate::ring::Ring;

pub use structural::{to_structural, StructuralMatrix};

/// Named elements produced by [`basis_function`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    Delta,
    Zeta,
    /// Idempotent of a class, by class index.
    EClass(usize),
    /// Matrix unit `e_xy` for elements with singleton classes and `x < y`.
    EUnit(usize, usize),
}

/// A function on the relation of a preorder, stored sparsely (zeros omitted).
#[derive(Debug, Clone)]
pub struct IncFunction<R: Ring> {
    preorder: Arc<Preorder>,
    spec: R::Spec,
    values: BTreeMap<(usize, usize), R>,
}

impl<R: Ring> PartialEq for IncFunction<R> {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.values == other.values
    }
}

impl<R: Ring> Eq for IncFunction<R> {}

pub fn basis_function<R: Ring>(
    kind: BasisKind,
    p: &Arc<Preorder>,
    spec: &R::Spec,
) -> Result<IncFunction<R>> {
    let mut f = IncFunction::zero(p, spec);
    let one = R::one(spec);
    match kind {
        BasisKind::Delta => {
            for i in 0..p.len() {
                f.values.insert((i, i), one.clone());
            }
        }
        BasisKind::Zeta => {
            for pair in p.pairs() {
                f.values.insert(pair, one.clone());
            }
        }
        BasisKind::EClass(c) => {
            let q = p.quotient();
            if c >= q.num_classes() {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    n: q.num_classes(),
                });
            }
            for &t in q.members(c) {
                f.values.insert((t, t), one.clone());
            }
        }
        BasisKind::EUnit(x, y) => {
            let q = p.quotient();
            for e in [x, y] {
                if e >= p.len() {
                    return Err(Error::IndexOutOfRange {
                        index: e,
                        n: p.len(),
                    });
                }
                if q.class_size(q.class_of(e)) > 1 {
                    return Err(Error::NotSingletonClass(e));
                }
            }
            if !q.lt(q.class_of(x), q.class_of(y)) {
                return Err(Error::OutsideRelation(x, y));
            }
            f.values.insert((x, y), one);
        }
    }
    Ok(f)
}

impl<R: Ring> IncFunction<R> {
    pub fn zero(p: &Arc<Preorder>, spec: &R::Spec) -> Self {
        IncFunction {
            preorder: Arc::clone(p),
            spec: spec.clone(),
            values: BTreeMap::new(),
        }
    }

    pub fn delta(p: &Arc<Preorder>, spec: &R::Spec) -> Self {
        basis_function(BasisKind::Delta, p, spec).expect("delta always exists")
    }

    pub fn zeta(p: &Arc<Preorder>, spec: &R::Spec) -> Self {
        basis_function(BasisKind::Zeta, p, spec).expect("zeta always exists")
    }

    /// Builds a function from a value per related pair.
    pub fn from_fn(
        p: &Arc<Preorder>,
        spec: &R::Spec,
        mut value: impl FnMut(usize, usize) -> R,
    ) -> Self {
        let mut f = Self::zero(p, spec);
        for (s, t) in p.pairs() {
            let v = value(s, t);
            if !v.is_zero() {
                f.values.insert((s, t), v);
            }
        }
        f
    }

    pub fn from_entries(
        p: &Arc<Preorder>,
        spec: &R::Spec,
        entries: impl IntoIterator<Item = ((usize, usize), R)>,
    ) -> Result<Self> {
        let mut f = Self::zero(p, spec);
        for ((s, t), v) in entries {
            f.set(s, t, v)?;
        }
        Ok(f)
    }

    pub fn preorder(&self) -> &Arc<Preorder> {
        &self.preorder
    }

    pub fn ring(&self) -> &R::Spec {
        &self.spec
    }

    pub fn get(&self, s: usize, t: usize) -> R {
        self.values
            .get(&(s, t))
            .cloned()
            .unwrap_or_else(|| R::zero(&self.spec))
    }

    /// Sets a value; pairs outside the relation are rejected.
    pub fn set(&mut self, s: usize, t: usize, v: R) -> Result<()> {
        let n = self.preorder.len();
        for idx in [s, t] {
            if idx >= n {
                return Err(Error::IndexOutOfRange { index: idx, n });
            }
        }
        if !self.preorder.leq(s, t) {
            return Err(Error::OutsideRelation(s, t));
        }
        if v.spec() != self.spec {
            return Err(Error::Mismatch);
        }
        if v.is_zero() {
            self.values.remove(&(s, t));
        } else {
            self.values.insert((s, t), v);
        }
        Ok(())
    }

    /// Nonzero entries in lexicographic order of pairs.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &R)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.preorder, &other.preorder) || *self.preorder == *other.preorder)
            && self.spec == other.spec
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::Mismatch)
        }
    }

    fn with_values(&self, values: BTreeMap<(usize, usize), R>) -> Self {
        IncFunction {
            preorder: Arc::clone(&self.preorder),
            spec: self.spec.clone(),
            values,
        }
    }

    fn map_values(&self, mut op: impl FnMut(usize, usize, &R) -> R) -> Self {
        let values = self
            .values
            .iter()
            .map(|(&(s, t), v)| ((s, t), op(s, t, v)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        self.with_values(values)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut values = self.values.clone();
        for (&k, v) in &other.values {
            let sum = match values.remove(&k) {
                Some(a) => a + v.clone(),
                None => v.clone(),
            };
            if !sum.is_zero() {
                values.insert(k, sum);
            }
        }
        Ok(self.with_values(values))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_values(|_, _, v| -v.clone())
    }

    /// `r · f`, multiplying every value on the left.
    pub fn scale_left(&self, r: &R) -> Self {
        self.map_values(|_, _, v| r.clone() * v.clone())
    }

    /// `f · r`, multiplying every value on the right.
    pub fn scale_right(&self, r: &R) -> Self {
        self.map_values(|_, _, v| v.clone() * r.clone())
    }

    /// `(fg)(x, y) = Σ_{x ≤ z ≤ y} f(x, z) g(z, y)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut values: BTreeMap<(usize, usize), R> = BTreeMap::new();
        for (&(x, z), a) in &self.values {
            for (&(_, y), b) in other.values.range((z, 0)..(z + 1, 0)) {
                let term = a.clone() * b.clone();
                let slot = values.entry((x, y)).or_insert_with(|| R::zero(&self.spec));
                *slot = slot.clone() + term;
            }
        }
        values.retain(|_, v| !v.is_zero());
        Ok(self.with_values(values))
    }

    /// Pointwise product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.map_values(|s, t, v| v.clone() * other.get(s, t)))
    }

    /// `(fL, fM)`: class-diagonal part and off-class part.
    pub fn split(&self) -> (Self, Self) {
        let mut l = BTreeMap::new();
        let mut m = BTreeMap::new();
        for (&(s, t), v) in &self.values {
            if self.preorder.equivalent(s, t) {
                l.insert((s, t), v.clone());
            } else {
                m.insert((s, t), v.clone());
            }
        }
        (self.with_values(l), self.with_values(m))
    }

    pub fn l_part(&self) -> Self {
        self.split().0
    }

    pub fn m_part(&self) -> Self {
        self.split().1
    }

    /// Largest `k` with `f ∈ V_k`; `None` stands for the zero function,
    /// which lies in every `V_k`.
    pub fn filtration_level(&self) -> Result<Option<usize>> {
        let q = self.preorder.quotient();
        let mut level = None;
        for &(s, t) in self.values.keys() {
            let (a, b) = (q.class_of(s), q.class_of(t));
            if a == b {
                return Err(Error::NotInM(s, t));
            }
            let len = q
                .interval_length(a, b)
                .expect("support inside the relation");
            level = Some(level.map_or(len, |l: usize| l.min(len)));
        }
        Ok(level)
    }

    /// Two-sided inverse: invert each diagonal block, then sum the finite
    /// Neumann series of `fL⁻¹ fM`.
    pub fn invert(&self) -> Result<Self> {
        let q = self.preorder.quotient();
        let mut l_inv = BTreeMap::new();
        for c in 0..q.num_classes() {
            let members = q.members(c);
            let block: Vec<Vec<R>> = members
                .iter()
                .map(|&s| members.iter().map(|&t| self.get(s, t)).collect())
                .collect();
            let inv = R::invert_matrix(&self.spec, &block)
                .map_err(|_| Error::NotInvertible { class: c })?;
            for (i, &s) in members.iter().enumerate() {
                for (j, &t) in members.iter().enumerate() {
                    if !inv[i][j].is_zero() {
                        l_inv.insert((s, t), inv[i][j].clone());
                    }
                }
            }
        }
        let l_inv = self.with_values(l_inv);
        let m = l_inv.convolve(&self.m_part())?.neg();
        let mut sum = Self::delta(&self.preorder, &self.spec);
        let mut power = sum.clone();
        for _ in 0..q.max_length() {
            power = power.convolve(&m)?;
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power)?;
        }
        sum.convolve(&l_inv)
    }

    /// Every class-diagonal value lies in the Jacobson radical of `R`.
    pub fn in_radical(&self) -> bool {
        self.values
            .iter()
            .all(|(&(s, t), v)| !self.preorder.equivalent(s, t) || v.in_radical())
    }

    /// `ξ_τ(f)(x, y) = f(τx, τy)` for a permutation of elements.
    pub fn pullback(&self, tau: &[usize]) -> Self {
        let mut inv = vec![0; tau.len()];
        for (i, &t) in tau.iter().enumerate() {
            inv[t] = i;
        }
        let values = self
            .values
            .iter()
            .map(|(&(s, t), v)| ((inv[s], inv[t]), v.clone()))
            .collect();
        self.with_values(values)
    }

    /// A random function with values from [`Ring::sample`] on each pair.
    pub fn random<G: RandRng + ?Sized>(p: &Arc<Preorder>, spec: &R::Spec, rng: &mut G) -> Self {
        Self::from_fn(p, spec, |_, _| R::sample(spec, rng))
    }

    /// A random unit: diagonal blocks are resampled until invertible.
    pub fn random_unit<G: RandRng + ?Sized>(
        p: &Arc<Preorder>,
        spec: &R::Spec,
        rng: &mut G,
    ) -> Self {
        let mut f = Self::random(p, spec, rng);
        let q = p.quotient();
        for c in 0..q.num_classes() {
            let members = q.members(c);
            loop {
                let block: Vec<Vec<R>> = members
                    .iter()
                    .map(|_| members.iter().map(|_| R::sample(spec, rng)).collect())
                    .collect();
                if R::invert_matrix(spec, &block).is_ok() {
                    for (i, &s) in members.iter().enumerate() {
                        for (j, &t) in members.iter().enumerate() {
                            f.set(s, t, block[i][j].clone()).expect("pair in relation");
                        }
                    }
                    break;
                }
            }
        }
        f
    }
}

/// `μ = ζ⁻¹`. On a preorder with a class of two or more elements the
/// diagonal block of `ζ` is an all-ones matrix and `ζ` is not invertible.
pub fn mobius<R: Ring>(p: &Arc<Preorder>, spec: &R::Spec) -> Result<IncFunction<R>> {
    IncFunction::zeta(p, spec).invert()
}

#[cfg(test)]
mod tests;
