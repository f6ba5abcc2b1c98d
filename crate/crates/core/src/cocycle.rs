//! Cocycles on the comparability graph of `X̄`, shared by the multiplicative
//! and additive theories.
//!
//! A cocycle assigns a central value to every strict pair `x < y` so that
//! `c_xy = c_xz ∘ c_zy` on every triangle, where `∘` is the group law.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poset::{FundamentalCycle, QuotientPoset, Skeleton};
use crate::ring::Ring;

/// A commutative group structure on a subset of central elements.
pub trait Law<R: Ring>: fmt::Debug + Clone + Copy + Default {
    fn identity(spec: &R::Spec) -> R;
    fn op(a: &R, b: &R) -> R;
    fn inverse(a: &R) -> R;
    /// Rejects values outside the group; the pair is reported on failure.
    fn admit(value: &R, pair: (usize, usize)) -> Result<()>;
}

/// Central units under multiplication.
#[derive(Debug, Clone, Copy, Default)]
pub struct Multiplicative;

/// Central elements under addition.
#[derive(Debug, Clone, Copy, Default)]
pub struct Additive;

impl<R: Ring> Law<R> for Multiplicative {
    fn identity(spec: &R::Spec) -> R {
        R::one(spec)
    }
    fn op(a: &R, b: &R) -> R {
        a.clone() * b.clone()
    }
    fn inverse(a: &R) -> R {
        a.invert_unit().expect("admitted values are units")
    }
    fn admit(value: &R, pair: (usize, usize)) -> Result<()> {
        if value.is_central() && value.is_unit() {
            Ok(())
        } else {
            Err(Error::NotCentralUnit(pair.0, pair.1))
        }
    }
}

impl<R: Ring> Law<R> for Additive {
    fn identity(spec: &R::Spec) -> R {
        R::zero(spec)
    }
    fn op(a: &R, b: &R) -> R {
        a.clone() + b.clone()
    }
    fn inverse(a: &R) -> R {
        -a.clone()
    }
    fn admit(value: &R, pair: (usize, usize)) -> Result<()> {
        if value.is_central() {
            Ok(())
        } else {
            Err(Error::NotCentral(pair.0, pair.1))
        }
    }
}

/// How an assignment is turned into a cocycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Values on every edge, validated on every triangle.
    Full,
    /// Values on the spanning-forest edges only; the rest follow from
    /// tree-semipath weights.
    TreeOnly,
}

#[derive(Debug, Clone)]
pub struct Cocycle<R: Ring, L: Law<R>> {
    skeleton: Arc<Skeleton>,
    spec: R::Spec,
    values: Vec<R>,
    law: PhantomData<L>,
}

pub type MultCocycle<R> = Cocycle<R, Multiplicative>;
pub type AddCocycle<R> = Cocycle<R, Additive>;

impl<R: Ring, L: Law<R>> PartialEq for Cocycle<R, L> {
    fn eq(&self, other: &Self) -> bool {
        self.skeleton.quotient == other.skeleton.quotient
            && self.spec == other.spec
            && self.values == other.values
    }
}

/// Root-walk factorization `c = (vertex cocycle) ∘ residue`.
#[derive(Debug, Clone)]
pub struct Decomposition<R: Ring, L: Law<R>> {
    /// Vertex values, identity at the root.
    pub vertex: Vec<R>,
    /// Trivial on tree edges.
    pub residue: Cocycle<R, L>,
    pub is_inner: bool,
    /// First fundamental cycle whose weight is not the identity.
    pub failing_cycle: Option<(FundamentalCycle, R)>,
}

impl<R: Ring, L: Law<R>> Cocycle<R, L> {
    pub fn new(
        skeleton: &Arc<Skeleton>,
        spec: &R::Spec,
        assignment: &BTreeMap<(usize, usize), R>,
        mode: Mode,
    ) -> Result<Self> {
        let g = &skeleton.graph;
        let f = &skeleton.forest;
        for (&(x, y), v) in assignment {
            let admissible = match g.edge_index(x, y) {
                Some(e) => mode == Mode::Full || f.is_tree_edge(e),
                None => false,
            };
            if !admissible {
                return Err(Error::UnexpectedEdge(x, y));
            }
            if v.spec() != *spec {
                return Err(Error::Mismatch);
            }
        }
        let required: Vec<usize> = match mode {
            Mode::Full => (0..g.m()).collect(),
            Mode::TreeOnly => f.tree_edges().to_vec(),
        };
        for &e in &required {
            let (x, y) = g.edges()[e];
            let v = assignment.get(&(x, y)).ok_or(Error::MissingEdge(x, y))?;
            L::admit(v, (x, y))?;
        }
        let mut c = Cocycle {
            skeleton: Arc::clone(skeleton),
            spec: spec.clone(),
            values: vec![L::identity(spec); g.m()],
            law: PhantomData,
        };
        for &e in &required {
            c.values[e] = assignment[&g.edges()[e]].clone();
        }
        match mode {
            Mode::Full => c.validate()?,
            Mode::TreeOnly => {
                for &e in f.chords() {
                    let (x, y) = g.edges()[e];
                    let path = f.tree_path(x, y)?;
                    c.values[e] = c.path_weight(&path)?;
                }
            }
        }
        Ok(c)
    }

    /// `c_xy = q(x)⁻¹ ∘ q(y)`.
    pub fn from_vertices(skeleton: &Arc<Skeleton>, spec: &R::Spec, q: &[R]) -> Result<Self> {
        let k = skeleton.quotient.num_classes();
        if q.len() != k {
            return Err(Error::ShapeMismatch(format!(
                "expected {k} vertex values, got {}",
                q.len()
            )));
        }
        for (x, v) in q.iter().enumerate() {
            if v.spec() != *spec {
                return Err(Error::Mismatch);
            }
            L::admit(v, (x, x))?;
        }
        let values = skeleton
            .graph
            .edges()
            .iter()
            .map(|&(x, y)| L::op(&L::inverse(&q[x]), &q[y]))
            .collect();
        Ok(Cocycle {
            skeleton: Arc::clone(skeleton),
            spec: spec.clone(),
            values,
            law: PhantomData,
        })
    }

    /// The identity cocycle.
    pub fn trivial(skeleton: &Arc<Skeleton>, spec: &R::Spec) -> Self {
        Cocycle {
            skeleton: Arc::clone(skeleton),
            spec: spec.clone(),
            values: vec![L::identity(spec); skeleton.graph.m()],
            law: PhantomData,
        }
    }

    /// Checks the law on every triangle.
    pub fn validate(&self) -> Result<()> {
        for t in &self.skeleton.triangles {
            let composed = L::op(&self.values[t.i_xz], &self.values[t.i_zy]);
            if composed != self.values[t.i_xy] {
                return Err(Error::CocycleViolation(t.x, t.z, t.y));
            }
        }
        Ok(())
    }

    pub fn skeleton(&self) -> &Arc<Skeleton> {
        &self.skeleton
    }

    pub fn quotient(&self) -> &QuotientPoset {
        &self.skeleton.quotient
    }

    pub fn ring(&self) -> &R::Spec {
        &self.spec
    }

    /// Values in edge order.
    pub fn values(&self) -> &[R] {
        &self.values
    }

    /// `c_xy` for classes `x < y`.
    pub fn value(&self, x: usize, y: usize) -> Option<&R> {
        self.skeleton
            .graph
            .edge_index(x, y)
            .map(|e| &self.values[e])
    }

    /// Map from edges to values, ready to feed back into [`Cocycle::new`].
    pub fn assignment(&self) -> BTreeMap<(usize, usize), R> {
        self.skeleton
            .graph
            .edges()
            .iter()
            .copied()
            .zip(self.values.iter().cloned())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        let id = L::identity(&self.spec);
        self.values.iter().all(|v| *v == id)
    }

    /// Pointwise group product.
    pub fn combine(&self, other: &Self) -> Result<Self> {
        if self.skeleton.quotient != other.skeleton.quotient || self.spec != other.spec {
            return Err(Error::Mismatch);
        }
        Ok(Cocycle {
            skeleton: Arc::clone(&self.skeleton),
            spec: self.spec.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| L::op(a, b))
                .collect(),
            law: PhantomData,
        })
    }

    pub fn inverse(&self) -> Self {
        Cocycle {
            skeleton: Arc::clone(&self.skeleton),
            spec: self.spec.clone(),
            values: self.values.iter().map(L::inverse).collect(),
            law: PhantomData,
        }
    }

    /// Weight of a walk: `c_ab` along an edge `a < b`, its inverse against.
    pub fn path_weight(&self, walk: &[usize]) -> Result<R> {
        let g = &self.skeleton.graph;
        let k = g.num_vertices();
        let mut w = L::identity(&self.spec);
        for step in walk.windows(2) {
            let (a, b) = (step[0], step[1]);
            if a >= k || b >= k {
                return Err(Error::NotASemipath(a, b));
            }
            let factor = if let Some(e) = g.edge_index(a, b) {
                self.values[e].clone()
            } else if let Some(e) = g.edge_index(b, a) {
                L::inverse(&self.values[e])
            } else {
                return Err(Error::NotASemipath(a, b));
            };
            w = L::op(&w, &factor);
        }
        Ok(w)
    }

    /// Root walk along the spanning tree, residue and cycle-weight innerness.
    pub fn decompose(&self) -> Result<Decomposition<R, L>> {
        self.skeleton.require_connected()?;
        let g = &self.skeleton.graph;
        let f = &self.skeleton.forest;
        let k = g.num_vertices();
        let mut vertex = vec![L::identity(&self.spec); k];
        for w in f.bfs_order() {
            if let Some(u) = f.parent(w) {
                let step = self.path_weight(&[u, w])?;
                vertex[w] = L::op(&vertex[u], &step);
            }
        }
        let potential = Self::from_vertices(&self.skeleton, &self.spec, &vertex)?;
        let residue = self.combine(&potential.inverse())?;
        let id = L::identity(&self.spec);
        let mut failing_cycle = None;
        for cycle in f.fundamental_cycles() {
            let w = self.path_weight(&cycle.walk)?;
            if w != id {
                failing_cycle = Some((cycle.clone(), w));
                break;
            }
        }
        Ok(Decomposition {
            vertex,
            is_inner: failing_cycle.is_none(),
            residue,
            failing_cycle,
        })
    }
}
