//! Finite preorders, their partial-order quotients, comparability graphs
//! and order automorphisms.

mod enumerate;
mod graph;
mod iso;
pub mod named;

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub use enumerate::{connected_posets, posets_up_to_iso};
pub use graph::{
    comparability, spanning_forest, triangles, CompGraph, FundamentalCycle, Skeleton,
    SpanningForest, Triangle,
};
pub use iso::{
    isomorphisms, poset_automorphisms, poset_automorphisms_bounded, LabeledOrder,
    DEFAULT_AUTOMORPHISM_BOUND,
};

/// A reflexive, transitive relation on `{0, …, n−1}`.
#[derive(Debug)]
pub struct Preorder {
    n: usize,
    leq: Vec<Vec<bool>>,
    quotient: OnceLock<QuotientPoset>,
}

impl Clone for Preorder {
    fn clone(&self) -> Self {
        Preorder {
            n: self.n,
            leq: self.leq.clone(),
            quotient: OnceLock::new(),
        }
    }
}

impl PartialEq for Preorder {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.leq == other.leq
    }
}

impl Eq for Preorder {}

/// Smallest preorder on `n` points containing `pairs` (Warshall closure).
#[allow(clippy::needless_range_loop)]
pub fn build_preorder(n: usize, pairs: &[(usize, usize)]) -> Result<Preorder> {
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in pairs {
        for idx in [a, b] {
            if idx >= n {
                return Err(Error::IndexOutOfRange { index: idx, n });
            }
        }
        leq[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i][k] {
                for j in 0..n {
                    if leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
    }
    Ok(Preorder {
        n,
        leq,
        quotient: OnceLock::new(),
    })
}

impl Preorder {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.leq
    }

    /// All related pairs `(i, j)` with `i ≤ j`, in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.leq[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `i ∼ j`: mutually comparable.
    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        self.leq[i][j] && self.leq[j][i]
    }

    pub fn is_poset(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || !self.equivalent(i, j)))
    }

    /// The quotient poset, computed once and cached.
    pub fn quotient(&self) -> &QuotientPoset {
        self.quotient.get_or_init(|| quotient(self))
    }
}

/// `X̄ = X/∼` with class sizes and interval lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPoset {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    lt: Vec<Vec<bool>>,
    /// Longest chain length of `[x, y]` for `x ≤ y`.
    length: Vec<Vec<Option<usize>>>,
}

/// Quotient of a preorder by mutual comparability; classes are numbered by
/// their minimal element.
pub fn quotient(p: &Preorder) -> QuotientPoset {
    let n = p.len();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (i..n).filter(|&j| p.equivalent(i, j)).collect();
        for &j in &members {
            class_of[j] = classes.len();
        }
        classes.push(members);
    }
    let k = classes.len();
    let lt = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| {
                    let (x, y) = (classes[a][0], classes[b][0]);
                    p.leq(x, y) && !p.leq(y, x)
                })
                .collect()
        })
        .collect();
    QuotientPoset::from_parts(classes, class_of, lt)
}

impl QuotientPoset {
    fn from_parts(classes: Vec<Vec<usize>>, class_of: Vec<usize>, lt: Vec<Vec<bool>>) -> Self {
        let k = classes.len();
        let order = topological_order(&lt);
        let mut length = vec![vec![None; k]; k];
        for &x in &order {
            length[x][x] = Some(0);
            for &y in &order {
                if !lt[x][y] {
                    continue;
                }
                // longest chain x < … < z < y over predecessors z of y
                let best = (0..k)
                    .filter(|&z| (z == x || lt[x][z]) && lt[z][y])
                    .filter_map(|z| length[x][z])
                    .max()
                    .map(|l| l + 1);
                length[x][y] = best;
            }
        }
        QuotientPoset {
            classes,
            class_of,
            lt,
            length,
        }
    }

    /// A poset given directly by its strict order on `k` points (singleton
    /// classes).
    pub fn from_strict_order(lt: Vec<Vec<bool>>) -> Self {
        let k = lt.len();
        QuotientPoset::from_parts((0..k).map(|i| vec![i]).collect(), (0..k).collect(), lt)
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn num_elements(&self) -> usize {
        self.class_of.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn members(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    /// Minimal member of a class.
    pub fn repr(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.lt[a][b]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.lt[a][b]
    }

    pub fn strict_order(&self) -> &[Vec<bool>] {
        &self.lt
    }

    /// Length of the interval `[a, b]`, `None` when `a ≰ b`.
    pub fn interval_length(&self, a: usize, b: usize) -> Option<usize> {
        self.length[a][b]
    }

    /// Maximum interval length; `M` is nilpotent of index one more.
    pub fn max_length(&self) -> usize {
        self.length
            .iter()
            .flatten()
            .filter_map(|l| *l)
            .max()
            .unwrap_or(0)
    }

    pub fn is_poset(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    /// Classes `c` with `a ≤ c ≤ b`.
    pub fn interval(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.num_classes())
            .filter(|&c| self.le(a, c) && self.le(c, b))
            .collect()
    }

    /// Topological order of classes, ties broken by the smallest index.
    pub fn topological_order(&self) -> Vec<usize> {
        topological_order(&self.lt)
    }
}

/// A random preorder: each ordered pair is included with probability
/// `density` before closure.
pub fn random_preorder<G: rand::Rng + ?Sized>(n: usize, density: f64, rng: &mut G) -> Preorder {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .filter(|_| rng.gen_bool(density))
        .collect();
    build_preorder(n, &pairs).expect("indices in range")
}

/// A random partial order: only pairs `i < j` are drawn, then a random
/// relabelling is applied.
pub fn random_poset<G: rand::Rng + ?Sized>(n: usize, density: f64, rng: &mut G) -> Preorder {
    use rand::seq::SliceRandom;
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(density))
        .map(|(i, j)| (label[i], label[j]))
        .collect();
    build_preorder(n, &pairs).expect("indices in range")
}

fn topological_order(lt: &[Vec<bool>]) -> Vec<usize> {
    let k = lt.len();
    let mut indeg: Vec<usize> = (0..k)
        .map(|b| (0..k).filter(|&a| lt[a][b]).count())
        .collect();
    let mut done = vec![false; k];
    let mut order = Vec::with_capacity(k);
    while order.len() < k {
        let next = (0..k)
            .find(|&c| !done[c] && indeg[c] == 0)
            .expect("strict order is acyclic");
        done[next] = true;
        order.push(next);
        for (b, d) in indeg.iter_mut().enumerate() {
            if lt[next][b] {
                *d -= 1;
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_adds_transitive_pairs() {
        let p = build_preorder(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
        let p = build_preorder(2, &[]).unwrap();
        assert_eq!(p.pairs(), vec![(0, 0), (1, 1)]);
        let p = build_preorder(3, &[(0, 1), (1, 0), (0, 2)]).unwrap();
        assert!(p.leq(1, 2));
    }

    #[test]
    fn out_of_range_is_rejected() {
        assert_eq!(
            build_preorder(2, &[(0, 2)]).unwrap_err(),
            Error::IndexOutOfRange { index: 2, n: 2 }
        );
    }

    #[test]
    fn closure_is_idempotent() {
        let p = build_preorder(5, &[(0, 3), (3, 1), (1, 0), (2, 4)]).unwrap();
        let again = build_preorder(5, &p.pairs()).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn quotient_examples() {
        let chain = build_preorder(3, &[(0, 1), (1, 2)]).unwrap();
        let q = chain.quotient();
        assert_eq!(q.num_classes(), 3);
        assert!(q.lt(0, 1) && q.lt(1, 2) && q.lt(0, 2));
        assert_eq!(q.interval_length(0, 2), Some(2));

        let p = build_preorder(3, &[(0, 1), (1, 0), (0, 2)]).unwrap();
        let q = p.quotient();
        assert_eq!(q.classes(), &[vec![0, 1], vec![2]]);
        assert!(q.lt(0, 1));

        let pairs: Vec<_> = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).collect();
        let full = build_preorder(4, &pairs).unwrap();
        let q = full.quotient();
        assert_eq!(q.num_classes(), 1);
        assert_eq!(q.class_size(0), 4);
        assert_eq!(q.max_length(), 0);
    }

    #[test]
    fn quotient_is_strict_order() {
        let p =
            build_preorder(6, &[(0, 1), (1, 0), (1, 2), (3, 2), (4, 5), (5, 4), (2, 4)]).unwrap();
        let q = p.quotient();
        let k = q.num_classes();
        for a in 0..k {
            assert!(!q.lt(a, a));
            for b in 0..k {
                assert!(!(q.lt(a, b) && q.lt(b, a)));
                for c in 0..k {
                    if q.lt(a, b) && q.lt(b, c) {
                        assert!(q.lt(a, c));
                    }
                }
            }
        }
        for i in 0..6 {
            for j in 0..6 {
                let (a, b) = (q.class_of(i), q.class_of(j));
                assert_eq!(q.lt(a, b), p.leq(i, j) && !p.leq(j, i));
            }
        }
    }

    #[test]
    fn topological_order_of_reversed_chain() {
        let p = build_preorder(3, &[(2, 1), (1, 0)]).unwrap();
        assert_eq!(p.quotient().topological_order(), vec![2, 1, 0]);
    }
}
