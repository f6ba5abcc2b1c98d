use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng as RandRng;

use super::Ring;
use crate::error::{Error, Result};

/// Specification of `M(k, B)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatSpec<S> {
    pub order: usize,
    pub base: S,
}

/// An element of the full matrix ring `M(k, B)` over a commutative base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix<B: Ring> {
    order: usize,
    base: B::Spec,
    entries: Vec<B>,
}

impl<B: Ring> SquareMatrix<B> {
    pub fn from_rows(spec: &MatSpec<B::Spec>, rows: Vec<Vec<B>>) -> Result<Self> {
        let k = spec.order;
        if rows.len() != k || rows.iter().any(|r| r.len() != k) {
            return Err(Error::Parse(format!("expected a {k}x{k} matrix")));
        }
        if rows.iter().flatten().any(|x| x.spec() != spec.base) {
            return Err(Error::Mismatch);
        }
        Ok(SquareMatrix {
            order: k,
            base: spec.base.clone(),
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn scalar(spec: &MatSpec<B::Spec>, x: B) -> Self {
        let k = spec.order;
        let entries = (0..k * k)
            .map(|idx| {
                if idx / k == idx % k {
                    x.clone()
                } else {
                    B::zero(&spec.base)
                }
            })
            .collect();
        SquareMatrix {
            order: k,
            base: spec.base.clone(),
            entries,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &B {
        &self.entries[i * self.order + j]
    }

    pub fn rows(&self) -> Vec<Vec<B>> {
        self.entries
            .chunks(self.order)
            .map(|c| c.to_vec())
            .collect()
    }

    fn check(&self, other: &Self) {
        assert!(
            self.order == other.order && self.base == other.base,
            "mixed matrix rings"
        );
    }

    pub fn determinant(&self) -> B {
        super::determinant(&self.base, &self.rows())
    }
}

impl<B: Ring> fmt::Display for SquareMatrix<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.order).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<B: Ring> Add for SquareMatrix<B> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.check(&o);
        SquareMatrix {
            order: self.order,
            base: self.base,
            entries: self
                .entries
                .into_iter()
                .zip(o.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<B: Ring> Sub for SquareMatrix<B> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<B: Ring> Neg for SquareMatrix<B> {
    type Output = Self;
    fn neg(self) -> Self {
        SquareMatrix {
            order: self.order,
            base: self.base,
            entries: self.entries.into_iter().map(|a| -a).collect(),
        }
    }
}

impl<B: Ring> Mul for SquareMatrix<B> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.check(&o);
        let k = self.order;
        let mut entries = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let mut s = B::zero(&self.base);
                for l in 0..k {
                    s = s + self.get(i, l).clone() * o.get(l, j).clone();
                }
                entries.push(s);
            }
        }
        SquareMatrix {
            order: k,
            base: self.base,
            entries,
        }
    }
}

impl<B: Ring> Ring for SquareMatrix<B> {
    type Spec = MatSpec<B::Spec>;

    fn zero(spec: &Self::Spec) -> Self {
        Self::scalar(spec, B::zero(&spec.base))
    }
    fn one(spec: &Self::Spec) -> Self {
        Self::scalar(spec, B::one(&spec.base))
    }
    fn from_i64(spec: &Self::Spec, n: i64) -> Self {
        Self::scalar(spec, B::from_i64(&spec.base, n))
    }
    fn spec(&self) -> Self::Spec {
        MatSpec {
            order: self.order,
            base: self.base.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    fn invert_unit(&self) -> Result<Self> {
        let inv = B::invert_matrix(&self.base, &self.rows())?;
        Self::from_rows(&self.spec(), inv)
    }

    /// Over a commutative base the center is the scalar matrices.
    fn is_central(&self) -> bool {
        let k = self.order;
        let d = self.get(0, 0);
        (0..k).all(|i| {
            (0..k).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x == d
                } else {
                    x.is_zero()
                }
            })
        })
    }

    /// `J(M(k, B)) = M(k, J(B))`.
    fn in_radical(&self) -> bool {
        self.entries.iter().all(|x| x.in_radical())
    }

    fn is_commutative(spec: &Self::Spec) -> bool {
        spec.order == 1 && B::is_commutative(&spec.base)
    }
    fn is_field(spec: &Self::Spec) -> bool {
        spec.order == 1 && B::is_field(&spec.base)
    }
    fn characteristic(spec: &Self::Spec) -> u64 {
        B::characteristic(&spec.base)
    }

    /// Flattens an `n×n` matrix over `M(k, B)` into an `nk×nk` matrix over
    /// the commutative base and inverts that.
    fn invert_matrix(spec: &Self::Spec, m: &[Vec<Self>]) -> Result<Vec<Vec<Self>>> {
        let n = m.len();
        let k = spec.order;
        let mut flat = vec![vec![B::zero(&spec.base); n * k]; n * k];
        for (bi, row) in m.iter().enumerate() {
            for (bj, block) in row.iter().enumerate() {
                for i in 0..k {
                    for j in 0..k {
                        flat[bi * k + i][bj * k + j] = block.get(i, j).clone();
                    }
                }
            }
        }
        let inv = B::invert_matrix(&spec.base, &flat)?;
        (0..n)
            .map(|bi| {
                (0..n)
                    .map(|bj| {
                        let rows = (0..k)
                            .map(|i| {
                                (0..k)
                                    .map(|j| inv[bi * k + i][bj * k + j].clone())
                                    .collect()
                            })
                            .collect();
                        Self::from_rows(spec, rows)
                    })
                    .collect()
            })
            .collect()
    }

    fn sample<G: RandRng + ?Sized>(spec: &Self::Spec, rng: &mut G) -> Self {
        let k = spec.order;
        SquareMatrix {
            order: k,
            base: spec.base.clone(),
            entries: (0..k * k).map(|_| B::sample(&spec.base, rng)).collect(),
        }
    }

    fn sample_central_unit<G: RandRng + ?Sized>(spec: &Self::Spec, rng: &mut G) -> Self {
        Self::scalar(spec, B::sample_central_unit(&spec.base, rng))
    }
}
