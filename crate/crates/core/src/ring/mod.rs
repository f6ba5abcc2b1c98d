//! Exact coefficient rings.
//!
//! Every coefficient type implements [`Ring`]. A ring element knows its own
//! specification (`Ring::Spec`), which is how runtime-parameterized rings
//! such as `ℤ/n` or `M(k, ℚ)` produce their zero and identity.

mod dynamic;
mod matrix;
mod rational;
mod zmod;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng as RandRng;

use crate::error::{Error, Result};

pub use dynamic::{BaseElem, BaseSpec, RingElem, RingSpec};
pub use matrix::{MatSpec, SquareMatrix};
pub use rational::Rational;
pub use zmod::{Modulus, Zmod};

/// An exact ring with identity.
///
/// Arithmetic goes through the std operator traits. Mixing elements with
/// different specifications is a logic error and panics; the public algebra
/// routines check specifications before combining values.
pub trait Ring:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Spec: Clone + PartialEq + Eq + fmt::Debug;

    fn zero(spec: &Self::Spec) -> Self;
    fn one(spec: &Self::Spec) -> Self;
    fn from_i64(spec: &Self::Spec, n: i64) -> Self;
    fn spec(&self) -> Self::Spec;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one(&self.spec())
    }

    /// Two-sided inverse, or [`Error::NotUnit`].
    fn invert_unit(&self) -> Result<Self>;
    fn is_unit(&self) -> bool {
        self.invert_unit().is_ok()
    }
    /// Commutes with every element of the ring.
    fn is_central(&self) -> bool;
    /// Membership in the Jacobson radical.
    fn in_radical(&self) -> bool;

    fn is_commutative(spec: &Self::Spec) -> bool;
    /// Every nonzero element is a unit.
    fn is_field(spec: &Self::Spec) -> bool;
    /// Characteristic of the ring (0 for ℚ).
    fn characteristic(spec: &Self::Spec) -> u64;

    /// Inverse of a square matrix with entries in this ring.
    ///
    /// The default goes through Cayley-Hamilton and is valid for
    /// commutative rings only; noncommutative rings override it.
    fn invert_matrix(spec: &Self::Spec, m: &[Vec<Self>]) -> Result<Vec<Vec<Self>>> {
        assert!(
            Self::is_commutative(spec),
            "default matrix inversion needs a commutative ring"
        );
        invert_by_cayley_hamilton(spec, m)
    }

    /// A random element with small numerators or arbitrary residues.
    fn sample<G: RandRng + ?Sized>(spec: &Self::Spec, rng: &mut G) -> Self;
    /// A random central unit.
    fn sample_central_unit<G: RandRng + ?Sized>(spec: &Self::Spec, rng: &mut G) -> Self;
}

/// Coefficients of `det(λI − A)` from the leading term down, computed with
/// the division-free Samuelson-Berkowitz recursion.
pub fn characteristic_polynomial<R: Ring>(spec: &R::Spec, a: &[Vec<R>]) -> Vec<R> {
    let n = a.len();
    let mut poly = vec![R::one(spec)];
    for k in (0..n).rev() {
        let m = n - k - 1;
        // q = (1, -a_kk, -R C, -R A1 C, ..., -R A1^{m-1} C)
        let mut q = Vec::with_capacity(m + 2);
        q.push(R::one(spec));
        q.push(-a[k][k].clone());
        let mut col: Vec<R> = (k + 1..n).map(|i| a[i][k].clone()).collect();
        for _ in 0..m {
            let mut dot = R::zero(spec);
            for (j, c) in col.iter().enumerate() {
                dot = dot + a[k][k + 1 + j].clone() * c.clone();
            }
            q.push(-dot);
            col = (k + 1..n)
                .map(|i| {
                    let mut s = R::zero(spec);
                    for (j, c) in col.iter().enumerate() {
                        s = s + a[i][k + 1 + j].clone() * c.clone();
                    }
                    s
                })
                .collect();
        }
        let mut next = vec![R::zero(spec); m + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, p) in poly.iter().enumerate() {
                if j <= i && i - j < q.len() {
                    *slot = slot.clone() + q[i - j].clone() * p.clone();
                }
            }
        }
        poly = next;
    }
    poly
}

/// Determinant over a commutative ring.
pub fn determinant<R: Ring>(spec: &R::Spec, a: &[Vec<R>]) -> R {
    let n = a.len();
    let poly = characteristic_polynomial(spec, a);
    let last = poly[n].clone();
    if n.is_multiple_of(2) {
        last
    } else {
        -last
    }
}

fn mat_mul<R: Ring>(spec: &R::Spec, a: &[Vec<R>], b: &[Vec<R>]) -> Vec<Vec<R>> {
    let n = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    (0..n)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(R::zero(spec), |acc, k| {
                        acc + a[i][k].clone() * b[k][j].clone()
                    })
                })
                .collect()
        })
        .collect()
}

/// `A⁻¹ = −c_n⁻¹ (A^{n−1} + c_1 A^{n−2} + … + c_{n−1} I)` from the
/// characteristic polynomial; valid over any commutative ring.
fn invert_by_cayley_hamilton<R: Ring>(spec: &R::Spec, a: &[Vec<R>]) -> Result<Vec<Vec<R>>> {
    let n = a.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let poly = characteristic_polynomial(spec, a);
    let cn_inv = poly[n]
        .invert_unit()
        .map_err(|_| Error::NotUnit(format!("matrix with determinant {}", determinant(spec, a))))?;
    let identity: Vec<Vec<R>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { R::one(spec) } else { R::zero(spec) })
                .collect()
        })
        .collect();
    // Horner: B = (((I) A + c1 I) A + c2 I) ... + c_{n-1} I
    let mut acc = identity.clone();
    for c in poly.iter().take(n).skip(1) {
        acc = mat_mul(spec, &acc, a);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] = row[i].clone() + c.clone();
        }
    }
    let scale = -cn_inv;
    Ok(acc
        .into_iter()
        .map(|row| row.into_iter().map(|x| scale.clone() * x).collect())
        .collect())
}

/// Integer-valued sample used by several ring implementations.
pub(crate) fn small_int<G: RandRng + ?Sized>(rng: &mut G) -> i64 {
    rng.gen_range(-4..=4)
}
