use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng as RandRng;

use super::{small_int, Ring};
use crate::error::{Error, Result};

/// Arbitrary-precision rationals in lowest terms.
pub type Rational = BigRational;

impl Ring for BigRational {
    type Spec = ();

    fn zero(_: &()) -> Self {
        Zero::zero()
    }
    fn one(_: &()) -> Self {
        One::one()
    }
    fn from_i64(_: &(), n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn spec(&self) {}

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn invert_unit(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::NotUnit(self.to_string()))
        } else {
            Ok(self.recip())
        }
    }
    fn is_central(&self) -> bool {
        true
    }
    fn in_radical(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_commutative(_: &()) -> bool {
        true
    }
    fn is_field(_: &()) -> bool {
        true
    }
    fn characteristic(_: &()) -> u64 {
        0
    }

    fn invert_matrix(_: &(), m: &[Vec<Self>]) -> Result<Vec<Vec<Self>>> {
        gauss_jordan_inverse(m)
    }

    fn sample<G: RandRng + ?Sized>(_: &(), rng: &mut G) -> Self {
        let num = small_int(rng);
        let den = rng.gen_range(1..=3);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn sample_central_unit<G: RandRng + ?Sized>(spec: &(), rng: &mut G) -> Self {
        loop {
            let x = Self::sample(spec, rng);
            if !Zero::is_zero(&x) {
                return x;
            }
        }
    }
}

/// Gauss-Jordan over ℚ; pivot on the first nonzero entry of each column.
#[allow(clippy::needless_range_loop)]
fn gauss_jordan_inverse(m: &[Vec<BigRational>]) -> Result<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    <BigRational as One>::one()
                } else {
                    <BigRational as Zero>::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !Zero::is_zero(&a[r][col]))
            .ok_or_else(|| Error::NotUnit("singular rational matrix".into()))?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !Zero::is_zero(&a[r][col]) {
                let factor = a[r][col].clone();
                for c in 0..2 * n {
                    let sub = &factor * &a[col][c];
                    a[r][c] = &a[r][c] - sub;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub(crate) fn format_rational(x: &BigRational) -> String {
    x.to_string()
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_three_halves() {
        let x = parse_rational("3/2").unwrap();
        assert_eq!(format_rational(&x.invert_unit().unwrap()), "2/3");
    }

    #[test]
    fn zero_is_not_a_unit() {
        assert!(matches!(
            <BigRational as Zero>::zero().invert_unit(),
            Err(Error::NotUnit(_))
        ));
    }

    #[test]
    fn radical_of_q_is_zero() {
        assert!(Ring::in_radical(&<BigRational as Zero>::zero()));
        assert!(!Ring::in_radical(&parse_rational("1/2").unwrap()));
    }

    #[test]
    fn literals_are_canonical() {
        assert_eq!(format_rational(&parse_rational("4/-6").unwrap()), "-2/3");
        assert_eq!(format_rational(&parse_rational("0/5").unwrap()), "0");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
