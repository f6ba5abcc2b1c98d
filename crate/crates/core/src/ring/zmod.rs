use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use rand::Rng as RandRng;

use super::Ring;
use crate::error::{Error, Result};

/// Modulus of `ℤ/n`, always at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(pub u64);

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::RingSpec(format!(
                "modulus must be at least 2, got {n}"
            )));
        }
        Ok(Modulus(n))
    }

    pub fn is_prime(self) -> bool {
        let n = self.0;
        if n < 2 {
            return false;
        }
        let mut d = 2u64;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    /// Product of the distinct primes dividing the modulus; `J(ℤ/n)` is the
    /// ideal it generates.
    pub fn radical(self) -> u64 {
        let mut n = self.0;
        let mut rad = 1u64;
        let mut d = 2u64;
        while d * d <= n {
            if n.is_multiple_of(d) {
                rad *= d;
                while n.is_multiple_of(d) {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            rad *= n;
        }
        rad
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A residue class in `ℤ/n`, stored reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Zmod {
    value: u64,
    modulus: u64,
}

impl Zmod {
    pub fn new(value: i128, modulus: Modulus) -> Self {
        let m = modulus.0 as i128;
        Zmod {
            value: value.rem_euclid(m) as u64,
            modulus: modulus.0,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        Modulus(self.modulus)
    }

    fn check(self, other: Zmod) {
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
    }
}

impl fmt::Display for Zmod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Zmod {
    type Output = Zmod;
    fn add(self, o: Zmod) -> Zmod {
        self.check(o);
        Zmod {
            value: ((self.value as u128 + o.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
}

impl Sub for Zmod {
    type Output = Zmod;
    fn sub(self, o: Zmod) -> Zmod {
        self + (-o)
    }
}

impl Neg for Zmod {
    type Output = Zmod;
    fn neg(self) -> Zmod {
        Zmod {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Mul for Zmod {
    type Output = Zmod;
    fn mul(self, o: Zmod) -> Zmod {
        self.check(o);
        Zmod {
            value: ((self.value as u128 * o.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
}

impl Ring for Zmod {
    type Spec = Modulus;

    fn zero(spec: &Modulus) -> Self {
        Zmod::new(0, *spec)
    }
    fn one(spec: &Modulus) -> Self {
        Zmod::new(1, *spec)
    }
    fn from_i64(spec: &Modulus, n: i64) -> Self {
        Zmod::new(n as i128, *spec)
    }
    fn spec(&self) -> Modulus {
        Modulus(self.modulus)
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn invert_unit(&self) -> Result<Self> {
        let a = self.value as i128;
        let m = self.modulus as i128;
        let ext = a.extended_gcd(&m);
        if ext.gcd != 1 {
            return Err(Error::NotUnit(format!(
                "{} mod {}",
                self.value, self.modulus
            )));
        }
        Ok(Zmod::new(ext.x, Modulus(self.modulus)))
    }
    fn is_central(&self) -> bool {
        true
    }
    fn in_radical(&self) -> bool {
        self.value.is_multiple_of(Modulus(self.modulus).radical())
    }

    fn is_commutative(_: &Modulus) -> bool {
        true
    }
    fn is_field(spec: &Modulus) -> bool {
        spec.is_prime()
    }
    fn characteristic(spec: &Modulus) -> u64 {
        spec.0
    }

    fn sample<G: RandRng + ?Sized>(spec: &Modulus, rng: &mut G) -> Self {
        Zmod::new(rng.gen_range(0..spec.0) as i128, *spec)
    }

    fn sample_central_unit<G: RandRng + ?Sized>(spec: &Modulus, rng: &mut G) -> Self {
        loop {
            let x = Self::sample(spec, rng);
            if x.is_unit() {
                return x;
            }
        }
    }
}
