//! Runtime-selected coefficient rings, as named on the command line:
//! `Q`, `Zmod:<n>`, `Mat:<k>:Q`, `Mat:<k>:Zmod:<n>`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use rand::Rng as RandRng;
use serde_json::Value;

use super::rational::{format_rational, parse_rational};
use super::{MatSpec, Modulus, Rational, Ring, SquareMatrix, Zmod};
use crate::error::{Error, Result};

/// A commutative base ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseSpec {
    Rationals,
    IntegersMod(Modulus),
}

/// Any supported coefficient ring. Matrix rings do not nest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Rationals,
    IntegersMod(Modulus),
    MatrixRing { order: usize, base: BaseSpec },
}

impl RingSpec {
    /// The ring itself for commutative specs; the scalar base for matrix rings.
    pub fn center(self) -> BaseSpec {
        match self {
            RingSpec::Rationals => BaseSpec::Rationals,
            RingSpec::IntegersMod(m) => BaseSpec::IntegersMod(m),
            RingSpec::MatrixRing { base, .. } => base,
        }
    }
}

impl From<BaseSpec> for RingSpec {
    fn from(b: BaseSpec) -> Self {
        match b {
            BaseSpec::Rationals => RingSpec::Rationals,
            BaseSpec::IntegersMod(m) => RingSpec::IntegersMod(m),
        }
    }
}

impl fmt::Display for BaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseSpec::Rationals => write!(f, "Q"),
            BaseSpec::IntegersMod(m) => write!(f, "Zmod:{m}"),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::IntegersMod(m) => write!(f, "Zmod:{m}"),
            RingSpec::MatrixRing { order, base } => write!(f, "Mat:{order}:{base}"),
        }
    }
}

fn parse_base(s: &str) -> Result<BaseSpec> {
    if s == "Q" {
        return Ok(BaseSpec::Rationals);
    }
    if let Some(n) = s.strip_prefix("Zmod:") {
        let n: u64 = n
            .parse()
            .map_err(|_| Error::RingSpec(format!("bad modulus in {s:?}")))?;
        return Ok(BaseSpec::IntegersMod(Modulus::new(n)?));
    }
    Err(Error::RingSpec(format!("unknown ring {s:?}")))
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("Mat:") {
            let (k, base) = rest
                .split_once(':')
                .ok_or_else(|| Error::RingSpec(format!("missing base ring in {s:?}")))?;
            let order: usize = k
                .parse()
                .map_err(|_| Error::RingSpec(format!("bad matrix order in {s:?}")))?;
            if order == 0 {
                return Err(Error::RingSpec("matrix order must be at least 1".into()));
            }
            return Ok(RingSpec::MatrixRing {
                order,
                base: parse_base(base)?,
            });
        }
        Ok(parse_base(s)?.into())
    }
}

/// Element of a commutative base ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseElem {
    Q(Rational),
    Z(Zmod),
}

macro_rules! base_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for BaseElem {
            type Output = BaseElem;
            fn $method(self, o: BaseElem) -> BaseElem {
                match (self, o) {
                    (BaseElem::Q(a), BaseElem::Q(b)) => BaseElem::Q($tr::$method(a, b)),
                    (BaseElem::Z(a), BaseElem::Z(b)) => BaseElem::Z($tr::$method(a, b)),
                    _ => panic!("mixed base rings"),
                }
            }
        }
    };
}

base_binop!(Add, add);
base_binop!(Sub, sub);
base_binop!(Mul, mul);

impl Neg for BaseElem {
    type Output = BaseElem;
    fn neg(self) -> BaseElem {
        match self {
            BaseElem::Q(a) => BaseElem::Q(-a),
            BaseElem::Z(a) => BaseElem::Z(-a),
        }
    }
}

impl fmt::Display for BaseElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseElem::Q(a) => write!(f, "{}", format_rational(a)),
            BaseElem::Z(a) => write!(f, "{a}"),
        }
    }
}

impl BaseElem {
    pub fn parse(spec: &BaseSpec, s: &str) -> Result<Self> {
        match spec {
            BaseSpec::Rationals => Ok(BaseElem::Q(parse_rational(s)?)),
            BaseSpec::IntegersMod(m) => {
                let v: i128 = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid residue literal {s:?}")))?;
                Ok(BaseElem::Z(Zmod::new(v, *m)))
            }
        }
    }
}

impl Ring for BaseElem {
    type Spec = BaseSpec;

    fn zero(spec: &BaseSpec) -> Self {
        Self::from_i64(spec, 0)
    }
    fn one(spec: &BaseSpec) -> Self {
        Self::from_i64(spec, 1)
    }
    fn from_i64(spec: &BaseSpec, n: i64) -> Self {
        match spec {
            BaseSpec::Rationals => BaseElem::Q(Rational::from_i64(&(), n)),
            BaseSpec::IntegersMod(m) => BaseElem::Z(Zmod::from_i64(m, n)),
        }
    }
    fn spec(&self) -> BaseSpec {
        match self {
            BaseElem::Q(_) => BaseSpec::Rationals,
            BaseElem::Z(a) => BaseSpec::IntegersMod(a.modulus()),
        }
    }
    fn is_zero(&self) -> bool {
        match self {
            BaseElem::Q(a) => Ring::is_zero(a),
            BaseElem::Z(a) => a.is_zero(),
        }
    }
    fn invert_unit(&self) -> Result<Self> {
        match self {
            BaseElem::Q(a) => a.invert_unit().map(BaseElem::Q),
            BaseElem::Z(a) => a.invert_unit().map(BaseElem::Z),
        }
    }
    fn is_central(&self) -> bool {
        true
    }
    fn in_radical(&self) -> bool {
        match self {
            BaseElem::Q(a) => Ring::in_radical(a),
            BaseElem::Z(a) => a.in_radical(),
        }
    }
    fn is_commutative(_: &BaseSpec) -> bool {
        true
    }
    fn is_field(spec: &BaseSpec) -> bool {
        match spec {
            BaseSpec::Rationals => true,
            BaseSpec::IntegersMod(m) => m.is_prime(),
        }
    }
    fn characteristic(spec: &BaseSpec) -> u64 {
        match spec {
            BaseSpec::Rationals => 0,
            BaseSpec::IntegersMod(m) => m.0,
        }
    }
    fn invert_matrix(spec: &BaseSpec, m: &[Vec<Self>]) -> Result<Vec<Vec<Self>>> {
        match spec {
            BaseSpec::Rationals => {
                let inner: Vec<Vec<Rational>> = m
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| match x {
                                BaseElem::Q(a) => a.clone(),
                                _ => panic!("mixed base rings"),
                            })
                            .collect()
                    })
                    .collect();
                let inv = Rational::invert_matrix(&(), &inner)?;
                Ok(inv
                    .into_iter()
                    .map(|r| r.into_iter().map(BaseElem::Q).collect())
                    .collect())
            }
            BaseSpec::IntegersMod(_) => super::invert_by_cayley_hamilton(spec, m),
        }
    }
    fn sample<G: RandRng + ?Sized>(spec: &BaseSpec, rng: &mut G) -> Self {
        match spec {
            BaseSpec::Rationals => BaseElem::Q(Rational::sample(&(), rng)),
            BaseSpec::IntegersMod(m) => BaseElem::Z(Zmod::sample(m, rng)),
        }
    }
    fn sample_central_unit<G: RandRng + ?Sized>(spec: &BaseSpec, rng: &mut G) -> Self {
        match spec {
            BaseSpec::Rationals => BaseElem::Q(Rational::sample_central_unit(&(), rng)),
            BaseSpec::IntegersMod(m) => BaseElem::Z(Zmod::sample_central_unit(m, rng)),
        }
    }
}

/// Element of a runtime-selected ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingElem {
    Scalar(BaseElem),
    Matrix(SquareMatrix<BaseElem>),
}

macro_rules! elem_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for RingElem {
            type Output = RingElem;
            fn $method(self, o: RingElem) -> RingElem {
                match (self, o) {
                    (RingElem::Scalar(a), RingElem::Scalar(b)) => {
                        RingElem::Scalar($tr::$method(a, b))
                    }
                    (RingElem::Matrix(a), RingElem::Matrix(b)) => {
                        RingElem::Matrix($tr::$method(a, b))
                    }
                    _ => panic!("mixed scalar and matrix elements"),
                }
            }
        }
    };
}

elem_binop!(Add, add);
elem_binop!(Sub, sub);
elem_binop!(Mul, mul);

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        match self {
            RingElem::Scalar(a) => RingElem::Scalar(-a),
            RingElem::Matrix(a) => RingElem::Matrix(-a),
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElem::Scalar(a) => write!(f, "{a}"),
            RingElem::Matrix(a) => write!(f, "{a}"),
        }
    }
}

impl RingElem {
    /// Parses a literal: a string (or integer) for scalar rings, a
    /// row-major array of such literals for matrix rings.
    pub fn from_json(spec: &RingSpec, v: &Value) -> Result<Self> {
        fn scalar_text(v: &Value) -> Result<String> {
            match v {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
                other => Err(Error::Parse(format!(
                    "expected an exact literal, got {other}"
                ))),
            }
        }
        match spec {
            RingSpec::Rationals | RingSpec::IntegersMod(_) => Ok(RingElem::Scalar(
                BaseElem::parse(&spec.center(), &scalar_text(v)?)?,
            )),
            RingSpec::MatrixRing { order, base } => {
                let rows = v
                    .as_array()
                    .ok_or_else(|| Error::Parse("matrix literal must be an array".into()))?;
                let rows = rows
                    .iter()
                    .map(|r| {
                        r.as_array()
                            .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                            .iter()
                            .map(|x| BaseElem::parse(base, &scalar_text(x)?))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mspec = MatSpec {
                    order: *order,
                    base: *base,
                };
                Ok(RingElem::Matrix(SquareMatrix::from_rows(&mspec, rows)?))
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            RingElem::Scalar(a) => Value::String(a.to_string()),
            RingElem::Matrix(m) => Value::Array(
                m.rows()
                    .iter()
                    .map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect()))
                    .collect(),
            ),
        }
    }

    pub fn parse(spec: &RingSpec, literal: &str) -> Result<Self> {
        match spec {
            RingSpec::MatrixRing { .. } => {
                let v: Value = serde_json::from_str(literal)
                    .map_err(|e| Error::Parse(format!("matrix literal: {e}")))?;
                Self::from_json(spec, &v)
            }
            _ => Self::from_json(spec, &Value::String(literal.to_string())),
        }
    }

    /// Embeds a center element (scalar matrices for matrix rings).
    pub fn from_center(spec: &RingSpec, x: BaseElem) -> Self {
        match spec {
            RingSpec::MatrixRing { order, base } => RingElem::Matrix(SquareMatrix::scalar(
                &MatSpec {
                    order: *order,
                    base: *base,
                },
                x,
            )),
            _ => RingElem::Scalar(x),
        }
    }

    /// The center component of a central element.
    pub fn center_value(&self) -> Option<BaseElem> {
        match self {
            RingElem::Scalar(a) => Some(a.clone()),
            RingElem::Matrix(m) if m.is_central() => Some(m.get(0, 0).clone()),
            RingElem::Matrix(_) => None,
        }
    }
}

impl Ring for RingElem {
    type Spec = RingSpec;

    fn zero(spec: &RingSpec) -> Self {
        Self::from_i64(spec, 0)
    }
    fn one(spec: &RingSpec) -> Self {
        Self::from_i64(spec, 1)
    }
    fn from_i64(spec: &RingSpec, n: i64) -> Self {
        Self::from_center(spec, BaseElem::from_i64(&spec.center(), n))
    }
    fn spec(&self) -> RingSpec {
        match self {
            RingElem::Scalar(a) => a.spec().into(),
            RingElem::Matrix(m) => {
                let s = m.spec();
                RingSpec::MatrixRing {
                    order: s.order,
                    base: s.base,
                }
            }
        }
    }
    fn is_zero(&self) -> bool {
        match self {
            RingElem::Scalar(a) => a.is_zero(),
            RingElem::Matrix(m) => m.is_zero(),
        }
    }
    fn invert_unit(&self) -> Result<Self> {
        match self {
            RingElem::Scalar(a) => a.invert_unit().map(RingElem::Scalar),
            RingElem::Matrix(m) => m.invert_unit().map(RingElem::Matrix),
        }
    }
    fn is_central(&self) -> bool {
        match self {
            RingElem::Scalar(_) => true,
            RingElem::Matrix(m) => m.is_central(),
        }
    }
    fn in_radical(&self) -> bool {
        match self {
            RingElem::Scalar(a) => a.in_radical(),
            RingElem::Matrix(m) => m.in_radical(),
        }
    }
    fn is_commutative(spec: &RingSpec) -> bool {
        match spec {
            RingSpec::MatrixRing { order, .. } => *order == 1,
            _ => true,
        }
    }
    fn is_field(spec: &RingSpec) -> bool {
        match spec {
            RingSpec::MatrixRing { order, base } => *order == 1 && BaseElem::is_field(base),
            other => BaseElem::is_field(&other.center()),
        }
    }
    fn characteristic(spec: &RingSpec) -> u64 {
        BaseElem::characteristic(&spec.center())
    }
    fn invert_matrix(spec: &RingSpec, m: &[Vec<Self>]) -> Result<Vec<Vec<Self>>> {
        match spec {
            RingSpec::MatrixRing { order, base } => {
                let mspec = MatSpec {
                    order: *order,
                    base: *base,
                };
                let inner: Vec<Vec<SquareMatrix<BaseElem>>> = m
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| match x {
                                RingElem::Matrix(a) => a.clone(),
                                _ => panic!("mixed scalar and matrix elements"),
                            })
                            .collect()
                    })
                    .collect();
                let inv = SquareMatrix::invert_matrix(&mspec, &inner)?;
                Ok(inv
                    .into_iter()
                    .map(|r| r.into_iter().map(RingElem::Matrix).collect())
                    .collect())
            }
            _ => {
                let base = spec.center();
                let inner: Vec<Vec<BaseElem>> = m
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| match x {
                                RingElem::Scalar(a) => a.clone(),
                                _ => panic!("mixed scalar and matrix elements"),
                            })
                            .collect()
                    })
                    .collect();
                let inv = BaseElem::invert_matrix(&base, &inner)?;
                Ok(inv
                    .into_iter()
                    .map(|r| r.into_iter().map(RingElem::Scalar).collect())
                    .collect())
            }
        }
    }
    fn sample<G: RandRng + ?Sized>(spec: &RingSpec, rng: &mut G) -> Self {
        match spec {
            RingSpec::MatrixRing { order, base } => RingElem::Matrix(SquareMatrix::sample(
                &MatSpec {
                    order: *order,
                    base: *base,
                },
                rng,
            )),
            other => RingElem::Scalar(BaseElem::sample(&other.center(), rng)),
        }
    }
    fn sample_central_unit<G: RandRng + ?Sized>(spec: &RingSpec, rng: &mut G) -> Self {
        Self::from_center(spec, BaseElem::sample_central_unit(&spec.center(), rng))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn spec_strings_round_trip() {
        for s in ["Q", "Zmod:12", "Mat:2:Q", "Mat:3:Zmod:8"] {
            let spec: RingSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        for bad in ["R", "Zmod:1", "Mat:0:Q", "Mat:2:Mat:2:Q", "Zmod:x"] {
            assert!(bad.parse::<RingSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn named_unit_examples() {
        let q: RingSpec = "Q".parse().unwrap();
        let x = RingElem::parse(&q, "3/2").unwrap();
        assert_eq!(x.invert_unit().unwrap().to_string(), "2/3");

        let z10: RingSpec = "Zmod:10".parse().unwrap();
        let x = RingElem::parse(&z10, "3").unwrap();
        assert_eq!(x.invert_unit().unwrap().to_string(), "7");

        let m2: RingSpec = "Mat:2:Q".parse().unwrap();
        let u = RingElem::parse(&m2, r#"[["1","1"],["0","1"]]"#).unwrap();
        let expected = RingElem::parse(&m2, r#"[["1","-1"],["0","1"]]"#).unwrap();
        assert_eq!(u.invert_unit().unwrap(), expected);
        assert!(!u.is_central());
        assert!(RingElem::parse(&m2, r#"[["2","0"],["0","2"]]"#)
            .unwrap()
            .is_central());
    }

    #[test]
    fn singular_matrix_is_not_a_unit() {
        let m2: RingSpec = "Mat:2:Zmod:4".parse().unwrap();
        let u = RingElem::parse(&m2, r#"[["2","1"],["0","2"]]"#).unwrap();
        assert!(matches!(u.invert_unit(), Err(Error::NotUnit(_))));
    }

    #[test]
    fn radical_examples() {
        let z12: RingSpec = "Zmod:12".parse().unwrap();
        assert!(RingElem::parse(&z12, "6").unwrap().in_radical());
        let m8: RingSpec = "Mat:2:Zmod:8".parse().unwrap();
        assert!(RingElem::parse(&m8, "[[4,0],[0,8]]").unwrap().in_radical());
    }

    #[test]
    fn double_inverse_is_identity_on_random_units() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for s in ["Q", "Zmod:12", "Zmod:7", "Mat:2:Q", "Mat:2:Zmod:6"] {
            let spec: RingSpec = s.parse().unwrap();
            let mut seen = 0;
            while seen < 1000 {
                let a = RingElem::sample(&spec, &mut rng);
                if let Ok(b) = a.invert_unit() {
                    assert_eq!(b.invert_unit().unwrap(), a, "{s}");
                    assert!((a.clone() * b.clone()).is_one());
                    assert!((b * a).is_one());
                    seen += 1;
                }
            }
        }
    }

    #[test]
    fn central_elements_commute() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let spec: RingSpec = "Mat:2:Zmod:5".parse().unwrap();
        for _ in 0..200 {
            let a = RingElem::sample_central_unit(&spec, &mut rng);
            let b = RingElem::from_center(&spec, BaseElem::sample(&spec.center(), &mut rng));
            let c = RingElem::sample(&spec, &mut rng);
            assert!(a.is_central() && b.is_central());
            let ab = a.clone() * b.clone();
            assert!(ab.is_central());
            assert_eq!(ab, b * a.clone());
            assert_eq!(a.clone() * c.clone(), c * a);
        }
    }
}
