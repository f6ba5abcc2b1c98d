//! Linear maps between incidence algebras of posets, given by the images
//! of the standard basis.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::incalg::{basis_function, BasisKind, IncFunction};
use crate::poset::Preorder;
use crate::ring::Ring;

/// A standard basis element of `I(X, R)` for a poset `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisElem {
    /// `e_x`
    Idem(usize),
    /// `e_xy` with `x < y`
    Unit(usize, usize),
}

impl BasisElem {
    pub fn function<R: Ring>(&self, p: &Arc<Preorder>, spec: &R::Spec) -> Result<IncFunction<R>> {
        match *self {
            BasisElem::Idem(x) => basis_function(BasisKind::EClass(x), p, spec),
            BasisElem::Unit(x, y) => basis_function(BasisKind::EUnit(x, y), p, spec),
        }
    }

    /// The pair whose coordinate this element carries.
    pub fn pair(&self) -> (usize, usize) {
        match *self {
            BasisElem::Idem(x) => (x, x),
            BasisElem::Unit(x, y) => (x, y),
        }
    }
}

impl fmt::Display for BasisElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElem::Idem(x) => write!(f, "e_{x}"),
            BasisElem::Unit(x, y) => write!(f, "e_{x}_{y}"),
        }
    }
}

impl FromStr for BasisElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("basis label {s:?}, expected e_x or e_x_y"));
        let rest = s.strip_prefix("e_").ok_or_else(bad)?;
        let parts: Vec<usize> = rest
            .split('_')
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match parts[..] {
            [x] => Ok(BasisElem::Idem(x)),
            [x, y] => Ok(BasisElem::Unit(x, y)),
            _ => Err(bad()),
        }
    }
}

/// Idempotents in element order, then matrix units in lexicographic order.
pub fn poset_basis(p: &Preorder) -> Result<Vec<BasisElem>> {
    if !p.is_poset() {
        return Err(Error::NotAPoset);
    }
    let n = p.len();
    let mut basis: Vec<BasisElem> = (0..n).map(BasisElem::Idem).collect();
    for x in 0..n {
        for y in 0..n {
            if x != y && p.leq(x, y) {
                basis.push(BasisElem::Unit(x, y));
            }
        }
    }
    Ok(basis)
}

/// Coordinates of `f` in the standard basis.
pub fn coordinates<R: Ring>(f: &IncFunction<R>) -> Result<Vec<R>> {
    Ok(poset_basis(f.preorder())?
        .iter()
        .map(|b| {
            let (x, y) = b.pair();
            f.get(x, y)
        })
        .collect())
}

/// `Φ: I(source, R) → I(target, R)` stored as basis images.
#[derive(Debug, Clone)]
pub struct BasisTable<R: Ring> {
    source: Arc<Preorder>,
    target: Arc<Preorder>,
    spec: R::Spec,
    basis: Vec<BasisElem>,
    images: Vec<IncFunction<R>>,
}

impl<R: Ring> PartialEq for BasisTable<R> {
    fn eq(&self, other: &Self) -> bool {
        *self.source == *other.source
            && *self.target == *other.target
            && self.spec == other.spec
            && self.images == other.images
    }
}

impl<R: Ring> BasisTable<R> {
    /// Builds a table from labelled images; every basis element of the
    /// source must appear exactly once.
    pub fn new(
        source: &Arc<Preorder>,
        target: &Arc<Preorder>,
        spec: &R::Spec,
        images: Vec<(BasisElem, IncFunction<R>)>,
    ) -> Result<Self> {
        let basis = poset_basis(source)?;
        poset_basis(target)?;
        let mut slots: Vec<Option<IncFunction<R>>> = vec![None; basis.len()];
        for (b, img) in images {
            let idx = basis
                .iter()
                .position(|&c| c == b)
                .ok_or_else(|| Error::ShapeMismatch(format!("{b} is not a basis element")))?;
            if slots[idx].is_some() {
                return Err(Error::ShapeMismatch(format!("{b} appears twice")));
            }
            if *img.preorder().as_ref() != **target || img.ring() != spec {
                return Err(Error::ShapeMismatch(format!(
                    "image of {b} lives in a different algebra"
                )));
            }
            slots[idx] = Some(img);
        }
        let images = slots
            .into_iter()
            .zip(&basis)
            .map(|(s, b)| s.ok_or_else(|| Error::ShapeMismatch(format!("no image for {b}"))))
            .collect::<Result<_>>()?;
        Ok(BasisTable {
            source: Arc::clone(source),
            target: Arc::clone(target),
            spec: spec.clone(),
            basis,
            images,
        })
    }

    /// Tabulates a map given on functions.
    pub fn from_map(
        source: &Arc<Preorder>,
        target: &Arc<Preorder>,
        spec: &R::Spec,
        mut map: impl FnMut(&IncFunction<R>) -> Result<IncFunction<R>>,
    ) -> Result<Self> {
        let basis = poset_basis(source)?;
        let images = basis
            .iter()
            .map(|b| Ok((*b, map(&b.function(source, spec)?)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, spec, images)
    }

    pub fn identity(p: &Arc<Preorder>, spec: &R::Spec) -> Result<Self> {
        Self::from_map(p, p, spec, |f| Ok(f.clone()))
    }

    pub fn source(&self) -> &Arc<Preorder> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Preorder> {
        &self.target
    }

    pub fn ring(&self) -> &R::Spec {
        &self.spec
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn images(&self) -> &[IncFunction<R>] {
        &self.images
    }

    /// Labelled images in basis order.
    pub fn entries(&self) -> impl Iterator<Item = (&BasisElem, &IncFunction<R>)> {
        self.basis.iter().zip(&self.images)
    }

    pub fn image(&self, b: BasisElem) -> Option<&IncFunction<R>> {
        self.basis
            .iter()
            .position(|&c| c == b)
            .map(|i| &self.images[i])
    }

    /// Linear extension `Φ(f) = Σ f(x, y) Φ(e_xy)`.
    pub fn apply(&self, f: &IncFunction<R>) -> Result<IncFunction<R>> {
        if **f.preorder() != *self.source || *f.ring() != self.spec {
            return Err(Error::Mismatch);
        }
        let mut out = IncFunction::zero(&self.target, &self.spec);
        for (b, img) in self.entries() {
            let (x, y) = b.pair();
            let coef = f.get(x, y);
            if !coef.is_zero() {
                out = out.add(&img.scale_left(&coef))?;
            }
        }
        Ok(out)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Self) -> Result<Self> {
        if *first.target != *self.source {
            return Err(Error::Mismatch);
        }
        Self::from_map(&first.source, &self.target, &self.spec, |f| {
            self.apply(&first.apply(f)?)
        })
    }

    fn zip_with(
        &self,
        other: &Self,
        op: impl Fn(&IncFunction<R>, &IncFunction<R>) -> Result<IncFunction<R>>,
    ) -> Result<Self> {
        if *self.source != *other.source || *self.target != *other.target || self.spec != other.spec
        {
            return Err(Error::Mismatch);
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| op(a, b))
            .collect::<Result<_>>()?;
        Ok(BasisTable {
            source: Arc::clone(&self.source),
            target: Arc::clone(&self.target),
            spec: self.spec.clone(),
            basis: self.basis.clone(),
            images,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.sub(b))
    }

    /// Square matrix of image coordinates, one column per source basis
    /// element.
    pub fn matrix(&self) -> Result<Vec<Vec<R>>> {
        let cols: Vec<Vec<R>> = self.images.iter().map(coordinates).collect::<Result<_>>()?;
        let rows = cols.first().map_or(0, Vec::len);
        Ok((0..rows)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::named;
    use crate::ring::Rational;

    #[test]
    fn basis_order_and_labels() {
        let b = poset_basis(&named::chain(3)).unwrap();
        let labels: Vec<String> = b.iter().map(|e| e.to_string()).collect();
        assert_eq!(labels, ["e_0", "e_1", "e_2", "e_0_1", "e_0_2", "e_1_2"]);
        for l in &labels {
            assert_eq!(l.parse::<BasisElem>().unwrap().to_string(), *l);
        }
        assert!("f_1".parse::<BasisElem>().is_err());
        assert!("e_1_2_3".parse::<BasisElem>().is_err());
    }

    #[test]
    fn identity_table_applies_as_identity() {
        let p = Arc::new(named::diamond());
        let id = BasisTable::<Rational>::identity(&p, &()).unwrap();
        let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(1);
        let f = IncFunction::random(&p, &(), &mut rng);
        assert_eq!(id.apply(&f).unwrap(), f);
        assert_eq!(id.compose(&id).unwrap(), id);
    }

    #[test]
    fn shape_errors() {
        let p = Arc::new(named::chain(2));
        let e0 = BasisElem::Idem(0).function::<Rational>(&p, &()).unwrap();
        let err = BasisTable::new(&p, &p, &(), vec![(BasisElem::Idem(0), e0)]).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch(_)));
    }
}
