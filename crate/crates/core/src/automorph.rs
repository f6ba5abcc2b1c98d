//! Multiplicative, ordinal and inner automorphisms, and the factorization
//! of a concrete automorphism into these pieces.

use std::sync::Arc;

use crate::cocycle::{Mode, MultCocycle};
use crate::error::{Error, Result};
use crate::incalg::IncFunction;
use crate::poset::{FundamentalCycle, Preorder, Skeleton};
use crate::ring::{determinant, Ring};
use crate::table::{BasisElem, BasisTable};

pub type AutTable<R> = BasisTable<R>;

/// `ψ_c(f)(x, y) = c_[x][y] f(x, y)` off the class diagonal.
pub fn apply_mult<R: Ring>(c: &MultCocycle<R>, f: &IncFunction<R>) -> Result<IncFunction<R>> {
    check_cocycle_domain(c.quotient(), c.ring(), f)?;
    let q = f.preorder().quotient();
    let (l, m) = f.split();
    let mut out = l;
    for (&(s, t), v) in m.entries() {
        let w = c
            .value(q.class_of(s), q.class_of(t))
            .expect("off-class pairs are edges")
            .clone();
        out.set(s, t, w * v.clone())?;
    }
    Ok(out)
}

pub(crate) fn check_cocycle_domain<R: Ring>(
    q: &crate::poset::QuotientPoset,
    spec: &R::Spec,
    f: &IncFunction<R>,
) -> Result<()> {
    if f.preorder().quotient() != q || f.ring() != spec {
        return Err(Error::Mismatch);
    }
    Ok(())
}

/// Table of `ψ_c` on a poset.
pub fn mult_table<R: Ring>(c: &MultCocycle<R>, p: &Arc<Preorder>) -> Result<AutTable<R>> {
    BasisTable::from_map(p, p, c.ring(), |f| apply_mult(c, f))
}

fn check_automorphism(p: &Preorder, tau: &[usize]) -> Result<()> {
    let n = p.len();
    if tau.len() != n {
        return Err(Error::NotAutomorphism);
    }
    let mut seen = vec![false; n];
    for &t in tau {
        if t >= n || seen[t] {
            return Err(Error::NotAutomorphism);
        }
        seen[t] = true;
    }
    for x in 0..n {
        for y in 0..n {
            if p.leq(x, y) != p.leq(tau[x], tau[y]) {
                return Err(Error::NotAutomorphism);
            }
        }
    }
    Ok(())
}

/// `ξ_τ(f)(x, y) = f(τx, τy)`, so `ξ_τ(e_ab) = e_{τ⁻¹a τ⁻¹b}`.
pub fn ordinal<R: Ring>(tau: &[usize], p: &Arc<Preorder>, spec: &R::Spec) -> Result<AutTable<R>> {
    check_automorphism(p, tau)?;
    BasisTable::from_map(p, p, spec, |f| Ok(f.pullback(tau)))
}

/// Conjugation `b ↦ u b u⁻¹`.
pub fn inner_table<R: Ring>(u: &IncFunction<R>) -> Result<AutTable<R>> {
    let u_inv = u.invert()?;
    let p = u.preorder();
    BasisTable::from_map(p, p, u.ring(), |b| u.convolve(b)?.convolve(&u_inv))
}

fn require_commutative<R: Ring>(spec: &R::Spec) -> Result<()> {
    if R::is_commutative(spec) {
        Ok(())
    } else {
        Err(Error::NotCommutative)
    }
}

/// Whether the table extends to an algebra isomorphism: unital,
/// multiplicative on basis pairs and linearly invertible.
pub fn verify_automorphism<R: Ring>(phi: &AutTable<R>) -> Result<bool> {
    let spec = phi.ring();
    require_commutative::<R>(spec)?;
    let (src, dst) = (phi.source(), phi.target());
    if src.pairs().len() != dst.pairs().len() {
        return Ok(false);
    }
    let mut unit = IncFunction::zero(dst, spec);
    for x in 0..src.len() {
        unit = unit.add(phi.image(BasisElem::Idem(x)).expect("idempotent in basis"))?;
    }
    if unit != IncFunction::delta(dst, spec) {
        return Ok(false);
    }
    let basis: Vec<IncFunction<R>> = phi
        .basis()
        .iter()
        .map(|b| b.function(src, spec))
        .collect::<Result<_>>()?;
    for (a, fa) in basis.iter().zip(phi.images()) {
        for (b, fb) in basis.iter().zip(phi.images()) {
            if fa.convolve(fb)? != phi.apply(&a.convolve(b)?)? {
                return Ok(false);
            }
        }
    }
    Ok(determinant(spec, &phi.matrix()?).is_unit())
}

/// `τ(y) = x` when the class-diagonal part of `Φ(e_y)` is `e_x`.
pub fn induced_map<R: Ring>(phi: &AutTable<R>) -> Result<Vec<usize>> {
    let n = phi.source().len();
    let mut tau = Vec::with_capacity(n);
    let mut hit = vec![false; phi.target().len()];
    for y in 0..n {
        let l = phi
            .image(BasisElem::Idem(y))
            .expect("idempotent in basis")
            .l_part();
        let mut entries = l.entries();
        let x = match (entries.next(), entries.next()) {
            (Some((&(s, t), v)), None) if s == t && v.is_one() => s,
            _ => return Err(Error::NotClassPreserving(y)),
        };
        if hit[x] {
            return Err(Error::NotClassPreserving(y));
        }
        hit[x] = true;
        tau.push(x);
    }
    Ok(tau)
}

/// Result of [`diagonalize`].
#[derive(Debug, Clone)]
pub struct Diagonalization<R: Ring> {
    /// `v_st = Φ(e_{τ⁻¹ t})(s, t)`.
    pub v: IncFunction<R>,
    /// `Γ(b) = v⁻¹ Φ(b) v`, with `Γ(e_z) = e_{τ z}`.
    pub gamma: AutTable<R>,
    pub tau: Vec<usize>,
}

pub fn diagonalize<R: Ring>(phi: &AutTable<R>) -> Result<Diagonalization<R>> {
    let tau = induced_map(phi)?;
    let mut tau_inv = vec![0; tau.len()];
    for (y, &x) in tau.iter().enumerate() {
        tau_inv[x] = y;
    }
    let dst = phi.target();
    let spec = phi.ring();
    let v = IncFunction::from_fn(dst, spec, |s, t| {
        phi.image(BasisElem::Idem(tau_inv[t]))
            .expect("idempotent in basis")
            .get(s, t)
    });
    let v_inv = v.invert()?;
    let gamma = BasisTable::new(
        phi.source(),
        dst,
        spec,
        phi.entries()
            .map(|(b, img)| Ok((*b, v_inv.convolve(img)?.convolve(&v)?)))
            .collect::<Result<_>>()?,
    )?;
    Ok(Diagonalization { v, gamma, tau })
}

/// `Φ = inner(v) ∘ ψ_c ∘ ξ_tau` with `c` split as vertex units times a
/// tree-trivial residue.
#[derive(Debug, Clone)]
pub struct AutDecomposition<R: Ring> {
    pub tau: Vec<usize>,
    pub inner_unit: IncFunction<R>,
    /// `v − δ`, an element of `M`.
    pub inner_delta: IncFunction<R>,
    pub cocycle: MultCocycle<R>,
    pub vertex_units: Vec<R>,
    pub residue: MultCocycle<R>,
    pub is_inner: bool,
    pub failing_cycle: Option<(FundamentalCycle, R)>,
}

pub fn full_decompose<R: Ring>(phi: &AutTable<R>) -> Result<AutDecomposition<R>> {
    let p = phi.source();
    let spec = phi.ring();
    if **p != **phi.target() {
        return Err(Error::ShapeMismatch(
            "decomposition needs an automorphism of a single poset".into(),
        ));
    }
    if !verify_automorphism(phi)? {
        return Err(Error::NotAutomorphism);
    }
    let d = diagonalize(phi)?;
    let mut sigma = vec![0; d.tau.len()];
    for (y, &x) in d.tau.iter().enumerate() {
        sigma[x] = y;
    }
    let skeleton = Arc::new(Skeleton::new(p.quotient()));
    let mut assignment = std::collections::BTreeMap::new();
    for &(x, y) in skeleton.graph.edges() {
        let b = BasisElem::Unit(x, y);
        let img = d
            .gamma
            .image(BasisElem::Unit(sigma[x], sigma[y]))
            .expect("edges are basis elements");
        let c = img.get(x, y);
        let single = img.entries().count() == 1;
        if !single || c.is_zero() {
            return Err(Error::NotMultiplicativeResidue(b.to_string()));
        }
        assignment.insert((x, y), c);
    }
    let cocycle = MultCocycle::new(&skeleton, spec, &assignment, Mode::Full)
        .map_err(|e| Error::NotMultiplicativeResidue(e.to_string()))?;
    let parts = cocycle.decompose()?;
    let inner_delta = d.v.sub(&IncFunction::delta(p, spec))?;
    Ok(AutDecomposition {
        tau: sigma,
        inner_unit: d.v,
        inner_delta,
        cocycle,
        vertex_units: parts.vertex,
        residue: parts.residue,
        is_inner: parts.is_inner,
        failing_cycle: parts.failing_cycle,
    })
}

/// Rebuilds `inner(v) ∘ ψ_c ∘ ξ_tau` from a decomposition, with `c` formed
/// from the vertex units and the residue.
pub fn recompose<R: Ring>(d: &AutDecomposition<R>) -> Result<AutTable<R>> {
    let p = d.inner_unit.preorder();
    let spec = d.inner_unit.ring();
    let fractional = MultCocycle::from_vertices(d.residue.skeleton(), spec, &d.vertex_units)?;
    let c = fractional.combine(&d.residue)?;
    let xi = ordinal(&d.tau, p, spec)?;
    let psi = mult_table(&c, p)?;
    let inner = inner_table(&d.inner_unit)?;
    inner.compose(&psi.compose(&xi)?)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use rand::rngs::StdRng;
    use rand::SeedableRng;

    use super::*;
    use crate::incalg::{basis_function, BasisKind};
    use crate::poset::{named, poset_automorphisms};
    use crate::ring::Rational;

    type Q = IncFunction<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_i64(&(), n)
    }

    fn unit(p: &Arc<Preorder>, x: usize, y: usize) -> Q {
        basis_function(BasisKind::EUnit(x, y), p, &()).unwrap()
    }

    fn square_cocycle(p: &Arc<Preorder>) -> MultCocycle<Rational> {
        let sk = Arc::new(Skeleton::new(p.quotient()));
        let a: BTreeMap<_, _> = [((0, 2), 1), ((0, 3), 1), ((1, 2), 1), ((1, 3), 2)]
            .iter()
            .map(|&(k, v)| (k, q(v)))
            .collect();
        MultCocycle::new(&sk, &(), &a, Mode::Full).unwrap()
    }

    #[test]
    fn ordinal_examples() {
        let p = Arc::new(named::square());
        let xi = ordinal::<Rational>(&[1, 0, 3, 2], &p, &()).unwrap();
        assert_eq!(xi.image(BasisElem::Unit(0, 2)).unwrap(), &unit(&p, 1, 3));
        let id = ordinal::<Rational>(&[0, 1, 2, 3], &p, &()).unwrap();
        assert_eq!(id, BasisTable::identity(&p, &()).unwrap());
        let chain = Arc::new(named::chain(3));
        assert_eq!(poset_automorphisms(chain.quotient()).unwrap().len(), 1);
        assert_eq!(
            ordinal::<Rational>(&[2, 1, 0], &chain, &()).unwrap_err(),
            Error::NotAutomorphism
        );
    }

    #[test]
    fn mult_is_an_automorphism() {
        let p = Arc::new(named::square());
        let c = square_cocycle(&p);
        let mut rng = StdRng::seed_from_u64(11);
        let delta = Q::delta(&p, &());
        assert_eq!(apply_mult(&c, &delta).unwrap(), delta);
        for _ in 0..20 {
            let f = Q::random(&p, &(), &mut rng);
            let g = Q::random(&p, &(), &mut rng);
            let lhs = apply_mult(&c, &f.convolve(&g).unwrap()).unwrap();
            let rhs = apply_mult(&c, &f)
                .unwrap()
                .convolve(&apply_mult(&c, &g).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
        let sk = c.skeleton().clone();
        let trivial = MultCocycle::trivial(&sk, &());
        let f = Q::random(&p, &(), &mut rng);
        assert_eq!(apply_mult(&trivial, &f).unwrap(), f);
    }

    #[test]
    fn verify_examples() {
        let p = Arc::new(named::chain(3));
        let u = Q::delta(&p, &()).add(&unit(&p, 0, 1)).unwrap();
        assert!(verify_automorphism(&inner_table(&u).unwrap()).unwrap());

        let e0 = BasisElem::Idem(0).function(&p, &()).unwrap();
        let e1 = BasisElem::Idem(1).function(&p, &()).unwrap();
        let id = BasisTable::<Rational>::identity(&p, &()).unwrap();
        let images = id
            .entries()
            .map(|(b, img)| {
                let img = if *b == BasisElem::Idem(0) {
                    e0.add(&e1).unwrap()
                } else {
                    img.clone()
                };
                (*b, img)
            })
            .collect();
        let bad = BasisTable::new(&p, &p, &(), images).unwrap();
        assert!(!verify_automorphism(&bad).unwrap());

        let sq = Arc::new(named::square());
        assert!(
            verify_automorphism(&ordinal::<Rational>(&[1, 0, 3, 2], &sq, &()).unwrap()).unwrap()
        );
    }

    #[test]
    fn induced_and_diagonal() {
        let p = Arc::new(named::chain(3));
        let u = Q::delta(&p, &()).add(&unit(&p, 0, 1)).unwrap();
        let phi = inner_table(&u).unwrap();
        assert_eq!(induced_map(&phi).unwrap(), vec![0, 1, 2]);
        let d = diagonalize(&phi).unwrap();
        assert_eq!(d.gamma, BasisTable::identity(&p, &()).unwrap());
        assert_eq!(d.v, u);

        let sq = Arc::new(named::square());
        let xi = ordinal::<Rational>(&[1, 0, 2, 3], &sq, &()).unwrap();
        let d = diagonalize(&xi).unwrap();
        assert_eq!(d.v, Q::delta(&sq, &()));
        assert_eq!(d.gamma, xi);

        let mut rng = StdRng::seed_from_u64(12);
        let w = Q::random_unit(&sq, &(), &mut rng);
        let composite = inner_table(&w).unwrap().compose(&xi).unwrap();
        assert_eq!(induced_map(&composite).unwrap(), vec![1, 0, 2, 3]);
        let d = diagonalize(&composite).unwrap();
        for z in 0..4 {
            let img = d.gamma.image(BasisElem::Idem(z)).unwrap();
            assert_eq!(*img, BasisElem::Idem(d.tau[z]).function(&sq, &()).unwrap());
        }
    }

    #[test]
    fn full_decomposition_examples() {
        let mut rng = StdRng::seed_from_u64(13);
        let sq = Arc::new(named::square());
        let w = Q::random_unit(&sq, &(), &mut rng);
        let phi = inner_table(&w).unwrap();
        let d = full_decompose(&phi).unwrap();
        assert_eq!(d.tau, vec![0, 1, 2, 3]);
        assert!(d.is_inner);
        assert_eq!(recompose(&d).unwrap(), phi);

        let c = square_cocycle(&sq);
        let phi = mult_table(&c, &sq).unwrap();
        let d = full_decompose(&phi).unwrap();
        assert!(!d.is_inner);
        assert!(!d.residue.is_trivial());
        assert_eq!(d.failing_cycle.as_ref().unwrap().1, q(2));
        assert_eq!(recompose(&d).unwrap(), phi);

        let xi = ordinal::<Rational>(&[1, 0, 3, 2], &sq, &()).unwrap();
        let d = full_decompose(&xi).unwrap();
        assert!(d.inner_delta.is_zero());
        assert!(d.cocycle.is_trivial());
        assert_eq!(d.tau, vec![1, 0, 3, 2]);
        assert_eq!(recompose(&d).unwrap(), xi);

        // a three-cycle tau on a poset, so tau and its inverse differ
        let fan = Arc::new(crate::poset::build_preorder(4, &[(0, 3), (1, 3), (2, 3)]).unwrap());
        let xi = ordinal::<Rational>(&[1, 2, 0, 3], &fan, &()).unwrap();
        let d = full_decompose(&xi).unwrap();
        assert_eq!(d.tau, vec![1, 2, 0, 3]);
        assert_eq!(recompose(&d).unwrap(), xi);
    }
}
