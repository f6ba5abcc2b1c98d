use std::sync::Arc;

use rand::rngs::StdRng;
use rand::SeedableRng;

use super::*;
use crate::poset::{build_preorder, named, random_preorder};
use crate::ring::{Modulus, Rational, RingElem, RingSpec, Zmod};

type Q = IncFunction<Rational>;

fn q(n: i64) -> Rational {
    Rational::from_i64(&(), n)
}

fn arc(p: Preorder) -> Arc<Preorder> {
    Arc::new(p)
}

fn eunit(p: &Arc<Preorder>, x: usize, y: usize) -> Q {
    basis_function(BasisKind::EUnit(x, y), p, &()).unwrap()
}

/// Convolution computed straight from the definition, sum over all `z`.
fn naive_convolve(f: &Q, g: &Q) -> Q {
    let p = f.preorder().clone();
    let n = p.len();
    Q::from_fn(&p, &(), |x, y| {
        (0..n).fold(q(0), |acc, z| {
            if p.leq(x, z) && p.leq(z, y) {
                acc + f.get(x, z) * g.get(z, y)
            } else {
                acc
            }
        })
    })
}

#[test]
fn basis_examples() {
    let chain = arc(named::chain(3));
    let d = Q::delta(&chain, &());
    assert_eq!(d.entries().count(), 3);
    assert!((0..3).all(|i| d.get(i, i) == q(1)));

    let pre = arc(build_preorder(3, &[(0, 1), (1, 0), (0, 2)]).unwrap());
    let e = basis_function::<Rational>(BasisKind::EClass(0), &pre, &()).unwrap();
    let support: Vec<_> = e.entries().map(|(k, _)| *k).collect();
    assert_eq!(support, vec![(0, 0), (1, 1)]);

    let prod = eunit(&chain, 0, 1).convolve(&eunit(&chain, 1, 2)).unwrap();
    assert_eq!(prod, eunit(&chain, 0, 2));

    assert_eq!(
        basis_function::<Rational>(BasisKind::EUnit(0, 2), &pre, &()).unwrap_err(),
        Error::NotSingletonClass(0)
    );
}

#[test]
fn convolution_examples() {
    let chain = arc(named::chain(3));
    let zeta = Q::zeta(&chain, &());
    assert_eq!(zeta.convolve(&zeta).unwrap().get(0, 2), q(3));
    let e01 = eunit(&chain, 0, 1);
    assert!(e01.convolve(&e01).unwrap().is_zero());
    let mut rng = StdRng::seed_from_u64(1);
    let f = Q::random(&chain, &(), &mut rng);
    assert_eq!(Q::delta(&chain, &()).convolve(&f).unwrap(), f);
    let other = arc(named::chain(3));
    assert_eq!(
        f.convolve(&Q::zero(&other, &())).unwrap(),
        Q::zero(&chain, &())
    );
    let square = arc(named::square());
    assert_eq!(
        f.convolve(&Q::zero(&square, &())).unwrap_err(),
        Error::Mismatch
    );
}

#[test]
fn hadamard_and_split() {
    let chain = arc(named::chain(3));
    let mut rng = StdRng::seed_from_u64(2);
    let f = Q::random(&chain, &(), &mut rng);
    let g = Q::random(&chain, &(), &mut rng);
    let zeta = Q::zeta(&chain, &());
    let delta = Q::delta(&chain, &());
    assert_eq!(zeta.hadamard(&f).unwrap(), f);
    assert_eq!(delta.hadamard(&f).unwrap(), f.l_part());
    assert_eq!(f.hadamard(&g).unwrap().get(0, 2), f.get(0, 2) * g.get(0, 2));

    let (l, m) = zeta.split();
    assert_eq!(l, delta);
    assert_eq!(m, zeta.sub(&delta).unwrap());
    let (l, m) = delta.split();
    assert_eq!((l, m.is_zero()), (delta.clone(), true));

    let pre = arc(build_preorder(3, &[(0, 1), (1, 0), (0, 2)]).unwrap());
    let mut h = Q::zero(&pre, &());
    h.set(0, 1, q(5)).unwrap();
    assert_eq!(h.l_part().get(0, 1), q(5));
    assert!(h.m_part().is_zero());
}

#[test]
fn filtration_examples() {
    let chain = arc(named::chain(3));
    assert_eq!(eunit(&chain, 0, 1).filtration_level().unwrap(), Some(1));
    assert_eq!(eunit(&chain, 0, 2).filtration_level().unwrap(), Some(2));
    assert_eq!(Q::zero(&chain, &()).filtration_level().unwrap(), None);
    assert_eq!(
        Q::delta(&chain, &()).filtration_level().unwrap_err(),
        Error::NotInM(0, 0)
    );
}

#[test]
fn inverse_examples() {
    let chain = arc(named::chain(3));
    let mu = Q::zeta(&chain, &()).invert().unwrap();
    assert_eq!(mu.get(0, 1), q(-1));
    assert_eq!(mu.get(1, 2), q(-1));
    assert_eq!(mu.get(0, 2), q(0));
    assert!((0..3).all(|i| mu.get(i, i) == q(1)));
    let delta = Q::delta(&chain, &());
    assert_eq!(delta.invert().unwrap(), delta);
    let mut f = Q::zeta(&chain, &());
    f.set(0, 0, q(0)).unwrap();
    assert_eq!(f.invert().unwrap_err(), Error::NotInvertible { class: 0 });
}

#[test]
fn mobius_examples() {
    let diamond = arc(named::diamond());
    let mu = mobius::<Rational>(&diamond, &()).unwrap();
    assert_eq!(mu.get(0, 3), q(1));
    for (a, b) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
        assert_eq!(mu.get(a, b), q(-1));
    }
    assert!((0..4).all(|i| mu.get(i, i) == q(1)));
    let chain = arc(named::chain(3));
    assert_eq!(mobius::<Rational>(&chain, &()).unwrap().get(0, 2), q(0));
    let anti = arc(named::antichain(3));
    assert_eq!(
        mobius::<Rational>(&anti, &()).unwrap(),
        Q::delta(&anti, &())
    );
    let pre = arc(build_preorder(2, &[(0, 1), (1, 0)]).unwrap());
    assert!(mobius::<Rational>(&pre, &()).is_err());
}

#[test]
fn radical_examples() {
    let chain = arc(named::chain(3));
    let m = Q::zeta(&chain, &()).m_part();
    assert!(m.in_radical());
    assert!(!Q::delta(&chain, &()).in_radical());
    let n12 = Modulus(12);
    let six = IncFunction::<Zmod>::delta(&chain, &n12).scale_left(&Zmod::new(6, n12));
    assert!(six.in_radical());
}

#[test]
fn structural_examples() {
    let chain = arc(named::chain(3));
    let s = to_structural(&Q::zeta(&chain, &()));
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(s.matrix[i][j], q(i64::from(i <= j)));
        }
    }
    assert_eq!(s.perm, vec![0, 1, 2]);

    let pre = arc(build_preorder(3, &[(0, 1), (1, 0), (0, 2)]).unwrap());
    let s = to_structural(&Q::zeta(&pre, &()));
    assert_eq!(
        s.pattern,
        vec![
            vec![true, true, true],
            vec![true, true, true],
            vec![false, false, true]
        ]
    );
    assert_eq!(
        (s.perm.clone(), s.blocks.clone()),
        (vec![0, 1, 2], vec![2, 1])
    );
    assert!(s.is_block_upper_triangular());

    let rev = arc(build_preorder(3, &[(2, 1), (1, 0)]).unwrap());
    let s = to_structural(&Q::zeta(&rev, &()));
    assert_eq!(s.perm, vec![2, 1, 0]);
    assert!(s.is_block_upper_triangular());
}

#[test]
fn algebra_laws_on_random_preorders() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..30 {
        let p = arc(random_preorder(5, 0.25, &mut rng));
        let f = Q::random(&p, &(), &mut rng);
        let g = Q::random(&p, &(), &mut rng);
        let h = Q::random(&p, &(), &mut rng);
        let fg = f.convolve(&g).unwrap();
        assert_eq!(fg, naive_convolve(&f, &g));
        assert_eq!(
            fg.convolve(&h).unwrap(),
            f.convolve(&g.convolve(&h).unwrap()).unwrap()
        );
        assert_eq!(
            f.convolve(&g.add(&h).unwrap()).unwrap(),
            fg.add(&f.convolve(&h).unwrap()).unwrap()
        );
        let (fl, fm) = f.split();
        let (gl, gm) = g.split();
        assert!(fl.convolve(&gl).unwrap().m_part().is_zero());
        assert!(fl.convolve(&gm).unwrap().l_part().is_zero());
        assert!(fm.convolve(&gl).unwrap().l_part().is_zero());
    }
}

#[test]
fn inverse_is_two_sided_over_several_rings() {
    let mut rng = StdRng::seed_from_u64(4);
    let specs: Vec<RingSpec> = ["Q", "Zmod:7", "Zmod:12", "Mat:2:Q", "Mat:2:Zmod:4"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    for spec in &specs {
        for _ in 0..10 {
            let p = arc(random_preorder(5, 0.3, &mut rng));
            let f = IncFunction::<RingElem>::random_unit(&p, spec, &mut rng);
            let g = f.invert().unwrap();
            let delta = IncFunction::<RingElem>::delta(&p, spec);
            assert_eq!(f.convolve(&g).unwrap(), delta, "ring {spec}");
            assert_eq!(g.convolve(&f).unwrap(), delta, "ring {spec}");
        }
    }
}

#[test]
fn filtration_is_multiplicative() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..30 {
        let p = arc(random_preorder(6, 0.3, &mut rng));
        let qp = p.quotient().clone();
        let mask = |f: Q, k: usize| {
            Q::from_fn(&p, &(), |s, t| {
                let (a, b) = (qp.class_of(s), qp.class_of(t));
                if a != b && qp.interval_length(a, b).unwrap() >= k {
                    f.get(s, t)
                } else {
                    q(0)
                }
            })
        };
        for k in 1..3 {
            for l in 1..3 {
                let a = mask(Q::random(&p, &(), &mut rng), k);
                let b = mask(Q::random(&p, &(), &mut rng), l);
                let prod = a.convolve(&b).unwrap();
                if let Some(level) = prod.filtration_level().unwrap() {
                    assert!(level >= k + l);
                }
            }
        }
    }
}

#[test]
fn structural_form_is_a_homomorphism() {
    let mut rng = StdRng::seed_from_u64(6);
    for _ in 0..20 {
        let p = arc(random_preorder(6, 0.25, &mut rng));
        let f = Q::random(&p, &(), &mut rng);
        let g = Q::random(&p, &(), &mut rng);
        let prod = to_structural(&f.convolve(&g).unwrap()).matrix;
        let (a, b) = (to_structural(&f).matrix, to_structural(&g).matrix);
        let n = p.len();
        for i in 0..n {
            for j in 0..n {
                let s = (0..n).fold(q(0), |acc, k| acc + a[i][k].clone() * b[k][j].clone());
                assert_eq!(prod[i][j], s);
            }
        }
        assert!(to_structural(&f).is_block_upper_triangular());
    }
}

#[test]
fn pullback_along_identity() {
    let p = arc(named::square());
    let mut rng = StdRng::seed_from_u64(7);
    let f = Q::random(&p, &(), &mut rng);
    assert_eq!(f.pullback(&[0, 1, 2, 3]), f);
    let swapped = f.pullback(&[1, 0, 3, 2]);
    assert_eq!(swapped.get(0, 2), f.get(1, 3));
}
