//! Reduced incidence algebras: functions constant on the classes of an
//! order-compatible equivalence of intervals.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::incalg::IncFunction;
use crate::poset::{isomorphisms, LabeledOrder, Preorder};
use crate::ring::Ring;

/// Largest interval handed to the isomorphism search.
pub const INTERVAL_BOUND: usize = 12;

pub type Interval = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TypeClass {
    /// Point intervals `[x, x]`.
    T0,
    /// Intervals `[x, y]` with `x < y`.
    T1,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalType {
    pub id: usize,
    pub class: TypeClass,
    pub representative: Interval,
    /// Member intervals in lexicographic order, representative first.
    pub members: Vec<Interval>,
}

/// An equivalence on the intervals of a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    preorder: Arc<Preorder>,
    types: Vec<IntervalType>,
    assignment: BTreeMap<Interval, usize>,
}

fn all_intervals(p: &Preorder) -> Vec<Interval> {
    p.pairs()
}

impl Reduction {
    /// Builds a reduction from explicit classes, which must partition the
    /// intervals of the poset. Types are numbered by their smallest interval.
    pub fn from_partition(p: &Arc<Preorder>, classes: Vec<Vec<Interval>>) -> Result<Self> {
        if !p.is_poset() {
            return Err(Error::NotAPoset);
        }
        let mut assignment = BTreeMap::new();
        let mut classes: Vec<Vec<Interval>> = classes
            .into_iter()
            .filter(|c| !c.is_empty())
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        classes.sort();
        for (id, class) in classes.iter().enumerate() {
            for &(x, y) in class {
                if x >= p.len() || y >= p.len() || !p.leq(x, y) {
                    return Err(Error::NotAPartition(format!(
                        "[{x}, {y}] is not an interval"
                    )));
                }
                if assignment.insert((x, y), id).is_some() {
                    return Err(Error::NotAPartition(format!("[{x}, {y}] appears twice")));
                }
            }
        }
        if let Some(&(x, y)) = all_intervals(p)
            .iter()
            .find(|i| !assignment.contains_key(i))
        {
            return Err(Error::NotAPartition(format!("[{x}, {y}] is not covered")));
        }
        let types = classes
            .into_iter()
            .enumerate()
            .map(|(id, members)| {
                let representative = members[0];
                IntervalType {
                    id,
                    class: if representative.0 == representative.1 {
                        TypeClass::T0
                    } else {
                        TypeClass::T1
                    },
                    representative,
                    members,
                }
            })
            .collect();
        Ok(Reduction {
            preorder: Arc::clone(p),
            types,
            assignment,
        })
    }

    pub fn preorder(&self) -> &Arc<Preorder> {
        &self.preorder
    }

    pub fn types(&self) -> &[IntervalType] {
        &self.types
    }

    pub fn num_types(&self) -> usize {
        self.types.len()
    }

    pub fn type_of(&self, x: usize, y: usize) -> Option<usize> {
        self.assignment.get(&(x, y)).copied()
    }

    /// All intervals with their type.
    pub fn assignment(&self) -> &BTreeMap<Interval, usize> {
        &self.assignment
    }

    fn points(&self, (x, y): Interval) -> Vec<usize> {
        self.preorder.quotient().interval(x, y)
    }
}

/// Types of the standard reduction: intervals are equivalent when they are
/// isomorphic as posets.
pub fn standard_types(p: &Arc<Preorder>) -> Result<Reduction> {
    if !p.is_poset() {
        return Err(Error::NotAPoset);
    }
    let q = p.quotient();
    // (size, relation count) buckets the candidates for the isomorphism test
    let mut reps: Vec<(usize, usize, LabeledOrder)> = Vec::new();
    let mut classes: Vec<Vec<Interval>> = Vec::new();
    for (x, y) in all_intervals(p) {
        let points = q.interval(x, y);
        if points.len() > INTERVAL_BOUND {
            return Err(Error::IntervalTooLarge(x, y));
        }
        let order = LabeledOrder::induced(q, &points);
        let relations = order.lt.iter().flatten().filter(|&&b| b).count();
        let found = reps.iter().position(|(size, rel, rep)| {
            *size == points.len()
                && *rel == relations
                && !isomorphisms(rep, &order, Some(1)).is_empty()
        });
        match found {
            Some(i) => classes[i].push((x, y)),
            None => {
                reps.push((points.len(), relations, order));
                classes.push(vec![(x, y)]);
            }
        }
    }
    Reduction::from_partition(p, classes)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compatibility {
    pub compatible: bool,
    /// An equivalent pair of intervals with no compatible bijection.
    pub witness: Option<(Interval, Interval)>,
}

/// Whether a bijection `ε: [x, y] → [s, t]` exists with
/// `[x, z] ~ [s, ε z]` and `[z, y] ~ [ε z, t]`, by bipartite matching.
fn compatible_bijection(red: &Reduction, a: Interval, b: Interval) -> bool {
    let (pa, pb) = (red.points(a), red.points(b));
    if pa.len() != pb.len() {
        return false;
    }
    let ty = |x, y| red.type_of(x, y).expect("interval");
    let adj: Vec<Vec<usize>> = pa
        .iter()
        .map(|&z| {
            (0..pb.len())
                .filter(|&j| {
                    let w = pb[j];
                    ty(a.0, z) == ty(b.0, w) && ty(z, a.1) == ty(w, b.1)
                })
                .collect()
        })
        .collect();
    let mut matched: Vec<Option<usize>> = vec![None; pb.len()];
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        matched: &mut [Option<usize>],
    ) -> bool {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                if matched[v].is_none_or(|w| augment(w, adj, seen, matched)) {
                    matched[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    (0..pa.len()).all(|u| augment(u, &adj, &mut vec![false; pb.len()], &mut matched))
}

/// Checks each type member against the representative; bijections compose,
/// so this covers every equivalent pair.
pub fn check_order_compatible(red: &Reduction) -> Compatibility {
    for t in &red.types {
        for &m in &t.members[1..] {
            if !compatible_bijection(red, t.representative, m) {
                return Compatibility {
                    compatible: false,
                    witness: Some((t.representative, m)),
                };
            }
        }
    }
    Compatibility {
        compatible: true,
        witness: None,
    }
}

/// Incidence coefficients `[t; r s]`, nonzero entries only.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoefTable {
    pub entries: BTreeMap<(usize, usize, usize), u64>,
}

impl CoefTable {
    pub fn get(&self, t: usize, r: usize, s: usize) -> u64 {
        self.entries.get(&(t, r, s)).copied().unwrap_or(0)
    }
}

fn counts(red: &Reduction, (x, y): Interval) -> BTreeMap<(usize, usize), u64> {
    let mut out = BTreeMap::new();
    for z in red.points((x, y)) {
        let key = (
            red.type_of(x, z).expect("interval"),
            red.type_of(z, y).expect("interval"),
        );
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

pub fn coefficients(red: &Reduction) -> Result<CoefTable> {
    let mut table = CoefTable::default();
    for t in &red.types {
        let rep = counts(red, t.representative);
        if t.members[1..].iter().any(|&m| counts(red, m) != rep) {
            return Err(Error::RepresentativeDisagreement(t.id));
        }
        for ((r, s), c) in rep {
            table.entries.insert((t.id, r, s), c);
        }
    }
    Ok(table)
}

/// An element of `I(X_E, R)`: one value per type.
#[derive(Debug, Clone)]
pub struct ReducedElem<R: Ring> {
    reduction: Arc<Reduction>,
    spec: R::Spec,
    values: Vec<R>,
}

impl<R: Ring> PartialEq for ReducedElem<R> {
    fn eq(&self, other: &Self) -> bool {
        self.reduction == other.reduction && self.spec == other.spec && self.values == other.values
    }
}

impl<R: Ring> ReducedElem<R> {
    pub fn new(reduction: &Arc<Reduction>, spec: &R::Spec, values: Vec<R>) -> Result<Self> {
        if values.len() != reduction.num_types() {
            return Err(Error::ShapeMismatch(format!(
                "{} values for {} types",
                values.len(),
                reduction.num_types()
            )));
        }
        Ok(ReducedElem {
            reduction: Arc::clone(reduction),
            spec: spec.clone(),
            values,
        })
    }

    pub fn from_fn(reduction: &Arc<Reduction>, spec: &R::Spec, f: impl FnMut(usize) -> R) -> Self {
        let values = (0..reduction.num_types()).map(f).collect();
        ReducedElem {
            reduction: Arc::clone(reduction),
            spec: spec.clone(),
            values,
        }
    }

    pub fn delta(reduction: &Arc<Reduction>, spec: &R::Spec) -> Self {
        Self::from_fn(reduction, spec, |t| match reduction.types[t].class {
            TypeClass::T0 => R::one(spec),
            TypeClass::T1 => R::zero(spec),
        })
    }

    pub fn zeta(reduction: &Arc<Reduction>, spec: &R::Spec) -> Self {
        Self::from_fn(reduction, spec, |_| R::one(spec))
    }

    pub fn random<G: rand::Rng + ?Sized>(
        reduction: &Arc<Reduction>,
        spec: &R::Spec,
        rng: &mut G,
    ) -> Self {
        Self::from_fn(reduction, spec, |_| R::sample(spec, rng))
    }

    pub fn reduction(&self) -> &Arc<Reduction> {
        &self.reduction
    }

    pub fn ring(&self) -> &R::Spec {
        &self.spec
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    pub fn get(&self, t: usize) -> &R {
        &self.values[t]
    }

    /// The function taking `a_t` on every interval of type `t`.
    pub fn lift(&self) -> IncFunction<R> {
        IncFunction::from_fn(&self.reduction.preorder, &self.spec, |x, y| {
            self.values[self.reduction.type_of(x, y).expect("interval")].clone()
        })
    }

    pub fn project(reduction: &Arc<Reduction>, f: &IncFunction<R>) -> Result<Self> {
        if **f.preorder() != *reduction.preorder {
            return Err(Error::Mismatch);
        }
        let mut values = Vec::with_capacity(reduction.num_types());
        for t in &reduction.types {
            let first = t.representative;
            let v = f.get(first.0, first.1);
            if let Some(&second) = t.members.iter().find(|&&(x, y)| f.get(x, y) != v) {
                return Err(Error::NotConstantOnTypes {
                    ty: t.id,
                    first,
                    second,
                });
            }
            values.push(v);
        }
        Self::new(reduction, f.ring(), values)
    }

    /// `h = f⁻¹`, solved type by type in order of interval size from
    /// `Σ [t; r s] f_r h_s = δ_t`.
    pub fn invert(&self, table: &CoefTable) -> Result<Self> {
        let red = &self.reduction;
        let mut order: Vec<usize> = (0..red.num_types()).collect();
        order.sort_by_key(|&t| (red.points(red.types[t].representative).len(), t));
        let mut h: Vec<Option<R>> = vec![None; red.num_types()];
        for t in order {
            let (x, _) = red.types[t].representative;
            let point = red.type_of(x, x).expect("interval");
            let lead = self.values[point]
                .invert_unit()
                .map_err(|_| Error::NotInvertible { class: x })?;
            let mut rest = R::zero(&self.spec);
            for (&(tt, r, s), &c) in table.entries.range((t, 0, 0)..=(t, usize::MAX, usize::MAX)) {
                debug_assert_eq!(tt, t);
                if (r, s) == (point, t) {
                    continue;
                }
                let hs = h[s].clone().expect("shorter intervals solved first");
                rest = rest + R::from_i64(&self.spec, c as i64) * self.values[r].clone() * hs;
            }
            let rhs = match red.types[t].class {
                TypeClass::T0 => R::one(&self.spec) - rest,
                TypeClass::T1 => -rest,
            };
            h[t] = Some(lead * rhs);
        }
        Self::new(
            red,
            &self.spec,
            h.into_iter().map(|v| v.expect("solved")).collect(),
        )
    }
}

/// `h_t = Σ_{r,s} [t; r s] f_r g_s`.
pub fn reduced_convolve<R: Ring>(
    a: &ReducedElem<R>,
    b: &ReducedElem<R>,
    table: &CoefTable,
) -> Result<ReducedElem<R>> {
    if a.reduction != b.reduction || a.spec != b.spec {
        return Err(Error::Mismatch);
    }
    let mut h = vec![R::zero(&a.spec); a.reduction.num_types()];
    for (&(t, r, s), &c) in &table.entries {
        if t >= h.len() || r >= h.len() || s >= h.len() {
            return Err(Error::Mismatch);
        }
        let term = R::from_i64(&a.spec, c as i64) * a.values[r].clone() * b.values[s].clone();
        h[t] = h[t].clone() + term;
    }
    ReducedElem::new(&a.reduction, &a.spec, h)
}

#[cfg(test)]
mod tests {
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    use super::*;
    use crate::incalg::{basis_function, mobius, BasisKind};
    use crate::poset::{named, poset_automorphisms, posets_up_to_iso, random_poset};
    use crate::ring::{Modulus, Rational, Zmod};

    fn q(n: i64) -> Rational {
        Rational::from_i64(&(), n)
    }

    fn std(p: crate::poset::Preorder) -> Arc<Reduction> {
        Arc::new(standard_types(&Arc::new(p)).unwrap())
    }

    #[test]
    fn standard_type_examples() {
        for n in 1..=6 {
            assert_eq!(std(named::chain(n)).num_types(), n);
        }
        let d = std(named::diamond());
        assert_eq!(d.num_types(), 3);
        let chain2 = d.type_of(0, 1).unwrap();
        for (x, y) in [(0, 2), (1, 3), (2, 3)] {
            assert_eq!(d.type_of(x, y), Some(chain2));
        }
        assert_eq!(d.types()[0].class, TypeClass::T0);
        assert_eq!(std(named::antichain(4)).num_types(), 1);
        let pre = Arc::new(crate::poset::build_preorder(2, &[(0, 1), (1, 0)]).unwrap());
        assert_eq!(standard_types(&pre).unwrap_err(), Error::NotAPoset);
        assert_eq!(
            standard_types(&Arc::new(named::chain(14))).unwrap_err(),
            Error::IntervalTooLarge(0, 12)
        );
    }

    #[test]
    fn order_compatibility_examples() {
        let d = std(named::diamond());
        assert!(check_order_compatible(&d).compatible);

        let p = Arc::new(named::chain(3));
        let merged = Reduction::from_partition(
            &p,
            vec![
                vec![(0, 0), (1, 1), (2, 2), (0, 1)],
                vec![(1, 2)],
                vec![(0, 2)],
            ],
        )
        .unwrap();
        let c = check_order_compatible(&merged);
        assert!(!c.compatible);
        assert_eq!(c.witness, Some(((0, 0), (0, 1))));

        let dp = Arc::new(named::diamond());
        let split = Reduction::from_partition(
            &dp,
            vec![
                vec![(0, 0), (1, 1), (2, 2), (3, 3)],
                vec![(0, 1), (2, 3)],
                vec![(0, 2), (1, 3)],
                vec![(0, 3)],
            ],
        )
        .unwrap();
        assert!(check_order_compatible(&split).compatible);
        assert!(coefficients(&split).is_ok());

        assert!(matches!(
            Reduction::from_partition(&p, vec![vec![(0, 0), (1, 1)], vec![(0, 1)]]).unwrap_err(),
            Error::NotAPartition(_)
        ));
        assert!(matches!(
            Reduction::from_partition(&p, vec![vec![(1, 0)]]).unwrap_err(),
            Error::NotAPartition(_)
        ));
    }

    #[test]
    fn incompatible_partition_is_caught_by_coefficients() {
        let p = Arc::new(named::chain(4));
        let red = Reduction::from_partition(
            &p,
            vec![
                vec![(0, 0), (1, 1), (2, 2), (3, 3)],
                vec![(0, 1), (1, 2)],
                vec![(2, 3)],
                vec![(0, 2), (1, 3)],
                vec![(0, 3)],
            ],
        )
        .unwrap();
        assert!(!check_order_compatible(&red).compatible);
        let t = red.type_of(0, 2).unwrap();
        assert_eq!(
            coefficients(&red).unwrap_err(),
            Error::RepresentativeDisagreement(t)
        );
    }

    #[test]
    fn coefficient_examples() {
        for n in 1..=7 {
            let red = std(named::chain(n));
            let table = coefficients(&red).unwrap();
            // type id equals the length on a chain
            for k in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        assert_eq!(table.get(k, r, s), u64::from(r + s == k));
                    }
                }
            }
        }
        let d = std(named::diamond());
        let table = coefficients(&d).unwrap();
        let (point, chain, top) = (0, d.type_of(0, 1).unwrap(), d.type_of(0, 3).unwrap());
        assert_eq!(table.get(top, chain, chain), 2);
        for t in 0..d.num_types() {
            assert_eq!(table.get(t, point, t), 1);
            assert_eq!(table.get(t, t, point), 1);
        }
    }

    #[test]
    fn convolution_examples() {
        let red = std(named::chain(4));
        let table = coefficients(&red).unwrap();
        let a = ReducedElem::from_fn(&red, &(), |t| q(t as i64 + 1));
        let b = ReducedElem::from_fn(&red, &(), |t| q(2 * t as i64 - 1));
        let h = reduced_convolve(&a, &b, &table).unwrap();
        let expect = a.get(0).clone() * b.get(2).clone()
            + a.get(1).clone() * b.get(1).clone()
            + a.get(2).clone() * b.get(0).clone();
        assert_eq!(*h.get(2), expect);

        let d = std(named::diamond());
        let table = coefficients(&d).unwrap();
        let mut rng = StdRng::seed_from_u64(41);
        let a = ReducedElem::<Rational>::random(&d, &(), &mut rng);
        let b = ReducedElem::<Rational>::random(&d, &(), &mut rng);
        let h = reduced_convolve(&a, &b, &table).unwrap();
        let (chain, top) = (1, 2);
        let expect = a.get(0).clone() * b.get(top).clone()
            + a.get(top).clone() * b.get(0).clone()
            + q(2) * a.get(chain).clone() * b.get(chain).clone();
        assert_eq!(*h.get(top), expect);

        let delta = ReducedElem::delta(&d, &());
        assert_eq!(reduced_convolve(&delta, &b, &table).unwrap(), b);

        let other = ReducedElem::<Rational>::delta(&std(named::chain(3)), &());
        assert_eq!(
            reduced_convolve(&delta, &other, &table).unwrap_err(),
            Error::Mismatch
        );
    }

    #[test]
    fn lift_project_examples() {
        let dp = Arc::new(named::diamond());
        let d = Arc::new(standard_types(&dp).unwrap());
        assert_eq!(
            ReducedElem::<Rational>::zeta(&d, &()).lift(),
            IncFunction::zeta(&dp, &())
        );
        let mu = mobius::<Rational>(&dp, &()).unwrap();
        let pm = ReducedElem::project(&d, &mu).unwrap();
        assert_eq!(pm.values(), &[q(1), q(-1), q(1)]);
        assert_eq!(pm.lift(), mu);
        let e01 = basis_function::<Rational>(BasisKind::EUnit(0, 1), &dp, &()).unwrap();
        assert_eq!(
            ReducedElem::project(&d, &e01).unwrap_err(),
            Error::NotConstantOnTypes {
                ty: 1,
                first: (0, 1),
                second: (0, 2)
            }
        );
    }

    #[test]
    fn subalgebra_closure_on_random_posets() {
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..20 {
            let n = rand::Rng::gen_range(&mut rng, 1..=7);
            let red = std(random_poset(n, 0.4, &mut rng));
            let table = coefficients(&red).unwrap();
            assert!(check_order_compatible(&red).compatible);
            for _ in 0..100 {
                let a = ReducedElem::<Zmod>::random(&red, &Modulus(7), &mut rng);
                let b = ReducedElem::<Zmod>::random(&red, &Modulus(7), &mut rng);
                let h = reduced_convolve(&a, &b, &table).unwrap();
                assert_eq!(h.lift(), a.lift().convolve(&b.lift()).unwrap());
            }
        }
    }

    #[test]
    fn units_match_lifted_units() {
        let mut rng = StdRng::seed_from_u64(43);
        for p in posets_up_to_iso(4) {
            let red = std(p);
            let table = coefficients(&red).unwrap();
            for _ in 0..20 {
                let a = ReducedElem::<Zmod>::random(&red, &Modulus(5), &mut rng);
                let lifted = a.lift().invert();
                match a.invert(&table) {
                    Ok(inv) => {
                        let lifted = lifted.unwrap();
                        assert_eq!(inv.lift(), lifted);
                        assert_eq!(ReducedElem::project(&red, &lifted).unwrap(), inv);
                        let id = ReducedElem::delta(&red, &Modulus(5));
                        assert_eq!(reduced_convolve(&a, &inv, &table).unwrap(), id);
                        assert_eq!(reduced_convolve(&inv, &a, &table).unwrap(), id);
                    }
                    Err(e) => {
                        assert!(matches!(e, Error::NotInvertible { .. }));
                        assert!(lifted.is_err());
                    }
                }
            }
        }
    }

    #[test]
    fn coefficients_invariant_under_automorphisms() {
        for p in [named::square(), named::diamond(), named::chain(4)] {
            let red = std(p);
            let table = coefficients(&red).unwrap();
            let q = red.preorder().quotient();
            for tau in poset_automorphisms(q).unwrap() {
                for (&(x, y), &t) in red.assignment() {
                    assert_eq!(red.type_of(tau[x], tau[y]), Some(t));
                    let moved: BTreeMap<(usize, usize), u64> = counts(&red, (tau[x], tau[y]));
                    let here = counts(&red, (x, y));
                    assert_eq!(moved, here);
                    for (&(r, s), &c) in &here {
                        assert_eq!(table.get(t, r, s), c);
                    }
                }
            }
        }
    }
}
