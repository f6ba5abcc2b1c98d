use super::QuotientPoset;
use crate::error::{Error, Result};

pub const DEFAULT_AUTOMORPHISM_BOUND: usize = 10;

/// A strict order on `{0, …, k−1}` with a label per point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledOrder {
    pub lt: Vec<Vec<bool>>,
    pub labels: Vec<usize>,
}

impl LabeledOrder {
    pub fn unlabeled(lt: Vec<Vec<bool>>) -> Self {
        let k = lt.len();
        LabeledOrder {
            lt,
            labels: vec![0; k],
        }
    }

    /// Classes labelled by their sizes.
    pub fn from_quotient(q: &QuotientPoset) -> Self {
        LabeledOrder {
            lt: q.strict_order().to_vec(),
            labels: (0..q.num_classes()).map(|c| q.class_size(c)).collect(),
        }
    }

    /// Subposet induced on `points`, relabelled `0..points.len()`.
    pub fn induced(q: &QuotientPoset, points: &[usize]) -> Self {
        let lt = points
            .iter()
            .map(|&a| points.iter().map(|&b| q.lt(a, b)).collect())
            .collect();
        LabeledOrder::unlabeled(lt)
    }

    pub fn len(&self) -> usize {
        self.lt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lt.is_empty()
    }

    /// Per point: label, height, co-height, down-degree, up-degree.
    fn invariants(&self) -> Vec<[usize; 5]> {
        let k = self.len();
        let mut height = vec![0usize; k];
        let mut depth = vec![0usize; k];
        // k relaxation rounds suffice for longest chains in a DAG on k points
        for _ in 0..k {
            for a in 0..k {
                for b in 0..k {
                    if self.lt[a][b] {
                        height[b] = height[b].max(height[a] + 1);
                        depth[a] = depth[a].max(depth[b] + 1);
                    }
                }
            }
        }
        (0..k)
            .map(|a| {
                let down = (0..k).filter(|&b| self.lt[b][a]).count();
                let up = (0..k).filter(|&b| self.lt[a][b]).count();
                [self.labels[a], height[a], depth[a], down, up]
            })
            .collect()
    }
}

/// Enumerate label-preserving order isomorphisms `a → b` as image vectors,
/// stopping after `limit` results when given.
pub fn isomorphisms(a: &LabeledOrder, b: &LabeledOrder, limit: Option<usize>) -> Vec<Vec<usize>> {
    let k = a.len();
    if b.len() != k {
        return Vec::new();
    }
    let ia = a.invariants();
    let ib = b.invariants();
    let mut sa = ia.clone();
    let mut sb = ib.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Vec::new();
    }
    let candidates: Vec<Vec<usize>> = (0..k)
        .map(|p| (0..k).filter(|&t| ia[p] == ib[t]).collect())
        .collect();
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; k];
    let mut used = vec![false; k];
    extend(a, b, &candidates, 0, &mut image, &mut used, &mut out, limit);
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &LabeledOrder,
    b: &LabeledOrder,
    candidates: &[Vec<usize>],
    p: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
    limit: Option<usize>,
) -> bool {
    if limit.is_some_and(|l| out.len() >= l) {
        return false;
    }
    if p == a.len() {
        out.push(image.clone());
        return limit.is_none_or(|l| out.len() < l);
    }
    for &t in &candidates[p] {
        if used[t] {
            continue;
        }
        let consistent =
            (0..p).all(|r| a.lt[r][p] == b.lt[image[r]][t] && a.lt[p][r] == b.lt[t][image[r]]);
        if !consistent {
            continue;
        }
        image[p] = t;
        used[t] = true;
        let more = extend(a, b, candidates, p + 1, image, used, out, limit);
        used[t] = false;
        image[p] = usize::MAX;
        if !more {
            return false;
        }
    }
    true
}

/// Size-preserving order automorphisms of `X̄`, identity first.
pub fn poset_automorphisms(q: &QuotientPoset) -> Result<Vec<Vec<usize>>> {
    poset_automorphisms_bounded(q, DEFAULT_AUTOMORPHISM_BOUND)
}

pub fn poset_automorphisms_bounded(q: &QuotientPoset, bound: usize) -> Result<Vec<Vec<usize>>> {
    let k = q.num_classes();
    if k > bound {
        return Err(Error::TooLarge {
            what: "classes",
            size: k,
            bound,
        });
    }
    let o = LabeledOrder::from_quotient(q);
    let mut all = isomorphisms(&o, &o, None);
    all.sort();
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{build_preorder, named};

    #[test]
    fn automorphism_examples() {
        assert_eq!(
            poset_automorphisms(named::chain(3).quotient()).unwrap(),
            vec![vec![0, 1, 2]]
        );
        let sq = poset_automorphisms(named::square().quotient()).unwrap();
        assert_eq!(sq.len(), 4);
        assert!(sq.contains(&vec![1, 0, 2, 3]) && sq.contains(&vec![0, 1, 3, 2]));
        assert_eq!(
            poset_automorphisms(named::diamond().quotient()).unwrap(),
            vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]]
        );
    }

    #[test]
    fn class_sizes_are_respected() {
        // {0,1} and {2} both below 3: swapping the classes would change sizes
        let p = build_preorder(4, &[(0, 1), (1, 0), (0, 3), (2, 3)]).unwrap();
        assert_eq!(poset_automorphisms(p.quotient()).unwrap().len(), 1);
    }

    #[test]
    fn bound_is_enforced() {
        let err = poset_automorphisms(named::antichain(11).quotient()).unwrap_err();
        assert!(matches!(err, Error::TooLarge { .. }));
    }

    #[test]
    fn automorphisms_form_a_group() {
        for n in 1..=6 {
            for p in crate::poset::posets_up_to_iso(n) {
                let g = poset_automorphisms(p.quotient()).unwrap();
                let id: Vec<usize> = (0..n).collect();
                assert!(g.contains(&id));
                for s in &g {
                    let mut inv = vec![0; n];
                    for (i, &si) in s.iter().enumerate() {
                        inv[si] = i;
                    }
                    assert!(g.contains(&inv));
                    for t in &g {
                        let comp: Vec<usize> = (0..n).map(|i| s[t[i]]).collect();
                        assert!(g.contains(&comp));
                    }
                }
            }
        }
    }
}
