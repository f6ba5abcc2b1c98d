use std::collections::HashMap;

use super::iso::{isomorphisms, LabeledOrder};
use super::{build_preorder, Preorder};

/// All posets on `n` points, one per isomorphism class.
///
/// Each poset on `n` points arises from one on `n − 1` points by adding a
/// maximal element above a down-closed set.
pub fn posets_up_to_iso(n: usize) -> Vec<Preorder> {
    let mut level: Vec<Vec<Vec<bool>>> = vec![Vec::new()];
    for k in 1..=n {
        let mut buckets: HashMap<Vec<[usize; 3]>, Vec<LabeledOrder>> = HashMap::new();
        let mut next = Vec::new();
        for lt in &level {
            for below in down_sets(lt) {
                let mut grown: Vec<Vec<bool>> = lt
                    .iter()
                    .map(|row| {
                        let mut r = row.clone();
                        r.push(false);
                        r
                    })
                    .collect();
                let last = vec![false; k];
                for &b in &below {
                    grown[b][k - 1] = true;
                }
                grown.push(last);
                let candidate = LabeledOrder::unlabeled(grown);
                let sig = signature(&candidate.lt);
                let bucket = buckets.entry(sig).or_default();
                if bucket
                    .iter()
                    .all(|seen| isomorphisms(seen, &candidate, Some(1)).is_empty())
                {
                    next.push(candidate.lt.clone());
                    bucket.push(candidate);
                }
            }
        }
        level = next;
    }
    level
        .into_iter()
        .map(|lt| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| lt[i][j])
                .collect();
            build_preorder(n, &pairs).expect("indices in range")
        })
        .collect()
}

/// Connected posets on `n` points up to isomorphism.
pub fn connected_posets(n: usize) -> Vec<Preorder> {
    posets_up_to_iso(n)
        .into_iter()
        .filter(|p| super::comparability(p.quotient()).is_connected())
        .collect()
}

fn down_sets(lt: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let k = lt.len();
    (0u32..1 << k)
        .filter(|&mask| {
            (0..k)
                .all(|a| mask & (1 << a) == 0 || (0..k).all(|b| !lt[b][a] || mask & (1 << b) != 0))
        })
        .map(|mask| (0..k).filter(|&a| mask & (1 << a) != 0).collect())
        .collect()
}

fn signature(lt: &[Vec<bool>]) -> Vec<[usize; 3]> {
    let k = lt.len();
    let mut sig: Vec<[usize; 3]> = (0..k)
        .map(|a| {
            let down = (0..k).filter(|&b| lt[b][a]).count();
            let up = (0..k).filter(|&b| lt[a][b]).count();
            let covers = (0..k)
                .filter(|&b| lt[b][a] && !(0..k).any(|c| lt[b][c] && lt[c][a]))
                .count();
            [down, up, covers]
        })
        .collect();
    sig.sort_unstable();
    sig
}
