//! Small posets used throughout the examples and tests.

use super::{build_preorder, Preorder};

/// `0 < 1 < … < n−1`.
pub fn chain(n: usize) -> Preorder {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build_preorder(n, &pairs).expect("indices in range")
}

pub fn antichain(n: usize) -> Preorder {
    build_preorder(n, &[]).expect("no pairs")
}

/// The crown `{0, 1} < {2, 3}`.
pub fn square() -> Preorder {
    build_preorder(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).expect("indices in range")
}

/// `0 < {1, 2} < 3`.
pub fn diamond() -> Preorder {
    build_preorder(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("indices in range")
}
