use super::IncFunction;
use crate::ring::Ring;

/// Dense matrix form of a function together with the relation pattern and a
/// permutation that makes the pattern block upper triangular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralMatrix<R: Ring> {
    pub matrix: Vec<Vec<R>>,
    pub pattern: Vec<Vec<bool>>,
    /// `perm[new_position] = old_index`.
    pub perm: Vec<usize>,
    /// Class sizes along the permuted diagonal.
    pub blocks: Vec<usize>,
}

pub fn to_structural<R: Ring>(f: &IncFunction<R>) -> StructuralMatrix<R> {
    let p = f.preorder();
    let n = p.len();
    let matrix = (0..n)
        .map(|i| (0..n).map(|j| f.get(i, j)).collect())
        .collect();
    let pattern = (0..n)
        .map(|i| (0..n).map(|j| p.leq(i, j)).collect())
        .collect();
    let q = p.quotient();
    let order = q.topological_order();
    let perm = order
        .iter()
        .flat_map(|&c| q.members(c).iter().copied())
        .collect();
    let blocks = order.iter().map(|&c| q.class_size(c)).collect();
    StructuralMatrix {
        matrix,
        pattern,
        perm,
        blocks,
    }
}

impl<R: Ring> StructuralMatrix<R> {
    /// `pattern[perm[i]][perm[j]]`.
    pub fn permuted_pattern(&self) -> Vec<Vec<bool>> {
        self.perm
            .iter()
            .map(|&a| self.perm.iter().map(|&b| self.pattern[a][b]).collect())
            .collect()
    }

    /// No entry of the permuted pattern lies below the diagonal blocks, and
    /// every diagonal block is full.
    pub fn is_block_upper_triangular(&self) -> bool {
        let pat = self.permuted_pattern();
        let mut block_of = Vec::with_capacity(self.perm.len());
        for (b, &size) in self.blocks.iter().enumerate() {
            block_of.extend(std::iter::repeat_n(b, size));
        }
        (0..pat.len()).all(|i| {
            (0..pat.len()).all(|j| match block_of[i].cmp(&block_of[j]) {
                std::cmp::Ordering::Greater => !pat[i][j],
                std::cmp::Ordering::Equal => pat[i][j],
                std::cmp::Ordering::Less => true,
            })
        })
    }
}
