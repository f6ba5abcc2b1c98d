use std::collections::VecDeque;

use super::QuotientPoset;
use crate::error::{Error, Result};

/// Comparability digraph of a quotient poset: one edge per strict pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    index: Vec<Vec<Option<usize>>>,
    adjacency: Vec<Vec<usize>>,
    components: Vec<Vec<usize>>,
    lambda: usize,
}

pub fn comparability(q: &QuotientPoset) -> CompGraph {
    let k = q.num_classes();
    let mut edges = Vec::new();
    let mut index = vec![vec![None; k]; k];
    let mut adjacency = vec![Vec::new(); k];
    for x in 0..k {
        for y in 0..k {
            if q.lt(x, y) {
                index[x][y] = Some(edges.len());
                edges.push((x, y));
                adjacency[x].push(y);
                adjacency[y].push(x);
            }
        }
    }
    for adj in &mut adjacency {
        adj.sort_unstable();
    }
    let mut seen = vec![false; k];
    let mut components = Vec::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            for &w in &adjacency[comp[i]] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        components.push(comp);
    }
    let lambda = edges.len() + components.len() - k;
    CompGraph {
        vertices: k,
        edges,
        index,
        adjacency,
        components,
        lambda,
    }
}

impl CompGraph {
    pub fn num_vertices(&self) -> usize {
        self.vertices
    }

    /// Edges `(x, y)` with `x < y` in the order, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_index(&self, x: usize, y: usize) -> Option<usize> {
        self.index.get(x)?.get(y).copied().flatten()
    }

    /// Undirected neighbours in ascending order.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    /// Cyclomatic number `m − |V| + #components`.
    pub fn lambda(&self) -> usize {
        self.lambda
    }
}

/// A chord together with the closed walk it closes in the forest.
///
/// For a chord `(a, b)` with `a < b` the walk starts at `b`, follows the tree
/// to `a` and returns along the chord, so its weight under a cocycle equals
/// the cocycle's residue on the chord.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalCycle {
    pub chord: (usize, usize),
    pub chord_index: usize,
    pub walk: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningForest {
    tree_edges: Vec<usize>,
    chords: Vec<usize>,
    in_tree: Vec<bool>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    root: Vec<usize>,
    cycles: Vec<FundamentalCycle>,
}

/// BFS forest rooted at the lowest vertex of each component, neighbours
/// visited in ascending order.
pub fn spanning_forest(g: &CompGraph) -> SpanningForest {
    let k = g.num_vertices();
    let mut parent = vec![None; k];
    let mut depth = vec![0; k];
    let mut root = vec![usize::MAX; k];
    let mut in_tree = vec![false; g.m()];
    for comp in g.components() {
        let r = comp[0];
        root[r] = r;
        let mut queue = VecDeque::from([r]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbours(u) {
                if root[w] == usize::MAX {
                    root[w] = r;
                    parent[w] = Some(u);
                    depth[w] = depth[u] + 1;
                    let e = g
                        .edge_index(u, w)
                        .or_else(|| g.edge_index(w, u))
                        .expect("neighbours share an edge");
                    in_tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let tree_edges = (0..g.m()).filter(|&e| in_tree[e]).collect();
    let chords: Vec<usize> = (0..g.m()).filter(|&e| !in_tree[e]).collect();
    let mut forest = SpanningForest {
        tree_edges,
        chords: chords.clone(),
        in_tree,
        parent,
        depth,
        root,
        cycles: Vec::new(),
    };
    forest.cycles = chords
        .iter()
        .map(|&e| {
            let (a, b) = g.edges()[e];
            let mut walk = forest
                .tree_path(b, a)
                .expect("chord endpoints share a tree");
            walk.push(b);
            FundamentalCycle {
                chord: (a, b),
                chord_index: e,
                walk,
            }
        })
        .collect();
    forest
}

impl SpanningForest {
    /// Indices into the graph's edge list.
    pub fn tree_edges(&self) -> &[usize] {
        &self.tree_edges
    }

    pub fn chords(&self) -> &[usize] {
        &self.chords
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.in_tree[e]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn root(&self, v: usize) -> usize {
        self.root[v]
    }

    pub fn fundamental_cycles(&self) -> &[FundamentalCycle] {
        &self.cycles
    }

    /// Vertices visited in BFS order from each root (parents before children).
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.parent.len()).collect();
        order.sort_by_key(|&v| (self.root[v], self.depth[v], v));
        order
    }

    /// The unique tree semipath from `u` to `v` as a vertex list.
    pub fn tree_path(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        if self.root[u] != self.root[v] {
            return Err(Error::Disconnected);
        }
        let (mut a, mut b) = (u, v);
        let mut up = vec![a];
        let mut down = vec![b];
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].expect("non-root has parent");
            up.push(a);
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].expect("non-root has parent");
            down.push(b);
        }
        while a != b {
            a = self.parent[a].expect("non-root has parent");
            b = self.parent[b].expect("non-root has parent");
            up.push(a);
            down.push(b);
        }
        down.pop();
        up.extend(down.into_iter().rev());
        Ok(up)
    }
}

/// A chain `x < z < y` with the indices of its three edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triangle {
    pub x: usize,
    pub z: usize,
    pub y: usize,
    pub i_xy: usize,
    pub i_xz: usize,
    pub i_zy: usize,
}

/// All chains `x < z < y`, sorted by `(x, z, y)`.
pub fn triangles(q: &QuotientPoset) -> Vec<Triangle> {
    let g = comparability(q);
    triangles_in(q, &g)
}

pub(crate) fn triangles_in(q: &QuotientPoset, g: &CompGraph) -> Vec<Triangle> {
    let k = q.num_classes();
    let mut out = Vec::new();
    for x in 0..k {
        for z in 0..k {
            if !q.lt(x, z) {
                continue;
            }
            for y in 0..k {
                if q.lt(z, y) {
                    out.push(Triangle {
                        x,
                        z,
                        y,
                        i_xy: g.edge_index(x, y).expect("transitive"),
                        i_xz: g.edge_index(x, z).expect("edge"),
                        i_zy: g.edge_index(z, y).expect("edge"),
                    });
                }
            }
        }
    }
    out
}

/// Quotient, comparability graph, forest and triangles computed together.
#[derive(Debug, Clone)]
pub struct Skeleton {
    pub quotient: QuotientPoset,
    pub graph: CompGraph,
    pub forest: SpanningForest,
    pub triangles: Vec<Triangle>,
}

impl Skeleton {
    pub fn new(q: &QuotientPoset) -> Self {
        let graph = comparability(q);
        let forest = spanning_forest(&graph);
        let triangles = triangles_in(q, &graph);
        Skeleton {
            quotient: q.clone(),
            graph,
            forest,
            triangles,
        }
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.graph.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::named;

    fn edge_pairs(g: &CompGraph, idx: &[usize]) -> Vec<(usize, usize)> {
        idx.iter().map(|&e| g.edges()[e]).collect()
    }

    #[test]
    fn comparability_examples() {
        let g = comparability(named::chain(3).quotient());
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!((g.m(), g.lambda()), (3, 1));

        let g = comparability(named::square().quotient());
        assert_eq!((g.m(), g.components().len(), g.lambda()), (4, 1, 1));

        let g = comparability(named::antichain(2).quotient());
        assert_eq!((g.m(), g.components().len(), g.lambda()), (0, 2, 0));
    }

    #[test]
    fn forest_examples() {
        let g = comparability(named::chain(3).quotient());
        let f = spanning_forest(&g);
        assert_eq!(edge_pairs(&g, f.tree_edges()), vec![(0, 1), (0, 2)]);
        assert_eq!(edge_pairs(&g, f.chords()), vec![(1, 2)]);
        assert_eq!(f.fundamental_cycles().len(), 1);

        let g = comparability(named::square().quotient());
        let f = spanning_forest(&g);
        assert_eq!(edge_pairs(&g, f.tree_edges()), vec![(0, 2), (0, 3), (1, 2)]);
        assert_eq!(edge_pairs(&g, f.chords()), vec![(1, 3)]);
        assert_eq!(f.fundamental_cycles()[0].walk, vec![3, 0, 2, 1, 3]);

        let g = comparability(named::antichain(2).quotient());
        let f = spanning_forest(&g);
        assert!(f.tree_edges().is_empty() && f.fundamental_cycles().is_empty());
    }

    #[test]
    fn triangle_examples() {
        let t = triangles(named::chain(3).quotient());
        assert_eq!(t.len(), 1);
        assert_eq!((t[0].x, t[0].z, t[0].y), (0, 1, 2));
        assert!(triangles(named::square().quotient()).is_empty());
        let t: Vec<_> = triangles(named::diamond().quotient())
            .iter()
            .map(|t| (t.x, t.z, t.y))
            .collect();
        assert_eq!(t, vec![(0, 1, 3), (0, 2, 3)]);
    }

    #[test]
    fn forest_invariants_on_corpus() {
        for n in 1..=5 {
            for p in crate::poset::posets_up_to_iso(n) {
                let q = p.quotient();
                let g = comparability(q);
                assert_eq!(g.lambda() + g.num_vertices(), g.m() + g.components().len());
                let f = spanning_forest(&g);
                assert_eq!(f.chords().len(), g.lambda());
                for comp in g.components() {
                    let inside = f
                        .tree_edges()
                        .iter()
                        .filter(|&&e| comp.contains(&g.edges()[e].0))
                        .count();
                    assert_eq!(inside, comp.len() - 1);
                }
                for c in f.fundamental_cycles() {
                    let w = &c.walk;
                    assert_eq!(w.first(), w.last());
                    let mut inner = w[..w.len() - 1].to_vec();
                    inner.sort_unstable();
                    inner.dedup();
                    assert_eq!(inner.len(), w.len() - 1, "simple cycle");
                    let chords_on_walk = w
                        .windows(2)
                        .filter(|s| {
                            let e = g
                                .edge_index(s[0], s[1])
                                .or(g.edge_index(s[1], s[0]))
                                .unwrap();
                            !f.is_tree_edge(e)
                        })
                        .count();
                    assert_eq!(chords_on_walk, 1);
                }
            }
        }
    }
}
