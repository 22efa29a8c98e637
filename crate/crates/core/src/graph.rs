//! Directed multigraphs stored as dense integer adjacency matrices.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Partition, Result};

/// A directed multigraph on vertices `0..n`.
///
/// `get(i, j)` is the number of edges from `j` into `i` (row = target,
/// column = source). Loops are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiGraph {
    n: usize,
    adj: Vec<u32>,
}

impl DiGraph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(DiGraph { n, adj: vec![0; n * n] })
    }

    /// Wraps a row-major `n * n` adjacency matrix.
    pub fn from_matrix(n: usize, adj: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if adj.len() != n * n {
            return Err(Error::MatrixShape { n, len: adj.len() });
        }
        Ok(DiGraph { n, adj })
    }

    /// Builds a graph from adjacency rows.
    pub fn from_rows<R: AsRef<[u32]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut adj = Vec::with_capacity(n * n);
        for row in rows {
            adj.extend_from_slice(row.as_ref());
        }
        Self::from_matrix(n, adj)
    }

    /// Builds a graph from `(src, dst, multiplicity)` triples. Repeated
    /// pairs accumulate.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(src, dst, mult) in edges {
            for v in [src, dst] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if mult == 0 {
                return Err(Error::NonPositiveMultiplicity { src, dst });
            }
            g.adj[dst * n + src] += mult;
        }
        Ok(g)
    }

    /// Builds a symmetric graph from undirected edges; each listed pair
    /// becomes one edge in each direction (a loop becomes a single loop).
    pub fn from_undirected(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut directed = Vec::with_capacity(2 * edges.len());
        for &(a, b) in edges {
            directed.push((a, b, 1));
            if a != b {
                directed.push((b, a, 1));
            }
        }
        Self::from_edges(n, &directed)
    }

    /// Non-zero entries as `(src, dst, multiplicity)`, ordered by source
    /// then target.
    pub fn to_edges(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for src in 0..self.n {
            for dst in 0..self.n {
                let m = self.get(dst, src);
                if m > 0 {
                    out.push((src, dst, m));
                }
            }
        }
        out
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges from `src` into `dst`.
    #[inline]
    pub fn get(&self, dst: usize, src: usize) -> u32 {
        self.adj[dst * self.n + src]
    }

    /// Row-major adjacency entries.
    pub fn matrix(&self) -> &[u32] {
        &self.adj
    }

    /// Row `i` of the adjacency matrix (in-edges of `i` by source).
    pub fn row(&self, i: usize) -> &[u32] {
        &self.adj[i * self.n..(i + 1) * self.n]
    }

    /// Adjacency rows as owned vectors.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Reverses every edge.
    pub fn transpose(&self) -> DiGraph {
        let n = self.n;
        let mut adj = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                adj[j * n + i] = self.adj[i * n + j];
            }
        }
        DiGraph { n, adj }
    }

    /// `A = A^t`: every edge has its reverse with the same multiplicity.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `a_ij = 0` iff `a_ji = 0`.
    pub fn is_combinatorially_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| (self.get(i, j) == 0) == (self.get(j, i) == 0)))
    }

    /// True when every entry is 0 or 1.
    pub fn is_simple(&self) -> bool {
        self.adj.iter().all(|&a| a <= 1)
    }

    /// Largest adjacency entry.
    pub fn max_entry(&self) -> u32 {
        self.adj.iter().copied().max().unwrap_or(0)
    }

    /// In-degree of `v` (row sum).
    pub fn valency(&self, v: usize) -> u32 {
        self.row(v).iter().sum()
    }

    /// In-degrees of all vertices.
    pub fn valencies(&self) -> Vec<u32> {
        (0..self.n).map(|v| self.valency(v)).collect()
    }

    /// The common valency, if all vertices share one.
    pub fn regular_valency(&self) -> Option<u32> {
        let first = self.valency(0);
        (1..self.n).all(|v| self.valency(v) == first).then_some(first)
    }

    /// Vertices grouped by valency, classes ordered by smallest member.
    pub fn valency_partition(&self) -> Partition {
        let vals = self.valencies();
        Partition::from_labels(&vals.iter().map(|&v| v as usize).collect::<Vec<_>>())
            .expect("graph has at least one vertex")
    }

    fn support_neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.get(v, u) > 0 || self.get(u, v) > 0)
    }

    /// Weakly connected component label per vertex, components numbered in
    /// order of their smallest vertex.
    pub fn components(&self) -> Partition {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for u in self.support_neighbours(v) {
                    if label[u] == usize::MAX {
                        label[u] = next;
                        queue.push_back(u);
                    }
                }
            }
            next += 1;
        }
        Partition::from_labels(&label).expect("graph has at least one vertex")
    }

    /// Whether the undirected support is connected.
    pub fn is_connected(&self) -> bool {
        self.components().num_classes() == 1
    }

    /// A 2-coloring of the undirected support in which every edge joins the
    /// two sides, if one exists. Multiplicities are ignored; a loop is an
    /// odd cycle and rules bipartiteness out. Isolated vertices go to side 0.
    pub fn bipartition(&self) -> Option<Partition> {
        if (0..self.n).any(|v| self.get(v, v) > 0) {
            return None;
        }
        let mut side = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for u in self.support_neighbours(v) {
                    if side[u] == u8::MAX {
                        side[u] = 1 - side[v];
                        queue.push_back(u);
                    } else if side[u] == side[v] {
                        return None;
                    }
                }
            }
        }
        let labels: Vec<usize> = side.iter().map(|&s| s as usize).collect();
        Partition::from_labels(&labels).ok()
    }
}
