//! Vertex partitions (equivalence relations on the vertex set) and the
//! polydiagonal subspaces they cut out.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// An equivalence relation on `0..n`, stored as a class index per vertex.
///
/// Classes are always numbered in order of their smallest member, so the
/// label vector is a restricted growth string: vertex 0 is in class 0 and
/// every vertex opens at most one new class. Two partitions are equal iff
/// they describe the same relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    class_of: Vec<usize>,
    m: usize,
}

impl Partition {
    /// Builds a partition from arbitrary per-vertex labels; vertices with
    /// equal labels share a class.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut remap: Vec<(usize, usize)> = Vec::new();
        let mut class_of = Vec::with_capacity(labels.len());
        for &label in labels {
            let idx = match remap.iter().find(|(l, _)| *l == label) {
                Some(&(_, c)) => c,
                None => {
                    remap.push((label, remap.len()));
                    remap.len() - 1
                }
            };
            class_of.push(idx);
        }
        Ok(Partition { class_of, m: remap.len() })
    }

    /// Builds a partition of `0..n` from explicit classes. Every vertex must
    /// appear exactly once and no class may be empty. Class order in the
    /// input is irrelevant.
    pub fn from_classes<C: AsRef<[usize]>>(n: usize, classes: &[C]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut labels = vec![usize::MAX; n];
        for (c, class) in classes.iter().enumerate() {
            let class = class.as_ref();
            if class.is_empty() {
                return Err(Error::InvalidPartition(format!("class {} is empty", c + 1)));
            }
            for &v in class {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if labels[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {} appears in more than one class",
                        v + 1
                    )));
                }
                labels[v] = c;
            }
        }
        if let Some(v) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {} has no class", v + 1)));
        }
        Self::from_labels(&labels)
    }

    /// Each vertex in its own class.
    pub fn singletons(n: usize) -> Self {
        Partition { class_of: (0..n).collect(), m: n }
    }

    /// All vertices in one class.
    pub fn whole(n: usize) -> Self {
        Partition { class_of: vec![0; n], m: usize::from(n > 0) }
    }

    /// Consecutive index ranges of the given sizes: `0..k_0`, `k_0..k_0+k_1`, ...
    pub fn consecutive(sizes: &[usize]) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(Error::InvalidPartition("zero-sized block".into()));
        }
        let labels: Vec<usize> = sizes
            .iter()
            .enumerate()
            .flat_map(|(c, &k)| core::iter::repeat_n(c, k))
            .collect();
        Self::from_labels(&labels)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.class_of.len()
    }

    /// Number of classes.
    pub fn num_classes(&self) -> usize {
        self.m
    }

    /// Class index of `v`.
    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    /// Per-vertex class labels (a restricted growth string).
    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    /// Members of every class, each sorted ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.m];
        for (v, &c) in self.class_of.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Class cardinalities `k_0, ..., k_{m-1}`.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.m];
        for &c in &self.class_of {
            sizes[c] += 1;
        }
        sizes
    }

    /// Smallest member of each class.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.m];
        for (v, &c) in self.class_of.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = v;
            }
        }
        reps
    }

    /// True iff every class of `self` lies inside a class of `coarser`.
    pub fn is_refinement_of(&self, coarser: &Partition) -> Result<bool> {
        if self.n() != coarser.n() {
            return Err(Error::SizeMismatch { expected: self.n(), found: coarser.n() });
        }
        let mut image = vec![usize::MAX; self.m];
        for v in 0..self.n() {
            let c = self.class_of[v];
            let d = coarser.class_of[v];
            if image[c] == usize::MAX {
                image[c] = d;
            } else if image[c] != d {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The polydiagonal subspace of this relation.
    pub fn polydiagonal(&self) -> Polydiagonal<'_> {
        Polydiagonal { partition: self }
    }
}

/// `{ x : x_u = x_v whenever u ~ v }` for scalar cells.
///
/// Its dimension equals the number of classes; coordinates on it are one
/// value per class.
#[derive(Clone, Copy, Debug)]
pub struct Polydiagonal<'a> {
    partition: &'a Partition,
}

impl<'a> Polydiagonal<'a> {
    /// The underlying relation.
    pub fn partition(&self) -> &'a Partition {
        self.partition
    }

    /// Dimension, which is the class count.
    pub fn dimension(&self) -> usize {
        self.partition.num_classes()
    }

    /// First pair of same-class vertices with different values, if any.
    pub fn violation(&self, x: &[f64]) -> Option<(usize, usize)> {
        let reps = self.partition.representatives();
        (0..x.len()).find_map(|v| {
            let r = reps[self.partition.class_of(v)];
            (x[v] != x[r]).then_some((r, v))
        })
    }

    /// Exact membership test.
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.partition.n() && self.violation(x).is_none()
    }

    /// Copies class values onto their members.
    pub fn embed(&self, y: &[f64]) -> Vec<f64> {
        self.partition.class_of.iter().map(|&c| y[c]).collect()
    }

    /// Reads one value per class at the class representative.
    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        self.partition.representatives().iter().map(|&r| x[r]).collect()
    }
}
