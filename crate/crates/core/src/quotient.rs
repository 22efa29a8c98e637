//! Quotient graphs by balanced relations.

use alloc::vec::Vec;

use crate::balanced::first_violation;
use crate::{DiGraph, Error, Partition, Result};

/// `G / ~` together with the class sizes it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientResult {
    /// Quotient graph on the classes, in class order.
    pub quotient: DiGraph,
    /// `k_i`, the number of source vertices in class `i`.
    pub class_sizes: Vec<usize>,
    /// The balanced relation that was quotiented out.
    pub partition: Partition,
    /// Vertex count of the source graph.
    pub source_n: usize,
}

/// The quotient of `g` by a balanced partition: `q_ij` is the number of
/// edges any member of class `i` receives from class `j`.
pub fn quotient(g: &DiGraph, p: &Partition) -> Result<QuotientResult> {
    if let Some(v) = first_violation(g, p)? {
        return Err(Error::Unbalanced { u: v.u, v: v.v, class: v.class });
    }
    let m = p.num_classes();
    let reps = p.representatives();
    let mut q = alloc::vec![0u32; m * m];
    for (i, &r) in reps.iter().enumerate() {
        for (u, &a) in g.row(r).iter().enumerate() {
            q[i * m + p.class_of(u)] += a;
        }
    }
    Ok(QuotientResult {
        quotient: DiGraph::from_matrix(m, q)?,
        class_sizes: p.class_sizes(),
        partition: p.clone(),
        source_n: g.n(),
    })
}

/// Outcome of [`quotient_is_symmetric`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSymmetry {
    /// Whether the quotient adjacency equals its transpose.
    pub symmetric: bool,
    /// On failure, connected classes `(i, j)` (`q_ij != 0`) with `k_i != k_j`.
    pub witness: Option<(usize, usize)>,
    /// The quotient that was examined.
    pub quotient: QuotientResult,
}

/// Decides whether the quotient of a symmetric graph is symmetric by
/// comparing the sizes of connected classes.
///
/// For symmetric `g`, `k_i q_ij = k_j q_ji`, so the quotient is symmetric
/// exactly when every connected pair of classes has equal cardinality.
pub fn quotient_is_symmetric(g: &DiGraph, p: &Partition) -> Result<QuotientSymmetry> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let qr = quotient(g, p)?;
    let m = qr.quotient.n();
    let k = &qr.class_sizes;
    let witness = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .find(|&(i, j)| qr.quotient.get(i, j) != 0 && k[i] != k[j]);
    let symmetric = witness.is_none();
    debug_assert_eq!(symmetric, qr.quotient.is_symmetric());
    Ok(QuotientSymmetry { symmetric, witness, quotient: qr })
}
