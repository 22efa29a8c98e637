use alloc::vec;
use alloc::vec::Vec;

use super::field::{FieldHandle, FieldKind, StateLayout};
use crate::poly::Poly;
use crate::{DiGraph, Error, Result};

/// The cell function `g(x_v; x_{v_1}, ..., x_{v_l})` of a regular network,
/// written as `internal(x_v) + sum over in-edges of pairwise(x_v, x_u)`.
///
/// A sum over in-edges is invariant under any reordering of the inputs, so
/// fields built from it are admissible by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibleCoupling {
    cell_dim: usize,
    internal: Vec<Poly>,
    pairwise: Vec<Poly>,
}

impl AdmissibleCoupling {
    /// One internal polynomial in `cell_dim` variables and one pairwise
    /// polynomial in `2 * cell_dim` variables `(x_v, x_u)` per output
    /// coordinate.
    pub fn new(cell_dim: usize, internal: Vec<Poly>, pairwise: Vec<Poly>) -> Result<Self> {
        if cell_dim == 0 {
            return Err(Error::InvalidCoupling("cell dimension must be positive".into()));
        }
        if internal.len() != cell_dim || pairwise.len() != cell_dim {
            return Err(Error::InvalidCoupling(alloc::format!(
                "need {} internal and pairwise components",
                cell_dim
            )));
        }
        if internal.iter().any(|p| p.nvars() != cell_dim) || pairwise.iter().any(|p| p.nvars() != 2 * cell_dim) {
            return Err(Error::InvalidCoupling("component has the wrong number of variables".into()));
        }
        Ok(AdmissibleCoupling { cell_dim, internal, pairwise })
    }

    /// Scalar cells.
    pub fn scalar(internal: Poly, pairwise: Poly) -> Result<Self> {
        Self::new(1, vec![internal], vec![pairwise])
    }

    /// Per-cell state dimension.
    pub fn cell_dim(&self) -> usize {
        self.cell_dim
    }
}

/// `F_v = internal(x_v) + sum_u a_vu pairwise(x_v, x_u)` on a regular graph.
pub fn admissible_field(g: &DiGraph, coupling: &AdmissibleCoupling) -> Result<FieldHandle> {
    if g.regular_valency().is_none() {
        return Err(Error::NotRegular);
    }
    let n = g.n();
    let d = coupling.cell_dim;
    let inputs: Vec<Vec<(usize, f64)>> = (0..n)
        .map(|v| {
            g.row(v)
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(u, &a)| (u, f64::from(a)))
                .collect()
        })
        .collect();
    let coupling = coupling.clone();
    let layout = StateLayout::plain(n, d);
    Ok(FieldHandle::new(layout, FieldKind::Admissible, move |x, out| {
        let mut args = vec![0.0; 2 * d];
        for v in 0..n {
            let xv = &x[v * d..(v + 1) * d];
            args[..d].copy_from_slice(xv);
            for c in 0..d {
                out[v * d + c] = coupling.internal[c].eval(xv);
            }
            for &(u, mult) in &inputs[v] {
                args[d..].copy_from_slice(&x[u * d..(u + 1) * d]);
                for c in 0..d {
                    out[v * d + c] += mult * coupling.pairwise[c].eval(&args);
                }
            }
        }
    }))
}
