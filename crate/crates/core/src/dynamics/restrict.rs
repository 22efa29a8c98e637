use alloc::vec;
use alloc::vec::Vec;

use super::field::{FieldHandle, FieldKind, StateLayout};
use super::verify::sample_points;
use crate::{Error, Partition, Result};

/// Relative tolerance for representative agreement in [`restrict_field`].
pub const REPRESENTATIVE_TOL: f64 = 1e-12;

/// Samples used by [`restrict_field`] to check representative agreement.
const RESTRICT_SAMPLES: usize = 8;
const RESTRICT_SEED: u64 = 0x05ee_d0fc_1a55;

fn check_partition(layout: &StateLayout, p: &Partition) -> Result<()> {
    if p.n() != layout.cells {
        return Err(Error::SizeMismatch { expected: layout.cells, found: p.n() });
    }
    Ok(())
}

/// Copies class states onto their members: a point on the quotient layout
/// becomes a point of the synchrony subspace of `p`.
pub fn embed(layout: &StateLayout, p: &Partition, y: &[f64]) -> Result<Vec<f64>> {
    check_partition(layout, p)?;
    let small = layout.with_cells(p.num_classes());
    if y.len() != small.len() {
        return Err(Error::StateLength { expected: small.len(), found: y.len() });
    }
    let mut x = vec![0.0; layout.len()];
    for b in 0..layout.blocks {
        for v in 0..layout.cells {
            for c in 0..layout.coords {
                x[layout.index(b, v, c)] = y[small.index(b, p.class_of(v), c)];
            }
        }
    }
    Ok(x)
}

/// Largest difference between two same-class cells over all coordinates.
pub fn sync_spread(layout: &StateLayout, p: &Partition, x: &[f64]) -> Result<f64> {
    check_partition(layout, p)?;
    if x.len() != layout.len() {
        return Err(Error::StateLength { expected: layout.len(), found: x.len() });
    }
    let reps = p.representatives();
    let mut spread = 0.0f64;
    for v in 0..layout.cells {
        let r = reps[p.class_of(v)];
        for (i, j) in layout.cell_indices(v).zip(layout.cell_indices(r)) {
            spread = spread.max((x[i] - x[j]).abs());
        }
    }
    Ok(spread)
}

/// First cell differing from its class representative, as `(rep, cell)`.
pub fn sync_violation(layout: &StateLayout, p: &Partition, x: &[f64]) -> Result<Option<(usize, usize)>> {
    check_partition(layout, p)?;
    if x.len() != layout.len() {
        return Err(Error::StateLength { expected: layout.len(), found: x.len() });
    }
    let reps = p.representatives();
    Ok((0..layout.cells).find_map(|v| {
        let r = reps[p.class_of(v)];
        layout
            .cell_indices(v)
            .zip(layout.cell_indices(r))
            .any(|(i, j)| x[i] != x[j])
            .then_some((r, v))
    }))
}

fn agree(a: f64, b: f64) -> Option<f64> {
    let d = (a - b).abs();
    let scale = 1.0f64.max(a.abs()).max(b.abs());
    (d > REPRESENTATIVE_TOL * scale).then_some(d)
}

/// The field induced on the synchrony subspace of `p`, one cell per class:
/// evaluate `f` at the embedded point and read each class at its smallest
/// member.
///
/// At construction the other members are compared with the representative
/// at a few fixed sample points; disagreement means `p` is not balanced for
/// the host graph or `f` is not admissible.
pub fn restrict_field(f: &FieldHandle, p: &Partition) -> Result<FieldHandle> {
    let layout = f.layout();
    check_partition(&layout, p)?;
    let small = layout.with_cells(p.num_classes());
    let reps = p.representatives();
    for y in sample_points(small.len(), RESTRICT_SAMPLES, RESTRICT_SEED, 1.0) {
        let x = embed(&layout, p, &y)?;
        let fx = f.eval(&x)?;
        for v in 0..layout.cells {
            let class = p.class_of(v);
            for (i, j) in layout.cell_indices(v).zip(layout.cell_indices(reps[class])) {
                if let Some(deviation) = agree(fx[i], fx[j]) {
                    return Err(Error::RepresentativeMismatch { class, deviation });
                }
            }
        }
    }
    let f = f.clone();
    let p = p.clone();
    Ok(FieldHandle::new(small, FieldKind::Restricted, move |y, out| {
        let mut x = vec![0.0; layout.len()];
        for b in 0..layout.blocks {
            for v in 0..layout.cells {
                for c in 0..layout.coords {
                    x[layout.index(b, v, c)] = y[small.index(b, p.class_of(v), c)];
                }
            }
        }
        let mut fx = vec![0.0; layout.len()];
        f.eval_unchecked(&x, &mut fx);
        for b in 0..layout.blocks {
            for (class, &r) in reps.iter().enumerate() {
                for c in 0..layout.coords {
                    out[small.index(b, class, c)] = fx[layout.index(b, r, c)];
                }
            }
        }
    }))
}
