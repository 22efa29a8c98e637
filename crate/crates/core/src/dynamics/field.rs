use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::expr::Expr;
use crate::{Error, Result};

/// How a state vector is laid out over cells.
///
/// The state is `blocks` consecutive blocks, each holding `coords`
/// coordinates for every cell in cell order. Plain cells use one block;
/// Hamiltonian cells use two, positions `(q_1..q_n)` then momenta
/// `(p_1..p_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateLayout {
    /// Number of cells.
    pub cells: usize,
    /// Coordinates per cell per block.
    pub coords: usize,
    /// 1 for plain cells, 2 for `(q, p)` cells.
    pub blocks: usize,
}

impl StateLayout {
    /// One block of `coords` coordinates per cell.
    pub fn plain(cells: usize, coords: usize) -> Self {
        StateLayout { cells, coords, blocks: 1 }
    }

    /// Position and momentum blocks of `coords` coordinates per cell.
    pub fn hamiltonian(cells: usize, coords: usize) -> Self {
        StateLayout { cells, coords, blocks: 2 }
    }

    /// Total state dimension.
    pub fn len(&self) -> usize {
        self.cells * self.coords * self.blocks
    }

    /// Whether the state is zero-dimensional.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of coordinate `c` of cell `cell` in block `block`.
    #[inline]
    pub fn index(&self, block: usize, cell: usize, c: usize) -> usize {
        (block * self.cells + cell) * self.coords + c
    }

    /// Same shape with a different cell count.
    pub fn with_cells(&self, cells: usize) -> Self {
        StateLayout { cells, ..*self }
    }

    /// State indices of one cell, block by block.
    pub fn cell_indices(&self, cell: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.blocks).flat_map(move |b| (0..self.coords).map(move |c| self.index(b, cell, c)))
    }

    /// Variable name of a state index: `x3`, `x3_2`, `q1`, `p4_1` (1-based).
    pub fn var_name(&self, idx: usize) -> alloc::string::String {
        let c = idx % self.coords;
        let cell = (idx / self.coords) % self.cells;
        let block = idx / (self.coords * self.cells);
        let letter = match (self.blocks, block) {
            (1, _) => 'x',
            (_, 0) => 'q',
            _ => 'p',
        };
        if self.coords == 1 {
            format!("{}{}", letter, cell + 1)
        } else {
            format!("{}{}_{}", letter, cell + 1, c + 1)
        }
    }

    fn resolve(&self, name: &str) -> Option<usize> {
        let mut chars = name.chars();
        let block = match (self.blocks, chars.next()?) {
            (1, 'x') => 0,
            (2, 'q') => 0,
            (2, 'p') => 1,
            _ => return None,
        };
        let rest = chars.as_str();
        let (cell, c) = match rest.split_once('_') {
            Some((cell, c)) if self.coords > 1 => (cell.parse::<usize>().ok()?, c.parse::<usize>().ok()?),
            None if self.coords == 1 => (rest.parse::<usize>().ok()?, 1),
            _ => return None,
        };
        if cell == 0 || cell > self.cells || c == 0 || c > self.coords {
            return None;
        }
        Some(self.index(block, cell - 1, c - 1))
    }
}

/// Where a vector field came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    /// Internal term plus pairwise coupling over in-edges.
    Admissible,
    /// `-grad f` for an admissible gradient function.
    Gradient,
    /// `J grad h` for an admissible Hamiltonian function.
    Hamiltonian,
    /// Hand-written component expressions; admissibility not asserted.
    Custom,
    /// Restriction of another field to a polydiagonal.
    Restricted,
}

type EvalFn = dyn Fn(&[f64], &mut [f64]) + Send + Sync;

/// An immutable, shareable vector field `x -> F(x)`.
#[derive(Clone)]
pub struct FieldHandle {
    layout: StateLayout,
    kind: FieldKind,
    f: Arc<EvalFn>,
}

impl core::fmt::Debug for FieldHandle {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FieldHandle").field("layout", &self.layout).field("kind", &self.kind).finish()
    }
}

impl FieldHandle {
    /// Wraps an evaluation routine writing `F(x)` into its second argument.
    pub fn new<F>(layout: StateLayout, kind: FieldKind, f: F) -> Self
    where
        F: Fn(&[f64], &mut [f64]) + Send + Sync + 'static,
    {
        FieldHandle { layout, kind, f: Arc::new(f) }
    }

    /// State layout.
    pub fn layout(&self) -> StateLayout {
        self.layout
    }

    /// State dimension.
    pub fn dim(&self) -> usize {
        self.layout.len()
    }

    /// Provenance.
    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// Writes `F(x)` into `out`.
    pub fn eval_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        let n = self.dim();
        for len in [x.len(), out.len()] {
            if len != n {
                return Err(Error::StateLength { expected: n, found: len });
            }
        }
        (self.f)(x, out);
        Ok(())
    }

    /// `F(x)` as a new vector.
    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim()];
        self.eval_into(x, &mut out)?;
        Ok(out)
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64], out: &mut [f64]) {
        (self.f)(x, out)
    }
}

/// A field given by one expression per state coordinate, in state order.
///
/// Variables are `x<cell>` for scalar plain cells, `q<cell>` / `p<cell>` for
/// Hamiltonian cells, with a `_<coord>` suffix when cells have more than one
/// coordinate. Cells and coordinates are numbered from 1.
pub fn custom_field<S: AsRef<str>>(layout: StateLayout, components: &[S]) -> Result<FieldHandle> {
    if components.len() != layout.len() {
        return Err(Error::StateLength { expected: layout.len(), found: components.len() });
    }
    let resolve = |name: &str| layout.resolve(name);
    let exprs: Vec<Expr> = components
        .iter()
        .map(|s| Expr::parse(s.as_ref(), &resolve))
        .collect::<Result<_>>()?;
    Ok(FieldHandle::new(layout, FieldKind::Custom, move |x, out| {
        for (o, e) in out.iter_mut().zip(&exprs) {
            *o = e.eval(x);
        }
    }))
}
