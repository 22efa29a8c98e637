use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::field::{FieldHandle, FieldKind, StateLayout};
use crate::poly::Poly;
use crate::{DiGraph, Error, Result};

/// Degree cap applied to coupling polynomials unless overridden.
pub const DEFAULT_MAX_DEGREE: u32 = 8;

/// Gradient (`x' = -grad f`) or Hamiltonian (`(q', p') = J grad h`) systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CouplingKind {
    /// Cells carry `x_i` in `R^d`.
    Gradient,
    /// Cells carry `(q_i, p_i)` in `R^{2d}`.
    Hamiltonian,
}

impl CouplingKind {
    fn blocks(self) -> usize {
        match self {
            CouplingKind::Gradient => 1,
            CouplingKind::Hamiltonian => 2,
        }
    }
}

/// The two ingredients of an admissible gradient or Hamiltonian function:
/// a per-cell term `alpha` and a per-edge term `beta`.
///
/// Variable order, with `d = cell_dim`:
///
/// * gradient: `alpha(x_i)`, `beta(x_i, x_j)`;
/// * Hamiltonian: `alpha(q_i, p_i)`, `beta(q_i, q_j, p_i, p_j)`;
///
/// each argument being a block of `d` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingSpec {
    kind: CouplingKind,
    cell_dim: usize,
    alpha: Poly,
    beta: Poly,
    beta_symmetric: bool,
    max_degree: u32,
}

impl CouplingSpec {
    /// Validates variable counts, the degree cap, and, when
    /// `beta_symmetric` is set, that `beta` really is invariant under
    /// exchanging the two cells.
    pub fn new(kind: CouplingKind, cell_dim: usize, alpha: Poly, beta: Poly, beta_symmetric: bool) -> Result<Self> {
        Self::with_max_degree(kind, cell_dim, alpha, beta, beta_symmetric, DEFAULT_MAX_DEGREE)
    }

    /// As [`CouplingSpec::new`] with an explicit degree cap.
    pub fn with_max_degree(
        kind: CouplingKind,
        cell_dim: usize,
        alpha: Poly,
        beta: Poly,
        beta_symmetric: bool,
        max_degree: u32,
    ) -> Result<Self> {
        if cell_dim == 0 {
            return Err(Error::InvalidCoupling("cell dimension must be positive".into()));
        }
        let b = kind.blocks();
        if alpha.nvars() != b * cell_dim {
            return Err(Error::InvalidCoupling(format!(
                "alpha needs {} variables, has {}",
                b * cell_dim,
                alpha.nvars()
            )));
        }
        if beta.nvars() != 2 * b * cell_dim {
            return Err(Error::InvalidCoupling(format!(
                "beta needs {} variables, has {}",
                2 * b * cell_dim,
                beta.nvars()
            )));
        }
        for (name, p) in [("alpha", &alpha), ("beta", &beta)] {
            if p.degree() > max_degree {
                return Err(Error::InvalidCoupling(format!(
                    "{} has degree {} above the cap {}",
                    name,
                    p.degree(),
                    max_degree
                )));
            }
        }
        let spec = CouplingSpec { kind, cell_dim, alpha, beta, beta_symmetric, max_degree };
        if beta_symmetric && !spec.beta_is_swap_invariant() {
            return Err(Error::InvalidCoupling(
                "beta is flagged symmetric but changes when the two cells are exchanged".into(),
            ));
        }
        Ok(spec)
    }

    /// Gradient or Hamiltonian.
    pub fn kind(&self) -> CouplingKind {
        self.kind
    }

    /// Coordinates per cell per block.
    pub fn cell_dim(&self) -> usize {
        self.cell_dim
    }

    /// Per-cell term.
    pub fn alpha(&self) -> &Poly {
        &self.alpha
    }

    /// Per-edge term.
    pub fn beta(&self) -> &Poly {
        &self.beta
    }

    /// Whether `beta` was declared invariant under exchanging the cells.
    pub fn beta_symmetric(&self) -> bool {
        self.beta_symmetric
    }

    /// Degree cap.
    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Variable permutation exchanging the two cell arguments of `beta`:
    /// `(x_i, x_j) -> (x_j, x_i)`, or `(q_i, q_j, p_i, p_j) -> (q_j, q_i, p_j, p_i)`.
    pub fn beta_swap(&self) -> Vec<usize> {
        let d = self.cell_dim;
        (0..self.beta.nvars())
            .map(|v| {
                let (block, role, c) = (v / (2 * d), (v / d) % 2, v % d);
                block * 2 * d + (1 - role) * d + c
            })
            .collect()
    }

    /// Whether `beta` is unchanged by [`CouplingSpec::beta_swap`].
    pub fn beta_is_swap_invariant(&self) -> bool {
        self.beta.permute(&self.beta_swap()) == self.beta
    }

    /// Layout of the state on `cells` cells.
    pub fn layout(&self, cells: usize) -> StateLayout {
        StateLayout { cells, coords: self.cell_dim, blocks: self.kind.blocks() }
    }

    #[inline]
    fn beta_var(&self, block: usize, role: usize, c: usize) -> usize {
        block * 2 * self.cell_dim + role * self.cell_dim + c
    }

    #[inline]
    fn alpha_var(&self, block: usize, c: usize) -> usize {
        block * self.cell_dim + c
    }
}

/// Whether `beta` must be invariant under exchanging cells on `g`: always,
/// unless `g` is bipartite with no valency shared across the two sides.
pub fn requires_symmetric_beta(g: &DiGraph) -> bool {
    match g.bipartition() {
        None => true,
        Some(sides) => {
            let vals = g.valencies();
            (0..g.n()).any(|u| {
                (0..g.n()).any(|v| sides.class_of(u) == 0 && sides.class_of(v) == 1 && vals[u] == vals[v])
            })
        }
    }
}

/// An admissible gradient or Hamiltonian function on a symmetric graph,
///
/// `V = sum_{i<j} a_ij beta(i, j) + 1/2 sum_i a_ii beta(i, i) + sum_i alpha(i)`,
///
/// with symbolic first derivatives precomputed.
///
/// Every undirected edge `{i, j}` stands for the two directed edges
/// `i -> j` and `j -> i` and is counted once; a loop is a single directed
/// edge and carries half weight. With this weighting each in-edge, loops
/// included, contributes one coupling term to its target cell, and on a
/// synchrony subspace with classes of equal size `k` the function is `k`
/// times the same construction on the quotient.
#[derive(Clone, Debug)]
pub struct Potential {
    spec: CouplingSpec,
    layout: StateLayout,
    /// `(i, j, weight)` with `i <= j`.
    edges: Vec<(usize, usize, f64)>,
    d_alpha: Vec<Poly>,
    d_beta: Vec<Poly>,
}

impl Potential {
    /// Checks that `g` is symmetric and that `beta` is symmetric where the
    /// graph demands it.
    pub fn new(g: &DiGraph, spec: &CouplingSpec) -> Result<Self> {
        if !g.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if !spec.beta_symmetric && requires_symmetric_beta(g) {
            return Err(Error::InvalidCoupling(
                "this graph requires beta to be invariant under exchanging the two cells".into(),
            ));
        }
        let n = g.n();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i..n {
                let a = g.get(i, j);
                if a > 0 {
                    let w = if i == j { 0.5 * f64::from(a) } else { f64::from(a) };
                    edges.push((i, j, w));
                }
            }
        }
        Ok(Potential {
            spec: spec.clone(),
            layout: spec.layout(n),
            edges,
            d_alpha: spec.alpha.gradient(),
            d_beta: spec.beta.gradient(),
        })
    }

    /// State layout.
    pub fn layout(&self) -> StateLayout {
        self.layout
    }

    /// The coupling this potential was built from.
    pub fn spec(&self) -> &CouplingSpec {
        &self.spec
    }

    fn beta_args(&self, x: &[f64], i: usize, j: usize, args: &mut [f64]) {
        let l = &self.layout;
        for b in 0..l.blocks {
            for c in 0..l.coords {
                args[self.spec.beta_var(b, 0, c)] = x[l.index(b, i, c)];
                args[self.spec.beta_var(b, 1, c)] = x[l.index(b, j, c)];
            }
        }
    }

    fn alpha_args(&self, x: &[f64], i: usize, args: &mut [f64]) {
        let l = &self.layout;
        for b in 0..l.blocks {
            for c in 0..l.coords {
                args[self.spec.alpha_var(b, c)] = x[l.index(b, i, c)];
            }
        }
    }

    /// Value at `x`.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        self.check_len(x)?;
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: &[f64]) -> f64 {
        let mut bargs = vec![0.0; self.spec.beta.nvars()];
        let mut aargs = vec![0.0; self.spec.alpha.nvars()];
        let mut total = 0.0;
        for &(i, j, w) in &self.edges {
            self.beta_args(x, i, j, &mut bargs);
            total += w * self.spec.beta.eval(&bargs);
        }
        for i in 0..self.layout.cells {
            self.alpha_args(x, i, &mut aargs);
            total += self.spec.alpha.eval(&aargs);
        }
        total
    }

    /// Exact gradient at `x`, written into `out`.
    pub fn gradient_into(&self, x: &[f64], out: &mut [f64]) {
        let l = self.layout;
        out.iter_mut().for_each(|o| *o = 0.0);
        let mut bargs = vec![0.0; self.spec.beta.nvars()];
        let mut aargs = vec![0.0; self.spec.alpha.nvars()];
        for &(i, j, w) in &self.edges {
            self.beta_args(x, i, j, &mut bargs);
            for b in 0..l.blocks {
                for c in 0..l.coords {
                    let di = self.d_beta[self.spec.beta_var(b, 0, c)].eval(&bargs);
                    let dj = self.d_beta[self.spec.beta_var(b, 1, c)].eval(&bargs);
                    out[l.index(b, i, c)] += w * di;
                    out[l.index(b, j, c)] += w * dj;
                }
            }
        }
        for i in 0..l.cells {
            self.alpha_args(x, i, &mut aargs);
            for b in 0..l.blocks {
                for c in 0..l.coords {
                    out[l.index(b, i, c)] += self.d_alpha[self.spec.alpha_var(b, c)].eval(&aargs);
                }
            }
        }
    }

    /// Exact gradient at `x`.
    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x)?;
        let mut out = vec![0.0; x.len()];
        self.gradient_into(x, &mut out);
        Ok(out)
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.layout.len() {
            return Err(Error::StateLength { expected: self.layout.len(), found: x.len() });
        }
        Ok(())
    }

    /// The associated vector field: `-grad f` for gradient couplings,
    /// `J grad h` (`q' = dh/dp`, `p' = -dh/dq`) for Hamiltonian ones.
    pub fn field(&self) -> FieldHandle {
        let this = self.clone();
        match self.spec.kind {
            CouplingKind::Gradient => FieldHandle::new(self.layout, FieldKind::Gradient, move |x, out| {
                this.gradient_into(x, out);
                out.iter_mut().for_each(|o| *o = -*o);
            }),
            CouplingKind::Hamiltonian => FieldHandle::new(self.layout, FieldKind::Hamiltonian, move |x, out| {
                let half = x.len() / 2;
                let mut grad = vec![0.0; x.len()];
                this.gradient_into(x, &mut grad);
                for k in 0..half {
                    out[k] = grad[half + k];
                    out[half + k] = -grad[k];
                }
            }),
        }
    }
}

fn expect_kind(spec: &CouplingSpec, kind: CouplingKind) -> Result<()> {
    if spec.kind != kind {
        return Err(Error::InvalidCoupling(format!("expected a {:?} coupling", kind)));
    }
    Ok(())
}

/// Admissible gradient function `f(x)` on a symmetric graph.
pub fn gradient_function_eval(g: &DiGraph, spec: &CouplingSpec, x: &[f64]) -> Result<f64> {
    expect_kind(spec, CouplingKind::Gradient)?;
    Potential::new(g, spec)?.eval(x)
}

/// `x' = -grad f`.
pub fn gradient_field(g: &DiGraph, spec: &CouplingSpec) -> Result<FieldHandle> {
    expect_kind(spec, CouplingKind::Gradient)?;
    Ok(Potential::new(g, spec)?.field())
}

/// Admissible Hamiltonian `h(q, p)` on a symmetric graph; the state is
/// `(q_1, ..., q_n, p_1, ..., p_n)`.
pub fn hamiltonian_function_eval(g: &DiGraph, spec: &CouplingSpec, state: &[f64]) -> Result<f64> {
    expect_kind(spec, CouplingKind::Hamiltonian)?;
    Potential::new(g, spec)?.eval(state)
}

/// `(q', p') = J grad h`.
pub fn hamiltonian_field(g: &DiGraph, spec: &CouplingSpec) -> Result<FieldHandle> {
    expect_kind(spec, CouplingKind::Hamiltonian)?;
    Ok(Potential::new(g, spec)?.field())
}
