#![allow(dead_code)]

use rand::Rng;
use symlift_core::dynamics::{CouplingKind, CouplingSpec};
use symlift_core::poly::Poly;
use symlift_core::{DiGraph, Partition};

/// Every set partition of `0..n` as a label vector, in restricted-growth order.
pub fn all_label_vectors(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(i: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == labels.len() {
            out.push(labels.clone());
            return;
        }
        for l in 0..=max + 1 {
            labels[i] = l;
            rec(i + 1, max.max(l), labels, out);
        }
    }
    if n > 0 {
        rec(1, 0, &mut labels, &mut out);
    }
    out
}

pub fn all_partitions(n: usize) -> Vec<Partition> {
    all_label_vectors(n).iter().map(|l| Partition::from_labels(l).unwrap()).collect()
}

/// Direct reading of the definition: same-class vertices receive the same
/// number of edges from every class.
pub fn balanced_oracle(g: &DiGraph, labels: &[usize]) -> bool {
    let n = labels.len();
    let m = labels.iter().max().map_or(0, |&x| x + 1);
    let count = |v: usize, class: usize| -> u32 { (0..n).filter(|&w| labels[w] == class).map(|w| g.get(v, w)).sum() };
    (0..n).all(|u| (u + 1..n).all(|v| labels[u] != labels[v] || (0..m).all(|c| count(u, c) == count(v, c))))
}

pub fn refines(fine: &[usize], coarse: &[usize]) -> bool {
    let n = fine.len();
    (0..n).all(|u| (0..n).all(|v| fine[u] != fine[v] || coarse[u] == coarse[v]))
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, max_entry: u32) -> DiGraph {
    let adj = (0..n * n).map(|_| rng.gen_range(0..=max_entry)).collect();
    DiGraph::from_matrix(n, adj).unwrap()
}

pub fn random_symmetric_graph<R: Rng>(rng: &mut R, n: usize, max_entry: u32) -> DiGraph {
    let mut adj = vec![0u32; n * n];
    for i in 0..n {
        for j in i..n {
            let a = rng.gen_range(0..=max_entry);
            adj[i * n + j] = a;
            adj[j * n + i] = a;
        }
    }
    DiGraph::from_matrix(n, adj).unwrap()
}

fn monomials(nvars: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                let used: u32 = e.iter().sum();
                (0..=max_degree - used).map(move |k| {
                    let mut e = e.clone();
                    e.push(k);
                    e
                })
            })
            .collect();
    }
    out
}

/// Dense polynomial of degree at most `degree` with coefficients in `[-2, 2]`.
pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, degree: u32) -> Poly {
    let terms = monomials(nvars, degree).into_iter().map(|e| (rng.gen_range(-2.0..=2.0), e)).collect();
    Poly::new(nvars, terms).unwrap()
}

/// Random gradient or Hamiltonian coupling with a swap-invariant `beta`.
pub fn random_spec<R: Rng>(rng: &mut R, kind: CouplingKind, cell_dim: usize, degree: u32) -> CouplingSpec {
    let blocks = if kind == CouplingKind::Gradient { 1 } else { 2 };
    let alpha = random_poly(rng, blocks * cell_dim, degree);
    let raw = random_poly(rng, 2 * blocks * cell_dim, degree);
    let probe = CouplingSpec::new(kind, cell_dim, alpha.clone(), Poly::zero(raw.nvars()), true).unwrap();
    let beta = raw.add(&raw.permute(&probe.beta_swap())).scale(0.5);
    CouplingSpec::new(kind, cell_dim, alpha, beta, true).unwrap()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

fn cubic_part(p: &Poly) -> Poly {
    let terms = p.terms().iter().filter(|t| t.exps.iter().sum::<u32>() == 3).map(|t| (t.coeff, t.exps.clone())).collect();
    Poly::new(p.nvars(), terms).unwrap()
}

/// Scalar Hamiltonian coupling built around a harmonic well: `(q^2 + p^2) / 2`
/// plus random cubic terms, scaled by `cubic`, in `alpha` and `beta`.
pub fn oscillator_spec<R: Rng>(rng: &mut R, cubic: f64) -> CouplingSpec {
    let spec = random_spec(rng, CouplingKind::Hamiltonian, 1, 3);
    let harmonic = Poly::new(2, vec![(0.5, vec![2, 0]), (0.5, vec![0, 2])]).unwrap();
    let alpha = harmonic.add(&cubic_part(spec.alpha()).scale(cubic));
    let beta = cubic_part(spec.beta()).scale(cubic);
    CouplingSpec::new(CouplingKind::Hamiltonian, 1, alpha, beta, true).unwrap()
}
