//! Balanced equivalence relations: decision procedures, coarsest balanced
//! refinement, and exhaustive enumeration for small graphs.
//!
//! A partition is balanced when any two vertices of the same class receive
//! the same number of edges from each class. All arithmetic here is exact.

use alloc::vec;
use alloc::vec::Vec;

use crate::{DiGraph, Error, Partition, Result};

/// Default vertex guard for [`enumerate_balanced`]; Bell(12) is about 4.2M.
pub const DEFAULT_MAX_N: usize = 12;

/// Two same-class vertices that see different edge counts from one class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Smaller vertex of the offending pair.
    pub u: usize,
    /// Larger vertex of the offending pair.
    pub v: usize,
    /// Source class on which they disagree.
    pub class: usize,
}

fn check_sizes(g: &DiGraph, p: &Partition) -> Result<()> {
    if g.n() != p.n() {
        return Err(Error::SizeMismatch { expected: g.n(), found: p.n() });
    }
    Ok(())
}

/// In-edge counts of `v` from each class of `p`.
pub fn signature(g: &DiGraph, p: &Partition, v: usize) -> Vec<u32> {
    let mut sig = vec![0u32; p.num_classes()];
    for (u, &a) in g.row(v).iter().enumerate() {
        sig[p.class_of(u)] += a;
    }
    sig
}

/// The first pair (in vertex order) breaking balance, or `None` when `p` is
/// balanced.
pub fn first_violation(g: &DiGraph, p: &Partition) -> Result<Option<Violation>> {
    check_sizes(g, p)?;
    let reps = p.representatives();
    let rep_sigs: Vec<Vec<u32>> = reps.iter().map(|&r| signature(g, p, r)).collect();
    for v in 0..g.n() {
        let c = p.class_of(v);
        let r = reps[c];
        if r == v {
            continue;
        }
        let sig = signature(g, p, v);
        if let Some(class) = (0..sig.len()).find(|&j| sig[j] != rep_sigs[c][j]) {
            return Ok(Some(Violation { u: r, v, class }));
        }
    }
    Ok(None)
}

/// Balance by counting: the color-count signature is constant on classes.
pub fn is_balanced_combinatorial(g: &DiGraph, p: &Partition) -> Result<bool> {
    Ok(first_violation(g, p)?.is_none())
}

/// Balance by invariance: `A` maps each class indicator `e_J` into the
/// polydiagonal subspace, hence `A` leaves the whole subspace invariant.
pub fn is_balanced_matrix(g: &DiGraph, p: &Partition) -> Result<bool> {
    check_sizes(g, p)?;
    let n = g.n();
    let a = g.matrix();
    let mut image = vec![0i64; n];
    for class in 0..p.num_classes() {
        let e: Vec<i64> = (0..n).map(|v| i64::from(p.class_of(v) == class)).collect();
        for (i, out) in image.iter_mut().enumerate() {
            *out = a[i * n..(i + 1) * n]
                .iter()
                .zip(&e)
                .map(|(&aij, &ej)| i64::from(aij) * ej)
                .sum();
        }
        let mut seen: Vec<Option<i64>> = vec![None; p.num_classes()];
        for (v, &val) in image.iter().enumerate() {
            match seen[p.class_of(v)] {
                None => seen[p.class_of(v)] = Some(val),
                Some(w) if w != val => return Ok(false),
                Some(_) => {}
            }
        }
    }
    Ok(true)
}

/// Splits every class of `p` by signature. Classes are visited in index
/// order and sub-classes ordered by signature; the result is then relabelled
/// by smallest member.
fn split_once(g: &DiGraph, p: &Partition) -> Partition {
    let mut keyed: Vec<(usize, Vec<u32>, usize)> =
        (0..g.n()).map(|v| (p.class_of(v), signature(g, p, v), v)).collect();
    keyed.sort();
    let mut labels = vec![0usize; g.n()];
    let mut next = 0;
    for (idx, (class, sig, v)) in keyed.iter().enumerate() {
        if idx > 0 {
            let (pc, ps, _) = &keyed[idx - 1];
            if pc != class || ps != sig {
                next += 1;
            }
        }
        labels[*v] = next;
    }
    Partition::from_labels(&labels).expect("non-empty")
}

/// The coarsest balanced partition refining `seed`.
pub fn coarsest_balanced_refinement(g: &DiGraph, seed: &Partition) -> Result<Partition> {
    check_sizes(g, seed)?;
    let mut p = seed.clone();
    loop {
        let q = split_once(g, &p);
        if q.num_classes() == p.num_classes() {
            return Ok(p);
        }
        p = q;
    }
}

/// The coarsest balanced partition of `g`, seeded with the valency
/// partition. Every balanced partition of `g` refines it.
pub fn coarsest_balanced(g: &DiGraph) -> Partition {
    coarsest_balanced_refinement(g, &g.valency_partition()).expect("sizes agree")
}

/// All balanced partitions of `g`, in restricted-growth-string order.
pub fn enumerate_balanced(g: &DiGraph, max_n: usize) -> Result<Vec<Partition>> {
    enumerate_balanced_with_prefix(g, &[0], max_n)
}

/// Balanced partitions whose restricted growth string starts with `prefix`,
/// in lexicographic order. Concatenating the results over all valid prefixes
/// of a fixed length (taken in lexicographic order) reproduces
/// [`enumerate_balanced`].
pub fn enumerate_balanced_with_prefix(
    g: &DiGraph,
    prefix: &[usize],
    max_n: usize,
) -> Result<Vec<Partition>> {
    let n = g.n();
    if n > max_n {
        return Err(Error::GuardExceeded { n, max_n });
    }
    let prefix = &prefix[..prefix.len().min(n)];
    if !is_rgs(prefix) {
        return Ok(Vec::new());
    }
    // Any balanced partition refines the coarsest one, so a vertex may only
    // join a class whose members share its coarsest class.
    let top = coarsest_balanced(g);
    let mut labels = vec![0usize; n];
    let mut firsts: Vec<usize> = Vec::new();
    for (v, &c) in prefix.iter().enumerate() {
        if c == firsts.len() {
            firsts.push(v);
        } else if top.class_of(firsts[c]) != top.class_of(v) {
            return Ok(Vec::new());
        }
        labels[v] = c;
    }
    let mut out = Vec::new();
    let mut search = Search { g, top: &top, labels, firsts, out: &mut out };
    search.extend(prefix.len());
    Ok(out)
}

/// All restricted growth strings of length `len`, lexicographically.
pub fn rgs_prefixes(len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if len == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut cur = vec![0usize; len];
    loop {
        out.push(cur.clone());
        // next RGS: rightmost position that can grow
        let mut i = len - 1;
        loop {
            if i == 0 {
                return out;
            }
            let max_before = cur[..i].iter().copied().max().unwrap_or(0);
            if cur[i] <= max_before {
                cur[i] += 1;
                for x in cur.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

fn is_rgs(s: &[usize]) -> bool {
    let mut m = 0;
    for &c in s {
        if c > m {
            return false;
        }
        if c == m {
            m += 1;
        }
    }
    true
}

struct Search<'a> {
    g: &'a DiGraph,
    top: &'a Partition,
    labels: Vec<usize>,
    firsts: Vec<usize>,
    out: &'a mut Vec<Partition>,
}

impl Search<'_> {
    fn extend(&mut self, v: usize) {
        let n = self.g.n();
        if v == n {
            let p = Partition::from_labels(&self.labels).expect("non-empty");
            if is_balanced_combinatorial(self.g, &p).expect("sizes agree") {
                self.out.push(p);
            }
            return;
        }
        let m = self.firsts.len();
        for c in 0..=m {
            if c < m && self.top.class_of(self.firsts[c]) != self.top.class_of(v) {
                continue;
            }
            self.labels[v] = c;
            if c == m {
                self.firsts.push(v);
            }
            self.extend(v + 1);
            if c == m {
                self.firsts.pop();
            }
        }
    }
}
