//! Symmetric lifts: feasibility (class-size vectors), block construction of
//! symmetric and simple symmetric lifts, and lift verification.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::balanced::{first_violation, Violation};
use crate::quotient::{quotient, QuotientResult};
use crate::{DiGraph, Error, Partition, Result};

/// A lift together with the balanced partition that folds it back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftWitness {
    /// The lifted graph on `sum k_i` vertices.
    pub lift: DiGraph,
    /// Consecutive index blocks, one per quotient vertex.
    pub partition: Partition,
    /// `lift / partition`, equal to the input quotient.
    pub quotient_check: QuotientResult,
}

/// A positive rational kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Frac {
    num: u64,
    den: u64,
}

impl Frac {
    fn new(num: u64, den: u64) -> Frac {
        let g = num.gcd(&den);
        Frac { num: num / g, den: den / g }
    }

    /// `self * a / b`
    fn scale(self, a: u32, b: u32) -> Result<Frac> {
        let num = self.num.checked_mul(u64::from(a)).ok_or(Error::Overflow)?;
        let den = self.den.checked_mul(u64::from(b)).ok_or(Error::Overflow)?;
        Ok(Frac::new(num, den))
    }
}

/// The componentwise-minimal positive integers `k` with
/// `k_i q_ij = k_j q_ji` for all `i, j`, or `None` when no such vector
/// exists.
///
/// Ratios are propagated along the undirected support of `q` with exact
/// fractions. Each connected component is normalised to coprime integers on
/// its own, so isolated vertices get `k_i = 1`.
pub fn symmetric_lift_k_vector(q: &DiGraph) -> Result<Option<Vec<u64>>> {
    let m = q.n();
    if !q.is_combinatorially_symmetric() {
        return Ok(None);
    }
    let mut ratio: Vec<Option<Frac>> = vec![None; m];
    let mut k = vec![0u64; m];
    for root in 0..m {
        if ratio[root].is_some() {
            continue;
        }
        ratio[root] = Some(Frac::new(1, 1));
        let mut component = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let ki = ratio[i].expect("visited");
            for j in 0..m {
                let (qij, qji) = (q.get(i, j), q.get(j, i));
                if j == i || qij == 0 {
                    continue;
                }
                // k_j = k_i q_ij / q_ji
                let kj = ki.scale(qij, qji)?;
                match ratio[j] {
                    None => {
                        ratio[j] = Some(kj);
                        component.push(j);
                        stack.push(j);
                    }
                    Some(existing) if existing != kj => return Ok(None),
                    Some(_) => {}
                }
            }
        }
        let lcm = component
            .iter()
            .try_fold(1u64, |acc, &v| {
                let d = ratio[v].expect("visited").den;
                let g = acc.gcd(&d);
                (acc / g).checked_mul(d).ok_or(Error::Overflow)
            })?;
        let mut scaled = Vec::with_capacity(component.len());
        for &v in &component {
            let f = ratio[v].expect("visited");
            scaled.push((f.num).checked_mul(lcm / f.den).ok_or(Error::Overflow)?);
        }
        let g = scaled.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        for (&v, &x) in component.iter().zip(&scaled) {
            k[v] = x / g;
        }
    }
    Ok(Some(k))
}

/// A `rows x cols` non-negative integer matrix with every row summing to
/// `row_sum` and every column to `col_sum`.
///
/// Row `a` drops its units into columns `a*row_sum, a*row_sum + 1, ...`
/// taken modulo `cols`. The units of all rows form one contiguous run around
/// the columns of length `rows * row_sum = cols * col_sum`, so each column
/// is hit exactly `col_sum` times. With `rows = cols` and
/// `row_sum <= cols` the result is a 0/1 circulant.
pub fn constant_sum_block(rows: usize, cols: usize, row_sum: u32, col_sum: u32) -> Result<Vec<Vec<u32>>> {
    let margins = Error::InconsistentMargins { rows, cols, row_sum, col_sum };
    if rows == 0 || cols == 0 {
        return Err(margins);
    }
    let lhs = (rows as u128) * u128::from(row_sum);
    let rhs = (cols as u128) * u128::from(col_sum);
    if lhs != rhs {
        return Err(margins);
    }
    let mut block = vec![vec![0u32; cols]; rows];
    let s = row_sum as usize;
    for (a, row) in block.iter_mut().enumerate() {
        let start = (a * s) % cols;
        for u in 0..s {
            row[(start + u) % cols] += 1;
        }
    }
    Ok(block)
}

/// A symmetric `k x k` circulant with constant row sum `row_sum`.
///
/// Offsets are taken greedily: the pairs `+d, -d` for `d = 1, 2, ...` while
/// `2d < k`, then the self-paired offset `k/2` once when `k` is even, and
/// whatever is left as loops (offset 0). With `simple` set, loops are
/// limited to one per vertex, so every `row_sum <= k` succeeds with 0/1
/// entries.
pub fn symmetric_circulant(k: usize, row_sum: u32, simple: bool) -> Result<Vec<Vec<u32>>> {
    if k == 0 {
        return Err(Error::InvalidClassSizes("zero-sized class".into()));
    }
    let mut offsets: Vec<usize> = Vec::new();
    let mut rem = row_sum as usize;
    let mut d = 1;
    while rem >= 2 && 2 * d < k {
        offsets.push(d);
        offsets.push(k - d);
        rem -= 2;
        d += 1;
    }
    if rem >= 1 && k.is_multiple_of(2) && k >= 2 {
        offsets.push(k / 2);
        rem -= 1;
    }
    if simple && rem > 1 {
        return Err(Error::MultiplierTooSmall { r: k, p: row_sum });
    }
    let mut block = vec![vec![0u32; k]; k];
    for (a, row) in block.iter_mut().enumerate() {
        for &off in &offsets {
            row[(a + off) % k] += 1;
        }
        row[a] += rem as u32;
    }
    Ok(block)
}

fn check_class_sizes(q: &DiGraph, k: &[usize]) -> Result<()> {
    let m = q.n();
    if k.len() != m {
        return Err(Error::InvalidClassSizes(format!(
            "{} sizes for {} quotient vertices",
            k.len(),
            m
        )));
    }
    if let Some(i) = k.iter().position(|&ki| ki == 0) {
        return Err(Error::InvalidClassSizes(format!("k_{} is zero", i + 1)));
    }
    for i in 0..m {
        for j in (i + 1)..m {
            let lhs = (k[i] as u128) * u128::from(q.get(i, j));
            let rhs = (k[j] as u128) * u128::from(q.get(j, i));
            if lhs != rhs {
                return Err(Error::IncompatibleClassSizes { i, j });
            }
        }
    }
    Ok(())
}

fn assemble(q: &DiGraph, k: &[usize], simple: bool) -> Result<LiftWitness> {
    let m = q.n();
    let n: usize = k.iter().sum();
    let offset: Vec<usize> = k
        .iter()
        .scan(0, |acc, &ki| {
            let start = *acc;
            *acc += ki;
            Some(start)
        })
        .collect();
    let mut adj = vec![0u32; n * n];
    for i in 0..m {
        let diag = symmetric_circulant(k[i], q.get(i, i), simple)?;
        for (a, row) in diag.iter().enumerate() {
            for (b, &x) in row.iter().enumerate() {
                adj[(offset[i] + a) * n + offset[i] + b] = x;
            }
        }
        for j in (i + 1)..m {
            let block = constant_sum_block(k[i], k[j], q.get(i, j), q.get(j, i))?;
            for (a, row) in block.iter().enumerate() {
                for (b, &x) in row.iter().enumerate() {
                    let (r, c) = (offset[i] + a, offset[j] + b);
                    adj[r * n + c] = x;
                    adj[c * n + r] = x;
                }
            }
        }
    }
    let lift = DiGraph::from_matrix(n, adj)?;
    let partition = Partition::consecutive(k)?;
    let quotient_check = quotient(&lift, &partition)?;
    debug_assert_eq!(&quotient_check.quotient, q);
    Ok(LiftWitness { lift, partition, quotient_check })
}

/// A symmetric lift of `q` whose `i`-th class has `k[i]` vertices.
///
/// Off-diagonal blocks come from [`constant_sum_block`] with the transpose
/// mirrored below the diagonal; diagonal blocks are symmetric circulants
/// with row sum `q_ii`, multiple loops allowed.
pub fn build_symmetric_lift(q: &DiGraph, k: &[usize]) -> Result<LiftWitness> {
    check_class_sizes(q, k)?;
    assemble(q, k, false)
}

/// A symmetric lift of a symmetric connected `q` with no multiple edges and
/// `r` vertices per class. Requires `r >= p`, the largest entry of `q`.
pub fn build_simple_symmetric_lift(q: &DiGraph, r: usize) -> Result<LiftWitness> {
    if !q.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !q.is_connected() {
        return Err(Error::NotConnected);
    }
    let p = q.max_entry();
    if r == 0 || (r as u64) < u64::from(p) {
        return Err(Error::MultiplierTooSmall { r, p });
    }
    let k = vec![r; q.n()];
    let w = assemble(q, &k, true)?;
    debug_assert!(w.lift.is_simple());
    Ok(w)
}

#[allow(missing_docs)]
/// Why a candidate lift failed verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftDiscrepancy {
    /// Graph and partition sizes differ.
    SizeMismatch { graph_n: usize, partition_n: usize },
    /// The partition is not balanced on the candidate.
    Unbalanced(Violation),
    /// The partition has a different number of classes than `q` has vertices.
    ClassCount { expected: usize, found: usize },
    /// Quotient entry `(i, j)` differs.
    Entry { i: usize, j: usize, expected: u32, found: u32 },
}

/// Result of [`verify_lift`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    /// True when `g / p == q` with `p` balanced.
    pub ok: bool,
    /// First discrepancy found, when not ok.
    pub discrepancy: Option<LiftDiscrepancy>,
}

/// Checks that `p` is balanced on `g` and that `g / p` equals `q` entrywise,
/// with class `i` of `p` (classes ordered by smallest member) matched to
/// vertex `i` of `q`.
pub fn verify_lift(g: &DiGraph, p: &Partition, q: &DiGraph) -> LiftReport {
    let fail = |d| LiftReport { ok: false, discrepancy: Some(d) };
    if g.n() != p.n() {
        return fail(LiftDiscrepancy::SizeMismatch { graph_n: g.n(), partition_n: p.n() });
    }
    if p.num_classes() != q.n() {
        return fail(LiftDiscrepancy::ClassCount { expected: q.n(), found: p.num_classes() });
    }
    if let Some(v) = first_violation(g, p).expect("sizes checked") {
        return fail(LiftDiscrepancy::Unbalanced(v));
    }
    let found = quotient(g, p).expect("balanced").quotient;
    for i in 0..q.n() {
        for j in 0..q.n() {
            if found.get(i, j) != q.get(i, j) {
                return fail(LiftDiscrepancy::Entry {
                    i,
                    j,
                    expected: q.get(i, j),
                    found: found.get(i, j),
                });
            }
        }
    }
    LiftReport { ok: true, discrepancy: None }
}
