use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::coupling::{CouplingSpec, Potential};
use super::field::FieldHandle;
use super::integrate::{integrate_with, Trajectory};
use super::restrict::{embed, sync_violation};
use crate::quotient::quotient_is_symmetric;
use crate::{DiGraph, Error, Partition, Result};

/// Central-difference step for numerical Jacobians.
pub const FD_STEP: f64 = 1e-5;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Outcome of a numerical check; `pass` is `deviation <= tolerance`.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    /// Name of the check.
    pub check: String,
    /// Largest measured deviation (max norm).
    pub deviation: f64,
    /// Threshold the deviation was compared to.
    pub tolerance: f64,
    /// Whether the check passed.
    pub pass: bool,
    /// Number of sample points or time steps examined.
    pub samples: usize,
}

impl VerificationReport {
    /// Builds a report, deriving `pass` from the other fields.
    pub fn new(check: &str, deviation: f64, tolerance: f64, samples: usize) -> Self {
        VerificationReport { check: check.into(), deviation, tolerance, pass: deviation <= tolerance, samples }
    }
}

/// `count` points uniform in `[-radius, radius]^dim` from a seeded stream.
pub fn sample_points(dim: usize, count: usize, seed: u64, radius: f64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..dim).map(|_| rng.gen_range(-radius..=radius)).collect()).collect()
}

/// Row-major `dF_i / dx_k` by central differences with step `h`.
pub fn jacobian(f: &FieldHandle, x: &[f64], h: f64) -> Result<Vec<f64>> {
    let n = f.dim();
    if x.len() != n {
        return Err(Error::StateLength { expected: n, found: x.len() });
    }
    let mut jac = vec![0.0; n * n];
    let mut xp = x.to_vec();
    let mut fp = vec![0.0; n];
    let mut fm = vec![0.0; n];
    for k in 0..n {
        xp[k] = x[k] + h;
        f.eval_unchecked(&xp, &mut fp);
        xp[k] = x[k] - h;
        f.eval_unchecked(&xp, &mut fm);
        xp[k] = x[k];
        for i in 0..n {
            jac[i * n + k] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    if jac.iter().any(|v| !v.is_finite()) {
        return Err(Error::Divergent { step: 0 });
    }
    Ok(jac)
}

fn max_asymmetry(jac: &[f64], n: usize) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..n {
        for k in i + 1..n {
            worst = worst.max((jac[i * n + k] - jac[k * n + i]).abs());
        }
    }
    worst
}

fn symmetric_jacobian_check(check: &str, f: &FieldHandle, samples: &[Vec<f64>], tol: f64) -> Result<VerificationReport> {
    let n = f.dim();
    let mut worst = 0.0f64;
    for (s, x) in samples.iter().enumerate() {
        let jac = jacobian(f, x, FD_STEP).map_err(|e| match e {
            Error::Divergent { .. } => Error::Divergent { step: s },
            e => e,
        })?;
        worst = worst.max(max_asymmetry(&jac, n));
    }
    Ok(VerificationReport::new(check, worst, tol, samples.len()))
}

/// Whether `F` looks like `-grad f`: the largest entry of `DF - DF^t`
/// over the samples, against `tol`.
pub fn is_gradient_numeric(f: &FieldHandle, samples: &[Vec<f64>], tol: f64) -> Result<VerificationReport> {
    symmetric_jacobian_check("gradient", f, samples, tol)
}

/// Whether `F` looks like `J grad h`: the Jacobian of
/// `J^{-1} F = (-F_p, F_q)` must be symmetric. Needs a `(q, p)` layout.
pub fn is_hamiltonian_numeric(f: &FieldHandle, samples: &[Vec<f64>], tol: f64) -> Result<VerificationReport> {
    let layout = f.layout();
    if layout.blocks != 2 {
        return Err(Error::InvalidCoupling("Hamiltonian check needs a (q, p) state layout".into()));
    }
    let inner = f.clone();
    let half = f.dim() / 2;
    let g = FieldHandle::new(layout, f.kind(), move |x, out| {
        let mut fx = vec![0.0; x.len()];
        inner.eval_unchecked(x, &mut fx);
        for k in 0..half {
            out[k] = -fx[half + k];
            out[half + k] = fx[k];
        }
    });
    symmetric_jacobian_check("hamiltonian", &g, samples, tol)
}

/// Integrates from `x0` (which must lie on the synchrony subspace of `p`)
/// and reports the largest within-class spread seen.
pub fn flow_invariance_deviation(
    f: &FieldHandle,
    p: &Partition,
    x0: &[f64],
    dt: f64,
    steps: usize,
    tol: f64,
) -> Result<VerificationReport> {
    let layout = f.layout();
    if let Some((u, v)) = sync_violation(&layout, p, x0)? {
        return Err(Error::NotInPolydiagonal { u, v });
    }
    let reps = p.representatives();
    let mut worst = 0.0f64;
    integrate_with(f, x0, dt, steps, |_, x| {
        for v in 0..layout.cells {
            let r = reps[p.class_of(v)];
            for (i, j) in layout.cell_indices(v).zip(layout.cell_indices(r)) {
                worst = worst.max((x[i] - x[j]).abs());
            }
        }
    })?;
    Ok(VerificationReport::new("invariance", worst, tol, steps + 1))
}

/// `max_t |h(x(t)) - h(x(0))|` along a trajectory.
pub fn energy_drift<H>(h: H, trajectory: &Trajectory, tol: f64) -> VerificationReport
where
    H: Fn(&[f64]) -> f64,
{
    let mut states = trajectory.states.iter();
    let worst = match states.next() {
        Some(first) => {
            let h0 = h(first);
            states.map(|x| (h(x) - h0).abs()).fold(0.0, f64::max)
        }
        None => 0.0,
    };
    VerificationReport::new("energy", worst, tol, trajectory.states.len())
}

/// Compares the admissible function built from `spec` on `g`, restricted to
/// the synchrony subspace of `p`, with `k` times the same construction on
/// the quotient, at the given quotient-coordinate samples.
///
/// `p` must give a symmetric, connected quotient, so that every class has
/// the same size `k`.
pub fn scaling_check(
    g: &DiGraph,
    p: &Partition,
    spec: &CouplingSpec,
    samples: &[Vec<f64>],
    tol: f64,
) -> Result<VerificationReport> {
    let sym = quotient_is_symmetric(g, p)?;
    if let Some((i, j)) = sym.witness {
        return Err(Error::IncompatibleClassSizes { i, j });
    }
    let q = &sym.quotient.quotient;
    if !q.is_connected() {
        return Err(Error::NotConnected);
    }
    let k = sym.quotient.class_sizes[0] as f64;
    let on_g = Potential::new(g, spec)?;
    let on_q = Potential::new(q, spec)?;
    let mut worst = 0.0f64;
    for y in samples {
        let x = embed(&on_g.layout(), p, y)?;
        let d = (on_g.eval(&x)? - k * on_q.eval(y)?).abs();
        worst = worst.max(d);
    }
    Ok(VerificationReport::new("scaling", worst, tol, samples.len()))
}
