use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::field::FieldHandle;
use crate::{Error, Result};

/// A fixed-step solution: `states[i]` is the state at `times[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    /// Uniform grid starting at 0.
    pub times: Vec<f64>,
    /// One state per time.
    pub states: Vec<Vec<f64>>,
    /// Step size.
    pub dt: f64,
    /// Integration scheme.
    pub method: &'static str,
}

impl Trajectory {
    /// Final state.
    pub fn last(&self) -> &[f64] {
        self.states.last().map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Scratch space for [`rk4_step`].
struct Rk4 {
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    tmp: Vec<f64>,
}

impl Rk4 {
    fn new(n: usize) -> Self {
        Rk4 { k1: vec![0.0; n], k2: vec![0.0; n], k3: vec![0.0; n], k4: vec![0.0; n], tmp: vec![0.0; n] }
    }

    fn step(&mut self, f: &FieldHandle, x: &mut [f64], dt: f64) {
        let n = x.len();
        f.eval_unchecked(x, &mut self.k1);
        for i in 0..n {
            self.tmp[i] = x[i] + 0.5 * dt * self.k1[i];
        }
        f.eval_unchecked(&self.tmp, &mut self.k2);
        for i in 0..n {
            self.tmp[i] = x[i] + 0.5 * dt * self.k2[i];
        }
        f.eval_unchecked(&self.tmp, &mut self.k3);
        for i in 0..n {
            self.tmp[i] = x[i] + dt * self.k3[i];
        }
        f.eval_unchecked(&self.tmp, &mut self.k4);
        for i in 0..n {
            x[i] += dt / 6.0 * (self.k1[i] + 2.0 * self.k2[i] + 2.0 * self.k3[i] + self.k4[i]);
        }
    }
}

/// One classical Runge-Kutta step from `x`.
pub fn rk4_step(f: &FieldHandle, x: &[f64], dt: f64) -> Result<Vec<f64>> {
    if x.len() != f.dim() {
        return Err(Error::StateLength { expected: f.dim(), found: x.len() });
    }
    let mut y = x.to_vec();
    Rk4::new(x.len()).step(f, &mut y, dt);
    Ok(y)
}

fn check_args(f: &FieldHandle, x0: &[f64], dt: f64, steps: usize) -> Result<()> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidStep(format!("step size must be positive, got {}", dt)));
    }
    if steps == 0 {
        return Err(Error::InvalidStep("need at least one step".into()));
    }
    if x0.len() != f.dim() {
        return Err(Error::StateLength { expected: f.dim(), found: x0.len() });
    }
    if x0.iter().any(|v| !v.is_finite()) {
        return Err(Error::Divergent { step: 0 });
    }
    Ok(())
}

/// Runs `steps` RK4 steps, calling `visit(t, x)` at every grid point
/// including the initial one, without storing the path.
pub fn integrate_with<V>(f: &FieldHandle, x0: &[f64], dt: f64, steps: usize, mut visit: V) -> Result<Vec<f64>>
where
    V: FnMut(f64, &[f64]),
{
    check_args(f, x0, dt, steps)?;
    let mut x = x0.to_vec();
    let mut rk = Rk4::new(x.len());
    visit(0.0, &x);
    for step in 1..=steps {
        rk.step(f, &mut x, dt);
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Divergent { step });
        }
        visit(step as f64 * dt, &x);
    }
    Ok(x)
}

/// Fixed-step RK4 from `x0`, keeping every state.
pub fn integrate(f: &FieldHandle, x0: &[f64], dt: f64, steps: usize) -> Result<Trajectory> {
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    integrate_with(f, x0, dt, steps, |t, x| {
        times.push(t);
        states.push(x.to_vec());
    })?;
    Ok(Trajectory { times, states, dt, method: "rk4" })
}
