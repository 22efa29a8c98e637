//! Coupled cell systems on graphs: admissible, gradient and Hamiltonian
//! vector fields, their restriction to synchrony subspaces, fixed-step
//! integration and numerical certificates.

mod admissible;
mod coupling;
mod field;
mod integrate;
mod restrict;
mod verify;

pub use admissible::{admissible_field, AdmissibleCoupling};
pub use coupling::{
    gradient_field, gradient_function_eval, hamiltonian_field, hamiltonian_function_eval,
    requires_symmetric_beta, CouplingKind, CouplingSpec, Potential, DEFAULT_MAX_DEGREE,
};
pub use field::{custom_field, FieldHandle, FieldKind, StateLayout};
pub use integrate::{integrate, integrate_with, rk4_step, Trajectory};
pub use restrict::{embed, restrict_field, sync_spread, sync_violation, REPRESENTATIVE_TOL};
pub use verify::{
    energy_drift, flow_invariance_deviation, is_gradient_numeric, is_hamiltonian_numeric,
    jacobian, sample_points, scaling_check, VerificationReport, DEFAULT_SEED, FD_STEP,
};
