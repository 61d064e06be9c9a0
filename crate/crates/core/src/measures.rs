//! Entanglement measures: the constraint-variance measure D_E, the |det M|
//! local-unitary invariant for bipartite systems, and the closed-form
//! two-qubit Schmidt spectrum.

use thiserror::Error;

use crate::constraints::{enumerate_constraints, ConstraintError, MAX_TOTAL_DIM};
use crate::linalg::{det, LinalgError};
use crate::separability::SeparabilityError;
use crate::state::{PureState, StateError};

#[derive(Debug, Error, PartialEq)]
pub enum MeasureError {
    #[error("total dimension {0} exceeds the measure cap {MAX_TOTAL_DIM}")]
    SizeCapExceeded(usize),
    #[error("expected a two-qubit state, got dimensions {0:?}")]
    NotTwoQubit(Vec<usize>),
    #[error("expected a bipartite state with equal dimensions, got {0:?}")]
    NotBipartiteSquare(Vec<usize>),
    #[error("state norm {0} is too far from 1 for a measure")]
    NotNormalized(f64),
    #[error("epsilon = {0} exceeds 1/2; the input cannot be a normalized two-qubit state")]
    EpsilonOutOfRange(f64),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
    #[error(transparent)]
    Separability(#[from] SeparabilityError),
}

/// Measures presuppose unit norm; reject inputs that are visibly scaled.
const MEASURE_NORM_TOL: f64 = 1e-6;

fn check_measure_input(state: &PureState) -> Result<(), MeasureError> {
    if state.total_dim() > MAX_TOTAL_DIM {
        return Err(MeasureError::SizeCapExceeded(state.total_dim()));
    }
    let norm = state.norm();
    if (norm - 1.0).abs() > MEASURE_NORM_TOL {
        return Err(MeasureError::NotNormalized(norm));
    }
    Ok(())
}

/// The variance-style entanglement measure: the sum of
/// |a_i a_j - a_k a_l|^2 over all canonical constraint quadruples.
///
/// Zero exactly on separable states. For two qubits there is a single
/// quadruple and d_e reduces to |ad - bc|^2.
pub fn d_e(state: &PureState) -> Result<f64, MeasureError> {
    check_measure_input(state)?;
    let amps = state.amplitudes();
    // Kahan summation keeps the result reproducible and accurate across the
    // multi-million-term sums that larger systems produce.
    let mut sum = 0.0_f64;
    let mut carry = 0.0_f64;
    for quad in enumerate_constraints(state.dims())? {
        let term = (amps[quad.i] * amps[quad.j] - amps[quad.k] * amps[quad.l]).norm_sqr();
        let y = term - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    Ok(sum)
}

/// Checks the two-qubit bound d_e <= 1/4 and reports whether `state` attains
/// the maximum within 1e-9.
pub fn d_e_max_two_qubit_check(state: &PureState) -> Result<bool, MeasureError> {
    require_two_qubit(state)?;
    let value = d_e(state)?;
    assert!(
        value <= 0.25 + 1e-12,
        "d_e = {value} violates the two-qubit bound 1/4"
    );
    Ok((value - 0.25).abs() <= 1e-9)
}

/// |det M| of the bipartite amplitude matrix: invariant under local unitary
/// operations, and zero on every separable state.
pub fn det_invariant(state: &PureState) -> Result<f64, MeasureError> {
    if state.num_parties() != 2 || state.dims()[0] != state.dims()[1] {
        return Err(MeasureError::NotBipartiteSquare(state.dims().to_vec()));
    }
    check_measure_input(state)?;
    Ok(det(&state.amplitude_matrix()?)?.norm())
}

/// Two-qubit Schmidt data in closed form: epsilon = |ad - bc| and the
/// marginal eigenvalues lambda_pm = (1 +- sqrt(1 - 4 eps^2)) / 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitSpectrum {
    /// |ad - bc|, in [0, 1/2] for normalized states.
    pub epsilon: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
}

fn require_two_qubit(state: &PureState) -> Result<(), MeasureError> {
    if state.dims() != [2, 2] {
        return Err(MeasureError::NotTwoQubit(state.dims().to_vec()));
    }
    Ok(())
}

/// Closed-form Schmidt spectrum of a normalized two-qubit state.
pub fn schmidt_two_qubit(state: &PureState) -> Result<TwoQubitSpectrum, MeasureError> {
    require_two_qubit(state)?;
    check_measure_input(state)?;
    let a = state.amplitudes();
    let epsilon = (a[0] * a[3] - a[1] * a[2]).norm();
    if epsilon > 0.5 + 1e-12 {
        return Err(MeasureError::EpsilonOutOfRange(epsilon));
    }
    // Clamp the discriminant: rounding can push it a hair below zero at the
    // maximally entangled boundary.
    let disc = (1.0 - 4.0 * epsilon * epsilon).max(0.0).sqrt();
    Ok(TwoQubitSpectrum {
        epsilon,
        lambda_plus: (1.0 + disc) / 2.0,
        lambda_minus: (1.0 - disc) / 2.0,
    })
}

/// Two-qubit local-unitary equivalence test: psi ~ phi iff their d_e values
/// agree (within `tol`).
pub fn lu_equiv_two_qubit(
    psi: &PureState,
    phi: &PureState,
    tol: f64,
) -> Result<bool, MeasureError> {
    require_two_qubit(psi)?;
    require_two_qubit(phi)?;
    Ok((d_e(psi)? - d_e(phi)?).abs() <= tol)
}
