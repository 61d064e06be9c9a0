//! The separability deciders.
//!
//! A multipartite pure state is fully separable iff every 2x2 minor of every
//! flattening M_1, ..., M_n vanishes (minor criterion), iff every constraint
//! quadruple satisfies a_i a_j = a_k a_l (pair criterion). Both are exact
//! characterizations; the reduced-density purity check is kept alongside them
//! as an independent oracle. All deciders normalize their input first, so
//! verdicts are invariant under global phase and global scaling.

use num_complex::Complex64;
use thiserror::Error;

use crate::constraints::{enumerate_constraints, ConstraintError, ConstraintQuad, MAX_TOTAL_DIM};
use crate::linalg::{det, purity, scan_minors, LinalgError};
use crate::state::{PureState, StateError};

/// Default scale-aware zero tolerance for minors, pair residuals, and
/// marginal purities. Far below the natural 1/sqrt(total dimension) amplitude
/// scale at the sizes this crate accepts.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Error, PartialEq)]
pub enum SeparabilityError {
    #[error("total dimension {0} exceeds the decider cap {MAX_TOTAL_DIM}")]
    SizeCapExceeded(usize),
    #[error("expected a bipartite state with equal dimensions, got {0:?}")]
    NotBipartiteSquare(Vec<usize>),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
}

/// Which criterion produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// 2x2 minors of every flattening.
    Minors,
    /// Amplitude products over canonical constraint quadruples.
    Pairs,
    /// Purity of every single-party marginal.
    Oracle,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Minors => "minors",
            Method::Pairs => "pairs",
            Method::Oracle => "oracle",
        }
    }
}

/// Evidence for an entangled verdict: the first violation in the decider's
/// deterministic scan order.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Minor {
        /// 1-based party of the violating flattening.
        party: usize,
        r1: usize,
        r2: usize,
        c1: usize,
        c2: usize,
        value: Complex64,
    },
    Pair {
        quad: ConstraintQuad,
        residual: f64,
    },
    ImpureMarginal {
        /// 1-based party whose marginal is mixed.
        party: usize,
        purity: f64,
    },
}

/// Separability decision plus the witness that justifies it.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub separable: bool,
    pub method: Method,
    /// Present exactly when `separable` is false.
    pub witness: Option<Witness>,
    pub tolerance: f64,
}

fn check_cap(state: &PureState) -> Result<(), SeparabilityError> {
    if state.total_dim() > MAX_TOTAL_DIM {
        return Err(SeparabilityError::SizeCapExceeded(state.total_dim()));
    }
    Ok(())
}

/// Minor criterion: separable iff every 2x2 minor of every flattening is
/// zero under the scale-aware test. Scan order is party ascending, then rows
/// ascending, then columns ascending; the witness is the first violation.
pub fn is_separable_minors(state: &PureState, tol: f64) -> Result<Verdict, SeparabilityError> {
    check_cap(state)?;
    let normalized = state.normalized();
    for party in 1..=normalized.num_parties() {
        let flattening = normalized.flatten(party)?;
        let scan = scan_minors(flattening.matrix(), tol, 1.0);
        if let Some(v) = scan.first_violation {
            return Ok(Verdict {
                separable: false,
                method: Method::Minors,
                witness: Some(Witness::Minor {
                    party,
                    r1: v.r1,
                    r2: v.r2,
                    c1: v.c1,
                    c2: v.c2,
                    value: v.value,
                }),
                tolerance: tol,
            });
        }
    }
    Ok(Verdict {
        separable: true,
        method: Method::Minors,
        witness: None,
        tolerance: tol,
    })
}

/// Pair criterion: separable iff |a_i a_j - a_k a_l| is zero under the
/// scale-aware test for every canonical constraint quadruple. The witness is
/// the first violating quadruple in (i, j) ascending enumeration order.
pub fn is_separable_pairs(state: &PureState, tol: f64) -> Result<Verdict, SeparabilityError> {
    check_cap(state)?;
    let normalized = state.normalized();
    let amps = normalized.amplitudes();
    for quad in enumerate_constraints(normalized.dims())? {
        let p1 = amps[quad.i] * amps[quad.j];
        let p2 = amps[quad.k] * amps[quad.l];
        let residual = (p1 - p2).norm();
        if residual > tol * (p1.norm() + p2.norm()).max(1.0) {
            return Ok(Verdict {
                separable: false,
                method: Method::Pairs,
                witness: Some(Witness::Pair { quad, residual }),
                tolerance: tol,
            });
        }
    }
    Ok(Verdict {
        separable: true,
        method: Method::Pairs,
        witness: None,
        tolerance: tol,
    })
}

/// Determinant necessary condition for a bipartite system with equal local
/// dimensions: separable implies det(M) = 0. Returns whether det(M) is zero
/// under the scale-aware test — `false` proves entanglement, `true` proves
/// nothing.
pub fn det_necessary(state: &PureState, tol: f64) -> Result<bool, SeparabilityError> {
    if state.num_parties() != 2 || state.dims()[0] != state.dims()[1] {
        return Err(SeparabilityError::NotBipartiteSquare(state.dims().to_vec()));
    }
    check_cap(state)?;
    let m = state.normalized().amplitude_matrix()?;
    let d = det(&m)?;
    Ok(d.norm() <= tol)
}

/// Reduced-density oracle: a pure state is fully separable iff every
/// single-party marginal is pure. Independent of the minor and pair routes.
pub fn oracle_separable(state: &PureState, tol: f64) -> Result<Verdict, SeparabilityError> {
    check_cap(state)?;
    let normalized = state.normalized();
    for party in 1..=normalized.num_parties() {
        let rho = normalized.party_marginal(party)?;
        // Renormalize by the trace so rounding in the marginal cannot shift
        // the purity scale.
        let trace = rho.trace().re;
        let rho = rho.scale(Complex64::new(1.0 / trace, 0.0));
        let p = purity(&rho)?;
        if p < 1.0 - tol {
            return Ok(Verdict {
                separable: false,
                method: Method::Oracle,
                witness: Some(Witness::ImpureMarginal { party, purity: p }),
                tolerance: tol,
            });
        }
    }
    Ok(Verdict {
        separable: true,
        method: Method::Oracle,
        witness: None,
        tolerance: tol,
    })
}
