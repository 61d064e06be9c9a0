//! Separability analysis for multipartite pure quantum states.
//!
//! A pure state over n parties is fully separable exactly when its amplitude
//! tensor has rank one in every single-party flattening. This crate decides
//! that three independent ways — 2x2 minors of the flattenings, amplitude
//! products over constraint quadruples, and purity of the single-party
//! marginals — computes the constraint-variance entanglement measure `d_e`
//! and the bipartite |det M| local-unitary invariant, and constructively
//! recovers the local vectors of separable states.
//!
//! ```
//! use qsep_core::{ghz, is_separable_minors, d_e, DEFAULT_TOL};
//!
//! let state = ghz(3).unwrap();
//! let verdict = is_separable_minors(&state, DEFAULT_TOL).unwrap();
//! assert!(!verdict.separable);
//! assert!((d_e(&state).unwrap() - 0.75).abs() < 1e-12);
//! ```

pub mod constraints;
pub mod factor;
pub mod generators;
pub mod linalg;
pub mod measures;
pub mod separability;
pub mod state;

pub use constraints::{
    enumerate_constraints, pair_condition, sum_xor_condition, ConstraintError, ConstraintQuad,
    MAX_TOTAL_DIM,
};
pub use factor::{
    factor, three_qubit_product_identity, verify_reconstruction, FactorError, Factorization,
    DEFAULT_FACTOR_TOL,
};
pub use generators::{
    ghz, haar_unitary, random_product_state, random_product_state_with_locals, random_state, w,
};
pub use linalg::{
    det, hermitian_eigenvalues, minor2, purity, scan_minors, ComplexMatrix, LinalgError, MinorScan,
    MinorViolation,
};
pub use measures::{
    d_e, d_e_max_two_qubit_check, det_invariant, lu_equiv_two_qubit, schmidt_two_qubit,
    MeasureError, TwoQubitSpectrum,
};
pub use separability::{
    det_necessary, is_separable_minors, is_separable_pairs, oracle_separable, Method,
    SeparabilityError, Verdict, Witness, DEFAULT_TOL,
};
pub use state::{decode, encode, MultiIndex, PureState, StateError, DEFAULT_NORM_TOL};
