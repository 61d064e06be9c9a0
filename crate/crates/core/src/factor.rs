//! Constructive factorization of separable states.
//!
//! For a fully separable state the amplitude tensor is rank one, so every
//! local vector can be read off a one-dimensional slice through any fixed
//! anchor index. Using the maximum-magnitude amplitude as the anchor keeps
//! the slices well conditioned; the reconstruction residual then certifies
//! or refutes separability.

use num_complex::Complex64;
use thiserror::Error;

use crate::separability::{is_separable_minors, SeparabilityError, DEFAULT_TOL};
use crate::state::{PureState, StateError};

/// Default bound on the l2 reconstruction residual accepted by [`factor`].
/// Looser than the per-minor tolerance because the residual aggregates every
/// amplitude.
pub const DEFAULT_FACTOR_TOL: f64 = 1e-8;

#[derive(Debug, Error, PartialEq)]
pub enum FactorError {
    #[error("state is not separable: reconstruction residual {residual}")]
    Entangled { residual: f64 },
    #[error("factorization has {got} local vectors, state has {expected} parties")]
    PartyCountMismatch { expected: usize, got: usize },
    #[error("local vector for party {party} has length {got}, expected {expected}")]
    LocalLength {
        party: usize,
        expected: usize,
        got: usize,
    },
    #[error("expected a three-qubit state, got dimensions {0:?}")]
    NotThreeQubit(Vec<usize>),
    #[error("input does not pass the minor criterion")]
    NotSeparable,
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Separability(#[from] SeparabilityError),
}

/// One local vector per party plus the global phase tying them back to the
/// input amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    /// Unit-norm local state vectors, one per party in order.
    pub locals: Vec<Vec<Complex64>>,
    /// Chosen so the reconstructed anchor amplitude matches the input
    /// exactly. For unit-norm inputs its modulus is 1 up to the residual;
    /// for unnormalized inputs it also absorbs the overall scale.
    pub global_phase: Complex64,
    /// l2 distance between the input and phase * (x1 tensor ... tensor xn).
    pub residual: f64,
}

/// Recovers local vectors from `state` via anchor slices. Succeeds iff the
/// reconstruction residual is at most `tol`; the error carries the residual
/// otherwise.
pub fn factor(state: &PureState, tol: f64) -> Result<Factorization, FactorError> {
    let dims = state.dims();
    let amps = state.amplitudes();

    // Anchor: maximum-magnitude amplitude, ties broken by lowest offset.
    let mut anchor = 0usize;
    let mut best = -1.0_f64;
    for (offset, a) in amps.iter().enumerate() {
        let mag = a.norm();
        if mag > best {
            best = mag;
            anchor = offset;
        }
    }
    let anchor_digits = crate::state::decode(anchor, dims)?;

    let mut locals: Vec<Vec<Complex64>> = Vec::with_capacity(dims.len());
    for (t, &d) in dims.iter().enumerate() {
        let stride: usize = dims[t + 1..].iter().product();
        let base = anchor - anchor_digits[t] * stride;
        let mut local: Vec<Complex64> = (0..d).map(|c| amps[base + c * stride]).collect();
        let norm = local.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        // The slice contains the anchor amplitude, so its norm is positive.
        for z in &mut local {
            *z /= norm;
        }
        locals.push(local);
    }

    let mut anchor_product = Complex64::new(1.0, 0.0);
    for (t, local) in locals.iter().enumerate() {
        anchor_product *= local[anchor_digits[t]];
    }
    let global_phase = amps[anchor] / anchor_product;

    let residual = reconstruction_distance(amps, &locals, global_phase);
    if residual > tol {
        return Err(FactorError::Entangled { residual });
    }
    Ok(Factorization {
        locals,
        global_phase,
        residual,
    })
}

/// l2 distance between `state` and the factorization's reconstruction.
pub fn verify_reconstruction(state: &PureState, fact: &Factorization) -> Result<f64, FactorError> {
    let dims = state.dims();
    if fact.locals.len() != dims.len() {
        return Err(FactorError::PartyCountMismatch {
            expected: dims.len(),
            got: fact.locals.len(),
        });
    }
    for (t, (local, &d)) in fact.locals.iter().zip(dims).enumerate() {
        if local.len() != d {
            return Err(FactorError::LocalLength {
                party: t + 1,
                expected: d,
                got: local.len(),
            });
        }
    }
    Ok(reconstruction_distance(
        state.amplitudes(),
        &fact.locals,
        fact.global_phase,
    ))
}

fn reconstruction_distance(amps: &[Complex64], locals: &[Vec<Complex64>], phase: Complex64) -> f64 {
    let mut product = vec![phase];
    for local in locals {
        let mut next = Vec::with_capacity(product.len() * local.len());
        for &p in &product {
            for &x in local {
                next.push(p * x);
            }
        }
        product = next;
    }
    amps.iter()
        .zip(product.iter())
        .map(|(a, r)| (a - r).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// On separable three-qubit states the amplitudes obey
/// a3 a5 a6 = a1 a7 a6 = a0 a7^2. Verifies both equalities within `tol`;
/// rejects inputs that fail the minor criterion.
pub fn three_qubit_product_identity(state: &PureState, tol: f64) -> Result<bool, FactorError> {
    if state.dims() != [2, 2, 2] {
        return Err(FactorError::NotThreeQubit(state.dims().to_vec()));
    }
    if !is_separable_minors(state, DEFAULT_TOL)?.separable {
        return Err(FactorError::NotSeparable);
    }
    let a = state.amplitudes();
    let reference = a[0] * a[7] * a[7];
    let first = (a[3] * a[5] * a[6] - reference).norm() <= tol;
    let second = (a[1] * a[7] * a[6] - reference).norm() <= tol;
    Ok(first && second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{ghz, random_product_state, random_product_state_with_locals};

    const INV_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn factors_explicit_product() {
        // |0> x |+>
        let state = PureState::new(
            vec![2, 2],
            vec![
                c(INV_SQRT2, 0.0),
                c(INV_SQRT2, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
            ],
        )
        .unwrap();
        let fact = factor(&state, DEFAULT_FACTOR_TOL).unwrap();
        assert!(fact.residual <= 1e-12);
        assert!((fact.locals[0][0] - c(1.0, 0.0)).norm() <= 1e-12);
        assert!(fact.locals[0][1].norm() <= 1e-12);
        assert!((fact.locals[1][0] - c(INV_SQRT2, 0.0)).norm() <= 1e-12);
        assert!((fact.locals[1][1] - c(INV_SQRT2, 0.0)).norm() <= 1e-12);
        assert!((fact.global_phase.norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn recovers_generator_locals_up_to_phase() {
        for seed in 0..100 {
            let dims = [3, 2, 4];
            let (state, truth) = random_product_state_with_locals(&dims, seed).unwrap();
            let fact = factor(&state, DEFAULT_FACTOR_TOL).unwrap();
            assert!(
                fact.residual <= 1e-9,
                "seed {seed}: residual {}",
                fact.residual
            );
            for (recovered, expected) in fact.locals.iter().zip(&truth) {
                let overlap: Complex64 = recovered
                    .iter()
                    .zip(expected)
                    .map(|(&r, &e)| r.conj() * e)
                    .sum();
                assert!(
                    overlap.norm() >= 1.0 - 1e-9,
                    "seed {seed}: fidelity {}",
                    overlap.norm()
                );
            }
        }
    }

    #[test]
    fn local_magnitudes_match_marginal_sums() {
        // |x_c| should equal the square root of the summed |a|^2 over the
        // other parties, i.e. the column norms of the flattening.
        for seed in 0..50 {
            let dims = [2, 3, 2];
            let state = random_product_state(&dims, seed).unwrap();
            let fact = factor(&state, DEFAULT_FACTOR_TOL).unwrap();
            for (t, local) in fact.locals.iter().enumerate() {
                let m = state.flatten(t + 1).unwrap().into_matrix();
                for (col, x) in local.iter().enumerate() {
                    let col_norm = (0..m.rows())
                        .map(|r| m[(r, col)].norm_sqr())
                        .sum::<f64>()
                        .sqrt();
                    assert!(
                        (x.norm() - col_norm).abs() <= 1e-9,
                        "seed {seed} party {} col {col}",
                        t + 1
                    );
                }
            }
        }
    }

    #[test]
    fn ghz_is_rejected_with_known_residual() {
        // Anchor lands on |000>, every local slice is (1, 0), so the
        // reconstruction is (1/sqrt(2)) |000> and the distance to GHZ is
        // sqrt(|1/sqrt(2)|^2) = 1/sqrt(2).
        let err = factor(&ghz(3).unwrap(), DEFAULT_FACTOR_TOL).unwrap_err();
        match err {
            FactorError::Entangled { residual } => {
                assert!((residual - INV_SQRT2).abs() <= 1e-12);
            }
            other => panic!("expected entangled error, got {other:?}"),
        }
    }

    #[test]
    fn verify_reconstruction_matches_factor_residual() {
        let state = random_product_state(&[2, 2, 2], 17).unwrap();
        let fact = factor(&state, DEFAULT_FACTOR_TOL).unwrap();
        let residual = verify_reconstruction(&state, &fact).unwrap();
        assert!((residual - fact.residual).abs() <= 1e-15);

        // Mismatched factorization leaves a visible gap.
        let other = random_product_state(&[2, 2, 2], 18).unwrap();
        let other_fact = factor(&other, DEFAULT_FACTOR_TOL).unwrap();
        assert!(verify_reconstruction(&state, &other_fact).unwrap() > 0.1);

        let wrong_dims = factor(&random_product_state(&[2, 2], 1).unwrap(), 1e-6).unwrap();
        assert!(matches!(
            verify_reconstruction(&state, &wrong_dims),
            Err(FactorError::PartyCountMismatch { .. })
        ));
    }

    #[test]
    fn product_identity_on_products() {
        // |000>: all products vanish.
        let mut amps = vec![c(0.0, 0.0); 8];
        amps[0] = c(1.0, 0.0);
        let zero = PureState::new(vec![2, 2, 2], amps).unwrap();
        assert!(three_qubit_product_identity(&zero, 1e-12).unwrap());

        // |+>^3: both sides equal (1/sqrt(8))^3.
        let plus = PureState::new(vec![2, 2, 2], vec![c(1.0 / 8f64.sqrt(), 0.0); 8]).unwrap();
        assert!(three_qubit_product_identity(&plus, 1e-12).unwrap());

        for seed in 0..100 {
            let state = random_product_state(&[2, 2, 2], seed).unwrap();
            assert!(
                three_qubit_product_identity(&state, 1e-12).unwrap(),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn product_identity_rejects_entangled_and_wrong_shape() {
        assert!(matches!(
            three_qubit_product_identity(&ghz(3).unwrap(), 1e-12),
            Err(FactorError::NotSeparable)
        ));
        assert!(matches!(
            three_qubit_product_identity(&ghz(4).unwrap(), 1e-12),
            Err(FactorError::NotThreeQubit(_))
        ));
    }

    #[test]
    fn factor_verdict_consistency() {
        use crate::generators::random_state;
        use crate::separability::{is_separable_pairs, oracle_separable};
        for seed in 0..50 {
            let product = random_product_state(&[2, 2, 2], seed).unwrap();
            let dense = random_state(&[2, 2, 2], seed).unwrap();
            assert!(factor(&product, DEFAULT_FACTOR_TOL).is_ok());
            assert!(factor(&dense, DEFAULT_FACTOR_TOL).is_err());
            assert!(is_separable_pairs(&product, DEFAULT_TOL).unwrap().separable);
            assert!(!oracle_separable(&dense, DEFAULT_TOL).unwrap().separable);
        }
    }
}
