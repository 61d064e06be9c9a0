//! Canonical entangled states, seeded random state generators, and Haar
//! random unitaries for the test corpora.
//!
//! Every generator is deterministic for a fixed seed (ChaCha8 keyed by the
//! seed), so corpora and CLI output are reproducible across runs.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::ComplexMatrix;
use crate::state::{PureState, StateError};

/// n-qubit GHZ state (|0...0> + |1...1>) / sqrt(2).
pub fn ghz(n: usize) -> Result<PureState, StateError> {
    if n < 2 {
        return Err(StateError::TooFewParties(n));
    }
    let total = 1usize << n;
    let mut amps = vec![Complex64::new(0.0, 0.0); total];
    let v = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[0] = v;
    amps[total - 1] = v;
    PureState::new(vec![2; n], amps)
}

/// n-qubit W state: equal superposition of the n weight-one basis states
/// |2^0>, |2^1>, ..., |2^(n-1)>, each with amplitude 1/sqrt(n).
pub fn w(n: usize) -> Result<PureState, StateError> {
    if n < 2 {
        return Err(StateError::TooFewParties(n));
    }
    let total = 1usize << n;
    let mut amps = vec![Complex64::new(0.0, 0.0); total];
    let v = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    for k in 0..n {
        amps[1 << k] = v;
    }
    PureState::new(vec![2; n], amps)
}

fn standard_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Haar-distributed random state: every amplitude drawn from the standard
/// complex Gaussian (rotation invariant), then normalized.
pub fn random_state(dims: &[usize], seed: u64) -> Result<PureState, StateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total: usize = dims.iter().product();
    let amps: Vec<Complex64> = (0..total).map(|_| standard_complex(&mut rng)).collect();
    let state = PureState::new_unnormalized(dims.to_vec(), amps)?;
    Ok(state.normalized())
}

/// Random fully separable state together with the local vectors it was built
/// from, for tests that need the ground truth.
pub fn random_product_state_with_locals(
    dims: &[usize],
    seed: u64,
) -> Result<(PureState, Vec<Vec<Complex64>>), StateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut locals = Vec::with_capacity(dims.len());
    for &d in dims {
        let mut v: Vec<Complex64> = (0..d).map(|_| standard_complex(&mut rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        // A Gaussian vector is zero with probability zero, but a guard beats
        // a NaN state.
        if norm <= f64::MIN_POSITIVE {
            v[0] = Complex64::new(1.0, 0.0);
        } else {
            for z in &mut v {
                *z /= norm;
            }
        }
        locals.push(v);
    }
    let mut amps = vec![Complex64::new(1.0, 0.0)];
    for local in &locals {
        let mut next = Vec::with_capacity(amps.len() * local.len());
        for &a in &amps {
            for &x in local {
                next.push(a * x);
            }
        }
        amps = next;
    }
    let state = PureState::new(dims.to_vec(), amps)?;
    Ok((state, locals))
}

/// Random fully separable state: an exact tensor product of independently
/// sampled normalized local vectors.
pub fn random_product_state(dims: &[usize], seed: u64) -> Result<PureState, StateError> {
    random_product_state_with_locals(dims, seed).map(|(state, _)| state)
}

/// Haar random unitary: a complex Ginibre matrix orthonormalized column by
/// column (the Gram-Schmidt R has a positive real diagonal, which is exactly
/// the phase fix that makes the distribution Haar).
pub fn haar_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    assert!(dim >= 1, "unitary dimension must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let cols: Vec<Vec<Complex64>> = (0..dim)
            .map(|_| (0..dim).map(|_| standard_complex(&mut rng)).collect())
            .collect();
        if let Some(q) = orthonormalize(&cols) {
            let mut m = ComplexMatrix::zeros(dim, dim);
            for (c, col) in q.iter().enumerate() {
                for (r, &z) in col.iter().enumerate() {
                    m[(r, c)] = z;
                }
            }
            return m;
        }
        // Numerically rank-deficient draw; resample.
    }
}

fn orthonormalize(cols: &[Vec<Complex64>]) -> Option<Vec<Vec<Complex64>>> {
    let dim = cols.len();
    let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for col in cols {
        let mut v = col.clone();
        // Modified Gram-Schmidt: project out previous columns twice for
        // orthogonality at working precision.
        for _ in 0..2 {
            for u in &q {
                let overlap: Complex64 = u
                    .iter()
                    .zip(v.iter())
                    .map(|(&ui, &vi)| ui.conj() * vi)
                    .sum();
                for (ui, vi) in u.iter().zip(v.iter_mut()) {
                    *vi -= overlap * ui;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return None;
        }
        for z in &mut v {
            *z /= norm;
        }
        q.push(v);
    }
    Some(q)
}
