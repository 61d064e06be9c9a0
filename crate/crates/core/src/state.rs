//! Pure-state representation: amplitude tensors over an ordered list of
//! parties, mixed-radix indexing, flattening matrices, and reduced density
//! matrices.
//!
//! Amplitudes are stored flat in big-endian mixed-radix order with party 1
//! most significant, so for three qubits the offsets 0..8 spell out
//! |000>, |001>, ..., |111>.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::ComplexMatrix;

/// Default tolerance on |sum of |a|^2 - 1| accepted by [`PureState::new`].
pub const DEFAULT_NORM_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum StateError {
    #[error("every party dimension must be at least 2 (got {0})")]
    DimensionTooSmall(usize),
    #[error("at least one party is required")]
    NoParties,
    #[error("expected {expected} amplitudes for the given dimensions, got {got}")]
    AmplitudeCount { expected: usize, got: usize },
    #[error("state norm {norm} deviates from 1 by more than {tol:e}")]
    NotNormalized { norm: f64, tol: f64 },
    #[error("amplitudes must be finite and not all zero")]
    DegenerateAmplitudes,
    #[error("digit {digit} at party {party} exceeds dimension {dim}")]
    DigitOutOfRange {
        party: usize,
        digit: usize,
        dim: usize,
    },
    #[error("index has {got} digits but the system has {expected} parties")]
    DigitCount { expected: usize, got: usize },
    #[error("party {party} out of range 1..={parties}")]
    PartyOutOfRange { party: usize, parties: usize },
    #[error("flat offset {offset} out of range for total dimension {total}")]
    OffsetOutOfRange { offset: usize, total: usize },
    #[error("operator is {rows}x{cols} but party {party} has dimension {dim}")]
    OperatorShape {
        party: usize,
        dim: usize,
        rows: usize,
        cols: usize,
    },
    #[error("a generator needs at least 2 parties (got {0})")]
    TooFewParties(usize),
}

/// Mixed-radix index (i_1, ..., i_n) addressing one amplitude; party 1 is the
/// most significant digit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    digits: Vec<usize>,
}

impl MultiIndex {
    pub fn new(digits: Vec<usize>, dims: &[usize]) -> Result<Self, StateError> {
        if digits.len() != dims.len() {
            return Err(StateError::DigitCount {
                expected: dims.len(),
                got: digits.len(),
            });
        }
        for (t, (&digit, &dim)) in digits.iter().zip(dims).enumerate() {
            if digit >= dim {
                return Err(StateError::DigitOutOfRange {
                    party: t + 1,
                    digit,
                    dim,
                });
            }
        }
        Ok(MultiIndex { digits })
    }

    /// Decodes a flat offset back into per-party digits.
    pub fn from_offset(offset: usize, dims: &[usize]) -> Result<Self, StateError> {
        let total = total_dim(dims);
        if offset >= total {
            return Err(StateError::OffsetOutOfRange { offset, total });
        }
        let mut digits = vec![0usize; dims.len()];
        let mut rem = offset;
        for (t, &dim) in dims.iter().enumerate().rev() {
            digits[t] = rem % dim;
            rem /= dim;
        }
        Ok(MultiIndex { digits })
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    /// Digit of the 1-based party `t`.
    pub fn digit(&self, party: usize) -> usize {
        self.digits[party - 1]
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Big-endian mixed-radix flat offset of this index.
    pub fn encode(&self, dims: &[usize]) -> Result<usize, StateError> {
        if self.digits.len() != dims.len() {
            return Err(StateError::DigitCount {
                expected: dims.len(),
                got: self.digits.len(),
            });
        }
        let mut offset = 0usize;
        for (t, (&digit, &dim)) in self.digits.iter().zip(dims).enumerate() {
            if digit >= dim {
                return Err(StateError::DigitOutOfRange {
                    party: t + 1,
                    digit,
                    dim,
                });
            }
            offset = offset * dim + digit;
        }
        Ok(offset)
    }
}

pub(crate) fn total_dim(dims: &[usize]) -> usize {
    dims.iter().product()
}

fn validate_dims(dims: &[usize]) -> Result<(), StateError> {
    if dims.is_empty() {
        return Err(StateError::NoParties);
    }
    for &d in dims {
        if d < 2 {
            return Err(StateError::DimensionTooSmall(d));
        }
    }
    Ok(())
}

/// Pure state of a multipartite system: per-party dimensions plus the flat
/// amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Builds a state, requiring unit norm within [`DEFAULT_NORM_TOL`].
    pub fn new(dims: Vec<usize>, amps: Vec<Complex64>) -> Result<Self, StateError> {
        Self::with_norm_tolerance(dims, amps, DEFAULT_NORM_TOL)
    }

    /// Builds a state, requiring unit norm within `tol`.
    pub fn with_norm_tolerance(
        dims: Vec<usize>,
        amps: Vec<Complex64>,
        tol: f64,
    ) -> Result<Self, StateError> {
        let state = Self::new_unnormalized(dims, amps)?;
        let norm = state.norm();
        if (norm - 1.0).abs() > tol {
            return Err(StateError::NotNormalized { norm, tol });
        }
        Ok(state)
    }

    /// Builds a state without the unit-norm check. The separability criteria
    /// are scale invariant; the entanglement measures are not.
    pub fn new_unnormalized(dims: Vec<usize>, amps: Vec<Complex64>) -> Result<Self, StateError> {
        validate_dims(&dims)?;
        let expected = total_dim(&dims);
        if amps.len() != expected {
            return Err(StateError::AmplitudeCount {
                expected,
                got: amps.len(),
            });
        }
        let mut norm_sq = 0.0;
        for a in &amps {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(StateError::DegenerateAmplitudes);
            }
            norm_sq += a.norm_sqr();
        }
        if norm_sq <= f64::MIN_POSITIVE {
            return Err(StateError::DegenerateAmplitudes);
        }
        Ok(PureState { dims, amps })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_parties(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn amplitude(&self, idx: &MultiIndex) -> Result<Complex64, StateError> {
        Ok(self.amps[idx.encode(&self.dims)?])
    }

    /// Returns a unit-norm copy (criteria work on this so that verdicts are
    /// invariant under global scaling).
    pub fn normalized(&self) -> PureState {
        let norm = self.norm();
        PureState {
            dims: self.dims.clone(),
            amps: self.amps.iter().map(|&a| a / norm).collect(),
        }
    }

    fn check_party(&self, party: usize) -> Result<(), StateError> {
        if party == 0 || party > self.num_parties() {
            return Err(StateError::PartyOutOfRange {
                party,
                parties: self.num_parties(),
            });
        }
        Ok(())
    }

    /// The flattening M_t: amplitudes reshaped so party `t`'s digit indexes
    /// the columns and the remaining digits, in original party order, index
    /// the rows. Party labels are 1-based to match the M_1 ... M_n convention.
    pub fn flatten(&self, party: usize) -> Result<Flattening, StateError> {
        self.check_party(party)?;
        let t = party - 1;
        let d_t = self.dims[t];
        let rows = self.total_dim() / d_t;

        // Stride of party t's digit in the flat offset.
        let stride: usize = self.dims[t + 1..].iter().product();
        let mut entries = vec![Complex64::new(0.0, 0.0); self.total_dim()];
        for r in 0..rows {
            // Row r decodes big-endian over the remaining dims; splice the
            // column digit back in at party t's position.
            let hi = r / stride; // digits of parties before t
            let lo = r % stride; // digits of parties after t
            let base = (hi * d_t) * stride + lo;
            for c in 0..d_t {
                entries[r * d_t + c] = self.amps[base + c * stride];
            }
        }
        Ok(Flattening {
            party,
            matrix: ComplexMatrix::new(rows, d_t, entries),
        })
    }

    /// For a bipartite system, the amplitude matrix M with a_(ij) at row i
    /// (party 1) and column j (party 2).
    pub fn amplitude_matrix(&self) -> Result<ComplexMatrix, StateError> {
        if self.num_parties() != 2 {
            return Err(StateError::PartyOutOfRange {
                party: 2,
                parties: self.num_parties(),
            });
        }
        Ok(ComplexMatrix::new(
            self.dims[0],
            self.dims[1],
            self.amps.clone(),
        ))
    }

    /// Reduced density operator for everything except party `t`, i.e. the
    /// operator left after tracing out party `t`: M_t M_t^dagger, a square
    /// matrix over the remaining parties' joint basis.
    pub fn remaining_density(&self, party: usize) -> Result<ComplexMatrix, StateError> {
        let m = self.flatten(party)?.into_matrix();
        Ok(m.mul(&m.dagger()).expect("shapes agree by construction"))
    }

    /// Single-party marginal rho^(t) obtained by tracing out everyone else:
    /// rho_(c, c') = sum_r a(r, c) conj(a(r, c')), a d_t x d_t matrix.
    pub fn party_marginal(&self, party: usize) -> Result<ComplexMatrix, StateError> {
        let m = self.flatten(party)?.into_matrix();
        Ok(m.transpose()
            .mul(&m.conj())
            .expect("shapes agree by construction"))
    }

    /// Applies a single-party operator `u` (d_t x d_t) to party `t`.
    pub fn apply_local_operator(
        &self,
        party: usize,
        u: &ComplexMatrix,
    ) -> Result<PureState, StateError> {
        self.check_party(party)?;
        let t = party - 1;
        let d_t = self.dims[t];
        if u.rows() != d_t || u.cols() != d_t {
            return Err(StateError::OperatorShape {
                party,
                dim: d_t,
                rows: u.rows(),
                cols: u.cols(),
            });
        }
        let stride: usize = self.dims[t + 1..].iter().product();
        let blocks = self.total_dim() / (d_t * stride);
        let mut out = vec![Complex64::new(0.0, 0.0); self.total_dim()];
        for b in 0..blocks {
            for lo in 0..stride {
                let base = b * d_t * stride + lo;
                for row in 0..d_t {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for col in 0..d_t {
                        acc += u[(row, col)] * self.amps[base + col * stride];
                    }
                    out[base + row * stride] = acc;
                }
            }
        }
        PureState::new_unnormalized(self.dims.clone(), out)
    }
}

/// The d^(n-1) x d amplitude matrix M_t of one party.
#[derive(Debug, Clone, PartialEq)]
pub struct Flattening {
    party: usize,
    matrix: ComplexMatrix,
}

impl Flattening {
    /// 1-based label of the party whose digit runs over the columns.
    pub fn party(&self) -> usize {
        self.party
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

/// Big-endian mixed-radix flat offset of `digits` under `dims`.
pub fn encode(digits: &[usize], dims: &[usize]) -> Result<usize, StateError> {
    MultiIndex::new(digits.to_vec(), dims)?.encode(dims)
}

/// Inverse of [`encode`].
pub fn decode(offset: usize, dims: &[usize]) -> Result<Vec<usize>, StateError> {
    Ok(MultiIndex::from_offset(offset, dims)?.digits().to_vec())
}
