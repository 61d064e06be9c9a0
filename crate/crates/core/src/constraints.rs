//! Index-string combinatorics behind the amplitude-pair separability
//! criterion: the per-site pair condition, the sum/XOR condition for bit
//! strings, and canonical enumeration of constraint quadruples.
//!
//! A quadruple (i, j, k, l) of basis indices is a separability constraint
//! when the digit multisets match site by site: {i_t, j_t} = {k_t, l_t} for
//! every party t. On a product state the amplitude products a_i a_j and
//! a_k a_l then agree, so each quadruple contributes one testable equation.

use thiserror::Error;

use crate::state::{total_dim, MultiIndex, StateError};

/// Cap on the total dimension accepted by [`enumerate_constraints`] and the
/// operations built on it.
pub const MAX_TOTAL_DIM: usize = 4096;

#[derive(Debug, Error, PartialEq)]
pub enum ConstraintError {
    #[error("indices have mismatched digit counts")]
    LengthMismatch,
    #[error("offset {offset} out of range for {bits}-bit strings")]
    OffsetOutOfRange { offset: usize, bits: u32 },
    #[error("total dimension {0} exceeds the enumeration cap {MAX_TOTAL_DIM}")]
    SizeCapExceeded(usize),
    #[error(transparent)]
    State(#[from] StateError),
}

/// A constraint quadruple in canonical form, stored as flat offsets under the
/// big-endian mixed-radix encoding.
///
/// Canonical means i <= j, k <= l, and (i, j) < (k, l) lexicographically;
/// the identity pairing (i, j) = (k, l) is excluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstraintQuad {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
}

impl ConstraintQuad {
    pub fn new(i: usize, j: usize, k: usize, l: usize) -> Self {
        ConstraintQuad { i, j, k, l }
    }

    pub fn is_canonical(&self) -> bool {
        self.i <= self.j && self.k <= self.l && (self.i, self.j) < (self.k, self.l)
    }

    /// Sorts each pair and orders the two pairs. The result compares equal
    /// for every quadruple describing the same constraint.
    pub fn canonicalize(&self) -> ConstraintQuad {
        let (i, j) = if self.i <= self.j {
            (self.i, self.j)
        } else {
            (self.j, self.i)
        };
        let (k, l) = if self.k <= self.l {
            (self.k, self.l)
        } else {
            (self.l, self.k)
        };
        if (i, j) <= (k, l) {
            ConstraintQuad { i, j, k, l }
        } else {
            ConstraintQuad {
                i: k,
                j: l,
                k: i,
                l: j,
            }
        }
    }

    /// The four indices as digit strings under `dims`.
    pub fn indices(&self, dims: &[usize]) -> Result<[MultiIndex; 4], StateError> {
        Ok([
            MultiIndex::from_offset(self.i, dims)?,
            MultiIndex::from_offset(self.j, dims)?,
            MultiIndex::from_offset(self.k, dims)?,
            MultiIndex::from_offset(self.l, dims)?,
        ])
    }

    /// Whether the per-site multiset condition holds under `dims`.
    pub fn satisfies_pair_condition(&self, dims: &[usize]) -> Result<bool, ConstraintError> {
        let [i, j, k, l] = self.indices(dims)?;
        pair_condition(&i, &j, &k, &l)
    }
}

/// True iff {i_t, j_t} = {k_t, l_t} at every site t.
pub fn pair_condition(
    i: &MultiIndex,
    j: &MultiIndex,
    k: &MultiIndex,
    l: &MultiIndex,
) -> Result<bool, ConstraintError> {
    let n = i.len();
    if j.len() != n || k.len() != n || l.len() != n {
        return Err(ConstraintError::LengthMismatch);
    }
    for t in 0..n {
        let (a, b) = (i.digits()[t], j.digits()[t]);
        let (c, d) = (k.digits()[t], l.digits()[t]);
        if (a.min(b), a.max(b)) != (c.min(d), c.max(d)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff i + j = k + l as integers and i XOR j = k XOR l. Defined for
/// n-bit strings only; for local dimensions above 2 use [`pair_condition`].
pub fn sum_xor_condition(
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    bits: u32,
) -> Result<bool, ConstraintError> {
    let limit = 1usize
        .checked_shl(bits)
        .ok_or(ConstraintError::OffsetOutOfRange { offset: 0, bits })?;
    for offset in [i, j, k, l] {
        if offset >= limit {
            return Err(ConstraintError::OffsetOutOfRange { offset, bits });
        }
    }
    Ok(i + j == k + l && i ^ j == k ^ l)
}

/// Streams every canonical constraint quadruple for `dims` exactly once, in
/// ascending lexicographic order of (i, j).
///
/// For each base pair i <= j the family of equal-multiset partners (k, l) is
/// generated by swapping the digits of i and j on subsets of the sites where
/// they differ; fixing the most significant differing site keeps one
/// representative per unordered pair.
pub fn enumerate_constraints(dims: &[usize]) -> Result<ConstraintEnumerator, ConstraintError> {
    let quads = ConstraintEnumerator::new(dims.to_vec())?;
    Ok(quads)
}

pub struct ConstraintEnumerator {
    dims: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
    i: usize,
    j: usize,
    digits_i: Vec<usize>,
    digits_j: Vec<usize>,
    /// Sites where digits_i and digits_j differ, most significant first.
    diff_sites: Vec<usize>,
    /// Next swap-subset selector over diff_sites[1..].
    subset: u64,
    subset_count: u64,
}

impl ConstraintEnumerator {
    fn new(dims: Vec<usize>) -> Result<Self, ConstraintError> {
        if dims.is_empty() {
            return Err(StateError::NoParties.into());
        }
        for &d in &dims {
            if d < 2 {
                return Err(StateError::DimensionTooSmall(d).into());
            }
        }
        let total = total_dim(&dims);
        if total > MAX_TOTAL_DIM {
            return Err(ConstraintError::SizeCapExceeded(total));
        }
        let n = dims.len();
        let mut strides = vec![1usize; n];
        for t in (0..n.saturating_sub(1)).rev() {
            strides[t] = strides[t + 1] * dims[t + 1];
        }
        let mut e = ConstraintEnumerator {
            dims,
            strides,
            total,
            i: 0,
            j: 0,
            digits_i: vec![0; n],
            digits_j: vec![0; n],
            diff_sites: Vec::with_capacity(n),
            subset: 0,
            subset_count: 0,
        };
        e.load_pair(0, 0);
        Ok(e)
    }

    fn load_pair(&mut self, i: usize, j: usize) {
        self.i = i;
        self.j = j;
        decode_into(i, &self.dims, &mut self.digits_i);
        decode_into(j, &self.dims, &mut self.digits_j);
        self.diff_sites.clear();
        for t in 0..self.dims.len() {
            if self.digits_i[t] != self.digits_j[t] {
                self.diff_sites.push(t);
            }
        }
        let m = self.diff_sites.len();
        // subset = 0 would reproduce (i, j) itself; start past it.
        self.subset = 1;
        self.subset_count = if m == 0 { 0 } else { 1u64 << (m - 1) };
    }

    fn advance_pair(&mut self) -> bool {
        let (mut i, mut j) = (self.i, self.j);
        loop {
            j += 1;
            if j >= self.total {
                i += 1;
                if i + 1 >= self.total {
                    return false;
                }
                j = i + 1;
            }
            self.load_pair(i, j);
            if self.subset < self.subset_count {
                return true;
            }
        }
    }
}

impl Iterator for ConstraintEnumerator {
    type Item = ConstraintQuad;

    fn next(&mut self) -> Option<ConstraintQuad> {
        loop {
            if self.subset >= self.subset_count && !self.advance_pair() {
                return None;
            }
            let s = self.subset;
            self.subset += 1;

            // Swap digits at the selected subset of diff_sites[1..]; the most
            // significant differing site stays unswapped, which pins k < l.
            let mut k = self.i;
            let mut l = self.j;
            for (bit, &site) in self.diff_sites[1..].iter().enumerate() {
                if s >> bit & 1 == 1 {
                    let delta = self.digits_j[site] as isize - self.digits_i[site] as isize;
                    let step = delta * self.strides[site] as isize;
                    k = (k as isize + step) as usize;
                    l = (l as isize - step) as usize;
                }
            }
            debug_assert!(k < l);
            if (self.i, self.j) < (k, l) {
                return Some(ConstraintQuad {
                    i: self.i,
                    j: self.j,
                    k,
                    l,
                });
            }
        }
    }
}

fn decode_into(offset: usize, dims: &[usize], digits: &mut [usize]) {
    let mut rem = offset;
    for (t, &dim) in dims.iter().enumerate().rev() {
        digits[t] = rem % dim;
        rem /= dim;
    }
}
