//! Small dense complex linear algebra: 2x2 minors, determinants, Hermitian
//! eigenvalues, and the matrix products the separability criteria need.
//!
//! Everything here targets desk-scale matrices (dimension <= 64); there is no
//! attempt at BLAS-level performance.

use num_complex::Complex64;
use thiserror::Error;

/// Largest square dimension accepted by `det` and `hermitian_eigenvalues`.
pub const MAX_SQUARE_DIM: usize = 64;

#[derive(Debug, Error, PartialEq)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix dimension {0} exceeds the supported maximum {MAX_SQUARE_DIM}")]
    TooLarge(usize),
    #[error("index ({r}, {c}) out of bounds for {rows}x{cols} matrix")]
    IndexOutOfBounds {
        r: usize,
        c: usize,
        rows: usize,
        cols: usize,
    },
    #[error("minor indices must satisfy r1 < r2 and c1 < c2")]
    BadMinorIndices,
    #[error("matrix is not Hermitian within tolerance {0:e}")]
    NotHermitian(f64),
    #[error("shape mismatch: ({0}, {1}) vs ({2}, {3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("matrix does not have unit trace (trace = {0})")]
    NotUnitTrace(f64),
}

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries; `data.len()` must equal `rows * cols`.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "entry count {} does not match {}x{}",
            data.len(),
            rows,
            cols
        );
        ComplexMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Result<Complex64, LinalgError> {
        if r >= self.rows || c >= self.cols {
            return Err(LinalgError::IndexOutOfBounds {
                r,
                c,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self[(r, c)])
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)];
            }
        }
        out
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::ShapeMismatch(
                self.rows, self.cols, rhs.rows, rhs.cols,
            ));
        }
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..rhs.cols {
                    out[(r, c)] += a * rhs[(k, c)];
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise deviation from conjugate symmetry.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0_f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                let d = (self[(r, c)] - self[(c, r)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

/// Determinant of the 2x2 submatrix picked out by rows `r1 < r2` and
/// columns `c1 < c2`.
pub fn minor2(
    m: &ComplexMatrix,
    r1: usize,
    r2: usize,
    c1: usize,
    c2: usize,
) -> Result<Complex64, LinalgError> {
    if r1 >= r2 || c1 >= c2 {
        return Err(LinalgError::BadMinorIndices);
    }
    if r2 >= m.rows() || c2 >= m.cols() {
        return Err(LinalgError::IndexOutOfBounds {
            r: r2,
            c: c2,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(m[(r1, c1)] * m[(r2, c2)] - m[(r1, c2)] * m[(r2, c1)])
}

/// Whether a 2x2 minor counts as zero: `|minor| <= tol * max(floor, |p1| + |p2|)`
/// where `p1`, `p2` are the two diagonal products. The floor is 1 for
/// unit-normalized amplitude data.
pub fn minor_is_zero(minor: Complex64, p1: Complex64, p2: Complex64, tol: f64, floor: f64) -> bool {
    minor.norm() <= tol * (p1.norm() + p2.norm()).max(floor)
}

/// One 2x2 minor exceeding the zero test during a scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinorViolation {
    pub r1: usize,
    pub r2: usize,
    pub c1: usize,
    pub c2: usize,
    pub value: Complex64,
}

/// Result of scanning every 2x2 minor of a matrix, with an operation count.
#[derive(Debug, Clone, Copy)]
pub struct MinorScan {
    /// First violation in scan order (r1 asc, r2 asc, c1 asc, c2 asc), if any.
    pub first_violation: Option<MinorViolation>,
    pub minors_evaluated: usize,
    /// Complex multiplications performed; two per minor.
    pub complex_mults: usize,
}

/// Evaluates all 2x2 minors of `m` in deterministic order. The scan never
/// short-circuits, so the multiplication count depends only on the shape:
/// for an n x n matrix it is n^2 (n-1)^2 / 2.
pub fn scan_minors(m: &ComplexMatrix, tol: f64, floor: f64) -> MinorScan {
    let mut scan = MinorScan {
        first_violation: None,
        minors_evaluated: 0,
        complex_mults: 0,
    };
    for r1 in 0..m.rows() {
        for r2 in (r1 + 1)..m.rows() {
            for c1 in 0..m.cols() {
                for c2 in (c1 + 1)..m.cols() {
                    let p1 = m[(r1, c1)] * m[(r2, c2)];
                    let p2 = m[(r1, c2)] * m[(r2, c1)];
                    scan.complex_mults += 2;
                    scan.minors_evaluated += 1;
                    let minor = p1 - p2;
                    if scan.first_violation.is_none() && !minor_is_zero(minor, p1, p2, tol, floor) {
                        scan.first_violation = Some(MinorViolation {
                            r1,
                            r2,
                            c1,
                            c2,
                            value: minor,
                        });
                    }
                }
            }
        }
    }
    scan
}

/// Determinant by partially pivoted Gaussian elimination.
pub fn det(m: &ComplexMatrix) -> Result<Complex64, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n > MAX_SQUARE_DIM {
        return Err(LinalgError::TooLarge(n));
    }
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut a = m.clone();
    let mut sign = 1.0;
    let mut result = Complex64::new(1.0, 0.0);
    for k in 0..n {
        // Pivot on the largest remaining entry in column k.
        let mut pivot_row = k;
        let mut pivot_mag = a[(k, k)].norm();
        for r in (k + 1)..n {
            let mag = a[(r, k)].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_mag == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if pivot_row != k {
            for c in 0..n {
                let tmp = a[(k, c)];
                a[(k, c)] = a[(pivot_row, c)];
                a[(pivot_row, c)] = tmp;
            }
            sign = -sign;
        }
        let pivot = a[(k, k)];
        result *= pivot;
        for r in (k + 1)..n {
            let factor = a[(r, k)] / pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in k..n {
                let v = a[(k, c)];
                a[(r, c)] -= factor * v;
            }
        }
    }
    Ok(result * sign)
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, sorted in
/// descending order. The input must be Hermitian within `1e-10` entrywise.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>, LinalgError> {
    const HERMITIAN_TOL: f64 = 1e-10;
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n > MAX_SQUARE_DIM {
        return Err(LinalgError::TooLarge(n));
    }
    if !m.is_hermitian(HERMITIAN_TOL) {
        return Err(LinalgError::NotHermitian(HERMITIAN_TOL));
    }
    if n == 0 {
        return Ok(vec![]);
    }

    // Work on the exactly-Hermitian part so rounding in the input cannot leak
    // imaginary components into the diagonal.
    let mut a = ComplexMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            a[(r, c)] = (m[(r, c)] + m[(c, r)].conj()) * 0.5;
        }
    }

    let norm = a.frobenius_norm();
    let target = 1e-12 * norm.max(f64::MIN_POSITIVE);
    const MAX_SWEEPS: usize = 64;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, p, q);
            }
        }
    }

    let mut eigs: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    eigs.sort_by(|x, y| y.partial_cmp(x).expect("eigenvalues are finite"));
    Ok(eigs)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Applies the two-sided unitary rotation that zeroes the (p, q) entry of a
/// Hermitian matrix. For a_pq = r e^{i phi} the rotation mixes rows/columns
/// p and q through the plane rotation (c, s e^{i phi}) with real c, s.
fn jacobi_rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * r);
    // Smaller-magnitude root of t^2 + 2 tau t - 1 = 0.
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = a.rows();

    // Column update: A <- A G with G = [[c, s e^{i phi}], [-s e^{-i phi}, c]]
    // on the (p, q) plane.
    for row in 0..n {
        let arp = a[(row, p)];
        let arq = a[(row, q)];
        a[(row, p)] = arp * c - arq * s * phase.conj();
        a[(row, q)] = arp * s * phase + arq * c;
    }
    // Row update: A <- G^dagger A.
    for col in 0..n {
        let apc = a[(p, col)];
        let aqc = a[(q, col)];
        a[(p, col)] = apc * c - aqc * s * phase;
        a[(q, col)] = apc * s * phase.conj() + aqc * c;
    }
    // The rotation is exact on the pivot in real arithmetic; pin the entries
    // that rounding leaves slightly off.
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

/// trace(rho * rho) of a Hermitian trace-one matrix, as a real number.
pub fn purity(rho: &ComplexMatrix) -> Result<f64, LinalgError> {
    const HERMITIAN_TOL: f64 = 1e-10;
    const TRACE_TOL: f64 = 1e-6;
    if !rho.is_square() {
        return Err(LinalgError::NotSquare {
            rows: rho.rows(),
            cols: rho.cols(),
        });
    }
    if !rho.is_hermitian(HERMITIAN_TOL) {
        return Err(LinalgError::NotHermitian(HERMITIAN_TOL));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
        return Err(LinalgError::NotUnitTrace(tr.re));
    }
    // For Hermitian rho, tr(rho^2) = sum |rho_ij|^2 is real by construction.
    let mut s = 0.0;
    for z in rho.entries() {
        s += z.norm_sqr();
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    const INV_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bell_matrix() -> ComplexMatrix {
        ComplexMatrix::new(
            2,
            2,
            vec![
                c(INV_SQRT2, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(INV_SQRT2, 0.0),
            ],
        )
    }

    #[test]
    fn minor2_identity() {
        let m = ComplexMatrix::identity(2);
        assert_eq!(minor2(&m, 0, 1, 0, 1).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn minor2_bell_is_half() {
        let m = bell_matrix();
        let v = minor2(&m, 0, 1, 0, 1).unwrap();
        assert!((v - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn minor2_rank_one_vanishes() {
        // Outer product x y^T has rank 1, so every 2x2 minor is zero.
        let x = [c(1.0, 0.5), c(-0.3, 0.2), c(0.7, -0.1)];
        let y = [c(0.4, -0.6), c(0.9, 0.1), c(-0.2, 0.3)];
        let mut m = ComplexMatrix::zeros(3, 3);
        for r in 0..3 {
            for col in 0..3 {
                m[(r, col)] = x[r] * y[col];
            }
        }
        for r1 in 0..3 {
            for r2 in (r1 + 1)..3 {
                for c1 in 0..3 {
                    for c2 in (c1 + 1)..3 {
                        let v = minor2(&m, r1, r2, c1, c2).unwrap();
                        assert!(v.norm() <= 1e-12, "minor {v} not ~0");
                    }
                }
            }
        }
    }

    #[test]
    fn minor2_rejects_bad_indices() {
        let m = ComplexMatrix::identity(2);
        assert_eq!(minor2(&m, 1, 0, 0, 1), Err(LinalgError::BadMinorIndices));
        assert!(matches!(
            minor2(&m, 0, 2, 0, 1),
            Err(LinalgError::IndexOutOfBounds { .. })
        ));
    }

    #[test]
    fn det_identity_and_diagonal() {
        assert_eq!(det(&ComplexMatrix::identity(4)).unwrap(), c(1.0, 0.0));
        let d = ComplexMatrix::from_diagonal(&[c(2.0, 0.0), c(0.5, 0.0), c(-3.0, 0.0)]);
        assert!((det(&d).unwrap() - c(-3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn det_bell_is_half() {
        assert!((det(&bell_matrix()).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn det_singular() {
        let m = ComplexMatrix::new(
            2,
            2,
            vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)],
        );
        assert!(det(&m).unwrap().norm() < 1e-14);
    }

    #[test]
    fn det_rejects_non_square() {
        let m = ComplexMatrix::zeros(2, 3);
        assert!(matches!(det(&m), Err(LinalgError::NotSquare { .. })));
    }

    #[test]
    fn eigenvalues_of_diagonal() {
        let m = ComplexMatrix::from_diagonal(&[c(0.7, 0.0), c(0.3, 0.0)]);
        let e = hermitian_eigenvalues(&m).unwrap();
        assert!((e[0] - 0.7).abs() < 1e-14);
        assert!((e[1] - 0.3).abs() < 1e-14);
    }

    #[test]
    fn eigenvalues_bell_marginal() {
        let rho = ComplexMatrix::from_diagonal(&[c(0.5, 0.0), c(0.5, 0.0)]);
        let e = hermitian_eigenvalues(&rho).unwrap();
        assert!((e[0] - 0.5).abs() < 1e-14 && (e[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn eigenvalues_known_complex_hermitian() {
        // [[2, i], [-i, 2]] has eigenvalues 3 and 1.
        let m = ComplexMatrix::new(
            2,
            2,
            vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)],
        );
        let e = hermitian_eigenvalues(&m).unwrap();
        assert!((e[0] - 3.0).abs() < 1e-12);
        assert!((e[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_rejects_non_hermitian() {
        let m = ComplexMatrix::new(
            2,
            2,
            vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        );
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(LinalgError::NotHermitian(_))
        ));
    }

    #[test]
    fn purity_examples() {
        let pure = ComplexMatrix::from_diagonal(&[c(1.0, 0.0), c(0.0, 0.0)]);
        assert!((purity(&pure).unwrap() - 1.0).abs() < 1e-15);
        let mixed = ComplexMatrix::from_diagonal(&[c(0.5, 0.0), c(0.5, 0.0)]);
        assert!((purity(&mixed).unwrap() - 0.5).abs() < 1e-15);
        let skew = ComplexMatrix::from_diagonal(&[c(0.9, 0.0), c(0.1, 0.0)]);
        assert!((purity(&skew).unwrap() - 0.82).abs() < 1e-15);
    }

    #[test]
    fn purity_rejects_wrong_trace() {
        let m = ComplexMatrix::identity(2);
        assert!(matches!(purity(&m), Err(LinalgError::NotUnitTrace(_))));
    }

    #[test]
    fn scan_counts_match_shape() {
        // n x n scan: C(n,2)^2 minors, two multiplications each.
        for n in 2..=6 {
            let m = ComplexMatrix::identity(n);
            let scan = scan_minors(&m, 1e-10, 1.0);
            let pairs = n * (n - 1) / 2;
            assert_eq!(scan.minors_evaluated, pairs * pairs);
            assert_eq!(scan.complex_mults, n * n * (n - 1) * (n - 1) / 2);
        }
    }

    #[test]
    fn scan_reports_first_violation_in_order() {
        let m = bell_matrix();
        let scan = scan_minors(&m, 1e-10, 1.0);
        let v = scan.first_violation.expect("bell matrix has rank 2");
        assert_eq!((v.r1, v.r2, v.c1, v.c2), (0, 1, 0, 1));
        assert!((v.value.norm() - 0.5).abs() < 1e-15);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_complex() -> impl Strategy<Value = Complex64> {
            (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
        }

        fn square(n: usize) -> impl Strategy<Value = ComplexMatrix> {
            proptest::collection::vec(small_complex(), n * n)
                .prop_map(move |data| ComplexMatrix::new(n, n, data))
        }

        proptest! {
            #[test]
            fn det_is_multiplicative(a in square(3), b in square(3)) {
                let ab = a.mul(&b).unwrap();
                let lhs = det(&ab).unwrap();
                let rhs = det(&a).unwrap() * det(&b).unwrap();
                let scale = lhs.norm().max(rhs.norm()).max(1.0);
                prop_assert!((lhs - rhs).norm() <= 1e-9 * scale);
            }

            #[test]
            fn gram_eigenvalues_are_nonnegative_with_det_product(a in square(4)) {
                // Eigenvalues of M M^dagger are >= 0 and multiply to |det M|^2.
                let gram = a.mul(&a.dagger()).unwrap();
                let eigs = hermitian_eigenvalues(&gram).unwrap();
                for &e in &eigs {
                    prop_assert!(e >= -1e-10);
                }
                let product: f64 = eigs.iter().product();
                let expected = det(&a).unwrap().norm_sqr();
                let scale = product.abs().max(expected).max(1e-12);
                prop_assert!((product - expected).abs() <= 1e-8 * scale);
            }

            #[test]
            fn eigenvalue_moments_match_traces(a in square(5)) {
                // sum lambda = tr(H) and sum lambda^2 = tr(H^2) pin the
                // spectrum against two independent invariants.
                let h = a.mul(&a.dagger()).unwrap();
                let eigs = hermitian_eigenvalues(&h).unwrap();
                let sum: f64 = eigs.iter().sum();
                prop_assert!((sum - h.trace().re).abs() <= 1e-9 * h.trace().re.abs().max(1.0));
                let sum_sq: f64 = eigs.iter().map(|e| e * e).sum();
                let tr_sq = h.mul(&h).unwrap().trace().re;
                prop_assert!((sum_sq - tr_sq).abs() <= 1e-9 * tr_sq.abs().max(1.0));
            }
        }
    }
}
