//! Dense complex matrices and Kronecker products.
//!
//! Storage is row-major. Every operation returns a new value; nothing here
//! mutates shared state except the process-wide dense dimension limit.

mod eigen;

use std::sync::atomic::{AtomicUsize, Ordering};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{is_finite, Scalar};

pub use eigen::{hermitian_eigenvalues, min_eigenvalue};

/// Default cap on the row (and column) count of a materialized operator.
pub const DEFAULT_MAX_DIM: usize = 1 << 12;

/// Default absolute tolerance of the matrix equality predicates.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

static MAX_DIM: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_DIM);

/// Current cap on materialized operator dimension.
pub fn max_dim() -> usize {
    MAX_DIM.load(Ordering::Relaxed)
}

/// Overrides the dense dimension cap for the whole process.
pub fn set_max_dim(limit: usize) {
    MAX_DIM.store(limit.max(1), Ordering::Relaxed);
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    let limit = max_dim();
    if dim > limit {
        return Err(Error::DimensionTooLarge { dim, limit });
    }
    Ok(())
}

/// A general complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> OperatorMatrix<T> {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix must have positive dimensions, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if !data.iter().all(is_finite) {
            return Err(Error::NonFinite("matrix entries"));
        }
        Ok(Self { rows, cols, data })
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_raw(rows, cols, vec![Complex::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Complex::one() } else { Complex::zero() })
    }

    /// A 1x1 matrix holding `value`.
    pub fn scalar(value: Complex<T>) -> Self {
        Self::from_raw(1, 1, vec![value])
    }

    /// Builds a square matrix from nested rows.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let n = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(n, cols, rows.concat())
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: &[Complex<T>]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i] } else { Complex::zero() })
    }

    /// Outer product `|a⟩⟨b|`.
    pub fn outer(a: &[Complex<T>], b: &[Complex<T>]) -> Self {
        Self::from_fn(a.len(), b.len(), |i, j| a[i] * b[j].conj())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.cols + j] = v;
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Complex<T>> {
        self.data
    }

    fn same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{op}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let src = &other.data[k * other.cols..(k + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d = *d + a * b;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to length-{} vector",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(self
            .data
            .chunks_exact(self.cols)
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Complex::zero(), |acc, (&a, &x)| acc + a * x)
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sum")?;
        Ok(self.zip_map(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "difference")?;
        Ok(self.zip_map(other, |a, b| a - b))
    }

    fn zip_map(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Self {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Self::from_raw(self.rows, self.cols, data)
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self::from_raw(self.rows, self.cols, self.data.iter().map(|&z| f(z)).collect())
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        self.map(|z| z * factor)
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        self.transpose().conj()
    }

    pub fn trace(&self) -> Result<Complex<T>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "trace of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok((0..self.rows).fold(Complex::zero(), |acc, i| acc + self.get(i, i)))
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<Complex<T>> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "trace of product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc = Complex::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc = acc + self.get(i, k) * other.get(k, i);
            }
        }
        Ok(acc)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.same_shape(other, "comparison")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(T::zero(), T::max))
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d <= tol)
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (i..self.cols).all(|j| (self.get(i, j) - self.get(j, i).conj()).norm() <= tol)
            })
    }

    pub fn is_identity(&self, tol: T) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let target = if i == j { Complex::one() } else { Complex::zero() };
                    (self.get(i, j) - target).norm() <= tol
                })
            })
    }

    /// True when every entry off the anti-diagonal (`i + j = n - 1`) is within `tol` of zero.
    pub fn is_antidiagonal(&self, tol: T) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| i + j == self.rows - 1 || self.get(i, j).norm() <= tol)
            })
    }

    /// Kronecker product, subject to the process-wide dimension cap.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        kron_with_limit(self, other, max_dim())
    }

    /// `self ⊗ self ⊗ … ⊗ self` with `m` factors.
    pub fn kron_power(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("kron_power needs m >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..m {
            acc = acc.kron(self)?;
        }
        Ok(acc)
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron<T: Scalar>(a: &OperatorMatrix<T>, b: &OperatorMatrix<T>) -> Result<OperatorMatrix<T>> {
    a.kron(b)
}

/// `a^{⊗m}`.
pub fn kron_power<T: Scalar>(a: &OperatorMatrix<T>, m: usize) -> Result<OperatorMatrix<T>> {
    a.kron_power(m)
}

/// Kronecker product with an explicit dimension cap on rows and columns.
pub fn kron_with_limit<T: Scalar>(
    a: &OperatorMatrix<T>,
    b: &OperatorMatrix<T>,
    limit: usize,
) -> Result<OperatorMatrix<T>> {
    let overflow = |d: Option<usize>| match d {
        Some(d) if d <= limit => Ok(d),
        Some(d) => Err(Error::DimensionTooLarge { dim: d, limit }),
        None => Err(Error::DimensionTooLarge { dim: usize::MAX, limit }),
    };
    let rows = overflow(a.rows.checked_mul(b.rows))?;
    let cols = overflow(a.cols.checked_mul(b.cols))?;
    let mut data = Vec::with_capacity(rows * cols);
    for i in 0..a.rows {
        for k in 0..b.rows {
            for j in 0..a.cols {
                let x = a.get(i, j);
                data.extend(b.data[k * b.cols..(k + 1) * b.cols].iter().map(|&y| x * y));
            }
        }
    }
    Ok(OperatorMatrix::from_raw(rows, cols, data))
}

/// Kronecker product of a list of factors, left to right.
pub fn kron_all<T: Scalar>(factors: &[OperatorMatrix<T>]) -> Result<OperatorMatrix<T>> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::InvalidParameter("empty factor list".into()))?;
    rest.iter().try_fold(first.clone(), |acc, f| acc.kron(f))
}

/// Kronecker product of two vectors.
pub fn kron_vec<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> Vec<Complex<T>> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
}

/// `⟨a|b⟩ = Σ conj(a_i) b_i`.
pub fn inner<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter().zip(b).fold(Complex::zero(), |acc, (&x, &y)| acc + x.conj() * y)
}

/// Determinant of a 2x2 matrix.
pub fn det2<T: Scalar>(a: &OperatorMatrix<T>) -> Result<Complex<T>> {
    if a.rows != 2 || a.cols != 2 {
        return Err(Error::DimensionMismatch(format!(
            "det2 of a {}x{} matrix",
            a.rows, a.cols
        )));
    }
    Ok(a.get(0, 0) * a.get(1, 1) - a.get(0, 1) * a.get(1, 0))
}
