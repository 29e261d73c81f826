//! Pure states and density matrices on `m` qubits.
//!
//! Basis index `x` encodes the ket `|x_{m-1} … x_0⟩` with `x_{m-1}` the most
//! significant bit. Qubits are labelled `1..=m` from the left, so qubit `j`
//! lives at bit position `m - j`.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{is_finite, Scalar};
use crate::tensor_core::{min_eigenvalue, OperatorMatrix};

/// Normalization tolerance on `Σ|α|²`.
pub const NORM_TOLERANCE: f64 = 1e-10;
/// Hermiticity and unit-trace tolerance for density matrices.
pub const DENSITY_TOLERANCE: f64 = 1e-10;
/// Most negative eigenvalue accepted as positive semidefinite.
pub const PSD_TOLERANCE: f64 = 1e-8;

fn qubits_for_dim(dim: usize, what: &str) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::DimensionMismatch(format!(
            "{what} dimension {dim} is not 2^m with m >= 1"
        )));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Bit position of 1-based qubit `j` in an `m`-qubit index.
#[inline]
pub fn bit_position(num_qubits: usize, qubit: usize) -> usize {
    num_qubits - qubit
}

// Validated, sorted, deduplicated 1-based qubit list.
fn check_qubits(num_qubits: usize, keep: &[usize]) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::InvalidParameter("no qubits to keep".into()));
    }
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    for w in keep.windows(2) {
        if w[0] == w[1] {
            return Err(Error::InvalidParameter(format!("qubit {} listed twice", w[0])));
        }
    }
    if let Some(&bad) = keep.iter().find(|&&q| q == 0 || q > num_qubits) {
        return Err(Error::InvalidQubit { index: bad, num_qubits });
    }
    Ok(keep)
}

// Places the bits of `value` (MSB first) at the given bit positions.
fn scatter(value: usize, positions: &[usize]) -> usize {
    let n = positions.len();
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (r, &pos)| acc | (((value >> (n - 1 - r)) & 1) << pos))
}

// (bit positions of kept qubits, bit positions of traced qubits)
fn split_positions(num_qubits: usize, keep: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let kept = keep.iter().map(|&q| bit_position(num_qubits, q)).collect();
    let traced = (1..=num_qubits)
        .filter(|q| !keep.contains(q))
        .map(|q| bit_position(num_qubits, q))
        .collect();
    (kept, traced)
}

/// Amplitude vector over the `2^m` computational basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T> {
    num_qubits: usize,
    amplitudes: Vec<Complex<T>>,
    raw: bool,
}

impl<T: Scalar> PureState<T> {
    /// A normalized state. Fails if `Σ|α|²` is off by more than [`NORM_TOLERANCE`].
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let state = Self::raw(amplitudes)?;
        let norm_sqr = state.norm_sqr();
        if (norm_sqr - T::one()).abs() > T::tol(NORM_TOLERANCE) {
            return Err(Error::NotNormalized {
                norm_sqr: norm_sqr.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { raw: false, ..state })
    }

    /// An unnormalized vector, e.g. the image of a state under local SL(2,C) maps.
    pub fn raw(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let num_qubits = qubits_for_dim(amplitudes.len(), "state")?;
        if !amplitudes.iter().all(is_finite) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        Ok(Self { num_qubits, amplitudes, raw: true })
    }

    /// Rescales to unit norm.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if n.is_zero() {
            return Err(Error::NotNormalized { norm_sqr: 0.0 });
        }
        Self::new(self.amplitudes.iter().map(|&a| a / n).collect())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amplitudes[index]
    }

    /// Whether this vector was built without the normalization check.
    pub fn is_raw(&self) -> bool {
        self.raw
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    /// `|Ψ*⟩`: every amplitude conjugated in the computational basis.
    pub fn conjugate(&self) -> Self {
        Self {
            num_qubits: self.num_qubits,
            amplitudes: self.amplitudes.iter().map(|a| a.conj()).collect(),
            raw: self.raw,
        }
    }

    /// `|Ψ⟩⟨Ψ|`. Raw vectors are accepted only if they happen to be normalized.
    pub fn to_density(&self) -> Result<DensityMatrix<T>> {
        if self.raw {
            let norm_sqr = self.norm_sqr();
            if (norm_sqr - T::one()).abs() > T::tol(NORM_TOLERANCE) {
                return Err(Error::NotNormalized {
                    norm_sqr: norm_sqr.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(DensityMatrix {
            num_qubits: self.num_qubits,
            matrix: OperatorMatrix::outer(&self.amplitudes, &self.amplitudes),
        })
    }

    /// Reduced density matrix on the 1-based qubits in `keep`, computed from amplitudes.
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityMatrix<T>> {
        let keep = check_qubits(self.num_qubits, keep)?;
        let (kept, traced) = split_positions(self.num_qubits, &keep);
        let dk = 1usize << kept.len();
        let dt = 1usize << traced.len();
        let a = &self.amplitudes;
        let matrix = OperatorMatrix::from_fn(dk, dk, |r, c| {
            let (rb, cb) = (scatter(r, &kept), scatter(c, &kept));
            (0..dt).fold(Complex::zero(), |acc, t| {
                let tb = scatter(t, &traced);
                acc + a[rb | tb] * a[cb | tb].conj()
            })
        });
        Ok(DensityMatrix { num_qubits: keep.len(), matrix })
    }

    /// True iff every single-qubit marginal has purity at least `1 - tol`,
    /// which for a pure state means it is a full product state.
    pub fn is_product(&self, tol: T) -> bool {
        (1..=self.num_qubits).all(|q| {
            self.reduced_density(&[q])
                .map(|rho| rho.purity() >= T::one() - tol)
                .unwrap_or(false)
        })
    }
}

/// Hermitian, positive semidefinite, unit-trace operator on `m` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    num_qubits: usize,
    matrix: OperatorMatrix<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    /// Validates Hermiticity, unit trace and positivity of `matrix`.
    pub fn new(matrix: OperatorMatrix<T>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidDensity(format!(
                "{}x{} matrix is not square",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let num_qubits = qubits_for_dim(matrix.rows(), "density matrix")?;
        let tol = T::tol(DENSITY_TOLERANCE);
        if !matrix.is_hermitian(tol) {
            return Err(Error::InvalidDensity("not Hermitian".into()));
        }
        let tr = matrix.trace()?;
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
        }
        let min = min_eigenvalue(&matrix)?;
        if min < -T::tol(PSD_TOLERANCE) {
            return Err(Error::InvalidDensity(format!(
                "smallest eigenvalue {min} is negative"
            )));
        }
        Ok(Self { num_qubits, matrix })
    }

    // Callers guarantee the invariants (e.g. unitary conjugation of a valid ρ).
    pub(crate) fn from_valid(matrix: OperatorMatrix<T>) -> Self {
        let num_qubits = matrix.rows().trailing_zeros() as usize;
        Self { num_qubits, matrix }
    }

    /// `I / 2^m`.
    pub fn maximally_mixed(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::InvalidParameter("need at least one qubit".into()));
        }
        crate::tensor_core::check_dim(1 << num_qubits)?;
        let d = 1usize << num_qubits;
        let w = T::one() / T::from_count(d);
        Ok(Self {
            num_qubits,
            matrix: OperatorMatrix::identity(d).scale(Complex::new(w, T::zero())),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &OperatorMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> OperatorMatrix<T> {
        self.matrix
    }

    /// `ρ*`, the entrywise conjugate.
    pub fn conjugate(&self) -> Self {
        Self { num_qubits: self.num_qubits, matrix: self.matrix.conj() }
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> T {
        // For Hermitian ρ, Tr ρ² = Σ_ij |ρ_ij|².
        self.matrix.as_slice().iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    /// Reduced density matrix on the 1-based qubits in `keep`.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let keep = check_qubits(self.num_qubits, keep)?;
        let (kept, traced) = split_positions(self.num_qubits, &keep);
        let dk = 1usize << kept.len();
        let dt = 1usize << traced.len();
        let matrix = OperatorMatrix::from_fn(dk, dk, |r, c| {
            let (rb, cb) = (scatter(r, &kept), scatter(c, &kept));
            (0..dt).fold(Complex::zero(), |acc, t| {
                let tb = scatter(t, &traced);
                acc + self.matrix.get(rb | tb, cb | tb)
            })
        });
        Ok(Self { num_qubits: keep.len(), matrix })
    }
}
