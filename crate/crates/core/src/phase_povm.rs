//! The symmetric quantum-phase POVM `Δ(φ) = Σ_{k,l} e^{iφ_{k,l}} |k⟩⟨l|`,
//! its orthogonal complement `Δ̃ = I − Δ`, tensor products over subsystems,
//! and the relative-phase quantity `Γ_m`.
//!
//! For a qubit, `Δ̃(π/2) = σ_y`, so at uniform phases `π/2` the multipartite
//! complement is `σ_y^{⊗m}` and `Γ_m` coincides with the m-tangle (pure
//! states) and with `S²_(m)` (mixed states).

use num_complex::Complex;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{real_part, Scalar};
use crate::states::{DensityMatrix, PureState};
use crate::tensor_core::{self, inner, kron_all, min_eigenvalue, OperatorMatrix};

/// Cap on the number of points in a normalization product grid.
pub const MAX_GRID_POINTS: usize = 1 << 24;

/// Antisymmetric phase matrix `φ_{k,l}` for one `N`-level subsystem.
///
/// Only the strict upper triangle is supplied; the diagonal is zero and the
/// lower triangle mirrors it with opposite sign. Angles are reduced into
/// `(−2π, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpec<T> {
    dim: usize,
    phases: Vec<T>,
}

/// Number of independent phases of an `N`-level subsystem, `N(N−1)/2`.
pub fn phase_count(dim: usize) -> usize {
    dim * dim.saturating_sub(1) / 2
}

impl<T: Scalar> PhaseSpec<T> {
    /// Builds a spec from the upper-triangle angles in row order
    /// `φ_{1,2}, …, φ_{1,N}, φ_{2,3}, …, φ_{N−1,N}`.
    pub fn from_upper(dim: usize, upper: &[T]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidPhases("dimension must be positive".into()));
        }
        if upper.len() != phase_count(dim) {
            return Err(Error::InvalidPhases(format!(
                "{} angles supplied, {} needed for N = {dim}",
                upper.len(),
                phase_count(dim)
            )));
        }
        if !upper.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidPhases("non-finite angle".into()));
        }
        let two_pi = T::TAU();
        let mut phases = vec![T::zero(); dim * dim];
        let mut it = upper.iter();
        for k in 0..dim {
            for l in (k + 1)..dim {
                let a = *it.next().expect("length checked") % two_pi;
                phases[k * dim + l] = a;
                phases[l * dim + k] = -a;
            }
        }
        Ok(Self { dim, phases })
    }

    /// Every upper-triangle phase set to `angle`.
    pub fn uniform(dim: usize, angle: T) -> Result<Self> {
        Self::from_upper(dim, &vec![angle; phase_count(dim)])
    }

    /// Qubit spec with the single phase `φ_{1,2} = angle`.
    pub fn qubit(angle: T) -> Result<Self> {
        Self::from_upper(2, &[angle])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `φ_{k,l}` with 0-based indices.
    pub fn phase(&self, k: usize, l: usize) -> T {
        self.phases[k * self.dim + l]
    }

    /// The upper-triangle angles in construction order.
    pub fn upper(&self) -> Vec<T> {
        (0..self.dim)
            .flat_map(|k| ((k + 1)..self.dim).map(move |l| (k, l)))
            .map(|(k, l)| self.phase(k, l))
            .collect()
    }
}

/// One [`PhaseSpec`] per subsystem, in tensor order `Q_1 … Q_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPhaseSpec<T> {
    specs: Vec<PhaseSpec<T>>,
}

impl<T: Scalar> MultiPhaseSpec<T> {
    pub fn new(specs: Vec<PhaseSpec<T>>) -> Result<Self> {
        if specs.is_empty() {
            return Err(Error::InvalidPhases("no subsystems".into()));
        }
        let total = specs
            .iter()
            .try_fold(1usize, |acc, s| acc.checked_mul(s.dim))
            .unwrap_or(usize::MAX);
        tensor_core::check_dim(total)?;
        Ok(Self { specs })
    }

    /// `m` qubit subsystems, all at the same phase.
    pub fn uniform_qubits(num_qubits: usize, angle: T) -> Result<Self> {
        Self::new(vec![PhaseSpec::qubit(angle)?; num_qubits])
    }

    /// One qubit subsystem per angle.
    pub fn qubits(angles: &[T]) -> Result<Self> {
        Self::new(angles.iter().map(|&a| PhaseSpec::qubit(a)).collect::<Result<_>>()?)
    }

    pub fn specs(&self) -> &[PhaseSpec<T>] {
        &self.specs
    }

    pub fn len(&self) -> usize {
        self.specs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.specs.is_empty()
    }

    /// Product of subsystem dimensions.
    pub fn total_dim(&self) -> usize {
        self.specs.iter().map(PhaseSpec::dim).product()
    }

    pub fn all_qubits(&self) -> bool {
        self.specs.iter().all(|s| s.dim == 2)
    }
}

/// `Δ = Σ_{k,l} e^{iφ_{k,l}} |k⟩⟨l|`.
pub fn delta_single<T: Scalar>(spec: &PhaseSpec<T>) -> OperatorMatrix<T> {
    let n = spec.dim;
    let mut m = OperatorMatrix::identity(n);
    for k in 0..n {
        for l in (k + 1)..n {
            let z = Complex::from_polar(T::one(), spec.phase(k, l));
            m.set(k, l, z);
            m.set(l, k, z.conj());
        }
    }
    m
}

/// `Δ̃ = I_N − Δ`.
pub fn delta_complement<T: Scalar>(spec: &PhaseSpec<T>) -> OperatorMatrix<T> {
    let delta = delta_single(spec);
    OperatorMatrix::from_fn(spec.dim, spec.dim, |k, l| {
        if k == l {
            Complex::<T>::one() - delta.get(k, l)
        } else {
            -delta.get(k, l)
        }
    })
}

/// Which single-subsystem factor [`delta_multi`] tensors together.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PovmMode {
    /// `Δ_{Q_1} ⊗ … ⊗ Δ_{Q_m}`
    Plain,
    /// `Δ̃_{Q_1} ⊗ … ⊗ Δ̃_{Q_m}`
    Complement,
}

/// Tensor product of the per-subsystem POVM elements or their complements.
pub fn delta_multi<T: Scalar>(specs: &MultiPhaseSpec<T>, mode: PovmMode) -> Result<OperatorMatrix<T>> {
    let factors: Vec<_> = specs
        .specs
        .iter()
        .map(|s| match mode {
            PovmMode::Plain => delta_single(s),
            PovmMode::Complement => delta_complement(s),
        })
        .collect();
    kron_all(&factors)
}

/// Outcome probability `Tr(ρΔ_Q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseProbability<T> {
    pub value: T,
    /// Set when the value is negative, which can happen once some `N_j ≥ 3`.
    pub negative: bool,
}

pub fn phase_probability<T: Scalar>(
    rho: &DensityMatrix<T>,
    specs: &MultiPhaseSpec<T>,
) -> Result<PhaseProbability<T>> {
    phase_probability_of(rho.matrix(), specs)
}

/// `Tr(ρΔ_Q)` for a state on arbitrary subsystem dimensions, given as a
/// plain operator (density matrices in this crate are qubit-only).
pub fn phase_probability_of<T: Scalar>(
    rho: &OperatorMatrix<T>,
    specs: &MultiPhaseSpec<T>,
) -> Result<PhaseProbability<T>> {
    if !rho.is_square() || specs.total_dim() != rho.rows() {
        return Err(Error::DimensionMismatch(format!(
            "POVM dimension {} vs state dimension {}x{}",
            specs.total_dim(),
            rho.rows(),
            rho.cols()
        )));
    }
    let delta = delta_multi(specs, PovmMode::Plain)?;
    let value = real_part(rho.trace_product(&delta)?)?;
    Ok(PhaseProbability { value, negative: value < T::zero() })
}

/// Averages `Δ` over an equispaced product grid covering one full period of
/// every phase, starting at the phases held by `spec`, and returns the
/// largest entrywise deviation of that average from `I_N`.
pub fn check_povm_normalization<T: Scalar>(spec: &PhaseSpec<T>, grid_points_per_phase: usize) -> Result<T> {
    if grid_points_per_phase < 2 {
        return Err(Error::InvalidParameter(format!(
            "grid needs at least 2 points per phase, got {grid_points_per_phase}"
        )));
    }
    let offsets = spec.upper();
    let num_phases = offsets.len();
    let total = u32::try_from(num_phases)
        .ok()
        .and_then(|p| grid_points_per_phase.checked_pow(p))
        .filter(|&t| t <= MAX_GRID_POINTS)
        .ok_or_else(|| {
            Error::InvalidParameter(format!(
                "{grid_points_per_phase}^{num_phases} grid points exceed {MAX_GRID_POINTS}"
            ))
        })?;

    let step = T::TAU() / T::from_count(grid_points_per_phase);
    let n = spec.dim;
    let mut sum = OperatorMatrix::<T>::zeros(n, n);
    let mut angles = vec![T::zero(); num_phases];
    for flat in 0..total {
        let mut rest = flat;
        for (a, &off) in angles.iter_mut().zip(&offsets) {
            *a = off + step * T::from_count(rest % grid_points_per_phase);
            rest /= grid_points_per_phase;
        }
        let delta = delta_single(&PhaseSpec::from_upper(n, &angles)?);
        sum = sum.add(&delta)?;
    }
    let mean = sum.scale(Complex::new(T::one() / T::from_count(total), T::zero()));
    mean.max_abs_diff(&OperatorMatrix::identity(n))
}

/// Smallest eigenvalue of `Δ(φ)`; negative values witness non-positivity.
pub fn povm_min_eigenvalue<T: Scalar>(spec: &PhaseSpec<T>) -> Result<T> {
    min_eigenvalue(&delta_single(spec))
}

/// Whether `Δ(φ)` is positive semidefinite up to `tol`.
pub fn is_positive<T: Scalar>(spec: &PhaseSpec<T>, tol: T) -> Result<bool> {
    Ok(povm_min_eigenvalue(spec)? >= -tol)
}

fn check_qubit_specs<T: Scalar>(num_qubits: usize, specs: &MultiPhaseSpec<T>) -> Result<()> {
    if !specs.all_qubits() {
        return Err(Error::InvalidPhases("Γ_m is defined for qubit subsystems only".into()));
    }
    if specs.len() != num_qubits {
        return Err(Error::WrongQubitCount { expected: num_qubits, got: specs.len() });
    }
    Ok(())
}

/// `Γ_m(Ψ) = |⟨Ψ|Δ̃_Q|Ψ*⟩|²`.
pub fn gamma_pure<T: Scalar>(psi: &PureState<T>, specs: &MultiPhaseSpec<T>) -> Result<T> {
    check_qubit_specs(psi.num_qubits(), specs)?;
    let comp = delta_multi(specs, PovmMode::Complement)?;
    let image = comp.apply(psi.conjugate().amplitudes())?;
    Ok(inner(psi.amplitudes(), &image).norm_sqr())
}

/// `Γ_m(ρ) = Tr(ρ Δ̃_Q ρ* Δ̃_Q)`.
pub fn gamma_mixed<T: Scalar>(rho: &DensityMatrix<T>, specs: &MultiPhaseSpec<T>) -> Result<T> {
    check_qubit_specs(rho.num_qubits(), specs)?;
    let comp = delta_multi(specs, PovmMode::Complement)?;
    let sandwich = comp.mat_mul(&rho.matrix().conj())?.mat_mul(&comp)?;
    real_part(rho.matrix().trace_product(&sandwich)?)
}

/// `Γ_m` at uniform phases `2πj/grid`, `j = 0 … grid−1`, as `(phase, gamma)` rows.
pub fn gamma_sweep<T: Scalar>(psi: &PureState<T>, grid: usize) -> Result<Vec<(T, T)>> {
    if grid < 2 {
        return Err(Error::InvalidParameter(format!("sweep grid must be >= 2, got {grid}")));
    }
    let step = T::TAU() / T::from_count(grid);
    (0..grid)
        .map(|j| {
            let phase = step * T::from_count(j);
            let specs = MultiPhaseSpec::uniform_qubits(psi.num_qubits(), phase)?;
            Ok((phase, gamma_pure(psi, &specs)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use std::f64::consts::{FRAC_PI_2, PI};

    type P = PhaseSpec<f64>;

    #[test]
    fn spec_mirrors_and_reduces() {
        let s = P::from_upper(3, &[0.5, 7.0, -13.0]).unwrap();
        assert_eq!(s.phase(0, 0), 0.0);
        assert_eq!(s.phase(0, 1), 0.5);
        assert_eq!(s.phase(1, 0), -0.5);
        assert!((s.phase(0, 2) - (7.0 - 2.0 * PI)).abs() < 1e-15);
        assert!(s.phase(1, 2).abs() < 2.0 * PI);
        assert_eq!(s.phase(2, 1), -s.phase(1, 2));
        assert!(P::from_upper(3, &[0.1]).is_err());
        assert!(P::from_upper(2, &[f64::NAN]).is_err());
        assert!(P::from_upper(0, &[]).is_err());
    }

    #[test]
    fn delta_single_examples() {
        let d0 = delta_single(&P::qubit(0.0).unwrap());
        assert_eq!(d0.as_slice(), &[c(1., 0.); 4]);

        let d = delta_single(&P::qubit(FRAC_PI_2).unwrap());
        let want = OperatorMatrix::from_rows(&[vec![c(1., 0.), c(0., 1.)], vec![c(0., -1.), c(1., 0.)]]).unwrap();
        assert!(d.approx_eq(&want, 1e-15));
        assert!(d.is_hermitian(0.0));
    }

    #[test]
    fn complement_examples() {
        let y = crate::spin_flip::sigma_y::<f64>();
        assert!(delta_complement(&P::qubit(FRAC_PI_2).unwrap()).approx_eq(&y, 1e-15));

        let minus_x = OperatorMatrix::from_rows(&[vec![c(0., 0.), c(-1., 0.)], vec![c(-1., 0.), c(0., 0.)]]).unwrap();
        assert_eq!(delta_complement(&P::qubit(0.0).unwrap()), minus_x);

        let s = P::from_upper(3, &[0.3, -1.2, 2.5]).unwrap();
        let sum = delta_single(&s).add(&delta_complement(&s)).unwrap();
        assert!(sum.is_identity(0.0));
    }

    #[test]
    fn multi_single_element_delegates() {
        let s = P::from_upper(3, &[0.3, -1.2, 2.5]).unwrap();
        let multi = MultiPhaseSpec::new(vec![s.clone()]).unwrap();
        assert_eq!(delta_multi(&multi, PovmMode::Plain).unwrap(), delta_single(&s));
        assert_eq!(delta_multi(&multi, PovmMode::Complement).unwrap(), delta_complement(&s));
    }

    #[test]
    fn two_qubit_complement_phases() {
        let (a, b) = (0.4, 1.1);
        let comp = delta_multi(&MultiPhaseSpec::qubits(&[a, b]).unwrap(), PovmMode::Complement).unwrap();
        assert!(comp.is_antidiagonal(0.0));
        let want = [a + b, a - b, -a + b, -a - b];
        for (i, phase) in want.iter().enumerate() {
            let got = comp.get(i, 3 - i);
            assert!((got - Complex::from_polar(1.0, *phase)).norm() < 1e-15, "row {i}");
        }
    }

    #[test]
    fn multi_spec_validation() {
        assert!(MultiPhaseSpec::<f64>::new(vec![]).is_err());
        assert!(matches!(
            MultiPhaseSpec::<f64>::uniform_qubits(13, 0.0),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn probability_examples() {
        let half = DensityMatrix::<f64>::maximally_mixed(1).unwrap();
        for phi in [0.0, 0.7, PI] {
            let p = phase_probability(&half, &MultiPhaseSpec::qubits(&[phi]).unwrap()).unwrap();
            assert!((p.value - 1.0).abs() < 1e-15);
        }
        let plus = PureState::new(vec![c(0.5f64.sqrt(), 0.); 2]).unwrap().to_density().unwrap();
        let p0 = phase_probability(&plus, &MultiPhaseSpec::qubits(&[0.0]).unwrap()).unwrap();
        assert!((p0.value - 2.0).abs() < 1e-15);
        let ppi = phase_probability(&plus, &MultiPhaseSpec::qubits(&[PI]).unwrap()).unwrap();
        assert!(ppi.value.abs() < 1e-15);
        assert!(phase_probability(&plus, &MultiPhaseSpec::qubits(&[0.0, 0.0]).unwrap()).is_err());
    }

    #[test]
    fn probability_can_go_negative_for_qutrits() {
        // (1, e^{iπ/3}, e^{2iπ/3})/√3 is the eigenvector of Δ(π/2, π/2, π/2) for 1 − √3
        let spec = P::uniform(3, FRAC_PI_2).unwrap();
        let v: Vec<_> = (0..3)
            .map(|k| Complex::from_polar(1.0 / 3f64.sqrt(), k as f64 * PI / 3.0))
            .collect();
        let rho = OperatorMatrix::outer(&v, &v);
        let p = phase_probability_of(&rho, &MultiPhaseSpec::new(vec![spec]).unwrap()).unwrap();
        assert!(p.negative);
        assert!((p.value - (1.0 - 3f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn normalization_examples() {
        assert!(check_povm_normalization(&P::qubit(0.0).unwrap(), 64).unwrap() < 1e-12);
        assert!(check_povm_normalization(&P::uniform(3, 0.0).unwrap(), 32).unwrap() < 1e-12);
        assert!(check_povm_normalization(&P::qubit(0.0).unwrap(), 2).unwrap() < 1e-12);
        assert!(check_povm_normalization(&P::qubit(0.3).unwrap(), 16).unwrap() < 1e-12);
        assert!(check_povm_normalization(&P::qubit(0.0).unwrap(), 1).is_err());
        assert!(check_povm_normalization(&P::uniform(6, 0.0).unwrap(), 16).is_err());
        assert_eq!(check_povm_normalization(&P::from_upper(1, &[]).unwrap(), 4).unwrap(), 0.0);
    }

    #[test]
    fn qubit_delta_is_positive_and_qutrit_is_not() {
        for j in 0..32 {
            let spec = P::qubit(j as f64 * PI / 16.0).unwrap();
            let e = crate::tensor_core::hermitian_eigenvalues(&delta_single(&spec)).unwrap();
            assert!(e[0].abs() < 1e-14 && (e[1] - 2.0).abs() < 1e-14);
            assert!(is_positive(&spec, 1e-12).unwrap());
        }
        let q3 = P::uniform(3, FRAC_PI_2).unwrap();
        assert!((povm_min_eigenvalue(&q3).unwrap() - (1.0 - 3f64.sqrt())).abs() < 1e-12);
        assert!(!is_positive(&q3, 1e-12).unwrap());
    }

    #[test]
    fn gamma_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let ghz2 = PureState::new(vec![c(h, 0.), c(0., 0.), c(0., 0.), c(h, 0.)]).unwrap();
        let pi2 = MultiPhaseSpec::uniform_qubits(2, FRAC_PI_2).unwrap();
        assert!((gamma_pure(&ghz2, &pi2).unwrap() - 1.0).abs() < 1e-15);

        let zero3 = PureState::new({
            let mut a = vec![c(0., 0.); 8];
            a[0] = c(1., 0.);
            a
        })
        .unwrap();
        let phases = MultiPhaseSpec::qubits(&[0.2, 1.3, -0.7]).unwrap();
        assert_eq!(gamma_pure(&zero3, &phases).unwrap(), 0.0);

        let rho = ghz2.to_density().unwrap();
        assert!((gamma_mixed(&rho, &pi2).unwrap() - 1.0).abs() < 1e-15);
        let mm = DensityMatrix::<f64>::maximally_mixed(3).unwrap();
        let pi2_3 = MultiPhaseSpec::uniform_qubits(3, FRAC_PI_2).unwrap();
        assert!((gamma_mixed(&mm, &pi2_3).unwrap() - 0.125).abs() < 1e-15);
    }

    #[test]
    fn gamma_rejects_bad_specs() {
        let mm = DensityMatrix::<f64>::maximally_mixed(2).unwrap();
        let three = MultiPhaseSpec::qubits(&[0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(gamma_mixed(&mm, &three), Err(Error::WrongQubitCount { .. })));
        let qutrit = MultiPhaseSpec::new(vec![P::uniform(3, 0.0).unwrap(), P::qubit(0.0).unwrap()]).unwrap();
        assert!(matches!(gamma_mixed(&mm, &qutrit), Err(Error::InvalidPhases(_))));
    }

    #[test]
    fn sweep_of_ghz2_is_flat() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let ghz2 = PureState::new(vec![c(h, 0.), c(0., 0.), c(0., 0.), c(h, 0.)]).unwrap();
        let rows = gamma_sweep(&ghz2, 4).unwrap();
        assert_eq!(rows.len(), 4);
        for (j, (phase, gamma)) in rows.iter().enumerate() {
            assert!((phase - j as f64 * FRAC_PI_2).abs() < 1e-15);
            assert!((gamma - 1.0).abs() < 1e-12);
        }
        assert!(gamma_sweep(&ghz2, 1).is_err());
    }
}
