//! The spin-flip map `|Ψ⟩ ↦ σ_y^{⊗m}|Ψ*⟩`, its density-matrix form,
//! the two-qubit concurrence and the m-tangle.

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::states::{DensityMatrix, PureState};
use crate::tensor_core::{inner, OperatorMatrix};

/// The Pauli matrix `σ_y = [[0, -i], [i, 0]]`.
pub fn sigma_y<T: Scalar>() -> OperatorMatrix<T> {
    let (z, i) = (Complex::zero(), Complex::i());
    OperatorMatrix::from_raw(2, 2, vec![z, -i, i, z])
}

type CacheMap = HashMap<(TypeId, usize), Arc<dyn Any + Send + Sync>>;

fn cache() -> &'static RwLock<CacheMap> {
    static CACHE: OnceLock<RwLock<CacheMap>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `σ_y^{⊗m}`, built once per scalar type and `m` and shared afterwards.
pub fn sigma_y_power<T: Scalar>(num_qubits: usize) -> Result<Arc<OperatorMatrix<T>>> {
    let key = (TypeId::of::<T>(), num_qubits);
    let lookup = |map: &CacheMap| {
        map.get(&key)
            .cloned()
            .map(|any| any.downcast::<OperatorMatrix<T>>().expect("cache keyed by type"))
    };
    if let Some(hit) = lookup(&cache().read().expect("cache lock")) {
        return Ok(hit);
    }
    let built: Arc<OperatorMatrix<T>> = Arc::new(sigma_y::<T>().kron_power(num_qubits)?);
    let mut map = cache().write().expect("cache lock");
    // first writer wins
    let entry = map.entry(key).or_insert_with(|| built as Arc<dyn Any + Send + Sync>);
    Ok(entry.clone().downcast::<OperatorMatrix<T>>().expect("cache keyed by type"))
}

/// `|Ψ̃⟩ = σ_y^{⊗m}|Ψ*⟩`. The result is flagged raw; it has unit norm
/// whenever the input does.
pub fn spin_flip_pure<T: Scalar>(psi: &PureState<T>) -> Result<PureState<T>> {
    let flip = sigma_y_power::<T>(psi.num_qubits())?;
    PureState::raw(flip.apply(psi.conjugate().amplitudes())?)
}

/// `⟨Ψ|Ψ̃⟩`.
pub fn spin_flip_overlap<T: Scalar>(psi: &PureState<T>) -> Result<Complex<T>> {
    let flipped = spin_flip_pure(psi)?;
    Ok(inner(psi.amplitudes(), flipped.amplitudes()))
}

/// `τ_m = |⟨Ψ|Ψ̃⟩|²`.
///
/// Meaningful for even `m`. For odd `m` the form is antisymmetric and the
/// value is zero up to rounding; a warning is logged.
pub fn m_tangle<T: Scalar>(psi: &PureState<T>) -> Result<T> {
    if psi.num_qubits() % 2 == 1 {
        log::warn!(
            "m-tangle requested for odd m = {}; the value vanishes identically",
            psi.num_qubits()
        );
    }
    Ok(spin_flip_overlap(psi)?.norm_sqr())
}

fn require_two_qubits<T: Scalar>(psi: &PureState<T>) -> Result<()> {
    if psi.num_qubits() != 2 {
        return Err(Error::WrongQubitCount { expected: 2, got: psi.num_qubits() });
    }
    Ok(())
}

/// Two-qubit concurrence in the squared-overlap convention, `|⟨Ψ|Ψ̃⟩|²`.
pub fn concurrence2<T: Scalar>(psi: &PureState<T>) -> Result<T> {
    require_two_qubits(psi)?;
    Ok(spin_flip_overlap(psi)?.norm_sqr())
}

/// Wootters' concurrence `|⟨Ψ|Ψ̃⟩|` for a two-qubit pure state.
pub fn concurrence2_unsquared<T: Scalar>(psi: &PureState<T>) -> Result<T> {
    require_two_qubits(psi)?;
    Ok(spin_flip_overlap(psi)?.norm())
}

/// `ρ̃ = σ_y^{⊗m} ρ* σ_y^{⊗m}`.
pub fn spin_flip_density<T: Scalar>(rho: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
    let flip = sigma_y_power::<T>(rho.num_qubits())?;
    let flipped = flip.mat_mul(&rho.matrix().conj())?.mat_mul(&flip)?;
    Ok(DensityMatrix::from_valid(flipped))
}
