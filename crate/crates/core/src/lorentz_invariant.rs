//! The SL(2,C)^{×m} invariant `S²_(m)(ρ) = Tr(ρρ̃)`, the Hilbert-Schmidt
//! distance to the spin-flipped state, the spin-flip symmetry measure, and
//! a report that checks the identities tying them to `τ_m` and `Γ_m`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::phase_povm::{gamma_mixed, gamma_pure, MultiPhaseSpec};
use crate::scalar::{real_part, Scalar};
use crate::spin_flip::{m_tangle, spin_flip_density};
use crate::states::{DensityMatrix, PureState};
use crate::tensor_core::OperatorMatrix;

/// `|S² − τ_m|`, pure states only.
pub const S2_EQ_TANGLE: &str = "s2_eq_tangle";
/// `|S² − (P − D²_HS)|`.
pub const S2_EQ_PURITY_MINUS_HS: &str = "s2_eq_purity_minus_hs";
/// `|I(ρ,ρ̃) − (1 + S² − P)|`.
pub const SYMMETRY_EQ_ONE_PLUS_S2_MINUS_PURITY: &str = "symmetry_eq_one_plus_s2_minus_purity";
/// `|Γ_m − S²|` at uniform phases `π/2`.
pub const GAMMA_EQ_S2: &str = "gamma_eq_s2";

/// Every residual name a [`MeasureReport`] may carry.
pub const IDENTITY_NAMES: [&str; 4] = [
    S2_EQ_TANGLE,
    S2_EQ_PURITY_MINUS_HS,
    SYMMETRY_EQ_ONE_PLUS_S2_MINUS_PURITY,
    GAMMA_EQ_S2,
];

/// `S²_(m)(ρ) = Tr(ρρ̃)`.
pub fn s2<T: Scalar>(rho: &DensityMatrix<T>) -> Result<T> {
    let flipped = spin_flip_density(rho)?;
    real_part(rho.matrix().trace_product(flipped.matrix())?)
}

/// Squared normalized Hilbert-Schmidt distance, `½ Tr((a − b)²)`.
pub fn hs_distance_sq<T: Scalar>(a: &OperatorMatrix<T>, b: &OperatorMatrix<T>) -> Result<T> {
    let diff = a.sub(b)?;
    let tr = real_part(diff.trace_product(&diff)?)?;
    Ok((tr * T::lit(0.5)).max(T::zero()))
}

/// `I(ρ,ρ̃) = 1 − D²_HS(ρ − ρ̃)`.
pub fn spin_flip_symmetry<T: Scalar>(rho: &DensityMatrix<T>) -> Result<T> {
    let flipped = spin_flip_density(rho)?;
    Ok(T::one() - hs_distance_sq(rho.matrix(), flipped.matrix())?)
}

/// A state given either as a ket or as a density matrix.
#[derive(Debug, Clone, Copy)]
pub enum StateRef<'a, T> {
    Pure(&'a PureState<T>),
    Mixed(&'a DensityMatrix<T>),
}

impl<'a, T> From<&'a PureState<T>> for StateRef<'a, T> {
    fn from(s: &'a PureState<T>) -> Self {
        StateRef::Pure(s)
    }
}

impl<'a, T> From<&'a DensityMatrix<T>> for StateRef<'a, T> {
    fn from(s: &'a DensityMatrix<T>) -> Self {
        StateRef::Mixed(s)
    }
}

/// Measures computed for one state and the absolute residuals of the
/// identities among them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport<T> {
    pub state: String,
    pub m: usize,
    pub tau_m: Option<T>,
    pub s2: Option<T>,
    pub purity: Option<T>,
    pub hs_dist_sq: Option<T>,
    pub symmetry_measure: Option<T>,
    pub gamma: Option<T>,
    pub residuals: BTreeMap<String, T>,
}

impl<T: Scalar> MeasureReport<T> {
    /// Largest residual, or zero if none were recorded.
    pub fn worst_residual(&self) -> T {
        self.residuals.values().fold(T::zero(), |a, &b| a.max(b))
    }
}

/// Computes every applicable measure and the residual of each identity.
///
/// `Γ_m` is evaluated at uniform phases `π/2`; `τ_m` and its residual are
/// present only for pure input.
pub fn verify_identities<'a, T: Scalar>(
    id: impl Into<String>,
    state: impl Into<StateRef<'a, T>>,
) -> Result<MeasureReport<T>> {
    let state = state.into();
    let (rho, tau) = match state {
        StateRef::Pure(psi) => (psi.to_density()?, Some(m_tangle(psi)?)),
        StateRef::Mixed(rho) => (rho.clone(), None),
    };
    let m = rho.num_qubits();
    let flipped = spin_flip_density(&rho)?;
    let s2 = real_part(rho.matrix().trace_product(flipped.matrix())?)?;
    let purity = rho.purity();
    let hs = hs_distance_sq(rho.matrix(), flipped.matrix())?;
    let symmetry = T::one() - hs;
    let specs = MultiPhaseSpec::uniform_qubits(m, T::FRAC_PI_2())?;
    let gamma = match state {
        StateRef::Pure(psi) => gamma_pure(psi, &specs)?,
        StateRef::Mixed(rho) => gamma_mixed(rho, &specs)?,
    };

    let mut residuals = BTreeMap::new();
    if let Some(tau) = tau {
        residuals.insert(S2_EQ_TANGLE.to_string(), (s2 - tau).abs());
    }
    residuals.insert(S2_EQ_PURITY_MINUS_HS.to_string(), (s2 - (purity - hs)).abs());
    residuals.insert(
        SYMMETRY_EQ_ONE_PLUS_S2_MINUS_PURITY.to_string(),
        (symmetry - (T::one() + s2 - purity)).abs(),
    );
    residuals.insert(GAMMA_EQ_S2.to_string(), (gamma - s2).abs());

    Ok(MeasureReport {
        state: id.into(),
        m,
        tau_m: tau,
        s2: Some(s2),
        purity: Some(purity),
        hs_dist_sq: Some(hs),
        symmetry_measure: Some(symmetry),
        gamma: Some(gamma),
        residuals,
    })
}

/// Residual lookup that fails loudly on an unknown identity name.
pub fn residual<T: Scalar>(report: &MeasureReport<T>, name: &str) -> Result<Option<T>> {
    if !IDENTITY_NAMES.contains(&name) {
        return Err(Error::InvalidParameter(format!("unknown identity {name:?}")));
    }
    Ok(report.residuals.get(name).copied())
}
