//! Multi-qubit entanglement invariants built on the spin-flip map.
//!
//! The crate computes the m-tangle `τ_m`, the SL(2,C)^{×m} invariant
//! `S²_(m)(ρ) = Tr(ρρ̃)`, the Hilbert-Schmidt distance between `ρ` and its
//! spin-flipped image, the spin-flip symmetry measure, and the relative-phase
//! quantity `Γ_m` built from the orthogonal complement of a phase POVM. It
//! also checks the identities that connect them.
//!
//! Everything is generic over the real scalar type (see [`Scalar`]). The
//! aliases at the crate root fix it to `f64`, which is what the tolerances
//! quoted in the docs assume.
//!
//! ```
//! use mtangle::{generators, spin_flip, lorentz_invariant, State};
//!
//! let ghz: State = generators::ghz(4).unwrap();
//! let tau = spin_flip::m_tangle(&ghz).unwrap();
//! let s2 = lorentz_invariant::s2(&ghz.to_density().unwrap()).unwrap();
//! assert!((tau - 1.0).abs() < 1e-12 && (s2 - 1.0).abs() < 1e-12);
//! ```

pub mod error;
pub mod generators;
pub mod lorentz_invariant;
pub mod phase_povm;
pub mod scalar;
pub mod spin_flip;
pub mod states;
pub mod tensor_core;

pub use error::{Error, Result};
pub use generators::Seed;
pub use lorentz_invariant::{MeasureReport, StateRef};
pub use phase_povm::{MultiPhaseSpec, PhaseSpec, PovmMode};
pub use scalar::Scalar;
pub use states::{DensityMatrix, PureState};
pub use tensor_core::OperatorMatrix;

pub use num_complex::Complex;

pub type Complex64 = Complex<f64>;
pub type Operator = OperatorMatrix<f64>;
pub type State = PureState<f64>;
pub type Density = DensityMatrix<f64>;
pub type Phases = PhaseSpec<f64>;
pub type MultiPhases = MultiPhaseSpec<f64>;
pub type Report = MeasureReport<f64>;

pub type Complex32 = Complex<f32>;
pub type Operator32 = OperatorMatrix<f32>;
pub type State32 = PureState<f32>;
pub type Density32 = DensityMatrix<f32>;
