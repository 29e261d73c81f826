//! Reference states, seeded random states and random local SL(2,C) maps.
//!
//! Randomness comes from ChaCha20 streams: a [`Seed`] fixes the key and each
//! trial index selects its own stream, so trial `k` can be replayed alone.

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::states::{bit_position, DensityMatrix, PureState, NORM_TOLERANCE};
use crate::tensor_core::{self, det2, kron_vec, OperatorMatrix};

/// Draws rejected by [`random_sl2`] before giving up.
pub const SL2_ATTEMPTS: usize = 10;
/// `|det|` below which a Gaussian 2x2 draw counts as near-singular.
pub const SL2_MIN_DET: f64 = 1e-6;

/// Seed of a family of reproducible random streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed(pub u64);

impl Seed {
    /// Generator for stream `index` under this seed.
    pub fn stream(self, index: u64) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.0);
        rng.set_stream(index);
        rng
    }

    pub fn rng(self) -> ChaCha20Rng {
        self.stream(0)
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

fn gaussian<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::lit(re), T::lit(im))
}

fn unit<T: Scalar>(dim: usize, index: usize) -> Vec<Complex<T>> {
    let mut v = vec![Complex::zero(); dim];
    v[index] = Complex::one();
    v
}

fn check_qubits(num_qubits: usize, min: usize) -> Result<()> {
    if num_qubits < min {
        return Err(Error::InvalidParameter(format!("m = {num_qubits}, need m >= {min}")));
    }
    if num_qubits >= usize::BITS as usize - 1 {
        return Err(Error::InvalidParameter(format!("m = {num_qubits} is too large")));
    }
    Ok(())
}

/// `(|0…0⟩ + |1…1⟩)/√2`.
pub fn ghz<T: Scalar>(num_qubits: usize) -> Result<PureState<T>> {
    check_qubits(num_qubits, 2)?;
    let d = 1usize << num_qubits;
    let h = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    let mut a = vec![Complex::zero(); d];
    a[0] = h;
    a[d - 1] = h;
    PureState::new(a)
}

/// Equal superposition of all Hamming-weight-one basis states.
pub fn w_state<T: Scalar>(num_qubits: usize) -> Result<PureState<T>> {
    check_qubits(num_qubits, 1)?;
    let w = Complex::new(T::one() / T::from_count(num_qubits).sqrt(), T::zero());
    let mut a = vec![Complex::zero(); 1 << num_qubits];
    for q in 0..num_qubits {
        a[1 << q] = w;
    }
    PureState::new(a)
}

/// Bell states: 0 → Φ⁺, 1 → Φ⁻, 2 → Ψ⁺, 3 → Ψ⁻.
pub fn bell<T: Scalar>(index: usize) -> Result<PureState<T>> {
    let h = T::FRAC_1_SQRT_2();
    let (p, n, z) = (Complex::new(h, T::zero()), Complex::new(-h, T::zero()), Complex::zero());
    let a = match index {
        0 => vec![p, z, z, p],
        1 => vec![p, z, z, n],
        2 => vec![z, p, p, z],
        3 => vec![z, p, n, z],
        _ => {
            return Err(Error::InvalidParameter(format!(
                "bell index {index} is not in 0..=3"
            )))
        }
    };
    PureState::new(a)
}

/// Tensor product of single-qubit states, first factor is qubit 1.
pub fn product<T: Scalar>(factors: &[[Complex<T>; 2]]) -> Result<PureState<T>> {
    if factors.is_empty() {
        return Err(Error::InvalidParameter("product needs at least one factor".into()));
    }
    check_qubits(factors.len(), 1)?;
    let mut acc = vec![Complex::one()];
    for (j, f) in factors.iter().enumerate() {
        let n = f[0].norm_sqr() + f[1].norm_sqr();
        if (n - T::one()).abs() > T::tol(NORM_TOLERANCE) {
            return Err(Error::InvalidParameter(format!(
                "product factor {} has squared norm {n}",
                j + 1
            )));
        }
        acc = kron_vec(&acc, f);
    }
    PureState::new(acc)
}

/// Computational basis state from a bitstring such as `"0101"` (qubit 1 first).
pub fn basis<T: Scalar>(bits: &str) -> Result<PureState<T>> {
    check_qubits(bits.len(), 1)?;
    let index = bits.chars().try_fold(0usize, |acc, ch| match ch {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(Error::InvalidParameter(format!("bitstring {bits:?} has non-binary character {ch:?}"))),
    })?;
    PureState::new(unit(1 << bits.len(), index))
}

/// Haar-random pure state: normalized i.i.d. standard complex Gaussians.
pub fn random_pure_with<T: Scalar, R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> Result<PureState<T>> {
    check_qubits(num_qubits, 1)?;
    loop {
        let a: Vec<Complex<T>> = (0..1usize << num_qubits).map(|_| gaussian(rng)).collect();
        let n = a.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
        if n > T::zero() {
            return PureState::new(a.into_iter().map(|z| z / n).collect());
        }
    }
}

pub fn random_pure<T: Scalar>(num_qubits: usize, seed: Seed) -> Result<PureState<T>> {
    random_pure_with(num_qubits, &mut seed.rng())
}

/// Product of independent Haar-random single-qubit states.
pub fn random_product_with<T: Scalar, R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> Result<PureState<T>> {
    let factors = (0..num_qubits)
        .map(|_| {
            let q = random_pure_with::<T, R>(1, rng)?;
            Ok([q.amplitude(0), q.amplitude(1)])
        })
        .collect::<Result<Vec<_>>>()?;
    product(&factors)
}

/// `Σ_n p_n |ψ_n⟩⟨ψ_n|` over `rank` Haar states with flat-Dirichlet weights.
pub fn random_mixed_with<T: Scalar, R: Rng + ?Sized>(
    num_qubits: usize,
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix<T>> {
    check_qubits(num_qubits, 1)?;
    let d = 1usize << num_qubits;
    tensor_core::check_dim(d)?;
    if rank == 0 || rank > d {
        return Err(Error::InvalidParameter(format!("rank {rank} is not in 1..={d}")));
    }
    let raw: Vec<f64> = (0..rank).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    let mut acc = OperatorMatrix::<T>::zeros(d, d);
    for w in raw {
        let psi = random_pure_with::<T, R>(num_qubits, rng)?;
        let term = OperatorMatrix::outer(psi.amplitudes(), psi.amplitudes());
        acc = acc.add(&term.scale(Complex::new(T::lit(w / total), T::zero())))?;
    }
    DensityMatrix::new(acc)
}

pub fn random_mixed<T: Scalar>(num_qubits: usize, rank: usize, seed: Seed) -> Result<DensityMatrix<T>> {
    random_mixed_with(num_qubits, rank, &mut seed.rng())
}

/// Random 2x2 complex matrix with unit determinant.
///
/// A Gaussian draw `G` is rescaled by the principal `det(G)^{-1/2}`; draws
/// with `|det G| < 1e-6` are rejected, up to [`SL2_ATTEMPTS`] times.
pub fn random_sl2_with<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> Result<OperatorMatrix<T>> {
    for _ in 0..SL2_ATTEMPTS {
        let g = OperatorMatrix::from_raw(2, 2, (0..4).map(|_| gaussian(rng)).collect());
        let det = det2(&g)?;
        if det.norm() < T::lit(SL2_MIN_DET) {
            continue;
        }
        return Ok(g.scale(det.sqrt().inv()));
    }
    Err(Error::SingularDraw(SL2_ATTEMPTS))
}

pub fn random_sl2<T: Scalar>(seed: Seed) -> Result<OperatorMatrix<T>> {
    random_sl2_with(&mut seed.rng())
}

/// `(A_1 ⊗ … ⊗ A_m)|ψ⟩`, returned unnormalized. Factors act qubit by qubit,
/// nothing of dimension `2^m x 2^m` is formed.
pub fn apply_local<T: Scalar>(ops: &[OperatorMatrix<T>], psi: &PureState<T>) -> Result<PureState<T>> {
    let m = psi.num_qubits();
    if ops.len() != m {
        return Err(Error::WrongQubitCount { expected: m, got: ops.len() });
    }
    if let Some(bad) = ops.iter().position(|a| a.rows() != 2 || a.cols() != 2) {
        return Err(Error::DimensionMismatch(format!("local operator {} is not 2x2", bad + 1)));
    }
    let mut amps = psi.amplitudes().to_vec();
    for (j, op) in ops.iter().enumerate() {
        let bit = 1usize << bit_position(m, j + 1);
        let (a00, a01, a10, a11) = (op.get(0, 0), op.get(0, 1), op.get(1, 0), op.get(1, 1));
        for i0 in (0..amps.len()).filter(|i| i & bit == 0) {
            let i1 = i0 | bit;
            let (x0, x1) = (amps[i0], amps[i1]);
            amps[i0] = a00 * x0 + a01 * x1;
            amps[i1] = a10 * x0 + a11 * x1;
        }
    }
    PureState::raw(amps)
}
