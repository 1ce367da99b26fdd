//! Seeded random inputs: states with real and imaginary parts uniform in
//! `[−1, 1]`, unit-circle phases, and unit-modulus matrices.

use rand::Rng;

use crate::entangler::PhaseVector;
use crate::error::Result;
use crate::matrix::DenseMatrix;
use crate::qstate::PureState;
use crate::scalar::{Real, C};

pub fn complex<T: Real, R: Rng + ?Sized>(rng: &mut R) -> C<T> {
    C::new(
        T::lit(rng.gen_range(-1.0..=1.0)),
        T::lit(rng.gen_range(-1.0..=1.0)),
    )
}

pub fn unit_phase<T: Real, R: Rng + ?Sized>(rng: &mut R) -> C<T> {
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    C::new(T::lit(theta.cos()), T::lit(theta.sin()))
}

pub fn state<T: Real, R: Rng + ?Sized>(rng: &mut R, qubits: usize) -> Result<PureState<T>> {
    PureState::new(
        qubits,
        (0..1usize << qubits).map(|_| complex(rng)).collect(),
    )
}

pub fn qubit<T: Real, R: Rng + ?Sized>(rng: &mut R) -> PureState<T> {
    PureState::qubit(complex(rng), complex(rng))
}

pub fn phase_vector<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    qubits: usize,
) -> Result<PhaseVector<T>> {
    PhaseVector::unitary(
        qubits,
        (0..1usize << qubits).map(|_| unit_phase(rng)).collect(),
    )
}

/// `n × n` matrix of unit-modulus entries.
pub fn unit_modulus_matrix<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> DenseMatrix<T> {
    DenseMatrix::from_fn(n, n, |_, _| unit_phase(rng))
}

/// Random `2×2` unitary `e^{iφ}·[[a, −b̄], [b, ā]]` with `|a|² + |b|² = 1`.
pub fn single_qubit_unitary<T: Real, R: Rng + ?Sized>(rng: &mut R) -> DenseMatrix<T> {
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
    let a = unit_phase::<f64, _>(rng) * theta.cos();
    let b = unit_phase::<f64, _>(rng) * theta.sin();
    let g = unit_phase::<f64, _>(rng);
    let cast = |z: C<f64>| C::new(T::lit(z.re), T::lit(z.im));
    DenseMatrix::from_rows(vec![
        vec![cast(g * a), cast(-g * b.conj())],
        vec![cast(g * b), cast(g * a.conj())],
    ])
    .expect("2x2 rows")
}
