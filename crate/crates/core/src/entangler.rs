//! Permutation-phase entanglers.
//!
//! The `m`-qubit entangler has one nonzero per row: row `i` carries the phase
//! `α_{label(i)}` in column `σ(i)`, where `σ` fixes the two corner indices
//! `0` and `2^m − 1` and reverses every other index (`σ(i) = 2^m − 1 − i`).
//! Attaching the phase to the output label means the uniform product state
//! `(|1⟩ + |2⟩)^{⊗m}` is sent to `Σ α_k |k⟩`.
//!
//! For `m = 2` the same operator is the braided Yang-Baxter solution
//! [`two_qubit_r`], and `R·P` is the diagonal phase gate for the corner-fixing
//! swap `P`.

use crate::braid::TwoStrandOperator;
use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, MonomialMatrix, MAX_DENSE_DIM};
use crate::qstate::{PureState, MAX_QUBITS};
use crate::scalar::{Real, C};

pub use crate::matrix::unitarity_residual;

/// Modulus tolerance for gate-mode phases; single precision uses
/// `16·ε` instead when that is larger.
pub const PHASE_MODULUS_TOL: f64 = 1e-9;

/// Whether phases must lie on the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Every phase must have modulus 1 within [`PHASE_MODULUS_TOL`].
    Gate,
    /// Any complex values; used to inspect non-unitary variants.
    Analysis,
}

fn check_unit<T: Real>(phases: &[C<T>]) -> Result<()> {
    let tol = T::lit(PHASE_MODULUS_TOL).max(T::lit(16.0) * T::epsilon());
    match phases.iter().position(|z| {
        let dev = (z.norm() - T::one()).abs();
        dev.is_nan() || dev > tol
    }) {
        Some(index) => Err(Error::NonUnitPhase {
            index,
            modulus: phases[index].norm().to_f64().unwrap_or(f64::NAN),
        }),
        None => Ok(()),
    }
}

fn check_mode<T: Real>(phases: &[C<T>], mode: Mode) -> Result<()> {
    match mode {
        Mode::Gate => check_unit(phases),
        Mode::Analysis => Ok(()),
    }
}

/// `2^m` phases indexed by basis label.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseVector<T: Real> {
    qubits: usize,
    phases: Vec<C<T>>,
    unitary_grade: bool,
}

impl<T: Real> PhaseVector<T> {
    /// Unchecked values for analysis.
    pub fn raw(qubits: usize, phases: Vec<C<T>>) -> Result<Self> {
        check_len(qubits, phases.len())?;
        Ok(Self {
            qubits,
            phases,
            unitary_grade: false,
        })
    }

    /// Phases on the unit circle; usable for gate construction.
    pub fn unitary(qubits: usize, phases: Vec<C<T>>) -> Result<Self> {
        check_len(qubits, phases.len())?;
        check_unit(&phases)?;
        Ok(Self {
            qubits,
            phases,
            unitary_grade: true,
        })
    }

    /// Upgrades to unitary grade when every modulus passes the check.
    pub fn into_unitary(self) -> Result<Self> {
        Self::unitary(self.qubits, self.phases)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn phases(&self) -> &[C<T>] {
        &self.phases
    }

    pub fn is_unitary_grade(&self) -> bool {
        self.unitary_grade
    }

    /// The phases read as amplitudes of an `m`-qubit state.
    pub fn as_state(&self) -> Result<PureState<T>> {
        PureState::new(self.qubits, self.phases.clone())
    }
}

fn check_len(qubits: usize, len: usize) -> Result<()> {
    if qubits == 0 || qubits > MAX_QUBITS {
        return Err(Error::InvalidQubitCount {
            found: qubits,
            max: MAX_QUBITS,
        });
    }
    if len != 1 << qubits {
        return Err(Error::LengthMismatch {
            expected: 1 << qubits,
            found: len,
        });
    }
    Ok(())
}

/// Corner-fixing reversal: `σ(0) = 0`, `σ(2^m−1) = 2^m−1`, else `2^m−1−i`.
#[inline]
pub fn sigma(i: usize, qubits: usize) -> usize {
    let last = (1usize << qubits) - 1;
    if i == 0 || i == last {
        i
    } else {
        last - i
    }
}

/// The 4×4 braided Yang-Baxter solution with entries
/// `(0,0)=α₁₁, (1,2)=α₁₂, (2,1)=α₂₁, (3,3)=α₂₂`.
pub fn two_qubit_r<T: Real>(
    a11: C<T>,
    a12: C<T>,
    a21: C<T>,
    a22: C<T>,
    mode: Mode,
) -> Result<TwoStrandOperator<T>> {
    check_mode(&[a11, a12, a21, a22], mode)?;
    let mut m = DenseMatrix::zeros(4, 4);
    m[(0, 0)] = a11;
    m[(1, 2)] = a12;
    m[(2, 1)] = a21;
    m[(3, 3)] = a22;
    TwoStrandOperator::new(m)
}

/// `R^{kl}_{rs} = δ^k_s δ^l_r M_{kl}` on `Cⁿ ⊗ Cⁿ`, rows and columns indexed
/// by `(k, l) ↦ n·k + l` (0-based digits).
pub fn r_from_m<T: Real>(m: &DenseMatrix<T>, mode: Mode) -> Result<TwoStrandOperator<T>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if mode == Mode::Gate {
        let flat: Vec<_> = (0..n).flat_map(|r| m.row(r).to_vec()).collect();
        check_unit(&flat)?;
    }
    if n * n * n > MAX_DENSE_DIM {
        return Err(Error::TooLarge {
            dim: n * n,
            cap: MAX_DENSE_DIM,
        });
    }
    let mut r = DenseMatrix::zeros(n * n, n * n);
    for k in 0..n {
        for l in 0..n {
            // Row (k, l), column (r, s) = (l, k).
            r[(n * k + l, n * l + k)] = m[(k, l)];
        }
    }
    TwoStrandOperator::new(r)
}

/// Corner-fixing swap `P` on `m ≥ 2` qubits: the permutation matrix of `σ`.
pub fn swap_p<T: Real>(qubits: usize) -> Result<MonomialMatrix<T>> {
    if qubits < 2 {
        return Err(Error::WrongQubitCount {
            expected: "at least 2".into(),
            found: qubits,
        });
    }
    if qubits > MAX_QUBITS {
        return Err(Error::InvalidQubitCount {
            found: qubits,
            max: MAX_QUBITS,
        });
    }
    MonomialMatrix::permutation((0..1usize << qubits).map(|i| sigma(i, qubits)).collect())
}

/// Sparse `2^m × 2^m` permutation-phase entangler.
#[derive(Clone, Debug, PartialEq)]
pub struct EntanglerOperator<T: Real> {
    qubits: usize,
    /// `values[i]` sits at `(i, σ(i))`.
    values: Vec<C<T>>,
}

/// Builds the entangler with `R[i, σ(i)] = α_{label(i)}`.
pub fn multi_qubit_r<T: Real>(phases: &PhaseVector<T>, mode: Mode) -> Result<EntanglerOperator<T>> {
    if phases.qubits < 2 {
        return Err(Error::WrongQubitCount {
            expected: "at least 2".into(),
            found: phases.qubits,
        });
    }
    if !(mode == Mode::Gate && phases.unitary_grade) {
        check_mode(&phases.phases, mode)?;
    }
    Ok(EntanglerOperator {
        qubits: phases.qubits,
        values: phases.phases.clone(),
    })
}

impl<T: Real> EntanglerOperator<T> {
    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn column_of(&self, row: usize) -> usize {
        sigma(row, self.qubits)
    }

    pub fn value(&self, row: usize) -> C<T> {
        self.values[row]
    }

    /// Values at `(0, 0)` and `(2^m−1, 2^m−1)`.
    pub fn corner_phases(&self) -> (C<T>, C<T>) {
        (self.values[0], self.values[self.dim() - 1])
    }

    /// Anti-diagonal values in row order, rows `1..2^m−1`.
    pub fn body_phases(&self) -> &[C<T>] {
        &self.values[1..self.dim() - 1]
    }

    /// `(row, col, value)` triples sorted by row.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C<T>)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (i, sigma(i, self.qubits), v))
    }

    pub fn to_monomial(&self) -> MonomialMatrix<T> {
        MonomialMatrix::new(
            (0..self.dim()).map(|i| sigma(i, self.qubits)).collect(),
            self.values.clone(),
        )
        .expect("sigma is a permutation")
    }

    pub fn to_dense(&self) -> Result<DenseMatrix<T>> {
        self.to_monomial().to_dense()
    }

    /// Diagonal part: the two corner entries.
    pub fn diagonal_part(&self) -> Result<DenseMatrix<T>> {
        let mut d = self.dense_shell()?;
        let last = self.dim() - 1;
        d[(0, 0)] = self.values[0];
        d[(last, last)] = self.values[last];
        Ok(d)
    }

    /// Anti-diagonal part: every non-corner entry.
    pub fn anti_diagonal_part(&self) -> Result<DenseMatrix<T>> {
        let mut a = self.dense_shell()?;
        for (r, c, v) in self.entries().skip(1).take(self.dim() - 2) {
            a[(r, c)] = v;
        }
        Ok(a)
    }

    fn dense_shell(&self) -> Result<DenseMatrix<T>> {
        if self.dim() > MAX_DENSE_DIM {
            return Err(Error::TooLarge {
                dim: self.dim(),
                cap: MAX_DENSE_DIM,
            });
        }
        Ok(DenseMatrix::zeros(self.dim(), self.dim()))
    }

    /// `‖R†R − I‖_F` from the sparse form.
    pub fn unitarity_residual(&self) -> T {
        self.to_monomial().unitarity_residual()
    }

    /// As a [`TwoStrandOperator`] when the dimension is a perfect square.
    pub fn as_two_strand(&self) -> Result<TwoStrandOperator<T>> {
        TwoStrandOperator::new(self.to_dense()?)
    }
}

/// `τ = R·P`, computed by composing the sparse forms; diagonal with
/// `α_{label(i)}` at `(i, i)`.
pub fn phase_gate_tau<T: Real>(r: &EntanglerOperator<T>) -> Result<MonomialMatrix<T>> {
    r.to_monomial().compose(&swap_p(r.qubits)?)
}

/// `out[i] = α_{label(i)} · s[σ(i)]`, in `O(2^m)`.
pub fn apply<T: Real>(r: &EntanglerOperator<T>, s: &PureState<T>) -> Result<PureState<T>> {
    if s.qubit_count() != r.qubits {
        return Err(Error::QubitMismatch {
            left: r.qubits,
            right: s.qubit_count(),
        });
    }
    let amps = s.amplitudes();
    let out = r
        .values
        .iter()
        .enumerate()
        .map(|(i, a)| a * amps[sigma(i, r.qubits)])
        .collect();
    PureState::new(r.qubits, out)
}

impl<T: Real> std::ops::Mul<&PureState<T>> for &EntanglerOperator<T> {
    type Output = PureState<T>;

    fn mul(self, s: &PureState<T>) -> PureState<T> {
        apply(self, s).expect("qubit count mismatch")
    }
}

/// Two-qubit phases `(α₁₁, α₁₂, α₂₁, α₂₂)` read from a [`PhaseVector`].
pub fn two_qubit_phases<T: Real>(phases: &PhaseVector<T>) -> Result<[C<T>; 4]> {
    if phases.qubits != 2 {
        return Err(Error::WrongQubitCount {
            expected: "2".into(),
            found: phases.qubits,
        });
    }
    let p = &phases.phases;
    Ok([p[0], p[1], p[2], p[3]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::ybe_residual;
    use crate::qstate::{tensor_product, Label};

    type S = PureState<f64>;
    type M = DenseMatrix<f64>;

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    fn one() -> C<f64> {
        c(1.0, 0.0)
    }

    fn phases(m: usize, seed: f64) -> PhaseVector<f64> {
        let v = (0..1usize << m)
            .map(|i| C::from_polar(1.0, seed * (i as f64 + 1.0).sqrt()))
            .collect();
        PhaseVector::unitary(m, v).unwrap()
    }

    fn basis(d: &[u8]) -> S {
        S::basis(&Label::new(d.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn sigma_is_corner_fixing_involution() {
        for m in 2..8 {
            let n = 1usize << m;
            assert_eq!(sigma(0, m), 0);
            assert_eq!(sigma(n - 1, m), n - 1);
            for i in 0..n {
                assert_eq!(sigma(sigma(i, m), m), i);
            }
        }
        assert_eq!(sigma(1, 3), 6);
        assert_eq!(sigma(3, 3), 4);
    }

    #[test]
    fn eq9_all_ones_is_middle_swap() {
        let r = two_qubit_r(one(), one(), one(), one(), Mode::Gate).unwrap();
        let expect = M::from_fn(
            4,
            4,
            |i, j| if sigma(i, 2) == j { one() } else { c(0.0, 0.0) },
        );
        assert_eq!(*r.matrix(), expect);
    }

    #[test]
    fn eq9_action_list() {
        let a = [
            c(0.0, 1.0),
            C::from_polar(1.0, 0.4),
            C::from_polar(1.0, -2.0),
            c(-1.0, 0.0),
        ];
        let r = two_qubit_r(a[0], a[1], a[2], a[3], Mode::Gate).unwrap();
        let act = |d: &[u8]| r.matrix().mat_vec(basis(d).amplitudes()).unwrap();
        assert_eq!(act(&[1, 1]), basis(&[1, 1]).scale(a[0]).into_amplitudes());
        assert_eq!(act(&[1, 2]), basis(&[2, 1]).scale(a[2]).into_amplitudes());
        assert_eq!(act(&[2, 1]), basis(&[1, 2]).scale(a[1]).into_amplitudes());
        assert_eq!(act(&[2, 2]), basis(&[2, 2]).scale(a[3]).into_amplitudes());

        let psi = S::qubit(one(), one());
        let out = r
            .matrix()
            .mat_vec(tensor_product(&psi, &psi).unwrap().amplitudes())
            .unwrap();
        assert_eq!(out, a.to_vec());
    }

    #[test]
    fn gate_mode_rejects_non_unit() {
        assert!(matches!(
            two_qubit_r(c(2.0, 0.0), one(), one(), one(), Mode::Gate),
            Err(Error::NonUnitPhase { index: 0, .. })
        ));
        assert!(two_qubit_r(c(2.0, 0.0), one(), one(), one(), Mode::Analysis).is_ok());
        assert!(PhaseVector::unitary(1, vec![one(), c(0.5, 0.0)]).is_err());
        let raw = PhaseVector::raw(2, vec![one(), one(), one(), c(0.0, 3.0)]).unwrap();
        assert!(multi_qubit_r(&raw, Mode::Gate).is_err());
        assert!(multi_qubit_r(&raw, Mode::Analysis).is_ok());
    }

    #[test]
    fn phase_vector_length_checked() {
        assert!(matches!(
            PhaseVector::raw(3, vec![one(); 7]),
            Err(Error::LengthMismatch {
                expected: 8,
                found: 7
            })
        ));
    }

    #[test]
    fn swap_examples() {
        let p = swap_p::<f64>(2).unwrap().to_dense().unwrap();
        let printed = M::from_rows(
            [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
                .iter()
                .map(|r| r.iter().map(|&x| c(x as f64, 0.0)).collect())
                .collect(),
        )
        .unwrap();
        assert_eq!(p, printed);
        let out = p.mat_vec(basis(&[1, 2]).amplitudes()).unwrap();
        assert_eq!(out, basis(&[2, 1]).into_amplitudes());
        for m in 2..7 {
            let p = swap_p::<f64>(m).unwrap();
            assert_eq!(
                p.compose(&p).unwrap().to_dense().unwrap(),
                M::identity(1 << m)
            );
        }
        assert!(swap_p::<f64>(1).is_err());
    }

    #[test]
    fn tau_examples() {
        let a = [
            c(0.0, 1.0),
            C::from_polar(1.0, 0.4),
            C::from_polar(1.0, -2.0),
            c(-1.0, 0.0),
        ];
        let r = multi_qubit_r(&PhaseVector::unitary(2, a.to_vec()).unwrap(), Mode::Gate).unwrap();
        let tau = phase_gate_tau(&r).unwrap();
        assert!(tau.is_diagonal());
        assert_eq!(tau.to_dense().unwrap(), M::diagonal(&a));

        let ones = PhaseVector::unitary(3, vec![one(); 8]).unwrap();
        let tau = phase_gate_tau(&multi_qubit_r(&ones, Mode::Gate).unwrap()).unwrap();
        assert_eq!(tau.to_dense().unwrap(), M::identity(8));

        let ph = phases(3, 0.77);
        let r = multi_qubit_r(&ph, Mode::Gate).unwrap();
        let dense = &r.to_dense().unwrap() * &swap_p(3).unwrap().to_dense().unwrap();
        assert!(dense.is_diagonal());
        assert_eq!(dense.diagonal_entries(), ph.phases().to_vec());
        assert!(crate::matrix::unitarity_residual(&dense).unwrap() < 1e-12);
    }

    #[test]
    fn r_from_m_examples() {
        let ones = M::from_fn(2, 2, |_, _| one());
        let r = r_from_m(&ones, Mode::Gate).unwrap();
        assert_eq!(*r.matrix(), swap_p::<f64>(2).unwrap().to_dense().unwrap());

        // Elementwise comparison with the two-qubit construction: M_{kl} lands
        // where α_{kl} does, no transposition of the middle phases.
        let a = [
            c(0.0, 1.0),
            C::from_polar(1.0, 0.4),
            C::from_polar(1.0, -2.0),
            c(-1.0, 0.0),
        ];
        let m = M::from_rows(vec![vec![a[0], a[1]], vec![a[2], a[3]]]).unwrap();
        let from_m = r_from_m(&m, Mode::Gate).unwrap();
        let direct = two_qubit_r(a[0], a[1], a[2], a[3], Mode::Gate).unwrap();
        assert_eq!(from_m, direct);

        let m3 = M::from_fn(3, 3, |k, l| {
            C::from_polar(1.0, 0.3 * (k * 3 + l) as f64 + 0.1)
        });
        let r3 = r_from_m(&m3, Mode::Gate).unwrap();
        assert_eq!(r3.local_dim(), 3);
        assert!(ybe_residual(&r3).unwrap() < 1e-12);
        assert!(unitarity_residual(r3.matrix()).unwrap() < 1e-12);

        assert!(r_from_m(&M::zeros(2, 3), Mode::Analysis).is_err());
        assert!(r_from_m(&M::identity(2), Mode::Gate).is_err());
    }

    #[test]
    fn multi_qubit_r_examples() {
        let ph = phases(2, 1.3);
        let r = multi_qubit_r(&ph, Mode::Gate).unwrap();
        let p = ph.phases();
        let direct = two_qubit_r(p[0], p[1], p[2], p[3], Mode::Gate).unwrap();
        assert_eq!(r.to_dense().unwrap(), *direct.matrix());

        let ph3 = phases(3, 0.41);
        let out = apply(
            &multi_qubit_r(&ph3, Mode::Gate).unwrap(),
            &S::uniform(3).unwrap(),
        )
        .unwrap();
        assert_eq!(out.amplitudes(), ph3.phases());

        for m in 2..6 {
            let ones = PhaseVector::unitary(m, vec![one(); 1 << m]).unwrap();
            let r = multi_qubit_r(&ones, Mode::Gate).unwrap();
            assert_eq!(r.to_monomial(), swap_p(m).unwrap());
        }
    }

    #[test]
    fn printed_three_qubit_matrix_is_the_input_labeled_transpose() {
        // The printed 8×8 layout holds α_{label(σ(i))} in row i.
        let ph = phases(3, 0.9);
        let r = multi_qubit_r(&ph, Mode::Gate).unwrap().to_dense().unwrap();
        let printed = M::from_fn(8, 8, |i, j| {
            if j == sigma(i, 3) {
                ph.phases()[j]
            } else {
                c(0.0, 0.0)
            }
        });
        assert_ne!(printed, r);
        let t = M::from_fn(8, 8, |i, j| r[(j, i)]);
        assert_eq!(printed, t);
    }

    #[test]
    fn corners_and_body() {
        let ph = phases(3, 0.2);
        let r = multi_qubit_r(&ph, Mode::Gate).unwrap();
        assert_eq!(r.corner_phases(), (ph.phases()[0], ph.phases()[7]));
        assert_eq!(r.body_phases(), &ph.phases()[1..7]);
        let sum = &r.diagonal_part().unwrap() + &r.anti_diagonal_part().unwrap();
        assert_eq!(sum, r.to_dense().unwrap());
        let ad = r.anti_diagonal_part().unwrap();
        for i in 0..8 {
            for j in 0..8 {
                if ad[(i, j)] != c(0.0, 0.0) {
                    assert_eq!(i + j, 7);
                }
            }
        }
    }

    #[test]
    fn apply_examples() {
        let ones = PhaseVector::unitary(2, vec![one(); 4]).unwrap();
        let r = multi_qubit_r(&ones, Mode::Gate).unwrap();
        assert_eq!(apply(&r, &basis(&[1, 2])).unwrap(), basis(&[2, 1]));

        let ph = phases(10, 0.123);
        let r = multi_qubit_r(&ph, Mode::Gate).unwrap();
        let out = &r * &S::uniform(10).unwrap();
        assert!((out.norm_squared() - 1024.0).abs() < 1e-9);
        assert!(apply(&r, &S::uniform(3).unwrap()).is_err());
    }

    #[test]
    fn unitarity_examples() {
        assert_eq!(unitarity_residual(&M::identity(4)).unwrap(), 0.0);
        let r = two_qubit_r(
            c(0.0, 1.0),
            one(),
            C::from_polar(1.0, 1.0),
            one(),
            Mode::Gate,
        )
        .unwrap();
        assert!(unitarity_residual(r.matrix()).unwrap() < 1e-12);
        let bad = two_qubit_r(c(2.0, 0.0), one(), one(), one(), Mode::Analysis).unwrap();
        let res = unitarity_residual(bad.matrix()).unwrap();
        assert!(res >= 3.0);
        let sparse = multi_qubit_r(
            &PhaseVector::raw(2, vec![c(2.0, 0.0), one(), one(), one()]).unwrap(),
            Mode::Analysis,
        )
        .unwrap();
        assert_eq!(sparse.unitarity_residual(), res);
    }

    #[test]
    fn sparse_apply_matches_dense() {
        for m in 2..=6 {
            let ph = phases(m, 0.5 + m as f64);
            let r = multi_qubit_r(&ph, Mode::Gate).unwrap();
            let s = S::new(
                m,
                (0..1 << m)
                    .map(|i| c((i as f64).sin(), (i as f64 * 0.3).cos()))
                    .collect(),
            )
            .unwrap();
            let sparse = apply(&r, &s).unwrap();
            let dense = r.to_dense().unwrap().mat_vec(s.amplitudes()).unwrap();
            for (a, b) in sparse.amplitudes().iter().zip(&dense) {
                assert!((a - b).norm() < 1e-13);
            }
        }
    }
}
