//! Multi-qubit pure states as amplitude vectors.
//!
//! Basis labels use digits `1` and `2` per qubit. Digit `1` is bit `0` and the
//! first qubit is the most significant bit, so the label `k_1 … k_m` sits at
//! index `Σ_j (k_j − 1)·2^{m−j}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{cone, czero, inner, norm_sqr, Real, C};

/// Largest register this crate will allocate.
pub const MAX_QUBITS: usize = 30;

/// Basis label `k_1 k_2 … k_m` with every digit in `{1, 2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(Vec<u8>);

impl Label {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        check_digits(&digits)?;
        Ok(Self(digits))
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index(&self) -> usize {
        self.0
            .iter()
            .fold(0usize, |acc, &d| (acc << 1) | usize::from(d - 1))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

fn check_digits(digits: &[u8]) -> Result<()> {
    match digits.iter().position(|d| !matches!(d, 1 | 2)) {
        Some(position) => Err(Error::InvalidLabel {
            position,
            digit: digits[position],
        }),
        None => Ok(()),
    }
}

/// Index of the basis vector with the given digits.
pub fn label_to_index(digits: &[u8]) -> Result<usize> {
    check_digits(digits)?;
    if digits.len() > usize::BITS as usize - 1 {
        return Err(Error::InvalidQubitCount {
            found: digits.len(),
            max: usize::BITS as usize - 1,
        });
    }
    Ok(Label(digits.to_vec()).index())
}

/// Inverse of [`label_to_index`] for an `m`-qubit register.
pub fn index_to_label(index: usize, qubits: usize) -> Result<Label> {
    if qubits >= usize::BITS as usize || index >> qubits != 0 {
        return Err(Error::IndexOutOfRange { index, qubits });
    }
    Ok(Label(
        (0..qubits)
            .map(|j| 1 + ((index >> (qubits - 1 - j)) & 1) as u8)
            .collect(),
    ))
}

/// Bit position (from the least significant end) of 1-based qubit `j`.
#[inline]
pub(crate) fn qubit_shift(j: usize, qubits: usize) -> usize {
    qubits - j
}

fn check_qubits(qubits: usize) -> Result<()> {
    if qubits == 0 || qubits > MAX_QUBITS {
        return Err(Error::InvalidQubitCount {
            found: qubits,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Unnormalized pure state of `m` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState<T: Real> {
    qubits: usize,
    amplitudes: Vec<C<T>>,
}

impl<T: Real> PureState<T> {
    pub fn new(qubits: usize, amplitudes: Vec<C<T>>) -> Result<Self> {
        check_qubits(qubits)?;
        if amplitudes.len() != 1 << qubits {
            return Err(Error::LengthMismatch {
                expected: 1 << qubits,
                found: amplitudes.len(),
            });
        }
        Ok(Self { qubits, amplitudes })
    }

    /// Infers the qubit count from a power-of-two length.
    pub fn from_amplitudes(amplitudes: Vec<C<T>>) -> Result<Self> {
        let n = amplitudes.len();
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::Format(format!(
                "amplitude count {n} is not a power of two"
            )));
        }
        Self::new(n.trailing_zeros() as usize, amplitudes)
    }

    pub fn zero(qubits: usize) -> Result<Self> {
        check_qubits(qubits)?;
        Ok(Self {
            qubits,
            amplitudes: vec![czero(); 1 << qubits],
        })
    }

    /// Single qubit `a|1⟩ + b|2⟩`.
    pub fn qubit(a: C<T>, b: C<T>) -> Self {
        Self {
            qubits: 1,
            amplitudes: vec![a, b],
        }
    }

    pub fn basis(label: &Label) -> Result<Self> {
        let mut s = Self::zero(label.len())?;
        s.amplitudes[label.index()] = cone();
        Ok(s)
    }

    /// `(|1⟩ + |2⟩)^{⊗m}`, unnormalized: every amplitude is exactly one.
    pub fn uniform(qubits: usize) -> Result<Self> {
        check_qubits(qubits)?;
        Ok(Self {
            qubits,
            amplitudes: vec![cone(); 1 << qubits],
        })
    }

    /// `(|1…1⟩ + |2…2⟩)/√2`.
    pub fn ghz(qubits: usize) -> Result<Self> {
        let mut s = Self::zero(qubits)?;
        let h = C::new(T::FRAC_1_SQRT_2(), T::zero());
        s.amplitudes[0] = h;
        s.amplitudes[(1 << qubits) - 1] = h;
        Ok(s)
    }

    /// Equal superposition of the labels holding a single `2`, normalized.
    pub fn w(qubits: usize) -> Result<Self> {
        let mut s = Self::zero(qubits)?;
        let amp = C::new(T::lit(qubits as f64).sqrt().recip(), T::zero());
        for j in 0..qubits {
            s.amplitudes[1 << j] = amp;
        }
        Ok(s)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C<T>> {
        self.amplitudes
    }

    pub fn amplitude(&self, label: &Label) -> Result<C<T>> {
        if label.len() != self.qubits {
            return Err(Error::QubitMismatch {
                left: label.len(),
                right: self.qubits,
            });
        }
        Ok(self.amplitudes[label.index()])
    }

    pub fn norm_squared(&self) -> T {
        norm_sqr(&self.amplitudes)
    }

    pub fn norm(&self) -> T {
        self.norm_squared().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.iter().all(|z| *z == czero())
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == T::zero() {
            return Err(Error::ZeroState);
        }
        Ok(self.scale(C::new(n.recip(), T::zero())))
    }

    pub fn scale(&self, factor: C<T>) -> Self {
        Self {
            qubits: self.qubits,
            amplitudes: self.amplitudes.iter().map(|z| z * factor).collect(),
        }
    }

    /// Reorders qubits: qubit `k` (1-based) of the result is qubit
    /// `order[k-1]` of `self`. `order` is a permutation of `1..=m`.
    pub fn permute_qubits(&self, order: &[usize]) -> Result<Self> {
        let m = self.qubits;
        if order.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                found: order.len(),
            });
        }
        let mut seen = vec![false; m];
        for &q in order {
            if q == 0 || q > m || std::mem::replace(&mut seen[q - 1], true) {
                return Err(Error::Format(format!(
                    "qubit order {order:?} is not a permutation of 1..={m}"
                )));
            }
        }
        let mut out = vec![czero(); self.dim()];
        for (new_index, slot) in out.iter_mut().enumerate() {
            let mut old_index = 0usize;
            for (k, &q) in order.iter().enumerate() {
                let bit = (new_index >> qubit_shift(k + 1, m)) & 1;
                old_index |= bit << qubit_shift(q, m);
            }
            *slot = self.amplitudes[old_index];
        }
        Ok(Self {
            qubits: m,
            amplitudes: out,
        })
    }
}

/// `a ⊗ b`; the amplitude at label `(k_a, k_b)` is `a[k_a]·b[k_b]`.
pub fn tensor_product<T: Real>(a: &PureState<T>, b: &PureState<T>) -> Result<PureState<T>> {
    let qubits = a.qubits + b.qubits;
    check_qubits(qubits)?;
    let amplitudes = a
        .amplitudes
        .iter()
        .flat_map(|x| b.amplitudes.iter().map(move |y| x * y))
        .collect();
    Ok(PureState { qubits, amplitudes })
}

/// Segre embedding of single-qubit factors: the amplitude at
/// `(k_1, …, k_m)` is `Π_j f_j[k_j]`.
pub fn product_state<T: Real>(factors: &[PureState<T>]) -> Result<PureState<T>> {
    if let Some((position, f)) = factors.iter().enumerate().find(|(_, f)| f.qubits != 1) {
        return Err(Error::NotSingleQubit {
            position,
            found: f.qubits,
        });
    }
    let (first, rest) = factors.split_first().ok_or(Error::InvalidQubitCount {
        found: 0,
        max: MAX_QUBITS,
    })?;
    rest.iter()
        .try_fold(first.clone(), |acc, f| tensor_product(&acc, f))
}

/// Projective equivalence: `a ≈ λ·b` for some nonzero `λ`, judged by
/// `‖a − λb‖ ≤ tol·max(‖a‖, ‖b‖)` with `λ` read off the largest amplitude of `b`.
pub fn proportional<T: Real>(a: &PureState<T>, b: &PureState<T>, tol: T) -> Result<bool> {
    if a.qubits != b.qubits {
        return Err(Error::QubitMismatch {
            left: a.qubits,
            right: b.qubits,
        });
    }
    let (a_zero, b_zero) = (a.is_zero(), b.is_zero());
    if a_zero || b_zero {
        return Ok(a_zero && b_zero);
    }
    let pivot = b
        .amplitudes
        .iter()
        .enumerate()
        .fold((0, T::neg_infinity()), |best, (i, z)| {
            let n = z.norm_sqr();
            if n > best.1 {
                (i, n)
            } else {
                best
            }
        })
        .0;
    let lambda = a.amplitudes[pivot] / b.amplitudes[pivot];
    if lambda == czero() {
        return Ok(false);
    }
    let diff = a
        .amplitudes
        .iter()
        .zip(&b.amplitudes)
        .fold(T::zero(), |acc, (x, y)| acc + (x - lambda * y).norm_sqr())
        .sqrt();
    Ok(diff <= tol * a.norm().max(b.norm()))
}

/// `⟨a|b⟩` for equal-sized states.
pub fn overlap<T: Real>(a: &PureState<T>, b: &PureState<T>) -> Result<C<T>> {
    if a.qubits != b.qubits {
        return Err(Error::QubitMismatch {
            left: a.qubits,
            right: b.qubits,
        });
    }
    Ok(inner(&a.amplitudes, &b.amplitudes))
}
