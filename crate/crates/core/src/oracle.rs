//! Brute-force reference checks for the minor predicates and sparse paths.
//!
//! Nothing here goes through the `segre` or `entangler` code: rows are split
//! by walking every basis index, factors are recovered by projection, and
//! matrix-vector products are plain loops.

use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, MAX_DENSE_DIM};
use crate::qstate::{product_state, PureState};
use crate::scalar::{czero, inner, norm_sqr, Real, C};

/// Outcome of [`try_factor`].
#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationResult<T: Real> {
    pub success: bool,
    /// Single-qubit factors whose product approximates the state; set on success.
    pub factors: Option<Vec<PureState<T>>>,
    /// `‖s − ⊗ factors‖ / ‖s‖`.
    pub residual: T,
}

/// Outcome of splitting one qubit off a state.
#[derive(Clone, Debug, PartialEq)]
pub struct PeelResult<T: Real> {
    pub success: bool,
    /// Candidate state of the peeled qubit.
    pub factor: PureState<T>,
    /// Remaining `m − 1` qubits (reference row), absent for a single qubit.
    pub environment: Option<PureState<T>>,
    /// `‖X − factor ⊗ environment‖ / ‖X‖` for the split.
    pub residual: T,
}

/// Splits the amplitudes by the digit of qubit `j`, walking indices in order.
fn split_rows<T: Real>(s: &PureState<T>, j: usize) -> [Vec<C<T>>; 2] {
    let m = s.qubit_count();
    let mut rows = [
        Vec::with_capacity(s.dim() / 2),
        Vec::with_capacity(s.dim() / 2),
    ];
    for (idx, &a) in s.amplitudes().iter().enumerate() {
        rows[(idx >> (m - j)) & 1].push(a);
    }
    rows
}

/// Larger-norm row as reference; coefficients by projection onto it.
fn project_rows<T: Real>(rows: &[Vec<C<T>>; 2]) -> (usize, [C<T>; 2], T) {
    let norms = [norm_sqr(&rows[0]), norm_sqr(&rows[1])];
    let reference = usize::from(norms[1] > norms[0]);
    let env = &rows[reference];
    let env_norm = norms[reference];
    let mut coeffs = [czero(); 2];
    let mut resid = T::zero();
    for (k, row) in rows.iter().enumerate() {
        coeffs[k] = inner(env, row) / env_norm;
        resid = resid
            + row.iter().zip(env).fold(T::zero(), |acc, (x, e)| {
                acc + (x - coeffs[k] * e).norm_sqr()
            });
    }
    (reference, coeffs, resid.sqrt())
}

fn nonzero_norm<T: Real>(s: &PureState<T>) -> Result<T> {
    let n = s.norm();
    if n == T::zero() {
        return Err(Error::ZeroState);
    }
    Ok(n)
}

/// Tries to split qubit `j` (1-based) off `s`.
pub fn peel_qubit<T: Real>(s: &PureState<T>, j: usize, tol: T) -> Result<PeelResult<T>> {
    let m = s.qubit_count();
    if j == 0 || j > m {
        return Err(Error::QubitIndexOutOfRange {
            index: j,
            qubits: m,
        });
    }
    let norm = nonzero_norm(s)?;
    let rows = split_rows(s, j);
    let (reference, coeffs, resid) = project_rows(&rows);
    let residual = resid / norm;
    let environment = if m > 1 {
        Some(PureState::new(m - 1, rows[reference].clone())?)
    } else {
        None
    };
    Ok(PeelResult {
        success: residual <= tol,
        factor: PureState::qubit(coeffs[0], coeffs[1]),
        environment,
        residual,
    })
}

/// Greedy full factorization: one projection per qubit, then a single global
/// scale fitted to `s`. Succeeds when the relative residual is `≤ tol`.
pub fn try_factor<T: Real>(s: &PureState<T>, tol: T) -> Result<FactorizationResult<T>> {
    let norm = nonzero_norm(s)?;
    let m = s.qubit_count();
    let mut factors = Vec::with_capacity(m);
    for j in 1..=m {
        let (_, coeffs, _) = project_rows(&split_rows(s, j));
        factors.push(PureState::qubit(coeffs[0], coeffs[1]));
    }
    let candidate = product_state(&factors)?;
    let cand_norm = candidate.norm_squared();
    let lambda = if cand_norm > T::zero() {
        inner(candidate.amplitudes(), s.amplitudes()) / cand_norm
    } else {
        czero()
    };
    let residual = s
        .amplitudes()
        .iter()
        .zip(candidate.amplitudes())
        .fold(T::zero(), |acc, (x, p)| acc + (x - lambda * p).norm_sqr())
        .sqrt()
        / norm;
    let success = residual <= tol;
    factors[0] = factors[0].scale(lambda);
    Ok(FactorizationResult {
        success,
        factors: success.then_some(factors),
        residual,
    })
}

/// `√(2(1 − tr ρ²))` with `ρ` the reduced state of qubit 1 of `s/‖s‖`.
pub fn purity_concurrence_2q<T: Real>(s: &PureState<T>) -> Result<T> {
    if s.qubit_count() != 2 {
        return Err(Error::WrongQubitCount {
            expected: "2".into(),
            found: s.qubit_count(),
        });
    }
    let n = nonzero_norm(s)?;
    let s = s.scale(C::new(n.recip(), T::zero()));
    let rows = split_rows(&s, 1);
    let mut purity = T::zero();
    for a in &rows {
        for b in &rows {
            purity = purity + inner(b, a).norm_sqr();
        }
    }
    Ok((T::lit(2.0) * (T::one() - purity)).max(T::zero()).sqrt())
}

/// Plain `O(4^m)` matrix-vector product.
pub fn dense_reference_apply<T: Real>(
    r: &DenseMatrix<T>,
    s: &PureState<T>,
) -> Result<PureState<T>> {
    if !r.is_square() {
        return Err(Error::NotSquare {
            rows: r.rows(),
            cols: r.cols(),
        });
    }
    if r.cols() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: r.cols(),
            found: s.dim(),
        });
    }
    if s.dim() > MAX_DENSE_DIM {
        return Err(Error::TooLarge {
            dim: s.dim(),
            cap: MAX_DENSE_DIM,
        });
    }
    let amps = s.amplitudes();
    let mut out = vec![czero(); s.dim()];
    for (i, o) in out.iter_mut().enumerate() {
        for (k, a) in amps.iter().enumerate() {
            *o = *o + r[(i, k)] * a;
        }
    }
    PureState::new(s.qubit_count(), out)
}
