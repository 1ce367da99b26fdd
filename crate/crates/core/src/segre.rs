//! Flattenings, Segre-ideal generators and the minor-based entanglement
//! measures.
//!
//! Flattening `X^j` is the `2 × 2^{m−1}` matrix whose row `r` collects the
//! amplitudes with digit `r` on qubit `j`; columns run over the labels of the
//! remaining qubits in ascending index order. Qubit `j` factors out of the
//! state exactly when every 2×2 minor of `X^j` vanishes, and the state is a
//! full product exactly when this holds for every `j`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::qstate::{index_to_label, qubit_shift, Label, PureState};
use crate::scalar::{Real, C};

/// Default relative tolerance for the separability predicates.
pub const DEFAULT_TOL: f64 = 1e-10;

/// `X^j` for one qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct Flattening<T: Real> {
    qubit_index: usize,
    qubits: usize,
    rows: [Vec<C<T>>; 2],
}

impl<T: Real> Flattening<T> {
    pub fn qubit_index(&self) -> usize {
        self.qubit_index
    }

    pub fn columns(&self) -> usize {
        self.rows[0].len()
    }

    /// Row for digit `1` (`r = 0`) or digit `2` (`r = 1`).
    pub fn row(&self, r: usize) -> &[C<T>] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> C<T> {
        self.rows[r][c]
    }

    /// `(m−1)`-digit labels of the remaining qubits, one per column.
    pub fn column_labels(&self) -> Vec<Label> {
        (0..self.columns())
            .map(|c| index_to_label(c, self.qubits - 1).expect("column in range"))
            .collect()
    }

    /// Full-state index of entry `(r, c)`.
    pub fn state_index(&self, r: usize, c: usize) -> usize {
        let shift = qubit_shift(self.qubit_index, self.qubits);
        let low = c & ((1 << shift) - 1);
        let high = c >> shift;
        (high << (shift + 1)) | (r << shift) | low
    }
}

fn check_j(j: usize, m: usize) -> Result<()> {
    if j == 0 || j > m {
        return Err(Error::QubitIndexOutOfRange {
            index: j,
            qubits: m,
        });
    }
    Ok(())
}

fn check_at_least_two<T: Real>(s: &PureState<T>) -> Result<()> {
    if s.qubit_count() < 2 {
        return Err(Error::WrongQubitCount {
            expected: "at least 2".into(),
            found: s.qubit_count(),
        });
    }
    Ok(())
}

/// Reads the amplitudes of `s` into `X^j` (`j` is 1-based).
pub fn flattening<T: Real>(s: &PureState<T>, j: usize) -> Result<Flattening<T>> {
    let m = s.qubit_count();
    check_j(j, m)?;
    let mut f = Flattening {
        qubit_index: j,
        qubits: m,
        rows: [Vec::new(), Vec::new()],
    };
    let cols = 1usize << (m - 1);
    let amps = s.amplitudes();
    for r in 0..2 {
        f.rows[r] = (0..cols).map(|c| amps[f.state_index(r, c)]).collect();
    }
    Ok(f)
}

/// Visits every minor `f[1,c]·f[2,c′] − f[1,c′]·f[2,c]` for `c < c′` in
/// lexicographic order.
fn for_each_minor<T: Real>(f: &Flattening<T>, mut visit: impl FnMut(usize, usize, C<T>)) {
    let (top, bottom) = (&f.rows[0], &f.rows[1]);
    for c in 0..top.len() {
        for d in c + 1..top.len() {
            visit(c, d, top[c] * bottom[d] - top[d] * bottom[c]);
        }
    }
}

/// All 2×2 minors of `f`, column pairs in lexicographic order.
pub fn minors_2x2<T: Real>(f: &Flattening<T>) -> Vec<C<T>> {
    let n = f.columns();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for_each_minor(f, |_, _, v| out.push(v));
    out
}

/// Largest minor modulus of `X^j`.
pub fn max_abs_minor<T: Real>(s: &PureState<T>, j: usize) -> Result<T> {
    let f = flattening(s, j)?;
    let mut max = T::zero();
    for_each_minor(&f, |_, _, v| max = max.max(v.norm()));
    Ok(max)
}

/// One evaluated minor of a flattening.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Minor<T> {
    pub cols: (usize, usize),
    pub value: C<T>,
}

/// Distinct ideal generator `α_{p.0}α_{p.1} − α_{q.0}α_{q.1}`, identified by
/// its two monomials (sorted state-index pairs) with `plus < minus`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Generator<T> {
    pub plus: (usize, usize),
    pub minus: (usize, usize),
    pub value: C<T>,
    /// Number of flattenings in which the generator occurs, up to sign.
    pub multiplicity: usize,
}

/// Every minor of every flattening plus the deduplicated generator list.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorReport<T> {
    pub qubits: usize,
    /// `per_flattening[j−1]` lists the minors of `X^j`.
    pub per_flattening: Vec<Vec<Minor<T>>>,
    /// Distinct generators in order of first occurrence.
    pub distinct: Vec<Generator<T>>,
    pub max_abs_minor: T,
}

impl<T: Real> GeneratorReport<T> {
    pub fn raw_count(&self) -> usize {
        self.per_flattening.iter().map(Vec::len).sum()
    }

    /// Largest minor modulus per flattening.
    pub fn max_per_flattening(&self) -> Vec<T> {
        self.per_flattening
            .iter()
            .map(|ms| ms.iter().fold(T::zero(), |a, m| a.max(m.value.norm())))
            .collect()
    }
}

fn sorted(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

type MonomialPair = ((usize, usize), (usize, usize));

/// Evaluates all `m·C(2^{m−1}, 2)` flattening minors and dedupes them.
pub fn segre_generators<T: Real>(s: &PureState<T>) -> Result<GeneratorReport<T>> {
    check_at_least_two(s)?;
    let m = s.qubit_count();
    let mut per_flattening = Vec::with_capacity(m);
    let mut distinct: Vec<Generator<T>> = Vec::new();
    let mut seen: HashMap<MonomialPair, usize> = HashMap::new();
    let mut max_abs = T::zero();
    for j in 1..=m {
        let f = flattening(s, j)?;
        let mut minors = Vec::new();
        for_each_minor(&f, |c, d, value| {
            minors.push(Minor {
                cols: (c, d),
                value,
            });
            max_abs = max_abs.max(value.norm());
            let p = sorted(f.state_index(0, c), f.state_index(1, d));
            let q = sorted(f.state_index(0, d), f.state_index(1, c));
            let (key, signed) = if p < q {
                ((p, q), value)
            } else {
                ((q, p), -value)
            };
            match seen.get(&key) {
                Some(&k) => distinct[k].multiplicity += 1,
                None => {
                    seen.insert(key, distinct.len());
                    distinct.push(Generator {
                        plus: key.0,
                        minus: key.1,
                        value: signed,
                        multiplicity: 1,
                    });
                }
            }
        });
        per_flattening.push(minors);
    }
    Ok(GeneratorReport {
        qubits: m,
        per_flattening,
        distinct,
        max_abs_minor: max_abs,
    })
}

/// Qubit `j` factors out: every minor of `X^j` has modulus `≤ tol·‖s‖²`.
pub fn is_j_separable<T: Real>(s: &PureState<T>, j: usize, tol: T) -> Result<bool> {
    let f = flattening(s, j)?;
    let bound = tol * s.norm_squared();
    let mut ok = true;
    // Row-major early exit without allocating the minor list.
    'outer: for c in 0..f.columns() {
        for d in c + 1..f.columns() {
            let v = f.rows[0][c] * f.rows[1][d] - f.rows[0][d] * f.rows[1][c];
            if v.norm().is_nan() || v.norm() > bound {
                ok = false;
                break 'outer;
            }
        }
    }
    Ok(ok)
}

/// Conjunction of [`is_j_separable`] over all qubits.
pub fn is_fully_separable<T: Real>(s: &PureState<T>, tol: T) -> Result<bool> {
    for j in 1..=s.qubit_count() {
        if !is_j_separable(s, j, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `2·|α₁₁α₂₂ − α₁₂α₂₁|` on raw amplitudes.
pub fn concurrence_2q<T: Real>(s: &PureState<T>) -> Result<T> {
    if s.qubit_count() != 2 {
        return Err(Error::WrongQubitCount {
            expected: "2".into(),
            found: s.qubit_count(),
        });
    }
    let a = s.amplitudes();
    Ok(T::lit(2.0) * (a[0] * a[3] - a[1] * a[2]).norm())
}

/// Index pairs `((a, b), (c, d))` of `T_k = α_a α_b − α_c α_d`, `k = 1..12`.
/// The last entry is `α₁₁₂α₂₂₁ − α₁₂₂α₂₁₁`, the generator from `X²` that the
/// published list duplicates as a second copy of `T₁₁`.
pub const THREE_QUBIT_GENERATORS: [((usize, usize), (usize, usize)); 12] = [
    ((0, 6), (2, 4)), // 111·221 − 121·211
    ((1, 7), (3, 5)), // 112·222 − 122·212
    ((0, 5), (1, 4)), // 111·212 − 112·211
    ((2, 7), (3, 6)), // 121·222 − 122·221
    ((0, 3), (1, 2)), // 111·122 − 112·121
    ((4, 7), (5, 6)), // 211·222 − 212·221
    ((0, 7), (1, 6)), // 111·222 − 112·221
    ((0, 7), (2, 5)), // 111·222 − 121·212
    ((0, 7), (3, 4)), // 111·222 − 122·211
    ((1, 6), (2, 5)), // 112·221 − 121·212
    ((2, 5), (3, 4)), // 121·212 − 122·211
    ((1, 6), (3, 4)), // 112·221 − 122·211
];

fn check_three<T: Real>(s: &PureState<T>) -> Result<()> {
    if s.qubit_count() != 3 {
        return Err(Error::WrongQubitCount {
            expected: "3".into(),
            found: s.qubit_count(),
        });
    }
    Ok(())
}

/// `T₁ … T₁₂` evaluated on a three-qubit state.
pub fn three_qubit_generators<T: Real>(s: &PureState<T>) -> Result<[C<T>; 12]> {
    check_three(s)?;
    let a = s.amplitudes();
    Ok(THREE_QUBIT_GENERATORS.map(|((p, q), (r, t))| a[p] * a[q] - a[r] * a[t]))
}

/// `(2·Σ_{k≤6} |T_k|² + Σ_{k>6} |T_k|²)^{1/2}`.
pub fn measure_3q<T: Real>(s: &PureState<T>) -> Result<T> {
    let t = three_qubit_generators(s)?;
    let two = T::lit(2.0);
    let sum = t.iter().enumerate().fold(T::zero(), |acc, (k, v)| {
        acc + if k < 6 {
            two * v.norm_sqr()
        } else {
            v.norm_sqr()
        }
    });
    Ok(sum.sqrt())
}

/// `(Σ_j Σ_{minors of X^j} |minor|²)^{1/2}`.
pub fn measure_mq<T: Real>(s: &PureState<T>) -> Result<T> {
    check_at_least_two(s)?;
    let mut sum = T::zero();
    for j in 1..=s.qubit_count() {
        let f = flattening(s, j)?;
        for_each_minor(&f, |_, _, v| sum = sum + v.norm_sqr());
    }
    Ok(sum.sqrt())
}
