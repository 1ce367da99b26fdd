//! Braid words, the tensor-position representation `τ(b_i)` of a two-strand
//! operator, and numerical Yang-Baxter / braid-relation checks.
//!
//! Everything here is dense and meant for verification-sized spaces: the
//! largest operator formed is capped at [`MAX_DENSE_DIM`].

use crate::error::{Error, Result};
use crate::matrix::{unitarity_residual, DenseMatrix, MAX_DENSE_DIM};
use crate::scalar::{Real, C};

/// Operator `R` on `V ⊗ V` with `dim V = local_dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoStrandOperator<T: Real> {
    local_dim: usize,
    matrix: DenseMatrix<T>,
}

impl<T: Real> TwoStrandOperator<T> {
    /// Wraps a square matrix whose side is a perfect square `n²`.
    pub fn new(matrix: DenseMatrix<T>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let side = matrix.rows();
        let n = (1..=side).find(|n| n * n >= side).unwrap_or(0);
        if n == 0 || n * n != side {
            return Err(Error::NotPerfectSquare { side });
        }
        Ok(Self {
            local_dim: n,
            matrix,
        })
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn matrix(&self) -> &DenseMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DenseMatrix<T> {
        self.matrix
    }

    pub fn scale(&self, factor: C<T>) -> Self {
        Self {
            local_dim: self.local_dim,
            matrix: self.matrix.scale(factor),
        }
    }
}

fn checked_pow(base: usize, exp: usize) -> Result<usize> {
    match u32::try_from(exp).ok().and_then(|e| base.checked_pow(e)) {
        Some(d) if d <= MAX_DENSE_DIM => Ok(d),
        other => Err(Error::TooLarge {
            dim: other.unwrap_or(usize::MAX),
            cap: MAX_DENSE_DIM,
        }),
    }
}

/// `‖(R⊗I)(I⊗R)(R⊗I) − (I⊗R)(R⊗I)(I⊗R)‖_F` on `V⊗V⊗V`.
pub fn ybe_residual<T: Real>(r: &TwoStrandOperator<T>) -> Result<T> {
    let n = r.local_dim;
    checked_pow(n, 3)?;
    let id = DenseMatrix::identity(n);
    let left = r.matrix.kron(&id);
    let right = id.kron(&r.matrix);
    let lhs = &(&left * &right) * &left;
    let rhs = &(&right * &left) * &right;
    Ok((&lhs - &rhs).frobenius_norm())
}

/// `τ(b_i) = I ⊗ … ⊗ R ⊗ … ⊗ I` with `R` on strands `i, i+1` (1-based).
pub fn tau_generator<T: Real>(
    r: &TwoStrandOperator<T>,
    i: usize,
    strands: usize,
) -> Result<DenseMatrix<T>> {
    embed(&r.matrix, r.local_dim, i, strands)
}

fn embed<T: Real>(
    block: &DenseMatrix<T>,
    local_dim: usize,
    i: usize,
    strands: usize,
) -> Result<DenseMatrix<T>> {
    if strands < 2 {
        return Err(Error::TooFewStrands {
            required: 2,
            found: strands,
        });
    }
    if i == 0 || i >= strands {
        return Err(Error::GeneratorOutOfRange { index: i, strands });
    }
    checked_pow(local_dim, strands)?;
    let before = DenseMatrix::identity(local_dim.pow(i as u32 - 1));
    let after = DenseMatrix::identity(local_dim.pow((strands - i - 1) as u32));
    Ok(before.kron(block).kron(&after))
}

/// Largest Frobenius residuals of the two braid-group relations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BraidResiduals<T> {
    /// `max ‖τ(b_i)τ(b_j) − τ(b_j)τ(b_i)‖` over `|i − j| ≥ 2`.
    pub far_commutation: T,
    /// `max ‖τ(b_i)τ(b_{i+1})τ(b_i) − τ(b_{i+1})τ(b_i)τ(b_{i+1})‖`.
    pub braid: T,
}

pub fn braid_relation_residuals<T: Real>(
    r: &TwoStrandOperator<T>,
    strands: usize,
) -> Result<BraidResiduals<T>> {
    if strands < 3 {
        return Err(Error::TooFewStrands {
            required: 3,
            found: strands,
        });
    }
    let gens = (1..strands)
        .map(|i| tau_generator(r, i, strands))
        .collect::<Result<Vec<_>>>()?;
    let mut far = T::zero();
    let mut braid = T::zero();
    for (a, ga) in gens.iter().enumerate() {
        for gb in gens.iter().skip(a + 2) {
            far = far.max((&(ga * gb) - &(gb * ga)).frobenius_norm());
        }
        if let Some(gn) = gens.get(a + 1) {
            let lhs = &(ga * gn) * ga;
            let rhs = &(gn * ga) * gn;
            braid = braid.max((&lhs - &rhs).frobenius_norm());
        }
    }
    Ok(BraidResiduals {
        far_commutation: far,
        braid,
    })
}

/// One letter `b_i^{±1}` of a braid word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Self {
            generator,
            inverse: false,
        }
    }

    pub fn neg(generator: usize) -> Self {
        Self {
            generator,
            inverse: true,
        }
    }

    pub fn exponent(&self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// Word in the Artin generators of `B_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::TooFewStrands {
                required: 2,
                found: strands,
            });
        }
        if let Some(bad) = letters
            .iter()
            .find(|l| l.generator == 0 || l.generator >= strands)
        {
            return Err(Error::GeneratorOutOfRange {
                index: bad.generator,
                strands,
            });
        }
        Ok(Self { strands, letters })
    }

    pub fn empty(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    generator: l.generator,
                    inverse: !l.inverse,
                })
                .collect(),
        }
    }
}

/// Inverse of `R`: the adjoint when `R` is unitary to 1e-8, otherwise
/// Gauss-Jordan with a relative pivot floor of 1e-10.
fn invert<T: Real>(r: &TwoStrandOperator<T>) -> Result<DenseMatrix<T>> {
    if unitarity_residual(&r.matrix)? < T::lit(1e-8) {
        return Ok(r.matrix.adjoint());
    }
    r.matrix.inverse(T::lit(1e-10))
}

/// Matrix of the word; the leftmost letter acts on states first.
pub fn represent_word<T: Real>(
    word: &BraidWord,
    r: &TwoStrandOperator<T>,
) -> Result<DenseMatrix<T>> {
    let r_inv = invert(r)?;
    let dim = checked_pow(r.local_dim, word.strands)?;
    word.letters
        .iter()
        .try_fold(DenseMatrix::identity(dim), |acc, letter| {
            let block = if letter.inverse { &r_inv } else { &r.matrix };
            let g = embed(block, r.local_dim, letter.generator, word.strands)?;
            g.matmul(&acc)
        })
}
