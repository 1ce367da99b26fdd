//! Braided entangling gates and Segre-minor separability for multi-qubit
//! pure states.
//!
//! * [`qstate`]: amplitude vectors, label/index conventions, tensor products.
//! * [`braid`]: braid words, `τ(b_i)`, Yang-Baxter and braid-relation residuals.
//! * [`entangler`]: the two-qubit `R`, the `δδM` family, and the sparse
//!   `2^m × 2^m` permutation-phase entangler with its swap and phase gate.
//! * [`segre`]: flattenings, 2×2 minors, separability predicates and measures.
//! * [`oracle`]: independent brute-force checks used by the test suites.
//! * [`io`]: JSON file formats.
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the double-precision instantiation used by the file formats and CLI.

pub mod braid;
pub mod entangler;
pub mod error;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod qstate;
pub mod random;
pub mod scalar;
pub mod segre;

pub use error::{Error, Result};
pub use scalar::{Real, C};

pub type C64 = C<f64>;
pub type State = qstate::PureState<f64>;
pub type State32 = qstate::PureState<f32>;
pub type Phases = entangler::PhaseVector<f64>;
pub type Phases32 = entangler::PhaseVector<f32>;
pub type Entangler = entangler::EntanglerOperator<f64>;
pub type Entangler32 = entangler::EntanglerOperator<f32>;
pub type RMatrix = braid::TwoStrandOperator<f64>;
pub type RMatrix32 = braid::TwoStrandOperator<f32>;
pub type Matrix = matrix::DenseMatrix<f64>;
pub type Matrix32 = matrix::DenseMatrix<f32>;
pub type Report = segre::GeneratorReport<f64>;
pub type Factorization = oracle::FactorizationResult<f64>;
