//! The Krawtchouk generalized oscillator.
//!
//! Everything is built on the renormalized Krawtchouk polynomials and the
//! symmetric Jacobi matrix of their three-term recurrence:
//!
//! - [`polynomials`]: the polynomials, their binomial weight, the zero-diagonal
//!   auxiliary family and the roots that drive the explicit coherent-state sum.
//! - [`oscillator`]: coordinate, momentum, Hamiltonian and ladder operators in
//!   the Fock basis.
//! - [`as_oscillator`]: the difference-operator oscillator on the nonuniform
//!   grid, its `so(3)` ladder and the unitary intertwiner to the Fock picture.
//! - [`coherent`]: displacement, explicit root-sum, spin and phase coherent
//!   states.
//! - [`numerics`]: the small dense linear-algebra kernel underneath.
//!
//! All math is generic over the scalar type ([`Real`], implemented for `f32`
//! and `f64`). The aliases at the crate root fix the scalar to `f64`, which is
//! what the tolerances quoted in the docs and tests refer to.

pub mod as_oscillator;
pub mod coherent;
mod error;
pub mod numerics;
pub mod oscillator;
pub mod polynomials;
mod scalar;

pub use error::{Error, Result};
pub use num_complex::Complex;
pub use scalar::Real;

pub type Complex64 = Complex<f64>;
pub type Params = polynomials::OscillatorParams<f64>;
pub type Recurrence = polynomials::RecurrenceCoefficients<f64>;
pub type Table = polynomials::PolynomialTable<f64>;
pub type Spectral = numerics::SpectralData<f64>;
pub type Tridiagonal = numerics::SymTridiagonal<f64>;
pub type RealMatrix = numerics::RealMatrix<f64>;
pub type ComplexMatrix = numerics::ComplexMatrix<f64>;
pub type Operator = oscillator::OperatorMatrix<f64>;
pub type Fock = oscillator::FockVector<f64>;
pub type Grid = as_oscillator::AsGrid<f64>;
pub type State = coherent::CoherentState<f64>;
