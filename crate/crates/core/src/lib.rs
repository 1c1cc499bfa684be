//! Faltings heights of CM types on abelian fields, computed two ways: from
//! logarithmic derivatives of Dirichlet L-functions at `s = 0`, and from a
//! linear system over the Galois group whose right side is built from the
//! rotational R-genus values. The routes agree up to a rational factor and an
//! element of the log-span of the ramified primes.
//!
//! Numerical code is generic over [`Real`]; the aliases below fix the scalar.

pub mod arith;
pub mod characters;
pub mod cmtypes;
pub mod error;
pub mod heights;
pub mod lfunctions;
pub mod relation;
pub mod torsion;
pub mod verify;

pub use arith::{BigReal, PrecisionContext, Real};
pub use error::{Error, Result};
pub use num_complex::Complex;

pub type BigComplex = Complex<BigReal>;
pub type GroupFunctionBig = characters::GroupFunction<BigReal>;
pub type HeightReportBig = heights::HeightReport<BigReal>;
pub type HeightReportF64 = heights::HeightReport<f64>;
pub type HeightSystemBig = heights::HeightSystem<BigReal>;
pub type TorsionInstanceBig = torsion::TorsionInstance<BigReal>;
pub type CaseResultBig = verify::CaseResult<BigReal>;
