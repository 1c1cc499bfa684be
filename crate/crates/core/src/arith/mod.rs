//! Arbitrary-precision scalars and the special functions built on them.

pub mod bernoulli;
mod bigreal;
pub mod complex;
mod context;
pub mod gamma;
pub mod hurwitz;
mod real;

pub use bigreal::BigReal;
pub use context::PrecisionContext;
pub use gamma::{digamma, gamma, log_gamma};
pub use hurwitz::{hurwitz_regular, hurwitz_zeta, hurwitz_zeta_ds, RegularPart};
pub use real::Real;

use crate::error::{Error, Result};

/// `ln x`, rejecting `x <= 0`.
pub fn checked_ln<T: Real>(x: &T) -> Result<T> {
    if !(x > &T::zero()) {
        return Err(Error::domain(format!("log of non-positive value {x}")));
    }
    Ok(x.ln())
}

pub fn checked_sqrt<T: Real>(x: &T) -> Result<T> {
    if x < &T::zero() {
        return Err(Error::domain(format!("sqrt of negative value {x}")));
    }
    Ok(x.sqrt())
}

pub fn checked_div<T: Real>(a: &T, b: &T) -> Result<T> {
    if b.is_zero() {
        return Err(Error::domain("division by zero"));
    }
    Ok(a.clone() / b)
}
