use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Working precision threaded through every numeric call.
///
/// `bits` is the precision results are promised at; `guard_bits` are carried
/// on top of it internally so that accumulated rounding stays below the
/// promised level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrecisionContext {
    bits: u32,
    guard_bits: u32,
}

impl PrecisionContext {
    pub const MIN_BITS: u32 = 64;
    pub const DEFAULT_GUARD_BITS: u32 = 32;

    pub fn new(bits: u32) -> Result<Self> {
        Self::with_guard(bits, Self::DEFAULT_GUARD_BITS)
    }

    pub fn with_guard(bits: u32, guard_bits: u32) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(Error::InvalidPrecision(format!(
                "{bits} bits requested, at least {} required",
                Self::MIN_BITS
            )));
        }
        Ok(PrecisionContext { bits, guard_bits })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    /// Mantissa size used for intermediate values.
    pub fn working_bits(&self) -> u32 {
        self.bits + self.guard_bits
    }

    /// Same guard, more bits. Used for cross-precision consistency checks.
    pub fn widened(&self, extra_bits: u32) -> Self {
        PrecisionContext {
            bits: self.bits + extra_bits,
            guard_bits: self.guard_bits,
        }
    }

    /// Number of decimal digits that the promised precision supports.
    pub fn decimal_digits(&self) -> usize {
        (f64::from(self.bits) * std::f64::consts::LOG10_2).ceil() as usize
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            bits: 256,
            guard_bits: Self::DEFAULT_GUARD_BITS,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_precision() {
        assert!(matches!(
            PrecisionContext::new(63),
            Err(Error::InvalidPrecision(_))
        ));
        let ctx = PrecisionContext::new(64).unwrap();
        assert_eq!(ctx.working_bits(), 96);
    }

    #[test]
    fn digits() {
        assert_eq!(PrecisionContext::default().decimal_digits(), 78);
    }
}
