//! Integer relations, rational reconstruction and log-span membership.

pub mod expr;
mod logspan;
mod pslq;
mod rational;

pub use logspan::{
    independent_sines, logspan_basis, logspan_member, max_denominator, LogSpanElement, LogSpanOutcome,
};
pub use pslq::{pslq, PslqOptions, PslqOutcome, MIN_PSLQ_BITS};
pub use rational::rational_recover;
