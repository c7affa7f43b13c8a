//! Arithmetic substrate: exact rationals, Bernoulli numbers, binary
//! floating point with directed rounding, and interval enclosures.

mod bernoulli;
mod elementary;
mod interval;
mod rational;
mod real;

pub use bernoulli::{bernoulli, BernoulliTable, PRACTICAL_MAX_INDEX};
pub use elementary::{
    e, interval_exp, interval_ln, interval_pow, interval_sinh, interval_sinhc, interval_sqrt, ln2, pi,
};
pub use interval::{rational_to_interval, Certainty, Interval};
pub use rational::Rational;
pub use real::{check_precision, decimal_digits, Real, Round, MAX_PRECISION, MIN_PRECISION};

/// Working precision used when none is given.
pub const DEFAULT_PRECISION: u32 = 256;
