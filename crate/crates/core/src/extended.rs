//! Non-negative reals extended with `+inf`.
//!
//! Relative entropies diverge when the reference state lacks support, so
//! differences of them can be `inf - inf`. That case is surfaced as
//! [`Error::Indeterminate`] instead of a NaN.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    Infinite,
}

impl ExtendedReal {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(x) => Some(x),
            ExtendedReal::Infinite => None,
        }
    }

    /// Value as an `f64`, mapping the infinite case to `f64::INFINITY`.
    pub fn value(self) -> f64 {
        match self {
            ExtendedReal::Finite(x) => x,
            ExtendedReal::Infinite => f64::INFINITY,
        }
    }

    /// `self - other` for two quantities that are each `>= 0` or `+inf`.
    ///
    /// `inf - inf` is [`Error::Indeterminate`]; `finite - inf` would be
    /// `-inf` and is reported as a consistency violation.
    pub fn checked_sub(self, other: ExtendedReal, quantity: &'static str) -> Result<ExtendedReal> {
        match (self, other) {
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => Ok(ExtendedReal::Finite(a - b)),
            (ExtendedReal::Infinite, ExtendedReal::Finite(_)) => Ok(ExtendedReal::Infinite),
            (ExtendedReal::Infinite, ExtendedReal::Infinite) => Err(Error::Indeterminate),
            (ExtendedReal::Finite(_), ExtendedReal::Infinite) => Err(Error::ConsistencyViolation {
                quantity,
                value: f64::NEG_INFINITY,
            }),
        }
    }
}

impl From<f64> for ExtendedReal {
    fn from(x: f64) -> Self {
        if x == f64::INFINITY {
            ExtendedReal::Infinite
        } else {
            ExtendedReal::Finite(x)
        }
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(x) => fmt::Display::fmt(x, f),
            ExtendedReal::Infinite => f.write_str("inf"),
        }
    }
}
