use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Closed subinterval `[lo, hi]` of `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        let err = |reason| Error::Interval {
            lo: rational::format(&lo),
            hi: rational::format(&hi),
            reason,
        };
        if lo > hi {
            return Err(err("lo > hi"));
        }
        if !rational::in_unit_interval(&lo) || !rational::in_unit_interval(&hi) {
            return Err(err("bounds outside [0, 1]"));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: Rational) -> Result<Self> {
        Self::new(x.clone(), x)
    }

    pub fn zero() -> Self {
        Self {
            lo: Rational::zero(),
            hi: Rational::zero(),
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    /// `[0, 0]` is the "no edge" interval.
    pub fn is_zero(&self) -> bool {
        self.hi.is_zero()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            rational::format(&self.lo),
            rational::format(&self.hi)
        )
    }
}
