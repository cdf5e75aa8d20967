//! Numeric abstraction for the physics model.
//!
//! Every derived quantity is computed generically so the same formulas run in
//! `f32`, `f64`, or exact rationals ([`num_rational::BigRational`]).

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Field-like scalar usable by the derive formulas.
pub trait Scalar: Num + Clone + PartialOrd + Debug + FromPrimitive + ToPrimitive {
    /// Lossless-as-possible conversion from a catalog value.
    ///
    /// Panics only on non-finite input, which catalog validation rejects.
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("finite catalog value")
    }

    fn from_count(n: u32) -> Self {
        Self::from_u32(n).expect("count fits scalar")
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where T: Num + Clone + PartialOrd + Debug + FromPrimitive + ToPrimitive {}
