//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! Message passing, the trellis recursions and the information-theoretic
//! formulas are written once against [`Real`] and instantiated for `f32` and
//! `f64`. The crate root exposes `f64` aliases for the common case.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar usable for LLR arithmetic.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Never fails for the supported types.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal must be representable")
    }

    /// Lossy conversion to `f64` for reporting and RNG comparisons.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `ln(1 + e^x)` without overflow.
pub fn softplus<T: Real>(x: T) -> T {
    x.max(T::zero()) + (-x.abs()).exp().ln_1p()
}

/// Exact two-term log-sum-exp (max-star with correction). Handles `-inf`.
pub fn log_add<T: Real>(a: T, b: T) -> T {
    let hi = a.max(b);
    if hi == T::neg_infinity() {
        return hi;
    }
    hi + (-(a - b).abs()).exp().ln_1p()
}

/// Saturates `x` to `[-bound, bound]`; NaN maps to zero.
pub fn clamp_llr<T: Real>(x: T, bound: T) -> T {
    if x.is_nan() {
        T::zero()
    } else {
        x.max(-bound).min(bound)
    }
}
