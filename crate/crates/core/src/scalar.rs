//! Scalar abstractions.
//!
//! [`Scalar`] is the field the symmetric-polynomial and coefficient code is
//! written against; it is implemented for `f32`, `f64` and
//! [`ExactRational`]. [`Real`] adds the transcendental operations needed by
//! the numerical evaluators and is implemented for `f32` and `f64`.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

use crate::rational::ExactRational;

pub trait Scalar: Clone + Debug + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static {
    fn from_int(v: i64) -> Self;

    /// Nearest `f64`.
    fn as_f64(&self) -> f64;

    fn magnitude(&self) -> Self;

    /// True when the type performs exact arithmetic.
    fn is_exact() -> bool;

    fn is_integer_valued(&self) -> bool;
}

macro_rules! impl_scalar_float {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_int(v: i64) -> Self {
                v as $t
            }
            fn as_f64(&self) -> f64 {
                *self as f64
            }
            fn magnitude(&self) -> Self {
                self.abs()
            }
            fn is_exact() -> bool {
                false
            }
            fn is_integer_valued(&self) -> bool {
                self.is_finite() && self.fract() == 0.0
            }
        }
    };
}

impl_scalar_float!(f32);
impl_scalar_float!(f64);

impl Scalar for ExactRational {
    fn from_int(v: i64) -> Self {
        ExactRational::from_integer(v.into())
    }
    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
    fn magnitude(&self) -> Self {
        num_traits::Signed::abs(self)
    }
    fn is_exact() -> bool {
        true
    }
    fn is_integer_valued(&self) -> bool {
        self.is_integer()
    }
}

/// Floating point scalar: `f32` or `f64`.
pub trait Real: Scalar + Float + FloatConst + FromPrimitive + Copy {
    /// Converts an `f64` constant.
    fn c(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("representable constant")
    }
}

impl Real for f32 {}
impl Real for f64 {}
