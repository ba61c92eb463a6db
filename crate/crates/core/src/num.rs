use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar used by the metric and mixture code.
///
/// Counts are accumulated as integers and converted once, so `f32` works
/// as well as `f64`; the frozen regression constants are checked in `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable as float")
    }

    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable as float")
    }

    fn hundred() -> Self {
        Self::lit(100.0)
    }
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
}

/// Ratio of two counts; zero when the denominator is zero.
pub(crate) fn ratio<F: Scalar>(num: u64, den: u64) -> F {
    if den == 0 {
        F::zero()
    } else {
        F::from_u64(num).unwrap_or_else(F::nan) / F::from_u64(den).unwrap_or_else(F::nan)
    }
}
