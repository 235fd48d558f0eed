use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real scalar used for positions, radii, consensus values and threshold arithmetic.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossless for `f64`, rounding for `f32`.
    fn of(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite f64 converts to every float type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
