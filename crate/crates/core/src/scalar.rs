use std::fmt::{Debug, Display};
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, NumCast};

/// Scalar type the numeric core is generic over.
///
/// `f64` is the default used by the type aliases at the crate root; `f32`
/// works for quick low-precision experiments (the default tolerances assume
/// `f64`).
pub trait Real:
    Float
    + FloatConst
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal (tolerances, constants) into `Self`.
    fn of(x: f64) -> Self {
        <Self as NumCast>::from(x).expect("literal not representable")
    }

    /// Lossy view as `f64`, used by reports and serialization.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {}
impl Real for f32 {}
