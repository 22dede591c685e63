use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar the library is generic over (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts a literal. Panics only for values the type cannot hold.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("value representable in the scalar type")
    }

    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("index representable in the scalar type")
    }

    /// Tolerance used for structural checks: `target`, but never tighter than
    /// a small multiple of machine epsilon.
    fn tol(target: f64) -> Self {
        Self::of(target).max(Self::epsilon() * Self::of(64.0))
    }
}

impl Real for f32 {}
impl Real for f64 {}
