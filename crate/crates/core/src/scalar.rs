//! Scalar abstraction for the analytic layer.
//!
//! Everything closed-form (click probabilities, clause probabilities,
//! Chernoff bounds, parameter windows) is generic over [`Real`] so the same
//! formulas instantiate at `f32` and `f64`. Samplers and counting code stay
//! concrete: integer counts and RNG interop gain nothing from genericity.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar usable by the analytic formulas.
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Converts a literal into the scalar type.
    ///
    /// Panics only if the target type cannot represent any finite `f64`,
    /// which holds for neither `f32` nor `f64`.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 literal converts into Real scalar")
    }

    /// Widens the scalar back to `f64` (exact for both implementors).
    fn as_f64(self) -> f64 {
        self.to_f64().expect("Real scalar converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}
