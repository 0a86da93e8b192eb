//! Scalar abstraction shared by every numerical routine in the crate.

use num_traits::{Float, FloatConst, FromPrimitive};
use std::fmt::{Debug, Display};

/// Floating point scalar the geometry is generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

#[inline]
pub(crate) fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_pi<T: Real>(x: T) -> T {
    let two_pi = T::TAU();
    let mut y = x % two_pi;
    if y > T::PI() {
        y = y - two_pi;
    } else if y <= -T::PI() {
        y = y + two_pi;
    }
    y
}

/// Wraps an angle into `[0, 2π)`.
pub fn wrap_tau<T: Real>(x: T) -> T {
    let two_pi = T::TAU();
    let y = x % two_pi;
    let y = if y < T::zero() { y + two_pi } else { y };
    // `y + 2π` can round up to exactly 2π for tiny negative inputs
    if y >= two_pi {
        T::zero()
    } else {
        y
    }
}

/// `n` equispaced points on `[a, b]`, endpoints included.
pub fn linspace<T: Real>(a: T, b: T, n: usize) -> Vec<T> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let step = (b - a) / lit::<T>((n - 1) as f64);
            (0..n)
                .map(|i| if i + 1 == n { b } else { a + step * lit(i as f64) })
                .collect()
        }
    }
}
