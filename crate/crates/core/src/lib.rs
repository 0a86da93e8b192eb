//! Numerical verification of the explicit transport-twistor blow-down map for
//! the rotationally invariant disks `(𝔻_R, g_κ)`, `g_κ = (1 + κr²)² dr² + r² dθ²`.
//!
//! * [`geometry`]: metric, curvature, frame and isothermal coordinate.
//! * [`flow`]: geodesic flow, exit times, scattering relation and function.
//! * [`jacobi`]: Jacobi fields, conjugate points, the simplicity classifier.
//! * [`twistor`]: the blow-down map `β = (w, ξ)`, its inverse and its bounds.
//! * [`invariants`]: invariant fiberwise holomorphic functions on `SM`.
//!
//! Every routine is generic over [`Real`]; f64 and f32 aliases are provided.

pub mod error;
pub mod flow;
pub mod geometry;
pub mod invariants;
pub mod jacobi;
pub mod numdiff;
pub mod roots;
pub mod scalar;
pub mod twistor;

pub use error::{Error, Result};
pub use flow::{FanBeamCoord, FlowOptions, PhasePoint, PolarPoint, Trajectory};
pub use geometry::{DiskSpec, MetricMatrix, RadialMetric, RadialProfile};
pub use invariants::{FourierSpectrum, HoloDifferential, InvariantFunction};
pub use jacobi::{JacobiTrace, SimplicityReport};
pub use scalar::Real;
pub use twistor::{BallPoint, HermitianForm2, TwistorValue, XiCoefficients};

pub type DiskSpec64 = DiskSpec<f64>;
pub type DiskSpec32 = DiskSpec<f32>;
pub type PhasePoint64 = PhasePoint<f64>;
pub type PhasePoint32 = PhasePoint<f32>;
pub type Trajectory64 = Trajectory<f64>;
pub type FlowOptions64 = FlowOptions<f64>;
pub type BallPoint64 = BallPoint<f64>;
pub type BallPoint32 = BallPoint<f32>;
pub type TwistorValue64 = TwistorValue<f64>;
pub type TwistorValue32 = TwistorValue<f32>;
pub type HoloDifferential64 = HoloDifferential<f64>;
pub type FourierSpectrum64 = FourierSpectrum<f64>;
pub type SimplicityReport64 = SimplicityReport<f64>;
