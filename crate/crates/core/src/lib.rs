//! Rotational surfaces from prescribed curvature.
//!
//! Every surface of revolution is determined, up to a vertical translation,
//! by its geometric linear momentum `K(x)`: the `z`-component of the unit
//! tangent of the profile curve as a function of the distance `x` to the
//! axis. This crate turns curvature prescriptions into momenta
//! ([`momentum`]), evaluates curvatures ([`curvature`]), rebuilds profile
//! curves ([`reconstruct`]), provides closed-form reference surfaces
//! ([`catalog`]) and revolves profiles into triangle meshes ([`mesh`]).
//!
//! ```
//! use revolve_core::momentum::{momentum_from_kp, Domain, ScalarFn};
//! use revolve_core::reconstruct::arclength;
//!
//! // k_p = 1/x² is the catenoid x = cosh z
//! let m = momentum_from_kp(ScalarFn::from_jet(|x| x.powf(-2.0)), Domain::new(1.0, 3.0)?)?;
//! let s = arclength(&m, 1.0, 2.0)?;
//! assert!((s - 3f64.sqrt()).abs() < 1e-9);
//! # Ok::<(), revolve_core::Error>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod catalog;
pub mod curvature;
pub mod error;
pub mod expr;
pub mod jet;
pub mod mesh;
pub mod momentum;
pub mod numeric;
pub mod reconstruct;

pub use error::{Error, Result};
pub use jet::Jet;
pub use momentum::{Anchor, Domain, Momentum, Prescription, PrescriptionKind, ScalarFn, Sign};
