//! Helicoidal surfaces in Lorentz-Minkowski 3-space.
//!
//! The crate computes the first and second fundamental forms of surfaces
//! swept by a planar curve under a one-parameter group of helicoidal motions,
//! both exactly (with symbolic parameters) and in floating point, and decides
//! when the mean or Gauss curvature can be constant for polynomial graphs and
//! Lorentzian circles.

pub mod classify;
pub mod minkowski;
pub mod numeric;
pub mod surface;
pub mod symbolic;
