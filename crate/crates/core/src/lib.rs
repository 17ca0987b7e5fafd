//! Degrees-of-freedom regions of MIMO broadcast, interference and cognitive
//! radio channels when the transmitters have no channel knowledge.
//!
//! * [`polytope`]: exact rational 2-D regions and K-user simplices.
//! * [`regions`]: closed-form inner/outer/perfect-CSIT regions and the case
//!   classifier that decides when the inner bound is the whole region.
//! * [`achievability`]: a Monte Carlo zero-forcing oracle that checks which
//!   integer stream allocations are decodable and certifies corner points
//!   by time sharing.
//! * [`ratesim`]: finite-SNR rate simulation and pre-log slope fits.

pub mod achievability;
pub mod error;
pub mod polytope;
pub mod ratesim;
pub mod rational;
pub mod regions;
mod rng;

pub use error::{DofError, Result};
pub use polytope::{hull_from_points, Halfspace, Point2, Polytope2D, SimplexRegion};
pub use rational::Rational;
pub use regions::{AntennaConfig, CaseId, CaseLabel, ChannelClass, Region, RegionReport};
