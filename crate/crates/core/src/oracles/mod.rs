//! Classical polynomial invariants used as ground truth.

mod conway;
mod jones;
mod poly;
mod signature;

pub use conway::{conway, ConwayPoly, CONWAY_MAX_CROSSINGS};
pub use jones::{bracket, jones, vassiliev_from_jones, JONES_MAX_CROSSINGS};
pub use poly::LaurentPoly;
pub use signature::{signature_and_det, SigDetReport};
