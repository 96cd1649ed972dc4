//! Gauss diagram invariants of knot diagrams.
//!
//! ```
//! use knotgauss::codes::build_diagram;
//! use knotgauss::gauss::GaussDiagram;
//! use knotgauss::invariants::{v2, v3};
//!
//! let d = build_diagram(&"O1+U2+O3+U1+O2+U3+".parse()?)?;
//! let g = GaussDiagram::from_diagram(&d);
//! assert_eq!((v2(&g, None), v3(&g)), (1, 4));
//! # Ok::<(), knotgauss::KnotError>(())
//! ```

pub mod codes;
pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod gauss;
pub mod invariants;
pub mod planar;
pub mod oracles;

pub use error::{KnotError, Result};
