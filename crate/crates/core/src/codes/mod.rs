//! Knot diagram encodings: Gauss codes, PD codes, chord matchings and their
//! planar realizations.

mod diagram;
mod gauss_code;
mod matching;
mod pd;

pub use diagram::{build_diagram, decorate, Crossing, KnotDiagram, Visit};
pub use gauss_code::{parse_gauss_code, CodeEntry, Passage, Sign, SignedGaussCode};
pub(crate) use matching::half_edge;
pub use matching::{realize, realize_exhaustive, ChordMatching, EdgeEnd, Embedding, Interlacement};
pub use pd::{parse_pd_code, to_pd_code};
