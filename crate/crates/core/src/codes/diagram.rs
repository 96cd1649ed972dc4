use serde::{Deserialize, Serialize};

use crate::error::{KnotError, Result};

use super::matching::trace_faces;
use super::{realize, ChordMatching, CodeEntry, EdgeEnd, Embedding, Passage, Sign, SignedGaussCode};

/// One passage of the knot through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Visit {
    pub crossing: usize,
    pub passage: Passage,
}

/// A crossing seen from the plane: its sign and the four incident strand
/// ends in counterclockwise order, starting at the incoming under-strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub sign: Sign,
    pub ends: [EdgeEnd; 4],
    /// Index into `ends` of the outgoing over-strand end (1 or 3).
    pub over_out: usize,
}

/// An oriented knot diagram in the plane.
///
/// Visits are numbered along the orientation; edge `k` runs from visit `k`
/// to visit `k + 1`. Crossings are numbered in order of first visit. The
/// planar structure is given by one local orientation per crossing, from
/// which the rotation system is derived.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KnotDiagram {
    visits: Vec<Visit>,
    signs: Vec<Sign>,
    orientation: Vec<i8>,
    first: Vec<usize>,
    second: Vec<usize>,
}

impl KnotDiagram {
    /// The crossingless diagram.
    pub fn unknot() -> Self {
        KnotDiagram {
            visits: Vec::new(),
            signs: Vec::new(),
            orientation: Vec::new(),
            first: Vec::new(),
            second: Vec::new(),
        }
    }

    /// Assembles a diagram from visits (crossings numbered in first-visit
    /// order) and local orientations, deriving signs. Fails when the rotation
    /// system is not planar.
    pub(crate) fn from_parts(visits: Vec<Visit>, orientation: Vec<i8>) -> Result<Self> {
        let c = orientation.len();
        if visits.len() != 2 * c {
            return Err(KnotError::InvalidArgument("visit count must be twice the crossing count".into()));
        }
        let mut first = vec![usize::MAX; c];
        let mut second = vec![usize::MAX; c];
        for (i, v) in visits.iter().enumerate() {
            if v.crossing >= c {
                return Err(KnotError::OutOfRange { id: v.crossing, len: c });
            }
            if first[v.crossing] == usize::MAX {
                first[v.crossing] = i;
            } else {
                second[v.crossing] = i;
            }
        }
        let signs = (0..c)
            .map(|x| {
                let fo = if visits[first[x]].passage.is_over() { 1 } else { -1 };
                Sign::from_value(i64::from(orientation[x]) * fo)
            })
            .collect();
        let d = KnotDiagram { visits, signs, orientation, first, second };
        let faces = d.face_count();
        if faces != c + 2 {
            return Err(KnotError::NonPlanar { faces, expected: c + 2 });
        }
        Ok(d)
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn visits(&self) -> &[Visit] {
        &self.visits
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn sign(&self, x: usize) -> Sign {
        self.signs[x]
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|s| s.value()).sum()
    }

    pub fn negative_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s == Sign::Negative).count()
    }

    /// Visit positions `(first, second)` of a crossing.
    pub fn visit_positions(&self, x: usize) -> (usize, usize) {
        (self.first[x], self.second[x])
    }

    pub fn over_visit(&self, x: usize) -> usize {
        let (i, j) = self.visit_positions(x);
        if self.visits[i].passage.is_over() {
            i
        } else {
            j
        }
    }

    pub fn under_visit(&self, x: usize) -> usize {
        let (i, j) = self.visit_positions(x);
        if self.visits[i].passage.is_over() {
            j
        } else {
            i
        }
    }

    pub fn matching(&self) -> ChordMatching {
        let mut partner = vec![0; self.visits.len()];
        for x in 0..self.crossing_count() {
            partner[self.first[x]] = self.second[x];
            partner[self.second[x]] = self.first[x];
        }
        ChordMatching::from_partners(partner).expect("diagram visits form a matching")
    }

    pub fn embedding(&self) -> Embedding {
        Embedding { orientation: self.orientation.clone() }
    }

    /// Signed Gauss code, crossing `x` labelled `x + 1`.
    pub fn code(&self) -> SignedGaussCode {
        let entries = self
            .visits
            .iter()
            .map(|v| CodeEntry { passage: v.passage, label: v.crossing as u32 + 1, sign: Some(self.signs[v.crossing]) })
            .collect();
        SignedGaussCode::new(entries).expect("diagram code is valid")
    }

    /// Crossings with their counterclockwise strand ends.
    pub fn crossings(&self) -> Vec<Crossing> {
        let m = self.matching();
        let rotations = self.embedding().rotations(&m);
        (0..self.crossing_count())
            .map(|x| {
                let rot = rotations[x];
                let u = self.under_visit(x);
                let n = self.visits.len();
                let under_in = EdgeEnd { edge: (u + n - 1) % n, incoming: true };
                let start = rot.iter().position(|&e| e == under_in).expect("under end present");
                let ends = [rot[start], rot[(start + 1) % 4], rot[(start + 2) % 4], rot[(start + 3) % 4]];
                let o = self.over_visit(x);
                let over_out = EdgeEnd { edge: o, incoming: false };
                let over_out = ends.iter().position(|&e| e == over_out).expect("over end present");
                Crossing { sign: self.signs[x], ends, over_out }
            })
            .collect()
    }

    /// Faces as cyclic lists of half-edges (see [`crate::planar::faces`]).
    pub(crate) fn face_darts(&self) -> Vec<Vec<usize>> {
        trace_faces(&self.matching(), &self.orientation)
    }

    pub fn face_count(&self) -> usize {
        self.face_darts().len()
    }

    /// Crossing at which half-edge `h` ends (see [`super::EdgeEnd`]).
    pub(crate) fn half_edge_crossing(&self, h: usize) -> usize {
        let n = self.visits.len();
        let edge = h / 2;
        let pos = if h.is_multiple_of(2) { edge } else { (edge + 1) % n };
        self.visits[pos].crossing
    }

    /// Mirror image: every crossing switched, same planar curve.
    pub fn mirror(&self) -> KnotDiagram {
        let visits = self.visits.iter().map(|v| Visit { passage: v.passage.flip(), ..*v }).collect();
        KnotDiagram::from_parts(visits, self.orientation.clone()).expect("mirror stays planar")
    }

    /// Same diagram with the orientation of the knot reversed.
    pub fn reverse(&self) -> KnotDiagram {
        let mut rev = self.code().entries().to_vec();
        rev.reverse();
        build_diagram(&SignedGaussCode::new(rev).expect("reversal keeps code valid"))
            .expect("reversal stays realizable")
    }
}

/// Decorates a realized shadow: `over_first[k]` tells whether chord `k`
/// (chords ordered by first endpoint) is passed over at its first endpoint.
pub fn decorate(m: &ChordMatching, e: &Embedding, over_first: &[bool]) -> Result<KnotDiagram> {
    let c = m.chord_count();
    if over_first.len() != c || e.orientation.len() != c {
        return Err(KnotError::InvalidArgument(format!("expected {c} decorations and orientations")));
    }
    let index = m.chord_index();
    let chords = m.chords();
    let visits = (0..m.points())
        .map(|i| {
            let k = index[i];
            let first = chords[k].0 == i;
            let over = over_first[k] == first;
            Visit { crossing: k, passage: if over { Passage::Over } else { Passage::Under } }
        })
        .collect();
    KnotDiagram::from_parts(visits, e.orientation.clone())
}

/// Builds the planar diagram described by a Gauss code.
///
/// The underlying matching is realized; each interlacement component (a
/// connected summand) is then reflected if needed so that the derived signs
/// equal the declared ones. Unsigned codes get, per component, the
/// reflection with the larger writhe.
pub fn build_diagram(code: &SignedGaussCode) -> Result<KnotDiagram> {
    let code = code.relabeled();
    let m = code.matching();
    let emb = realize(&m).ok_or(KnotError::NotRealizable)?;
    let c = m.chord_count();
    let comps = m.interlacement().components();
    let entries = code.entries();
    let chords = m.chords();
    // chord k has first endpoint chords[k].0 whose label is k + 1 after relabeling
    let first_over: Vec<i8> = chords.iter().map(|&(i, _)| if entries[i].passage.is_over() { 1 } else { -1 }).collect();
    let ncomp = comps.iter().max().map_or(0, |&x| x + 1);
    let mut flip = vec![0i8; ncomp];
    for k in 0..c {
        let produced = emb.orientation[k] * first_over[k];
        let want = match entries[chords[k].0].sign {
            Some(s) => s.value() as i8,
            None => continue,
        };
        let f = if produced == want { 1 } else { -1 };
        if flip[comps[k]] == 0 {
            flip[comps[k]] = f;
        } else if flip[comps[k]] != f {
            return Err(KnotError::SignMismatch);
        }
    }
    if !code.is_signed() {
        let mut writhe = vec![0i64; ncomp];
        for k in 0..c {
            writhe[comps[k]] += i64::from(emb.orientation[k] * first_over[k]);
        }
        for (f, w) in flip.iter_mut().zip(writhe) {
            *f = if w >= 0 { 1 } else { -1 };
        }
    }
    let orientation: Vec<i8> = (0..c).map(|k| emb.orientation[k] * flip[comps[k]]).collect();
    let visits = entries
        .iter()
        .map(|e| Visit { crossing: e.label as usize - 1, passage: e.passage })
        .collect();
    KnotDiagram::from_parts(visits, orientation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::parse_gauss_code;

    fn diagram(s: &str) -> Result<KnotDiagram> {
        build_diagram(&parse_gauss_code(s).unwrap())
    }

    #[test]
    fn positive_trefoil() {
        let d = diagram("O1+U2+O3+U1+O2+U3+").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.writhe(), 3);
        assert_eq!(d.face_count(), 5);
    }

    #[test]
    fn kinks_of_both_signs() {
        assert_eq!(diagram("O1+U1+").unwrap().writhe(), 1);
        assert_eq!(diagram("O1-U1-").unwrap().writhe(), -1);
        assert_eq!(diagram("U1-O1-").unwrap().writhe(), -1);
    }

    #[test]
    fn nonrealizable_code() {
        assert_eq!(diagram("O1+O2+U1+U2+").unwrap_err(), KnotError::NotRealizable);
    }

    #[test]
    fn mixed_signs_on_prime_shadow_are_rejected() {
        // an alternating trefoil shadow forces all crossing signs equal
        assert_eq!(diagram("O1+U2+O3-U1+O2+U3-").unwrap_err(), KnotError::SignMismatch);
    }

    #[test]
    fn unsigned_code_maximizes_writhe() {
        let d = diagram("O1U2O3U1O2U3").unwrap();
        assert_eq!(d.writhe(), 3);
    }

    #[test]
    fn summands_are_reflected_independently() {
        let d = diagram("O1+U2+O3+U1+O2+U3+U4-O5-U6-O4-U5-O6-").unwrap();
        assert_eq!(d.writhe(), 0);
        assert_eq!(d.face_count(), 8);
    }

    #[test]
    fn flipping_the_embedding_negates_every_sign() {
        let d = diagram("O1+U2+O3+U1+O2+U3+").unwrap();
        let flipped = KnotDiagram::from_parts(d.visits().to_vec(), d.embedding().flipped().orientation).unwrap();
        assert!(flipped.signs().iter().zip(d.signs()).all(|(a, b)| *a == b.flip()));
    }

    #[test]
    fn mirror_and_reverse() {
        let d = diagram("O1+U2+O3+U1+O2+U3+").unwrap();
        assert_eq!(d.mirror().writhe(), -3);
        assert_eq!(d.reverse().writhe(), 3);
        assert_eq!(d.mirror().mirror(), d);
    }

    #[test]
    fn code_round_trip() {
        let d = diagram("U1-O2-U3-O1-U2-O3-").unwrap();
        assert_eq!(build_diagram(&d.code()).unwrap(), d);
    }
}
