//! Faces, Seifert circles, clasps and diagram moves.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::codes::{build_diagram, CodeEntry, KnotDiagram, Passage, SignedGaussCode};
use crate::error::{KnotError, Result};
use crate::gauss::{GaussDiagram, PairRelation};

/// A face of the diagram as the cyclic list of half-edges along which it is entered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub darts: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReport {
    pub c: usize,
    pub s: usize,
    pub g: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClaspKind {
    Reverse,
    Parallel,
    Resolved,
}

/// A digon face and its two crossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClaspRecord {
    pub crossings: (usize, usize),
    pub kind: ClaspKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PositivityStatus {
    Positive,
    AlmostPositive,
    KNegative(usize),
}

impl PositivityStatus {
    pub fn negatives(self) -> usize {
        match self {
            PositivityStatus::Positive => 0,
            PositivityStatus::AlmostPositive => 1,
            PositivityStatus::KNegative(k) => k,
        }
    }

    pub fn from_negatives(k: usize) -> Self {
        match k {
            0 => PositivityStatus::Positive,
            1 => PositivityStatus::AlmostPositive,
            k => PositivityStatus::KNegative(k),
        }
    }
}

/// Which arc cut off by a chord `(p, q)`, `p < q`: `Left` is `(p, q)`, `Right` the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Whether the retracted loop is thought of as lifted over or pushed under the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LoopPass {
    #[default]
    Over,
    Under,
}

/// Result of a loop move with the crossings that had to be switched to free the loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopOutcome {
    pub diagram: GaussDiagram,
    pub switched: Vec<usize>,
}

pub fn faces(d: &KnotDiagram) -> Vec<Face> {
    d.face_darts().into_iter().map(|darts| Face { darts }).collect()
}

/// Number of circles after smoothing every crossing along the orientation.
pub fn seifert_circles(d: &KnotDiagram) -> usize {
    let n = d.visits().len();
    if n == 0 {
        return 1;
    }
    let m = d.matching();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = (m.partner(i) + 1) % n;
        }
    }
    count
}

pub fn genus(d: &KnotDiagram) -> GenusReport {
    let c = d.crossing_count();
    let s = seifert_circles(d);
    debug_assert!((c + 1 - s).is_multiple_of(2));
    GenusReport { c, s, g: (c + 1 - s) / 2 }
}

pub fn find_clasps(d: &KnotDiagram) -> Vec<ClaspRecord> {
    let g = GaussDiagram::from_diagram(d);
    let mut out = Vec::new();
    for f in d.face_darts() {
        if f.len() != 2 {
            continue;
        }
        let x = d.half_edge_crossing(f[0] ^ 1);
        let y = d.half_edge_crossing(f[1] ^ 1);
        if x == y {
            continue;
        }
        let (x, y) = (x.min(y), x.max(y));
        let kind = if d.sign(x) != d.sign(y) {
            ClaspKind::Resolved
        } else if g.interlaced(x, y) {
            ClaspKind::Parallel
        } else {
            ClaspKind::Reverse
        };
        out.push(ClaspRecord { crossings: (x, y), kind });
    }
    out.sort_by_key(|r| r.crossings);
    out
}

/// Crossings whose chord meets no other chord.
pub fn nugatory_crossings(d: &KnotDiagram) -> Vec<usize> {
    let graph = d.matching().interlacement();
    (0..d.crossing_count()).filter(|&x| graph.degree(x) == 0).collect()
}

pub fn is_reduced(d: &KnotDiagram) -> bool {
    nugatory_crossings(d).is_empty()
}

/// Removes every nugatory crossing.
pub fn reduce(d: &KnotDiagram) -> KnotDiagram {
    let nug = nugatory_crossings(d);
    if nug.is_empty() {
        return d.clone();
    }
    remove_crossings(d, &nug).expect("removing nugatory crossings keeps the diagram planar")
}

fn labels(xs: &[usize]) -> Vec<u32> {
    xs.iter().map(|&x| x as u32 + 1).collect()
}

fn remove_crossings(d: &KnotDiagram, xs: &[usize]) -> Result<KnotDiagram> {
    build_diagram(&d.code().without_labels(&labels(xs)))
}

/// Pairs `p != q` of non-interlaced parallel chords meeting exactly the same
/// other chords that do not bound a common digon.
pub fn bireducing_pairs(d: &KnotDiagram) -> Vec<(usize, usize)> {
    let g = GaussDiagram::from_diagram(d);
    let graph = g.interlacement();
    let digons: BTreeSet<(usize, usize)> = find_clasps(d).iter().map(|r| r.crossings).collect();
    let m = g.len();
    let mut out = Vec::new();
    for p in 0..m {
        for q in p + 1..m {
            if digons.contains(&(p, q)) || g.relation_unchecked(p, q) != PairRelation::Parallel {
                continue;
            }
            if graph.row(p) == graph.row(q) {
                out.push((p, q));
            }
        }
    }
    out
}

pub fn is_bireduced(d: &KnotDiagram) -> bool {
    is_reduced(d) && bireducing_pairs(d).is_empty()
}

/// Extends the twist at crossing `at` by a reverse clasp of its own sign.
pub fn apply_t2bar(d: &KnotDiagram, at: usize) -> Result<KnotDiagram> {
    let c = d.crossing_count();
    if at >= c {
        return Err(KnotError::OutOfRange { id: at, len: c });
    }
    let code = d.code();
    let label = at as u32 + 1;
    let (y, z) = (c as u32 + 1, c as u32 + 2);
    let sign = Some(d.sign(at));
    let mut entries = Vec::with_capacity(code.len() + 4);
    let mut first = true;
    for e in code.entries() {
        if e.label != label {
            entries.push(*e);
            continue;
        }
        let p = e.passage;
        let q = p.flip();
        let mk = |passage: Passage, label: u32| CodeEntry { passage, label, sign };
        if first {
            entries.extend([mk(p, label), mk(q, y), mk(p, z)]);
            first = false;
        } else {
            // the second visit of `at` has passage `q` relative to the first
            entries.extend([mk(p, z), mk(q, y), mk(p, label)]);
        }
    }
    build_diagram(&SignedGaussCode::new(entries)?)
}

/// Removes both crossings of a resolved clasp (Reidemeister II).
pub fn resolve_clasp(d: &KnotDiagram, clasp: &ClaspRecord) -> Result<KnotDiagram> {
    if clasp.kind != ClaspKind::Resolved {
        return Err(KnotError::MoveNotApplicable(format!("clasp {:?} is not resolved", clasp.crossings)));
    }
    if !find_clasps(d).contains(clasp) {
        return Err(KnotError::MoveNotApplicable(format!(
            "crossings {:?} do not bound a digon",
            clasp.crossings
        )));
    }
    remove_crossings(d, &[clasp.crossings.0, clasp.crossings.1])
}

/// Retracts the loop of chord `k` on `side`: deletes `k` and every chord
/// with an endpoint on that arc, then removes nugatory crossings. The
/// crossings on the arc where the loop runs against `pass` are reported as switched.
pub fn loop_move(g: &GaussDiagram, k: usize, side: Side, pass: LoopPass) -> Result<LoopOutcome> {
    let m = g.len();
    if k >= m {
        return Err(KnotError::OutOfRange { id: k, len: m });
    }
    let n = g.points();
    let a = g.arrow(k);
    let (p, q) = (a.tail.min(a.head), a.tail.max(a.head));
    let on_arc = |x: usize| match side {
        Side::Left => p < x && x < q,
        Side::Right => x > q || x < p,
    };
    let mut removed = vec![k];
    let mut switched = Vec::new();
    for x in (0..n).filter(|&x| on_arc(x)) {
        let j = g.owner(x);
        if on_arc(g.partner(x)) {
            return Err(KnotError::MoveNotApplicable(format!(
                "crossing {} has both passages on the loop",
                j + 1
            )));
        }
        removed.push(j);
        let loop_over = g.arrow(j).head == x;
        if loop_over != (pass == LoopPass::Over) {
            switched.push(j);
        }
    }
    let d = g.to_diagram()?;
    let kept = remove_crossings(&d, &removed)?;
    Ok(LoopOutcome { diagram: GaussDiagram::from_diagram(&reduce(&kept)), switched })
}

/// Connected sum: `b` spliced into the base edge of `a`.
pub fn connected_sum(a: &KnotDiagram, b: &KnotDiagram) -> KnotDiagram {
    let code = a.code().concat(&b.code()).expect("concatenated codes stay valid");
    build_diagram(&code).expect("a connected sum of planar diagrams is planar")
}

pub fn positivity_status(d: &KnotDiagram) -> PositivityStatus {
    PositivityStatus::from_negatives(d.negative_count())
}

/// Whether the diagram cannot be split as a connected sum.
pub fn is_connected(d: &KnotDiagram) -> bool {
    crate::gauss::is_prime(&GaussDiagram::from_diagram(d)) == crate::gauss::Primality::Prime
}
