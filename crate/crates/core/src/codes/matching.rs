use serde::{Deserialize, Serialize};

use crate::error::{KnotError, Result};

/// A perfect matching on the cyclically ordered points `0..2c`.
///
/// Chords are numbered by the position of their first endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordMatching {
    partner: Vec<usize>,
}

impl ChordMatching {
    pub fn from_partners(partner: Vec<usize>) -> Result<Self> {
        let n = partner.len();
        for (i, &j) in partner.iter().enumerate() {
            if j >= n {
                return Err(KnotError::OutOfRange { id: j, len: n });
            }
            if j == i || partner[j] != i {
                return Err(KnotError::InvalidArgument(format!(
                    "position {i} is not properly paired"
                )));
            }
        }
        Ok(ChordMatching { partner })
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        let n = pairs.len() * 2;
        let mut partner = vec![usize::MAX; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(KnotError::OutOfRange { id: a.max(b), len: n });
            }
            if partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(KnotError::InvalidArgument(format!("point reused in pair ({a},{b})")));
            }
            partner[a] = b;
            partner[b] = a;
        }
        Self::from_partners(partner)
    }

    pub fn points(&self) -> usize {
        self.partner.len()
    }

    pub fn chord_count(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn partner(&self, pos: usize) -> usize {
        self.partner[pos]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    /// Chords as `(first, second)` endpoint pairs, ordered by first endpoint.
    pub fn chords(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i < j)
            .map(|(i, &j)| (i, j))
            .collect()
    }

    /// Chord index for every position.
    pub fn chord_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.partner.len()];
        for (k, (a, b)) in self.chords().into_iter().enumerate() {
            idx[a] = k;
            idx[b] = k;
        }
        idx
    }

    pub fn interlacement(&self) -> Interlacement {
        Interlacement::new(&self.chords())
    }
}

/// Interlacement graph of a chord diagram stored as bit rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interlacement {
    rows: Vec<Vec<u64>>,
}

impl Interlacement {
    /// Builds the graph from chords given as endpoint pairs (any order within a pair).
    pub fn new(chords: &[(usize, usize)]) -> Self {
        let m = chords.len();
        let words = m.div_ceil(64).max(1);
        let mut rows = vec![vec![0u64; words]; m];
        let norm: Vec<(usize, usize)> = chords.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        for i in 0..m {
            let (a1, a2) = norm[i];
            for j in (i + 1)..m {
                let (b1, b2) = norm[j];
                let inside1 = a1 < b1 && b1 < a2;
                let inside2 = a1 < b2 && b2 < a2;
                if inside1 != inside2 {
                    rows[i][j / 64] |= 1 << (j % 64);
                    rows[j][i / 64] |= 1 << (i % 64);
                }
            }
        }
        Interlacement { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn linked(&self, a: usize, b: usize) -> bool {
        self.rows[a][b / 64] >> (b % 64) & 1 == 1
    }

    pub fn degree(&self, a: usize) -> usize {
        self.rows[a].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn common(&self, a: usize, b: usize) -> usize {
        self.rows[a].iter().zip(&self.rows[b]).map(|(x, y)| (x & y).count_ones() as usize).sum()
    }

    pub fn neighbors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rows.len()).filter(move |&b| self.linked(a, b))
    }

    pub fn row(&self, a: usize) -> &[u64] {
        &self.rows[a]
    }

    /// Connected component id of every chord.
    pub fn components(&self) -> Vec<usize> {
        let m = self.rows.len();
        let mut comp = vec![usize::MAX; m];
        let mut next = 0;
        for s in 0..m {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(a) = stack.pop() {
                for b in self.neighbors(a) {
                    if comp[b] == usize::MAX {
                        comp[b] = next;
                        stack.push(b);
                    }
                }
            }
            next += 1;
        }
        comp
    }
}

/// Rotation data witnessing a planar realization of a chord matching.
///
/// For every chord, `orientation[k]` is `+1` when the second passage through
/// the crossing crosses the first from right to left, `-1` otherwise. The
/// cyclic order of the four strand ends around the crossing follows from it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Embedding {
    pub orientation: Vec<i8>,
}

/// One of the four strand ends at a crossing: the end of `edge` that touches it.
/// Edge `k` runs from position `k` to position `k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeEnd {
    pub edge: usize,
    pub incoming: bool,
}

impl Embedding {
    /// The mirror-related embedding: every local orientation reversed.
    pub fn flipped(&self) -> Embedding {
        Embedding { orientation: self.orientation.iter().map(|o| -o).collect() }
    }

    /// Counterclockwise order of the strand ends at every chord.
    pub fn rotations(&self, m: &ChordMatching) -> Vec<[EdgeEnd; 4]> {
        let n = m.points();
        m.chords()
            .iter()
            .zip(&self.orientation)
            .map(|(&(i, j), &o)| {
                let in1 = EdgeEnd { edge: (i + n - 1) % n, incoming: true };
                let out1 = EdgeEnd { edge: i, incoming: false };
                let in2 = EdgeEnd { edge: (j + n - 1) % n, incoming: true };
                let out2 = EdgeEnd { edge: j, incoming: false };
                if o > 0 {
                    [in1, in2, out1, out2]
                } else {
                    [in1, out2, out1, in2]
                }
            })
            .collect()
    }

    /// Number of faces of the cellular embedding determined by the rotations.
    pub fn face_count(&self, m: &ChordMatching) -> usize {
        if m.points() == 0 {
            return 2;
        }
        trace_faces(m, &self.orientation).len()
    }
}

/// Half-edge id: edge `k` has its tail end `2k` (at position `k`) and head end
/// `2k + 1` (at position `k + 1`).
pub(crate) fn half_edge(end: EdgeEnd) -> usize {
    2 * end.edge + usize::from(end.incoming)
}

/// Traces the faces of the curve with the given local orientations. Each face
/// is returned as the cyclic list of half-edges along which it is entered.
pub(crate) fn trace_faces(m: &ChordMatching, orientation: &[i8]) -> Vec<Vec<usize>> {
    let n = m.points();
    if n == 0 {
        return vec![Vec::new(), Vec::new()];
    }
    let emb = Embedding { orientation: orientation.to_vec() };
    let mut next_ccw = vec![0usize; 2 * n];
    for rot in emb.rotations(m) {
        for k in 0..4 {
            next_ccw[half_edge(rot[k])] = half_edge(rot[(k + 1) % 4]);
        }
    }
    let mut seen = vec![false; 2 * n];
    let mut faces = Vec::new();
    for start in 0..2 * n {
        if seen[start] {
            continue;
        }
        let mut face = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            face.push(d);
            // cross the edge to its other end, then turn to the next end around that crossing
            d = next_ccw[d ^ 1];
        }
        faces.push(face);
    }
    faces
}

/// Decides whether `m` is the self-intersection pattern of a closed planar
/// curve, returning the local orientations of one realization.
///
/// Interlaced chords within one component of the interlacement graph have
/// their relative orientation forced by the parity of common neighbours and
/// of the first-endpoint positions; distinct components can be reflected
/// independently. The candidate is then checked by face tracing.
pub fn realize(m: &ChordMatching) -> Option<Embedding> {
    let c = m.chord_count();
    if c == 0 {
        return Some(Embedding { orientation: Vec::new() });
    }
    let chords = m.chords();
    let graph = Interlacement::new(&chords);
    if (0..c).any(|a| graph.degree(a) % 2 == 1) {
        return None;
    }
    let mut orientation = vec![0i8; c];
    for s in 0..c {
        if orientation[s] != 0 {
            continue;
        }
        orientation[s] = 1;
        let mut stack = vec![s];
        while let Some(a) = stack.pop() {
            for b in graph.neighbors(a) {
                let want = orientation[a] * relative_orientation(&graph, &chords, a, b);
                if orientation[b] == 0 {
                    orientation[b] = want;
                    stack.push(b);
                } else if orientation[b] != want {
                    return None;
                }
            }
        }
    }
    let emb = Embedding { orientation };
    (emb.face_count(m) == c + 2).then_some(emb)
}

/// Product of the local orientations of two interlaced chords in any planar realization.
fn relative_orientation(graph: &Interlacement, chords: &[(usize, usize)], a: usize, b: usize) -> i8 {
    let parity = graph.common(a, b) + chords[a].0 + chords[b].0 + 1;
    if parity.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Exhaustive search over all `2^c` local orientations; reference for small inputs.
pub fn realize_exhaustive(m: &ChordMatching) -> Vec<Embedding> {
    let c = m.chord_count();
    assert!(c <= 16, "exhaustive realization is limited to 16 chords");
    (0u32..1 << c)
        .map(|bits| Embedding {
            orientation: (0..c).map(|k| if bits >> k & 1 == 1 { -1 } else { 1 }).collect(),
        })
        .filter(|e| e.face_count(m) == c + 2)
        .collect()
}
