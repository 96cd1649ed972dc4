//! Arrow combinatorics on Gauss diagrams.

use serde::{Deserialize, Serialize};

use crate::codes::{build_diagram, CodeEntry, Interlacement, KnotDiagram, Passage, Sign, SignedGaussCode};
use crate::error::{KnotError, Result};

/// An arrow from the under-passage (tail) to the over-passage (head) of a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
    pub sign: Sign,
}

impl Arrow {
    pub fn weight(&self) -> i64 {
        self.sign.value()
    }
}

/// Signed arrows on a circle with `2c` marked points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussDiagram {
    points: usize,
    arrows: Vec<Arrow>,
    owner: Vec<usize>,
}

/// Mutual position of two arrows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairRelation {
    /// The chords intersect; `distinguished` is the arrow whose head is
    /// followed by the other arrow's tail along the circle.
    Linked { distinguished: usize },
    /// Disjoint chords whose tails are adjacent among the four endpoints.
    Parallel,
    NonParallel,
}

impl GaussDiagram {
    pub fn new(points: usize, arrows: Vec<Arrow>) -> Result<Self> {
        if points != 2 * arrows.len() {
            return Err(KnotError::InvalidArgument(format!(
                "{} arrows need {} points, got {points}",
                arrows.len(),
                2 * arrows.len()
            )));
        }
        let mut owner = vec![usize::MAX; points];
        for (k, a) in arrows.iter().enumerate() {
            for p in [a.tail, a.head] {
                if p >= points {
                    return Err(KnotError::OutOfRange { id: p, len: points });
                }
                if owner[p] != usize::MAX {
                    return Err(KnotError::InvalidArgument(format!("point {p} used twice")));
                }
                owner[p] = k;
            }
        }
        Ok(GaussDiagram { points, arrows, owner })
    }

    /// Gauss diagram of a knot diagram. Arrow `x` belongs to crossing `x`;
    /// position 0 is the first passage after the under-passage of crossing 0.
    pub fn from_diagram(d: &KnotDiagram) -> GaussDiagram {
        let n = d.visits().len();
        if n == 0 {
            return GaussDiagram { points: 0, arrows: Vec::new(), owner: Vec::new() };
        }
        let shift = (d.under_visit(0) + 1) % n;
        let pos = |v: usize| (v + n - shift) % n;
        let arrows = (0..d.crossing_count())
            .map(|x| Arrow { tail: pos(d.under_visit(x)), head: pos(d.over_visit(x)), sign: d.sign(x) })
            .collect();
        GaussDiagram::new(n, arrows).expect("diagram yields a valid Gauss diagram")
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, k: usize) -> &Arrow {
        &self.arrows[k]
    }

    /// Arrow owning a point.
    pub fn owner(&self, p: usize) -> usize {
        self.owner[p]
    }

    pub fn partner(&self, p: usize) -> usize {
        let a = &self.arrows[self.owner[p]];
        if a.tail == p {
            a.head
        } else {
            a.tail
        }
    }

    pub fn interlaced(&self, a: usize, b: usize) -> bool {
        let (a1, a2) = span(&self.arrows[a]);
        let inside = |p: usize| a1 < p && p < a2;
        inside(self.arrows[b].tail) != inside(self.arrows[b].head)
    }

    pub fn interlacement(&self) -> Interlacement {
        let chords: Vec<(usize, usize)> = self.arrows.iter().map(|a| (a.tail, a.head)).collect();
        Interlacement::new(&chords)
    }

    pub fn pair_relation(&self, a: usize, b: usize) -> Result<PairRelation> {
        let len = self.arrows.len();
        for id in [a, b] {
            if id >= len {
                return Err(KnotError::OutOfRange { id, len });
            }
        }
        if a == b {
            return Err(KnotError::InvalidArgument("pair relation needs two distinct arrows".into()));
        }
        Ok(self.relation_unchecked(a, b))
    }

    pub(crate) fn relation_unchecked(&self, a: usize, b: usize) -> PairRelation {
        // the four endpoints in circle order, each tagged (arrow, is_head)
        let mut ends = [
            (self.arrows[a].tail, a, false),
            (self.arrows[a].head, a, true),
            (self.arrows[b].tail, b, false),
            (self.arrows[b].head, b, true),
        ];
        ends.sort_unstable();
        if self.interlaced(a, b) {
            let head_a = ends.iter().position(|e| e.1 == a && e.2).expect("head present");
            let next = ends[(head_a + 1) % 4];
            let distinguished = if next.1 == b && !next.2 { a } else { b };
            PairRelation::Linked { distinguished }
        } else {
            let tails_adjacent = (0..4).any(|i| !ends[i].2 && !ends[(i + 1) % 4].2);
            if tails_adjacent {
                PairRelation::Parallel
            } else {
                PairRelation::NonParallel
            }
        }
    }

    /// Signed Gauss code read from position 0; arrow `k` gets label `k + 1`.
    pub fn to_code(&self) -> SignedGaussCode {
        let entries = (0..self.points)
            .map(|p| {
                let k = self.owner[p];
                let a = &self.arrows[k];
                let passage = if a.head == p { Passage::Over } else { Passage::Under };
                CodeEntry { passage, label: k as u32 + 1, sign: Some(a.sign) }
            })
            .collect();
        SignedGaussCode::new(entries).expect("arrows give a valid code")
    }

    /// The knot diagram with this Gauss diagram.
    pub fn to_diagram(&self) -> Result<KnotDiagram> {
        build_diagram(&self.to_code())
    }

    /// Chords interlaced with `a`.
    pub fn linked_with(&self, a: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&b| b != a && self.interlaced(a, b)).collect()
    }
}

fn span(a: &Arrow) -> (usize, usize) {
    (a.tail.min(a.head), a.tail.max(a.head))
}

/// Outcome of the structural lemma checks on one Gauss diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    /// Every chord meets an even number of other chords.
    pub ev: bool,
    /// Double connectivity: whenever `a` and `b` both meet `c`, either they
    /// meet each other or some fourth chord meets both.
    pub two_c: bool,
    /// For positive diagrams: each chord is distinguished in exactly half of
    /// its linked pairs. `None` when not requested or the diagram is not positive.
    pub eev: Option<bool>,
    pub failures: Vec<String>,
}

pub fn lemma_checks(g: &GaussDiagram, positive_only: bool) -> LemmaReport {
    let graph = g.interlacement();
    let m = g.len();
    let mut failures = Vec::new();

    let mut ev = true;
    for a in 0..m {
        if graph.degree(a) % 2 == 1 {
            ev = false;
            failures.push(format!("ev: chord {a} meets {} chords", graph.degree(a)));
        }
    }

    let mut two_c = true;
    for c in 0..m {
        let nbrs: Vec<usize> = graph.neighbors(c).collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if graph.linked(a, b) {
                    continue;
                }
                let witnessed = (0..m).any(|d| d != c && d != a && d != b && graph.linked(d, a) && graph.linked(d, b));
                if !witnessed {
                    two_c = false;
                    failures.push(format!("2C: chords {a},{b} meet {c} but have no common witness"));
                }
            }
        }
    }

    let positive = g.arrows().iter().all(|a| a.sign == Sign::Positive);
    let eev = (positive_only && positive).then(|| {
        let mut ok = true;
        for c in 0..m {
            let nbrs: Vec<usize> = graph.neighbors(c).collect();
            let dist = nbrs
                .iter()
                .filter(|&&a| g.relation_unchecked(a, c) == PairRelation::Linked { distinguished: a })
                .count();
            if 2 * dist != nbrs.len() {
                ok = false;
                failures.push(format!("eev: chord {c} distinguished partners {dist} of {}", nbrs.len()));
            }
        }
        ok
    });

    LemmaReport { ev, two_c, eev, failures }
}

/// Primality of a Gauss diagram with the split found for composites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Primality {
    Prime,
    /// The circle splits into two arcs holding `first` and `second` whole
    /// chords; `start` and `len` locate the smaller arc.
    Composite { start: usize, len: usize, first: usize, second: usize },
}

/// Checks whether the circle can be cut at two points into arcs that each
/// hold at least one whole chord with no chord crossing the cut. Returns the
/// shortest such arc.
pub fn is_prime(g: &GaussDiagram) -> Primality {
    split_arc(g.points(), |p| g.partner(p))
        .map_or(Primality::Prime, |(start, len)| Primality::Composite {
            start,
            len,
            first: len / 2,
            second: (g.points() - len) / 2,
        })
}

/// Shortest cyclic arc `(start, len)` closed under the pairing, with
/// `2 <= len <= n - 2`.
pub(crate) fn split_arc(n: usize, partner: impl Fn(usize) -> usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for start in 0..n {
        let mut open = 0usize;
        for len in 1..n.saturating_sub(1) {
            let q = (start + len - 1) % n;
            let off = (partner(q) + n - start) % n;
            if off < len - 1 {
                open -= 1;
            } else {
                open += 1;
            }
            if open == 0 && len >= 2 && best.is_none_or(|(_, l)| len < l) {
                best = Some((start, len));
                break;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_diagram, parse_gauss_code};

    fn gd(code: &str) -> GaussDiagram {
        GaussDiagram::from_diagram(&build_diagram(&parse_gauss_code(code).unwrap()).unwrap())
    }

    fn arrows(spec: &[(usize, usize)]) -> GaussDiagram {
        let arrows = spec.iter().map(|&(t, h)| Arrow { tail: t, head: h, sign: Sign::Positive }).collect();
        GaussDiagram::new(2 * spec.len(), arrows).unwrap()
    }

    #[test]
    fn trefoil_arrows() {
        let g = gd("O1+U2+O3+U1+O2+U3+");
        assert_eq!(g.len(), 3);
        assert!(g.arrows().iter().all(|a| a.sign == Sign::Positive));
        for a in 0..3 {
            for b in 0..3 {
                if a != b {
                    assert!(matches!(g.pair_relation(a, b).unwrap(), PairRelation::Linked { .. }));
                }
            }
        }
    }

    #[test]
    fn kink_and_unknot() {
        assert_eq!(gd("O1+U1+").len(), 1);
        assert!(gd("").is_empty());
    }

    #[test]
    fn parallel_and_nonparallel() {
        let g = arrows(&[(1, 0), (2, 3)]);
        assert_eq!(g.pair_relation(0, 1).unwrap(), PairRelation::Parallel);
        let g = arrows(&[(0, 1), (2, 3)]);
        assert_eq!(g.pair_relation(0, 1).unwrap(), PairRelation::NonParallel);
    }

    #[test]
    fn relation_is_symmetric_with_one_distinguished() {
        let g = gd("O1+U2+O3+U1+O2+U3+");
        for a in 0..3 {
            for b in 0..3 {
                if a == b {
                    continue;
                }
                let r1 = g.pair_relation(a, b).unwrap();
                let r2 = g.pair_relation(b, a).unwrap();
                assert_eq!(r1, r2);
                if let PairRelation::Linked { distinguished } = r1 {
                    assert!(distinguished == a || distinguished == b);
                }
            }
        }
    }

    #[test]
    fn pair_relation_errors() {
        let g = gd("O1+U1+");
        assert!(matches!(g.pair_relation(0, 0), Err(KnotError::InvalidArgument(_))));
        assert!(matches!(g.pair_relation(0, 3), Err(KnotError::OutOfRange { .. })));
    }

    #[test]
    fn trefoil_lemmas() {
        let r = lemma_checks(&gd("O1+U2+O3+U1+O2+U3+"), true);
        assert!(r.ev && r.two_c);
        assert_eq!(r.eev, Some(true));
    }

    #[test]
    fn primality() {
        assert!(matches!(
            is_prime(&arrows(&[(0, 1), (2, 3)])),
            Primality::Composite { first: 1, second: 1, .. }
        ));
        assert_eq!(is_prime(&gd("O1+U2+O3+U1+O2+U3+")), Primality::Prime);
        let sum = gd("O1+U2+O3+U1+O2+U3+O4+U5+O6+U4+O5+U6+");
        assert!(matches!(is_prime(&sum), Primality::Composite { first: 3, second: 3, .. }));
        assert_eq!(is_prime(&gd("O1+U1+")), Primality::Prime);
    }
}
