//! Gauss-sum invariants: linked pairs, `v2` and `v3`.
//!
//! `v2` counts arrow pairs `(a, b)` met in the order head of `b`, tail of
//! `a`, tail of `b`, head of `a` after the base point, weighted `w_a w_b`.
//!
//! `v3` is the sum of `w_p w_q w_r` over pairwise linked triples, plus
//! `w_b w_p w_q` over a base chord `b` crossed by two unlinked arrows `p, q`
//! whose heads lie on the same side of `b`, plus `(w_p + w_q) / 2` over all
//! linked pairs. Both agree with `-V''(1)/6` and `-V''(1)/3 - V'''(1)/9`.

use serde::{Deserialize, Serialize};

use crate::codes::KnotDiagram;
use crate::gauss::{GaussDiagram, PairRelation};
use crate::planar::{genus, positivity_status, PositivityStatus};

/// An interlaced pair of arrows `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkedPair {
    pub a: usize,
    pub b: usize,
    pub distinguished: usize,
}

/// Configuration counts behind `v3`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfigCensus {
    pub n33: u64,
    pub n420: u64,
    /// Weighted sums of the three terms of `v3`.
    pub sum33: i64,
    pub sum420: i64,
    pub linked_term: i64,
    pub linked: Vec<LinkedPair>,
}

impl ConfigCensus {
    pub fn lk(&self) -> usize {
        self.linked.len()
    }

    pub fn v3(&self) -> i64 {
        self.sum33 + self.sum420 + self.linked_term
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub v2: i64,
    pub v3: i64,
    pub lk: usize,
    pub writhe: i64,
    pub c: usize,
    pub s: usize,
    pub g: usize,
    pub status: PositivityStatus,
}

pub fn linked_pairs(g: &GaussDiagram) -> Vec<LinkedPair> {
    let m = g.len();
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if let PairRelation::Linked { distinguished } = g.relation_unchecked(a, b) {
                out.push(LinkedPair { a, b, distinguished });
            }
        }
    }
    out
}

pub fn lk(g: &GaussDiagram) -> usize {
    let graph = g.interlacement();
    (0..g.len()).map(|a| graph.degree(a)).sum::<usize>() / 2
}

/// `v2` read from the base point placed just before point `base`
/// (`base = 0` when `None`).
pub fn v2(g: &GaussDiagram, base: Option<usize>) -> i64 {
    let n = g.points();
    if n == 0 {
        return 0;
    }
    let shift = base.unwrap_or(0) % n;
    let pos = |p: usize| (p + n - shift) % n;
    let arrows: Vec<(usize, usize, i64)> = g.arrows().iter().map(|a| (pos(a.tail), pos(a.head), a.weight())).collect();
    let mut sum = 0;
    for &(ta, ha, wa) in &arrows {
        for &(tb, hb, wb) in &arrows {
            if hb < ta && ta < tb && tb < ha {
                sum += wa * wb;
            }
        }
    }
    sum
}

/// The symmetrized count: half the sum of the pattern above and its reflection
/// (head of `a`, tail of `b`, tail of `a`, head of `b` read backwards).
pub fn v2_symmetrized(g: &GaussDiagram, base: Option<usize>) -> i64 {
    let n = g.points();
    if n == 0 {
        return 0;
    }
    let shift = base.unwrap_or(0) % n;
    let pos = |p: usize| (p + n - shift) % n;
    let arrows: Vec<(usize, usize, i64)> = g.arrows().iter().map(|a| (pos(a.tail), pos(a.head), a.weight())).collect();
    let mut sum = 0;
    for &(ta, ha, wa) in &arrows {
        for &(tb, hb, wb) in &arrows {
            if hb < ta && ta < tb && tb < ha {
                sum += wa * wb;
            }
            if ta < hb && hb < ha && ha < tb {
                sum += wa * wb;
            }
        }
    }
    assert!(sum % 2 == 0, "symmetrized v2 count is even");
    sum / 2
}

pub fn config_census(g: &GaussDiagram) -> ConfigCensus {
    let m = g.len();
    let graph = g.interlacement();
    let w: Vec<i64> = g.arrows().iter().map(|a| a.weight()).collect();
    let mut census = ConfigCensus { linked: linked_pairs(g), ..ConfigCensus::default() };
    for p in &census.linked {
        census.linked_term += w[p.a] + w[p.b];
    }
    census.linked_term /= 2;

    for a in 0..m {
        for b in graph.neighbors(a).filter(|&b| b > a) {
            for c in graph.neighbors(b).filter(|&c| c > b) {
                if graph.linked(a, c) {
                    census.n33 += 1;
                    census.sum33 += w[a] * w[b] * w[c];
                }
            }
        }
    }

    for b in 0..m {
        let base = g.arrow(b);
        let (lo, hi) = (base.tail.min(base.head), base.tail.max(base.head));
        let nbrs: Vec<usize> = graph.neighbors(b).collect();
        let inside: Vec<bool> = nbrs
            .iter()
            .map(|&p| {
                let h = g.arrow(p).head;
                lo < h && h < hi
            })
            .collect();
        for i in 0..nbrs.len() {
            for j in i + 1..nbrs.len() {
                let (p, q) = (nbrs[i], nbrs[j]);
                if inside[i] == inside[j] && !graph.linked(p, q) {
                    census.n420 += 1;
                    census.sum420 += w[b] * w[p] * w[q];
                }
            }
        }
    }
    census
}

pub fn v3(g: &GaussDiagram) -> i64 {
    config_census(g).v3()
}

pub fn invariant_report(d: &KnotDiagram) -> InvariantReport {
    let g = GaussDiagram::from_diagram(d);
    let census = config_census(&g);
    let genus = genus(d);
    InvariantReport {
        v2: v2(&g, None),
        v3: census.v3(),
        lk: census.lk(),
        writhe: d.writhe(),
        c: genus.c,
        s: genus.s,
        g: genus.g,
        status: positivity_status(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_diagram, decorate, parse_gauss_code, realize, ChordMatching};
    use crate::oracles::{conway, jones, vassiliev_from_jones};

    fn gd(s: &str) -> GaussDiagram {
        GaussDiagram::from_diagram(&build_diagram(&parse_gauss_code(s).unwrap()).unwrap())
    }

    #[test]
    fn trefoil_values() {
        let g = gd("O1+U2+O3+U1+O2+U3+");
        assert_eq!(v2(&g, None), 1);
        assert_eq!(v3(&g), 4);
        let c = config_census(&g);
        assert_eq!((c.n33, c.n420, c.lk()), (1, 0, 3));
        let m = gd("O1-U2-O3-U1-O2-U3-");
        assert_eq!((v2(&m, None), v3(&m)), (1, -4));
    }

    #[test]
    fn kinks_vanish() {
        let g = gd("O1+U1+O2-U2-");
        assert_eq!((v2(&g, None), v3(&g), lk(&g)), (0, 0, 0));
        assert_eq!(config_census(&g), ConfigCensus::default());
        assert!(linked_pairs(&gd("O1+U1+")).is_empty());
    }

    #[test]
    fn trefoil_sum_census() {
        let c = config_census(&gd("O1+U2+O3+U1+O2+U3+O4+U5+O6+U4+O5+U6+"));
        assert_eq!((c.n33, c.lk()), (2, 6));
    }

    fn matchings(n: usize) -> Vec<ChordMatching> {
        fn rec(p: &mut Vec<usize>, out: &mut Vec<ChordMatching>) {
            let Some(i) = p.iter().position(|&x| x == usize::MAX) else {
                out.push(ChordMatching::from_partners(p.clone()).unwrap());
                return;
            };
            for j in i + 1..p.len() {
                if p[j] == usize::MAX {
                    p[i] = j;
                    p[j] = i;
                    rec(p, out);
                    p[i] = usize::MAX;
                    p[j] = usize::MAX;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut vec![usize::MAX; n], &mut out);
        out
    }

    #[test]
    fn agrees_with_polynomials_up_to_five_crossings() {
        for c in 1..=5 {
            for m in matchings(2 * c) {
                let Some(e) = realize(&m) else { continue };
                for bits in 0u32..1 << c {
                    let over: Vec<bool> = (0..c).map(|k| bits >> k & 1 == 1).collect();
                    let d = decorate(&m, &e, &over).unwrap();
                    let g = GaussDiagram::from_diagram(&d);
                    let (j2, j3) = vassiliev_from_jones(&jones(&d).unwrap()).unwrap();
                    assert_eq!(v2(&g, None), j2, "{}", d.code());
                    assert_eq!(v3(&g), j3, "{}", d.code());
                    assert_eq!(conway(&d).unwrap().coeff(2), j2);
                    for b in 0..2 * c {
                        assert_eq!(v2(&g, Some(b)), j2);
                        assert_eq!(v2_symmetrized(&g, Some(b)), j2);
                    }
                }
            }
        }
    }
}
