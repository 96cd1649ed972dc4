//! Exhaustive enumeration of knot shadows and decorated diagrams, theorem
//! checks over them and extremal searches.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::RangeInclusive;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::{decorate, realize, ChordMatching, Embedding, KnotDiagram, SignedGaussCode};
use crate::constructions::almost_positive_unknot_variants;
use crate::error::{KnotError, Result};
use crate::gauss::GaussDiagram;
use crate::invariants::{lk, v2, v3};
use crate::oracles::signature_and_det;
use crate::planar::{
    apply_t2bar, find_clasps, genus, is_bireduced, is_connected, is_reduced, loop_move, LoopPass, PositivityStatus, Side,
};

/// Largest crossing number for shadow enumeration.
pub const SHADOW_MAX_CROSSINGS: usize = 9;

/// A realizable chord matching, least in its class under rotation and
/// reflection of the circle, with one planar realization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shadow {
    pub matching: ChordMatching,
    pub embedding: Embedding,
}

impl Shadow {
    pub fn crossing_count(&self) -> usize {
        self.matching.chord_count()
    }

    /// The decoration with every crossing positive.
    pub fn positive(&self) -> KnotDiagram {
        let over: Vec<bool> = self.embedding.orientation.iter().map(|&o| o > 0).collect();
        decorate(&self.matching, &self.embedding, &over).expect("realized shadow")
    }

    /// The decoration whose crossings have the given signs.
    pub fn with_signs(&self, negative: &[bool]) -> KnotDiagram {
        let over: Vec<bool> =
            self.embedding.orientation.iter().zip(negative).map(|(&o, &neg)| (o > 0) != neg).collect();
        decorate(&self.matching, &self.embedding, &over).expect("realized shadow")
    }

    /// The decoration alternating over and under along the curve.
    pub fn alternating(&self) -> KnotDiagram {
        let over: Vec<bool> = self.matching.chords().iter().map(|&(a, _)| a % 2 == 0).collect();
        decorate(&self.matching, &self.embedding, &over).expect("realized shadow")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramFilter {
    pub connected: bool,
    pub reduced: bool,
    pub bireduced: bool,
    pub no_clasp: bool,
    /// `None` decorates with every over/under assignment.
    pub positivity: Option<PositivityStatus>,
    pub min_crossings: usize,
    pub max_crossings: usize,
}

impl DiagramFilter {
    pub fn new(positivity: Option<PositivityStatus>, crossings: RangeInclusive<usize>) -> Self {
        DiagramFilter {
            connected: false,
            reduced: false,
            bireduced: false,
            no_clasp: false,
            positivity,
            min_crossings: *crossings.start(),
            max_crossings: *crossings.end(),
        }
    }

    pub fn connected(mut self) -> Self {
        self.connected = true;
        self
    }

    pub fn reduced(mut self) -> Self {
        self.reduced = true;
        self
    }

    pub fn bireduced(mut self) -> Self {
        self.bireduced = true;
        self
    }

    pub fn no_clasp(mut self) -> Self {
        self.no_clasp = true;
        self
    }

    pub fn accepts(&self, d: &KnotDiagram) -> bool {
        let c = d.crossing_count();
        if c < self.min_crossings || c > self.max_crossings {
            return false;
        }
        if let Some(p) = self.positivity {
            if d.negative_count() != p.negatives() {
                return false;
            }
        }
        (!self.reduced || is_reduced(d))
            && (!self.bireduced || is_bireduced(d))
            && (!self.connected || is_connected(d))
            && (!self.no_clasp || find_clasps(d).is_empty())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremId {
    Th1,
    Th2,
    Th3,
    Lm2,
    Lk43,
    T2bar,
    Sigma,
}

impl std::str::FromStr for TheoremId {
    type Err = KnotError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "th1" => TheoremId::Th1,
            "th2" => TheoremId::Th2,
            "th3" => TheoremId::Th3,
            "lm2" => TheoremId::Lm2,
            "lk43" => TheoremId::Lk43,
            "t2bar" => TheoremId::T2bar,
            "sigma" => TheoremId::Sigma,
            _ => return Err(KnotError::InvalidArgument(format!("unknown theorem {s}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub filter: DiagramFilter,
    pub scanned: usize,
    pub counterexamples: Vec<String>,
    /// Crossing numbers at which a stated exception occurs.
    pub exceptions: Vec<usize>,
    pub elapsed_ms: u128,
}

impl TheoremReport {
    pub fn pass(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    MaxLkOverV2,
    MinV3,
    MinV2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub objective: Objective,
    /// `(numerator, denominator)` of the optimum.
    pub value: Option<(i64, i64)>,
    pub witness: Option<String>,
    pub scanned: usize,
    /// Diagrams skipped because the ratio is undefined.
    pub skipped_zero_v2: usize,
}

impl ExtremalResult {
    pub fn ratio(&self) -> Option<Ratio<i64>> {
        self.value.map(|(n, d)| Ratio::new(n, d))
    }
}

fn check_budget(c: usize) -> Result<()> {
    if c > SHADOW_MAX_CROSSINGS {
        return Err(KnotError::Budget { got: c, limit: SHADOW_MAX_CROSSINGS });
    }
    Ok(())
}

/// Whether `p` is lexicographically least among its images under the
/// dihedral group acting on positions.
fn is_canonical(p: &[usize]) -> bool {
    let n = p.len();
    for refl in [false, true] {
        for r in 0..n {
            if r == 0 && !refl {
                continue;
            }
            for i in 0..n {
                let t = if refl {
                    let j = (i + r) % n;
                    let q = n - 1 - p[n - 1 - j];
                    (q + n - r) % n
                } else {
                    (p[(i + r) % n] + n - r) % n
                };
                if t != p[i] {
                    if t < p[i] {
                        return false;
                    }
                    break;
                }
            }
        }
    }
    true
}

/// Every chord has an even number of chords crossing it.
fn even_interlacing(p: &[usize]) -> bool {
    let n = p.len();
    (0..n).filter(|&i| i < p[i]).all(|i| (i + 1..p[i]).filter(|&j| p[j] < i || p[j] > p[i]).count() % 2 == 0)
}

fn complete(partner: &mut [usize], out: &mut Vec<Shadow>) {
    let Some(i) = partner.iter().position(|&x| x == usize::MAX) else {
        if is_canonical(partner) && even_interlacing(partner) {
            let m = ChordMatching::from_partners(partner.to_vec()).expect("complete matching");
            if let Some(embedding) = realize(&m) {
                out.push(Shadow { matching: m, embedding });
            }
        }
        return;
    };
    for j in i + 1..partner.len() {
        if partner[j] == usize::MAX {
            partner[i] = j;
            partner[j] = i;
            complete(partner, out);
            partner[i] = usize::MAX;
            partner[j] = usize::MAX;
        }
    }
}

fn prefixes(n: usize, depth: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![usize::MAX; n]];
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in out {
            let Some(i) = p.iter().position(|&x| x == usize::MAX) else {
                next.push(p);
                continue;
            };
            for j in i + 1..n {
                if p[j] == usize::MAX {
                    let mut q = p.clone();
                    q[i] = j;
                    q[j] = i;
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out
}

/// Shadows with `c` crossings, the matching space split into work units by
/// fixing the first `depth` chords.
pub fn enumerate_shadows_partitioned(c: usize, depth: usize) -> Result<Vec<Shadow>> {
    check_budget(c)?;
    let mut out: Vec<Shadow> = prefixes(2 * c, depth)
        .into_par_iter()
        .flat_map_iter(|mut p| {
            let mut found = Vec::new();
            complete(&mut p, &mut found);
            found
        })
        .collect();
    out.sort_by(|a, b| a.matching.cmp(&b.matching));
    Ok(out)
}

fn shadow_cache() -> &'static Mutex<HashMap<usize, Arc<Vec<Shadow>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Shadow>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Realizable shadows with `c` crossings, one per class under rotation and
/// reflection of the circle, sorted by matching.
pub fn enumerate_shadows(c: usize) -> Result<Arc<Vec<Shadow>>> {
    check_budget(c)?;
    if let Some(s) = shadow_cache().lock().expect("cache lock").get(&c) {
        return Ok(Arc::clone(s));
    }
    let shadows = Arc::new(enumerate_shadows_partitioned(c, 2.min(c))?);
    shadow_cache().lock().expect("cache lock").insert(c, Arc::clone(&shadows));
    Ok(shadows)
}

fn subsets(c: usize, k: usize) -> Vec<Vec<bool>> {
    fn rec(start: usize, left: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..cur.len() {
            if cur.len() - i < left {
                break;
            }
            cur[i] = true;
            rec(i + 1, left - 1, cur, out);
            cur[i] = false;
        }
    }
    let mut out = Vec::new();
    if k <= c {
        rec(0, k, &mut vec![false; c], &mut out);
    }
    out
}

/// Decorations of one shadow with the requested sign pattern, one per
/// symmetry class of signed codes, in a fixed order.
pub fn decorations(shadow: &Shadow, positivity: Option<PositivityStatus>) -> Vec<KnotDiagram> {
    let c = shadow.crossing_count();
    let patterns: Vec<Vec<bool>> = match positivity {
        Some(p) => subsets(c, p.negatives()),
        None => (0u64..1 << c).map(|bits| (0..c).map(|k| bits >> k & 1 == 1).collect()).collect(),
    };
    let mut seen: BTreeSet<SignedGaussCode> = BTreeSet::new();
    let mut out = Vec::new();
    for neg in patterns {
        let d = shadow.with_signs(&neg);
        if seen.insert(d.code().symmetric_canonical()) {
            out.push(d);
        }
    }
    out
}

/// Applies `f` to every diagram passing `filter`, in parallel over shadows;
/// results come back in enumeration order.
pub fn map_diagrams<T, F>(filter: &DiagramFilter, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&KnotDiagram) -> Option<T> + Sync,
{
    check_budget(filter.max_crossings)?;
    let mut out = Vec::new();
    for c in filter.min_crossings..=filter.max_crossings {
        if c == 0 {
            let d = KnotDiagram::unknot();
            if filter.accepts(&d) {
                out.extend(f(&d));
            }
            continue;
        }
        let shadows = enumerate_shadows(c)?;
        let part: Vec<T> = shadows
            .par_iter()
            .flat_map_iter(|s| {
                decorations(s, filter.positivity)
                    .into_iter()
                    .filter(|d| filter.accepts(d))
                    .filter_map(|d| f(&d))
                    .collect::<Vec<_>>()
            })
            .collect();
        out.extend(part);
    }
    Ok(out)
}

pub fn enumerate_diagrams(filter: &DiagramFilter) -> Result<Vec<KnotDiagram>> {
    map_diagrams(filter, |d| Some(d.clone()))
}

/// Symmetric canonical codes of the connected almost positive twist
/// diagrams of the unknot with at most `max_c` crossings, one-crossing
/// diagram included.
pub fn twist_unknot_canonicals(max_c: usize) -> Result<BTreeSet<SignedGaussCode>> {
    let mut out = BTreeSet::new();
    for n in 1..=max_c {
        for d in almost_positive_unknot_variants(n)? {
            if is_connected(&d) {
                out.insert(d.code().symmetric_canonical());
            }
        }
    }
    Ok(out)
}

fn code_string(d: &KnotDiagram) -> String {
    d.code().to_string()
}

/// Checks one of the supported statements over every enumerated diagram up to `max_c` crossings.
pub fn verify_theorem(id: TheoremId, max_c: usize) -> Result<TheoremReport> {
    check_budget(max_c)?;
    let start = Instant::now();
    let ap = Some(PositivityStatus::AlmostPositive);
    let pos = Some(PositivityStatus::Positive);
    let mut exceptions = Vec::new();
    let (filter, scanned, mut counterexamples) = match id {
        TheoremId::Th1 => {
            let filter = DiagramFilter::new(ap, 1..=max_c);
            let res = map_diagrams(&filter, |d| {
                let bad = v3(&GaussDiagram::from_diagram(d)) < 0;
                Some(bad.then(|| code_string(d)))
            })?;
            (filter, res.len(), res.into_iter().flatten().collect())
        }
        TheoremId::Th2 | TheoremId::Th3 => {
            let filter = DiagramFilter::new(ap, 1..=max_c).connected();
            let twist = twist_unknot_canonicals(max_c)?;
            let res = map_diagrams(&filter, |d| {
                let g = GaussDiagram::from_diagram(d);
                let (v2v, v3v) = (v2(&g, None), v3(&g));
                let zero = if id == TheoremId::Th2 { v3v == 0 } else { v2v == 0 };
                Some((d.code().symmetric_canonical(), zero, v2v < 0, code_string(d)))
            })?;
            let mut bad = Vec::new();
            let mut seen = BTreeSet::new();
            for (canon, zero, negative_v2, code) in &res {
                let is_twist = twist.contains(canon);
                if is_twist {
                    seen.insert(canon.clone());
                }
                if zero != &is_twist || (id == TheoremId::Th3 && *negative_v2) {
                    bad.push(code.clone());
                }
            }
            for t in twist.difference(&seen) {
                bad.push(format!("missing {t}"));
            }
            (filter, res.len(), bad)
        }
        TheoremId::Lm2 | TheoremId::Lk43 => {
            let filter = DiagramFilter::new(pos, 1..=max_c).connected().bireduced();
            let res = map_diagrams(&filter, |d| {
                let c = d.crossing_count();
                Some((c, lk(&GaussDiagram::from_diagram(d)), code_string(d)))
            })?;
            let mut bad = Vec::new();
            let mut below: BTreeSet<usize> = BTreeSet::new();
            for (c, l, code) in &res {
                if id == TheoremId::Lm2 {
                    if *l < 3 * ((c - 1) / 2) {
                        bad.push(code.clone());
                    }
                } else if 3 * l < 4 * c {
                    below.insert(*c);
                    if *c != 3 && *c != 4 {
                        bad.push(code.clone());
                    }
                }
            }
            if id == TheoremId::Lk43 {
                for c in [3, 4] {
                    if c <= max_c && !below.contains(&c) {
                        bad.push(format!("no exception at c = {c}"));
                    }
                }
                exceptions = below.into_iter().collect();
            }
            (filter, res.len(), bad)
        }
        TheoremId::T2bar => {
            let filter = DiagramFilter::new(pos, 1..=max_c);
            let res = map_diagrams(&filter, |d| {
                let g = GaussDiagram::from_diagram(d);
                let (l0, w0) = (lk(&g) as i64, v2(&g, None));
                let mut bad = Vec::new();
                for x in 0..d.crossing_count() {
                    match apply_t2bar(d, x) {
                        Ok(e) => {
                            let h = GaussDiagram::from_diagram(&e);
                            if lk(&h) as i64 - l0 != 4 * (v2(&h, None) - w0) {
                                bad.push(format!("{} at {x}", code_string(d)));
                            }
                        }
                        Err(_) => bad.push(format!("{} at {x}: not applicable", code_string(d))),
                    }
                }
                Some(bad)
            })?;
            (filter, res.len(), res.into_iter().flatten().collect())
        }
        TheoremId::Sigma => {
            let filter = DiagramFilter::new(pos, 1..=max_c).reduced();
            let res = map_diagrams(&filter, |d| {
                let sig = match signature_and_det(d) {
                    Ok(r) => r.sigma_paper,
                    Err(e) => return Some(Some(format!("{}: {e}", code_string(d)))),
                };
                let g = genus(d).g;
                let ok = sig >= 2 && ((sig == 2) == (g == 1));
                Some((!ok).then(|| code_string(d)))
            })?;
            (filter, res.len(), res.into_iter().flatten().collect())
        }
    };
    counterexamples.sort();
    counterexamples.dedup();
    Ok(TheoremReport { theorem: id, filter, scanned, counterexamples, exceptions, elapsed_ms: start.elapsed().as_millis() })
}

/// Global optimum of `objective` over the filtered diagrams; ties keep the
/// first diagram in enumeration order.
pub fn extremal_search(objective: Objective, filter: &DiagramFilter) -> Result<ExtremalResult> {
    let vals = map_diagrams(filter, |d| {
        let g = GaussDiagram::from_diagram(d);
        let v = match objective {
            Objective::MaxLkOverV2 => {
                let w = v2(&g, None);
                if w == 0 {
                    None
                } else {
                    Some(Ratio::new(lk(&g) as i64, w))
                }
            }
            Objective::MinV3 => Some(Ratio::from_integer(v3(&g))),
            Objective::MinV2 => Some(Ratio::from_integer(v2(&g, None))),
        };
        Some((v, d.code()))
    })?;
    let mut best: Option<(Ratio<i64>, &SignedGaussCode)> = None;
    let mut skipped = 0;
    for (v, code) in &vals {
        let Some(v) = v else {
            skipped += 1;
            continue;
        };
        let better = match &best {
            None => true,
            Some((b, _)) => match objective {
                Objective::MaxLkOverV2 => v > b,
                _ => v < b,
            },
        };
        if better {
            best = Some((*v, code));
        }
    }
    Ok(ExtremalResult {
        objective,
        value: best.map(|(v, _)| (*v.numer(), *v.denom())),
        witness: best.map(|(_, c)| c.to_string()),
        scanned: vals.len(),
        skipped_zero_v2: skipped,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleReport {
    pub seed: u64,
    pub samples: usize,
    /// Draws rejected because the move was not applicable.
    pub rejected: usize,
    pub counterexamples: Vec<String>,
}

impl SampleReport {
    pub fn pass(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Draws positive diagrams with `3..=max_c` crossings, a chord and a side,
/// and checks that the loop move does not increase the signature.
pub fn sample_loop_signature(seed: u64, samples: usize, max_c: usize) -> Result<SampleReport> {
    use rand::{Rng, SeedableRng};
    let pool = enumerate_diagrams(&DiagramFilter::new(Some(PositivityStatus::Positive), 3..=max_c).reduced())?;
    if pool.is_empty() {
        return Err(KnotError::InvalidArgument("no positive diagrams to sample".into()));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = SampleReport { seed, samples: 0, rejected: 0, counterexamples: Vec::new() };
    while report.samples < samples {
        if report.rejected > 100 * samples {
            return Err(KnotError::InvalidArgument("loop move rarely applicable".into()));
        }
        let d = &pool[rng.gen_range(0..pool.len())];
        let k = rng.gen_range(0..d.crossing_count());
        let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
        let g = GaussDiagram::from_diagram(d);
        let Ok(out) = loop_move(&g, k, side, LoopPass::Over) else {
            report.rejected += 1;
            continue;
        };
        report.samples += 1;
        let before = signature_and_det(d)?.sigma_paper;
        let after = signature_and_det(&out.diagram.to_diagram()?)?.sigma_paper;
        if after > before {
            report.counterexamples.push(format!("{} chord {} {side:?}", code_string(d), k + 1));
        }
    }
    Ok(report)
}

/// Number of shadows per crossing number, for reporting.
pub fn shadow_counts(range: RangeInclusive<usize>) -> Result<BTreeMap<usize, usize>> {
    range.map(|c| Ok((c, if c == 0 { 1 } else { enumerate_shadows(c)?.len() }))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::parse_gauss_code;

    #[test]
    fn small_shadow_counts() {
        assert_eq!(enumerate_shadows(1).unwrap().len(), 1);
        assert_eq!(enumerate_shadows(2).unwrap().len(), 1);
        let three = enumerate_shadows(3).unwrap();
        let trefoil = ChordMatching::from_pairs(&[(0, 3), (1, 4), (2, 5)]).unwrap();
        assert!(three.iter().any(|s| s.matching == trefoil));
    }

    #[test]
    fn partitioning_does_not_change_the_result() {
        for c in 1..=6 {
            let a = enumerate_shadows_partitioned(c, 0).unwrap();
            let b = enumerate_shadows_partitioned(c, 3.min(c)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn filtered_streams() {
        let f = DiagramFilter::new(Some(PositivityStatus::Positive), 3..=3).connected().reduced();
        let ds = enumerate_diagrams(&f).unwrap();
        assert_eq!(ds.len(), 1);
        let t = crate::codes::build_diagram(&parse_gauss_code("O1+U2+O3+U1+O2+U3+").unwrap()).unwrap();
        assert_eq!(ds[0].code().symmetric_canonical(), t.code().symmetric_canonical());
        let f = DiagramFilter::new(Some(PositivityStatus::Positive), 2..=2).reduced();
        assert!(enumerate_diagrams(&f).unwrap().is_empty());
        let twist = twist_unknot_canonicals(3).unwrap();
        let f = DiagramFilter::new(Some(PositivityStatus::AlmostPositive), 3..=3).connected();
        assert!(enumerate_diagrams(&f).unwrap().iter().any(|d| twist.contains(&d.code().symmetric_canonical())));
    }

    #[test]
    fn small_theorems() {
        for id in [TheoremId::Th1, TheoremId::Th2, TheoremId::Th3, TheoremId::Lm2, TheoremId::T2bar, TheoremId::Sigma] {
            let r = verify_theorem(id, 6).unwrap();
            assert!(r.pass(), "{id:?}: {:?}", r.counterexamples);
        }
        let r = verify_theorem(TheoremId::Lk43, 6).unwrap();
        assert_eq!(r.exceptions, vec![3, 4]);
        assert!(r.pass());
    }

    #[test]
    fn min_v3_two_negative() {
        let f = DiagramFilter::new(Some(PositivityStatus::KNegative(2)), 6..=6).connected();
        let r = extremal_search(Objective::MinV3, &f).unwrap();
        assert_eq!(r.value, Some((-4, 1)));
    }

    #[test]
    fn seeded_loop_samples() {
        let a = sample_loop_signature(7, 50, 6).unwrap();
        assert!(a.pass(), "{:?}", a.counterexamples);
        assert_eq!(a, sample_loop_signature(7, 50, 6).unwrap());
    }
}
