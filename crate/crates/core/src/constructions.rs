//! Parameterized diagram families: braid closures, pretzels, twist knots and
//! untwisted Whitehead doubles.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::codes::{build_diagram, CodeEntry, KnotDiagram, Passage, Sign, SignedGaussCode};
use crate::error::{KnotError, Result};

/// Largest companion accepted by [`whitehead_double`].
pub const DOUBLE_MAX_CROSSINGS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwistVariant {
    Alternating,
    AlmostPositiveUnknot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleSpec {
    pub clasp_sign: Sign,
    pub companion: KnotDiagram,
}

/// A crossing visit while tracing a drawn diagram: crossing key, passage and
/// direction of travel in the plane.
struct Tracer<K> {
    ids: HashMap<K, u32>,
    entries: Vec<(u32, Passage, (i64, i64))>,
}

impl<K: std::hash::Hash + Eq + Copy> Tracer<K> {
    fn new() -> Self {
        Tracer { ids: HashMap::new(), entries: Vec::new() }
    }

    fn visit(&mut self, key: K, passage: Passage, dir: (i64, i64)) {
        let next = self.ids.len() as u32 + 1;
        let id = *self.ids.entry(key).or_insert(next);
        self.entries.push((id, passage, dir));
    }

    /// Signed code with signs read off the two directions at each crossing:
    /// positive when the turn from the over- to the under-direction is counterclockwise.
    fn finish(self) -> Result<KnotDiagram> {
        let mut over: HashMap<u32, (i64, i64)> = HashMap::new();
        let mut under: HashMap<u32, (i64, i64)> = HashMap::new();
        for &(id, p, dir) in &self.entries {
            let slot = if p.is_over() { &mut over } else { &mut under };
            slot.insert(id, dir);
        }
        let mut sign = HashMap::new();
        for (&id, &o) in &over {
            let u = under.get(&id).ok_or(KnotError::MultipleComponents)?;
            let cross = o.0 * u.1 - o.1 * u.0;
            sign.insert(id, if cross > 0 { Sign::Positive } else { Sign::Negative });
        }
        if over.len() != self.ids.len() || under.len() != self.ids.len() {
            return Err(KnotError::MultipleComponents);
        }
        let entries = self
            .entries
            .iter()
            .map(|&(label, passage, _)| CodeEntry { passage, label, sign: Some(sign[&label]) })
            .collect();
        build_diagram(&SignedGaussCode::new(entries)?)
    }
}

/// Closure of a braid on `strands` strands. Letter `i > 0` is the positive
/// generator exchanging positions `i - 1` and `i`; `-i` is its inverse.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<KnotDiagram> {
    if strands == 0 {
        return Err(KnotError::InvalidArgument("a braid needs at least one strand".into()));
    }
    for &l in word {
        if l == 0 || l.unsigned_abs() as usize >= strands {
            return Err(KnotError::InvalidArgument(format!("letter {l} out of range for {strands} strands")));
        }
    }
    let mut t = Tracer::new();
    let mut pos = 0usize;
    let mut loops = 0;
    loop {
        for (k, &l) in word.iter().enumerate() {
            let i = l.unsigned_abs() as usize;
            if pos != i - 1 && pos != i {
                continue;
            }
            let rightward = pos == i - 1;
            // drawn top to bottom; positive letters pass the right-moving strand under
            let dir = if rightward { (1, -1) } else { (-1, -1) };
            let over = (l > 0) != rightward;
            t.visit(k, if over { Passage::Over } else { Passage::Under }, dir);
            pos = if rightward { i } else { i - 1 };
        }
        loops += 1;
        if pos == 0 {
            break;
        }
    }
    if loops != strands {
        return Err(KnotError::MultipleComponents);
    }
    t.finish()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Closure of `(s_1 ... s_{p-1})^q`.
pub fn torus_braid_diagram(p: usize, q: usize) -> Result<KnotDiagram> {
    if p < 2 || q < 2 {
        return Err(KnotError::InvalidArgument("torus parameters must be at least 2".into()));
    }
    if gcd(p, q) != 1 {
        return Err(KnotError::InvalidArgument(format!("({p},{q}) are not coprime")));
    }
    let word: Vec<i32> = (0..q).flat_map(|_| 1..p as i32).collect();
    braid_closure(p, &word)
}

/// Pretzel diagram with one vertical twist column per parameter, adjacent
/// columns joined at top and bottom.
pub fn pretzel_diagram(params: &[i64]) -> Result<KnotDiagram> {
    if params.is_empty() {
        return Err(KnotError::InvalidArgument("a pretzel needs at least one column".into()));
    }
    let evens = params.iter().filter(|&&p| p % 2 == 0).count();
    if evens > 1 || (params.len().is_multiple_of(2) && evens == 0) {
        return Err(KnotError::InvalidArgument(format!("pretzel {params:?} is a link")));
    }
    let k = params.len();
    let mut t = Tracer::new();
    // state: column, slot (false = left), moving down
    let start = (0usize, false, true);
    let (mut col, mut slot, mut down) = start;
    let mut steps = 0;
    loop {
        let n = params[col].unsigned_abs() as usize;
        let order: Vec<usize> = if down { (0..n).collect() } else { (0..n).rev().collect() };
        for j in order {
            let to_right = !slot;
            let dir = match (down, to_right) {
                (true, true) => (1, -1),
                (true, false) => (-1, -1),
                (false, true) => (1, 1),
                (false, false) => (-1, 1),
            };
            // the strand running top-left to bottom-right
            let main_diagonal = dir == (1, -1) || dir == (-1, 1);
            let over = main_diagonal == (params[col] > 0);
            t.visit((col, j), if over { Passage::Over } else { Passage::Under }, dir);
            slot = !slot;
        }
        // leave the column and enter the neighbouring one at the same end
        if slot {
            col = (col + 1) % k;
        } else {
            col = (col + k - 1) % k;
        }
        slot = !slot;
        down = !down;
        steps += 1;
        if (col, slot, down) == start || steps > 4 * k + 4 {
            break;
        }
    }
    let total: usize = params.iter().map(|p| p.unsigned_abs() as usize).sum();
    if t.entries.len() != 2 * total {
        return Err(KnotError::MultipleComponents);
    }
    t.finish()
}

/// Twist knot diagrams with `n` crossings: a twist column of `n - 2`
/// crossings closed by a clasp.
pub fn twist_knot_diagram(n: usize, variant: TwistVariant) -> Result<KnotDiagram> {
    if n < 1 {
        return Err(KnotError::InvalidArgument("twist knot needs at least one crossing".into()));
    }
    if n == 1 {
        let s = match variant {
            TwistVariant::Alternating => "O1+U1+",
            TwistVariant::AlmostPositiveUnknot => "O1-U1-",
        };
        return build_diagram(&s.parse()?);
    }
    let alt = pretzel_diagram(&[n as i64 - 2, 1, 1])?;
    match variant {
        TwistVariant::Alternating => Ok(alt),
        TwistVariant::AlmostPositiveUnknot => {
            // the clasp crossings are the last two labels of the trace
            let clasp = clasp_crossings(&alt, n);
            for x in clasp {
                let d = switch_crossing(&alt, x)?;
                let neg = d.negative_count();
                if neg == 1 {
                    return Ok(d);
                }
                if neg + 1 == d.crossing_count() {
                    return Ok(d.mirror());
                }
            }
            Err(KnotError::InvalidArgument(format!("no almost positive unknotting of the {n}-crossing twist diagram")))
        }
    }
}

/// Every almost positive diagram obtained from the alternating `n`-crossing
/// twist diagram by switching one clasp crossing, mirrored when needed.
pub fn almost_positive_unknot_variants(n: usize) -> Result<Vec<KnotDiagram>> {
    if n <= 1 {
        return Ok(vec![twist_knot_diagram(n, TwistVariant::AlmostPositiveUnknot)?]);
    }
    let alt = pretzel_diagram(&[n as i64 - 2, 1, 1])?;
    let mut out = Vec::new();
    for x in clasp_crossings(&alt, n) {
        let d = switch_crossing(&alt, x)?;
        if d.negative_count() == 1 {
            out.push(d);
        } else if d.negative_count() + 1 == d.crossing_count() {
            out.push(d.mirror());
        }
    }
    Ok(out)
}

/// Crossings of the two single-crossing columns of `P(n - 2, 1, 1)`.
fn clasp_crossings(d: &KnotDiagram, n: usize) -> Vec<usize> {
    // the tracer numbers crossings in first-visit order starting in the twist column
    let mut xs: Vec<usize> = (0..d.crossing_count()).collect();
    if n > 2 {
        xs.retain(|&x| x >= n - 2);
    }
    xs
}

/// The same diagram with the passages at crossing `x` exchanged.
pub fn switch_crossing(d: &KnotDiagram, x: usize) -> Result<KnotDiagram> {
    if x >= d.crossing_count() {
        return Err(KnotError::OutOfRange { id: x, len: d.crossing_count() });
    }
    let label = x as u32 + 1;
    let entries = d
        .code()
        .entries()
        .iter()
        .map(|e| {
            if e.label == label {
                CodeEntry { passage: e.passage.flip(), label, sign: e.sign.map(Sign::flip) }
            } else {
                *e
            }
        })
        .collect();
    build_diagram(&SignedGaussCode::new(entries)?)
}

/// Untwisted Whitehead double with a clasp of the given sign. The blackboard
/// framing is cancelled by `|w|` full twists of the band.
pub fn whitehead_double(companion: &KnotDiagram, clasp_sign: Sign) -> Result<KnotDiagram> {
    let c = companion.crossing_count();
    if c > DOUBLE_MAX_CROSSINGS {
        return Err(KnotError::Budget { got: c, limit: DOUBLE_MAX_CROSSINGS });
    }
    let w = companion.writhe();
    let base = companion;
    let n = base.visits().len();
    let eps = base.embedding().orientation;
    // crossing key: (x, copy of first passage, copy of second passage) with copy 0 = left, 1 = right;
    // the clasp crossings are keyed past the companion
    let mut ids: HashMap<(usize, u8, u8), u32> = HashMap::new();
    let mut code: Vec<(u32, Passage, i64)> = Vec::new();
    let mut visit = |key: (usize, u8, u8), passage: Passage, sign: i64| {
        let next = ids.len() as u32 + 1;
        let id = *ids.entry(key).or_insert(next);
        code.push((id, passage, sign));
    };
    let dir = |copy: u8| if copy == 0 { 1 } else { -1 };
    let pass = |over: bool| if over { Passage::Over } else { Passage::Under };
    let twist_over_first = w < 0;
    let tw = |i: usize, j: u8| (usize::MAX - 1 - i, j, j);
    for copy in [0u8, 1u8] {
        if copy == 1 {
            for i in (0..w.unsigned_abs() as usize).rev() {
                visit(tw(i, 1), pass(twist_over_first), w.signum());
                visit(tw(i, 0), pass(!twist_over_first), w.signum());
            }
        }
        let order: Vec<usize> = if copy == 0 { (0..n).collect() } else { (0..n).rev().collect() };
        for v in order {
            let x = base.visits()[v].crossing;
            let passage = base.visits()[v].passage;
            let (first, _) = base.visit_positions(x);
            let is_first = first == v;
            // the other strand crosses ours from right to left
            let from_right = (eps[x] > 0) == is_first;
            // moving forward we meet the other strand's left copy first iff it comes from the right
            let mut others = if from_right { [0u8, 1] } else { [1u8, 0] };
            if copy == 1 {
                others.reverse();
            }
            let s = base.sign(x).value();
            for o in others {
                let key = if is_first { (x, copy, o) } else { (x, o, copy) };
                visit(key, passage, s * dir(copy) * dir(o));
            }
        }
        // full band twists on the last stretch before the base point, undoing the framing w
        if copy == 0 {
            for i in 0..w.unsigned_abs() as usize {
                visit(tw(i, 0), pass(twist_over_first), w.signum());
                visit(tw(i, 1), pass(!twist_over_first), w.signum());
            }
        }
        // hook A closes the left copy, hook B the right copy
        let s = clasp_sign.value();
        let a_over_first = clasp_sign == Sign::Positive;
        let (k1, k2) = ((usize::MAX, 0, 0), (usize::MAX, 1, 1));
        if copy == 0 {
            visit(k1, pass(a_over_first), s);
            visit(k2, pass(!a_over_first), s);
        } else {
            visit(k2, pass(a_over_first), s);
            visit(k1, pass(!a_over_first), s);
        }
    }
    let entries = code
        .into_iter()
        .map(|(label, passage, s)| CodeEntry { passage, label, sign: Some(Sign::from_value(s)) })
        .collect();
    build_diagram(&SignedGaussCode::new(entries)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::GaussDiagram;
    use crate::invariants::{v2, v3};
    use crate::oracles::{conway, jones, LaurentPoly};
    use crate::planar::{genus, PositivityStatus, positivity_status};

    fn inv(d: &KnotDiagram) -> (i64, i64) {
        let g = GaussDiagram::from_diagram(d);
        (v2(&g, None), v3(&g))
    }

    #[test]
    fn torus_knots() {
        let t = torus_braid_diagram(2, 3).unwrap();
        assert_eq!(t.writhe(), 3);
        assert_eq!(jones(&t).unwrap(), LaurentPoly::from_terms([(4, -1), (3, 1), (1, 1)]));
        let t25 = torus_braid_diagram(2, 5).unwrap();
        assert_eq!(inv(&t25).0, 3);
        let t34 = torus_braid_diagram(3, 4).unwrap();
        assert_eq!(t34.crossing_count(), 8);
        assert_eq!(inv(&t34).0, 5);
        assert!(torus_braid_diagram(2, 4).is_err());
    }

    #[test]
    fn braid_words() {
        let e = braid_closure(3, &[1, -2, 1, -2]).unwrap();
        assert_eq!(conway(&e).unwrap().coeffs(), &[1, 0, -1]);
        let six2 = braid_closure(3, &[-1, 2, -1, 2, 2, 2]).unwrap();
        assert_eq!(conway(&six2).unwrap().coeffs(), &[1, 0, -1, 0, -1]);
        assert_eq!(braid_closure(2, &[1, 1]).unwrap_err(), KnotError::MultipleComponents);
    }

    #[test]
    fn pretzels() {
        let t = pretzel_diagram(&[1, 1, 1]).unwrap();
        assert_eq!(inv(&t).0, 1);
        assert_eq!(t.crossing_count(), 3);
        for (p, q, r) in [(3, 3, 3), (3, 5, 7), (1, 3, 5)] {
            let d = pretzel_diagram(&[p, q, r]).unwrap();
            assert_eq!(inv(&d).0, (p * q + p * r + q * r + 1) / 4);
            assert_eq!(positivity_status(&d), PositivityStatus::Positive);
        }
        assert_eq!(genus(&pretzel_diagram(&[3, 3, 3]).unwrap()).g, 1);
        assert_eq!(inv(&pretzel_diagram(&[3, 5, -1]).unwrap()).0, 2);
        assert!(pretzel_diagram(&[2, 2, 1]).is_err());
    }

    #[test]
    fn twist_knots() {
        let fig8 = twist_knot_diagram(4, TwistVariant::Alternating).unwrap();
        assert_eq!(conway(&fig8).unwrap().coeffs(), &[1, 0, -1]);
        for n in 1..=9 {
            let d = twist_knot_diagram(n, TwistVariant::AlmostPositiveUnknot).unwrap();
            assert_eq!(d.crossing_count(), n);
            assert_eq!(positivity_status(&d), PositivityStatus::AlmostPositive, "{n}");
            assert_eq!(jones(&d).unwrap(), LaurentPoly::one(), "{n}");
            assert_eq!(inv(&d), (0, 0));
        }
    }

    #[test]
    fn doubles() {
        let u = whitehead_double(&KnotDiagram::unknot(), Sign::Positive).unwrap();
        assert_eq!(u.crossing_count(), 2);
        assert_eq!(jones(&u).unwrap(), LaurentPoly::one());
        let t = torus_braid_diagram(2, 3).unwrap();
        let wp = whitehead_double(&t, Sign::Positive).unwrap();
        assert_eq!(wp.crossing_count(), 20);
        assert_eq!(inv(&wp).1, -8);
        assert_eq!(inv(&wp).0, 0);
        let wm = whitehead_double(&t, Sign::Negative).unwrap();
        assert_eq!(inv(&wm).1, 8);
        assert_eq!(conway(&wp).unwrap().coeffs(), &[1]);
        let clasps = crate::planar::find_clasps(&wp);
        assert!(clasps.iter().any(|c| c.kind == crate::planar::ClaspKind::Reverse));
    }

    #[test]
    fn double_identity() {
        let companions = [
            torus_braid_diagram(2, 3).unwrap().mirror(),
            twist_knot_diagram(4, TwistVariant::Alternating).unwrap(),
            torus_braid_diagram(2, 5).unwrap(),
            pretzel_diagram(&[3, 1, 1]).unwrap(),
            twist_knot_diagram(6, TwistVariant::Alternating).unwrap(),
        ];
        for k in &companions {
            let v = inv(k).0;
            for s in [Sign::Positive, Sign::Negative] {
                let d = whitehead_double(k, s).unwrap();
                let w = k.writhe().unsigned_abs() as usize;
                assert_eq!(d.crossing_count(), 4 * k.crossing_count() + 2 * w + 2);
                assert_eq!(inv(&d).1, -8 * s.value() * v);
            }
        }
    }
}
