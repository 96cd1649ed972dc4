use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::codes::KnotDiagram;
use crate::error::{KnotError, Result};

use super::poly::write_poly;
use super::LaurentPoly;

/// Largest crossing count accepted by [`conway`].
pub const CONWAY_MAX_CROSSINGS: usize = 20;

/// Conway polynomial; `coeffs[k]` is the coefficient of `z^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConwayPoly {
    coeffs: Vec<i64>,
}

impl ConwayPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ConwayPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `Δ(-1)`, i.e. the value at `z = 2i`: `Σ a_{2k} (-4)^k`.
    pub fn det_signed(&self) -> i64 {
        let mut acc = 0i64;
        let mut p = 1i64;
        for k in (0..self.coeffs.len()).step_by(2) {
            acc += self.coeffs[k] * p;
            p *= -4;
        }
        acc
    }

    /// Alexander polynomial via `z^2 = t - 2 + t^-1`; even part only.
    pub fn alexander(&self) -> LaurentPoly {
        let z2 = LaurentPoly::from_terms([(1, 1), (0, -2), (-1, 1)]);
        let mut out = LaurentPoly::zero();
        let mut p = LaurentPoly::one();
        for k in (0..self.coeffs.len()).step_by(2) {
            out = &out + &(&p * &LaurentPoly::monomial(self.coeffs[k], 0));
            p = &p * &z2;
        }
        out
    }
}

impl fmt::Display for ConwayPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().enumerate().map(|(k, &c)| (k as i64, c)), "z")
    }
}

/// Crossing of an oriented link diagram: edge labels counterclockwise from
/// the incoming under-strand, and the crossing sign. The over-strand runs
/// `e[3] -> e[1]` when positive and `e[1] -> e[3]` when negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct LinkCrossing {
    e: [u32; 4],
    sign: i8,
}

impl LinkCrossing {
    fn in_slots(&self) -> [usize; 2] {
        if self.sign > 0 {
            [0, 3]
        } else {
            [0, 1]
        }
    }

    fn out_slot(&self, in_slot: usize) -> usize {
        match in_slot {
            0 => 2,
            1 => 3,
            _ => 1,
        }
    }
}

/// Conway polynomial by the skein relation, switching toward a descending diagram.
pub fn conway(d: &KnotDiagram) -> Result<ConwayPoly> {
    let c = d.crossing_count();
    if c > CONWAY_MAX_CROSSINGS {
        return Err(KnotError::Budget { got: c, limit: CONWAY_MAX_CROSSINGS });
    }
    let link: Vec<LinkCrossing> = d
        .crossings()
        .iter()
        .map(|x| LinkCrossing { e: x.ends.map(|e| e.edge as u32), sign: x.sign.value() as i8 })
        .collect();
    let mut memo = HashMap::new();
    let coeffs = skein(&link, 0, &mut memo);
    Ok(ConwayPoly::new(coeffs))
}

/// Conway polynomial of the link `xs` plus `free` crossingless split circles.
fn skein(xs: &[LinkCrossing], free: usize, memo: &mut HashMap<(Vec<LinkCrossing>, usize), Vec<i64>>) -> Vec<i64> {
    if xs.is_empty() {
        return if free <= 1 { vec![1] } else { vec![] };
    }
    if free > 0 {
        return vec![];
    }
    let key = (xs.to_vec(), free);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let out = match first_undescending(xs) {
        None => {
            if components(xs) == 1 {
                vec![1]
            } else {
                vec![]
            }
        }
        Some(k) => {
            let x = xs[k];
            let mut switched = xs.to_vec();
            switched[k] = if x.sign > 0 {
                LinkCrossing { e: [x.e[3], x.e[0], x.e[1], x.e[2]], sign: -1 }
            } else {
                LinkCrossing { e: [x.e[1], x.e[2], x.e[3], x.e[0]], sign: 1 }
            };
            let (smoothed, free) = smooth(xs, k);
            let other = skein(&switched, 0, memo);
            let zero = skein(&smoothed, free, memo);
            // L+ = L- + z L0 and L- = L+ - z L0
            let sign = i64::from(x.sign);
            let mut v = other;
            if v.len() < zero.len() + 1 {
                v.resize(zero.len() + 1, 0);
            }
            for (i, z) in zero.iter().enumerate() {
                v[i + 1] += sign * z;
            }
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        }
    };
    memo.insert(key, out.clone());
    out
}

/// Where each edge label ends (incoming) as `(crossing, slot)`.
fn heads(xs: &[LinkCrossing]) -> HashMap<u32, (usize, usize)> {
    let mut m = HashMap::new();
    for (k, x) in xs.iter().enumerate() {
        for s in x.in_slots() {
            m.insert(x.e[s], (k, s));
        }
    }
    m
}

/// Traverses components in order of their smallest edge label, each from
/// that edge, and returns the first crossing met first as an under-passage.
fn first_undescending(xs: &[LinkCrossing]) -> Option<usize> {
    let head = heads(xs);
    let mut labels: Vec<u32> = head.keys().copied().collect();
    labels.sort_unstable();
    let mut seen_edge: HashMap<u32, bool> = HashMap::new();
    let mut met = vec![false; xs.len()];
    for &start in &labels {
        if seen_edge.contains_key(&start) {
            continue;
        }
        let mut e = start;
        loop {
            seen_edge.insert(e, true);
            let (k, s) = head[&e];
            if !met[k] {
                if s == 0 {
                    return Some(k);
                }
                met[k] = true;
            }
            e = xs[k].e[xs[k].out_slot(s)];
            if e == start {
                break;
            }
        }
    }
    None
}

fn components(xs: &[LinkCrossing]) -> usize {
    let head = heads(xs);
    let mut seen: HashMap<u32, ()> = HashMap::new();
    let mut count = 0;
    let mut labels: Vec<u32> = head.keys().copied().collect();
    labels.sort_unstable();
    for &start in &labels {
        if seen.contains_key(&start) {
            continue;
        }
        count += 1;
        let mut e = start;
        loop {
            seen.insert(e, ());
            let (k, s) = head[&e];
            e = xs[k].e[xs[k].out_slot(s)];
            if e == start {
                break;
            }
        }
    }
    count
}

/// Oriented smoothing of crossing `k`; returns the remaining crossings and
/// the number of closed circles created.
fn smooth(xs: &[LinkCrossing], k: usize) -> (Vec<LinkCrossing>, usize) {
    let x = xs[k];
    let [a, b, c, d] = x.e;
    // each join (into, out): the outgoing edge is renamed to the incoming one
    let joins = if x.sign > 0 { [(a, b), (d, c)] } else { [(a, d), (b, c)] };
    let mut rest: Vec<LinkCrossing> = xs.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, y)| *y).collect();
    let mut pending = joins.to_vec();
    let mut free = 0;
    while let Some((into, out)) = pending.pop() {
        if into == out {
            free += 1;
            continue;
        }
        for y in rest.iter_mut() {
            for e in y.e.iter_mut() {
                if *e == out {
                    *e = into;
                }
            }
        }
        for p in pending.iter_mut() {
            if p.0 == out {
                p.0 = into;
            }
            if p.1 == out {
                p.1 = into;
            }
        }
    }
    (rest, free)
}
