use rayon::prelude::*;

use crate::codes::KnotDiagram;
use crate::error::{KnotError, Result};

use super::LaurentPoly;

/// Largest crossing count accepted by [`jones`].
pub const JONES_MAX_CROSSINGS: usize = 24;

/// Jones polynomial in `t` from the Kauffman bracket state sum.
pub fn jones(d: &KnotDiagram) -> Result<LaurentPoly> {
    let c = d.crossing_count();
    if c > JONES_MAX_CROSSINGS {
        return Err(KnotError::Budget { got: c, limit: JONES_MAX_CROSSINGS });
    }
    if c == 0 {
        return Ok(LaurentPoly::one());
    }
    let bracket = bracket(d);
    // f = (-A^3)^(-w) <D>, then A = t^(-1/4)
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let f = &bracket * &LaurentPoly::monomial(sign, -3 * w);
    Ok(f.scale_exponents(-1).divide_exponents(4).expect("knot bracket exponents are multiples of 4"))
}

/// Kauffman bracket in `A`, with `<O> = 1`.
pub fn bracket(d: &KnotDiagram) -> LaurentPoly {
    let c = d.crossing_count();
    if c == 0 {
        return LaurentPoly::one();
    }
    let pairs: Vec<[usize; 4]> = d.crossings().iter().map(|x| x.ends.map(|e| e.edge)).collect();
    let edges = 2 * c;
    // histogram[a][loops] over states with `a` A-smoothings
    let chunk_bits = c.min(8);
    let chunks = 1u64 << chunk_bits;
    let rest = c - chunk_bits;
    let hist = (0..chunks)
        .into_par_iter()
        .map(|high| {
            let mut h = vec![vec![0i64; edges + 1]; c + 1];
            let mut parent = vec![0usize; edges];
            for low in 0..1u64 << rest {
                let state = high << rest | low;
                for (i, p) in parent.iter_mut().enumerate() {
                    *p = i;
                }
                let mut loops = edges;
                for (k, e) in pairs.iter().enumerate() {
                    let (u1, v1, u2, v2) = if state >> k & 1 == 0 {
                        (e[0], e[1], e[2], e[3])
                    } else {
                        (e[0], e[3], e[1], e[2])
                    };
                    loops -= union(&mut parent, u1, v1) as usize;
                    loops -= union(&mut parent, u2, v2) as usize;
                }
                let a = c - state.count_ones() as usize;
                h[a][loops] += 1;
            }
            h
        })
        .reduce(
            || vec![vec![0i64; edges + 1]; c + 1],
            |mut x, y| {
                for (rx, ry) in x.iter_mut().zip(y) {
                    for (a, b) in rx.iter_mut().zip(ry) {
                        *a += b;
                    }
                }
                x
            },
        );
    let delta = LaurentPoly::from_terms([(2, -1), (-2, -1)]);
    let mut delta_pow = vec![LaurentPoly::one()];
    for k in 1..=edges {
        let next = &delta_pow[k - 1] * &delta;
        delta_pow.push(next);
    }
    let mut out = LaurentPoly::zero();
    for (a, row) in hist.iter().enumerate() {
        for (loops, &count) in row.iter().enumerate() {
            if count != 0 {
                let term = &delta_pow[loops - 1] * &LaurentPoly::monomial(count, 2 * a as i64 - c as i64);
                out = &out + &term;
            }
        }
    }
    out
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) -> bool {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra == rb {
        return false;
    }
    parent[ra] = rb;
    true
}

/// `(v2, v3)` from a knot's Jones polynomial: `v2 = -V''(1)/6`,
/// `v3 = -V''(1)/3 - V'''(1)/9`.
pub fn vassiliev_from_jones(v: &LaurentPoly) -> Result<(i64, i64)> {
    let d2 = v.derivative_at_one(2);
    let d3 = v.derivative_at_one(3);
    if d2 % 6 != 0 || (3 * d2 + d3) % 9 != 0 {
        return Err(KnotError::InvalidArgument(format!("V''(1) = {d2}, V'''(1) = {d3} give non-integral invariants")));
    }
    Ok(((-d2 / 6) as i64, (-(3 * d2 + d3) / 9) as i64))
}
