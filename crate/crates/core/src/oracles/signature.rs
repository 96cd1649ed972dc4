use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::codes::{half_edge, KnotDiagram};
use crate::error::Result;

use super::conway;

/// Signature with positive knots positive, and `Δ(-1)` from the Conway polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SigDetReport {
    pub sigma_paper: i64,
    pub det_signed: i64,
}

impl SigDetReport {
    /// Signature in the usual convention (negative on positive knots).
    pub fn sigma_standard(&self) -> i64 {
        -self.sigma_paper
    }

    pub fn det_abs(&self) -> i64 {
        self.det_signed.abs()
    }
}

pub fn signature_and_det(d: &KnotDiagram) -> Result<SigDetReport> {
    let det_signed = conway(d)?.det_signed();
    let sigma_paper = -standard_signature(d, 0);
    Ok(SigDetReport { sigma_paper, det_signed })
}

/// Gordon–Litherland signature from the Goeritz form of one checkerboard
/// coloring; `shade` selects which color class is shaded.
pub(crate) fn standard_signature(d: &KnotDiagram, shade: u8) -> i64 {
    let c = d.crossing_count();
    if c == 0 {
        return 0;
    }
    let faces = d.face_darts();
    let mut face_of = vec![0usize; 4 * c];
    for (f, darts) in faces.iter().enumerate() {
        for &h in darts {
            face_of[h] = f;
        }
    }
    // the two sides of an edge get different colors
    let mut color = vec![u8::MAX; faces.len()];
    color[0] = 0;
    let mut stack = vec![0usize];
    while let Some(f) = stack.pop() {
        for &h in &faces[f] {
            let g = face_of[h ^ 1];
            if color[g] == u8::MAX {
                color[g] = 1 - color[f];
                stack.push(g);
            }
        }
    }
    let white: Vec<usize> = (0..faces.len()).filter(|&f| color[f] != shade).collect();
    let index = |f: usize| white.iter().position(|&w| w == f);
    let n = white.len();
    let mut g = vec![vec![0i64; n]; n];
    let mut mu = 0i64;
    for x in d.crossings() {
        // the face at the corner between ends k and k + 1 is entered through end k
        let corner = |k: usize| face_of[half_edge(x.ends[k]) ^ 1];
        let shaded_even = color[corner(0)] == shade;
        // incidence: -1 when the shaded corners lie between the incoming
        // under-strand and the following over-strand end
        let eta: i64 = if shaded_even { -1 } else { 1 };
        // the oriented smoothing merges corners 1,3 at a positive crossing, 0,2 at a negative one
        let merged_even = x.sign.value() < 0;
        if merged_even == shaded_even {
            mu += eta;
        }
        let (r1, r2) = if shaded_even { (corner(1), corner(3)) } else { (corner(0), corner(2)) };
        if r1 != r2 {
            let (i, j) = (index(r1).expect("white"), index(r2).expect("white"));
            g[i][j] -= eta;
            g[j][i] -= eta;
            g[i][i] += eta;
            g[j][j] += eta;
        }
    }
    // drop the last white region
    let m: Vec<Vec<i64>> = g.iter().take(n - 1).map(|row| row[..n - 1].to_vec()).collect();
    symmetric_signature(&m) - mu
}

/// Signature of a symmetric integer matrix by exact congruence diagonalization.
#[allow(clippy::needless_range_loop)]
pub(crate) fn symmetric_signature(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect();
    let mut sig = 0i64;
    let mut live: Vec<usize> = (0..n).collect();
    while !live.is_empty() {
        // pick a nonzero diagonal among live indices
        let piv = live.iter().copied().find(|&i| !a[i][i].is_zero());
        let piv = match piv {
            Some(i) => i,
            None => {
                // all live diagonals vanish: combine with an off-diagonal partner
                let pair = live
                    .iter()
                    .flat_map(|&i| live.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                match pair {
                    None => break,
                    Some((i, j)) => {
                        // row/col i += row/col j
                        for t in 0..n {
                            let v = a[j][t].clone();
                            a[i][t] += v;
                        }
                        for t in 0..n {
                            let v = a[t][j].clone();
                            a[t][i] += v;
                        }
                        i
                    }
                }
            }
        };
        let pv = a[piv][piv].clone();
        sig += if pv.is_positive() { 1 } else { -1 };
        live.retain(|&i| i != piv);
        for &i in &live {
            if a[i][piv].is_zero() {
                continue;
            }
            let f = &a[i][piv] / &pv;
            for &j in &live {
                let v = &f * &a[piv][j];
                a[i][j] -= v;
            }
        }
        for &i in &live {
            a[i][piv] = BigRational::zero();
            a[piv][i] = BigRational::zero();
        }
    }
    sig
}
