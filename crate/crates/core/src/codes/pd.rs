use std::collections::HashMap;

use crate::error::{KnotError, Result};

use super::diagram::{build_diagram, KnotDiagram, Visit};
use super::Passage;

/// Parses whitespace-separated `X(a,b,c,d)` terms. Entries are listed
/// counterclockwise starting at the incoming under-strand; `a -> c` is the
/// under-strand and the over-strand direction follows from the traversal.
pub fn parse_pd_code(text: &str) -> Result<KnotDiagram> {
    let crossings = parse_terms(text)?;
    let c = crossings.len();
    if c == 0 {
        return Ok(KnotDiagram::unknot());
    }
    let mut uses: HashMap<u64, Vec<(usize, usize)>> = HashMap::new();
    for (x, slots) in crossings.iter().enumerate() {
        for (s, &label) in slots.iter().enumerate() {
            uses.entry(label).or_default().push((x, s));
        }
    }
    if let Some((label, u)) = uses.iter().find(|(_, u)| u.len() != 2) {
        return Err(KnotError::Pd(format!("edge label {label} used {} times", u.len())));
    }

    // walk the knot starting with the under-strand of the first term
    let mut raw_visits: Vec<(usize, Passage, usize)> = Vec::with_capacity(2 * c);
    let (mut x, mut s) = (0usize, 0usize);
    loop {
        if s == 2 {
            return Err(KnotError::Pd(format!("edge {} enters term {} at its outgoing under slot", crossings[x][s], x + 1)));
        }
        let passage = if s == 0 { Passage::Under } else { Passage::Over };
        raw_visits.push((x, passage, s));
        if raw_visits.len() > 2 * c {
            return Err(KnotError::Pd("traversal does not close up".into()));
        }
        let exit = (s + 2) % 4;
        let label = crossings[x][exit];
        let &(nx, ns) = uses[&label]
            .iter()
            .find(|&&(cx, cs)| (cx, cs) != (x, exit))
            .expect("label has two uses");
        x = nx;
        s = ns;
        if (x, s) == (0, 0) {
            break;
        }
    }
    if raw_visits.len() != 2 * c {
        return Err(KnotError::MultipleComponents);
    }
    let mut count = vec![0usize; c];
    for &(x, _, _) in &raw_visits {
        count[x] += 1;
    }
    if count.iter().any(|&k| k != 2) {
        return Err(KnotError::Pd("a term is not passed exactly once over and once under".into()));
    }

    // renumber crossings in first-visit order and read off local orientations
    let mut index = vec![usize::MAX; c];
    let mut next = 0;
    let mut orientation = Vec::with_capacity(c);
    for &(x, passage, s) in &raw_visits {
        if index[x] == usize::MAX {
            index[x] = next;
            next += 1;
            // ccw slot order 0..3; the first passage enters at slot s
            let o = match (passage, s) {
                (Passage::Under, _) => {
                    // the over passage entering at slot 1 crosses from right to left
                    let over_in = raw_visits.iter().find(|&&(y, p, _)| y == x && p == Passage::Over).map(|v| v.2);
                    if over_in == Some(1) {
                        1
                    } else {
                        -1
                    }
                }
                (Passage::Over, 3) => 1,
                (Passage::Over, _) => -1,
            };
            orientation.push(o);
        }
    }
    let visits: Vec<Visit> = raw_visits
        .iter()
        .map(|&(x, passage, _)| Visit { crossing: index[x], passage })
        .collect();
    let d = KnotDiagram::from_parts(visits, orientation)?;
    // planar check passed; normalize through the code so the result is canonical for its signs
    build_diagram(&d.code())
}

fn parse_terms(text: &str) -> Result<Vec<[u64; 4]>> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('X').or_else(|| rest.strip_prefix('x')) else {
            return Err(KnotError::Pd(format!("expected 'X(' at '{}'", truncate(rest))));
        };
        let body = body.trim_start();
        let (open, close) = match body.chars().next() {
            Some('(') => ('(', ')'),
            Some('[') => ('[', ']'),
            _ => return Err(KnotError::Pd(format!("expected '(' at '{}'", truncate(body)))),
        };
        let end = body.find(close).ok_or_else(|| KnotError::Pd(format!("unclosed '{open}'")))?;
        let inner = &body[1..end];
        let labels: Vec<u64> = inner
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<u64>()
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| KnotError::Pd(format!("bad edge label '{t}'")))
            })
            .collect::<Result<_>>()?;
        if labels.len() != 4 {
            return Err(KnotError::Pd(format!("arity: term has {} entries, expected 4", labels.len())));
        }
        out.push([labels[0], labels[1], labels[2], labels[3]]);
        rest = body[end + 1..].trim_start_matches(|ch: char| ch.is_whitespace() || ch == ',');
    }
    Ok(out)
}

fn truncate(s: &str) -> &str {
    &s[..s.len().min(16)]
}

/// PD code of a diagram; edge `k` is labelled `k + 1`.
pub fn to_pd_code(d: &KnotDiagram) -> String {
    d.crossings()
        .iter()
        .map(|x| {
            let l: Vec<String> = x.ends.iter().map(|e| (e.edge + 1).to_string()).collect();
            format!("X({})", l.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{parse_gauss_code, Sign};

    #[test]
    fn trefoil_pd() {
        let d = parse_pd_code("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert!(d.signs().iter().all(|&s| s == Sign::Positive));
        assert_eq!(d.code().canonical(), parse_gauss_code("O1+U2+O3+U1+O2+U3+").unwrap().canonical());
    }

    #[test]
    fn left_trefoil_pd() {
        let d = parse_pd_code("X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]").unwrap();
        assert!(d.signs().iter().all(|&s| s == Sign::Negative));
    }

    #[test]
    fn empty_pd_is_unknot() {
        assert_eq!(parse_pd_code("").unwrap().crossing_count(), 0);
    }

    #[test]
    fn arity_error() {
        assert!(matches!(parse_pd_code("X(1,2,3)"), Err(KnotError::Pd(_))));
    }

    #[test]
    fn label_use_error() {
        assert!(matches!(parse_pd_code("X(1,5,2,4) X(3,1,4,6) X(5,3,6,7)"), Err(KnotError::Pd(_))));
    }

    #[test]
    fn two_components_rejected() {
        // Hopf link
        assert_eq!(parse_pd_code("X(1,3,2,4) X(3,1,4,2)").unwrap_err(), KnotError::MultipleComponents);
    }

    #[test]
    fn nonplanar_incidence_rejected() {
        // trefoil incidences with one term's rotation reversed
        let err = parse_pd_code("X(1,4,2,5) X(3,1,4,6) X(5,3,6,2)").unwrap_err();
        assert!(matches!(err, KnotError::NonPlanar { .. } | KnotError::Pd(_)), "{err:?}");
    }

    #[test]
    fn pd_round_trip() {
        for s in ["O1+U2+O3+U1+O2+U3+", "O1+U1+", "U1-O1-O2+U3+O4+U2+O3+U4+"] {
            let d = crate::codes::build_diagram(&parse_gauss_code(s).unwrap()).unwrap();
            let back = parse_pd_code(&to_pd_code(&d)).unwrap();
            assert_eq!(back.code().canonical(), d.code().canonical(), "{s}");
        }
    }
}
