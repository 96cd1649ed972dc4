//! Named knot diagrams. The bundled table can be replaced by pointing
//! `KNOTGAUSS_FIXTURES` at a file of `name<TAB>code` lines.

use std::collections::BTreeMap;

use crate::codes::{build_diagram, parse_gauss_code, KnotDiagram};
use crate::error::{KnotError, Result};

pub const FIXTURES_ENV: &str = "KNOTGAUSS_FIXTURES";

const BUNDLED: &str = include_str!("../fixtures/knots.gauss");

pub fn parse_fixtures(text: &str) -> Result<BTreeMap<String, KnotDiagram>> {
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, code) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| KnotError::InvalidArgument(format!("fixture line {}: expected name and code", n + 1)))?;
        out.insert(name.to_string(), build_diagram(&parse_gauss_code(code.trim())?)?);
    }
    Ok(out)
}

/// The fixture table, from `KNOTGAUSS_FIXTURES` when set.
pub fn load_fixtures() -> Result<BTreeMap<String, KnotDiagram>> {
    match std::env::var_os(FIXTURES_ENV) {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| KnotError::InvalidArgument(format!("{}: {e}", path.to_string_lossy())))?;
            parse_fixtures(&text)
        }
        None => parse_fixtures(BUNDLED),
    }
}

pub fn fixture(name: &str) -> Result<KnotDiagram> {
    load_fixtures()?
        .remove(name)
        .ok_or_else(|| KnotError::InvalidArgument(format!("unknown fixture {name}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::GaussDiagram;
    use crate::invariants::{v2, v3};
    use crate::oracles::{conway, jones, signature_and_det};

    #[test]
    fn bundled_table() {
        let t = parse_fixtures(BUNDLED).unwrap();
        let inv = |n: &str| {
            let g = GaussDiagram::from_diagram(&t[n]);
            (v2(&g, None), v3(&g))
        };
        assert_eq!(inv("3_1"), (1, 4));
        assert_eq!(inv("4_1"), (-1, 0));
        assert_eq!(inv("5_1"), (3, 20));
        assert_eq!(inv("5_2"), (2, 12));
        assert_eq!(inv("!6_1"), (-2, -4));
        assert_eq!(inv("!6_2"), (-1, -4));
        assert_eq!(t["!6_1"].negative_count(), 2);
        assert_eq!(t["!6_2"].negative_count(), 2);
        assert_eq!(conway(&t["9_40"]).unwrap().coeffs(), &[1, 0, -1, 0, -1, 0, 1]);
        assert_eq!(signature_and_det(&t["9_40"]).unwrap().det_abs(), 75);
        assert_eq!(jones(&t["9_40_positive"]).unwrap(), jones(&t["8_19"]).unwrap());
        // same shadow
        assert_eq!(t["9_40"].matching(), t["9_40_positive"].matching());
    }

    #[test]
    fn malformed_lines() {
        assert!(parse_fixtures("3_1").is_err());
        assert!(parse_fixtures("x\tO1+U2+").is_err());
        assert!(parse_fixtures("# only a comment\n\n").unwrap().is_empty());
    }
}
