use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{KnotError, Result};

use super::ChordMatching;

/// Whether a strand passes over or under at a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Passage {
    Over,
    Under,
}

impl Passage {
    pub fn flip(self) -> Self {
        match self {
            Passage::Over => Passage::Under,
            Passage::Under => Passage::Over,
        }
    }

    pub fn is_over(self) -> bool {
        self == Passage::Over
    }

    fn letter(self) -> char {
        match self {
            Passage::Over => 'O',
            Passage::Under => 'U',
        }
    }
}

/// Writhe of a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn from_value(v: i64) -> Self {
        if v >= 0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

/// One token `[OU]<label>[+-]` of a Gauss code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeEntry {
    pub passage: Passage,
    pub label: u32,
    pub sign: Option<Sign>,
}

/// A (signed) Gauss code: the sequence of crossing passages met along the knot.
///
/// Either every entry carries a sign or none does. Labels are positive
/// integers, each used exactly twice, once over and once under.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SignedGaussCode {
    entries: Vec<CodeEntry>,
}

impl PartialOrd for SignedGaussCode {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignedGaussCode {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl SignedGaussCode {
    /// Validates and wraps a sequence of entries.
    pub fn new(entries: Vec<CodeEntry>) -> Result<Self> {
        let code = SignedGaussCode { entries };
        code.validate()?;
        Ok(code)
    }

    pub fn unknot() -> Self {
        SignedGaussCode::default()
    }

    pub fn entries(&self) -> &[CodeEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn is_signed(&self) -> bool {
        self.entries.first().is_none_or(|e| e.sign.is_some())
    }

    fn validate(&self) -> Result<()> {
        let signed = self.entries.iter().filter(|e| e.sign.is_some()).count();
        if signed != 0 && signed != self.entries.len() {
            return Err(KnotError::MixedSigns);
        }
        let mut seen: BTreeMap<u32, Vec<&CodeEntry>> = BTreeMap::new();
        for e in &self.entries {
            if e.label == 0 {
                return Err(KnotError::Parse {
                    offset: 0,
                    message: "crossing labels are positive integers".into(),
                });
            }
            seen.entry(e.label).or_default().push(e);
        }
        for (&label, uses) in &seen {
            if uses.len() != 2 {
                return Err(KnotError::LabelCount { label, count: uses.len() });
            }
            if uses[0].passage == uses[1].passage {
                let passage = if uses[0].passage.is_over() { "over" } else { "under" };
                return Err(KnotError::DuplicatePassage { label, passage });
            }
            if uses[0].sign != uses[1].sign {
                return Err(KnotError::InconsistentSign(label));
            }
        }
        Ok(())
    }

    /// Relabels crossings 1, 2, ... in order of first appearance.
    pub fn relabeled(&self) -> SignedGaussCode {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let next = map.len() as u32 + 1;
                let label = *map.entry(e.label).or_insert(next);
                CodeEntry { label, ..*e }
            })
            .collect();
        SignedGaussCode { entries }
    }

    /// The code read from another starting entry.
    pub fn rotated(&self, start: usize) -> SignedGaussCode {
        let n = self.entries.len();
        if n == 0 {
            return self.clone();
        }
        let entries = (0..n).map(|k| self.entries[(start + k) % n]).collect();
        SignedGaussCode { entries }
    }

    /// Canonical form under change of starting point: among all rotations,
    /// relabeled in first-visit order, the lexicographically least sequence
    /// of (label, passage, sign).
    pub fn canonical(&self) -> SignedGaussCode {
        let n = self.entries.len();
        (0..n.max(1))
            .map(|s| self.rotated(s).relabeled())
            .min_by(|a, b| a.sort_key().cmp(&b.sort_key()))
            .unwrap_or_default()
    }

    pub(crate) fn sort_key(&self) -> Vec<(u32, Passage, Option<Sign>)> {
        self.entries.iter().map(|e| (e.label, e.passage, e.sign)).collect()
    }

    /// The underlying chord matching on positions 0..2c.
    pub fn matching(&self) -> ChordMatching {
        let mut first: BTreeMap<u32, usize> = BTreeMap::new();
        let mut partner = vec![0; self.entries.len()];
        for (i, e) in self.entries.iter().enumerate() {
            if let Some(j) = first.remove(&e.label) {
                partner[i] = j;
                partner[j] = i;
            } else {
                first.insert(e.label, i);
            }
        }
        ChordMatching::from_partners(partner).expect("validated code has a perfect matching")
    }

    /// The code read backwards (knot orientation reversed).
    pub fn reversed(&self) -> SignedGaussCode {
        let mut entries = self.entries.clone();
        entries.reverse();
        SignedGaussCode { entries }
    }

    /// Every passage swapped with signs kept: the diagram turned over in space.
    pub fn turned_over(&self) -> SignedGaussCode {
        let entries = self.entries.iter().map(|e| CodeEntry { passage: e.passage.flip(), ..*e }).collect();
        SignedGaussCode { entries }
    }

    /// Every passage swapped and every sign flipped: the mirror image.
    pub fn mirrored(&self) -> SignedGaussCode {
        let entries = self
            .entries
            .iter()
            .map(|e| CodeEntry { passage: e.passage.flip(), label: e.label, sign: e.sign.map(Sign::flip) })
            .collect();
        SignedGaussCode { entries }
    }

    /// Canonical form up to base point, orientation reversal and turning
    /// the diagram over.
    pub fn symmetric_canonical(&self) -> SignedGaussCode {
        [self.clone(), self.reversed(), self.turned_over(), self.reversed().turned_over()]
            .iter()
            .map(|c| c.canonical())
            .min_by(|a, b| a.sort_key().cmp(&b.sort_key()))
            .unwrap_or_default()
    }

    /// The code with the given labels removed.
    pub fn without_labels(&self, labels: &[u32]) -> SignedGaussCode {
        let entries = self.entries.iter().filter(|e| !labels.contains(&e.label)).copied().collect();
        SignedGaussCode { entries }
    }

    /// Concatenation with `other`, whose labels are shifted past ours.
    pub fn concat(&self, other: &SignedGaussCode) -> Result<SignedGaussCode> {
        let offset = self.entries.iter().map(|e| e.label).max().unwrap_or(0);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|e| CodeEntry { label: e.label + offset, ..*e }));
        SignedGaussCode::new(entries)
    }

    /// Drops all signs.
    pub fn unsigned(&self) -> SignedGaussCode {
        let entries = self.entries.iter().map(|e| CodeEntry { sign: None, ..*e }).collect();
        SignedGaussCode { entries }
    }
}

impl fmt::Display for SignedGaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            write!(f, "{}{}", e.passage.letter(), e.label)?;
            if let Some(s) = e.sign {
                write!(f, "{}", s.symbol())?;
            }
        }
        Ok(())
    }
}

impl FromStr for SignedGaussCode {
    type Err = KnotError;

    fn from_str(text: &str) -> Result<Self> {
        parse_gauss_code(text)
    }
}

/// Parses concatenated `[OU]<int>[+-]` tokens; whitespace between tokens is ignored.
pub fn parse_gauss_code(text: &str) -> Result<SignedGaussCode> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut entries = Vec::new();
    let err = |offset: usize, message: &str| KnotError::Parse { offset, message: message.to_string() };
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() || b == b',' {
            i += 1;
            continue;
        }
        let passage = match b {
            b'O' | b'o' => Passage::Over,
            b'U' | b'u' => Passage::Under,
            _ => return Err(err(i, "expected 'O' or 'U'")),
        };
        let start = i;
        i += 1;
        let digits = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if digits == i {
            return Err(err(start, "empty token: missing crossing label"));
        }
        let label: u32 = text[digits..i].parse().map_err(|_| err(digits, "label out of range"))?;
        let sign = match bytes.get(i) {
            Some(b'+') => {
                i += 1;
                Some(Sign::Positive)
            }
            Some(b'-') => {
                i += 1;
                Some(Sign::Negative)
            }
            _ => None,
        };
        entries.push(CodeEntry { passage, label, sign });
    }
    SignedGaussCode::new(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_trefoil() {
        let code = parse_gauss_code("O1+U2+O3+U1+O2+U3+").unwrap();
        assert_eq!(code.crossing_count(), 3);
        assert!(code.entries().iter().all(|e| e.sign == Some(Sign::Positive)));
        assert_eq!(code.to_string(), "O1+U2+O3+U1+O2+U3+");
    }

    #[test]
    fn parses_kink_with_whitespace() {
        let code = parse_gauss_code(" O1+  U1+ ").unwrap();
        assert_eq!(code.crossing_count(), 1);
        assert_eq!(code.to_string(), "O1+U1+");
    }

    #[test]
    fn rejects_single_use_labels() {
        assert_eq!(
            parse_gauss_code("O1+U2+"),
            Err(KnotError::LabelCount { label: 1, count: 1 })
        );
    }

    #[test]
    fn rejects_double_over() {
        assert!(matches!(
            parse_gauss_code("O1+O1+"),
            Err(KnotError::DuplicatePassage { label: 1, .. })
        ));
    }

    #[test]
    fn rejects_inconsistent_signs() {
        assert_eq!(parse_gauss_code("O1+U1-"), Err(KnotError::InconsistentSign(1)));
    }

    #[test]
    fn rejects_empty_token() {
        assert!(matches!(parse_gauss_code("O+U1+"), Err(KnotError::Parse { .. })));
        assert!(matches!(parse_gauss_code("X1+"), Err(KnotError::Parse { .. })));
    }

    #[test]
    fn rejects_mixed_signs() {
        assert_eq!(parse_gauss_code("O1+U1"), Err(KnotError::MixedSigns));
        assert_eq!(parse_gauss_code("O1+U1+O2U2"), Err(KnotError::MixedSigns));
    }

    #[test]
    fn empty_code_is_unknot() {
        let code = parse_gauss_code("").unwrap();
        assert_eq!(code.crossing_count(), 0);
    }

    #[test]
    fn symmetric_canonical_identifies_reversal_and_turning_over() {
        let a = parse_gauss_code("O1+U2+O3+U1+O2+U3+").unwrap();
        assert_eq!(a.reversed().symmetric_canonical(), a.symmetric_canonical());
        assert_eq!(a.turned_over().symmetric_canonical(), a.symmetric_canonical());
        assert_ne!(a.mirrored().symmetric_canonical(), a.symmetric_canonical());
    }

    #[test]
    fn concat_and_remove() {
        let a = parse_gauss_code("O1+U1+").unwrap();
        let b = a.concat(&a).unwrap();
        assert_eq!(b.to_string(), "O1+U1+O2+U2+");
        assert_eq!(b.without_labels(&[1]).to_string(), "O2+U2+");
    }

    #[test]
    fn canonical_is_rotation_invariant() {
        let a = parse_gauss_code("O1+U2+O3+U1+O2+U3+").unwrap();
        let b = parse_gauss_code("O7+U5+O9+U7+O5+U9+").unwrap().rotated(3);
        assert_eq!(a.canonical(), b.canonical());
        assert_eq!(a.canonical().canonical(), a.canonical());
    }
}
