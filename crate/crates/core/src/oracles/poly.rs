use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Integer Laurent polynomial in one variable, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<(i64, i64)>", into = "Vec<(i64, i64)>")]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(coeff, exp);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, coeff: i64, exp: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Substitutes `t -> t^k`.
    pub fn scale_exponents(&self, k: i64) -> Self {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (e * k, c)))
    }

    /// `t -> t^-1`.
    pub fn invert(&self) -> Self {
        self.scale_exponents(-1)
    }

    /// Divides every exponent by `k`; `None` if some exponent is not a multiple.
    pub fn divide_exponents(&self, k: i64) -> Option<Self> {
        self.terms()
            .map(|(e, c)| (e % k == 0).then_some((e / k, c)))
            .collect::<Option<Vec<_>>>()
            .map(LaurentPoly::from_terms)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = LaurentPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Value at 1.
    pub fn eval_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// The `k`-th derivative evaluated at 1, exactly.
    pub fn derivative_at_one(&self, k: u32) -> i128 {
        self.terms()
            .map(|(e, c)| {
                let falling: i128 = (0..i128::from(k)).map(|j| i128::from(e) - j).product();
                falling * i128::from(c)
            })
            .sum()
    }
}

impl From<Vec<(i64, i64)>> for LaurentPoly {
    fn from(v: Vec<(i64, i64)>) -> Self {
        LaurentPoly::from_terms(v)
    }
}

impl From<LaurentPoly> for Vec<(i64, i64)> {
    fn from(p: LaurentPoly) -> Self {
        p.terms().collect()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(c, e);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (e, -c)))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.terms().collect::<Vec<_>>().iter().rev().copied(), "t")
    }
}

pub(crate) fn write_poly(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, i64)>,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        if first {
            if c < 0 {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
        }
        first = false;
        match (mag, e) {
            (_, 0) => write!(f, "{mag}")?,
            (1, 1) => write!(f, "{var}")?,
            (1, _) => write!(f, "{var}^{e}")?,
            (_, 1) => write!(f, "{mag}{var}")?,
            _ => write!(f, "{mag}{var}^{e}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
        let sq = &a * &a;
        assert_eq!(sq, LaurentPoly::from_terms([(2, 1), (0, 2), (-2, 1)]));
        assert!((&a - &a).is_zero());
        assert_eq!(a.pow(0), LaurentPoly::one());
    }

    #[test]
    fn derivatives() {
        let v = LaurentPoly::from_terms([(4, -1), (3, 1), (1, 1)]);
        assert_eq!(v.eval_one(), 1);
        assert_eq!(v.derivative_at_one(2), -6);
        assert_eq!(v.derivative_at_one(3), -18);
    }

    #[test]
    fn display() {
        let v = LaurentPoly::from_terms([(4, -1), (3, 1), (1, 1)]);
        assert_eq!(v.to_string(), "-t^4 + t^3 + t");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::from_terms([(-2, 3), (0, -1)]).to_string(), "-1 + 3t^-2");
    }

    #[test]
    fn serde_round_trip() {
        let v = LaurentPoly::from_terms([(4, -1), (-3, 2)]);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, "[[-3,2],[4,-1]]");
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), v);
    }
}
