//! Terms (power products) and the canonical within-degree order.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest total degree a term may have.
pub const MAX_DEGREE: u32 = 10_000;

/// A power product `x_0^{e_0} ... x_n^{e_n}`.
///
/// `Ord` compares by degree, then lexicographically with `x_0 > x_1 > ...`.
/// The canonical listing of a degree slice is descending in this order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    exps: Vec<u32>,
    degree: u32,
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn check_dims(a: &Term, b: &Term) -> Result<()> {
    if a.exps.len() != b.exps.len() {
        return Err(Error::DimensionMismatch {
            expected: a.exps.len(),
            found: b.exps.len(),
        });
    }
    Ok(())
}

impl Term {
    pub fn new(exps: Vec<u32>) -> Result<Term> {
        let degree: u64 = exps.iter().map(|&e| e as u64).sum();
        if degree > MAX_DEGREE as u64 {
            return Err(Error::DegreeTooLarge {
                degree,
                max: MAX_DEGREE,
            });
        }
        Ok(Term {
            exps,
            degree: degree as u32,
        })
    }

    pub(crate) fn from_exps_unchecked(exps: Vec<u32>) -> Term {
        let degree = exps.iter().sum();
        Term { exps, degree }
    }

    pub fn one(nvars: usize) -> Term {
        Term {
            exps: vec![0; nvars],
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Term {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Term { exps, degree: 1 }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn divides(&self, other: &Term) -> Result<bool> {
        check_dims(self, other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Term) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Term) -> Result<Term> {
        check_dims(self, other)?;
        Term::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect())
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Term) -> Option<Term> {
        if self.exps.len() != other.exps.len() || !self.divides_unchecked(other) {
            return None;
        }
        Some(Term {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Term) -> Result<Term> {
        check_dims(self, other)?;
        Term::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub(crate) fn lcm_unchecked(&self, other: &Term) -> Term {
        Term::from_exps_unchecked(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Term) -> Result<Term> {
        check_dims(self, other)?;
        Ok(Term::from_exps_unchecked(
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect(),
        ))
    }

    pub fn mul_var(&self, i: usize) -> Term {
        let mut exps = self.exps.clone();
        exps[i] += 1;
        Term {
            exps,
            degree: self.degree + 1,
        }
    }

    pub fn div_var(&self, i: usize) -> Option<Term> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Some(Term {
            exps,
            degree: self.degree - 1,
        })
    }

    /// All divisors of degree `self.degree() - k`, canonical order.
    pub fn divisors_of_codegree(&self, k: u32) -> Vec<Term> {
        if k > self.degree {
            return Vec::new();
        }
        let sub: Vec<Term> = enumerate_bounded(&self.exps, k);
        let mut out: Vec<Term> = sub.iter().filter_map(|q| q.quotient_of(self)).collect();
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    /// All divisors, in no particular order.
    pub fn divisors(&self) -> Vec<Term> {
        (0..=self.degree).flat_map(|k| self.divisors_of_codegree(k)).collect()
    }

    /// Renders as `x^2*y` with the given variable names; `1` for the unit.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.degree == 0 {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            let name = names.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
            match e {
                0 => {}
                1 => parts.push(name),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }

    /// Parses `x^2*y`, `x*x*y` or `1` against the given variable names.
    pub fn parse_with(text: &str, names: &[String]) -> Result<Term> {
        let text = text.trim();
        let mut exps = vec![0u32; names.len()];
        if text == "1" {
            return Term::new(exps);
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            let (name, pow) = match factor.split_once('^') {
                Some((n, p)) => (
                    n.trim(),
                    p.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            let i = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
            exps[i] = exps[i].checked_add(pow).ok_or(Error::DegreeTooLarge {
                degree: u64::MAX,
                max: MAX_DEGREE,
            })?;
        }
        Term::new(exps)
    }
}

/// Exponent vectors `e <= bound` componentwise with total degree `k`.
fn enumerate_bounded(bound: &[u32], k: u32) -> Vec<Term> {
    fn rec(bound: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Term>) {
        if i == bound.len() {
            if left == 0 {
                out.push(Term::from_exps_unchecked(cur.clone()));
            }
            return;
        }
        let rest: u32 = bound[i + 1..].iter().sum();
        let hi = left.min(bound[i]);
        let lo = left.saturating_sub(rest);
        for e in (lo..=hi).rev() {
            cur.push(e);
            rec(bound, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(bound, 0, k, &mut Vec::with_capacity(bound.len()), &mut out);
    out
}

/// All terms of degree `d` in `nvars` variables, canonical order
/// (lexicographic descending, earlier variables greater).
pub fn enumerate_degree(nvars: usize, d: u32) -> Vec<Term> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Term>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(Term::from_exps_unchecked(cur.clone()));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    if nvars == 0 {
        return if d == 0 { vec![Term::one(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(nvars, d, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// Binomial coefficient, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exps.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(e: &[u32]) -> Term {
        Term::new(e.to_vec()).unwrap()
    }

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn divisibility() {
        assert!(t(&[1, 1]).divides(&t(&[2, 3])).unwrap());
        assert!(!t(&[2, 1]).divides(&t(&[1, 3])).unwrap());
        assert!(Term::one(2).divides(&t(&[4, 0])).unwrap());
        assert!(t(&[1, 1]).divides(&t(&[1, 1, 0])).is_err());
    }

    #[test]
    fn lcm_gcd() {
        assert_eq!(t(&[2, 1]).lcm(&t(&[1, 3])).unwrap(), t(&[2, 3]));
        assert_eq!(t(&[2, 1]).gcd(&t(&[1, 3])).unwrap(), t(&[1, 1]));
        assert_eq!(t(&[2, 5]).lcm(&Term::one(2)).unwrap(), t(&[2, 5]));
    }

    #[test]
    fn canonical_listing() {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let deg2: Vec<String> = enumerate_degree(3, 2).iter().map(|m| m.display_with(&names)).collect();
        assert_eq!(deg2, ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]);
        let deg3: Vec<String> = enumerate_degree(2, 3).iter().map(|m| m.display_with(&xy())).collect();
        assert_eq!(deg3, ["x^3", "x^2*y", "x*y^2", "y^3"]);
        assert_eq!(enumerate_degree(4, 0), vec![Term::one(4)]);
    }

    #[test]
    fn listing_size_and_strict_descent() {
        for n in 1..5 {
            for d in 0..7 {
                let l = enumerate_degree(n, d);
                assert_eq!(l.len() as u64, binomial(n as u64 - 1 + d as u64, d as u64).unwrap());
                assert!(l.windows(2).all(|w| w[0] > w[1]));
            }
        }
    }

    #[test]
    fn parse_and_print() {
        let m = Term::parse_with("x^2*y", &xy()).unwrap();
        assert_eq!(m, t(&[2, 1]));
        assert_eq!(m.display_with(&xy()), "x^2*y");
        assert_eq!(m.to_string(), "[2,1]");
        assert_eq!(Term::parse_with("1", &xy()).unwrap(), Term::one(2));
        assert!(Term::parse_with("w", &xy()).is_err());
    }

    #[test]
    fn degree_cap() {
        assert!(matches!(
            Term::new(vec![MAX_DEGREE, 1]),
            Err(Error::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn divisors_by_codegree() {
        let m = t(&[2, 1]);
        assert_eq!(m.divisors_of_codegree(1), vec![t(&[2, 0]), t(&[1, 1])]);
        assert_eq!(m.divisors().len(), 6);
    }
}
