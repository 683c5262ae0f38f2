//! Sparse polynomials with exact coefficients.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactmath::{Ring, Scalar};
use crate::monomial::Term;

/// A polynomial: a finite map from terms to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    nvars: usize,
    terms: BTreeMap<Term, Scalar>,
}

impl Polynomial {
    pub fn zero(ring: &Ring, nvars: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(ring: &Ring, term: Term, coeff: Scalar) -> Result<Self> {
        let mut p = Polynomial::zero(ring, term.nvars());
        p.add_term(term, coeff)?;
        Ok(p)
    }

    pub fn from_terms(ring: &Ring, nvars: usize, terms: impl IntoIterator<Item = (Term, Scalar)>) -> Result<Self> {
        let mut p = Polynomial::zero(ring, nvars);
        for (t, c) in terms {
            p.add_term(t, c)?;
        }
        Ok(p)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, t: &Term) -> Option<&Scalar> {
        self.terms.get(t)
    }

    /// Terms with coefficients, greatest term first.
    pub fn iter(&self) -> impl Iterator<Item = (&Term, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn support(&self) -> impl Iterator<Item = &Term> {
        self.terms.keys().rev()
    }

    /// Largest degree in the support; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Term::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys();
        match it.next() {
            None => true,
            Some(first) => it.all(|t| t.degree() == first.degree()),
        }
    }

    /// Adds `c * t`.
    pub fn add_term(&mut self, t: Term, c: Scalar) -> Result<()> {
        if t.nvars() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: t.nvars(),
            });
        }
        if !c.belongs_to(&self.ring) {
            return Err(Error::MixedRings {
                left: self.ring.to_string(),
                right: c.ring().to_string(),
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(t) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().checked_add(&c)?;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
        Ok(())
    }

    /// `self += c * eta * other`.
    pub fn add_multiple(&mut self, c: &Scalar, eta: &Term, other: &Polynomial) -> Result<()> {
        if other.ring != self.ring {
            return Err(Error::MixedRings {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        for (t, a) in &other.terms {
            self.add_term(eta.mul(t)?, c.checked_mul(a)?)?;
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        let mut out = self.clone();
        out.add_multiple(&self.ring.one(), &Term::one(self.nvars), other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        let mut out = self.clone();
        out.add_multiple(&self.ring.from_i64(-1), &Term::one(self.nvars), other)?;
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Polynomial> {
        let mut out = Polynomial::zero(&self.ring, self.nvars);
        out.add_multiple(c, &Term::one(self.nvars), self)?;
        Ok(out)
    }

    pub fn mul_term(&self, eta: &Term) -> Result<Polynomial> {
        let mut out = Polynomial::zero(&self.ring, self.nvars);
        out.add_multiple(&self.ring.one(), eta, self)?;
        Ok(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero(&self.ring, self.nvars);
        for (t, c) in &self.terms {
            out.add_multiple(c, t, other)?;
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient, producing a polynomial over `ring`.
    pub fn map_coefficients(&self, ring: &Ring, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Polynomial> {
        let mut out = Polynomial::zero(ring, self.nvars);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), f(c)?)?;
        }
        Ok(out)
    }

    /// Renders as `x^3 + 2*x*y^2 - y^3`, greatest term first.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (t, c)) in self.iter().enumerate() {
            let mono = t.display_with(names);
            let coeff = c.to_string();
            let compound = matches!(c, Scalar::Param(p) if p.terms().len() > 1);
            let (neg, body) = if compound {
                (false, format!("({coeff})"))
            } else if let Some(stripped) = coeff.strip_prefix('-') {
                (true, stripped.to_string())
            } else {
                (false, coeff)
            };
            let piece = if t.is_one() {
                body
            } else if body == "1" {
                mono
            } else {
                format!("{body}*{mono}")
            };
            match (i, neg) {
                (0, false) => out.push_str(&piece),
                (0, true) => {
                    out.push('-');
                    out.push_str(&piece);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&piece);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&piece);
                }
            }
        }
        out
    }

    /// Parses sums like `x^3 + x^2*y - 1/2*y^3` or `(c_1 - 2)*x*y`. Factors
    /// that are not variables form the coefficient and are parsed by `ring`.
    pub fn parse_with(text: &str, names: &[String], ring: &Ring) -> Result<Polynomial> {
        let mut out = Polynomial::zero(ring, names.len());
        for (sign, summand) in split_top_level(text)? {
            let mut exps = vec![0u32; names.len()];
            let mut coeff_parts: Vec<String> = Vec::new();
            for factor in split_factors(&summand) {
                let (base, pow) = match factor.rsplit_once('^') {
                    Some((b, p)) if !b.contains(['(', '{']) || b.ends_with(['}', ')']) => (b.trim(), Some(p.trim())),
                    _ => (factor.as_str(), None),
                };
                if let Some(i) = names.iter().position(|n| n == base) {
                    let k = match pow {
                        Some(p) => p
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                        None => 1,
                    };
                    exps[i] += k;
                } else {
                    coeff_parts.push(factor.clone());
                }
            }
            let coeff = if coeff_parts.is_empty() {
                ring.one()
            } else if coeff_parts.len() == 1 {
                ring.parse(&coeff_parts[0])?
            } else if ring.is_field() {
                coeff_parts
                    .iter()
                    .try_fold(ring.one(), |acc, p| acc.checked_mul(&ring.parse(p)?))?
            } else {
                ring.parse(&coeff_parts.join("*"))?
            };
            let coeff = if sign < 0 { coeff.neg_ref() } else { coeff };
            out.add_term(Term::new(exps)?, coeff)?;
        }
        Ok(out)
    }
}

fn split_top_level(text: &str) -> Result<Vec<(i32, String)>> {
    let text = text.replace('\u{2212}', "-");
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut sign = 1;
    let mut prev: Option<char> = None;
    for c in text.chars() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced brackets in `{text}`")));
        }
        if depth == 0 && (c == '+' || c == '-') && !matches!(prev, Some('*' | '^' | '/')) {
            if cur.trim().is_empty() {
                if c == '-' {
                    sign = -sign;
                }
            } else {
                out.push((sign, cur.trim().to_string()));
                sign = if c == '-' { -1 } else { 1 };
                cur.clear();
            }
        } else {
            cur.push(c);
        }
        if !c.is_whitespace() {
            prev = Some(c);
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in `{text}`")));
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur.trim().to_string()));
    }
    if out.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    Ok(out)
}

fn split_factors(summand: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for c in summand.chars() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            _ => {}
        }
        if c == '*' && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(c);
        }
    }
    out.push(cur.trim().to_string());
    out.into_iter().filter(|s| !s.is_empty()).collect()
}
