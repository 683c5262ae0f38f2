//! Polynomials over the rationals in a finite list of named parameters.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::{format_rational, parse_rational};
use crate::error::{Error, Result};

/// The ordered list of parameter names of a parametric ring.
#[derive(Debug, Clone)]
pub struct ParamSpace {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl ParamSpace {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !valid_name(n) {
                return Err(Error::Parse(format!("invalid parameter name `{n}`")));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate parameter `{n}`")));
            }
        }
        Ok(ParamSpace { names, index })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

impl PartialEq for ParamSpace {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || self.names == other.names
    }
}

impl Eq for ParamSpace {}

fn valid_name(n: &str) -> bool {
    let mut chars = n.chars();
    let first = chars.next().unwrap();
    if !(first.is_ascii_alphabetic() || first == '_') {
        return false;
    }
    let mut depth = 0i32;
    for c in chars {
        match c {
            '{' => depth += 1,
            '}' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {}
            ',' if depth > 0 => {}
            _ => return false,
        }
    }
    depth == 0
}

/// A polynomial in the parameters of a [`ParamSpace`]. Monomials are exponent
/// vectors ordered lexicographically.
#[derive(Clone, Debug)]
pub struct ParamPoly {
    space: Arc<ParamSpace>,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl PartialEq for ParamPoly {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.terms == other.terms
    }
}

impl Eq for ParamPoly {}

impl ParamPoly {
    pub fn zero(space: Arc<ParamSpace>) -> Self {
        ParamPoly {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: Arc<ParamSpace>, c: BigRational) -> Self {
        let mut p = ParamPoly::zero(space);
        if !c.is_zero() {
            let n = p.space.len();
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn variable(space: Arc<ParamSpace>, i: usize) -> Self {
        let mut e = vec![0; space.len()];
        e[i] = 1;
        let mut p = ParamPoly::zero(space);
        p.terms.insert(e, BigRational::one());
        p
    }

    pub fn variable_by_name(space: Arc<ParamSpace>, name: &str) -> Result<Self> {
        let i = space
            .position(name)
            .ok_or_else(|| Error::Parse(format!("unknown parameter `{name}`")))?;
        Ok(ParamPoly::variable(space, i))
    }

    pub fn space(&self) -> &Arc<ParamSpace> {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Coefficient of the lexicographically greatest monomial.
    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> ParamPoly {
        ParamPoly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &ParamPoly) -> ParamPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero(self.space.clone());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero(self.space.clone());
        }
        ParamPoly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Scales so the greatest monomial has coefficient 1. Zero stays zero.
    pub fn normalized(&self) -> ParamPoly {
        match self.leading_coefficient() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    fn pow(&self, k: u32) -> ParamPoly {
        let mut acc = ParamPoly::constant(self.space.clone(), BigRational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Replaces parameters by polynomials. Parameters absent from `values`
    /// are kept.
    pub fn substitute(&self, values: &HashMap<usize, ParamPoly>) -> ParamPoly {
        let mut out = ParamPoly::zero(self.space.clone());
        for (e, c) in &self.terms {
            let mut kept = vec![0u32; e.len()];
            let mut factor = ParamPoly::constant(self.space.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match values.get(&i) {
                    Some(v) => factor = factor.mul(&v.pow(k)),
                    None => kept[i] = k,
                }
            }
            let mono = ParamPoly {
                space: self.space.clone(),
                terms: BTreeMap::from([(kept, BigRational::one())]),
            };
            out = out.add(&factor.mul(&mono));
        }
        out
    }

    /// Evaluates at a full rational point.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.space.len() {
            return Err(Error::DimensionMismatch {
                expected: self.space.len(),
                found: point.len(),
            });
        }
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    v *= x;
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Parses sums of products of rational literals and parameters, with
    /// `^` for powers. Parameter names may contain brace groups.
    pub fn parse(space: Arc<ParamSpace>, text: &str) -> Result<ParamPoly> {
        Parser::new(space, text).parse()
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(self.space.names[i].clone()),
                    k => factors.push(format!("{}^{}", self.space.names[i], k)),
                }
            }
            let neg = c.is_negative();
            let abs = c.abs();
            let body = if factors.is_empty() {
                format_rational(&abs)
            } else if abs.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", format_rational(&abs), factors.join("*"))
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
            } else {
                write!(f, " {} {body}", if neg { "-" } else { "+" })?;
            }
            first = false;
        }
        Ok(())
    }
}

struct Parser<'a> {
    space: Arc<ParamSpace>,
    text: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(space: Arc<ParamSpace>, text: &'a str) -> Self {
        let chars = text.chars().map(|c| if c == '\u{2212}' { '-' } else { c }).collect();
        Parser {
            space,
            text,
            chars,
            pos: 0,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {} in `{}`", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<ParamPoly> {
        let mut total = ParamPoly::zero(self.space.clone());
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            Some(_) => 1,
            None => return Err(self.err("empty expression")),
        };
        loop {
            let m = self.monomial()?;
            total = if sign < 0 { total.sub(&m) } else { total.add(&m) };
            match self.peek() {
                None => return Ok(total),
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                Some(_) => return Err(self.err("expected `+` or `-`")),
            }
            self.pos += 1;
        }
    }

    fn monomial(&mut self) -> Result<ParamPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ParamPoly> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '/')
                {
                    self.pos += 1;
                }
                let lit: String = self.chars[start..self.pos].iter().collect();
                Ok(ParamPoly::constant(self.space.clone(), parse_rational(&lit)?))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                let mut depth = 0;
                while self.pos < self.chars.len() {
                    let c = self.chars[self.pos];
                    match c {
                        '{' => depth += 1,
                        '}' if depth > 0 => depth -= 1,
                        ',' if depth > 0 => {}
                        c if c.is_ascii_alphanumeric() || c == '_' => {}
                        c if c.is_whitespace() && depth > 0 => {}
                        _ => break,
                    }
                    self.pos += 1;
                }
                if depth != 0 {
                    return Err(self.err("unbalanced braces"));
                }
                let name: String = self.chars[start..self.pos]
                    .iter()
                    .filter(|c| !c.is_whitespace())
                    .collect();
                let var = ParamPoly::variable_by_name(self.space.clone(), &name)?;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    self.skip_ws();
                    let start = self.pos;
                    while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let k: u32 = self.chars[start..self.pos]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| self.err("expected exponent"))?;
                    Ok(var.pow(k))
                } else {
                    Ok(var)
                }
            }
            Some('(') => {
                self.pos += 1;
                let start = self.pos;
                let mut depth = 1;
                while self.pos < self.chars.len() && depth > 0 {
                    match self.chars[self.pos] {
                        '(' => depth += 1,
                        ')' => depth -= 1,
                        _ => {}
                    }
                    self.pos += 1;
                }
                if depth != 0 {
                    return Err(self.err("unbalanced parentheses"));
                }
                let inner: String = self.chars[start..self.pos - 1].iter().collect();
                ParamPoly::parse(self.space.clone(), &inner)
            }
            _ => Err(self.err("expected a number or a parameter")),
        }
    }
}
