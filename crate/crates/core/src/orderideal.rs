//! Order ideals given as complements of monomial ideals.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::monomial::{binomial, enumerate_degree, Term};

/// Default cap on the number of degrees scanned by [`OrderIdeal::gotzmann_bound`].
pub const DEFAULT_GOTZMANN_CAP: u32 = 200;

/// One degree of an order ideal: its terms in canonical order.
#[derive(Debug)]
pub struct Slice {
    terms: Vec<Term>,
    pos: HashMap<Term, usize>,
}

impl Slice {
    fn new(terms: Vec<Term>) -> Self {
        let pos = terms.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        Slice { terms, pos }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn position(&self, t: &Term) -> Option<usize> {
        self.pos.get(t).copied()
    }
}

/// `O = T \ I` for a monomial ideal `I` given by generators.
#[derive(Debug)]
pub struct OrderIdeal {
    names: Vec<String>,
    gens: Vec<Term>,
    infinite: bool,
    slices: Mutex<HashMap<u32, Arc<Slice>>>,
    borders: Mutex<HashMap<u32, Arc<Vec<Term>>>>,
    index: Mutex<HashMap<Term, u32>>,
}

impl Clone for OrderIdeal {
    fn clone(&self) -> Self {
        OrderIdeal::from_parts(self.names.clone(), self.gens.clone(), self.infinite)
    }
}

impl PartialEq for OrderIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.names.len() == other.names.len() && self.gens == other.gens
    }
}

impl Eq for OrderIdeal {}

impl OrderIdeal {
    fn from_parts(names: Vec<String>, gens: Vec<Term>, infinite: bool) -> Self {
        OrderIdeal {
            names,
            gens,
            infinite,
            slices: Mutex::new(HashMap::new()),
            borders: Mutex::new(HashMap::new()),
            index: Mutex::new(HashMap::new()),
        }
    }

    /// Builds `O` from generators of its complement. Redundant generators are
    /// dropped; the unit term is rejected since it would empty `O`.
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, generators: Vec<Term>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidOrderIdeal("at least one variable is required".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidOrderIdeal(format!("duplicate variable `{n}`")));
            }
        }
        for g in &generators {
            if g.nvars() != names.len() {
                return Err(Error::DimensionMismatch {
                    expected: names.len(),
                    found: g.nvars(),
                });
            }
            if g.is_one() {
                return Err(Error::InvalidOrderIdeal(
                    "the unit term generates everything; O would be empty".into(),
                ));
            }
        }
        let mut gens = generators;
        gens.sort();
        gens.dedup();
        let mut minimal: Vec<Term> = Vec::new();
        for g in gens {
            if !minimal.iter().any(|m| m.divides_unchecked(&g)) {
                minimal.push(g);
            }
        }
        minimal.sort_by(|a, b| b.cmp(a));
        minimal.sort_by_key(Term::degree);
        let n = names.len();
        let infinite = (0..n).any(|i| {
            !minimal
                .iter()
                .any(|g| g.exponents()[i] > 0 && g.exponents().iter().enumerate().all(|(j, &e)| j == i || e == 0))
        });
        let oi = OrderIdeal::from_parts(names, minimal, infinite);
        for g in &oi.gens {
            if oi.index(g) != 1 {
                return Err(Error::Internal(format!("generator {g} is not a border term")));
            }
        }
        Ok(oi)
    }

    /// The order ideal of all terms.
    pub fn full<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        OrderIdeal::new(names, Vec::new())
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.names
    }

    /// Minimal generators of the complement, by degree then canonical order.
    pub fn generators(&self) -> &[Term] {
        &self.gens
    }

    pub fn is_infinite(&self) -> bool {
        self.infinite
    }

    pub fn contains(&self, t: &Term) -> bool {
        !self.gens.iter().any(|g| g.divides_unchecked(t))
    }

    /// Largest generator degree (0 when `O` is everything).
    pub fn max_generator_degree(&self) -> u32 {
        self.gens.iter().map(Term::degree).max().unwrap_or(0)
    }

    /// Smallest degree of a border term, if the border is nonempty.
    pub fn min_border_degree(&self) -> Option<u32> {
        self.gens.iter().map(Term::degree).min()
    }

    /// `O_d` in canonical order.
    pub fn slice(&self, d: u32) -> Arc<Slice> {
        if let Some(s) = self.slices.lock().unwrap().get(&d) {
            return s.clone();
        }
        let terms: Vec<Term> = enumerate_degree(self.nvars(), d)
            .into_iter()
            .filter(|t| self.contains(t))
            .collect();
        let s = Arc::new(Slice::new(terms));
        self.slices.lock().unwrap().entry(d).or_insert(s).clone()
    }

    pub fn in_border(&self, t: &Term) -> bool {
        !self.contains(t) && (0..self.nvars()).any(|j| t.div_var(j).is_some_and(|q| self.contains(&q)))
    }

    /// Border terms of degree `d` in canonical order.
    pub fn border_slice(&self, d: u32) -> Arc<Vec<Term>> {
        if let Some(s) = self.borders.lock().unwrap().get(&d) {
            return s.clone();
        }
        let terms: Vec<Term> = if d == 0 {
            Vec::new()
        } else {
            enumerate_degree(self.nvars(), d)
                .into_iter()
                .filter(|t| self.in_border(t))
                .collect()
        };
        let s = Arc::new(terms);
        self.borders.lock().unwrap().entry(d).or_insert(s).clone()
    }

    /// Distance of `t` to `O`: 0 on `O`, otherwise one more than the least
    /// index among its degree-one-lower divisors.
    pub fn index(&self, t: &Term) -> u32 {
        if self.contains(t) {
            return 0;
        }
        if let Some(&k) = self.index.lock().unwrap().get(t) {
            return k;
        }
        let k = 1
            + (0..self.nvars())
                .filter_map(|j| t.div_var(j))
                .map(|q| self.index(&q))
                .min()
                .expect("terms outside O have positive degree");
        self.index.lock().unwrap().insert(t.clone(), k);
        k
    }

    /// `|O_d|` by inclusion-exclusion over lcms of generator subsets.
    pub fn hilbert(&self, d: u32) -> Result<u64> {
        let n = self.nvars() as u64;
        let count = |deg: u32| -> Result<i128> {
            if deg > d {
                return Ok(0);
            }
            let m = (d - deg) as u64;
            binomial(m + n - 1, n - 1)
                .map(|c| c as i128)
                .ok_or_else(|| Error::Internal(format!("Hilbert value overflows at degree {d}")))
        };
        fn rec(
            gens: &[Term],
            start: usize,
            lcm: &Term,
            sign: i128,
            d: u32,
            count: &dyn Fn(u32) -> Result<i128>,
            acc: &mut i128,
        ) -> Result<()> {
            for j in start..gens.len() {
                let l = lcm.lcm_unchecked(&gens[j]);
                if l.degree() > d {
                    continue;
                }
                *acc += sign * count(l.degree())?;
                rec(gens, j + 1, &l, -sign, d, count, acc)?;
            }
            Ok(())
        }
        let mut total = count(0)?;
        rec(&self.gens, 0, &Term::one(self.nvars()), -1, d, &count, &mut total)?;
        u64::try_from(total).map_err(|_| Error::Internal(format!("negative Hilbert value at degree {d}")))
    }

    /// `h_0, ..., h_through`.
    pub fn hilbert_series(&self, through: u32) -> Result<Vec<u64>> {
        (0..=through).map(|d| self.hilbert(d)).collect()
    }

    /// Least `t >= max(maxdeg(generators) - 1, 1)` with `h_{t+1} = h_t^<t>`.
    pub fn gotzmann_bound(&self, cap: u32) -> Result<u32> {
        let start = self.max_generator_degree().saturating_sub(1).max(1);
        let mut h = self.hilbert(start)?;
        for t in start..start.saturating_add(cap) {
            let next = self.hilbert(t + 1)?;
            if macaulay_transform(h, t)? == next {
                return Ok(t);
            }
            h = next;
        }
        Err(Error::GotzmannCapExceeded { cap })
    }
}

/// The `d`-th Macaulay representation of `a` as pairs `(k_i, i)` for
/// `i = d, d-1, ...`, with `a = sum C(k_i, i)`.
pub fn macaulay_representation(a: u64, d: u32) -> Result<Vec<(u64, u32)>> {
    if d == 0 {
        return Err(Error::Precondition("Macaulay representation needs d >= 1".into()));
    }
    let mut rest = a;
    let mut out = Vec::new();
    let mut i = d;
    while rest > 0 && i > 0 {
        // largest k with C(k, i) <= rest
        let mut k = i as u64;
        while binomial(k + 1, i as u64).is_some_and(|c| c <= rest) {
            k += 1;
        }
        let c = binomial(k, i as u64).expect("bounded by rest");
        out.push((k, i));
        rest -= c;
        i -= 1;
    }
    Ok(out)
}

/// `a^<d>`: each `C(k, i)` of the representation becomes `C(k+1, i+1)`.
pub fn macaulay_transform(a: u64, d: u32) -> Result<u64> {
    let mut total: u64 = 0;
    for (k, i) in macaulay_representation(a, d)? {
        let c = binomial(k + 1, i as u64 + 1).ok_or_else(|| Error::Internal("Macaulay transform overflows".into()))?;
        total = total
            .checked_add(c)
            .ok_or_else(|| Error::Internal("Macaulay transform overflows".into()))?;
    }
    Ok(total)
}
