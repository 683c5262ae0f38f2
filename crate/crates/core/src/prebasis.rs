//! Homogeneous border prebases and the border reduction relation.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactmath::{ExactMatrix, Ring, RowSpace, Scalar};
use crate::monomial::{enumerate_degree, Term};
use crate::orderideal::OrderIdeal;
use crate::polynomial::Polynomial;
use crate::redstruct::ReductionStructure;

/// One polynomial `g_σ = σ - Σ c_{στ} τ` per border term `σ` of degree at
/// most `max_degree`; the tail `c_{σ·}` is dense over `O_{deg σ}`.
#[derive(Clone, Debug)]
pub struct Prebasis {
    ideal: Arc<OrderIdeal>,
    ring: Ring,
    max_degree: u32,
    tails: HashMap<Term, Vec<Scalar>>,
}

impl PartialEq for Prebasis {
    fn eq(&self, other: &Self) -> bool {
        self.ideal == other.ideal
            && self.ring == other.ring
            && self.max_degree == other.max_degree
            && self.tails == other.tails
    }
}

/// Collects sparse tails and checks completeness on [`build`](Self::build).
#[derive(Clone, Debug)]
pub struct PrebasisBuilder {
    ideal: Arc<OrderIdeal>,
    ring: Ring,
    max_degree: u32,
    tails: BTreeMap<Term, Vec<Scalar>>,
}

impl PrebasisBuilder {
    /// Sets `c_{στ}` (so `g_σ` gets `-c·τ`).
    pub fn coefficient(mut self, sigma: &Term, tau: &Term, c: Scalar) -> Result<Self> {
        self.set(sigma, tau, c)?;
        Ok(self)
    }

    fn set(&mut self, sigma: &Term, tau: &Term, c: Scalar) -> Result<()> {
        self.check_head(sigma)?;
        if !c.belongs_to(&self.ring) {
            return Err(Error::MixedRings {
                left: self.ring.to_string(),
                right: c.ring().to_string(),
            });
        }
        let slice = self.ideal.slice(sigma.degree());
        let pos = slice.position(tau).ok_or_else(|| {
            Error::InvalidPrebasis(format!(
                "tail term {} of {} is not in O of degree {}",
                tau.display_with(self.ideal.variables()),
                sigma.display_with(self.ideal.variables()),
                sigma.degree()
            ))
        })?;
        let zero = self.ring.zero();
        let row = self
            .tails
            .entry(sigma.clone())
            .or_insert_with(|| vec![zero; slice.len()]);
        row[pos] = c;
        Ok(())
    }

    fn check_head(&self, sigma: &Term) -> Result<()> {
        if sigma.nvars() != self.ideal.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ideal.nvars(),
                found: sigma.nvars(),
            });
        }
        if !self.ideal.in_border(sigma) {
            return Err(Error::NotInBorder(sigma.display_with(self.ideal.variables())));
        }
        if sigma.degree() > self.max_degree {
            return Err(Error::InvalidPrebasis(format!(
                "head {} exceeds the declared maximum degree {}",
                sigma.display_with(self.ideal.variables()),
                self.max_degree
            )));
        }
        Ok(())
    }

    /// Declares `g_σ = σ + Σ a_τ τ` given as the polynomial's own
    /// coefficients; stores `c_{στ} = -a_τ`.
    pub fn element(mut self, sigma: &Term, tail: &[(Term, Scalar)]) -> Result<Self> {
        self.check_head(sigma)?;
        self.touch(sigma);
        for (tau, a) in tail {
            self.set(sigma, tau, a.neg_ref())?;
        }
        Ok(self)
    }

    /// Declares the head with whatever tail has been set so far (zero if none).
    pub fn head(mut self, sigma: &Term) -> Result<Self> {
        self.check_head(sigma)?;
        self.touch(sigma);
        Ok(self)
    }

    fn touch(&mut self, sigma: &Term) {
        let n = self.ideal.slice(sigma.degree()).len();
        let zero = self.ring.zero();
        self.tails.entry(sigma.clone()).or_insert_with(|| vec![zero; n]);
    }

    /// Fails unless every border term of degree at most `max_degree` has
    /// been declared.
    pub fn build(self) -> Result<Prebasis> {
        for d in 1..=self.max_degree {
            for sigma in self.ideal.border_slice(d).iter() {
                if !self.tails.contains_key(sigma) {
                    return Err(Error::InvalidPrebasis(format!(
                        "missing element with head {}",
                        sigma.display_with(self.ideal.variables())
                    )));
                }
            }
        }
        Ok(Prebasis {
            ideal: self.ideal,
            ring: self.ring,
            max_degree: self.max_degree,
            tails: self.tails.into_iter().collect(),
        })
    }

    /// Like [`build`](Self::build) but undeclared heads get zero tails.
    pub fn build_zero_filled(mut self) -> Result<Prebasis> {
        for d in 1..=self.max_degree {
            for sigma in self.ideal.border_slice(d).iter() {
                self.touch(sigma);
            }
        }
        self.build()
    }
}

/// One reduction step `f ← f - c·η·g_σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub coefficient: Scalar,
    pub multiplier: Term,
    pub head: Term,
}

/// Steps of a reduction and the reduced polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub result: Polynomial,
}

impl ReductionTrace {
    /// `result + Σ c_j η_j g_{σ_j}`, which equals the reduced input.
    pub fn replay(&self, g: &Prebasis) -> Result<Polynomial> {
        let mut acc = self.result.clone();
        for s in &self.steps {
            acc.add_multiple(&s.coefficient, &s.multiplier, &g.element(&s.head)?)?;
        }
        Ok(acc)
    }
}

/// Outcome of comparing `dim ⟨TG_d⟩` with `dim (G)_d` degree by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    /// `(d, dim ⟨TG_d⟩, dim (G)_d)` for each checked degree.
    pub dimensions: Vec<(u32, usize, usize)>,
    pub first_failure: Option<u32>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

impl Prebasis {
    pub fn builder(ideal: Arc<OrderIdeal>, ring: Ring, max_degree: u32) -> PrebasisBuilder {
        PrebasisBuilder {
            ideal,
            ring,
            max_degree,
            tails: BTreeMap::new(),
        }
    }

    /// The prebasis with all tails zero.
    pub fn monomial(ideal: Arc<OrderIdeal>, ring: Ring, max_degree: u32) -> Result<Prebasis> {
        Prebasis::builder(ideal, ring, max_degree).build_zero_filled()
    }

    pub(crate) fn from_dense(
        ideal: Arc<OrderIdeal>,
        ring: Ring,
        max_degree: u32,
        tails: HashMap<Term, Vec<Scalar>>,
    ) -> Prebasis {
        Prebasis {
            ideal,
            ring,
            max_degree,
            tails,
        }
    }

    pub fn ideal(&self) -> &Arc<OrderIdeal> {
        &self.ideal
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// All heads, by degree then canonical order.
    pub fn heads(&self) -> Vec<Term> {
        (1..=self.max_degree)
            .flat_map(|d| self.ideal.border_slice(d).to_vec())
            .collect()
    }

    /// `c_{σ·}` over `O_{deg σ}` in canonical order.
    pub fn tail(&self, sigma: &Term) -> Result<&[Scalar]> {
        if let Some(t) = self.tails.get(sigma) {
            return Ok(t);
        }
        if sigma.nvars() == self.ideal.nvars() && self.ideal.in_border(sigma) {
            Err(Error::InsufficientDegree {
                needed: sigma.degree(),
                available: self.max_degree,
            })
        } else {
            Err(Error::NotInBorder(sigma.display_with(self.ideal.variables())))
        }
    }

    /// `g_σ` as a polynomial.
    pub fn element(&self, sigma: &Term) -> Result<Polynomial> {
        let tail = self.tail(sigma)?;
        let slice = self.ideal.slice(sigma.degree());
        let mut p = Polynomial::monomial(&self.ring, sigma.clone(), self.ring.one())?;
        for (tau, c) in slice.terms().iter().zip(tail) {
            p.add_term(tau.clone(), c.neg_ref())?;
        }
        Ok(p)
    }

    /// Elements of degree `d`, canonical order of heads.
    pub fn elements_of_degree(&self, d: u32) -> Result<Vec<(Term, Polynomial)>> {
        self.ideal
            .border_slice(d)
            .iter()
            .map(|s| Ok((s.clone(), self.element(s)?)))
            .collect()
    }

    /// Keeps the elements of degree at most `d`.
    pub fn truncate(&self, d: u32) -> Prebasis {
        Prebasis {
            ideal: self.ideal.clone(),
            ring: self.ring.clone(),
            max_degree: d.min(self.max_degree),
            tails: self
                .tails
                .iter()
                .filter(|(s, _)| s.degree() <= d)
                .map(|(s, t)| (s.clone(), t.clone()))
                .collect(),
        }
    }

    /// Same tails mapped into another ring.
    pub fn map_ring(&self, ring: &Ring, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Prebasis> {
        let mut tails = HashMap::new();
        for (s, t) in &self.tails {
            let mapped = t.iter().map(&f).collect::<Result<Vec<_>>>()?;
            if let Some(bad) = mapped.iter().find(|x| !x.belongs_to(ring)) {
                return Err(Error::MixedRings {
                    left: ring.to_string(),
                    right: bad.ring().to_string(),
                });
            }
            tails.insert(s.clone(), mapped);
        }
        Ok(Prebasis {
            ideal: self.ideal.clone(),
            ring: ring.clone(),
            max_degree: self.max_degree,
            tails,
        })
    }

    /// Replaces one tail entry.
    pub fn with_coefficient(&self, sigma: &Term, tau: &Term, c: Scalar) -> Result<Prebasis> {
        let mut out = self.clone();
        let pos = self.ideal.slice(sigma.degree()).position(tau).ok_or_else(|| {
            Error::InvalidPrebasis(format!("{} is not in O", tau.display_with(self.ideal.variables())))
        })?;
        let row = out
            .tails
            .get_mut(sigma)
            .ok_or_else(|| Error::NotInBorder(sigma.display_with(self.ideal.variables())))?;
        row[pos] = c;
        Ok(out)
    }

    fn check_structure(&self, s: &ReductionStructure) -> Result<()> {
        if **s.ideal() != *self.ideal {
            return Err(Error::InvalidStructure(
                "structure and prebasis use different order ideals".into(),
            ));
        }
        if !s.is_degree_increasing() {
            return Err(Error::NotDegreeIncreasing);
        }
        Ok(())
    }

    /// Reduces `f` to an `O`-supported polynomial. Each step removes the
    /// reducible term of largest `(index, term)`.
    pub fn reduce(&self, s: &ReductionStructure, f: &Polynomial) -> Result<ReductionTrace> {
        self.reduce_with(s, f, |_| 0)
    }

    /// Reduces `f` letting `choose` pick which reducible term to remove; it
    /// receives the candidates in the default priority order.
    pub fn reduce_with(
        &self,
        s: &ReductionStructure,
        f: &Polynomial,
        mut choose: impl FnMut(&[Term]) -> usize,
    ) -> Result<ReductionTrace> {
        self.check_structure(s)?;
        if f.ring() != &self.ring {
            return Err(Error::MixedRings {
                left: self.ring.to_string(),
                right: f.ring().to_string(),
            });
        }
        if f.nvars() != self.ideal.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ideal.nvars(),
                found: f.nvars(),
            });
        }
        let mut cur = f.clone();
        let mut steps = Vec::new();
        loop {
            let mut cands: Vec<(u32, Term)> = cur
                .support()
                .filter(|t| !self.ideal.contains(t))
                .map(|t| (self.ideal.index(t), t.clone()))
                .collect();
            if cands.is_empty() {
                break;
            }
            cands.sort_by(|a, b| b.cmp(a));
            let terms: Vec<Term> = cands.into_iter().map(|(_, t)| t).collect();
            let pick = choose(&terms).min(terms.len() - 1);
            let step = self.step(s, &mut cur, &terms[pick])?;
            steps.push(step);
        }
        Ok(ReductionTrace { steps, result: cur })
    }

    /// Removes `beta` from `f` using its cone owner.
    pub(crate) fn step(&self, s: &ReductionStructure, f: &mut Polynomial, beta: &Term) -> Result<ReductionStep> {
        let c = f
            .coefficient(beta)
            .cloned()
            .ok_or_else(|| Error::Internal(format!("{beta} is not in the support")))?;
        let sigma = s
            .cone_owner(beta)
            .ok_or_else(|| Error::Internal(format!("{beta} lies in O")))?;
        let eta = sigma.quotient_of(beta).expect("owner divides the term");
        let g = self.element(&sigma)?;
        f.add_multiple(&c.neg_ref(), &eta, &g)?;
        Ok(ReductionStep {
            coefficient: c,
            multiplier: eta,
            head: sigma,
        })
    }

    fn require_degree(&self, d: u32) -> Result<()> {
        if d > self.max_degree {
            return Err(Error::InsufficientDegree {
                needed: d,
                available: self.max_degree,
            });
        }
        Ok(())
    }

    fn require_field(&self, op: &'static str) -> Result<()> {
        if !self.ring.is_field() {
            return Err(Error::UnsupportedRing {
                op,
                ring: self.ring.to_string(),
            });
        }
        Ok(())
    }

    fn dense_row(&self, terms: &[Term], pos: &HashMap<&Term, usize>, p: &Polynomial) -> Vec<Scalar> {
        let mut row = vec![self.ring.zero(); terms.len()];
        for (t, c) in p.iter() {
            row[pos[t]] = c.clone();
        }
        row
    }

    /// Degree-`d` border reductors `η g_σ`, one per term of `T_d \ O_d`,
    /// as rows over `T_d` in canonical order.
    pub fn reductor_matrix(&self, s: &ReductionStructure, d: u32) -> Result<ExactMatrix> {
        self.check_structure(s)?;
        self.require_degree(d)?;
        let terms = enumerate_degree(self.ideal.nvars(), d);
        let pos: HashMap<&Term, usize> = terms.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut rows = Vec::new();
        for beta in &terms {
            if let Some(sigma) = s.cone_owner(beta) {
                let eta = sigma.quotient_of(beta).expect("owner divides the term");
                rows.push(self.dense_row(&terms, &pos, &self.element(&sigma)?.mul_term(&eta)?));
            }
        }
        if rows.is_empty() {
            return Ok(ExactMatrix::zeros(&self.ring, 0, terms.len()));
        }
        ExactMatrix::from_rows(&self.ring, rows)
    }

    /// `dim ⟨TG_d⟩`.
    pub fn reductor_span_dim(&self, s: &ReductionStructure, d: u32) -> Result<usize> {
        self.require_field("reductor span dimension")?;
        let m = self.reductor_matrix(s, d)?;
        let mut space = RowSpace::new(&self.ring, m.ncols());
        for r in m.rows() {
            space.insert(r.to_vec())?;
        }
        Ok(space.dim())
    }

    /// `dim (G)_d` from all monomial multiples of elements of degree `<= d`.
    pub fn ideal_slice_dim(&self, d: u32) -> Result<usize> {
        self.require_field("ideal slice dimension")?;
        self.require_degree(d)?;
        let terms = enumerate_degree(self.ideal.nvars(), d);
        let pos: HashMap<&Term, usize> = terms.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut space = RowSpace::new(&self.ring, terms.len());
        for k in 1..=d {
            let multipliers = enumerate_degree(self.ideal.nvars(), d - k);
            for (_, g) in self.elements_of_degree(k)? {
                for m in &multipliers {
                    space.insert(self.dense_row(&terms, &pos, &g.mul_term(m)?))?;
                    if space.dim() == terms.len() {
                        return Ok(space.dim());
                    }
                }
            }
        }
        Ok(space.dim())
    }

    /// Compares `dim ⟨TG_d⟩` and `dim (G)_d` for `d <= d_max`.
    pub fn reductor_criterion(&self, s: &ReductionStructure, d_max: u32) -> Result<CriterionReport> {
        self.require_degree(d_max)?;
        let mut dimensions = Vec::new();
        let mut first_failure = None;
        for d in 0..=d_max {
            let a = self.reductor_span_dim(s, d)?;
            let b = self.ideal_slice_dim(d)?;
            dimensions.push((d, a, b));
            if a != b && first_failure.is_none() {
                first_failure = Some(d);
            }
        }
        Ok(CriterionReport {
            dimensions,
            first_failure,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::redstruct::TieBreak;

    fn t(e: &[u32]) -> Term {
        Term::new(e.to_vec()).unwrap()
    }

    fn q(n: i64) -> Scalar {
        Ring::Rational.from_i64(n)
    }

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn cones_g(max: u32) -> Prebasis {
        let o = Arc::new(OrderIdeal::new(["x", "y"], vec![t(&[0, 4]), t(&[1, 3]), t(&[3, 2])]).unwrap());
        Prebasis::builder(o, Ring::Rational, max)
            .element(&t(&[2, 3]), &[(t(&[5, 0]), q(1))])
            .unwrap()
            .element(&t(&[3, 2]), &[(t(&[5, 0]), q(1))])
            .unwrap()
            .build_zero_filled()
            .unwrap()
    }

    #[test]
    fn sign_convention() {
        let g = cones_g(6);
        assert_eq!(g.tail(&t(&[3, 2])).unwrap(), &[q(-1), q(0)]);
        assert_eq!(g.element(&t(&[3, 2])).unwrap().display_with(&names()), "x^5 + x^3*y^2");
    }

    #[test]
    fn reduce_under_two_structures() {
        let g = cones_g(6);
        let f = Polynomial::parse_with("x^3*y^3", &names(), &Ring::Rational).unwrap();
        let j = ReductionStructure::new(g.ideal().clone(), TieBreak::LexAsc).unwrap();
        let tr = g.reduce(&j, &f).unwrap();
        assert_eq!(tr.result.display_with(&names()), "-x^5*y");
        assert_eq!(tr.steps.len(), 1);
        assert_eq!(tr.steps[0].multiplier, t(&[0, 1]));
        assert_eq!(tr.steps[0].head, t(&[3, 2]));
        assert_eq!(tr.replay(&g).unwrap(), f);
        let jp = ReductionStructure::new(g.ideal().clone(), TieBreak::LexDesc).unwrap();
        assert_eq!(g.reduce(&jp, &f).unwrap().result.display_with(&names()), "-x^6");
    }

    #[test]
    fn insufficient_degree() {
        let g = cones_g(5);
        let j = ReductionStructure::new(g.ideal().clone(), TieBreak::LexAsc).unwrap();
        let f = Polynomial::parse_with("x^4*y^2", &names(), &Ring::Rational).unwrap();
        assert_eq!(
            g.reduce(&j, &f).unwrap_err(),
            Error::InsufficientDegree {
                needed: 6,
                available: 5
            }
        );
        assert!(matches!(g.ideal_slice_dim(6), Err(Error::InsufficientDegree { .. })));
    }

    #[test]
    fn missing_head_rejected() {
        let o = Arc::new(OrderIdeal::new(["x", "y"], vec![t(&[1, 1])]).unwrap());
        assert!(Prebasis::builder(o.clone(), Ring::Rational, 3).build().is_err());
        assert!(Prebasis::builder(o.clone(), Ring::Rational, 2)
            .element(&t(&[2, 0]), &[])
            .is_err());
        assert!(Prebasis::builder(o, Ring::Rational, 2)
            .element(&t(&[1, 1]), &[(t(&[1, 1]), q(1))])
            .is_err());
    }

    #[test]
    fn non_noetherian_cycle() {
        // Labels x^4y < x^5y < ... < x^3y < x^2y^2 < xy^3 < y^4 < xy^2.
        let o = Arc::new(OrderIdeal::new(["x", "y"], vec![t(&[3, 1]), t(&[1, 2]), t(&[0, 4])]).unwrap());
        let tail_order = [t(&[3, 1]), t(&[2, 2]), t(&[1, 3]), t(&[0, 4]), t(&[1, 2])];
        let key = move |s: &Term| -> i64 {
            match tail_order.iter().position(|x| x == s) {
                Some(i) => 1_000_000 + i as i64,
                None => s.exponents()[0] as i64,
            }
        };
        let s = ReductionStructure::with_custom_labels(o.clone(), Arc::new(key));
        let g = Prebasis::builder(o, Ring::Rational, 6)
            .element(&t(&[1, 2]), &[(t(&[2, 1]), q(-1)), (t(&[0, 3]), q(-1))])
            .unwrap()
            .build_zero_filled()
            .unwrap();
        let start = Polynomial::parse_with("x*y^3", &names(), &Ring::Rational).unwrap();
        assert!(matches!(g.reduce(&s, &start), Err(Error::NotDegreeIncreasing)));
        let mut f = start.clone();
        let chain = [t(&[1, 3]), t(&[0, 4]), t(&[2, 2]), t(&[3, 1])];
        let heads: Vec<Term> = chain.iter().map(|b| g.step(&s, &mut f, b).unwrap().head).collect();
        assert_eq!(heads, [t(&[1, 2]), t(&[0, 4]), t(&[1, 2]), t(&[3, 1])]);
        assert_eq!(f, start);
    }

    #[test]
    fn span_dimensions_at_degree_six() {
        let g = cones_g(6);
        let j = ReductionStructure::new(g.ideal().clone(), TieBreak::LexAsc).unwrap();
        assert_eq!(g.reductor_span_dim(&j, 6).unwrap(), 5);
        assert_eq!(g.reductor_span_dim(&j, 3).unwrap(), 0);
        assert_eq!(g.ideal_slice_dim(3).unwrap(), 0);
    }
}
