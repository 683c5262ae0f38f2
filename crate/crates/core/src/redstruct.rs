//! Border reduction structures: labelings of the border, cones and
//! multiplicative sets.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::monomial::{enumerate_degree, Term};
use crate::orderideal::OrderIdeal;

/// Within-degree ordering of border terms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Ascending in the canonical order.
    #[default]
    LexAsc,
    /// Descending in the canonical order.
    LexDesc,
    /// Border terms of the listed degrees in label order; other degrees
    /// fall back to `LexAsc`.
    Explicit(BTreeMap<u32, Vec<Term>>),
}

type LabelKey = Arc<dyn Fn(&Term) -> i64 + Send + Sync>;

/// A labeling of `∂O`. Labels compare by degree first, then by the
/// tie-break, which makes every structure built through the public API
/// degree-increasing.
#[derive(Clone)]
pub struct ReductionStructure {
    ideal: Arc<OrderIdeal>,
    tie: TieBreak,
    ranks: HashMap<Term, usize>,
    custom: Option<LabelKey>,
    owners: Arc<Mutex<HashMap<Term, Option<Term>>>>,
}

impl fmt::Debug for ReductionStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ReductionStructure")
            .field("tie_break", &self.tie)
            .field("custom", &self.custom.is_some())
            .finish()
    }
}

/// One row of [`ReductionStructure::describe`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeRecord {
    pub term: Term,
    pub owner: Term,
    pub multiplier: Term,
}

impl ReductionStructure {
    pub fn new(ideal: Arc<OrderIdeal>, tie: TieBreak) -> Result<Self> {
        let mut ranks = HashMap::new();
        if let TieBreak::Explicit(lists) = &tie {
            for (&d, list) in lists {
                let border = ideal.border_slice(d);
                if list.len() != border.len() {
                    return Err(Error::InvalidStructure(format!(
                        "degree {d} lists {} terms but the border has {}",
                        list.len(),
                        border.len()
                    )));
                }
                for (i, t) in list.iter().enumerate() {
                    if t.nvars() != ideal.nvars() {
                        return Err(Error::DimensionMismatch {
                            expected: ideal.nvars(),
                            found: t.nvars(),
                        });
                    }
                    if t.degree() != d || !ideal.in_border(t) {
                        return Err(Error::InvalidStructure(format!(
                            "{t} is not a border term of degree {d}"
                        )));
                    }
                    if ranks.insert(t.clone(), i).is_some() {
                        return Err(Error::InvalidStructure(format!("{t} listed twice")));
                    }
                }
            }
        }
        Ok(ReductionStructure {
            ideal,
            tie,
            ranks,
            custom: None,
            owners: Arc::new(Mutex::new(HashMap::new())),
        })
    }

    /// Labels given by an arbitrary key, larger key meaning larger label.
    /// Such labelings need not be degree-increasing, so reduction with them
    /// may not terminate; only tests build them.
    #[cfg(test)]
    pub(crate) fn with_custom_labels(ideal: Arc<OrderIdeal>, key: LabelKey) -> Self {
        ReductionStructure {
            ideal,
            tie: TieBreak::LexAsc,
            ranks: HashMap::new(),
            custom: Some(key),
            owners: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    pub fn ideal(&self) -> &Arc<OrderIdeal> {
        &self.ideal
    }

    pub fn tie_break(&self) -> &TieBreak {
        &self.tie
    }

    pub fn is_degree_increasing(&self) -> bool {
        self.custom.is_none()
    }

    fn cmp_unchecked(&self, a: &Term, b: &Term) -> Ordering {
        if let Some(key) = &self.custom {
            return key(a).cmp(&key(b));
        }
        a.degree().cmp(&b.degree()).then_with(|| match &self.tie {
            TieBreak::LexAsc => a.cmp(b),
            TieBreak::LexDesc => b.cmp(a),
            TieBreak::Explicit(_) => match (self.ranks.get(a), self.ranks.get(b)) {
                (Some(x), Some(y)) => x.cmp(y),
                _ => a.cmp(b),
            },
        })
    }

    fn require_border(&self, t: &Term) -> Result<()> {
        if t.nvars() != self.ideal.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ideal.nvars(),
                found: t.nvars(),
            });
        }
        if !self.ideal.in_border(t) {
            return Err(Error::NotInBorder(t.display_with(self.ideal.variables())));
        }
        Ok(())
    }

    /// Compares the labels of two border terms.
    pub fn label_compare(&self, a: &Term, b: &Term) -> Result<Ordering> {
        self.require_border(a)?;
        self.require_border(b)?;
        Ok(self.cmp_unchecked(a, b))
    }

    /// Border terms of degree at most `d`, in increasing label order.
    pub fn labels_through(&self, d: u32) -> Vec<Term> {
        let mut all: Vec<Term> = (1..=d).flat_map(|k| self.ideal.border_slice(k).to_vec()).collect();
        all.sort_by(|a, b| self.cmp_unchecked(a, b));
        all
    }

    /// The border divisor of `beta` with the largest label; `None` on `O`.
    pub fn cone_owner(&self, beta: &Term) -> Option<Term> {
        if self.ideal.contains(beta) {
            return None;
        }
        if let Some(o) = self.owners.lock().unwrap().get(beta) {
            return o.clone();
        }
        let owner = if self.custom.is_some() {
            beta.divisors()
                .into_iter()
                .filter(|s| self.ideal.in_border(s))
                .max_by(|a, b| self.cmp_unchecked(a, b))
        } else {
            (0..beta.degree()).find_map(|k| {
                beta.divisors_of_codegree(k)
                    .into_iter()
                    .filter(|s| self.ideal.in_border(s))
                    .max_by(|a, b| self.cmp_unchecked(a, b))
            })
        };
        self.owners.lock().unwrap().insert(beta.clone(), owner.clone());
        owner
    }

    /// Whether `eta` lies in the multiplicative set of the border term `sigma`.
    pub fn is_multiplicative(&self, eta: &Term, sigma: &Term) -> Result<bool> {
        self.require_border(sigma)?;
        let beta = eta.mul(sigma)?;
        Ok(self.cone_owner(&beta).as_ref() == Some(sigma))
    }

    /// Multiplicative terms of degree `k` for `sigma`, canonical order.
    pub fn multiplicative_slice(&self, sigma: &Term, k: u32) -> Result<Vec<Term>> {
        self.require_border(sigma)?;
        let mut out = Vec::new();
        for eta in enumerate_degree(self.ideal.nvars(), k) {
            if self.is_multiplicative(&eta, sigma)? {
                out.push(eta);
            }
        }
        Ok(out)
    }

    /// Owner and multiplier of every term of degree `d` outside `O`.
    pub fn describe(&self, d: u32) -> Vec<ConeRecord> {
        enumerate_degree(self.ideal.nvars(), d)
            .into_iter()
            .filter_map(|beta| {
                let owner = self.cone_owner(&beta)?;
                let multiplier = owner.quotient_of(&beta).expect("owner divides the term");
                Some(ConeRecord {
                    term: beta,
                    owner,
                    multiplier,
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(e: &[u32]) -> Term {
        Term::new(e.to_vec()).unwrap()
    }

    fn cones() -> Arc<OrderIdeal> {
        Arc::new(OrderIdeal::new(["x", "y"], vec![t(&[0, 4]), t(&[1, 3]), t(&[3, 2])]).unwrap())
    }

    fn noeth() -> Arc<OrderIdeal> {
        Arc::new(OrderIdeal::new(["x", "y"], vec![t(&[3, 1]), t(&[1, 2]), t(&[0, 4])]).unwrap())
    }

    #[test]
    fn label_orders() {
        let j = ReductionStructure::new(cones(), TieBreak::LexAsc).unwrap();
        assert_eq!(j.label_compare(&t(&[0, 4]), &t(&[1, 3])).unwrap(), Ordering::Less);
        let jp = ReductionStructure::new(cones(), TieBreak::LexDesc).unwrap();
        assert_eq!(jp.label_compare(&t(&[3, 2]), &t(&[2, 3])).unwrap(), Ordering::Less);
        assert_eq!(j.label_compare(&t(&[1, 3]), &t(&[3, 2])).unwrap(), Ordering::Less);
        assert!(matches!(
            j.label_compare(&t(&[1, 1]), &t(&[1, 3])),
            Err(Error::NotInBorder(_))
        ));
    }

    #[test]
    fn owners_under_both_structures() {
        let j = ReductionStructure::new(cones(), TieBreak::LexAsc).unwrap();
        let jp = ReductionStructure::new(cones(), TieBreak::LexDesc).unwrap();
        assert_eq!(j.cone_owner(&t(&[3, 3])), Some(t(&[3, 2])));
        assert_eq!(jp.cone_owner(&t(&[3, 3])), Some(t(&[2, 3])));
        assert_eq!(j.cone_owner(&t(&[2, 2])), None);
    }

    #[test]
    fn multiplicative_sets() {
        let jp = ReductionStructure::new(cones(), TieBreak::LexDesc).unwrap();
        assert!(!jp.is_multiplicative(&t(&[1, 0]), &t(&[3, 2])).unwrap());
        let j = ReductionStructure::new(cones(), TieBreak::LexAsc).unwrap();
        assert_eq!(j.multiplicative_slice(&t(&[3, 2]), 1).unwrap(), vec![t(&[0, 1])]);
        let n = ReductionStructure::new(noeth(), TieBreak::LexDesc).unwrap();
        assert!(n.is_multiplicative(&t(&[2, 0]), &t(&[1, 3])).unwrap());
        assert!(!n.is_multiplicative(&t(&[3, 0]), &t(&[1, 3])).unwrap());
        assert_eq!(
            n.multiplicative_slice(&t(&[0, 4]), 1).unwrap(),
            vec![t(&[1, 0]), t(&[0, 1])]
        );
        assert_eq!(n.multiplicative_slice(&t(&[1, 2]), 0).unwrap(), vec![Term::one(2)]);
    }

    #[test]
    fn explicit_lists_validated() {
        let mut lists = BTreeMap::new();
        lists.insert(5, vec![t(&[3, 2]), t(&[2, 3])]);
        let s = ReductionStructure::new(cones(), TieBreak::Explicit(lists)).unwrap();
        assert_eq!(s.cone_owner(&t(&[3, 3])), Some(t(&[2, 3])));
        let mut bad = BTreeMap::new();
        bad.insert(5, vec![t(&[3, 2])]);
        assert!(ReductionStructure::new(cones(), TieBreak::Explicit(bad)).is_err());
    }

    #[test]
    fn describe_covers_complement() {
        let j = ReductionStructure::new(cones(), TieBreak::LexAsc).unwrap();
        let recs = j.describe(6);
        assert_eq!(recs.len(), 7 - 2);
        assert!(recs.iter().all(|r| r.owner.mul(&r.multiplier).unwrap() == r.term));
    }
}
