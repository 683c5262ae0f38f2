//! JSON documents for order ideals, structures, prebases and ideal
//! generators. A workspace is one object holding any subset of the fields.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::Ring;
use crate::monomial::Term;
use crate::orderideal::OrderIdeal;
use crate::polynomial::Polynomial;
use crate::prebasis::Prebasis;
use crate::redstruct::{ReductionStructure, TieBreak};
use crate::synthesis::IdealPresentation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TieBreakDoc {
    Named(String),
    Explicit(BTreeMap<String, Vec<Vec<u32>>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldDoc {
    Named(String),
    Prime { prime: u64 },
    Parameters { parameters: Vec<String> },
}

/// One prebasis element: its head and the nonzero stored coefficients
/// `c_{στ}`, keyed by the exponent vector of `τ` such as `"[5,0]"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDoc {
    pub head: Vec<u32>,
    #[serde(default)]
    pub tail: BTreeMap<String, String>,
}

/// A polynomial either as text such as `"x^3 + x^2*y"` or as a map from
/// exponent vectors to coefficient strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolynomialDoc {
    Text(String),
    Terms(BTreeMap<String, String>),
}

impl PolynomialDoc {
    pub fn to_polynomial(&self, names: &[String], ring: &Ring) -> Result<Polynomial> {
        match self {
            PolynomialDoc::Text(s) => Polynomial::parse_with(s, names, ring),
            PolynomialDoc::Terms(map) => {
                let mut p = Polynomial::zero(ring, names.len());
                for (k, v) in map {
                    p.add_term(term_key(k, names.len())?, ring.parse(v)?)?;
                }
                Ok(p)
            }
        }
    }

    pub fn from_polynomial(p: &Polynomial) -> Self {
        PolynomialDoc::Terms(p.iter().map(|(t, c)| (t.to_string(), c.to_string())).collect())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkspaceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement_generators: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tie_break: Option<TieBreakDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient_field: Option<FieldDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomials: Option<Vec<ElementDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<PolynomialDoc>>,
}

fn term_from(exps: &[u32], n: usize) -> Result<Term> {
    if exps.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: exps.len(),
        });
    }
    Term::new(exps.to_vec())
}

fn term_key(k: &str, n: usize) -> Result<Term> {
    let exps: Vec<u32> = serde_json::from_str(k).map_err(|_| Error::Parse(format!("bad term key `{k}`")))?;
    term_from(&exps, n)
}

impl WorkspaceDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Fields present in `other` replace those of `self`.
    pub fn merge(mut self, other: WorkspaceDoc) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(
            variables,
            complement_generators,
            tie_break,
            coefficient_field,
            max_degree,
            polynomials,
            generators
        );
        self
    }

    pub fn order_ideal(&self) -> Result<Arc<OrderIdeal>> {
        let names = self
            .variables
            .clone()
            .ok_or_else(|| Error::InvalidOrderIdeal("missing `variables`".into()))?;
        let n = names.len();
        let gens = self
            .complement_generators
            .as_deref()
            .unwrap_or_default()
            .iter()
            .map(|e| term_from(e, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(OrderIdeal::new(names, gens)?))
    }

    pub fn ring(&self) -> Result<Ring> {
        match &self.coefficient_field {
            None => Ok(Ring::Rational),
            Some(FieldDoc::Named(s)) if s == "rational" => Ok(Ring::Rational),
            Some(FieldDoc::Named(s)) => Err(Error::Parse(format!("unknown coefficient field `{s}`"))),
            Some(FieldDoc::Prime { prime }) => Ring::prime(*prime),
            Some(FieldDoc::Parameters { parameters }) => Ring::parametric(parameters.iter().map(String::as_str)),
        }
    }

    pub fn tie_break(&self, n: usize) -> Result<TieBreak> {
        match &self.tie_break {
            None => Ok(TieBreak::LexAsc),
            Some(TieBreakDoc::Named(s)) => match s.as_str() {
                "lex_asc" => Ok(TieBreak::LexAsc),
                "lex_desc" => Ok(TieBreak::LexDesc),
                _ => Err(Error::Parse(format!("unknown tie break `{s}`"))),
            },
            Some(TieBreakDoc::Explicit(map)) => {
                let mut lists = BTreeMap::new();
                for (k, v) in map {
                    let d: u32 = k.parse().map_err(|_| Error::Parse(format!("bad degree key `{k}`")))?;
                    lists.insert(d, v.iter().map(|e| term_from(e, n)).collect::<Result<Vec<_>>>()?);
                }
                Ok(TieBreak::Explicit(lists))
            }
        }
    }

    pub fn structure(&self, ideal: &Arc<OrderIdeal>) -> Result<ReductionStructure> {
        ReductionStructure::new(ideal.clone(), self.tie_break(ideal.nvars())?)
    }

    /// The prebasis; every border head up to `max_degree` must be listed.
    pub fn prebasis(&self, ideal: &Arc<OrderIdeal>) -> Result<Prebasis> {
        let elems = self
            .polynomials
            .as_ref()
            .ok_or_else(|| Error::InvalidPrebasis("missing `polynomials`".into()))?;
        let ring = self.ring()?;
        let n = ideal.nvars();
        let dmax = match self.max_degree {
            Some(d) => d,
            None => elems.iter().map(|e| e.head.iter().sum::<u32>()).max().unwrap_or(0),
        };
        let mut b = Prebasis::builder(ideal.clone(), ring.clone(), dmax);
        for e in elems {
            let head = term_from(&e.head, n)?;
            b = b.head(&head)?;
            for (k, v) in &e.tail {
                b = b.coefficient(&head, &term_key(k, n)?, ring.parse(v)?)?;
            }
        }
        b.build()
    }

    pub fn ideal_presentation(&self) -> Result<IdealPresentation> {
        let names = self
            .variables
            .clone()
            .ok_or_else(|| Error::Parse("missing `variables`".into()))?;
        let ring = self.ring()?;
        let gens = self
            .generators
            .as_ref()
            .ok_or_else(|| Error::Parse("missing `generators`".into()))?
            .iter()
            .map(|g| g.to_polynomial(&names, &ring))
            .collect::<Result<Vec<_>>>()?;
        IdealPresentation::new(&ring, names.len(), gens)
    }

    pub fn from_order_ideal(o: &OrderIdeal) -> Self {
        WorkspaceDoc {
            variables: Some(o.variables().to_vec()),
            complement_generators: Some(o.generators().iter().map(|t| t.exponents().to_vec()).collect()),
            ..Default::default()
        }
    }

    /// The full document of `g`, including its order ideal.
    pub fn from_prebasis(g: &Prebasis) -> Self {
        let field = match g.ring() {
            Ring::Rational => FieldDoc::Named("rational".into()),
            Ring::Prime(p) => FieldDoc::Prime { prime: *p },
            Ring::Parametric(space) => FieldDoc::Parameters {
                parameters: space.names().to_vec(),
            },
        };
        let slices: HashMap<u32, Vec<Term>> = (0..=g.max_degree())
            .map(|d| (d, g.ideal().slice(d).terms().to_vec()))
            .collect();
        let polynomials = g
            .heads()
            .into_iter()
            .map(|s| {
                let tail = g
                    .tail(&s)
                    .expect("heads have tails")
                    .iter()
                    .zip(&slices[&s.degree()])
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, tau)| (tau.to_string(), c.to_string()))
                    .collect();
                ElementDoc {
                    head: s.exponents().to_vec(),
                    tail,
                }
            })
            .collect();
        WorkspaceDoc {
            coefficient_field: Some(field),
            max_degree: Some(g.max_degree()),
            polynomials: Some(polynomials),
            ..WorkspaceDoc::from_order_ideal(g.ideal())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: &str = r#"{
        "variables": ["x", "y"],
        "complement_generators": [[0,4],[1,3],[3,2]],
        "coefficient_field": "rational",
        "polynomials": [
            {"head": [0,4]}, {"head": [1,3]},
            {"head": [3,2], "tail": {"[5,0]": "-1"}},
            {"head": [2,3], "tail": {"[5,0]": "-1"}}
        ]
    }"#;

    #[test]
    fn prebasis_round_trip() {
        let doc = WorkspaceDoc::from_json(G).unwrap();
        let o = doc.order_ideal().unwrap();
        let g = doc.prebasis(&o).unwrap();
        assert_eq!(g.max_degree(), 5);
        let names = o.variables().to_vec();
        let e = g.element(&Term::new(vec![3, 2]).unwrap()).unwrap();
        assert_eq!(e.display_with(&names), "x^5 + x^3*y^2");
        let again = WorkspaceDoc::from_json(&WorkspaceDoc::from_prebasis(&g).to_json()).unwrap();
        assert_eq!(again.prebasis(&again.order_ideal().unwrap()).unwrap(), g);
    }

    #[test]
    fn missing_head_rejected() {
        let mut doc = WorkspaceDoc::from_json(G).unwrap();
        doc.polynomials.as_mut().unwrap().pop();
        let o = doc.order_ideal().unwrap();
        assert!(doc.prebasis(&o).is_err());
    }

    #[test]
    fn fields_and_structures() {
        let doc =
            WorkspaceDoc::from_json(r#"{"coefficient_field": {"prime": 32003}, "tie_break": {"5": [[2,3],[3,2]]}}"#)
                .unwrap();
        assert_eq!(doc.ring().unwrap(), Ring::Prime(32003));
        let merged = WorkspaceDoc::from_json(G).unwrap().merge(doc);
        let o = merged.order_ideal().unwrap();
        assert!(merged.structure(&o).is_ok());
        let p = WorkspaceDoc::from_json(r#"{"coefficient_field": {"parameters": ["a", "b"]}}"#).unwrap();
        assert_eq!(p.ring().unwrap().parameters().unwrap().names().len(), 2);
    }

    #[test]
    fn generators_parse() {
        let doc = WorkspaceDoc::from_json(r#"{"variables": ["x","y"], "generators": ["x^3 + x^2*y + y^3"]}"#).unwrap();
        let a = doc.ideal_presentation().unwrap();
        let doc = WorkspaceDoc::from_json(
            r#"{"variables": ["x","y"], "generators": [{"[3,0]": "1", "[2,1]": "1", "[0,3]": "1"}]}"#,
        )
        .unwrap();
        assert_eq!(doc.ideal_presentation().unwrap(), a);
        let g = &a.generators()[0];
        let back = PolynomialDoc::from_polynomial(g)
            .to_polynomial(&["x".into(), "y".into()], &Ring::Rational)
            .unwrap();
        assert_eq!(&back, g);
    }
}
