//! Border bases from ideal generators, and extension of certified prebases.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactmath::{ExactMatrix, Ring, RowSpace, Scalar};
use crate::monomial::{enumerate_degree, Term};
use crate::multmatrix::{check_basis, Verdict};
use crate::orderideal::OrderIdeal;
use crate::polynomial::Polynomial;
use crate::prebasis::Prebasis;

/// Largest degree accepted by [`verify_eq_identity`].
pub const EQ_IDENTITY_CAP: u32 = 400;

/// Homogeneous generators of an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    ring: Ring,
    nvars: usize,
    generators: Vec<Polynomial>,
}

impl IdealPresentation {
    pub fn new(ring: &Ring, nvars: usize, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if g.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: g.nvars(),
                });
            }
            if g.ring() != ring {
                return Err(Error::MixedRings {
                    left: ring.to_string(),
                    right: g.ring().to_string(),
                });
            }
            if g.is_zero() {
                return Err(Error::Precondition("ideal generators must be nonzero".into()));
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(IdealPresentation {
            ring: ring.clone(),
            nvars,
            generators,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }
}

/// Dimensions seen at one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeDims {
    pub degree: u32,
    pub ideal_dim: usize,
    pub order_dim: usize,
    pub ambient_dim: usize,
}

impl DegreeDims {
    pub fn is_direct_sum(&self) -> bool {
        self.ideal_dim + self.order_dim == self.ambient_dim
    }
}

/// Why `J_d ⊕ ⟨O_d⟩ = P_d` fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Defect {
    /// A nonzero element of `J_d ∩ ⟨O_d⟩`.
    Intersection { witness: Polynomial },
    /// `dim J_d` falls short of `dim P_d - |O_d|`.
    RankDeficit { expected: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisFailure {
    pub degree: u32,
    pub defect: Defect,
}

/// Result of [`basis_from_ideal`].
#[derive(Clone, Debug)]
pub struct SynthesisReport {
    pub dimensions: Vec<DegreeDims>,
    pub result: std::result::Result<Prebasis, SynthesisFailure>,
}

/// Order in which pivot columns are preferred during elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotOrder {
    #[default]
    Canonical,
    Reversed,
}

struct DegreeOutcome {
    dims: DegreeDims,
    tails: std::result::Result<Vec<(Term, Vec<Scalar>)>, Defect>,
}

/// Eliminates the span of `rows` in degree `d` with the terms outside `O`
/// as leading columns, and reads off `c_{βτ}` for each border term `β`.
fn eliminate_degree(
    ring: &Ring,
    o: &OrderIdeal,
    d: u32,
    rows: Vec<Polynomial>,
    order: PivotOrder,
) -> Result<DegreeOutcome> {
    let all = enumerate_degree(o.nvars(), d);
    let (mut outside, mut inside): (Vec<Term>, Vec<Term>) = all.into_iter().partition(|t| !o.contains(t));
    if order == PivotOrder::Reversed {
        outside.reverse();
        inside.reverse();
    }
    let columns: Vec<Term> = outside.iter().chain(&inside).cloned().collect();
    let pos: HashMap<&Term, usize> = columns.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut space = RowSpace::new(ring, columns.len());
    for p in rows {
        let mut v = vec![ring.zero(); columns.len()];
        for (t, c) in p.iter() {
            v[pos[t]] = c.clone();
        }
        space.insert(v)?;
    }
    let dims = DegreeDims {
        degree: d,
        ideal_dim: space.dim(),
        order_dim: inside.len(),
        ambient_dim: columns.len(),
    };
    if space.dim() == 0 {
        let tails = if outside.is_empty() {
            Ok(Vec::new())
        } else {
            Err(Defect::RankDeficit {
                expected: outside.len(),
                found: 0,
            })
        };
        return Ok(DegreeOutcome { dims, tails });
    }
    let m = ExactMatrix::from_rows(ring, space.rows().to_vec())?;
    let (red, pivots) = m.rref()?;
    if let Some(i) = pivots.iter().position(|&p| p >= outside.len()) {
        let mut witness = Polynomial::zero(ring, o.nvars());
        for (c, x) in red.row(i).iter().enumerate() {
            witness.add_term(columns[c].clone(), x.clone())?;
        }
        return Ok(DegreeOutcome {
            dims,
            tails: Err(Defect::Intersection { witness }),
        });
    }
    if pivots.len() < outside.len() {
        return Ok(DegreeOutcome {
            dims,
            tails: Err(Defect::RankDeficit {
                expected: outside.len(),
                found: pivots.len(),
            }),
        });
    }
    let slice = o.slice(d);
    let mut tails = Vec::new();
    for beta in o.border_slice(d).iter() {
        let i = pos[beta];
        let row = red.row(i);
        let mut tail = vec![ring.zero(); slice.len()];
        for (k, tau) in slice.terms().iter().enumerate() {
            tail[k] = row[pos[tau]].neg_ref();
        }
        tails.push((beta.clone(), tail));
    }
    Ok(DegreeOutcome { dims, tails: Ok(tails) })
}

fn multiples_in_degree(gens: &[Polynomial], nvars: usize, d: u32) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for g in gens {
        let k = g.degree().expect("nonzero generator");
        if k > d {
            continue;
        }
        for m in enumerate_degree(nvars, d - k) {
            out.push(g.mul_term(&m)?);
        }
    }
    Ok(out)
}

fn require_field(ring: &Ring, op: &'static str) -> Result<()> {
    if ring.is_field() {
        Ok(())
    } else {
        Err(Error::UnsupportedRing {
            op,
            ring: ring.to_string(),
        })
    }
}

/// The border basis of `J` on `O` through degree `up_to`, or the first
/// degree where `J_d ⊕ ⟨O_d⟩ = P_d` fails.
pub fn basis_from_ideal(j: &IdealPresentation, o: Arc<OrderIdeal>, up_to: u32) -> Result<SynthesisReport> {
    basis_from_ideal_with(j, o, up_to, PivotOrder::Canonical)
}

pub fn basis_from_ideal_with(
    j: &IdealPresentation,
    o: Arc<OrderIdeal>,
    up_to: u32,
    order: PivotOrder,
) -> Result<SynthesisReport> {
    require_field(&j.ring, "basis synthesis")?;
    if j.nvars != o.nvars() {
        return Err(Error::DimensionMismatch {
            expected: o.nvars(),
            found: j.nvars,
        });
    }
    if let Some(m) = o.min_border_degree() {
        if up_to < m {
            return Err(Error::Precondition(format!(
                "target degree {up_to} is below the least border degree {m}"
            )));
        }
    }
    let mut dimensions = Vec::new();
    let mut tails = HashMap::new();
    for d in 0..=up_to {
        let rows = multiples_in_degree(&j.generators, j.nvars, d)?;
        let out = eliminate_degree(&j.ring, &o, d, rows, order)?;
        dimensions.push(out.dims);
        match out.tails {
            Ok(ts) => tails.extend(ts),
            Err(defect) => {
                return Ok(SynthesisReport {
                    dimensions,
                    result: Err(SynthesisFailure { degree: d, defect }),
                })
            }
        }
    }
    Ok(SynthesisReport {
        dimensions,
        result: Ok(Prebasis::from_dense(o, j.ring.clone(), up_to, tails)),
    })
}

/// Extends `g` to degree `to` without certifying it first. Each new degree
/// is read off the span of monomial multiples of the supplied elements.
pub(crate) fn extend_unchecked(g: &Prebasis, to: u32) -> Result<Prebasis> {
    if to <= g.max_degree() {
        return Ok(g.clone());
    }
    let o = g.ideal().clone();
    let gens: Vec<Polynomial> = g.heads().iter().map(|s| g.element(s)).collect::<Result<_>>()?;
    let mut tails: HashMap<Term, Vec<Scalar>> = g
        .heads()
        .into_iter()
        .map(|s| (s.clone(), g.tail(&s).unwrap().to_vec()))
        .collect();
    for d in g.max_degree() + 1..=to {
        let rows = multiples_in_degree(&gens, o.nvars(), d)?;
        let out = eliminate_degree(g.ring(), &o, d, rows, PivotOrder::Canonical)?;
        match out.tails {
            Ok(ts) => tails.extend(ts),
            Err(defect) => {
                return Err(Error::Internal(format!(
                    "direct sum fails at degree {d} while extending: {defect:?}"
                )))
            }
        }
    }
    Ok(Prebasis::from_dense(o, g.ring().clone(), to, tails))
}

/// Extends a certified basis to degree `to`.
pub fn extend(g: &Prebasis, to: u32) -> Result<Prebasis> {
    require_field(g.ring(), "extension")?;
    let cert = check_basis(g)?;
    if cert.verdict != Verdict::Basis {
        return Err(Error::Precondition(format!(
            "extension needs a certified basis; the check returned {:?}",
            cert.verdict
        )));
    }
    extend_unchecked(g, to)
}

/// `k_0 = k_1 = k_2 = 1`, `k_i = k_{i-1} + k_{i-3}`.
pub fn k_sequence(len: usize) -> Vec<BigInt> {
    let mut k: Vec<BigInt> = Vec::with_capacity(len);
    for i in 0..len {
        let v = if i < 3 { BigInt::from(1) } else { &k[i - 1] + &k[i - 3] };
        k.push(v);
    }
    k
}

/// Expands both sides of the closed form of `x^d` modulo `x^3 + x^2 y + y^3`
/// in two variables and compares them exactly.
pub fn verify_eq_identity(d: u32) -> Result<bool> {
    if !(4..=EQ_IDENTITY_CAP).contains(&d) {
        return Err(Error::Precondition(format!(
            "degree must lie in [4, {EQ_IDENTITY_CAP}]"
        )));
    }
    let ring = Ring::Rational;
    let k = k_sequence(d as usize);
    let term = |a: u32, b: u32| Term::new(vec![a, b]);
    let signed = |i: u32, v: &BigInt| -> Result<Scalar> {
        let v = if i.is_multiple_of(2) { v.clone() } else { -v.clone() };
        ring.from_rational(&BigRational::from_integer(v))
    };
    let f = Polynomial::from_terms(
        &ring,
        2,
        [
            (term(3, 0)?, ring.one()),
            (term(2, 1)?, ring.one()),
            (term(0, 3)?, ring.one()),
        ],
    )?;
    let mut q = Polynomial::zero(&ring, 2);
    for i in 0..=d - 3 {
        q.add_term(term(d - 3 - i, i)?, signed(i, &k[i as usize])?)?;
    }
    let mut rhs = q.mul(&f)?;
    rhs.add_term(term(1, d - 1)?, signed(d - 3, &k[d as usize - 4])?)?;
    rhs.add_term(term(2, d - 2)?, signed(d - 2, &k[d as usize - 2])?)?;
    rhs.add_term(term(0, d)?, signed(d - 2, &k[d as usize - 3])?)?;
    let lhs = Polynomial::monomial(&ring, term(d, 0)?, ring.one())?;
    Ok(lhs == rhs)
}
