//! Graded formal multiplication matrices, commutators and the effective
//! basis check.

use crate::error::{Error, Result};
use crate::exactmath::{ExactMatrix, Ring, Scalar};
use crate::monomial::Term;
use crate::orderideal::DEFAULT_GOTZMANN_CAP;
use crate::polynomial::Polynomial;
use crate::prebasis::Prebasis;
use crate::synthesis::extend_unchecked;

/// The matrices `Χ_r^{(d)}` for every variable `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFamily {
    pub degree: u32,
    /// `O_d` in canonical order.
    pub columns: Vec<Term>,
    /// `O_{d+1}` in canonical order.
    pub rows: Vec<Term>,
    pub matrices: Vec<ExactMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Basis,
    NotBasis,
    Indeterminate,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Basis => "basis",
            Verdict::NotBasis => "not-basis",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

/// Evidence for a `NotBasis` verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A nonzero entry of `Χ_r^{(d+1)}Χ_s^{(d)} - Χ_s^{(d+1)}Χ_r^{(d)}`.
    Commutator {
        degree: u32,
        r: usize,
        s: usize,
        row: usize,
        col: usize,
        entry: Scalar,
    },
    /// A supplied element above degree `t+1` that disagrees with the
    /// extension of the certified part.
    Extension {
        head: Term,
        supplied: Polynomial,
        expected: Polynomial,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCertificate {
    pub verdict: Verdict,
    pub gotzmann_t: u32,
    /// Degrees `d` whose commutators were examined.
    pub checked: Vec<u32>,
    /// Least `D_max` the decision needs, `t + 1`.
    pub required_degree: u32,
    pub witness: Option<Witness>,
}

fn check_var(g: &Prebasis, r: usize) -> Result<()> {
    if r >= g.ideal().nvars() {
        return Err(Error::Precondition(format!(
            "variable index {r} out of range for {} variables",
            g.ideal().nvars()
        )));
    }
    Ok(())
}

/// `Χ_r^{(d)}`, shape `|O_{d+1}| × |O_d|`.
pub fn multiplication_matrix(g: &Prebasis, r: usize, d: u32) -> Result<ExactMatrix> {
    check_var(g, r)?;
    let o = g.ideal();
    let cols = o.slice(d);
    let rows = o.slice(d + 1);
    let ring = g.ring();
    let mut m = ExactMatrix::zeros(ring, rows.len(), cols.len());
    for (l, tau) in cols.terms().iter().enumerate() {
        let prod = tau.mul_var(r);
        if let Some(k) = rows.position(&prod) {
            m.set(k, l, ring.one());
        } else {
            for (k, c) in g.tail(&prod)?.iter().enumerate() {
                m.set(k, l, c.clone());
            }
        }
    }
    Ok(m)
}

pub fn build_matrices(g: &Prebasis, d: u32) -> Result<MatrixFamily> {
    let matrices = (0..g.ideal().nvars())
        .map(|r| multiplication_matrix(g, r, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(MatrixFamily {
        degree: d,
        columns: g.ideal().slice(d).terms().to_vec(),
        rows: g.ideal().slice(d + 1).terms().to_vec(),
        matrices,
    })
}

/// `Χ_r^{(d+1)}Χ_s^{(d)} - Χ_s^{(d+1)}Χ_r^{(d)}`, shape `|O_{d+2}| × |O_d|`.
pub fn commutator(g: &Prebasis, d: u32, r: usize, s: usize) -> Result<ExactMatrix> {
    let a = multiplication_matrix(g, r, d + 1)?.mul(&multiplication_matrix(g, s, d)?)?;
    let b = multiplication_matrix(g, s, d + 1)?.mul(&multiplication_matrix(g, r, d)?)?;
    a.sub(&b)
}

/// Degrees `d` with `mindeg(∂O) - 1 ≤ d ≤ t - 1`.
fn window(g: &Prebasis, t: u32) -> Vec<u32> {
    match g.ideal().min_border_degree() {
        Some(m) => (m.saturating_sub(1)..t).collect(),
        None => Vec::new(),
    }
}

pub fn check_basis(g: &Prebasis) -> Result<BasisCertificate> {
    check_basis_with_cap(g, DEFAULT_GOTZMANN_CAP)
}

/// Decides whether `g` is a border basis through commutators of degrees
/// `mindeg(∂O)-1 .. t-1` with `t` the Gotzmann bound of `O`.
pub fn check_basis_with_cap(g: &Prebasis, cap: u32) -> Result<BasisCertificate> {
    if !g.ring().is_field() {
        return Err(Error::UnsupportedRing {
            op: "basis check (use parametric conditions)",
            ring: g.ring().to_string(),
        });
    }
    let t = g.ideal().gotzmann_bound(cap)?;
    let mut cert = BasisCertificate {
        verdict: Verdict::Basis,
        gotzmann_t: t,
        checked: Vec::new(),
        required_degree: t + 1,
        witness: None,
    };
    if g.ideal().min_border_degree().is_none() {
        return Ok(cert);
    }
    if g.max_degree() < t + 1 {
        cert.verdict = Verdict::Indeterminate;
        return Ok(cert);
    }
    let n = g.ideal().nvars();
    for d in window(g, t) {
        cert.checked.push(d);
        for r in 0..n {
            for s in r + 1..n {
                let c = commutator(g, d, r, s)?;
                let first = c.nonzero_entries().next().map(|(row, col, e)| (row, col, e.clone()));
                if let Some((row, col, entry)) = first {
                    cert.verdict = Verdict::NotBasis;
                    cert.witness = Some(Witness::Commutator {
                        degree: d,
                        r,
                        s,
                        row,
                        col,
                        entry,
                    });
                    return Ok(cert);
                }
            }
        }
    }
    if g.max_degree() > t + 1 {
        let ext = extend_unchecked(&g.truncate(t + 1), g.max_degree())?;
        for sigma in g.heads().into_iter().filter(|s| s.degree() > t + 1) {
            if g.tail(&sigma)? != ext.tail(&sigma)? {
                cert.verdict = Verdict::NotBasis;
                cert.witness = Some(Witness::Extension {
                    supplied: g.element(&sigma)?,
                    expected: ext.element(&sigma)?,
                    head: sigma,
                });
                return Ok(cert);
            }
        }
    }
    Ok(cert)
}

pub fn parametric_conditions(g: &Prebasis) -> Result<Vec<Scalar>> {
    parametric_conditions_with_cap(g, DEFAULT_GOTZMANN_CAP)
}

/// Distinct nonzero commutator entries over the window, each made monic
/// in its greatest parameter monomial, in order of discovery.
pub fn parametric_conditions_with_cap(g: &Prebasis, cap: u32) -> Result<Vec<Scalar>> {
    if !matches!(g.ring(), Ring::Parametric(_)) {
        return Err(Error::UnsupportedRing {
            op: "parametric conditions",
            ring: g.ring().to_string(),
        });
    }
    let t = g.ideal().gotzmann_bound(cap)?;
    if g.ideal().min_border_degree().is_some() && g.max_degree() < t + 1 {
        return Err(Error::InsufficientDegree {
            needed: t + 1,
            available: g.max_degree(),
        });
    }
    let n = g.ideal().nvars();
    let mut out: Vec<Scalar> = Vec::new();
    for d in window(g, t) {
        for r in 0..n {
            for s in r + 1..n {
                for (_, _, e) in commutator(g, d, r, s)?.nonzero_entries() {
                    let p = Scalar::Param(e.as_param().expect("parametric entry").normalized());
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orderideal::OrderIdeal;
    use std::sync::Arc;

    fn t(e: &[u32]) -> Term {
        Term::new(e.to_vec()).unwrap()
    }

    fn cones() -> Arc<OrderIdeal> {
        Arc::new(OrderIdeal::new(["x", "y"], vec![t(&[0, 4]), t(&[1, 3]), t(&[3, 2])]).unwrap())
    }

    fn cones_g(dmax: u32) -> Prebasis {
        let q = Ring::Rational;
        Prebasis::builder(cones(), q.clone(), dmax)
            .element(&t(&[2, 3]), &[(t(&[5, 0]), q.one())])
            .unwrap()
            .element(&t(&[3, 2]), &[(t(&[5, 0]), q.one())])
            .unwrap()
            .build_zero_filled()
            .unwrap()
    }

    fn mat(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_i64(&Ring::Rational, rows)
    }

    #[test]
    fn matrices_of_g() {
        let g = cones_g(6);
        assert_eq!(
            multiplication_matrix(&g, 0, 4).unwrap(),
            mat(&[&[1, 0, -1], &[0, 1, 0]])
        );
        assert_eq!(
            multiplication_matrix(&g, 1, 3).unwrap(),
            mat(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0]])
        );
        assert_eq!(commutator(&g, 3, 0, 1).unwrap(), mat(&[&[0, 0, 1, 0], &[0, 0, 0, 0]]));
        assert!(commutator(&g, 3, 1, 1).unwrap().is_zero());
    }

    #[test]
    fn verdicts() {
        let c = check_basis(&cones_g(6)).unwrap();
        assert_eq!(c.verdict, Verdict::NotBasis);
        assert_eq!(c.gotzmann_t, 5);
        assert!(matches!(
            c.witness,
            Some(Witness::Commutator {
                degree: 3,
                r: 0,
                s: 1,
                ..
            })
        ));
        assert_eq!(check_basis(&cones_g(5)).unwrap().verdict, Verdict::Indeterminate);
        let m = Prebasis::monomial(cones(), Ring::Rational, 8).unwrap();
        let c = check_basis(&m).unwrap();
        assert_eq!(c.verdict, Verdict::Basis);
        assert_eq!(c.checked, vec![3, 4]);
    }

    #[test]
    fn insufficient_degree_for_matrices() {
        let g = cones_g(6).truncate(4);
        assert!(matches!(
            multiplication_matrix(&g, 0, 4),
            Err(Error::InsufficientDegree { needed: 5, .. })
        ));
    }

    #[test]
    fn bad_extension_detected() {
        let m = Prebasis::monomial(cones(), Ring::Rational, 8).unwrap();
        let bad = m
            .with_coefficient(&t(&[6, 2]), &t(&[8, 0]), Ring::Rational.one())
            .unwrap();
        let c = check_basis(&bad).unwrap();
        assert_eq!(c.verdict, Verdict::NotBasis);
        assert!(matches!(c.witness, Some(Witness::Extension { .. })));
    }

    #[test]
    fn rings_checked() {
        let p = Ring::parametric(["a"]).unwrap();
        let g = Prebasis::monomial(cones(), p, 6).unwrap();
        assert!(matches!(check_basis(&g), Err(Error::UnsupportedRing { .. })));
        assert!(parametric_conditions(&g).unwrap().is_empty());
        assert!(parametric_conditions(&cones_g(6)).is_err());
    }
}
