//! Benchmark workloads.

use std::sync::Arc;

use bbk_core::*;

fn t(e: &[u32]) -> Term {
    Term::new(e.to_vec()).unwrap()
}

pub fn cones() -> Arc<OrderIdeal> {
    Arc::new(OrderIdeal::new(["x", "y"], vec![t(&[0, 4]), t(&[1, 3]), t(&[3, 2])]).unwrap())
}

pub fn final_o() -> Arc<OrderIdeal> {
    Arc::new(OrderIdeal::new(["x", "y", "z"], vec![t(&[1, 1, 0]), t(&[1, 0, 1])]).unwrap())
}

/// Staircase in `n` variables cut out by `x_0 x_i` for `i ≥ 1`.
pub fn staircase(n: usize) -> Arc<OrderIdeal> {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let gens = (1..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[0] = 1;
            e[i] = 1;
            Term::new(e).unwrap()
        })
        .collect();
    Arc::new(OrderIdeal::new(names, gens).unwrap())
}

/// The basis `y^4 + x^3y, xy^3 + x^4, x^2y^3 + x^5, x^3y^2 + x^5 - x^4y,
/// x^ky^2 - x^{k+1}y + x^{k+2}` through `dmax`.
pub fn cones_basis(dmax: u32) -> Prebasis {
    let q = Ring::Rational;
    let one = q.one();
    let m1 = q.from_i64(-1);
    let mut b = Prebasis::builder(cones(), q, dmax)
        .element(&t(&[0, 4]), &[(t(&[3, 1]), one.clone())])
        .unwrap()
        .element(&t(&[1, 3]), &[(t(&[4, 0]), one.clone())])
        .unwrap()
        .element(&t(&[2, 3]), &[(t(&[5, 0]), one.clone())])
        .unwrap()
        .element(&t(&[3, 2]), &[(t(&[5, 0]), one.clone()), (t(&[4, 1]), m1.clone())])
        .unwrap();
    for k in 4..=dmax.saturating_sub(2) {
        b = b
            .element(
                &t(&[k, 2]),
                &[(t(&[k + 1, 1]), m1.clone()), (t(&[k + 2, 0]), one.clone())],
            )
            .unwrap();
    }
    b.build().unwrap()
}

fn final_names() -> Vec<String> {
    let mut names = Vec::new();
    for (i, nj, nk) in [(2, 2, 4), (3, 5, 5)] {
        for j in 1..=nj {
            for k in 1..=nk {
                names.push(format!("c_{{{i},{j},{k}}}"));
            }
        }
    }
    names
}

/// The three variable example with one parameter per tail coefficient.
pub fn final_generic() -> Prebasis {
    let ring = Ring::parametric(final_names()).unwrap();
    let o = final_o();
    let mut b = Prebasis::builder(o.clone(), ring.clone(), 3);
    let heads = [
        vec![t(&[1, 1, 0]), t(&[1, 0, 1])],
        vec![
            t(&[2, 1, 0]),
            t(&[2, 0, 1]),
            t(&[1, 2, 0]),
            t(&[1, 0, 2]),
            t(&[1, 1, 1]),
        ],
    ];
    for (i, hs) in [2u32, 3].into_iter().zip(heads) {
        let slice = o.slice(i);
        for (j, sigma) in hs.iter().enumerate() {
            for (k, tau) in slice.terms().iter().enumerate() {
                let c = ring.param(&format!("c_{{{i},{},{}}}", j + 1, k + 1)).unwrap();
                b = b.coefficient(sigma, tau, c.neg_ref()).unwrap();
            }
        }
    }
    b.build().unwrap()
}

/// `J = (x^3 + x^2y + y^3)` with `O = T \ (x^2y)`.
pub fn cubic_ideal() -> (IdealPresentation, Arc<OrderIdeal>) {
    let names = vec!["x".to_string(), "y".to_string()];
    let f = Polynomial::parse_with("x^3 + x^2*y + y^3", &names, &Ring::Rational).unwrap();
    let o = Arc::new(OrderIdeal::new(names, vec![t(&[2, 1])]).unwrap());
    (IdealPresentation::new(&Ring::Rational, 2, vec![f]).unwrap(), o)
}

/// Sum of all degree `d` terms in two variables.
pub fn dense_binary(d: u32) -> Polynomial {
    Polynomial::from_terms(
        &Ring::Rational,
        2,
        enumerate_degree(2, d).into_iter().map(|m| (m, Ring::Rational.one())),
    )
    .unwrap()
}
