#![allow(dead_code)]

use std::sync::Arc;

use bbk_core::{OrderIdeal, Prebasis, Ring, Scalar, Term};

pub fn t(e: &[u32]) -> Term {
    Term::new(e.to_vec()).unwrap()
}

pub fn ideal(names: &[&str], gens: &[&[u32]]) -> Arc<OrderIdeal> {
    Arc::new(OrderIdeal::new(names.iter().copied(), gens.iter().map(|e| t(e)).collect()).unwrap())
}

pub fn xy() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

pub fn cones() -> Arc<OrderIdeal> {
    ideal(&["x", "y"], &[&[0, 4], &[1, 3], &[3, 2]])
}

pub fn drawback() -> Arc<OrderIdeal> {
    ideal(&["x", "y"], &[&[3, 1], &[0, 3]])
}

pub fn noeth() -> Arc<OrderIdeal> {
    ideal(&["x", "y"], &[&[3, 1], &[1, 2], &[0, 4]])
}

pub fn groebner_ext() -> Arc<OrderIdeal> {
    ideal(&["x", "y"], &[&[2, 1]])
}

pub fn final_o() -> Arc<OrderIdeal> {
    ideal(&["x", "y", "z"], &[&[1, 1, 0], &[1, 0, 1]])
}

pub fn counterexample() -> Arc<OrderIdeal> {
    ideal(&["x", "y"], &[&[0, 2]])
}

pub fn golden() -> Vec<(&'static str, Arc<OrderIdeal>)> {
    vec![
        ("cones", cones()),
        ("drawback", drawback()),
        ("noeth", noeth()),
        ("groebner_ext", groebner_ext()),
        ("final", final_o()),
        ("counterexample", counterexample()),
    ]
}

/// `y^4, xy^3, x^2y^3 + x^5, x^3y^2 + x^5` and `x^k y^2` for `k ≥ 4`.
pub fn cones_g(ring: &Ring, dmax: u32) -> Prebasis {
    let one = ring.one();
    let mut b = Prebasis::builder(cones(), ring.clone(), dmax);
    if dmax >= 5 {
        b = b
            .element(&t(&[2, 3]), &[(t(&[5, 0]), one.clone())])
            .unwrap()
            .element(&t(&[3, 2]), &[(t(&[5, 0]), one)])
            .unwrap();
    }
    b.build_zero_filled().unwrap()
}

/// The basis `G'`: `y^4 + x^3y`, `xy^3 + x^4`, `x^2y^3 + x^5`,
/// `x^3y^2 + x^5 - x^4y` and `x^k y^2 - x^{k+1} y + x^{k+2}` for `k ≥ 4`.
pub fn cones_gprime(ring: &Ring, dmax: u32) -> Prebasis {
    let one = ring.one();
    let m1 = ring.from_i64(-1);
    let mut b = Prebasis::builder(cones(), ring.clone(), dmax)
        .element(&t(&[0, 4]), &[(t(&[3, 1]), one.clone())])
        .unwrap()
        .element(&t(&[1, 3]), &[(t(&[4, 0]), one.clone())])
        .unwrap();
    if dmax >= 5 {
        b = b
            .element(&t(&[2, 3]), &[(t(&[5, 0]), one.clone())])
            .unwrap()
            .element(&t(&[3, 2]), &[(t(&[5, 0]), one.clone()), (t(&[4, 1]), m1.clone())])
            .unwrap();
    }
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

/// Heads of the final example in the order of the parameter index `j`.
pub fn final_heads(i: u32) -> Vec<Term> {
    match i {
        2 => vec![t(&[1, 1, 0]), t(&[1, 0, 1])],
        3 => vec![
            t(&[2, 1, 0]),
            t(&[2, 0, 1]),
            t(&[1, 2, 0]),
            t(&[1, 0, 2]),
            t(&[1, 1, 1]),
        ],
        _ => panic!("no parameters in degree {i}"),
    }
}

pub fn final_param_names() -> Vec<String> {
    let mut names = Vec::new();
    for (i, nj, nk) in [(2u32, 2usize, 4usize), (3, 5, 5)] {
        for j in 1..=nj {
            for k in 1..=nk {
                names.push(format!("c_{{{i},{j},{k}}}"));
            }
        }
    }
    names
}

/// The final example with `g_σ = σ + value(i, j, k) τ_k`, so the stored
/// coefficient is `-value`.
pub fn final_prebasis(ring: &Ring, value: impl Fn(u32, usize, usize) -> Scalar) -> Prebasis {
    let o = final_o();
    let mut b = Prebasis::builder(o.clone(), ring.clone(), 3);
    for i in [2u32, 3] {
        let slice = o.slice(i);
        for (j, sigma) in final_heads(i).iter().enumerate() {
            for (k, tau) in slice.terms().iter().enumerate() {
                b = b.coefficient(sigma, tau, value(i, j + 1, k + 1).neg_ref()).unwrap();
            }
        }
    }
    b.build().unwrap()
}

pub fn final_ring() -> Ring {
    Ring::parametric(final_param_names()).unwrap()
}

pub fn final_generic() -> Prebasis {
    let ring = final_ring();
    final_prebasis(&ring, |i, j, k| ring.param(&format!("c_{{{i},{j},{k}}}")).unwrap())
}

/// The solved family in terms of `a = c_{2,2,3}` and `b = c_{2,2,4}`.
pub fn final_family(i: u32, j: usize, k: usize, a: i64, b: i64) -> i64 {
    let rows: Vec<[i64; 5]> = match i {
        2 => vec![[0, a, b, 0, 0], [0, 0, a, b, 0]],
        3 => vec![
            [0, -a * a, -2 * a * b, -b * b, 0],
            [0, 0, -a * a, -2 * a * b, -b * b],
            [0, a, b, 0, 0],
            [0, 0, 0, a, b],
            [0, 0, a, b, 0],
        ],
        _ => unreachable!(),
    };
    rows[j - 1][k - 1]
}

pub fn final_solved(ring: &Ring, a: i64, b: i64) -> Prebasis {
    final_prebasis(ring, |i, j, k| ring.from_i64(final_family(i, j, k, a, b)))
}

/// Largest possible `h_{d+1}` after `h_d = a`, read off a lex segment: the
/// ideal spanned by the first `N - a` degree `d` terms in lex order grows to
/// degree `d + 1`, and the complement is counted. Enough variables are used
/// that `a ≤ N`.
pub fn lex_growth(a: u64, d: u32) -> u64 {
    let count = |n: usize, d: u32| bbk_core::monomial::binomial(n as u64 - 1 + d as u64, d as u64).unwrap();
    let mut n = 1usize;
    while count(n, d) < a {
        n += 1;
    }
    fn lex(n: usize, d: u32) -> Vec<Vec<u32>> {
        if n == 1 {
            return vec![vec![d]];
        }
        let mut out = Vec::new();
        for e in (0..=d).rev() {
            for mut rest in lex(n - 1, d - e) {
                rest.insert(0, e);
                out.push(rest);
            }
        }
        out
    }
    let seg = lex(n, d);
    let mut grown = std::collections::BTreeSet::new();
    for m in seg.iter().take((count(n, d) - a) as usize) {
        for i in 0..n {
            let mut up = m.clone();
            up[i] += 1;
            grown.insert(up);
        }
    }
    count(n, d + 1) - grown.len() as u64
}
