mod common;

use std::sync::Arc;

use bbk_core::*;
use common::*;
use proptest::prelude::*;

fn names(n: usize) -> Vec<String> {
    ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
}

fn q(n: i64) -> Scalar {
    Ring::Rational.from_i64(n)
}

fn term(n: usize, max: u32) -> impl Strategy<Value = Term> {
    proptest::collection::vec(0..=max, n).prop_map(|e| Term::new(e).unwrap())
}

/// Order ideals in two or three variables with up to three complement
/// generators of degree at most four.
fn order_ideal() -> impl Strategy<Value = Arc<OrderIdeal>> {
    (2usize..=3)
        .prop_flat_map(|n| proptest::collection::vec(term(n, 3), 1..=3).prop_map(move |g| (n, g)))
        .prop_filter_map("unit generator", |(n, gens)| {
            let gens: Vec<Term> = gens.into_iter().filter(|t| t.degree() <= 4).collect();
            OrderIdeal::new(names(n), gens).ok().map(Arc::new)
        })
}

fn coeff() -> impl Strategy<Value = i64> {
    prop_oneof![3 => Just(0i64), 2 => -3i64..=3]
}

/// A prebasis through `dmax` with small integer tails.
fn prebasis_on(o: Arc<OrderIdeal>, dmax: u32, seed: &[i64]) -> Prebasis {
    let mut b = Prebasis::builder(o.clone(), Ring::Rational, dmax);
    let mut k = 0;
    for d in 1..=dmax {
        for sigma in o.border_slice(d).iter() {
            for tau in o.slice(d).terms() {
                let c = seed[k % seed.len()];
                k += 1;
                if c != 0 {
                    b = b.coefficient(sigma, tau, q(c)).unwrap();
                }
            }
        }
    }
    b.build_zero_filled().unwrap()
}

fn random_poly(n: usize, d: u32, seed: &[i64]) -> Polynomial {
    let terms = enumerate_degree(n, d);
    Polynomial::from_terms(
        &Ring::Rational,
        n,
        terms.into_iter().zip(seed.iter().cycle()).map(|(t, &c)| (t, q(c))),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn term_arithmetic(a in term(3, 6), b in term(3, 6)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.degree(), a.degree() + b.degree());
        prop_assert_eq!(b.quotient_of(&ab), Some(a.clone()));
        prop_assert!(b.divides(&ab).unwrap());
        let l = a.lcm(&b).unwrap();
        let g = a.gcd(&b).unwrap();
        prop_assert_eq!(l.mul(&g).unwrap(), ab);
        prop_assert_eq!(a.divides(&b).unwrap(), a.quotient_of(&b).is_some());
        prop_assert_eq!(a.cmp(&b), a.degree().cmp(&b.degree()).then_with(|| a.exponents().cmp(b.exponents())));
    }

    #[test]
    fn index_bounds(o in order_ideal(), e in proptest::collection::vec(0u32..=5, 3)) {
        let n = o.nvars();
        let t = Term::new(e[..n].to_vec()).unwrap();
        let k = o.index(&t);
        prop_assert_eq!(k == 0, o.contains(&t));
        prop_assert!(k <= t.degree());
        prop_assert_eq!(k == 1, o.in_border(&t));
        for j in 0..n {
            prop_assert!(o.index(&t.mul_var(j)) <= k + 1);
            prop_assert!(o.index(&t.mul_var(j)) >= k);
        }
    }

    #[test]
    fn strata_partition(o in order_ideal(), d in 0u32..=7) {
        let all = enumerate_degree(o.nvars(), d);
        let slice = o.slice(d);
        let border = o.border_slice(d);
        let mut seen = 0;
        for t in &all {
            let k = o.index(t);
            prop_assert_eq!(slice.position(t).is_some(), k == 0);
            prop_assert_eq!(border.contains(t), k == 1);
            if k <= 1 {
                seen += 1;
            }
        }
        prop_assert_eq!(seen, slice.len() + border.len());
        prop_assert!(slice.terms().windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn hilbert_by_enumeration(o in order_ideal(), d in 0u32..=12) {
        let counted = enumerate_degree(o.nvars(), d).iter().filter(|t| o.contains(t)).count() as u64;
        prop_assert_eq!(o.hilbert(d).unwrap(), counted);
    }

    #[test]
    fn macaulay_bound_and_persistence(o in order_ideal()) {
        let t = o.gotzmann_bound(DEFAULT_GOTZMANN_CAP).unwrap();
        let h = o.hilbert_series(21).unwrap();
        for d in 1..=20u32 {
            let bound = macaulay_transform(h[d as usize], d).unwrap();
            prop_assert!(h[d as usize + 1] <= bound);
            if d >= t {
                prop_assert_eq!(h[d as usize + 1], bound);
            }
        }
    }

    #[test]
    fn macaulay_matches_lex_segments(a in 0u64..=300, d in 1u32..=6) {
        prop_assert_eq!(macaulay_transform(a, d).unwrap(), lex_growth(a, d));
    }

    #[test]
    fn polynomial_text_round_trip(n in 1usize..=3, d in 0u32..=4, seed in proptest::collection::vec(-5i64..=5, 1..12), den in 1i64..=4) {
        let p = random_poly(n, d, &seed)
            .scale(&Ring::Rational.parse(&format!("1/{den}")).unwrap())
            .unwrap();
        let text = p.display_with(&names(n));
        prop_assert_eq!(Polynomial::parse_with(&text, &names(n), &Ring::Rational).unwrap(), p);
    }

    #[test]
    fn reduction_replays_and_is_confluent(
        o in order_ideal(),
        seed in proptest::collection::vec(coeff(), 1..40),
        pseed in proptest::collection::vec(-3i64..=3, 1..20),
        d in 0u32..=5,
        picks in proptest::collection::vec(0usize..100, 1..50),
        desc in any::<bool>(),
    ) {
        let g = prebasis_on(o.clone(), 5, &seed);
        let tie = if desc { TieBreak::LexDesc } else { TieBreak::LexAsc };
        let s = ReductionStructure::new(o.clone(), tie).unwrap();
        let f = random_poly(o.nvars(), d, &pseed);
        let a = g.reduce(&s, &f).unwrap();
        prop_assert!(a.result.support().all(|t| o.contains(t)));
        prop_assert_eq!(a.replay(&g).unwrap(), f.clone());
        let mut i = 0;
        let b = g.reduce_with(&s, &f, |c| { i += 1; picks[i % picks.len()] % c.len() }).unwrap();
        prop_assert_eq!(&b.result, &a.result);
        prop_assert_eq!(b.replay(&g).unwrap(), f);
    }

    #[test]
    fn low_degree_commutators_vanish(o in order_ideal(), seed in proptest::collection::vec(coeff(), 1..40)) {
        prop_assume!(o.min_border_degree().is_some());
        let m = o.min_border_degree().unwrap();
        let g = prebasis_on(o.clone(), m + 1, &seed);
        for d in 0..m.saturating_sub(1) {
            for r in 0..o.nvars() {
                for s in 0..o.nvars() {
                    prop_assert!(commutator(&g, d, r, s).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn disjoint_cones(o in order_ideal(), desc in any::<bool>(), d in 0u32..=7) {
        let tie = if desc { TieBreak::LexDesc } else { TieBreak::LexAsc };
        let s = ReductionStructure::new(o.clone(), tie).unwrap();
        for beta in enumerate_degree(o.nvars(), d) {
            let owners: Vec<Term> = beta
                .divisors()
                .into_iter()
                .filter(|sigma| o.in_border(sigma))
                .filter(|sigma| s.is_multiplicative(&sigma.quotient_of(&beta).unwrap(), sigma).unwrap())
                .collect();
            if o.contains(&beta) {
                prop_assert!(owners.is_empty());
            } else {
                prop_assert_eq!(owners.len(), 1);
                prop_assert_eq!(s.cone_owner(&beta), owners.into_iter().next());
            }
        }
    }

    #[test]
    fn synthesis_independent_of_pivot_order(
        o in order_ideal(),
        seed in proptest::collection::vec(coeff(), 1..30),
    ) {
        let mut k = 0;
        let gens: Vec<Polynomial> = o
            .generators()
            .iter()
            .map(|sigma| {
                let mut p = Polynomial::monomial(&Ring::Rational, sigma.clone(), q(1)).unwrap();
                for tau in o.slice(sigma.degree()).terms() {
                    k += 1;
                    let c = seed[k % seed.len()];
                    if c != 0 {
                        p.add_term(tau.clone(), q(c)).unwrap();
                    }
                }
                p
            })
            .collect();
        let j = IdealPresentation::new(&Ring::Rational, o.nvars(), gens).unwrap();
        let up = o.max_generator_degree() + 1;
        let a = basis_from_ideal_with(&j, o.clone(), up, PivotOrder::Canonical).unwrap();
        let b = basis_from_ideal_with(&j, o.clone(), up, PivotOrder::Reversed).unwrap();
        prop_assert_eq!(&a.dimensions, &b.dimensions);
        match (a.result, b.result) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (Err(x), Err(y)) => prop_assert_eq!(x.degree, y.degree),
            _ => prop_assert!(false, "pivot orders disagree on success"),
        }
    }

    #[test]
    fn bases_reduce_alike_under_every_tie_break(
        a in -3i64..=3,
        b in -3i64..=3,
        pseed in proptest::collection::vec(-3i64..=3, 1..30),
        d in 2u32..=5,
    ) {
        let g = extend(&final_solved(&Ring::Rational, a, b), 5).unwrap();
        let o = g.ideal().clone();
        let f = random_poly(3, d, &pseed);
        let asc = g.reduce(&ReductionStructure::new(o.clone(), TieBreak::LexAsc).unwrap(), &f).unwrap();
        let desc = g.reduce(&ReductionStructure::new(o, TieBreak::LexDesc).unwrap(), &f).unwrap();
        prop_assert_eq!(asc.result, desc.result);
    }

    #[test]
    fn prime_reduction_commutes_with_verdicts(a in -5i64..=5, b in -5i64..=5, bump in -2i64..=2) {
        let g = final_solved(&Ring::Rational, a, b);
        let x2y = Term::new(vec![2, 1, 0]).unwrap();
        let x3 = Term::new(vec![3, 0, 0]).unwrap();
        let old = g.tail(&x2y).unwrap()[0].clone();
        let g = g.with_coefficient(&x2y, &x3, old.checked_add(&q(bump)).unwrap()).unwrap();
        let p = Ring::prime(32003).unwrap();
        let gp = g.map_ring(&p, |c| c.to_prime(32003)).unwrap();
        prop_assert_eq!(check_basis(&g).unwrap().verdict, check_basis(&gp).unwrap().verdict);
    }
}

#[test]
fn g_prime_reduces_alike_under_both_tie_breaks() {
    let g = cones_gprime(&Ring::Rational, 9);
    let o = cones();
    for d in 0..=9 {
        let f = random_poly(2, d, &[1, -2, 3, 0, 1]);
        let a = g
            .reduce(&ReductionStructure::new(o.clone(), TieBreak::LexAsc).unwrap(), &f)
            .unwrap();
        let b = g
            .reduce(&ReductionStructure::new(o.clone(), TieBreak::LexDesc).unwrap(), &f)
            .unwrap();
        assert_eq!(a.result, b.result, "degree {d}");
    }
}
