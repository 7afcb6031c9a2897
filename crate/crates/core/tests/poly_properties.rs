mod common;

use common::{poly, rational};
use divlie_core::{Degree, Monomial, Polynomial};
use proptest::prelude::*;

fn three_polys() -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
    (1usize..=3).prop_flat_map(|n| (poly(n, 4, 5), poly(n, 4, 5), poly(n, 4, 5)))
}

proptest! {
    #[test]
    fn ring_axioms((p, q, r) in three_polys()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Polynomial::one(p.nvars()), p.clone());
    }

    #[test]
    fn degree_of_product((p, q, _r) in three_polys()) {
        let pq = &p * &q;
        match (p.total_degree(), q.total_degree()) {
            (Degree::Finite(a), Degree::Finite(b)) => prop_assert_eq!(pq.total_degree(), Degree::Finite(a + b)),
            _ => prop_assert!(pq.is_zero()),
        }
    }

    #[test]
    fn partials_are_derivations((p, q, _r) in three_polys()) {
        for i in 0..p.nvars() {
            let lhs = (&p * &q).partial(i).unwrap();
            let rhs = &(&p.partial(i).unwrap() * &q) + &(&p * &q.partial(i).unwrap());
            prop_assert_eq!(lhs, rhs);
            for j in 0..p.nvars() {
                prop_assert_eq!(p.partial(i).unwrap().partial(j).unwrap(), p.partial(j).unwrap().partial(i).unwrap());
            }
        }
    }

    #[test]
    fn composition_is_a_homomorphism((p, q, r) in three_polys(), c in rational()) {
        let n = p.nvars();
        let images: Vec<Polynomial> = (0..n).map(|i| &r + &Polynomial::var(n, i).scale(&c)).collect();
        let sub = |x: &Polynomial| x.compose(&images).unwrap();
        prop_assert_eq!(sub(&(&p * &q)), &sub(&p) * &sub(&q));
        prop_assert_eq!(sub(&(&p + &q)), &sub(&p) + &sub(&q));
        let ids: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
        prop_assert_eq!(p.compose(&ids).unwrap(), p.clone());
    }

    #[test]
    fn hmap_scales_monomials((p, _q, _r) in three_polys()) {
        for i in 0..p.nvars() {
            let via_ops = (&p * &Polynomial::var(p.nvars(), i)).partial(i).unwrap();
            prop_assert_eq!(p.hmap(i).unwrap(), via_ops);
        }
    }

    #[test]
    fn json_round_trip((p, _q, _r) in three_polys()) {
        let s = serde_json::to_string(&p).unwrap();
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn swap_is_an_involution((p, q, _r) in three_polys()) {
        let n = p.nvars();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(p.swap_vars(i, j).swap_vars(i, j), p.clone());
                prop_assert_eq!((&p * &q).swap_vars(i, j), &p.swap_vars(i, j) * &q.swap_vars(i, j));
            }
        }
    }
}

#[test]
fn monomial_counts() {
    for n in 1..=4usize {
        for d in 0..=5u32 {
            let expected = (1..=n as u64).fold(1u64, |acc, k| acc * (d as u64 + k) / k);
            assert_eq!(Monomial::all_up_to_degree(n, d).len() as u64, expected);
        }
    }
}
