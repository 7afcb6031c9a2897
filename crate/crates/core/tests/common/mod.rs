#![allow(dead_code)]

use divlie_core::{Derivation, Monomial, Polynomial, Rational};
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

pub fn poly(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), rational()), 0..=max_terms).prop_map(
        move |terms| {
            let terms = terms
                .into_iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= max_deg)
                .map(|(e, c)| (Monomial::new(e), c));
            Polynomial::from_terms(n, terms).unwrap()
        },
    )
}

pub fn derivation(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Derivation> {
    prop::collection::vec(poly(n, max_deg, max_terms), n).prop_map(|cs| Derivation::new(cs).unwrap())
}

/// `n` in `1..=3` with three derivations and a polynomial in `n` variables.
pub fn triple_and_poly(max_deg: u32) -> impl Strategy<Value = (Derivation, Derivation, Derivation, Polynomial)> {
    (1usize..=3).prop_flat_map(move |n| {
        (
            derivation(n, max_deg, 3),
            derivation(n, max_deg, 3),
            derivation(n, max_deg, 3),
            poly(n, max_deg, 4),
        )
    })
}
