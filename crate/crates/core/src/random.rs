//! Seeded random inputs for property checks and sampling-based verification.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::autos::{matrix_det, Automorphism, ElementaryMap};
use crate::poly::{Monomial, Polynomial, Rational};
use crate::vecfield::Derivation;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero rational with small numerator and denominator.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let mut num: i64 = rng.gen_range(-5..=4);
    if num >= 0 {
        num += 1;
    }
    let den: i64 = if rng.gen_bool(0.7) { 1 } else { rng.gen_range(2..=3) };
    Rational::new(num.into(), den.into())
}

pub fn random_monomial<R: Rng>(rng: &mut R, n: usize, max_deg: u32) -> Monomial {
    let d = rng.gen_range(0..=max_deg);
    let mut e = vec![0u32; n];
    for _ in 0..d {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial::new(e)
}

/// Up to `max_terms` terms of degree `≤ max_deg`; may be zero.
pub fn random_poly<R: Rng>(rng: &mut R, n: usize, max_deg: u32, max_terms: usize) -> Polynomial {
    let k = rng.gen_range(0..=max_terms);
    let mut p = Polynomial::zero(n);
    for _ in 0..k {
        p.add_term(random_monomial(rng, n, max_deg), small_rational(rng));
    }
    p
}

/// Like [`random_poly`] but never uses the variable `skip`.
pub fn random_poly_without<R: Rng>(
    rng: &mut R,
    n: usize,
    skip: usize,
    max_deg: u32,
    max_terms: usize,
) -> Polynomial {
    let others: Vec<usize> = (0..n).filter(|&i| i != skip).collect();
    let k = rng.gen_range(1..=max_terms.max(1));
    let mut p = Polynomial::zero(n);
    if others.is_empty() {
        p.add_term(Monomial::one(n), small_rational(rng));
        return p;
    }
    for _ in 0..k {
        let d = rng.gen_range(0..=max_deg);
        let mut e = vec![0u32; n];
        for _ in 0..d {
            e[*others.choose(rng).expect("nonempty")] += 1;
        }
        p.add_term(Monomial::new(e), small_rational(rng));
    }
    p
}

pub fn random_derivation<R: Rng>(
    rng: &mut R,
    n: usize,
    max_deg: u32,
    max_terms: usize,
) -> Derivation {
    let coeffs = (0..n).map(|_| random_poly(rng, n, max_deg, max_terms)).collect();
    Derivation::new(coeffs).expect("shared n")
}

/// Random combination of up to `max_terms` elements of `basis`.
pub fn random_combination<R: Rng>(rng: &mut R, basis: &[Derivation], max_terms: usize) -> Derivation {
    let n = basis.first().map(Derivation::nvars).unwrap_or(1);
    let k = rng.gen_range(1..=max_terms.max(1));
    let mut d = Derivation::zero(n);
    for _ in 0..k {
        let b = basis.choose(rng).expect("nonempty basis");
        d = &d + &b.scale(&small_rational(rng));
    }
    d
}

/// Random invertible affine map with small integer entries.
pub fn random_affine<R: Rng>(rng: &mut R, n: usize) -> ElementaryMap {
    loop {
        let a: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n).map(|_| Rational::from_integer(rng.gen_range(-2i64..=2).into())).collect())
            .collect();
        if matrix_det(&a) == Rational::from_integer(0.into()) {
            continue;
        }
        let b = (0..n)
            .map(|_| Rational::from_integer(rng.gen_range(-2i64..=2).into()))
            .collect();
        return ElementaryMap::affine(a, b).expect("nonsingular");
    }
}

pub fn random_triangular<R: Rng>(rng: &mut R, n: usize, max_deg: u32) -> ElementaryMap {
    let i = rng.gen_range(0..n);
    let f = random_poly_without(rng, n, i, max_deg, 2);
    ElementaryMap::triangular(i, f).expect("f avoids x_i")
}

/// Random tame word of length `≤ max_len`.
///
/// Triangular factors have degree `≤ max_deg`, and the product of their
/// degrees stays within `degree_budget`, which bounds the degree of the
/// resulting substitutions.
pub fn random_tame<R: Rng>(
    rng: &mut R,
    n: usize,
    max_len: usize,
    max_deg: u32,
    degree_budget: u32,
) -> Automorphism {
    let len = rng.gen_range(1..=max_len.max(1));
    let mut used = 1u32;
    let mut word = Vec::with_capacity(len);
    for _ in 0..len {
        let room = (degree_budget / used).min(max_deg);
        if rng.gen_bool(0.35) || room < 1 {
            word.push(random_affine(rng, n));
        } else {
            let e = random_triangular(rng, n, room);
            used *= e.degree();
            word.push(e);
        }
    }
    Automorphism::from_word(n, word).expect("shared n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_seed() {
        let a = random_derivation(&mut seeded(7), 3, 4, 3);
        let b = random_derivation(&mut seeded(7), 3, 4, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn tame_words_respect_budget() {
        let mut rng = seeded(1);
        for _ in 0..50 {
            let s = random_tame(&mut rng, 3, 4, 3, 4);
            let tri: u32 = s
                .word()
                .iter()
                .filter(|e| matches!(e, ElementaryMap::Triangular { .. }))
                .map(|e| e.degree())
                .product();
            assert!(tri <= 4);
            assert!(s.is_consistent());
        }
    }
}
