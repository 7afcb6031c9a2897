mod common;

use common::{derivation, triple_and_poly};
use divlie_core::{Derivation, Monomial, Rational, WeightClass};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bracket_matches_operator_commutator((d, e, _f, p) in triple_and_poly(4)) {
        let b = d.bracket(&e).unwrap();
        let lhs = b.apply(&p).unwrap();
        let rhs = &d.apply(&e.apply(&p).unwrap()).unwrap() - &e.apply(&d.apply(&p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_a_lie_bracket((d, e, f, _p) in triple_and_poly(3)) {
        prop_assert_eq!(d.bracket(&e).unwrap(), -&e.bracket(&d).unwrap());
        let jacobi = &(&d.bracket(&e.bracket(&f).unwrap()).unwrap() + &e.bracket(&f.bracket(&d).unwrap()).unwrap())
            + &f.bracket(&d.bracket(&e).unwrap()).unwrap();
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn divergence_of_multiple((d, _e, _f, p) in triple_and_poly(4)) {
        let lhs = d.mul_poly(&p).unwrap().divergence();
        let rhs = &(&p * &d.divergence()) + &d.apply(&p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn divergence_of_bracket((d, e, _f, _p) in triple_and_poly(4)) {
        let lhs = d.bracket(&e).unwrap().divergence();
        let rhs = &d.apply(&e.divergence()).unwrap() - &e.apply(&d.divergence()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn apply_is_a_derivation((d, _e, f, p) in triple_and_poly(3)) {
        let q = f.coeff(0).clone();
        let lhs = d.apply(&(&p * &q)).unwrap();
        let rhs = &(&d.apply(&p).unwrap() * &q) + &(&p * &d.apply(&q).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weight_decomposition_reconstructs(d in (1usize..=3).prop_flat_map(|n| derivation(n, 4, 4))) {
        let n = d.nvars();
        let parts = d.decompose_weights();
        let sum = parts.values().fold(Derivation::zero(n), |acc, x| &acc + x);
        prop_assert_eq!(sum, d.clone());
        for (w, part) in &parts {
            prop_assert_eq!(part.weight_of().unwrap(), w.clone());
            prop_assert!(part.is_weight_vector_of(w));
        }
    }

    #[test]
    fn swap_is_a_lie_automorphism((d, e, _f, _p) in triple_and_poly(3)) {
        let n = d.nvars();
        for i in 0..n {
            for j in 0..n {
                let lhs = d.bracket(&e).unwrap().swap_vars(i, j).unwrap();
                let rhs = d.swap_vars(i, j).unwrap().bracket(&e.swap_vars(i, j).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
                prop_assert_eq!(d.swap_vars(i, j).unwrap().divergence(), d.divergence().swap_vars(i, j));
            }
        }
    }
}

#[test]
fn weights_add_under_bracket() {
    let n = 3;
    let monos = Monomial::all_up_to_degree(n, 3);
    for a in &monos {
        for b in &monos {
            for i in 0..n {
                for j in 0..n {
                    let x = Derivation::monomial(n, a.clone(), i, Rational::from_integer(1.into()));
                    let y = Derivation::monomial(n, b.clone(), j, Rational::from_integer(1.into()));
                    let br = x.bracket(&y).unwrap();
                    if br.is_zero() {
                        continue;
                    }
                    let wx = WeightClass::of_term(a, i);
                    let wy = WeightClass::of_term(b, j);
                    let sum: Vec<i64> = wx.rep().iter().zip(wy.rep()).map(|(p, q)| p + q).collect();
                    assert_eq!(br.weight_of().unwrap(), WeightClass::from_vector(&sum));
                }
            }
        }
    }
}
