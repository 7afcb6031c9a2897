use divlie_core::closure::{
    bracket_closure, div0_generators, divc_generators, ideal_closure, module_orbit, span_of,
};
use divlie_core::random::{random_combination, seeded};
use divlie_core::{enumerate_basis, verify_theorem, BasisSpec, Monomial, Polynomial, Theorem, VerifyOptions};

#[test]
fn saturated_closures_are_closed() {
    for n in 2..=3 {
        for d in 1..=4 {
            let c = bracket_closure(&div0_generators(n), d).unwrap();
            assert!(c.saturated);
            assert!(c.is_closed(), "n={n} D={d}");
        }
    }
}

#[test]
fn closure_is_monotone() {
    let n = 2;
    let gens = div0_generators(n);
    for d in 1..=4 {
        let small = bracket_closure(&gens[..2], d).unwrap();
        let big = bracket_closure(&gens, d).unwrap();
        let higher = bracket_closure(&gens, d + 1).unwrap();
        assert!(small.space.is_subspace_of(&big.space));
        assert!(big.space.is_subspace_of(&higher.space));
    }
}

#[test]
fn closure_does_not_depend_on_generator_order() {
    let mut gens = divc_generators(3);
    let a = bracket_closure(&gens, 3).unwrap();
    gens.reverse();
    let b = bracket_closure(&gens, 3).unwrap();
    assert!(a.space.same_span(&b.space));
}

#[test]
fn ideals_of_random_elements_are_everything() {
    let amb = BasisSpec::div0(2, 3);
    let basis = enumerate_basis(&amb);
    let all = span_of(2, &basis);
    let mut rng = seeded(11);
    for _ in 0..5 {
        let a = random_combination(&mut rng, &basis, 3);
        if a.is_zero() {
            continue;
        }
        let c = ideal_closure(&a, &amb).unwrap();
        assert!(c.space.same_span(&all), "ideal of {a}");
    }
}

#[test]
fn orbit_of_any_monomial_is_full() {
    let basis = enumerate_basis(&BasisSpec::div0(3, 3));
    let full = Monomial::all_up_to_degree(3, 3).len() - 1;
    for m in Monomial::all_up_to_degree(3, 3).into_iter().filter(|m| m.degree() > 0) {
        let p = Polynomial::monomial(3, m, divlie_core::Rational::from_integer(1.into()));
        assert_eq!(module_orbit(&basis, &p, 3).unwrap().dim(), full, "seed {p}");
    }
}

#[test]
fn reports_are_deterministic() {
    let opts = VerifyOptions { seed: 5, trials: 4, samples: 3 };
    for t in [Theorem::Simplicity, Theorem::Equivariance, Theorem::ModuleSimple] {
        let a = verify_theorem(t, 2, 3, &opts).unwrap().to_json();
        let b = verify_theorem(t, 2, 3, &opts).unwrap().to_json();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
