use divlie_core::closure::span_of;
use divlie_core::linspan::{divc_oracle, divkernel_oracle, graded_component};
use divlie_core::{enumerate_basis, BasisSpec, Derivation, DivClass, Rational};

#[test]
fn basis_matches_divergence_kernel() {
    for n in 1..=3 {
        for d in 0..=5 {
            let b = enumerate_basis(&BasisSpec::div0(n, d));
            let s = span_of(n, &b);
            let oracle = divkernel_oracle(n, d);
            assert_eq!(s.dim(), b.len(), "independence n={n} D={d}");
            assert_eq!(s.dim(), oracle.dim(), "dimension n={n} D={d}");
            assert!(oracle.contains_all(&b), "basis inside kernel n={n} D={d}");
            assert!(s.contains_all(&oracle.rows()), "kernel inside basis span n={n} D={d}");

            let c = enumerate_basis(&BasisSpec::divc(n, d));
            let sc = span_of(n, &c);
            assert_eq!(sc.dim(), s.dim() + 1);
            assert!(sc.same_span(&divc_oracle(n, d)));
        }
    }
}

#[test]
fn known_dimensions() {
    assert_eq!(divkernel_oracle(2, 1).dim(), 5);
    assert_eq!(divkernel_oracle(2, 2).dim(), 9);
    assert_eq!(enumerate_basis(&BasisSpec::div0(3, 4)).len(), 85);
}

#[test]
fn basis_classification() {
    for n in 1..=3 {
        for b in enumerate_basis(&BasisSpec::div0(n, 4)) {
            assert_eq!(b.classify(), DivClass::Zero, "{b}");
        }
        let h1 = Derivation::euler(n, 0).unwrap();
        assert_eq!(h1.classify(), DivClass::Constant(Rational::from_integer(1.into())));
    }
}

#[test]
fn graded_pieces_bracket_into_lower_piece() {
    for n in 2..=3 {
        let s = span_of(n, &enumerate_basis(&BasisSpec::div0(n, 4)));
        let pieces: Vec<_> = (0..=4).map(|k| graded_component(&s, k)).collect();
        for p in 0..=2usize {
            for q in 0..=2usize {
                let target = &pieces[p + q - (p + q).min(1)];
                for a in pieces[p].rows() {
                    for b in pieces[q].rows() {
                        let c = a.bracket(&b).unwrap();
                        if p + q == 0 {
                            assert!(c.is_zero());
                        } else {
                            assert!(target.contains(&c).is_some(), "[{a}, {b}] = {c}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn homogeneous_dimensions_for_two_variables() {
    let s = span_of(2, &enumerate_basis(&BasisSpec::div0(2, 5)));
    for k in 0..=5 {
        assert_eq!(graded_component(&s, k).dim(), k as usize + 2);
    }
}
