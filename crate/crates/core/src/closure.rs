//! Degree-truncated closures: the subalgebra generated by a set, the ideal
//! generated by an element, the orbit of a polynomial under the action,
//! centralizers, normalizers and the derived subalgebra.
//!
//! A truncated closure keeps the span `S` of everything computed so far and
//! works with `V = S ∩ D_{n,D}`, the part of degree `≤ D`. Each round
//! brackets the elements newly added to `V` and stops once `V` stops
//! growing. Elements above the cutoff are never bracketed further, but they
//! stay in `S`, so a combination of them whose high-degree parts cancel is
//! still found.

use std::collections::BTreeMap;

use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linspan::{enumerate_basis, kernel, to_sparse, Algebra, BasisSpec, Coord, Echelon, SpanSpace, SparseVec};
use crate::poly::{Degree, Monomial, Polynomial, Rational};
use crate::vecfield::{Derivation, DivClass};

/// A saturated (or round-limited) truncated closure.
#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub space: SpanSpace,
    pub cutoff: u32,
    pub rounds: usize,
    /// `true` if the last round added nothing of degree `≤ cutoff`.
    pub saturated: bool,
}

impl ClosureResult {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, d: &Derivation) -> bool {
        self.space.contains(d).is_some()
    }

    /// Brackets of all pairs of rows either exceed the cutoff or lie in the space.
    pub fn is_closed(&self) -> bool {
        let rows = self.space.rows();
        let pairs: Vec<(usize, usize)> = (0..rows.len())
            .flat_map(|i| (i + 1..rows.len()).map(move |j| (i, j)))
            .collect();
        pairs.par_iter().all(|&(i, j)| {
            let b = rows[i].bracket(&rows[j]).expect("shared n");
            !b.degree().at_most(self.cutoff) || self.space.contains(&b).is_some()
        })
    }
}

fn shared_n(ds: &[Derivation]) -> Result<usize> {
    let n = ds.first().ok_or(Error::EmptyGenerators)?.nvars();
    for d in ds {
        if d.nvars() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: d.nvars(),
            });
        }
    }
    Ok(n)
}

struct Saturation {
    cutoff: u32,
    big: SpanSpace,
    low: SpanSpace,
    low_list: Vec<Derivation>,
}

impl Saturation {
    fn new(n: usize, cutoff: u32) -> Self {
        Saturation {
            cutoff,
            big: SpanSpace::new(n),
            low: SpanSpace::new(n),
            low_list: Vec::new(),
        }
    }

    fn absorb(&mut self, ds: Vec<Derivation>) -> Vec<Derivation> {
        for d in &ds {
            if !d.is_zero() {
                self.big.insert(d).expect("shared n");
            }
        }
        let mut fresh = Vec::new();
        for r in self.big.rows_up_to_degree(self.cutoff) {
            if self.low.insert(&r).expect("shared n") {
                self.low_list.push(r.clone());
                fresh.push(r);
            }
        }
        fresh
    }

    /// `step(frontier, older)` returns the products to absorb in one round.
    fn run(
        mut self,
        seeds: Vec<Derivation>,
        max_rounds: Option<usize>,
        step: impl Fn(&[Derivation], &[Derivation]) -> Vec<Derivation>,
    ) -> ClosureResult {
        let mut frontier = self.absorb(seeds);
        let mut rounds = 0;
        while !frontier.is_empty() && max_rounds.is_none_or(|m| rounds < m) {
            let older = &self.low_list[..self.low_list.len() - frontier.len()];
            let products = step(&frontier, older);
            rounds += 1;
            frontier = self.absorb(products);
        }
        ClosureResult {
            space: self.low,
            cutoff: self.cutoff,
            rounds,
            saturated: frontier.is_empty(),
        }
    }
}

/// Brackets `pairs` in parallel; output order follows input order.
fn bracket_all(pairs: Vec<(&Derivation, &Derivation)>) -> Vec<Derivation> {
    pairs
        .into_par_iter()
        .map(|(a, b)| a.bracket(b).expect("shared n"))
        .collect()
}

/// Truncated Lie subalgebra generated by `generators`.
pub fn bracket_closure(generators: &[Derivation], cutoff: u32) -> Result<ClosureResult> {
    bracket_closure_bounded(generators, cutoff, None)
}

/// [`bracket_closure`] with an optional limit on the number of rounds.
pub fn bracket_closure_bounded(
    generators: &[Derivation],
    cutoff: u32,
    max_rounds: Option<usize>,
) -> Result<ClosureResult> {
    let n = shared_n(generators)?;
    Ok(Saturation::new(n, cutoff).run(generators.to_vec(), max_rounds, |frontier, older| {
        let mut pairs = Vec::new();
        for (k, f) in frontier.iter().enumerate() {
            for g in older.iter().chain(&frontier[..k]) {
                pairs.push((f, g));
            }
        }
        bracket_all(pairs)
    }))
}

fn check_in_ambient(a: &Derivation, algebra: Algebra) -> Result<()> {
    let ok = matches!(
        (a.classify(), algebra),
        (DivClass::Zero, _) | (DivClass::Constant(_), Algebra::DivC)
    );
    if ok {
        Ok(())
    } else {
        Err(Error::NotInAmbient(algebra.to_string()))
    }
}

/// Truncated ideal generated by `a` in the truncated ambient algebra; the
/// ambient cutoff is the truncation degree.
pub fn ideal_closure(a: &Derivation, ambient: &BasisSpec) -> Result<ClosureResult> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    if a.nvars() != ambient.n {
        return Err(Error::DimensionMismatch {
            expected: ambient.n,
            found: a.nvars(),
        });
    }
    if let Degree::Finite(deg) = a.degree() {
        if deg > ambient.cutoff {
            return Err(Error::DegreeExceedsCutoff {
                degree: deg,
                cutoff: ambient.cutoff,
            });
        }
    }
    check_in_ambient(a, ambient.algebra)?;
    let basis = enumerate_basis(ambient);
    Ok(Saturation::new(ambient.n, ambient.cutoff).run(vec![a.clone()], None, |frontier, _| {
        let pairs = frontier.iter().flat_map(|f| basis.iter().map(move |b| (b, f))).collect();
        bracket_all(pairs)
    }))
}

/// Truncated orbit span of a polynomial modulo constants.
#[derive(Clone, Debug)]
pub struct OrbitResult {
    n: usize,
    pub cutoff: u32,
    pub rounds: usize,
    pub saturated: bool,
    low: Echelon<Monomial>,
}

impl OrbitResult {
    pub fn dim(&self) -> usize {
        self.low.dim()
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    /// Echelon basis, constants dropped.
    pub fn rows(&self) -> Vec<Polynomial> {
        self.low
            .rows()
            .map(|(_, r)| Polynomial::from_terms(self.n, r.iter().map(|(m, c)| (m.clone(), c.clone()))).expect("shared n"))
            .collect()
    }

    /// Membership modulo constants.
    pub fn contains(&self, p: &Polynomial) -> bool {
        self.low.contains(&poly_key(p))
    }
}

fn poly_key(p: &Polynomial) -> SparseVec<Monomial> {
    p.terms()
        .filter(|(m, _)| m.degree() > 0)
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect()
}

/// Span of everything reachable from `seed` by applying `generators`,
/// working modulo constants and truncated at degree `cutoff`.
pub fn module_orbit(generators: &[Derivation], seed: &Polynomial, cutoff: u32) -> Result<OrbitResult> {
    let n = shared_n(generators)?;
    if seed.nvars() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: seed.nvars(),
        });
    }
    if seed.is_constant() {
        return Err(Error::ConstantSeed);
    }
    let mut big: Echelon<Monomial> = Echelon::new();
    let mut low: Echelon<Monomial> = Echelon::new();
    let absorb = |big: &mut Echelon<Monomial>, low: &mut Echelon<Monomial>, ps: Vec<SparseVec<Monomial>>| {
        for p in &ps {
            if !p.is_empty() {
                big.insert(p);
            }
        }
        let mut fresh = Vec::new();
        for (pivot, row) in big.rows() {
            if pivot.degree() > cutoff {
                break;
            }
            if low.insert(row).is_some() {
                fresh.push(row.clone());
            }
        }
        fresh
    };
    let mut frontier = absorb(&mut big, &mut low, vec![poly_key(seed)]);
    let mut rounds = 0;
    while !frontier.is_empty() {
        let tasks: Vec<(&Derivation, &SparseVec<Monomial>)> = frontier
            .iter()
            .flat_map(|f| generators.iter().map(move |g| (g, f)))
            .collect();
        let products: Vec<SparseVec<Monomial>> = tasks
            .into_par_iter()
            .map(|(g, f)| {
                let p = Polynomial::from_terms(n, f.iter().map(|(m, c)| (m.clone(), c.clone()))).expect("shared n");
                poly_key(&g.apply_unchecked(&p))
            })
            .collect();
        rounds += 1;
        frontier = absorb(&mut big, &mut low, products);
    }
    Ok(OrbitResult {
        n,
        cutoff,
        rounds,
        saturated: true,
        low,
    })
}

/// Solves for all combinations `Σ c_k b_k` of `basis` with `f(Σ c_k b_k) = 0`,
/// where `f` is linear and given by its values on the basis.
fn solve_linear<K: Ord + Clone + Send>(
    n: usize,
    basis: &[Derivation],
    f: impl Fn(&Derivation) -> SparseVec<K> + Sync,
) -> SpanSpace {
    let images: Vec<SparseVec<K>> = basis.par_iter().map(&f).collect();
    let mut out = SpanSpace::new(n);
    for combo in kernel(&images) {
        let d = combo
            .iter()
            .fold(Derivation::zero(n), |acc, (&k, c)| &acc + &basis[k].scale(c));
        out.insert(&d).expect("shared n");
    }
    out
}

fn check_all_n(ds: &[Derivation], n: usize) -> Result<()> {
    for d in ds {
        if d.nvars() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: d.nvars(),
            });
        }
    }
    Ok(())
}

/// Elements of the truncated ambient algebra commuting with every element of `h_set`.
pub fn centralizer(h_set: &[Derivation], ambient: &BasisSpec) -> Result<SpanSpace> {
    check_all_n(h_set, ambient.n)?;
    let basis = enumerate_basis(ambient);
    Ok(solve_linear(ambient.n, &basis, |b| {
        let mut v: SparseVec<(usize, Coord)> = BTreeMap::new();
        for (r, h) in h_set.iter().enumerate() {
            for (k, c) in to_sparse(&b.bracket(h).expect("shared n")) {
                v.insert((r, k), c);
            }
        }
        v
    }))
}

/// Elements `x` of the truncated ambient algebra with `[x, s] ∈ S` for every `s ∈ S`.
pub fn normalizer(s: &SpanSpace, ambient: &BasisSpec) -> Result<SpanSpace> {
    if s.nvars() != ambient.n {
        return Err(Error::DimensionMismatch {
            expected: ambient.n,
            found: s.nvars(),
        });
    }
    let basis = enumerate_basis(ambient);
    let rows = s.rows();
    Ok(solve_linear(ambient.n, &basis, |b| {
        let mut v: SparseVec<(usize, Coord)> = BTreeMap::new();
        for (r, row) in rows.iter().enumerate() {
            let res = s.residual(&b.bracket(row).expect("shared n"));
            for (k, c) in to_sparse(&res) {
                v.insert((r, k), c);
            }
        }
        v
    }))
}

/// Span of all brackets of pairs of ambient basis elements, cut to degree `≤ cutoff`.
pub fn derived_subalgebra(ambient: &BasisSpec) -> SpanSpace {
    let basis = enumerate_basis(ambient);
    let pairs: Vec<(&Derivation, &Derivation)> = (0..basis.len())
        .flat_map(|i| (i + 1..basis.len()).map(move |j| (i, j)))
        .map(|(i, j)| (&basis[i], &basis[j]))
        .collect();
    let mut big = SpanSpace::new(ambient.n);
    for b in bracket_all(pairs) {
        if !b.is_zero() {
            big.insert(&b).expect("shared n");
        }
    }
    SpanSpace::reduce(ambient.n, &big.rows_up_to_degree(ambient.cutoff)).expect("shared n")
}

/// `∂_1`, `x_i^2 ∂_1` and `x_1^2 ∂_i` for `i = 2..n`: `2n - 1` generators of `div_n^0`.
pub fn div0_generators(n: usize) -> Vec<Derivation> {
    let mut out = vec![Derivation::partial(n, 0).expect("n >= 1")];
    for i in 1..n {
        out.push(Derivation::monomial(n, Monomial::var(n, i).pow(2), 0, Rational::one()));
    }
    for i in 1..n {
        out.push(Derivation::monomial(n, Monomial::var(n, 0).pow(2), i, Rational::one()));
    }
    out
}

/// [`div0_generators`] together with `H_1`.
pub fn divc_generators(n: usize) -> Vec<Derivation> {
    let mut out = div0_generators(n);
    out.push(Derivation::euler(n, 0).expect("n >= 1"));
    out
}

pub fn partials(n: usize) -> Vec<Derivation> {
    (0..n).map(|i| Derivation::partial(n, i).expect("i < n")).collect()
}

pub fn eulers(n: usize) -> Vec<Derivation> {
    (0..n).map(|i| Derivation::euler(n, i).expect("i < n")).collect()
}

/// `H_i - H_{i+1}` for `i < n - 1`.
pub fn euler_differences(n: usize) -> Vec<Derivation> {
    (0..n.saturating_sub(1))
        .map(|i| Derivation::euler_diff(n, i, i + 1).expect("i + 1 < n"))
        .collect()
}

/// `θ^m (H_i - H_{i+1})` with `θ = x_1⋯x_n`, of degree `1 + mn ≤ cutoff`.
pub fn cartan_truncation(n: usize, cutoff: u32) -> SpanSpace {
    let theta = Monomial::new(vec![1; n]);
    let mut out = SpanSpace::new(n);
    let mut m = 0u32;
    while m * (n as u32) < cutoff {
        let tm = Polynomial::monomial(n, theta.pow(m), Rational::one());
        for h in euler_differences(n) {
            out.insert(&h.mul_poly(&tm).expect("shared n")).expect("shared n");
        }
        m += 1;
        if n == 0 {
            break;
        }
    }
    out
}

/// Span of `rows` with zero coefficients dropped; convenience for comparisons.
pub fn span_of(n: usize, rows: &[Derivation]) -> SpanSpace {
    SpanSpace::reduce(n, rows).expect("shared n")
}

/// Sum of two spans.
pub fn span_sum(a: &SpanSpace, b: &SpanSpace) -> SpanSpace {
    let mut rows = a.rows();
    rows.extend(b.rows());
    span_of(a.nvars(), &rows)
}

pub(crate) fn first_missing(space: &SpanSpace, targets: &[Derivation]) -> Option<Derivation> {
    targets.iter().find(|t| space.contains(t).is_none()).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fld(n: usize, e: &[u32], dir: usize) -> Derivation {
        Derivation::monomial(n, Monomial::new(e.to_vec()), dir, Rational::one())
    }

    #[test]
    fn closure_of_generators_covers_basis() {
        let c = bracket_closure(&div0_generators(2), 4).unwrap();
        assert!(c.saturated);
        assert!(c.space.contains_all(&enumerate_basis(&BasisSpec::div0(2, 3))));
        assert!(c.is_closed());
    }

    #[test]
    fn singleton_closure() {
        let d1 = Derivation::partial(2, 0).unwrap();
        for d in 0..4 {
            let c = bracket_closure(std::slice::from_ref(&d1), d).unwrap();
            assert_eq!(c.dim(), 1);
            assert!(c.contains(&d1));
        }
    }

    #[test]
    fn sl2_triple() {
        let c = bracket_closure(&[fld(2, &[1, 0], 1), fld(2, &[0, 1], 0)], 1).unwrap();
        assert_eq!(c.dim(), 3);
        assert!(c.contains(&Derivation::euler_diff(2, 0, 1).unwrap()));
    }

    #[test]
    fn empty_generators_rejected() {
        assert_eq!(bracket_closure(&[], 2).unwrap_err(), Error::EmptyGenerators);
    }

    #[test]
    fn ideal_examples() {
        let amb = BasisSpec::div0(2, 3);
        let c = ideal_closure(&fld(2, &[0, 1], 0), &amb).unwrap();
        assert!(c.space.contains_all(&partials(2)));
        let c = ideal_closure(&Derivation::euler_diff(2, 0, 1).unwrap(), &amb).unwrap();
        assert!(c.contains(&Derivation::partial(2, 0).unwrap()));
        let c = ideal_closure(&Derivation::partial(1, 0).unwrap(), &BasisSpec::div0(1, 3)).unwrap();
        assert_eq!(c.dim(), 1);

        assert_eq!(ideal_closure(&Derivation::zero(2), &amb).unwrap_err(), Error::ZeroInput);
        assert!(matches!(
            ideal_closure(&Derivation::euler(2, 0).unwrap(), &amb),
            Err(Error::NotInAmbient(_))
        ));
        assert!(matches!(
            ideal_closure(&fld(2, &[0, 4], 0), &amb),
            Err(Error::DegreeExceedsCutoff { degree: 4, cutoff: 3 })
        ));
    }

    #[test]
    fn orbit_examples() {
        let x1 = Polynomial::var(2, 0);
        let o = module_orbit(&enumerate_basis(&BasisSpec::div0(2, 3)), &x1, 3).unwrap();
        assert_eq!(o.dim(), 9);
        for m in Monomial::all_up_to_degree(2, 3) {
            assert!(o.contains(&Polynomial::monomial(2, m, Rational::one())));
        }

        let o1 = module_orbit(&[Derivation::partial(1, 0).unwrap()], &Polynomial::var(1, 0), 3).unwrap();
        assert_eq!(o1.dim(), 1);

        let gens = [fld(2, &[1, 0], 1)];
        let o = module_orbit(&gens, &Polynomial::var(2, 1), 1).unwrap();
        assert!(o.contains(&Polynomial::var(2, 0)));
        assert!(o.contains(&Polynomial::var(2, 1)));

        assert_eq!(
            module_orbit(&gens, &Polynomial::one(2), 2).unwrap_err(),
            Error::ConstantSeed
        );
    }

    #[test]
    fn centralizer_examples() {
        for n in 1..=3 {
            let c = centralizer(&partials(n), &BasisSpec::div0(n, 3)).unwrap();
            assert!(c.same_span(&span_of(n, &partials(n))), "n={n}");
        }
        let c = centralizer(&euler_differences(2), &BasisSpec::div0(2, 4)).unwrap();
        assert!(c.same_span(&cartan_truncation(2, 4)));
        assert_eq!(c.dim(), 2);
    }

    #[test]
    fn normalizer_example() {
        let cn = cartan_truncation(2, 4);
        let nz = normalizer(&cn, &BasisSpec::divc(2, 4)).unwrap();
        let expected = span_sum(&cn, &span_of(2, &eulers(2)));
        assert!(nz.same_span(&expected));
    }

    #[test]
    fn derived_examples() {
        let ds = derived_subalgebra(&BasisSpec::divc(2, 3));
        assert!(ds.contains_all(&enumerate_basis(&BasisSpec::div0(2, 2))));
        assert!(ds.rows().iter().all(|r| r.classify() == DivClass::Zero));
        for d in 0..4 {
            assert_eq!(derived_subalgebra(&BasisSpec::div0(1, d)).dim(), 0);
        }
    }

    #[test]
    fn monotone_in_cutoff() {
        let g = div0_generators(2);
        let small = bracket_closure(&g, 2).unwrap();
        let large = bracket_closure(&g, 3).unwrap();
        assert!(small.space.is_subspace_of(&large.space));
    }

    #[test]
    fn scaled_helper() {
        let d = Derivation::partial(2, 0).unwrap();
        assert!(first_missing(&span_of(2, std::slice::from_ref(&d)), &[d]).is_none());
    }
}
