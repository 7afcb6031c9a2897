//! Exact row reduction over ℚ, spans of derivations, and the truncated
//! bases of `div_n^0` and `div_n^c`.
//!
//! Vectors are sparse maps from an ordered coordinate type to nonzero
//! rationals. The pivot of a row is its *largest* coordinate. Because the
//! coordinate order on derivations is graded by total degree, the rows of a
//! reduced echelon form whose pivot has degree at most `D` span exactly the
//! part of the space lying in degree `≤ D`; the closure code relies on this.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Degree, Monomial, Polynomial, Rational};
use crate::vecfield::Derivation;

pub type SparseVec<K> = BTreeMap<K, Rational>;

fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, a: &Rational, w: &SparseVec<K>) {
    for (k, c) in w {
        let delta = a * c;
        match v.entry(k.clone()) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(delta);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += delta;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

/// Reduced row echelon form over an ordered coordinate set.
///
/// Invariant: every row has coefficient 1 at its pivot and 0 at every other
/// row's pivot.
#[derive(Clone, Debug, Default)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Rows in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = (&K, &SparseVec<K>)> {
        self.rows.iter()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Splits `v` into its row coordinates and the normal-form residual.
    /// The residual is a linear function of `v`.
    pub fn reduce(&self, v: &SparseVec<K>) -> (SparseVec<K>, SparseVec<K>) {
        let coords: SparseVec<K> = v
            .iter()
            .filter(|(k, _)| self.rows.contains_key(*k))
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        let mut res = v.clone();
        for (k, c) in &coords {
            axpy(&mut res, &-c, &self.rows[k]);
        }
        (coords, res)
    }

    pub fn residual(&self, v: &SparseVec<K>) -> SparseVec<K> {
        self.reduce(v).1
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).1.is_empty()
    }

    /// Adds `v` to the span; returns the new pivot if the dimension grew.
    pub fn insert(&mut self, v: &SparseVec<K>) -> Option<K> {
        let (_, mut r) = self.reduce(v);
        let (pivot, lead) = match r.iter().next_back() {
            None => return None,
            Some((k, c)) => (k.clone(), c.clone()),
        };
        if !lead.is_one() {
            let inv = lead.recip();
            for c in r.values_mut() {
                *c *= &inv;
            }
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                axpy(row, &-c, &r);
            }
        }
        self.rows.insert(pivot.clone(), r);
        Some(pivot)
    }
}

/// Kernel of the linear map sending basis vector `k` to `images[k]`;
/// kernel vectors are returned as sparse combinations of indices.
pub fn kernel<K: Ord + Clone>(images: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
    enum Aug<K> {
        Tag(usize),
        Image(K),
    }
    let mut ech: Echelon<Aug<K>> = Echelon::new();
    for (idx, img) in images.iter().enumerate() {
        let mut v: SparseVec<Aug<K>> = img
            .iter()
            .map(|(k, c)| (Aug::Image(k.clone()), c.clone()))
            .collect();
        v.insert(Aug::Tag(idx), Rational::one());
        ech.insert(&v);
    }
    // Image coordinates sort above tags, so rows with a tag pivot have no
    // image part, and they span the kernel.
    ech.rows()
        .filter(|(p, _)| matches!(p, Aug::Tag(_)))
        .map(|(_, row)| {
            row.iter()
                .map(|(k, c)| match k {
                    Aug::Tag(i) => (*i, c.clone()),
                    Aug::Image(_) => unreachable!("tag-pivot rows have no image part"),
                })
                .collect()
        })
        .collect()
}

/// Coordinate of a derivation term `x^α ∂_dir`, ordered by `(α grlex, dir)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Coord {
    pub mono: Monomial,
    pub dir: usize,
}

impl Coord {
    pub fn degree(&self) -> u32 {
        self.mono.degree()
    }
}

pub fn to_sparse(d: &Derivation) -> SparseVec<Coord> {
    d.terms()
        .map(|(dir, m, c)| {
            (
                Coord {
                    mono: m.clone(),
                    dir,
                },
                c.clone(),
            )
        })
        .collect()
}

pub fn from_sparse(n: usize, v: &SparseVec<Coord>) -> Derivation {
    let mut coeffs = vec![Polynomial::zero(n); n];
    for (k, c) in v {
        coeffs[k.dir].add_term(k.mono.clone(), c.clone());
    }
    Derivation::new(coeffs).expect("coordinates share n")
}

/// Linear span of derivations in reduced echelon form.
#[derive(Clone, Debug)]
pub struct SpanSpace {
    n: usize,
    ech: Echelon<Coord>,
}

impl SpanSpace {
    pub fn new(n: usize) -> Self {
        SpanSpace {
            n,
            ech: Echelon::new(),
        }
    }

    /// Row-reduces `vectors` in `n` variables.
    pub fn reduce(n: usize, vectors: &[Derivation]) -> Result<Self> {
        let mut s = SpanSpace::new(n);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    fn check(&self, d: &Derivation) -> Result<()> {
        if d.nvars() == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: d.nvars(),
            })
        }
    }

    /// Returns `true` if `d` was independent of the current span.
    pub fn insert(&mut self, d: &Derivation) -> Result<bool> {
        self.check(d)?;
        Ok(self.ech.insert(&to_sparse(d)).is_some())
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.ech.dim()
    }

    pub fn pivots(&self) -> Vec<Coord> {
        self.ech.pivots().cloned().collect()
    }

    /// Echelon rows in increasing pivot order.
    pub fn rows(&self) -> Vec<Derivation> {
        self.ech.rows().map(|(_, r)| from_sparse(self.n, r)).collect()
    }

    /// Rows whose pivot has degree at most `d`; together they span the
    /// elements of the space of degree `≤ d`.
    pub fn rows_up_to_degree(&self, d: u32) -> Vec<Derivation> {
        self.ech
            .rows()
            .take_while(|(p, _)| p.degree() <= d)
            .map(|(_, r)| from_sparse(self.n, r))
            .collect()
    }

    /// Coordinates of `d` with respect to [`SpanSpace::rows`], if `d` lies in the span.
    pub fn contains(&self, d: &Derivation) -> Option<Vec<Rational>> {
        if d.nvars() != self.n {
            return None;
        }
        let (coords, res) = self.ech.reduce(&to_sparse(d));
        if !res.is_empty() {
            return None;
        }
        Some(
            self.ech
                .pivots()
                .map(|p| coords.get(p).cloned().unwrap_or_else(Rational::zero))
                .collect(),
        )
    }

    pub fn contains_all(&self, ds: &[Derivation]) -> bool {
        ds.iter().all(|d| self.contains(d).is_some())
    }

    /// Normal form of `d` modulo the span; zero iff `d` is contained.
    pub fn residual(&self, d: &Derivation) -> Derivation {
        from_sparse(self.n, &self.ech.residual(&to_sparse(d)))
    }

    pub fn is_subspace_of(&self, other: &SpanSpace) -> bool {
        self.n == other.n && self.rows().iter().all(|r| other.contains(r).is_some())
    }

    pub fn same_span(&self, other: &SpanSpace) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }
}

/// Which of the two algebras a truncated basis describes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Algebra {
    /// Zero divergence.
    Div0,
    /// Constant divergence.
    DivC,
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::Div0 => "div0",
            Algebra::DivC => "divc",
        })
    }
}

impl std::str::FromStr for Algebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "div0" => Ok(Algebra::Div0),
            "divc" => Ok(Algebra::DivC),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

/// `n` variables, coefficient degree cutoff `D`, and the algebra.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct BasisSpec {
    pub n: usize,
    pub cutoff: u32,
    pub algebra: Algebra,
}

impl BasisSpec {
    pub fn new(n: usize, cutoff: u32, algebra: Algebra) -> Self {
        BasisSpec { n, cutoff, algebra }
    }

    pub fn div0(n: usize, cutoff: u32) -> Self {
        BasisSpec::new(n, cutoff, Algebra::Div0)
    }

    pub fn divc(n: usize, cutoff: u32) -> Self {
        BasisSpec::new(n, cutoff, Algebra::DivC)
    }
}

/// The fields `x^β ∂_j` with `β_j = 0` and `|β| ≤ cutoff`.
pub fn free_fields(n: usize, cutoff: u32) -> Vec<Derivation> {
    let mut out = Vec::new();
    for beta in Monomial::all_up_to_degree(n, cutoff) {
        for j in 0..n {
            if beta.exps()[j] == 0 {
                out.push(Derivation::monomial(n, beta.clone(), j, Rational::one()));
            }
        }
    }
    out
}

/// The elements `θ_i^α` with `|α| + 1 ≤ cutoff`.
pub fn thetas(n: usize, cutoff: u32) -> Vec<Derivation> {
    if cutoff == 0 || n < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for alpha in Monomial::all_up_to_degree(n, cutoff - 1) {
        for i in 0..n - 1 {
            out.push(Derivation::theta(i, &alpha).expect("i < n - 1"));
        }
    }
    out
}

/// Basis of the algebra truncated to coefficient degree `≤ cutoff`: the
/// free fields and the `θ_i^α`, plus `H_1` for constant divergence.
///
/// `H_1` is included for every cutoff, so the constant-divergence basis is
/// always one longer than the zero-divergence one.
pub fn enumerate_basis(spec: &BasisSpec) -> Vec<Derivation> {
    let mut out = free_fields(spec.n, spec.cutoff);
    out.extend(thetas(spec.n, spec.cutoff));
    if spec.algebra == Algebra::DivC {
        out.push(Derivation::euler(spec.n, 0).expect("n >= 1"));
    }
    out
}

/// All `x^α ∂_j` with `|α| ≤ cutoff`, in coordinate order.
fn monomial_fields(n: usize, cutoff: u32) -> Vec<(Monomial, usize)> {
    Monomial::all_up_to_degree(n, cutoff)
        .into_iter()
        .flat_map(|m| (0..n).map(move |j| (m.clone(), j)))
        .collect()
}

/// Divergence of `x^α ∂_j` read off the exponents: `α_j x^{α - e_j}`.
fn monomial_divergence(alpha: &Monomial, j: usize) -> SparseVec<Monomial> {
    let mut v = SparseVec::new();
    if let Some(m) = alpha.shifted(j, -1) {
        v.insert(m, Rational::from_integer(alpha.exps()[j].into()));
    }
    v
}

fn span_of_kernel(n: usize, fields: &[(Monomial, usize)], images: &[SparseVec<Monomial>]) -> SpanSpace {
    let mut s = SpanSpace::new(n);
    for combo in kernel(images) {
        let d = from_sparse(
            n,
            &combo
                .iter()
                .map(|(&k, c)| {
                    (
                        Coord {
                            mono: fields[k].0.clone(),
                            dir: fields[k].1,
                        },
                        c.clone(),
                    )
                })
                .collect(),
        );
        s.insert(&d).expect("same n");
    }
    s
}

/// Kernel of `div` on derivations of coefficient degree `≤ cutoff`, found
/// as the null space of the monomial matrix of `div`.
pub fn divkernel_oracle(n: usize, cutoff: u32) -> SpanSpace {
    let fields = monomial_fields(n, cutoff);
    let images: Vec<_> = fields.iter().map(|(m, j)| monomial_divergence(m, *j)).collect();
    span_of_kernel(n, &fields, &images)
}

/// Constant-divergence counterpart of [`divkernel_oracle`]: the kernel of
/// `div` followed by dropping the constant term, plus the line of `H_1`
/// when the cutoff is zero.
pub fn divc_oracle(n: usize, cutoff: u32) -> SpanSpace {
    let fields = monomial_fields(n, cutoff);
    let one = Monomial::one(n);
    let images: Vec<_> = fields
        .iter()
        .map(|(m, j)| {
            let mut v = monomial_divergence(m, *j);
            v.remove(&one);
            v
        })
        .collect();
    let mut s = span_of_kernel(n, &fields, &images);
    if cutoff == 0 {
        s.insert(&Derivation::euler(n, 0).expect("n >= 1")).expect("same n");
    }
    s
}

/// The part of a span made of derivations whose coefficients are
/// homogeneous of total degree `k`.
pub fn graded_component(s: &SpanSpace, k: u32) -> SpanSpace {
    let rows = s.rows();
    let images: Vec<SparseVec<Coord>> = rows
        .iter()
        .map(|r| {
            to_sparse(r)
                .into_iter()
                .filter(|(c, _)| c.degree() != k)
                .collect()
        })
        .collect();
    let mut out = SpanSpace::new(s.nvars());
    for combo in kernel(&images) {
        let d = combo
            .iter()
            .fold(Derivation::zero(s.nvars()), |acc, (&i, c)| &acc + &rows[i].scale(c));
        out.insert(&d).expect("same n");
    }
    out
}

/// Degree filtration check helper: `true` if `d` has degree at most `k`.
pub fn within_degree(d: &Derivation, k: u32) -> bool {
    d.degree() <= Degree::Finite(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn dn(n: usize, i: usize) -> Derivation {
        Derivation::partial(n, i).unwrap()
    }

    fn field(n: usize, e: &[u32], dir: usize) -> Derivation {
        Derivation::monomial(n, Monomial::new(e.to_vec()), dir, Rational::one())
    }

    #[test]
    fn reduce_examples() {
        let s = SpanSpace::reduce(2, &[dn(2, 0), dn(2, 0).scale(&rat(2))]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(SpanSpace::reduce(2, &[]).unwrap().dim(), 0);
        let v = [
            field(2, &[1, 0], 1),
            field(2, &[0, 1], 0),
            Derivation::euler_diff(2, 0, 1).unwrap(),
        ];
        assert_eq!(SpanSpace::reduce(2, &v).unwrap().dim(), 3);
        assert!(SpanSpace::reduce(2, &[dn(3, 0)]).is_err());
    }

    #[test]
    fn reduced_echelon_invariants() {
        let v = [
            &field(2, &[1, 1], 0) + &dn(2, 1),
            &field(2, &[1, 1], 0) - &field(2, &[2, 0], 1),
            &dn(2, 0).scale(&rat(3)) + &field(2, &[2, 0], 1),
        ];
        let s = SpanSpace::reduce(2, &v).unwrap();
        let pivots = s.pivots();
        assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        for (row, p) in s.rows().iter().zip(&pivots) {
            let sp = to_sparse(row);
            assert_eq!(sp.iter().next_back().unwrap().0, p);
            assert!(sp[p].is_one());
            for q in &pivots {
                if q != p {
                    assert!(!sp.contains_key(q));
                }
            }
        }
        for x in &v {
            assert!(s.contains(x).is_some());
        }
    }

    #[test]
    fn contains_examples() {
        let s = SpanSpace::reduce(2, &[dn(2, 0), dn(2, 1)]).unwrap();
        assert_eq!(s.contains(&(&dn(2, 0) + &dn(2, 1))), Some(vec![rat(1), rat(1)]));
        let s1 = SpanSpace::reduce(2, &[dn(2, 0)]).unwrap();
        assert_eq!(s1.contains(&Derivation::euler(2, 0).unwrap()), None);
        let b = SpanSpace::reduce(2, &enumerate_basis(&BasisSpec::div0(2, 2))).unwrap();
        assert!(b.contains(&Derivation::euler(2, 0).unwrap()).is_none());
    }

    #[test]
    fn kernel_of_small_matrix() {
        // Columns (1,0), (0,1), (1,1): kernel spanned by e0 + e1 - e2.
        let imgs: Vec<SparseVec<usize>> = vec![
            [(0, rat(1))].into_iter().collect(),
            [(1, rat(1))].into_iter().collect(),
            [(0, rat(1)), (1, rat(1))].into_iter().collect(),
        ];
        let k = kernel(&imgs);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v[&0], v[&1]);
        assert_eq!(v[&2], -v[&0].clone());
    }

    #[test]
    fn enumerate_examples() {
        let b = enumerate_basis(&BasisSpec::div0(2, 1));
        assert_eq!(b.len(), 5);
        let expected = [
            dn(2, 0),
            dn(2, 1),
            field(2, &[0, 1], 0),
            field(2, &[1, 0], 1),
            Derivation::euler_diff(2, 0, 1).unwrap(),
        ];
        let s = SpanSpace::reduce(2, &b).unwrap();
        assert_eq!(s.dim(), 5);
        assert!(s.same_span(&SpanSpace::reduce(2, &expected).unwrap()));

        assert_eq!(enumerate_basis(&BasisSpec::div0(1, 3)), vec![dn(1, 0)]);

        let c = enumerate_basis(&BasisSpec::divc(2, 0));
        assert_eq!(c, vec![dn(2, 0), dn(2, 1), Derivation::euler(2, 0).unwrap()]);
    }

    #[test]
    fn divkernel_examples() {
        assert_eq!(divkernel_oracle(2, 1).dim(), 5);
        for d in 0..5 {
            assert_eq!(divkernel_oracle(1, d).dim(), 1);
        }
        assert_eq!(divkernel_oracle(2, 2).dim(), 9);
        // Rank count: n * C(n + D, D) fields minus C(n + D - 1, D - 1) divergence targets.
        assert_eq!(divkernel_oracle(3, 3).dim(), 3 * 20 - 10);
        assert_eq!(divc_oracle(2, 0).dim(), 3);
        assert_eq!(divc_oracle(2, 2).dim(), 10);
    }

    #[test]
    fn graded_component_examples() {
        let s = SpanSpace::reduce(2, &enumerate_basis(&BasisSpec::div0(2, 2))).unwrap();
        assert_eq!(graded_component(&s, 0).dim(), 2);
        assert_eq!(graded_component(&s, 1).dim(), 3);
        assert_eq!(graded_component(&s, 2).dim(), 4);
        let mixed = SpanSpace::reduce(2, &[&dn(2, 0) + &field(2, &[1, 0], 1)]).unwrap();
        assert_eq!(graded_component(&mixed, 0).dim(), 0);
    }

    #[test]
    fn basis_matches_oracle_small() {
        for n in 1..=3 {
            for d in 0..=3 {
                let b = enumerate_basis(&BasisSpec::div0(n, d));
                let s = SpanSpace::reduce(n, &b).unwrap();
                let o = divkernel_oracle(n, d);
                assert_eq!(s.dim(), b.len());
                assert!(s.same_span(&o), "n={n} D={d}");
            }
        }
    }
}
