//! Polynomial vector fields `∂ = Σ a_i ∂_i` and the named elements of the
//! divergence-free algebras.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{check_index, mono_factors, rat, write_term, Degree, Monomial, Polynomial, Rational};

/// A derivation of `P_n`, stored by its coefficients `a_i = ∂(x_i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Derivation {
    n: usize,
    coeffs: Vec<Polynomial>,
}

/// Classification of a derivation by its divergence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DivClass {
    Zero,
    Constant(Rational),
    NonConstant(Polynomial),
}

impl DivClass {
    pub fn tag(&self) -> &'static str {
        match self {
            DivClass::Zero => "zero",
            DivClass::Constant(_) => "constant",
            DivClass::NonConstant(_) => "nonconstant",
        }
    }
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivClass::Zero => f.write_str("zero"),
            DivClass::Constant(c) => write!(f, "constant({c})"),
            DivClass::NonConstant(p) => write!(f, "nonconstant({p})"),
        }
    }
}

impl Derivation {
    /// Builds `Σ coeffs[i] ∂_i`; every coefficient must live in `coeffs.len()` variables.
    pub fn new(coeffs: Vec<Polynomial>) -> Result<Self> {
        let n = coeffs.len();
        if n == 0 {
            return Err(Error::Malformed("derivation needs at least one variable".into()));
        }
        for c in &coeffs {
            if c.nvars() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.nvars(),
                });
            }
        }
        Ok(Derivation { n, coeffs })
    }

    pub fn zero(n: usize) -> Self {
        Derivation {
            n,
            coeffs: vec![Polynomial::zero(n); n],
        }
    }

    /// `c · x^α ∂_dir`.
    pub fn monomial(n: usize, alpha: Monomial, dir: usize, c: Rational) -> Self {
        let mut d = Derivation::zero(n);
        d.coeffs[dir] = Polynomial::monomial(n, alpha, c);
        d
    }

    /// `p ∂_dir`.
    pub fn along(p: Polynomial, dir: usize) -> Self {
        let n = p.nvars();
        let mut d = Derivation::zero(n);
        d.coeffs[dir] = p;
        d
    }

    /// The partial derivative `∂_i`.
    pub fn partial(n: usize, i: usize) -> Result<Self> {
        check_index(i, n)?;
        Ok(Derivation::monomial(n, Monomial::one(n), i, Rational::one()))
    }

    /// The Euler element `H_i = x_i ∂_i`.
    pub fn euler(n: usize, i: usize) -> Result<Self> {
        check_index(i, n)?;
        Ok(Derivation::monomial(n, Monomial::var(n, i), i, Rational::one()))
    }

    /// `H_i - H_j`.
    pub fn euler_diff(n: usize, i: usize, j: usize) -> Result<Self> {
        check_index(i, n)?;
        check_index(j, n)?;
        if i == j {
            return Err(Error::RepeatedIndex(i));
        }
        Ok(&Derivation::euler(n, i)? - &Derivation::euler(n, j)?)
    }

    /// `h_j(a) H_i - h_i(a) H_j`, a divergence-free element for every `a`.
    pub fn phi(i: usize, j: usize, a: &Polynomial) -> Result<Self> {
        let n = a.nvars();
        check_index(i, n)?;
        check_index(j, n)?;
        if i == j {
            return Err(Error::RepeatedIndex(i));
        }
        let hi = Derivation::euler(n, i)?.mul_poly(&a.hmap(j)?)?;
        let hj = Derivation::euler(n, j)?.mul_poly(&a.hmap(i)?)?;
        Ok(&hi - &hj)
    }

    /// `θ_{ij}^α = x^α((α_j + 1) H_i - (α_i + 1) H_j)`.
    pub fn theta_pair(i: usize, j: usize, alpha: &Monomial) -> Result<Self> {
        let n = alpha.nvars();
        Derivation::phi(i, j, &Polynomial::monomial(n, alpha.clone(), Rational::one()))
    }

    /// The basis element `θ_i^α = θ_{i,i+1}^α` (zero-based `i < n - 1`).
    pub fn theta(i: usize, alpha: &Monomial) -> Result<Self> {
        let n = alpha.nvars();
        if i + 1 >= n {
            return Err(Error::IndexOutOfRange { index: i, n: n.saturating_sub(1) });
        }
        Derivation::theta_pair(i, i + 1, alpha)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Polynomial {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    /// Maximal total degree of the coefficients.
    pub fn degree(&self) -> Degree {
        self.coeffs
            .iter()
            .map(Polynomial::total_degree)
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    /// All terms `(direction, monomial, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Monomial, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(j, p)| p.terms().map(move |(m, c)| (j, m, c)))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().map(Polynomial::num_terms).sum()
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if self.n == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: n,
            })
        }
    }

    pub fn checked_add(&self, other: &Derivation) -> Result<Derivation> {
        self.check_dim(other.n)?;
        Ok(Derivation {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// `p · ∂`.
    pub fn mul_poly(&self, p: &Polynomial) -> Result<Derivation> {
        self.check_dim(p.nvars())?;
        Ok(Derivation {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * p).collect(),
        })
    }

    /// The action `∂ * p = Σ a_i ∂p/∂x_i`.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        self.check_dim(p.nvars())?;
        Ok(self.apply_unchecked(p))
    }

    pub(crate) fn apply_unchecked(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let dp = p.partial_unchecked(i);
            if !dp.is_zero() {
                out = &out + &(a * &dp);
            }
        }
        out
    }

    /// `[∂, δ]`, with `k`-th coefficient `∂(δ(x_k)) - δ(∂(x_k))`.
    pub fn bracket(&self, other: &Derivation) -> Result<Derivation> {
        self.check_dim(other.n)?;
        Ok(Derivation {
            n: self.n,
            coeffs: (0..self.n)
                .map(|k| {
                    &self.apply_unchecked(&other.coeffs[k]) - &other.apply_unchecked(&self.coeffs[k])
                })
                .collect(),
        })
    }

    /// `div ∂ = Σ ∂a_i/∂x_i`.
    pub fn divergence(&self) -> Polynomial {
        self.coeffs
            .iter()
            .enumerate()
            .fold(Polynomial::zero(self.n), |acc, (i, a)| &acc + &a.partial_unchecked(i))
    }

    pub fn classify(&self) -> DivClass {
        let div = self.divergence();
        if div.is_zero() {
            DivClass::Zero
        } else if div.is_constant() {
            DivClass::Constant(div.constant_term())
        } else {
            DivClass::NonConstant(div)
        }
    }

    /// Conjugation by the automorphism swapping `x_i` and `x_j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Result<Derivation> {
        check_index(i, self.n)?;
        check_index(j, self.n)?;
        let mut coeffs: Vec<_> = self.coeffs.iter().map(|a| a.swap_vars(i, j)).collect();
        coeffs.swap(i, j);
        Ok(Derivation { n: self.n, coeffs })
    }

    /// The weight class of a weight vector under the adjoint action of `ℋ_n'`.
    pub fn weight_of(&self) -> Result<WeightClass> {
        let mut found: Option<WeightClass> = None;
        for (j, m, _) in self.terms() {
            let w = WeightClass::of_term(m, j);
            match &found {
                None => found = Some(w),
                Some(f) if *f == w => {}
                Some(f) => {
                    return Err(Error::NotHomogeneous {
                        first: f.clone(),
                        second: w,
                    })
                }
            }
        }
        found.ok_or(Error::ZeroInput)
    }

    /// Splits into weight components; the components sum back to `self`.
    pub fn decompose_weights(&self) -> BTreeMap<WeightClass, Derivation> {
        let mut out: BTreeMap<WeightClass, Derivation> = BTreeMap::new();
        for (j, m, c) in self.terms() {
            let part = out
                .entry(WeightClass::of_term(m, j))
                .or_insert_with(|| Derivation::zero(self.n));
            part.coeffs[j].add_term(m.clone(), c.clone());
        }
        out
    }

    /// Checks `[H, ∂] = [μ](H) ∂` for the basis `H_k - H_{k+1}` of `ℋ_n'`
    /// by computing the brackets directly.
    pub fn is_weight_vector_of(&self, w: &WeightClass) -> bool {
        if w.rep.len() != self.n {
            return false;
        }
        (0..self.n.saturating_sub(1)).all(|k| {
            let h = Derivation::euler_diff(self.n, k, k + 1).expect("valid indices");
            let eig = rat(w.rep[k] - w.rep[k + 1]);
            h.bracket(self).expect("same n") == self.scale(&eig)
        })
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, p) in self.coeffs.iter().enumerate() {
            for (m, c) in p.terms().rev() {
                let mut factors = mono_factors(m);
                factors.push(format!("d{}", j + 1));
                write_term(f, &factors, c, first)?;
                first = false;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for &Derivation {
    type Output = Derivation;

    fn add(self, rhs: &Derivation) -> Derivation {
        self.checked_add(rhs).expect("derivation dimension mismatch")
    }
}

impl Sub for &Derivation {
    type Output = Derivation;

    fn sub(self, rhs: &Derivation) -> Derivation {
        self.checked_add(&-rhs).expect("derivation dimension mismatch")
    }
}

impl Neg for &Derivation {
    type Output = Derivation;

    fn neg(self) -> Derivation {
        Derivation {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DerivationJson {
    n: usize,
    coeffs: Vec<Polynomial>,
}

impl Serialize for Derivation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DerivationJson {
            n: self.n,
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Derivation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DerivationJson::deserialize(d)?;
        if raw.coeffs.len() != raw.n {
            return Err(serde::de::Error::custom(format!(
                "expected {} coefficients, found {}",
                raw.n,
                raw.coeffs.len()
            )));
        }
        Derivation::new(raw.coeffs).map_err(serde::de::Error::custom)
    }
}

/// An element of `ℤⁿ / ℤ·(1, …, 1)`, represented by the vector whose
/// minimum entry is zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct WeightClass {
    rep: Vec<i64>,
}

impl WeightClass {
    pub fn from_vector(v: &[i64]) -> Self {
        let min = v.iter().copied().min().unwrap_or(0);
        WeightClass {
            rep: v.iter().map(|x| x - min).collect(),
        }
    }

    /// Class of the `ℤⁿ`-degree `α - e_dir` of `x^α ∂_dir`.
    pub fn of_term(alpha: &Monomial, dir: usize) -> Self {
        let mut v: Vec<i64> = alpha.exps().iter().map(|&e| e as i64).collect();
        v[dir] -= 1;
        WeightClass::from_vector(&v)
    }

    pub fn rep(&self) -> &[i64] {
        &self.rep
    }

    /// `[μ](H)` for `H = Σ λ_i H_i` with `Σ λ_i = 0`.
    pub fn eval(&self, lambda: &[i64]) -> i64 {
        self.rep.iter().zip(lambda).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Display for WeightClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rep.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
