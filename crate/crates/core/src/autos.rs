//! Tame polynomial automorphisms, their Jacobians, and their action on
//! derivations by conjugation.
//!
//! An [`Automorphism`] is a word `[e_1, …, e_k]` of elementary maps. On
//! points the word acts left to right: first `e_1`, then `e_2`, and so on.
//! On polynomials this means the substitutions compose right to left:
//! `σ(p) = p(e_k(…e_1(x)…))`, so `σ = e_1^* ∘ … ∘ e_k^*` as algebra maps and
//! concatenating words multiplies automorphisms: `word(στ) = word(σ) ++ word(τ)`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::poly::{check_index, parse_rational, Polynomial, Rational};
use crate::vecfield::Derivation;

pub type Matrix = Vec<Vec<Rational>>;

fn check_square(a: &Matrix, n: usize) -> Result<()> {
    if a.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.len(),
        });
    }
    for row in a {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
    }
    Ok(())
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
pub fn matrix_inverse(a: &Matrix) -> Result<Matrix> {
    let n = a.len();
    check_square(a, n)?;
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for c in m[col].iter_mut() {
            *c *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn matrix_det(a: &Matrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        det *= &m[col][col];
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                for c in col..n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    det
}

/// One generator of the tame group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementaryMap {
    /// `x_i ↦ Σ_j a[i][j] x_j + b[i]`, with `a` invertible.
    Affine { a: Matrix, b: Vec<Rational> },
    /// `x_i ↦ x_i + f` with `f` free of `x_i`; other variables fixed.
    Triangular { i: usize, f: Polynomial },
}

impl ElementaryMap {
    pub fn affine(a: Matrix, b: Vec<Rational>) -> Result<Self> {
        let n = b.len();
        check_square(&a, n)?;
        if matrix_det(&a).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(ElementaryMap::Affine { a, b })
    }

    /// The translation `x ↦ x + λ`.
    pub fn shift(lambda: Vec<Rational>) -> Self {
        let n = lambda.len();
        let a = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        ElementaryMap::Affine { a, b: lambda }
    }

    pub fn triangular(i: usize, f: Polynomial) -> Result<Self> {
        check_index(i, f.nvars())?;
        if !f.partial_unchecked(i).is_zero() {
            return Err(Error::TriangularSelfDependence(i));
        }
        Ok(ElementaryMap::Triangular { i, f })
    }

    pub fn nvars(&self) -> usize {
        match self {
            ElementaryMap::Affine { b, .. } => b.len(),
            ElementaryMap::Triangular { f, .. } => f.nvars(),
        }
    }

    /// The polynomials `e(x_1), …, e(x_n)`.
    pub fn images(&self) -> Vec<Polynomial> {
        let n = self.nvars();
        match self {
            ElementaryMap::Affine { a, b } => (0..n)
                .map(|i| {
                    let mut p = Polynomial::constant(n, b[i].clone());
                    for j in 0..n {
                        p = &p + &Polynomial::var(n, j).scale(&a[i][j]);
                    }
                    p
                })
                .collect(),
            ElementaryMap::Triangular { i, f } => (0..n)
                .map(|k| {
                    let x = Polynomial::var(n, k);
                    if k == *i {
                        &x + f
                    } else {
                        x
                    }
                })
                .collect(),
        }
    }

    pub fn inverse(&self) -> ElementaryMap {
        match self {
            ElementaryMap::Affine { a, b } => {
                let ai = matrix_inverse(a).expect("validated invertible");
                let bi = ai
                    .iter()
                    .map(|row| -row.iter().zip(b).fold(Rational::zero(), |s, (x, y)| s + x * y))
                    .collect();
                ElementaryMap::Affine { a: ai, b: bi }
            }
            ElementaryMap::Triangular { i, f } => ElementaryMap::Triangular { i: *i, f: -f },
        }
    }

    /// Largest total degree among the images.
    pub fn degree(&self) -> u32 {
        match self {
            ElementaryMap::Affine { .. } => 1,
            ElementaryMap::Triangular { f, .. } => f.total_degree().finite().unwrap_or(0).max(1),
        }
    }
}

fn identity_images(n: usize) -> Vec<Polynomial> {
    (0..n).map(|i| Polynomial::var(n, i)).collect()
}

fn substitute_word<'a>(n: usize, word: impl DoubleEndedIterator<Item = &'a ElementaryMap>) -> Vec<Polynomial> {
    let mut imgs = identity_images(n);
    for e in word.rev() {
        let sub = e.images();
        imgs = imgs
            .iter()
            .map(|p| p.compose(&sub).expect("shared n"))
            .collect();
    }
    imgs
}

/// A tame automorphism given as a word of elementary maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    n: usize,
    word: Vec<ElementaryMap>,
    forward: Vec<Polynomial>,
    inverse: Vec<Polynomial>,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Automorphism {
            n,
            word: Vec::new(),
            forward: identity_images(n),
            inverse: identity_images(n),
        }
    }

    pub fn from_word(n: usize, word: Vec<ElementaryMap>) -> Result<Self> {
        for e in &word {
            if e.nvars() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: e.nvars(),
                });
            }
        }
        let forward = substitute_word(n, word.iter());
        let inv_word: Vec<ElementaryMap> = word.iter().rev().map(|e| e.inverse()).collect();
        let inverse = substitute_word(n, inv_word.iter());
        Ok(Automorphism {
            n,
            word,
            forward,
            inverse,
        })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn word(&self) -> &[ElementaryMap] {
        &self.word
    }

    /// `σ(x_1), …, σ(x_n)`.
    pub fn forward_images(&self) -> &[Polynomial] {
        &self.forward
    }

    /// `σ^{-1}(x_1), …, σ^{-1}(x_n)`.
    pub fn inverse_images(&self) -> &[Polynomial] {
        &self.inverse
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            n: self.n,
            word: self.word.iter().rev().map(|e| e.inverse()).collect(),
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }

    /// `στ`, acting on polynomials as `σ ∘ τ`.
    pub fn product(&self, other: &Automorphism) -> Result<Automorphism> {
        let mut word = self.word.clone();
        word.extend(other.word.iter().cloned());
        Automorphism::from_word(self.n, word)
    }

    /// `σ(p)`.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        p.compose(&self.forward)
    }

    pub fn apply_inverse(&self, p: &Polynomial) -> Result<Polynomial> {
        p.compose(&self.inverse)
    }

    /// `true` if the forward and inverse substitutions undo each other.
    pub fn is_consistent(&self) -> bool {
        let id = identity_images(self.n);
        let a: Vec<_> = self.forward.iter().map(|p| p.compose(&self.inverse).unwrap()).collect();
        let b: Vec<_> = self.inverse.iter().map(|p| p.compose(&self.forward).unwrap()).collect();
        a == id && b == id
    }
}

/// Square matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<Vec<Polynomial>>,
}

pub type JacobianMatrix = PolyMatrix;

impl PolyMatrix {
    pub fn new(entries: Vec<Vec<Polynomial>>) -> Result<Self> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        Ok(PolyMatrix { n, entries })
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Polynomial::one(nvars) } else { Polynomial::zero(nvars) })
                    .collect()
            })
            .collect();
        PolyMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        let n = self.n;
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(Polynomial::zero(self.entries[i][j].nvars()), |s, k| {
                            &s + &(&self.entries[i][k] * &other.entries[k][j])
                        })
                    })
                    .collect()
            })
            .collect();
        PolyMatrix { n, entries }
    }

    /// Entrywise substitution.
    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix {
            n: self.n,
            entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> PolyMatrix {
        let entries = (0..self.n)
            .filter(|&r| r != skip_row)
            .map(|r| {
                (0..self.n)
                    .filter(|&c| c != skip_col)
                    .map(|c| self.entries[r][c].clone())
                    .collect()
            })
            .collect();
        PolyMatrix {
            n: self.n - 1,
            entries,
        }
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self, nvars: usize) -> Polynomial {
        match self.n {
            0 => Polynomial::one(nvars),
            1 => self.entries[0][0].clone(),
            _ => {
                let mut acc = Polynomial::zero(nvars);
                for j in 0..self.n {
                    if self.entries[0][j].is_zero() {
                        continue;
                    }
                    let term = &self.entries[0][j] * &self.minor(0, j).det(nvars);
                    acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Transposed cofactor matrix.
    pub fn adjugate(&self, nvars: usize) -> PolyMatrix {
        let n = self.n;
        if n == 1 {
            return PolyMatrix::identity(nvars, 1);
        }
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = self.minor(j, i).det(nvars);
                        if (i + j) % 2 == 0 {
                            c
                        } else {
                            -c
                        }
                    })
                    .collect()
            })
            .collect();
        PolyMatrix { n, entries }
    }
}

/// `J(σ)_{ij} = ∂x_j' / ∂x_i` where `x_j' = σ(x_j)`.
pub fn jacobian(sigma: &Automorphism) -> JacobianMatrix {
    let n = sigma.n;
    let entries = (0..n)
        .map(|i| (0..n).map(|j| sigma.forward[j].partial_unchecked(i)).collect())
        .collect();
    PolyMatrix { n, entries }
}

pub fn jacobian_det(sigma: &Automorphism) -> Polynomial {
    jacobian(sigma).det(sigma.n)
}

fn check_n(sigma: &Automorphism, d: &Derivation) -> Result<()> {
    if sigma.n == d.nvars() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: sigma.n,
            found: d.nvars(),
        })
    }
}

/// `σ ∂ σ^{-1}`: coefficient `k` is `σ(∂(σ^{-1}(x_k)))`.
pub fn conjugate(sigma: &Automorphism, d: &Derivation) -> Result<Derivation> {
    check_n(sigma, d)?;
    let coeffs = sigma
        .inverse
        .iter()
        .map(|q| d.apply_unchecked(q).compose(&sigma.forward))
        .collect::<Result<Vec<_>>>()?;
    Derivation::new(coeffs)
}

/// `σ(∂_1), …, σ(∂_n)` as rows of `J(σ)^{-1}`.
pub fn transformed_partials(sigma: &Automorphism) -> Result<Vec<Derivation>> {
    let inv = jacobian_inverse(sigma)?;
    inv.rows().iter().map(|r| Derivation::new(r.clone())).collect()
}

fn jacobian_inverse(sigma: &Automorphism) -> Result<PolyMatrix> {
    let j = jacobian(sigma);
    let det = j.det(sigma.n);
    if det.is_zero() || !det.is_constant() {
        return Err(Error::Malformed(format!("Jacobian determinant {det} is not a nonzero constant")));
    }
    let inv = det.constant_term().recip();
    Ok(j.adjugate(sigma.n).map(|p| p.scale(&inv)))
}

/// Conjugation through the Jacobian: `σ(Σ a_i ∂_i) = Σ σ(a_i) ∂_i'`
/// with `∂_i' = Σ_j (J(σ)^{-1})_{ij} ∂_j`.
pub fn conjugate_via_jacobian(sigma: &Automorphism, d: &Derivation) -> Result<Derivation> {
    check_n(sigma, d)?;
    let n = sigma.n;
    let inv = jacobian_inverse(sigma)?;
    let images: Vec<Polynomial> = d
        .coeffs()
        .iter()
        .map(|a| a.compose(&sigma.forward))
        .collect::<Result<_>>()?;
    let coeffs = (0..n)
        .map(|j| {
            (0..n).fold(Polynomial::zero(n), |s, i| &s + &(&images[i] * inv.get(i, j)))
        })
        .collect();
    Derivation::new(coeffs)
}

/// `div(σ(∂)) == σ(div ∂)`.
pub fn check_div_equivariance(sigma: &Automorphism, d: &Derivation) -> Result<bool> {
    let lhs = conjugate(sigma, d)?.divergence();
    let rhs = sigma.apply(&d.divergence())?;
    Ok(lhs == rhs)
}

#[derive(Serialize, Deserialize)]
struct RawAutomorphism {
    n: usize,
    word: Vec<Value>,
}

fn rational_to_json(c: &Rational) -> Value {
    Value::String(c.to_string())
}

fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(x) => x
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| Error::Malformed(format!("expected an integer or \"p/q\" string, found {x}"))),
        other => Err(Error::Malformed(format!("expected a rational, found {other}"))),
    }
}

impl ElementaryMap {
    /// JSON form; the triangular index `i` is one-based like the text names.
    pub fn to_json(&self) -> Value {
        match self {
            ElementaryMap::Affine { a, b } => serde_json::json!({
                "kind": "affine",
                "A": a.iter().map(|r| r.iter().map(rational_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "b": b.iter().map(rational_to_json).collect::<Vec<_>>(),
            }),
            ElementaryMap::Triangular { i, f } => serde_json::json!({
                "kind": "tri",
                "i": i + 1,
                "f": f,
            }),
        }
    }

    pub fn from_json(n: usize, v: &Value) -> Result<Self> {
        let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| Error::Malformed("elementary map needs a \"kind\"".into()))?;
        match kind {
            "affine" => {
                let a = v
                    .get("A")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Malformed("affine map needs \"A\"".into()))?
                    .iter()
                    .map(|row| {
                        row.as_array()
                            .ok_or_else(|| Error::Malformed("rows of \"A\" must be arrays".into()))?
                            .iter()
                            .map(rational_from_json)
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let b = match v.get("b") {
                    None => vec![Rational::zero(); n],
                    Some(b) => b
                        .as_array()
                        .ok_or_else(|| Error::Malformed("\"b\" must be an array".into()))?
                        .iter()
                        .map(rational_from_json)
                        .collect::<Result<Vec<_>>>()?,
                };
                if b.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: b.len(),
                    });
                }
                ElementaryMap::affine(a, b)
            }
            "tri" => {
                let i = v
                    .get("i")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Malformed("triangular map needs a positive \"i\"".into()))?;
                if i == 0 {
                    return Err(Error::Malformed("\"i\" is one-based".into()));
                }
                check_index(i as usize - 1, n)?;
                let f: Polynomial = serde_json::from_value(
                    v.get("f").cloned().ok_or_else(|| Error::Malformed("triangular map needs \"f\"".into()))?,
                )
                .map_err(|e| Error::Malformed(e.to_string()))?;
                if f.nvars() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: f.nvars(),
                    });
                }
                ElementaryMap::triangular(i as usize - 1, f)
            }
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

impl Serialize for Automorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawAutomorphism {
            n: self.n,
            word: self.word.iter().map(ElementaryMap::to_json).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Automorphism {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawAutomorphism::deserialize(d)?;
        let word = raw
            .word
            .iter()
            .map(|v| ElementaryMap::from_json(raw.n, v))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Automorphism::from_word(raw.n, word).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Monomial};

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn tri_x2sq() -> Automorphism {
        let f = x(2, 1).pow(2);
        Automorphism::from_word(2, vec![ElementaryMap::triangular(0, f).unwrap()]).unwrap()
    }

    #[test]
    fn images_of_triangular() {
        let s = tri_x2sq();
        let x2sq = x(2, 1).pow(2);
        assert_eq!(s.forward_images(), &[&x(2, 0) + &x2sq, x(2, 1)]);
        assert_eq!(s.inverse_images(), &[&x(2, 0) - &x2sq, x(2, 1)]);
        assert!(s.is_consistent());
    }

    #[test]
    fn shift_and_identity() {
        let s = Automorphism::from_word(2, vec![ElementaryMap::shift(vec![rat(3), rat(-1)])]).unwrap();
        assert_eq!(
            s.forward_images(),
            &[&x(2, 0) + &Polynomial::constant(2, rat(3)), &x(2, 1) - &Polynomial::one(2)]
        );
        let id = Automorphism::identity(3);
        assert_eq!(id.forward_images(), &[x(3, 0), x(3, 1), x(3, 2)]);
        assert_eq!(jacobian(&id), PolyMatrix::identity(3, 3));
    }

    #[test]
    fn word_order() {
        // Points: first x1 += x2, then x2 += x1^2. Substitution: σ(x2) = x2 + (x1 + x2)^2.
        let e1 = ElementaryMap::triangular(0, x(2, 1)).unwrap();
        let e2 = ElementaryMap::triangular(1, x(2, 0).pow(2)).unwrap();
        let s = Automorphism::from_word(2, vec![e1, e2]).unwrap();
        assert_eq!(s.forward_images()[0], &x(2, 0) + &x(2, 1));
        assert_eq!(s.forward_images()[1], &x(2, 1) + &(&x(2, 0) + &x(2, 1)).pow(2));
        assert!(s.is_consistent());
    }

    #[test]
    fn jacobian_examples() {
        let j = jacobian(&tri_x2sq());
        assert_eq!(j.get(0, 0), &Polynomial::one(2));
        assert_eq!(j.get(0, 1), &Polynomial::zero(2));
        assert_eq!(j.get(1, 0), &x(2, 1).scale(&rat(2)));
        assert_eq!(j.get(1, 1), &Polynomial::one(2));
        assert_eq!(jacobian_det(&tri_x2sq()), Polynomial::one(2));

        let a = vec![vec![rat(1), rat(2)], vec![rat(3), rat(4)]];
        let s = Automorphism::from_word(2, vec![ElementaryMap::affine(a.clone(), vec![rat(0), rat(0)]).unwrap()]).unwrap();
        let j = jacobian(&s);
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(j.get(r, c), &Polynomial::constant(2, a[c][r].clone()));
            }
        }
        assert_eq!(jacobian_det(&s), Polynomial::constant(2, rat(-2)));
    }

    #[test]
    fn singular_and_self_dependent_rejected() {
        let a = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert_eq!(ElementaryMap::affine(a, vec![rat(0), rat(0)]), Err(Error::SingularMatrix));
        assert_eq!(
            ElementaryMap::triangular(0, x(2, 0).pow(2)),
            Err(Error::TriangularSelfDependence(0))
        );
    }

    #[test]
    fn conjugate_examples() {
        let s = tri_x2sq();
        let d2 = Derivation::partial(2, 1).unwrap();
        let expected = &d2 - &Derivation::monomial(2, Monomial::new(vec![0, 1]), 0, rat(2));
        assert_eq!(conjugate(&s, &d2).unwrap(), expected);
        assert_eq!(conjugate_via_jacobian(&s, &d2).unwrap(), expected);

        let d = Derivation::monomial(2, Monomial::new(vec![2, 1]), 1, rat(5));
        assert_eq!(conjugate(&Automorphism::identity(2), &d).unwrap(), d);

        let shift = Automorphism::from_word(2, vec![ElementaryMap::shift(vec![rat(2), rat(7)])]).unwrap();
        let d1 = Derivation::partial(2, 0).unwrap();
        assert_eq!(conjugate(&shift, &d1).unwrap(), d1);
    }

    #[test]
    fn transformed_partials_are_dual() {
        let s = tri_x2sq();
        let ps = transformed_partials(&s).unwrap();
        for (i, p) in ps.iter().enumerate() {
            assert_eq!(p, &conjugate(&s, &Derivation::partial(2, i).unwrap()).unwrap());
            for (j, xj) in s.forward_images().iter().enumerate() {
                let v = p.apply(xj).unwrap();
                let want = if i == j { Polynomial::one(2) } else { Polynomial::zero(2) };
                assert_eq!(v, want);
            }
        }
    }

    #[test]
    fn equivariance_examples() {
        let s = tri_x2sq();
        let h1 = Derivation::euler(2, 0).unwrap();
        assert!(check_div_equivariance(&s, &h1).unwrap());
        assert_eq!(conjugate(&s, &h1).unwrap().divergence(), Polynomial::one(2));
        let t = Derivation::theta(0, &Monomial::new(vec![1, 2])).unwrap();
        assert!(check_div_equivariance(&s, &t).unwrap());
        assert!(conjugate(&s, &t).unwrap().divergence().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let e1 = ElementaryMap::affine(
            vec![vec![rat(1), rat(1)], vec![rat(0), rat(1)]],
            vec![Rational::new(1.into(), 2.into()), rat(0)],
        )
        .unwrap();
        let e2 = ElementaryMap::triangular(1, x(2, 0).pow(3)).unwrap();
        let s = Automorphism::from_word(2, vec![e1, e2]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let back: Automorphism = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let bad = r#"{"n":2,"word":[{"kind":"tri","i":1,"f":{"n":2,"terms":[{"exps":[1,0],"coeff":"1"}]}}]}"#;
        assert!(serde_json::from_str::<Automorphism>(bad).is_err());
    }
}
