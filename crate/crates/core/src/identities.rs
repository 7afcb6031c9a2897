//! Closed-form commutation identities for monomial fields, Euler elements
//! and the divergence-free elements `φ_{ij}` and `θ_i^α`, each checked
//! exhaustively against the bracket over a bounded range of exponents.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{rat, Monomial, Polynomial, Rational};
use crate::vecfield::Derivation;

/// Outcome of checking one family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failure: Option<String>,
}

impl IdentityOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

type Check = fn(usize, u32, &mut Tally);

pub struct IdentityFamily {
    pub name: &'static str,
    pub summary: &'static str,
    check: Check,
}

impl IdentityFamily {
    /// Checks the family in `n` variables with exponent sizes `≤ max_deg`.
    pub fn run(&self, n: usize, max_deg: u32) -> IdentityOutcome {
        let mut t = Tally::default();
        (self.check)(n, max_deg, &mut t);
        IdentityOutcome {
            name: self.name,
            cases: t.cases,
            failure: t.failure,
        }
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn expect(&mut self, lhs: &Derivation, rhs: &Derivation, ctx: impl FnOnce() -> String) {
        self.cases += 1;
        if lhs != rhs && self.failure.is_none() {
            self.failure = Some(format!("{}: got {lhs}, expected {rhs}", ctx()));
        }
    }
}

pub const FAMILIES: &[IdentityFamily] = &[
    IdentityFamily {
        name: "bracket-monomial",
        summary: "[x^a d_i, x^b d_j] = b_i x^(a+b-e_i) d_j - a_j x^(a+b-e_j) d_i",
        check: bracket_monomial,
    },
    IdentityFamily {
        name: "iv-bracket",
        summary: "four-case bracket of x^a d_i, x^b d_j with a_i = b_j = 0",
        check: iv_bracket,
    },
    IdentityFamily {
        name: "euler-action",
        summary: "[H_j, x^a d_i] = (a_j - delta_ij) x^a d_i",
        check: euler_action,
    },
    IdentityFamily {
        name: "partial-action",
        summary: "[d_j, x^a d_i] = a_j x^(a-e_j) d_i",
        check: partial_action,
    },
    IdentityFamily {
        name: "di-bracket",
        summary: "[x^a H, x^a' H'] = x^(a+a') ((H,a') H' - (H',a) H)",
        check: di_bracket,
    },
    IdentityFamily {
        name: "iv-di-bracket",
        summary: "[x^b d_i, x^a H] = a_i x^(a+b-e_i) H - (H, b-e_i) x^(a+b) d_i",
        check: iv_di_bracket,
    },
    IdentityFamily {
        name: "iv-di-bracket-reduced",
        summary: "for a_i > 0: [x^b d_i, x^a H] = x^(a+b-e_i) (a_i H - (H, b-e_i) H_i)",
        check: iv_di_bracket_reduced,
    },
    IdentityFamily {
        name: "phi-divergence-free",
        summary: "div phi_ij(x^a) = 0 and div theta_i^a = 0",
        check: phi_divergence_free,
    },
    IdentityFamily {
        name: "theta-as-bracket",
        summary: "theta_ij^a = [x_i^(a_i+1) d_j, x^(a - a_i e_i + e_j) d_i]",
        check: theta_as_bracket,
    },
    IdentityFamily {
        name: "swap-theta",
        summary: "s_(i,i+1)(theta_i^a) = -theta_i^(s(a))",
        check: swap_theta,
    },
    IdentityFamily {
        name: "theta-raise",
        summary: "[x_(i+1)^j d_i, theta_i^a] = (a_i+1) theta_i^(a-e_i+j e_(i+1)) for a_i >= 1",
        check: theta_raise,
    },
    IdentityFamily {
        name: "theta-lower",
        summary: "[x_i^j d_(i+1), theta_i^a] = (a_(i+1)+1) theta_i^(a+j e_i-e_(i+1)) for a_(i+1) >= 1",
        check: theta_lower,
    },
    IdentityFamily {
        name: "theta-seed-first",
        summary: "[x_i^2 d_(i+1), x_(i+1) d_i] = theta_i^(e_i)",
        check: theta_seed_first,
    },
    IdentityFamily {
        name: "theta-seed-second",
        summary: "[x_(i+1)^2 d_i, x_i d_(i+1)] = -theta_i^(e_(i+1))",
        check: theta_seed_second,
    },
    IdentityFamily {
        name: "partial-theta",
        summary: "four-case formula for [d_j, theta_i^a]",
        check: partial_theta,
    },
    IdentityFamily {
        name: "cartan-action",
        summary: "[H_s - H_t, phi_ij(x^a)] = (a_s - a_t) phi_ij(x^a)",
        check: cartan_action,
    },
    IdentityFamily {
        name: "theta-power-bracket",
        summary: "[x_j d_i, phi_ij(x_i x_j^-1 t^p)] = (p+2) phi_ij(t^p), t = x_1...x_n, 1 <= p <= 3",
        check: theta_power_bracket,
    },
];

pub fn family(name: &str) -> Result<&'static IdentityFamily> {
    FAMILIES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

pub fn check_identity(name: &str, n: usize, max_deg: u32) -> Result<IdentityOutcome> {
    Ok(family(name)?.run(n, max_deg))
}

pub fn check_all(n: usize, max_deg: u32) -> Vec<IdentityOutcome> {
    FAMILIES.iter().map(|f| f.run(n, max_deg)).collect()
}

fn field(alpha: &Monomial, i: usize) -> Derivation {
    Derivation::monomial(alpha.nvars(), alpha.clone(), i, Rational::one())
}

/// `c x^m ∂_i`, or zero when `m` is `None`.
fn field_opt(n: usize, m: Option<Monomial>, i: usize, c: Rational) -> Derivation {
    match m {
        Some(m) if !c.is_zero() => Derivation::monomial(n, m, i, c),
        _ => Derivation::zero(n),
    }
}

fn mono_poly(m: &Monomial) -> Polynomial {
    Polynomial::monomial(m.nvars(), m.clone(), Rational::one())
}

fn e(n: usize, i: usize) -> Monomial {
    Monomial::var(n, i)
}

fn add(a: &Monomial, b: &Monomial) -> Monomial {
    a.mul(b)
}

fn sub(a: &Monomial, i: usize) -> Option<Monomial> {
    a.shifted(i, -1)
}

fn ri(k: u32) -> Rational {
    Rational::from_integer(k.into())
}

/// A small spanning set of `ℋ_n` with labels: the `H_k` and the `H_k - H_{k+1}`.
fn cartan_elements(n: usize) -> Vec<(Vec<i64>, Derivation)> {
    let mut out = Vec::new();
    for k in 0..n {
        let mut h = vec![0; n];
        h[k] = 1;
        out.push((h, Derivation::euler(n, k).unwrap()));
    }
    for k in 0..n.saturating_sub(1) {
        let mut h = vec![0; n];
        h[k] = 1;
        h[k + 1] = -1;
        out.push((h, Derivation::euler_diff(n, k, k + 1).unwrap()));
    }
    out
}

fn pairing(h: &[i64], alpha: &[i64]) -> Rational {
    rat(h.iter().zip(alpha).map(|(a, b)| a * b).sum())
}

fn exps_i64(m: &Monomial) -> Vec<i64> {
    m.exps().iter().map(|&x| x as i64).collect()
}

fn bracket_monomial(n: usize, d: u32, t: &mut Tally) {
    let monos = Monomial::all_up_to_degree(n, d);
    for a in &monos {
        for b in &monos {
            let ab = add(a, b);
            for i in 0..n {
                for j in 0..n {
                    let lhs = field(a, i).bracket(&field(b, j)).unwrap();
                    let rhs = &field_opt(n, sub(&ab, i), j, ri(b.exps()[i]))
                        - &field_opt(n, sub(&ab, j), i, ri(a.exps()[j]));
                    t.expect(&lhs, &rhs, || format!("a={:?} i={} b={:?} j={}", a.exps(), i + 1, b.exps(), j + 1));
                }
            }
        }
    }
}

fn iv_bracket(n: usize, d: u32, t: &mut Tally) {
    let monos = Monomial::all_up_to_degree(n, d);
    for a in &monos {
        for b in &monos {
            for i in 0..n {
                if a.exps()[i] != 0 {
                    continue;
                }
                for j in 0..n {
                    if b.exps()[j] != 0 {
                        continue;
                    }
                    let (bi, aj) = (b.exps()[i], a.exps()[j]);
                    let ab = add(a, b);
                    let rhs = match (bi != 0, aj != 0) {
                        (true, true) => {
                            let g = sub(&sub(&ab, i).unwrap(), j).unwrap();
                            Derivation::phi(j, i, &mono_poly(&g)).unwrap()
                        }
                        (true, false) => field_opt(n, sub(&ab, i), j, ri(bi)),
                        (false, true) => field_opt(n, sub(&ab, j), i, -ri(aj)),
                        (false, false) => Derivation::zero(n),
                    };
                    let lhs = field(a, i).bracket(&field(b, j)).unwrap();
                    t.expect(&lhs, &rhs, || format!("a={:?} i={} b={:?} j={}", a.exps(), i + 1, b.exps(), j + 1));
                }
            }
        }
    }
}

fn euler_action(n: usize, d: u32, t: &mut Tally) {
    for a in Monomial::all_up_to_degree(n, d) {
        for i in 0..n {
            for j in 0..n {
                let c = a.exps()[j] as i64 - i64::from(i == j);
                let lhs = Derivation::euler(n, j).unwrap().bracket(&field(&a, i)).unwrap();
                let rhs = field(&a, i).scale(&rat(c));
                t.expect(&lhs, &rhs, || format!("a={:?} i={} j={}", a.exps(), i + 1, j + 1));
            }
        }
    }
}

fn partial_action(n: usize, d: u32, t: &mut Tally) {
    for a in Monomial::all_up_to_degree(n, d) {
        for i in 0..n {
            for j in 0..n {
                let lhs = Derivation::partial(n, j).unwrap().bracket(&field(&a, i)).unwrap();
                let rhs = field_opt(n, sub(&a, j), i, ri(a.exps()[j]));
                t.expect(&lhs, &rhs, || format!("a={:?} i={} j={}", a.exps(), i + 1, j + 1));
            }
        }
    }
}

fn di_bracket(n: usize, d: u32, t: &mut Tally) {
    let monos = Monomial::all_up_to_degree(n, d);
    let hs = cartan_elements(n);
    for a in &monos {
        for a2 in &monos {
            for (hv, h) in &hs {
                for (hv2, h2) in &hs {
                    let lhs = h
                        .mul_poly(&mono_poly(a))
                        .unwrap()
                        .bracket(&h2.mul_poly(&mono_poly(a2)).unwrap())
                        .unwrap();
                    let inner = &h2.scale(&pairing(hv, &exps_i64(a2))) - &h.scale(&pairing(hv2, &exps_i64(a)));
                    let rhs = inner.mul_poly(&mono_poly(&add(a, a2))).unwrap();
                    t.expect(&lhs, &rhs, || format!("a={:?} H={hv:?} a'={:?} H'={hv2:?}", a.exps(), a2.exps()));
                }
            }
        }
    }
}

fn iv_di_bracket(n: usize, d: u32, t: &mut Tally) {
    let monos = Monomial::all_up_to_degree(n, d);
    let hs = cartan_elements(n);
    for b in &monos {
        for a in &monos {
            for i in 0..n {
                for (hv, h) in &hs {
                    let lhs = field(b, i).bracket(&h.mul_poly(&mono_poly(a)).unwrap()).unwrap();
                    let ab = add(a, b);
                    let first = match sub(&ab, i) {
                        Some(m) if a.exps()[i] > 0 => h.mul_poly(&mono_poly(&m)).unwrap().scale(&ri(a.exps()[i])),
                        _ => Derivation::zero(n),
                    };
                    let mut bmi = exps_i64(b);
                    bmi[i] -= 1;
                    let rhs = &first - &field(&ab, i).scale(&pairing(hv, &bmi));
                    t.expect(&lhs, &rhs, || format!("b={:?} i={} a={:?} H={hv:?}", b.exps(), i + 1, a.exps()));
                }
            }
        }
    }
}

fn iv_di_bracket_reduced(n: usize, d: u32, t: &mut Tally) {
    let monos = Monomial::all_up_to_degree(n, d);
    let hs = cartan_elements(n);
    for b in &monos {
        for a in &monos {
            for i in 0..n {
                if a.exps()[i] == 0 {
                    continue;
                }
                for (hv, h) in &hs {
                    let lhs = field(b, i).bracket(&h.mul_poly(&mono_poly(a)).unwrap()).unwrap();
                    let mut bmi = exps_i64(b);
                    bmi[i] -= 1;
                    let hi = Derivation::euler(n, i).unwrap();
                    let inner = &h.scale(&ri(a.exps()[i])) - &hi.scale(&pairing(hv, &bmi));
                    let rhs = inner.mul_poly(&mono_poly(&sub(&add(a, b), i).unwrap())).unwrap();
                    t.expect(&lhs, &rhs, || format!("b={:?} i={} a={:?} H={hv:?}", b.exps(), i + 1, a.exps()));
                }
            }
        }
    }
}

fn phi_divergence_free(n: usize, d: u32, t: &mut Tally) {
    let zero = Derivation::zero(n);
    for a in Monomial::all_up_to_degree(n, d) {
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let p = Derivation::phi(i, j, &mono_poly(&a)).unwrap();
                // Compare divergences as fields along the first direction.
                let div = Derivation::along(p.divergence(), 0);
                t.expect(&div, &zero, || format!("phi a={:?} i={} j={}", a.exps(), i + 1, j + 1));
            }
            if i + 1 < n {
                let th = Derivation::theta(i, &a).unwrap();
                let div = Derivation::along(th.divergence(), 0);
                t.expect(&div, &zero, || format!("theta a={:?} i={}", a.exps(), i + 1));
            }
        }
    }
}

fn theta_as_bracket(n: usize, d: u32, t: &mut Tally) {
    for a in Monomial::all_up_to_degree(n, d) {
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let ai = a.exps()[i];
                let mut left = vec![0u32; n];
                left[i] = ai + 1;
                let mut right = a.exps().to_vec();
                right[i] = 0;
                right[j] += 1;
                let lhs = field(&Monomial::new(left), j)
                    .bracket(&field(&Monomial::new(right), i))
                    .unwrap();
                let rhs = Derivation::theta_pair(i, j, &a).unwrap();
                t.expect(&lhs, &rhs, || format!("a={:?} i={} j={}", a.exps(), i + 1, j + 1));
            }
        }
    }
}

fn swap_theta(n: usize, d: u32, t: &mut Tally) {
    for a in Monomial::all_up_to_degree(n, d) {
        for i in 0..n.saturating_sub(1) {
            let lhs = Derivation::theta(i, &a).unwrap().swap_vars(i, i + 1).unwrap();
            let rhs = -&Derivation::theta(i, &a.swapped(i, i + 1)).unwrap();
            t.expect(&lhs, &rhs, || format!("a={:?} i={}", a.exps(), i + 1));
        }
    }
}

/// Exponent `j` of the raising/lowering fields ranges over `0..=3`.
const MAX_SHIFT_POWER: u32 = 3;

fn theta_raise(n: usize, d: u32, t: &mut Tally) {
    for a in Monomial::all_up_to_degree(n, d) {
        for i in 0..n.saturating_sub(1) {
            if a.exps()[i] == 0 {
                continue;
            }
            for j in 0..=MAX_SHIFT_POWER {
                let lhs = field(&e(n, i + 1).pow(j), i).bracket(&Derivation::theta(i, &a).unwrap()).unwrap();
                let target = sub(&a, i).unwrap().mul(&e(n, i + 1).pow(j));
                let rhs = Derivation::theta(i, &target).unwrap().scale(&ri(a.exps()[i] + 1));
                t.expect(&lhs, &rhs, || format!("a={:?} i={} j={j}", a.exps(), i + 1));
            }
        }
    }
}

fn theta_lower(n: usize, d: u32, t: &mut Tally) {
    for a in Monomial::all_up_to_degree(n, d) {
        for i in 0..n.saturating_sub(1) {
            if a.exps()[i + 1] == 0 {
                continue;
            }
            for j in 0..=MAX_SHIFT_POWER {
                let lhs = field(&e(n, i).pow(j), i + 1).bracket(&Derivation::theta(i, &a).unwrap()).unwrap();
                let target = sub(&a, i + 1).unwrap().mul(&e(n, i).pow(j));
                let rhs = Derivation::theta(i, &target).unwrap().scale(&ri(a.exps()[i + 1] + 1));
                t.expect(&lhs, &rhs, || format!("a={:?} i={} j={j}", a.exps(), i + 1));
            }
        }
    }
}

fn theta_seed_first(n: usize, _d: u32, t: &mut Tally) {
    for i in 0..n.saturating_sub(1) {
        let lhs = field(&e(n, i).pow(2), i + 1).bracket(&field(&e(n, i + 1), i)).unwrap();
        let rhs = Derivation::theta(i, &e(n, i)).unwrap();
        t.expect(&lhs, &rhs, || format!("i={}", i + 1));
    }
}

fn theta_seed_second(n: usize, _d: u32, t: &mut Tally) {
    for i in 0..n.saturating_sub(1) {
        let lhs = field(&e(n, i + 1).pow(2), i).bracket(&field(&e(n, i), i + 1)).unwrap();
        let rhs = -&Derivation::theta(i, &e(n, i + 1)).unwrap();
        t.expect(&lhs, &rhs, || format!("i={}", i + 1));
    }
}

fn partial_theta(n: usize, d: u32, t: &mut Tally) {
    for a in Monomial::all_up_to_degree(n, d) {
        for i in 0..n.saturating_sub(1) {
            for j in 0..n {
                let aj = a.exps()[j];
                let lhs = Derivation::partial(n, j)
                    .unwrap()
                    .bracket(&Derivation::theta(i, &a).unwrap())
                    .unwrap();
                let rhs = if (j == i || j == i + 1) && aj >= 1 {
                    Derivation::theta(i, &sub(&a, j).unwrap()).unwrap().scale(&ri(aj + 1))
                } else if j == i {
                    field(&a, i).scale(&ri(a.exps()[i + 1] + 1))
                } else if j == i + 1 {
                    field(&a, i + 1).scale(&-ri(a.exps()[i] + 1))
                } else {
                    match sub(&a, j) {
                        Some(m) => Derivation::theta(i, &m).unwrap().scale(&ri(aj)),
                        None => Derivation::zero(n),
                    }
                };
                t.expect(&lhs, &rhs, || format!("a={:?} i={} j={}", a.exps(), i + 1, j + 1));
            }
        }
    }
}

fn cartan_action(n: usize, d: u32, t: &mut Tally) {
    for a in Monomial::all_up_to_degree(n, d) {
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let p = Derivation::phi(i, j, &mono_poly(&a)).unwrap();
                for s in 0..n {
                    for u in 0..n {
                        if s == u {
                            continue;
                        }
                        let lhs = Derivation::euler_diff(n, s, u).unwrap().bracket(&p).unwrap();
                        let c = a.exps()[s] as i64 - a.exps()[u] as i64;
                        let rhs = p.scale(&rat(c));
                        t.expect(&lhs, &rhs, || {
                            format!("a={:?} i={} j={} s={} t={}", a.exps(), i + 1, j + 1, s + 1, u + 1)
                        });
                    }
                }
            }
        }
    }
}

/// Powers `p` of `x_1⋯x_n` covered by the `theta-power-bracket` family.
const MAX_THETA_POWER: u32 = 3;

fn theta_power_bracket(n: usize, _d: u32, t: &mut Tally) {
    let theta = Monomial::new(vec![1; n]);
    for p in 1..=MAX_THETA_POWER {
        let tp = theta.pow(p);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let seed = tp.shifted(i, 1).and_then(|m| m.shifted(j, -1)).expect("p >= 1");
                let lhs = field(&e(n, j), i)
                    .bracket(&Derivation::phi(i, j, &mono_poly(&seed)).unwrap())
                    .unwrap();
                let rhs = Derivation::phi(i, j, &mono_poly(&tp)).unwrap().scale(&ri(p + 2));
                t.expect(&lhs, &rhs, || format!("p={p} i={} j={}", i + 1, j + 1));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_families_hold_small() {
        for n in 1..=3 {
            for o in check_all(n, 2) {
                assert!(o.passed(), "{} n={n}: {:?}", o.name, o.failure);
            }
        }
    }

    #[test]
    fn families_have_cases() {
        for o in check_all(3, 2) {
            assert!(o.cases > 0, "{}", o.name);
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(check_identity("nope", 2, 2), Err(Error::UnknownName(_))));
    }

    #[test]
    fn detects_a_wrong_formula() {
        let mut t = Tally::default();
        let d1 = Derivation::partial(2, 0).unwrap();
        t.expect(&d1, &d1.scale(&rat(2)), || "x".into());
        assert!(t.failure.is_some());
    }
}
